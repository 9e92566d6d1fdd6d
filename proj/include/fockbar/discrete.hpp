#ifndef FOCKBAR_DISCRETE_HPP
#define FOCKBAR_DISCRETE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "fockbar/poly.hpp"

namespace fockbar {

struct NumericalSetupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Weight p*phi(z) = p*(pi|z|^2 + phi1(z, zbar)) on C^n. phi1 is a real
// polynomial with no constant, linear, or pure-(2,0)/(0,2) quadratic parts.
struct WeightSpec {
  int n = 1;
  // term exponents (alpha, beta) -> coefficient; realness means the
  // coefficient of (beta, alpha) is the conjugate.
  std::map<std::pair<std::vector<int>, std::vector<int>>, cplx> phi1;

  static WeightSpec flat(int n);
  bool is_flat() const { return phi1.empty(); }
  void validate() const;
  double phi1_eval(const std::vector<cplx>& z) const;
  double phi(const std::vector<cplx>& z) const;  // pi|z|^2 + phi1
  // Complex Hessian d^2 phi / dz_i dzbar_j at a point.
  Eigen::MatrixXcd complex_hessian(const std::vector<cplx>& z) const;
};

// Graph submanifold Y = {(w, f(w))}: f : C^m -> C^{n-m} holomorphic
// polynomial with f(0) = 0, df(0) = 0, degree <= 4.
struct EmbeddingSpec {
  int n = 1;
  int m = 0;
  // f[k] : exponent tuple (size m) -> coefficient, for normal slot k.
  std::vector<std::map<std::vector<int>, cplx>> f;

  static EmbeddingSpec flat(int n, int m);
  bool is_flat() const;
  void validate() const;
  int degree() const;
  std::vector<cplx> eval(const std::vector<cplx>& w) const;       // f(w)
  std::vector<cplx> point(const std::vector<cplx>& w) const;      // (w, f(w))
  // d f_k / d w_i at a point.
  Eigen::MatrixXcd jacobian(const std::vector<cplx>& w) const;
  // Second fundamental form A^k_{ij} = d^2 f_k / dw_i dw_j (0), indexed in
  // the ambient convention (m <= k < n; i, j < m).
  std::map<std::tuple<int, int, int>, cplx> second_fundamental_form() const;
};

// All multi-indices in N^d with total degree <= D, graded lexicographic.
std::vector<std::vector<int>> multi_indices(int d, int D);

// Finite-dimensional realization of the weighted Bergman space for one
// (p, weight, embedding) instance.
struct DiscreteModel {
  int p = 1;
  int D = 0;       // ambient degree cutoff
  int Dy = 0;      // submanifold degree cutoff
  int quad = 0;    // quadrature order per real axis
  WeightSpec weight;
  EmbeddingSpec embed;
  std::vector<std::vector<int>> basis;    // ambient exponents, |a| <= D
  std::vector<std::vector<int>> basis_y;  // Y exponents, |b| <= Dy

  Eigen::MatrixXcd gram;      // H_ab = <m_a, m_b> (conjugate-linear first)
  Eigen::MatrixXcd gram_y;
  Eigen::MatrixXcd white;     // ||s||^2 = |W c|^2, W = L^H S^{-1}
  Eigen::MatrixXcd white_inv;
  Eigen::MatrixXcd white_y;
  Eigen::MatrixXcd white_y_inv;
  Eigen::MatrixXcd restr;     // y-coefficients of B_p^Y (restriction)
  Eigen::MatrixXcd rtilde;    // whitened restriction

  // SVD of rtilde (thin), rank = number of singular values kept.
  Eigen::MatrixXcd svd_u, svd_v;
  Eigen::VectorXd svd_s;
  int rank = 0;

  double cond = 0.0;
  double cond_y = 0.0;
  bool degenerate = false;

  int dim() const { return static_cast<int>(basis.size()); }
  int dim_y() const { return static_cast<int>(basis_y.size()); }
  // Working basis value m_a(z) = (sqrt(p) z)^a for every a.
  Eigen::VectorXcd basis_values(const std::vector<cplx>& Z) const;
  Eigen::VectorXcd basis_values_y(const std::vector<cplx>& w) const;
  double phi_y(const std::vector<cplx>& w) const;  // pulled-back weight
};

DiscreteModel build_discrete_model(int p, int D, const WeightSpec& w,
                                   const EmbeddingSpec& e, int quad);

enum class ProjKind { Full, Perp, Vanishing };

// Weighted projector kernel value K(Z, Z') e^{-p phi(Z)/2 - p phi(Z')/2}.
cplx projector_kernel(const DiscreteModel& mdl, ProjKind kind,
                      const std::vector<cplx>& Z, const std::vector<cplx>& Zp);

// Minimal-norm extension: input y-basis coefficients, output ambient ones.
Eigen::VectorXcd extend_minimal_norm(const DiscreteModel& mdl,
                                     const Eigen::VectorXcd& g);

// Weighted pointwise value of an ambient (resp. Y) coefficient vector.
cplx section_value(const DiscreteModel& mdl, const Eigen::VectorXcd& c,
                   const std::vector<cplx>& Z);
cplx section_value_y(const DiscreteModel& mdl, const Eigen::VectorXcd& g,
                     const std::vector<cplx>& w);

// L2 norms in the two spaces.
double section_norm(const DiscreteModel& mdl, const Eigen::VectorXcd& c);
double section_norm_y(const DiscreteModel& mdl, const Eigen::VectorXcd& g);

struct OperatorNorms {
  double res_norm = 0.0;   // largest singular value of the restriction
  double ext_norm = 0.0;   // norm of the minimal-norm extension operator
  double linf_ratio = 0.0; // max over sampled g of sup|E g| / sup|g|
};

OperatorNorms operator_norms(const DiscreteModel& mdl, std::uint32_t seed,
                             int num_g = 50);

// kappa_N on Y: ambient volume density over (flat Y chart) x (normal fiber).
double kappa_n(const WeightSpec& w, const EmbeddingSpec& e,
               const std::vector<cplx>& wpt);

}  // namespace fockbar

#endif  // FOCKBAR_DISCRETE_HPP
