#ifndef FOCKBAR_EXPANSION_HPP
#define FOCKBAR_EXPANSION_HPP

#include <map>
#include <tuple>
#include <vector>

#include "fockbar/calculus.hpp"
#include "fockbar/lambda.hpp"
#include "fockbar/poly.hpp"

namespace fockbar {

// Finite expansion (F_r)_{r<=k} in powers of t = p^{-1/2}, each term a
// polynomial coefficient against the tagged Gaussian family.
struct KernelSeries {
  GaussianFamily family;
  std::vector<PolyKernel> terms;

  nlohmann::json to_json() const;
  static KernelSeries from_json(const nlohmann::json& j);
};

// Model geometric input at the base point.
struct GeometryJet {
  int n = 2;
  int m = 1;
  int rank = 1;
  // Second fundamental form: A[{k,i,j}] = coefficient of dz_k in
  // A(dz_i)dz_j, with i, j < m <= k < n (0-based), symmetric in (i, j).
  std::map<std::tuple<int, int, int>, cplx> A;
  // Homogeneous Taylor terms of kappa_N^{1/2} and kappa_N^{-1/2} as
  // left-variable polynomials over C^n; index = homogeneity degree.
  std::vector<PolyKernel> kappa_half;
  std::vector<PolyKernel> kappa_minus_half;
  // Ambient Bergman input J_r (family P_n) and submanifold input J'_{r,Y}
  // (family P_m over C^m).
  KernelSeries bergman_ambient;
  KernelSeries bergman_sub;

  void validate() const;
  // Trivial jet: A = 0, kappa == 1, Bergman inputs [Id] up to `order`.
  static GeometryJet trivial(int n, int m, int order, int rank = 1);
  // Jet with the closed-form order-1 ambient input J_1 generated by A.
  static GeometryJet from_A(int n, int m,
                            const std::map<std::tuple<int, int, int>, cplx>& A,
                            int order, int rank = 1);

  nlohmann::json to_json() const;
  static GeometryJet from_json(const nlohmann::json& j);
};

// C-series: kernels of the approximating projectors C_t against P_perp.
KernelSeries build_C_series(const GeometryJet& jet, int order);

// Resolvent recursion: coefficients J_r^perp of the orthogonal projector.
KernelSeries perp_series(const KernelSeries& c_series, int order);

// Intermediate extension coefficients J^E_{r,I} (family E).
KernelSeries iop_series(const KernelSeries& perp, const GeometryJet& jet,
                        int order);

// Full extension coefficients J^E_r via the Neumann sum over G-powers.
KernelSeries extension_series(const KernelSeries& iop, const GeometryJet& jet,
                              int order);

enum class ClosedForm { J1_perp, J1_E, J1_bergman };

// Direct transcription of the order-1 closed forms as a function of A.
PolyKernel closed_form_reference(ClosedForm which, const GeometryJet& jet);

}  // namespace fockbar

#endif  // FOCKBAR_EXPANSION_HPP
