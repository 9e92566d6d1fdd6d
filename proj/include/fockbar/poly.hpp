#ifndef FOCKBAR_POLY_HPP
#define FOCKBAR_POLY_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace fockbar {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Tolerance used for all coefficient-wise symbolic comparisons.
inline constexpr double kCoeffTol = 1e-12;

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Variable layout of a polynomial kernel K(Z, Z'): left group lives on C^n
// (with distinguished sub-dimension m <= n), right group on C^right with
// right in {m, n}.
struct VarSpec {
  int n = 1;
  int m = 0;
  int right = 1;

  bool operator==(const VarSpec&) const = default;
  void validate() const;
};

// Index of the four variable groups of a kernel monomial.
enum Group : int { GZ = 0, GZbar = 1, GZp = 2, GZpbar = 3 };

// A monomial z^a zbar^b z'^c z'bar^d, exponents stored per group.
struct Monomial {
  std::array<std::vector<int>, 4> e;

  Monomial() = default;
  Monomial(std::vector<int> a, std::vector<int> b, std::vector<int> c,
           std::vector<int> d)
      : e{std::move(a), std::move(b), std::move(c), std::move(d)} {}
  static Monomial zero(const VarSpec& v);

  int degree() const;
  bool operator==(const Monomial&) const = default;
  auto operator<=>(const Monomial& o) const { return e <=> o.e; }
};

enum class Parity { Even, Odd, Mixed };

// Sparse polynomial in the four variable groups with matrix coefficients.
// Values are immutable in spirit: all mutating helpers are private to the
// implementation; public operations return new kernels.
class PolyKernel {
 public:
  PolyKernel() = default;
  PolyKernel(VarSpec vars, int rank = 1);

  static PolyKernel zero(VarSpec vars, int rank = 1);
  static PolyKernel constant(VarSpec vars, const cplx& c, int rank = 1);
  static PolyKernel identity(VarSpec vars, int rank = 1);  // Id matrix constant
  static PolyKernel monomial(VarSpec vars, const Monomial& mono,
                             const cplx& c, int rank = 1);
  // Single variable of a given group, index i (0-based).
  static PolyKernel variable(VarSpec vars, Group g, int i, int rank = 1);

  const VarSpec& vars() const { return vars_; }
  int rank() const { return rank_; }
  const std::map<Monomial, Mat>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Ring operations (shape-checked).
  PolyKernel operator+(const PolyKernel& o) const;
  PolyKernel operator-(const PolyKernel& o) const;
  PolyKernel operator*(const PolyKernel& o) const;  // poly_mul
  PolyKernel operator*(const cplx& s) const;
  PolyKernel operator-() const { return *this * cplx(-1.0, 0.0); }

  // Kernel adjoint: swap primed/unprimed groups, conjugate-transpose
  // coefficients. Requires right == n.
  PolyKernel adjoint() const;

  // Entrywise complex conjugate with z <-> zbar, z' <-> z'bar swap
  // (i.e. conj(K(Z,Z')) as a function of the same real points).
  PolyKernel conj_kernel() const;

  // Evaluation: zbar slots receive conjugates of left, z'bar of right.
  Mat eval(const std::vector<cplx>& left, const std::vector<cplx>& right) const;

  // Degree / parity. Zero polynomial: degree -1 ("-inf" sentinel), Even.
  int degree() const;
  Parity parity() const;

  // d/d(group g, variable i), formal partial derivative.
  PolyKernel derivative(Group g, int i) const;

  // Substitute 0 for every variable of group g with index >= m
  // (drop normal components), used for J(Z_Y, Z') restrictions.
  PolyKernel restrict_normal_zero(Group g) const;
  // Substitute 0 for every variable of group g with index i (single).
  PolyKernel set_var_zero(Group g, int i) const;

  // Reinterpret under a new VarSpec: group dimensions may only grow (new
  // trailing variables get exponent 0) or shrink when unused.
  PolyKernel reshape(const VarSpec& nv) const;

  // Drop coefficients with max-norm <= tol.
  PolyKernel pruned(double tol) const;

  double max_abs_coeff() const;
  // Max over all monomials of the entrywise difference; shape-checked.
  double coeff_distance(const PolyKernel& o) const;

  nlohmann::json to_json() const;
  static PolyKernel from_json(const nlohmann::json& j);

 private:
  VarSpec vars_{};
  int rank_ = 1;
  std::map<Monomial, Mat> coeffs_;

  void add_term(const Monomial& mono, const Mat& c);
  void check_same_shape(const PolyKernel& o) const;
  friend PolyKernel poly_from_terms(VarSpec, int,
                                    std::vector<std::pair<Monomial, Mat>>);
};

PolyKernel poly_from_terms(VarSpec vars, int rank,
                           std::vector<std::pair<Monomial, Mat>> terms);

inline PolyKernel operator*(const cplx& s, const PolyKernel& p) { return p * s; }

std::string to_string(Parity p);

}  // namespace fockbar

#endif  // FOCKBAR_POLY_HPP
