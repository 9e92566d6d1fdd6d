#ifndef FOCKBAR_LAMBDA_HPP
#define FOCKBAR_LAMBDA_HPP

#include <complex>
#include <map>
#include <stdexcept>

namespace fockbar {

using cplx_l = std::complex<double>;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Rational function of the contour variable lambda with poles only at 0 and
// 1, stored in the partial-fraction basis {lambda^-j, (lambda-1)^-j,
// lambda^j}.
class LambdaRational {
 public:
  LambdaRational() = default;
  static LambdaRational constant(const cplx_l& c);
  // c / lambda^j
  static LambdaRational pole0(int j, const cplx_l& c = 1.0);
  // c / (lambda-1)^j
  static LambdaRational pole1(int j, const cplx_l& c = 1.0);
  // c * lambda^j
  static LambdaRational power(int j, const cplx_l& c = 1.0);

  LambdaRational operator+(const LambdaRational& o) const;
  LambdaRational operator-(const LambdaRational& o) const;
  LambdaRational operator*(const LambdaRational& o) const;
  LambdaRational operator*(const cplx_l& s) const;

  bool is_zero(double tol = 0.0) const;
  cplx_l eval(const cplx_l& lambda) const;
  // Coefficient of (lambda-1)^{-1}.
  cplx_l residue_at_one() const;

  const std::map<int, cplx_l>& at_zero() const { return p0_; }
  const std::map<int, cplx_l>& at_one() const { return p1_; }
  const std::map<int, cplx_l>& polynomial() const { return poly_; }

 private:
  std::map<int, cplx_l> p0_;    // j >= 1 -> coefficient of lambda^-j
  std::map<int, cplx_l> p1_;    // j >= 1 -> coefficient of (lambda-1)^-j
  std::map<int, cplx_l> poly_;  // j >= 0 -> coefficient of lambda^j
  void prune();
};

// Normalized contour integral over a loop enclosing 1 but not 0
// (normalization: integral of dlambda/(lambda-1) equals 1).
cplx_l contour_integral(const LambdaRational& f);

}  // namespace fockbar

#endif  // FOCKBAR_LAMBDA_HPP
