#ifndef FOCKBAR_QUADRATURE_HPP
#define FOCKBAR_QUADRATURE_HPP

#include <vector>

#include <Eigen/Dense>

#include "fockbar/calculus.hpp"
#include "fockbar/poly.hpp"

namespace fockbar {

// 1-D Gauss-Hermite rule rescaled to the weight e^{-pi x^2} dx (unit mass).
struct GaussHermite {
  Eigen::VectorXd x;
  Eigen::VectorXd w;
};
GaussHermite gauss_hermite_pi(int q);

// Tensor rule on C ~ R^2 for the weight e^{-pi |z|^2} dv: q^2 nodes.
struct ComplexRule {
  std::vector<cplx> z;
  std::vector<double> w;
};
ComplexRule complex_rule(int q);

enum class Bracket { Core, K, Kprime, Kdoubleprime, EAssembly };

// Quadrature value of the composition bracket at a point pair: integrates
// the defining composition integral of the Gaussian-kernel operators and
// divides by the target kernel value. Independent of the symbolic engine.
Mat oracle_bracket(Bracket which, const PolyKernel& a1, const PolyKernel& a2,
                   int n, int m, const std::vector<cplx>& Z,
                   const std::vector<cplx>& Zp, int q);

// Numeric application of the model projector P_d to a stored section
// (poly x Gaussian), evaluated at Z.
cplx oracle_project_eval(const PolyKernel& section_poly, int d,
                         const std::vector<cplx>& Z, int q);

}  // namespace fockbar

#endif  // FOCKBAR_QUADRATURE_HPP
