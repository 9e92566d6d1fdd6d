#ifndef FOCKBAR_CALCULUS_HPP
#define FOCKBAR_CALCULUS_HPP

#include <vector>

#include "fockbar/poly.hpp"

namespace fockbar {

// Gaussian kernel families of the model calculus.
enum class FamilyTag { P_n, P_perp, E, P_m };

struct GaussianFamily {
  FamilyTag tag = FamilyTag::P_n;
  int n = 1;
  int m = 0;

  bool operator==(const GaussianFamily&) const = default;
  // Left/right complex dimensions of the kernel arguments.
  int left_dim() const { return tag == FamilyTag::P_m ? m : n; }
  int right_dim() const {
    return (tag == FamilyTag::E || tag == FamilyTag::P_m) ? m : n;
  }
  VarSpec var_spec() const {
    return VarSpec{left_dim(), m, right_dim()};
  }
};

// Pointwise value of the model Gaussian kernel.
cplx eval_model_kernel(const GaussianFamily& fam, const std::vector<cplx>& Z,
                       const std::vector<cplx>& Zp);

// Moment of the normalized Gaussian: int z^alpha zbar^beta e^{-pi|z|^2} dv
// = delta_{alpha,beta} alpha! / pi^{|alpha|}.
double gaussian_moment(const std::vector<int>& alpha,
                       const std::vector<int>& beta);

// Composition brackets of the kernel calculus: each computes the polynomial
// K such that the composition of the Gaussian-kernel operators with
// polynomial factors a1, a2 equals K times the target Gaussian kernel.
PolyKernel compose_core(const PolyKernel& a1, const PolyKernel& a2, int n);
PolyKernel compose_K(const PolyKernel& a1, const PolyKernel& a2, int n, int m);
PolyKernel compose_Kprime(const PolyKernel& a1, const PolyKernel& a2, int n,
                          int m);
PolyKernel compose_Kdoubleprime(const PolyKernel& a1, const PolyKernel& a2,
                                int n, int m);
// Composition of an extension-family coefficient (left dim n, right dim m)
// with an (m, m) kernel against the m-dimensional model projector: the
// extension Gaussian factorizes through P_m, so the left normal variables of
// a1 ride along as spectators.
PolyKernel compose_E(const PolyKernel& a1, const PolyKernel& a2, int n, int m);

}  // namespace fockbar

#endif  // FOCKBAR_CALCULUS_HPP
