#ifndef FOCKBAR_MODEL_HPP
#define FOCKBAR_MODEL_HPP

#include "fockbar/calculus.hpp"
#include "fockbar/poly.hpp"

namespace fockbar {

// A section of the model space stored in the unit-norm trivialization:
// poly(z, zbar) * exp(-(pi/2)|Z|^2) over C^n. The PolyKernel uses only the
// left variable groups.
struct WeightedSection {
  PolyKernel poly;

  int n() const { return poly.vars().n; }
};

// Orthonormal basis section sqrt(pi^{|beta|}/beta!) z^beta e^{-(pi/2)|Z|^2}.
WeightedSection basis_section(int n, const std::vector<int>& beta);

enum class Ladder { Lower, Raise };  // b_i and b_i^+

// Creation/annihilation operators acting on stored polynomials: with the
// Gaussian chain rule folded in, b_i^+ acts as 2 d/dzbar_i and b_i as
// -2 d/dz_i + 2 pi zbar_i.
WeightedSection apply_ladder(Ladder which, int i, const WeightedSection& s);

// L = sum_i b_i b_i^+, the model Laplacian (annihilates the Fock basis).
WeightedSection apply_model_laplacian(const WeightedSection& s);

// L2 inner product <s1, s2> against the implicit Gaussian weight.
cplx section_inner(const WeightedSection& s1, const WeightedSection& s2);

// Minimal-norm model extension: project g (a section over C^m, stored as a
// left-variable polynomial of dimension m) onto holomorphic sections and
// extend by E: (E g)(Z) = g_hol(Z_Y) e^{-(pi/2)|Z_N|^2}; returned in the
// C^n stored convention.
WeightedSection model_extend(const PolyKernel& g, int n, int m);

// Bergman projection of a stored section over C^d onto holomorphic ones.
PolyKernel bergman_project(const PolyKernel& g, int d);

// Flat-level dbar split: the input is a polynomial in (z_Y, zbar_Y, z_N,
// zbar_N) times e^{-(pi/2)|Z_N|^2}; output components are coefficients of
// dzbar_i of the same form. Indices i < m: horizontal part, i >= m: L_N part.
struct DbarSplit {
  std::vector<PolyKernel> horizontal;  // size m
  std::vector<PolyKernel> normal;      // size n - m
};
DbarSplit model_dbar_split(const PolyKernel& section, int n, int m);

}  // namespace fockbar

#endif  // FOCKBAR_MODEL_HPP
