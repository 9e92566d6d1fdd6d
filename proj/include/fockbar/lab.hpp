#ifndef FOCKBAR_LAB_HPP
#define FOCKBAR_LAB_HPP

#include <cstdint>
#include <vector>

#include "fockbar/discrete.hpp"
#include "fockbar/expansion.hpp"

namespace fockbar {

// Adapted chart around a point of a graph submanifold Y = {(w, f(w))} in
// C^2 (m = 1) under the flat weight: radial geodesics of the induced metric
// (1 + |f'|^2)|dw|^2 give the tangential coordinate, a parallel unit normal
// frame gives the normal one.
struct FermiChart {
  EmbeddingSpec embed;  // n = 2, m = 1
  int steps = 256;      // RK4 steps per unit geodesic length
  int phase_sign = 1;   // empirical orientation of the frame phase

  explicit FermiChart(const EmbeddingSpec& e);

  // Geodesic endpoint w(|zy|) for direction zy/|zy|, plus the transported
  // unit normal nu at the endpoint and the tangential leg of the
  // connection integral Im int conj(z) dz (flat-weight convention).
  struct GeodesicState {
    cplx w;
    std::vector<cplx> nu;  // ambient C^2 vector
    double leg1_im = 0.0;
  };
  GeodesicState geodesic(cplx zy) const;

  // Ambient point psi(zy, zn) = iota(gamma(zy)) + zn nu(zy).
  std::vector<cplx> point(cplx zy, cplx zn) const;

  // Chart volume density |det d(real)psi| via central differences.
  double jacobian_density(cplx zy, cplx zn) const;

  // Frame transport phase theta = -sign * p * pi * Im int conj(z) dz along
  // the two-leg path (geodesic, then straight normal segment).
  double phase(int p, cplx zy, cplx zn) const;
};

// Sup-norm error of the rescaled discrete kernel against the symbolic
// expansion truncated at orders 0 and 1, over a fixed pair sample.
struct CompareResult {
  double err_r0 = 0.0;
  double err_r1 = 0.0;
};
CompareResult rescaled_compare(const DiscreteModel& mdl,
                               const FermiChart& chart,
                               const KernelSeries& perp, std::uint32_t seed,
                               int num_pairs = 24);

// Exponential decay fit: regression of -log(|K_perp| / p^n) against
// sqrt(p) * (|x - x'| + dist(x, Y) + dist(x', Y)) through the origin.
struct DecayFit {
  double c = 0.0;         // fitted decay constant
  double residual = 0.0;  // relative RMS residual of the fit
  int used = 0;           // samples kept (values above the noise floor)
};
DecayFit decay_fit(const DiscreteModel& mdl, std::uint32_t seed,
                   int num_pairs = 40);

// Largest value of kappa_N^{1/2} over a polar grid |w| <= radius on Y.
double sup_kappa_half(const WeightSpec& w, const EmbeddingSpec& e,
                      double radius, int grid = 12);

}  // namespace fockbar

#endif  // FOCKBAR_LAB_HPP
