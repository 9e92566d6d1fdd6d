#ifndef FOCKBAR_TEST_UTIL_HPP
#define FOCKBAR_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "fockbar/poly.hpp"

namespace fockbar::testutil {

// Deterministic random kernel: up to `terms` monomials of total degree <=
// max_deg, unit-rank unless stated otherwise.
inline PolyKernel random_kernel(std::mt19937& rng, const VarSpec& vars,
                                int max_deg, int terms, int rank = 1) {
  std::uniform_int_distribution<int> deg_d(0, max_deg);
  std::uniform_int_distribution<int> grp_d(0, 3);
  std::uniform_real_distribution<double> coef_d(-1.0, 1.0);
  PolyKernel out = PolyKernel::zero(vars, rank);
  const int dims[4] = {vars.n, vars.n, vars.right, vars.right};
  for (int t = 0; t < terms; ++t) {
    Monomial mono(std::vector<int>(vars.n, 0), std::vector<int>(vars.n, 0),
                  std::vector<int>(vars.right, 0),
                  std::vector<int>(vars.right, 0));
    const int d = deg_d(rng);
    for (int k = 0; k < d; ++k) {
      const int g = grp_d(rng);
      std::uniform_int_distribution<int> idx_d(0, dims[g] - 1);
      mono.e[g][idx_d(rng)] += 1;
    }
    Mat c(rank, rank);
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) c(i, j) = cplx(coef_d(rng), coef_d(rng));
    out = out + PolyKernel::monomial(vars, mono, cplx(1.0), rank) *
                    poly_from_terms(vars, rank, {{Monomial::zero(vars), c}});
  }
  return out;
}

// Random kernel with every monomial of the same total-degree parity.
inline PolyKernel random_parity_kernel(std::mt19937& rng, const VarSpec& vars,
                                       int max_deg, int terms, bool odd) {
  PolyKernel out = PolyKernel::zero(vars, 1);
  int made = 0, guard = 0;
  while (made < terms && guard < 200) {
    PolyKernel cand = random_kernel(rng, vars, max_deg, 1);
    if (cand.is_zero()) {
      ++guard;
      continue;
    }
    const int d = cand.coeffs().begin()->first.degree();
    if ((d % 2 == 1) == odd) {
      out = out + cand;
      ++made;
    }
    ++guard;
  }
  return out;
}

inline std::vector<cplx> random_point(std::mt19937& rng, int d,
                                      double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<cplx> z(d);
  for (auto& v : z) v = cplx(u(rng), u(rng));
  return z;
}

}  // namespace fockbar::testutil

#endif  // FOCKBAR_TEST_UTIL_HPP
