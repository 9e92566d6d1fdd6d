#include "fockbar/model.hpp"

#include <cmath>
#include <numbers>

namespace fockbar {

namespace {
constexpr double kPi = std::numbers::pi;

double factorial(int a) {
  double r = 1.0;
  for (int i = 2; i <= a; ++i) r *= i;
  return r;
}
}  // namespace

WeightedSection basis_section(int n, const std::vector<int>& beta) {
  if (static_cast<int>(beta.size()) != n)
    throw ShapeError("basis_section: exponent length mismatch");
  VarSpec v{n, 0, n};
  Monomial mono = Monomial::zero(v);
  double norm = 1.0;
  for (int i = 0; i < n; ++i) {
    mono.e[GZ][i] = beta[i];
    norm *= std::pow(kPi, beta[i]) / factorial(beta[i]);
  }
  return WeightedSection{PolyKernel::monomial(v, mono, std::sqrt(norm))};
}

WeightedSection apply_ladder(Ladder which, int i, const WeightedSection& s) {
  const int n = s.n();
  if (i < 0 || i >= n) throw ShapeError("apply_ladder: index out of range");
  if (which == Ladder::Raise)
    return WeightedSection{s.poly.derivative(GZbar, i) * cplx(2.0, 0.0)};
  PolyKernel zbar = PolyKernel::variable(s.poly.vars(), GZbar, i, s.poly.rank());
  return WeightedSection{s.poly.derivative(GZ, i) * cplx(-2.0, 0.0) +
                         zbar * s.poly * cplx(2.0 * kPi, 0.0)};
}

WeightedSection apply_model_laplacian(const WeightedSection& s) {
  WeightedSection acc{PolyKernel::zero(s.poly.vars(), s.poly.rank())};
  for (int i = 0; i < s.n(); ++i) {
    WeightedSection t = apply_ladder(Ladder::Lower, i,
                                     apply_ladder(Ladder::Raise, i, s));
    acc.poly = acc.poly + t.poly;
  }
  return acc;
}

cplx section_inner(const WeightedSection& s1, const WeightedSection& s2) {
  if (s1.n() != s2.n()) throw ShapeError("section_inner: dimension mismatch");
  const int n = s1.n();
  cplx acc(0.0, 0.0);
  std::vector<int> alpha(n), beta(n);
  for (const auto& [m1, c1] : s1.poly.coeffs()) {
    for (const auto& [m2, c2] : s2.poly.coeffs()) {
      for (int i = 0; i < n; ++i) {
        alpha[i] = m1.e[GZ][i] + m2.e[GZbar][i];
        beta[i] = m1.e[GZbar][i] + m2.e[GZ][i];
      }
      const double mom = gaussian_moment(alpha, beta);
      if (mom != 0.0) acc += mom * (c1 * c2.adjoint()).trace();
    }
  }
  return acc;
}

PolyKernel bergman_project(const PolyKernel& g, int d) {
  if (g.vars().n != d) throw ShapeError("bergman_project: dimension mismatch");
  // View the section as the right factor of a kernel composition against the
  // model projector and evaluate the resulting kernel at Z' = 0.
  PolyKernel one = PolyKernel::identity(VarSpec{d, d, d}, g.rank());
  PolyKernel arg = g.reshape(VarSpec{d, d, d});
  PolyKernel comp = compose_core(one, arg, d);
  for (int i = 0; i < d; ++i)
    comp = comp.set_var_zero(GZp, i).set_var_zero(GZpbar, i);
  return comp.reshape(g.vars());
}

WeightedSection model_extend(const PolyKernel& g, int n, int m) {
  if (g.vars().n != m)
    throw ShapeError("model_extend: g must live on the first m variables");
  PolyKernel hol = bergman_project(g, m);
  return WeightedSection{hol.reshape(VarSpec{n, m, n})};
}

DbarSplit model_dbar_split(const PolyKernel& section, int n, int m) {
  if (section.vars().n != n) throw ShapeError("model_dbar_split: dimension");
  DbarSplit out;
  // With the Gaussian factor carried only by the normal variables, the
  // chain-rule term of L_N cancels against the frame term, so every
  // component reduces to a plain zbar_i derivative of the stored polynomial.
  for (int i = 0; i < m; ++i)
    out.horizontal.push_back(section.derivative(GZbar, i));
  for (int i = m; i < n; ++i)
    out.normal.push_back(section.derivative(GZbar, i));
  return out;
}

}  // namespace fockbar
