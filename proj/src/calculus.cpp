#include "fockbar/calculus.hpp"

#include <cmath>
#include <numbers>

namespace fockbar {

namespace {

constexpr double kPi = std::numbers::pi;

double binom(int a, int b) {
  double r = 1.0;
  for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

double factorial(int a) {
  double r = 1.0;
  for (int i = 2; i <= a; ++i) r *= i;
  return r;
}

// Per-coordinate treatment of the middle variable u_i in the composition
// integral, after factoring out the target Gaussian kernel:
//   Shifted:   u_i -> v_i + z_i, ubar_i -> vbar_i + z'bar_i
//   Centered:  u_i -> v_i,       ubar_i -> vbar_i
//   HalfShift: u_i -> v_i + z_i, ubar_i -> vbar_i
// followed by the Wick moment <v^j vbar^k> = delta_{jk} j!/pi^j.
enum class UMode { Shifted, Centered, HalfShift };

struct Opt {
  int pz;      // extra z_i power (left group)
  int qzb;     // extra z'bar_i power (right group)
  double coef;
};

void options_for(UMode mode, int a, int b, std::vector<Opt>& out) {
  out.clear();
  switch (mode) {
    case UMode::Shifted:
      for (int g = 0; g <= std::min(a, b); ++g)
        out.push_back({a - g, b - g,
                       binom(a, g) * binom(b, g) * factorial(g) /
                           std::pow(kPi, g)});
      break;
    case UMode::Centered:
      if (a == b) out.push_back({0, 0, factorial(a) / std::pow(kPi, a)});
      break;
    case UMode::HalfShift:
      if (b <= a)
        out.push_back({a - b, 0, binom(a, b) * factorial(b) / std::pow(kPi, b)});
      break;
  }
}

PolyKernel compose_generic(const PolyKernel& a1, const PolyKernel& a2, int n,
                           const std::vector<UMode>& modes) {
  if (a1.vars().right != n || a2.vars().n != n)
    throw ShapeError("compose: middle dimension mismatch");
  if (a1.rank() != a2.rank())
    throw ShapeError("compose: coefficient rank mismatch");
  VarSpec rv{a1.vars().n, a1.vars().m, a2.vars().right};
  PolyKernel result = PolyKernel::zero(rv, a1.rank());

  std::vector<std::vector<Opt>> opts(n);
  std::vector<size_t> idx(n);
  for (const auto& [m1, c1] : a1.coeffs()) {
    for (const auto& [m2, c2] : a2.coeffs()) {
      bool dead = false;
      for (int i = 0; i < n; ++i) {
        const int a = m1.e[GZp][i] + m2.e[GZ][i];
        const int b = m1.e[GZpbar][i] + m2.e[GZbar][i];
        options_for(modes[i], a, b, opts[i]);
        if (opts[i].empty()) { dead = true; break; }
      }
      if (dead) continue;
      const Mat cprod = c1 * c2;
      // Cartesian product over per-coordinate options.
      std::fill(idx.begin(), idx.end(), 0);
      std::vector<std::pair<Monomial, Mat>> terms;
      while (true) {
        Monomial mono(m1.e[GZ], m1.e[GZbar], m2.e[GZp], m2.e[GZpbar]);
        double coef = 1.0;
        for (int i = 0; i < n; ++i) {
          const Opt& o = opts[i][idx[i]];
          mono.e[GZ][i] += o.pz;
          if (o.qzb > 0) mono.e[GZpbar][i] += o.qzb;
          coef *= o.coef;
        }
        terms.emplace_back(std::move(mono), Mat(cprod * coef));
        int i = 0;
        for (; i < n; ++i) {
          if (++idx[i] < opts[i].size()) break;
          idx[i] = 0;
        }
        if (i == n) break;
      }
      result = result + poly_from_terms(rv, a1.rank(), std::move(terms));
    }
  }
  return result.pruned(0.0);
}

}  // namespace

cplx eval_model_kernel(const GaussianFamily& fam, const std::vector<cplx>& Z,
                       const std::vector<cplx>& Zp) {
  if (static_cast<int>(Z.size()) != fam.left_dim() ||
      static_cast<int>(Zp.size()) != fam.right_dim())
    throw ShapeError("eval_model_kernel: point dimension mismatch");
  cplx expo(0.0, 0.0);
  auto diag = [](const cplx& z) { return std::norm(z); };
  switch (fam.tag) {
    case FamilyTag::P_n:
    case FamilyTag::P_m: {
      const int d = fam.left_dim();
      for (int i = 0; i < d; ++i)
        expo += -kPi / 2.0 * (diag(Z[i]) + diag(Zp[i])) +
                kPi * Z[i] * std::conj(Zp[i]);
      break;
    }
    case FamilyTag::P_perp: {
      for (int i = 0; i < fam.n; ++i)
        expo += -kPi / 2.0 * (diag(Z[i]) + diag(Zp[i]));
      for (int i = 0; i < fam.m; ++i) expo += kPi * Z[i] * std::conj(Zp[i]);
      break;
    }
    case FamilyTag::E: {
      for (int i = 0; i < fam.m; ++i)
        expo += -kPi / 2.0 * (diag(Z[i]) + diag(Zp[i])) +
                kPi * Z[i] * std::conj(Zp[i]);
      for (int i = fam.m; i < fam.n; ++i) expo += -kPi / 2.0 * diag(Z[i]);
      break;
    }
  }
  return std::exp(expo);
}

double gaussian_moment(const std::vector<int>& alpha,
                       const std::vector<int>& beta) {
  if (alpha.size() != beta.size())
    throw ShapeError("gaussian_moment: tuple length mismatch");
  double r = 1.0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] != beta[i]) return 0.0;
    r *= factorial(alpha[i]) / std::pow(kPi, alpha[i]);
  }
  return r;
}

PolyKernel compose_core(const PolyKernel& a1, const PolyKernel& a2, int n) {
  std::vector<UMode> modes(n, UMode::Shifted);
  return compose_generic(a1, a2, n, modes);
}

PolyKernel compose_K(const PolyKernel& a1, const PolyKernel& a2, int n, int m) {
  if (a1.vars().n != n || a1.vars().right != n || a2.vars().n != n)
    throw ShapeError("compose_K: expects (n,n) x (n,*) kernels");
  std::vector<UMode> modes(n, UMode::Centered);
  for (int i = 0; i < m; ++i) modes[i] = UMode::Shifted;
  return compose_generic(a1, a2, n, modes);
}

PolyKernel compose_Kprime(const PolyKernel& a1, const PolyKernel& a2, int n,
                          int m) {
  if (a1.vars().n != n || a1.vars().right != n || a2.vars().n != n)
    throw ShapeError("compose_Kprime: expects (n,n) x (n,*) kernels");
  std::vector<UMode> modes(n, UMode::HalfShift);
  for (int i = 0; i < m; ++i) modes[i] = UMode::Shifted;
  return compose_generic(a1, a2, n, modes);
}

PolyKernel compose_Kdoubleprime(const PolyKernel& a1, const PolyKernel& a2,
                                int n, int m) {
  if (a1.vars().n != n || a1.vars().right != n)
    throw ShapeError("compose_Kdoubleprime: a1 must be an (n,n) kernel");
  if (m < 1) throw ShapeError("compose_Kdoubleprime: needs m >= 1");
  if (a2.vars().n != m || a2.vars().right != m)
    throw ShapeError("compose_Kdoubleprime: a2 must be an (m,m) kernel");
  // Two-stage reduction: K''[A1, A2] = K_{n,m}[A1, K_{m,m}[1, A2]].
  const PolyKernel one_m = PolyKernel::identity(VarSpec{m, m, m}, a2.rank());
  PolyKernel inner = compose_core(one_m, a2, m);
  PolyKernel embedded = inner.reshape(VarSpec{n, m, m});
  return compose_K(a1, embedded, n, m);
}

PolyKernel compose_E(const PolyKernel& a1, const PolyKernel& a2, int n, int m) {
  if (a1.vars().n != n || a1.vars().right != m)
    throw ShapeError("compose_E: a1 must be an (n, m) kernel");
  if (a2.vars().n != m || a2.vars().right != m)
    throw ShapeError("compose_E: a2 must be an (m, m) kernel");
  std::vector<UMode> modes(m, UMode::Shifted);
  return compose_generic(a1, a2, m, modes);
}

}  // namespace fockbar
