#include "fockbar/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace fockbar {

namespace {
constexpr double kPi = std::numbers::pi;

// Exponent of the model kernel (so that kernel = exp(exponent)).
cplx kernel_expo(const GaussianFamily& fam, const std::vector<cplx>& Z,
                 const std::vector<cplx>& Zp) {
  cplx e(0.0);
  switch (fam.tag) {
    case FamilyTag::P_n:
    case FamilyTag::P_m:
      for (int i = 0; i < fam.left_dim(); ++i)
        e += -kPi / 2.0 * (std::norm(Z[i]) + std::norm(Zp[i])) +
             kPi * Z[i] * std::conj(Zp[i]);
      break;
    case FamilyTag::P_perp:
      for (int i = 0; i < fam.n; ++i)
        e += -kPi / 2.0 * (std::norm(Z[i]) + std::norm(Zp[i]));
      for (int i = 0; i < fam.m; ++i) e += kPi * Z[i] * std::conj(Zp[i]);
      break;
    case FamilyTag::E:
      for (int i = 0; i < fam.m; ++i)
        e += -kPi / 2.0 * (std::norm(Z[i]) + std::norm(Zp[i])) +
             kPi * Z[i] * std::conj(Zp[i]);
      for (int i = fam.m; i < fam.n; ++i) e += -kPi / 2.0 * std::norm(Z[i]);
      break;
  }
  return e;
}

// Iterate a tensor grid over C^d; callback gets (point, weight).
template <typename F>
void for_grid(const ComplexRule& rule, int d, F&& fn) {
  const size_t q2 = rule.z.size();
  std::vector<size_t> idx(d, 0);
  std::vector<cplx> u(d);
  while (true) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      u[i] = rule.z[idx[i]];
      w *= rule.w[idx[i]];
    }
    fn(u, w);
    int i = 0;
    for (; i < d; ++i) {
      if (++idx[i] < q2) break;
      idx[i] = 0;
    }
    if (i == d) break;
  }
}

}  // namespace

GaussHermite gauss_hermite_pi(int q) {
  // Golub-Welsch on the Hermite Jacobi matrix (weight e^{-x^2}), then
  // rescale x -> x/sqrt(pi) to the unit-mass weight e^{-pi x^2}.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(q, q);
  for (int i = 1; i < q; ++i) {
    const double b = std::sqrt(i / 2.0);
    J(i, i - 1) = b;
    J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussHermite gh;
  gh.x = es.eigenvalues() / std::sqrt(kPi);
  gh.w.resize(q);
  for (int i = 0; i < q; ++i) {
    const double v0 = es.eigenvectors()(0, i);
    gh.w(i) = v0 * v0;  // weights of the unit-mass rule sum to 1
  }
  return gh;
}

ComplexRule complex_rule(int q) {
  GaussHermite gh = gauss_hermite_pi(q);
  ComplexRule r;
  r.z.reserve(static_cast<size_t>(q) * q);
  r.w.reserve(static_cast<size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      r.z.emplace_back(gh.x(a), gh.x(b));
      r.w.push_back(gh.w(a) * gh.w(b));
    }
  return r;
}

Mat oracle_bracket(Bracket which, const PolyKernel& a1, const PolyKernel& a2,
                   int n, int m, const std::vector<cplx>& Z,
                   const std::vector<cplx>& Zp, int q) {
  const int rank = a1.rank();
  const ComplexRule rule = complex_rule(q);

  if (which == Bracket::Kdoubleprime) {
    // Triple composition (A1 P_perp) o E o (A2 P_m); the middle kernel
    // factorizes as E(U, V) = e^{-pi/2 |U_N|^2} P_m(U_Y, V), so the inner
    // 2m-dimensional integral depends on U_Y only and is tabulated on the
    // U_Y subgrid.
    const GaussianFamily pm{FamilyTag::P_m, m, m};
    const GaussianFamily pperp{FamilyTag::P_perp, n, m};
    const GaussianFamily efam{FamilyTag::E, n, m};
    const cplx target = kernel_expo(efam, Z, Zp);

    // Inner table indexed by the flattened U_Y grid multi-index.
    std::vector<Mat> table;
    table.reserve(static_cast<size_t>(std::pow(rule.z.size(), m)));
    for_grid(rule, m, [&](const std::vector<cplx>& uy, double wy) {
      (void)wy;
      Mat acc = Mat::Zero(rank, rank);
      for_grid(rule, m, [&](const std::vector<cplx>& v, double wv) {
        cplx expo = kernel_expo(pm, uy, v) + kernel_expo(pm, v, Zp);
        for (int i = 0; i < m; ++i) expo += kPi * std::norm(v[i]);
        acc += (wv * std::exp(expo)) * a2.eval(v, Zp);
      });
      table.push_back(std::move(acc));
    });

    Mat out = Mat::Zero(rank, rank);
    size_t flat = 0;
    const size_t q2 = rule.z.size();
    std::vector<size_t> pow_idx(n, 0);
    for_grid(rule, n, [&](const std::vector<cplx>& u, double wu) {
      // Recover the index of the U_Y block of this node: the iteration
      // order of for_grid is row-major in the coordinate index, with the
      // first coordinate fastest.
      size_t yidx = 0, mult = 1;
      size_t f = flat;
      for (int i = 0; i < n; ++i) {
        const size_t digit = f % q2;
        f /= q2;
        if (i < m) {
          yidx += digit * mult;
          mult *= q2;
        }
      }
      cplx expo = kernel_expo(pperp, Z, u) - target;
      for (int i = m; i < n; ++i) expo += -kPi / 2.0 * std::norm(u[i]);
      for (int i = 0; i < n; ++i) expo += kPi * std::norm(u[i]);
      out += (wu * std::exp(expo)) * (a1.eval(Z, u) * table[yidx]);
      ++flat;
    });
    return out;
  }

  if (which == Bracket::EAssembly) {
    // (A1 E) o (A2 P_m): the middle integral runs over C^m only.
    const GaussianFamily efam{FamilyTag::E, n, m};
    const GaussianFamily pm{FamilyTag::P_m, m, m};
    const cplx target = kernel_expo(efam, Z, Zp);
    Mat out = Mat::Zero(rank, rank);
    for_grid(rule, m, [&](const std::vector<cplx>& v, double w) {
      cplx expo = kernel_expo(efam, Z, v) + kernel_expo(pm, v, Zp) - target;
      for (int i = 0; i < m; ++i) expo += kPi * std::norm(v[i]);
      out += (w * std::exp(expo)) * (a1.eval(Z, v) * a2.eval(v, Zp));
    });
    return out;
  }

  GaussianFamily fam1, fam2, target_fam;
  switch (which) {
    case Bracket::Core:
      fam1 = fam2 = target_fam = GaussianFamily{FamilyTag::P_n, n, n};
      break;
    case Bracket::K:
      fam1 = fam2 = target_fam = GaussianFamily{FamilyTag::P_perp, n, m};
      break;
    case Bracket::Kprime:
      fam1 = GaussianFamily{FamilyTag::P_n, n, m};
      fam2 = target_fam = GaussianFamily{FamilyTag::P_perp, n, m};
      break;
    default:
      throw ShapeError("oracle_bracket: unhandled bracket");
  }
  const cplx target = kernel_expo(target_fam, Z, Zp);
  Mat out = Mat::Zero(rank, rank);
  for_grid(rule, n, [&](const std::vector<cplx>& u, double w) {
    cplx expo = kernel_expo(fam1, Z, u) + kernel_expo(fam2, u, Zp) - target;
    for (int i = 0; i < n; ++i) expo += kPi * std::norm(u[i]);
    out += (w * std::exp(expo)) * (a1.eval(Z, u) * a2.eval(u, Zp));
  });
  return out;
}

cplx oracle_project_eval(const PolyKernel& section_poly, int d,
                         const std::vector<cplx>& Z, int q) {
  const ComplexRule rule = complex_rule(q);
  const GaussianFamily pd{FamilyTag::P_n, d, d};
  cplx out(0.0);
  const std::vector<cplx> dummy(section_poly.vars().right, cplx(0.0));
  for_grid(rule, d, [&](const std::vector<cplx>& u, double w) {
    cplx expo = kernel_expo(pd, Z, u);
    for (int i = 0; i < d; ++i) expo += kPi / 2.0 * std::norm(u[i]);
    out += w * std::exp(expo) * section_poly.eval(u, dummy)(0, 0);
  });
  return out;
}

}  // namespace fockbar
