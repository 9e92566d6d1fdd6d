#include "fockbar/lab.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fockbar/calculus.hpp"

namespace fockbar {

namespace {

constexpr double kPi = std::numbers::pi;

// Scalar polynomial helpers for the m = 1 graph function.
cplx poly1_eval(const std::map<std::vector<int>, cplx>& f, cplx w) {
  cplx acc(0.0);
  for (const auto& [g, c] : f) acc += c * std::pow(w, g[0]);
  return acc;
}

cplx poly1_d1(const std::map<std::vector<int>, cplx>& f, cplx w) {
  cplx acc(0.0);
  for (const auto& [g, c] : f)
    if (g[0] >= 1) acc += c * static_cast<double>(g[0]) * std::pow(w, g[0] - 1);
  return acc;
}

cplx poly1_d2(const std::map<std::vector<int>, cplx>& f, cplx w) {
  cplx acc(0.0);
  for (const auto& [g, c] : f)
    if (g[0] >= 2)
      acc += c * static_cast<double>(g[0] * (g[0] - 1)) *
             std::pow(w, g[0] - 2);
  return acc;
}

struct OdeState {
  cplx w;       // chart coordinate on Y
  cplx v;       // dw/ds (unit speed)
  cplx c;       // normal frame phase
  double leg1;  // Im int conj(z) dz along the ambient curve
};

}  // namespace

FermiChart::FermiChart(const EmbeddingSpec& e) : embed(e) {
  if (e.n != 2 || e.m != 1)
    throw ShapeError("FermiChart: requires n = 2, m = 1");
  e.validate();
}

FermiChart::GeodesicState FermiChart::geodesic(cplx zy) const {
  const auto& f = embed.f[0];
  auto nhat = [&](cplx w) {
    const cplx fp = poly1_d1(f, w);
    const double s = std::sqrt(1.0 + std::norm(fp));
    return std::vector<cplx>{-std::conj(fp) / s, cplx(1.0) / s};
  };

  GeodesicState out;
  if (std::abs(zy) < 1e-300) {
    out.w = cplx(0.0);
    out.nu = nhat(cplx(0.0));
    out.leg1_im = 0.0;
    return out;
  }

  const double len = std::abs(zy);
  const cplx dir = zy / len;
  auto deriv = [&](const OdeState& s) {
    const cplx fp = poly1_d1(f, s.w);
    const cplx fpp = poly1_d2(f, s.w);
    const double lam = 1.0 + std::norm(fp);
    OdeState d;
    d.w = s.v;
    d.v = -(fpp * std::conj(fp) / lam) * s.v * s.v;
    d.c = cplx(0.0, -1.0) *
          (std::imag(fp * std::conj(fpp) * std::conj(s.v)) / lam) * s.c;
    d.leg1 = std::imag(std::conj(s.w) * s.v +
                       std::conj(poly1_eval(f, s.w)) * fp * s.v);
    return d;
  };
  auto advance = [](const OdeState& s, const OdeState& d, double h) {
    return OdeState{s.w + h * d.w, s.v + h * d.v, s.c + h * d.c,
                    s.leg1 + h * d.leg1};
  };

  OdeState s{cplx(0.0), dir, cplx(1.0), 0.0};
  const int nstep = std::max(16, static_cast<int>(steps * len) + 1);
  const double h = len / nstep;
  for (int i = 0; i < nstep; ++i) {
    const OdeState k1 = deriv(s);
    const OdeState k2 = deriv(advance(s, k1, h / 2));
    const OdeState k3 = deriv(advance(s, k2, h / 2));
    const OdeState k4 = deriv(advance(s, k3, h));
    s.w += h / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w);
    s.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    s.c += h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c);
    s.leg1 += h / 6.0 * (k1.leg1 + 2.0 * k2.leg1 + 2.0 * k3.leg1 + k4.leg1);
  }
  out.w = s.w;
  const std::vector<cplx> nh = nhat(s.w);
  const cplx ph = s.c / std::abs(s.c);  // renormalize the phase drift
  out.nu = {ph * nh[0], ph * nh[1]};
  out.leg1_im = s.leg1;
  return out;
}

std::vector<cplx> FermiChart::point(cplx zy, cplx zn) const {
  const GeodesicState g = geodesic(zy);
  const cplx fw = poly1_eval(embed.f[0], g.w);
  return {g.w + zn * g.nu[0], fw + zn * g.nu[1]};
}

double FermiChart::jacobian_density(cplx zy, cplx zn) const {
  const double h = 1e-5;
  Eigen::Matrix4d J;
  for (int k = 0; k < 4; ++k) {
    cplx dy(0.0), dn(0.0);
    if (k == 0) dy = cplx(h, 0.0);
    if (k == 1) dy = cplx(0.0, h);
    if (k == 2) dn = cplx(h, 0.0);
    if (k == 3) dn = cplx(0.0, h);
    const std::vector<cplx> zp = point(zy + dy, zn + dn);
    const std::vector<cplx> zm = point(zy - dy, zn - dn);
    J(0, k) = (zp[0].real() - zm[0].real()) / (2 * h);
    J(1, k) = (zp[0].imag() - zm[0].imag()) / (2 * h);
    J(2, k) = (zp[1].real() - zm[1].real()) / (2 * h);
    J(3, k) = (zp[1].imag() - zm[1].imag()) / (2 * h);
  }
  return std::abs(J.determinant());
}

double FermiChart::phase(int p, cplx zy, cplx zn) const {
  const GeodesicState g = geodesic(zy);
  const cplx fw = poly1_eval(embed.f[0], g.w);
  // straight normal segment z(t) = base + t zn nu, t in [0, 1]
  const cplx leg2 = std::conj(g.w) * (zn * g.nu[0]) +
                    std::conj(fw) * (zn * g.nu[1]);
  const double im = g.leg1_im + std::imag(leg2);
  return -phase_sign * p * kPi * im;
}

CompareResult rescaled_compare(const DiscreteModel& mdl,
                               const FermiChart& chart,
                               const KernelSeries& perp, std::uint32_t seed,
                               int num_pairs) {
  if (mdl.weight.n != 2 || mdl.embed.m != 1)
    throw ShapeError("rescaled_compare: requires n = 2, m = 1");
  if (!mdl.weight.is_flat())
    throw ShapeError("rescaled_compare: requires the flat weight");
  if (perp.terms.size() < 2)
    throw ShapeError("rescaled_compare: need expansion orders 0 and 1");
  const int p = mdl.p;
  const double sp = std::sqrt(static_cast<double>(p));
  const GaussianFamily pperp{FamilyTag::P_perp, 2, 1};

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> rad(0.05, 0.7);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  CompareResult out;
  for (int rep = 0; rep < num_pairs; ++rep) {
    const cplx zy = std::polar(rad(rng), ang(rng));
    const cplx zn = std::polar(rad(rng), ang(rng));
    const cplx zyp = std::polar(rad(rng), ang(rng));
    const cplx znp = std::polar(rad(rng), ang(rng));

    const std::vector<cplx> x = chart.point(zy / sp, zn / sp);
    const std::vector<cplx> xp = chart.point(zyp / sp, znp / sp);
    const double kx = chart.jacobian_density(zy / sp, zn / sp);
    const double kxp = chart.jacobian_density(zyp / sp, znp / sp);
    const double th = chart.phase(p, zy / sp, zn / sp);
    const double thp = chart.phase(p, zyp / sp, znp / sp);

    const cplx kval = projector_kernel(mdl, ProjKind::Perp, x, xp);
    const cplx lhs = kval / (static_cast<double>(p) * p) /
                     std::sqrt(kx * kxp) *
                     std::exp(cplx(0.0, th - thp));

    const std::vector<cplx> Z{zy, zn};
    const std::vector<cplx> Zp{zyp, znp};
    const cplx model = eval_model_kernel(pperp, Z, Zp);
    const cplx j0 = perp.terms[0].eval(Z, Zp)(0, 0);
    const cplx j1 = perp.terms[1].eval(Z, Zp)(0, 0);
    out.err_r0 = std::max(out.err_r0, std::abs(lhs - j0 * model));
    out.err_r1 =
        std::max(out.err_r1, std::abs(lhs - (j0 + j1 / sp) * model));
  }
  return out;
}

DecayFit decay_fit(const DiscreteModel& mdl, std::uint32_t seed,
                   int num_pairs) {
  const int n = mdl.weight.n, m = mdl.embed.m, p = mdl.p;
  const double sp = std::sqrt(static_cast<double>(p));
  const double tlo = 4.2 / (sp * kPi);
  const double thi = 2.0 / sp;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> tdist(tlo, thi);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> wrad(0.0, 0.5 / sp);

  double sxy = 0.0, sxx = 0.0;
  std::vector<std::pair<double, double>> pts;
  for (int rep = 0; rep < num_pairs; ++rep) {
    auto sample = [&](double& t, std::vector<cplx>& x) {
      t = tdist(rng);
      if (m == 0) {
        x.assign(n, cplx(0.0));
        x[0] = std::polar(t, ang(rng));
      } else {
        const cplx w = std::polar(wrad(rng), ang(rng));
        x = mdl.embed.point({w});
        const cplx fp =
            n - m == 1 ? mdl.embed.jacobian({w})(0, 0) : cplx(0.0);
        const double s = std::sqrt(1.0 + std::norm(fp));
        const cplx off = std::polar(t, ang(rng));
        x[0] += off * (-std::conj(fp) / s);
        x[1] += off * (cplx(1.0) / s);
      }
    };
    double t, tp;
    std::vector<cplx> x, xp;
    sample(t, x);
    sample(tp, xp);
    double sep = 0.0;
    for (int i = 0; i < n; ++i) sep += std::norm(x[i] - xp[i]);
    const double d = std::sqrt(sep) + t + tp;
    const double mag =
        std::abs(projector_kernel(mdl, ProjKind::Perp, x, xp)) /
        std::pow(static_cast<double>(p), n);
    if (mag < 1e-14 || mag >= 1.0) continue;
    const double y = -std::log(mag);
    const double xv = sp * d;
    sxy += xv * y;
    sxx += xv * xv;
    pts.emplace_back(xv, y);
  }
  DecayFit out;
  out.used = static_cast<int>(pts.size());
  if (sxx > 0.0) {
    out.c = sxy / sxx;
    double num = 0.0, den = 0.0;
    for (const auto& [xv, y] : pts) {
      num += (y - out.c * xv) * (y - out.c * xv);
      den += y * y;
    }
    out.residual = den > 0.0 ? std::sqrt(num / den) : 0.0;
  }
  return out;
}

double sup_kappa_half(const WeightSpec& w, const EmbeddingSpec& e,
                      double radius, int grid) {
  double best = 0.0;
  for (int ir = 0; ir <= grid; ++ir)
    for (int ia = 0; ia < (ir == 0 ? 1 : grid); ++ia) {
      std::vector<cplx> wpt(e.m, cplx(0.0));
      if (e.m > 0)
        wpt[0] = std::polar(radius * ir / grid, 2.0 * kPi * ia / grid);
      best = std::max(best, std::sqrt(kappa_n(w, e, wpt)));
    }
  return best;
}

}  // namespace fockbar
