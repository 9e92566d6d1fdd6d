#include "fockbar/expansion.hpp"

#include <cmath>
#include <numbers>

namespace fockbar {

namespace {

constexpr double kPi = std::numbers::pi;

// Move the left variable groups of a left-only polynomial to the primed
// groups (P(Z) -> P(Z')); requires matching group dimensions.
PolyKernel to_primed(const PolyKernel& p) {
  if (p.vars().right != p.vars().n)
    throw ShapeError("to_primed: needs right == n");
  PolyKernel r = PolyKernel::zero(p.vars(), p.rank());
  std::vector<std::pair<Monomial, Mat>> terms;
  for (const auto& [mono, c] : p.coeffs()) {
    for (int i = 0; i < p.vars().right; ++i)
      if (mono.e[GZp][i] != 0 || mono.e[GZpbar][i] != 0)
        throw ShapeError("to_primed: input already uses primed variables");
    Monomial mo(mono.e[GZp], mono.e[GZpbar], mono.e[GZ], mono.e[GZbar]);
    terms.emplace_back(std::move(mo), c);
  }
  return poly_from_terms(p.vars(), p.rank(), std::move(terms));
}

PolyKernel restrict_to_Y(const PolyKernel& p, int m) {
  return p.restrict_normal_zero(GZ)
      .restrict_normal_zero(GZbar)
      .reshape(VarSpec{m, m, p.vars().right});
}

// lambda-rational coefficients attached to operators: identity part plus
// kernel part, both graded by the order in t = p^{-1/2}.
struct LTerm {
  LambdaRational rho;
  PolyKernel ker;
};

struct LambdaOp {
  std::map<int, LambdaRational> id;
  std::map<int, std::vector<LTerm>> ker;
};

LambdaOp multiply(const LambdaOp& X, const LambdaOp& Y, int n, int m,
                  int max_order) {
  LambdaOp R;
  for (const auto& [r1, c1] : X.id)
    for (const auto& [r2, c2] : Y.id) {
      if (r1 + r2 > max_order) continue;
      auto it = R.id.find(r1 + r2);
      if (it == R.id.end())
        R.id.emplace(r1 + r2, c1 * c2);
      else
        it->second = it->second + c1 * c2;
    }
  for (const auto& [r1, c1] : X.id)
    for (const auto& [r2, terms] : Y.ker) {
      if (r1 + r2 > max_order) continue;
      for (const auto& t : terms)
        R.ker[r1 + r2].push_back({c1 * t.rho, t.ker});
    }
  for (const auto& [r1, terms] : X.ker)
    for (const auto& [r2, c2] : Y.id) {
      if (r1 + r2 > max_order) continue;
      for (const auto& t : terms)
        R.ker[r1 + r2].push_back({t.rho * c2, t.ker});
    }
  for (const auto& [r1, t1s] : X.ker)
    for (const auto& [r2, t2s] : Y.ker) {
      if (r1 + r2 > max_order) continue;
      for (const auto& t1 : t1s)
        for (const auto& t2 : t2s)
          R.ker[r1 + r2].push_back(
              {t1.rho * t2.rho, compose_K(t1.ker, t2.ker, n, m)});
    }
  return R;
}

void add_into(LambdaOp& acc, const LambdaOp& x) {
  for (const auto& [r, c] : x.id) {
    auto it = acc.id.find(r);
    if (it == acc.id.end())
      acc.id.emplace(r, c);
    else
      it->second = it->second + c;
  }
  for (const auto& [r, ts] : x.ker)
    for (const auto& t : ts) acc.ker[r].push_back(t);
}

// Series composition over the m-dimensional model projector.
std::vector<PolyKernel> series_compose(const std::vector<PolyKernel>& a,
                                       const std::vector<PolyKernel>& b,
                                       int m, int order) {
  VarSpec v{m, m, m};
  const int rank = a.empty() ? 1 : a[0].rank();
  std::vector<PolyKernel> out(order + 1, PolyKernel::zero(v, rank));
  for (int r = 0; r <= order; ++r)
    for (int r1 = 0; r1 <= r; ++r1) {
      if (r1 >= static_cast<int>(a.size()) ||
          r - r1 >= static_cast<int>(b.size()))
        continue;
      out[r] = out[r] + compose_core(a[r1], b[r - r1], m);
    }
  for (auto& p : out) p = p.pruned(1e-14);
  return out;
}

// pi * g(u, A(w)w) with u in the z_N slots and w = zbar_Y - z'bar_Y
// (conjugate action), or the adjoint-pair half; shared builder.
PolyKernel pairing_half(const GeometryJet& jet, bool conj_half, int right_dim) {
  VarSpec v{jet.n, jet.m, right_dim};
  PolyKernel acc = PolyKernel::zero(v, jet.rank);
  for (const auto& [kij, a] : jet.A) {
    const auto [k, i, j] = kij;
    if (conj_half) {
      // (pi/2) conj(A^k_ij) z_k (zbar_i - z'bar_i)(zbar_j - z'bar_j)
      PolyKernel zk = PolyKernel::variable(v, GZ, k, jet.rank);
      PolyKernel wi = PolyKernel::variable(v, GZbar, i, jet.rank) -
                      PolyKernel::variable(v, GZpbar, i, jet.rank);
      PolyKernel wj = PolyKernel::variable(v, GZbar, j, jet.rank) -
                      PolyKernel::variable(v, GZpbar, j, jet.rank);
      acc = acc + zk * wi * wj * (std::conj(a) * kPi / 2.0);
    } else {
      // (pi/2) A^k_ij z'bar_k (z_i - z'_i)(z_j - z'_j); needs right == n.
      PolyKernel zk = PolyKernel::variable(v, GZpbar, k, jet.rank);
      PolyKernel wi = PolyKernel::variable(v, GZ, i, jet.rank) -
                      PolyKernel::variable(v, GZp, i, jet.rank);
      PolyKernel wj = PolyKernel::variable(v, GZ, j, jet.rank) -
                      PolyKernel::variable(v, GZp, j, jet.rank);
      acc = acc + zk * wi * wj * (a * kPi / 2.0);
    }
  }
  return acc;
}

}  // namespace

nlohmann::json KernelSeries::to_json() const {
  nlohmann::json j;
  j["family"] = {{"tag", static_cast<int>(family.tag)},
                 {"n", family.n},
                 {"m", family.m}};
  j["terms"] = nlohmann::json::array();
  for (const auto& t : terms) j["terms"].push_back(t.to_json());
  return j;
}

KernelSeries KernelSeries::from_json(const nlohmann::json& j) {
  KernelSeries s;
  s.family.tag = static_cast<FamilyTag>(j.at("family").at("tag").get<int>());
  s.family.n = j.at("family").at("n").get<int>();
  s.family.m = j.at("family").at("m").get<int>();
  for (const auto& t : j.at("terms")) s.terms.push_back(PolyKernel::from_json(t));
  return s;
}

void GeometryJet::validate() const {
  if (!(0 < m && m <= n)) throw ShapeError("GeometryJet: need 0 < m <= n");
  for (const auto& [kij, a] : A) {
    const auto [k, i, j] = kij;
    if (!(i < m && j < m && m <= k && k < n))
      throw ShapeError("GeometryJet: A index out of range");
    auto sym = A.find({k, j, i});
    if (sym == A.end() || std::abs(sym->second - a) > kCoeffTol)
      throw ShapeError("GeometryJet: A must be symmetric in tangent slots");
  }
  if (kappa_half.empty() || kappa_minus_half.empty())
    throw ShapeError("GeometryJet: kappa jets missing");
  if (bergman_ambient.terms.empty() || bergman_sub.terms.empty())
    throw ShapeError("GeometryJet: Bergman input series missing");
  const PolyKernel id_n =
      PolyKernel::identity(bergman_ambient.terms[0].vars(), rank);
  if (bergman_ambient.terms[0].coeff_distance(id_n) > kCoeffTol)
    throw DomainError("GeometryJet: ambient order-0 term must be Id");
  const PolyKernel id_m = PolyKernel::identity(bergman_sub.terms[0].vars(), rank);
  if (bergman_sub.terms[0].coeff_distance(id_m) > kCoeffTol)
    throw DomainError("GeometryJet: submanifold order-0 term must be Id");
}

GeometryJet GeometryJet::trivial(int n, int m, int order, int rank) {
  GeometryJet jet;
  jet.n = n;
  jet.m = m;
  jet.rank = rank;
  VarSpec vn{n, m, n}, vm{m, m, m};
  jet.kappa_half.push_back(PolyKernel::identity(vn, rank));
  jet.kappa_minus_half.push_back(PolyKernel::identity(vn, rank));
  for (int i = 1; i <= order; ++i) {
    jet.kappa_half.push_back(PolyKernel::zero(vn, rank));
    jet.kappa_minus_half.push_back(PolyKernel::zero(vn, rank));
  }
  jet.bergman_ambient.family = GaussianFamily{FamilyTag::P_n, n, m};
  jet.bergman_sub.family = GaussianFamily{FamilyTag::P_m, m, m};
  jet.bergman_ambient.terms.push_back(PolyKernel::identity(vn, rank));
  jet.bergman_sub.terms.push_back(PolyKernel::identity(vm, rank));
  for (int i = 1; i <= order; ++i) {
    jet.bergman_ambient.terms.push_back(PolyKernel::zero(vn, rank));
    jet.bergman_sub.terms.push_back(PolyKernel::zero(vm, rank));
  }
  return jet;
}

GeometryJet GeometryJet::from_A(
    int n, int m, const std::map<std::tuple<int, int, int>, cplx>& A, int order,
    int rank) {
  GeometryJet jet = trivial(n, m, order, rank);
  jet.A = A;
  jet.validate();
  if (order >= 1)
    jet.bergman_ambient.terms[1] =
        closed_form_reference(ClosedForm::J1_bergman, jet);
  return jet;
}

nlohmann::json GeometryJet::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["m"] = m;
  j["rank"] = rank;
  j["A"] = nlohmann::json::array();
  for (const auto& [kij, a] : A) {
    const auto [k, i, jj] = kij;
    j["A"].push_back(
        {{"k", k}, {"i", i}, {"j", jj}, {"re", a.real()}, {"im", a.imag()}});
  }
  j["kappa_half"] = nlohmann::json::array();
  for (const auto& p : kappa_half) j["kappa_half"].push_back(p.to_json());
  j["kappa_minus_half"] = nlohmann::json::array();
  for (const auto& p : kappa_minus_half)
    j["kappa_minus_half"].push_back(p.to_json());
  j["bergman_ambient"] = bergman_ambient.to_json();
  j["bergman_sub"] = bergman_sub.to_json();
  return j;
}

GeometryJet GeometryJet::from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  const int rank = j.value("rank", 1);
  std::map<std::tuple<int, int, int>, cplx> A;
  if (j.contains("A"))
    for (const auto& e : j.at("A")) {
      const int k = e.at("k").get<int>(), i = e.at("i").get<int>(),
                jj = e.at("j").get<int>();
      cplx a(e.value("re", 0.0), e.value("im", 0.0));
      A[{k, i, jj}] = a;
      A[{k, jj, i}] = a;
    }
  const int order = j.value("order", 1);
  GeometryJet jet = GeometryJet::from_A(n, m, A, order, rank);
  // Optional explicit overrides for higher-order user-supplied input.
  if (j.contains("bergman_ambient"))
    jet.bergman_ambient = KernelSeries::from_json(j.at("bergman_ambient"));
  if (j.contains("bergman_sub"))
    jet.bergman_sub = KernelSeries::from_json(j.at("bergman_sub"));
  if (j.contains("kappa_half")) {
    jet.kappa_half.clear();
    for (const auto& p : j.at("kappa_half"))
      jet.kappa_half.push_back(PolyKernel::from_json(p));
  }
  if (j.contains("kappa_minus_half")) {
    jet.kappa_minus_half.clear();
    for (const auto& p : j.at("kappa_minus_half"))
      jet.kappa_minus_half.push_back(PolyKernel::from_json(p));
  }
  jet.validate();
  return jet;
}

KernelSeries build_C_series(const GeometryJet& jet, int order) {
  jet.validate();
  if (static_cast<int>(jet.bergman_ambient.terms.size()) < order + 1)
    throw DomainError("build_C_series: ambient input has too few terms");
  const int n = jet.n, m = jet.m;
  std::vector<PolyKernel> J0;  // J_{r,0}(Z, Z') = J_r(Z_Y, Z')
  for (int r = 0; r <= order; ++r)
    J0.push_back(jet.bergman_ambient.terms[r]
                     .restrict_normal_zero(GZ)
                     .restrict_normal_zero(GZbar));
  KernelSeries out;
  out.family = GaussianFamily{FamilyTag::P_perp, n, m};
  for (int r = 0; r <= order; ++r) {
    PolyKernel acc = PolyKernel::zero(VarSpec{n, m, n}, jet.rank);
    for (int r0 = 0; r0 <= r; ++r0)
      acc = acc + compose_K(J0[r0].adjoint(), J0[r - r0], n, m);
    out.terms.push_back(acc.pruned(1e-14));
  }
  return out;
}

KernelSeries perp_series(const KernelSeries& c_series, int order) {
  if (c_series.family.tag != FamilyTag::P_perp)
    throw DomainError("perp_series: input family must be P_perp");
  const int n = c_series.family.n, m = c_series.family.m;
  if (static_cast<int>(c_series.terms.size()) < order + 1)
    throw DomainError("perp_series: insufficient input order");
  const int rank = c_series.terms[0].rank();
  const VarSpec v{n, m, n};
  const PolyKernel id_k = PolyKernel::identity(v, rank);
  if (c_series.terms[0].coeff_distance(id_k) > kCoeffTol)
    throw DomainError("perp_series: C_0 must be the model projector (Id)");

  // R_0 = (1 - C_0)/lambda + C_0/(lambda - 1).
  LambdaOp R0;
  R0.id[0] = LambdaRational::pole0(1);
  R0.ker[0].push_back(
      {LambdaRational::pole1(1) - LambdaRational::pole0(1), id_k});
  // D = C_t - C_0, graded by t.
  LambdaOp D;
  for (int r = 1; r <= order; ++r)
    if (!c_series.terms[r].is_zero())
      D.ker[r].push_back({LambdaRational::constant(1.0), c_series.terms[r]});

  LambdaOp total = R0;
  LambdaOp cur = R0;
  for (int j = 1; j <= order; ++j) {
    cur = multiply(multiply(cur, D, n, m, order), R0, n, m, order);
    add_into(total, cur);
  }

  KernelSeries out;
  out.family = c_series.family;
  for (int r = 0; r <= order; ++r) {
    auto id_it = total.id.find(r);
    if (id_it != total.id.end() &&
        std::abs(id_it->second.residue_at_one()) > 1e-9)
      throw DomainError(
          "perp_series: identity-part residue failed to cancel");
    PolyKernel acc = PolyKernel::zero(v, rank);
    auto ker_it = total.ker.find(r);
    if (ker_it != total.ker.end())
      for (const auto& t : ker_it->second) {
        const cplx res = contour_integral(t.rho);
        if (res != cplx(0.0)) acc = acc + t.ker * res;
      }
    out.terms.push_back(acc.pruned(1e-13));
  }
  return out;
}

KernelSeries iop_series(const KernelSeries& perp, const GeometryJet& jet,
                        int order) {
  jet.validate();
  const int n = jet.n, m = jet.m;
  if (static_cast<int>(perp.terms.size()) < order + 1 ||
      static_cast<int>(jet.bergman_sub.terms.size()) < order + 1 ||
      static_cast<int>(jet.kappa_half.size()) < order + 1)
    throw DomainError("iop_series: insufficient input order");
  // J_r^{perp,kappa} = sum J^perp_{r0} kappa^{1/2}_{N,[r-r0]}(Z').
  std::vector<PolyKernel> pk;
  for (int r = 0; r <= order; ++r) {
    PolyKernel acc = PolyKernel::zero(VarSpec{n, m, n}, jet.rank);
    for (int r0 = 0; r0 <= r; ++r0) {
      const PolyKernel& kap = jet.kappa_half[r - r0];
      if (kap.is_zero()) continue;
      acc = acc + perp.terms[r0] * to_primed(kap);
    }
    pk.push_back(acc);
  }
  KernelSeries out;
  out.family = GaussianFamily{FamilyTag::E, n, m};
  for (int r = 0; r <= order; ++r) {
    PolyKernel acc = PolyKernel::zero(VarSpec{n, m, m}, jet.rank);
    for (int r0 = 0; r0 <= r; ++r0)
      acc = acc +
            compose_Kdoubleprime(pk[r0], jet.bergman_sub.terms[r - r0], n, m);
    out.terms.push_back(acc.pruned(1e-14));
  }
  return out;
}

KernelSeries extension_series(const KernelSeries& iop, const GeometryJet& jet,
                              int order) {
  const int n = jet.n, m = jet.m;
  if (iop.family.tag != FamilyTag::E)
    throw DomainError("extension_series: input family must be E");
  if (static_cast<int>(iop.terms.size()) < order + 1 ||
      static_cast<int>(jet.kappa_minus_half.size()) < order + 1 ||
      static_cast<int>(jet.bergman_sub.terms.size()) < order + 1)
    throw DomainError("extension_series: insufficient input order");
  (void)n;
  // J_{r,G} = sum kappa^{-1/2}_{N,[r0]}(Z_Y) J^E_{r-r0,I}(Z_Y, Z'_Y) - J'_{r,Y}.
  std::vector<PolyKernel> G;
  for (int r = 0; r <= order; ++r) {
    PolyKernel acc = PolyKernel::zero(VarSpec{m, m, m}, jet.rank);
    for (int r0 = 0; r0 <= r; ++r0) {
      // kappa jets are left-only, so the primed slots can shrink directly.
      const PolyKernel kap = jet.kappa_minus_half[r0]
                                 .restrict_normal_zero(GZ)
                                 .restrict_normal_zero(GZbar)
                                 .reshape(VarSpec{m, m, m});
      if (kap.is_zero()) continue;
      acc = acc + kap * restrict_to_Y(iop.terms[r - r0], m);
    }
    acc = acc - jet.bergman_sub.terms[r];
    G.push_back(acc.pruned(1e-13));
  }
  if (!G[0].is_zero())
    throw DomainError("extension_series: J_{0,G} != 0, inconsistent input");

  // T = sum_{i>=1} (-1)^i G^i, truncated at the requested order.
  std::vector<PolyKernel> T(order + 1,
                            PolyKernel::zero(VarSpec{m, m, m}, jet.rank));
  std::vector<PolyKernel> power = G;
  int sign = -1;
  for (int i = 1; i <= order; ++i) {
    for (int r = 0; r <= order; ++r)
      T[r] = T[r] + power[r] * cplx(static_cast<double>(sign), 0.0);
    power = series_compose(power, G, m, order);
    sign = -sign;
  }

  KernelSeries out;
  out.family = iop.family;
  for (int r = 0; r <= order; ++r) {
    PolyKernel acc = iop.terms[r];
    for (int r1 = 0; r1 <= r; ++r1) {
      if (T[r - r1].is_zero()) continue;
      acc = acc + compose_E(iop.terms[r1], T[r - r1], jet.n, m);
    }
    out.terms.push_back(acc.pruned(1e-13));
  }
  return out;
}

PolyKernel closed_form_reference(ClosedForm which, const GeometryJet& jet) {
  jet.validate();
  switch (which) {
    case ClosedForm::J1_E:
      return pairing_half(jet, true, jet.m);
    case ClosedForm::J1_perp:
    case ClosedForm::J1_bergman:
      return pairing_half(jet, true, jet.n) + pairing_half(jet, false, jet.n);
  }
  throw DomainError("closed_form_reference: unknown selector");
}

}  // namespace fockbar
