#include "fockbar/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "fockbar/expansion.hpp"
#include "fockbar/lab.hpp"
#include "fockbar/model.hpp"
#include "fockbar/quadrature.hpp"

namespace fockbar {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<int> to_ints(const nlohmann::json& j) {
  return j.get<std::vector<int>>();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

void write_summary(const std::string& out_dir, const RunReport& report) {
  std::filesystem::create_directories(out_dir);
  write_text(out_dir + "/summary.json", report.summary.dump(2) + "\n");
}

nlohmann::json checks_json(const std::vector<CheckResult>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}});
  return arr;
}

void add_check(RunReport& r, const std::string& name, double value,
               double tol) {
  r.checks.push_back({name, std::isfinite(value) && value <= tol, value});
}

void add_flag(RunReport& r, const std::string& name, bool ok, double value) {
  r.checks.push_back({name, ok, value});
}

// A CSV row in the fixed column layout; missing entries stay blank.
struct CsvRow {
  int p = 0, D = 0, quad_order = 0;
  double cond = 0, res_norm = 0, ext_norm = 0, linf_ratio = 0;
  bool has_rescaled = false;
  double rescaled_err_r0 = 0, rescaled_err_r1 = 0;
  bool has_decay = false;
  double decay_c = 0, residual = 0;
};

void write_csv(const std::string& path, const std::vector<CsvRow>& rows) {
  std::ostringstream os;
  os << "p,D,quad_order,cond,res_norm,ext_norm,linf_ratio,"
        "rescaled_err_r0,rescaled_err_r1,decay_c,residual\n";
  for (const auto& r : rows) {
    os << r.p << ',' << r.D << ',' << r.quad_order << ',' << fmt(r.cond)
       << ',' << fmt(r.res_norm) << ',' << fmt(r.ext_norm) << ','
       << fmt(r.linf_ratio) << ',';
    if (r.has_rescaled)
      os << fmt(r.rescaled_err_r0) << ',' << fmt(r.rescaled_err_r1);
    else
      os << ',';
    os << ',';
    if (r.has_decay)
      os << fmt(r.decay_c) << ',' << fmt(r.residual);
    else
      os << ',';
    os << '\n';
  }
  write_text(path, os.str());
}

nlohmann::json rows_json(const std::vector<CsvRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"p", r.p},
                     {"D", r.D},
                     {"quad_order", r.quad_order},
                     {"cond", r.cond},
                     {"res_norm", r.res_norm},
                     {"ext_norm", r.ext_norm},
                     {"linf_ratio", r.linf_ratio}};
    if (r.has_rescaled) {
      j["rescaled_err_r0"] = r.rescaled_err_r0;
      j["rescaled_err_r1"] = r.rescaled_err_r1;
    }
    if (r.has_decay) {
      j["decay_c"] = r.decay_c;
      j["residual"] = r.residual;
    }
    arr.push_back(j);
  }
  return arr;
}

GeometryJet jet_from_config(const ExperimentConfig& cfg, int order) {
  const auto A = cfg.embed.second_fundamental_form();
  if (A.empty()) return GeometryJet::trivial(cfg.weight.n, cfg.embed.m, order);
  return GeometryJet::from_A(cfg.weight.n, cfg.embed.m, A, order);
}

}  // namespace

bool RunReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

int ExperimentConfig::resolve_degree(int) const {
  if (degree > 0) return degree;
  return weight.n == 1 ? 12 : 17;
}

int ExperimentConfig::resolve_quad(int p) const {
  if (quad_order > 0) return quad_order;
  return resolve_degree(p) + 10;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.seed = j.value("seed", 1234u);
  const int n = j.value("n", 2);
  const int m = j.value("m", 1);
  cfg.weight = WeightSpec::flat(n);
  if (j.contains("phi1"))
    for (const auto& t : j.at("phi1"))
      cfg.weight.phi1[{to_ints(t.at("left")), to_ints(t.at("right"))}] =
          cplx(t.value("re", 0.0), t.value("im", 0.0));
  cfg.embed = EmbeddingSpec::flat(n, m);
  if (j.contains("f")) {
    const auto& f = j.at("f");
    if (static_cast<int>(f.size()) != n - m)
      throw ShapeError("config: f must have n - m slots");
    for (int k = 0; k < n - m; ++k)
      for (const auto& t : f.at(k))
        cfg.embed.f[k][to_ints(t.at("exponents"))] =
            cplx(t.value("re", 0.0), t.value("im", 0.0));
  }
  if (j.contains("p_values")) cfg.p_values = to_ints(j.at("p_values"));
  if (cfg.p_values.empty()) throw ShapeError("config: p_values is empty");
  cfg.degree = j.value("degree", 0);
  cfg.quad_order = j.value("quad_order", 0);
  cfg.order = j.value("order", 1);
  cfg.num_pairs = j.value("num_pairs", 24);
  cfg.num_g = j.value("num_g", 20);
  cfg.weight.validate();
  cfg.embed.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read config " + path);
  nlohmann::json j;
  f >> j;
  return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j{{"seed", seed},          {"n", weight.n},
                   {"m", embed.m},          {"p_values", p_values},
                   {"degree", degree},      {"quad_order", quad_order},
                   {"order", order},        {"num_pairs", num_pairs},
                   {"num_g", num_g}};
  nlohmann::json phi1 = nlohmann::json::array();
  for (const auto& [ab, c] : weight.phi1)
    phi1.push_back({{"left", ab.first},
                    {"right", ab.second},
                    {"re", c.real()},
                    {"im", c.imag()}});
  if (!phi1.empty()) j["phi1"] = phi1;
  nlohmann::json f = nlohmann::json::array();
  for (const auto& fk : embed.f) {
    nlohmann::json slot = nlohmann::json::array();
    for (const auto& [g, c] : fk)
      slot.push_back({{"exponents", g}, {"re", c.real()}, {"im", c.imag()}});
    f.push_back(slot);
  }
  if (!embed.f.empty()) j["f"] = f;
  return j;
}

RunReport run_verify(const ExperimentConfig& cfg, const std::string& out_dir) {
  RunReport rep;
  std::mt19937 rng(cfg.seed);

  // unit element of the composition
  {
    const VarSpec v{2, 2, 2};
    const PolyKernel id = PolyKernel::identity(v);
    add_check(rep, "core_unit",
              compose_core(id, id, 2).coeff_distance(id), 1e-12);
  }
  // first moment identity of the core bracket
  {
    const VarSpec v{2, 2, 2};
    const PolyKernel id = PolyKernel::identity(v);
    const PolyKernel zz = PolyKernel::variable(v, GZ, 0) *
                          PolyKernel::variable(v, GZbar, 1);
    const PolyKernel want = PolyKernel::variable(v, GZ, 0) *
                            PolyKernel::variable(v, GZpbar, 1);
    add_check(rep, "core_moment",
              compose_core(id, zz, 2).coeff_distance(want), 1e-12);
  }
  // the perp bracket annihilates a centered normal factor
  {
    const VarSpec v{2, 1, 2};
    const PolyKernel id = PolyKernel::identity(v);
    const PolyKernel mid_a2 = PolyKernel::variable(v, GZ, 1) +
                              PolyKernel::variable(v, GZbar, 1);
    const PolyKernel mid_a1 = PolyKernel::variable(v, GZp, 1) +
                              PolyKernel::variable(v, GZpbar, 1);
    add_flag(rep, "perp_centered_annihilation",
             compose_K(mid_a1, id, 2, 1).is_zero() &&
                 compose_K(id, mid_a2, 2, 1).is_zero(),
             0.0);
  }
  // half-shift bracket passes holomorphic factors through
  {
    const VarSpec v{2, 1, 2};
    const PolyKernel id = PolyKernel::identity(v);
    const PolyKernel z1 = PolyKernel::variable(v, GZ, 1);
    add_check(rep, "prime_pass_through",
              compose_Kprime(id, z1, 2, 1).coeff_distance(z1), 1e-12);
  }
  // residues of the resolvent symbols u^k
  {
    const LambdaRational u = LambdaRational::pole1(1) - LambdaRational::pole0(1);
    const double r1 = std::abs(contour_integral(u) - cplx(1.0));
    const double r2 = std::abs(contour_integral(u * u) - cplx(-2.0));
    const double r3 = std::abs(contour_integral(u * u * u) - cplx(6.0));
    add_check(rep, "resolvent_residues", std::max({r1, r2, r3}), 1e-12);
  }
  // engine order 1 against the closed form
  {
    std::map<std::tuple<int, int, int>, cplx> A;
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    A[{1, 0, 0}] = cplx(u(rng), u(rng));
    GeometryJet jet = GeometryJet::from_A(2, 1, A, 1);
    KernelSeries P = perp_series(build_C_series(jet, 1), 1);
    add_check(rep, "order1_closed_form",
              P.terms[1].coeff_distance(
                  closed_form_reference(ClosedForm::J1_perp, jet)),
              1e-12);
    // structural laws at order 1
    add_flag(rep, "parity_degree_laws",
             P.terms[1].parity() == Parity::Odd && P.terms[1].degree() <= 3,
             static_cast<double>(P.terms[1].degree()));
  }
  // quadrature cross-checks of two brackets at a random point pair
  {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const VarSpec v{2, 1, 2};
    PolyKernel a1 = PolyKernel::variable(v, GZ, 0) +
                    PolyKernel::constant(v, cplx(u(rng), u(rng)));
    PolyKernel a2 = PolyKernel::variable(v, GZpbar, 1) * cplx(u(rng), u(rng)) +
                    PolyKernel::identity(v);
    std::vector<cplx> Z{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    std::vector<cplx> Zp{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    const PolyKernel sym = compose_K(a1, a2, 2, 1);
    const Mat num = oracle_bracket(Bracket::K, a1, a2, 2, 1, Z, Zp, 20);
    add_check(rep, "quadrature_cross_check",
              std::abs(num(0, 0) - sym.eval(Z, Zp)(0, 0)), 1e-8);
  }
  // serialization round trip
  {
    const VarSpec v{2, 1, 2};
    PolyKernel k = PolyKernel::variable(v, GZ, 0) * cplx(0.25, -1.5) +
                   PolyKernel::variable(v, GZpbar, 1) * cplx(1e-7, 3.0);
    add_check(rep, "json_round_trip",
              PolyKernel::from_json(k.to_json()).coeff_distance(k), 0.0);
  }

  rep.summary = {{"schema_version", kSchemaVersion},
                 {"mode", "verify-calculus"},
                 {"seed", cfg.seed},
                 {"checks", checks_json(rep.checks)},
                 {"passed", rep.all_passed()}};
  write_summary(out_dir, rep);
  return rep;
}

RunReport run_expand(const ExperimentConfig& cfg, const std::string& out_dir) {
  RunReport rep;
  const int order = cfg.order;
  GeometryJet jet = jet_from_config(cfg, order);
  KernelSeries C = build_C_series(jet, order);
  KernelSeries P = perp_series(C, order);
  KernelSeries I = iop_series(P, jet, order);
  KernelSeries E = extension_series(I, jet, order);

  if (order >= 1) {
    add_check(rep, "order1_perp_closed_form",
              P.terms[1].coeff_distance(
                  closed_form_reference(ClosedForm::J1_perp, jet)),
              1e-12);
    add_check(rep, "order1_extension_closed_form",
              E.terms[1].coeff_distance(
                  closed_form_reference(ClosedForm::J1_E, jet)),
              1e-12);
  }
  bool laws = true;
  int max_deg = -1;
  for (int r = 0; r <= order; ++r) {
    const Parity want = (r % 2 == 0) ? Parity::Even : Parity::Odd;
    if (!P.terms[r].is_zero() &&
        (P.terms[r].parity() != want || P.terms[r].degree() > 3 * r))
      laws = false;
    max_deg = std::max(max_deg, P.terms[r].degree());
  }
  add_flag(rep, "parity_degree_laws", laws, static_cast<double>(max_deg));

  std::filesystem::create_directories(out_dir);
  nlohmann::json series{{"C", C.to_json()},
                        {"perp", P.to_json()},
                        {"iop", I.to_json()},
                        {"extension", E.to_json()}};
  write_text(out_dir + "/expansion.json", series.dump(2) + "\n");

  rep.summary = {{"schema_version", kSchemaVersion},
                 {"mode", "expand"},
                 {"seed", cfg.seed},
                 {"order", order},
                 {"checks", checks_json(rep.checks)},
                 {"passed", rep.all_passed()}};
  write_summary(out_dir, rep);
  return rep;
}

RunReport run_simulate(const ExperimentConfig& cfg,
                       const std::string& out_dir) {
  RunReport rep;
  std::vector<CsvRow> rows;
  const bool fermi_applicable = cfg.weight.n == 2 && cfg.embed.m == 1 &&
                                cfg.weight.is_flat();
  KernelSeries P;
  if (fermi_applicable) {
    GeometryJet jet = jet_from_config(cfg, std::max(1, cfg.order));
    P = perp_series(build_C_series(jet, std::max(1, cfg.order)),
                    std::max(1, cfg.order));
  }

  for (int p : cfg.p_values) {
    const int D = cfg.resolve_degree(p);
    const int q = cfg.resolve_quad(p);
    DiscreteModel mdl = build_discrete_model(p, D, cfg.weight, cfg.embed, q);
    OperatorNorms norms = operator_norms(mdl, cfg.seed, cfg.num_g);
    CsvRow row;
    row.p = p;
    row.D = D;
    row.quad_order = q;
    row.cond = mdl.cond;
    row.res_norm = norms.res_norm;
    row.ext_norm = norms.ext_norm;
    row.linf_ratio = norms.linf_ratio;
    if (fermi_applicable) {
      FermiChart chart(cfg.embed);
      CompareResult cr =
          rescaled_compare(mdl, chart, P, cfg.seed, cfg.num_pairs);
      row.has_rescaled = true;
      row.rescaled_err_r0 = cr.err_r0;
      row.rescaled_err_r1 = cr.err_r1;
    }
    rows.push_back(row);

    const std::string tag = "p" + std::to_string(p);
    add_flag(rep, tag + "_norm_product",
             norms.res_norm * norms.ext_norm >= 1.0 - 1e-9,
             norms.res_norm * norms.ext_norm);
    if (cfg.weight.is_flat() && cfg.embed.is_flat() &&
        cfg.weight.n - cfg.embed.m == 1) {
      const double sp = std::sqrt(static_cast<double>(p));
      add_check(rep, tag + "_flat_res_norm",
                std::abs(norms.res_norm - sp), 1e-6);
      add_check(rep, tag + "_flat_ext_norm",
                std::abs(norms.ext_norm - 1.0 / sp), 1e-6);
    }
  }

  std::filesystem::create_directories(out_dir);
  write_csv(out_dir + "/results.csv", rows);
  rep.summary = {{"schema_version", kSchemaVersion},
                 {"mode", "simulate"},
                 {"seed", cfg.seed},
                 {"rows", rows_json(rows)},
                 {"checks", checks_json(rep.checks)},
                 {"passed", rep.all_passed()}};
  write_summary(out_dir, rep);
  return rep;
}

RunReport run_decay(const ExperimentConfig& cfg, const std::string& out_dir) {
  RunReport rep;
  std::vector<CsvRow> rows;
  std::vector<double> cs;
  for (int p : cfg.p_values) {
    const int D = cfg.resolve_degree(p);
    const int q = cfg.resolve_quad(p);
    DiscreteModel mdl = build_discrete_model(p, D, cfg.weight, cfg.embed, q);
    OperatorNorms norms = operator_norms(mdl, cfg.seed, cfg.num_g);
    DecayFit fit = decay_fit(mdl, cfg.seed, std::max(cfg.num_pairs, 40));
    CsvRow row;
    row.p = p;
    row.D = D;
    row.quad_order = q;
    row.cond = mdl.cond;
    row.res_norm = norms.res_norm;
    row.ext_norm = norms.ext_norm;
    row.linf_ratio = norms.linf_ratio;
    row.has_decay = true;
    row.decay_c = fit.c;
    row.residual = fit.residual;
    rows.push_back(row);
    cs.push_back(fit.c);
    add_flag(rep, "p" + std::to_string(p) + "_decay_positive", fit.c > 0.0,
             fit.c);
  }
  if (cs.size() >= 2) {
    const double lo = *std::min_element(cs.begin(), cs.end());
    const double hi = *std::max_element(cs.begin(), cs.end());
    add_flag(rep, "decay_stable", lo > 0.0 && hi / lo <= 1.5, hi / lo);
  }

  std::filesystem::create_directories(out_dir);
  write_csv(out_dir + "/results.csv", rows);
  rep.summary = {{"schema_version", kSchemaVersion},
                 {"mode", "decay"},
                 {"seed", cfg.seed},
                 {"rows", rows_json(rows)},
                 {"checks", checks_json(rep.checks)},
                 {"passed", rep.all_passed()}};
  write_summary(out_dir, rep);
  return rep;
}

}  // namespace fockbar
