#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fockbar/discrete.hpp"

using namespace fockbar;

namespace {
const double kPi = std::numbers::pi;

double fact(int a) {
  double r = 1;
  for (int i = 2; i <= a; ++i) r *= i;
  return r;
}

WeightSpec cubic_weight(int n, double eps) {
  WeightSpec w = WeightSpec::flat(n);
  std::vector<int> e2(n, 0), e1(n, 0);
  e2[0] = 2;
  e1[0] = 1;
  w.phi1[{e2, e1}] = cplx(eps / 2.0);
  w.phi1[{e1, e2}] = cplx(eps / 2.0);
  return w;
}

EmbeddingSpec parabola(double c) {
  EmbeddingSpec e = EmbeddingSpec::flat(2, 1);
  e.f[0][{2}] = cplx(c);
  return e;
}
}  // namespace

TEST_CASE("multi-index enumeration is graded and complete") {
  auto idx = multi_indices(2, 3);
  CHECK(idx.size() == 10);  // C(2+3, 2)
  CHECK(idx.front() == std::vector<int>{0, 0});
  int prev = 0;
  for (const auto& a : idx) {
    const int deg = a[0] + a[1];
    CHECK(deg >= prev);
    prev = deg;
  }
  CHECK(multi_indices(0, 5).size() == 1);
}

TEST_CASE("weight validation") {
  WeightSpec w = WeightSpec::flat(1);
  w.phi1[{{2}, {1}}] = cplx(0.1);
  CHECK_THROWS_AS(w.validate(), ShapeError);  // missing conjugate partner
  w.phi1[{{1}, {2}}] = cplx(0.1);
  CHECK_NOTHROW(w.validate());

  WeightSpec lin = WeightSpec::flat(1);
  lin.phi1[{{1}, {0}}] = cplx(0.3);
  lin.phi1[{{0}, {1}}] = cplx(0.3);
  CHECK_THROWS_AS(lin.validate(), ShapeError);

  WeightSpec pure = WeightSpec::flat(1);
  pure.phi1[{{2}, {0}}] = cplx(0.3);
  pure.phi1[{{0}, {2}}] = cplx(0.3);
  CHECK_THROWS_AS(pure.validate(), ShapeError);
}

TEST_CASE("embedding jets") {
  EmbeddingSpec e = parabola(0.4);
  e.validate();
  CHECK(e.degree() == 2);
  auto fv = e.eval({cplx(0.5)});
  CHECK(std::abs(fv[0] - cplx(0.1)) < 1e-14);
  auto J = e.jacobian({cplx(0.5)});
  CHECK(std::abs(J(0, 0) - cplx(0.4)) < 1e-14);
  auto A = e.second_fundamental_form();
  REQUIRE(A.size() == 1);
  CHECK(std::abs(A.at({1, 0, 0}) - cplx(0.8)) < 1e-14);

  EmbeddingSpec bad = EmbeddingSpec::flat(2, 1);
  bad.f[0][{1}] = cplx(1.0);  // nonzero first jet
  CHECK_THROWS_AS(bad.validate(), ShapeError);
}

TEST_CASE("flat ambient gram matches the closed form") {
  const int p = 4, D = 8;
  DiscreteModel mdl = build_discrete_model(p, D, WeightSpec::flat(1),
                                           EmbeddingSpec::flat(1, 1), 18);
  REQUIRE(mdl.dim() == D + 1);
  for (int a = 0; a < mdl.dim(); ++a)
    for (int b = 0; b < mdl.dim(); ++b) {
      const double want =
          a == b ? fact(a) / (p * std::pow(kPi, a)) : 0.0;
      CHECK(std::abs(mdl.gram(a, b) - cplx(want)) < 1e-14);
    }
  CHECK(mdl.cond > 1.0 - 1e-12);
}

TEST_CASE("curved-weight gram is hermitian, converged, and near-flat") {
  const int p = 8, D = 6;
  DiscreteModel mdl = build_discrete_model(p, D, cubic_weight(1, 0.05),
                                           EmbeddingSpec::flat(1, 1), 16);
  CHECK((mdl.gram - mdl.gram.adjoint()).norm() < 1e-12);
  DiscreteModel flat = build_discrete_model(p, D, WeightSpec::flat(1),
                                            EmbeddingSpec::flat(1, 1), 16);
  // the perturbation is O(eps / sqrt(p)) relative
  for (int a = 0; a < mdl.dim(); ++a) {
    const double rel = std::abs(mdl.gram(a, a) / flat.gram(a, a) - 1.0);
    CHECK(rel < 0.2);
  }
}

TEST_CASE("flat restriction and extension norms") {
  for (int p : {4, 8, 16}) {
    DiscreteModel mdl = build_discrete_model(p, 8, WeightSpec::flat(2),
                                             EmbeddingSpec::flat(2, 1), 18);
    CHECK(mdl.rank == mdl.dim_y());
    OperatorNorms nr = operator_norms(mdl, 7u, 10);
    CHECK(nr.res_norm == doctest::Approx(std::sqrt((double)p)).epsilon(1e-10));
    CHECK(nr.ext_norm ==
          doctest::Approx(1.0 / std::sqrt((double)p)).epsilon(1e-10));
    CHECK(nr.res_norm * nr.ext_norm == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("projector algebra at sample points") {
  DiscreteModel mdl = build_discrete_model(8, 8, WeightSpec::flat(2),
                                           EmbeddingSpec::flat(2, 1), 18);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int rep = 0; rep < 6; ++rep) {
    std::vector<cplx> Z{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    std::vector<cplx> Zp{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    const cplx full = projector_kernel(mdl, ProjKind::Full, Z, Zp);
    const cplx perp = projector_kernel(mdl, ProjKind::Perp, Z, Zp);
    const cplx van = projector_kernel(mdl, ProjKind::Vanishing, Z, Zp);
    CHECK(std::abs(full - perp - van) < 1e-10);
    // hermitian symmetry
    const cplx swapped = projector_kernel(mdl, ProjKind::Perp, Zp, Z);
    CHECK(std::abs(perp - std::conj(swapped)) < 1e-10);
  }
}

TEST_CASE("rank-one flat perp kernel has a closed form") {
  const int p = 8;
  DiscreteModel mdl = build_discrete_model(p, 8, WeightSpec::flat(1),
                                           EmbeddingSpec::flat(1, 0), 18);
  CHECK(mdl.rank == 1);
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<cplx> Z{cplx(u(rng), u(rng))};
    std::vector<cplx> Zp{cplx(u(rng), u(rng))};
    const cplx got = projector_kernel(mdl, ProjKind::Perp, Z, Zp);
    const cplx want =
        (double)p *
        std::exp(-p * kPi / 2.0 * (std::norm(Z[0]) + std::norm(Zp[0])));
    CHECK(std::abs(got - want) < 1e-10);
  }
}

TEST_CASE("extension inverts restriction and has minimal norm") {
  DiscreteModel mdl = build_discrete_model(8, 10, WeightSpec::flat(2),
                                           parabola(0.3), 20);
  CHECK(mdl.rank == mdl.dim_y());
  std::mt19937 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd gy(mdl.dim_y());
  for (int i = 0; i < gy.size(); ++i) gy(i) = cplx(g(rng), g(rng));
  const Eigen::VectorXcd c = extend_minimal_norm(mdl, gy);
  CHECK((mdl.restr * c - gy).norm() < 1e-8 * gy.norm());
  // minimality: adding anything in the null space of the restriction can
  // only increase the ambient norm
  const double base = section_norm(mdl, c);
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::VectorXcd h(mdl.dim());
    for (int i = 0; i < h.size(); ++i) h(i) = cplx(g(rng), g(rng));
    const Eigen::VectorXcd h0 = h - extend_minimal_norm(mdl, mdl.restr * h);
    CHECK((mdl.restr * h0).norm() < 1e-8 * h.norm());
    CHECK(section_norm(mdl, c + h0) >= base - 1e-10);
  }
}

TEST_CASE("flat extension of the constant has unit sup ratio") {
  const int p = 8;
  DiscreteModel mdl = build_discrete_model(p, 8, WeightSpec::flat(2),
                                           EmbeddingSpec::flat(2, 1), 18);
  Eigen::VectorXcd gy = Eigen::VectorXcd::Zero(mdl.dim_y());
  gy(0) = cplx(1.0);
  const Eigen::VectorXcd c = extend_minimal_norm(mdl, gy);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<cplx> Z{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    const double want = std::exp(
        -p * kPi / 2.0 * (std::norm(Z[0]) + std::norm(Z[1])));
    CHECK(std::abs(section_value(mdl, c, Z) - cplx(want)) < 1e-10);
  }
}

TEST_CASE("norms are consistent with the gram matrix") {
  DiscreteModel mdl = build_discrete_model(8, 6, cubic_weight(1, 0.05),
                                           EmbeddingSpec::flat(1, 1), 16);
  std::mt19937 rng(17);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd c(mdl.dim());
  for (int i = 0; i < c.size(); ++i) c(i) = cplx(g(rng), g(rng));
  const double direct = std::sqrt((c.adjoint() * mdl.gram * c)(0).real());
  CHECK(section_norm(mdl, c) == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("volume density") {
  // flat everything: identically 1
  CHECK(kappa_n(WeightSpec::flat(2), EmbeddingSpec::flat(2, 1),
                {cplx(0.3, -0.2)}) == doctest::Approx(1.0).epsilon(1e-12));
  // flat weight over a graph: 1 + |f'(w)|^2
  EmbeddingSpec e = parabola(0.4);
  const cplx w0(0.25, 0.1);
  const double fp = std::abs(cplx(0.8) * w0);
  CHECK(kappa_n(WeightSpec::flat(2), e, {w0}) ==
        doctest::Approx(1.0 + fp * fp).epsilon(1e-10));
}

TEST_CASE("curved models keep res * ext >= 1") {
  DiscreteModel mdl = build_discrete_model(8, 10, WeightSpec::flat(2),
                                           parabola(0.3), 20);
  OperatorNorms nr = operator_norms(mdl, 3u, 5);
  CHECK(nr.res_norm * nr.ext_norm >= 1.0 - 1e-10);
  CHECK(nr.linf_ratio > 0.0);
}
