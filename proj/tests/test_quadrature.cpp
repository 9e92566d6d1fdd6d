#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fockbar/quadrature.hpp"
#include "test_util.hpp"

using namespace fockbar;
using testutil::random_kernel;
using testutil::random_point;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("one-dimensional rule moments") {
  GaussHermite gh = gauss_hermite_pi(24);
  double m0 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < gh.x.size(); ++i) {
    m0 += gh.w(i);
    m2 += gh.w(i) * gh.x(i) * gh.x(i);
    m4 += gh.w(i) * std::pow(gh.x(i), 4);
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m2 == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
  CHECK(m4 == doctest::Approx(3.0 / (4.0 * kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("complex rule reproduces the gaussian moments") {
  ComplexRule r = complex_rule(20);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      cplx acc(0.0);
      for (size_t i = 0; i < r.z.size(); ++i)
        acc += r.w[i] * std::pow(r.z[i], a) * std::pow(std::conj(r.z[i]), b);
      const double want = gaussian_moment({a}, {b});
      CHECK(std::abs(acc - cplx(want)) < 1e-10);
    }
}

TEST_CASE("core bracket agrees with quadrature") {
  std::mt19937 rng(61);
  const VarSpec v22{2, 2, 2};
  for (int rep = 0; rep < 4; ++rep) {
    PolyKernel a1 = random_kernel(rng, v22, 3, 3);
    PolyKernel a2 = random_kernel(rng, v22, 3, 3);
    PolyKernel sym = compose_core(a1, a2, 2);
    auto Z = random_point(rng, 2, 0.7);
    auto Zp = random_point(rng, 2, 0.7);
    Mat num = oracle_bracket(Bracket::Core, a1, a2, 2, 2, Z, Zp, 24);
    CHECK(std::abs(num(0, 0) - sym.eval(Z, Zp)(0, 0)) < 1e-8);
  }
}

TEST_CASE("perp and prime brackets agree with quadrature") {
  std::mt19937 rng(62);
  const VarSpec v21{2, 1, 2};
  for (int rep = 0; rep < 4; ++rep) {
    PolyKernel a1 = random_kernel(rng, v21, 3, 3);
    PolyKernel a2 = random_kernel(rng, v21, 3, 3);
    auto Z = random_point(rng, 2, 0.7);
    auto Zp = random_point(rng, 2, 0.7);

    PolyKernel symK = compose_K(a1, a2, 2, 1);
    Mat numK = oracle_bracket(Bracket::K, a1, a2, 2, 1, Z, Zp, 24);
    CHECK(std::abs(numK(0, 0) - symK.eval(Z, Zp)(0, 0)) < 1e-8);

    PolyKernel symP = compose_Kprime(a1, a2, 2, 1);
    Mat numP = oracle_bracket(Bracket::Kprime, a1, a2, 2, 1, Z, Zp, 24);
    CHECK(std::abs(numP(0, 0) - symP.eval(Z, Zp)(0, 0)) < 1e-8);
  }
}

TEST_CASE("extension-assembly bracket agrees with quadrature") {
  std::mt19937 rng(64);
  const VarSpec vE{2, 1, 1};
  const VarSpec v11{1, 1, 1};
  for (int rep = 0; rep < 3; ++rep) {
    PolyKernel a1 = random_kernel(rng, vE, 2, 3);
    PolyKernel a2 = random_kernel(rng, v11, 2, 3);
    PolyKernel sym = compose_E(a1, a2, 2, 1);
    auto Z = random_point(rng, 2, 0.7);
    auto Zpy = random_point(rng, 1, 0.7);
    Mat num = oracle_bracket(Bracket::EAssembly, a1, a2, 2, 1, Z, Zpy, 24);
    CHECK(std::abs(num(0, 0) - sym.eval(Z, Zpy)(0, 0)) < 1e-8);
  }
}

TEST_CASE("double-prime bracket agrees with quadrature") {
  std::mt19937 rng(63);
  const VarSpec v21{2, 1, 2};
  const VarSpec v11{1, 1, 1};
  for (int rep = 0; rep < 3; ++rep) {
    PolyKernel a1 = random_kernel(rng, v21, 2, 2);
    PolyKernel a2 = random_kernel(rng, v11, 2, 2);
    PolyKernel sym = compose_Kdoubleprime(a1, a2, 2, 1);
    auto Z = random_point(rng, 2, 0.7);
    auto Zpy = random_point(rng, 1, 0.7);
    Mat num = oracle_bracket(Bracket::Kdoubleprime, a1, a2, 2, 1, Z, Zpy, 20);
    CHECK(std::abs(num(0, 0) - sym.eval(Z, Zpy)(0, 0)) < 1e-8);
  }
}
