#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fockbar/calculus.hpp"
#include "test_util.hpp"

using namespace fockbar;
using testutil::random_kernel;
using testutil::random_parity_kernel;

namespace {
const VarSpec kV21{2, 1, 2};
const double kPi = std::numbers::pi;

PolyKernel one(const VarSpec& v = kV21) {
  return PolyKernel::constant(v, cplx(1.0));
}
PolyKernel var(Group g, int i, const VarSpec& v = kV21) {
  return PolyKernel::variable(v, g, i);
}
}  // namespace

TEST_CASE("gaussian moments") {
  CHECK(gaussian_moment({}, {}) == doctest::Approx(1.0));
  CHECK(gaussian_moment({1}, {1}) == doctest::Approx(1.0 / kPi));
  CHECK(gaussian_moment({2}, {2}) == doctest::Approx(2.0 / (kPi * kPi)));
  CHECK(gaussian_moment({1, 0}, {0, 1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(gaussian_moment({1}, {1, 0}), ShapeError);
}

TEST_CASE("core bracket identities") {
  VarSpec v22{2, 2, 2};
  PolyKernel id = one(v22);
  CHECK(compose_core(id, id, 2).coeff_distance(id) < kCoeffTol);

  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      PolyKernel a2 = var(GZ, i, v22) * var(GZbar, j, v22);
      PolyKernel expect = var(GZ, i, v22) * var(GZpbar, j, v22);
      if (i == j) expect = expect + one(v22) * cplx(1.0 / kPi);
      CHECK(compose_core(id, a2, 2).coeff_distance(expect) < kCoeffTol);

      PolyKernel b2 = var(GZbar, i, v22) * var(GZbar, j, v22);
      PolyKernel bexpect = var(GZpbar, i, v22) * var(GZpbar, j, v22);
      CHECK(compose_core(id, b2, 2).coeff_distance(bexpect) < kCoeffTol);
    }
}

TEST_CASE("perp bracket identities") {
  PolyKernel id = one();
  CHECK(compose_K(id, id, 2, 1).coeff_distance(id) < kCoeffTol);

  // A real normal-variable factor in the middle annihilates the bracket.
  std::mt19937 rng(21);
  PolyKernel a1 = random_kernel(rng, kV21, 2, 3);
  PolyKernel ay = random_kernel(rng, kV21, 2, 3);
  // keep a1, ay free of normal variables
  a1 = a1.restrict_normal_zero(GZ).restrict_normal_zero(GZbar)
           .restrict_normal_zero(GZp).restrict_normal_zero(GZpbar);
  ay = ay.restrict_normal_zero(GZ).restrict_normal_zero(GZbar)
           .restrict_normal_zero(GZp).restrict_normal_zero(GZpbar);
  PolyKernel Zk = var(GZ, 1) + var(GZbar, 1);
  CHECK(compose_K(a1, Zk * ay, 2, 1).is_zero());

  // A tangential z_i passes out of the bracket.
  PolyKernel P = var(GZ, 1) * var(GZ, 1);  // independent of z_0, zbar_0
  PolyKernel lhs = compose_K(id, P * var(GZ, 0), 2, 1);
  PolyKernel rhs = compose_K(id, P, 2, 1) * var(GZ, 0);
  CHECK(lhs.coeff_distance(rhs) < kCoeffTol);
  // ... and a tangential zbar_i exits as zbar'_i.
  PolyKernel lhs2 = compose_K(id, P * var(GZbar, 0), 2, 1);
  PolyKernel rhs2 = compose_K(id, P, 2, 1) * var(GZpbar, 0);
  CHECK(lhs2.coeff_distance(rhs2) < kCoeffTol);
}

TEST_CASE("right-variable transparency and middle-variable transfer") {
  std::mt19937 rng(22);
  for (int rep = 0; rep < 5; ++rep) {
    PolyKernel a1 = random_kernel(rng, kV21, 2, 3);
    PolyKernel a2 = random_kernel(rng, kV21, 2, 3);
    PolyKernel Pp = var(GZp, 0) * var(GZp, 1) + one();
    CHECK(compose_K(a1, a2 * Pp, 2, 1)
              .coeff_distance(compose_K(a1, a2, 2, 1) * Pp) < 1e-10);
    // P(Z') on the left transfers to P(Z) on the right factor.
    PolyKernel Pz = var(GZ, 0) * var(GZ, 1) + one();
    CHECK(compose_K(a1 * Pp, a2, 2, 1)
              .coeff_distance(compose_K(a1, Pz * a2, 2, 1)) < 1e-10);
  }
}

TEST_CASE("prime bracket identities") {
  PolyKernel id = one();
  CHECK(compose_Kprime(id, id, 2, 1).coeff_distance(id) < kCoeffTol);
  for (int j = 0; j < 2; ++j) {
    PolyKernel zj = var(GZ, j);
    CHECK(compose_Kprime(id, zj, 2, 1).coeff_distance(zj) < kCoeffTol);
  }
}

TEST_CASE("double-prime bracket identities") {
  VarSpec vres{2, 1, 1};
  VarSpec vsub{1, 1, 1};
  PolyKernel id = one();
  PolyKernel idm = one(vsub);
  PolyKernel r = compose_Kdoubleprime(id, idm, 2, 1);
  CHECK(r.coeff_distance(one(vres)) < kCoeffTol);

  PolyKernel a2 = var(GZ, 0, vsub) * var(GZbar, 0, vsub);
  PolyKernel expect = var(GZ, 0, vres) * var(GZpbar, 0, vres) +
                      one(vres) * cplx(1.0 / kPi);
  CHECK(compose_Kdoubleprime(id, a2, 2, 1).coeff_distance(expect) < kCoeffTol);
}

TEST_CASE("n=m reduces the perp bracket to the core bracket") {
  VarSpec v22{2, 2, 2};
  std::mt19937 rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    PolyKernel a1 = random_kernel(rng, v22, 3, 3);
    PolyKernel a2 = random_kernel(rng, v22, 3, 3);
    CHECK(compose_K(a1, a2, 2, 2)
              .coeff_distance(compose_core(a1, a2, 2)) < kCoeffTol);
  }
}

TEST_CASE("bilinearity") {
  std::mt19937 rng(24);
  PolyKernel a1 = random_kernel(rng, kV21, 2, 3);
  PolyKernel a1p = random_kernel(rng, kV21, 2, 3);
  PolyKernel a2 = random_kernel(rng, kV21, 2, 3);
  const cplx s(0.7, -0.3);
  PolyKernel lhs = compose_K(a1 * s + a1p, a2, 2, 1);
  PolyKernel rhs = compose_K(a1, a2, 2, 1) * s + compose_K(a1p, a2, 2, 1);
  CHECK(lhs.coeff_distance(rhs) < 1e-10);
}

TEST_CASE("degree and parity laws") {
  std::mt19937 rng(25);
  for (int rep = 0; rep < 10; ++rep) {
    PolyKernel a1 = random_kernel(rng, kV21, 3, 3);
    PolyKernel a2 = random_kernel(rng, kV21, 3, 3);
    if (a1.is_zero() || a2.is_zero()) continue;
    PolyKernel r = compose_K(a1, a2, 2, 1);
    CHECK(r.degree() <= a1.degree() + a2.degree());
  }
  for (int rep = 0; rep < 10; ++rep) {
    const bool odd1 = rep % 2 == 0;
    const bool odd2 = rep % 3 == 0;
    PolyKernel a1 = random_parity_kernel(rng, kV21, 3, 3, odd1);
    PolyKernel a2 = random_parity_kernel(rng, kV21, 3, 3, odd2);
    PolyKernel r = compose_K(a1, a2, 2, 1);
    if (r.is_zero()) continue;
    const Parity want = (odd1 == odd2) ? Parity::Even : Parity::Odd;
    CHECK(r.parity() == want);
  }
}

TEST_CASE("bracket shape errors") {
  PolyKernel a = one(VarSpec{1, 0, 1});
  CHECK_THROWS_AS(compose_core(a, one(), 2), ShapeError);
  CHECK_THROWS_AS(compose_K(one(), a, 2, 1), ShapeError);
  CHECK_THROWS_AS(compose_Kdoubleprime(one(), one(), 2, 1), ShapeError);
}
