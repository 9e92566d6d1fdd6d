#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fockbar/lambda.hpp"

using namespace fockbar;

TEST_CASE("contour integral on the basis examples") {
  CHECK(std::abs(contour_integral(LambdaRational::pole0(1))) < 1e-14);
  // 1/(lambda(lambda-1)) = 1/(lambda-1) - 1/lambda
  LambdaRational f = LambdaRational::pole0(1) * LambdaRational::pole1(1);
  CHECK(std::abs(contour_integral(f) - cplx_l(1.0)) < 1e-14);
  CHECK(std::abs(contour_integral(LambdaRational::pole1(2))) < 1e-14);
}

TEST_CASE("multiplication agrees with pointwise evaluation") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    LambdaRational a = LambdaRational::pole0(1, cplx_l(u(rng), u(rng))) +
                       LambdaRational::pole1(2, cplx_l(u(rng), u(rng))) +
                       LambdaRational::power(1, cplx_l(u(rng), u(rng))) +
                       LambdaRational::constant(cplx_l(u(rng), u(rng)));
    LambdaRational b = LambdaRational::pole0(2, cplx_l(u(rng), u(rng))) +
                       LambdaRational::pole1(1, cplx_l(u(rng), u(rng))) +
                       LambdaRational::power(2, cplx_l(u(rng), u(rng)));
    LambdaRational ab = a * b;
    for (double x : {0.37, -1.4, 2.9, 0.51}) {
      const cplx_l lam(x, 0.63);
      CHECK(std::abs(ab.eval(lam) - a.eval(lam) * b.eval(lam)) < 1e-9);
    }
  }
}

TEST_CASE("resolvent partial-fraction algebra") {
  // u = 1/(lambda-1) - 1/lambda is the nontrivial resolvent component.
  LambdaRational u = LambdaRational::pole1(1) - LambdaRational::pole0(1);
  CHECK(std::abs(contour_integral(u) - cplx_l(1.0)) < 1e-14);
  LambdaRational u2 = u * u;
  CHECK(std::abs(contour_integral(u2) - cplx_l(-2.0)) < 1e-14);
  // u^3 = 1/(l-1)^3 - 3/((l-1)^2 l) + 3/((l-1) l^2) - 1/l^3; the two mixed
  // terms contribute residues +3 and +3 at l = 1.
  LambdaRational u3 = u2 * u;
  CHECK(std::abs(contour_integral(u3) - cplx_l(6.0)) < 1e-14);
}

TEST_CASE("idempotent projector symbol") {
  // rho = 1/(lambda-1) + poly parts representing lambda/(lambda-1) .. etc.
  // (lambda)/(lambda-1) = 1 + 1/(lambda-1); squaring keeps residue algebra
  // consistent with pointwise values.
  LambdaRational r = LambdaRational::constant(1.0) + LambdaRational::pole1(1);
  LambdaRational r2 = r * r;
  const cplx_l lam(0.4, 0.8);
  CHECK(std::abs(r2.eval(lam) - r.eval(lam) * r.eval(lam)) < 1e-12);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(LambdaRational::pole0(0), DomainError);
  CHECK_THROWS_AS(LambdaRational::pole1(-1), DomainError);
  CHECK_THROWS_AS(LambdaRational::power(-2), DomainError);
}

TEST_CASE("is_zero and cancellation") {
  LambdaRational a = LambdaRational::pole1(1) + LambdaRational::power(2);
  LambdaRational z = a - a;
  CHECK(z.is_zero());
  CHECK(z.at_zero().empty());
  CHECK(z.at_one().empty());
  CHECK(z.polynomial().empty());
}
