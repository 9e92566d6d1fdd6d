#include "fockbar/lambda.hpp"

#include <cmath>
#include <vector>

namespace fockbar {

namespace {

using Poly = std::vector<cplx_l>;  // coefficients of lambda^k

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, cplx_l(0.0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

void add_scaled(Poly& a, const Poly& b, const cplx_l& s) {
  if (a.size() < b.size()) a.resize(b.size(), cplx_l(0.0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += s * b[i];
}

// (lambda - 1)^k
Poly pow_lm1(int k) {
  Poly r{cplx_l(1.0)};
  const Poly f{cplx_l(-1.0), cplx_l(1.0)};
  for (int i = 0; i < k; ++i) r = mul(r, f);
  return r;
}

// lambda^k
Poly pow_l(int k) {
  Poly r(k + 1, cplx_l(0.0));
  r[k] = cplx_l(1.0);
  return r;
}

double binom(int a, int b) {
  double r = 1.0;
  for (int i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
  return r;
}

// Rebuild the partial-fraction form of P(lambda) / (lambda^a (lambda-1)^b).
struct Decomposed {
  std::map<int, cplx_l> p0, p1, poly;
};

Decomposed decompose(const Poly& P, int a, int b) {
  Decomposed out;
  if (P.empty()) return out;
  const int degP = static_cast<int>(P.size()) - 1;

  // Principal part at 0: Taylor of P(lambda)/(lambda-1)^b at 0.
  // 1/(lambda-1)^b = (-1)^b sum_k C(b-1+k, k) lambda^k.
  for (int k = 0; k < a; ++k) {
    cplx_l d(0.0);
    for (int j = 0; j <= k && j <= degP; ++j)
      d += P[j] * std::pow(-1.0, b) * binom(b - 1 + (k - j), k - j);
    if (d != cplx_l(0.0)) out.p0[a - k] += d;
  }

  // Principal part at 1: Taylor of P(1+mu)/(1+mu)^a at mu = 0.
  // P(1+mu) coefficients via binomial shift; 1/(1+mu)^a = sum (-1)^k C(a-1+k,k) mu^k.
  Poly shifted(degP + 1, cplx_l(0.0));
  for (int j = 0; j <= degP; ++j)
    for (int k = 0; k <= j; ++k) shifted[k] += P[j] * binom(j, k);
  for (int k = 0; k < b; ++k) {
    cplx_l d(0.0);
    for (int j = 0; j <= k && j <= degP; ++j)
      d += shifted[j] * std::pow(-1.0, k - j) * binom(a - 1 + (k - j), k - j);
    if (d != cplx_l(0.0)) out.p1[b - k] += d;
  }

  // Polynomial part: long division of P by lambda^a (lambda-1)^b.
  const int degD = a + b;
  if (degP >= degD) {
    Poly denom = mul(pow_l(a), pow_lm1(b));
    Poly rem = P;
    for (int k = degP - degD; k >= 0; --k) {
      const cplx_l q = rem[k + degD] / denom[degD];
      if (q != cplx_l(0.0)) {
        out.poly[k] += q;
        for (int j = 0; j <= degD; ++j) rem[k + j] -= q * denom[j];
      }
    }
  }
  return out;
}

}  // namespace

void LambdaRational::prune() {
  auto drop = [](std::map<int, cplx_l>& mp) {
    for (auto it = mp.begin(); it != mp.end();)
      it = (it->second == cplx_l(0.0)) ? mp.erase(it) : std::next(it);
  };
  drop(p0_);
  drop(p1_);
  drop(poly_);
}

LambdaRational LambdaRational::constant(const cplx_l& c) {
  return power(0, c);
}

LambdaRational LambdaRational::pole0(int j, const cplx_l& c) {
  if (j < 1) throw DomainError("pole0: order must be >= 1");
  LambdaRational r;
  r.p0_[j] = c;
  r.prune();
  return r;
}

LambdaRational LambdaRational::pole1(int j, const cplx_l& c) {
  if (j < 1) throw DomainError("pole1: order must be >= 1");
  LambdaRational r;
  r.p1_[j] = c;
  r.prune();
  return r;
}

LambdaRational LambdaRational::power(int j, const cplx_l& c) {
  if (j < 0) throw DomainError("power: exponent must be >= 0");
  LambdaRational r;
  r.poly_[j] = c;
  r.prune();
  return r;
}

LambdaRational LambdaRational::operator+(const LambdaRational& o) const {
  LambdaRational r = *this;
  for (const auto& [j, c] : o.p0_) r.p0_[j] += c;
  for (const auto& [j, c] : o.p1_) r.p1_[j] += c;
  for (const auto& [j, c] : o.poly_) r.poly_[j] += c;
  r.prune();
  return r;
}

LambdaRational LambdaRational::operator-(const LambdaRational& o) const {
  return *this + o * cplx_l(-1.0);
}

LambdaRational LambdaRational::operator*(const cplx_l& s) const {
  LambdaRational r = *this;
  for (auto& [j, c] : r.p0_) c *= s;
  for (auto& [j, c] : r.p1_) c *= s;
  for (auto& [j, c] : r.poly_) c *= s;
  r.prune();
  return r;
}

LambdaRational LambdaRational::operator*(const LambdaRational& o) const {
  // Convert both factors to P(lambda) / (lambda^a (lambda-1)^b) form.
  auto to_frac = [](const LambdaRational& f, Poly& P, int& a, int& b) {
    a = f.p0_.empty() ? 0 : f.p0_.rbegin()->first;
    b = f.p1_.empty() ? 0 : f.p1_.rbegin()->first;
    P.clear();
    for (const auto& [j, c] : f.poly_)
      add_scaled(P, mul(pow_l(j + a), pow_lm1(b)), c);
    for (const auto& [j, c] : f.p0_)
      add_scaled(P, mul(pow_l(a - j), pow_lm1(b)), c);
    for (const auto& [j, c] : f.p1_)
      add_scaled(P, mul(pow_l(a), pow_lm1(b - j)), c);
  };
  Poly P1, P2;
  int a1, b1, a2, b2;
  to_frac(*this, P1, a1, b1);
  to_frac(o, P2, a2, b2);
  Decomposed d = decompose(mul(P1, P2), a1 + a2, b1 + b2);
  LambdaRational r;
  r.p0_ = std::move(d.p0);
  r.p1_ = std::move(d.p1);
  r.poly_ = std::move(d.poly);
  r.prune();
  return r;
}

bool LambdaRational::is_zero(double tol) const {
  auto ok = [tol](const std::map<int, cplx_l>& mp) {
    for (const auto& [j, c] : mp)
      if (std::abs(c) > tol) return false;
    return true;
  };
  return ok(p0_) && ok(p1_) && ok(poly_);
}

cplx_l LambdaRational::eval(const cplx_l& lambda) const {
  cplx_l r(0.0);
  for (const auto& [j, c] : p0_) r += c / std::pow(lambda, j);
  for (const auto& [j, c] : p1_) r += c / std::pow(lambda - 1.0, j);
  for (const auto& [j, c] : poly_) r += c * std::pow(lambda, j);
  return r;
}

cplx_l LambdaRational::residue_at_one() const {
  auto it = p1_.find(1);
  return it == p1_.end() ? cplx_l(0.0) : it->second;
}

cplx_l contour_integral(const LambdaRational& f) {
  return f.residue_at_one();
}

}  // namespace fockbar
