#include "fockbar/poly.hpp"

#include <algorithm>
#include <cmath>

namespace fockbar {

void VarSpec::validate() const {
  if (n <= 0 || m < 0 || m > n || (right != n && right != m))
    throw ShapeError("VarSpec: need 0 <= m <= n, right in {m, n}");
}

Monomial Monomial::zero(const VarSpec& v) {
  Monomial mono;
  mono.e[GZ].assign(v.n, 0);
  mono.e[GZbar].assign(v.n, 0);
  mono.e[GZp].assign(v.right, 0);
  mono.e[GZpbar].assign(v.right, 0);
  return mono;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& g : e)
    for (int x : g) d += x;
  return d;
}

PolyKernel::PolyKernel(VarSpec vars, int rank) : vars_(vars), rank_(rank) {
  vars_.validate();
  if (rank_ <= 0) throw ShapeError("PolyKernel: rank must be positive");
}

PolyKernel PolyKernel::zero(VarSpec vars, int rank) {
  return PolyKernel(vars, rank);
}

PolyKernel PolyKernel::constant(VarSpec vars, const cplx& c, int rank) {
  PolyKernel p(vars, rank);
  Mat mat = Mat::Identity(rank, rank) * c;
  p.add_term(Monomial::zero(vars), mat);
  return p;
}

PolyKernel PolyKernel::identity(VarSpec vars, int rank) {
  return constant(vars, cplx(1.0, 0.0), rank);
}

PolyKernel PolyKernel::monomial(VarSpec vars, const Monomial& mono,
                                const cplx& c, int rank) {
  PolyKernel p(vars, rank);
  if (static_cast<int>(mono.e[GZ].size()) != vars.n ||
      static_cast<int>(mono.e[GZbar].size()) != vars.n ||
      static_cast<int>(mono.e[GZp].size()) != vars.right ||
      static_cast<int>(mono.e[GZpbar].size()) != vars.right)
    throw ShapeError("monomial: exponent tuple lengths do not match VarSpec");
  p.add_term(mono, Mat::Identity(rank, rank) * c);
  return p;
}

PolyKernel PolyKernel::variable(VarSpec vars, Group g, int i, int rank) {
  const int dim = (g == GZ || g == GZbar) ? vars.n : vars.right;
  if (i < 0 || i >= dim) throw ShapeError("variable: index out of range");
  Monomial mono = Monomial::zero(vars);
  mono.e[g][i] = 1;
  return monomial(vars, mono, cplx(1.0, 0.0), rank);
}

void PolyKernel::add_term(const Monomial& mono, const Mat& c) {
  auto it = coeffs_.find(mono);
  if (it == coeffs_.end()) {
    if (!c.isZero(0.0)) coeffs_.emplace(mono, c);
  } else {
    it->second += c;
    if (it->second.isZero(0.0)) coeffs_.erase(it);
  }
}

void PolyKernel::check_same_shape(const PolyKernel& o) const {
  if (!(vars_ == o.vars_) || rank_ != o.rank_)
    throw ShapeError("PolyKernel: shape mismatch");
}

PolyKernel PolyKernel::operator+(const PolyKernel& o) const {
  check_same_shape(o);
  PolyKernel r = *this;
  for (const auto& [mono, c] : o.coeffs_) r.add_term(mono, c);
  return r;
}

PolyKernel PolyKernel::operator-(const PolyKernel& o) const {
  check_same_shape(o);
  PolyKernel r = *this;
  for (const auto& [mono, c] : o.coeffs_) r.add_term(mono, -c);
  return r;
}

PolyKernel PolyKernel::operator*(const PolyKernel& o) const {
  check_same_shape(o);
  PolyKernel r(vars_, rank_);
  for (const auto& [ma, ca] : coeffs_) {
    for (const auto& [mb, cb] : o.coeffs_) {
      Monomial mono = ma;
      for (int g = 0; g < 4; ++g)
        for (size_t i = 0; i < mono.e[g].size(); ++i)
          mono.e[g][i] += mb.e[g][i];
      r.add_term(mono, ca * cb);
    }
  }
  return r;
}

PolyKernel PolyKernel::operator*(const cplx& s) const {
  PolyKernel r(vars_, rank_);
  if (s == cplx(0.0, 0.0)) return r;
  for (const auto& [mono, c] : coeffs_) r.coeffs_.emplace(mono, c * s);
  return r;
}

PolyKernel PolyKernel::adjoint() const {
  if (vars_.right != vars_.n)
    throw ShapeError("adjoint: defined only for square kernels (right == n)");
  PolyKernel r(vars_, rank_);
  for (const auto& [mono, c] : coeffs_) {
    // (z, zbar, z', z'bar) -> (z'bar, z', zbar, z) exponents; coefficient
    // conjugate-transposed.
    Monomial mo(mono.e[GZpbar], mono.e[GZp], mono.e[GZbar], mono.e[GZ]);
    r.add_term(mo, c.adjoint());
  }
  return r;
}

PolyKernel PolyKernel::conj_kernel() const {
  PolyKernel r(vars_, rank_);
  for (const auto& [mono, c] : coeffs_) {
    Monomial mo(mono.e[GZbar], mono.e[GZ], mono.e[GZpbar], mono.e[GZp]);
    r.add_term(mo, c.conjugate());
  }
  return r;
}

Mat PolyKernel::eval(const std::vector<cplx>& left,
                     const std::vector<cplx>& right) const {
  if (static_cast<int>(left.size()) != vars_.n ||
      static_cast<int>(right.size()) != vars_.right)
    throw ShapeError("eval: point dimensions do not match VarSpec");
  Mat acc = Mat::Zero(rank_, rank_);
  for (const auto& [mono, c] : coeffs_) {
    cplx v(1.0, 0.0);
    for (int i = 0; i < vars_.n; ++i) {
      for (int k = 0; k < mono.e[GZ][i]; ++k) v *= left[i];
      for (int k = 0; k < mono.e[GZbar][i]; ++k) v *= std::conj(left[i]);
    }
    for (int i = 0; i < vars_.right; ++i) {
      for (int k = 0; k < mono.e[GZp][i]; ++k) v *= right[i];
      for (int k = 0; k < mono.e[GZpbar][i]; ++k) v *= std::conj(right[i]);
    }
    acc += v * c;
  }
  return acc;
}

int PolyKernel::degree() const {
  int d = -1;
  for (const auto& [mono, c] : coeffs_) d = std::max(d, mono.degree());
  return d;
}

Parity PolyKernel::parity() const {
  bool even = false, odd = false;
  for (const auto& [mono, c] : coeffs_)
    (mono.degree() % 2 == 0 ? even : odd) = true;
  if (even && odd) return Parity::Mixed;
  if (odd) return Parity::Odd;
  return Parity::Even;
}

PolyKernel PolyKernel::derivative(Group g, int i) const {
  const int dim = (g == GZ || g == GZbar) ? vars_.n : vars_.right;
  if (i < 0 || i >= dim) throw ShapeError("derivative: index out of range");
  PolyKernel r(vars_, rank_);
  for (const auto& [mono, c] : coeffs_) {
    const int e = mono.e[g][i];
    if (e == 0) continue;
    Monomial mo = mono;
    mo.e[g][i] = e - 1;
    r.add_term(mo, c * static_cast<double>(e));
  }
  return r;
}

PolyKernel PolyKernel::restrict_normal_zero(Group g) const {
  PolyKernel r(vars_, rank_);
  const int m = vars_.m;
  for (const auto& [mono, c] : coeffs_) {
    bool keep = true;
    for (size_t i = m; i < mono.e[g].size(); ++i)
      if (mono.e[g][i] != 0) { keep = false; break; }
    if (keep) r.add_term(mono, c);
  }
  return r;
}

PolyKernel PolyKernel::set_var_zero(Group g, int i) const {
  PolyKernel r(vars_, rank_);
  for (const auto& [mono, c] : coeffs_)
    if (mono.e[g][i] == 0) r.add_term(mono, c);
  return r;
}

PolyKernel PolyKernel::reshape(const VarSpec& nv) const {
  nv.validate();
  PolyKernel r(nv, rank_);
  auto resize_group = [](const std::vector<int>& e, int dim) {
    std::vector<int> out(dim, 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (static_cast<int>(i) >= dim)
        throw ShapeError("reshape: dropping a used variable");
      out[i] = e[i];
    }
    return out;
  };
  for (const auto& [mono, c] : coeffs_) {
    Monomial mo(resize_group(mono.e[GZ], nv.n), resize_group(mono.e[GZbar], nv.n),
                resize_group(mono.e[GZp], nv.right),
                resize_group(mono.e[GZpbar], nv.right));
    r.add_term(mo, c);
  }
  return r;
}

PolyKernel PolyKernel::pruned(double tol) const {
  PolyKernel r(vars_, rank_);
  for (const auto& [mono, c] : coeffs_)
    if (c.cwiseAbs().maxCoeff() > tol) r.coeffs_.emplace(mono, c);
  return r;
}

double PolyKernel::max_abs_coeff() const {
  double mx = 0.0;
  for (const auto& [mono, c] : coeffs_)
    mx = std::max(mx, c.cwiseAbs().maxCoeff());
  return mx;
}

double PolyKernel::coeff_distance(const PolyKernel& o) const {
  check_same_shape(o);
  double mx = 0.0;
  for (const auto& [mono, c] : coeffs_) {
    auto it = o.coeffs_.find(mono);
    Mat d = (it == o.coeffs_.end()) ? c : Mat(c - it->second);
    mx = std::max(mx, d.cwiseAbs().maxCoeff());
  }
  for (const auto& [mono, c] : o.coeffs_)
    if (!coeffs_.count(mono)) mx = std::max(mx, c.cwiseAbs().maxCoeff());
  return mx;
}

nlohmann::json PolyKernel::to_json() const {
  nlohmann::json j;
  j["vars"] = {{"n", vars_.n}, {"m", vars_.m}, {"right", vars_.right}};
  j["rank"] = rank_;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, c] : coeffs_) {
    nlohmann::json t;
    t["exponents"] = {mono.e[GZ], mono.e[GZbar], mono.e[GZp], mono.e[GZpbar]};
    std::vector<std::vector<double>> re(rank_, std::vector<double>(rank_));
    std::vector<std::vector<double>> im(rank_, std::vector<double>(rank_));
    for (int r = 0; r < rank_; ++r)
      for (int s = 0; s < rank_; ++s) {
        re[r][s] = c(r, s).real();
        im[r][s] = c(r, s).imag();
      }
    t["re"] = re;
    t["im"] = im;
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

PolyKernel PolyKernel::from_json(const nlohmann::json& j) {
  VarSpec v{j.at("vars").at("n").get<int>(), j.at("vars").at("m").get<int>(),
            j.at("vars").at("right").get<int>()};
  const int rank = j.at("rank").get<int>();
  PolyKernel p(v, rank);
  for (const auto& t : j.at("terms")) {
    const auto& ex = t.at("exponents");
    Monomial mono(ex.at(0).get<std::vector<int>>(),
                  ex.at(1).get<std::vector<int>>(),
                  ex.at(2).get<std::vector<int>>(),
                  ex.at(3).get<std::vector<int>>());
    Mat c(rank, rank);
    for (int r = 0; r < rank; ++r)
      for (int s = 0; s < rank; ++s)
        c(r, s) = cplx(t.at("re").at(r).at(s).get<double>(),
                       t.at("im").at(r).at(s).get<double>());
    p.add_term(mono, c);
  }
  return p;
}

PolyKernel poly_from_terms(VarSpec vars, int rank,
                           std::vector<std::pair<Monomial, Mat>> terms) {
  PolyKernel p(vars, rank);
  for (auto& [mono, c] : terms) p.add_term(mono, c);
  return p;
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    default: return "mixed";
  }
}

}  // namespace fockbar
