#include "fockbar/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "fockbar/calculus.hpp"
#include "fockbar/quadrature.hpp"

namespace fockbar {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCondLimit = 1e12;

double factorial(int a) {
  double r = 1.0;
  for (int i = 2; i <= a; ++i) r *= i;
  return r;
}

// Tensor grid over C^d built from a 1-complex-dim rule.
template <typename F>
void for_cgrid(const ComplexRule& rule, int d, F&& fn) {
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

// Per-node monomial evaluation plan: each basis element beyond the constant
// points at a predecessor index and the coordinate multiplying it.
struct MonomialPlan {
  std::vector<int> pred;
  std::vector<int> coord;

  explicit MonomialPlan(const std::vector<std::vector<int>>& basis) {
    std::map<std::vector<int>, int> lookup;
    for (size_t i = 0; i < basis.size(); ++i)
      lookup[basis[i]] = static_cast<int>(i);
    pred.resize(basis.size(), -1);
    coord.resize(basis.size(), -1);
    for (size_t i = 0; i < basis.size(); ++i) {
      for (size_t c = 0; c < basis[i].size(); ++c) {
        if (basis[i][c] > 0) {
          std::vector<int> prev = basis[i];
          prev[c] -= 1;
          pred[i] = lookup.at(prev);
          coord[i] = static_cast<int>(c);
          break;
        }
      }
    }
  }

  void eval(const std::vector<cplx>& u, Eigen::VectorXcd& out) const {
    out(0) = cplx(1.0);
    for (size_t i = 1; i < pred.size(); ++i)
      out(i) = out(pred[i]) * u[coord[i]];
  }
};

// Assemble H = p^{-d} * sum_nodes conj(v) v^T * extra(u) by blocked
// rank updates; `extra` is the non-Gaussian part of the weight at the
// scaled node u (actual point u / sqrt(p)).
template <typename Extra>
Eigen::MatrixXcd gram_quadrature(const std::vector<std::vector<int>>& basis,
                                 int d, int p, int quad, Extra&& extra) {
  const int N = static_cast<int>(basis.size());
  const MonomialPlan plan(basis);
  const ComplexRule rule = complex_rule(quad);
  const int chunk = 1024;
  Eigen::MatrixXcd A(chunk, N);
  Eigen::VectorXcd v(N);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(N, N);
  int row = 0;
  auto flush = [&](int rows) {
    if (rows == 0) return;
    H.selfadjointView<Eigen::Lower>().rankUpdate(
        A.topRows(rows).adjoint(), 1.0);
  };
  for_cgrid(rule, d, [&](const std::vector<cplx>& u, double w) {
    plan.eval(u, v);
    A.row(row) = v.transpose() * std::sqrt(w * extra(u));
    if (++row == chunk) {
      flush(chunk);
      row = 0;
    }
  });
  flush(row);
  H = H.selfadjointView<Eigen::Lower>();
  return H * std::pow(static_cast<double>(p), -d);
}

struct Whitened {
  Eigen::MatrixXcd W, Winv;
  double cond = 0.0;
};

Whitened whiten(const Eigen::MatrixXcd& H, const char* what) {
  const int N = static_cast<int>(H.rows());
  Eigen::VectorXd s(N);
  for (int i = 0; i < N; ++i) {
    const double d = H(i, i).real();
    if (!(d > 0.0))
      throw NumericalSetupError(std::string(what) +
                                ": non-positive Gram diagonal");
    s(i) = 1.0 / std::sqrt(d);
  }
  Eigen::MatrixXcd Ht = s.asDiagonal() * H * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Ht,
                                                     Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  if (!(lmin > 0.0) || lmax / lmin > kCondLimit)
    throw NumericalSetupError(std::string(what) +
                              ": Gram condition number too large");
  Eigen::LLT<Eigen::MatrixXcd> llt(Ht);
  if (llt.info() != Eigen::Success)
    throw NumericalSetupError(std::string(what) + ": Cholesky failed");
  Eigen::MatrixXcd U = llt.matrixU();
  Whitened out;
  // H = (U S^{-1})^H (U S^{-1}) with S = diag(s).
  Eigen::VectorXd sinv = s.cwiseInverse();
  out.W = U * sinv.asDiagonal();
  out.Winv = out.W.triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXcd::Identity(N, N));
  out.cond = lmax / lmin;
  return out;
}

// Sparse polynomial in the scaled Y monomials y_g(w) = (sqrt(p) w)^g.
using YPoly = std::map<std::vector<int>, cplx>;

YPoly ypoly_mul(const YPoly& a, const YPoly& b) {
  YPoly r;
  for (const auto& [ga, ca] : a)
    for (const auto& [gb, cb] : b) {
      std::vector<int> g = ga;
      for (size_t i = 0; i < g.size(); ++i) g[i] += gb[i];
      r[g] += ca * cb;
    }
  return r;
}

}  // namespace

WeightSpec WeightSpec::flat(int n) {
  WeightSpec w;
  w.n = n;
  return w;
}

void WeightSpec::validate() const {
  if (n < 1) throw ShapeError("WeightSpec: n must be positive");
  for (const auto& [ab, c] : phi1) {
    const auto& [a, b] = ab;
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
      throw ShapeError("WeightSpec: exponent length mismatch");
    int da = 0, db = 0;
    for (int v : a) da += v;
    for (int v : b) db += v;
    const int deg = da + db;
    if (deg == 0 || deg == 1)
      throw ShapeError("WeightSpec: constant/linear parts must vanish");
    if (deg == 2 && (da == 2 || db == 2))
      throw ShapeError("WeightSpec: pure quadratic parts must vanish");
    // realness: the (b, a) coefficient must be the conjugate
    auto it = phi1.find({b, a});
    if (it == phi1.end() || std::abs(it->second - std::conj(c)) > kCoeffTol)
      throw ShapeError("WeightSpec: phi1 must be real");
  }
}

double WeightSpec::phi1_eval(const std::vector<cplx>& z) const {
  cplx acc(0.0);
  for (const auto& [ab, c] : phi1) {
    cplx t = c;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < ab.first[i]; ++k) t *= z[i];
      for (int k = 0; k < ab.second[i]; ++k) t *= std::conj(z[i]);
    }
    acc += t;
  }
  return acc.real();
}

double WeightSpec::phi(const std::vector<cplx>& z) const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::norm(z[i]);
  return kPi * s + phi1_eval(z);
}

Eigen::MatrixXcd WeightSpec::complex_hessian(const std::vector<cplx>& z) const {
  Eigen::MatrixXcd h = kPi * Eigen::MatrixXcd::Identity(n, n);
  for (const auto& [ab, c] : phi1) {
    for (int i = 0; i < n; ++i) {
      if (ab.first[i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (ab.second[j] == 0) continue;
        cplx t = c * static_cast<double>(ab.first[i]) *
                 static_cast<double>(ab.second[j]);
        for (int k = 0; k < n; ++k) {
          const int ea = ab.first[k] - (k == i ? 1 : 0);
          const int eb = ab.second[k] - (k == j ? 1 : 0);
          for (int q = 0; q < ea; ++q) t *= z[k];
          for (int q = 0; q < eb; ++q) t *= std::conj(z[k]);
        }
        h(i, j) += t;
      }
    }
  }
  return h;
}

EmbeddingSpec EmbeddingSpec::flat(int n, int m) {
  EmbeddingSpec e;
  e.n = n;
  e.m = m;
  e.f.resize(n - m);
  return e;
}

bool EmbeddingSpec::is_flat() const {
  for (const auto& fk : f)
    if (!fk.empty()) return false;
  return true;
}

void EmbeddingSpec::validate() const {
  if (!(0 <= m && m <= n)) throw ShapeError("EmbeddingSpec: need 0 <= m <= n");
  if (static_cast<int>(f.size()) != n - m)
    throw ShapeError("EmbeddingSpec: f must have n - m components");
  for (const auto& fk : f)
    for (const auto& [g, c] : fk) {
      if (static_cast<int>(g.size()) != m)
        throw ShapeError("EmbeddingSpec: exponent length mismatch");
      int deg = 0;
      for (int v : g) deg += v;
      if (deg < 2)
        throw ShapeError("EmbeddingSpec: f(0) = 0 and df(0) = 0 required");
      if (deg > 4) throw ShapeError("EmbeddingSpec: degree must be <= 4");
      (void)c;
    }
}

int EmbeddingSpec::degree() const {
  int d = 0;
  for (const auto& fk : f)
    for (const auto& [g, c] : fk) {
      int deg = 0;
      for (int v : g) deg += v;
      d = std::max(d, deg);
      (void)c;
    }
  return d;
}

std::vector<cplx> EmbeddingSpec::eval(const std::vector<cplx>& w) const {
  std::vector<cplx> out(n - m, cplx(0.0));
  for (int k = 0; k < n - m; ++k)
    for (const auto& [g, c] : f[k]) {
      cplx t = c;
      for (int i = 0; i < m; ++i)
        for (int q = 0; q < g[i]; ++q) t *= w[i];
      out[k] += t;
    }
  return out;
}

std::vector<cplx> EmbeddingSpec::point(const std::vector<cplx>& w) const {
  std::vector<cplx> z = w;
  std::vector<cplx> fv = eval(w);
  z.insert(z.end(), fv.begin(), fv.end());
  return z;
}

Eigen::MatrixXcd EmbeddingSpec::jacobian(const std::vector<cplx>& w) const {
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n - m, m);
  for (int k = 0; k < n - m; ++k)
    for (const auto& [g, c] : f[k])
      for (int i = 0; i < m; ++i) {
        if (g[i] == 0) continue;
        cplx t = c * static_cast<double>(g[i]);
        for (int j = 0; j < m; ++j) {
          const int e = g[j] - (j == i ? 1 : 0);
          for (int q = 0; q < e; ++q) t *= w[j];
        }
        J(k, i) += t;
      }
  return J;
}

std::map<std::tuple<int, int, int>, cplx> EmbeddingSpec::second_fundamental_form()
    const {
  std::map<std::tuple<int, int, int>, cplx> A;
  for (int k = 0; k < n - m; ++k)
    for (const auto& [g, c] : f[k]) {
      int deg = 0;
      for (int v : g) deg += v;
      if (deg != 2) continue;
      // quadratic term c * w_i w_j (i <= j): A^k_{ij} = d^2/dw_i dw_j
      int i = -1, j = -1;
      for (int q = 0; q < m; ++q) {
        if (g[q] == 2) i = j = q;
        if (g[q] == 1) (i < 0 ? i : j) = q;
      }
      const cplx a = (i == j) ? 2.0 * c : c;
      if (std::abs(a) > 0.0) {
        A[{m + k, i, j}] += a;
        if (i != j) A[{m + k, j, i}] += a;
      }
    }
  return A;
}

std::vector<std::vector<int>> multi_indices(int d, int D) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(d, 0);
  // graded enumeration: for each total degree, lexicographic
  std::function<void(int, int, int)> rec = [&](int pos, int left, int) {
    if (pos == d - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[pos] = v;
      rec(pos + 1, left - v, 0);
    }
  };
  if (d == 0) {
    out.push_back({});
    return out;
  }
  for (int deg = 0; deg <= D; ++deg) rec(0, deg, 0);
  return out;
}

Eigen::VectorXcd DiscreteModel::basis_values(const std::vector<cplx>& Z) const {
  const double sp = std::sqrt(static_cast<double>(p));
  Eigen::VectorXcd v(dim());
  for (int i = 0; i < dim(); ++i) {
    cplx t(1.0);
    for (int c = 0; c < weight.n; ++c)
      for (int q = 0; q < basis[i][c]; ++q) t *= sp * Z[c];
    v(i) = t;
  }
  return v;
}

Eigen::VectorXcd DiscreteModel::basis_values_y(
    const std::vector<cplx>& w) const {
  const double sp = std::sqrt(static_cast<double>(p));
  Eigen::VectorXcd v(dim_y());
  for (int i = 0; i < dim_y(); ++i) {
    cplx t(1.0);
    for (int c = 0; c < embed.m; ++c)
      for (int q = 0; q < basis_y[i][c]; ++q) t *= sp * w[c];
    v(i) = t;
  }
  return v;
}

double DiscreteModel::phi_y(const std::vector<cplx>& w) const {
  return weight.phi(embed.point(w));
}

DiscreteModel build_discrete_model(int p, int D, const WeightSpec& w,
                                   const EmbeddingSpec& e, int quad) {
  w.validate();
  e.validate();
  if (w.n != e.n) throw ShapeError("build_discrete_model: dimension mismatch");
  if (D < 2) throw ShapeError("build_discrete_model: need D >= 2");
  if (p < 1) throw ShapeError("build_discrete_model: need p >= 1");
  const int n = w.n, m = e.m;
  const double sp = std::sqrt(static_cast<double>(p));

  DiscreteModel mdl;
  mdl.p = p;
  mdl.D = D;
  mdl.quad = quad;
  mdl.weight = w;
  mdl.embed = e;
  mdl.basis = multi_indices(n, D);
  const int degf = e.degree();
  mdl.Dy = e.is_flat() ? D : std::max(2, D - 2 * degf);
  if (m == 0) mdl.Dy = 0;
  mdl.basis_y = multi_indices(m, mdl.Dy);

  // --- ambient Gram ---
  const int N = mdl.dim();
  if (w.is_flat()) {
    mdl.gram = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
      double g = std::pow(static_cast<double>(p), -n);
      for (int c = 0; c < n; ++c)
        g *= factorial(mdl.basis[i][c]) / std::pow(kPi, mdl.basis[i][c]);
      mdl.gram(i, i) = g;
    }
  } else {
    auto extra = [&](const std::vector<cplx>& u) {
      std::vector<cplx> z(n);
      for (int i = 0; i < n; ++i) z[i] = u[i] / sp;
      return std::exp(-p * w.phi1_eval(z));
    };
    mdl.gram = gram_quadrature(mdl.basis, n, p, quad, extra);
    // Self-consistency: recompute a few entries at doubled order.
    {
      std::mt19937 rng(12345);
      std::uniform_int_distribution<int> pick(0, N - 1);
      const ComplexRule rule2 = complex_rule(2 * quad);
      for (int rep = 0; rep < 6; ++rep) {
        const int a = pick(rng), b = pick(rng);
        cplx acc(0.0);
        for_cgrid(rule2, n, [&](const std::vector<cplx>& u, double wt) {
          cplx t(1.0);
          for (int c = 0; c < n; ++c) {
            for (int q = 0; q < mdl.basis[b][c]; ++q) t *= u[c];
            for (int q = 0; q < mdl.basis[a][c]; ++q) t *= std::conj(u[c]);
          }
          acc += wt * t * extra(u);
        });
        acc *= std::pow(static_cast<double>(p), -n);
        const double scale = std::max({1.0, std::abs(mdl.gram(a, b))});
        if (std::abs(acc - mdl.gram(a, b)) / scale > 1e-8)
          throw NumericalSetupError(
              "build_discrete_model: quadrature not converged (doubling "
              "check failed)");
      }
    }
  }

  // --- restriction expansion in the scaled Y-monomial basis ---
  // sqrt(p) f_k(w) = sum_g c_g p^{(1-|g|)/2} y_g(w).
  std::vector<YPoly> fk_scaled(n - m);
  for (int k = 0; k < n - m; ++k)
    for (const auto& [g, c] : e.f[k]) {
      int deg = 0;
      for (int v : g) deg += v;
      fk_scaled[k][g] += c * std::pow(sp, 1 - deg);
    }
  std::vector<YPoly> colexp(N);
  int maxdeg_c = 0;
  for (int a = 0; a < N; ++a) {
    YPoly acc;
    std::vector<int> gy(mdl.basis[a].begin(), mdl.basis[a].begin() + m);
    acc[gy] = cplx(1.0);
    for (int k = 0; k < n - m; ++k)
      for (int q = 0; q < mdl.basis[a][m + k]; ++q)
        acc = ypoly_mul(acc, fk_scaled[k]);
    for (const auto& [g, c] : acc) {
      int deg = 0;
      for (int v : g) deg += v;
      maxdeg_c = std::max(maxdeg_c, deg);
      (void)c;
    }
    colexp[a] = std::move(acc);
  }

  // --- Y Grams (square at Dy; big square at the full restricted degree) ---
  const std::vector<std::vector<int>> basis_big = multi_indices(m, maxdeg_c);
  const int Nyb = static_cast<int>(basis_big.size());
  const int Ny = mdl.dim_y();
  Eigen::MatrixXcd gram_big;
  if (m == 0) {
    gram_big = Eigen::MatrixXcd::Ones(1, 1);
    mdl.gram_y = gram_big;
  } else {
    // Full pulled-back weight minus the Gaussian part carried by the rule.
    auto extra_y2 = [&](const std::vector<cplx>& u) {
      std::vector<cplx> wpt(m);
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        wpt[i] = u[i] / sp;
        s += std::norm(wpt[i]);
      }
      return std::exp(-p * (mdl.phi_y(wpt) - kPi * s));
    };
    const int quad_y = std::max(quad, maxdeg_c + 8);
    gram_big = gram_quadrature(basis_big, m, p, quad_y, extra_y2);
    mdl.gram_y = gram_big.topLeftCorner(Ny, Ny);
  }

  // C matrix (Nyb x N) and pairing P = gram_big(rows 0..Ny) * C.
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(Nyb, N);
  {
    std::map<std::vector<int>, int> lookup;
    for (int i = 0; i < Nyb; ++i) lookup[basis_big[i]] = i;
    for (int a = 0; a < N; ++a)
      for (const auto& [g, c] : colexp[a]) {
        auto it = lookup.find(g);
        if (it == lookup.end())
          throw NumericalSetupError("restriction expansion exceeded Y basis");
        C(it->second, a) += c;
      }
  }
  Eigen::MatrixXcd P = gram_big.topRows(Ny) * C;

  // --- whitening and restriction ---
  Whitened wa = whiten(mdl.gram, "ambient");
  Whitened wy = whiten(mdl.gram_y, "submanifold");
  mdl.white = wa.W;
  mdl.white_inv = wa.Winv;
  mdl.white_y = wy.W;
  mdl.white_y_inv = wy.Winv;
  mdl.cond = wa.cond;
  mdl.cond_y = wy.cond;

  mdl.restr = mdl.gram_y.ldlt().solve(P);
  mdl.rtilde = mdl.white_y * mdl.restr * mdl.white_inv;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      mdl.rtilde, Eigen::ComputeThinU | Eigen::ComputeThinV);
  mdl.svd_s = svd.singularValues();
  const double smax = mdl.svd_s.size() ? mdl.svd_s(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < mdl.svd_s.size(); ++i)
    if (mdl.svd_s(i) > smax * 1e-10) ++rank;
  mdl.rank = rank;
  mdl.svd_u = svd.matrixU().leftCols(rank);
  mdl.svd_v = svd.matrixV().leftCols(rank);
  mdl.degenerate = rank < Ny;
  return mdl;
}

cplx projector_kernel(const DiscreteModel& mdl, ProjKind kind,
                      const std::vector<cplx>& Z, const std::vector<cplx>& Zp) {
  if (mdl.degenerate && kind != ProjKind::Full)
    throw NumericalSetupError("projector_kernel: degenerate restriction");
  const Eigen::VectorXcd vl = mdl.basis_values(Z);
  const Eigen::VectorXcd vr = mdl.basis_values(Zp);
  // K = v(Z)^T W^{-1} Btil W^{-H} conj(v(Z'))
  const Eigen::VectorXcd x = mdl.white_inv.transpose() * vl;
  const Eigen::VectorXcd y = mdl.white_inv.adjoint() * vr.conjugate();
  cplx val(0.0);
  switch (kind) {
    case ProjKind::Full:
      val = x.transpose() * y;
      break;
    case ProjKind::Perp:
      val = (x.transpose() * mdl.svd_v) * (mdl.svd_v.adjoint() * y);
      break;
    case ProjKind::Vanishing:
      val = cplx(x.transpose() * y) -
            cplx((x.transpose() * mdl.svd_v) * (mdl.svd_v.adjoint() * y));
      break;
  }
  return val * std::exp(-0.5 * mdl.p * (mdl.weight.phi(Z) + mdl.weight.phi(Zp)));
}

Eigen::VectorXcd extend_minimal_norm(const DiscreteModel& mdl,
                                     const Eigen::VectorXcd& g) {
  if (mdl.degenerate)
    throw NumericalSetupError("extend_minimal_norm: degenerate restriction");
  const Eigen::VectorXcd gt = mdl.white_y * g;
  const Eigen::VectorXcd ut = mdl.svd_u.adjoint() * gt;
  Eigen::VectorXcd scaled(mdl.rank);
  for (int i = 0; i < mdl.rank; ++i) scaled(i) = ut(i) / mdl.svd_s(i);
  return mdl.white_inv * (mdl.svd_v * scaled);
}

cplx section_value(const DiscreteModel& mdl, const Eigen::VectorXcd& c,
                   const std::vector<cplx>& Z) {
  const cplx raw = mdl.basis_values(Z).transpose() * c;
  return raw * std::exp(-0.5 * mdl.p * mdl.weight.phi(Z));
}

cplx section_value_y(const DiscreteModel& mdl, const Eigen::VectorXcd& g,
                     const std::vector<cplx>& w) {
  const cplx raw = mdl.basis_values_y(w).transpose() * g;
  return raw * std::exp(-0.5 * mdl.p * mdl.phi_y(w));
}

double section_norm(const DiscreteModel& mdl, const Eigen::VectorXcd& c) {
  return (mdl.white * c).norm();
}

double section_norm_y(const DiscreteModel& mdl, const Eigen::VectorXcd& g) {
  return (mdl.white_y * g).norm();
}

OperatorNorms operator_norms(const DiscreteModel& mdl, std::uint32_t seed,
                             int num_g) {
  OperatorNorms out;
  out.res_norm = mdl.svd_s.size() ? mdl.svd_s(0) : 0.0;
  out.ext_norm = mdl.rank > 0 ? 1.0 / mdl.svd_s(mdl.rank - 1) : 0.0;

  // Sample grids: a polar grid on Y and normal offsets off it.
  const int n = mdl.weight.n, m = mdl.embed.m;
  const double sp = std::sqrt(static_cast<double>(mdl.p));
  std::vector<std::vector<cplx>> ygrid;
  if (m == 0) {
    ygrid.push_back({});
  } else {
    const double ry = 1.8 / sp;
    for (int ir = 0; ir <= 4; ++ir)
      for (int ia = 0; ia < (ir == 0 ? 1 : 8); ++ia) {
        std::vector<cplx> wpt(m, cplx(0.0));
        const double r = ry * ir / 4.0;
        const double th = 2.0 * kPi * ia / 8.0;
        wpt[0] = std::polar(r, th);
        if (m > 1 && ir > 0) wpt[1] = std::polar(r * 0.5, 1.7 * th);
        ygrid.push_back(wpt);
      }
  }
  std::vector<std::vector<cplx>> xgrid;
  for (const auto& wpt : ygrid) {
    std::vector<cplx> base =
        m == 0 ? std::vector<cplx>(n, cplx(0.0)) : mdl.embed.point(wpt);
    xgrid.push_back(base);
    for (int k = m; k < n; ++k)
      for (double t : {0.5 / sp, 1.0 / sp}) {
        std::vector<cplx> zpt = base;
        zpt[k] += cplx(t, 0.35 * t);
        xgrid.push_back(zpt);
      }
  }

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double worst = 0.0;
  for (int rep = 0; rep < num_g; ++rep) {
    Eigen::VectorXcd g(mdl.dim_y());
    for (int i = 0; i < g.size(); ++i) g(i) = cplx(gauss(rng), gauss(rng));
    const Eigen::VectorXcd c = extend_minimal_norm(mdl, g);
    double supy = 0.0, supx = 0.0;
    for (const auto& wpt : ygrid)
      supy = std::max(supy, std::abs(section_value_y(mdl, g, wpt)));
    for (const auto& zpt : xgrid)
      supx = std::max(supx, std::abs(section_value(mdl, c, zpt)));
    if (supy > 0.0) worst = std::max(worst, supx / supy);
  }
  out.linf_ratio = worst;
  return out;
}

double kappa_n(const WeightSpec& w, const EmbeddingSpec& e,
               const std::vector<cplx>& wpt) {
  const int n = w.n, m = e.m;
  const std::vector<cplx> z = e.point(wpt);
  const Eigen::MatrixXcd g = w.complex_hessian(z) / kPi;
  // tangent frame columns (e_i, df/dw_i)
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, m);
  const Eigen::MatrixXcd J = e.jacobian(wpt);
  for (int i = 0; i < m; ++i) {
    T(i, i) = cplx(1.0);
    for (int k = 0; k < n - m; ++k) T(m + k, i) = J(k, i);
  }
  // g-orthonormal basis of the normal space via projection + Gram-Schmidt
  Eigen::MatrixXcd B(n, n);
  B.leftCols(m) = T;
  // complete with coordinate vectors, g-orthogonalized against everything
  int col = m;
  for (int k = 0; k < n && col < n; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(k) = cplx(1.0);
    for (int c = 0; c < col; ++c) {
      const Eigen::VectorXcd bc = B.col(c);
      v -= bc * (bc.adjoint() * g * v)(0) / (bc.adjoint() * g * bc)(0).real();
    }
    const double nn = (v.adjoint() * g * v)(0).real();
    if (nn < 1e-14) continue;
    B.col(col++) = v / std::sqrt(nn);
  }
  if (col != n) throw NumericalSetupError("kappa_n: frame completion failed");
  // kappa_N = det g * |det [T | nu]|^2 with flat chart measures.
  const cplx det = B.determinant();
  return g.determinant().real() * std::norm(det);
}

}  // namespace fockbar
