#pragma once

#include <numeric>
#include <optional>
#include <sstream>

#include "bethe/glnrep.hpp"
#include "bethe/ratop.hpp"

namespace bethe {

struct DiagonalParam {
  std::vector<GaussianRational> entries;
  bool regular = false;

  DiagonalParam() = default;
  explicit DiagonalParam(std::vector<GaussianRational> e, bool require_regular = true)
      : entries(std::move(e)) {
    regular = true;
    for (size_t a = 0; a < entries.size() && regular; ++a)
      for (size_t b = a + 1; b < entries.size(); ++b)
        if (entries[a] == entries[b]) {
          regular = false;
          break;
        }
    if (require_regular && !regular)
      throw std::invalid_argument("diagonal parameter has colliding entries");
  }

  size_t size() const { return entries.size(); }

  bool invertible() const {
    for (const auto& e : entries)
      if (e.is_zero()) return false;
    return true;
  }

  DiagonalParam inverse() const {
    std::vector<GaussianRational> inv;
    for (const auto& e : entries) inv.push_back(e.inverse());
    return DiagonalParam(std::move(inv), false);
  }

  DiagonalParam scaled(const GaussianRational& a) const {
    std::vector<GaussianRational> s;
    for (const auto& e : entries) s.push_back(e * a);
    return DiagonalParam(std::move(s), false);
  }

  std::string str() const {
    std::string s = "diag(";
    for (size_t k = 0; k < entries.size(); ++k) s += (k ? ", " : "") + entries[k].str();
    return s + ")";
  }
};

struct YModule {
  int n = 0;
  long dim = 0;
  RatOpMatrix T;  // m = n, d = dim
  std::string provenance;
  std::optional<ExactMatrix> gram;
};

inline YModule evaluation_module(const Irrep& rep, const GaussianRational& z,
                                 bool with_gram = false) {
  YModule m;
  m.n = rep.m;
  m.dim = rep.dim;
  Eigen::Index nd = static_cast<Eigen::Index>(rep.m) * rep.dim;
  // t_ij(u) = delta_ij + rho(E_ij)/(u - z)
  ExactMatrix c0 = exact_zero(nd, nd);
  for (int i = 0; i < rep.m; ++i)
    for (int j = 0; j < rep.m; ++j) {
      c0.block(i * rep.dim, j * rep.dim, rep.dim, rep.dim) = rep.E(i + 1, j + 1);
      if (i == j)
        for (long t = 0; t < rep.dim; ++t) c0(i * rep.dim + t, i * rep.dim + t) += -z;
    }
  m.T.m = rep.m;
  m.T.d = rep.dim;
  m.T.num = MatPoly(std::vector<ExactMatrix>{std::move(c0), exact_identity(nd)});
  m.T.den = Poly(std::vector<GaussianRational>{-z, GaussianRational(1)});
  m.T.reduce();
  std::ostringstream prov;
  prov << "evaluation(";
  for (size_t k = 0; k < rep.highest.size(); ++k) prov << (k ? "," : "") << rep.highest[k];
  prov << "; z=" << z.str() << ")";
  m.provenance = prov.str();
  if (with_gram) m.gram = gram_form(rep).matrix;
  return m;
}

inline YModule trivial_module(int n) {
  return evaluation_module(build_irrep(Weight(n, 0)), GaussianRational(0), true);
}

// I_pre (x) op (x) I_post
inline ExactMatrix lift_operator(const ExactMatrix& op, long pre, long post) {
  return kron(exact_identity(pre), kron(op, exact_identity(post)));
}

inline YModule tensor_module(const std::vector<YModule>& ms) {
  if (ms.empty()) throw std::invalid_argument("tensor of zero modules");
  int n = ms.front().n;
  long total = 1;
  for (const auto& m : ms) {
    if (m.n != n) throw std::invalid_argument("tensor factors have different Yangian rank");
    total *= m.dim;
  }
  YModule out;
  out.n = n;
  out.dim = total;
  long pre = 1;
  RatOpMatrix prod;
  std::string prov = "tensor(";
  for (size_t f = 0; f < ms.size(); ++f) {
    const YModule& m = ms[f];
    long post = total / (pre * m.dim);
    RatOpMatrix lifted;
    lifted.m = n;
    lifted.d = total;
    lifted.den = m.T.den;
    for (const auto& coeff : m.T.num.c) {
      ExactMatrix big = exact_zero(n * total, n * total);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          ExactMatrix blk = coeff.block(i * m.dim, j * m.dim, m.dim, m.dim);
          if (is_zero_matrix(blk)) continue;
          big.block(i * total, j * total, total, total) = lift_operator(blk, pre, post);
        }
      lifted.num.c.push_back(std::move(big));
    }
    lifted.num.trim();
    prod = (f == 0) ? lifted : ratop_mul(prod, lifted, 0);
    pre *= m.dim;
    prov += (f ? " , " : " ") + m.provenance;
  }
  out.T = std::move(prod);
  out.provenance = prov + " )";
  bool all_gram = std::all_of(ms.begin(), ms.end(), [](const YModule& m) { return m.gram.has_value(); });
  if (all_gram) {
    ExactMatrix g = *ms.front().gram;
    for (size_t f = 1; f < ms.size(); ++f) g = kron(g, *ms[f].gram);
    out.gram = std::move(g);
  }
  return out;
}

namespace detail {
inline int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  for (size_t a = 0; a < perm.size(); ++a)
    for (size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) sign = -sign;
  return sign;
}
}  // namespace detail

// t^{a_1..a_p}_{b_1..b_p}(u), row-sum formula:
// sum_sigma sgn * t_{a_sigma(1) b_1}(u) ... t_{a_sigma(p) b_p}(u-p+1).
// Indices are 1-based and strictly increasing.
inline RatOpMatrix quantum_minor(const YModule& m, const std::vector<int>& rows,
                                 const std::vector<int>& cols, bool column_formula = false) {
  size_t p = rows.size();
  if (p == 0 || cols.size() != p) throw std::invalid_argument("bad quantum minor indices");
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  RatOpMatrix total = RatOpMatrix::zero(1, m.dim);
  do {
    int sign = detail::permutation_sign(perm);
    RatOpMatrix prod;
    if (!column_formula) {
      // factor s: t_{a_perm(s) b_s}(u - s)
      for (size_t s = 0; s < p; ++s) {
        RatOpMatrix e = m.T.block(rows[perm[s]] - 1, cols[s] - 1);
        prod = (s == 0) ? e : ratop_mul(prod, e, -static_cast<long>(s));
      }
    } else {
      // column form: t_{a_1 b_perm(1)}(u-p+1) ... t_{a_p b_perm(p)}(u)
      for (size_t s = 0; s < p; ++s) {
        RatOpMatrix e = m.T.block(rows[s] - 1, cols[perm[s]] - 1);
        long shift = -static_cast<long>(p - 1 - s);
        e = shift == 0 ? e : e.shifted(GaussianRational(shift));
        prod = (s == 0) ? e : ratop_mul(prod, e, 0);
      }
    }
    total = (sign > 0) ? total + prod : total - prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline RatOpMatrix quantum_determinant(const YModule& m) {
  std::vector<int> all(m.n);
  std::iota(all.begin(), all.end(), 1);
  return quantum_minor(m, all, all);
}

// tau_p(u, C) acting on m, via the diagonal-C subset expansion
// tau_p = sum_{|I|=p} (prod_{i in I} c_i) t^I_I(u).
inline RatOpMatrix tau_series(const YModule& m, const DiagonalParam& C, int p) {
  if (p < 1 || p > m.n) throw std::invalid_argument("tau: p out of range");
  if (C.size() != static_cast<size_t>(m.n)) throw std::invalid_argument("tau: C has wrong size");
  RatOpMatrix total = RatOpMatrix::zero(1, m.dim);
  std::vector<int> idx(p);
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == p) {
      GaussianRational w(1);
      for (int i : idx) w *= C.entries[i - 1];
      total = total + quantum_minor(m, idx, idx).scaled(w);
      return;
    }
    for (int v = start; v <= m.n; ++v) {
      idx[pos] = v;
      rec(pos + 1, v + 1);
    }
  };
  rec(0, 1);
  return total;
}

struct LabeledOp {
  std::string label;
  ExactMatrix op;
};

// Coefficients of u^{-1}..u^{-max_order} of tau_p(u,C) on m.
inline std::vector<LabeledOp> tau_generators(const YModule& m, const DiagonalParam& C, int p,
                                             long max_order) {
  if (max_order < 1) throw std::invalid_argument("tau_generators: max_order >= 1 required");
  RatOpMatrix tau = tau_series(m, C, p);
  auto coeffs = tau.series_coeffs(max_order);
  std::vector<LabeledOp> out;
  for (long r = 1; r <= max_order; ++r) {
    std::ostringstream label;
    label << "tau" << p << "[" << r << "]";
    out.push_back({label.str(), std::move(coeffs[r])});
  }
  return out;
}

// omega_n: T(u) -> (T(-u-n))^{-1} on the same space.
inline RatOpMatrix omega_image_module(const YModule& m) {
  return m.T.substituted(GaussianRational(-1), GaussianRational(-m.n)).inverse();
}

// Skew module on the gl_k-highest-weight-mu subspace of V_lambda, with the
// Y(gl_n)-action t_ij(u) given by entries of (T(-u-n-k))^{-1} shifted by z.
inline YModule build_skew_module(const Weight& lambda, const Weight& mu, const GaussianRational& z,
                                 bool with_gram = false) {
  int nk = static_cast<int>(lambda.size());
  int k = static_cast<int>(mu.size());
  int n = nk - k;
  if (n <= 0) throw std::invalid_argument("skew module: need rank(lambda) > rank(mu)");
  Irrep rep = build_irrep(lambda);
  auto basis = highest_weight_subspace(rep, mu);
  if (basis.empty()) throw std::domain_error("skew module: multiplicity space is zero");
  long s = static_cast<long>(basis.size());
  ExactMatrix P(rep.dim, s);
  for (long c = 0; c < s; ++c) P.col(c) = basis[c];

  YModule full = evaluation_module(rep, GaussianRational(0));
  RatOpMatrix w = full.T.substituted(GaussianRational(-1), GaussianRational(-nk)).inverse();
  w = w.top_blocks(n).shifted(-z);  // t_ij(u) -> t_ij(u - z)

  RatOpMatrix tr;
  tr.m = n;
  tr.d = s;
  tr.den = w.den;
  for (const auto& coeff : w.num.c) {
    ExactMatrix c = exact_zero(n * s, n * s);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ExactMatrix blk = coeff.block(i * rep.dim, j * rep.dim, rep.dim, rep.dim);
        ExactMatrix rhs = blk * P;
        ExactMatrix x = exact_solve(P, rhs);  // throws if the subspace is not preserved
        if (!is_zero_matrix(ExactMatrix(P * x - rhs)))
          throw std::logic_error("skew module: restriction does not preserve the subspace");
        c.block(i * s, j * s, s, s) = x;
      }
    tr.num.c.push_back(std::move(c));
  }
  tr.num.trim();
  tr.reduce();

  YModule m;
  m.n = n;
  m.dim = s;
  m.T = std::move(tr);
  std::ostringstream prov;
  prov << "skew(";
  for (size_t t = 0; t < lambda.size(); ++t) prov << (t ? "," : "") << lambda[t];
  prov << " / ";
  for (size_t t = 0; t < mu.size(); ++t) prov << (t ? "," : "") << mu[t];
  prov << "; z=" << z.str() << ")";
  m.provenance = prov.str();
  if (with_gram) {
    ExactMatrix g = gram_form(rep).matrix;
    m.gram = ExactMatrix(conj_transpose(P) * g * P);
  }
  return m;
}

// Exact check of the RTT relation multiplied through by (u - v):
// ((u-v) - P) T_1(u) T_2(v) = T_2(v) T_1(u) ((u-v) - P), coefficient-wise for
// all bidegrees (r, s) with r + s <= order.
inline bool verify_rtt(const YModule& m, long order) {
  if (order < 2) throw std::invalid_argument("verify_rtt: order >= 2 required");
  int n = m.n;
  long d = m.dim;
  auto series = m.T.series_coeffs(order + 1);
  // t_ij^{(r)} blocks
  auto tblock = [&](long r, int i, int j) {
    return ExactMatrix(series[r].block(i * d, j * d, d, d));
  };
  long big = static_cast<long>(n) * n * d;
  std::vector<ExactMatrix> t1(order + 2), t2(order + 2);
  for (long r = 0; r <= order + 1; ++r) {
    ExactMatrix m1 = exact_zero(big, big), m2 = exact_zero(big, big);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ExactMatrix blk = tblock(r, i, j);
        if (is_zero_matrix(blk)) continue;
        m1 += kron(unitmat(n, i, j), kron(exact_identity(n), blk));
        m2 += kron(exact_identity(n), kron(unitmat(n, i, j), blk));
      }
    t1[r] = std::move(m1);
    t2[r] = std::move(m2);
  }
  ExactMatrix perm = exact_zero(big, big);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      perm += kron(unitmat(n, i, j), kron(unitmat(n, j, i), exact_identity(d)));
  for (long r = 0; r + 0 <= order; ++r)
    for (long s = 0; r + s <= order; ++s) {
      ExactMatrix f = t1[r] * t2[s];
      ExactMatrix g = t2[s] * t1[r];
      ExactMatrix lhs = t1[r + 1] * t2[s] - t1[r] * t2[s + 1] - perm * f;
      ExactMatrix rhs = t2[s] * t1[r + 1] - t2[s + 1] * t1[r] - g * perm;
      if (!is_zero_matrix(ExactMatrix(lhs - rhs))) return false;
    }
  return true;
}

}  // namespace bethe
