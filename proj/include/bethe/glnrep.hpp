#pragma once

#include <algorithm>
#include <functional>
#include <map>

#include "bethe/linalg.hpp"

namespace bethe {

using Weight = std::vector<long>;

inline bool is_dominant(const Weight& w) {
  for (size_t k = 1; k < w.size(); ++k)
    if (w[k - 1] < w[k]) return false;
  return true;
}

// Triangular array, rows[r] has r+1 entries; rows.back() is the top row.
struct GTPattern {
  std::vector<std::vector<long>> rows;

  int rank() const { return static_cast<int>(rows.size()); }

  bool valid() const {
    for (size_t r = 0; r + 1 < rows.size(); ++r)
      for (size_t i = 0; i <= r; ++i)
        if (rows[r + 1][i] < rows[r][i] || rows[r][i] < rows[r + 1][i + 1]) return false;
    for (const auto& row : rows)
      for (size_t i = 1; i < row.size(); ++i)
        if (row[i - 1] < row[i]) return false;
    return true;
  }

  std::vector<long> flat() const {
    std::vector<long> f;
    for (auto it = rows.rbegin(); it != rows.rend(); ++it) f.insert(f.end(), it->begin(), it->end());
    return f;
  }
  bool operator<(const GTPattern& o) const { return flat() < o.flat(); }
  bool operator==(const GTPattern& o) const { return rows == o.rows; }

  // gl_m weight: w_k = (sum of row k) - (sum of row k-1)
  Weight weight() const {
    Weight w(rows.size());
    long prev = 0;
    for (size_t k = 0; k < rows.size(); ++k) {
      long s = 0;
      for (long x : rows[k]) s += x;
      w[k] = s - prev;
      prev = s;
    }
    return w;
  }
};

inline std::vector<GTPattern> enumerate_gt_patterns(const Weight& lambda) {
  if (!is_dominant(lambda)) throw std::invalid_argument("weight not dominant");
  std::vector<GTPattern> out;
  GTPattern p;
  p.rows.resize(lambda.size());
  p.rows.back() = lambda;
  // fill rows top-down (index m-2 .. 0), each interlacing the one above
  std::function<void(int)> rec = [&](int r) {
    if (r < 0) {
      out.push_back(p);
      return;
    }
    const auto& above = p.rows[r + 1];
    p.rows[r].assign(r + 1, 0);
    std::function<void(int)> fill = [&](int i) {
      if (i > r) {
        rec(r - 1);
        return;
      }
      long hi = above[i];
      long lo = above[i + 1];
      if (i > 0) hi = std::min(hi, p.rows[r][i - 1]);
      for (long v = hi; v >= lo; --v) {  // will sort lexicographically at the end
        p.rows[r][i] = v;
        fill(i + 1);
      }
    };
    fill(0);
  };
  rec(static_cast<int>(lambda.size()) - 2);
  std::sort(out.begin(), out.end());
  return out;
}

inline long weyl_dim(const Weight& lambda) {
  long m = static_cast<long>(lambda.size());
  mpq_class d(1);
  for (long i = 0; i < m; ++i)
    for (long j = i + 1; j < m; ++j) d *= mpq_class(lambda[i] - lambda[j] + j - i, j - i);
  d.canonicalize();
  return d.get_num().get_si();
}

// gl_m irreducible in the rational (non-orthonormal) Gelfand-Tsetlin basis.
class Irrep {
 public:
  int m = 0;
  Weight highest;
  long dim = 0;
  std::vector<GTPattern> patterns;

  const ExactMatrix& E(int i, int j) const {
    auto it = gens_.find({i, j});
    if (it == gens_.end()) throw std::out_of_range("generator index out of range");
    return it->second;
  }

  friend Irrep build_irrep(const Weight& lambda);

 private:
  std::map<std::pair<int, int>, ExactMatrix> gens_;
};

// Classical GT action formulas in the rational normalization, with
// l_{k,i} = lambda_{k,i} - i + 1 (rows and indices 1-based in the formulas).
inline Irrep build_irrep(const Weight& lambda) {
  Irrep rep;
  rep.m = static_cast<int>(lambda.size());
  rep.highest = lambda;
  rep.patterns = enumerate_gt_patterns(lambda);
  rep.dim = static_cast<long>(rep.patterns.size());

  std::map<std::vector<long>, long> index;
  for (long t = 0; t < rep.dim; ++t) index[rep.patterns[t].flat()] = t;
  auto find_index = [&](const GTPattern& p) -> long {
    auto it = index.find(p.flat());
    return it == index.end() ? -1 : it->second;
  };
  auto l_of = [](const GTPattern& p, int k, int i) {  // k,i 1-based
    return mpq_class(p.rows[k - 1][i - 1] - i + 1);
  };

  int m = rep.m;
  long d = rep.dim;
  for (int k = 1; k <= m; ++k) {
    ExactMatrix ekk = exact_zero(d, d);
    for (long t = 0; t < d; ++t) ekk(t, t) = GaussianRational(rep.patterns[t].weight()[k - 1]);
    rep.gens_[{k, k}] = std::move(ekk);
  }
  for (int k = 1; k < m; ++k) {
    ExactMatrix eraise = exact_zero(d, d), elower = exact_zero(d, d);
    for (long t = 0; t < d; ++t) {
      const GTPattern& p = rep.patterns[t];
      for (int i = 1; i <= k; ++i) {
        mpq_class lki = l_of(p, k, i);
        mpq_class denom(1);
        for (int j = 1; j <= k; ++j)
          if (j != i) denom *= l_of(p, k, j) - lki;

        GTPattern up = p;
        up.rows[k - 1][i - 1] += 1;
        if (up.valid()) {
          mpq_class numer(1);
          for (int j = 1; j <= k + 1; ++j) numer *= l_of(p, k + 1, j) - lki;
          mpq_class coeff = -numer / denom;
          coeff.canonicalize();
          eraise(find_index(up), t) += GaussianRational(coeff);
        }
        GTPattern down = p;
        down.rows[k - 1][i - 1] -= 1;
        if (down.valid()) {
          mpq_class numer(1);
          for (int j = 1; j <= k - 1; ++j) numer *= l_of(p, k - 1, j) - lki;
          mpq_class coeff = numer / denom;
          coeff.canonicalize();
          elower(find_index(down), t) += GaussianRational(coeff);
        }
      }
    }
    rep.gens_[{k, k + 1}] = std::move(eraise);
    rep.gens_[{k + 1, k}] = std::move(elower);
  }
  // remaining generators by commutators: E_ij = [E_ik, E_kj]
  for (int gap = 2; gap < m; ++gap)
    for (int i = 1; i + gap <= m; ++i) {
      int j = i + gap;
      const ExactMatrix &a = rep.gens_[{i, j - 1}], &b = rep.gens_[{j - 1, j}];
      rep.gens_[{i, j}] = a * b - b * a;
      const ExactMatrix &c = rep.gens_[{j, j - 1}], &e = rep.gens_[{j - 1, i}];
      rep.gens_[{j, i}] = c * e - e * c;
    }
  return rep;
}

inline bool commutation_relations_hold(const Irrep& rep) {
  int m = rep.m;
  for (int i = 1; i <= m; ++i)
    for (int j = 1; j <= m; ++j)
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) {
          ExactMatrix lhs = rep.E(i, j) * rep.E(k, l) - rep.E(k, l) * rep.E(i, j);
          if (j == k) lhs -= rep.E(i, l);
          if (l == i) lhs += rep.E(k, j);
          if (!is_zero_matrix(lhs)) return false;
        }
  return true;
}

struct GramForm {
  ExactMatrix matrix;
};

// Unique positive-definite G with G*rho(E_ij) = rho(E_ji)^{*T}*G, highest
// weight vector normalized to 1. Solved as an exact linear system.
inline GramForm gram_form(const Irrep& rep) {
  long d = rep.dim;
  // unknowns: d*d entries of G; constraints: symmetry + intertwining for the
  // simple raising generators (these generate, the rest follow)
  std::vector<ExactMatrix> constraint_ops;
  for (int k = 1; k < rep.m; ++k) constraint_ops.push_back(rep.E(k, k + 1));

  long ncols = d * d;
  std::vector<ExactVector> rows;
  auto push_row = [&](const ExactMatrix& coeffs) { rows.push_back(vectorize(coeffs)); };
  // symmetry G(a,b) - G(b,a) = 0   (generators are real, so G is real symmetric)
  for (long a = 0; a < d; ++a)
    for (long b = a + 1; b < d; ++b) {
      ExactMatrix c = exact_zero(d, d);
      c(a, b) = GaussianRational(1);
      c(b, a) = GaussianRational(-1);
      push_row(c);
    }
  // (G*A - A'^T*G)(a,b) = 0 where A = E_{k,k+1}, A' = E_{k+1,k}
  for (int k = 1; k < rep.m; ++k) {
    const ExactMatrix& A = rep.E(k, k + 1);
    const ExactMatrix At = conj_transpose(rep.E(k + 1, k));
    for (long a = 0; a < d; ++a)
      for (long b = 0; b < d; ++b) {
        ExactMatrix c = exact_zero(d, d);
        // sum_s G(a,s) A(s,b) - sum_s At(a,s) G(s,b)
        for (long s = 0; s < d; ++s) {
          c(a, s) += A(s, b);
          c(s, b) -= At(a, s);
        }
        push_row(c);
      }
  }
  ExactMatrix system(rows.size(), ncols);
  for (size_t r = 0; r < rows.size(); ++r) system.row(r) = rows[r].transpose();
  auto ns = nullspace(system);
  if (ns.size() != 1) throw std::domain_error("gram form: invariant form not unique (reducible input?)");
  ExactMatrix g(d, d);
  {
    Eigen::Index k = 0;
    for (long j = 0; j < d; ++j)
      for (long i = 0; i < d; ++i) g(i, j) = ns[0](k++);
  }
  // normalize: highest-weight pattern (all rows maximal) has norm 1
  GTPattern top;
  top.rows.resize(rep.m);
  top.rows.back() = rep.highest;
  for (int r = rep.m - 2; r >= 0; --r)
    top.rows[r] = std::vector<long>(top.rows[r + 1].begin(), top.rows[r + 1].begin() + r + 1);
  long hw = -1;
  for (long t = 0; t < d; ++t)
    if (rep.patterns[t] == top) hw = t;
  if (hw < 0 || g(hw, hw).is_zero()) throw std::domain_error("gram form: cannot normalize");
  g *= g(hw, hw).inverse();
  // positive definiteness: exact leading principal minors > 0
  ExactMatrix elim = g;
  for (long k = 0; k < d; ++k) {
    const GaussianRational& piv = elim(k, k);
    if (!piv.is_real() || piv.re <= 0)
      throw std::domain_error("gram form: not positive definite");
    for (long r = k + 1; r < d; ++r) {
      if (elim(r, k).is_zero()) continue;
      GaussianRational f = elim(r, k) / piv;
      elim.row(r) -= elim.row(k) * f;
    }
  }
  return GramForm{std::move(g)};
}

// Basis of vectors of gl_k-weight mu annihilated by the raising operators of
// the lower-right gl_k block (generators E_{n+i,n+j}, i<j) of a gl_{n+k} irrep.
inline std::vector<ExactVector> highest_weight_subspace(const Irrep& rep, const Weight& mu) {
  int k = static_cast<int>(mu.size());
  int n = rep.m - k;
  if (n < 0) throw std::invalid_argument("mu longer than the ambient rank");
  long d = rep.dim;
  std::vector<ExactMatrix> stack;
  for (int i = 1; i <= k; ++i) {
    ExactMatrix w = rep.E(n + i, n + i);
    for (long t = 0; t < d; ++t) w(t, t) -= GaussianRational(mu[i - 1]);
    stack.push_back(std::move(w));
  }
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) stack.push_back(rep.E(n + i, n + j));
  if (stack.empty()) {
    std::vector<ExactVector> all;
    for (long t = 0; t < d; ++t) {
      ExactVector e = ExactVector::Constant(d, GaussianRational(0));
      e(t) = GaussianRational(1);
      all.push_back(std::move(e));
    }
    return all;
  }
  ExactMatrix big(stack.size() * d, d);
  for (size_t s = 0; s < stack.size(); ++s) big.block(s * d, 0, d, d) = stack[s];
  return nullspace(big);
}

}  // namespace bethe
