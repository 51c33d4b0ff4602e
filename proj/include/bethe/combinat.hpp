#pragma once

#include "bethe/verify.hpp"

namespace bethe {

struct SkewDiagram {
  Weight lambda;
  Weight mu;  // padded with zeros to lambda's length

  SkewDiagram(Weight l, Weight m = {}) : lambda(std::move(l)), mu(std::move(m)) {
    mu.resize(lambda.size(), 0);
    for (size_t i = 0; i < lambda.size(); ++i)
      if (mu[i] > lambda[i]) throw std::invalid_argument("skew diagram: mu_i > lambda_i");
  }

  // (row, col), 1-based, row-major
  std::vector<std::pair<int, int>> cells() const {
    std::vector<std::pair<int, int>> out;
    for (size_t i = 0; i < lambda.size(); ++i)
      for (long j = mu[i] + 1; j <= lambda[i]; ++j)
        out.push_back({static_cast<int>(i + 1), static_cast<int>(j)});
    return out;
  }

  bool has_cell(int row, int col) const {
    if (row < 1 || row > static_cast<int>(lambda.size())) return false;
    return mu[row - 1] < col && col <= lambda[row - 1];
  }

  long content(int row, int col) const { return col - row; }
};

struct SkewTableau {
  SkewDiagram diagram;
  std::map<std::pair<int, int>, int> entries;

  bool semistandard() const {
    for (auto& [cell, v] : entries) {
      auto [r, c] = cell;
      if (diagram.has_cell(r, c + 1) && entries.at({r, c + 1}) < v) return false;
      if (diagram.has_cell(r + 1, c) && entries.at({r + 1, c}) <= v) return false;
    }
    return true;
  }

  std::vector<int> flat() const {  // row-major entry list, for lex comparison
    std::vector<int> out;
    for (auto& [cell, v] : entries) out.push_back(v);
    return out;
  }

  bool operator==(const SkewTableau& o) const { return entries == o.entries; }
  bool operator<(const SkewTableau& o) const { return flat() < o.flat(); }
};

inline std::vector<SkewTableau> enumerate_skew_ssyt(const SkewDiagram& d, int n) {
  auto cells = d.cells();
  std::vector<SkewTableau> out;
  SkewTableau t{d, {}};
  std::function<void(size_t)> fill = [&](size_t k) {
    if (k == cells.size()) {
      out.push_back(t);
      return;
    }
    auto [r, c] = cells[k];
    int lo = 1;
    if (d.has_cell(r, c - 1)) lo = std::max(lo, t.entries.at({r, c - 1}));
    if (d.has_cell(r - 1, c)) lo = std::max(lo, t.entries.at({r - 1, c}) + 1);
    for (int v = lo; v <= n; ++v) {
      t.entries[{r, c}] = v;
      fill(k + 1);
    }
    t.entries.erase({r, c});
  };
  fill(0);
  std::sort(out.begin(), out.end());
  return out;
}

// P_k(u) = prod over upper cells of height-k columns of (u + content), k < n.
inline std::vector<Poly> drinfeld_polynomials(const SkewDiagram& d, int n, long shift = 0) {
  std::vector<Poly> out(n - 1, Poly(std::vector<GaussianRational>{GaussianRational(1)}));
  long maxcol = 0;
  for (long l : d.lambda) maxcol = std::max(maxcol, l);
  for (long j = 1; j <= maxcol; ++j) {
    int height = 0, top = 0;
    for (int i = 1; i <= static_cast<int>(d.lambda.size()); ++i)
      if (d.has_cell(i, static_cast<int>(j))) {
        ++height;
        if (top == 0 || i < top) top = i;
      }
    if (height >= 1 && height <= n - 1)
      out[height - 1] =
          out[height - 1] * Poly(std::vector<GaussianRational>{GaussianRational(j - top + shift), GaussianRational(1)});
  }
  return out;
}

inline std::vector<Poly> tensor_drinfeld(const std::vector<std::pair<SkewDiagram, long>>& factors,
                                         int n) {
  std::vector<Poly> out(n - 1, Poly(std::vector<GaussianRational>{GaussianRational(1)}));
  for (auto& [d, z] : factors) {
    auto p = drinfeld_polynomials(d, n, z);
    for (int k = 0; k < n - 1; ++k) out[k] = out[k] * p[k];
  }
  return out;
}

// Classical Bender-Knuth involution: per row, swap the counts of free i's and
// free (i+1)'s (an i is bound when i+1 sits directly below it, and vice versa).
inline SkewTableau bender_knuth(const SkewTableau& t, int i) {
  SkewTableau out = t;
  int rows = static_cast<int>(t.diagram.lambda.size());
  for (int r = 1; r <= rows; ++r) {
    std::vector<int> free_cols;
    for (long j = t.diagram.mu[r - 1] + 1; j <= t.diagram.lambda[r - 1]; ++j) {
      int c = static_cast<int>(j);
      int v = t.entries.at({r, c});
      if (v == i && !(t.diagram.has_cell(r + 1, c) && t.entries.at({r + 1, c}) == i + 1))
        free_cols.push_back(c);
      if (v == i + 1 && !(t.diagram.has_cell(r - 1, c) && t.entries.at({r - 1, c}) == i))
        free_cols.push_back(c);
    }
    long a = 0;  // free i's come first within the row
    for (int c : free_cols)
      if (t.entries.at({r, c}) == i) ++a;
    long b = static_cast<long>(free_cols.size()) - a;
    for (size_t k = 0; k < free_cols.size(); ++k)
      out.entries[{r, free_cols[k]}] = (static_cast<long>(k) < b) ? i : i + 1;
  }
  if (!out.semistandard()) throw std::logic_error("bender_knuth broke semistandardness");
  return out;
}

struct CactusWord {
  std::vector<std::pair<int, int>> gens;  // (p, q) with 0 <= p < q <= n
};

// interpretation of a cactus generator as a word in BK involutions; empty
// optional means "uninterpreted" (such generators are skipped and reported)
using CactusInterpretation = std::function<std::optional<std::vector<int>>(int p, int q)>;

// eta_q = BK_1 (BK_2 BK_1) ... (BK_{q-1} ... BK_1), the standard zigzag;
// s_{1,q} = eta_q and s_{p,q} = eta_q eta_{q-p+1} eta_q for p >= 1.
inline CactusInterpretation bk_interpretation() {
  auto eta = [](int q) {
    std::vector<int> w;
    for (int k = 1; k < q; ++k)
      for (int i = k; i >= 1; --i) w.push_back(i);
    return w;
  };
  return [eta](int p, int q) -> std::optional<std::vector<int>> {
    if (p < 1) return std::nullopt;
    std::vector<int> w = eta(q);
    auto mid = eta(q - p + 1);
    w.insert(w.end(), mid.begin(), mid.end());
    auto tail = eta(q);
    w.insert(w.end(), tail.begin(), tail.end());
    return w;
  };
}

inline CertificateReport check_cactus_relations(const SkewDiagram& d, int n,
                                                const CactusInterpretation& action = bk_interpretation()) {
  CertificateReport rep{"cactus_relations", "skew diagram on n=" + std::to_string(n), "pass", {}, 0};
  auto tabs = enumerate_skew_ssyt(d, n);
  auto index_of = [&tabs](const SkewTableau& t) {
    auto it = std::lower_bound(tabs.begin(), tabs.end(), t);
    if (it == tabs.end() || !(*it == t)) throw std::logic_error("tableau left the SSYT set");
    return static_cast<int>(it - tabs.begin());
  };
  // permutation realized by a generator; nullopt when uninterpreted
  auto perm_of = [&](int p, int q) -> std::optional<std::vector<int>> {
    auto w = action(p, q);
    if (!w) return std::nullopt;
    std::vector<int> perm(tabs.size());
    for (size_t t = 0; t < tabs.size(); ++t) {
      SkewTableau cur = tabs[t];
      for (int i : *w) cur = bender_knuth(cur, i);
      perm[t] = index_of(cur);
    }
    return perm;
  };
  std::map<std::pair<int, int>, std::vector<int>> perms;
  int skipped = 0;
  for (int q = 2; q <= n; ++q)
    for (int p = 0; p < q; ++p) {
      auto pm = perm_of(p, q);
      if (pm)
        perms[{p, q}] = *pm;
      else
        ++skipped;
    }
  if (skipped) rep.note("uninterpreted generators", std::to_string(skipped));
  auto compose = [](const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> out(f.size());
    for (size_t i = 0; i < f.size(); ++i) out[i] = f[g[i]];
    return out;
  };
  auto is_id = [](const std::vector<int>& f) {
    for (size_t i = 0; i < f.size(); ++i)
      if (f[i] != static_cast<int>(i)) return false;
    return true;
  };
  // relation 1: involutions
  for (auto& [pq, f] : perms)
    if (!is_id(compose(f, f))) {
      rep.verdict = "fail";
      rep.note("s^2 != e", "s_{" + std::to_string(pq.first) + "," + std::to_string(pq.second) + "}");
    }
  // relation 2: disjoint supports commute (q1 < p2)
  for (auto& [pq1, f] : perms)
    for (auto& [pq2, g] : perms)
      if (pq1.second < pq2.first && compose(f, g) != compose(g, f)) {
        rep.verdict = "fail";
        rep.note("commutation failed", "s_{" + std::to_string(pq1.first) + "," +
                                           std::to_string(pq1.second) + "} vs s_{" +
                                           std::to_string(pq2.first) + "," +
                                           std::to_string(pq2.second) + "}");
      }
  // relation 3 (nesting): recorded as evidence, not asserted
  int nest_checked = 0, nest_ok = 0;
  for (auto& [pq1, f] : perms)
    for (auto& [pq2, g] : perms) {
      auto [p1, q1] = pq1;
      auto [p2, q2] = pq2;
      if (!(p1 <= p2 && p2 < q2 && q2 <= q1)) continue;
      auto it = perms.find({p1 + q1 - q2, p1 + q1 - p2});
      if (it == perms.end()) continue;
      ++nest_checked;
      if (compose(f, compose(g, f)) == it->second) ++nest_ok;
    }
  rep.note("nesting relation", std::to_string(nest_ok) + "/" + std::to_string(nest_checked) +
                                   " instances hold");
  return rep;
}

}  // namespace bethe
