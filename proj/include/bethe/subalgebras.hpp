#pragma once

#include <map>

#include "bethe/yangian.hpp"

namespace bethe {

struct SubalgebraImage {
  OperatorSpan span;
  std::string family;
  std::string module_ref;

  SubalgebraImage(Eigen::Index dim, std::string fam, std::string mod)
      : span(dim), family(std::move(fam)), module_ref(std::move(mod)) {}
};

// ---- symbolic shift-of-argument generators ----------------------------------
//
// P_i = sum of principal i x i minors of the commuting-variable matrix
// (x_ab) + s * diag(chi); the generators of A_chi are the symmetrizations of
// the s-derivatives d^c/ds^c P_i at s = 0.

namespace soa {

// monomial: set of (row, col) variable indices with pairwise distinct rows,
// kept sorted; commuting picture, coefficient exact.
using Monomial = std::vector<std::pair<int, int>>;
using SymPoly = std::map<Monomial, GaussianRational>;

// c-th s-derivative coefficient (times 1/c!) of sum of principal i-minors.
inline SymPoly minor_derivative(int m, int i, int c, const std::vector<GaussianRational>& chi) {
  SymPoly out;
  std::vector<int> subset(i);
  std::function<void(int, int)> loop = [&](int pos, int start) {
    if (pos == i) {
      std::vector<int> perm(i);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        int sign = detail::permutation_sign(perm);
        // product over a of (x_{J[a], J[perm[a]]} + s chi delta): choose which
        // c fixed points contribute the chi factor
        std::vector<int> fixed;
        for (int a = 0; a < i; ++a)
          if (perm[a] == a) fixed.push_back(a);
        if (static_cast<int>(fixed.size()) < c) continue;
        std::vector<int> pick(c);
        std::function<void(int, int)> choose = [&](int cp, int cs) {
          if (cp == c) {
            GaussianRational w(sign);
            Monomial mono;
            for (int a = 0; a < i; ++a) {
              bool used_chi = false;
              for (int t = 0; t < c; ++t)
                if (pick[t] == a) used_chi = true;
              if (used_chi)
                w *= chi[subset[a] - 1];
              else
                mono.push_back({subset[a], subset[perm[a]]});
            }
            std::sort(mono.begin(), mono.end());
            out[mono] += w;
            return;
          }
          for (int v = cs; v < static_cast<int>(fixed.size()); ++v) {
            pick[cp] = fixed[v];
            choose(cp + 1, v + 1);
          }
        };
        choose(0, 0);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return;
    }
    for (int v = start; v <= m; ++v) {
      subset[pos] = v;
      loop(pos + 1, v + 1);
    }
  };
  loop(0, 1);
  return out;
}

// symmetrized image: average over orderings of the operator product.
inline ExactMatrix realize(const SymPoly& poly,
                           const std::function<ExactMatrix(int, int)>& getE, Eigen::Index dim) {
  ExactMatrix out = exact_zero(dim, dim);
  for (const auto& [mono, coeff] : poly) {
    if (coeff.is_zero()) continue;
    if (mono.empty()) {
      out += exact_identity(dim) * coeff;
      continue;
    }
    std::vector<int> order(mono.size());
    std::iota(order.begin(), order.end(), 0);
    ExactMatrix sym = exact_zero(dim, dim);
    long count = 0;
    do {
      ExactMatrix prod = getE(mono[order[0]].first, mono[order[0]].second);
      for (size_t t = 1; t < order.size(); ++t)
        prod = prod * getE(mono[order[t]].first, mono[order[t]].second);
      sym += prod;
      ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    out += sym * (coeff / GaussianRational(count));
  }
  return out;
}

}  // namespace soa

// Span of sym(d^c_chi P_i) images, i = 1..m, 0 <= c <= i-1, through an
// arbitrary realization of the gl_m generators.
inline std::vector<LabeledOp> soa_generators(int m, const DiagonalParam& chi,
                                             const std::function<ExactMatrix(int, int)>& getE,
                                             Eigen::Index dim) {
  std::vector<LabeledOp> out;
  for (int i = 1; i <= m; ++i)
    for (int c = 0; c < i; ++c) {
      soa::SymPoly poly = soa::minor_derivative(m, i, c, chi.entries);
      std::ostringstream label;
      label << "P" << i << "^(" << c << ")";
      out.push_back({label.str(), soa::realize(poly, getE, dim)});
    }
  return out;
}

// ---- the three subalgebra images --------------------------------------------

inline SubalgebraImage bethe_image(const YModule& m, const DiagonalParam& C, long max_order,
                                   bool product_closure = false) {
  if (!C.invertible()) throw std::invalid_argument("bethe_image: C must be invertible");
  SubalgebraImage img(m.dim, "bethe(C=" + C.str() + ")", m.provenance);
  img.span.add(exact_identity(m.dim), "1");
  for (int p = 1; p <= m.n; ++p)
    for (auto& g : tau_generators(m, C, p, max_order)) img.span.add(g.op, g.label);
  if (product_closure) img.span.close_under_products();
  return img;
}

inline SubalgebraImage soa_image(const Irrep& rep, const DiagonalParam& chi,
                                 std::optional<GaussianRational> z = std::nullopt) {
  SubalgebraImage img(rep.dim, "soa(chi=" + chi.str() + ")",
                      "irrep" + (z ? "(z=" + z->str() + ")" : std::string()));
  img.span.add(exact_identity(rep.dim), "1");
  auto getE = [&rep](int a, int b) { return rep.E(a, b); };
  for (auto& g : soa_generators(rep.m, chi, getE, rep.dim)) img.span.add(g.op, g.label);
  return img;
}

inline SubalgebraImage gt_image(const YModule& m, long max_order) {
  SubalgebraImage img(m.dim, "gt", m.provenance);
  img.span.add(exact_identity(m.dim), "1");
  for (int p = 1; p <= m.n; ++p) {
    std::vector<int> idx(p);
    std::iota(idx.begin(), idx.end(), 1);
    auto coeffs = quantum_minor(m, idx, idx).series_coeffs(max_order);
    for (long r = 1; r <= max_order; ++r) {
      std::ostringstream label;
      label << "t^{1.." << p << "}[" << r << "]";
      img.span.add(coeffs[r], label.str());
    }
  }
  return img;
}

// ---- limit recipes -----------------------------------------------------------

struct LimitRecipe {
  enum class Kind { Generic, FirstType, SecondType, Caterpillar, CaterpillarDual };
  Kind kind = Kind::Generic;
  DiagonalParam C;                                       // Generic
  DiagonalParam C0, C1;                                  // FirstType
  std::vector<std::pair<GaussianRational, int>> blocks;  // SecondType: (a_i, k_i)
  std::vector<DiagonalParam> block_params;               // SecondType: C_i
  int n = 0;

  static LimitRecipe generic(DiagonalParam C) {
    LimitRecipe r;
    r.kind = Kind::Generic;
    r.n = static_cast<int>(C.size());
    r.C = std::move(C);
    return r;
  }
  // C(t) = diag(C0, 0..0) + t diag(0..0, C1)
  static LimitRecipe first_type(DiagonalParam C0, DiagonalParam C1) {
    if (!C0.invertible() || !C1.invertible())
      throw std::invalid_argument("first-type recipe requires nonzero entries");
    if (!C0.regular || !C1.regular)
      throw std::invalid_argument("first-type recipe requires regular blocks");
    LimitRecipe r;
    r.kind = Kind::FirstType;
    r.n = static_cast<int>(C0.size() + C1.size());
    r.C0 = std::move(C0);
    r.C1 = std::move(C1);
    return r;
  }
  // C(t) = C0 + t diag(C_1, ..., C_l) with C0 = diag(a_i with multiplicity k_i)
  static LimitRecipe second_type(std::vector<std::pair<GaussianRational, int>> blocks,
                                 std::vector<DiagonalParam> params) {
    if (blocks.size() != params.size()) throw std::invalid_argument("second-type: block mismatch");
    LimitRecipe r;
    r.kind = Kind::SecondType;
    for (size_t i = 0; i < blocks.size(); ++i) {
      for (size_t j = i + 1; j < blocks.size(); ++j)
        if (blocks[i].first == blocks[j].first)
          throw std::invalid_argument("second-type: block values must be pairwise distinct");
      if (params[i].size() != static_cast<size_t>(blocks[i].second))
        throw std::invalid_argument("second-type: block parameter size mismatch");
      if (!params[i].regular) throw std::invalid_argument("second-type: block parameters must be regular");
      r.n += blocks[i].second;
    }
    r.blocks = std::move(blocks);
    r.block_params = std::move(params);
    return r;
  }
  static LimitRecipe caterpillar(int n) {
    LimitRecipe r;
    r.kind = Kind::Caterpillar;
    r.n = n;
    return r;
  }

  std::string str() const {
    switch (kind) {
      case Kind::Generic:
        return "generic(" + C.str() + ")";
      case Kind::FirstType:
        return "first(" + C0.str() + "; " + C1.str() + ")";
      case Kind::SecondType: {
        std::string s = "second(";
        for (size_t i = 0; i < blocks.size(); ++i)
          s += (i ? "; " : "") + blocks[i].first.str() + "x" + std::to_string(blocks[i].second) +
               " + t*" + block_params[i].str();
        return s + ")";
      }
      case Kind::Caterpillar:
        return "caterpillar(" + std::to_string(n) + ")";
      case Kind::CaterpillarDual:
        return "caterpillar-dual(" + std::to_string(n) + ")";
    }
    return "?";
  }
};

// The diagonal matrix C(t) of the recipe; throws if C(t) fails regularity.
inline DiagonalParam limit_family(const LimitRecipe& recipe, const GaussianRational& t) {
  if (recipe.kind != LimitRecipe::Kind::Generic && t.is_zero())
    throw std::invalid_argument("limit_family: t must be nonzero");
  std::vector<GaussianRational> e;
  switch (recipe.kind) {
    case LimitRecipe::Kind::Generic:
      return recipe.C;
    case LimitRecipe::Kind::FirstType:
      for (auto& c : recipe.C0.entries) e.push_back(c);
      for (auto& c : recipe.C1.entries) e.push_back(c * t);
      break;
    case LimitRecipe::Kind::SecondType:
      for (size_t i = 0; i < recipe.blocks.size(); ++i)
        for (auto& c : recipe.block_params[i].entries) e.push_back(recipe.blocks[i].first + c * t);
      break;
    case LimitRecipe::Kind::Caterpillar: {
      // accelerated caterpillar curve diag(1, t^2, t^4, ...): same limit point
      // for every t-power choice, fast angle decay for the numeric certificate
      GaussianRational cur(1), t2 = t * t;
      for (int i = 0; i < recipe.n; ++i) {
        e.push_back(cur);
        cur *= t2;
      }
      break;
    }
    default:
      throw std::invalid_argument("limit_family: unsupported recipe kind");
  }
  return DiagonalParam(std::move(e), true);  // throws when C(t) is not regular
}

// Principal-minor tau generators over a restricted index universe: the i_k
// copy of a smaller Bethe algebra inside Y(gl_n).
inline std::vector<LabeledOp> sub_bethe_generators(const YModule& m, const DiagonalParam& C0,
                                                   int universe, long max_order) {
  std::vector<LabeledOp> out;
  for (int p = 1; p <= universe; ++p) {
    RatOpMatrix total = RatOpMatrix::zero(1, m.dim);
    std::vector<int> idx(p);
    std::function<void(int, int)> rec = [&](int pos, int start) {
      if (pos == p) {
        GaussianRational w(1);
        for (int i : idx) w *= C0.entries[i - 1];
        total = total + quantum_minor(m, idx, idx).scaled(w);
        return;
      }
      for (int v = start; v <= universe; ++v) {
        idx[pos] = v;
        rec(pos + 1, v + 1);
      }
    };
    rec(0, 1);
    auto coeffs = total.series_coeffs(max_order);
    for (long r = 1; r <= max_order; ++r) {
      std::ostringstream label;
      label << "i_k.tau" << p << "[" << r << "]";
      out.push_back({label.str(), std::move(coeffs[r])});
    }
  }
  return out;
}

// The span predicted by the one-step limit theorems.
inline SubalgebraImage predicted_limit_span(const LimitRecipe& recipe, const YModule& m,
                                            long max_order) {
  switch (recipe.kind) {
    case LimitRecipe::Kind::Caterpillar: {
      SubalgebraImage img = gt_image(m, max_order);
      img.family = "limit(" + recipe.str() + ") = gt";
      return img;
    }
    case LimitRecipe::Kind::FirstType: {
      int nk = static_cast<int>(recipe.C0.size());  // n - k
      int k = static_cast<int>(recipe.C1.size());
      SubalgebraImage img(m.dim, "limit(" + recipe.str() + ")", m.provenance);
      img.span.add(exact_identity(m.dim), "1");
      for (auto& g : sub_bethe_generators(m, recipe.C0, nk, max_order)) img.span.add(g.op, g.label);
      // complement sub-Yangian part: quantum-minor series from the explicit
      // generator description of the first-type limit
      std::vector<int> base(nk);
      std::iota(base.begin(), base.end(), 1);
      RatOpMatrix dinv =
          quantum_minor(m, base, base).shifted(GaussianRational(nk)).inverse();
      for (int j = 1; j <= k; ++j) {
        RatOpMatrix sum = RatOpMatrix::zero(1, m.dim);
        std::vector<int> pick(j);
        std::function<void(int, int)> rec = [&](int pos, int start) {
          if (pos == j) {
            GaussianRational w(1);
            std::vector<int> idx = base;
            for (int s : pick) {
              w *= recipe.C1.entries[s - 1];
              idx.push_back(nk + s);
            }
            sum = sum + quantum_minor(m, idx, idx).scaled(w);
            return;
          }
          for (int v = start; v <= k; ++v) {
            pick[pos] = v;
            rec(pos + 1, v + 1);
          }
        };
        rec(0, 1);
        auto coeffs = ratop_mul(dinv, sum, 0).series_coeffs(max_order);
        for (long r = 0; r <= max_order; ++r) {
          std::ostringstream label;
          label << "psi.g" << j << "[" << r << "]";
          img.span.add(coeffs[r], label.str());
        }
      }
      return img;
    }
    case LimitRecipe::Kind::SecondType: {
      std::vector<GaussianRational> c0;
      for (auto& [a, mult] : recipe.blocks)
        for (int t = 0; t < mult; ++t) c0.push_back(a);
      DiagonalParam C0(std::move(c0), false);
      SubalgebraImage img = bethe_image(m, C0, max_order);
      img.family = "limit(" + recipe.str() + ")";
      // per-block shift-of-argument algebras on the U(gl_{k_i}) copies,
      // realized through t_ab^{(1)} = u^{-1}-coefficients of T
      auto s1 = m.T.series_coeffs(1);
      long offset = 0;
      for (size_t b = 0; b < recipe.blocks.size(); ++b) {
        int kb = recipe.blocks[b].second;
        long off = offset;
        offset += kb;
        if (kb < 1) continue;
        auto getE = [&, off](int a, int bb) {
          return ExactMatrix(s1[1].block((off + a - 1) * m.dim, (off + bb - 1) * m.dim, m.dim, m.dim));
        };
        for (auto& g : soa_generators(kb, recipe.block_params[b], getE, m.dim))
          img.span.add(g.op, "block" + std::to_string(b) + "." + g.label);
      }
      return img;
    }
    case LimitRecipe::Kind::Generic:
      throw std::invalid_argument("predicted_limit_span: generic recipe has no limit");
    default:
      throw std::invalid_argument("predicted_limit_span: unsupported recipe kind");
  }
}

// The sigma_1-image recipe of the evaluation identity.
inline LimitRecipe sigma1_transform(const LimitRecipe& recipe) {
  switch (recipe.kind) {
    case LimitRecipe::Kind::Generic: {
      if (!recipe.C.invertible() || !recipe.C.regular)
        throw std::invalid_argument("sigma1: parameter must be regular and invertible");
      return LimitRecipe::generic(recipe.C.inverse());
    }
    case LimitRecipe::Kind::FirstType: {
      // target A_{C0^{-1}} (x) A_{(0,...,0, C1^{-1})}: a second-type recipe
      // whose zero block carries the inverted C1 direction
      std::vector<std::pair<GaussianRational, int>> blocks;
      std::vector<DiagonalParam> params;
      for (auto& c : recipe.C0.entries) {
        blocks.push_back({c.inverse(), 1});
        params.push_back(DiagonalParam({GaussianRational(0)}, false));
      }
      blocks.push_back({GaussianRational(0), static_cast<int>(recipe.C1.size())});
      params.push_back(recipe.C1.inverse());
      return LimitRecipe::second_type(std::move(blocks), std::move(params));
    }
    case LimitRecipe::Kind::Caterpillar: {
      LimitRecipe r;
      r.kind = LimitRecipe::Kind::CaterpillarDual;
      r.n = recipe.n;
      return r;
    }
    default:
      throw std::invalid_argument("sigma1_transform: unsupported recipe kind");
  }
}

}  // namespace bethe
