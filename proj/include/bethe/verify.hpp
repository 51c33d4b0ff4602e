#pragma once

#include "bethe/subalgebras.hpp"

namespace bethe {

struct CertificateReport {
  std::string check;
  std::string instance;
  std::string verdict;  // "pass" | "fail" | "inconclusive"
  std::vector<std::pair<std::string, std::string>> witness;
  unsigned long seed = 0;

  bool passed() const { return verdict == "pass"; }
  void note(std::string key, std::string value) { witness.push_back({std::move(key), std::move(value)}); }
};

inline std::string str(const ExactVector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v(i).str();
  return s + ")";
}

inline CertificateReport check_commutative(const SubalgebraImage& img) {
  CertificateReport rep{"commutative", img.family + " on " + img.module_ref, "pass", {}, 0};
  const auto& b = img.span.basis();
  const auto& lab = img.span.labels();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      if (!is_zero_matrix(b[i] * b[j] - b[j] * b[i])) {
        rep.verdict = "fail";
        rep.note("noncommuting pair", "[" + lab[i] + ", " + lab[j] + "] != 0");
        return rep;
      }
  rep.note("pairs checked", std::to_string(b.size() * (b.size() - 1) / 2));
  return rep;
}

inline CertificateReport check_cyclic(const SubalgebraImage& img, int trials = 5,
                                      unsigned long seed = 1) {
  CertificateReport rep{"cyclic", img.family + " on " + img.module_ref, "fail", {}, seed};
  std::mt19937_64 rng(seed);
  long dim = img.span.ambient_rows();
  for (int t = 0; t < trials; ++t) {
    ExactVector v(dim);
    for (long i = 0; i < dim; ++i) v(i) = random_scalar(rng, 7);
    auto kry = krylov_span(img.span.basis(), v, dim);
    if (kry.stabilized && kry.dim == dim) {
      rep.verdict = "pass";
      rep.note("cyclic vector", str(v));
      rep.note("trial", std::to_string(t));
      return rep;
    }
  }
  rep.note("note", "no sampled vector was cyclic; does not refute genericity");
  return rep;
}

inline CertificateReport check_simple_spectrum(const SubalgebraImage& img, int trials = 5,
                                               unsigned long seed = 1) {
  CertificateReport rep{"simple_spectrum", img.family + " on " + img.module_ref, "inconclusive",
                        {}, seed};
  std::mt19937_64 rng(seed);
  long dim = img.span.ambient_rows();
  for (int t = 0; t < trials; ++t) {
    ExactMatrix g = exact_zero(dim, dim);
    std::string combo;
    for (size_t k = 0; k < img.span.basis().size(); ++k) {
      GaussianRational c = random_scalar(rng, 7);
      g += img.span.basis()[k] * c;
      combo += (k ? " + " : "") + c.str() + "*" + img.span.labels()[k];
    }
    if (squarefree_charpoly_certificate(g)) {
      rep.verdict = "pass";
      rep.note("separating element", combo);
      rep.note("trial", std::to_string(t));
      return rep;
    }
  }
  rep.note("note", "no sampled combination had squarefree charpoly");
  return rep;
}

// Adjoint with respect to the Gram form: X* = G^{-1} X^dagger G.
inline ExactMatrix gram_adjoint(const ExactMatrix& x, const ExactMatrix& gram) {
  ExactMatrix rhs = conj_transpose(x) * gram;
  ExactMatrix out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) out.col(c) = exact_solve(gram, ExactVector(rhs.col(c)));
  return out;
}

inline CertificateReport check_selfadjoint_closure(const SubalgebraImage& img,
                                                   const ExactMatrix& gram) {
  CertificateReport rep{"selfadjoint_closure", img.family + " on " + img.module_ref, "pass", {}, 0};
  OperatorSpan adj(img.span.ambient_rows(), img.span.ambient_cols());
  for (size_t k = 0; k < img.span.basis().size(); ++k)
    adj.add(gram_adjoint(img.span.basis()[k], gram), img.span.labels()[k] + "*");
  if (!span_equal(img.span, adj)) {
    rep.verdict = "fail";
    for (size_t k = 0; k < adj.basis().size(); ++k)
      if (!img.span.contains(adj.basis()[k])) {
        rep.note("adjoint outside span", adj.labels()[k]);
        break;
      }
  } else {
    rep.note("basis size", std::to_string(img.span.basis().size()));
  }
  return rep;
}

// P = sum e_ij (x) rho(E_ij) on C^n (x) V_lambda; for lambda = l*omega_r the
// identity P^2 = (l+n-r) P holds, and fails for every scalar otherwise.
inline CertificateReport check_kr_projector(int n, const Weight& lambda,
                                            std::optional<GaussianRational> expected = std::nullopt) {
  auto rep_ = build_irrep(lambda);
  std::ostringstream inst;
  inst << "n=" << n << ", lambda=(";
  for (size_t i = 0; i < lambda.size(); ++i) inst << (i ? "," : "") << lambda[i];
  inst << ")";
  CertificateReport out{"kr_projector", inst.str(), "fail", {}, 0};
  long d = n * rep_.dim;
  ExactMatrix p = exact_zero(d, d);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) p += kron(unitmat(n, i - 1, j - 1), rep_.E(i, j));
  ExactMatrix p2 = p * p;
  if (expected) {
    if (is_zero_matrix(p2 - p * *expected)) {
      out.verdict = "pass";
      out.note("eigenvalue", expected->str());
    } else {
      out.note("residual", "P^2 - a P != 0 at a = " + expected->str());
    }
    return out;
  }
  // no expected scalar: certify that none exists (negative direction)
  RowEchelon e(d * d);
  e.insert(vectorize(p));
  bool proportional = !e.insert(vectorize(p2));
  if (!proportional) {
    out.verdict = "pass";
    out.note("witness", "rank{vec P, vec P^2} = 2: P^2 is not a multiple of P");
  }
  return out;
}

inline CertificateReport check_kr_projector(int n, int l, int r) {
  if (r < 1 || r > n - 1 || l < 1) throw std::invalid_argument("kr_projector: need 1<=r<=n-1, l>=1");
  Weight lambda(n, 0);
  for (int i = 0; i < r; ++i) lambda[i] = l;
  return check_kr_projector(n, lambda, GaussianRational(l + n - r));
}

inline CertificateReport check_ev_identity(const Weight& lambda, const GaussianRational& z,
                                           const DiagonalParam& C, long max_order = 6,
                                           bool invert_parameter = true) {
  auto rep_ = build_irrep(lambda);
  auto b = bethe_image(evaluation_module(rep_, z), C, max_order);
  auto s = soa_image(rep_, invert_parameter ? C.inverse() : C);
  CertificateReport out{"ev_identity", b.module_ref + ", C=" + C.str(), "fail", {}, 0};
  if (!invert_parameter) out.note("note", "comparing against soa at C (control)");
  if (span_equal(b.span, s.span)) {
    out.verdict = "pass";
    out.note("span dim", std::to_string(b.span.dim()));
  } else {
    out.note("bethe dim", std::to_string(b.span.dim()));
    out.note("soa dim", std::to_string(s.span.dim()));
  }
  return out;
}

inline CertificateReport check_limit_convergence(const LimitRecipe& recipe, const YModule& m,
                                                 const std::vector<GaussianRational>& ts,
                                                 long max_order = 5, double epsilon = 1e-9) {
  if (recipe.kind == LimitRecipe::Kind::Generic)
    throw std::invalid_argument("limit_convergence: generic recipe has no limit");
  CertificateReport out{"limit_convergence", recipe.str() + " on " + m.provenance, "pass", {}, 0};
  auto pred = predicted_limit_span(recipe, m, max_order);
  double prev = -1;
  std::string seq;
  for (size_t k = 0; k < ts.size(); ++k) {
    auto img = bethe_image(m, limit_family(recipe, ts[k]), max_order);
    auto angles = principal_angles(img.span, pred.span);
    double mx = angles.empty() ? 0.0 : angles.back();
    std::ostringstream a;
    a << (k ? ", " : "") << mx;
    seq += a.str();
    if (prev >= 0 && mx > prev) {
      out.verdict = "fail";
      out.note("non-monotone at t", ts[k].str());
    }
    prev = mx;
  }
  out.note("max angles", seq);
  if (out.verdict == "pass" && prev >= epsilon * 1e3) {
    out.verdict = "fail";
    out.note("final angle too large", std::to_string(prev));
  }
  return out;
}

}  // namespace bethe
