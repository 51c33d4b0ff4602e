#pragma once

#include <string>

#include "bethe/linalg.hpp"

namespace bethe {

using MatPoly = PolyT<ExactMatrix>;

inline MatPoly matpoly_scale(const MatPoly& a, const Poly& s) {
  if (a.is_zero() || s.is_zero()) return MatPoly();
  MatPoly r;
  r.c.resize(a.c.size() + s.c.size() - 1, a.c.front() - a.c.front());
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < s.c.size(); ++j) r.c[i + j] += a.c[i] * s.c[j];
  r.trim();
  return r;
}

// T(u) acting on an m-fold matrix argument over a d-dimensional module:
// num(u)/den(u) with (m*d)x(m*d) matrix numerator coefficients and a monic
// scalar denominator. On a fixed module every t_ij(u) entry is a rational
// function, so this commutative-denominator form is exact.
struct RatOpMatrix {
  int m = 1;
  Eigen::Index d = 1;
  MatPoly num;
  Poly den = poly_from({1});

  Eigen::Index size() const { return m * d; }

  static RatOpMatrix identity(int m, Eigen::Index d) {
    RatOpMatrix r;
    r.m = m;
    r.d = d;
    r.num = MatPoly::constant(exact_identity(m * d));
    r.den = poly_from({1});
    return r;
  }

  static RatOpMatrix zero(int m, Eigen::Index d) {
    RatOpMatrix r;
    r.m = m;
    r.d = d;
    return r;
  }

  // Constant operator (no u dependence).
  static RatOpMatrix constant(int m, Eigen::Index d, const ExactMatrix& op) {
    RatOpMatrix r;
    r.m = m;
    r.d = d;
    if (!is_zero_matrix(op)) r.num = MatPoly::constant(op);
    return r;
  }

  // Scalar numerator entry (i,j,row,col) as a polynomial in u.
  Poly entry_poly(Eigen::Index row, Eigen::Index col) const {
    std::vector<GaussianRational> c;
    for (const auto& coeff : num.c) c.push_back(coeff(row, col));
    return Poly(std::move(c));
  }

  // The (i,j) matrix-argument block as a 1-slot RatOpMatrix.
  RatOpMatrix block(int i, int j) const {
    RatOpMatrix r;
    r.m = 1;
    r.d = d;
    r.den = den;
    MatPoly nb;
    for (const auto& coeff : num.c) nb.c.push_back(coeff.block(i * d, j * d, d, d));
    nb.trim();
    r.num = std::move(nb);
    return r;
  }

  // Restrict the matrix argument to its top-left mm x mm blocks.
  RatOpMatrix top_blocks(int mm) const {
    RatOpMatrix r;
    r.m = mm;
    r.d = d;
    r.den = den;
    MatPoly nb;
    for (const auto& coeff : num.c) {
      ExactMatrix sub = exact_zero(mm * d, mm * d);
      for (int i = 0; i < mm; ++i)
        for (int j = 0; j < mm; ++j) sub.block(i * d, j * d, d, d) = coeff.block(i * d, j * d, d, d);
      nb.c.push_back(std::move(sub));
    }
    nb.trim();
    r.num = std::move(nb);
    return r;
  }

  void make_monic() {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    GaussianRational lead = den.c.back();
    if (lead == GaussianRational(1)) return;
    den = den.scaled(lead.inverse());
    num = num.scaled(lead.inverse());
  }

  // Cancel common polynomial factors of den and all numerator entries.
  void reduce() {
    make_monic();
    if (num.is_zero()) {
      den = poly_from({1});
      return;
    }
    Poly g = den;
    Eigen::Index n = size();
    for (Eigen::Index col = 0; col < n && g.degree() > 0; ++col)
      for (Eigen::Index row = 0; row < n && g.degree() > 0; ++row) g = poly_gcd(g, entry_poly(row, col));
    if (g.degree() <= 0) return;
    den = poly_div_exact(den, g);
    MatPoly reduced;
    Eigen::Index rows = num.c.front().rows();
    std::vector<std::vector<Poly>> cols(n, std::vector<Poly>(n));
    long maxdeg = -1;
    for (Eigen::Index col = 0; col < n; ++col)
      for (Eigen::Index row = 0; row < n; ++row) {
        cols[row][col] = poly_div_exact(entry_poly(row, col), g);
        maxdeg = std::max(maxdeg, cols[row][col].degree());
      }
    for (long k = 0; k <= maxdeg; ++k) {
      ExactMatrix c = exact_zero(rows, rows);
      for (Eigen::Index col = 0; col < n; ++col)
        for (Eigen::Index row = 0; row < n; ++row)
          if (k <= cols[row][col].degree()) c(row, col) = cols[row][col].c[k];
      reduced.c.push_back(std::move(c));
    }
    reduced.trim();
    num = std::move(reduced);
  }

  // u -> s*u + t with s = +-1 (argument shifts and the omega flip).
  RatOpMatrix substituted(const GaussianRational& s, const GaussianRational& t) const {
    RatOpMatrix r = *this;
    r.num = num.compose_affine(s, t);
    r.den = den.compose_affine(s, t);
    r.make_monic();
    return r;
  }
  RatOpMatrix shifted(const GaussianRational& t) const { return substituted(GaussianRational(1), t); }

  RatOpMatrix operator+(const RatOpMatrix& o) const {
    if (m != o.m || d != o.d) throw std::invalid_argument("ratop add shape mismatch");
    Poly g = poly_gcd(den, o.den);
    Poly fa = poly_div_exact(o.den, g), fb = poly_div_exact(den, g);
    RatOpMatrix r;
    r.m = m;
    r.d = d;
    r.num = matpoly_scale(num, fa) + matpoly_scale(o.num, fb);
    r.den = den * fa;
    r.reduce();
    return r;
  }
  RatOpMatrix operator-() const {
    RatOpMatrix r = *this;
    r.num = -r.num;
    return r;
  }
  RatOpMatrix operator-(const RatOpMatrix& o) const { return *this + (-o); }

  RatOpMatrix scaled(const GaussianRational& s) const {
    RatOpMatrix r = *this;
    r.num = r.num.scaled(s);
    return r;
  }

  bool equal(const RatOpMatrix& o) const {
    if (m != o.m || d != o.d) return false;
    return matpoly_scale(num, o.den) == matpoly_scale(o.num, den);
  }

  bool is_zero() const { return num.is_zero(); }

  ExactMatrix eval_at(const GaussianRational& u0) const {
    GaussianRational dv = den.eval(u0);
    if (dv.is_zero()) throw std::domain_error("evaluation at a pole");
    if (num.is_zero()) return exact_zero(size(), size());
    return num.eval(u0) * dv.inverse();
  }

  // Coefficients of u^{-r}, r = 0..order, of num/den expanded at u = infinity.
  // Requires deg num <= deg den (always true for our T-operators).
  std::vector<ExactMatrix> series_coeffs(long order) const {
    std::vector<ExactMatrix> out;
    Eigen::Index n = size();
    if (num.is_zero()) {
      out.assign(order + 1, exact_zero(n, n));
      return out;
    }
    long dd = den.degree(), dn = num.degree();
    if (dn > dd) throw std::logic_error("series at infinity with deg num > deg den");
    auto fcoeff = [&](long r) -> ExactMatrix {
      long k = dd - r;
      if (k < 0 || k > dn) return exact_zero(n, n);
      return num.c[k];
    };
    // monic den: g_0 = 1
    for (long r = 0; r <= order; ++r) {
      ExactMatrix s = fcoeff(r);
      for (long k = 1; k <= r; ++k) {
        long gk_idx = dd - k;
        GaussianRational gk = (gk_idx >= 0 && gk_idx <= dd) ? den.c[gk_idx] : GaussianRational(0);
        if (!gk.is_zero()) s -= out[r - k] * gk;
      }
      out.push_back(std::move(s));
    }
    return out;
  }

  bool one_plus_lower_order() const {
    auto s = series_coeffs(0);
    return is_zero_matrix(s[0] - exact_identity(size()));
  }

  RatOpMatrix inverse() const;
};

// a(u) * b(u + shift), operators multiplied in that order.
inline RatOpMatrix ratop_mul(const RatOpMatrix& a, const RatOpMatrix& b, long shift = 0) {
  if (a.m != b.m || a.d != b.d) throw std::invalid_argument("ratop mul shape mismatch");
  RatOpMatrix bs = shift == 0 ? b : b.shifted(GaussianRational(shift));
  RatOpMatrix r;
  r.m = a.m;
  r.d = a.d;
  r.num = a.num * bs.num;
  r.den = a.den * bs.den;
  r.reduce();
  return r;
}

inline RatOpMatrix ratop_inverse(const RatOpMatrix& a) { return a.inverse(); }

// Exact inverse via adjugate interpolation: the entries live in the
// commutative field Q(i)(u) once the module action is fixed, so evaluating at
// enough sample points and interpolating det and adjugate is exact.
inline RatOpMatrix RatOpMatrix::inverse() const {
  Eigen::Index n = size();
  if (num.is_zero()) throw std::domain_error("ratop_inverse: zero matrix");
  long dn = std::max<long>(num.degree(), 0);
  long detdeg = static_cast<long>(n) * dn;
  std::vector<GaussianRational> xs;
  std::vector<ExactMatrix> adj_vals;
  std::vector<GaussianRational> det_vals;
  long zero_count = 0;
  for (long s = 0; static_cast<long>(xs.size()) <= detdeg; ++s) {
    GaussianRational u0(s);
    ExactMatrix nv = num.eval(u0);
    GaussianRational det;
    try {
      ExactMatrix inv = exact_inverse(nv, &det);
      xs.push_back(u0);
      det_vals.push_back(det);
      adj_vals.push_back(inv * det);
    } catch (const std::domain_error&) {
      if (++zero_count > detdeg) {
        // identically singular: name the smallest vanishing leading minor
        for (Eigen::Index k = 1; k <= n; ++k) {
          bool all_zero = true;
          for (long t = 0; t <= detdeg && all_zero; ++t)
            if (!exact_det(num.eval(GaussianRational(t + 1000)).block(0, 0, k, k).eval()).is_zero())
              all_zero = false;
          if (all_zero)
            throw std::domain_error("ratop_inverse: leading " + std::to_string(k) + "x" +
                                    std::to_string(k) + " minor vanishes identically");
        }
        throw std::domain_error("ratop_inverse: determinant vanishes identically");
      }
    }
  }
  Poly detpoly = poly_interpolate(xs, det_vals);
  MatPoly adjpoly = poly_interpolate(xs, adj_vals);
  RatOpMatrix r;
  r.m = m;
  r.d = d;
  r.num = matpoly_scale(adjpoly, den);
  r.den = detpoly;
  r.reduce();
  return r;
}

// Kronecker product, exact.
inline ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b) {
  ExactMatrix r = exact_zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = b * a(i, j);
    }
  return r;
}

}  // namespace bethe
