#pragma once

#include <stdexcept>
#include <vector>

#include "bethe/scalar.hpp"

namespace bethe {

inline bool coeff_is_zero(const GaussianRational& x) { return x.is_zero(); }

template <typename Derived>
bool coeff_is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

// Dense polynomial in one variable u, ascending coefficients. C is either a
// GaussianRational or an Eigen matrix of them; products preserve the order of
// the factors' coefficients, so matrix-coefficient polynomials multiply
// noncommutatively as expected.
template <typename C>
struct PolyT {
  std::vector<C> c;

  PolyT() = default;
  explicit PolyT(std::vector<C> coeffs) : c(std::move(coeffs)) { trim(); }
  static PolyT constant(const C& x) { return PolyT(std::vector<C>{x}); }

  void trim() {
    while (!c.empty() && coeff_is_zero(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }  // -1 for zero

  const C& operator[](size_t k) const { return c[k]; }

  PolyT operator+(const PolyT& o) const {
    PolyT r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t k = 0; k < r.c.size(); ++k) {
      if (k < c.size() && k < o.c.size())
        r.c[k] = c[k] + o.c[k];
      else if (k < c.size())
        r.c[k] = c[k];
      else
        r.c[k] = o.c[k];
    }
    r.trim();
    return r;
  }
  PolyT operator-() const {
    PolyT r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  PolyT operator-(const PolyT& o) const { return *this + (-o); }

  PolyT operator*(const PolyT& o) const {
    if (is_zero() || o.is_zero()) return PolyT();
    PolyT r;
    r.c.resize(c.size() + o.c.size() - 1, c.front() - c.front());  // zeros of right shape
    for (size_t a = 0; a < c.size(); ++a)
      for (size_t b = 0; b < o.c.size(); ++b) r.c[a + b] += c[a] * o.c[b];
    r.trim();
    return r;
  }

  PolyT scaled(const GaussianRational& s) const {
    PolyT r = *this;
    for (auto& x : r.c) x = x * s;
    r.trim();
    return r;
  }

  bool operator==(const PolyT& o) const { return (*this - o).is_zero(); }

  // p(u) -> p(s*u + t) for exact scalars s, t (Horner in the new variable).
  PolyT compose_affine(const GaussianRational& s, const GaussianRational& t) const {
    if (is_zero()) return PolyT();
    PolyT r = PolyT::constant(c.back());
    for (size_t k = c.size() - 1; k-- > 0;) {
      // r = r*(s*u+t) + c[k]
      PolyT shifted;
      shifted.c.resize(r.c.size() + 1, r.c.front() - r.c.front());
      for (size_t j = 0; j < r.c.size(); ++j) {
        shifted.c[j] += r.c[j] * t;
        shifted.c[j + 1] += r.c[j] * s;
      }
      shifted = shifted + PolyT::constant(c[k]);
      r = std::move(shifted);
    }
    r.trim();
    return r;
  }
  PolyT shift_arg(const GaussianRational& t) const { return compose_affine(GaussianRational(1), t); }

  C eval(const GaussianRational& u0) const {
    if (is_zero()) throw std::logic_error("eval of shapeless zero polynomial");
    C r = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) r = r * u0 + c[k];
    return r;
  }

  PolyT derivative() const {
    PolyT r;
    for (size_t k = 1; k < c.size(); ++k) r.c.push_back(c[k] * GaussianRational(static_cast<long>(k)));
    r.trim();
    return r;
  }
};

using Poly = PolyT<GaussianRational>;

inline Poly poly_from(std::initializer_list<long> asc) {
  std::vector<GaussianRational> v;
  for (long x : asc) v.emplace_back(x);
  return Poly(std::move(v));
}

// Division with remainder over the Gaussian-rational field.
inline void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  r = a;
  q = Poly();
  GaussianRational lead_inv = b.c.back().inverse();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    size_t shift = r.degree() - b.degree();
    GaussianRational f = r.c.back() * lead_inv;
    if (q.c.size() < shift + 1) q.c.resize(shift + 1, GaussianRational(0));
    q.c[shift] += f;
    for (size_t k = 0; k < b.c.size(); ++k) r.c[shift + k] -= f * b.c[k];
    r.trim();
  }
  q.trim();
}

inline Poly poly_div_exact(const Poly& a, const Poly& b) {
  Poly q, r;
  poly_divmod(a, b, q, r);
  if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
  return q;
}

inline Poly poly_monic(const Poly& p) {
  if (p.is_zero()) return p;
  return p.scaled(p.c.back().inverse());
}

inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    poly_divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

// Newton interpolation; works for scalar or matrix values (same shape).
template <typename C>
PolyT<C> poly_interpolate(const std::vector<GaussianRational>& xs, std::vector<C> ys) {
  size_t n = xs.size();
  if (n == 0 || ys.size() != n) throw std::invalid_argument("interpolation size mismatch");
  for (size_t j = 1; j < n; ++j)
    for (size_t k = n - 1; k >= j; --k)
      ys[k] = (ys[k] - ys[k - 1]) * (xs[k] - xs[k - j]).inverse();
  PolyT<C> p = PolyT<C>::constant(ys[n - 1]);
  for (size_t k = n - 1; k-- > 0;) {
    // p = p*(u - xs[k]) + ys[k]
    PolyT<C> shifted;
    shifted.c.resize(p.c.size() + 1, ys[k] - ys[k]);
    for (size_t j = 0; j < p.c.size(); ++j) {
      shifted.c[j] += p.c[j] * (-xs[k]);
      shifted.c[j + 1] += p.c[j];
    }
    p = shifted + PolyT<C>::constant(ys[k]);
  }
  p.trim();
  return p;
}

}  // namespace bethe
