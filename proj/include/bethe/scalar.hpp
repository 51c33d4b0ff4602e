#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace bethe {

// Gaussian rational a + b*i with arbitrary-precision rational parts.
// This is the exact scalar type carried through the whole library.
struct GaussianRational {
  mpq_class re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long v) : re(v), im(0) {}
  GaussianRational(int v) : re(v), im(0) {}
  GaussianRational(const mpq_class& r) : re(r), im(0) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  static GaussianRational rational(long num, long den) {
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(q);
  }
  static GaussianRational imaginary_unit() { return GaussianRational(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return GaussianRational(re, -im); }
  mpq_class norm2() const { return re * re + im * im; }

  GaussianRational operator-() const { return GaussianRational(-re, -im); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational inverse() const {
    mpq_class n = norm2();
    if (n == 0) throw std::domain_error("division by zero GaussianRational");
    return GaussianRational(re / n, -im / n);
  }
  GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  // Canonical text form, also used by the config parser: "p/q", "p/q+r/s i".
  std::string str() const {
    std::ostringstream os;
    if (im == 0) {
      os << re;
    } else if (re == 0) {
      os << im << " i";
    } else {
      os << re;
      if (im > 0) os << "+";
      os << im << " i";
    }
    return os.str();
  }

  static GaussianRational parse(const std::string& text);
};

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << x.str(); }

namespace detail {
inline mpq_class parse_rational_part(std::string s) {
  if (!s.empty() && s.front() == '+') s.erase(s.begin());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}
}  // namespace detail

// Accepts "p/q", "p/q+r/s i", "i", "-i", "r/s i" (spaces optional).
inline GaussianRational GaussianRational::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty scalar literal");

  bool has_i = s.back() == 'i' || s.back() == 'I';
  if (!has_i) return GaussianRational(detail::parse_rational_part(s));
  s.pop_back();
  if (s.empty() || s == "+") return imaginary_unit();
  if (s == "-") return -imaginary_unit();

  // Split at the sign that separates real and imaginary parts (skip a leading
  // sign and signs inside exponents never occur for rationals).
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      mpq_class repart = detail::parse_rational_part(s.substr(0, k));
      std::string imtext = s.substr(k);
      if (imtext == "+") imtext = "1";
      if (imtext == "-") imtext = "-1";
      return GaussianRational(repart, detail::parse_rational_part(imtext));
    }
  }
  return GaussianRational(mpq_class(0), detail::parse_rational_part(s));
}

// Unit-circle point ((1-t^2) + 2 i t)/(1+t^2); exact modulus 1 for rational t.
inline GaussianRational unit_circle_point(const mpq_class& t) {
  mpq_class den = 1 + t * t;
  return GaussianRational((1 - t * t) / den, 2 * t / den);
}

// Random scalar with numerators/denominators bounded by `height`.
inline GaussianRational random_scalar(std::mt19937_64& rng, long height = 97, bool complex_part = true) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, height);
  mpq_class re(num(rng), den(rng));
  re.canonicalize();
  mpq_class im(complex_part ? num(rng) : 0, den(rng));
  im.canonicalize();
  return GaussianRational(re, im);
}

}  // namespace bethe

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<bethe::GaussianRational> : GenericNumTraits<bethe::GaussianRational> {
  typedef bethe::GaussianRational Real;
  typedef bethe::GaussianRational NonInteger;
  typedef bethe::GaussianRational Nested;
  enum {
    IsComplex = 0,  // exact type; we never rely on Eigen's conjugation paths
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 120,
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
