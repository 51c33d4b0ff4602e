#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bethe/linalg.hpp"
#include "bethe/ratop.hpp"

using namespace bethe;

namespace {

GaussianRational I() { return GaussianRational::imaginary_unit(); }

ExactMatrix mat2(std::initializer_list<GaussianRational> vals) {
  ExactMatrix m(2, 2);
  auto it = vals.begin();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = *it++;
  return m;
}

ExactMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ExactMatrix m = exact_zero(n, n);
  m(i, j) = GaussianRational(1);
  return m;
}

}  // namespace

TEST_CASE("scalar arithmetic and parsing") {
  GaussianRational a = GaussianRational::rational(1, 2);
  GaussianRational b(mpq_class(1, 3), mpq_class(-2, 5));
  CHECK(a + b == GaussianRational(mpq_class(5, 6), mpq_class(-2, 5)));
  CHECK(a * a == GaussianRational::rational(1, 4));
  CHECK(I() * I() == GaussianRational(-1));
  CHECK((b / b) == GaussianRational(1));
  CHECK(b.conj().im == mpq_class(2, 5));

  CHECK(GaussianRational::parse("3/4") == GaussianRational::rational(3, 4));
  CHECK(GaussianRational::parse("-1/2+2/3 i") == GaussianRational(mpq_class(-1, 2), mpq_class(2, 3)));
  CHECK(GaussianRational::parse("i") == I());
  CHECK(GaussianRational::parse("-i") == -I());
  CHECK(GaussianRational::parse("2/5 i") == GaussianRational(mpq_class(0), mpq_class(2, 5)));
  CHECK(GaussianRational::parse(GaussianRational(mpq_class(7, 3), mpq_class(-1, 9)).str()) ==
        GaussianRational(mpq_class(7, 3), mpq_class(-1, 9)));

  GaussianRational c = unit_circle_point(mpq_class(1, 2));
  CHECK(c.norm2() == 1);
  CHECK(c == GaussianRational(mpq_class(3, 5), mpq_class(4, 5)));
}

TEST_CASE("polynomial arithmetic") {
  Poly p = poly_from({1, 2, 1});  // (u+1)^2
  Poly q = poly_from({1, 1});
  CHECK(poly_div_exact(p, q) == q);
  CHECK(poly_gcd(p, p.derivative()) == q);
  CHECK(p.shift_arg(GaussianRational(-1)) == poly_from({0, 0, 1}));
  CHECK(p.eval(GaussianRational(3)) == GaussianRational(16));
  Poly r = p.compose_affine(GaussianRational(-1), GaussianRational(-2));  // p(-u-2) = (u+1)^2
  CHECK(r == p);

  std::vector<GaussianRational> xs{GaussianRational(0), GaussianRational(1), GaussianRational(2)};
  std::vector<GaussianRational> ys;
  for (auto& x : xs) ys.push_back(p.eval(x));
  CHECK(poly_interpolate(xs, ys) == p);
}

TEST_CASE("rank examples") {
  CHECK(rank(exact_identity(2)) == 2);
  CHECK(rank(exact_zero(2, 2)) == 0);
  // second row = i * first row
  ExactMatrix m = mat2({GaussianRational(1), I(), I(), GaussianRational(-1)});
  CHECK(rank(m) == 1);
}

TEST_CASE("rank(AB) <= min(rank A, rank B) randomized") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ExactMatrix a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = random_scalar(rng, 9);
        b(i, j) = random_scalar(rng, 9);
      }
    a.row(2) = a.row(0) + a.row(1);  // force rank deficiency sometimes
    CHECK(rank(ExactMatrix(a * b)) <= std::min(rank(a), rank(b)));
  }
}

TEST_CASE("krylov_span examples") {
  ExactVector e1 = ExactVector::Constant(3, GaussianRational(0));
  e1(0) = GaussianRational(1);
  auto r1 = krylov_span({exact_identity(3)}, e1, 10);
  CHECK(r1.stabilized);
  CHECK(r1.dim == 1);

  ExactMatrix cyc = exact_zero(3, 3);  // 3-cycle permutation
  cyc(1, 0) = cyc(2, 1) = cyc(0, 2) = GaussianRational(1);
  auto r2 = krylov_span({cyc}, e1, 10);
  CHECK(r2.stabilized);
  CHECK(r2.dim == 3);

  ExactMatrix d = exact_zero(2, 2);
  d(0, 0) = GaussianRational(1);
  d(1, 1) = GaussianRational(2);
  ExactVector v = ExactVector::Constant(2, GaussianRational(1));
  CHECK(krylov_span({d}, v, 5).dim == 2);
}

TEST_CASE("krylov_span generator order irrelevant") {
  std::mt19937_64 rng(11);
  ExactMatrix a(3, 3), b(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a(i, j) = random_scalar(rng, 5);
      b(i, j) = random_scalar(rng, 5);
    }
  ExactVector v(3);
  for (int i = 0; i < 3; ++i) v(i) = random_scalar(rng, 5);
  auto r1 = krylov_span({a, b}, v, 9);
  auto r2 = krylov_span({b, a}, v, 9);
  CHECK(r1.dim == r2.dim);
  RowEchelon e(3);
  for (auto& w : r1.basis) e.insert(w);
  for (auto& w : r2.basis) CHECK(e.contains(w));
}

TEST_CASE("squarefree charpoly certificate") {
  ExactMatrix d3 = exact_zero(3, 3);
  d3(0, 0) = GaussianRational(1);
  d3(1, 1) = GaussianRational(2);
  d3(2, 2) = GaussianRational(3);
  CHECK(squarefree_charpoly_certificate(d3));
  CHECK_FALSE(squarefree_charpoly_certificate(exact_identity(2)));
  ExactMatrix nil = exact_zero(2, 2);
  nil(0, 1) = GaussianRational(1);
  CHECK_FALSE(squarefree_charpoly_certificate(nil));  // charpoly u^2

  for (int n = 2; n <= 8; ++n) {
    ExactMatrix rep = exact_zero(n, n);
    for (int i = 0; i < n; ++i) rep(i, i) = GaussianRational(i == 0 ? 1 : i);  // repeated entry 1
    CHECK_FALSE(squarefree_charpoly_certificate(rep));
  }
}

TEST_CASE("charpoly against companion matrix") {
  // companion of u^3 - 2u + 5
  ExactMatrix c = exact_zero(3, 3);
  c(1, 0) = c(2, 1) = GaussianRational(1);
  c(0, 2) = GaussianRational(-5);
  c(1, 2) = GaussianRational(2);
  CHECK(charpoly(c) == poly_from({5, -2, 0, 1}));
}

TEST_CASE("span_equal examples") {
  OperatorSpan a(2), b(2);
  a.add(exact_identity(2), "I");
  b.add(ExactMatrix(exact_identity(2) * GaussianRational(2)), "2I");
  CHECK(span_equal(a, b));

  OperatorSpan c(2), d(2);
  c.add(unit(2, 0, 0));
  d.add(unit(2, 0, 0));
  d.add(unit(2, 1, 1));
  CHECK_FALSE(span_equal(c, d));

  OperatorSpan e(2);
  e.add(ExactMatrix(unit(2, 0, 0) + unit(2, 1, 1)));
  e.add(ExactMatrix(unit(2, 0, 0) - unit(2, 1, 1)));
  CHECK(span_equal(e, d));
}

TEST_CASE("principal_angles examples") {
  OperatorSpan a(2), b(2), c(2);
  a.add(unit(2, 0, 0), "E11");
  b.add(unit(2, 0, 0), "E11");
  c.add(unit(2, 1, 1), "E22");
  auto z = principal_angles(a, b);
  REQUIRE(z.size() == 1);
  CHECK(z[0] < 1e-12);
  auto r = principal_angles(a, c);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(std::acos(0.0)));

  OperatorSpan tilted(2);
  ExactMatrix t = unit(2, 0, 0);
  t(0, 1) = GaussianRational::rational(1, 1000);
  tilted.add(t, "E11+tE12");
  auto ang = principal_angles(tilted, a);
  REQUIRE(ang.size() == 1);
  CHECK(ang[0] == doctest::Approx(1e-3).epsilon(0.1));

  OperatorSpan dep(2);
  dep.add(unit(2, 0, 0), "x");
  dep.add(t, "y");
  // y - x is dependent with x only jointly; both independent, fine
  CHECK_NOTHROW(principal_angles(dep, dep));
}

TEST_CASE("principal_angles rejects dependent numeric basis") {
  // exact independence but numeric collapse cannot happen for rational data;
  // force a dependent pair through a raw span with two parallel elements
  OperatorSpan s(2);
  s.add(unit(2, 0, 0), "a");
  ExactMatrix nearly = unit(2, 0, 0);
  s.add(ExactMatrix(nearly * GaussianRational(2)), "b");  // rejected by add
  CHECK(s.dim() == 1);
}

TEST_CASE("ratop identity and scalar module examples") {
  RatOpMatrix id = RatOpMatrix::identity(2, 1);
  CHECK(ratop_mul(id, id, 0).equal(id));

  // 1-dim module with E = c: (1 + c/u)^2 = (u+c)^2/u^2
  GaussianRational c(3);
  RatOpMatrix t;
  t.m = 1;
  t.d = 1;
  t.den = poly_from({0, 1});
  ExactMatrix c0(1, 1), c1(1, 1);
  c0(0, 0) = c;
  c1(0, 0) = GaussianRational(1);
  t.num = MatPoly(std::vector<ExactMatrix>{c0, c1});
  RatOpMatrix sq = ratop_mul(t, t, 0);
  CHECK(sq.den == poly_from({0, 0, 1}));
  CHECK(sq.entry_poly(0, 0) == poly_from({9, 6, 1}));
}

TEST_CASE("ratop shifted product matches series convolution") {
  // a(u) = 1 + A/u, b(u) = 1 + B/u with 2x2 exact random A, B
  std::mt19937_64 rng(23);
  auto mk = [&](void) {
    RatOpMatrix r;
    r.m = 1;
    r.d = 2;
    r.den = poly_from({0, 1});
    ExactMatrix a(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = random_scalar(rng, 5);
    r.num = MatPoly(std::vector<ExactMatrix>{a, exact_identity(2)});
    return r;
  };
  RatOpMatrix a = mk(), b = mk();
  for (long shift : {0L, -1L, 2L}) {
    RatOpMatrix prod = ratop_mul(a, b, shift);
    auto sa = a.series_coeffs(6);
    auto sb = b.shifted(GaussianRational(shift)).series_coeffs(6);
    auto sp = prod.series_coeffs(6);
    for (long r = 0; r <= 6; ++r) {
      ExactMatrix conv = exact_zero(2, 2);
      for (long k = 0; k <= r; ++k) conv += sa[k] * sb[r - k];
      CHECK(is_zero_matrix(ExactMatrix(conv - sp[r])));
    }
  }
}

TEST_CASE("ratop_inverse examples") {
  RatOpMatrix id = RatOpMatrix::identity(2, 2);
  CHECK(ratop_inverse(id).equal(id));

  // 1 + E/v on C^2 with the defining action (E big matrix in 2-slot form):
  // numerator blocks delta_ij*v*I + e_ij
  RatOpMatrix t;
  t.m = 2;
  t.d = 2;
  t.den = poly_from({0, 1});
  ExactMatrix e0 = exact_zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e0.block(i * 2, j * 2, 2, 2) = unit(2, i, j);
  t.num = MatPoly(std::vector<ExactMatrix>{e0, exact_identity(4)});
  RatOpMatrix inv = ratop_inverse(t);
  CHECK(ratop_mul(t, inv, 0).equal(RatOpMatrix::identity(2, 2)));
  CHECK(ratop_mul(inv, t, 0).equal(RatOpMatrix::identity(2, 2)));
  // the big matrix E satisfies E^2 = 2E here, so (1+E/v)^{-1} = 1 - E/(v+2)
  CHECK(inv.den == poly_from({2, 1}));

  // diagonal example diag((u+1)/u, (u+2)/u)
  RatOpMatrix dg;
  dg.m = 2;
  dg.d = 1;
  dg.den = poly_from({0, 1});
  ExactMatrix d0 = exact_zero(2, 2), d1 = exact_identity(2);
  d0(0, 0) = GaussianRational(1);
  d0(1, 1) = GaussianRational(2);
  dg.num = MatPoly(std::vector<ExactMatrix>{d0, d1});
  RatOpMatrix dinv = ratop_inverse(dg);
  CHECK(ratop_mul(dg, dinv, 0).equal(RatOpMatrix::identity(2, 1)));
  // entries: u/(u+1) and u/(u+2) over common den (u+1)(u+2)
  CHECK(dinv.den == poly_from({2, 3, 1}));
  CHECK(dinv.entry_poly(0, 0) == poly_from({0, 2, 1}));
  CHECK(dinv.entry_poly(1, 1) == poly_from({0, 1, 1}));
}

TEST_CASE("ratop_inverse reports vanishing minor") {
  RatOpMatrix z = RatOpMatrix::zero(1, 2);
  CHECK_THROWS_AS(ratop_inverse(z), std::domain_error);
  RatOpMatrix sing;
  sing.m = 2;
  sing.d = 1;
  sing.den = poly_from({1});
  ExactMatrix n0 = exact_zero(2, 2);
  n0(0, 1) = GaussianRational(1);  // strictly upper triangular, singular
  sing.num = MatPoly(std::vector<ExactMatrix>{n0});
  CHECK_THROWS_WITH_AS(ratop_inverse(sing),
                       doctest::Contains("minor vanishes identically"), std::domain_error);
}

TEST_CASE("nullspace and exact_solve") {
  ExactMatrix m(2, 3);
  m(0, 0) = GaussianRational(1);
  m(0, 1) = GaussianRational(2);
  m(0, 2) = GaussianRational(3);
  m(1, 0) = GaussianRational(2);
  m(1, 1) = GaussianRational(4);
  m(1, 2) = GaussianRational(6);
  auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (auto& v : ns) CHECK(coeff_is_zero(ExactVector(m * v)));

  ExactMatrix a = mat2({GaussianRational(1), GaussianRational(2), GaussianRational(3), GaussianRational(5)});
  ExactMatrix b = exact_identity(2);
  ExactMatrix x = exact_solve(a, b);
  CHECK(is_zero_matrix(ExactMatrix(a * x - b)));
  GaussianRational det;
  exact_inverse(a, &det);
  CHECK(det == GaussianRational(-1));
}
