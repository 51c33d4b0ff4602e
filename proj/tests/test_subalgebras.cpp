#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bethe/subalgebras.hpp"

using namespace bethe;

namespace {
GaussianRational Q(long p, long q = 1) { return GaussianRational(mpq_class(p, q)); }

bool all_commute(const OperatorSpan& span) {
  const auto& b = span.basis();
  for (size_t i = 0; i < b.size(); ++i)
    for (size_t j = i + 1; j < b.size(); ++j)
      if (!is_zero_matrix(b[i] * b[j] - b[j] * b[i])) return false;
  return true;
}
}  // namespace

TEST_CASE("bethe_image basics") {
  auto img = bethe_image(trivial_module(2), DiagonalParam({Q(1), Q(2)}), 4);
  CHECK(img.span.dim() == 1);
  CHECK(img.span.contains(exact_identity(1)));

  auto rep = build_irrep({1, 0});
  auto m = evaluation_module(rep, Q(0));
  auto img2 = bethe_image(m, DiagonalParam({Q(1), Q(2)}), 4);
  CHECK(img2.span.dim() == 2);
  ExactMatrix d = rep.E(1, 1) + rep.E(2, 2) * Q(2);
  CHECK(img2.span.contains(d));
  CHECK(!img2.span.contains(rep.E(1, 2)));
  CHECK(all_commute(img2.span));

  CHECK_THROWS(bethe_image(m, DiagonalParam({Q(0), Q(2)}), 4));
}

TEST_CASE("bethe_image scaling invariance on a tensor product") {
  auto rep = build_irrep({1, 0});
  auto m = tensor_module({evaluation_module(rep, Q(0)), evaluation_module(rep, Q(1, 3))});
  DiagonalParam C({Q(1), Q(2)});
  auto a = bethe_image(m, C, 5);
  auto b = bethe_image(m, C.scaled(Q(3)), 5);
  CHECK(span_equal(a.span, b.span));
  CHECK(all_commute(a.span));
}

TEST_CASE("soa_image examples") {
  // m = 1: generators {P1} with E11 acting as the weight scalar
  auto rep1 = build_irrep({3});
  auto s1 = soa_image(rep1, DiagonalParam({Q(5)}, false));
  CHECK(s1.span.dim() == 1);

  // m = 2, chi = diag(1,2), defining rep: all diagonal 2x2 matrices
  auto rep = build_irrep({1, 0});
  auto s = soa_image(rep, DiagonalParam({Q(1), Q(2)}));
  CHECK(s.span.dim() == 2);
  CHECK(s.span.contains(rep.E(1, 1)));
  CHECK(s.span.contains(rep.E(2, 2)));
  CHECK(!s.span.contains(rep.E(1, 2)));

  // c = 0 terms are images of Casimirs: they commute with every rho(E_ij)
  auto rep2 = build_irrep({2, 0});
  auto getE = [&rep2](int a, int b) { return rep2.E(a, b); };
  DiagonalParam chi({Q(1), Q(2)});
  for (auto& g : soa_generators(2, chi, getE, rep2.dim)) {
    if (g.label.find("^(0)") == std::string::npos) continue;
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        CHECK(is_zero_matrix(g.op * rep2.E(i, j) - rep2.E(i, j) * g.op));
  }
  CHECK(all_commute(soa_image(rep2, chi).span));
}

TEST_CASE("gt_image examples") {
  CHECK(gt_image(trivial_module(3), 4).span.dim() == 1);

  auto rep = build_irrep({1, 0});
  auto g = gt_image(evaluation_module(rep, Q(0)), 4);
  CHECK(g.span.dim() == 2);
  CHECK(g.span.contains(rep.E(1, 1)));
  CHECK(g.span.contains(rep.E(2, 2)));
  CHECK(!g.span.contains(rep.E(1, 2) + rep.E(2, 1)));

  // gt acts diagonally in the GT basis of any gl_2 evaluation module: the
  // irrep matrices are written in that basis, so the images must be diagonal
  auto rep2 = build_irrep({3, 1});
  auto g2 = gt_image(evaluation_module(rep2, Q(1, 3)), 5);
  for (const auto& op : g2.span.basis())
    for (Eigen::Index r = 0; r < op.rows(); ++r)
      for (Eigen::Index c = 0; c < op.cols(); ++c)
        if (r != c) CHECK(op(r, c).is_zero());
}

TEST_CASE("limit_family substitution and guards") {
  auto second = LimitRecipe::second_type({{Q(1), 2}}, {DiagonalParam({Q(0), Q(1)})});
  auto Ct = limit_family(second, Q(1, 10));
  REQUIRE(Ct.size() == 2);
  CHECK(Ct.entries[0] == Q(1));
  CHECK(Ct.entries[1] == Q(11, 10));

  auto first = LimitRecipe::first_type(DiagonalParam({Q(1)}), DiagonalParam({Q(1)}));
  auto Cf = limit_family(first, Q(1, 10));
  CHECK(Cf.entries[0] == Q(1));
  CHECK(Cf.entries[1] == Q(1, 10));
  CHECK_THROWS(limit_family(first, Q(1)));  // entries collide at t = 1

  auto cat = limit_family(LimitRecipe::caterpillar(3), Q(1, 10));
  CHECK(cat.entries[2] == Q(1, 10000));
  CHECK_THROWS(limit_family(LimitRecipe::caterpillar(2), Q(0)));

  CHECK_THROWS(LimitRecipe::second_type({{Q(1), 1}, {Q(1), 1}},
                                        {DiagonalParam({Q(0)}, false), DiagonalParam({Q(0)}, false)}));
}

TEST_CASE("predicted_limit_span: caterpillar and trivial") {
  auto rep = build_irrep({1, 0});
  auto m = tensor_module({evaluation_module(rep, Q(0)), evaluation_module(rep, Q(1, 3))});
  auto pred = predicted_limit_span(LimitRecipe::caterpillar(2), m, 5);
  CHECK(span_equal(pred.span, gt_image(m, 5).span));

  auto t = trivial_module(2);
  CHECK(predicted_limit_span(LimitRecipe::caterpillar(2), t, 4).span.dim() == 1);
  CHECK_THROWS(predicted_limit_span(LimitRecipe::generic(DiagonalParam({Q(1), Q(2)})), m, 4));
}

TEST_CASE("predicted_limit_span: second-type full merge equals soa span") {
  // one block: C(t) = 1 + t*diag(chi); on an evaluation module the limit is
  // the shift-of-argument image of the chi direction
  auto rep = build_irrep({2, 0});
  auto m = evaluation_module(rep, Q(0));
  DiagonalParam chi({Q(1), Q(2)});
  auto recipe = LimitRecipe::second_type({{Q(1), 2}}, {chi});
  auto pred = predicted_limit_span(recipe, m, 5);
  auto soa = soa_image(rep, chi);
  CHECK(pred.span.contains_span(soa.span));
  CHECK(span_equal(pred.span, soa.span));
  CHECK(all_commute(pred.span));
}

TEST_CASE("predicted_limit_span: first-type is commutative and holds the sub-tau part") {
  auto rep = build_irrep({1, 0});
  auto m = tensor_module({evaluation_module(rep, Q(0)), evaluation_module(rep, Q(1, 3))});
  auto recipe = LimitRecipe::first_type(DiagonalParam({Q(1)}), DiagonalParam({Q(1)}));
  auto pred = predicted_limit_span(recipe, m, 5);
  CHECK(all_commute(pred.span));
  // contains all coefficients of t_11(u)
  auto t11 = m.T.block(0, 0).series_coeffs(5);
  for (long r = 1; r <= 5; ++r) CHECK(pred.span.contains(t11[r]));
}

TEST_CASE("evaluation identity holds under the recorded conventions") {
  auto rep = build_irrep({1, 0});
  DiagonalParam C({Q(1), Q(2)});
  auto b = bethe_image(evaluation_module(rep, Q(0)), C, 5);
  auto s = soa_image(rep, C.inverse());
  CHECK(span_equal(b.span, s.span));

  auto rep2 = build_irrep({2, 0});
  DiagonalParam C2({Q(1), Q(3)});
  auto b2 = bethe_image(evaluation_module(rep2, Q(1, 2)), C2, 6);
  auto s2 = soa_image(rep2, C2.inverse());
  CHECK(span_equal(b2.span, s2.span));
}

TEST_CASE("sigma1_transform") {
  auto g = sigma1_transform(LimitRecipe::generic(DiagonalParam({Q(1), Q(2)})));
  CHECK(g.kind == LimitRecipe::Kind::Generic);
  CHECK(g.C.entries[1] == Q(1, 2));
  // involutive on generic recipes
  CHECK(sigma1_transform(g).C.entries[1] == Q(2));

  CHECK_THROWS(sigma1_transform(LimitRecipe::generic(DiagonalParam({Q(2), Q(2)}, false))));

  auto f = sigma1_transform(
      LimitRecipe::first_type(DiagonalParam({Q(2)}), DiagonalParam({Q(1), Q(3)})));
  CHECK(f.kind == LimitRecipe::Kind::SecondType);
  REQUIRE(f.blocks.size() == 2);
  CHECK(f.blocks[0].first == Q(1, 2));
  CHECK(f.blocks[1].first == Q(0));
  CHECK(f.blocks[1].second == 2);
  CHECK(f.block_params[1].entries[1] == Q(1, 3));

  CHECK(sigma1_transform(LimitRecipe::caterpillar(3)).kind == LimitRecipe::Kind::CaterpillarDual);
  CHECK_THROWS(sigma1_transform(f));  // no second transform supported
}
