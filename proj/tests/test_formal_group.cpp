#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/formal_group.hpp"
#include "test_util.hpp"

using namespace cobord;

namespace {
CoeffPoly b(unsigned i) { return CoeffPoly::generator(i); }
}  // namespace

TEST_CASE("logarithm series") {
  GradedSeries g1 = log_series(1);
  CHECK(g1 == GradedSeries::variable(fgl_x()));
  GradedSeries g3 = log_series(3);
  CHECK(g3.coefficient({{fgl_x(), 1}}) == CoeffPoly(1));
  CHECK(g3.coefficient({{fgl_x(), 2}}) == b(1) * Rational(1, 2));
  CHECK(g3.coefficient({{fgl_x(), 3}}) == b(2) * Rational(1, 3));
  GradedSeries g8 = log_series(8);
  for (unsigned i = 0; i + 1 <= 8; ++i)
    CHECK(g8.coefficient({{fgl_x(), i + 1}}) == b(i) * Rational(1, i + 1));
}

TEST_CASE("exponential is the compositional inverse of the logarithm") {
  const int N = 6;
  GradedSeries g = log_series(N), e = exp_series(N);
  GradedSeries x = GradedSeries::variable(fgl_x(), N);
  CHECK(g.substitute(fgl_x(), e) == x);
  CHECK(e.substitute(fgl_x(), g) == x);
  // low-order coefficients, certified by the identity above
  CHECK(e.coefficient({{fgl_x(), 2}}) == b(1) * Rational(-1, 2));
  CHECK(e.coefficient({{fgl_x(), 3}}) ==
        b(1) * b(1) * Rational(1, 2) - b(2) * Rational(1, 3));
}

TEST_CASE("formal group law coefficients") {
  FormalGroupLaw F = make_fgl(6);
  CHECK(F.a(1, 1) == -b(1));
  CHECK(F.a(1, 2) == b(1) * b(1) - b(2));
  CHECK(F.a(2, 1) == b(1) * b(1) - b(2));
  CHECK(F.a(1, 0) == CoeffPoly(1));
  CHECK(F.a(0, 1) == CoeffPoly(1));
  CHECK(F.a(2, 0) == CoeffPoly());
}

TEST_CASE("formal group law axioms to order 6") {
  FormalGroupLaw F = make_fgl(6);
  GradedSeries u = GradedSeries::variable(fgl_u(), 6);
  GradedSeries v = GradedSeries::variable(fgl_v(), 6);
  // unit: F(u, 0) = u
  CHECK(F.sum.substitute(fgl_v(), GradedSeries::zero()) == u);
  // commutativity
  CHECK(F.sum.swapped(fgl_u(), fgl_v()) == F.sum);
  // associativity F(F(u,v),w) = F(u,F(v,w))
  GradedSeries w = var_series("w").truncated(6);
  GradedSeries lhs = F.add(F.add(u, v), w);
  GradedSeries rhs = F.add(u, F.add(v, w));
  CHECK(lhs == rhs);
  // inverse: F(t, chi(t)) = 0
  GradedSeries x = GradedSeries::variable(fgl_x(), 6);
  CHECK(F.add(x, F.inverse).is_zero());
  // chi is an involution
  CHECK(F.neg(F.inverse) == x);
}

TEST_CASE("chi low-order values") {
  FormalGroupLaw F = make_fgl(6);
  CHECK(F.inverse.coefficient({{fgl_x(), 1}}) == CoeffPoly(-1));
  CHECK(F.inverse.coefficient({{fgl_x(), 2}}) == -b(1));
  CHECK(F.inverse.coefficient({{fgl_x(), 3}}) == -(b(1) * b(1)));
}

TEST_CASE("augmentation degenerates F to u + v") {
  FormalGroupLaw F = make_fgl(6);
  GradedSeries add = F.sum.augmented();
  GradedSeries u = GradedSeries::variable(fgl_u(), 6);
  GradedSeries v = GradedSeries::variable(fgl_v(), 6);
  CHECK(add == u + v);
}

TEST_CASE("homogeneity: every monomial of F has complex degree 1") {
  FormalGroupLaw F = make_fgl(7);
  CHECK(F.sum.complex_degree() == 1);
  CHECK(F.log.complex_degree() == 1);
  CHECK(F.exp.complex_degree() == 1);
  CHECK(F.inverse.complex_degree() == 1);
}

TEST_CASE("formal sums") {
  FormalGroupLaw F = make_fgl(6);
  GradedSeries x = GradedSeries::variable(fgl_x(), 6);
  CHECK(formal_sum(F, {x}) == x);
  CHECK(formal_sum(F, {}).is_zero());
  // F(u, u) = 2u - b1 u^2 + 2(b1^2 - b2) u^3 + O(4)
  GradedSeries u = var_series("u").truncated(6);
  GradedSeries duo = formal_sum(F, {u, u});
  VarId uid = var_id("u");
  CHECK(duo.coefficient({{uid, 1}}) == CoeffPoly(2));
  CHECK(duo.coefficient({{uid, 2}}) == -b(1));
  CHECK(duo.coefficient({{uid, 3}}) == (b(1) * b(1) - b(2)) * Rational(2));
  // inverse axiom
  CHECK(formal_sum(F, {x, F.inverse}).is_zero());
}

TEST_CASE("formal sum is independent of association order") {
  FormalGroupLaw F = make_fgl(5);
  GradedSeries a = var_series("t1").truncated(5);
  GradedSeries bb = var_series("t2").truncated(5);
  GradedSeries c = var_series("t3").truncated(5);
  GradedSeries left = F.add(F.add(a, bb), c);
  GradedSeries right = F.add(a, F.add(bb, c));
  CHECK(left == formal_sum(F, {a, bb, c}));
  CHECK(left == right);
  CHECK(formal_sum(F, {bb, c, a}) == left);
}

TEST_CASE("euler tensor") {
  FormalGroupLaw F = make_fgl(5);
  VarId x = var_id("x");
  CHECK(euler_tensor(F, x, {}, 5) == GradedSeries::constant(CoeffPoly(1)));
  // all roots zero: x^n
  GradedSeries xs = GradedSeries::variable(x, 5);
  GradedSeries zeros =
      euler_tensor(F, x, {GradedSeries::zero(), GradedSeries::zero(), GradedSeries::zero()}, 5);
  CHECK(zeros == xs * xs * xs);
  // the x^0 coefficient of F(x,t1)F(x,t2) is t1 t2 (the Euler class)
  GradedSeries t1 = var_series("t1"), t2 = var_series("t2");
  GradedSeries e = euler_tensor(F, x, {t1, t2}, 5);
  auto slices = e.collect(x);
  CHECK(slices.at(0) == (t1 * t2).truncated(5));
}

TEST_CASE("substitute v -> 0 in F recovers u") {
  FormalGroupLaw F = make_fgl(4);
  CHECK(F.sum.substitute(fgl_v(), GradedSeries::zero()) ==
        GradedSeries::variable(fgl_u(), 4));
}

TEST_CASE("unit factor of F(t1, chi(t2)) after exact division") {
  FormalGroupLaw F = make_fgl(6);
  VarId i1 = var_id("t1"), i2 = var_id("t2");
  GradedSeries f = F.sum.substitute(fgl_u(), GradedSeries::variable(i1, 6))
                       .substitute(fgl_v(), F.neg(GradedSeries::variable(i2, 6)));
  GradedSeries h = f.exact_divide_linear(i1, i2);
  // multiply back: the division is exact
  GradedSeries lin = var_series("t1") - var_series("t2");
  CHECK(equal_to_order(h * lin, f, 5));
  // unit series with constant term 1; low-order tail certified by the
  // multiply-back identity above
  CHECK(h.constant_term() == CoeffPoly(1));
  CHECK(h.coefficient({{i2, 1}}) == b(1));
  CHECK(h.coefficient({{i1, 1}}) == CoeffPoly());
  CHECK(h.coefficient({{i2, 2}}) == b(1) * b(1));
  CHECK(h.coefficient({{i1, 1}, {i2, 1}}) == -(b(1) * b(1) - b(2)));
}

TEST_CASE("series reversion agrees with substitute-and-check on a generic series") {
  test::Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    GradedSeries f = GradedSeries::variable(fgl_x(), 6);
    for (unsigned d = 2; d <= 6; ++d) {
      GradedSeries xpow = GradedSeries::constant(CoeffPoly(1), 6);
      for (unsigned i = 0; i < d; ++i) xpow = xpow * GradedSeries::variable(fgl_x(), 6);
      f = f + xpow.scaled(test::random_coeff_poly(rng, 2, 1, 2));
    }
    GradedSeries rev = series_reversion(f, fgl_x(), 6);
    CHECK(f.substitute(fgl_x(), rev) == GradedSeries::variable(fgl_x(), 6));
  }
}
