#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cobord/chern_dold.hpp"
#include "test_util.hpp"

using namespace cobord;

namespace {

CoeffPoly b(unsigned i) { return CoeffPoly::generator(i); }

const FormalGroupLaw& fgl10() {
  static FormalGroupLaw F = make_fgl(10);
  return F;
}

}  // namespace

TEST_CASE("Chern-Dold character on projective spaces") {
  const auto& F = fgl10();
  SpaceModel cp1 = projective_product({1});
  SpaceModel cp2 = projective_product({2});
  GradedSeries u = var_series("u"), z = var_series("z");

  ChernDold cd1 = make_chern_dold(F, cp1);
  CHECK(cd1.apply(u) == z);

  ChernDold cd2 = make_chern_dold(F, cp2);
  CHECK(cd2.apply(u) == z - (z * z).scaled(b(1) * Rational(1, 2)));
}

TEST_CASE("Chern-Dold character is a ring homomorphism") {
  const auto& F = fgl10();
  SpaceModel cp2x1 = projective_product({2, 1});
  ChernDold cd = make_chern_dold(F, cp2x1);
  test::Rng rng(3);
  std::vector<VarId> gens = cp2x1.gens;
  for (int trial = 0; trial < 8; ++trial) {
    GradedSeries x = cp2x1.reduce(test::random_series(rng, gens, GradedSeries::kExact));
    GradedSeries y = cp2x1.reduce(test::random_series(rng, gens, GradedSeries::kExact));
    CHECK(cd.apply(cp2x1.reduce(x * y)) == cd.coh.reduce(cd.apply(x) * cd.apply(y)));
    CHECK(cd.apply(x + y) == cd.apply(x) + cd.apply(y));
  }
}

TEST_CASE("ch of a line class is g^{-1} of the ordinary class on every model") {
  const auto& F = fgl10();
  for (auto dims : std::vector<std::vector<int>>{{1}, {2}, {3}, {1, 2}}) {
    SpaceModel X = projective_product(dims);
    ChernDold cd = make_chern_dold(F, X);
    for (std::size_t i = 0; i < X.gens.size(); ++i) {
      GradedSeries u = GradedSeries::variable(X.gens[i]);
      GradedSeries expect =
          cd.coh.reduce(F.exp_of(GradedSeries::variable(cd.coh.gens[i], F.order)));
      CHECK(cd.apply(u) == expect);
    }
  }
}

TEST_CASE("Todd series") {
  const auto& F = fgl10();
  GradedSeries T = todd_series(F, 6);
  // defining property: T(x) * (g^{-1}(x)/x) = 1
  GradedSeries U = GradedSeries::zero(6).aligned_with({fgl_x()});
  for (const auto& [m, c] : F.exp.terms())
    if (m[0] >= 1 && static_cast<int>(m[0]) - 1 <= 6) U.add_term(Mono{m[0] - 1}, c);
  CHECK((T * U.with_order(6)).truncated(6) ==
        GradedSeries::constant(CoeffPoly(1), 6));
  CHECK(T.coefficient({}) == CoeffPoly(1));
  CHECK(T.coefficient({{fgl_x(), 1}}) == b(1) * Rational(1, 2));
  // trivial line: substituting 0 gives 1
  CHECK(todd_of(F, GradedSeries::zero(), 6) ==
        GradedSeries::constant(CoeffPoly(1)));
}

TEST_CASE("Todd class on tangent bundles of projective spaces") {
  const auto& F = fgl10();
  GradedSeries z = var_series("z");
  // tangent of CP^1 is O(2), its stabilization O(1)^2: the two Todd classes
  // agree exactly where z^2 = 0, and differ beyond
  SpaceModel cp1 = projective_product({1});
  ChernDold cd1 = make_chern_dold(F, cp1);
  GradedSeries tangent = cd1.coh.reduce(todd_of(F, z.scaled(CoeffPoly(2)), 3));
  GradedSeries stab = cd1.coh.reduce(todd_class(F, {z, z}, 3));
  CHECK(tangent == stab);
  CHECK(todd_of(F, z.scaled(CoeffPoly(2)), 3) != todd_class(F, {z, z}, 3));
  // quotient-root fiber Todd class vs the Euler-sequence product
  VarId zf = var_id("$zf");
  SpaceModel fib;
  fib.gens = {zf};
  fib.dims = {2};
  GradedSeries zfs = GradedSeries::variable(zf);
  CHECK(fiber_todd_class(F, zf, 2) ==
        fib.reduce(todd_class(F, {zfs, zfs, zfs}, 3)));
  GradedSeries tl = cd1.coh.reduce(todd_of(F, z, 2));
  CHECK(tl.coefficient({{var_id("z"), 1}}) == b(1) * Rational(1, 2));
}

TEST_CASE("Riemann-Roch for trivial-fiber powers") {
  const auto& F = fgl10();
  SpaceModel pt;  // point base
  for (int k = 0; k <= 3; ++k) {
    GradedSeries tk = GradedSeries::constant(CoeffPoly(1));
    for (int i = 0; i < k; ++i) tk = tk * GradedSeries::variable(fiber_var());
    auto rep = rr_check_element(F, pt, tk, k);
    CHECK(rep.ok);
    CHECK(rep.lhs == GradedSeries::constant(CoeffPoly(1)));
  }
}

TEST_CASE("Riemann-Roch on random fiber polynomials") {
  const auto& F = fgl10();
  test::Rng rng(17);
  SpaceModel cp1 = projective_product({1});
  for (int k = 1; k <= 3; ++k) {
    for (int trial = 0; trial < 4; ++trial) {
      GradedSeries x = test::random_series(rng, {fiber_var(), var_id("u")},
                                           GradedSeries::kExact, 8);
      auto rep = rr_check_element(F, cp1, x, k);
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("Riemann-Roch for Q-class integrands on CP^1 and CP^2") {
  const auto& F = fgl10();
  SpaceModel cp1 = projective_product({1});
  SpaceModel cp2 = projective_product({2});
  for (const SpaceModel* X : {&cp1, &cp2}) {
    BundleSpec o1 = line_bundle(F, *X, 0, 1);
    BundleSpec xi = direct_sum(o1, line_bundle(F, *X, 0, -1));
    for (int r = -1; r <= 1; ++r) CHECK(rr_check(F, *X, o1, r).ok);
    for (int r = -1; r <= 2; ++r) CHECK(rr_check(F, *X, xi, r).ok);
  }
  // the Ex-5.3-style value: both routes give ch of 1 + (b1^2 - b2) u^2
  BundleSpec o1 = line_bundle(F, cp2, 0, 1);
  auto rep = rr_check(F, cp2, o1, 0);
  REQUIRE(rep.ok);
  GradedSeries z = var_series("z");
  CHECK(rep.lhs == GradedSeries::constant(CoeffPoly(1)) +
                       (z * z).scaled(b(1) * b(1) - b(2)));
}

TEST_CASE("N-series identity on formal roots") {
  const auto& F = fgl10();
  for (int k = 1; k <= 3; ++k) {
    auto rep = n_series_check(F, k, 5);
    CHECK(rep.ok);
    CHECK(rep.n_values[0] == CoeffPoly(1));
    CHECK(rep.n_values[1] == b(1) * Rational(-1, 2));
  }
}

TEST_CASE("N-series identity on O(1)+O(1) over CP^2") {
  const auto& F = fgl10();
  SpaceModel cp2 = projective_product({2});
  BundleSpec o1 = line_bundle(F, cp2, 0, 1);
  BundleSpec xi = direct_sum(o1, o1);
  ChernDold cd = make_chern_dold(F, cp2);
  GradedSeries chD = cd.apply(d1_class(F, xi, &cp2, 4));
  // sum [N^{2i}] c_1^{i+1} with the ordinary c_1 = 2z
  GradedSeries c1 = var_series("z").scaled(CoeffPoly(2));
  GradedSeries rhs = GradedSeries::zero();
  GradedSeries pw = GradedSeries::constant(CoeffPoly(1));
  for (int i = 0; i <= 2; ++i) {
    CoeffPoly n2i = F.exp.coefficient({{fgl_x(), static_cast<unsigned>(i + 1)}});
    pw = cd.coh.reduce(pw * c1);
    rhs += pw.scaled(n2i);
  }
  CHECK(chD == cd.coh.reduce(rhs));
  GradedSeries z = var_series("z");
  CHECK(chD == z.scaled(CoeffPoly(2)) - (z * z).scaled(b(1) * Rational(2)));
}

TEST_CASE("genus evaluation") {
  Genus todd = todd_genus(6);
  CHECK(apply_genus(b(1) * b(1) - b(2), todd) == CoeffPoly());
  for (unsigned i = 1; i <= 4; ++i) CHECK(apply_genus(b(i), todd) == CoeffPoly(1));

  Genus triv = trivial_genus(6);
  test::Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    CoeffPoly p = test::random_coeff_poly(rng);
    CHECK(apply_genus(p, triv) == CoeffPoly(p.augment()));
  }

  Genus sym = symbolic_genus(6);
  CHECK(apply_genus(b(1), sym) == CoeffPoly::generator(1) * Rational(2));

  // ring homomorphism
  for (int trial = 0; trial < 10; ++trial) {
    CoeffPoly p = test::random_coeff_poly(rng);
    CoeffPoly q = test::random_coeff_poly(rng);
    CHECK(apply_genus(p * q, sym) == apply_genus(p, sym) * apply_genus(q, sym));
    CHECK(apply_genus(p + q, todd) == apply_genus(p, todd) + apply_genus(q, todd));
  }
}

TEST_CASE("chi_y genus specializations") {
  Genus t = chi_y_genus(Rational(0), 5);
  Genus todd = todd_genus(5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(t.lambda[i] == todd.lambda[i]);
  // y = -1: Euler characteristic, phi([CP^i]) = i + 1
  Genus e = chi_y_genus(Rational(-1), 5);
  for (unsigned i = 1; i <= 5; ++i)
    CHECK(apply_genus(b(i), e) == CoeffPoly(Rational(static_cast<long>(i) + 1)));
  // y = 1: signature, phi([CP^i]) alternates 1, 0
  Genus s = chi_y_genus(Rational(1), 5);
  CHECK(apply_genus(b(2), s) == CoeffPoly(1));
  CHECK(apply_genus(b(1), s) == CoeffPoly());
}

TEST_CASE("elliptic genus family") {
  Genus ell = elliptic_genus_family();
  REQUIRE(ell.lambda.size() == 4);
  // triangular in the parameters: lambda_i involves k_i linearly
  for (unsigned i = 1; i <= 4; ++i) {
    BExps e(i, 0);
    e[i - 1] = 1;
    bool found = false;
    for (const auto& [exps, c] : ell.lambda[i - 1].terms())
      if (exps == e) found = true;
    CHECK(found);
  }
  // the Todd point of the family: (a, p, q, g2) = (-1/2, 1/12, 0, 1/12)
  std::vector<Rational> pt{Rational(-1, 2), Rational(1, 12), Rational(0),
                           Rational(1, 12)};
  Genus todd = todd_genus(4);
  for (unsigned i = 1; i <= 4; ++i) {
    CoeffPoly v = ell.lambda[i - 1].map_generators(
        [&pt](unsigned g) { return CoeffPoly(pt[g - 1]); });
    CHECK(v == todd.lambda[i - 1]);
  }
}
