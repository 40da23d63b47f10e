#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cobord/char_classes.hpp"
#include "cobord/chern_dold.hpp"

namespace cobord {

enum class CheckStatus { kPass, kWarn, kFail };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;  // expected vs computed on mismatch
};

struct Report {
  std::string suite;
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::kFail) return false;
    return true;
  }
  void pass(const std::string& name, const std::string& detail = "") {
    checks.push_back({name, CheckStatus::kPass, detail});
  }
  void warn(const std::string& name, const std::string& detail) {
    checks.push_back({name, CheckStatus::kWarn, detail});
  }
  void add(const std::string& name, bool good, const std::string& detail) {
    checks.push_back({name, good ? CheckStatus::kPass : CheckStatus::kFail, detail});
  }
  void expect_eq(const std::string& name, const GradedSeries& computed,
                 const GradedSeries& expected) {
    if (computed == expected) {
      pass(name, computed.str());
    } else {
      checks.push_back({name, CheckStatus::kFail,
                        "expected " + expected.str() + "; computed " + computed.str()});
    }
  }
};

namespace detail {

inline GradedSeries cpow(VarId v, unsigned m, int order) {
  GradedSeries r = GradedSeries::constant(CoeffPoly(1), order);
  for (unsigned i = 0; i < m; ++i) r = r * GradedSeries::variable(v, order);
  return r;
}

inline GradedSeries cvar(unsigned k, int pw = 1) {
  GradedSeries r = GradedSeries::constant(CoeffPoly(1));
  for (int i = 0; i < pw; ++i)
    r = r * GradedSeries::variable(var_id("c" + std::to_string(k), static_cast<int>(k)));
  return r;
}

}  // namespace detail

/// Every worked value from the source examples, with the two known
/// printed-value discrepancies reported as WARN (computed value shown)
/// rather than FAIL.
inline Report verify_examples(const FormalGroupLaw& F) {
  using detail::cvar;
  Report rep;
  rep.suite = "examples";
  if (F.order < 10) throw Error("verify_examples: need formal group order >= 10");
  CoeffPoly b1 = CoeffPoly::generator(1), b2 = CoeffPoly::generator(2),
            b3 = CoeffPoly::generator(3);

  // coefficient ring: generators, grading, augmentation
  rep.add("coefficient ring: deg b_i = -i and augment(b_i) = 0",
          b1.homogeneous_degree() == -1 && (b2 * b1).homogeneous_degree() == -3 &&
              b1.augment() == Rational(0) &&
              (CoeffPoly(1) + b1 * b1 - b2).augment() == Rational(1),
          "");

  // formal group law table
  rep.add("fgl: a_{11} = -b1", F.a(1, 1) == -b1, F.a(1, 1).str());
  rep.add("fgl: a_{12} = a_{21} = b1^2 - b2",
          F.a(1, 2) == b1 * b1 - b2 && F.a(2, 1) == b1 * b1 - b2, F.a(1, 2).str());
  {
    bool ok = true;
    for (unsigned i = 0; i + 1 <= 8; ++i)
      ok = ok && F.log.coefficient({{fgl_x(), i + 1}}) ==
                     CoeffPoly::generator(i) * Rational(1, i + 1);
    rep.add("fgl: logarithm coefficients b_i/(i+1)", ok, "");
  }
  rep.add("fgl: F(u,0) = u",
          F.sum.substitute(fgl_v(), GradedSeries::zero()) ==
              GradedSeries::variable(fgl_u(), F.order),
          "");
  rep.add("fgl: commutativity", F.sum.swapped(fgl_u(), fgl_v()) == F.sum, "");
  rep.add("fgl: inverse F(t, chi(t)) = 0",
          F.add(GradedSeries::variable(fgl_x(), F.order), F.inverse).is_zero(), "");

  // pushforward tables
  {
    VarId t = var_id("t");
    bool ok = true;
    for (int k = 0; k <= 3; ++k) {
      for (int i = 0; i <= k; ++i)
        ok = ok && trivial_proj_pushforward(detail::cpow(t, static_cast<unsigned>(i), 9),
                                            t, k) ==
                       GradedSeries::constant(
                           CoeffPoly::generator(static_cast<unsigned>(k - i)));
      ok = ok && trivial_proj_pushforward(
                     detail::cpow(t, static_cast<unsigned>(k + 1), 9), t, k)
                     .is_zero();
    }
    rep.add("pushforward: t^i -> [CP^{k-i}], 0 above the fiber dimension", ok, "");
    ok = true;
    for (int k = 1; k <= 3; ++k) {
      ok = ok && cohomology_pushforward(detail::cpow(t, static_cast<unsigned>(k), 9), t,
                                        k) == GradedSeries::constant(CoeffPoly(1));
      ok = ok &&
           cohomology_pushforward(detail::cpow(t, static_cast<unsigned>(k - 1), 9), t, k)
               .is_zero();
    }
    rep.add("cohomology pushforward: t^k -> 1, else 0", ok, "");
  }

  SpaceModel cp1 = projective_product({1});
  SpaceModel cp2 = projective_product({2});
  GradedSeries u = var_series("u");

  // model relations
  rep.add("model relations: u^2 = 0 on CP1, u^3 = 0 on CP2",
          cp1.reduce(u * u).is_zero() && cp2.reduce(u * u * u).is_zero() &&
              cp2.reduce(u * u) == u * u,
          "");

  // lines over CP^1
  {
    bool ok = true;
    for (int a = -2; a <= 2; ++a) {
      BundleSpec xi = line_bundle(F, cp1, 0, a);
      ok = ok && q_class(F, 1, xi, &cp1, QRoute::kDirect, 4) ==
                     euler_class(xi, &cp1, 4);
      ok = ok && q_class(F, 0, xi, &cp1, QRoute::kDirect, 4) ==
                     GradedSeries::constant(CoeffPoly(1));
    }
    rep.add("CP1 lines: Q_1 = e^U and Q_0 = 1", ok, "");
  }
  {
    BundleSpec xi = line_bundle(F, cp1, 0, 1);
    GradedSeries qm1 = q_class(F, -1, xi, &cp1, QRoute::kDirect, 4);
    rep.add("CP1 line: Q_{-1} nonzero", !qm1.is_zero(), qm1.str());
    rep.add("CP1 line: Q_{-1} route agreement",
            qm1 == q_class(F, -1, xi, &cp1, QRoute::kViaPhi, 4), "");
    GradedSeries printed = GradedSeries::constant(b1) + u.scaled(b2 - b1 * b1);
    if (qm1 == printed) {
      rep.pass("CP1 line: Q_{-1} printed value");
    } else {
      rep.warn("CP1 line: Q_{-1} differs from the printed value",
               "computed " + qm1.str() + "; printed value would be " + printed.str() +
                   " (the a_{21} t^2 u term cancels the u-coefficient)");
    }
  }
  {
    bool ok = true;
    for (auto twists : std::vector<std::vector<int>>{{1, 1}, {1, -1}, {2, 3}, {1, 2, -1}}) {
      BundleSpec xi;
      for (int a : twists) xi = direct_sum(xi, line_bundle(F, cp1, 0, a));
      ok = ok && q_class(F, 0, xi, &cp1, QRoute::kDirect, 4) ==
                     GradedSeries::constant(CoeffPoly(1));
    }
    rep.add("CP1 rank k: Q_0 = 1", ok, "");
  }

  // CP^2 examples
  {
    BundleSpec o1 = line_bundle(F, cp2, 0, 1);
    GradedSeries expect =
        GradedSeries::constant(CoeffPoly(1)) + (u * u).scaled(b1 * b1 - b2);
    rep.expect_eq("CP2 O(1): Q_0 = 1 + (b1^2 - b2) u^2",
                  q_class(F, 0, o1, &cp2, QRoute::kDirect, 4), expect);
    BundleSpec xi = direct_sum(o1, o1);
    GradedSeries quadric = u.scaled(CoeffPoly(2)) - (u * u).scaled(b1);
    rep.expect_eq("CP2 O(1)+O(1): Q_1 = 2u - b1 u^2",
                  q_class(F, 1, xi, &cp2, QRoute::kDirect, 4), quadric);
    GradedSeries naive = GradedSeries::zero(4);
    for (int j = 0; j <= 1; ++j)
      naive += q_class(F, j, o1, &cp2, QRoute::kDirect, 4) *
               q_class(F, 1 - j, o1, &cp2, QRoute::kDirect, 4);
    naive = cp2.reduce(naive);
    rep.add("CP2: Whitney counterexample 2u != 2u - b1 u^2",
            naive == u.scaled(CoeffPoly(2)) &&
                q_class(F, 1, xi, &cp2, QRoute::kDirect, 4) != naive,
            "naive product " + naive.str());
    rep.add("dimension axiom: Q_r = 0 for r > rank",
            q_class(F, 3, xi, &cp2, QRoute::kDirect, 4).is_zero() &&
                q_class(F, 5, xi, &cp2, QRoute::kDirect, 4).is_zero(),
            "");
    rep.add("normalization: Q_n = e^U",
            q_class(F, 2, xi, &cp2, QRoute::kDirect, 4) == euler_class(xi, &cp2, 4),
            "");
    rep.add("normalization: P_n = e^U",
            p_class(F, 2, xi, &cp2, 4) == euler_class(xi, &cp2, 4) &&
                p_class(F, 3, xi, &cp2, 4).is_zero(),
            "");
    rep.add("Whitney for c^U: c_1(O(1)+O(1)) = 2u",
            chern_u(1, xi, &cp2, 4) == u.scaled(CoeffPoly(2)), "");
  }

  // universal expansions
  {
    auto q1 = universal_expansion(F, ClassKind::kQ, 1, 2, 3);
    auto p1 = universal_expansion(F, ClassKind::kP, 1, 2, 3);
    GradedSeries row =
        cvar(1) - cvar(2).scaled(b1) + (cvar(1) * cvar(2)).scaled(b1 * b1 - b2);
    rep.expect_eq("universal Q_1 (rank 2) through degree 3", q1.in_chern,
                  row.truncated(3));
    rep.expect_eq("universal P_1 (rank 2) through degree 3", p1.in_chern,
                  row.truncated(3));
    CoeffPoly s = q1.in_chern.coefficient(
        {{var_id("c2", 2), 1}});
    if (s == b1) {
      rep.pass("universal Q_1: sign of the c_2 term matches the alternate row");
    } else {
      rep.warn("universal Q_1: c_2 term is -b1*c2",
               "computed coefficient " + s.str() +
                   "; the alternate printed row has +b1*c2");
    }
    auto q2 = universal_expansion(F, ClassKind::kQ, 2, 3, 4);
    auto p2 = universal_expansion(F, ClassKind::kP, 2, 3, 4);
    GradedSeries row2 = cvar(2) - cvar(3).scaled(b1 * Rational(2)) +
                        (cvar(1) * cvar(3)).scaled(b1 * b1 - b2);
    rep.expect_eq("universal Q_2 (rank 3) through degree 4", q2.in_chern,
                  row2.truncated(4));
    rep.expect_eq("universal P_2 (rank 3) through degree 4", p2.in_chern,
                  row2.truncated(4));
  }

  // Phi classes
  {
    bool ok = true;
    for (int rank = 1; rank <= 3; ++rank) {
      BundleSpec xi = formal_bundle(rank, "t");
      auto phis = phi_series(F, xi, nullptr, rank, 4);
      GradedSeries e = GradedSeries::constant(CoeffPoly(1), 4);
      for (const auto& r : xi.roots) e = (e * r).truncated(4);
      ok = ok && phis[rank] == e;
    }
    rep.add("Phi_n is the Euler class", ok, "");
    BundleSpec xi = formal_bundle(1, "t");
    BundleSpec eta = formal_bundle(2, "s");
    auto pxi = phi_series(F, xi, nullptr, -5, 4);
    auto peta = phi_series(F, eta, nullptr, -4, 4);
    auto psum = phi_series(F, direct_sum(xi, eta), nullptr, -3, 4);
    bool ok2 = true;
    for (int r = -3; r <= 3; ++r) {
      GradedSeries conv = GradedSeries::zero(4);
      for (int j = r - 2; j <= 1; ++j) conv += (pxi.at(j) * peta.at(r - j)).truncated(4);
      ok2 = ok2 && psum.at(r) == conv;
    }
    rep.add("Phi Whitney sum formula (full convolution)", ok2, "");
  }

  // M series
  {
    auto M = m_series(5);
    bool ok = M[0] == CoeffPoly(1) && M[1] == -b1 && M[2] == b1 * b1 - b2;
    for (std::size_t k = 1; k <= 5; ++k) {
      CoeffPoly acc;
      for (std::size_t i = 0; i <= k; ++i)
        acc += CoeffPoly::generator(static_cast<unsigned>(i)) * M[k - i];
      ok = ok && acc.is_zero() && M[k].augment() == Rational(0);
    }
    rep.add("M series: generating function inverse of 1 + sum b_i x^i", ok, "");
  }

  // sum formula on CP^2
  {
    BundleSpec o1 = line_bundle(F, cp2, 0, 1);
    auto sf = verify_sum_formula(F, o1, o1, &cp2, 1, 4);
    rep.add("sum formula on CP2: Q_1(O(1)+O(1)), both sides 2u - b1 u^2",
            sf.equal && sf.lhs == u.scaled(CoeffPoly(2)) - (u * u).scaled(b1),
            "lhs " + sf.lhs.str() + "; rhs " + sf.rhs.str());
  }

  // D_1
  {
    auto d1 = universal_expansion(F, ClassKind::kD, 1, 1, 3);
    rep.expect_eq("D_1 of a line is c_1", d1.in_chern, cvar(1).truncated(3));
    BundleSpec xi = direct_sum(line_bundle(F, cp2, 0, 1), line_bundle(F, cp2, 0, -1));
    rep.add("D_1(O(1)+O(-1)) over CP2 = 0", d1_class(F, xi, &cp2, 4).is_zero(), "");
  }

  // Chern-Dold checks
  {
    GradedSeries x6 = GradedSeries::variable(fgl_x(), 6);
    rep.add("g(g^{-1}(x)) = x through degree 6",
            F.log.truncated(6).substitute(fgl_x(), F.exp.truncated(6)) == x6 &&
                F.exp.truncated(6).substitute(fgl_x(), F.log.truncated(6)) == x6,
            "");
    auto ns = n_series_check(F, 2, 5);
    rep.add("ch D_1 = sum [N^{2i}] c_1^{i+1} on two formal roots",
            ns.ok && ns.n_values[0] == CoeffPoly(1) &&
                ns.n_values[1] == b1 * Rational(-1, 2),
            "[N^2] = " + ns.n_values[1].str());
    auto rr = rr_check(F, cp2, line_bundle(F, cp2, 0, 1), 0);
    GradedSeries z = var_series("z");
    rep.add("Riemann-Roch for Q_0(O(1)) over CP2",
            rr.ok && rr.lhs == GradedSeries::constant(CoeffPoly(1)) +
                                   (z * z).scaled(b1 * b1 - b2),
            "both routes " + rr.lhs.str());
    ChernDold cd = make_chern_dold(F, cp2);
    GradedSeries tl = cd.coh.reduce(todd_of(F, z, 2));
    rep.add("Todd class of a line: 1 + (b1/2) z + ...",
            tl.coefficient({{var_id("z"), 1}}) == b1 * Rational(1, 2), tl.str());
    // tangent of CP^1 is O(2) while its stabilization splits as O(1)^2, so
    // T(O(2)) = T(O(1))^2 holds after z^2 = 0
    ChernDold cd1 = make_chern_dold(F, cp1);
    GradedSeries tangent = cd1.coh.reduce(todd_of(F, z.scaled(CoeffPoly(2)), 3));
    GradedSeries stab = cd1.coh.reduce(todd_class(F, {z, z}, 3));
    rep.add("Todd multiplicativity: T(O(2)) = T(O(1))^2 on CP1", tangent == stab, "");
    // the fiber Todd class built through quotient roots agrees with the
    // Euler-sequence product over CP^2
    VarId zf = var_id("$zf");
    SpaceModel fib2;
    fib2.gens = {zf};
    fib2.dims = {2};
    GradedSeries quot_route = fiber_todd_class(F, zf, 2);
    GradedSeries euler_route = fib2.reduce(
        todd_class(F, {GradedSeries::variable(zf), GradedSeries::variable(zf),
                       GradedSeries::variable(zf)},
                   3));
    rep.add("fiber Todd class: quotient route = Euler-sequence route on CP2",
            quot_route == euler_route,
            quot_route.substitute(zf, var_series("zt")).str());
  }

  // integrality record (informational, never asserted)
  {
    std::ostringstream os;
    bool all_integral = true;
    for (int rank = 1; rank <= 3; ++rank)
      for (int r = 0; r <= rank; ++r) {
        auto e = universal_expansion(F, ClassKind::kQ, r, rank, 4);
        for (const auto& [m, c] : e.in_chern.terms())
          for (const auto& [be, rc] : c.terms())
            if (!rc.is_integer()) {
              all_integral = false;
              os << " Q_" << r << "(rank " << rank << ")";
            }
      }
    rep.pass("integrality record: universal Q coefficients in the [CP^i] basis",
             all_integral ? "all displayed coefficients integral"
                          : "non-integral coefficients at:" + os.str());
  }

  return rep;
}

/// Route equivalence: the fiberwise definition against the Phi transition,
/// ranks 1..4, r in [-2, n], plus concrete models.
inline Report verify_routes(const FormalGroupLaw& F, int degree = 6) {
  Report rep;
  rep.suite = "routes";
  for (int rank = 1; rank <= 4; ++rank) {
    BundleSpec xi = formal_bundle(rank, "t");
    bool ok = true;
    std::string bad;
    for (int r = -2; r <= rank; ++r) {
      GradedSeries d = q_class(F, r, xi, nullptr, QRoute::kDirect, degree);
      GradedSeries v = q_class(F, r, xi, nullptr, QRoute::kViaPhi, degree);
      if (!(d == v)) {
        ok = false;
        bad += " r=" + std::to_string(r);
      }
    }
    rep.add("formal rank " + std::to_string(rank) + ": direct = via-phi, r in [-2, " +
                std::to_string(rank) + "], degree " + std::to_string(degree),
            ok, bad);
  }
  SpaceModel cp1 = projective_product({1});
  SpaceModel cp2 = projective_product({2});
  for (const SpaceModel* X : {&cp1, &cp2}) {
    BundleSpec o1 = line_bundle(F, *X, 0, 1);
    BundleSpec xi = direct_sum(o1, line_bundle(F, *X, 0, -1));
    bool ok = true;
    for (int r = -2; r <= 2; ++r) {
      if (r <= 1 && !(q_class(F, r, o1, X, QRoute::kDirect, 4) ==
                      q_class(F, r, o1, X, QRoute::kViaPhi, 4)))
        ok = false;
      if (!(q_class(F, r, xi, X, QRoute::kDirect, 4) ==
            q_class(F, r, xi, X, QRoute::kViaPhi, 4)))
        ok = false;
    }
    rep.add("concrete bundles over " + X->str(), ok, "");
  }
  return rep;
}

/// Deformed sum formula for the required rank pairs, on formal roots and on
/// CP^2, plus the classical degeneration.
inline Report verify_sum_suite(const FormalGroupLaw& F, int degree = 5) {
  Report rep;
  rep.suite = "sum-formula";
  auto run_formal = [&](int n1, int n2) {
    BundleSpec xi = formal_bundle(n1, "t");
    BundleSpec eta = formal_bundle(n2, "s");
    bool ok = true;
    std::string bad;
    for (int r = -1; r <= n1 + n2; ++r) {
      auto sf = verify_sum_formula(F, xi, eta, nullptr, r, degree);
      if (!sf.equal) {
        ok = false;
        bad += " r=" + std::to_string(r) + " residual " + sf.residual.str() + ";";
      }
    }
    rep.add("formal ranks (" + std::to_string(n1) + "," + std::to_string(n2) +
                "), degree " + std::to_string(degree),
            ok, bad);
  };
  run_formal(1, 1);
  run_formal(1, 2);
  run_formal(2, 2);

  SpaceModel cp2 = projective_product({2});
  BundleSpec o1 = line_bundle(F, cp2, 0, 1);
  BundleSpec o2 = line_bundle(F, cp2, 0, 2);
  bool ok = true;
  for (int r = -1; r <= 2; ++r) ok = ok && verify_sum_formula(F, o1, o1, &cp2, r, 4).equal;
  for (int r = -1; r <= 2; ++r) ok = ok && verify_sum_formula(F, o1, o2, &cp2, r, 4).equal;
  rep.add("concrete bundles over CP2", ok, "");

  // augmentation: classical Whitney formula
  {
    BundleSpec xi = formal_bundle(2, "t");
    BundleSpec eta = formal_bundle(1, "s");
    bool wok = true;
    for (int r = 0; r <= 3; ++r) {
      GradedSeries lhs =
          q_class(F, r, direct_sum(xi, eta), nullptr, QRoute::kDirect, 4).augmented();
      GradedSeries rhs = GradedSeries::zero(4);
      for (int j = 0; j <= r; ++j)
        rhs += (chern_u(j, xi, nullptr, 4) * chern_u(r - j, eta, nullptr, 4))
                   .truncated(4)
                   .augmented();
      wok = wok && lhs == rhs;
    }
    rep.add("augmentation degenerates to the classical Whitney formula", wok, "");
  }

  // the counterexample stays a counterexample
  {
    GradedSeries u = var_series("u");
    GradedSeries q1 = q_class(F, 1, direct_sum(o1, o1), &cp2, QRoute::kDirect, 4);
    rep.add("Whitney failure witness on CP2",
            q1 == u.scaled(CoeffPoly(2)) - (u * u).scaled(CoeffPoly::generator(1)) &&
                q1 != u.scaled(CoeffPoly(2)),
            q1.str());
  }
  return rep;
}

/// Riemann-Roch route for every Q-class computation on the CP^1 and CP^2
/// models, plus the exponential identities.
inline Report verify_riemann_roch(const FormalGroupLaw& F) {
  Report rep;
  rep.suite = "riemann-roch";
  GradedSeries x6 = GradedSeries::variable(fgl_x(), 6);
  rep.add("g and g^{-1} are mutually inverse through degree 6",
          F.log.truncated(6).substitute(fgl_x(), F.exp.truncated(6)) == x6 &&
              F.exp.truncated(6).substitute(fgl_x(), F.log.truncated(6)) == x6,
          "");
  for (int k = 2; k <= 3; ++k)
    rep.add("N-series identity on " + std::to_string(k) + " formal roots",
            n_series_check(F, k, 5).ok, "");

  SpaceModel cp1 = projective_product({1});
  SpaceModel cp2 = projective_product({2});
  {
    ChernDold cd = make_chern_dold(F, cp2);
    GradedSeries u = var_series("u");
    GradedSeries a = u + (u * u).scaled(CoeffPoly::generator(1));
    GradedSeries bb = GradedSeries::constant(CoeffPoly(1)) - u.scaled(CoeffPoly(3));
    rep.add("Chern-Dold character is multiplicative",
            cd.apply(cp2.reduce(a * bb)) == cd.coh.reduce(cd.apply(a) * cd.apply(bb)),
            "");
  }
  for (const SpaceModel* X : {&cp1, &cp2}) {
    bool ok = true;
    std::string bad;
    auto run = [&](const BundleSpec& xi, int r) {
      if (!rr_check(F, *X, xi, r).ok) {
        ok = false;
        bad += " rank" + std::to_string(xi.rank) + "/r=" + std::to_string(r);
      }
    };
    for (int a = -2; a <= 2; ++a)
      for (int r = -2; r <= 1; ++r) run(line_bundle(F, *X, 0, a), r);
    for (auto twists : std::vector<std::vector<int>>{{1, 1}, {1, -1}, {2, 1}}) {
      BundleSpec xi;
      for (int a : twists) xi = direct_sum(xi, line_bundle(F, *X, 0, a));
      for (int r = -2; r <= 2; ++r) run(xi, r);
    }
    rep.add("ch p_! = p_!(ch * Todd) for all Q computations over " + X->str(), ok, bad);
  }
  return rep;
}

}  // namespace cobord
