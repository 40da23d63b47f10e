#pragma once

#include <map>
#include <string>
#include <vector>

#include "cobord/char_classes.hpp"
#include "cobord/pushforward.hpp"
#include "cobord/space_model.hpp"

namespace cobord {

/// Chern-Dold character for a space model: the ring map sending each
/// geometric generator u_i to g^{-1}(z_i) in the cohomology mirror,
/// coefficients passing through.
struct ChernDold {
  const FormalGroupLaw* F = nullptr;
  std::vector<std::pair<VarId, VarId>> vmap;  // geometric -> cohomology
  SpaceModel coh;                             // mirror model (z generators)

  GradedSeries apply(const GradedSeries& x) const {
    GradedSeries r = x;
    for (const auto& [u, z] : vmap)
      r = coh.reduce(r.substitute(u, F->exp_of(GradedSeries::variable(z, F->order))));
    return r;
  }
};

/// Mirror of a geometric model with ordinary generators z_i (z for a single
/// factor).
inline ChernDold make_chern_dold(const FormalGroupLaw& F, const SpaceModel& X,
                                 const std::string& prefix = "z") {
  ChernDold cd;
  cd.F = &F;
  cd.coh.dims = X.dims;
  for (std::size_t i = 0; i < X.gens.size(); ++i) {
    std::string name = X.gens.size() == 1 ? prefix : prefix + std::to_string(i + 1);
    VarId z = var_id(name);
    cd.coh.gens.push_back(z);
    cd.vmap.emplace_back(X.gens[i], z);
  }
  return cd;
}

/// The multiplicative Todd factor z / g^{-1}(z) as a unit series in $x.
inline GradedSeries todd_series(const FormalGroupLaw& F, int order) {
  if (F.order < order + 1)
    throw Error("todd_series: formal group order too small");
  GradedSeries U = GradedSeries::zero(order).aligned_with({fgl_x()});
  for (const auto& [m, c] : F.exp.terms()) {
    std::uint32_t e = m[0];
    if (e >= 1 && static_cast<int>(e) - 1 <= order)
      U.add_term(Mono{e - 1}, c);
  }
  return U.with_order(order).invert_unit(order);
}

/// Todd class of a line with the given ordinary first Chern class.
inline GradedSeries todd_of(const FormalGroupLaw& F, const GradedSeries& c1, int order) {
  return todd_series(F, order).substitute(fgl_x(), c1);
}

/// Multiplicative Todd class of a bundle given by cohomology Chern roots.
inline GradedSeries todd_class(const FormalGroupLaw& F,
                               const std::vector<GradedSeries>& roots, int order) {
  GradedSeries T = GradedSeries::constant(CoeffPoly(1), order);
  for (const auto& root : roots) T = (T * todd_of(F, root, order)).truncated(order);
  return T;
}

/// Generalized Todd class of the fiber tangent bundle of M x CP^k -> M:
/// tau = gamma* tensor (C^{k+1}/gamma), with the quotient's symmetric
/// functions solved by Whitney division and the Todd product rewritten
/// through them.
inline GradedSeries fiber_todd_class(const FormalGroupLaw& F, VarId zf, int k) {
  if (k == 0) return GradedSeries::constant(CoeffPoly(1));
  GradedSeries zfs = GradedSeries::variable(zf, k);
  BundleSpec trivial;
  trivial.rank = k + 1;
  for (int i = 0; i < k + 1; ++i) trivial.roots.push_back(GradedSeries::zero());
  BundleSpec quot = quotient_roots(trivial, {-zfs}, k);
  std::vector<VarId> yvars, eyvars;
  for (int i = 1; i <= k; ++i) {
    yvars.push_back(var_id("$y" + std::to_string(i)));
    eyvars.push_back(var_id("$ey" + std::to_string(i), i));
  }
  GradedSeries T = GradedSeries::constant(CoeffPoly(1), k);
  for (int i = 0; i < k; ++i) {
    GradedSeries root = zfs + GradedSeries::variable(yvars[static_cast<std::size_t>(i)], k);
    T = (T * todd_of(F, root, k)).truncated(k);
  }
  GradedSeries rew = T.rewrite_in_elementary(yvars, eyvars);
  for (int j = 1; j <= k; ++j)
    rew = rew.substitute(eyvars[static_cast<std::size_t>(j - 1)],
                         quot.elem[static_cast<std::size_t>(j - 1)]);
  // exact as a model element: every term beyond degree k carries zf^{>k}
  // and dies under the nilpotency the callers enforce
  return rew.with_order(GradedSeries::kExact);
}

struct RRReport {
  GradedSeries lhs;  // ch of the cobordism pushforward
  GradedSeries rhs;  // cohomology pushforward of ch(x) * T(tau)
  bool ok = false;
};

/// Riemann-Roch check ch p_!^U(x) = p_!^H(ch(x) T(tau)) over the trivial
/// projectivization X x CP^k, for an arbitrary ring element x of the
/// extended model (fiber variable $f, nilpotency order k+1).
inline RRReport rr_check_element(const FormalGroupLaw& F, const SpaceModel& X,
                                 const GradedSeries& x, int k) {
  RRReport rep;
  if (k < 0) {
    rep.lhs = GradedSeries::zero();
    rep.rhs = GradedSeries::zero();
    rep.ok = true;
    return rep;
  }
  VarId tf = fiber_var();
  VarId zf = var_id("$zf");
  SpaceModel XF = X.with_factor(tf, k);
  if (F.order < XF.total_dim() + 1) throw Error("rr_check: formal group order too small");

  ChernDold cd = make_chern_dold(F, X);
  ChernDold cdf = cd;
  cdf.coh = cd.coh.with_factor(zf, k);
  cdf.vmap.emplace_back(tf, zf);

  GradedSeries e = XF.reduce(x);
  GradedSeries lhs_u = trivial_proj_pushforward(e, tf, k);
  rep.lhs = cd.coh.reduce(cd.apply(lhs_u));

  GradedSeries chE = cdf.apply(e);
  GradedSeries T = fiber_todd_class(F, zf, k);
  GradedSeries integrand = cdf.coh.reduce(chE * T);
  rep.rhs = cd.coh.reduce(cohomology_pushforward(integrand, zf, k));
  rep.ok = rep.lhs == rep.rhs;
  return rep;
}

/// Riemann-Roch check for the Euler integrand of a Q-class computation:
/// x = e^U(gamma* tensor p^* xi) and k = rank - r.
inline RRReport rr_check(const FormalGroupLaw& F, const SpaceModel& X,
                         const BundleSpec& xi, int r) {
  const int k = xi.rank - r;
  if (k < 0) {
    RRReport rep;
    rep.ok = true;
    return rep;
  }
  SpaceModel XF = X.with_factor(fiber_var(), k);
  if (F.order < XF.total_dim() + 1) throw Error("rr_check: formal group order too small");
  GradedSeries E =
      euler_tensor(F, fiber_var(), xi.roots, XF.total_dim(), XF.reducer());
  return rr_check_element(F, X, E, k);
}

struct NSeriesReport {
  GradedSeries lhs;  // ch of D_1 on formal roots, in cohomology roots
  GradedSeries rhs;  // sum [N^{2i}] c_1^{i+1}
  std::vector<CoeffPoly> n_values;
  bool ok = false;
};

/// ch_U D_1(xi) = sum_i [N^{2i}] c_1(xi)^{i+1} with [N^{2i}] the
/// exponential coefficients, on k formal roots to the given degree.
inline NSeriesReport n_series_check(const FormalGroupLaw& F, int k, int degree) {
  if (F.order < degree) throw Error("n_series_check: formal group order too small");
  NSeriesReport rep;
  BundleSpec xi = formal_bundle(k, "t");
  GradedSeries D = d1_class(F, xi, nullptr, degree);
  GradedSeries chD = D;
  GradedSeries c1h = GradedSeries::zero(degree);
  for (int i = 1; i <= k; ++i) {
    GradedSeries s = var_series("s" + std::to_string(i));
    chD = chD.substitute(var_id("t" + std::to_string(i)),
                         F.exp_of(s.truncated(degree)));
    c1h += s.truncated(degree);
  }
  rep.lhs = chD.truncated(degree);
  rep.rhs = GradedSeries::zero(degree);
  GradedSeries c1pow = GradedSeries::constant(CoeffPoly(1), degree);
  for (int i = 0; i + 1 <= degree; ++i) {
    CoeffPoly n2i = F.exp.coefficient({{fgl_x(), static_cast<unsigned>(i + 1)}});
    rep.n_values.push_back(n2i);
    c1pow = (c1pow * c1h).truncated(degree);
    rep.rhs += c1pow.scaled(n2i);
  }
  rep.rhs = rep.rhs.truncated(degree);
  rep.ok = rep.lhs == rep.rhs;
  return rep;
}

/// A genus given by its logarithm coefficients lambda_1, lambda_2, ...
/// (rational constants or polynomials in symbolic parameters); the induced
/// ring map is b_i -> (i+1) lambda_i.
struct Genus {
  std::vector<CoeffPoly> lambda;
  std::string symbol = "l";  // rendering symbol for symbolic parameters
};

inline CoeffPoly apply_genus(const CoeffPoly& p, const Genus& g) {
  return p.map_generators([&g](unsigned i) {
    if (i == 0) return CoeffPoly(1);
    if (i > g.lambda.size())
      throw Error("apply_genus: genus table too short for b_" + std::to_string(i));
    return g.lambda[i - 1] * Rational(static_cast<long>(i) + 1);
  });
}

inline Genus trivial_genus(std::size_t length) {
  Genus g;
  g.lambda.assign(length, CoeffPoly());
  return g;
}

/// Todd genus: logarithm sum x^{i+1}/(i+1), so b_i -> 1.
inline Genus todd_genus(std::size_t length) {
  Genus g;
  for (std::size_t i = 1; i <= length; ++i)
    g.lambda.push_back(CoeffPoly(Rational(1, static_cast<long>(i) + 1)));
  return g;
}

inline Genus symbolic_genus(std::size_t length) {
  Genus g;
  for (std::size_t i = 1; i <= length; ++i)
    g.lambda.push_back(CoeffPoly::generator(static_cast<unsigned>(i)));
  return g;
}

/// chi_y genus: phi(CP^i) = sum_{j<=i} (-y)^j.
inline Genus chi_y_genus(const Rational& y, std::size_t length) {
  Genus g;
  Rational pow(1), sum(1);
  for (std::size_t i = 1; i <= length; ++i) {
    pow *= -y;
    sum += pow;
    g.lambda.push_back(CoeffPoly(sum * Rational(1, static_cast<long>(i) + 1)));
  }
  return g;
}

/// Genus whose characteristic function is f (a series t + O(t^2) in $x):
/// the logarithm is the compositional inverse of f.
inline Genus genus_from_char_function(const GradedSeries& f, std::size_t length) {
  GradedSeries rev = series_reversion(f, fgl_x(), static_cast<int>(length) + 1);
  Genus g;
  for (std::size_t i = 1; i <= length; ++i)
    g.lambda.push_back(rev.coefficient({{fgl_x(), static_cast<unsigned>(i + 1)}}));
  return g;
}

/// Low-degree parameterization of the complex elliptic genus family via the
/// sigma-function expansion: characteristic function
///   f(t) = t exp(a t + p t^2/2 - q t^3/6 + (6 p^2 - g2/2) t^4/24)
///            (1 - g2 t^4/240)  + O(t^6),
/// with free parameters a, p = wp(z), q = wp'(z), g2 of weights 1..4,
/// rendered as k1..k4. Valid through lambda_4 (dimension 8).
inline Genus elliptic_genus_family() {
  const int N = 5;
  CoeffPoly a = CoeffPoly::generator(1), p = CoeffPoly::generator(2),
            q = CoeffPoly::generator(3), g2 = CoeffPoly::generator(4);
  GradedSeries x = GradedSeries::variable(fgl_x(), N);
  GradedSeries expo = GradedSeries::zero(N).aligned_with({fgl_x()});
  expo.add_term(Mono{1}, a);
  expo.add_term(Mono{2}, p * Rational(1, 2));
  expo.add_term(Mono{3}, q * Rational(-1, 6));
  expo.add_term(Mono{4}, (p * p * Rational(6) - g2 * Rational(1, 2)) * Rational(1, 24));
  GradedSeries ex = GradedSeries::constant(CoeffPoly(1), N);
  GradedSeries pow = GradedSeries::constant(CoeffPoly(1), N);
  Rational fact(1);
  for (int m = 1; m <= N; ++m) {
    pow = (pow * expo).truncated(N);
    fact *= Rational(m);
    ex += pow.scaled(fact.inverse());
  }
  GradedSeries corr = GradedSeries::constant(CoeffPoly(1), N);
  corr = corr.aligned_with({fgl_x()});
  corr.add_term(Mono{4}, g2 * Rational(-1, 240));
  GradedSeries f = (x * ex * corr).truncated(N);
  Genus g = genus_from_char_function(f, 4);
  g.symbol = "k";
  return g;
}

/// Solves for the family parameters hitting prescribed logarithm
/// coefficients. Valid because lambda_i is linear in the weight-i parameter
/// with a constant rational coefficient (anything else of weight i is a
/// monomial in the lower parameters).
inline std::vector<Rational> solve_genus_parameters(const Genus& family,
                                                    const std::vector<Rational>& target) {
  if (target.size() > family.lambda.size())
    throw Error("solve_genus_parameters: family too short");
  std::vector<Rational> k(target.size(), Rational(0));
  for (std::size_t i = 1; i <= target.size(); ++i) {
    BExps pure(i, 0);
    pure[i - 1] = 1;
    auto it = family.lambda[i - 1].terms().find(pure);
    if (it == family.lambda[i - 1].terms().end())
      throw Error("solve_genus_parameters: family not triangular");
    Rational ci = it->second;
    CoeffPoly rest = family.lambda[i - 1].map_generators([&](unsigned g) {
      if (g == i) return CoeffPoly(Rational(0));
      return CoeffPoly(k[g - 1]);
    });
    k[i - 1] = (target[i - 1] - rest.augment()) / ci;
  }
  return k;
}

}  // namespace cobord
