#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cobord/graded_series.hpp"

namespace cobord {

// Reserved internal variable names ('$' prefix keeps them out of the way of
// user-facing variables and the expression grammar).
inline VarId fgl_x() { return var_id("$x"); }
inline VarId fgl_u() { return var_id("$u"); }
inline VarId fgl_v() { return var_id("$v"); }

/// Logarithm of the universal formal group law:
///   g(x) = x + b_1 x^2/2 + b_2 x^3/3 + ... + b_{N-1} x^N / N.
inline GradedSeries log_series(int order) {
  if (order < 1) throw Error("log_series: order must be >= 1");
  GradedSeries g = GradedSeries::zero(order);
  g = g.aligned_with({fgl_x()});
  for (int i = 0; i + 1 <= order; ++i)
    g.add_term(Mono{static_cast<std::uint32_t>(i + 1)},
               CoeffPoly::generator(static_cast<unsigned>(i)) * Rational(1, i + 1));
  return g;
}

/// Compositional inverse of a series with linear term 1*v (solved degree by
/// degree; the defining check f(rev(x)) = x holds to the requested order).
inline GradedSeries series_reversion(const GradedSeries& f, VarId v, int order) {
  if (!f.constant_term().is_zero())
    throw Error("series_reversion: nonzero constant term");
  if (!(f.coefficient({{v, 1}}) == CoeffPoly(1)))
    throw Error("series_reversion: linear coefficient must be 1");
  GradedSeries x = GradedSeries::variable(v, order);
  GradedSeries h = x;
  for (int d = 2; d <= order; ++d) {
    GradedSeries r = f.truncated(order).substitute(v, h) - x;
    GradedSeries rd = r.homogeneous_part(d);
    if (!rd.is_zero()) h = h - rd;
  }
  return h.with_order(order);
}

/// Exponential g^{-1} of the formal group, the compositional inverse of the
/// logarithm.
inline GradedSeries exp_series(int order) {
  return series_reversion(log_series(order), fgl_x(), order);
}

/// The universal formal group law of complex cobordism, truncated at a fixed
/// order: logarithm g, exponential g^{-1}, the sum F(u,v) = g^{-1}(g(u)+g(v))
/// and the formal inverse chi with F(t, chi(t)) = 0.
struct FormalGroupLaw {
  int order = 0;
  GradedSeries log;      // in $x
  GradedSeries exp;      // in $x
  GradedSeries sum;      // F in ($u, $v)
  GradedSeries inverse;  // chi in $x

  /// Coefficient a_{ij} of u^i v^j in F.
  CoeffPoly a(unsigned i, unsigned j) const {
    return sum.coefficient({{fgl_u(), i}, {fgl_v(), j}});
  }

  /// F(a, b) for zero-augmentation arguments.
  GradedSeries add(const GradedSeries& a, const GradedSeries& b) const {
    return sum.substitute(fgl_u(), a).substitute(fgl_v(), b);
  }
  /// chi(a), the class of the dual line.
  GradedSeries neg(const GradedSeries& a) const { return inverse.substitute(fgl_x(), a); }
  GradedSeries log_of(const GradedSeries& a) const { return log.substitute(fgl_x(), a); }
  GradedSeries exp_of(const GradedSeries& a) const { return exp.substitute(fgl_x(), a); }
};

inline FormalGroupLaw make_fgl(int order) {
  if (order < 1) throw Error("make_fgl: order must be >= 1");
  FormalGroupLaw F;
  F.order = order;
  F.log = log_series(order);
  F.exp = exp_series(order);
  GradedSeries u = GradedSeries::variable(fgl_u(), order);
  GradedSeries v = GradedSeries::variable(fgl_v(), order);
  GradedSeries w = F.log.substitute(fgl_x(), u) + F.log.substitute(fgl_x(), v);
  F.sum = F.exp.substitute(fgl_x(), w).with_order(order);

  // chi solved from F(x, chi(x)) = 0, one degree at a time
  GradedSeries x = GradedSeries::variable(fgl_x(), order);
  GradedSeries chi = -x;
  for (int d = 2; d <= order; ++d) {
    GradedSeries r = F.sum.substitute(fgl_u(), x).substitute(fgl_v(), chi);
    GradedSeries rd = r.homogeneous_part(d);
    if (!rd.is_zero()) chi = chi - rd;
  }
  F.inverse = chi.with_order(order);
  return F;
}

/// Iterated formal sum g^{-1}(g(r_1) + ... + g(r_k)); empty list gives 0.
inline GradedSeries formal_sum(const FormalGroupLaw& F,
                               const std::vector<GradedSeries>& roots) {
  if (roots.empty()) return GradedSeries::zero(F.order);
  GradedSeries s = roots[0].truncated(F.order);
  for (std::size_t i = 1; i < roots.size(); ++i) s = F.add(s, roots[i]);
  return s;
}

/// n-fold formal multiple [n]_F of a single class; negative n uses chi.
inline GradedSeries formal_multiple(const FormalGroupLaw& F, const GradedSeries& a,
                                    int n) {
  GradedSeries base = n >= 0 ? a : F.neg(a);
  std::vector<GradedSeries> copies(static_cast<std::size_t>(n >= 0 ? n : -n), base);
  return formal_sum(F, copies);
}

/// Euler class of (line)^* tensor a bundle with the given Chern roots:
/// prod_i F(x, t_i). An optional reducer (nilpotent model reduction) is
/// applied after every factor.
inline GradedSeries euler_tensor(
    const FormalGroupLaw& F, VarId x, const std::vector<GradedSeries>& roots, int order,
    const std::function<GradedSeries(const GradedSeries&)>& reduce = {}) {
  if (F.order < order)
    throw Error("euler_tensor: formal group order " + std::to_string(F.order) +
                " below requested order " + std::to_string(order));
  int eff = order;
  for (const auto& root : roots) eff = std::min(eff, root.valid_order());
  GradedSeries xs = GradedSeries::variable(x, eff);
  GradedSeries r = GradedSeries::constant(CoeffPoly(1), eff);
  for (const auto& root : roots) {
    GradedSeries factor =
        F.sum.substitute(fgl_u(), xs).substitute(fgl_v(), root.truncated(eff));
    r = (r * factor).truncated(eff);
    if (reduce) r = reduce(r);
  }
  return r.with_order(eff);
}

}  // namespace cobord
