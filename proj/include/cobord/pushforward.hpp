#pragma once

#include <string>
#include <vector>

#include "cobord/formal_group.hpp"
#include "cobord/graded_series.hpp"
#include "cobord/space_model.hpp"

namespace cobord {

/// Order bookkeeping for the residue pushforwards. The working order must
/// exceed the target order by the number of exact linear divisions on the
/// deepest path plus one; violations are hard errors, never silent
/// truncation loss.
struct PushforwardContext {
  const FormalGroupLaw* fgl = nullptr;
  int working_order = 0;

  /// Projective bundle of an n-root bundle: n-1 divided-difference
  /// divisions.
  static PushforwardContext projective(const FormalGroupLaw& F, std::size_t n_roots,
                                       int target_order) {
    PushforwardContext c;
    c.fgl = &F;
    c.working_order = target_order + static_cast<int>(n_roots);
    c.require(F);
    return c;
  }

  /// Grassmann subset-residue sum over n roots: one division per root pair.
  static PushforwardContext grassmann(const FormalGroupLaw& F, std::size_t n_roots,
                                      int target_order) {
    PushforwardContext c;
    c.fgl = &F;
    int pairs = static_cast<int>(n_roots * (n_roots - 1) / 2);
    c.working_order = target_order + pairs + 1;
    c.require(F);
    return c;
  }

  static PushforwardContext raw(const FormalGroupLaw& F, int working_order) {
    PushforwardContext c;
    c.fgl = &F;
    c.working_order = working_order;
    c.require(F);
    return c;
  }

  void require(const FormalGroupLaw& F) const {
    if (F.order < working_order + 1)
      throw Error("pushforward: formal group order " + std::to_string(F.order) +
                  " insufficient for working order " + std::to_string(working_order) +
                  " (need at least " + std::to_string(working_order + 1) + ")");
  }
};

/// Gysin map for the trivial projectivization M x CP^k -> M:
/// t^i -> [CP^{k-i}] for i <= k and 0 for i > k, linear over the base.
inline GradedSeries trivial_proj_pushforward(const GradedSeries& f, VarId t, int k) {
  if (k < 0) return GradedSeries::zero(f.valid_order());
  auto slices = f.collect(t);
  int order = f.valid_order() >= GradedSeries::kExact ? GradedSeries::kExact
                                                      : f.valid_order() - k;
  GradedSeries r = GradedSeries::zero(order);
  for (const auto& [e, slice] : slices) {
    if (e > static_cast<unsigned>(k)) continue;
    r += slice.scaled(CoeffPoly::generator(static_cast<unsigned>(k) - e));
  }
  return r.truncated(order);
}

/// Pushforward of a product-of-projective-spaces class to the point:
/// u_1^{a_1} ... u_k^{a_k} -> [CP^{m_1-a_1}] ... [CP^{m_k-a_k}].
template <typename Space>
CoeffPoly point_pushforward(const GradedSeries& s, const Space& X) {
  CoeffPoly out;
  GradedSeries a = s.aligned_with(X.gens);
  std::vector<std::size_t> idx(X.gens.size());
  for (std::size_t i = 0; i < X.gens.size(); ++i) idx[i] = a.index_of(X.gens[i]);
  for (const auto& [m, c] : a.terms()) {
    CoeffPoly factor = c;
    for (std::size_t i = 0; i < X.gens.size(); ++i) {
      if (m[idx[i]] > static_cast<std::uint32_t>(X.dims[i]))
        throw Error("point_pushforward: element not reduced");
      factor = factor * CoeffPoly::generator(static_cast<unsigned>(X.dims[i]) - m[idx[i]]);
    }
    bool pure = true;
    for (std::size_t j = 0; j < m.size(); ++j) {
      bool is_gen = false;
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (idx[i] == j) is_gen = true;
      if (!is_gen && m[j] != 0) pure = false;
    }
    if (!pure) throw Error("point_pushforward: element has non-model variables");
    out += factor;
  }
  return out;
}

/// Ordinary-cohomology Gysin map for M x CP^k -> M: t^k -> 1, else 0.
inline GradedSeries cohomology_pushforward(const GradedSeries& f, VarId t, int k) {
  if (k < 0) return GradedSeries::zero(f.valid_order());
  auto slices = f.collect(t);
  int order = f.valid_order() >= GradedSeries::kExact ? GradedSeries::kExact
                                                      : f.valid_order() - k;
  auto it = slices.find(static_cast<unsigned>(k));
  if (it == slices.end()) return GradedSeries::zero(order);
  return it->second.truncated(order);
}

namespace detail {

/// Unit factors h_ij^{-1} with F(t_i, chi(t_j)) = (t_i - t_j) h_ij, computed
/// at the context's working order.
inline std::vector<std::vector<GradedSeries>> residue_units(
    const std::vector<VarId>& roots, const PushforwardContext& ctx) {
  const std::size_t n = roots.size();
  const int W = ctx.working_order;
  const FormalGroupLaw& F = *ctx.fgl;
  std::vector<GradedSeries> chi_of(n);
  for (std::size_t j = 0; j < n; ++j)
    chi_of[j] = F.neg(GradedSeries::variable(roots[j], W + 1));
  std::vector<std::vector<GradedSeries>> hinv(n, std::vector<GradedSeries>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      GradedSeries Fij = F.sum.substitute(fgl_u(), GradedSeries::variable(roots[i], W + 1))
                             .substitute(fgl_v(), chi_of[j])
                             .truncated(W + 1);
      GradedSeries h = Fij.exact_divide_linear(roots[i], roots[j]);
      hinv[i][j] = h.truncated(W).invert_unit(W);
    }
  return hinv;
}

}  // namespace detail

/// Projective-bundle pushforward by the residue formula
///   sum_i f(t_i) / prod_{j != i} F(t_i, chi(t_j)),
/// evaluated exactly: unit extraction h_ij, then the Newton
/// divided-difference recursion over the root variables. The result is
/// symmetric in the roots and exact to working_order - (n-1).
inline GradedSeries quillen_pushforward(const GradedSeries& f, VarId x,
                                        const std::vector<VarId>& roots,
                                        const PushforwardContext& ctx) {
  const std::size_t n = roots.size();
  if (n == 0) throw Error("quillen_pushforward: empty root list");
  const int W = ctx.working_order;
  if (n == 1) return f.substitute(x, GradedSeries::variable(roots[0])).truncated(W);
  auto hinv = detail::residue_units(roots, ctx);
  std::vector<GradedSeries> A(n);
  for (std::size_t i = 0; i < n; ++i) {
    GradedSeries gi =
        f.substitute(x, GradedSeries::variable(roots[i], W)).truncated(W);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) gi = (gi * hinv[i][j]).truncated(W);
    A[i] = gi;
  }
  // A[i] holds the divided difference over roots i..i+len after pass len
  for (std::size_t len = 1; len < n; ++len)
    for (std::size_t i = 0; i + len < n; ++i)
      A[i] = (A[i] - A[i + 1]).exact_divide_linear(roots[i], roots[i + len]);
  return A[0];
}

enum class GrassmannRoute { kAuto, kQuillen, kDuality, kSubsets };

/// Subset-residue pushforward for Gr_r of an n-root bundle:
///   sum_{|I|=r} f(t_I) / prod_{i in I, j not in I} F(t_i, chi(t_j)).
/// f must be symmetric in the slot variables. All terms are put over the
/// common denominator prod_{a<b} (t_a - t_b) and the division is performed
/// exactly, pair by pair.
inline GradedSeries grassmann_residue_sum(const GradedSeries& f,
                                          const std::vector<VarId>& slots,
                                          const std::vector<VarId>& roots,
                                          const PushforwardContext& ctx) {
  const std::size_t n = roots.size(), r = slots.size();
  if (r == 0 || r > n) throw Error("grassmann_residue_sum: bad slot count");
  const int W = ctx.working_order;
  if (!f.is_symmetric_in(slots))
    throw Error("grassmann_residue_sum: integrand not symmetric in the slots");
  auto hinv = detail::residue_units(roots, ctx);

  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  GradedSeries total = GradedSeries::zero(W);
  while (true) {
    std::vector<bool> in(n, false);
    for (std::size_t i : idx) in[i] = true;
    GradedSeries term = f;
    for (std::size_t a = 0; a < r; ++a)
      term = term.substitute(slots[a], GradedSeries::variable(roots[idx[a]], W));
    term = term.truncated(W);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (in[i] && !in[j]) term = (term * hinv[i][j]).truncated(W);
    int sign = 1;
    GradedSeries nonsep = GradedSeries::constant(CoeffPoly(1), W);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) {
        if (in[a] != in[b]) {
          if (in[b]) sign = -sign;
        } else {
          nonsep = (nonsep * (GradedSeries::variable(roots[a], W) -
                              GradedSeries::variable(roots[b], W)))
                       .truncated(W);
        }
      }
    GradedSeries piece = (term * nonsep).truncated(W);
    total = sign > 0 ? total + piece : total - piece;

    std::size_t i = r;
    bool done = true;
    while (i-- > 0) {
      if (idx[i] != i + n - r) {
        ++idx[i];
        for (std::size_t l = i + 1; l < r; ++l) idx[l] = idx[l - 1] + 1;
        done = false;
        break;
      }
    }
    if (done) break;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      total = total.exact_divide_linear(roots[a], roots[b]);
  return total;
}

/// Pushforward along Gr_r of an n-root bundle of an integrand f symmetric in
/// r slot variables. Core routes: r = 1 goes through the projective residue
/// formula; r = n-1 through the duality with the projectivization of the
/// dual (the slot symmetric functions become the quotient's ones, solved by
/// Whitney division, and the sum runs over the dual roots). Other r use the
/// subset-residue extension, which must agree with both core routes on
/// overlaps. All routes return a series in the given root variables.
inline GradedSeries grassmann_pushforward(const GradedSeries& f,
                                          const std::vector<VarId>& slots,
                                          const std::vector<VarId>& roots,
                                          const PushforwardContext& ctx,
                                          GrassmannRoute route = GrassmannRoute::kAuto) {
  const std::size_t n = roots.size(), r = slots.size();
  if (r == 0 || r > n) throw Error("grassmann_pushforward: bad slot count");
  const FormalGroupLaw& F = *ctx.fgl;
  const int W = ctx.working_order;
  if (route == GrassmannRoute::kAuto)
    route = r == 1 ? GrassmannRoute::kQuillen
                   : (r == n - 1 ? GrassmannRoute::kDuality : GrassmannRoute::kSubsets);

  if (route == GrassmannRoute::kQuillen) {
    if (r != 1) throw Error("grassmann_pushforward: quillen route requires r = 1");
    return quillen_pushforward(f, slots[0], roots, ctx);
  }
  if (route == GrassmannRoute::kSubsets) return grassmann_residue_sum(f, slots, roots, ctx);

  if (r != n - 1 || n < 2)
    throw Error("grassmann_pushforward: duality route requires r = n-1");
  // express f through the elementary symmetric functions of the slots
  std::vector<VarId> gevars;
  for (std::size_t k = 1; k <= r; ++k)
    gevars.push_back(var_id("$ge" + std::to_string(k), static_cast<int>(k)));
  GradedSeries frw = f.truncated(W).rewrite_in_elementary(slots, gevars);
  // over the projectivization of the dual: sigma_i are the dual roots, the
  // line lambda has c_1 = chi(x), and the slot values at a point are the
  // quotient's roots, so e_k(slots) becomes the Whitney quotient E_k(x)
  std::vector<VarId> sig;
  for (std::size_t i = 1; i <= n; ++i) sig.push_back(var_id("$d" + std::to_string(i)));
  VarId px = var_id("$dx");
  BundleSpec total;
  total.rank = static_cast<int>(n);
  for (VarId s : sig)
    total.roots.push_back(F.neg(GradedSeries::variable(s, W + 1)).truncated(W));
  GradedSeries chi_x = F.neg(GradedSeries::variable(px, W + 1)).truncated(W);
  BundleSpec quot = quotient_roots(total, {chi_x}, W);
  GradedSeries fx = frw;
  for (std::size_t k = 1; k <= r; ++k)
    fx = fx.substitute(gevars[k - 1], quot.elem[k - 1]);
  GradedSeries R = quillen_pushforward(fx.truncated(W), px, sig, ctx);
  for (std::size_t i = 0; i < n; ++i)
    R = R.substitute(sig[i], F.neg(GradedSeries::variable(roots[i], W + 1)).truncated(W));
  return R;
}

}  // namespace cobord
