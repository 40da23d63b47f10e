#pragma once

#include <map>
#include <string>
#include <vector>

#include "cobord/pushforward.hpp"
#include "cobord/space_model.hpp"

namespace cobord {

inline VarId fiber_var() { return var_id("$f"); }

inline std::function<GradedSeries(const GradedSeries&)> reducer_of(
    const SpaceModel* space) {
  if (!space) return {};
  return space->reducer();
}

/// Phi_r for r in [min_r, rank]: prod_i F(t, t_i) = sum_j t^j Phi_{n-j}, so
/// Phi_r is the coefficient of t^{n-r}. Negative r picks up the higher
/// fiber powers; those classes vanish under augmentation but not in
/// cobordism.
inline std::map<int, GradedSeries> phi_series(const FormalGroupLaw& F,
                                              const BundleSpec& xi,
                                              const SpaceModel* space, int min_r,
                                              int degree) {
  if (xi.virtual_quotient) throw Error("phi_series: bundle must have explicit roots");
  const int n = xi.rank;
  if (min_r > n) min_r = n;
  const int max_power = n - min_r;
  const int order = max_power + degree;
  GradedSeries E = euler_tensor(F, fiber_var(), xi.roots, order, reducer_of(space));
  auto slices = E.collect(fiber_var());
  std::map<int, GradedSeries> out;
  for (int r = min_r; r <= n; ++r) {
    auto it = slices.find(static_cast<unsigned>(n - r));
    out[r] = it == slices.end() ? GradedSeries::zero(degree)
                                : it->second.truncated(degree);
  }
  return out;
}

/// The classes Phi_0 .. Phi_n (indices outside [0, n] are taken as 0 in the
/// characteristic-class convention).
inline std::vector<GradedSeries> phi_classes(const FormalGroupLaw& F,
                                             const BundleSpec& xi,
                                             const SpaceModel* space, int degree) {
  auto m = phi_series(F, xi, space, 0, degree);
  std::vector<GradedSeries> out;
  for (int r = 0; r <= xi.rank; ++r) out.push_back(m[r]);
  return out;
}

enum class QRoute { kDirect, kViaPhi };

/// Q_r(xi) = p_! e^U(gamma* tensor p^* xi) over the trivial projectivization
/// with fiber CP^{n-r}; equivalently sum_k Phi_{r+k}(xi) [CP^k].
inline GradedSeries q_class(const FormalGroupLaw& F, int r, const BundleSpec& xi,
                            const SpaceModel* space, QRoute route, int degree,
                            int negative_floor = -2) {
  if (xi.virtual_quotient) throw Error("q_class: bundle must have explicit roots");
  const int n = xi.rank;
  if (r > n) return GradedSeries::zero(degree);
  if (r < negative_floor)
    throw Error("q_class: r = " + std::to_string(r) + " below configured floor " +
                std::to_string(negative_floor));
  const int k = n - r;
  GradedSeries res;
  if (route == QRoute::kDirect) {
    const int order = k + degree;
    GradedSeries E = euler_tensor(F, fiber_var(), xi.roots, order, reducer_of(space));
    res = trivial_proj_pushforward(E, fiber_var(), k);
  } else {
    auto phis = phi_series(F, xi, space, r, degree);
    res = GradedSeries::zero(degree);
    for (int j = 0; j <= k; ++j)
      res += phis[r + j].scaled(CoeffPoly::generator(static_cast<unsigned>(j)));
  }
  if (space) res = space->reduce(res);
  return res.truncated(degree);
}

/// Chern classes in cobordism: the elementary symmetric functions of the
/// roots (or the stored values for a virtual quotient).
inline GradedSeries chern_u(int r, const BundleSpec& xi, const SpaceModel* space,
                            int degree) {
  if (r < 0 || r > xi.rank) return GradedSeries::zero(degree);
  if (r == 0) return GradedSeries::constant(CoeffPoly(1), degree);
  GradedSeries e;
  if (xi.virtual_quotient) {
    e = xi.elem[static_cast<std::size_t>(r - 1)].truncated(degree);
  } else {
    e = bundle_chern(xi, degree)[static_cast<std::size_t>(r - 1)];
  }
  if (space) e = space->reduce(e);
  return e.truncated(degree);
}

inline GradedSeries euler_class(const BundleSpec& xi, const SpaceModel* space,
                                int degree) {
  return chern_u(xi.rank, xi, space, degree);
}

/// D_1(xi) = c_1^U(det xi) = g^{-1}(g(t_1) + ... + g(t_n)).
inline GradedSeries d1_class(const FormalGroupLaw& F, const BundleSpec& xi,
                             const SpaceModel* space, int degree) {
  if (xi.virtual_quotient) throw Error("d1_class: bundle must have explicit roots");
  GradedSeries d = formal_sum(F, xi.roots);
  if (space) d = space->reduce(d);
  return d.truncated(degree);
}

enum class PRoute { kAuto, kProjective, kDuality, kSubsets };

/// P_r(xi) = p_! e^U((gamma*)^{n-r+1}) over Gr_r(xi*). Core routes: r = 1
/// via P(xi*) and the residue formula; r = n-1 via the duality
/// Gr_{n-1}(xi*) = P(xi) with gamma* = p*xi / lambda; r = n is the Euler
/// class. Other r go through the subset-residue extension.
inline GradedSeries p_class(const FormalGroupLaw& F, int r, const BundleSpec& xi,
                            const SpaceModel* space, int degree,
                            PRoute route = PRoute::kAuto, int working_override = -1) {
  if (xi.virtual_quotient) throw Error("p_class: bundle must have explicit roots");
  const int n = xi.rank;
  if (r > n || r < 0) return GradedSeries::zero(degree);
  if (r == 0) return GradedSeries::constant(CoeffPoly(1), degree);
  if (r == n) return euler_class(xi, space, degree);
  GrassmannRoute gr = GrassmannRoute::kAuto;
  if (route == PRoute::kProjective) gr = GrassmannRoute::kQuillen;
  if (route == PRoute::kDuality) gr = GrassmannRoute::kDuality;
  if (route == PRoute::kSubsets) gr = GrassmannRoute::kSubsets;
  bool residue_core = gr == GrassmannRoute::kQuillen || gr == GrassmannRoute::kDuality ||
                      (gr == GrassmannRoute::kAuto && (r == 1 || r == n - 1));

  std::vector<VarId> sig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    sig[static_cast<std::size_t>(i)] = var_id("$p" + std::to_string(i + 1));
  std::vector<VarId> slots(static_cast<std::size_t>(r));
  for (int a = 0; a < r; ++a)
    slots[static_cast<std::size_t>(a)] = var_id("$s" + std::to_string(a + 1));

  PushforwardContext ctx =
      working_override >= 0 ? PushforwardContext::raw(F, working_override)
      : residue_core        ? PushforwardContext::projective(F, sig.size(), degree)
                            : PushforwardContext::grassmann(F, sig.size(), degree);
  const int W = ctx.working_order;
  GradedSeries prod = GradedSeries::constant(CoeffPoly(1), W);
  for (VarId sv : slots) prod = (prod * GradedSeries::variable(sv, W)).truncated(W);
  GradedSeries f = GradedSeries::constant(CoeffPoly(1), W);
  for (int i = 0; i < n - r + 1; ++i) f = (f * prod).truncated(W);
  GradedSeries R = grassmann_pushforward(f, slots, sig, ctx, gr);

  for (std::size_t i = 0; i < sig.size(); ++i)
    R = R.substitute(sig[i], xi.roots[i].truncated(W));
  if (space) R = space->reduce(R);
  return R.truncated(degree);
}

/// Generating-function inverse of the [CP^i] series:
/// (1 + sum b_i x^i)(1 + sum [M^i] x^i) = 1.
inline std::vector<CoeffPoly> m_series(std::size_t length) {
  std::vector<CoeffPoly> c(length + 1);
  for (std::size_t i = 0; i <= length; ++i) c[i] = CoeffPoly::generator(static_cast<unsigned>(i));
  return invert_unit_coeff_series(c, length);
}

/// Inverse transition Phi_r = sum_{i >= 0} Q_{r+i} [M^i] applied to a table
/// of Q classes (indices r..n present in the map).
inline GradedSeries phi_from_q(const std::map<int, GradedSeries>& q, int n, int r,
                               const std::vector<CoeffPoly>& m) {
  GradedSeries out;
  bool first = true;
  for (int i = 0; r + i <= n; ++i) {
    auto it = q.find(r + i);
    if (it == q.end()) throw Error("phi_from_q: missing Q_" + std::to_string(r + i));
    GradedSeries term = it->second.scaled(m.at(static_cast<std::size_t>(i)));
    out = first ? term : out + term;
    first = false;
  }
  return out;
}

struct SumFormulaReport {
  GradedSeries lhs;
  GradedSeries rhs;
  GradedSeries residual;
  bool equal = false;
};

/// Deformed Whitney sum formula:
/// Q_r(xi + eta) = sum_{i,j,k,l} Q_{l+i}(xi) Q_{r-l+k+j}(eta) [M^i][M^j][CP^k].
/// The sum is finite because Q vanishes above the rank; negative-index Q
/// classes do contribute.
inline SumFormulaReport verify_sum_formula(const FormalGroupLaw& F, const BundleSpec& xi,
                                           const BundleSpec& eta, const SpaceModel* space,
                                           int r, int degree) {
  const int n1 = xi.rank, n2 = eta.rank;
  const int floor = std::min(r - n2, r - n1) - 1;
  SumFormulaReport rep;
  rep.lhs = q_class(F, r, direct_sum(xi, eta), space, QRoute::kDirect, degree, floor);
  const std::size_t L = static_cast<std::size_t>(std::max(0, n1 + n2 - r));
  auto M = m_series(L);
  std::map<int, GradedSeries> qxi, qeta;
  auto get_q = [&](std::map<int, GradedSeries>& cache, const BundleSpec& b, int s) {
    auto it = cache.find(s);
    if (it == cache.end())
      it = cache.emplace(s, q_class(F, s, b, space, QRoute::kDirect, degree, floor))
               .first;
    return it->second;
  };
  GradedSeries rhs = GradedSeries::zero(degree);
  for (int l = r - n2; l <= n1; ++l) {
    for (int i = 0; i <= n1 - l; ++i) {
      for (int j = 0; j + r - l <= n2; ++j) {
        for (int k = 0; j + k + r - l <= n2; ++k) {
          GradedSeries term = (get_q(qxi, xi, l + i) * get_q(qeta, eta, r - l + k + j))
                                  .truncated(degree);
          CoeffPoly coeff = M.at(static_cast<std::size_t>(i)) *
                            M.at(static_cast<std::size_t>(j)) *
                            CoeffPoly::generator(static_cast<unsigned>(k));
          rhs += term.scaled(coeff);
        }
      }
    }
  }
  if (space) rhs = space->reduce(rhs);
  rep.rhs = rhs.truncated(degree);
  rep.residual = (rep.lhs - rep.rhs).truncated(degree);
  rep.equal = rep.residual.is_zero();
  return rep;
}

enum class ClassKind { kQ, kP, kPhi, kD, kChernU };

inline std::vector<VarId> chern_vars(int rank) {
  std::vector<VarId> c;
  for (int k = 1; k <= rank; ++k) c.push_back(var_id("c" + std::to_string(k), k));
  return c;
}

struct UniversalExpansion {
  GradedSeries in_roots;  // symmetric series in the formal roots
  GradedSeries in_chern;  // same class written in c_1^U..c_n^U
  int degree = 0;
};

/// Characteristic class of the universal rank-n bundle, expanded in Chern
/// classes: compute on formal roots, then rewrite in elementary symmetric
/// functions (read as c_k^U).
inline UniversalExpansion universal_expansion(const FormalGroupLaw& F, ClassKind kind,
                                              int r, int rank, int degree,
                                              PRoute proute = PRoute::kAuto) {
  BundleSpec xi = formal_bundle(rank, "t");
  GradedSeries s;
  switch (kind) {
    case ClassKind::kQ:
      s = q_class(F, r, xi, nullptr, QRoute::kDirect, degree, std::min(-2, r));
      break;
    case ClassKind::kP:
      s = p_class(F, r, xi, nullptr, degree, proute);
      break;
    case ClassKind::kPhi: {
      auto m = phi_series(F, xi, nullptr, std::min(r, rank), degree);
      s = r > rank ? GradedSeries::zero(degree) : m[r];
      break;
    }
    case ClassKind::kD:
      s = d1_class(F, xi, nullptr, degree);
      break;
    case ClassKind::kChernU:
      s = chern_u(r, xi, nullptr, degree);
      break;
  }
  UniversalExpansion out;
  out.degree = degree;
  out.in_roots = s.truncated(degree);
  out.in_chern = out.in_roots.rewrite_in_elementary(root_ids(xi), chern_vars(rank));
  return out;
}

/// P_r - Q_r for the universal rank-n bundle, in Chern classes.
inline UniversalExpansion universal_difference(const FormalGroupLaw& F, int r, int rank,
                                               int degree,
                                               PRoute proute = PRoute::kAuto) {
  auto q = universal_expansion(F, ClassKind::kQ, r, rank, degree);
  auto p = universal_expansion(F, ClassKind::kP, r, rank, degree, proute);
  UniversalExpansion out;
  out.degree = degree;
  out.in_roots = (p.in_roots - q.in_roots).truncated(degree);
  out.in_chern = (p.in_chern - q.in_chern).truncated(degree);
  return out;
}

}  // namespace cobord
