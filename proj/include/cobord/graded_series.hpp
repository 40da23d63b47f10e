#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cobord/coeff_poly.hpp"
#include "cobord/variables.hpp"

namespace cobord {

// Monomial in the variables of a series: exponents aligned with the series'
// variable list.
using Mono = std::vector<std::uint32_t>;

/// Degree-truncated multivariate power series over CoeffPoly.
///
/// valid_order N means every term of total (weighted) degree <= N is exact;
/// no term of larger degree is stored. Exact polynomials (nilpotent ring
/// elements, elementary symmetric functions) carry the kExact sentinel.
class GradedSeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;

  GradedSeries() : valid_order_(kExact) {}

  static GradedSeries zero(int order = kExact) {
    GradedSeries s;
    s.valid_order_ = order;
    return s;
  }
  static GradedSeries constant(CoeffPoly c, int order = kExact) {
    GradedSeries s;
    s.valid_order_ = order;
    if (!c.is_zero()) s.terms_.emplace(Mono{}, std::move(c));
    return s;
  }
  static GradedSeries variable(VarId v, int order = kExact) {
    GradedSeries s;
    s.valid_order_ = order;
    s.vars_ = {v};
    if (order >= var_degree(v)) s.terms_.emplace(Mono{1}, CoeffPoly(1));
    return s;
  }

  const std::vector<VarId>& vars() const { return vars_; }
  int valid_order() const { return valid_order_; }
  const std::map<Mono, CoeffPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int weight(const Mono& m) const { return weight_of(vars_, m); }

  int max_stored_weight() const {
    int w = 0;
    for (const auto& [m, c] : terms_) w = std::max(w, weight(m));
    return w;
  }
  int min_stored_weight() const {
    if (terms_.empty()) return 0;
    int w = kExact;
    for (const auto& [m, c] : terms_) w = std::min(w, weight(m));
    return w;
  }

  GradedSeries truncated(int order) const {
    GradedSeries r;
    r.vars_ = vars_;
    r.valid_order_ = std::min(valid_order_, order);
    for (const auto& [m, c] : terms_)
      if (weight(m) <= order) r.terms_.emplace(m, c);
    return r;
  }
  /// Overrides the valid-order stamp. Used only where an algorithm's
  /// exactness guarantee is stronger than mechanical min-tracking.
  GradedSeries with_order(int order) const {
    GradedSeries r = truncated(order);
    r.valid_order_ = order;
    return r;
  }

  CoeffPoly constant_term() const {
    for (const auto& [m, c] : terms_)
      if (std::all_of(m.begin(), m.end(), [](std::uint32_t e) { return e == 0; }))
        return c;
    return CoeffPoly();
  }

  /// Coefficient of an explicit monomial (variables not mentioned get 0).
  CoeffPoly coefficient(const std::vector<std::pair<VarId, unsigned>>& mono) const {
    Mono key(vars_.size(), 0);
    for (const auto& [v, e] : mono) {
      auto it = std::find(vars_.begin(), vars_.end(), v);
      if (it == vars_.end()) {
        if (e != 0) return CoeffPoly();
        continue;
      }
      key[static_cast<std::size_t>(it - vars_.begin())] = e;
    }
    auto it = terms_.find(key);
    return it == terms_.end() ? CoeffPoly() : it->second;
  }

  GradedSeries homogeneous_part(int d) const {
    GradedSeries r;
    r.vars_ = vars_;
    r.valid_order_ = valid_order_;
    for (const auto& [m, c] : terms_)
      if (weight(m) == d) r.terms_.emplace(m, c);
    return r;
  }

  /// Complex degree of the class when homogeneous: monomial weight plus
  /// coefficient degree, constant across terms.
  std::optional<int> complex_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      auto cd = c.homogeneous_degree();
      if (!cd) return std::nullopt;
      int t = weight(m) + *cd;
      if (!d)
        d = t;
      else if (*d != t)
        return std::nullopt;
    }
    return d;
  }

  GradedSeries operator-() const {
    GradedSeries r;
    r.vars_ = vars_;
    r.valid_order_ = valid_order_;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }

  friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
    return combined(a, b, false);
  }
  friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
    return combined(a, b, true);
  }

  friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
    int order = std::min(a.valid_order_, b.valid_order_);
    auto [vars, ra, rb] = align(a, b);
    GradedSeries r;
    r.vars_ = vars;
    r.valid_order_ = order;
    // b's terms sorted by weight so the inner loop can stop early
    std::vector<std::pair<int, std::pair<Mono, const CoeffPoly*>>> bs;
    bs.reserve(b.terms_.size());
    for (const auto& [m, c] : b.terms_) {
      Mono k = remap(m, rb, vars.size());
      int w = weight_of(vars, k);
      bs.emplace_back(w, std::make_pair(std::move(k), &c));
    }
    std::sort(bs.begin(), bs.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [ma, ca] : a.terms_) {
      Mono mam = remap(ma, ra, vars.size());
      int wa = weight_of(vars, mam);
      if (wa > order) continue;
      for (const auto& [wb, tb] : bs) {
        if (wa + wb > order) break;
        Mono m = mam;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += tb.first[i];
        r.add_term(std::move(m), ca * *tb.second);
      }
    }
    return r;
  }

  GradedSeries& operator+=(const GradedSeries& o) { return *this = *this + o; }
  GradedSeries& operator-=(const GradedSeries& o) { return *this = *this - o; }
  GradedSeries& operator*=(const GradedSeries& o) { return *this = *this * o; }

  GradedSeries scaled(const CoeffPoly& c) const {
    GradedSeries r;
    r.vars_ = vars_;
    r.valid_order_ = valid_order_;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) {
      CoeffPoly p = v * c;
      if (!p.is_zero()) r.terms_.emplace(m, std::move(p));
    }
    return r;
  }
  GradedSeries scaled(const Rational& c) const { return scaled(CoeffPoly(c)); }

  /// Applies a ring map to every coefficient (e.g. the augmentation b_i -> 0).
  GradedSeries map_coeffs(const std::function<CoeffPoly(const CoeffPoly&)>& f) const {
    GradedSeries r;
    r.vars_ = vars_;
    r.valid_order_ = valid_order_;
    for (const auto& [m, c] : terms_) {
      CoeffPoly p = f(c);
      if (!p.is_zero()) r.terms_.emplace(m, std::move(p));
    }
    return r;
  }
  GradedSeries augmented() const {
    return map_coeffs([](const CoeffPoly& c) { return CoeffPoly(c.augment()); });
  }

  /// Splits by powers of v: power -> series in the remaining variables.
  /// The slice at power e is exact to valid_order - e*deg(v).
  std::map<unsigned, GradedSeries> collect(VarId v) const {
    std::map<unsigned, GradedSeries> out;
    auto it = std::find(vars_.begin(), vars_.end(), v);
    if (it == vars_.end()) {
      out.emplace(0u, *this);
      return out;
    }
    std::size_t idx = static_cast<std::size_t>(it - vars_.begin());
    std::vector<VarId> rest_vars = vars_;
    rest_vars.erase(rest_vars.begin() + static_cast<std::ptrdiff_t>(idx));
    int dv = var_degree(v);
    for (const auto& [m, c] : terms_) {
      unsigned e = m[idx];
      Mono rest = m;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
      auto [slot, inserted] = out.try_emplace(e);
      if (inserted) {
        slot->second.vars_ = rest_vars;
        slot->second.valid_order_ =
            valid_order_ >= kExact ? kExact : valid_order_ - static_cast<int>(e) * dv;
      }
      slot->second.add_term(std::move(rest), c);
    }
    if (out.empty()) {
      GradedSeries z;
      z.vars_ = rest_vars;
      z.valid_order_ = valid_order_;
      out.emplace(0u, std::move(z));
    }
    return out;
  }

  /// Composition f[v := g]. g must have zero constant term and minimum
  /// weight >= deg(v). The result is exact to min(valid_order, g.valid_order).
  GradedSeries substitute(VarId v, const GradedSeries& g) const {
    if (std::find(vars_.begin(), vars_.end(), v) == vars_.end()) return *this;
    if (!g.constant_term().is_zero())
      throw Error("substitute: series substituted for '" + var_name(v) +
                  "' has nonzero constant term");
    if (!g.is_zero() && g.min_stored_weight() < var_degree(v))
      throw Error("substitute: series substituted for '" + var_name(v) +
                  "' has weight below the variable degree");
    int order = std::min(valid_order_, g.valid_order_);
    auto slices = collect(v);
    unsigned max_e = slices.rbegin()->first;
    std::vector<GradedSeries> pows(max_e + 1);
    pows[0] = constant(CoeffPoly(1), order);
    for (unsigned e = 1; e <= max_e; ++e) pows[e] = (pows[e - 1] * g).truncated(order);
    GradedSeries r = zero(order);
    for (auto& [e, slice] : slices) r += slice.with_order(order) * pows[e];
    return r.with_order(order);
  }

  GradedSeries substitute_zero(VarId v) const { return substitute(v, zero()); }

  /// Exact quotient by (vi - vj). Requires the substitution vi -> vj to kill
  /// the series; reports the offending residue otherwise. Loses one order.
  GradedSeries exact_divide_linear(VarId vi, VarId vj) const {
    if (vi == vj) throw Error("exact_divide_linear: variables must differ");
    if (var_degree(vi) != 1 || var_degree(vj) != 1)
      throw Error("exact_divide_linear: variables must have degree 1");
    GradedSeries f = aligned_with({vi, vj});
    std::size_t i = f.index_of(vi), j = f.index_of(vj);
    {
      std::map<Mono, CoeffPoly> res;
      for (const auto& [m, c] : f.terms_) {
        Mono k = m;
        k[j] += k[i];
        k[i] = 0;
        auto rit = res.find(k);
        if (rit == res.end()) {
          res.emplace(std::move(k), c);
        } else {
          rit->second += c;
          if (rit->second.is_zero()) res.erase(rit);
        }
      }
      if (!res.empty()) {
        GradedSeries w;
        w.vars_ = f.vars_;
        w.valid_order_ = valid_order_;
        w.terms_.insert(*res.begin());
        throw Error("exact_divide_linear: not divisible by " + var_name(vi) + " - " +
                    var_name(vj) + "; residue term: " + w.str());
      }
    }
    GradedSeries q;
    q.vars_ = f.vars_;
    q.valid_order_ = valid_order_ >= kExact ? kExact : valid_order_ - 1;
    for (const auto& [m, c] : f.terms_) {
      std::uint32_t a = m[i];
      if (a == 0) continue;
      for (std::uint32_t p = 0; p < a; ++p) {
        Mono k = m;
        k[i] = p;
        k[j] = m[j] + (a - 1 - p);
        if (q.weight(k) <= q.valid_order_) q.add_term(std::move(k), c);
      }
    }
    return q;
  }

  /// Inverse of a series whose constant term is a nonzero rational.
  GradedSeries invert_unit(int order = -1) const {
    int n = order < 0 ? valid_order_ : std::min(order, valid_order_);
    if (n >= kExact)
      throw Error("invert_unit: unbounded order; pass an explicit truncation order");
    CoeffPoly c0 = constant_term();
    if (!c0.is_constant() || c0.is_zero())
      throw Error("invert_unit: constant term must be a nonzero rational");
    Rational rho = c0.augment();
    GradedSeries p = (scaled(rho.inverse()) - constant(CoeffPoly(1))).truncated(n);
    GradedSeries inv = constant(CoeffPoly(1), n);
    for (int k = 0; k < n; ++k) {
      GradedSeries next =
          (constant(CoeffPoly(1), n) - (p * inv).truncated(n)).with_order(n);
      if (next == inv) break;
      inv = std::move(next);
    }
    return inv.scaled(rho.inverse()).with_order(n);
  }

  /// Renames a variable (degrees must match).
  GradedSeries renamed(VarId from, VarId to) const {
    if (from == to) return *this;
    if (var_degree(from) != var_degree(to)) throw Error("renamed: degree mismatch");
    if (std::find(vars_.begin(), vars_.end(), from) == vars_.end()) return *this;
    GradedSeries f = aligned_with({to});
    std::size_t i = f.index_of(from), j = f.index_of(to);
    GradedSeries r;
    r.vars_ = f.vars_;
    r.vars_.erase(r.vars_.begin() + static_cast<std::ptrdiff_t>(i));
    r.valid_order_ = valid_order_;
    for (const auto& [m, c] : f.terms_) {
      Mono k = m;
      k[j] += k[i];
      k.erase(k.begin() + static_cast<std::ptrdiff_t>(i));
      r.add_term(std::move(k), c);
    }
    return r;
  }

  GradedSeries swapped(VarId a, VarId b) const {
    GradedSeries f = aligned_with({a, b});
    std::size_t i = f.index_of(a), j = f.index_of(b);
    GradedSeries r;
    r.vars_ = f.vars_;
    r.valid_order_ = valid_order_;
    for (const auto& [m, c] : f.terms_) {
      Mono k = m;
      std::swap(k[i], k[j]);
      r.terms_.emplace(std::move(k), c);
    }
    return r;
  }

  /// Symmetry under all transpositions of the listed variables; adjacent
  /// transpositions generate the full symmetric group. Returns a witness
  /// pair when the check fails.
  std::optional<std::pair<VarId, VarId>> symmetry_witness(
      const std::vector<VarId>& roots) const {
    for (std::size_t a = 0; a + 1 < roots.size(); ++a)
      if (!(swapped(roots[a], roots[a + 1]) == *this))
        return std::make_pair(roots[a], roots[a + 1]);
    return std::nullopt;
  }
  bool is_symmetric_in(const std::vector<VarId>& roots) const {
    return !symmetry_witness(roots).has_value();
  }

  static GradedSeries elementary_symmetric(unsigned k, const std::vector<VarId>& roots,
                                           int order = kExact) {
    GradedSeries r;
    r.vars_ = roots;
    r.valid_order_ = order;
    if (k > roots.size()) return r;
    if (k == 0) {
      r.terms_.emplace(Mono(roots.size(), 0), CoeffPoly(1));
      return r;
    }
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Mono m(roots.size(), 0);
      for (std::size_t i : idx) m[i] = 1;
      if (r.weight(m) <= order) r.terms_.emplace(std::move(m), CoeffPoly(1));
      std::size_t i = k;
      bool done = true;
      while (i-- > 0) {
        if (idx[i] != i + roots.size() - k) {
          ++idx[i];
          for (std::size_t l = i + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
          done = false;
          break;
        }
      }
      if (done) return r;
    }
  }

  /// Elementary symmetric functions e_0..e_n of a list of series values.
  static std::vector<GradedSeries> elementary_of_values(
      const std::vector<GradedSeries>& vals, int order) {
    std::vector<GradedSeries> e(vals.size() + 1);
    e[0] = constant(CoeffPoly(1), order);
    for (std::size_t i = 1; i <= vals.size(); ++i) e[i] = zero(order);
    for (const auto& v : vals)
      for (std::size_t k = vals.size(); k >= 1; --k)
        e[k] = (e[k] + e[k - 1] * v).truncated(order);
    return e;
  }

  /// Rewrites a series symmetric in the listed roots as a polynomial in the
  /// placeholder variables evars (deg evars[k-1] must be k). Variables other
  /// than the roots pass through untouched.
  GradedSeries rewrite_in_elementary(const std::vector<VarId>& roots,
                                     const std::vector<VarId>& evars) const {
    const std::size_t n = roots.size();
    if (evars.size() != n) throw Error("rewrite_in_elementary: need one e-var per root");
    for (std::size_t k = 0; k < n; ++k)
      if (var_degree(evars[k]) != static_cast<int>(k + 1))
        throw Error("rewrite_in_elementary: evars[" + std::to_string(k) +
                    "] must have degree " + std::to_string(k + 1));
    if (auto w = symmetry_witness(roots))
      throw Error("rewrite_in_elementary: input not symmetric; witness transposition (" +
                  var_name(w->first) + ", " + var_name(w->second) + ")");

    GradedSeries f = aligned_with(roots);
    std::vector<std::size_t> ridx(n);
    for (std::size_t k = 0; k < n; ++k) ridx[k] = f.index_of(roots[k]);
    std::vector<VarId> passive_vars;
    std::vector<std::size_t> pidx;
    for (std::size_t i = 0; i < f.vars_.size(); ++i)
      if (std::find(roots.begin(), roots.end(), f.vars_[i]) == roots.end()) {
        passive_vars.push_back(f.vars_[i]);
        pidx.push_back(i);
      }

    // group terms: passive monomial -> (root exponents -> coefficient)
    std::map<Mono, std::map<Mono, CoeffPoly>> groups;
    for (const auto& [m, c] : f.terms_) {
      Mono pm(pidx.size()), rm(n);
      for (std::size_t i = 0; i < pidx.size(); ++i) pm[i] = m[pidx[i]];
      for (std::size_t k = 0; k < n; ++k) rm[k] = m[ridx[k]];
      groups[std::move(pm)].emplace(std::move(rm), c);
    }

    std::vector<VarId> out_vars = passive_vars;
    out_vars.insert(out_vars.end(), evars.begin(), evars.end());
    GradedSeries out;
    out.vars_ = out_vars;
    out.valid_order_ = valid_order_;

    for (auto& [pm, group] : groups) {
      while (!group.empty()) {
        auto lead = std::max_element(
            group.begin(), group.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
        Mono lambda = lead->first;
        CoeffPoly c = lead->second;
        for (std::size_t k = 0; k + 1 < n; ++k)
          if (lambda[k] < lambda[k + 1])
            throw Error("rewrite_in_elementary: input not symmetric in the roots");
        std::vector<std::uint32_t> mu(n);
        for (std::size_t k = 0; k < n; ++k)
          mu[k] = lambda[k] - (k + 1 < n ? lambda[k + 1] : 0);
        GradedSeries prod = constant(CoeffPoly(1));
        for (std::size_t k = 0; k < n; ++k)
          for (std::uint32_t e = 0; e < mu[k]; ++e)
            prod *= elementary_symmetric(static_cast<unsigned>(k + 1), roots);
        // subtract c * prod from the group slice (prod is aligned with the
        // roots order after the first multiplication; constants have no vars)
        for (const auto& [m, pc] : prod.terms_) {
          Mono key(n, 0);
          for (std::size_t k = 0; k < n && k < m.size(); ++k) key[k] = m[k];
          auto it = group.find(key);
          CoeffPoly delta = c * pc;
          if (it == group.end()) {
            group.emplace(std::move(key), -delta);
          } else {
            it->second -= delta;
            if (it->second.is_zero()) group.erase(it);
          }
        }
        Mono om(out_vars.size(), 0);
        for (std::size_t i = 0; i < pm.size(); ++i) om[i] = pm[i];
        for (std::size_t k = 0; k < n; ++k) om[pm.size() + k] = mu[k];
        out.add_term(std::move(om), c);
      }
    }
    return out;
  }

  /// Back-substitution e_k -> e_k(roots); inverse of rewrite_in_elementary.
  GradedSeries expand_elementary(const std::vector<VarId>& evars,
                                 const std::vector<VarId>& roots) const {
    GradedSeries r = *this;
    for (std::size_t k = 0; k < evars.size(); ++k)
      r = r.substitute(evars[k],
                       elementary_symmetric(static_cast<unsigned>(k + 1), roots));
    return r;
  }

  /// Term equality (valid_order stamps are not compared).
  friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
    auto [vars, ra, rb] = align(a, b);
    std::map<Mono, CoeffPoly> ta, tb;
    for (const auto& [m, c] : a.terms_) ta.emplace(remap(m, ra, vars.size()), c);
    for (const auto& [m, c] : b.terms_) tb.emplace(remap(m, rb, vars.size()), c);
    return ta == tb;
  }
  friend bool operator!=(const GradedSeries& a, const GradedSeries& b) {
    return !(a == b);
  }

  friend bool equal_to_order(const GradedSeries& a, const GradedSeries& b, int order) {
    return a.truncated(order) == b.truncated(order);
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    auto ts = sorted_terms();
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : ts) {
      std::string vars;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += var_name(vars_[i]);
        if (m[i] > 1) vars += "^" + std::to_string(m[i]);
      }
      std::string piece;
      bool negative = false;
      if (vars.empty()) {
        piece = c.str();
        if (!piece.empty() && piece[0] == '-') {
          negative = true;
          piece = piece.substr(1);
        }
      } else if (c.terms().size() == 1) {
        const auto& [be, rc] = *c.terms().begin();
        negative = rc.sign() < 0;
        std::string cs = CoeffPoly::monomial(be, rc.abs()).str();
        piece = cs == "1" ? vars : cs + "*" + vars;
      } else {
        piece = "(" + c.str() + ")*" + vars;
      }
      if (first) {
        if (negative) os << "-";
        first = false;
      } else {
        os << (negative ? " - " : " + ");
      }
      os << piece;
    }
    return os.str();
  }

  /// Canonically ordered view of the terms (graded-lex, later-declared
  /// variables more significant, ascending).
  std::vector<std::pair<Mono, CoeffPoly>> sorted_terms() const {
    std::vector<std::pair<Mono, CoeffPoly>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [this](const auto& x, const auto& y) {
      int wx = weight(x.first), wy = weight(y.first);
      if (wx != wy) return wx < wy;
      for (std::size_t i = x.first.size(); i-- > 0;)
        if (x.first[i] != y.first[i]) return x.first[i] < y.first[i];
      return false;
    });
    return ts;
  }

  /// Ensures the listed variables appear in this series' variable list.
  GradedSeries aligned_with(const std::vector<VarId>& extra) const {
    GradedSeries r = *this;
    for (VarId v : extra)
      if (std::find(r.vars_.begin(), r.vars_.end(), v) == r.vars_.end()) {
        r.vars_.push_back(v);
        std::map<Mono, CoeffPoly> nt;
        for (auto& [m, c] : r.terms_) {
          Mono k = m;
          k.push_back(0);
          nt.emplace(std::move(k), c);
        }
        r.terms_ = std::move(nt);
      }
    return r;
  }

  void add_term(Mono m, const CoeffPoly& c) {
    if (c.is_zero()) return;
    assert(m.size() == vars_.size());
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::size_t index_of(VarId v) const {
    auto it = std::find(vars_.begin(), vars_.end(), v);
    assert(it != vars_.end());
    return static_cast<std::size_t>(it - vars_.begin());
  }

 private:
  static std::tuple<std::vector<VarId>, std::vector<std::size_t>,
                    std::vector<std::size_t>>
  align(const GradedSeries& a, const GradedSeries& b) {
    std::vector<VarId> vars = a.vars_;
    for (VarId v : b.vars_)
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    auto pos = [&vars](VarId v) {
      return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) -
                                      vars.begin());
    };
    std::vector<std::size_t> ra(a.vars_.size()), rb(b.vars_.size());
    for (std::size_t i = 0; i < a.vars_.size(); ++i) ra[i] = pos(a.vars_[i]);
    for (std::size_t i = 0; i < b.vars_.size(); ++i) rb[i] = pos(b.vars_[i]);
    return {vars, ra, rb};
  }

  static Mono remap(const Mono& m, const std::vector<std::size_t>& r, std::size_t n) {
    Mono k(n, 0);
    for (std::size_t i = 0; i < m.size(); ++i) k[r[i]] = m[i];
    return k;
  }

  static int weight_of(const std::vector<VarId>& vars, const Mono& m) {
    int w = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      w += static_cast<int>(m[i]) * var_degree(vars[i]);
    return w;
  }

  static GradedSeries combined(const GradedSeries& a, const GradedSeries& b, bool sub) {
    auto [vars, ra, rb] = align(a, b);
    GradedSeries r;
    r.vars_ = vars;
    r.valid_order_ = std::min(a.valid_order_, b.valid_order_);
    for (const auto& [m, c] : a.terms_) {
      Mono k = remap(m, ra, vars.size());
      if (weight_of(vars, k) <= r.valid_order_) r.add_term(std::move(k), c);
    }
    for (const auto& [m, c] : b.terms_) {
      Mono k = remap(m, rb, vars.size());
      if (weight_of(vars, k) <= r.valid_order_) r.add_term(std::move(k), sub ? -c : c);
    }
    return r;
  }

  std::vector<VarId> vars_;
  std::map<Mono, CoeffPoly> terms_;
  int valid_order_;
};

inline GradedSeries var_series(const std::string& name, int degree = 1) {
  return GradedSeries::variable(var_id(name, degree));
}

}  // namespace cobord
