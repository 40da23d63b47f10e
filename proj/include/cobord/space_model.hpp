#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cobord/formal_group.hpp"
#include "cobord/graded_series.hpp"

namespace cobord {

/// Truncated model of U*(CP^{m_1} x ... x CP^{m_k}): a free coefficient
/// module on the monomials u^a with a_i <= m_i.
struct SpaceModel {
  std::vector<VarId> gens;
  std::vector<int> dims;

  int total_dim() const {
    int d = 0;
    for (int m : dims) d += m;
    return d;
  }
  bool is_point() const { return gens.empty(); }

  /// Deletes every monomial containing u_i^{> m_i}. Idempotent.
  GradedSeries reduce(const GradedSeries& s) const {
    GradedSeries a = s.aligned_with(gens);
    std::vector<std::size_t> idx(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) idx[i] = a.index_of(gens[i]);
    GradedSeries out = GradedSeries::zero(s.valid_order()).aligned_with(a.vars());
    for (const auto& [m, c] : a.terms()) {
      bool dead = false;
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (m[idx[i]] > static_cast<std::uint32_t>(dims[i])) {
          dead = true;
          break;
        }
      if (!dead) out.add_term(m, c);
    }
    return out;
  }

  std::function<GradedSeries(const GradedSeries&)> reducer() const {
    return [m = *this](const GradedSeries& s) { return m.reduce(s); };
  }

  /// A model with one extra nilpotent factor (used for fiber variables).
  SpaceModel with_factor(VarId v, int dim) const {
    SpaceModel m = *this;
    m.gens.push_back(v);
    m.dims.push_back(dim);
    return m;
  }

  std::string str() const {
    if (gens.empty()) return "pt";
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (i) s += "x";
      s += "CP" + std::to_string(dims[i]);
    }
    return s;
  }
};

/// Model of a product of projective spaces; a single factor uses the
/// generator name "u", several factors use "u1", "u2", ...
inline SpaceModel projective_product(const std::vector<int>& dims,
                                     const std::string& prefix = "u") {
  SpaceModel m;
  m.dims = dims;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 0) throw Error("projective_product: negative dimension");
    std::string name = dims.size() == 1 ? prefix : prefix + std::to_string(i + 1);
    m.gens.push_back(var_id(name));
  }
  return m;
}

/// A rank-n bundle described by n Chern-root expressions (zero-augmentation
/// ring elements of a space model, or formal root variables). A virtual
/// quotient carries its elementary symmetric functions instead of individual
/// roots.
struct BundleSpec {
  int rank = 0;
  std::vector<GradedSeries> roots;
  bool virtual_quotient = false;
  std::vector<GradedSeries> elem;  // e_1..e_rank when virtual
  std::string label;
};

inline BundleSpec formal_bundle(int rank, const std::string& prefix = "t") {
  if (rank < 0) throw Error("formal_bundle: negative rank");
  BundleSpec b;
  b.rank = rank;
  for (int i = 1; i <= rank; ++i)
    b.roots.push_back(var_series(prefix + std::to_string(i)));
  b.label = "formal rank " + std::to_string(rank);
  return b;
}

inline std::vector<VarId> root_ids(const BundleSpec& b) {
  std::vector<VarId> ids;
  for (const auto& r : b.roots) {
    if (r.terms().size() != 1) throw Error("root_ids: roots are not plain variables");
    const auto& [m, c] = *r.terms().begin();
    if (!c.is_one()) throw Error("root_ids: roots are not plain variables");
    std::size_t count = 0, pos = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) {
        if (m[i] != 1) throw Error("root_ids: roots are not plain variables");
        ++count;
        pos = i;
      }
    if (count != 1) throw Error("root_ids: roots are not plain variables");
    ids.push_back(r.vars()[pos]);
  }
  return ids;
}

/// O(a) on one factor of a product of projective spaces: the root is the
/// a-fold formal sum of the generator, via chi for a < 0.
inline BundleSpec line_bundle(const FormalGroupLaw& F, const SpaceModel& X,
                              std::size_t factor, int twist) {
  if (factor >= X.gens.size()) throw Error("line_bundle: bad factor index");
  BundleSpec b;
  b.rank = 1;
  GradedSeries u = GradedSeries::variable(X.gens[factor]);
  b.roots.push_back(X.reduce(formal_multiple(F, u, twist)));
  b.label = "O(" + std::to_string(twist) + ")";
  return b;
}

/// Line bundle O(a_1, ..., a_k) on a product: formal sum of the per-factor
/// twists.
inline BundleSpec line_bundle_multi(const FormalGroupLaw& F, const SpaceModel& X,
                                    const std::vector<int>& twists) {
  if (twists.size() != X.gens.size())
    throw Error("line_bundle_multi: need one twist per factor");
  std::vector<GradedSeries> parts;
  for (std::size_t i = 0; i < twists.size(); ++i)
    parts.push_back(
        X.reduce(formal_multiple(F, GradedSeries::variable(X.gens[i]), twists[i])));
  BundleSpec b;
  b.rank = 1;
  b.roots.push_back(X.reduce(formal_sum(F, parts)));
  return b;
}

inline BundleSpec direct_sum(const BundleSpec& a, const BundleSpec& b) {
  if (a.virtual_quotient || b.virtual_quotient)
    throw Error("direct_sum: virtual quotients not supported");
  BundleSpec s;
  s.rank = a.rank + b.rank;
  s.roots = a.roots;
  s.roots.insert(s.roots.end(), b.roots.begin(), b.roots.end());
  s.label = a.label.empty() || b.label.empty() ? "" : a.label + "+" + b.label;
  return s;
}

/// Chern classes e_1..e_rank of a bundle as ring elements.
inline std::vector<GradedSeries> bundle_chern(const BundleSpec& b, int order) {
  if (b.virtual_quotient) {
    std::vector<GradedSeries> e = b.elem;
    for (auto& s : e) s = s.truncated(order);
    return e;
  }
  auto e = GradedSeries::elementary_of_values(b.roots, order);
  return std::vector<GradedSeries>(e.begin() + 1, e.end());
}

/// Roots of the quotient total/sub. When the sub-roots match a sublist of
/// the total's roots the complement is returned; otherwise the quotient is
/// virtual and described by its elementary symmetric functions, solved from
/// e_k(sub)·e(quotient) = e_k(total) (Whitney).
inline BundleSpec quotient_roots(const BundleSpec& total,
                                 const std::vector<GradedSeries>& sub, int order) {
  if (total.virtual_quotient) throw Error("quotient_roots: total must have roots");
  if (sub.size() > total.roots.size())
    throw Error("quotient_roots: sub rank exceeds total rank");
  // complement case: each sub root matches a distinct total root
  {
    std::vector<bool> used(total.roots.size(), false);
    bool all = true;
    for (const auto& s : sub) {
      bool found = false;
      for (std::size_t i = 0; i < total.roots.size(); ++i)
        if (!used[i] && total.roots[i] == s) {
          used[i] = true;
          found = true;
          break;
        }
      if (!found) {
        all = false;
        break;
      }
    }
    if (all) {
      BundleSpec q;
      q.rank = static_cast<int>(total.roots.size() - sub.size());
      for (std::size_t i = 0; i < total.roots.size(); ++i)
        if (!used[i]) q.roots.push_back(total.roots[i]);
      return q;
    }
  }
  const std::size_t n = total.roots.size(), s = sub.size();
  const std::size_t q_rank = n - s;
  auto e_total = GradedSeries::elementary_of_values(total.roots, order);
  auto e_sub = GradedSeries::elementary_of_values(sub, order);
  std::vector<GradedSeries> E(q_rank + 1);
  E[0] = GradedSeries::constant(CoeffPoly(1), order);
  for (std::size_t k = 1; k <= q_rank; ++k) {
    GradedSeries acc = e_total[k];
    for (std::size_t i = 1; i <= std::min(k, s); ++i)
      acc = acc - (e_sub[i] * E[k - i]).truncated(order);
    E[k] = acc.truncated(order);
  }
  BundleSpec q;
  q.rank = static_cast<int>(q_rank);
  q.virtual_quotient = true;
  q.elem.assign(E.begin() + 1, E.end());
  return q;
}

/// Grammar: `O(a)` or `O(a_1,...,a_k)` terms joined by `+`, then
/// `@CP{m}[xCP{m'}...]`, e.g. "O(1)+O(1)@CP2".
inline std::pair<SpaceModel, BundleSpec> parse_bundle(const std::string& text,
                                                      const FormalGroupLaw& F) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto at = s.find('@');
  if (at == std::string::npos) throw ParseError("bundle: missing '@CP...' part");
  std::string bundle_part = s.substr(0, at), space_part = s.substr(at + 1);

  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos < space_part.size()) {
    if (space_part.compare(pos, 2, "CP") != 0)
      throw ParseError("bundle: expected CP<m> in '" + space_part + "'");
    pos += 2;
    std::size_t end = pos;
    while (end < space_part.size() &&
           std::isdigit(static_cast<unsigned char>(space_part[end])))
      ++end;
    if (end == pos) throw ParseError("bundle: missing dimension after CP");
    dims.push_back(std::stoi(space_part.substr(pos, end - pos)));
    pos = end;
    if (pos < space_part.size()) {
      if (space_part[pos] != 'x') throw ParseError("bundle: expected 'x' between factors");
      ++pos;
    }
  }
  SpaceModel X = projective_product(dims);

  BundleSpec b;
  b.rank = 0;
  b.label = bundle_part;
  if (bundle_part.empty()) throw ParseError("bundle: empty bundle description");
  std::size_t start = 0;
  while (start <= bundle_part.size()) {
    auto plus = bundle_part.find('+', start);
    std::string term = bundle_part.substr(
        start, plus == std::string::npos ? std::string::npos : plus - start);
    if (term.size() < 4 || term.compare(0, 2, "O(") != 0 || term.back() != ')')
      throw ParseError("bundle: bad term '" + term + "'");
    std::string inner = term.substr(2, term.size() - 3);
    std::vector<int> twists;
    std::size_t tp = 0;
    while (tp <= inner.size()) {
      auto comma = inner.find(',', tp);
      std::string num =
          inner.substr(tp, comma == std::string::npos ? std::string::npos : comma - tp);
      try {
        std::size_t used = 0;
        twists.push_back(std::stoi(num, &used));
        if (used != num.size()) throw std::invalid_argument(num);
      } catch (const std::exception&) {
        throw ParseError("bundle: bad twist '" + num + "'");
      }
      if (comma == std::string::npos) break;
      tp = comma + 1;
    }
    BundleSpec line;
    if (twists.size() == 1 && dims.size() == 1)
      line = line_bundle(F, X, 0, twists[0]);
    else if (twists.size() == dims.size())
      line = line_bundle_multi(F, X, twists);
    else
      throw ParseError("bundle: O(...) needs one twist per CP factor");
    b.rank += 1;
    b.roots.push_back(line.roots[0]);
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  b.label = bundle_part + "@" + X.str();
  return {X, b};
}

}  // namespace cobord
