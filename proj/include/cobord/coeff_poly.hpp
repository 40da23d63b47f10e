#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cobord/rational.hpp"

namespace cobord {

// Exponent vector over the coefficient-ring generators b_1, b_2, ...;
// entry i holds the exponent of b_{i+1}. No trailing zeros are stored.
using BExps = std::vector<std::uint32_t>;

inline void trim_bexps(BExps& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

/// Sparse polynomial over Q in the generators b_i = [CP^i].
/// Complex-degree convention: deg b_i = -i, so every monomial has
/// non-positive degree. Zero coefficients are never stored.
class CoeffPoly {
 public:
  CoeffPoly() = default;
  CoeffPoly(Rational c) {
    if (!c.is_zero()) terms_.emplace(BExps{}, std::move(c));
  }
  CoeffPoly(long n) : CoeffPoly(Rational(n)) {}

  /// The monomial b_i. generator(0) is the unit.
  static CoeffPoly generator(unsigned i) {
    if (i == 0) return CoeffPoly(1);
    CoeffPoly p;
    BExps e(i, 0);
    e[i - 1] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
  }

  static CoeffPoly monomial(BExps e, Rational c) {
    CoeffPoly p;
    trim_bexps(e);
    if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() &&
           terms_.begin()->second.is_one();
  }

  /// Constant term; equivalently the image under b_i -> 0.
  Rational augment() const {
    auto it = terms_.find(BExps{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  static int monomial_degree(const BExps& e) {
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i) d -= static_cast<int>((i + 1) * e[i]);
    return d;
  }

  /// Complex degree when homogeneous (zero polynomial reports degree 0).
  std::optional<int> homogeneous_degree() const {
    std::optional<int> d;
    for (const auto& [e, c] : terms_) {
      int m = monomial_degree(e);
      if (!d)
        d = m;
      else if (*d != m)
        return std::nullopt;
    }
    return d ? d : std::optional<int>(0);
  }
  bool is_homogeneous() const { return homogeneous_degree().has_value(); }

  /// Lowest complex degree present, i.e. min over monomials (most negative).
  int min_degree() const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      int m = monomial_degree(e);
      if (first || m < d) d = m;
      first = false;
    }
    return d;
  }

  unsigned max_generator() const {
    std::size_t g = 0;
    for (const auto& [e, c] : terms_) g = std::max(g, e.size());
    return static_cast<unsigned>(g);
  }

  CoeffPoly& operator+=(const CoeffPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  CoeffPoly& operator-=(const CoeffPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
  friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
  CoeffPoly operator-() const {
    CoeffPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
    CoeffPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        BExps e(std::max(ea.size(), eb.size()), 0);
        for (std::size_t i = 0; i < ea.size(); ++i) e[i] += ea[i];
        for (std::size_t i = 0; i < eb.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  CoeffPoly& operator*=(const CoeffPoly& o) { return *this = *this * o; }

  CoeffPoly& scale(const Rational& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
  }
  friend CoeffPoly operator*(CoeffPoly a, const Rational& c) { return a.scale(c); }
  friend CoeffPoly operator*(const Rational& c, CoeffPoly a) { return a.scale(c); }

  CoeffPoly pow(unsigned k) const {
    CoeffPoly r(1);
    for (unsigned i = 0; i < k; ++i) r *= *this;
    return r;
  }

  /// Ring map determined by b_i -> img(i); rational coefficients pass through.
  CoeffPoly map_generators(const std::function<CoeffPoly(unsigned)>& img) const {
    CoeffPoly r;
    for (const auto& [e, c] : terms_) {
      CoeffPoly m(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) m *= img(static_cast<unsigned>(i + 1));
      r += m;
    }
    return r;
  }

  const std::map<BExps, Rational>& terms() const { return terms_; }

  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const CoeffPoly& a, const CoeffPoly& b) { return !(a == b); }

  /// Canonical monomial order: by |complex degree| ascending, then
  /// lexicographically with higher generators more significant.
  static bool mono_less(const BExps& a, const BExps& b) {
    int da = -monomial_degree(a), db = -monomial_degree(b);
    if (da != db) return da < db;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = n; i-- > 0;) {
      std::uint32_t xa = i < a.size() ? a[i] : 0;
      std::uint32_t xb = i < b.size() ? b[i] : 0;
      if (xa != xb) return xa < xb;
    }
    return false;
  }

  std::vector<const std::pair<const BExps, Rational>*> sorted_terms() const {
    std::vector<const std::pair<const BExps, Rational>*> v;
    v.reserve(terms_.size());
    for (const auto& t : terms_) v.push_back(&t);
    std::sort(v.begin(), v.end(),
              [](auto* x, auto* y) { return mono_less(x->first, y->first); });
    return v;
  }

  std::string str(const std::string& sym = "b") const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto* t : sorted_terms()) {
      const auto& [e, c] = *t;
      if (!first) os << (c.sign() < 0 ? " - " : " + ");
      else if (c.sign() < 0) os << "-";
      first = false;
      Rational a = c.abs();
      std::string vars;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += sym + std::to_string(i + 1);
        if (e[i] > 1) vars += "^" + std::to_string(e[i]);
      }
      if (vars.empty())
        os << a.str();
      else if (a.is_one())
        os << vars;
      else
        os << a.str() << "*" << vars;
    }
    return os.str();
  }

 private:
  void add_term(const BExps& e, Rational c) {
    if (c.is_zero()) return;
    BExps key = e;
    trim_bexps(key);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<BExps, Rational> terms_;
};

/// Multiplicative inverse of a power series with CoeffPoly coefficients and
/// constant term 1: returns m_0..m_order with (sum c_i x^i)(sum m_j x^j) = 1
/// mod x^{order+1}.
inline std::vector<CoeffPoly> invert_unit_coeff_series(const std::vector<CoeffPoly>& c,
                                                       std::size_t order) {
  if (c.empty() || !c[0].is_one())
    throw Error("invert_unit_coeff_series: constant term must be 1");
  std::vector<CoeffPoly> m(order + 1);
  m[0] = CoeffPoly(1);
  for (std::size_t k = 1; k <= order; ++k) {
    CoeffPoly acc;
    for (std::size_t i = 1; i <= k && i < c.size(); ++i) acc += c[i] * m[k - i];
    m[k] = -acc;
  }
  return m;
}

}  // namespace cobord
