#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cobord {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

/// Exact rational number. The denominator is always positive and the
/// fraction is kept in lowest terms.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}
  Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw Error("Rational: zero denominator");
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw Error("Rational: zero denominator");
    q_.canonicalize();
  }

  /// Parses "3", "-3", "3/2", "-3/2".
  static Rational parse(const std::string& text) {
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("Rational: empty string");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    bool seen_slash = false, digits = false;
    for (; i < s.size(); ++i) {
      if (s[i] == '/' && !seen_slash && digits) {
        seen_slash = true;
        digits = false;
      } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        digits = true;
      } else {
        throw ParseError("Rational: bad character in '" + text + "'");
      }
    }
    if (!digits) throw ParseError("Rational: malformed '" + text + "'");
    mpq_class q(s, 10);
    if (q.get_den() == 0) throw ParseError("Rational: zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Rational& operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational inverse() const {
    if (is_zero()) throw Error("Rational: inverse of zero");
    return Rational(mpq_class(1 / q_));
  }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }
  std::string num_str() const { return q_.get_num().get_str(); }
  std::string den_str() const { return q_.get_den().get_str(); }

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

}  // namespace cobord
