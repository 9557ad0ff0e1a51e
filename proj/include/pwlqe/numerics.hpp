#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>

namespace pwlqe {

/// Exact arbitrary-precision rational, always kept in canonical form
/// (positive denominator, numerator and denominator coprime).
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}
  Rational(long v) : v_(v) {}
  Rational(long num, long den);
  explicit Rational(mpq_class v);

  /// Accepts `n`, `-n`, `n/d` and `-n/d` with decimal digits.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const;
  std::string numerator_str() const;
  std::string denominator_str() const;

  /// Renders as `n`, `n/d` or `-n/d`.
  std::string to_string() const;

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return cmp(a.v_, b.v_) <=> 0;
  }

 private:
  mpq_class v_;
};

Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

/// An extended rational: a finite rational, +oo or -oo.
class ExtRat {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRat() = default;
  ExtRat(Rational r) : value_(std::move(r)) {}
  ExtRat(int v) : value_(v) {}
  ExtRat(long v) : value_(v) {}

  static ExtRat pos_inf() { return ExtRat(Kind::PosInf); }
  static ExtRat neg_inf() { return ExtRat(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// The finite value; only meaningful when is_finite().
  const Rational& value() const { return value_; }

  /// Renders finite values like Rational, infinities as `oo` / `-oo`.
  std::string to_string() const;

  friend bool operator==(const ExtRat& a, const ExtRat& b);
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  explicit ExtRat(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const ExtRat& r);

/// Extended addition. Throws UndefinedSum for oo + (-oo) in either order.
ExtRat ext_add(const ExtRat& a, const ExtRat& b);

/// Scaling by a finite rational; 0 times an infinity is 0.
ExtRat ext_scale(const Rational& q, const ExtRat& a);

/// Total order with -oo below every finite value and +oo above.
std::strong_ordering ext_cmp(const ExtRat& a, const ExtRat& b);

inline ExtRat operator+(const ExtRat& a, const ExtRat& b) { return ext_add(a, b); }

}  // namespace pwlqe
