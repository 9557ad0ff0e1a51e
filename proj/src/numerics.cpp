#include "pwlqe/numerics.hpp"

#include <cctype>
#include <stdexcept>

#include "pwlqe/errors.hpp"

namespace pwlqe {

namespace {

long checked_den(long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return den;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, checked_den(den)) { v_.canonicalize(); }

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto digits_ok = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!digits_ok(num) || (slash != std::string_view::npos && !digits_ok(den)))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");

  mpq_class q;
  q.get_num() = mpz_class(std::string(num), 10);
  q.get_den() = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
  if (text.front() == '-') q.get_num() = -q.get_num();
  return Rational(std::move(q));
}

bool Rational::is_integer() const { return v_.get_den() == 1; }

std::string Rational::numerator_str() const { return v_.get_num().get_str(); }

std::string Rational::denominator_str() const { return v_.get_den().get_str(); }

std::string Rational::to_string() const {
  if (is_integer()) return numerator_str();
  return numerator_str() + "/" + denominator_str();
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

std::string ExtRat::to_string() const {
  switch (kind_) {
    case Kind::NegInf:
      return "-oo";
    case Kind::PosInf:
      return "oo";
    case Kind::Finite:
      break;
  }
  return value_.to_string();
}

bool operator==(const ExtRat& a, const ExtRat& b) { return ext_cmp(a, b) == 0; }

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) { return ext_cmp(a, b); }

std::ostream& operator<<(std::ostream& os, const ExtRat& r) { return os << r.to_string(); }

ExtRat ext_add(const ExtRat& a, const ExtRat& b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) throw UndefinedSum();
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtRat::pos_inf();
  if (a.is_neg_inf() || b.is_neg_inf()) return ExtRat::neg_inf();
  return ExtRat(a.value() + b.value());
}

ExtRat ext_scale(const Rational& q, const ExtRat& a) {
  if (q.is_zero()) return ExtRat(0);
  if (a.is_finite()) return ExtRat(q * a.value());
  bool positive = a.is_pos_inf() == (q.sign() > 0);
  return positive ? ExtRat::pos_inf() : ExtRat::neg_inf();
}

std::strong_ordering ext_cmp(const ExtRat& a, const ExtRat& b) {
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) <=> static_cast<int>(b.kind());
  if (!a.is_finite()) return std::strong_ordering::equal;
  return a.value() <=> b.value();
}

}  // namespace pwlqe
