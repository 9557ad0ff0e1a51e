#pragma once

#include <compare>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pwlqe/numerics.hpp"

namespace pwlqe {

using Var = std::string;
using Valuation = std::map<Var, Rational>;

bool is_valid_var(std::string_view name);

/// q0 + sum qi*xi with no stored zero coefficient.
class LinExpr {
 public:
  LinExpr() = default;
  LinExpr(Rational constant) : constant_(std::move(constant)) {}
  LinExpr(int constant) : constant_(constant) {}

  static LinExpr var(const Var& x, Rational coeff = 1);

  const Rational& constant() const { return constant_; }
  const std::map<Var, Rational>& coeffs() const { return coeffs_; }

  /// Coefficient of x, zero if absent.
  Rational coeff(const Var& x) const;
  bool mentions(const Var& x) const { return coeffs_.count(x) != 0; }
  bool is_constant() const { return coeffs_.empty(); }
  std::set<Var> vars() const;

  /// The expression with the x term dropped.
  LinExpr without(const Var& x) const;

  void add_term(const Var& x, const Rational& c);
  void add_constant(const Rational& c) { constant_ += c; }

  LinExpr operator-() const;
  LinExpr& operator+=(const LinExpr& o);
  LinExpr& operator-=(const LinExpr& o);
  LinExpr& operator*=(const Rational& q);

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(const Rational& q, LinExpr a) { return a *= q; }

  friend bool operator==(const LinExpr&, const LinExpr&) = default;
  friend std::strong_ordering operator<=>(const LinExpr& a, const LinExpr& b);

 private:
  Rational constant_;
  std::map<Var, Rational> coeffs_;
};

/// A linear expression or one of the constants oo and -oo.
class ExtLinExpr {
 public:
  enum class Kind { NegInf, Fin, PosInf };

  ExtLinExpr() = default;
  ExtLinExpr(LinExpr e) : lin_(std::move(e)) {}
  ExtLinExpr(int c) : lin_(c) {}

  static ExtLinExpr pos_inf() { return ExtLinExpr(Kind::PosInf); }
  static ExtLinExpr neg_inf() { return ExtLinExpr(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Fin; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Only meaningful when is_finite().
  const LinExpr& lin() const { return lin_; }

  bool mentions(const Var& x) const { return is_finite() && lin_.mentions(x); }
  Rational coeff(const Var& x) const { return is_finite() ? lin_.coeff(x) : Rational(0); }
  bool is_constant() const { return !is_finite() || lin_.is_constant(); }

  /// Negation, mapping oo to -oo and back.
  ExtLinExpr negated() const;

  friend bool operator==(const ExtLinExpr&, const ExtLinExpr&) = default;
  friend std::strong_ordering operator<=>(const ExtLinExpr& a, const ExtLinExpr& b);

 private:
  explicit ExtLinExpr(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Fin;
  LinExpr lin_;
};

enum class Rel { Lt, Le, Gt, Ge };

/// The relation obtained by swapping the two sides (< becomes >).
Rel flip(Rel r);
/// The relation of the negated atom (< becomes >=).
Rel complement(Rel r);
bool is_strict(Rel r);
const char* rel_symbol(Rel r);

struct Atom {
  ExtLinExpr lhs;
  Rel rel = Rel::Lt;
  ExtLinExpr rhs;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);
};

/// Immutable Boolean expression tree with shared subterms.
class BoolExpr {
 public:
  enum class Kind { True, False, Atom, Not, And, Or };

  BoolExpr();  // true

  static BoolExpr truth(bool value);
  static BoolExpr atom(Atom a);
  static BoolExpr negation_raw(BoolExpr e);
  static BoolExpr and_raw(std::vector<BoolExpr> children);
  static BoolExpr or_raw(std::vector<BoolExpr> children);

  Kind kind() const;
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  const Atom& as_atom() const;
  const std::vector<BoolExpr>& children() const;

  friend bool operator==(const BoolExpr& a, const BoolExpr& b);

 private:
  struct Node;
  explicit BoolExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Simplifying constructors: flatten nested nodes, drop neutral elements,
/// short-circuit on absorbing ones. Atoms are kept as given.
BoolExpr make_and(std::vector<BoolExpr> children);
BoolExpr make_and(BoolExpr a, BoolExpr b);
BoolExpr make_or(std::vector<BoolExpr> children);
BoolExpr make_or(BoolExpr a, BoolExpr b);
BoolExpr make_not(BoolExpr e);

struct GuardedTerm {
  BoolExpr guard;
  ExtLinExpr value;

  friend bool operator==(const GuardedTerm&, const GuardedTerm&) = default;
};

using Body = std::vector<GuardedTerm>;

enum class Quantifier { Sup, Inf };

struct Binder {
  Quantifier q = Quantifier::Sup;
  Var var;

  friend bool operator==(const Binder&, const Binder&) = default;
};

/// prefix[0] is the outermost binder.
struct Quantity {
  std::vector<Binder> prefix;
  Body body;

  friend bool operator==(const Quantity&, const Quantity&) = default;
};

std::set<Var> free_vars(const ExtLinExpr& e);
std::set<Var> free_vars(const Atom& a);
std::set<Var> free_vars(const BoolExpr& e);
std::set<Var> free_vars(const Body& b);
std::set<Var> free_vars(const Quantity& q);

/// Throws MissingVariable when sigma lacks a variable of e.
ExtRat lin_eval(const Valuation& sigma, const ExtLinExpr& e);
Rational lin_eval(const Valuation& sigma, const LinExpr& e);

/// Throws ParseError and its subclasses.
Quantity parse_quantity(std::string_view text);
BoolExpr parse_bool(std::string_view text);
ExtLinExpr parse_ext_lin(std::string_view text);

std::string to_string(const LinExpr& e);
std::string to_string(const ExtLinExpr& e);
std::string to_string(const Atom& a);
std::string to_string(const BoolExpr& e);
std::string to_string(const GuardedTerm& t);
std::string to_string(Quantifier q);

/// With multiline set, each summand after the first starts a new line.
std::string print_quantity(const Quantity& q, bool multiline = false);
std::string print_body(const Body& b, bool multiline = false);

std::string quantity_to_json(const Quantity& q, int indent = -1);
/// Throws ParseError on malformed documents.
Quantity quantity_from_json(std::string_view text);

/// Parses either the text grammar or, when the first non-blank character is
/// '{', the JSON AST.
Quantity read_quantity(std::string_view text);

}  // namespace pwlqe
