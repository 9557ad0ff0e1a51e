#include "pwlqe/syntax.hpp"

#include <cassert>
#include <cctype>

#include "pwlqe/errors.hpp"

namespace pwlqe {

namespace {

const std::set<std::string_view> kReserved = {"sup", "inf", "true", "false", "oo"};

template <typename Map>
std::strong_ordering compare_maps(const Map& a, const Map& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    if (auto c = ia->second <=> ib->second; c != 0) return c;
  }
  if (ia == a.end() && ib == b.end()) return std::strong_ordering::equal;
  return ia == a.end() ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace

bool is_valid_var(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char c : name) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && u != '_') return false;
  }
  return kReserved.count(name) == 0;
}

// ---------------------------------------------------------------------------
// LinExpr

LinExpr LinExpr::var(const Var& x, Rational coeff) {
  LinExpr e;
  e.add_term(x, coeff);
  return e;
}

Rational LinExpr::coeff(const Var& x) const {
  auto it = coeffs_.find(x);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

std::set<Var> LinExpr::vars() const {
  std::set<Var> out;
  for (const auto& [v, c] : coeffs_) out.insert(v);
  return out;
}

LinExpr LinExpr::without(const Var& x) const {
  LinExpr e = *this;
  e.coeffs_.erase(x);
  return e;
}

void LinExpr::add_term(const Var& x, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = coeffs_.emplace(x, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

LinExpr LinExpr::operator-() const {
  LinExpr e = *this;
  e *= Rational(-1);
  return e;
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
  constant_ += o.constant_;
  for (const auto& [v, c] : o.coeffs_) add_term(v, c);
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
  constant_ -= o.constant_;
  for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
  return *this;
}

LinExpr& LinExpr::operator*=(const Rational& q) {
  if (q.is_zero()) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  constant_ *= q;
  for (auto& [v, c] : coeffs_) c *= q;
  return *this;
}

std::strong_ordering operator<=>(const LinExpr& a, const LinExpr& b) {
  if (auto c = compare_maps(a.coeffs_, b.coeffs_); c != 0) return c;
  return a.constant_ <=> b.constant_;
}

// ---------------------------------------------------------------------------
// ExtLinExpr

ExtLinExpr ExtLinExpr::negated() const {
  switch (kind_) {
    case Kind::PosInf:
      return neg_inf();
    case Kind::NegInf:
      return pos_inf();
    case Kind::Fin:
      break;
  }
  return ExtLinExpr(-lin_);
}

std::strong_ordering operator<=>(const ExtLinExpr& a, const ExtLinExpr& b) {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (!a.is_finite()) return std::strong_ordering::equal;
  return a.lin_ <=> b.lin_;
}

// ---------------------------------------------------------------------------
// Relations and atoms

Rel flip(Rel r) {
  switch (r) {
    case Rel::Lt:
      return Rel::Gt;
    case Rel::Le:
      return Rel::Ge;
    case Rel::Gt:
      return Rel::Lt;
    case Rel::Ge:
      return Rel::Le;
  }
  return r;
}

Rel complement(Rel r) {
  switch (r) {
    case Rel::Lt:
      return Rel::Ge;
    case Rel::Le:
      return Rel::Gt;
    case Rel::Gt:
      return Rel::Le;
    case Rel::Ge:
      return Rel::Lt;
  }
  return r;
}

bool is_strict(Rel r) { return r == Rel::Lt || r == Rel::Gt; }

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::Lt:
      return "<";
    case Rel::Le:
      return "<=";
    case Rel::Gt:
      return ">";
    case Rel::Ge:
      return ">=";
  }
  return "?";
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (auto c = a.lhs <=> b.lhs; c != 0) return c;
  if (auto c = static_cast<int>(a.rel) <=> static_cast<int>(b.rel); c != 0) return c;
  return a.rhs <=> b.rhs;
}

// ---------------------------------------------------------------------------
// BoolExpr

struct BoolExpr::Node {
  Kind kind;
  Atom atom;
  std::vector<BoolExpr> children;
};

BoolExpr::BoolExpr() : BoolExpr(truth(true)) {}

BoolExpr BoolExpr::truth(bool value) {
  static const auto t = std::make_shared<const Node>(Node{Kind::True, {}, {}});
  static const auto f = std::make_shared<const Node>(Node{Kind::False, {}, {}});
  return BoolExpr(value ? t : f);
}

BoolExpr BoolExpr::atom(Atom a) {
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Atom, std::move(a), {}}));
}

BoolExpr BoolExpr::negation_raw(BoolExpr e) {
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Not, {}, {std::move(e)}}));
}

BoolExpr BoolExpr::and_raw(std::vector<BoolExpr> children) {
  assert(children.size() >= 2);
  return BoolExpr(std::make_shared<const Node>(Node{Kind::And, {}, std::move(children)}));
}

BoolExpr BoolExpr::or_raw(std::vector<BoolExpr> children) {
  assert(children.size() >= 2);
  return BoolExpr(std::make_shared<const Node>(Node{Kind::Or, {}, std::move(children)}));
}

BoolExpr::Kind BoolExpr::kind() const { return node_->kind; }

const Atom& BoolExpr::as_atom() const {
  assert(kind() == Kind::Atom);
  return node_->atom;
}

const std::vector<BoolExpr>& BoolExpr::children() const { return node_->children; }

bool operator==(const BoolExpr& a, const BoolExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == BoolExpr::Kind::Atom) return a.as_atom() == b.as_atom();
  return a.children() == b.children();
}

namespace {

BoolExpr make_nary(BoolExpr::Kind kind, std::vector<BoolExpr> children) {
  const bool is_and = kind == BoolExpr::Kind::And;
  const BoolExpr::Kind neutral = is_and ? BoolExpr::Kind::True : BoolExpr::Kind::False;
  const BoolExpr::Kind absorbing = is_and ? BoolExpr::Kind::False : BoolExpr::Kind::True;
  std::vector<BoolExpr> flat;
  flat.reserve(children.size());
  for (auto& c : children) {
    if (c.kind() == absorbing) return c;
    if (c.kind() == neutral) continue;
    if (c.kind() == kind) {
      for (const auto& g : c.children()) flat.push_back(g);
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) return BoolExpr::truth(is_and);
  if (flat.size() == 1) return flat.front();
  return is_and ? BoolExpr::and_raw(std::move(flat)) : BoolExpr::or_raw(std::move(flat));
}

}  // namespace

BoolExpr make_and(std::vector<BoolExpr> children) {
  return make_nary(BoolExpr::Kind::And, std::move(children));
}

BoolExpr make_and(BoolExpr a, BoolExpr b) { return make_and(std::vector<BoolExpr>{std::move(a), std::move(b)}); }

BoolExpr make_or(std::vector<BoolExpr> children) { return make_nary(BoolExpr::Kind::Or, std::move(children)); }

BoolExpr make_or(BoolExpr a, BoolExpr b) { return make_or(std::vector<BoolExpr>{std::move(a), std::move(b)}); }

BoolExpr make_not(BoolExpr e) {
  switch (e.kind()) {
    case BoolExpr::Kind::True:
      return BoolExpr::truth(false);
    case BoolExpr::Kind::False:
      return BoolExpr::truth(true);
    case BoolExpr::Kind::Not:
      return e.children().front();
    default:
      return BoolExpr::negation_raw(std::move(e));
  }
}

// ---------------------------------------------------------------------------
// Free variables and evaluation

std::set<Var> free_vars(const ExtLinExpr& e) { return e.is_finite() ? e.lin().vars() : std::set<Var>{}; }

std::set<Var> free_vars(const Atom& a) {
  auto out = free_vars(a.lhs);
  out.merge(free_vars(a.rhs));
  return out;
}

namespace {

void collect_vars(const BoolExpr& e, std::set<Var>& out) {
  if (e.kind() == BoolExpr::Kind::Atom) {
    out.merge(free_vars(e.as_atom()));
    return;
  }
  for (const auto& c : e.children()) collect_vars(c, out);
}

}  // namespace

std::set<Var> free_vars(const BoolExpr& e) {
  std::set<Var> out;
  collect_vars(e, out);
  return out;
}

std::set<Var> free_vars(const Body& b) {
  std::set<Var> out;
  for (const auto& t : b) {
    collect_vars(t.guard, out);
    out.merge(free_vars(t.value));
  }
  return out;
}

std::set<Var> free_vars(const Quantity& q) {
  auto out = free_vars(q.body);
  for (const auto& b : q.prefix) out.erase(b.var);
  return out;
}

Rational lin_eval(const Valuation& sigma, const LinExpr& e) {
  Rational sum = e.constant();
  for (const auto& [v, c] : e.coeffs()) {
    auto it = sigma.find(v);
    if (it == sigma.end()) throw MissingVariable(v);
    sum += c * it->second;
  }
  return sum;
}

ExtRat lin_eval(const Valuation& sigma, const ExtLinExpr& e) {
  if (e.is_pos_inf()) return ExtRat::pos_inf();
  if (e.is_neg_inf()) return ExtRat::neg_inf();
  return ExtRat(lin_eval(sigma, e.lin()));
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const LinExpr& e) {
  std::string out;
  for (const auto& [v, c] : e.coeffs()) {
    Rational mag = c;
    if (out.empty()) {
      if (c.sign() < 0) {
        out += "-";
        mag = -c;
      }
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      mag = abs(c);
    }
    if (mag != Rational(1)) out += mag.to_string() + "*";
    out += v;
  }
  const Rational& k = e.constant();
  if (out.empty()) return k.to_string();
  if (!k.is_zero()) out += (k.sign() < 0 ? " - " : " + ") + abs(k).to_string();
  return out;
}

std::string to_string(const ExtLinExpr& e) {
  if (e.is_pos_inf()) return "oo";
  if (e.is_neg_inf()) return "-oo";
  return to_string(e.lin());
}

std::string to_string(const Atom& a) {
  return to_string(a.lhs) + " " + rel_symbol(a.rel) + " " + to_string(a.rhs);
}

std::string to_string(const BoolExpr& e) {
  using K = BoolExpr::Kind;
  switch (e.kind()) {
    case K::True:
      return "true";
    case K::False:
      return "false";
    case K::Atom:
      return to_string(e.as_atom());
    case K::Not:
      return "!(" + to_string(e.children().front()) + ")";
    case K::And:
    case K::Or:
      break;
  }
  const char* sep = e.kind() == K::And ? " && " : " || ";
  std::string out;
  for (const auto& c : e.children()) {
    if (!out.empty()) out += sep;
    bool wrap = c.kind() == K::And || c.kind() == K::Or;
    out += wrap ? "(" + to_string(c) + ")" : to_string(c);
  }
  return out;
}

namespace {

/// A value needs no parentheses when it is a single nonnegative monomial.
bool bare_value(const ExtLinExpr& v) {
  if (v.is_pos_inf()) return true;
  if (v.is_neg_inf()) return false;
  const LinExpr& e = v.lin();
  if (e.is_constant()) return e.constant().sign() >= 0;
  return e.constant().is_zero() && e.coeffs().size() == 1 && e.coeffs().begin()->second.sign() > 0;
}

}  // namespace

std::string to_string(const GuardedTerm& t) {
  std::string value = to_string(t.value);
  if (!bare_value(t.value)) value = "(" + value + ")";
  return "[" + to_string(t.guard) + "] * " + value;
}

std::string to_string(Quantifier q) { return q == Quantifier::Sup ? "sup" : "inf"; }

std::string print_body(const Body& b, bool multiline) {
  std::string out;
  for (const auto& t : b) {
    if (!out.empty()) out += multiline ? "\n  + " : " + ";
    out += to_string(t);
  }
  return out;
}

std::string print_quantity(const Quantity& q, bool multiline) {
  std::string out;
  for (const auto& b : q.prefix) out += to_string(b.q) + " " + b.var + " : ";
  if (multiline && !q.prefix.empty() && q.body.size() > 1) out += "\n    ";
  return out + print_body(q.body, multiline);
}

}  // namespace pwlqe
