// Recursive-descent parser for the quantity language.
//
// Summand values are a single term (a product or quotient of factors), so
// that `+ [` unambiguously starts the next summand; sums must be wrapped in
// parentheses. In Boolean position an opening parenthesis is first tried as
// the start of an atom such as `(x + 1) < y` and otherwise read as grouping.

#include <cctype>
#include <optional>

#include "pwlqe/errors.hpp"
#include "pwlqe/syntax.hpp"

namespace pwlqe {

namespace {

enum class Tok {
  Ident,
  Number,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Star,
  Slash,
  Plus,
  Minus,
  Colon,
  Lt,
  Le,
  Gt,
  Ge,
  Bang,
  AndAnd,
  OrOr,
  Arrow,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    unsigned char c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '#') {  // comment to end of line
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, cl = col;
    if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::Number, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    Tok kind;
    std::size_t len = 2;
    if (two == "<=") kind = Tok::Le;
    else if (two == ">=") kind = Tok::Ge;
    else if (two == "&&") kind = Tok::AndAnd;
    else if (two == "||") kind = Tok::OrOr;
    else if (two == "->") kind = Tok::Arrow;
    else {
      len = 1;
      switch (c) {
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case ':': kind = Tok::Colon; break;
        case '<': kind = Tok::Lt; break;
        case '>': kind = Tok::Gt; break;
        case '!': kind = Tok::Bang; break;
        default:
          throw ParseError(std::string("unexpected character '") + static_cast<char>(c) + "'", l, cl);
      }
    }
    out.push_back({kind, std::string(src.substr(i, len)), l, cl});
    advance(len);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

Rational parse_number(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational::parse(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  std::string den = "1" + std::string(text.size() - dot - 1, '0');
  return Rational::parse(digits + "/" + den);
}

/// Intermediate arithmetic value; infinities only combine under negation.
struct Arith {
  ExtLinExpr value;
  bool finite() const { return value.is_finite(); }
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Quantity quantity() {
    Quantity q;
    std::set<Var> bound;
    while (at_keyword("sup") || at_keyword("inf")) {
      Quantifier kind = peek().text == "sup" ? Quantifier::Sup : Quantifier::Inf;
      ++pos_;
      const Token& v = expect(Tok::Ident, "variable");
      check_var(v);
      if (!bound.insert(v.text).second)
        throw DuplicateBinderError("variable '" + v.text + "' is bound twice", v.line, v.column);
      expect(Tok::Colon, "':'");
      q.prefix.push_back({kind, v.text});
    }
    q.body.push_back(gterm());
    while (accept(Tok::Plus)) q.body.push_back(gterm());
    expect_end();
    return q;
  }

  BoolExpr bool_only() {
    BoolExpr e = implication();
    expect_end();
    return e;
  }

  ExtLinExpr ext_lin_only() {
    Arith a = sum();
    expect_end();
    return a.value;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

  bool at(Tok k) const { return peek().kind == k; }

  bool at_keyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }

  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + what + ", found " + found, t.line, t.column);
  }

  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    return toks_[pos_++];
  }

  void expect_end() {
    if (!at(Tok::End)) fail("end of input");
  }

  static void check_var(const Token& t) {
    if (!is_valid_var(t.text)) throw ParseError("'" + t.text + "' is a reserved word", t.line, t.column);
  }

  GuardedTerm gterm() {
    expect(Tok::LBracket, "'['");
    BoolExpr g = implication();
    expect(Tok::RBracket, "']'");
    expect(Tok::Star, "'*'");
    Arith v = term();
    return {std::move(g), std::move(v.value)};
  }

  // --- Boolean layer -------------------------------------------------------

  BoolExpr implication() {
    BoolExpr lhs = disjunction();
    if (!accept(Tok::Arrow)) return lhs;
    BoolExpr rhs = implication();
    return BoolExpr::or_raw({BoolExpr::negation_raw(std::move(lhs)), std::move(rhs)});
  }

  BoolExpr disjunction() {
    std::vector<BoolExpr> parts{conjunction()};
    while (accept(Tok::OrOr)) parts.push_back(conjunction());
    return parts.size() == 1 ? parts.front() : BoolExpr::or_raw(std::move(parts));
  }

  BoolExpr conjunction() {
    std::vector<BoolExpr> parts{unary()};
    while (accept(Tok::AndAnd)) parts.push_back(unary());
    return parts.size() == 1 ? parts.front() : BoolExpr::and_raw(std::move(parts));
  }

  BoolExpr unary() {
    if (accept(Tok::Bang)) return BoolExpr::negation_raw(unary());
    if (at_keyword("true") || at_keyword("false")) {
      bool v = peek().text == "true";
      ++pos_;
      return BoolExpr::truth(v);
    }
    if (at(Tok::LParen)) {
      const std::size_t save = pos_;
      try {
        return BoolExpr::atom(atom());
      } catch (const NonLinearError&) {
        throw;
      } catch (const ParseError&) {
        pos_ = save;
      }
      ++pos_;
      BoolExpr inner = implication();
      expect(Tok::RParen, "')'");
      return inner;
    }
    return BoolExpr::atom(atom());
  }

  Atom atom() {
    Arith lhs = sum();
    Rel rel;
    switch (peek().kind) {
      case Tok::Lt: rel = Rel::Lt; break;
      case Tok::Le: rel = Rel::Le; break;
      case Tok::Gt: rel = Rel::Gt; break;
      case Tok::Ge: rel = Rel::Ge; break;
      default: fail("comparison operator");
    }
    ++pos_;
    Arith rhs = sum();
    return {std::move(lhs.value), rel, std::move(rhs.value)};
  }

  // --- Arithmetic layer ----------------------------------------------------

  Arith sum() {
    Arith acc = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      const Token& op = toks_[pos_++];
      Arith rhs = term();
      if (!acc.finite() || !rhs.finite())
        throw ParseError("infinity cannot be combined with other terms", op.line, op.column);
      LinExpr e = acc.value.lin();
      if (op.kind == Tok::Plus) e += rhs.value.lin();
      else e -= rhs.value.lin();
      acc.value = ExtLinExpr(std::move(e));
    }
    return acc;
  }

  Arith term() {
    Arith acc = factor();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const Token& op = toks_[pos_++];
      Arith rhs = factor();
      if (!acc.finite() || !rhs.finite())
        throw ParseError("infinity cannot be combined with other terms", op.line, op.column);
      const LinExpr& a = acc.value.lin();
      const LinExpr& b = rhs.value.lin();
      if (op.kind == Tok::Star) {
        if (!a.is_constant() && !b.is_constant())
          throw NonLinearError("product of two non-constant expressions", op.line, op.column);
        acc.value = a.is_constant() ? a.constant() * b : b.constant() * a;
      } else {
        if (!b.is_constant()) throw NonLinearError("division by a non-constant expression", op.line, op.column);
        if (b.constant().is_zero()) throw ParseError("division by zero", op.line, op.column);
        acc.value = (Rational(1) / b.constant()) * a;
      }
    }
    return acc;
  }

  Arith factor() {
    if (accept(Tok::Minus)) {
      Arith inner = factor();
      return {inner.value.negated()};
    }
    if (accept(Tok::LParen)) {
      Arith inner = sum();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (at(Tok::Number)) return {ExtLinExpr(LinExpr(parse_number(toks_[pos_++].text)))};
    if (at(Tok::Ident)) {
      const Token& t = toks_[pos_];
      if (t.text == "oo") {
        ++pos_;
        return {ExtLinExpr::pos_inf()};
      }
      check_var(t);
      ++pos_;
      return {ExtLinExpr(LinExpr::var(t.text))};
    }
    fail("number, variable or '('");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Quantity parse_quantity(std::string_view text) { return Parser(text).quantity(); }

BoolExpr parse_bool(std::string_view text) { return Parser(text).bool_only(); }

ExtLinExpr parse_ext_lin(std::string_view text) { return Parser(text).ext_lin_only(); }

Quantity read_quantity(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return quantity_from_json(text);
  return parse_quantity(text);
}

}  // namespace pwlqe
