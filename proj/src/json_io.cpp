#include <nlohmann/json.hpp>

#include "pwlqe/errors.hpp"
#include "pwlqe/syntax.hpp"

namespace pwlqe {

using nlohmann::json;

namespace {

json rational_json(const Rational& r) { return {{"num", r.numerator_str()}, {"den", r.denominator_str()}}; }

json ext_lin_json(const ExtLinExpr& e) {
  if (e.is_pos_inf()) return "oo";
  if (e.is_neg_inf()) return "-oo";
  json coeffs = json::object();
  for (const auto& [v, c] : e.lin().coeffs()) coeffs[v] = rational_json(c);
  return {{"kind", "lin"}, {"constant", rational_json(e.lin().constant())}, {"coeffs", coeffs}};
}

json bool_json(const BoolExpr& e) {
  using K = BoolExpr::Kind;
  switch (e.kind()) {
    case K::True:
      return {{"kind", "true"}};
    case K::False:
      return {{"kind", "false"}};
    case K::Atom: {
      const Atom& a = e.as_atom();
      return {{"kind", "atom"}, {"lhs", ext_lin_json(a.lhs)}, {"rel", rel_symbol(a.rel)}, {"rhs", ext_lin_json(a.rhs)}};
    }
    case K::Not:
      return {{"kind", "not"}, {"arg", bool_json(e.children().front())}};
    case K::And:
    case K::Or:
      break;
  }
  json args = json::array();
  for (const auto& c : e.children()) args.push_back(bool_json(c));
  return {{"kind", e.kind() == K::And ? "and" : "or"}, {"args", args}};
}

[[noreturn]] void bad(const std::string& what) { throw ParseError("malformed JSON AST: " + what, 1, 1); }

Rational rational_from(const json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) bad("rational must be {num, den}");
  return Rational::parse(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

ExtLinExpr ext_lin_from(const json& j) {
  if (j.is_string()) {
    if (j == "oo") return ExtLinExpr::pos_inf();
    if (j == "-oo") return ExtLinExpr::neg_inf();
    bad("unknown constant " + j.dump());
  }
  if (!j.is_object() || j.value("kind", "") != "lin") bad("expected linear expression");
  LinExpr e(rational_from(j.at("constant")));
  for (const auto& [v, c] : j.at("coeffs").items()) {
    if (!is_valid_var(v)) bad("invalid variable name '" + v + "'");
    e.add_term(v, rational_from(c));
  }
  return e;
}

Rel rel_from(const std::string& s) {
  if (s == "<") return Rel::Lt;
  if (s == "<=") return Rel::Le;
  if (s == ">") return Rel::Gt;
  if (s == ">=") return Rel::Ge;
  bad("unknown relation '" + s + "'");
}

BoolExpr bool_from(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "true") return BoolExpr::truth(true);
  if (kind == "false") return BoolExpr::truth(false);
  if (kind == "atom")
    return BoolExpr::atom({ext_lin_from(j.at("lhs")), rel_from(j.at("rel").get<std::string>()), ext_lin_from(j.at("rhs"))});
  if (kind == "not") return BoolExpr::negation_raw(bool_from(j.at("arg")));
  if (kind == "and" || kind == "or") {
    std::vector<BoolExpr> args;
    for (const auto& a : j.at("args")) args.push_back(bool_from(a));
    if (args.size() < 2) bad(kind + " needs at least two arguments");
    return kind == "and" ? BoolExpr::and_raw(std::move(args)) : BoolExpr::or_raw(std::move(args));
  }
  bad("unknown Boolean kind '" + kind + "'");
}

}  // namespace

std::string quantity_to_json(const Quantity& q, int indent) {
  json prefix = json::array();
  for (const auto& b : q.prefix) prefix.push_back({{"quantifier", to_string(b.q)}, {"var", b.var}});
  json body = json::array();
  for (const auto& t : q.body) body.push_back({{"guard", bool_json(t.guard)}, {"value", ext_lin_json(t.value)}});
  json doc = {{"kind", "quantity"}, {"prefix", prefix}, {"body", body}};
  return doc.dump(indent);
}

Quantity quantity_from_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    if (doc.value("kind", "") != "quantity") bad("top-level kind must be \"quantity\"");
    Quantity q;
    std::set<Var> bound;
    for (const auto& b : doc.at("prefix")) {
      const std::string qs = b.at("quantifier").get<std::string>();
      if (qs != "sup" && qs != "inf") bad("quantifier must be sup or inf");
      Var v = b.at("var").get<std::string>();
      if (!is_valid_var(v)) bad("invalid variable name '" + v + "'");
      if (!bound.insert(v).second) throw DuplicateBinderError("variable '" + v + "' is bound twice", 1, 1);
      q.prefix.push_back({qs == "sup" ? Quantifier::Sup : Quantifier::Inf, v});
    }
    for (const auto& t : doc.at("body")) q.body.push_back({bool_from(t.at("guard")), ext_lin_from(t.at("value"))});
    if (q.body.empty()) bad("body must not be empty");
    return q;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON AST: ") + e.what(), 1, 1);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed JSON AST: ") + e.what(), 1, 1);
  }
}

}  // namespace pwlqe
