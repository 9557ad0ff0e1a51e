#include "pwlqe/qelim.hpp"

#include <algorithm>
#include <thread>

#include "pwlqe/errors.hpp"
#include "pwlqe/normalform.hpp"

namespace pwlqe {

namespace {

void push_new(std::vector<ExtLinExpr>& list, const ExtLinExpr& e) {
  if (std::find(list.begin(), list.end(), e) == list.end()) list.push_back(e);
}

BoolExpr cmp(const ExtLinExpr& l, Rel r, const ExtLinExpr& u) { return fold_atom({l, r, u}); }

}  // namespace

std::vector<ExtLinExpr> BoundSets::upper() const {
  auto out = strict_upper;
  out.insert(out.end(), nonstrict_upper.begin(), nonstrict_upper.end());
  return out;
}

std::vector<ExtLinExpr> BoundSets::lower() const {
  auto out = strict_lower;
  out.insert(out.end(), nonstrict_lower.begin(), nonstrict_lower.end());
  return out;
}

BoundSets bounds(const Disjunct& d, const Var& x) {
  BoundSets b;
  for (const auto& a : d) {
    if (!a.lhs.mentions(x) && !a.rhs.mentions(x)) continue;
    if (!is_isolated(a, x)) throw NotIsolated("atom '" + to_string(a) + "' is not isolated for " + x);
    switch (a.rel) {
      case Rel::Lt:
        push_new(b.strict_upper, a.rhs);
        break;
      case Rel::Le:
        push_new(b.nonstrict_upper, a.rhs);
        break;
      case Rel::Gt:
        push_new(b.strict_lower, a.rhs);
        break;
      case Rel::Ge:
        push_new(b.nonstrict_lower, a.rhs);
        break;
    }
  }
  push_new(b.nonstrict_upper, ExtLinExpr::pos_inf());
  push_new(b.nonstrict_lower, ExtLinExpr::neg_inf());
  return b;
}

BoolExpr phi_exists(const Disjunct& d, const Var& x) {
  BoundSets b = bounds(d, x);
  std::vector<BoolExpr> parts;
  for (const auto& l : b.nonstrict_lower)
    for (const auto& u : b.nonstrict_upper) parts.push_back(cmp(l, Rel::Le, u));
  for (const auto& l : b.nonstrict_lower)
    for (const auto& u : b.strict_upper) parts.push_back(cmp(l, Rel::Lt, u));
  for (const auto& l : b.strict_lower)
    for (const auto& u : b.nonstrict_upper) parts.push_back(cmp(l, Rel::Lt, u));
  for (const auto& l : b.strict_lower)
    for (const auto& u : b.strict_upper) parts.push_back(cmp(l, Rel::Lt, u));
  for (const auto& a : d)
    if (!a.lhs.mentions(x) && !a.rhs.mentions(x)) parts.push_back(fold_atom(a));
  return make_and(std::move(parts));
}

namespace {

BoolExpr selector(const std::vector<ExtLinExpr>& list, std::size_t i, Rel before, Rel after, const char* what) {
  if (i >= list.size())
    throw IndexOutOfRange(std::string(what) + " index " + std::to_string(i) + " out of range (size " +
                          std::to_string(list.size()) + ")");
  std::vector<BoolExpr> parts;
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (k == i) continue;
    parts.push_back(cmp(list[i], k < i ? before : after, list[k]));
  }
  return make_and(std::move(parts));
}

}  // namespace

BoolExpr phi_sup(const BoundSets& b, std::size_t i) { return selector(b.upper(), i, Rel::Lt, Rel::Le, "upper bound"); }

BoolExpr phi_inf(const BoundSets& b, std::size_t i) { return selector(b.lower(), i, Rel::Gt, Rel::Ge, "lower bound"); }

ExtLinExpr subst_inf(const ExtLinExpr& e, const Var& x, const ExtLinExpr& a) {
  Rational c = e.coeff(x);
  if (c.is_zero()) return e;
  if (a.is_pos_inf()) return c.sign() > 0 ? ExtLinExpr::pos_inf() : ExtLinExpr::neg_inf();
  if (a.is_neg_inf()) return c.sign() > 0 ? ExtLinExpr::neg_inf() : ExtLinExpr::pos_inf();
  return ExtLinExpr(e.lin().without(x) + c * a.lin());
}

Body elim_disjunct(Quantifier q, const Disjunct& d, const ExtLinExpr& e, const Var& x) {
  const bool sup = q == Quantifier::Sup;
  BoolExpr exists = phi_exists(d, x);
  Body out;
  auto add = [&](BoolExpr guard, ExtLinExpr value) {
    if (guard.is_false()) return;
    if (!guard.is_true() && !bool_sat(guard)) return;
    out.push_back({std::move(guard), std::move(value)});
  };

  add(make_not(exists), sup ? ExtLinExpr::neg_inf() : ExtLinExpr::pos_inf());

  const int sign = e.coeff(x).sign();
  if (sign == 0) {
    add(exists, e);
    return out;
  }
  BoundSets b = bounds(d, x);
  // Increasing e peaks at the least upper bound, decreasing e at the
  // greatest lower bound; inf swaps the two.
  const bool use_upper = (sign > 0) == sup;
  const std::vector<ExtLinExpr> list = use_upper ? b.upper() : b.lower();
  for (std::size_t i = 0; i < list.size(); ++i) {
    BoolExpr sel = use_upper ? phi_sup(b, i) : phi_inf(b, i);
    add(make_and(exists, sel), subst_inf(e, x, list[i]));
  }
  return out;
}

Body elim_one(Quantifier q, const Var& x, const Body& gnf_body, const ElimOptions& opts) {
  std::vector<std::pair<Disjunct, ExtLinExpr>> work;
  for (const auto& t : gnf_body)
    for (auto& d : dnf_disjuncts(t.guard)) work.emplace_back(std::move(d), t.value);

  std::vector<Body> eliminants(work.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(work.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) eliminants[i] = elim_disjunct(q, work[i].first, work[i].second, x);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < work.size(); i += jobs)
            eliminants[i] = elim_disjunct(q, work[i].first, work[i].second, x);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  if (eliminants.empty())
    return {{BoolExpr::truth(true), q == Quantifier::Sup ? ExtLinExpr::neg_inf() : ExtLinExpr::pos_inf()}};
  return q == Quantifier::Sup ? max_of_unchecked(eliminants) : min_of_unchecked(eliminants);
}

Quantity elim(const Quantity& q, const ElimOptions& opts) {
  if (auto bad = check_well_formed(q)) throw WellFormednessViolation(bad->first, bad->second);
  if (q.prefix.empty()) {
    if (!opts.simplify) return q;
    return {{}, simplify(is_partitioning(q.body) ? q.body : make_partitioning(q.body))};
  }

  Body body = q.body;
  bool partitioned = false;
  for (auto it = q.prefix.rbegin(); it != q.prefix.rend(); ++it) {
    body = elim_one(it->q, it->var, to_gnf_body(body, it->var, partitioned), opts);
    partitioned = true;
    if (opts.check_invariants) {
      if (auto bad = check_well_formed(body)) throw WellFormednessViolation(bad->first, bad->second);
    }
  }
  if (opts.simplify) body = simplify(body);
  return {{}, std::move(body)};
}

std::size_t atom_count(const BoolExpr& e) {
  if (e.kind() == BoolExpr::Kind::Atom) return 1;
  std::size_t n = 0;
  for (const auto& c : e.children()) n += atom_count(c);
  return n;
}

std::size_t width(const Body& b) { return b.size(); }

std::size_t depth(const Body& b) {
  std::size_t m = 0;
  for (const auto& t : b) m = std::max(m, atom_count(t.guard));
  return m;
}

std::size_t width(const Quantity& q) { return width(q.body); }

std::size_t depth(const Quantity& q) { return depth(q.body); }

}  // namespace pwlqe
