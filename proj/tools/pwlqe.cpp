// Command-line front end.
//
// Exit codes:
//   0  success
//   1  parse, usage or I/O error
//   2  well-formedness violation (two overlapping terms valued oo and -oo)
//   3  valuation misses a free variable
//   4  entailment does not hold
//   5  selftest found a disagreement

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pwlqe/errors.hpp"
#include "pwlqe/interpolate.hpp"
#include "pwlqe/normalform.hpp"
#include "pwlqe/oracle.hpp"
#include "pwlqe/qelim.hpp"

namespace {

using namespace pwlqe;

enum Exit { kOk = 0, kInput = 1, kIllFormed = 2, kMissing = 3, kNotEntailed = 4, kSelftest = 5 };

std::string slurp(const std::string& path) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

Quantity load(const std::string& path) { return read_quantity(slurp(path)); }

void emit(const Quantity& q, bool json) {
  if (json) std::cout << quantity_to_json(q, 2) << "\n";
  else std::cout << print_quantity(q, true) << "\n";
}

std::string show(const Valuation& s) {
  std::string out;
  for (const auto& [v, r] : s) {
    if (!out.empty()) out += ", ";
    out += v + "=" + r.to_string();
  }
  return out;
}

void require_well_formed(const Quantity& q) {
  if (auto bad = check_well_formed(q)) throw WellFormednessViolation(bad->first, bad->second);
}

Valuation parse_sigma(const std::string& text) {
  Valuation s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("binding '" + item + "' lacks '='");
    auto trim = [](std::string t) {
      auto b = t.find_first_not_of(" \t");
      auto e = t.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    std::string var = trim(item.substr(0, eq));
    if (!is_valid_var(var)) throw std::invalid_argument("invalid variable '" + var + "'");
    s[var] = Rational::parse(trim(item.substr(eq + 1)));
  }
  return s;
}

int selftest(std::uint64_t seed, int samples, const ElimOptions& opts) {
  RandomParams p;
  p.infinity_prob = 0.1;
  p.summands = 3;
  p.atoms_per_guard = 3;
  int failures = 0;
  for (int i = 0; i < samples; ++i) {
    Quantity q = random_quantity(p, seed + static_cast<std::uint64_t>(i));
    Quantity r = elim(q, opts);
    Rng rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1)));
    std::set<Var> fv = free_vars(q);
    for (int k = 0; k < 20; ++k) {
      Valuation s = random_valuation(fv, rng);
      ExtRat got = eval_quantity(s, r.body);
      ExtRat want = oracle(q.prefix[0].q, s, q.prefix[0].var, q.body);
      if (got != want) {
        std::cout << "mismatch on " << print_quantity(q) << " at " << show(s) << ": " << got << " vs " << want
                  << "\n";
        ++failures;
        break;
      }
    }
  }
  std::cout << (samples - failures) << "/" << samples << " instances agree with the oracle\n";
  return failures == 0 ? kOk : kSelftest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantifier elimination for piecewise linear quantities"};
  app.require_subcommand(1);
  ElimOptions opts;
  app.add_option("--jobs", opts.jobs, "worker threads for elimination")->check(CLI::PositiveNumber);

  std::string file, file2, var, sigma_text;
  bool json = false, strongest = false, weakest = false;
  std::uint64_t seed = 1;
  int samples = 50;

  auto* elim_cmd = app.add_subcommand("elim", "eliminate all quantifiers");
  elim_cmd->add_option("file", file, "input file (stdin if absent)");
  elim_cmd->add_flag("--simplify", opts.simplify, "tidy the result");
  elim_cmd->add_flag("--json", json, "print the JSON AST");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate at a valuation");
  eval_cmd->add_option("file", file, "input file")->required();
  eval_cmd->add_option("--sigma", sigma_text, "bindings k=v,...");

  auto* interp_cmd = app.add_subcommand("interpolate", "strongest or weakest Craig interpolant");
  interp_cmd->add_option("f", file, "antecedent")->required();
  interp_cmd->add_option("g", file2, "consequent")->required();
  auto* s_flag = interp_cmd->add_flag("--strongest", strongest);
  auto* w_flag = interp_cmd->add_flag("--weakest", weakest);
  s_flag->excludes(w_flag);
  interp_cmd->add_flag("--json", json, "print the JSON AST");

  auto* entails_cmd = app.add_subcommand("entails", "decide whether f entails g");
  entails_cmd->add_option("f", file, "antecedent")->required();
  entails_cmd->add_option("g", file2, "consequent")->required();

  auto* check_cmd = app.add_subcommand("check", "check well-formedness");
  check_cmd->add_option("file", file, "input file (stdin if absent)");

  auto* gnf_cmd = app.add_subcommand("gnf", "guarded normal form with respect to a variable");
  gnf_cmd->add_option("file", file, "input file (stdin if absent)");
  gnf_cmd->add_option("--var", var, "variable")->required();
  gnf_cmd->add_flag("--json", json, "print the JSON AST");

  auto* self_cmd = app.add_subcommand("selftest", "compare elimination against the oracle");
  self_cmd->group("");
  self_cmd->add_option("--seed", seed);
  self_cmd->add_option("--samples", samples)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*elim_cmd) {
      emit(elim(load(file), opts), json);
    } else if (*eval_cmd) {
      Quantity q = load(file);
      require_well_formed(q);
      Valuation s = parse_sigma(sigma_text);
      for (const auto& v : free_vars(q))
        if (!s.count(v)) throw MissingVariable(v);
      Quantity r = elim(q, opts);
      std::cout << eval_quantity(s, r.body) << "\n";
    } else if (*interp_cmd) {
      if (!strongest && !weakest) throw std::invalid_argument("choose --strongest or --weakest");
      Quantity f = load(file), g = load(file2);
      require_well_formed(f);
      require_well_formed(g);
      emit(strongest ? strongest_interpolant(f, g, opts) : weakest_interpolant(f, g, opts), json);
    } else if (*entails_cmd) {
      Quantity f = load(file), g = load(file2);
      require_well_formed(f);
      require_well_formed(g);
      auto r = entails(f, g, opts);
      if (r.holds) {
        std::cout << "yes\n";
      } else {
        std::cout << "no\nwitness: " << show(*r.witness) << "\n";
        return kNotEntailed;
      }
    } else if (*check_cmd) {
      Quantity q = load(file);
      if (auto bad = check_well_formed(q)) {
        std::cout << "violation: terms " << bad->first + 1 << " and " << bad->second + 1
                  << " overlap with values oo and -oo\n";
        return kIllFormed;
      }
      std::cout << "ok\n";
    } else if (*gnf_cmd) {
      Quantity q = load(file);
      require_well_formed(q);
      emit(to_gnf(q, var), json);
    } else if (*self_cmd) {
      return selftest(seed, samples, opts);
    }
  } catch (const WellFormednessViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIllFormed;
  } catch (const MissingVariable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMissing;
  } catch (const NotEntailed& e) {
    std::cerr << "error: " << e.what() << "\nwitness: " << show(e.witness()) << "\n";
    return kNotEntailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
