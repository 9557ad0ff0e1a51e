#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "pwlqe/syntax.hpp"

namespace pwlqe {

/// Sum of the values of all terms whose guard holds. Throws UndefinedSum on
/// ill-formed bodies and MissingVariable on incomplete valuations.
ExtRat eval_quantity(const Valuation& sigma, const Body& body);

/// sup (inf) over rational x of the body at sigma, by splitting the line at
/// every point where some atom changes truth value and taking the extreme
/// value or endpoint limit in each piece. Needs no normal form.
ExtRat oracle_sup(const Valuation& sigma, const Var& x, const Body& body);
ExtRat oracle_inf(const Valuation& sigma, const Var& x, const Body& body);
ExtRat oracle(Quantifier q, const Valuation& sigma, const Var& x, const Body& body);

/// Deterministic pseudo-random source; draws use modular reduction so
/// sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform integer in [lo, hi].
  long range(long lo, long hi);
  bool chance(double p);
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

struct RandomParams {
  /// Variable names; the first `quantifiers` of them are bound.
  std::vector<Var> vars = {"x", "y", "z"};
  int summands = 2;
  int atoms_per_guard = 2;
  int coeff_bound = 3;
  double infinity_prob = 0.0;
  int quantifiers = 1;
  bool partition = false;
};

/// A random well-formed quantity; identical for identical seeds.
Quantity random_quantity(const RandomParams& params, std::uint64_t seed);

/// Random rational coordinates with denominator 1..8 in [-10, 10].
Valuation random_valuation(const std::set<Var>& vars, Rng& rng);

struct EquivResult {
  bool equal = true;
  std::optional<Valuation> counterexample;
};

/// Compares two quantifier-free quantities at n sampled valuations. Samples
/// mix random rationals, integers, quarter-integers and points next to the
/// roots of single-variable guard atoms.
EquivResult equiv_sample(const Quantity& f, const Quantity& g, int n, std::uint64_t seed);

}  // namespace pwlqe
