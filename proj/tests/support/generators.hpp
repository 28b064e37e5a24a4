#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pebbletl/model.hpp"
#include "pebbletl/syntax.hpp"

namespace pebbletl::testing {

using Rng = std::mt19937_64;

// Raw-engine helpers: std distributions differ between standard library
// implementations, and the corpora must be identical everywhere.
inline std::size_t below(Rng& rng, std::size_t n) { return rng() % n; }
inline bool chance(Rng& rng, unsigned permille) { return rng() % 1000 < permille; }

struct FormulaGenConfig {
  int max_depth = 4;        // total operator nesting, abstraction included
  int max_abstraction = 2;  // abstraction nesting
  std::vector<std::string> constants = {"a", "d"};
  std::vector<std::pair<std::string, std::size_t>> predicates = {};
};

Alphabet corpus_alphabet(const FormulaGenConfig& cfg);

/// A random sentence within the configured bounds.
FormulaPtr random_sentence(Rng& rng, const FormulaGenConfig& cfg);

/// Deterministic sentence corpus: a fixed preamble covering all six temporal
/// operators and both abstraction argument kinds, then seeded random
/// sentences up to `count`.
std::vector<FormulaPtr> sentence_corpus(std::size_t count, std::uint64_t seed,
                                        const FormulaGenConfig& cfg);

struct ModelGenConfig {
  std::vector<std::string> constants = {"a", "d"};
  std::vector<std::pair<std::string, std::size_t>> predicates = {};
  int max_domain = 3;
  int max_prefix = 3;
  int max_period = 2;
  bool lasso = true;
  bool even_period_only = false;
  unsigned tuple_permille = 300;  // density of predicate tuples
};

TraceModel random_model(Rng& rng, const ModelGenConfig& cfg);

/// The first `length` positions of m materialized as a plain prefix model
/// (no lasso). Requires length >= 1 and, for non-lasso m, length <= m.length().
TraceModel unrolled_prefix(const TraceModel& m, std::size_t length);

/// Every lasso closure (k, p) with k + p = prefix length.
std::vector<TraceModel> lasso_closures(const TraceModel& prefix);

/// Closures of the prefix itself plus closures of bounded extensions:
/// each extra position enumerates all constant placements and, per
/// predicate, either repeats the last observed step or goes empty.
std::vector<TraceModel> lasso_completions(const TraceModel& prefix, int extra);

}  // namespace pebbletl::testing
