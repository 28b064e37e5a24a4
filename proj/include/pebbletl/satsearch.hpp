#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pebbletl/eval.hpp"
#include "pebbletl/model.hpp"
#include "pebbletl/syntax.hpp"

namespace pebbletl {

class SearchLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bounds for the deliberately incomplete small-scope search. The logic has
/// no complete satisfiability procedure, so none-in-scope never means
/// unsatisfiable.
struct SearchScope {
  int max_domain = 2;     // domain sizes 1..max_domain
  int max_prefix = 1;     // lasso prefix lengths 0..max_prefix
  int max_period = 1;     // lasso periods 1..max_period
  int max_predicates = 2;
  int max_pred_arity = 2;
  std::uint64_t ceiling = 10'000'000;  // enumeration step budget
};

struct SearchOptions {
  /// Quotient by domain-element renaming: elements are forced to appear in
  /// first-occurrence order along the constant timelines. Sound because the
  /// language cannot name domain elements.
  bool canonical = true;
  /// Cut a partial prefix as soon as the sentence is definitely false on
  /// it; sound because a definite bounded verdict persists in every
  /// extension.
  bool bounded_prune = true;
};

/// Enumerates candidate lasso models over exactly the given constants and
/// predicates, deterministically: domain size ascending, then total length
/// k+p ascending, then prefix k ascending, then constant placements in
/// lexicographic order position by position (constants sorted by name),
/// then predicate steps as ascending tuple-set bitmasks (tuples sorted
/// lexicographically). Candidates whose constants do not use the whole
/// domain are skipped (they recur at the smaller size). `prune` may cut the
/// search below a partially built candidate: it receives the placements
/// made so far as a non-lasso model whose last position may cover only a
/// subset of the symbols (the rest have shorter timelines), so it must
/// treat missing information as unknown. `fn` receives each complete
/// candidate and returns false to stop the enumeration. Throws
/// SearchLimitError when the step budget is exhausted.
void for_each_model(
    const std::vector<std::string>& constants,
    const std::vector<std::pair<std::string, std::size_t>>& predicates,
    const SearchScope& scope, const SearchOptions& options,
    const std::function<bool(const TraceModel&)>& fn,
    const std::function<bool(const TraceModel&)>& prune = nullptr);

/// First in-scope lasso model satisfying the sentence at moment 0, or
/// nothing. The satisfying evaluation is re-checked with eval_lasso before
/// the model is returned. Constants and predicates are read off the
/// formula; the predicate budget caps them.
std::optional<TraceModel> find_model(const FormulaPtr& f,
                                     const SearchScope& scope,
                                     const SearchOptions& options = {});

/// Searches for a countermodel of f (a model of its negation) at moment 0.
/// A result refutes validity; nothing found is evidence only.
std::optional<TraceModel> check_validity_small_scope(
    const FormulaPtr& f, const SearchScope& scope,
    const SearchOptions& options = {});

/// The constants and predicates (with arities) occurring in f.
void collect_symbols(const Formula& f, std::set<std::string>& constants,
                     std::map<std::string, std::size_t>& predicates);

}  // namespace pebbletl
