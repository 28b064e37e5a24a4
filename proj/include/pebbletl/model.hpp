#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pebbletl/syntax.hpp"

namespace pebbletl {

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One time step of a predicate interpretation: a set of element-id tuples.
using TupleSet = std::set<std::vector<int>>;

/// Finitely represented temporal structure: a named finite domain slice,
/// per-constant and per-predicate timelines of equal length T, and an
/// optional lasso (prefix k, period p, k + p = T). With a lasso the model
/// denotes the infinite trace prefix.loop^omega; without one it is a finite
/// observed prefix of an otherwise unknown infinite trace. Equality is
/// never stored: it is rigid and evaluated on element identity.
class TraceModel {
 public:
  TraceModel() = default;
  TraceModel(std::vector<std::string> domain, std::size_t length);

  /// Declares the model ultimately periodic. Requires prefix + period ==
  /// length() and period >= 1 (checked by validate_model, not here).
  void set_lasso(std::size_t prefix, std::size_t period) {
    lasso_ = {prefix, period};
  }
  void clear_lasso() { lasso_.reset(); }

  void set_constant(const std::string& c, const std::vector<std::string>& elems);
  void set_constant_ids(const std::string& c, std::vector<int> elems);
  void set_predicate(const std::string& p, std::vector<TupleSet> steps);

  std::size_t length() const { return length_; }
  bool has_lasso() const { return lasso_.has_value(); }
  std::size_t lasso_prefix() const { return lasso_->first; }
  std::size_t lasso_period() const { return lasso_->second; }

  const std::vector<std::string>& domain() const { return domain_; }
  std::optional<int> element_id(const std::string& name) const;
  const std::string& element_name(int id) const { return domain_.at(id); }

  bool has_constant(const std::string& c) const { return const_tl_.count(c) != 0; }
  bool has_predicate(const std::string& p) const { return pred_tl_.count(p) != 0; }
  std::vector<std::string> constants() const;
  std::vector<std::string> predicates() const;

  /// Designation of c at moment n, resolving n through the loop when a
  /// lasso is present. Throws ModelError for unknown constants and for
  /// out-of-horizon access on a non-lasso model.
  const std::string& constant_at(const std::string& c, std::size_t n) const;
  int constant_id_at(const std::string& c, std::size_t n) const;

  /// The set of elements visited by c up to moment n (inclusive).
  std::set<std::string> visited(const std::string& c, std::size_t n) const;
  std::set<int> visited_ids(const std::string& c, std::size_t n) const;

  /// Interpretation of P at moment n, with loop resolution as above.
  const TupleSet& predicate_at(const std::string& p, std::size_t n) const;

  const std::vector<int>& constant_timeline(const std::string& c) const;
  const std::vector<TupleSet>& predicate_timeline(const std::string& p) const;

  /// Maps a time index onto the stored position, unrolling the loop.
  std::size_t resolve(std::size_t n) const;

 private:
  std::vector<std::string> domain_;
  std::unordered_map<std::string, int> ids_;
  std::size_t length_ = 0;
  std::optional<std::pair<std::size_t, std::size_t>> lasso_;
  std::map<std::string, std::vector<int>> const_tl_;
  std::map<std::string, std::vector<TupleSet>> pred_tl_;
};

/// Checks every representation invariant: non-empty domain, equal timeline
/// lengths >= 1, lasso arithmetic, element ids in range, consistent tuple
/// arity per predicate. Empty result means ok.
std::vector<Diagnostic> validate_model(const TraceModel& m);

/// Text format, one item per line, '#' starts a comment:
///
///   domain: u0, u1, q0
///   const d: u0, u1 [loop 1 1]
///   pred E: { (u0, u1), (u1, u1) }; { } [loop 1 1]
///
/// Each timeline line lists one entry per time step (predicate steps are
/// ';'-separated tuple sets). The optional [loop k p] marker declares the
/// lasso; every occurrence must agree. write_model emits the canonical
/// form: domain first, constants then predicates sorted by name, tuples
/// sorted, the loop marker on every timeline line.
TraceModel read_model(const std::string& content);
std::string write_model(const TraceModel& m);

/// Doubles the loop of a lasso model (k, p) -> (k, 2p) by repeating the
/// loop segment; denotes the same infinite trace. Throws ModelError on
/// non-lasso models.
TraceModel double_period(const TraceModel& m);

}  // namespace pebbletl
