#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pebbletl/model.hpp"
#include "pebbletl/syntax.hpp"

namespace pebbletl {

class EquivError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Comparison scope: the alphabet whose constants and predicates are
/// compared, and the moment bound used when a prefix model is involved.
struct EquivScope {
  std::size_t horizon = 1;
  Alphabet alphabet;
};

enum class EquivStatus {
  Equivalent,         // exact (both models lassos; all residues checked)
  BoundedEquivalent,  // no difference up to the checked horizon
  NotEquivalent,
};

struct EquivWitness {
  std::size_t moment = 0;
  std::string symbol;                              // constant or predicate
  std::optional<std::vector<std::string>> tuple;   // set for predicates
};

struct EquivResult {
  EquivStatus status = EquivStatus::NotEquivalent;
  std::optional<EquivWitness> witness;
  std::size_t checked_horizon = 0;  // moments [0, checked_horizon) compared
};

/// Pebble equivalence: identical constant designations at every moment and
/// identical predicate membership on tuples over V = union of all elements
/// the constants ever visit. For two lasso models the check covers every
/// residue class and is exact; otherwise it covers scope.horizon moments
/// (each prefix model must be at least that long). Throws EquivError when a
/// scoped symbol is missing from either model.
EquivResult pebble_equivalent(const TraceModel& m1, const TraceModel& m2,
                              const EquivScope& scope);

/// The flicker extension: two fresh elements are added to the domain,
/// constants are left alone, and E additionally holds on every fresh pair
/// at even moments and on none at odd moments. Original tuples are
/// preserved, so the result is pebble equivalent to the input while E is
/// visibly non-rigid. A model without E gets an empty-E timeline first.
/// Lasso models must have an even period (double_period() normalizes);
/// odd periods are rejected rather than silently reshaped.
TraceModel extend_with_flicker(const TraceModel& m, const std::string& E);

/// The two elements extend_with_flicker added, in domain order.
std::vector<std::string> flicker_elements(const TraceModel& extended,
                                          const TraceModel& original);

}  // namespace pebbletl
