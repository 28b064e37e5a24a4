#pragma once

// Library-internal evaluation machinery shared by eval.cpp and
// satsearch.cpp. The public surface stays in pebbletl/eval.hpp.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pebbletl/eval.hpp"
#include "pebbletl/model.hpp"
#include "pebbletl/syntax.hpp"

namespace pebbletl::detail {

/// Formula-side preparation, model independent: pointer-identity node
/// table, interned variable names, temporal nesting depth. Built once and
/// reused across many model evaluations.
class EvalPlan {
 public:
  explicit EvalPlan(FormulaPtr f);

  const Formula& root() const { return *root_; }
  int root_id() const { return root_id_; }
  int node_id(const Formula& f) const { return node_ids_.at(&f); }
  int temporal_depth(int node) const { return depth_[node]; }
  std::size_t node_count() const { return nodes_.size(); }

  int intern_variable(const std::string& name);
  std::optional<int> variable_id(const std::string& name) const;

 private:
  int add(const Formula& f);

  FormulaPtr root_;
  int root_id_ = -1;
  std::vector<const Formula*> nodes_;
  std::unordered_map<const Formula*, int> node_ids_;
  std::vector<int> depth_;
  std::unordered_map<std::string, int> var_ids_;
};

/// Interned environments: id 0 is empty; bind() extends an existing one.
/// Memo keys pack (node, env, position) into one word, so ids are bounded.
class EnvTable {
 public:
  EnvTable() { envs_.emplace_back(); }

  int bind(int env, int var, int elem);
  std::optional<int> lookup(int env, int var) const;
  void reset();

 private:
  std::vector<std::vector<std::pair<int, int>>> envs_;
  std::unordered_map<std::uint64_t, int> bind_memo_;
};

/// Three-valued evaluation over a prefix model. In lenient mode a symbol
/// the model does not (yet) interpret at the queried moment yields Unknown
/// instead of an error; definite verdicts then still persist under every
/// extension of the missing information, which is what sound search
/// pruning needs.
class BoundedEval {
 public:
  BoundedEval(EvalPlan& plan, bool lenient) : plan_(plan), lenient_(lenient) {}

  /// Points the evaluator at a model and clears the memo.
  void attach(const TraceModel& m);

  Verdict at(std::size_t position, int env = 0);
  EnvTable& envs() { return envs_; }

 private:
  Verdict eval(const Formula& f, int env, std::size_t n);
  Verdict compute(const Formula& f, int env, std::size_t n);
  std::optional<int> resolve(const Term& t, int env, std::size_t n);

  EvalPlan& plan_;
  bool lenient_;
  const TraceModel* model_ = nullptr;
  EnvTable envs_;
  std::unordered_map<std::uint64_t, std::int8_t> memo_;
};

/// Definite evaluation on a lasso model via canonical positions: values of
/// every subformula are periodic with the loop period from
///   STAB = prefix + period * (temporal_depth + 2)
/// onwards, so positions are folded into [0, STAB + period) and future
/// quantifiers scan one stabilized period beyond STAB.
class LassoEval {
 public:
  explicit LassoEval(EvalPlan& plan) : plan_(plan) {}

  void attach(const TraceModel& m);

  bool at(std::size_t position, int env = 0);
  EnvTable& envs() { return envs_; }

 private:
  std::size_t canon(std::size_t n) const;
  bool eval(const Formula& f, int env, std::size_t n);
  bool compute(const Formula& f, int env, std::size_t n);
  int resolve(const Term& t, int env, std::size_t n);

  EvalPlan& plan_;
  const TraceModel* model_ = nullptr;
  std::size_t period_ = 1;
  std::size_t stab_ = 0;
  EnvTable envs_;
  std::unordered_map<std::uint64_t, std::int8_t> memo_;
};

/// Resolves an assignment into an interned environment (shared helper for
/// the public entry points). Validates targets against the model domain.
int assignment_env(EvalPlan& plan, EnvTable& envs, const TraceModel& m,
                   const Assignment& a);

}  // namespace pebbletl::detail
