#include "evaluator.hpp"

#include <algorithm>
#include <cassert>

namespace pebbletl::detail {

namespace {

constexpr std::uint64_t pack_key(int node, int env, std::size_t pos) {
  return static_cast<std::uint64_t>(node) |
         (static_cast<std::uint64_t>(env) << 16) |
         (static_cast<std::uint64_t>(pos) << 40);
}

constexpr std::int8_t encode(Verdict v) { return static_cast<std::int8_t>(v); }
constexpr Verdict decode(std::int8_t v) { return static_cast<Verdict>(v); }

}  // namespace

EvalPlan::EvalPlan(FormulaPtr f) : root_(std::move(f)) {
  root_id_ = add(*root_);
}

int EvalPlan::add(const Formula& f) {
  if (auto it = node_ids_.find(&f); it != node_ids_.end()) return it->second;
  int depth = 0;
  switch (f.kind()) {
    case FormulaKind::Atom:
      for (const auto& a : f.args()) intern_variable(a);
      break;
    case FormulaKind::Eq:
      intern_variable(f.left_var());
      intern_variable(f.right_var());
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      const int l = add(*f.lhs());
      const int r = add(*f.rhs());
      depth = std::max(depth_[l], depth_[r]);
      break;
    }
    case FormulaKind::Abstract:
      intern_variable(f.binder());
      if (f.argument().kind == TermKind::Variable)
        intern_variable(f.argument().name);
      depth = depth_[add(*f.child())];
      break;
    case FormulaKind::Not:
      depth = depth_[add(*f.child())];
      break;
    default:
      depth = depth_[add(*f.child())] + 1;
      break;
  }
  const int id = static_cast<int>(nodes_.size());
  assert(id < (1 << 16));
  nodes_.push_back(&f);
  node_ids_.emplace(&f, id);
  depth_.push_back(depth);
  return id;
}

int EvalPlan::intern_variable(const std::string& name) {
  auto [it, fresh] =
      var_ids_.emplace(name, static_cast<int>(var_ids_.size()));
  (void)fresh;
  return it->second;
}

std::optional<int> EvalPlan::variable_id(const std::string& name) const {
  auto it = var_ids_.find(name);
  if (it == var_ids_.end()) return std::nullopt;
  return it->second;
}

int EnvTable::bind(int env, int var, int elem) {
  const std::uint64_t key = static_cast<std::uint64_t>(env) |
                            (static_cast<std::uint64_t>(var) << 24) |
                            (static_cast<std::uint64_t>(elem) << 44);
  if (auto it = bind_memo_.find(key); it != bind_memo_.end()) return it->second;
  std::vector<std::pair<int, int>> next;
  next.reserve(envs_[env].size() + 1);
  bool placed = false;
  for (const auto& [v, e] : envs_[env]) {
    if (v == var) {
      next.emplace_back(var, elem);
      placed = true;
    } else {
      if (!placed && v > var) {
        next.emplace_back(var, elem);
        placed = true;
      }
      next.emplace_back(v, e);
    }
  }
  if (!placed) next.emplace_back(var, elem);
  // Identical contents reuse the existing id so memo keys stay stable.
  for (std::size_t i = 0; i < envs_.size(); ++i)
    if (envs_[i] == next) {
      bind_memo_.emplace(key, static_cast<int>(i));
      return static_cast<int>(i);
    }
  const int id = static_cast<int>(envs_.size());
  assert(id < (1 << 24));
  envs_.push_back(std::move(next));
  bind_memo_.emplace(key, id);
  return id;
}

std::optional<int> EnvTable::lookup(int env, int var) const {
  for (const auto& [v, e] : envs_[env])
    if (v == var) return e;
  return std::nullopt;
}

void EnvTable::reset() {
  envs_.clear();
  envs_.emplace_back();
  bind_memo_.clear();
}

// ---------------------------------------------------------------------------
// BoundedEval
// ---------------------------------------------------------------------------

void BoundedEval::attach(const TraceModel& m) {
  model_ = &m;
  memo_.clear();
}

Verdict BoundedEval::at(std::size_t position, int env) {
  assert(model_ != nullptr);
  return eval(plan_.root(), env, position);
}

std::optional<int> BoundedEval::resolve(const Term& t, int env, std::size_t n) {
  if (t.kind == TermKind::Variable) {
    auto var = plan_.variable_id(t.name);
    if (!var) throw EvalError("unbound variable '" + t.name + "'");
    auto elem = envs_.lookup(env, *var);
    if (!elem) throw EvalError("unbound variable '" + t.name + "'");
    return elem;
  }
  if (lenient_) {
    if (!model_->has_constant(t.name)) return std::nullopt;
    const auto& tl = model_->constant_timeline(t.name);
    if (n >= tl.size()) return std::nullopt;
    return tl[n];
  }
  return model_->constant_id_at(t.name, n);
}

Verdict BoundedEval::eval(const Formula& f, int env, std::size_t n) {
  const std::uint64_t key = pack_key(plan_.node_id(f), env, n);
  if (auto it = memo_.find(key); it != memo_.end()) return decode(it->second);
  const Verdict v = compute(f, env, n);
  memo_.emplace(key, encode(v));
  return v;
}

Verdict BoundedEval::compute(const Formula& f, int env, std::size_t n) {
  const std::size_t horizon = model_->length();
  switch (f.kind()) {
    case FormulaKind::Atom: {
      if (lenient_ && (!model_->has_predicate(f.predicate()) ||
                       n >= model_->predicate_timeline(f.predicate()).size()))
        return Verdict::Unknown;
      std::vector<int> tuple;
      tuple.reserve(f.args().size());
      for (const auto& a : f.args()) {
        auto var = plan_.variable_id(a);
        auto elem = var ? envs_.lookup(env, *var) : std::nullopt;
        if (!elem) throw EvalError("unbound variable '" + a + "'");
        tuple.push_back(*elem);
      }
      return to_verdict(model_->predicate_at(f.predicate(), n).count(tuple) != 0);
    }
    case FormulaKind::Eq: {
      auto lv = plan_.variable_id(f.left_var());
      auto rv = plan_.variable_id(f.right_var());
      auto le = lv ? envs_.lookup(env, *lv) : std::nullopt;
      auto re = rv ? envs_.lookup(env, *rv) : std::nullopt;
      if (!le) throw EvalError("unbound variable '" + f.left_var() + "'");
      if (!re) throw EvalError("unbound variable '" + f.right_var() + "'");
      return to_verdict(*le == *re);
    }
    case FormulaKind::Not:
      return kleene_not(eval(*f.child(), env, n));
    case FormulaKind::And: {
      const Verdict l = eval(*f.lhs(), env, n);
      if (l == Verdict::False) return Verdict::False;
      return kleene_and(l, eval(*f.rhs(), env, n));
    }
    case FormulaKind::Or: {
      const Verdict l = eval(*f.lhs(), env, n);
      if (l == Verdict::True) return Verdict::True;
      return kleene_or(l, eval(*f.rhs(), env, n));
    }
    case FormulaKind::Implies: {
      const Verdict l = eval(*f.lhs(), env, n);
      if (l == Verdict::False) return Verdict::True;
      return kleene_implies(l, eval(*f.rhs(), env, n));
    }
    case FormulaKind::Next:
      return n + 1 < horizon ? eval(*f.child(), env, n + 1) : Verdict::Unknown;
    case FormulaKind::Eventually: {
      // Witnessed -> True; the unseen future can always still deliver.
      for (std::size_t m = n; m < horizon; ++m)
        if (eval(*f.child(), env, m) == Verdict::True) return Verdict::True;
      return Verdict::Unknown;
    }
    case FormulaKind::Always: {
      for (std::size_t m = n; m < horizon; ++m)
        if (eval(*f.child(), env, m) == Verdict::False) return Verdict::False;
      return Verdict::Unknown;
    }
    case FormulaKind::Yesterday:
      // Strong previous: false at the first moment.
      return n == 0 ? Verdict::False : eval(*f.child(), env, n - 1);
    case FormulaKind::Once: {
      Verdict acc = Verdict::False;
      for (std::size_t m = 0; m <= n; ++m) {
        acc = kleene_or(acc, eval(*f.child(), env, m));
        if (acc == Verdict::True) return acc;
      }
      return acc;
    }
    case FormulaKind::Historically: {
      Verdict acc = Verdict::True;
      for (std::size_t m = 0; m <= n; ++m) {
        acc = kleene_and(acc, eval(*f.child(), env, m));
        if (acc == Verdict::False) return acc;
      }
      return acc;
    }
    case FormulaKind::Abstract: {
      auto elem = resolve(f.argument(), env, n);
      if (!elem) return Verdict::Unknown;  // lenient: symbol not placed yet
      const int var = plan_.intern_variable(f.binder());
      return eval(*f.child(), envs_.bind(env, var, *elem), n);
    }
  }
  return Verdict::Unknown;
}

// ---------------------------------------------------------------------------
// LassoEval
// ---------------------------------------------------------------------------

void LassoEval::attach(const TraceModel& m) {
  assert(m.has_lasso());
  model_ = &m;
  period_ = m.lasso_period();
  stab_ = m.lasso_prefix() +
          period_ * (static_cast<std::size_t>(
                         plan_.temporal_depth(plan_.root_id())) +
                     2);
  memo_.clear();
}

std::size_t LassoEval::canon(std::size_t n) const {
  if (n < stab_ + period_) return n;
  return stab_ + (n - stab_) % period_;
}

bool LassoEval::at(std::size_t position, int env) {
  assert(model_ != nullptr);
  return eval(plan_.root(), env, canon(position));
}

int LassoEval::resolve(const Term& t, int env, std::size_t n) {
  if (t.kind == TermKind::Variable) {
    auto var = plan_.variable_id(t.name);
    auto elem = var ? envs_.lookup(env, *var) : std::nullopt;
    if (!elem) throw EvalError("unbound variable '" + t.name + "'");
    return *elem;
  }
  return model_->constant_id_at(t.name, n);
}

bool LassoEval::eval(const Formula& f, int env, std::size_t n) {
  const std::uint64_t key = pack_key(plan_.node_id(f), env, n);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second != 0;
  const bool v = compute(f, env, n);
  memo_.emplace(key, v ? 1 : 0);
  return v;
}

bool LassoEval::compute(const Formula& f, int env, std::size_t n) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      std::vector<int> tuple;
      tuple.reserve(f.args().size());
      for (const auto& a : f.args()) {
        auto var = plan_.variable_id(a);
        auto elem = var ? envs_.lookup(env, *var) : std::nullopt;
        if (!elem) throw EvalError("unbound variable '" + a + "'");
        tuple.push_back(*elem);
      }
      return model_->predicate_at(f.predicate(), n).count(tuple) != 0;
    }
    case FormulaKind::Eq: {
      auto lv = plan_.variable_id(f.left_var());
      auto rv = plan_.variable_id(f.right_var());
      auto le = lv ? envs_.lookup(env, *lv) : std::nullopt;
      auto re = rv ? envs_.lookup(env, *rv) : std::nullopt;
      if (!le) throw EvalError("unbound variable '" + f.left_var() + "'");
      if (!re) throw EvalError("unbound variable '" + f.right_var() + "'");
      return *le == *re;
    }
    case FormulaKind::Not:
      return !eval(*f.child(), env, n);
    case FormulaKind::And:
      return eval(*f.lhs(), env, n) && eval(*f.rhs(), env, n);
    case FormulaKind::Or:
      return eval(*f.lhs(), env, n) || eval(*f.rhs(), env, n);
    case FormulaKind::Implies:
      return !eval(*f.lhs(), env, n) || eval(*f.rhs(), env, n);
    case FormulaKind::Next:
      return eval(*f.child(), env, canon(n + 1));
    case FormulaKind::Eventually: {
      for (std::size_t m = n; m < stab_ + 2 * period_; ++m)
        if (eval(*f.child(), env, canon(m))) return true;
      return false;
    }
    case FormulaKind::Always: {
      for (std::size_t m = n; m < stab_ + 2 * period_; ++m)
        if (!eval(*f.child(), env, canon(m))) return false;
      return true;
    }
    case FormulaKind::Yesterday:
      return n > 0 && eval(*f.child(), env, n - 1);
    case FormulaKind::Once: {
      for (std::size_t m = 0; m <= n; ++m)
        if (eval(*f.child(), env, m)) return true;
      return false;
    }
    case FormulaKind::Historically: {
      for (std::size_t m = 0; m <= n; ++m)
        if (!eval(*f.child(), env, m)) return false;
      return true;
    }
    case FormulaKind::Abstract: {
      const int elem = resolve(f.argument(), env, n);
      const int var = plan_.intern_variable(f.binder());
      return eval(*f.child(), envs_.bind(env, var, elem), n);
    }
  }
  return false;
}

int assignment_env(EvalPlan& plan, EnvTable& envs, const TraceModel& m,
                   const Assignment& a) {
  int env = 0;
  for (const auto& [var, elem] : a) {
    auto id = m.element_id(elem);
    if (!id)
      throw EvalError("assignment target '" + elem + "' for variable '" + var +
                      "' is not a domain element");
    env = envs.bind(env, plan.intern_variable(var), *id);
  }
  return env;
}

}  // namespace pebbletl::detail
