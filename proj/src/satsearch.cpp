#include "pebbletl/satsearch.hpp"

#include <algorithm>

#include "evaluator.hpp"

namespace pebbletl {

void collect_symbols(const Formula& f, std::set<std::string>& constants,
                     std::map<std::string, std::size_t>& predicates) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      predicates[f.predicate()] = f.args().size();
      break;
    case FormulaKind::Eq:
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_symbols(*f.lhs(), constants, predicates);
      collect_symbols(*f.rhs(), constants, predicates);
      break;
    case FormulaKind::Abstract:
      if (f.argument().kind == TermKind::Constant)
        constants.insert(f.argument().name);
      collect_symbols(*f.child(), constants, predicates);
      break;
    default:
      collect_symbols(*f.child(), constants, predicates);
      break;
  }
}

namespace {

std::vector<std::string> element_names(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

// All tuples over [0, n)^arity in lexicographic order.
std::vector<std::vector<int>> tuple_space(int n, std::size_t arity) {
  std::vector<std::vector<int>> out;
  std::vector<int> tuple(arity, 0);
  for (;;) {
    out.push_back(tuple);
    std::size_t i = arity;
    while (i > 0 && ++tuple[i - 1] == n) tuple[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

constexpr std::size_t kNoPreds = static_cast<std::size_t>(-1);

struct Enumerator {
  const std::vector<std::string>& constants;
  const std::vector<std::pair<std::string, std::size_t>>& predicates;
  const SearchScope& scope;
  const SearchOptions& options;
  const std::function<bool(const TraceModel&)>& fn;
  const std::function<bool(const TraceModel&)>& prune;

  int domain_size = 1;
  std::size_t prefix = 0, period = 1, total = 1;
  std::vector<std::vector<int>> const_tl{};             // [constant][position]
  std::vector<std::vector<TupleSet>> pred_tl{};         // [predicate][position]
  std::vector<std::vector<std::vector<int>>> tuples{};  // per predicate
  int used = 0;
  std::uint64_t steps = 0;
  bool stopped = false;

  void charge() {
    if (++steps > scope.ceiling)
      throw SearchLimitError(
          "enumeration budget exceeded (" + std::to_string(scope.ceiling) +
          " steps); shrink the scope or raise the ceiling");
  }

  // The observed part of the candidate under construction: constants with
  // index <= placed_consts carry placed_len positions, everything else one
  // position less. Used for pruning, so ragged timelines are fine.
  TraceModel snapshot_partial(std::size_t placed_len, std::size_t placed_consts,
                              std::size_t placed_preds) const {
    TraceModel m(element_names(domain_size), placed_len);
    for (std::size_t c = 0; c < constants.size(); ++c) {
      const std::size_t len = c <= placed_consts ? placed_len : placed_len - 1;
      m.set_constant_ids(constants[c], std::vector<int>(const_tl[c].begin(),
                                                        const_tl[c].begin() + len));
    }
    for (std::size_t p = 0; p < predicates.size(); ++p) {
      const std::size_t len =
          placed_preds != kNoPreds && p <= placed_preds ? placed_len
                                                        : placed_len - 1;
      m.set_predicate(predicates[p].first,
                      std::vector<TupleSet>(pred_tl[p].begin(),
                                            pred_tl[p].begin() + len));
    }
    return m;
  }

  TraceModel complete_model() const {
    TraceModel m(element_names(domain_size), total);
    m.set_lasso(prefix, period);
    for (std::size_t c = 0; c < constants.size(); ++c)
      m.set_constant_ids(constants[c], const_tl[c]);
    for (std::size_t p = 0; p < predicates.size(); ++p)
      m.set_predicate(predicates[p].first, pred_tl[p]);
    return m;
  }

  void run() {
    const int max_domain = constants.empty() ? 1 : scope.max_domain;
    for (domain_size = 1; domain_size <= max_domain && !stopped; ++domain_size) {
      for (std::size_t p = 0; p < predicates.size(); ++p) {
        const std::size_t arity = predicates[p].second;
        double combos = 1;
        for (std::size_t i = 0; i < arity; ++i) combos *= domain_size;
        if (combos > 20)
          throw SearchLimitError("predicate step space too large for '" +
                                 predicates[p].first + "'");
      }
      tuples.clear();
      for (const auto& [name, arity] : predicates)
        tuples.push_back(tuple_space(domain_size, arity));
      const std::size_t max_total =
          static_cast<std::size_t>(scope.max_prefix) + scope.max_period;
      for (total = 1; total <= max_total && !stopped; ++total) {
        for (prefix = 0; prefix + 1 <= total && !stopped; ++prefix) {
          if (prefix > static_cast<std::size_t>(scope.max_prefix)) break;
          period = total - prefix;
          if (period < 1 || period > static_cast<std::size_t>(scope.max_period))
            continue;
          const_tl.assign(constants.size(), std::vector<int>(total, 0));
          pred_tl.assign(predicates.size(),
                         std::vector<TupleSet>(total, TupleSet{}));
          used = 0;
          place_position(0);
        }
      }
    }
  }

  void place_position(std::size_t pos) {
    if (stopped) return;
    if (pos == total) {
      complete();
      return;
    }
    if (constants.empty())
      place_predicate(pos, 0);
    else
      place_constant(pos, 0);
  }

  void place_constant(std::size_t pos, std::size_t c) {
    if (stopped) return;
    if (c == constants.size()) {
      place_predicate(pos, 0);
      return;
    }
    const int limit = options.canonical ? std::min(used, domain_size - 1)
                                        : domain_size - 1;
    // Slots left after this one; a completion can add at most one fresh
    // element per slot, so branches that cannot reach full domain use are
    // cut here instead of at the leaves.
    const std::size_t remaining =
        (total - pos - 1) * constants.size() + (constants.size() - c - 1);
    for (int value = 0; value <= limit && !stopped; ++value) {
      charge();
      const_tl[c][pos] = value;
      const int prev_used = used;
      if (options.canonical) {
        used = std::max(used, value + 1);
        if (used + static_cast<int>(remaining) < domain_size) {
          used = prev_used;
          continue;
        }
      }
      if (prune && prune(snapshot_partial(pos + 1, c, kNoPreds))) {
        used = prev_used;
        continue;
      }
      place_constant(pos, c + 1);
      used = prev_used;
    }
  }

  void place_predicate(std::size_t pos, std::size_t p) {
    if (stopped) return;
    if (p == predicates.size()) {
      place_position(pos + 1);
      return;
    }
    const auto& space = tuples[p];
    const std::uint64_t masks = std::uint64_t{1} << space.size();
    for (std::uint64_t mask = 0; mask < masks && !stopped; ++mask) {
      charge();
      TupleSet step;
      for (std::size_t t = 0; t < space.size(); ++t)
        if (mask & (std::uint64_t{1} << t)) step.insert(space[t]);
      pred_tl[p][pos] = std::move(step);
      if (prune && prune(snapshot_partial(pos + 1, constants.size(), p)))
        continue;
      place_predicate(pos, p + 1);
    }
    pred_tl[p][pos].clear();
  }

  void complete() {
    if (options.canonical && !constants.empty() && used != domain_size)
      return;  // uses fewer elements; already enumerated at the smaller size
    if (!options.canonical && !constants.empty()) {
      std::set<int> distinct;
      for (const auto& tl : const_tl) distinct.insert(tl.begin(), tl.end());
      if (static_cast<int>(distinct.size()) != domain_size) return;
    }
    if (!fn(complete_model())) stopped = true;
  }
};

}  // namespace

void for_each_model(
    const std::vector<std::string>& constants,
    const std::vector<std::pair<std::string, std::size_t>>& predicates,
    const SearchScope& scope, const SearchOptions& options,
    const std::function<bool(const TraceModel&)>& fn,
    const std::function<bool(const TraceModel&)>& prune) {
  if (scope.max_domain < 1 || scope.max_prefix < 0 || scope.max_period < 1)
    throw std::invalid_argument("search scope bounds must be positive");
  std::vector<std::string> cs = constants;
  std::sort(cs.begin(), cs.end());
  std::vector<std::pair<std::string, std::size_t>> ps = predicates;
  std::sort(ps.begin(), ps.end());
  Enumerator e{cs, ps, scope, options, fn, prune};
  e.run();
}

std::optional<TraceModel> find_model(const FormulaPtr& f,
                                     const SearchScope& scope,
                                     const SearchOptions& options) {
  if (!f) throw std::invalid_argument("null formula");
  if (!is_sentence(*f))
    throw std::invalid_argument("find_model needs a sentence");
  std::set<std::string> consts;
  std::map<std::string, std::size_t> preds;
  collect_symbols(*f, consts, preds);
  if (static_cast<int>(preds.size()) > scope.max_predicates)
    throw SearchLimitError("formula mentions " + std::to_string(preds.size()) +
                           " predicates, budget is " +
                           std::to_string(scope.max_predicates));
  for (const auto& [name, arity] : preds)
    if (static_cast<int>(arity) > scope.max_pred_arity)
      throw SearchLimitError("predicate '" + name + "' arity " +
                             std::to_string(arity) + " exceeds the budget");

  detail::EvalPlan plan(f);
  detail::LassoEval candidate_eval(plan);
  detail::BoundedEval prune_eval(plan, /*lenient=*/true);

  std::optional<TraceModel> found;
  auto on_candidate = [&](const TraceModel& m) {
    candidate_eval.attach(m);
    if (candidate_eval.at(0)) {
      // Re-check through the public entry point before reporting a hit.
      if (!validate_model(m).empty() || !eval_lasso(m, f, {}, 0))
        throw std::logic_error("search produced a model failing its re-check");
      found = m;
      return false;
    }
    return true;
  };
  std::function<bool(const TraceModel&)> prune;
  if (options.bounded_prune)
    prune = [&](const TraceModel& partial) {
      // A definite refutation of the placed part persists in every
      // extension, including every completed lasso below this node.
      prune_eval.attach(partial);
      return prune_eval.at(0) == Verdict::False;
    };
  for_each_model({consts.begin(), consts.end()}, {preds.begin(), preds.end()},
                 scope, options, on_candidate, prune);
  return found;
}

std::optional<TraceModel> check_validity_small_scope(
    const FormulaPtr& f, const SearchScope& scope,
    const SearchOptions& options) {
  if (!f) throw std::invalid_argument("null formula");
  return find_model(Formula::Not(f), scope, options);
}

}  // namespace pebbletl
