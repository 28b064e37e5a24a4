#include "pebbletl/equiv.hpp"

#include <algorithm>
#include <numeric>

namespace pebbletl {

namespace {

std::size_t lcm_size(std::size_t a, std::size_t b) {
  return a / std::gcd(a, b) * b;
}

}  // namespace

EquivResult pebble_equivalent(const TraceModel& m1, const TraceModel& m2,
                              const EquivScope& scope) {
  if (scope.horizon == 0) throw EquivError("scope horizon must be >= 1");
  for (const auto& c : scope.alphabet.constants)
    if (!m1.has_constant(c) || !m2.has_constant(c))
      throw EquivError("alphabet mismatch: constant '" + c +
                       "' missing from a model");
  for (const auto& [p, arity] : scope.alphabet.predicates)
    if (!m1.has_predicate(p) || !m2.has_predicate(p))
      throw EquivError("alphabet mismatch: predicate '" + p +
                       "' missing from a model");

  const bool exact = m1.has_lasso() && m2.has_lasso();
  std::size_t horizon;
  if (exact) {
    // Interpretations on both sides are ultimately periodic, so comparing
    // every residue class of the combined period decides all of time.
    horizon = std::max(m1.lasso_prefix(), m2.lasso_prefix()) +
              lcm_size(m1.lasso_period(), m2.lasso_period());
  } else {
    horizon = scope.horizon;
    for (const TraceModel* m : {&m1, &m2})
      if (!m->has_lasso() && m->length() < horizon)
        throw EquivError("prefix model (length " + std::to_string(m->length()) +
                         ") does not cover the scope horizon " +
                         std::to_string(horizon));
  }

  EquivResult result;
  result.checked_horizon = horizon;

  for (const auto& c : scope.alphabet.constants)
    for (std::size_t i = 0; i < horizon; ++i)
      if (m1.constant_at(c, i) != m2.constant_at(c, i)) {
        result.status = EquivStatus::NotEquivalent;
        result.witness = EquivWitness{i, c, std::nullopt};
        return result;
      }

  // V: every element some constant ever visits (identical in both models
  // once the constant clause holds). For a lasso the full visited set is
  // reached by the end of the first loop traversal.
  std::set<std::string> visited;
  for (const auto& c : scope.alphabet.constants) {
    const std::size_t upto =
        m1.has_lasso() ? std::max(horizon, m1.length()) - 1 : horizon - 1;
    auto v = m1.visited(c, upto);
    visited.insert(v.begin(), v.end());
  }

  for (const auto& [p, arity] : scope.alphabet.predicates) {
    // All tuples over V of the declared arity, in lexicographic order.
    std::vector<std::string> pool(visited.begin(), visited.end());
    std::vector<std::size_t> index(arity, 0);
    std::vector<std::vector<std::string>> tuples;
    if (pool.empty() && arity > 0) continue;
    for (;;) {
      std::vector<std::string> tuple;
      for (std::size_t i = 0; i < arity; ++i) tuple.push_back(pool[index[i]]);
      tuples.push_back(std::move(tuple));
      std::size_t i = arity;
      while (i > 0 && ++index[i - 1] == pool.size()) index[--i] = 0;
      if (i == 0) break;
    }

    for (std::size_t i = 0; i < horizon; ++i) {
      const TupleSet& s1 = m1.predicate_at(p, i);
      const TupleSet& s2 = m2.predicate_at(p, i);
      for (const auto& tuple : tuples) {
        std::vector<int> t1, t2;
        bool resolvable = true;
        for (const auto& name : tuple) {
          auto id1 = m1.element_id(name);
          auto id2 = m2.element_id(name);
          if (!id1 || !id2) {
            resolvable = false;
            break;
          }
          t1.push_back(*id1);
          t2.push_back(*id2);
        }
        // Visited elements live in both domains when constants coincide.
        if (!resolvable) continue;
        if ((s1.count(t1) != 0) != (s2.count(t2) != 0)) {
          result.status = EquivStatus::NotEquivalent;
          result.witness = EquivWitness{i, p, tuple};
          return result;
        }
      }
    }
  }

  result.status = exact ? EquivStatus::Equivalent : EquivStatus::BoundedEquivalent;
  return result;
}

TraceModel extend_with_flicker(const TraceModel& m, const std::string& E) {
  if (m.has_predicate(E)) {
    for (const auto& step : m.predicate_timeline(E))
      for (const auto& tuple : step)
        if (tuple.size() != 2)
          throw EquivError("predicate '" + E + "' is not binary");
  }
  if (m.has_lasso() && m.lasso_period() % 2 != 0)
    throw EquivError(
        "flicker extension needs an even loop period (apply double_period "
        "first)");

  // Two fresh element names that do not collide with the domain.
  std::vector<std::string> fresh;
  for (int i = 0; fresh.size() < 2; ++i) {
    std::string name = "fl" + std::to_string(i);
    if (!m.element_id(name)) fresh.push_back(name);
  }

  std::vector<std::string> domain = m.domain();
  domain.insert(domain.end(), fresh.begin(), fresh.end());
  TraceModel out(domain, m.length());
  if (m.has_lasso()) out.set_lasso(m.lasso_prefix(), m.lasso_period());

  for (const auto& c : m.constants()) {
    std::vector<std::string> tl;
    for (int id : m.constant_timeline(c)) tl.push_back(m.element_name(id));
    out.set_constant(c, tl);
  }

  const int f0 = *out.element_id(fresh[0]);
  const int f1 = *out.element_id(fresh[1]);
  auto remap_steps = [&](const std::string& p) {
    std::vector<TupleSet> steps;
    if (!m.has_predicate(p)) {
      steps.assign(m.length(), {});
      return steps;
    }
    for (const auto& step : m.predicate_timeline(p)) {
      TupleSet remapped;
      for (const auto& tuple : step) {
        std::vector<int> t;
        for (int id : tuple) t.push_back(*out.element_id(m.element_name(id)));
        remapped.insert(std::move(t));
      }
      steps.push_back(std::move(remapped));
    }
    return steps;
  };

  for (const auto& p : m.predicates())
    if (p != E) out.set_predicate(p, remap_steps(p));

  std::vector<TupleSet> e_steps = remap_steps(E);
  for (std::size_t i = 0; i < e_steps.size(); ++i) {
    if (i % 2 != 0) continue;  // fresh pairs flicker: on at even moments only
    for (int x : {f0, f1})
      for (int y : {f0, f1}) e_steps[i].insert({x, y});
  }
  out.set_predicate(E, std::move(e_steps));
  return out;
}

std::vector<std::string> flicker_elements(const TraceModel& extended,
                                          const TraceModel& original) {
  std::vector<std::string> out;
  for (const auto& e : extended.domain())
    if (!original.element_id(e)) out.push_back(e);
  return out;
}

}  // namespace pebbletl
