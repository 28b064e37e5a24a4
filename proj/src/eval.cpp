#include "pebbletl/eval.hpp"

#include "evaluator.hpp"

namespace pebbletl {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "True";
    case Verdict::False: return "False";
    default: return "Unknown";
  }
}

Verdict kleene_not(Verdict v) {
  if (v == Verdict::True) return Verdict::False;
  if (v == Verdict::False) return Verdict::True;
  return Verdict::Unknown;
}

Verdict kleene_and(Verdict a, Verdict b) {
  if (a == Verdict::False || b == Verdict::False) return Verdict::False;
  if (a == Verdict::True && b == Verdict::True) return Verdict::True;
  return Verdict::Unknown;
}

Verdict kleene_or(Verdict a, Verdict b) {
  if (a == Verdict::True || b == Verdict::True) return Verdict::True;
  if (a == Verdict::False && b == Verdict::False) return Verdict::False;
  return Verdict::Unknown;
}

namespace {

void require_assigned(const Formula& f, const Assignment& a) {
  for (const auto& v : free_variables(f))
    if (a.find(v) == a.end())
      throw EvalError("free variable '" + v + "' is not assigned");
}

}  // namespace

bool eval_lasso(const TraceModel& m, const FormulaPtr& f, const Assignment& a,
                std::size_t position) {
  if (!f) throw EvalError("null formula");
  if (!m.has_lasso()) throw EvalError("eval_lasso requires a lasso model");
  require_assigned(*f, a);
  detail::EvalPlan plan(f);
  detail::LassoEval eval(plan);
  eval.attach(m);
  const int env = detail::assignment_env(plan, eval.envs(), m, a);
  return eval.at(position, env);
}

Verdict eval_bounded(const TraceModel& m, const FormulaPtr& f,
                     const Assignment& a, std::size_t position) {
  if (!f) throw EvalError("null formula");
  if (m.has_lasso())
    throw EvalError("eval_bounded expects a finite prefix, not a lasso model");
  if (position >= m.length())
    throw EvalError("position " + std::to_string(position) +
                    " is beyond the observed prefix");
  require_assigned(*f, a);
  detail::EvalPlan plan(f);
  detail::BoundedEval eval(plan, /*lenient=*/false);
  eval.attach(m);
  const int env = detail::assignment_env(plan, eval.envs(), m, a);
  return eval.at(position, env);
}

Verdict eval_sentence(const TraceModel& m, const FormulaPtr& f,
                      std::size_t position) {
  if (!f) throw EvalError("null formula");
  if (!is_sentence(*f))
    throw EvalError("eval_sentence requires a sentence; free variables: " + [&] {
      std::string out;
      for (const auto& v : free_variables(*f)) {
        if (!out.empty()) out += ", ";
        out += v;
      }
      return out;
    }());
  if (m.has_lasso()) return to_verdict(eval_lasso(m, f, {}, position));
  return eval_bounded(m, f, {}, position);
}

}  // namespace pebbletl
