#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "pebbletl/model.hpp"
#include "pebbletl/syntax.hpp"

namespace pebbletl {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Three-valued truth value for bounded evaluation. Lasso-mode evaluation
/// is definite and never produces Unknown.
enum class Verdict { False, Unknown, True };

const char* to_string(Verdict v);

Verdict kleene_not(Verdict v);
Verdict kleene_and(Verdict a, Verdict b);
Verdict kleene_or(Verdict a, Verdict b);
inline Verdict kleene_implies(Verdict a, Verdict b) {
  return kleene_or(kleene_not(a), b);
}
inline Verdict to_verdict(bool b) { return b ? Verdict::True : Verdict::False; }

/// Rigid variable assignment: variable name -> domain element name.
using Assignment = std::map<std::string, std::string>;

/// Definite truth value of f at the given moment of the infinite trace
/// denoted by a lasso model. Next/Eventually/Always quantify over the
/// future, Yesterday/Once/Historically over the past (Yesterday is false
/// at moment 0), and abstraction rebinds its variable to the argument's
/// designation at the current moment.
///
/// Requires free_variables(f) to be assigned, assignment targets to be
/// domain elements, and every constant and predicate f mentions to have a
/// timeline in the model; violations throw EvalError/ModelError.
bool eval_lasso(const TraceModel& m, const FormulaPtr& f, const Assignment& a,
                std::size_t position);

/// Sound three-valued evaluation on a finite prefix: a True (resp. False)
/// result means every infinite extension of the prefix satisfies (resp.
/// falsifies) f at the position. Atoms, equality and abstraction are
/// definite; Next at the last observed moment is Unknown; Eventually is
/// True only when witnessed, Always False only when refuted; past operators
/// quantify over the fully observed past; connectives follow strong Kleene.
Verdict eval_bounded(const TraceModel& m, const FormulaPtr& f,
                     const Assignment& a, std::size_t position);

/// Evaluates a sentence under the empty assignment, dispatching on the
/// model's representation mode: definite lasso evaluation when the model
/// has a loop, bounded three-valued evaluation otherwise. Throws EvalError
/// if f has free variables.
Verdict eval_sentence(const TraceModel& m, const FormulaPtr& f,
                      std::size_t position = 0);

}  // namespace pebbletl
