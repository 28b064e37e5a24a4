#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pebbletl/eval.hpp"
#include "pebbletl/minsky.hpp"
#include "pebbletl/model.hpp"
#include "pebbletl/syntax.hpp"

namespace pebbletl {

/// Constant names used by the machine translation, derived from the stop
/// label L: instruction markers e0..eL, the program counter f, the path
/// generator d, and the counter pebbles a1, b1, a2, b2.
struct TranslationAlphabet {
  int stop_label = 1;

  explicit TranslationAlphabet(int L) : stop_label(L) {}

  std::string e(int l) const { return "e" + std::to_string(l); }
  std::string f() const { return "f"; }
  std::string d() const { return "d"; }
  std::string a(int k) const { return "a" + std::to_string(k); }
  std::string b(int k) const { return "b" + std::to_string(k); }

  Alphabet to_alphabet() const;
};

/// Q_l: "instruction l executes now", encoded as Same(e_l, f).
/// l ranges over 0..L; Q_L is Q_stop.
FormulaPtr q_formula(int label, const TranslationAlphabet& alpha);

/// The per-instruction rule block: A1..A5 for ADD, B1..B7 for SUB. The
/// NextNew constraint uses the two-constant variant (NextNew2). Throws
/// std::invalid_argument for STOP.
FormulaPtr translate_instruction(int label, const Instruction& instr,
                                 const TranslationAlphabet& alpha);

/// The initial-configuration formula: Q_0 with all counter pebbles on d's
/// start element; next moment Q_1 with the pebbles unmoved and d gone
/// fresh; d always fresh and the instruction markers pairwise apart.
FormulaPtr chi_zero(const TranslationAlphabet& alpha);

/// chi_zero conjoined with every non-STOP instruction's rule block.
FormulaPtr translate_machine(const MinskyMachine& m);

/// The run-shaped model from the halting-direction construction: a prefix
/// of length horizon + 1 where d walks a fresh element every moment, f sits
/// on the marker of the instruction executing at each moment (moment 0
/// carries Q_0, moment j >= 1 carries Q_{l_j}), and the counter pebbles
/// advance along d's path so that counter k after j steps equals
/// |V_{a_k}^{j+1}| - |V_{b_k}^{j+1}|. After a halt everything but d
/// freezes. Requires horizon >= 2.
TraceModel canonical_model(const MinskyMachine& m, std::size_t horizon);

/// One row of a certification report: a named rule kernel evaluated at
/// each checked position (A/B rule bodies under their box at every moment;
/// the chi_zero bullets at the moments they speak about).
struct RuleCheck {
  std::string rule;
  FormulaPtr kernel;
  std::vector<std::size_t> positions;
  std::vector<Verdict> verdicts;
};

struct CounterCheck {
  int counter = 1;
  std::size_t step = 0;          // run step j; compared at moment j + 1
  std::int64_t machine_value = 0;
  std::int64_t model_value = 0;  // |V_a^{j+1}| - |V_b^{j+1}|
  bool subset_chain_ok = true;   // V_b <= V_a <= V_d at that moment
  bool ok() const { return machine_value == model_value && subset_chain_ok; }
};

struct CertReport {
  std::size_t horizon = 0;
  std::vector<RuleCheck> rules;
  std::vector<CounterCheck> counters;
  bool no_violation = false;       // no rule kernel definitely false anywhere
  bool counter_relation_ok = false;
  std::optional<std::size_t> q_stop_seen_at;

  std::string to_text() const;
};

/// Builds the canonical model, bounded-evaluates every translation rule at
/// every checkable position, verifies the counter-cardinality relation
/// against the simulator, and records the first moment Q_stop holds.
CertReport certify(const MinskyMachine& m, std::size_t horizon);

}  // namespace pebbletl
