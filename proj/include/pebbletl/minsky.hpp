#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pebbletl {

class MachineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// l: ADD 1 TO Sk; GOTO l'
struct AddInstruction {
  int counter;  // 1 or 2
  int target;
};

/// l: IF Sk != 0 THEN SUB 1 FROM Sk; GOTO l' ELSE GOTO l''
struct SubInstruction {
  int counter;
  int target_nonzero;
  int target_zero;
};

/// l: STOP
struct StopInstruction {};

using Instruction =
    std::variant<AddInstruction, SubInstruction, StopInstruction>;

/// Two-counter machine: instructions labelled 1..L, exactly one STOP and it
/// is the last instruction. Execution is deterministic and total.
struct MinskyMachine {
  std::vector<Instruction> instructions;  // index i holds label i + 1

  int stop_label() const { return static_cast<int>(instructions.size()); }
  const Instruction& at_label(int label) const {
    return instructions.at(static_cast<std::size_t>(label) - 1);
  }
};

struct MachineState {
  int label = 1;
  std::int64_t counter1 = 0;
  std::int64_t counter2 = 0;

  std::int64_t counter(int k) const { return k == 1 ? counter1 : counter2; }
  friend bool operator==(const MachineState&, const MachineState&) = default;
};

/// Parses the one-instruction-per-line DSL; '#' starts a comment. Labels
/// must cover 1..L exactly once (any line order). SUBTRACT is accepted as a
/// synonym for SUB. Throws MachineError on duplicate labels, targets
/// outside 1..L, and a missing or misplaced STOP.
MinskyMachine parse_machine(const std::string& text);

/// The successor state, or nothing when s sits on STOP.
std::optional<MachineState> step(const MinskyMachine& m, const MachineState& s);

struct RunResult {
  std::vector<MachineState> states;
  bool halted = false;
};

/// The run prefix from (label 1, counters 0, 0): states are produced until
/// the STOP state has been recorded (halted) or max_steps states exist.
RunResult run(const MinskyMachine& m, std::size_t max_steps);

/// Same, but from arbitrary initial counters.
RunResult run_from(const MinskyMachine& m, std::int64_t c1, std::int64_t c2,
                   std::size_t max_steps);

/// Fixed-width table of a run, one line per state.
std::string format_run(const RunResult& r);

}  // namespace pebbletl
