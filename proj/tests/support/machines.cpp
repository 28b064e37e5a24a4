#include "support/machines.hpp"

namespace pebbletl::testing {

const std::vector<MachineSpec>& machine_corpus() {
  static const std::vector<MachineSpec> corpus = {
      {"stop_only", "1: STOP\n", true, 1},
      {"add_stop",
       "1: ADD 1 TO S1; GOTO 2\n"
       "2: STOP\n",
       true, 2},
      {"add_stop_c2",
       "1: ADD 1 TO S2; GOTO 2\n"
       "2: STOP\n",
       true, 2},
      {"sub_zero_stop",
       "1: IF S1 != 0 THEN SUB 1 FROM S1; GOTO 1 ELSE GOTO 2\n"
       "2: STOP\n",
       true, 2},
      {"add_twice_drain",
       "1: ADD 1 TO S1; GOTO 2\n"
       "2: ADD 1 TO S1; GOTO 3\n"
       "3: IF S1 != 0 THEN SUB 1 FROM S1; GOTO 3 ELSE GOTO 4\n"
       "4: STOP\n",
       true, 6},
      {"add3_drain",
       "1: ADD 1 TO S1; GOTO 2\n"
       "2: ADD 1 TO S1; GOTO 3\n"
       "3: ADD 1 TO S1; GOTO 4\n"
       "4: IF S1 != 0 THEN SUB 1 FROM S1; GOTO 4 ELSE GOTO 5\n"
       "5: STOP\n",
       true, 8},
      {"transfer_drain",
       "1: ADD 1 TO S1; GOTO 2\n"
       "2: ADD 1 TO S1; GOTO 3\n"
       "3: IF S1 != 0 THEN SUB 1 FROM S1; GOTO 4 ELSE GOTO 5\n"
       "4: ADD 1 TO S2; GOTO 3\n"
       "5: IF S2 != 0 THEN SUB 1 FROM S2; GOTO 5 ELSE GOTO 6\n"
       "6: STOP\n",
       true, 11},
      {"nested_loops",
       "1: ADD 1 TO S1; GOTO 2\n"
       "2: ADD 1 TO S1; GOTO 3\n"
       "3: IF S1 != 0 THEN SUB 1 FROM S1; GOTO 4 ELSE GOTO 7\n"
       "4: ADD 1 TO S2; GOTO 5\n"
       "5: ADD 1 TO S2; GOTO 6\n"
       "6: IF S2 != 0 THEN SUB 1 FROM S2; GOTO 6 ELSE GOTO 3\n"
       "7: STOP\n",
       true, 16},
      {"self_loop_add",
       "1: ADD 1 TO S1; GOTO 1\n"
       "2: STOP\n",
       false, 0},
      {"ping_pong",
       "1: ADD 1 TO S1; GOTO 2\n"
       "2: ADD 1 TO S2; GOTO 1\n"
       "3: STOP\n",
       false, 0},
      {"add_sub_cycle",
       "1: ADD 1 TO S1; GOTO 2\n"
       "2: IF S1 != 0 THEN SUB 1 FROM S1; GOTO 1 ELSE GOTO 1\n"
       "3: STOP\n",
       false, 0},
      {"zero_spin",
       "1: IF S1 != 0 THEN SUB 1 FROM S1; GOTO 2 ELSE GOTO 1\n"
       "2: STOP\n",
       false, 0},
  };
  return corpus;
}

}  // namespace pebbletl::testing
