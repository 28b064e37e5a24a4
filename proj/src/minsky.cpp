#include "pebbletl/minsky.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace pebbletl {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Tokenizes an instruction body into uppercase words, numbers and ';'.
std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == ';') {
      flush();
      out.push_back(";");
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

int parse_counter(const std::string& w, const std::string& line) {
  if (w == "S1") return 1;
  if (w == "S2") return 2;
  throw MachineError("expected S1 or S2 in: " + line);
}

int parse_label_num(const std::string& w, const std::string& line) {
  if (w.empty() || w.size() > 6 ||
      w.find_first_not_of("0123456789") != std::string::npos)
    throw MachineError("expected a label number, got '" + w + "' in: " + line);
  return std::stoi(w);
}

Instruction parse_body(const std::vector<std::string>& w, const std::string& line) {
  auto want = [&](std::size_t i, const std::string& expect) {
    if (i >= w.size() || w[i] != expect)
      throw MachineError("expected '" + expect + "' in: " + line);
  };
  if (w.empty()) throw MachineError("empty instruction in: " + line);
  if (w[0] == "STOP") {
    if (w.size() != 1) throw MachineError("trailing input after STOP in: " + line);
    return StopInstruction{};
  }
  if (w[0] == "ADD") {
    // ADD 1 TO Sk ; GOTO l
    want(1, "1");
    want(2, "TO");
    if (w.size() < 4) throw MachineError("truncated ADD in: " + line);
    const int k = parse_counter(w[3], line);
    want(4, ";");
    want(5, "GOTO");
    if (w.size() != 7) throw MachineError("malformed ADD in: " + line);
    return AddInstruction{k, parse_label_num(w[6], line)};
  }
  if (w[0] == "IF") {
    // IF Sk != 0 THEN SUB 1 FROM Sk ; GOTO l ELSE GOTO l'
    if (w.size() < 2) throw MachineError("truncated IF in: " + line);
    const int k = parse_counter(w[1], line);
    want(2, "!=");
    want(3, "0");
    want(4, "THEN");
    if (w.size() < 6 || (w[5] != "SUB" && w[5] != "SUBTRACT"))
      throw MachineError("expected SUB in: " + line);
    want(6, "1");
    want(7, "FROM");
    if (w.size() < 9) throw MachineError("truncated SUB in: " + line);
    if (parse_counter(w[8], line) != k)
      throw MachineError("SUB counter differs from the tested one in: " + line);
    want(9, ";");
    want(10, "GOTO");
    if (w.size() < 12) throw MachineError("truncated GOTO in: " + line);
    const int nonzero = parse_label_num(w[11], line);
    want(12, "ELSE");
    want(13, "GOTO");
    if (w.size() != 15) throw MachineError("malformed IF in: " + line);
    return SubInstruction{k, nonzero, parse_label_num(w[14], line)};
  }
  throw MachineError("unknown instruction in: " + line);
}

}  // namespace

MinskyMachine parse_machine(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<int, Instruction> by_label;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos)
      throw MachineError("instruction line missing 'label:': " + t);
    const int label = parse_label_num(trim(t.substr(0, colon)), t);
    if (by_label.count(label))
      throw MachineError("duplicate label " + std::to_string(label));
    by_label.emplace(label, parse_body(words(trim(t.substr(colon + 1))), t));
  }
  if (by_label.empty()) throw MachineError("machine has no instructions");
  const int L = by_label.rbegin()->first;
  MinskyMachine m;
  for (int l = 1; l <= L; ++l) {
    auto it = by_label.find(l);
    if (it == by_label.end())
      throw MachineError("missing label " + std::to_string(l) +
                         " (labels must cover 1..L)");
    m.instructions.push_back(it->second);
  }
  int stops = 0;
  for (int l = 1; l <= L; ++l) {
    const Instruction& ins = m.at_label(l);
    if (std::holds_alternative<StopInstruction>(ins)) {
      ++stops;
      if (l != L)
        throw MachineError("STOP must be the last instruction (found at label " +
                           std::to_string(l) + " of " + std::to_string(L) + ")");
    }
    auto check_target = [&](int tgt) {
      if (tgt < 1 || tgt > L)
        throw MachineError("GOTO target " + std::to_string(tgt) +
                           " outside 1.." + std::to_string(L));
    };
    if (const auto* add = std::get_if<AddInstruction>(&ins)) check_target(add->target);
    if (const auto* sub = std::get_if<SubInstruction>(&ins)) {
      check_target(sub->target_nonzero);
      check_target(sub->target_zero);
    }
  }
  if (stops != 1)
    throw MachineError("machine must contain exactly one STOP, found " +
                       std::to_string(stops));
  return m;
}

std::optional<MachineState> step(const MinskyMachine& m, const MachineState& s) {
  const Instruction& ins = m.at_label(s.label);
  if (std::holds_alternative<StopInstruction>(ins)) return std::nullopt;
  MachineState next = s;
  if (const auto* add = std::get_if<AddInstruction>(&ins)) {
    (add->counter == 1 ? next.counter1 : next.counter2) += 1;
    next.label = add->target;
    return next;
  }
  const auto& sub = std::get<SubInstruction>(ins);
  auto& counter = sub.counter == 1 ? next.counter1 : next.counter2;
  if (counter != 0) {
    counter -= 1;
    next.label = sub.target_nonzero;
  } else {
    next.label = sub.target_zero;
  }
  return next;
}

RunResult run_from(const MinskyMachine& m, std::int64_t c1, std::int64_t c2,
                   std::size_t max_steps) {
  RunResult r;
  MachineState s{1, c1, c2};
  r.states.push_back(s);
  while (r.states.size() < max_steps) {
    if (s.label == m.stop_label()) break;
    auto next = step(m, s);
    if (!next) break;
    s = *next;
    r.states.push_back(s);
  }
  r.halted = s.label == m.stop_label();
  return r;
}

RunResult run(const MinskyMachine& m, std::size_t max_steps) {
  return run_from(m, 0, 0, max_steps);
}

std::string format_run(const RunResult& r) {
  std::ostringstream out;
  out << "step  label  S1  S2\n";
  for (std::size_t i = 0; i < r.states.size(); ++i) {
    const auto& s = r.states[i];
    out << i;
    for (std::size_t pad = std::to_string(i).size(); pad < 6; ++pad) out << ' ';
    out << s.label;
    for (std::size_t pad = std::to_string(s.label).size(); pad < 7; ++pad) out << ' ';
    out << s.counter1;
    for (std::size_t pad = std::to_string(s.counter1).size(); pad < 4; ++pad) out << ' ';
    out << s.counter2 << "\n";
  }
  out << (r.halted ? "halted\n" : "not halted within bound\n");
  return out.str();
}

}  // namespace pebbletl
