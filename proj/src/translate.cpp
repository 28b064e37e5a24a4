#include "pebbletl/translate.hpp"

#include <algorithm>
#include <sstream>

#include "pebbletl/props.hpp"

namespace pebbletl {

namespace {

FormulaPtr conjoin(std::vector<FormulaPtr> parts) {
  assert(!parts.empty());
  FormulaPtr acc = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    acc = Formula::And(std::move(acc), std::move(parts[i]));
  return acc;
}

}  // namespace

Alphabet TranslationAlphabet::to_alphabet() const {
  Alphabet out;
  for (int l = 0; l <= stop_label; ++l) out.constants.insert(e(l));
  out.constants.insert(f());
  out.constants.insert(d());
  for (int k = 1; k <= 2; ++k) {
    out.constants.insert(a(k));
    out.constants.insert(b(k));
  }
  return out;
}

FormulaPtr q_formula(int label, const TranslationAlphabet& alpha) {
  if (label < 0 || label > alpha.stop_label)
    throw std::invalid_argument("instruction label " + std::to_string(label) +
                                " outside 0.." +
                                std::to_string(alpha.stop_label));
  return same(alpha.to_alphabet(), alpha.e(label), alpha.f());
}

FormulaPtr translate_instruction(int label, const Instruction& instr,
                                 const TranslationAlphabet& alpha) {
  if (std::holds_alternative<StopInstruction>(instr))
    throw std::invalid_argument("STOP has no translation");
  const Alphabet sigma = alpha.to_alphabet();
  const FormulaPtr q = q_formula(label, alpha);
  auto boxed = [](FormulaPtr body) { return Formula::Always(std::move(body)); };

  if (const auto* add = std::get_if<AddInstruction>(&instr)) {
    const int k = add->counter;
    const int other = 3 - k;
    std::vector<FormulaPtr> rules;
    rules.push_back(boxed(Formula::Implies(q, next_new(sigma, 2, alpha.a(k), alpha.d()))));
    rules.push_back(boxed(Formula::Implies(q, no_change(sigma, alpha.b(k)))));
    rules.push_back(boxed(Formula::Implies(q, no_change(sigma, alpha.a(other)))));
    rules.push_back(boxed(Formula::Implies(q, no_change(sigma, alpha.b(other)))));
    rules.push_back(boxed(Formula::Implies(
        q, Formula::Next(q_formula(add->target, alpha)))));
    return conjoin(std::move(rules));
  }

  const auto& sub = std::get<SubInstruction>(instr);
  const int k = sub.counter;
  const int other = 3 - k;
  auto q_and_nonzero = [&] {
    return Formula::And(q, Formula::Not(same(sigma, alpha.a(k), alpha.b(k))));
  };
  auto q_and_zero = [&] {
    return Formula::And(q, same(sigma, alpha.a(k), alpha.b(k)));
  };
  std::vector<FormulaPtr> rules;
  rules.push_back(boxed(Formula::Implies(q_and_nonzero(), no_change(sigma, alpha.a(k)))));
  rules.push_back(boxed(
      Formula::Implies(q_and_nonzero(), next_new(sigma, 2, alpha.b(k), alpha.d()))));
  rules.push_back(boxed(Formula::Implies(q_and_nonzero(), no_change(sigma, alpha.a(other)))));
  rules.push_back(boxed(Formula::Implies(q_and_nonzero(), no_change(sigma, alpha.b(other)))));
  rules.push_back(boxed(Formula::Implies(
      q_and_zero(),
      Formula::And(
          Formula::And(Formula::And(no_change(sigma, alpha.a(k)),
                                    no_change(sigma, alpha.b(k))),
                       no_change(sigma, alpha.a(other))),
          no_change(sigma, alpha.b(other))))));
  rules.push_back(boxed(Formula::Implies(
      q_and_nonzero(), Formula::Next(q_formula(sub.target_nonzero, alpha)))));
  rules.push_back(boxed(Formula::Implies(
      q_and_zero(), Formula::Next(q_formula(sub.target_zero, alpha)))));
  return conjoin(std::move(rules));
}

FormulaPtr chi_zero(const TranslationAlphabet& alpha) {
  const Alphabet sigma = alpha.to_alphabet();
  const int L = alpha.stop_label;

  std::vector<FormulaPtr> first{
      q_formula(0, alpha),
      same(sigma, alpha.d(), alpha.a(1)),
      same(sigma, alpha.a(1), alpha.b(1)),
      same(sigma, alpha.b(1), alpha.a(2)),
      same(sigma, alpha.a(2), alpha.b(2)),
  };

  std::vector<FormulaPtr> second_body{
      q_formula(1, alpha),
      same(sigma, alpha.a(1), alpha.a(2)),
      same(sigma, alpha.a(2), alpha.b(1)),
      same(sigma, alpha.b(1), alpha.b(2)),
      Formula::Not(same(sigma, alpha.a(1), alpha.d())),
  };

  std::vector<FormulaPtr> third{always_new(sigma, alpha.d())};
  std::vector<FormulaPtr> pairs;
  for (int i = 1; i < L; ++i)
    for (int j = i + 1; j <= L; ++j)
      pairs.push_back(Formula::Not(same(sigma, alpha.e(i), alpha.e(j))));
  if (!pairs.empty()) third.push_back(Formula::Always(conjoin(std::move(pairs))));

  return conjoin({conjoin(std::move(first)),
                  Formula::Next(conjoin(std::move(second_body))),
                  conjoin(std::move(third))});
}

FormulaPtr translate_machine(const MinskyMachine& m) {
  const TranslationAlphabet alpha(m.stop_label());
  std::vector<FormulaPtr> parts{chi_zero(alpha)};
  for (int l = 1; l < m.stop_label(); ++l)
    parts.push_back(translate_instruction(l, m.at_label(l), alpha));
  return conjoin(std::move(parts));
}

TraceModel canonical_model(const MinskyMachine& m, std::size_t horizon) {
  if (horizon < 2) throw std::invalid_argument("horizon must be >= 2");
  const TranslationAlphabet alpha(m.stop_label());
  const int L = m.stop_label();
  const std::size_t T = horizon + 1;

  std::vector<std::string> domain;
  for (std::size_t j = 0; j < T; ++j) domain.push_back("u" + std::to_string(j));
  for (int l = 0; l <= L; ++l) domain.push_back("q" + std::to_string(l));
  TraceModel model(std::move(domain), T);
  const int q_base = static_cast<int>(T);

  const RunResult r = run(m, horizon + 1);
  const std::size_t last = r.states.size() - 1;

  // d walks a fresh element every moment; the markers never move.
  {
    std::vector<int> d_tl(T);
    for (std::size_t j = 0; j < T; ++j) d_tl[j] = static_cast<int>(j);
    model.set_constant_ids(alpha.d(), std::move(d_tl));
  }
  for (int l = 0; l <= L; ++l)
    model.set_constant_ids(alpha.e(l), std::vector<int>(T, q_base + l));

  // f tracks the executing instruction: Q_0 at moment 0, Q_{l_j} at moment
  // j >= 1, pinned to the STOP marker after the run ends.
  {
    std::vector<int> f_tl(T);
    f_tl[0] = q_base + 0;
    for (std::size_t j = 1; j < T; ++j)
      f_tl[j] = q_base + r.states[std::min(j - 1, last)].label;
    model.set_constant_ids(alpha.f(), std::move(f_tl));
  }

  // Counter pebbles walk d's path: an ADD advances a_k one step along it, a
  // non-zero SUB advances b_k, everything else freezes. Positions are
  // indexes into d's path, so "advance" is just +1.
  {
    std::vector<std::vector<int>> a_tl(3, std::vector<int>(T, 0));
    std::vector<std::vector<int>> b_tl(3, std::vector<int>(T, 0));
    int a_pos[3] = {0, 0, 0};
    int b_pos[3] = {0, 0, 0};
    // Moments 0 and 1 sit on d's start element. The transition from moment
    // j-1 to j is driven by the instruction executing at moment j-1, whose
    // label is the run's (j-2)-indexed state.
    for (std::size_t j = 2; j < T; ++j) {
      const int lab = r.states[std::min(j - 2, last)].label;
      const Instruction& ins = m.at_label(lab);
      if (const auto* add = std::get_if<AddInstruction>(&ins)) {
        a_pos[add->counter] += 1;
      } else if (const auto* sub = std::get_if<SubInstruction>(&ins)) {
        if (a_pos[sub->counter] != b_pos[sub->counter])
          b_pos[sub->counter] += 1;
      }
      for (int k = 1; k <= 2; ++k) {
        a_tl[k][j] = a_pos[k];
        b_tl[k][j] = b_pos[k];
      }
    }
    for (int k = 1; k <= 2; ++k) {
      model.set_constant_ids(alpha.a(k), std::move(a_tl[k]));
      model.set_constant_ids(alpha.b(k), std::move(b_tl[k]));
    }
  }
  return model;
}

namespace {

void check_rule(RuleCheck& rule, const TraceModel& model, bool& violated) {
  for (std::size_t pos : rule.positions) {
    const Verdict v = eval_bounded(model, rule.kernel, {}, pos);
    rule.verdicts.push_back(v);
    if (v == Verdict::False) violated = true;
  }
}

}  // namespace

CertReport certify(const MinskyMachine& m, std::size_t horizon) {
  const TranslationAlphabet alpha(m.stop_label());
  const Alphabet sigma = alpha.to_alphabet();
  const int L = m.stop_label();
  const TraceModel model = canonical_model(m, horizon);
  const RunResult r = run(m, horizon + 1);
  const std::size_t last = r.states.size() - 1;

  CertReport report;
  report.horizon = horizon;

  std::vector<std::size_t> all_positions(horizon + 1);
  for (std::size_t j = 0; j <= horizon; ++j) all_positions[j] = j;

  // chi_zero bullets. The first two speak about moments 0 and 1 only; the
  // third is a box, so its body is checked at every moment.
  {
    std::vector<FormulaPtr> first{
        q_formula(0, alpha),
        same(sigma, alpha.d(), alpha.a(1)),
        same(sigma, alpha.a(1), alpha.b(1)),
        same(sigma, alpha.b(1), alpha.a(2)),
        same(sigma, alpha.a(2), alpha.b(2)),
    };
    report.rules.push_back({"chi0.1", conjoin(std::move(first)), {0}, {}});

    std::vector<FormulaPtr> second{
        q_formula(1, alpha),
        same(sigma, alpha.a(1), alpha.a(2)),
        same(sigma, alpha.a(2), alpha.b(1)),
        same(sigma, alpha.b(1), alpha.b(2)),
        Formula::Not(same(sigma, alpha.a(1), alpha.d())),
    };
    report.rules.push_back(
        {"chi0.2", Formula::Next(conjoin(std::move(second))), {0}, {}});

    FormulaPtr fresh_body = Formula::Abstract(
        "x",
        Formula::Next(Formula::Always(Formula::Abstract(
            "y", Formula::Not(Formula::Eq("y", "x")), make_const(alpha.d())))),
        make_const(alpha.d()));
    report.rules.push_back({"chi0.3a", std::move(fresh_body), all_positions, {}});

    std::vector<FormulaPtr> pairs;
    for (int i = 1; i < L; ++i)
      for (int j = i + 1; j <= L; ++j)
        pairs.push_back(Formula::Not(same(sigma, alpha.e(i), alpha.e(j))));
    if (!pairs.empty())
      report.rules.push_back(
          {"chi0.3b", conjoin(std::move(pairs)), all_positions, {}});
  }

  // Instruction rules: the implication bodies under their boxes, at every
  // moment of the prefix.
  for (int l = 1; l < L; ++l) {
    const Instruction& ins = m.at_label(l);
    const FormulaPtr q = q_formula(l, alpha);
    const std::string at = "@" + std::to_string(l);
    if (const auto* add = std::get_if<AddInstruction>(&ins)) {
      const int k = add->counter;
      const int other = 3 - k;
      report.rules.push_back(
          {"A1" + at,
           Formula::Implies(q, next_new(sigma, 2, alpha.a(k), alpha.d())),
           all_positions,
           {}});
      report.rules.push_back(
          {"A2" + at, Formula::Implies(q, no_change(sigma, alpha.b(k))),
           all_positions, {}});
      report.rules.push_back(
          {"A3" + at, Formula::Implies(q, no_change(sigma, alpha.a(other))),
           all_positions, {}});
      report.rules.push_back(
          {"A4" + at, Formula::Implies(q, no_change(sigma, alpha.b(other))),
           all_positions, {}});
      report.rules.push_back(
          {"A5" + at,
           Formula::Implies(q, Formula::Next(q_formula(add->target, alpha))),
           all_positions,
           {}});
    } else {
      const auto& sub = std::get<SubInstruction>(ins);
      const int k = sub.counter;
      const int other = 3 - k;
      auto nonzero = [&] {
        return Formula::And(q, Formula::Not(same(sigma, alpha.a(k), alpha.b(k))));
      };
      auto zero = [&] {
        return Formula::And(q, same(sigma, alpha.a(k), alpha.b(k)));
      };
      report.rules.push_back(
          {"B1" + at, Formula::Implies(nonzero(), no_change(sigma, alpha.a(k))),
           all_positions, {}});
      report.rules.push_back(
          {"B2" + at,
           Formula::Implies(nonzero(), next_new(sigma, 2, alpha.b(k), alpha.d())),
           all_positions,
           {}});
      report.rules.push_back(
          {"B3" + at,
           Formula::Implies(nonzero(), no_change(sigma, alpha.a(other))),
           all_positions,
           {}});
      report.rules.push_back(
          {"B4" + at,
           Formula::Implies(nonzero(), no_change(sigma, alpha.b(other))),
           all_positions,
           {}});
      report.rules.push_back(
          {"B5" + at,
           Formula::Implies(
               zero(),
               Formula::And(
                   Formula::And(Formula::And(no_change(sigma, alpha.a(k)),
                                             no_change(sigma, alpha.b(k))),
                                no_change(sigma, alpha.a(other))),
                   no_change(sigma, alpha.b(other)))),
           all_positions,
           {}});
      report.rules.push_back(
          {"B6" + at,
           Formula::Implies(nonzero(),
                            Formula::Next(q_formula(sub.target_nonzero, alpha))),
           all_positions,
           {}});
      report.rules.push_back(
          {"B7" + at,
           Formula::Implies(zero(),
                            Formula::Next(q_formula(sub.target_zero, alpha))),
           all_positions,
           {}});
    }
  }

  bool violated = false;
  for (auto& rule : report.rules) check_rule(rule, model, violated);
  report.no_violation = !violated;

  // First moment where Q_stop holds. Bounded evaluation of Same is definite
  // at every observed position.
  const FormulaPtr q_stop = q_formula(L, alpha);
  for (std::size_t j = 0; j <= horizon; ++j) {
    if (eval_bounded(model, q_stop, {}, j) == Verdict::True) {
      report.q_stop_seen_at = j;
      break;
    }
  }

  // Counter-cardinality relation: machine counter k after step j equals
  // |V_{a_k}^{j+1}| - |V_{b_k}^{j+1}|, with V_b <= V_a <= V_d throughout.
  report.counter_relation_ok = true;
  for (std::size_t j = 0; j + 1 <= horizon; ++j) {
    for (int k = 1; k <= 2; ++k) {
      CounterCheck c;
      c.counter = k;
      c.step = j;
      c.machine_value = r.states[std::min(j, last)].counter(k);
      const auto va = model.visited_ids(alpha.a(k), j + 1);
      const auto vb = model.visited_ids(alpha.b(k), j + 1);
      const auto vd = model.visited_ids(alpha.d(), j + 1);
      c.model_value = static_cast<std::int64_t>(va.size()) -
                      static_cast<std::int64_t>(vb.size());
      c.subset_chain_ok =
          std::includes(va.begin(), va.end(), vb.begin(), vb.end()) &&
          std::includes(vd.begin(), vd.end(), va.begin(), va.end());
      if (!c.ok()) report.counter_relation_ok = false;
      report.counters.push_back(c);
    }
  }
  return report;
}

std::string CertReport::to_text() const {
  std::ostringstream out;
  out << "rule x position matrix (T true, F false, ? unknown, - not checked)\n";
  std::size_t name_width = 8;
  for (const auto& rule : rules) name_width = std::max(name_width, rule.rule.size());
  for (const auto& rule : rules) {
    out << rule.rule;
    for (std::size_t pad = rule.rule.size(); pad < name_width + 2; ++pad)
      out << ' ';
    std::string row(horizon + 1, '-');
    for (std::size_t i = 0; i < rule.positions.size(); ++i) {
      const char c = rule.verdicts[i] == Verdict::True    ? 'T'
                     : rule.verdicts[i] == Verdict::False ? 'F'
                                                          : '?';
      row[rule.positions[i]] = c;
    }
    out << row << "\n";
  }
  std::size_t counter_bad = 0;
  for (const auto& c : counters)
    if (!c.ok()) ++counter_bad;
  out << "counter relation: " << (counters.size() - counter_bad) << "/"
      << counters.size() << " positions ok\n";
  for (const auto& c : counters)
    if (!c.ok())
      out << "  counter " << c.counter << " step " << c.step << ": machine "
          << c.machine_value << " vs model " << c.model_value
          << (c.subset_chain_ok ? "" : " (subset chain broken)") << "\n";
  out << "no_violation: " << (no_violation ? "true" : "false") << "\n";
  out << "counter_relation_ok: " << (counter_relation_ok ? "true" : "false")
      << "\n";
  if (q_stop_seen_at)
    out << "q_stop_seen_at: " << *q_stop_seen_at << "\n";
  else
    out << "q_stop_seen_at: none\n";
  return out.str();
}

}  // namespace pebbletl
