#include <doctest.h>

#include "pebbletl/parser.hpp"
#include "pebbletl/props.hpp"
#include "pebbletl/translate.hpp"
#include "support/machines.hpp"

using namespace pebbletl;
using pebbletl::testing::machine_corpus;
using pebbletl::testing::MachineSpec;

namespace {

MinskyMachine add_stop() {
  return parse_machine("1: ADD 1 TO S1; GOTO 2\n2: STOP\n");
}

const MachineSpec& corpus_machine(const std::string& name) {
  for (const auto& spec : machine_corpus())
    if (spec.name == name) return spec;
  throw std::logic_error("no such corpus machine: " + name);
}

}  // namespace

TEST_CASE("the translation alphabet is complete and collision-free") {
  TranslationAlphabet alpha(3);
  auto sigma = alpha.to_alphabet();
  CHECK(sigma.constants.size() == 4 + 1 + 1 + 4);  // e0..e3, f, d, a/b pairs
  CHECK(sigma.constants.count("e0") == 1);
  CHECK(sigma.constants.count("e3") == 1);
  CHECK(sigma.constants.count("f") == 1);
  CHECK(sigma.constants.count("d") == 1);
  CHECK(sigma.constants.count("a2") == 1);
}

TEST_CASE("q_formula is the co-location of the marker and the counter f") {
  TranslationAlphabet alpha(2);
  auto sigma = alpha.to_alphabet();
  CHECK(*q_formula(0, alpha) == *same(sigma, "e0", "f"));
  CHECK(*q_formula(2, alpha) == *same(sigma, "e2", "f"));  // Q_stop
  CHECK_THROWS_AS(q_formula(3, alpha), std::invalid_argument);
  CHECK_THROWS_AS(q_formula(-1, alpha), std::invalid_argument);
}

TEST_CASE("an ADD block is the five expected rules in order") {
  TranslationAlphabet alpha(2);
  auto sigma = alpha.to_alphabet();
  auto block = translate_instruction(1, AddInstruction{1, 2}, alpha);
  // Left-fold conjunction: ((((A1 & A2) & A3) & A4) & A5.
  const FormulaPtr a5 = block->rhs();
  const FormulaPtr a4 = block->lhs()->rhs();
  const FormulaPtr a3 = block->lhs()->lhs()->rhs();
  const FormulaPtr a2 = block->lhs()->lhs()->lhs()->rhs();
  const FormulaPtr a1 = block->lhs()->lhs()->lhs()->lhs();
  auto q1 = q_formula(1, alpha);
  CHECK(*a1 == *Formula::Always(Formula::Implies(q1, next_new(sigma, 2, "a1", "d"))));
  CHECK(*a2 == *Formula::Always(Formula::Implies(q1, no_change(sigma, "b1"))));
  CHECK(*a3 == *Formula::Always(Formula::Implies(q1, no_change(sigma, "a2"))));
  CHECK(*a4 == *Formula::Always(Formula::Implies(q1, no_change(sigma, "b2"))));
  CHECK(*a5 == *Formula::Always(Formula::Implies(q1, Formula::Next(q_formula(2, alpha)))));
  CHECK(is_sentence(*block));
  CHECK(well_formed(*block, sigma).empty());
}

TEST_CASE("a SUB block keeps every pebble still on the zero branch") {
  TranslationAlphabet alpha(4);
  auto sigma = alpha.to_alphabet();
  auto block = translate_instruction(2, SubInstruction{2, 3, 4}, alpha);
  // B5 is the fifth conjunct of seven in the left fold.
  FormulaPtr b5 = block->lhs()->lhs()->rhs();
  auto q2 = q_formula(2, alpha);
  auto expected = Formula::Always(Formula::Implies(
      Formula::And(q2, same(sigma, "a2", "b2")),
      Formula::And(
          Formula::And(Formula::And(no_change(sigma, "a2"), no_change(sigma, "b2")),
                       no_change(sigma, "a1")),
          no_change(sigma, "b1"))));
  CHECK(*b5 == *expected);
  CHECK(is_sentence(*block));
  CHECK_THROWS_AS(translate_instruction(4, StopInstruction{}, alpha),
                  std::invalid_argument);
}

TEST_CASE("chi_zero has one marker-distinctness pair for a two-label machine") {
  TranslationAlphabet alpha(2);
  auto sigma = alpha.to_alphabet();
  auto chi = chi_zero(alpha);
  CHECK(is_sentence(*chi));
  CHECK(well_formed(*chi, sigma).empty());
  const std::string text = print_formula(chi);
  // Exactly one "e_i never co-located with e_j" conjunct: e1 vs e2.
  std::size_t count = 0, at = 0;
  const std::string needle = "~<x. <y. x = y>(e";
  while ((at = text.find(needle, at)) != std::string::npos) {
    ++count;
    at += needle.size();
  }
  CHECK(count == 1);
  CHECK(text.find("~<x. <y. x = y>(e1)>(e2)") != std::string::npos);
}

TEST_CASE("chi_zero for a stop-only machine omits the empty pair conjunction") {
  TranslationAlphabet alpha(1);
  auto chi = chi_zero(alpha);
  CHECK(is_sentence(*chi));
  // Still mentions the freshness constraint on d.
  CHECK(print_formula(chi).find("G <x. X G <y. ~(y = x)>(d)>(d)") !=
        std::string::npos);
}

TEST_CASE("translate_machine grows linearly and round-trips through the parser") {
  std::size_t previous = 0;
  for (const auto& name : {"add_stop", "add_twice_drain", "nested_loops"}) {
    auto m = parse_machine(corpus_machine(name).text);
    auto chi = translate_machine(m);
    CHECK(is_sentence(*chi));
    const auto sigma = TranslationAlphabet(m.stop_label()).to_alphabet();
    CHECK(well_formed(*chi, sigma).empty());
    const std::size_t size = subformulas(chi).size();
    CHECK(size > previous);
    previous = size;
    CHECK(*parse_formula(print_formula(chi), sigma) == *chi);
  }
  // One rule block per non-STOP instruction: the add/stop translation is
  // chi_zero plus exactly the one ADD block.
  auto m = add_stop();
  auto chi = translate_machine(m);
  TranslationAlphabet alpha(2);
  CHECK(*chi->rhs() == *translate_instruction(1, m.at_label(1), alpha));
  CHECK(*chi->lhs() == *chi_zero(alpha));
}

TEST_CASE("canonical model: the add/stop pebbles walk d's path as expected") {
  auto model = canonical_model(add_stop(), 3);
  CHECK(validate_model(model).empty());
  CHECK(model.length() == 4);
  CHECK_FALSE(model.has_lasso());
  // After the single ADD executes at moment 1, a1 sits where d was at
  // moment 1 while b1 stays at d's start.
  CHECK(model.constant_at("a1", 2) == model.constant_at("d", 1));
  CHECK(model.constant_at("b1", 2) == model.constant_at("d", 0));
  // Counter 1 after one step: one element separates a1 from b1.
  CHECK(model.visited("a1", 2).size() == 2);
  CHECK(model.visited("b1", 2).size() == 1);
}

TEST_CASE("canonical model: moment zero is fully co-located") {
  TranslationAlphabet alpha2(2);
  for (const auto& spec : machine_corpus()) {
    auto m = parse_machine(spec.text);
    auto model = canonical_model(m, 4);
    TranslationAlphabet alpha(m.stop_label());
    auto sigma = alpha.to_alphabet();
    for (const auto& pair :
         {std::pair{"d", "a1"}, {"a1", "b1"}, {"b1", "a2"}, {"a2", "b2"}})
      CHECK(eval_bounded(model, same(sigma, pair.first, pair.second), {}, 0) ==
            Verdict::True);
  }
}

TEST_CASE("canonical model: the marker schedule starts with Q_0 then Q_1") {
  for (const auto& spec : machine_corpus()) {
    auto m = parse_machine(spec.text);
    auto model = canonical_model(m, 4);
    TranslationAlphabet alpha(m.stop_label());
    CHECK(eval_bounded(model, q_formula(0, alpha), {}, 0) == Verdict::True);
    CHECK(eval_bounded(model, q_formula(1, alpha), {}, 1) == Verdict::True);
  }
}

TEST_CASE("the initial formula is never refuted by a canonical prefix") {
  for (const auto& spec : machine_corpus()) {
    auto m = parse_machine(spec.text);
    auto model = canonical_model(m, 6);
    TranslationAlphabet alpha(m.stop_label());
    CHECK(eval_sentence(model, chi_zero(alpha), 0) != Verdict::False);
    CHECK(eval_sentence(model, translate_machine(m), 0) != Verdict::False);
  }
}

TEST_CASE("canonical model: exactly one marker is co-located with f anywhere") {
  for (const auto& name : {"add_twice_drain", "ping_pong", "zero_spin"}) {
    auto m = parse_machine(corpus_machine(name).text);
    const std::size_t horizon = 8;
    auto model = canonical_model(m, horizon);
    TranslationAlphabet alpha(m.stop_label());
    for (std::size_t j = 0; j <= horizon; ++j) {
      int holds = 0;
      for (int l = 0; l <= m.stop_label(); ++l)
        if (eval_bounded(model, q_formula(l, alpha), {}, j) == Verdict::True)
          ++holds;
      CHECK(holds == 1);
    }
  }
}

TEST_CASE("canonical model: a looping machine never shows the stop marker") {
  auto m = parse_machine(corpus_machine("self_loop_add").text);
  auto model = canonical_model(m, 5);
  TranslationAlphabet alpha(m.stop_label());
  for (std::size_t j = 0; j <= 5; ++j)
    CHECK(eval_bounded(model, q_formula(m.stop_label(), alpha), {}, j) ==
          Verdict::False);
}

TEST_CASE("the zero test mirrors the simulator's counter emptiness") {
  for (const auto& name : {"add_twice_drain", "transfer_drain", "nested_loops"}) {
    auto m = parse_machine(corpus_machine(name).text);
    const std::size_t horizon = 2 * corpus_machine(name).run_states;
    auto model = canonical_model(m, horizon);
    auto r = run(m, horizon + 1);
    TranslationAlphabet alpha(m.stop_label());
    auto sigma = alpha.to_alphabet();
    for (std::size_t j = 0; j + 1 <= horizon; ++j) {
      const auto& state = r.states[std::min(j, r.states.size() - 1)];
      for (int k = 1; k <= 2; ++k) {
        const Verdict v =
            eval_bounded(model, same(sigma, alpha.a(k), alpha.b(k)), {}, j + 1);
        CHECK(v == (state.counter(k) == 0 ? Verdict::True : Verdict::False));
      }
    }
  }
}

TEST_CASE("certify: add/stop is clean and sees the stop marker at moment 2") {
  auto report = certify(add_stop(), 4);
  CHECK(report.no_violation);
  CHECK(report.counter_relation_ok);
  REQUIRE(report.q_stop_seen_at.has_value());
  CHECK(*report.q_stop_seen_at == 2);
  // The matrix text mentions every ADD rule row.
  const std::string text = report.to_text();
  for (const auto* row : {"chi0.1", "chi0.2", "chi0.3a", "chi0.3b", "A1@1",
                          "A5@1", "no_violation: true"})
    CHECK(text.find(row) != std::string::npos);
}

TEST_CASE("certify: the self-loop machine never reaches the stop marker") {
  auto m = parse_machine(corpus_machine("self_loop_add").text);
  auto report = certify(m, 10);
  CHECK(report.no_violation);
  CHECK(report.counter_relation_ok);
  CHECK_FALSE(report.q_stop_seen_at.has_value());
}

TEST_CASE("certify: drains keep the counter-cardinality relation while b catches up") {
  auto m = parse_machine(corpus_machine("add_twice_drain").text);
  auto report = certify(m, 10);
  CHECK(report.no_violation);
  CHECK(report.counter_relation_ok);
  REQUIRE(report.q_stop_seen_at.has_value());
  CHECK(*report.q_stop_seen_at == 6);
  // The drain steps grow V_b: find a step where the model value shrinks.
  bool shrank = false;
  std::int64_t prev = 0;
  for (const auto& c : report.counters) {
    if (c.counter != 1) continue;
    if (c.model_value < prev) shrank = true;
    prev = c.model_value;
  }
  CHECK(shrank);
}

TEST_CASE("certify rejects horizons that cannot carry the construction") {
  CHECK_THROWS_AS(certify(add_stop(), 1), std::invalid_argument);
}

TEST_CASE("a horizon short of the halt simply reports no stop marker") {
  auto m = parse_machine(corpus_machine("add_twice_drain").text);  // halts at 6
  auto report = certify(m, 3);
  CHECK(report.no_violation);
  CHECK(report.counter_relation_ok);
  CHECK_FALSE(report.q_stop_seen_at.has_value());
}
