#include <doctest.h>

#include "pebbletl/eval.hpp"
#include "pebbletl/parser.hpp"
#include "pebbletl/props.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"

using namespace pebbletl;

namespace {

Alphabet sigma_ad() {
  Alphabet a;
  a.constants = {"a", "b", "d"};
  return a;
}

TraceModel lasso_model(std::vector<std::string> domain,
                       std::map<std::string, std::vector<std::string>> tl,
                       std::size_t k, std::size_t p) {
  TraceModel m(domain, k + p);
  for (auto& [c, elems] : tl) m.set_constant(c, elems);
  m.set_lasso(k, p);
  return m;
}

}  // namespace

TEST_CASE("kleene tables") {
  CHECK(kleene_not(Verdict::Unknown) == Verdict::Unknown);
  CHECK(kleene_and(Verdict::False, Verdict::Unknown) == Verdict::False);
  CHECK(kleene_and(Verdict::True, Verdict::Unknown) == Verdict::Unknown);
  CHECK(kleene_or(Verdict::True, Verdict::Unknown) == Verdict::True);
  CHECK(kleene_or(Verdict::False, Verdict::Unknown) == Verdict::Unknown);
  CHECK(kleene_implies(Verdict::False, Verdict::Unknown) == Verdict::True);
  CHECK(kleene_implies(Verdict::Unknown, Verdict::False) == Verdict::Unknown);
}

TEST_CASE("co-located constants satisfy the Same formula at 0") {
  auto m = lasso_model({"u", "v"}, {{"a", {"u", "v"}}, {"b", {"u", "u"}}}, 0, 2);
  CHECK(eval_lasso(m, same(sigma_ad(), "a", "b"), {}, 0));
  CHECK_FALSE(eval_lasso(m, same(sigma_ad(), "a", "b"), {}, 1));
}

TEST_CASE("a constant that never moves trivially always returns") {
  auto m = lasso_model({"u"}, {{"a", {"u"}}}, 0, 1);
  CHECK(eval_lasso(m, always_return(sigma_ad(), "a"), {}, 0));
}

TEST_CASE("always_return distinguishes a one-way move from a cycle") {
  // a moves u -> v and stays: the element under moment 0 is never revisited.
  auto oneway = lasso_model({"u", "v"}, {{"a", {"u", "v"}}}, 1, 1);
  CHECK_FALSE(eval_lasso(oneway, always_return(sigma_ad(), "a"), {}, 0));
  CHECK(eval_lasso(oneway, always_return(sigma_ad(), "a"), {}, 1));

  auto cycle = lasso_model({"u", "v"}, {{"a", {"u", "v"}}}, 0, 2);
  CHECK(eval_lasso(cycle, always_return(sigma_ad(), "a"), {}, 0));
}

TEST_CASE("always_new fails on every lasso by pigeonhole") {
  // Any ultimately periodic trace revisits; spot checks here, an exhaustive
  // sweep lives in the search tests and the acceptance suite.
  auto m1 = lasso_model({"u"}, {{"d", {"u"}}}, 0, 1);
  auto m2 = lasso_model({"u", "v"}, {{"d", {"u", "v"}}}, 0, 2);
  auto m3 = lasso_model({"u", "v", "w"}, {{"d", {"u", "v", "w"}}}, 1, 2);
  for (const auto& m : {m1, m2, m3})
    CHECK_FALSE(eval_lasso(m, always_new(sigma_ad(), "d"), {}, 0));
}

TEST_CASE("bounded: NoChange is refuted by an observed move") {
  TraceModel m({"u", "v"}, 2);
  m.set_constant("c", {"u", "v"});
  Alphabet sigma;
  sigma.constants = {"c"};
  CHECK(eval_bounded(m, no_change(sigma, "c"), {}, 0) == Verdict::False);
}

TEST_CASE("bounded: an injective prefix leaves always_new unknown") {
  TraceModel m({"u", "v", "w"}, 3);
  m.set_constant("d", {"u", "v", "w"});
  CHECK(eval_bounded(m, always_new(sigma_ad(), "d"), {}, 0) == Verdict::Unknown);
}

TEST_CASE("bounded evaluation does not prove tautologies; lasso mode does") {
  auto tautology = Formula::Always(Formula::Eq("x", "x"));
  TraceModel prefix({"u"}, 2);
  prefix.set_constant("a", {"u", "u"});
  CHECK(eval_bounded(prefix, tautology, {{"x", "u"}}, 0) == Verdict::Unknown);

  auto m = lasso_model({"u"}, {{"a", {"u"}}}, 0, 1);
  CHECK(eval_lasso(m, tautology, {{"x", "u"}}, 0));
}

TEST_CASE("eval_sentence dispatches on the representation mode") {
  auto m = lasso_model({"u"}, {{"a", {"u"}}, {"b", {"u"}}}, 0, 1);
  CHECK(eval_sentence(m, same(sigma_ad(), "a", "b"), 0) == Verdict::True);
  CHECK(eval_sentence(m, Formula::Not(same(sigma_ad(), "a", "b")), 0) ==
        Verdict::False);

  TraceModel prefix({"u"}, 1);
  prefix.set_constant("a", {"u"});
  prefix.set_constant("b", {"u"});
  CHECK(eval_sentence(prefix, same(sigma_ad(), "a", "b"), 0) == Verdict::True);

  CHECK_THROWS_AS(eval_sentence(m, Formula::Eq("x", "y"), 0), EvalError);
}

TEST_CASE("yesterday is false at the first moment in both modes") {
  auto inner = Formula::Abstract("x", Formula::Eq("x", "x"), make_const("a"));
  auto m = lasso_model({"u"}, {{"a", {"u"}}}, 0, 1);
  CHECK_FALSE(eval_lasso(m, Formula::Yesterday(inner), {}, 0));
  CHECK(eval_lasso(m, Formula::Yesterday(inner), {}, 1));

  TraceModel prefix({"u"}, 2);
  prefix.set_constant("a", {"u", "u"});
  CHECK(eval_bounded(prefix, Formula::Yesterday(inner), {}, 0) == Verdict::False);
}

TEST_CASE("once unfolds as now-or-previously under strong yesterday") {
  // O phi  <->  phi | Y O phi, at every moment including 0.
  testing::Rng rng(31);
  testing::FormulaGenConfig fcfg;
  fcfg.max_depth = 3;
  testing::ModelGenConfig mcfg;
  for (int i = 0; i < 150; ++i) {
    auto phi = testing::random_sentence(rng, fcfg);
    auto lhs = Formula::Once(phi);
    auto rhs = Formula::Or(phi, Formula::Yesterday(Formula::Once(phi)));
    auto m = testing::random_model(rng, mcfg);
    for (std::size_t n = 0; n < m.length() + 2; ++n)
      CHECK(eval_lasso(m, lhs, {}, n) == eval_lasso(m, rhs, {}, n));
  }
}

TEST_CASE("errors: unbound variables and foreign assignment targets") {
  auto m = lasso_model({"u"}, {{"a", {"u"}}}, 0, 1);
  CHECK_THROWS_AS(eval_lasso(m, Formula::Eq("x", "y"), {}, 0), EvalError);
  CHECK_THROWS_AS(eval_lasso(m, Formula::Eq("x", "x"), {{"x", "zzz"}}, 0),
                  EvalError);
  // Formula mentions a constant the model does not interpret.
  Alphabet sigma;
  sigma.constants = {"nope"};
  CHECK_THROWS_AS(eval_lasso(m, no_change(sigma, "nope"), {}, 0), ModelError);
  // Bounded evaluation needs a position inside the prefix.
  TraceModel prefix({"u"}, 1);
  prefix.set_constant("a", {"u"});
  CHECK_THROWS_AS(eval_bounded(prefix, Formula::Eq("x", "x"), {{"x", "u"}}, 3),
                  EvalError);
  CHECK_THROWS_AS(eval_bounded(m, Formula::Eq("x", "x"), {{"x", "u"}}, 0),
                  EvalError);  // lasso model in bounded mode
  CHECK_THROWS_AS(eval_lasso(prefix, Formula::Eq("x", "x"), {{"x", "u"}}, 0),
                  EvalError);  // prefix model in lasso mode
}

TEST_CASE("abstraction locality: binding equals evaluating under the binding") {
  testing::Rng rng(37);
  testing::FormulaGenConfig fcfg;
  fcfg.max_depth = 3;
  fcfg.predicates = {{"P", 1}};
  testing::ModelGenConfig mcfg;
  mcfg.predicates = {{"P", 1}};
  for (int i = 0; i < 200; ++i) {
    auto m = testing::random_model(rng, mcfg);
    auto body_sentence = testing::random_sentence(rng, fcfg);
    // Open formula: x = x & sentence, bound through an abstraction over d.
    auto body = Formula::And(
        Formula::Or(Formula::Eq("x", "x"), body_sentence),
        Formula::Implies(body_sentence, Formula::Eq("x", "x")));
    auto abstracted = Formula::Abstract("x", body, make_const("d"));
    const std::size_t n = testing::below(rng, m.length());
    const std::string elem = m.constant_at("d", n);
    CHECK(eval_lasso(m, abstracted, {}, n) ==
          eval_lasso(m, body, {{"x", elem}}, n));
  }
}

TEST_CASE("lasso evaluation agrees with the literal oracle") {
  testing::Rng rng(41);
  testing::FormulaGenConfig fcfg;
  fcfg.predicates = {{"P", 1}};
  testing::ModelGenConfig mcfg;
  mcfg.predicates = {{"P", 1}};
  auto corpus = testing::sentence_corpus(60, 43, fcfg);
  std::size_t checked = 0;
  for (const auto& f : corpus) {
    for (int i = 0; i < 25; ++i) {
      auto m = testing::random_model(rng, mcfg);
      for (std::size_t n = 0; n < 2; ++n) {
        CHECK(eval_lasso(m, f, {}, n) == testing::oracle_eval(m, f, {}, n));
        ++checked;
      }
    }
  }
  CHECK(checked == 60 * 25 * 2);
}

TEST_CASE("deep operator chains agree with the oracle at deep positions") {
  // Long unary chains and nested future/past blocks stress the
  // position-folding bound; positions around the fold boundary are the
  // interesting ones.
  Alphabet sigma;
  sigma.constants = {"a", "d"};
  auto sm = [&] { return same(sigma, "a", "d"); };
  std::vector<FormulaPtr> chains;
  {
    FormulaPtr x6 = sm(), y6 = sm(), xy = sm();
    for (int i = 0; i < 6; ++i) {
      x6 = Formula::Next(x6);
      y6 = Formula::Yesterday(y6);
      xy = i % 2 ? Formula::Next(xy) : Formula::Yesterday(xy);
    }
    chains.push_back(x6);
    chains.push_back(y6);
    chains.push_back(xy);
  }
  chains.push_back(Formula::Always(Formula::Eventually(sm())));
  chains.push_back(Formula::Eventually(Formula::Always(sm())));
  chains.push_back(Formula::Once(Formula::Historically(sm())));
  chains.push_back(Formula::Historically(Formula::Once(sm())));
  chains.push_back(Formula::Always(Formula::Once(sm())));
  chains.push_back(Formula::Eventually(Formula::Yesterday(Formula::Eventually(sm()))));
  chains.push_back(always_return(sigma, "a"));
  chains.push_back(Formula::Yesterday(Formula::Always(Formula::Next(sm()))));

  testing::Rng rng(71);
  testing::ModelGenConfig mcfg;
  mcfg.max_domain = 3;
  mcfg.max_prefix = 4;
  mcfg.max_period = 3;
  std::size_t checked = 0;
  for (int i = 0; i < 150; ++i) {
    auto m = testing::random_model(rng, mcfg);
    const std::size_t k = m.lasso_prefix(), p = m.lasso_period();
    for (const auto& f : chains) {
      // Representative positions: the prefix, the loop seam, and both
      // sides of the fold boundary for this formula's depth.
      std::size_t depth = 0;
      for (const auto& sub : subformulas(f))
        if (is_unary_temporal(sub->kind())) ++depth;
      const std::size_t stab = k + p * (depth + 2);
      for (std::size_t n :
           {std::size_t{0}, std::size_t{1}, k, k + p, stab - 1, stab,
            stab + 1, stab + 2 * p - 1, stab + 2 * p + 3}) {
        CHECK(eval_lasso(m, f, {}, n) == testing::oracle_eval(m, f, {}, n));
        ++checked;
      }
    }
  }
  CHECK(checked == 150 * chains.size() * 9);
}

TEST_CASE("definite bounded verdicts persist in every lasso completion") {
  testing::Rng rng(47);
  testing::FormulaGenConfig fcfg;
  testing::ModelGenConfig mcfg;
  mcfg.max_domain = 2;
  mcfg.max_prefix = 2;
  auto corpus = testing::sentence_corpus(40, 53, fcfg);
  int definite = 0;
  for (int i = 0; i < 120; ++i) {
    auto lasso = testing::random_model(rng, mcfg);
    auto prefix = testing::unrolled_prefix(lasso, lasso.length());
    for (const auto& f : corpus) {
      const Verdict v = eval_bounded(prefix, f, {}, 0);
      if (v == Verdict::Unknown) continue;
      ++definite;
      for (const auto& completion : testing::lasso_completions(prefix, 1))
        CHECK(eval_lasso(completion, f, {}, 0) == (v == Verdict::True));
    }
  }
  CHECK(definite > 50);  // the sweep must actually exercise definite verdicts
}
