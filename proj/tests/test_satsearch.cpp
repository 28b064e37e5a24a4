#include <doctest.h>

#include "pebbletl/parser.hpp"
#include "pebbletl/props.hpp"
#include "pebbletl/satsearch.hpp"

using namespace pebbletl;

namespace {

Alphabet sigma_abc() {
  Alphabet sigma;
  sigma.constants = {"a", "b", "c", "d"};
  sigma.predicates = {{"E", 2}};
  return sigma;
}

SearchScope small_scope() {
  SearchScope scope;
  scope.max_domain = 3;
  scope.max_prefix = 3;
  scope.max_period = 2;
  return scope;
}

}  // namespace

TEST_CASE("collect_symbols reads constants and predicates off the formula") {
  auto f = Formula::And(
      same(sigma_abc(), "a", "b"),
      Formula::Always(Formula::Abstract(
          "x", Formula::Atom("E", {"x", "x"}), make_const("d"))));
  std::set<std::string> consts;
  std::map<std::string, std::size_t> preds;
  collect_symbols(*f, consts, preds);
  CHECK(consts == std::set<std::string>{"a", "b", "d"});
  CHECK(preds == std::map<std::string, std::size_t>{{"E", 2}});
}

TEST_CASE("a co-location sentence has a one-element one-moment model") {
  auto found = find_model(same(sigma_abc(), "a", "b"), small_scope());
  REQUIRE(found.has_value());
  CHECK(found->domain().size() == 1);
  CHECK(found->length() == 1);
  CHECK(found->has_lasso());
  CHECK(eval_lasso(*found, same(sigma_abc(), "a", "b"), {}, 0));
  CHECK(found->constant_at("a", 0) == found->constant_at("b", 0));
}

TEST_CASE("contradictions have no model at any in-range scope") {
  auto f = Formula::And(same(sigma_abc(), "a", "b"),
                        Formula::Not(same(sigma_abc(), "a", "b")));
  CHECK_FALSE(find_model(f, small_scope()).has_value());
}

TEST_CASE("always_new has no lasso model in scope (pigeonhole)") {
  CHECK_FALSE(find_model(always_new(sigma_abc(), "d"), small_scope()).has_value());
}

TEST_CASE("searches are deterministic") {
  auto f = Formula::Not(same(sigma_abc(), "a", "b"));
  auto m1 = find_model(f, small_scope());
  auto m2 = find_model(f, small_scope());
  REQUIRE(m1.has_value());
  REQUIRE(m2.has_value());
  CHECK(write_model(*m1) == write_model(*m2));
}

TEST_CASE("pruned and unpruned searches agree on a corpus") {
  const Alphabet sigma = sigma_abc();
  std::vector<FormulaPtr> corpus = {
      same(sigma, "a", "b"),
      Formula::Not(same(sigma, "a", "b")),
      Formula::And(same(sigma, "a", "b"), Formula::Not(same(sigma, "a", "b"))),
      always_new(sigma, "d"),
      no_change(sigma, "a"),
      Formula::Next(Formula::Not(same(sigma, "a", "b"))),
      same_in_past(sigma, "a", "d"),
      Formula::Always(Formula::Eventually(same(sigma, "a", "d"))),
      rigid_on_visited(sigma, "E", "a", "d"),
  };
  SearchScope scope;
  scope.max_domain = 2;
  scope.max_prefix = 1;
  scope.max_period = 2;
  for (const auto& f : corpus) {
    std::vector<std::optional<TraceModel>> results;
    for (bool canonical : {true, false})
      for (bool prune : {true, false}) {
        SearchOptions options;
        options.canonical = canonical;
        options.bounded_prune = prune;
        results.push_back(find_model(f, scope, options));
      }
    for (std::size_t i = 1; i < results.size(); ++i) {
      CHECK(results[0].has_value() == results[i].has_value());
      if (results[0] && results[i])
        CHECK(eval_lasso(*results[i], f, {}, 0));
    }
  }
}

TEST_CASE("the enumeration order is domain size, then length, then shape") {
  // The first candidates for one constant: 1-element models of growing
  // total length, then 2-element ones.
  std::vector<std::string> shapes;
  SearchScope scope;
  scope.max_domain = 2;
  scope.max_prefix = 1;
  scope.max_period = 1;
  for_each_model({"c"}, {}, scope, {}, [&](const TraceModel& m) {
    shapes.push_back(write_model(m));
    return true;
  });
  REQUIRE(shapes.size() >= 3);
  CHECK(shapes[0] == "domain: x0\nconst c: x0 [loop 0 1]\n");
  CHECK(shapes[1] == "domain: x0\nconst c: x0, x0 [loop 1 1]\n");
  CHECK(shapes[2] == "domain: x0, x1\nconst c: x0, x1 [loop 1 1]\n");
}

TEST_CASE("canonical enumeration covers exactly the renaming classes") {
  // Two constants, one moment, two elements: co-located at x0, or split
  // as a at x0 / b at x1 or a at x0... the mirrored split is a renaming.
  std::vector<std::string> seen;
  SearchScope scope;
  scope.max_domain = 2;
  scope.max_prefix = 0;
  scope.max_period = 1;
  for_each_model({"a", "b"}, {}, scope, {}, [&](const TraceModel& m) {
    seen.push_back(write_model(m));
    return true;
  });
  REQUIRE(seen.size() == 2);
  CHECK(seen[0].find("const a: x0 [loop 0 1]\nconst b: x0") != std::string::npos);
  CHECK(seen[1].find("const a: x0 [loop 0 1]\nconst b: x1") != std::string::npos);
  // The mirrored split (a at x1, b at x0) is the same model up to renaming
  // and is never produced.
}

TEST_CASE("the ceiling aborts oversized enumerations") {
  // always_new has no lasso model, so an unpruned search must walk the
  // whole space and trips the budget.
  SearchScope scope = small_scope();
  scope.ceiling = 50;
  SearchOptions no_prune;
  no_prune.bounded_prune = false;
  CHECK_THROWS_AS(find_model(always_new(sigma_abc(), "d"), scope, no_prune),
                  SearchLimitError);
}

TEST_CASE("the predicate budget rejects overweight formulas") {
  SearchScope scope = small_scope();
  scope.max_predicates = 0;
  CHECK_THROWS_AS(find_model(rigid_on_visited(sigma_abc(), "E", "a", "d"), scope),
                  SearchLimitError);
  SearchScope thin = small_scope();
  thin.max_pred_arity = 1;
  CHECK_THROWS_AS(find_model(rigid_on_visited(sigma_abc(), "E", "a", "d"), thin),
                  SearchLimitError);
}

TEST_CASE("find_model requires sentences") {
  CHECK_THROWS_AS(find_model(Formula::Eq("x", "y"), small_scope()),
                  std::invalid_argument);
}

TEST_CASE("sentences built from nullary atoms need no constants") {
  // G Z() has a model with Z permanently on; G (Z() & ~Z()) has none.
  auto z = [] { return Formula::Atom("Z", {}); };
  auto found = find_model(Formula::Always(z()), small_scope());
  REQUIRE(found.has_value());
  CHECK(found->predicate_at("Z", 0).count({}) == 1);
  CHECK_FALSE(
      find_model(Formula::Always(Formula::And(z(), Formula::Not(z()))),
                 small_scope())
          .has_value());
}

TEST_CASE("validity: reflexive co-location has no countermodel in scope") {
  auto counter =
      check_validity_small_scope(same(sigma_abc(), "a", "a"), small_scope());
  CHECK_FALSE(counter.has_value());
  // The same sweep at the wider bounds: domains up to 4, traces up to 6.
  SearchScope wide;
  wide.max_domain = 4;
  wide.max_prefix = 4;
  wide.max_period = 2;
  CHECK_FALSE(
      check_validity_small_scope(same(sigma_abc(), "a", "a"), wide).has_value());
}

TEST_CASE("validity: plain co-location is refuted by a split model") {
  auto counter =
      check_validity_small_scope(same(sigma_abc(), "a", "b"), small_scope());
  REQUIRE(counter.has_value());
  CHECK(counter->constant_at("a", 0) != counter->constant_at("b", 0));
}

TEST_CASE("satisfiable protocol and rigidity sentences find models in scope") {
  SearchScope scope = small_scope();
  auto protocol = find_model(forwarding_protocol(sigma_abc(), "a", "b", "c"), scope);
  REQUIRE(protocol.has_value());
  CHECK(eval_lasso(*protocol, forwarding_protocol(sigma_abc(), "a", "b", "c"),
                   {}, 0));
  auto rigid = find_model(rigid_on_visited(sigma_abc(), "E", "a", "d"), scope);
  REQUIRE(rigid.has_value());
}
