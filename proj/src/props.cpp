#include "pebbletl/props.hpp"

#include <stdexcept>

namespace pebbletl {

namespace {

void require_constant(const Alphabet& alphabet, const std::string& c) {
  if (!alphabet.is_constant(c))
    throw std::invalid_argument("undeclared constant '" + c + "'");
}

FormulaPtr abstract_const(std::string binder, FormulaPtr body, std::string c) {
  return Formula::Abstract(std::move(binder), std::move(body),
                           make_const(std::move(c)));
}

// O (<y. y = x>(d) & X <v. v = w>(d)) -- the shared core of both NextNew
// variants: some past moment where d sat on x and then moved to w.
FormulaPtr d_moved_from_to(const std::string& d, const std::string& x,
                           const std::string& w) {
  return Formula::Once(Formula::And(
      abstract_const("y", Formula::Eq("y", x), d),
      Formula::Next(abstract_const("v", Formula::Eq("v", w), d))));
}

}  // namespace

FormulaPtr same(const Alphabet& alphabet, const std::string& a,
                const std::string& b) {
  require_constant(alphabet, a);
  require_constant(alphabet, b);
  return abstract_const("x", abstract_const("y", Formula::Eq("x", "y"), a), b);
}

FormulaPtr always_new(const Alphabet& alphabet, const std::string& d) {
  require_constant(alphabet, d);
  return Formula::Always(abstract_const(
      "x",
      Formula::Next(Formula::Always(
          abstract_const("y", Formula::Not(Formula::Eq("y", "x")), d))),
      d));
}

FormulaPtr same_in_past(const Alphabet& alphabet, const std::string& a,
                        const std::string& d) {
  require_constant(alphabet, a);
  require_constant(alphabet, d);
  return abstract_const(
      "x", Formula::Once(abstract_const("y", Formula::Eq("y", "x"), d)), a);
}

FormulaPtr no_change(const Alphabet& alphabet, const std::string& c) {
  require_constant(alphabet, c);
  return abstract_const(
      "x", Formula::Next(abstract_const("y", Formula::Eq("x", "y"), c)), c);
}

FormulaPtr always_return(const Alphabet& alphabet, const std::string& a) {
  require_constant(alphabet, a);
  return Formula::Always(abstract_const(
      "x",
      Formula::Next(Formula::Eventually(
          abstract_const("y", Formula::Eq("x", "y"), a))),
      a));
}

FormulaPtr next_new(const Alphabet& alphabet, int variant, const std::string& a,
                    const std::string& d,
                    const std::optional<std::string>& c) {
  require_constant(alphabet, a);
  require_constant(alphabet, d);
  if (variant == 1) {
    if (!c) throw std::invalid_argument("NextNew1 needs the auxiliary constant");
    require_constant(alphabet, *c);
    FormulaPtr watches_move =
        abstract_const("w", abstract_const("x", d_moved_from_to(d, "x", "w"), a),
                       *c);
    FormulaPtr ties_c_to_next = abstract_const(
        "z", Formula::Next(abstract_const("t", Formula::Eq("t", "z"), a)), *c);
    return Formula::And(std::move(watches_move), std::move(ties_c_to_next));
  }
  if (variant != 2) throw std::invalid_argument("NextNew variant must be 1 or 2");
  return Formula::Next(abstract_const(
      "w",
      Formula::Yesterday(abstract_const("x", d_moved_from_to(d, "x", "w"), a)),
      a));
}

FormulaPtr rigid_on_visited(const Alphabet& alphabet, const std::string& E,
                            const std::string& c1, const std::string& c2) {
  auto it = alphabet.predicates.find(E);
  if (it == alphabet.predicates.end())
    throw std::invalid_argument("undeclared predicate '" + E + "'");
  if (it->second != 2)
    throw std::invalid_argument("predicate '" + E + "' must be binary");
  require_constant(alphabet, c1);
  require_constant(alphabet, c2);
  auto exy = [&] { return Formula::Atom(E, {"x", "y"}); };
  auto persists = [&] {
    return Formula::And(Formula::Always(exy()), Formula::Historically(exy()));
  };
  FormulaPtr iff = Formula::And(Formula::Implies(exy(), persists()),
                                Formula::Implies(persists(), exy()));
  return Formula::Always(
      abstract_const("x", abstract_const("y", std::move(iff), c1), c2));
}

FormulaPtr forwarding_protocol(const Alphabet& alphabet, const std::string& s,
                               const std::string& r, const std::string& m) {
  require_constant(alphabet, s);
  require_constant(alphabet, r);
  require_constant(alphabet, m);
  if (s == r || s == m || r == m)
    throw std::invalid_argument("sender, receiver and message must be distinct");
  FormulaPtr starts_at_sender = same(alphabet, s, m);
  FormulaPtr meets_path = Formula::Next(abstract_const(
      "z",
      Formula::Eventually(abstract_const(
          "x",
          Formula::Eventually(abstract_const(
              "y", Formula::And(Formula::Eq("x", "y"), Formula::Eq("y", "z")),
              r)),
          s)),
      m));
  FormulaPtr follows_receiver =
      Formula::Next(Formula::Always(next_new(alphabet, 2, m, r)));
  return Formula::And(
      Formula::And(std::move(starts_at_sender), std::move(meets_path)),
      std::move(follows_receiver));
}

FormulaPtr expand_builder_macro(const std::string& name,
                                const std::vector<std::string>& args,
                                const Alphabet& alphabet) {
  auto want = [&](std::size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("macro @" + name + " takes " +
                                  std::to_string(n) + " arguments, got " +
                                  std::to_string(args.size()));
  };
  if (name == "Same") {
    want(2);
    return same(alphabet, args[0], args[1]);
  }
  if (name == "AlwaysNew") {
    want(1);
    return always_new(alphabet, args[0]);
  }
  if (name == "SameInPast") {
    want(2);
    return same_in_past(alphabet, args[0], args[1]);
  }
  if (name == "NoChange") {
    want(1);
    return no_change(alphabet, args[0]);
  }
  if (name == "AlwaysReturn") {
    want(1);
    return always_return(alphabet, args[0]);
  }
  if (name == "NextNew1") {
    want(3);
    return next_new(alphabet, 1, args[0], args[1], args[2]);
  }
  if (name == "NextNew2") {
    want(2);
    return next_new(alphabet, 2, args[0], args[1]);
  }
  if (name == "RigidOnVisited") {
    want(3);
    return rigid_on_visited(alphabet, args[0], args[1], args[2]);
  }
  if (name == "ForwardingProtocol") {
    want(3);
    return forwarding_protocol(alphabet, args[0], args[1], args[2]);
  }
  throw std::invalid_argument("unknown macro @" + name);
}

}  // namespace pebbletl
