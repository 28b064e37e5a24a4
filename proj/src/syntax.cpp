#include "pebbletl/syntax.hpp"

#include <unordered_set>

namespace pebbletl {

namespace {

struct NodeInit {
  FormulaKind kind;
  std::string name;
  std::string name2;
  std::vector<std::string> args;
  Term term;
  FormulaPtr a;
  FormulaPtr b;
};

}  // namespace

struct Formula::Init {
  static FormulaPtr build(NodeInit init) {
    auto* node = new Formula();
    node->kind_ = init.kind;
    node->name_ = std::move(init.name);
    node->name2_ = std::move(init.name2);
    node->args_ = std::move(init.args);
    node->term_ = std::move(init.term);
    node->child_a_ = std::move(init.a);
    node->child_b_ = std::move(init.b);
    return FormulaPtr(node);
  }
};

FormulaPtr Formula::Atom(std::string predicate, std::vector<std::string> args) {
  assert(!predicate.empty());
  return Init::build({FormulaKind::Atom, std::move(predicate), {},
                      std::move(args), {}, nullptr, nullptr});
}

FormulaPtr Formula::Eq(std::string left, std::string right) {
  assert(!left.empty() && !right.empty());
  return Init::build({FormulaKind::Eq, std::move(left), std::move(right), {},
                      {}, nullptr, nullptr});
}

FormulaPtr Formula::Not(FormulaPtr f) {
  assert(f);
  return Init::build({FormulaKind::Not, {}, {}, {}, {}, std::move(f), nullptr});
}

FormulaPtr Formula::And(FormulaPtr lhs, FormulaPtr rhs) {
  assert(lhs && rhs);
  return Init::build(
      {FormulaKind::And, {}, {}, {}, {}, std::move(lhs), std::move(rhs)});
}

FormulaPtr Formula::Or(FormulaPtr lhs, FormulaPtr rhs) {
  assert(lhs && rhs);
  return Init::build(
      {FormulaKind::Or, {}, {}, {}, {}, std::move(lhs), std::move(rhs)});
}

FormulaPtr Formula::Implies(FormulaPtr lhs, FormulaPtr rhs) {
  assert(lhs && rhs);
  return Init::build(
      {FormulaKind::Implies, {}, {}, {}, {}, std::move(lhs), std::move(rhs)});
}

FormulaPtr Formula::Next(FormulaPtr f) {
  assert(f);
  return Init::build({FormulaKind::Next, {}, {}, {}, {}, std::move(f), nullptr});
}

FormulaPtr Formula::Eventually(FormulaPtr f) {
  assert(f);
  return Init::build(
      {FormulaKind::Eventually, {}, {}, {}, {}, std::move(f), nullptr});
}

FormulaPtr Formula::Always(FormulaPtr f) {
  assert(f);
  return Init::build(
      {FormulaKind::Always, {}, {}, {}, {}, std::move(f), nullptr});
}

FormulaPtr Formula::Yesterday(FormulaPtr f) {
  assert(f);
  return Init::build(
      {FormulaKind::Yesterday, {}, {}, {}, {}, std::move(f), nullptr});
}

FormulaPtr Formula::Once(FormulaPtr f) {
  assert(f);
  return Init::build({FormulaKind::Once, {}, {}, {}, {}, std::move(f), nullptr});
}

FormulaPtr Formula::Historically(FormulaPtr f) {
  assert(f);
  return Init::build(
      {FormulaKind::Historically, {}, {}, {}, {}, std::move(f), nullptr});
}

FormulaPtr Formula::Abstract(std::string binder, FormulaPtr body,
                             Term argument) {
  assert(!binder.empty() && body && !argument.name.empty());
  return Init::build({FormulaKind::Abstract, std::move(binder), {}, {},
                      std::move(argument), std::move(body), nullptr});
}

bool operator==(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case FormulaKind::Atom:
      return a.name_ == b.name_ && a.args_ == b.args_;
    case FormulaKind::Eq:
      return a.name_ == b.name_ && a.name2_ == b.name2_;
    case FormulaKind::Not:
    case FormulaKind::Next:
    case FormulaKind::Eventually:
    case FormulaKind::Always:
    case FormulaKind::Yesterday:
    case FormulaKind::Once:
    case FormulaKind::Historically:
      return *a.child_a_ == *b.child_a_;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return *a.child_a_ == *b.child_a_ && *a.child_b_ == *b.child_b_;
    case FormulaKind::Abstract:
      return a.name_ == b.name_ && a.term_ == b.term_ &&
             *a.child_a_ == *b.child_a_;
  }
  return false;
}

std::set<std::string> free_variables(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      return {f.args().begin(), f.args().end()};
    case FormulaKind::Eq:
      return {f.left_var(), f.right_var()};
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      auto fv = free_variables(*f.lhs());
      auto fv2 = free_variables(*f.rhs());
      fv.insert(fv2.begin(), fv2.end());
      return fv;
    }
    case FormulaKind::Abstract: {
      auto fv = free_variables(*f.child());
      fv.erase(f.binder());
      if (f.argument().kind == TermKind::Variable) fv.insert(f.argument().name);
      return fv;
    }
    default:
      return free_variables(*f.child());
  }
}

namespace {

// Unambiguous prefix serialization used as a structural key for
// deduplication. Not part of the textual syntax.
void structural_key(const Formula& f, std::string& out) {
  out.push_back(static_cast<char>('A' + static_cast<int>(f.kind())));
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.predicate();
      for (const auto& a : f.args()) {
        out.push_back(',');
        out += a;
      }
      out.push_back(';');
      break;
    case FormulaKind::Eq:
      out += f.left_var();
      out.push_back(',');
      out += f.right_var();
      out.push_back(';');
      break;
    case FormulaKind::Abstract:
      out += f.binder();
      out.push_back(f.argument().kind == TermKind::Variable ? 'v' : 'c');
      out += f.argument().name;
      out.push_back(';');
      structural_key(*f.child(), out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      structural_key(*f.lhs(), out);
      structural_key(*f.rhs(), out);
      break;
    default:
      structural_key(*f.child(), out);
      break;
  }
}

void collect_subformulas(const FormulaPtr& f,
                         std::unordered_set<std::string>& seen,
                         std::vector<FormulaPtr>& out) {
  switch (f->kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Eq:
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      collect_subformulas(f->lhs(), seen, out);
      collect_subformulas(f->rhs(), seen, out);
      break;
    default:
      collect_subformulas(f->child(), seen, out);
      break;
  }
  std::string key;
  structural_key(*f, key);
  if (seen.insert(std::move(key)).second) out.push_back(f);
}

}  // namespace

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  assert(f);
  std::unordered_set<std::string> seen;
  std::vector<FormulaPtr> out;
  collect_subformulas(f, seen, out);
  return out;
}

namespace {

struct WfContext {
  const Alphabet* alphabet;
  std::vector<std::string> bound;  // binder stack
  std::vector<Diagnostic>* out;

  bool in_scope(const std::string& name) const {
    for (auto it = bound.rbegin(); it != bound.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  void check_variable_arg(const std::string& name, const std::string& where) {
    if (alphabet->is_constant(name)) {
      out->push_back({"constant under relation symbol: '" + name + "' in " +
                      where + " (arguments must be variables)"});
      return;
    }
    if (!alphabet->is_variable(name) && !in_scope(name)) {
      out->push_back({"undeclared variable '" + name + "' in " + where});
    }
  }

  void visit(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Atom: {
        const std::string where = "atom " + f.predicate();
        auto it = alphabet->predicates.find(f.predicate());
        if (it == alphabet->predicates.end()) {
          out->push_back({"undeclared predicate '" + f.predicate() + "'"});
        } else if (it->second != f.args().size()) {
          out->push_back({"arity mismatch: " + f.predicate() + "/" +
                          std::to_string(it->second) + " applied to " +
                          std::to_string(f.args().size()) + " arguments"});
        }
        for (const auto& a : f.args()) check_variable_arg(a, where);
        break;
      }
      case FormulaKind::Eq:
        check_variable_arg(f.left_var(), "equality");
        check_variable_arg(f.right_var(), "equality");
        break;
      case FormulaKind::And:
      case FormulaKind::Or:
      case FormulaKind::Implies:
        visit(*f.lhs());
        visit(*f.rhs());
        break;
      case FormulaKind::Abstract: {
        const auto& b = f.binder();
        if (alphabet->is_constant(b)) {
          out->push_back({"abstraction binder '" + b +
                          "' collides with a declared constant"});
        }
        const Term& t = f.argument();
        if (t.kind == TermKind::Constant) {
          if (!alphabet->is_constant(t.name))
            out->push_back({"undeclared constant '" + t.name +
                            "' as abstraction argument"});
        } else {
          if (alphabet->is_constant(t.name))
            out->push_back({"term '" + t.name +
                            "' marked variable but declared constant"});
          else if (!alphabet->is_variable(t.name) && !in_scope(t.name))
            out->push_back({"undeclared variable '" + t.name +
                            "' as abstraction argument"});
        }
        bound.push_back(b);
        visit(*f.child());
        bound.pop_back();
        break;
      }
      default:
        visit(*f.child());
        break;
    }
  }
};

}  // namespace

std::vector<Diagnostic> well_formed(const Formula& f, const Alphabet& alphabet) {
  std::vector<Diagnostic> out;
  WfContext ctx{&alphabet, {}, &out};
  ctx.visit(f);
  return out;
}

}  // namespace pebbletl
