#pragma once

#include <cassert>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace pebbletl {

/// A term is a constant symbol or a variable. Variables are rigid
/// (assignment-valued); constants are flexible (time-indexed).
enum class TermKind { Variable, Constant };

struct Term {
  TermKind kind = TermKind::Variable;
  std::string name;

  friend bool operator==(const Term&, const Term&) = default;
};

inline Term make_var(std::string name) {
  return Term{TermKind::Variable, std::move(name)};
}
inline Term make_const(std::string name) {
  return Term{TermKind::Constant, std::move(name)};
}

enum class FormulaKind {
  Atom,          // R(x1, ..., xn), variables only
  Eq,            // x = y, variables only
  Not,
  And,
  Or,
  Implies,
  Next,          // X
  Eventually,    // F
  Always,        // G
  Yesterday,     // Y (previous moment; strong at 0)
  Once,          // O (some past moment, including now)
  Historically,  // H (all past moments, including now)
  Abstract,      // <x. body>(t)
};

inline bool is_unary_temporal(FormulaKind k) {
  switch (k) {
    case FormulaKind::Next:
    case FormulaKind::Eventually:
    case FormulaKind::Always:
    case FormulaKind::Yesterday:
    case FormulaKind::Once:
    case FormulaKind::Historically:
      return true;
    default:
      return false;
  }
}

inline bool is_binary_connective(FormulaKind k) {
  return k == FormulaKind::And || k == FormulaKind::Or ||
         k == FormulaKind::Implies;
}

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable formula AST. Nodes are shared freely; all construction goes
/// through the static factories, which assert basic shape (argument counts,
/// non-null children). Name-level checks against an alphabet live in
/// well_formed().
class Formula {
 public:
  static FormulaPtr Atom(std::string predicate, std::vector<std::string> args);
  static FormulaPtr Eq(std::string left, std::string right);
  static FormulaPtr Not(FormulaPtr f);
  static FormulaPtr And(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr Or(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr Implies(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr Next(FormulaPtr f);
  static FormulaPtr Eventually(FormulaPtr f);
  static FormulaPtr Always(FormulaPtr f);
  static FormulaPtr Yesterday(FormulaPtr f);
  static FormulaPtr Once(FormulaPtr f);
  static FormulaPtr Historically(FormulaPtr f);
  static FormulaPtr Abstract(std::string binder, FormulaPtr body, Term argument);

  FormulaKind kind() const { return kind_; }

  // Atom accessors.
  const std::string& predicate() const {
    assert(kind_ == FormulaKind::Atom);
    return name_;
  }
  const std::vector<std::string>& args() const {
    assert(kind_ == FormulaKind::Atom);
    return args_;
  }

  // Eq accessors.
  const std::string& left_var() const {
    assert(kind_ == FormulaKind::Eq);
    return name_;
  }
  const std::string& right_var() const {
    assert(kind_ == FormulaKind::Eq);
    return name2_;
  }

  // Unary operand or Abstract body.
  const FormulaPtr& child() const {
    assert(child_a_ != nullptr && child_b_ == nullptr);
    return child_a_;
  }
  // Binary connective operands.
  const FormulaPtr& lhs() const {
    assert(is_binary_connective(kind_));
    return child_a_;
  }
  const FormulaPtr& rhs() const {
    assert(is_binary_connective(kind_));
    return child_b_;
  }

  // Abstract accessors.
  const std::string& binder() const {
    assert(kind_ == FormulaKind::Abstract);
    return name_;
  }
  const Term& argument() const {
    assert(kind_ == FormulaKind::Abstract);
    return term_;
  }

  /// Structural (name-literal) equality; no alpha conversion.
  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) {
    return !(a == b);
  }

 private:
  struct Init;

  Formula() = default;

  FormulaKind kind_ = FormulaKind::Eq;
  std::string name_;   // Atom predicate | Eq left | Abstract binder
  std::string name2_;  // Eq right
  std::vector<std::string> args_;
  Term term_;          // Abstract argument
  FormulaPtr child_a_; // unary operand | Abstract body | binary lhs
  FormulaPtr child_b_; // binary rhs
};

/// Free variables per the binder rule: the binder of an abstraction is
/// removed from its body's set; the argument term contributes its name
/// iff it is a variable.
std::set<std::string> free_variables(const Formula& f);

inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

/// All distinct subformula nodes (structural distinctness), children before
/// parents; the last entry is f itself. The abstraction argument term is not
/// a formula and contributes nothing.
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);

/// Declared symbol namespaces. Variables and constants are disjoint;
/// equality is always available and is not listed among predicates.
struct Alphabet {
  std::set<std::string> variables;
  std::set<std::string> constants;
  std::map<std::string, std::size_t> predicates;  // name -> arity

  bool is_variable(const std::string& n) const { return variables.count(n) != 0; }
  bool is_constant(const std::string& n) const { return constants.count(n) != 0; }
  bool is_predicate(const std::string& n) const { return predicates.count(n) != 0; }
};

struct Diagnostic {
  std::string message;
};

/// Checks f against the alphabet: declared predicates with matching arity,
/// variables-only under relation symbols and equality, disjoint namespaces
/// respected, abstraction arguments resolvable. Empty result means ok.
/// Closedness is not required here; see is_sentence().
std::vector<Diagnostic> well_formed(const Formula& f, const Alphabet& alphabet);

}  // namespace pebbletl
