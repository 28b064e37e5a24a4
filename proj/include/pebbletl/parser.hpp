#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "pebbletl/syntax.hpp"

namespace pebbletl {

/// Half-open character range [start, end) into the parsed input.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span)
      : std::runtime_error(std::move(message)), span_(span) {}

  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

/// Concrete syntax:
///
///   formula  :=  or ('->' formula)?                      right-associative
///   or       :=  and ('|' and)*
///   and      :=  unary ('&' unary)*
///   unary    :=  ('~' | 'G' | 'F' | 'X' | 'H' | 'O' | 'Y') unary | primary
///   primary  :=  '(' formula ')'
///             |  '<' ident '.' formula '>' '(' ident ')'  abstraction
///             |  ident '(' ident (',' ident)* ')'         atom (or 'P()')
///             |  ident '=' ident                          equality
///
/// G/F/X are always/eventually/next; H/O/Y are historically/once/yesterday.
/// Those six single letters are reserved and cannot name symbols. Whether an
/// identifier is a variable or a constant is decided by the alphabet plus
/// the enclosing abstraction binders; binders may be undeclared identifiers.
FormulaPtr parse_formula(const std::string& text, const Alphabet& alphabet);

/// Deterministic pretty-printer with minimal parentheses; the inverse of
/// parse_formula up to structural equality.
std::string print_formula(const Formula& f);
inline std::string print_formula(const FormulaPtr& f) {
  return print_formula(*f);
}

/// A parsed formula file: header-declared alphabet plus one formula.
///
///   # comment
///   vars: x, y
///   consts: a, b, d
///   preds: P/1, E/2
///   G <x. X G <y. ~(y = x)>(d)>(d)
///
/// Header lines are optional and may appear in any order, each at most once.
/// The remaining non-comment content is a single formula, possibly spanning
/// several lines. Builder macros of the form @Same(a,b), @AlwaysNew(d),
/// @NoChange(c), @AlwaysReturn(a), @SameInPast(a,d), @NextNew1(a,d,c),
/// @NextNew2(a,d), @RigidOnVisited(E,c1,c2), @ForwardingProtocol(s,r,m)
/// are expanded textually before parsing.
struct FormulaFile {
  Alphabet alphabet;
  FormulaPtr formula;
};

FormulaFile read_formula_file(const std::string& content);

/// Renders alphabet header lines plus the printed formula, in the format
/// read_formula_file accepts.
std::string write_formula_file(const Alphabet& alphabet, const Formula& f);

}  // namespace pebbletl
