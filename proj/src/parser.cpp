#include "pebbletl/parser.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "pebbletl/props.hpp"

namespace pebbletl {

namespace {

enum class Tok {
  Ident,
  TempOp,  // one of G F X H O Y, payload in text
  Tilde,
  Amp,
  Pipe,
  Arrow,
  Equal,
  LParen,
  RParen,
  LAngle,
  RAngle,
  Dot,
  Comma,
  End,
};

struct Token {
  Tok tok;
  std::string text;
  SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_temporal_letter(const std::string& s) {
  return s.size() == 1 && (s == "G" || s == "F" || s == "X" || s == "H" ||
                           s == "O" || s == "Y");
}

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      ++i;
      while (i < n && ident_char(text[i])) ++i;
      std::string word = text.substr(start, i - start);
      out.push_back({is_temporal_letter(word) ? Tok::TempOp : Tok::Ident,
                     std::move(word),
                     {start, i}});
      continue;
    }
    switch (c) {
      case '~': out.push_back({Tok::Tilde, "~", {start, start + 1}}); ++i; break;
      case '&': out.push_back({Tok::Amp, "&", {start, start + 1}}); ++i; break;
      case '|': out.push_back({Tok::Pipe, "|", {start, start + 1}}); ++i; break;
      case '=': out.push_back({Tok::Equal, "=", {start, start + 1}}); ++i; break;
      case '(': out.push_back({Tok::LParen, "(", {start, start + 1}}); ++i; break;
      case ')': out.push_back({Tok::RParen, ")", {start, start + 1}}); ++i; break;
      case '<': out.push_back({Tok::LAngle, "<", {start, start + 1}}); ++i; break;
      case '>': out.push_back({Tok::RAngle, ">", {start, start + 1}}); ++i; break;
      case '.': out.push_back({Tok::Dot, ".", {start, start + 1}}); ++i; break;
      case ',': out.push_back({Tok::Comma, ",", {start, start + 1}}); ++i; break;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", {start, start + 2}});
          i += 2;
          break;
        }
        throw ParseError("stray '-' (expected '->')", {start, start + 1});
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         {start, start + 1});
    }
  }
  out.push_back({Tok::End, "", {n, n}});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Alphabet& alphabet)
      : tokens_(std::move(tokens)), alphabet_(alphabet) {}

  FormulaPtr parse() {
    FormulaPtr f = parse_implies();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  const Token& cur() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }

  void expect(Tok t, const std::string& what) {
    if (cur().tok != t) throw ParseError(what, cur().span);
    ++pos_;
  }

  bool bound(const std::string& name) const {
    for (auto it = binders_.rbegin(); it != binders_.rend(); ++it)
      if (*it == name) return true;
    return false;
  }

  // Identifier used in a variable position (atom/equality argument).
  std::string variable_arg(const Token& t, const char* where) {
    if (alphabet_.is_constant(t.text))
      throw ParseError("constant under relation symbol: '" + t.text +
                           "' used in " + where,
                       t.span);
    if (!alphabet_.is_variable(t.text) && !bound(t.text))
      throw ParseError("undeclared variable '" + t.text + "' in " + where,
                       t.span);
    return t.text;
  }

  FormulaPtr parse_implies() {
    FormulaPtr lhs = parse_or();
    if (cur().tok == Tok::Arrow) {
      ++pos_;
      return Formula::Implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    FormulaPtr f = parse_and();
    while (cur().tok == Tok::Pipe) {
      ++pos_;
      f = Formula::Or(std::move(f), parse_and());
    }
    return f;
  }

  FormulaPtr parse_and() {
    FormulaPtr f = parse_unary();
    while (cur().tok == Tok::Amp) {
      ++pos_;
      f = Formula::And(std::move(f), parse_unary());
    }
    return f;
  }

  FormulaPtr parse_unary() {
    if (cur().tok == Tok::Tilde) {
      ++pos_;
      return Formula::Not(parse_unary());
    }
    if (cur().tok == Tok::TempOp) {
      const std::string op = take().text;
      FormulaPtr f = parse_unary();
      if (op == "G") return Formula::Always(std::move(f));
      if (op == "F") return Formula::Eventually(std::move(f));
      if (op == "X") return Formula::Next(std::move(f));
      if (op == "H") return Formula::Historically(std::move(f));
      if (op == "O") return Formula::Once(std::move(f));
      return Formula::Yesterday(std::move(f));
    }
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    if (cur().tok == Tok::LParen) {
      ++pos_;
      FormulaPtr f = parse_implies();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (cur().tok == Tok::LAngle) return parse_abstraction();
    if (cur().tok == Tok::Ident) return parse_atom_or_eq();
    throw ParseError("expected a formula", cur().span);
  }

  FormulaPtr parse_abstraction() {
    const Token open = take();  // '<'
    if (cur().tok != Tok::Ident)
      throw ParseError("expected abstraction binder", cur().span);
    const Token binder = take();
    if (alphabet_.is_constant(binder.text))
      throw ParseError("abstraction binder '" + binder.text +
                           "' collides with a declared constant",
                       binder.span);
    expect(Tok::Dot, "expected '.' after abstraction binder");
    binders_.push_back(binder.text);
    FormulaPtr body = parse_implies();
    binders_.pop_back();
    if (cur().tok != Tok::RAngle)
      throw ParseError("unbalanced abstraction: expected '>'", open.span);
    ++pos_;
    expect(Tok::LParen, "expected '(' after abstraction");
    if (cur().tok != Tok::Ident)
      throw ParseError("expected abstraction argument", cur().span);
    const Token arg = take();
    expect(Tok::RParen, "expected ')' after abstraction argument");
    Term t;
    if (bound(arg.text) || alphabet_.is_variable(arg.text))
      t = make_var(arg.text);
    else if (alphabet_.is_constant(arg.text))
      t = make_const(arg.text);
    else
      throw ParseError("undeclared identifier '" + arg.text +
                           "' as abstraction argument",
                       arg.span);
    return Formula::Abstract(binder.text, std::move(body), std::move(t));
  }

  FormulaPtr parse_atom_or_eq() {
    const Token head = take();
    if (cur().tok == Tok::LParen) {
      ++pos_;
      auto it = alphabet_.predicates.find(head.text);
      if (it == alphabet_.predicates.end())
        throw ParseError("undeclared predicate '" + head.text + "'", head.span);
      std::vector<std::string> args;
      if (cur().tok != Tok::RParen) {
        for (;;) {
          if (cur().tok != Tok::Ident)
            throw ParseError("expected atom argument", cur().span);
          args.push_back(variable_arg(take(), "atom arguments"));
          if (cur().tok != Tok::Comma) break;
          ++pos_;
        }
      }
      expect(Tok::RParen, "expected ')' after atom arguments");
      if (args.size() != it->second)
        throw ParseError("arity mismatch: " + head.text + "/" +
                             std::to_string(it->second) + " applied to " +
                             std::to_string(args.size()) + " arguments",
                         {head.span.start, tokens_[pos_ - 1].span.end});
      return Formula::Atom(head.text, std::move(args));
    }
    if (cur().tok == Tok::Equal) {
      ++pos_;
      std::string left = variable_arg(head, "equality");
      if (cur().tok != Tok::Ident)
        throw ParseError("expected identifier after '='", cur().span);
      std::string right = variable_arg(take(), "equality");
      return Formula::Eq(std::move(left), std::move(right));
    }
    throw ParseError("expected '(' or '=' after identifier '" + head.text + "'",
                     head.span);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Alphabet& alphabet_;
  std::vector<std::string> binders_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Alphabet& alphabet) {
  return Parser(lex(text), alphabet).parse();
}

namespace {

// Precedence: Implies = 1 (loosest), Or = 2, And = 3, unary = 4, atoms,
// equality and abstraction = 5. Equality is parenthesized under unary
// operators for readability ("~(x = y)", never "~x = y").
int precedence(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Implies: return 1;
    case FormulaKind::Or: return 2;
    case FormulaKind::And: return 3;
    case FormulaKind::Not: return 4;
    default: return is_unary_temporal(f.kind()) ? 4 : 5;
  }
}

const char* unary_token(FormulaKind k) {
  switch (k) {
    case FormulaKind::Always: return "G";
    case FormulaKind::Eventually: return "F";
    case FormulaKind::Next: return "X";
    case FormulaKind::Historically: return "H";
    case FormulaKind::Once: return "O";
    case FormulaKind::Yesterday: return "Y";
    default: return "";
  }
}

void render_unary_operand(const Formula& operand, std::string& out);

void render(const Formula& f, int min_prec, std::string& out) {
  const bool parens = precedence(f) < min_prec;
  if (parens) out.push_back('(');
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.predicate();
      out.push_back('(');
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i > 0) out += ", ";
        out += f.args()[i];
      }
      out.push_back(')');
      break;
    case FormulaKind::Eq:
      out += f.left_var();
      out += " = ";
      out += f.right_var();
      break;
    case FormulaKind::Not:
      out.push_back('~');
      render_unary_operand(*f.child(), out);
      break;
    case FormulaKind::And:
      render(*f.lhs(), 3, out);
      out += " & ";
      render(*f.rhs(), 4, out);
      break;
    case FormulaKind::Or:
      render(*f.lhs(), 2, out);
      out += " | ";
      render(*f.rhs(), 3, out);
      break;
    case FormulaKind::Implies:
      render(*f.lhs(), 2, out);
      out += " -> ";
      render(*f.rhs(), 1, out);
      break;
    case FormulaKind::Abstract:
      out.push_back('<');
      out += f.binder();
      out += ". ";
      render(*f.child(), 1, out);
      out += ">(";
      out += f.argument().name;
      out.push_back(')');
      break;
    default:
      out += unary_token(f.kind());
      out.push_back(' ');
      render_unary_operand(*f.child(), out);
      break;
  }
  if (parens) out.push_back(')');
}

void render_unary_operand(const Formula& operand, std::string& out) {
  if (operand.kind() == FormulaKind::Eq) {
    out.push_back('(');
    render(operand, 1, out);
    out.push_back(')');
  } else {
    render(operand, 4, out);
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  render(f, 1, out);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Expands @Macro(args) occurrences; built formulas are spliced back in as
// parenthesized concrete syntax.
std::string expand_macros(const std::string& text, const Alphabet& alphabet) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '@') {
      out.push_back(text[i++]);
      continue;
    }
    const std::size_t start = i++;
    std::string name;
    while (i < text.size() && ident_char(text[i])) name.push_back(text[i++]);
    if (i >= text.size() || text[i] != '(')
      throw ParseError("expected '(' after macro @" + name, {start, i});
    ++i;
    std::vector<std::string> args;
    std::string item;
    for (; i < text.size() && text[i] != ')'; ++i) {
      if (text[i] == ',') {
        args.push_back(trim(item));
        item.clear();
      } else {
        item.push_back(text[i]);
      }
    }
    if (i >= text.size())
      throw ParseError("unterminated macro @" + name, {start, i});
    ++i;  // ')'
    if (!trim(item).empty()) args.push_back(trim(item));
    const SourceSpan span{start, i};
    try {
      FormulaPtr built = expand_builder_macro(name, args, alphabet);
      out += "(" + print_formula(built) + ")";
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("@") + name + ": " + e.what(), span);
    }
  }
  return out;
}

}  // namespace

FormulaFile read_formula_file(const std::string& content) {
  Alphabet alphabet;
  bool saw_vars = false, saw_consts = false, saw_preds = false;
  std::string formula_text;
  std::istringstream in(content);
  std::string line;
  std::size_t consumed = 0;  // offset of the current line in content
  while (std::getline(in, line)) {
    const std::size_t line_offset = consumed;
    consumed += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("vars:", 0) == 0) {
      if (saw_vars) throw ParseError("duplicate vars: header", {line_offset, line_offset + 5});
      saw_vars = true;
      for (auto& v : split_list(t.substr(5))) alphabet.variables.insert(v);
      continue;
    }
    if (t.rfind("consts:", 0) == 0) {
      if (saw_consts) throw ParseError("duplicate consts: header", {line_offset, line_offset + 7});
      saw_consts = true;
      for (auto& c : split_list(t.substr(7))) alphabet.constants.insert(c);
      continue;
    }
    if (t.rfind("preds:", 0) == 0) {
      if (saw_preds) throw ParseError("duplicate preds: header", {line_offset, line_offset + 6});
      saw_preds = true;
      for (auto& p : split_list(t.substr(6))) {
        const auto slash = p.find('/');
        if (slash == std::string::npos)
          throw ParseError("predicate '" + p + "' missing /arity",
                           {line_offset, line_offset + line.size()});
        const std::string name = trim(p.substr(0, slash));
        const std::string arity = trim(p.substr(slash + 1));
        if (name.empty() || arity.empty() || arity.size() > 4 ||
            arity.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("bad predicate declaration '" + p + "'",
                           {line_offset, line_offset + line.size()});
        alphabet.predicates[name] = static_cast<std::size_t>(std::stoul(arity));
      }
      continue;
    }
    formula_text += t;
    formula_text.push_back(' ');
  }
  formula_text = trim(formula_text);
  if (formula_text.empty())
    throw ParseError("formula file contains no formula", {0, 0});
  const std::string expanded = expand_macros(formula_text, alphabet);
  return {alphabet, parse_formula(expanded, alphabet)};
}

std::string write_formula_file(const Alphabet& alphabet, const Formula& f) {
  std::ostringstream out;
  if (!alphabet.variables.empty()) {
    out << "vars:";
    bool first = true;
    for (const auto& v : alphabet.variables) {
      out << (first ? " " : ", ") << v;
      first = false;
    }
    out << "\n";
  }
  if (!alphabet.constants.empty()) {
    out << "consts:";
    bool first = true;
    for (const auto& c : alphabet.constants) {
      out << (first ? " " : ", ") << c;
      first = false;
    }
    out << "\n";
  }
  if (!alphabet.predicates.empty()) {
    out << "preds:";
    bool first = true;
    for (const auto& [name, arity] : alphabet.predicates) {
      out << (first ? " " : ", ") << name << "/" << arity;
      first = false;
    }
    out << "\n";
  }
  out << print_formula(f) << "\n";
  return out.str();
}

}  // namespace pebbletl
