#include "modalbao/formula.hpp"

#include <algorithm>
#include <cctype>

#include "modalbao/error.hpp"

namespace modalbao {

struct Formula::Node {
  Connective kind;
  std::string name;
  std::vector<Formula> children;
  std::size_t size;
  std::size_t depth;
};

Formula Formula::make(Connective kind, std::string name, std::vector<Formula> children) {
  std::size_t size = 1;
  std::size_t depth = 0;
  for (const auto& c : children) {
    size += c.size();
    depth = std::max(depth, c.depth() + 1);
  }
  return Formula(std::make_shared<const Node>(
      Node{kind, std::move(name), std::move(children), size, depth}));
}

Formula Formula::variable(std::string name) {
  if (name.empty()) throw InvalidArgument("variable name must be non-empty");
  return make(Connective::Variable, std::move(name), {});
}

Formula Formula::bottom() {
  static const Formula f = make(Connective::Bottom, {}, {});
  return f;
}

Formula Formula::top() { return negation(bottom()); }

Formula Formula::negation(Formula f) { return make(Connective::Negation, {}, {std::move(f)}); }

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return make(Connective::Conjunction, {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return make(Connective::Disjunction, {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return make(Connective::Implication, {}, {std::move(lhs), std::move(rhs)});
}

Formula Formula::box(Formula f) { return make(Connective::Box, {}, {std::move(f)}); }

Formula Formula::diamond(Formula f) { return make(Connective::Diamond, {}, {std::move(f)}); }

Connective Formula::kind() const noexcept { return node_->kind; }

bool Formula::is_unary() const noexcept {
  auto k = kind();
  return k == Connective::Negation || k == Connective::Box || k == Connective::Diamond;
}

bool Formula::is_binary() const noexcept {
  auto k = kind();
  return k == Connective::Conjunction || k == Connective::Disjunction ||
         k == Connective::Implication;
}

const std::string& Formula::name() const noexcept { return node_->name; }

const Formula& Formula::operand() const {
  if (!is_unary()) throw InvalidArgument("operand() on a non-unary formula");
  return node_->children[0];
}

const Formula& Formula::left() const {
  if (!is_binary()) throw InvalidArgument("left() on a non-binary formula");
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (!is_binary()) throw InvalidArgument("right() on a non-binary formula");
  return node_->children[1];
}

std::size_t Formula::size() const noexcept { return node_->size; }
std::size_t Formula::depth() const noexcept { return node_->depth; }

namespace {

void collect_variables(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == Connective::Variable) {
    out.insert(f.name());
  } else if (f.is_unary()) {
    collect_variables(f.operand(), out);
  } else if (f.is_binary()) {
    collect_variables(f.left(), out);
    collect_variables(f.right(), out);
  }
}

}  // namespace

std::set<std::string> Formula::variables() const {
  std::set<std::string> out;
  collect_variables(*this, out);
  return out;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Connective::Variable:
      return a.name() == b.name();
    case Connective::Bottom:
      return true;
    case Connective::Negation:
    case Connective::Box:
    case Connective::Diamond:
      return a.operand() == b.operand();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Not, And, Or, Implies, Box, Diamond, False, True, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

const char* token_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Not: return "'~'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Box: return "'[]'";
    case Tok::Diamond: return "'<>'";
    case Tok::False: return "'#f'";
    case Tok::True: return "'#t'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto two = [&](char a, char b) { return i + 1 < s.size() && s[i] == a && s[i + 1] == b; };
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t start = i;
      while (i < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::Ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (two('-', '>')) {
      out.push_back({Tok::Implies, i, "->"});
      i += 2;
    } else if (two('[', ']')) {
      out.push_back({Tok::Box, i, "[]"});
      i += 2;
    } else if (two('<', '>')) {
      out.push_back({Tok::Diamond, i, "<>"});
      i += 2;
    } else if (two('#', 'f')) {
      out.push_back({Tok::False, i, "#f"});
      i += 2;
    } else if (two('#', 't')) {
      out.push_back({Tok::True, i, "#t"});
      i += 2;
    } else if (c == '~') {
      out.push_back({Tok::Not, i++, "~"});
    } else if (c == '&') {
      out.push_back({Tok::And, i++, "&"});
    } else if (c == '|') {
      out.push_back({Tok::Or, i++, "|"});
    } else if (c == '(') {
      out.push_back({Tok::LParen, i++, "("});
    } else if (c == ')') {
      out.push_back({Tok::RParen, i++, ")"});
    } else {
      throw ParseError(i, std::string("unknown token '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Tok::End, s.size(), {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  Formula run() {
    Formula f = implication();
    if (peek().kind != Tok::End) unexpected("end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }

  [[noreturn]] void unexpected(const char* expected) const {
    const auto& t = peek();
    throw ParseError(t.pos, std::string("expected ") + expected + ", found " +
                                (t.kind == Tok::Ident ? "'" + t.text + "'" : token_name(t.kind)));
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Implies)) return Formula::implication(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula acc = conjunction();
    while (accept(Tok::Or)) acc = Formula::disjunction(std::move(acc), conjunction());
    return acc;
  }

  Formula conjunction() {
    Formula acc = unary();
    while (accept(Tok::And)) acc = Formula::conjunction(std::move(acc), unary());
    return acc;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (accept(Tok::Box)) return Formula::box(unary());
    if (accept(Tok::Diamond)) return Formula::diamond(unary());
    return atom();
  }

  Formula atom() {
    switch (peek().kind) {
      case Tok::Ident:
        return Formula::variable(next().text);
      case Tok::False:
        next();
        return Formula::bottom();
      case Tok::True:
        next();
        return Formula::top();
      case Tok::LParen: {
        next();
        Formula inner = implication();
        if (!accept(Tok::RParen)) unexpected("')'");
        return inner;
      }
      default:
        unexpected("formula");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength; higher binds tighter.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Connective::Implication: return 1;
    case Connective::Disjunction: return 2;
    case Connective::Conjunction: return 3;
    case Connective::Negation:
    case Connective::Box:
    case Connective::Diamond: return 4;
    default: return 5;
  }
}

void print_into(const Formula& f, std::string& out, bool outermost = false);

void print_child(const Formula& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print_into(child, out);
  if (parens) out += ')';
}

// Minimal parentheses, except that an outermost implication brackets its
// binary operands so axioms read as "(antecedent) -> (consequent)".
void print_into(const Formula& f, std::string& out, bool outermost) {
  switch (f.kind()) {
    case Connective::Variable:
      out += f.name();
      return;
    case Connective::Bottom:
      out += "#f";
      return;
    case Connective::Negation:
    case Connective::Box:
    case Connective::Diamond:
      out += f.kind() == Connective::Negation ? "~" : f.kind() == Connective::Box ? "[]" : "<>";
      print_child(f.operand(), f.operand().is_binary(), out);
      return;
    case Connective::Implication:
      print_child(f.left(), outermost ? f.left().is_binary() : precedence(f.left()) <= 1, out);
      out += " -> ";
      print_child(f.right(), outermost && f.right().is_binary(), out);
      return;
    case Connective::Conjunction:
    case Connective::Disjunction: {
      int p = precedence(f);
      print_child(f.left(), precedence(f.left()) < p, out);
      out += f.kind() == Connective::Conjunction ? " & " : " | ";
      print_child(f.right(), precedence(f.right()) <= p, out);
      return;
    }
  }
}

void tree_into(const Formula& f, std::string& out) {
  static const char* names[] = {"Variable", "Bottom",      "Negation", "Conjunction",
                                "Disjunction", "Implication", "Box",      "Diamond"};
  out += names[static_cast<int>(f.kind())];
  if (f.kind() == Connective::Bottom) return;
  out += '(';
  if (f.kind() == Connective::Variable) {
    out += f.name();
  } else if (f.is_unary()) {
    tree_into(f.operand(), out);
  } else {
    tree_into(f.left(), out);
    out += ", ";
    tree_into(f.right(), out);
  }
  out += ')';
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Formula& f) {
  std::string out;
  print_into(f, out, true);
  return out;
}

std::string print_tree(const Formula& f) {
  std::string out;
  tree_into(f, out);
  return out;
}

Formula substitute(const Formula& f, const Substitution& bindings) {
  switch (f.kind()) {
    case Connective::Variable: {
      auto it = bindings.find(f.name());
      return it == bindings.end() ? f : it->second;
    }
    case Connective::Bottom:
      return f;
    case Connective::Negation:
      return Formula::negation(substitute(f.operand(), bindings));
    case Connective::Box:
      return Formula::box(substitute(f.operand(), bindings));
    case Connective::Diamond:
      return Formula::diamond(substitute(f.operand(), bindings));
    case Connective::Conjunction:
      return Formula::conjunction(substitute(f.left(), bindings), substitute(f.right(), bindings));
    case Connective::Disjunction:
      return Formula::disjunction(substitute(f.left(), bindings), substitute(f.right(), bindings));
    case Connective::Implication:
      return Formula::implication(substitute(f.left(), bindings), substitute(f.right(), bindings));
  }
  return f;
}

Formula box_power(const Formula& f, std::size_t n) {
  Formula out = f;
  for (std::size_t i = 0; i < n; ++i) out = Formula::box(std::move(out));
  return out;
}

Formula diamond_power(const Formula& f, std::size_t n) {
  Formula out = f;
  for (std::size_t i = 0; i < n; ++i) out = Formula::diamond(std::move(out));
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

// A's consequent closes the parenthesis after `q1 | q2`.
constexpr std::pair<const char*, const char*> kCatalogText[] = {
    {"A1", "[](q1 -> r)"},
    {"A2", "[](q2 -> r)"},
    {"B1", "[](r -> <>q1)"},
    {"B2", "[](r -> <>q2)"},
    {"C1", "[]~(q1 & q2)"},
    {"A",
     "r & []p & ~[][]p & [](q1 -> r) & [](q2 -> r) & [](r -> <>q1) & [](r -> <>q2) & "
     "[]~(q1 & q2) -> <>(r & [](r -> q1 | q2))"},
    {"B", "[](p -> q) -> ([]p -> []q)"},
    {"C", "[]p -> p"},
    {"D", "(p & <><>q) -> (<>q | <><>(q & <>p))"},
    {"E", "([]p & ~[][]p) -> <>([][]p & ~[][][]p)"},
    {"F", "[]p -> [][]p"},
};

}  // namespace

AxiomCatalog::AxiomCatalog() {
  for (const auto& [name, text] : kCatalogText) {
    Formula f = parse(text);
    entries_.push_back({name, text, f, f.variables()});
  }
}

const CatalogEntry& AxiomCatalog::entry(std::string_view name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  throw InvalidArgument("no catalog entry named '" + std::string(name) + "'");
}

const std::vector<std::string>& AxiomCatalog::logic_axioms() {
  static const std::vector<std::string> names{"A", "B", "C", "D", "E"};
  return names;
}

const AxiomCatalog& axiom_catalog() {
  static const AxiomCatalog catalog;
  return catalog;
}

}  // namespace modalbao
