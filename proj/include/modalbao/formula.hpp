#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace modalbao {

enum class Connective : unsigned char {
  Variable,
  Bottom,
  Negation,
  Conjunction,
  Disjunction,
  Implication,
  Box,
  Diamond,
};

// Immutable modal formula. Copies share structure; equality is structural.
class Formula {
 public:
  static Formula variable(std::string name);
  static Formula bottom();
  // Sugar for ~#f.
  static Formula top();
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula box(Formula f);
  static Formula diamond(Formula f);

  Connective kind() const noexcept;
  bool is_unary() const noexcept;
  bool is_binary() const noexcept;

  // Variable name; empty for other cases.
  const std::string& name() const noexcept;
  // Operand of a unary case.
  const Formula& operand() const;
  const Formula& left() const;
  const Formula& right() const;

  std::set<std::string> variables() const;
  std::size_t size() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Connective kind, std::string name, std::vector<Formula> children);

  std::shared_ptr<const Node> node_;
};

// Concrete syntax:
//   ~ & | -> [] <> #f #t ( )   identifiers [A-Za-z_][A-Za-z0-9_]*
// Precedence, tightest first: {~, [], <>} > & > | > ->. `&` and `|` associate
// to the left, `->` to the right. Throws ParseError with a byte offset.
Formula parse(std::string_view text);

// Inverse of parse. Parentheses are emitted only where precedence requires
// them, except that binary operands of `->` are always parenthesized.
std::string print(const Formula& f);

// Constructor-style dump, e.g. Box(Variable(p)).
std::string print_tree(const Formula& f);

using Substitution = std::map<std::string, Formula, std::less<>>;

// Simultaneous substitution; unbound variables pass through.
Formula substitute(const Formula& f, const Substitution& bindings);

// [] applied n times; n = 0 returns f.
Formula box_power(const Formula& f, std::size_t n);
Formula diamond_power(const Formula& f, std::size_t n);

struct CatalogEntry {
  std::string name;
  std::string text;
  Formula formula;
  std::set<std::string> variables;
};

// The named formulas A1, A2, B1, B2, C1, A, B, C, D, E, F. A..E axiomatize the logic.
class AxiomCatalog {
 public:
  AxiomCatalog();

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  const CatalogEntry& entry(std::string_view name) const;
  const Formula& get(std::string_view name) const { return entry(name).formula; }

  // The five axioms of L besides the tautologies: A, B, C, D, E.
  static const std::vector<std::string>& logic_axioms();

 private:
  std::vector<CatalogEntry> entries_;
};

const AxiomCatalog& axiom_catalog();

}  // namespace modalbao
