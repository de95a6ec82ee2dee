// Propositional formulas over n independent statements and their
// decomposition into mutually exclusive conjunctions (minterms).
//
// Minterms are indexed k = 1..N, N = 2^n. The index is a binary code with
// the first variable in the most significant position; a bit is 0 when the
// variable appears unnegated, so k = 1 is the all-true conjunction:
//
//   n = 2:  k=1  a & b     k=2  a & !b     k=3  !a & b     k=4  !a & !b
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coherence_lab::logic {

inline constexpr std::size_t kMaxVariables = 20;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  /// 0-based character offset into the parsed text.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariableError : public std::runtime_error {
 public:
  UnknownVariableError(const std::string& name, std::size_t position);
  const std::string& name() const noexcept { return name_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string name_;
  std::size_t position_;
};

class MissingVariableError : public std::runtime_error {
 public:
  explicit MissingVariableError(const std::string& name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

enum class NodeKind { Variable, Not, And, Or, Implies, Iff };

struct Node {
  NodeKind kind;
  std::size_t variable = 0;  // index into the declared list, Variable only
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;  // binary nodes only
};

using NodePtr = std::shared_ptr<const Node>;

/// Immutable parse tree plus the ordered variable list it was parsed against.
class Formula {
 public:
  Formula(std::vector<std::string> variables, NodePtr root);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t arity() const noexcept { return variables_.size(); }
  const Node& root() const noexcept { return *root_; }
  NodePtr root_ptr() const noexcept { return root_; }

 private:
  std::vector<std::string> variables_;
  NodePtr root_;
};

/// Grammar, loosest binding first:
///   iff     := implies ("<->" implies)*
///   implies := or ("->" implies)?          right-associative
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "!" unary | "(" iff ")" | [a-z][a-z0-9_]*
Formula parse_formula(std::string_view text, const std::vector<std::string>& variables);

/// Minimal-parenthesis rendering that parses back to the same tree.
std::string to_string(const Formula& f);

bool evaluate(const Formula& f, const std::map<std::string, bool>& assignment);

/// Assignment packed in minterm order: bit (n-1-i) of `bits` set means
/// variable i is false. `bits` equals k-1 of the unique minterm it satisfies.
bool evaluate_packed(const Formula& f, std::uint64_t bits);

struct Minterm {
  std::size_t index;        // 1-based
  std::vector<bool> signs;  // signs[i] true: variable i unnegated

  std::size_t arity() const noexcept { return signs.size(); }
  bool satisfied_by(const std::vector<bool>& assignment) const;
  std::string describe(const std::vector<std::string>& names) const;
};

Minterm minterm_from_index(std::size_t index, std::size_t n);

struct MintermSet {
  std::size_t n;
  std::size_t count;  // 2^n
  std::vector<Minterm> minterms;
};

MintermSet enumerate_minterms(std::size_t n);

/// Sorted 1-based indices of the minterms whose disjunction equals `f`.
std::vector<std::size_t> to_minterm_disjunction(const Formula& f);

/// True iff the disjunction of every minterm holds under all 2^n assignments.
bool verify_tautology_of_all(const MintermSet& ms);

/// A minterm is never exclusive with itself; distinct minterms always are.
bool mutually_exclusive(const Minterm& lhs, const Minterm& rhs);

/// Splits "a,b,c" into names, validating each against the identifier rule.
std::vector<std::string> parse_variable_list(std::string_view csv);

}  // namespace coherence_lab::logic
