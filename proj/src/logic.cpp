#include "coherence_lab/logic.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace coherence_lab::logic {

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

UnknownVariableError::UnknownVariableError(const std::string& name, std::size_t position)
    : std::runtime_error("unknown variable '" + name + "' at position " + std::to_string(position)),
      name_(name),
      position_(position) {}

MissingVariableError::MissingVariableError(const std::string& name)
    : std::runtime_error("assignment is missing variable '" + name + "'"), name_(name) {}

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

void check_variable_list(const std::vector<std::string>& variables) {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (!is_identifier(variables[i]))
      throw std::invalid_argument("invalid variable name '" + variables[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[j] == variables[i])
        throw std::invalid_argument("duplicate variable name '" + variables[i] + "'");
  }
}

NodePtr make_leaf(std::size_t variable) {
  return std::make_shared<const Node>(Node{NodeKind::Variable, variable, nullptr, nullptr});
}

NodePtr make_node(NodeKind kind, NodePtr lhs, NodePtr rhs = nullptr) {
  return std::make_shared<const Node>(Node{kind, 0, std::move(lhs), std::move(rhs)});
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& variables)
      : text_(text), variables_(variables) {}

  NodePtr parse() {
    NodePtr root = parse_iff();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  NodePtr parse_iff() {
    NodePtr lhs = parse_implies();
    while (accept("<->")) lhs = make_node(NodeKind::Iff, lhs, parse_implies());
    return lhs;
  }

  NodePtr parse_implies() {
    NodePtr lhs = parse_or();
    if (accept("->")) return make_node(NodeKind::Implies, lhs, parse_implies());
    return lhs;
  }

  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (accept("|")) lhs = make_node(NodeKind::Or, lhs, parse_and());
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_unary();
    while (accept("&")) lhs = make_node(NodeKind::And, lhs, parse_unary());
    return lhs;
  }

  NodePtr parse_unary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (accept("!")) return make_node(NodeKind::Not, parse_unary());
    if (accept("(")) {
      const std::size_t open = pos_ - 1;
      NodePtr inner = parse_iff();
      if (!accept(")")) {
        skip_space();
        throw ParseError("missing ')' for '(' at position " + std::to_string(open), pos_);
      }
      return inner;
    }
    const char c = text_[pos_];
    if (!(c >= 'a' && c <= 'z')) throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (!((d >= 'a' && d <= 'z') || (d >= '0' && d <= '9') || d == '_')) break;
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    const auto it = std::find(variables_.begin(), variables_.end(), name);
    if (it == variables_.end()) throw UnknownVariableError(name, start);
    return make_leaf(static_cast<std::size_t>(it - variables_.begin()));
  }

  std::string_view text_;
  const std::vector<std::string>& variables_;
  std::size_t pos_ = 0;
};

int precedence(NodeKind kind) {
  switch (kind) {
    case NodeKind::Iff: return 1;
    case NodeKind::Implies: return 2;
    case NodeKind::Or: return 3;
    case NodeKind::And: return 4;
    case NodeKind::Not: return 5;
    case NodeKind::Variable: return 6;
  }
  return 0;
}

const char* symbol(NodeKind kind) {
  switch (kind) {
    case NodeKind::Iff: return " <-> ";
    case NodeKind::Implies: return " -> ";
    case NodeKind::Or: return " | ";
    case NodeKind::And: return " & ";
    default: return "";
  }
}

void render(const Node& node, const std::vector<std::string>& names, std::ostream& os) {
  auto child = [&](const Node& c, bool parens) {
    if (parens) os << '(';
    render(c, names, os);
    if (parens) os << ')';
  };
  const int p = precedence(node.kind);
  switch (node.kind) {
    case NodeKind::Variable:
      os << names[node.variable];
      return;
    case NodeKind::Not:
      os << '!';
      child(*node.lhs, precedence(node.lhs->kind) < p);
      return;
    default: {
      const bool right_assoc = node.kind == NodeKind::Implies;
      const int lp = precedence(node.lhs->kind);
      const int rp = precedence(node.rhs->kind);
      child(*node.lhs, lp < p || (lp == p && right_assoc));
      os << symbol(node.kind);
      child(*node.rhs, rp < p || (rp == p && !right_assoc));
    }
  }
}

template <typename Lookup>
bool eval_node(const Node& node, const Lookup& value_of) {
  switch (node.kind) {
    case NodeKind::Variable: return value_of(node.variable);
    case NodeKind::Not: return !eval_node(*node.lhs, value_of);
    case NodeKind::And: return eval_node(*node.lhs, value_of) && eval_node(*node.rhs, value_of);
    case NodeKind::Or: return eval_node(*node.lhs, value_of) || eval_node(*node.rhs, value_of);
    case NodeKind::Implies: return !eval_node(*node.lhs, value_of) || eval_node(*node.rhs, value_of);
    case NodeKind::Iff: return eval_node(*node.lhs, value_of) == eval_node(*node.rhs, value_of);
  }
  return false;
}

void check_minterm_arity(std::size_t n) {
  if (n < 1 || n > kMaxVariables)
    throw std::out_of_range("variable count " + std::to_string(n) + " outside 1.." +
                            std::to_string(kMaxVariables));
}

}  // namespace

Formula::Formula(std::vector<std::string> variables, NodePtr root)
    : variables_(std::move(variables)), root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("formula has no root");
}

Formula parse_formula(std::string_view text, const std::vector<std::string>& variables) {
  check_variable_list(variables);
  Parser parser(text, variables);
  NodePtr root = parser.parse();
  return Formula(variables, std::move(root));
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  render(f.root(), f.variables(), os);
  return os.str();
}

bool evaluate(const Formula& f, const std::map<std::string, bool>& assignment) {
  std::vector<bool> values(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) {
    const auto it = assignment.find(f.variables()[i]);
    if (it == assignment.end()) throw MissingVariableError(f.variables()[i]);
    values[i] = it->second;
  }
  return eval_node(f.root(), [&](std::size_t i) { return values[i]; });
}

bool evaluate_packed(const Formula& f, std::uint64_t bits) {
  const std::size_t n = f.arity();
  if (n > 64) throw std::out_of_range("packed evaluation supports at most 64 variables");
  return eval_node(f.root(), [&](std::size_t i) { return ((bits >> (n - 1 - i)) & 1u) == 0; });
}

bool Minterm::satisfied_by(const std::vector<bool>& assignment) const {
  if (assignment.size() != signs.size())
    throw std::invalid_argument("assignment size does not match minterm arity");
  return assignment == signs;
}

std::string Minterm::describe(const std::vector<std::string>& names) const {
  if (names.size() != signs.size()) throw std::invalid_argument("name count does not match minterm arity");
  std::string out;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (i) out += " & ";
    if (!signs[i]) out += '!';
    out += names[i];
  }
  return out;
}

Minterm minterm_from_index(std::size_t index, std::size_t n) {
  check_minterm_arity(n);
  const std::size_t count = std::size_t{1} << n;
  if (index < 1 || index > count)
    throw std::out_of_range("minterm index " + std::to_string(index) + " outside 1.." + std::to_string(count));
  const std::size_t code = index - 1;
  Minterm m{index, std::vector<bool>(n)};
  for (std::size_t i = 0; i < n; ++i) m.signs[i] = ((code >> (n - 1 - i)) & 1u) == 0;
  return m;
}

MintermSet enumerate_minterms(std::size_t n) {
  check_minterm_arity(n);
  MintermSet ms{n, std::size_t{1} << n, {}};
  ms.minterms.reserve(ms.count);
  for (std::size_t k = 1; k <= ms.count; ++k) ms.minterms.push_back(minterm_from_index(k, n));
  return ms;
}

std::vector<std::size_t> to_minterm_disjunction(const Formula& f) {
  check_minterm_arity(f.arity());
  const std::uint64_t count = std::uint64_t{1} << f.arity();
  std::vector<std::size_t> indices;
  for (std::uint64_t code = 0; code < count; ++code)
    if (evaluate_packed(f, code)) indices.push_back(static_cast<std::size_t>(code + 1));
  return indices;
}

bool verify_tautology_of_all(const MintermSet& ms) {
  check_minterm_arity(ms.n);
  if (ms.minterms.size() != ms.count || ms.count != (std::size_t{1} << ms.n)) return false;
  std::vector<bool> assignment(ms.n);
  for (std::size_t code = 0; code < ms.count; ++code) {
    for (std::size_t i = 0; i < ms.n; ++i) assignment[i] = ((code >> (ms.n - 1 - i)) & 1u) == 0;
    const bool any = std::any_of(ms.minterms.begin(), ms.minterms.end(),
                                 [&](const Minterm& m) { return m.satisfied_by(assignment); });
    if (!any) return false;
  }
  return true;
}

bool mutually_exclusive(const Minterm& lhs, const Minterm& rhs) {
  if (lhs.arity() != rhs.arity())
    throw std::invalid_argument("minterms over different variable counts");
  // Two full conjunctions share a satisfying assignment only if every sign agrees.
  return lhs.signs != rhs.signs;
}

std::vector<std::string> parse_variable_list(std::string_view csv) {
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', start), csv.size());
    std::string_view item = csv.substr(start, comma - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    names.emplace_back(item);
    start = comma + 1;
  }
  check_variable_list(names);
  return names;
}

}  // namespace coherence_lab::logic
