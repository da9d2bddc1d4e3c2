#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "constraints.hpp"

namespace protodsl {

enum class SymbolKind { Nonterminal, Terminal };

struct Symbol {
  SymbolKind kind;
  std::string text;
  bool operator==(const Symbol&) const = default;
  bool operator<(const Symbol& rhs) const {
    return std::tie(kind, text) < std::tie(rhs.kind, rhs.text);
  }
};

struct Production {
  std::string lhs;
  std::vector<Symbol> rhs;  // empty rhs = epsilon
  bool operator==(const Production&) const = default;
};

// Canonical one-line form "<lhs> ::= sym sym ..."; the ownership table and
// structural diffs key off it.
std::string production_key(const Production& p);

class Grammar {
 public:
  Grammar() = default;
  Grammar(std::string start, std::vector<Production> productions);

  const std::string& start() const { return start_; }
  const std::vector<Production>& productions() const { return productions_; }
  std::set<std::string> nonterminals() const;
  std::set<std::string> terminals() const;
  bool contains(const Production& p) const;

  // Well-formed: every nonterminal reachable from start and productive.
  bool is_well_formed(std::string* reason = nullptr) const;

  std::string to_bnf() const;
  static Grammar from_bnf(std::string_view text);

  bool operator==(const Grammar&) const = default;

 private:
  std::string start_ = "program";
  std::vector<Production> productions_;
};

// The full prior grammar: imperative model, runtime error handling, type
// system with domain-specified types, concurrent (data-parallel and
// message-passing), react model and auxiliary definitions.
const Grammar& load_prior();

// Productions realizing a constraint within the prior. The mapping is a
// partition: no production is owned by two constraints; glue productions are
// owned by none and live or die through reachability cleanup.
const std::vector<Production>& owned_productions(ConstraintId id);

// Removes each inactive constraint's productions (dependency-closed), then
// iteratively deletes unproductive and unreachable nonterminals. Fails if the
// start symbol would die.
Grammar prune(const Grammar& grammar, const std::set<ConstraintId>& inactive);

// True iff the construct's productions survive and its dependencies are met.
bool accepts_construct(const Grammar& grammar, ConstraintId id);

}  // namespace protodsl
