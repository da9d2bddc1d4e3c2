#include <doctest.h>

#include <map>
#include <random>

#include "grammar.hpp"

using namespace protodsl;

namespace {

Production make(const std::string& lhs, std::vector<Symbol> rhs) {
  return Production{lhs, std::move(rhs)};
}

Symbol nt(const std::string& s) { return {SymbolKind::Nonterminal, s}; }
Symbol term(const std::string& s) { return {SymbolKind::Terminal, s}; }

}  // namespace

TEST_CASE("prior contains the while production and is well-formed") {
  const Grammar& prior = load_prior();
  Production while_prod = make(
      "loop-statement", {term("While"), term("("), nt("expression"), term(")"), term("{"),
                         nt("statements"), term("}")});
  CHECK(prior.contains(while_prod));

  std::string reason;
  CHECK(prior.is_well_formed(&reason));
  CHECK(reason.empty());
}

TEST_CASE("nonterminal inventory matches the frozen count") {
  // Counted once from the transcribed prior: 52 nonterminals.
  CHECK(load_prior().nonterminals().size() == 52);
}

TEST_CASE("ownership is a partition and covers every constraint") {
  std::map<std::string, int> seen;
  std::size_t total = 0;
  for (ConstraintId id : all_constraints()) {
    const auto& owned = owned_productions(id);
    CHECK(!owned.empty());
    for (const Production& p : owned) {
      seen[production_key(p)] += 1;
      ++total;
    }
  }
  CHECK(seen.size() == total);  // no production owned twice
  for (const auto& [key, count] : seen) {
    INFO(key);
    CHECK(count == 1);
  }
}

TEST_CASE("bnf round-trips the prior") {
  const Grammar& prior = load_prior();
  std::string bnf = prior.to_bnf();
  Grammar parsed = Grammar::from_bnf(bnf);
  CHECK(parsed == prior);
}

TEST_CASE("prune with empty inactive set is the identity") {
  const Grammar& prior = load_prior();
  Grammar same = prune(prior, {});
  CHECK(same == prior);
}

TEST_CASE("pruning continue removes exactly its alternative") {
  const Grammar& prior = load_prior();
  Grammar g = prune(prior, {ConstraintId::ContinueStatement});
  Production cont = make("jump-statement", {term("continue")});
  CHECK(!g.contains(cont));
  CHECK(g.productions().size() == prior.productions().size() - 1);
  for (const Production& p : g.productions()) CHECK(prior.contains(p));
}

TEST_CASE("pruning whole families shrinks the statement support set") {
  std::set<ConstraintId> inactive = {
      ConstraintId::EventStatement,   ConstraintId::ResponseStatement,
      ConstraintId::ParallelFor,      ConstraintId::ParallelMap,
      ConstraintId::SpawnProcess,     ConstraintId::SendMessage,
      ConstraintId::ReceiveMessage,   ConstraintId::RaiseStatement,
      ConstraintId::ResolveStatement,
  };
  Grammar g = prune(load_prior(), inactive);
  std::set<std::string> statement_alts;
  for (const Production& p : g.productions()) {
    if (p.lhs == "statement") {
      REQUIRE(p.rhs.size() == 1);
      statement_alts.insert(p.rhs[0].text);
    }
  }
  CHECK(statement_alts == std::set<std::string>{"imperative-model", "type-system"});
  CHECK(!g.nonterminals().count("react"));
  CHECK(!g.nonterminals().count("concurrent"));
  CHECK(!g.nonterminals().count("runtime-error-handling"));
}

TEST_CASE("accepts_construct on prior and pruned grammars") {
  const Grammar& prior = load_prior();
  CHECK(accepts_construct(prior, ConstraintId::IfBranch));
  CHECK(accepts_construct(prior, ConstraintId::BreakStatement));

  Grammar no_while = prune(prior, {ConstraintId::WhileLoop});
  CHECK(!accepts_construct(no_while, ConstraintId::WhileLoop));
  CHECK(accepts_construct(no_while, ConstraintId::ForLoop));
  // For-loop still provides the loop context break needs.
  CHECK(accepts_construct(no_while, ConstraintId::BreakStatement));

  Grammar no_loops = prune(prior, {ConstraintId::WhileLoop, ConstraintId::ForLoop});
  CHECK(!accepts_construct(no_loops, ConstraintId::BreakStatement));
  CHECK(!accepts_construct(no_loops, ConstraintId::ContinueStatement));

  Grammar no_if = prune(prior, {ConstraintId::IfBranch});
  CHECK(!accepts_construct(no_if, ConstraintId::IfElseBranch));

  Grammar no_spawn = prune(prior, {ConstraintId::SpawnProcess});
  CHECK(!accepts_construct(no_spawn, ConstraintId::SendMessage));
  CHECK(!accepts_construct(no_spawn, ConstraintId::ReceiveMessage));
}

TEST_CASE("pruning everything statement-shaped fails loudly") {
  std::set<ConstraintId> all(all_constraints().begin(), all_constraints().end());
  CHECK_THROWS_AS(prune(load_prior(), all), Error);
}

TEST_CASE("prune idempotence and well-formedness on random inactive sets") {
  std::mt19937_64 rng(4242);
  const Grammar& prior = load_prior();
  int successes = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::set<ConstraintId> inactive;
    for (ConstraintId id : all_constraints()) {
      if (next_unit(rng) < 0.35) inactive.insert(id);
    }
    Grammar once;
    try {
      once = prune(prior, inactive);
    } catch (const Error&) {
      continue;  // legitimately refused: start would die
    }
    ++successes;
    std::string reason;
    CHECK(once.is_well_formed(&reason));
    Grammar twice = prune(once, inactive);
    CHECK(twice == once);
    for (ConstraintId id : inactive) CHECK(!accepts_construct(once, id));
  }
  CHECK(successes > 300);
}

TEST_CASE("shipped bnf file matches the built-in prior") {
  std::string shipped = read_file(std::string(PROTODSL_DATA_DIR) + "/prior_grammar.bnf");
  CHECK(shipped == load_prior().to_bnf());
}
