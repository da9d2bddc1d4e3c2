#include <doctest.h>

#include "em.hpp"
#include "planted_corpus.hpp"

using namespace protodsl;

namespace {

// Complete score maps: 1.0 for exhibited constraints, 0.0 otherwise.
std::vector<ScoreMap> make_scores(const std::vector<std::set<ConstraintId>>& exhibited) {
  std::vector<ScoreMap> maps;
  for (const auto& set : exhibited) {
    ScoreMap m;
    for (ConstraintId k : all_constraints()) m[k] = set.count(k) ? 1.0 : 0.0;
    maps.push_back(std::move(m));
  }
  return maps;
}

const Lexicons& lexicons() {
  static Lexicons lex = Lexicons::load(PROTODSL_DATA_DIR);
  return lex;
}

const SimilarityProvider& sim() {
  static SimilarityProvider p =
      SimilarityProvider::bundled(std::string(PROTODSL_DATA_DIR) + "/synonyms.txt");
  return p;
}

}  // namespace

TEST_CASE("grammar-rejected constraints get zero responsibility") {
  EmConfig cfg;
  auto scores = make_scores({{ConstraintId::IfBranch}, {ConstraintId::IfBranch}});
  ThetaParams theta = init_theta(scores, cfg);
  Grammar no_if = prune(load_prior(), {ConstraintId::IfBranch});
  LatentAssignment a = e_step(scores, theta, no_if, cfg);
  for (const auto& r : a.responsibilities) {
    CHECK(r.at(ConstraintId::IfBranch) == 0.0);
  }
}

TEST_CASE("posterior for a positive observation under pi=0.5") {
  // Two-rate Bernoulli with detect 0.95 / false-positive 0.05:
  // r = 0.5*0.95 / (0.5*0.95 + 0.5*0.05) = 0.95.
  EmConfig cfg;
  auto scores = make_scores({{ConstraintId::IfBranch}});
  ThetaParams theta = init_theta(scores, cfg);
  theta.pi[ConstraintId::IfBranch] = 0.5;
  LatentAssignment a = e_step(scores, theta, load_prior(), cfg);
  CHECK(a.responsibilities[0].at(ConstraintId::IfBranch) == doctest::Approx(0.95).epsilon(1e-12));
}

TEST_CASE("all-zero scores collapse immediately") {
  EmConfig cfg;
  auto scores = make_scores({{}, {}, {}});
  ThetaParams theta = init_theta(scores, cfg);
  CHECK(theta.pi.at(ConstraintId::WhileLoop) == 0.0);
  LatentAssignment a = e_step(scores, theta, load_prior(), cfg);
  for (const auto& r : a.responsibilities) CHECK(r.at(ConstraintId::WhileLoop) == 0.0);

  auto [syntax, report] = run_em(scores, cfg);
  CHECK(!syntax.active.count(ConstraintId::WhileLoop));
  CHECK(!syntax.active.count(ConstraintId::IfBranch));
  // Constants survive on any input.
  CHECK(syntax.active.count(ConstraintId::DeviceTypeDeclaration));
  CHECK(syntax.active.count(ConstraintId::ScientificTypeDeclaration));
}

TEST_CASE("m_step closed form and pruning") {
  EmConfig cfg;
  auto scores =
      make_scores({{ConstraintId::IfBranch}, {ConstraintId::IfBranch}, {ConstraintId::IfBranch}});
  ThetaParams theta = init_theta(scores, cfg);
  LatentAssignment a;
  a.responsibilities.resize(3);
  for (auto& r : a.responsibilities)
    for (ConstraintId k : all_constraints()) r[k] = (k == ConstraintId::IfBranch) ? 1.0 : 0.0;

  auto [updated, grammar] = m_step(a, theta, load_prior(), cfg);
  CHECK(updated.pi.at(ConstraintId::IfBranch) == doctest::Approx(1.0));
  CHECK(accepts_construct(grammar, ConstraintId::IfBranch));
  CHECK(!accepts_construct(grammar, ConstraintId::WhileLoop));  // zero support pruned
  CHECK(!accepts_construct(grammar, ConstraintId::ForLoop));
  CHECK(!accepts_construct(grammar, ConstraintId::BreakStatement));  // loop dependency
}

TEST_CASE("planted score-map mixture is recovered exactly") {
  // Twelve constraints at 0.8 support (protocol i exhibits them unless
  // i % 5 == 4), everything else at zero.
  const auto& plant = testing::planted_constraints();
  std::vector<std::set<ConstraintId>> exhibited;
  for (int i = 0; i < 100; ++i) {
    if (i % 5 == 4) exhibited.push_back({});
    else exhibited.push_back(plant);
  }
  // Constant filters never read the corpus; their score is always 1.
  auto scores = make_scores(exhibited);
  for (auto& m : scores) {
    m[ConstraintId::DeviceTypeDeclaration] = 1.0;
    m[ConstraintId::ScientificTypeDeclaration] = 1.0;
  }

  EmConfig cfg;
  auto [syntax, report] = run_em(scores, cfg);
  CHECK(syntax.active == plant);
  CHECK(report.K == 12);
  CHECK(report.K_prime == kConstraintCount);
  CHECK(report.converged);

  for (std::size_t i = 1; i < report.loglik_trace.size(); ++i) {
    CHECK(report.loglik_trace[i] >= report.loglik_trace[i - 1] - 1e-9);
  }
}

TEST_CASE("run_em is deterministic") {
  auto corpus = testing::generate_planted_corpus(40, 7);
  FilterConfig fcfg;
  std::vector<ScoreMap> scores;
  for (const Protocol& p : corpus)
    scores.push_back(score_all(annotate_protocol(p, lexicons()), fcfg, sim()));

  EmConfig cfg;
  auto [s1, r1] = run_em(scores, cfg);
  auto [s2, r2] = run_em(scores, cfg);
  CHECK(s1.active == s2.active);
  CHECK(s1.grammar == s2.grammar);
  REQUIRE(r1.loglik_trace.size() == r2.loglik_trace.size());
  for (std::size_t i = 0; i < r1.loglik_trace.size(); ++i)
    CHECK(r1.loglik_trace[i] == r2.loglik_trace[i]);
}

TEST_CASE("single-protocol corpus with only if evidence converges fast") {
  ProtocolFeatures f = {annotate_sentence("If the pellet is visible, discard the supernatant.",
                                          lexicons())};
  FilterConfig fcfg;
  std::vector<ScoreMap> scores = {score_all(f, fcfg, sim())};
  EmConfig cfg;
  auto [syntax, report] = run_em(scores, cfg);
  CHECK(report.iterations <= 3);
  CHECK(syntax.active.count(ConstraintId::IfBranch));
  CHECK(!syntax.active.count(ConstraintId::WhileLoop));
}

TEST_CASE("generated planted corpus is recovered through the full filter path") {
  auto corpus = testing::generate_planted_corpus(120, 99);
  FilterConfig fcfg;
  std::vector<ScoreMap> scores;
  for (const Protocol& p : corpus)
    scores.push_back(score_all(annotate_protocol(p, lexicons()), fcfg, sim()));

  EmConfig cfg;
  auto [syntax, report] = run_em(scores, cfg);
  auto pr = testing::score_recovery(syntax.active, testing::planted_constraints());
  CHECK(pr.precision >= 0.9);
  CHECK(pr.recall >= 0.9);

  // Every active constraint remains grammar-accepted and the grammar is sound.
  std::string reason;
  CHECK(syntax.grammar.is_well_formed(&reason));
  for (ConstraintId k : syntax.active) CHECK(accepts_construct(syntax.grammar, k));
}

TEST_CASE("empty corpus is an error") {
  EmConfig cfg;
  CHECK_THROWS_AS(run_em({}, cfg), Error);
}
