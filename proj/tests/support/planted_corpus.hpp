#pragma once

// Synthetic corpus generator with a known planted constraint mixture. The
// generator's plant is the ground truth the EM recovery tests score against.
// Template sentences are built so that each one triggers exactly its target
// filters under the shipped lexicons (devices and scientific types are
// constant filters, so they are part of every plant).

#include <random>
#include <set>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "corpus.hpp"

namespace protodsl::testing {

inline const std::set<ConstraintId>& planted_constraints() {
  using C = ConstraintId;
  static const std::set<ConstraintId> plant = {
      C::DeviceTypeDeclaration, C::ScientificTypeDeclaration, C::IntegerTypeDeclaration,
      C::FloatingpointTypeDeclaration, C::BooleanTypeDeclaration, C::StringTypeDeclaration,
      C::TemporalTypeDeclaration, C::RegTypeDeclaration, C::ContainerTypeDeclaration,
      C::AllocateStatement, C::IfBranch, C::ForLoop,
  };
  return plant;
}

inline std::vector<Protocol> generate_planted_corpus(int n_protocols, uint64_t seed,
                                                     double support = 0.8) {
  static const std::vector<std::string> chems = {
      "ethanol",  "glucose", "sucrose",  "glycerol", "heparin", "insulin",
      "methanol", "acetone", "chloroform", "urea",   "glycine", "biotin"};
  static const std::vector<std::string> containers = {
      "tube", "flask", "vial", "beaker", "dish", "bottle", "cylinder", "tray"};

  std::mt19937_64 rng(seed);
  auto flip = [&](double p) { return next_unit(rng) < p; };

  std::vector<Protocol> corpus;
  for (int i = 0; i < n_protocols; ++i) {
    std::vector<std::string> sentences;
    sentences.push_back("Proceed to the next stage.");
    if (flip(support))
      sentences.push_back("Collect " + std::to_string(2 + int(rng() % 8)) + " samples.");
    if (flip(support))
      sentences.push_back("Adjust the level to " + std::to_string(1 + int(rng() % 9)) + "." +
                          std::to_string(1 + int(rng() % 9)) + " units.");
    if (flip(support)) sentences.push_back("Mark the outcome as true in the logbook.");
    if (flip(support))
      sentences.push_back("Record the label \"S" + std::to_string(1 + int(rng() % 99)) +
                          "\" in the notebook.");
    if (flip(support))
      sentences.push_back("Incubate the mixture for " + std::to_string(5 + int(rng() % 55)) +
                          " minutes.");
    if (flip(support))
      sentences.push_back("Dilute " + chems[rng() % chems.size()] + " before use.");
    if (flip(support))
      sentences.push_back("Transfer the supernatant into a sterile " +
                          containers[rng() % containers.size()] + ".");
    if (flip(support)) sentences.push_back("If the pellet is visible, discard the supernatant.");
    if (flip(support))
      sentences.push_back("Repeat the wash " + std::to_string(2 + int(rng() % 8)) + " times.");

    Protocol p;
    p.id = "planted-" + std::to_string(i);
    p.domain = {DomainKind::Genetics, ""};
    p.topic = "Genetics";
    std::string raw;
    for (const std::string& s : sentences) {
      if (!raw.empty()) raw += '\n';
      raw += s;
    }
    p.raw_text = raw;
    p.steps = slice_protocol(raw, kMaxStepTokens);
    corpus.push_back(std::move(p));
  }
  return corpus;
}

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

inline PrecisionRecall score_recovery(const std::set<ConstraintId>& recovered,
                                      const std::set<ConstraintId>& truth) {
  int tp = 0;
  for (ConstraintId k : recovered)
    if (truth.count(k)) ++tp;
  PrecisionRecall pr;
  pr.precision = recovered.empty() ? 0.0 : double(tp) / double(recovered.size());
  pr.recall = truth.empty() ? 0.0 : double(tp) / double(truth.size());
  return pr;
}

}  // namespace protodsl::testing
