#pragma once

#include <map>
#include <string>
#include <vector>

#include "common.hpp"

namespace protodsl {

constexpr std::size_t kMaxStepTokens = 300;

enum class DomainKind { Genetics, Medical, Ecology, BioEng, InfoBio, Other };

struct Domain {
  DomainKind kind = DomainKind::Other;
  std::string other_name;  // set only when kind == Other

  bool operator==(const Domain& rhs) const = default;
};

std::string domain_name(const Domain& d);
Domain parse_domain(std::string_view name);

struct Step {
  int index = 0;
  std::string text;
  std::size_t token_count = 0;
  // Single sentence longer than the cap, kept whole rather than truncated.
  bool oversized = false;

  bool operator==(const Step& rhs) const = default;
};

struct Protocol {
  std::string id;
  Domain domain;
  std::string topic;
  std::string source;
  std::string raw_text;
  std::vector<Step> steps;

  bool operator==(const Protocol& rhs) const = default;
};

// Topic -> domain lookup; topics normalize case-insensitively and unlisted
// topics fall through to Other(topic).
class DomainMappingTable {
 public:
  static DomainMappingTable load(const std::string& path);
  static DomainMappingTable parse(std::string_view text);

  Domain map(std::string_view topic) const;
  std::size_t size() const { return topic_to_domain_.size(); }

 private:
  std::map<std::string, Domain> topic_to_domain_;  // keys lowercased
};

// Splits raw text on newline runs, greedily merges adjacent sub-paragraphs up
// to max_tokens, and re-splits oversized paragraphs on sentence terminators.
// Empty input yields an empty list.
std::vector<Step> slice_protocol(std::string_view raw_text, std::size_t max_tokens);

// One JSON object per line: {"id":..., "topic":..., "text":..., "source":...}.
std::vector<Protocol> load_corpus(const std::string& path, const DomainMappingTable& table,
                                  std::size_t max_tokens = kMaxStepTokens);
std::vector<Protocol> parse_corpus(std::string_view text, const DomainMappingTable& table,
                                   std::size_t max_tokens = kMaxStepTokens);
void save_corpus(const std::vector<Protocol>& corpus, const std::string& path);

struct DomainStats {
  std::size_t protocols = 0;
  std::size_t steps = 0;
  double mean_steps_per_protocol = 0.0;
};

std::map<std::string, DomainStats> corpus_stats(const std::vector<Protocol>& corpus);

}  // namespace protodsl
