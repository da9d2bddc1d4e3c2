#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "corpus.hpp"

namespace protodsl {

enum class Tag {
  Int, Float, True, False, Str, Time, Chem, Container, If, Else, When,
  Num, Pron, Noun, Persons, Add, Minus, Multiply, Devide, And, Or, Not, Equal,
};

std::string tag_name(Tag t);

struct TagInstance {
  Tag tag;
  std::size_t begin = 0;  // character span within the sentence
  std::size_t end = 0;
  std::string text;
};

// Numeric span with a resolved quantity category (Volume, Temperature, ...).
struct QuantitySpan {
  std::string text;
  std::string category;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Candidate operation argument, ordered by position.
struct ArgumentSpan {
  std::string text;
  std::string category;  // REG, Container, Device, String, or a quantity category
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct SentenceFeatures {
  std::string text;
  std::optional<std::string> opcode;  // lemma of the leading verb
  std::vector<TagInstance> tags;
  std::vector<std::string> noun_lemmas;
  std::vector<std::string> chem_lemmas;       // lexicon entries matched
  std::vector<std::string> container_lemmas;  // lexicon entries matched
  std::vector<QuantitySpan> quantities;
  std::vector<ArgumentSpan> arguments;  // for semantic record extraction
  std::vector<int> num_run_lengths;     // enumerated-number runs (length >= 2)

  bool has(Tag t) const;
  int max_num_run() const;
};

struct StepFeatures {
  std::vector<SentenceFeatures> sentences;
};

// All sentences of a protocol, steps flattened in order.
using ProtocolFeatures = std::vector<SentenceFeatures>;

struct Lexicons {
  std::set<std::string> chem;       // lowercase lemma phrases
  std::set<std::string> container;
  std::set<std::string> device;
  std::vector<std::string> scientific_quantity_words;

  // Reads lexicons/{chem,container,device,quantity_words}.txt under data_dir;
  // one entry per line, '#' comments.
  static Lexicons load(const std::string& data_dir);
};

std::vector<std::string> split_sentences(std::string_view text);

SentenceFeatures annotate_sentence(const std::string& sentence, const Lexicons& lexicons);
StepFeatures annotate(const Step& step, const Lexicons& lexicons);
ProtocolFeatures annotate_protocol(const Protocol& protocol, const Lexicons& lexicons);

// Word/sentence similarity in [0,1]: exact lemma match 1.0, bundled synonym
// pair 0.9, padded character-trigram Dice otherwise. Sentence similarity is
// the symmetric mean of best-pairing word scores.
class SimilarityProvider {
 public:
  SimilarityProvider() = default;
  static SimilarityProvider bundled(const std::string& synonyms_path);
  static SimilarityProvider from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

  double word(std::string_view a, std::string_view b) const;
  double sentence(std::string_view a, std::string_view b) const;
  const std::string& name() const { return name_; }

 private:
  std::string name_ = "bundled";
  std::set<std::pair<std::string, std::string>> synonym_pairs_;  // lemma pairs, both orders
};

}  // namespace protodsl
