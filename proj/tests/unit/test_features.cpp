#include <doctest.h>

#include <random>

#include "features.hpp"
#include "tagger.hpp"

using namespace protodsl;

namespace {

const Lexicons& lexicons() {
  static Lexicons lex = Lexicons::load(PROTODSL_DATA_DIR);
  return lex;
}

const SimilarityProvider& sim() {
  static SimilarityProvider p =
      SimilarityProvider::bundled(std::string(PROTODSL_DATA_DIR) + "/synonyms.txt");
  return p;
}

std::vector<std::string> pattern_of(const SentenceFeatures& f) {
  std::vector<std::string> out;
  for (const ArgumentSpan& a : f.arguments) out.push_back(a.category);
  return out;
}

}  // namespace

TEST_CASE("time annotation and opcode extraction") {
  auto f = annotate_sentence("Incubate at 37°C for 30 min.", lexicons());
  REQUIRE(f.opcode.has_value());
  CHECK(*f.opcode == "incubate");
  REQUIRE(f.has(Tag::Time));
  bool found_30min = false;
  for (const TagInstance& t : f.tags)
    if (t.tag == Tag::Time && t.text == "30 min") found_30min = true;
  CHECK(found_30min);

  bool temp_quantity = false;
  for (const QuantitySpan& q : f.quantities)
    if (q.category == "Temperature" && q.text == "37°C") temp_quantity = true;
  CHECK(temp_quantity);
}

TEST_CASE("temperature spans are not times") {
  auto f = annotate_sentence("Store at 4°C overnight.", lexicons());
  CHECK(!f.has(Tag::Time));
  CHECK(f.has(Tag::Int));
}

TEST_CASE("conditional keywords") {
  auto f = annotate_sentence("If cells are confluent, split them.", lexicons());
  CHECK(f.has(Tag::If));
  CHECK(!f.has(Tag::Else));
  CHECK(f.has(Tag::Pron));
  CHECK(!f.opcode.has_value());
}

TEST_CASE("enumerated number runs") {
  auto f = annotate_sentence(
      "Iterate different MgCl2 concentrations (1.5mM, 2.0mM, 2.5mM, and 3.0mM) to find the "
      "optimal concentration for DNA amplification.",
      lexicons());
  REQUIRE(f.opcode.has_value());
  CHECK(*f.opcode == "iterate");
  CHECK(f.max_num_run() == 4);
  CHECK(f.has(Tag::Float));
  CHECK(f.has(Tag::Chem));  // MgCl2, DNA
}

TEST_CASE("no run across unrelated numbers") {
  auto f = annotate_sentence("Centrifuge at 300 x g for 5 min at 4 °C.", lexicons());
  CHECK(f.max_num_run() == 0);
  bool force = false;
  for (const QuantitySpan& q : f.quantities)
    if (q.category == "Force") force = true;
  CHECK(force);
}

TEST_CASE("quoted strings and urls") {
  auto f = annotate_sentence(
      "Close the soundproof chamber as instruction manual (see \"https://---\").", lexicons());
  CHECK(f.has(Tag::Str));
  auto f2 = annotate_sentence("See https://example.org for details.", lexicons());
  CHECK(f2.has(Tag::Str));
}

TEST_CASE("argument extraction for transect sentences") {
  auto f = annotate_sentence(
      "Transect the aorta proximally to the origin of the brachiocephalic trunk.", lexicons());
  REQUIRE(f.opcode.has_value());
  CHECK(*f.opcode == "transect");
  CHECK(pattern_of(f) == std::vector<std::string>{"REG", "REG"});

  auto f2 = annotate_sentence("Transect the cranial nerves with the scissors.", lexicons());
  CHECK(pattern_of(f2) == std::vector<std::string>{"REG", "Device"});
}

TEST_CASE("argument extraction for a spin sentence") {
  auto f = annotate_sentence("Use a centrifuge tube to spin at 3000g for 10 min at 4°C.",
                             lexicons());
  REQUIRE(f.opcode.has_value());
  CHECK(*f.opcode == "use");
  CHECK(pattern_of(f) ==
        std::vector<std::string>{"Container", "Force", "Time", "Temperature"});
}

TEST_CASE("sentence with no arguments") {
  auto f = annotate_sentence("Proceed.", lexicons());
  REQUIRE(f.opcode.has_value());
  CHECK(*f.opcode == "proceed");
  CHECK(f.arguments.empty());
}

TEST_CASE("chem tags come from the lexicon") {
  auto f = annotate_sentence("Add ammonium acetate buffer and RNaseT2, then incubate.",
                             lexicons());
  REQUIRE(f.chem_lemmas.size() >= 2);
  for (const std::string& lemma : f.chem_lemmas) {
    CHECK(lexicons().chem.count(lemma) == 1);
  }
  bool long_match = false;
  for (const std::string& lemma : f.chem_lemmas)
    if (lemma == "ammonium acetate buffer") long_match = true;
  CHECK(long_match);
  // Pattern: the trailing "incubate" is a verb, not an argument.
  CHECK(pattern_of(f) == std::vector<std::string>{"REG", "REG"});
}

TEST_CASE("annotation is deterministic") {
  const std::string s = "Wash the cells with 10 mL of PBS and centrifuge at 300 x g.";
  auto a = annotate_sentence(s, lexicons());
  auto b = annotate_sentence(s, lexicons());
  CHECK(a.tags.size() == b.tags.size());
  CHECK(a.noun_lemmas == b.noun_lemmas);
  CHECK(a.arguments.size() == b.arguments.size());
  for (std::size_t i = 0; i < a.tags.size(); ++i) {
    CHECK(a.tags[i].tag == b.tags[i].tag);
    CHECK(a.tags[i].begin == b.tags[i].begin);
    CHECK(a.tags[i].text == b.tags[i].text);
  }
}

TEST_CASE("similarity goldens") {
  CHECK(sim().word("repeat", "repeat") == doctest::Approx(1.0));
  CHECK(sim().word("repeat", "iterate") == doctest::Approx(0.9));
  CHECK(sim().word("repeat", "iterate") >= 0.5);
  CHECK(sim().word("repeat", "centrifuge") < 0.5);
  CHECK(sim().word("centrifuge", "spin") == doctest::Approx(0.9));
}

TEST_CASE("similarity properties over random strings") {
  std::mt19937_64 rng(12345);
  auto random_word = [&]() {
    std::string w;
    int len = 1 + int(rng() % 10);
    for (int i = 0; i < len; ++i) w += char('a' + rng() % 26);
    return w;
  };
  for (int trial = 0; trial < 500; ++trial) {
    std::string a = random_word();
    std::string b = random_word();
    double sab = sim().word(a, b);
    double sba = sim().word(b, a);
    CHECK(sab == doctest::Approx(sba));
    CHECK(sab >= 0.0);
    CHECK(sab <= 1.0);
    CHECK(sim().word(a, a) == doctest::Approx(1.0));
  }
}

TEST_CASE("sentence similarity basics") {
  CHECK(sim().sentence("Wash the cells", "Wash the cells") == doctest::Approx(1.0));
  double near = sim().sentence("Wash the cells with PBS", "Wash the pellet with PBS");
  double far = sim().sentence("Wash the cells with PBS", "Close the soundproof chamber");
  CHECK(near > far);
}

TEST_CASE("step annotation splits sentences") {
  Step step;
  step.text = "Add 5 ml of PBS. Incubate at 37°C for 30 min. Mix well.";
  auto sf = annotate(step, lexicons());
  REQUIRE(sf.sentences.size() == 3);
  CHECK(*sf.sentences[0].opcode == "add");
  CHECK(*sf.sentences[1].opcode == "incubate");
  CHECK(*sf.sentences[2].opcode == "mix");
}
