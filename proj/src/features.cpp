#include "features.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "tagger.hpp"

namespace protodsl {

std::string tag_name(Tag t) {
  switch (t) {
    case Tag::Int: return "INT";
    case Tag::Float: return "FLOAT";
    case Tag::True: return "TRUE";
    case Tag::False: return "FALSE";
    case Tag::Str: return "STRING";
    case Tag::Time: return "TIME";
    case Tag::Chem: return "CHEM";
    case Tag::Container: return "CONTAINER";
    case Tag::If: return "IF";
    case Tag::Else: return "ELSE";
    case Tag::When: return "WHEN";
    case Tag::Num: return "NUM";
    case Tag::Pron: return "PRON";
    case Tag::Noun: return "NOUN";
    case Tag::Persons: return "PERSONS";
    case Tag::Add: return "ADD";
    case Tag::Minus: return "MINUS";
    case Tag::Multiply: return "MULTIPLY";
    case Tag::Devide: return "DEVIDE";
    case Tag::And: return "AND";
    case Tag::Or: return "OR";
    case Tag::Not: return "NOT";
    case Tag::Equal: return "EQUAL";
  }
  return "?";
}

bool SentenceFeatures::has(Tag t) const {
  for (const TagInstance& inst : tags)
    if (inst.tag == t) return true;
  return false;
}

int SentenceFeatures::max_num_run() const {
  int best = 0;
  for (int n : num_run_lengths) best = std::max(best, n);
  return best;
}

namespace {

std::set<std::string> load_lexicon_file(const std::string& path) {
  std::set<std::string> entries;
  if (!file_exists(path)) fail(ErrorKind::Io, "missing lexicon file: " + path);
  for (const std::string& raw : read_lines(path)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    entries.insert(to_lower(line));
  }
  if (entries.empty()) fail(ErrorKind::Parse, "empty lexicon file: " + path);
  return entries;
}

}  // namespace

Lexicons Lexicons::load(const std::string& data_dir) {
  Lexicons lex;
  lex.chem = load_lexicon_file(data_dir + "/lexicons/chem.txt");
  lex.container = load_lexicon_file(data_dir + "/lexicons/container.txt");
  lex.device = load_lexicon_file(data_dir + "/lexicons/device.txt");
  for (const std::string& raw : read_lines(data_dir + "/lexicons/quantity_words.txt")) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    lex.scientific_quantity_words.push_back(line);
  }
  if (lex.scientific_quantity_words.empty())
    fail(ErrorKind::Parse, "empty quantity word list");
  return lex;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '.' || c == '?' || c == '!') {
      std::size_t j = i;
      while (j + 1 < text.size() &&
             (text[j + 1] == '.' || text[j + 1] == '?' || text[j + 1] == '!'))
        ++j;
      bool at_end = (j + 1 >= text.size());
      bool boundary = at_end;
      if (!boundary && std::isspace(static_cast<unsigned char>(text[j + 1]))) {
        // Look past the whitespace: an uppercase letter, digit or quote starts
        // a new sentence; anything else ("(i.p.) of") continues the current.
        std::size_t k = j + 1;
        while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
        if (k >= text.size()) {
          boundary = true;
        } else {
          char nc = text[k];
          boundary = std::isupper(static_cast<unsigned char>(nc)) ||
                     std::isdigit(static_cast<unsigned char>(nc)) || nc == '"' || nc == '\'';
        }
      }
      if (boundary) {
        std::string sent = trim(text.substr(start, j + 1 - start));
        if (!sent.empty()) sentences.push_back(std::move(sent));
        start = j + 1;
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  std::string rest = trim(text.substr(start));
  if (!rest.empty()) sentences.push_back(std::move(rest));
  return sentences;
}

// ---- numeric scanning --------------------------------------------------------

namespace {

struct NumberGroup {
  std::size_t begin = 0;
  std::size_t end = 0;        // span covering number plus its unit
  bool is_float = false;
  double magnitude = 0.0;
  std::string unit;           // case preserved ("mM" vs "mm")
  bool preceded_by_x = false; // "100,000 x g"
};

bool is_unit_char(unsigned char c) {
  if (std::isalpha(c)) return true;
  if (c == '%' || c == '/') return true;
  return c >= 0x80;  // UTF-8 continuation / µ / ° bytes
}

const std::unordered_set<std::string>& time_units() {
  static const std::unordered_set<std::string> s = {
      "s", "sec", "secs", "second", "seconds", "min", "mins", "minute",
      "minutes", "h", "hr", "hrs", "hour", "hours", "day", "days",
      "week", "weeks", "month", "months"};
  return s;
}

// Case-sensitive molar-family lookup comes first; everything else matches on
// the lowercased unit.
std::string classify_unit(const std::string& unit, double magnitude, bool preceded_by_x) {
  static const std::unordered_map<std::string, std::string> exact = {
      {"M", "Concentration"}, {"mM", "Concentration"}, {"µM", "Concentration"},
      {"uM", "Concentration"}, {"nM", "Concentration"}, {"pM", "Concentration"},
      {"nm", "Length"}, {"mm", "Length"}, {"cm", "Length"}, {"µm", "Length"},
      {"um", "Length"},
  };
  auto it = exact.find(unit);
  if (it != exact.end()) return it->second;

  const std::string u = to_lower(unit);
  static const std::unordered_map<std::string, std::string> lower = {
      {"ml", "Volume"}, {"µl", "Volume"}, {"ul", "Volume"}, {"l", "Volume"},
      {"nl", "Volume"}, {"cc", "Volume"}, {"liter", "Volume"}, {"liters", "Volume"},
      {"milliliter", "Volume"}, {"milliliters", "Volume"}, {"microliter", "Volume"},
      {"microliters", "Volume"},
      {"°c", "Temperature"}, {"°f", "Temperature"}, {"c", "Temperature"},
      {"f", "Temperature"}, {"k", "Temperature"}, {"celsius", "Temperature"},
      {"mg", "Mass"}, {"µg", "Mass"}, {"ug", "Mass"}, {"kg", "Mass"},
      {"ng", "Mass"}, {"mcg", "Mass"}, {"gram", "Mass"}, {"grams", "Mass"},
      {"in", "Length"}, {"inch", "Length"}, {"inches", "Length"},
      {"kb", "Length"}, {"bp", "Length"},
      {"%", "Concentration"}, {"percent", "Concentration"},
      {"mg/ml", "Concentration"}, {"µg/ml", "Concentration"}, {"ug/ml", "Concentration"},
      {"ng/ml", "Concentration"}, {"v/v", "Concentration"}, {"w/v", "Concentration"},
      {"hz", "Frequency"}, {"khz", "Frequency"}, {"mhz", "Frequency"},
      {"rpm", "Speed"},
      {"v", "Voltage"}, {"mv", "Voltage"}, {"kv", "Voltage"},
      {"psi", "Pressure"}, {"pa", "Pressure"}, {"kpa", "Pressure"},
      {"bar", "Pressure"}, {"mbar", "Pressure"}, {"atm", "Pressure"},
      {"ml/min", "Flow Rate"}, {"µl/min", "Flow Rate"}, {"ul/min", "Flow Rate"},
      {"ml/h", "Flow Rate"}, {"ml/hour", "Flow Rate"}, {"l/min", "Flow Rate"},
      {"j", "Energy"}, {"kj", "Energy"},
      {"rcf", "Force"}, {"xg", "Force"},
      {"cells/ml", "Density"}, {"cells/µl", "Density"}, {"cfu/ml", "Density"},
  };
  if (time_units().count(u)) return "Time";
  auto lit = lower.find(u);
  if (lit != lower.end()) return lit->second;
  if (u == "g") {
    // Centrifugal force reads ("3000g", "100,000 x g") vs mass ("5 g").
    if (preceded_by_x || magnitude >= 100.0) return "Force";
    return "Mass";
  }
  return "";
}

bool is_unit_word(const std::string& unit) {
  return !classify_unit(unit, 0.0, false).empty();
}

std::vector<NumberGroup> scan_numbers(std::string_view text) {
  std::vector<NumberGroup> groups;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    NumberGroup g;
    g.begin = i;
    // Word-internal digits ("RNaseT2", "GtACR1") are not numbers.
    if (i > 0 && std::isalpha(static_cast<unsigned char>(text[i - 1]))) {
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])))) ++i;
      continue;
    }
    std::string digits;
    bool is_float = false;
    while (i < n) {
      char c = text[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        ++i;
      } else if (c == ',' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        ++i;  // thousands separator
      } else if (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        digits += c;
        is_float = true;
        ++i;
      } else if (c == '/' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        // Fraction: 1/3. Slash-units ("ml/min") start with a letter, not digit.
        digits += c;
        is_float = true;
        ++i;
      } else if (c == '-' && i + 1 < n && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        digits += c;  // range 5-10; magnitude taken from the first bound
        ++i;
      } else {
        break;
      }
    }
    g.is_float = is_float;
    g.magnitude = std::strtod(digits.c_str(), nullptr);
    g.end = i;

    // Attached unit suffix: 3000g, 1.5mM, 4°C.
    std::size_t unit_start = i;
    while (i < n && is_unit_char(static_cast<unsigned char>(text[i]))) ++i;
    if (i > unit_start) {
      g.unit = std::string(text.substr(unit_start, i - unit_start));
      g.end = i;
    } else {
      // Separate unit token: "30 min", "7 mm", "100,000 x g".
      std::size_t j = i;
      while (j < n && text[j] == ' ') ++j;
      std::size_t w = j;
      while (w < n && is_unit_char(static_cast<unsigned char>(text[w]))) ++w;
      if (w > j) {
        std::string word(text.substr(j, w - j));
        std::string word_clean = word;
        while (!word_clean.empty() && (word_clean.back() == '.' || word_clean.back() == ','))
          word_clean.pop_back();
        if (word_clean == "x" || word_clean == "X") {
          std::size_t k = w;
          while (k < n && text[k] == ' ') ++k;
          std::size_t v = k;
          while (v < n && is_unit_char(static_cast<unsigned char>(text[v]))) ++v;
          if (v > k) {
            g.preceded_by_x = true;
            g.unit = std::string(text.substr(k, v - k));
            g.end = v;
          }
        } else if (is_unit_word(word_clean)) {
          g.unit = word_clean;
          g.end = j + word_clean.size();
        }
      }
    }
    groups.push_back(g);
  }
  return groups;
}

// "pH 7.4" or "pH7.4" — acidity values keyed by the leading marker.
std::vector<QuantitySpan> scan_ph(std::string_view text) {
  std::vector<QuantitySpan> spans;
  for (std::size_t i = 0; i + 2 < text.size(); ++i) {
    if ((text[i] == 'p') && (text[i + 1] == 'H') &&
        (i == 0 || !std::isalnum(static_cast<unsigned char>(text[i - 1])))) {
      std::size_t j = i + 2;
      while (j < text.size() && text[j] == ' ') ++j;
      std::size_t num_start = j;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.'))
        ++j;
      if (j > num_start) {
        QuantitySpan q;
        q.begin = i;
        q.end = j;
        q.text = std::string(text.substr(i, j - i));
        q.category = "Acidity";
        spans.push_back(q);
      }
    }
  }
  return spans;
}

struct StringSpan {
  std::size_t begin, end;
  std::string text;
};

std::vector<StringSpan> scan_strings(std::string_view text) {
  std::vector<StringSpan> spans;
  // Quoted spans.
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '"') {
      std::size_t close = text.find('"', i + 1);
      if (close == std::string_view::npos) break;
      spans.push_back({i, close + 1, std::string(text.substr(i, close + 1 - i))});
      i = close + 1;
    } else {
      ++i;
    }
  }
  // URLs.
  for (const char* scheme : {"https://", "http://", "www."}) {
    std::size_t pos = 0;
    while ((pos = text.find(scheme, pos)) != std::string_view::npos) {
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
             text[end] != '"' && text[end] != ')')
        ++end;
      bool covered = false;
      for (const StringSpan& s : spans)
        if (pos >= s.begin && pos < s.end) covered = true;
      if (!covered) spans.push_back({pos, end, std::string(text.substr(pos, end - pos))});
      pos = end;
    }
  }
  std::sort(spans.begin(), spans.end(),
            [](const StringSpan& a, const StringSpan& b) { return a.begin < b.begin; });
  return spans;
}

// Enumeration runs: numeric groups chained by "," / "and" / "or" gaps.
std::vector<int> scan_num_runs(std::string_view text, const std::vector<NumberGroup>& groups) {
  std::vector<int> runs;
  int run = groups.empty() ? 0 : 1;
  for (std::size_t k = 1; k < groups.size(); ++k) {
    std::string_view gap = text.substr(groups[k - 1].end, groups[k].begin - groups[k - 1].end);
    std::string g = to_lower(trim(gap));
    while (!g.empty() && (g.front() == ',' || g.front() == ';')) g = trim(g.substr(1));
    bool chained = g.empty() || g == "and" || g == "or" || g == "&";
    if (chained) {
      ++run;
    } else {
      if (run >= 2) runs.push_back(run);
      run = 1;
    }
  }
  if (run >= 2) runs.push_back(run);
  return runs;
}

// Longest-first phrase matching of lexicon entries against token lemmas.
struct PhraseMatch {
  std::size_t tok_begin, tok_end;  // token index range [begin, end)
  std::string entry;
};

std::vector<PhraseMatch> match_lexicon(const std::vector<Token>& tokens,
                                       const std::set<std::string>& lexicon) {
  // Index lexicon by first word for the scan.
  std::unordered_map<std::string, std::vector<std::vector<std::string>>> by_first;
  for (const std::string& entry : lexicon) {
    std::vector<std::string> words = split_ws(entry);
    if (words.empty()) continue;
    by_first[words[0]].push_back(words);
  }
  std::vector<PhraseMatch> matches;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto try_key = [&](const std::string& key) -> const std::vector<std::vector<std::string>>* {
      auto it = by_first.find(key);
      return it == by_first.end() ? nullptr : &it->second;
    };
    std::string lower_text = to_lower(tokens[i].text);
    const auto* cands = try_key(tokens[i].lemma);
    const auto* cands2 = (lower_text != tokens[i].lemma) ? try_key(lower_text) : nullptr;
    std::size_t best_len = 0;
    std::string best_entry;
    auto consider = [&](const std::vector<std::vector<std::string>>& list) {
      for (const auto& words : list) {
        if (i + words.size() > tokens.size()) continue;
        bool ok = true;
        for (std::size_t k = 0; k < words.size(); ++k) {
          const Token& t = tokens[i + k];
          if (t.lemma != words[k] && to_lower(t.text) != words[k]) { ok = false; break; }
        }
        if (ok && words.size() > best_len) {
          best_len = words.size();
          best_entry = join(words, " ");
        }
      }
    };
    if (cands) consider(*cands);
    if (cands2) consider(*cands2);
    if (best_len > 0) {
      matches.push_back({i, i + best_len, best_entry});
      i += best_len - 1;
    }
  }
  return matches;
}

bool overlaps(std::size_t b1, std::size_t e1, std::size_t b2, std::size_t e2) {
  return b1 < e2 && b2 < e1;
}

}  // namespace

SentenceFeatures annotate_sentence(const std::string& sentence, const Lexicons& lexicons) {
  SentenceFeatures f;
  f.text = sentence;
  std::vector<Token> tokens = tokenize(sentence);

  // Opcode: first token that is not a number, symbol or adverb must be a verb.
  for (const Token& t : tokens) {
    if (t.pos == Pos::Number || t.pos == Pos::Symbol || t.pos == Pos::Adverb) continue;
    if (t.pos == Pos::Verb) f.opcode = t.lemma;
    break;
  }

  auto add_tag = [&](Tag tag, std::size_t b, std::size_t e, std::string text) {
    f.tags.push_back({tag, b, e, std::move(text)});
  };

  // Numbers, floats, times and quantity categories.
  std::vector<NumberGroup> numbers = scan_numbers(sentence);
  for (const NumberGroup& g : numbers) {
    std::string span_text(sentence.substr(g.begin, g.end - g.begin));
    add_tag(g.is_float ? Tag::Float : Tag::Int, g.begin, g.end, span_text);
    std::string category = classify_unit(g.unit, g.magnitude, g.preceded_by_x);
    if (category == "Time") add_tag(Tag::Time, g.begin, g.end, span_text);
    if (!category.empty()) {
      f.quantities.push_back({span_text, category, g.begin, g.end});
    }
  }
  for (QuantitySpan& q : scan_ph(sentence)) {
    add_tag(Tag::Float, q.begin, q.end, q.text);
    f.quantities.push_back(q);
  }
  f.num_run_lengths = scan_num_runs(sentence, numbers);

  // Quoted strings and URLs.
  for (const StringSpan& s : scan_strings(sentence)) {
    add_tag(Tag::Str, s.begin, s.end, s.text);
  }

  // Keyword, pronoun and noun tags.
  for (const Token& t : tokens) {
    const std::string lower = to_lower(t.text);
    if (lower == "if") add_tag(Tag::If, t.begin, t.end, t.text);
    if (lower == "else" || lower == "otherwise") add_tag(Tag::Else, t.begin, t.end, t.text);
    if (lower == "when" || lower == "whenever") add_tag(Tag::When, t.begin, t.end, t.text);
    if (lower == "true") add_tag(Tag::True, t.begin, t.end, t.text);
    if (lower == "false") add_tag(Tag::False, t.begin, t.end, t.text);
    if (t.lemma == "add" || lower == "plus" || lower == "+") add_tag(Tag::Add, t.begin, t.end, t.text);
    if (t.lemma == "subtract" || lower == "minus") add_tag(Tag::Minus, t.begin, t.end, t.text);
    if (t.lemma == "multiply" || lower == "*" || lower == "×") add_tag(Tag::Multiply, t.begin, t.end, t.text);
    if (t.lemma == "divide") add_tag(Tag::Devide, t.begin, t.end, t.text);
    if (lower == "and" || lower == "&&" || lower == "&") add_tag(Tag::And, t.begin, t.end, t.text);
    if (lower == "or" || lower == "||") add_tag(Tag::Or, t.begin, t.end, t.text);
    if (lower == "not" || lower == "never") add_tag(Tag::Not, t.begin, t.end, t.text);
    if (lower == "=" || t.lemma == "equal") add_tag(Tag::Equal, t.begin, t.end, t.text);
    if (t.pos == Pos::Pronoun) add_tag(Tag::Pron, t.begin, t.end, t.text);
    if (t.pos == Pos::Person) add_tag(Tag::Persons, t.begin, t.end, t.text);
    if (t.pos == Pos::Noun || t.pos == Pos::Person) {
      add_tag(Tag::Noun, t.begin, t.end, t.text);
      f.noun_lemmas.push_back(t.lemma);
    }
  }

  // Lexicon phrase matches.
  std::vector<PhraseMatch> chem_matches = match_lexicon(tokens, lexicons.chem);
  std::vector<PhraseMatch> container_matches = match_lexicon(tokens, lexicons.container);
  std::vector<PhraseMatch> device_matches = match_lexicon(tokens, lexicons.device);
  for (const PhraseMatch& m : chem_matches) {
    add_tag(Tag::Chem, tokens[m.tok_begin].begin, tokens[m.tok_end - 1].end, m.entry);
    f.chem_lemmas.push_back(m.entry);
  }
  for (const PhraseMatch& m : container_matches) {
    add_tag(Tag::Container, tokens[m.tok_begin].begin, tokens[m.tok_end - 1].end, m.entry);
    f.container_lemmas.push_back(m.entry);
  }

  // Argument spans: quantities, strings, then noun phrases classified by
  // lexicon membership, all ordered by position.
  std::vector<ArgumentSpan> args;
  for (const QuantitySpan& q : f.quantities) {
    if (q.category == "Time") {
      args.push_back({q.text, "Time", q.begin, q.end});
    } else {
      args.push_back({q.text, q.category, q.begin, q.end});
    }
  }
  for (const StringSpan& s : scan_strings(sentence)) {
    args.push_back({s.text, "String", s.begin, s.end});
  }

  // Classification keys off the match covering the phrase head so that
  // "centrifuge tube" reads as Container even though "centrifuge" alone is a
  // device.
  auto classify_phrase = [&](std::size_t head) -> std::string {
    for (const PhraseMatch& m : container_matches)
      if (head >= m.tok_begin && head < m.tok_end) return "Container";
    for (const PhraseMatch& m : device_matches)
      if (head >= m.tok_begin && head < m.tok_end) return "Device";
    return "REG";
  };

  // Noun-phrase chunking: adjectives/nouns run ending in a noun.
  std::size_t i = 0;
  bool skipped_leading_verb = false;
  while (i < tokens.size()) {
    const Token& t = tokens[i];
    if (!skipped_leading_verb && f.opcode && t.pos == Pos::Verb) {
      skipped_leading_verb = true;
      ++i;
      continue;
    }
    bool chunkable = (t.pos == Pos::Adjective || t.pos == Pos::Noun || t.pos == Pos::Person);
    if (!chunkable) {
      ++i;
      continue;
    }
    std::size_t start = i;
    std::size_t last_noun = std::string::npos;
    while (i < tokens.size() && (tokens[i].pos == Pos::Adjective || tokens[i].pos == Pos::Noun ||
                                 tokens[i].pos == Pos::Person)) {
      if (tokens[i].pos == Pos::Noun || tokens[i].pos == Pos::Person) last_noun = i;
      ++i;
    }
    if (last_noun == std::string::npos) continue;
    std::size_t tb = start;
    std::size_t te = last_noun + 1;
    // Quantity/string overlap suppresses the phrase ("10 kb" already counted).
    std::size_t cb = tokens[tb].begin;
    std::size_t ce = tokens[te - 1].end;
    bool covered = false;
    for (const ArgumentSpan& a : args)
      if (overlaps(cb, ce, a.begin, a.end)) covered = true;
    if (covered) continue;
    if (te - tb == 1 && is_abstract_noun(tokens[tb].lemma)) continue;
    std::string category = classify_phrase(last_noun);
    std::vector<std::string> words;
    for (std::size_t k = tb; k < te; ++k) words.push_back(tokens[k].text);
    args.push_back({join(words, " "), category, cb, ce});
  }

  std::sort(args.begin(), args.end(),
            [](const ArgumentSpan& a, const ArgumentSpan& b) { return a.begin < b.begin; });
  f.arguments = std::move(args);
  return f;
}

StepFeatures annotate(const Step& step, const Lexicons& lexicons) {
  StepFeatures sf;
  for (const std::string& sentence : split_sentences(step.text)) {
    sf.sentences.push_back(annotate_sentence(sentence, lexicons));
  }
  return sf;
}

ProtocolFeatures annotate_protocol(const Protocol& protocol, const Lexicons& lexicons) {
  ProtocolFeatures pf;
  for (const Step& step : protocol.steps) {
    StepFeatures sf = annotate(step, lexicons);
    for (SentenceFeatures& s : sf.sentences) pf.push_back(std::move(s));
  }
  return pf;
}

// ---- similarity ---------------------------------------------------------------

SimilarityProvider SimilarityProvider::bundled(const std::string& synonyms_path) {
  SimilarityProvider p;
  for (const std::string& raw : read_lines(synonyms_path)) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = split_ws(line);
    if (cols.size() != 2) fail(ErrorKind::Parse, "synonym table: expected two columns: " + line);
    std::string a = lemmatize(cols[0]);
    std::string b = lemmatize(cols[1]);
    p.synonym_pairs_.insert({a, b});
    p.synonym_pairs_.insert({b, a});
  }
  return p;
}

SimilarityProvider SimilarityProvider::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  SimilarityProvider p;
  p.name_ = "inline";
  for (const auto& [x, y] : pairs) {
    std::string a = lemmatize(x);
    std::string b = lemmatize(y);
    p.synonym_pairs_.insert({a, b});
    p.synonym_pairs_.insert({b, a});
  }
  return p;
}

namespace {

// Padded character trigrams; Dice coefficient over the multiset intersection.
double trigram_dice(const std::string& a, const std::string& b) {
  auto grams = [](const std::string& w) {
    std::map<std::string, int> g;
    std::string padded = "#" + w + "#";
    if (padded.size() < 3) return g;
    for (std::size_t i = 0; i + 3 <= padded.size(); ++i) g[padded.substr(i, 3)] += 1;
    return g;
  };
  std::map<std::string, int> ga = grams(a);
  std::map<std::string, int> gb = grams(b);
  int total_a = 0, total_b = 0, common = 0;
  for (const auto& [k, v] : ga) total_a += v;
  for (const auto& [k, v] : gb) total_b += v;
  for (const auto& [k, v] : ga) {
    auto it = gb.find(k);
    if (it != gb.end()) common += std::min(v, it->second);
  }
  if (total_a + total_b == 0) return 0.0;
  return 2.0 * common / double(total_a + total_b);
}

}  // namespace

double SimilarityProvider::word(std::string_view a, std::string_view b) const {
  std::string la = lemmatize(trim(a));
  std::string lb = lemmatize(trim(b));
  if (la.empty() || lb.empty()) return la == lb ? 1.0 : 0.0;
  if (la == lb) return 1.0;
  double best = 0.0;
  if (synonym_pairs_.count({la, lb})) best = 0.9;
  best = std::max(best, trigram_dice(la, lb));
  return std::min(1.0, best);
}

double SimilarityProvider::sentence(std::string_view a, std::string_view b) const {
  auto words = [](std::string_view s) {
    std::vector<std::string> out;
    for (const Token& t : tokenize(s)) {
      if (t.pos == Pos::Symbol || t.pos == Pos::Number) continue;
      out.push_back(t.lemma);
    }
    return out;
  };
  std::vector<std::string> wa = words(a);
  std::vector<std::string> wb = words(b);
  if (wa.empty() && wb.empty()) return 1.0;
  if (wa.empty() || wb.empty()) return 0.0;
  auto directional = [&](const std::vector<std::string>& xs, const std::vector<std::string>& ys) {
    double sum = 0.0;
    for (const std::string& x : xs) {
      double best = 0.0;
      for (const std::string& y : ys) best = std::max(best, word(x, y));
      sum += best;
    }
    return sum / double(xs.size());
  };
  return 0.5 * (directional(wa, wb) + directional(wb, wa));
}

}  // namespace protodsl
