#include "tagger.hpp"

#include <cctype>
#include <unordered_set>

namespace protodsl {
namespace {

const std::unordered_set<std::string>& determiners() {
  static const std::unordered_set<std::string> s = {
      "the", "a", "an", "each", "every", "all", "some", "any", "no",
      "both", "either", "neither", "another", "such"};
  return s;
}

const std::unordered_set<std::string>& prepositions() {
  static const std::unordered_set<std::string> s = {
      "of",      "in",      "to",      "for",     "with",    "on",      "at",
      "by",      "from",    "into",    "onto",    "during",  "until",   "against",
      "among",   "through", "throughout", "despite", "toward", "towards", "upon",
      "about",   "above",   "below",   "over",    "under",   "between", "after",
      "before",  "around",  "near",    "per",     "via",     "across",  "along",
      "behind",  "beyond",  "within",  "without", "according", "as"};
  return s;
}

const std::unordered_set<std::string>& conjunctions() {
  static const std::unordered_set<std::string> s = {
      "and", "or",   "but",  "nor",   "so",      "yet",     "if",
      "else", "when", "while", "whereas", "although", "though", "because",
      "since", "unless", "whether", "once", "whenever", "then", "otherwise"};
  return s;
}

const std::unordered_set<std::string>& pronouns() {
  static const std::unordered_set<std::string> s = {
      "i",    "you",  "he",   "she",   "it",     "we",     "they",   "me",
      "him",  "her",  "us",   "them",  "myself", "itself", "himself", "herself",
      "themselves", "ourselves", "yourself", "something", "anything", "nothing",
      "everything", "someone", "anyone", "everyone", "one", "ones"};
  return s;
}

const std::unordered_set<std::string>& auxiliaries() {
  static const std::unordered_set<std::string> s = {
      "is",   "are",  "was",  "were", "be",    "been",  "being", "am",
      "do",   "does", "did",  "have", "has",   "had",   "will",  "would",
      "shall", "should", "may", "might", "can", "could", "must", "need",
      "ensure", "make", "let"};
  return s;
}

const std::unordered_set<std::string>& person_words() {
  static const std::unordered_set<std::string> s = {
      "experimenter", "experimenters", "assistant", "assistants", "technician",
      "technicians",  "operator",      "operators", "researcher", "researchers",
      "colleague",    "colleagues",    "person",    "persons",    "people",
      "staff",        "student",       "students",  "expert",     "experts",
      "participant",  "participants",  "partner",   "partners",   "investigator",
      "investigators", "surgeon",      "surgeons",  "doctor",     "doctors",
      "nurse",        "nurses",        "team",      "helper",     "helpers"};
  return s;
}

const std::unordered_set<std::string>& verb_lexicon() {
  static const std::unordered_set<std::string> s = {
      "add",        "remove",      "incubate",   "place",       "mix",
      "transfer",   "centrifuge",  "spin",       "wash",        "collect",
      "prepare",    "transect",    "drill",      "resolve",     "repeat",
      "aspirate",   "anesthetize", "dissect",    "sterilize",   "quantify",
      "calibrate",  "dilute",      "attach",     "detach",      "delete",
      "detect",     "use",         "close",      "open",        "divide",
      "iterate",    "shake",       "resuspend",  "suspend",     "harvest",
      "inoculate",  "grow",        "store",      "aliquot",     "discard",
      "adjust",     "count",       "mark",       "record",      "proceed",
      "pipette",    "thaw",        "freeze",     "dry",         "heat",
      "cool",       "boil",        "filter",     "pour",        "seal",
      "label",      "weigh",       "measure",    "observe",     "monitor",
      "analyze",    "examine",     "insert",     "inject",      "extract",
      "isolate",    "purify",      "elute",      "stain",       "fix",
      "mount",      "image",       "scan",       "sequence",    "amplify",
      "digest",     "ligate",      "transform",  "streak",      "pick",
      "culture",    "passage",     "split",      "feed",        "treat",
      "expose",     "apply",       "load",       "run",         "perform",
      "conduct",    "obtain",      "combine",    "vortex",      "sonicate",
      "homogenize", "lyse",        "spread",     "cover",       "fill",
      "refill",     "empty",       "rinse",      "soak",        "immerse",
      "dip",        "wipe",        "clean",      "decant",      "titrate",
      "neutralize", "warm",        "chill",      "equilibrate", "incise",
      "suture",     "implant",     "perfuse",    "euthanize",   "sacrifice",
      "cannulate",  "clamp",       "retract",    "mobilize",    "flush",
      "stir",       "blend",       "crush",      "grind",       "cut",
      "trim",       "peel",        "chop",       "slice",       "pool",
      "dispense",   "overlay",     "immunostain", "wait",       "pause",
      "stop",       "start",       "begin",      "continue",    "keep",
      "hold",       "press",       "push",       "pull",        "turn",
      "switch",     "connect",     "disconnect", "assemble",    "disassemble",
      "screen",     "select",      "verify",     "confirm",     "check",
      "test",       "assay",       "sow",        "plant",       "water",
      "feedback",   "acclimate",   "house",      "weight",      "fast",
      "administer", "dose",        "infuse",     "suction",     "drain",
      "bathe",      "position",    "secure",     "expose",      "shave",
      "swab",       "inflate",     "deflate",    "ventilate",   "resect",
      "excise",     "embed",       "section",    "deparaffinize", "rehydrate",
      "dehydrate",  "clear",       "rinse",      "blot",        "probe",
      "hybridize",  "denature",    "anneal",     "extend",      "cycle",
      "pellet",     "decontaminate", "autoclave", "irradiate",  "expose",
      "photograph", "film",        "say",        "tell",
      "call",       "invoke",      "raise",      "emit",        "send",
      "receive",    "spawn",       "allocate",   "deallocate",  "iterate",
      "transfect",  "electroporate", "sort",     "gate",        "acquire",
      "normalize",  "subtract",    "multiply",   "compute",     "calculate"};
  return s;
}

// Relational/abstract nouns never used as operation arguments on their own.
const std::unordered_set<std::string>& abstract_nouns() {
  static const std::unordered_set<std::string> s = {
      "origin",  "level",   "section", "part",     "root",   "top",
      "bottom",  "end",     "side",    "middle",   "edge",   "surface",
      "diameter", "hole",   "location", "position", "step",  "time",
      "order",   "way",     "manner",  "amount",   "number", "rest",
      "beginning", "presence", "absence", "takeoff"};
  return s;
}

bool has_suffix(std::string_view w, std::string_view suf) { return ends_with(w, suf); }

}  // namespace

bool is_known_verb(std::string_view lemma) {
  return verb_lexicon().count(std::string(lemma)) > 0;
}

bool is_abstract_noun(std::string_view lemma) {
  return abstract_nouns().count(std::string(lemma)) > 0;
}

std::string lemmatize(std::string_view word) {
  std::string w = to_lower(word);
  if (w.size() <= 3) return w;

  // All-caps surface forms are acronyms; keep them verbatim (PBS, IVC, SHVC).
  bool all_caps = true;
  for (char c : word) {
    if (std::islower(static_cast<unsigned char>(c))) { all_caps = false; break; }
  }
  if (all_caps) return w;

  auto in_verbs = [](const std::string& s) { return verb_lexicon().count(s) > 0; };
  if (in_verbs(w)) return w;  // "proceed", "feed": -ed is part of the stem

  if (has_suffix(w, "ing") && w.size() > 5) {
    std::string stem = w.substr(0, w.size() - 3);
    if (in_verbs(stem)) return stem;
    if (in_verbs(stem + "e")) return stem + "e";
    if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      std::string undoubled = stem.substr(0, stem.size() - 1);
      if (in_verbs(undoubled)) return undoubled;
    }
    return stem;
  }
  if (has_suffix(w, "ied") && w.size() > 4) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (has_suffix(w, "ed") && w.size() > 4) {
    std::string stem = w.substr(0, w.size() - 2);
    if (in_verbs(stem)) return stem;
    if (in_verbs(stem + "e") || stem.back() == 't' || stem.back() == 'z' ||
        stem.back() == 's' || stem.back() == 'c' || stem.back() == 'v' ||
        stem.back() == 'u') {
      if (in_verbs(stem + "e")) return stem + "e";
    }
    if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      std::string undoubled = stem.substr(0, stem.size() - 1);
      if (in_verbs(undoubled)) return undoubled;
    }
    // Unknown -ed form: prefer the bare stem ("washed" -> "wash").
    return stem;
  }
  if (has_suffix(w, "ies") && w.size() > 4) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (has_suffix(w, "ses") || has_suffix(w, "xes") || has_suffix(w, "zes") ||
      has_suffix(w, "ches") || has_suffix(w, "shes") || has_suffix(w, "oes")) {
    return w.substr(0, w.size() - 2);
  }
  if (has_suffix(w, "s") && !has_suffix(w, "ss") && !has_suffix(w, "us") &&
      !has_suffix(w, "is") && w.size() > 3) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

Pos tag_word(std::string_view lower_sv, bool sentence_initial) {
  const std::string lower(lower_sv);
  if (lower.empty()) return Pos::Symbol;

  bool numeric = false;
  for (char c : lower) {
    if (std::isdigit(static_cast<unsigned char>(c))) { numeric = true; break; }
  }
  if (numeric && !std::isalpha(static_cast<unsigned char>(lower[0]))) return Pos::Number;
  if (!std::isalnum(static_cast<unsigned char>(static_cast<unsigned char>(lower[0]))) &&
      static_cast<unsigned char>(lower[0]) < 0x80)
    return Pos::Symbol;

  if (determiners().count(lower)) return Pos::Determiner;
  if (pronouns().count(lower)) return Pos::Pronoun;
  if (prepositions().count(lower)) return Pos::Preposition;
  if (conjunctions().count(lower)) return Pos::Conjunction;
  if (auxiliaries().count(lower)) return Pos::Auxiliary;
  if (person_words().count(lower)) return Pos::Person;

  const std::string lemma = lemmatize(lower);
  if (person_words().count(lemma)) return Pos::Person;
  if (verb_lexicon().count(lemma)) {
    // Mid-sentence surface nouns shadow verb homographs ("the culture").
    if (!sentence_initial) {
      if (lower == lemma || has_suffix(lower, "s") || has_suffix(lower, "ed") ||
          has_suffix(lower, "ing"))
        return (has_suffix(lower, "ed") || has_suffix(lower, "ing")) ? Pos::Verb : Pos::Noun;
    }
    return Pos::Verb;
  }

  if (has_suffix(lower, "ly") && lower.size() > 3) return Pos::Adverb;
  if (sentence_initial &&
      (has_suffix(lower, "ate") || has_suffix(lower, "ize") || has_suffix(lower, "ise") ||
       has_suffix(lower, "ify")))
    return Pos::Verb;
  if (has_suffix(lower, "al") || has_suffix(lower, "ous") || has_suffix(lower, "ive") ||
      has_suffix(lower, "ic") || has_suffix(lower, "ful") || has_suffix(lower, "less") ||
      has_suffix(lower, "able") || has_suffix(lower, "ible"))
    return Pos::Adjective;

  return Pos::Noun;
}

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const std::size_t n = sentence.size();
  bool first_content = true;
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    if (i == start) break;

    std::size_t b = start;
    std::size_t e = i;
    auto is_strip = [&](char c) {
      switch (c) {
        case '(': case ')': case '[': case ']': case '{': case '}':
        case ',': case ';': case ':': case '.': case '!': case '?':
        case '"': case '\'': case '`':
          return true;
        default:
          return false;
      }
    };
    while (b < e && is_strip(sentence[b])) ++b;
    while (e > b && is_strip(sentence[e - 1])) --e;
    if (b >= e) continue;

    Token tok;
    tok.text = std::string(sentence.substr(b, e - b));
    tok.begin = b;
    tok.end = e;
    std::string lower = to_lower(tok.text);
    tok.pos = tag_word(lower, first_content);
    tok.lemma = lemmatize(tok.text);
    // Leading adverbs and list markers do not use up the imperative slot
    // ("Gently shake ...", "1. Add ...").
    if (tok.pos != Pos::Symbol && tok.pos != Pos::Number && tok.pos != Pos::Adverb)
      first_content = false;
    tokens.push_back(std::move(tok));
  }

  // Base-form verbs after "to" / "then" / "and" / "or" read as verbs, not the
  // default noun ("to spin", "and incubate").
  for (std::size_t k = 1; k < tokens.size(); ++k) {
    Token& t = tokens[k];
    if (t.pos != Pos::Noun) continue;
    std::string lower = to_lower(t.text);
    if (lower != t.lemma || !is_known_verb(t.lemma)) continue;
    std::string prev = to_lower(tokens[k - 1].text);
    if (prev == "to" || prev == "then" || prev == "and" || prev == "or") t.pos = Pos::Verb;
  }
  return tokens;
}

}  // namespace protodsl
