#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace protodsl {

enum class Pos {
  Noun,
  Verb,
  Adjective,
  Adverb,
  Pronoun,
  Determiner,
  Preposition,
  Conjunction,
  Auxiliary,
  Number,
  Symbol,
  Person,  // nouns naming human agents; drives the PERSONS tag
};

struct Token {
  std::string text;     // surface form, punctuation-stripped
  std::string lemma;    // lowercased lemma
  Pos pos = Pos::Noun;
  std::size_t begin = 0;  // character span in the source sentence
  std::size_t end = 0;
};

// Whitespace tokenization with leading/trailing punctuation split off; spans
// index into the original sentence.
std::vector<Token> tokenize(std::string_view sentence);

// Closed-class word lists plus suffix heuristics; unknown words default to
// noun. `sentence_initial` enables the imperative-verb reading for the first
// content token.
Pos tag_word(std::string_view lower, bool sentence_initial);

// Suffix-stripping lemmatizer (-s/-es/-ies/-ed/-ing with doubling undo),
// lexicon-assisted for verb base-form restoration.
std::string lemmatize(std::string_view word);

bool is_known_verb(std::string_view lemma);

// Relational/abstract nouns ("origin", "hole", "diameter") that never stand
// alone as operation arguments.
bool is_abstract_noun(std::string_view lemma);

}  // namespace protodsl
