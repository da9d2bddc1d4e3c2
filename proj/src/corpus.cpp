#include "corpus.hpp"

#include <set>

#include <json.hpp>

namespace protodsl {

std::string domain_name(const Domain& d) {
  switch (d.kind) {
    case DomainKind::Genetics: return "Genetics";
    case DomainKind::Medical: return "Medical";
    case DomainKind::Ecology: return "Ecology";
    case DomainKind::BioEng: return "BioEng";
    case DomainKind::InfoBio: return "InfoBio";
    case DomainKind::Other: return d.other_name.empty() ? "Other" : "Other(" + d.other_name + ")";
  }
  return "Other";
}

Domain parse_domain(std::string_view name) {
  const std::string lower = to_lower(trim(name));
  if (lower == "genetics") return {DomainKind::Genetics, ""};
  if (lower == "medical") return {DomainKind::Medical, ""};
  if (lower == "ecology") return {DomainKind::Ecology, ""};
  if (lower == "bioeng") return {DomainKind::BioEng, ""};
  if (lower == "infobio") return {DomainKind::InfoBio, ""};
  return {DomainKind::Other, std::string(trim(name))};
}

DomainMappingTable DomainMappingTable::load(const std::string& path) {
  return parse(read_file(path));
}

DomainMappingTable DomainMappingTable::parse(std::string_view text) {
  DomainMappingTable table;
  Domain current{DomainKind::Other, ""};
  bool have_domain = false;
  for (const std::string& raw : split_on(std::string(text), '\n')) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.find("-----") == 0) continue;
    if (line.front() == '[' && line.back() == ']') {
      current = parse_domain(line.substr(1, line.size() - 2));
      have_domain = true;
      continue;
    }
    if (!have_domain) fail(ErrorKind::Parse, "domain mapping: topic before any [Domain] header: " + line);
    table.topic_to_domain_[to_lower(line)] = current;
  }
  return table;
}

Domain DomainMappingTable::map(std::string_view topic) const {
  auto it = topic_to_domain_.find(to_lower(trim(topic)));
  if (it != topic_to_domain_.end()) return it->second;
  return {DomainKind::Other, std::string(trim(topic))};
}

namespace {

std::vector<std::string> split_paragraphs(std::string_view raw) {
  std::vector<std::string> paragraphs;
  std::string current;
  for (char c : raw) {
    if (c == '\n' || c == '\r') {
      std::string norm = normalize_ws(current);
      if (!norm.empty()) paragraphs.push_back(std::move(norm));
      current.clear();
    } else {
      current += c;
    }
  }
  std::string norm = normalize_ws(current);
  if (!norm.empty()) paragraphs.push_back(std::move(norm));
  return paragraphs;
}

// Sentence boundary: a run of .?! followed by whitespace or end of text, with
// the terminator kept on the preceding sentence. Decimal points never qualify
// because they have no trailing whitespace.
std::vector<std::string> split_sentences_text(std::string_view paragraph) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < paragraph.size()) {
    char c = paragraph[i];
    if (c == '.' || c == '?' || c == '!') {
      std::size_t j = i;
      while (j + 1 < paragraph.size() &&
             (paragraph[j + 1] == '.' || paragraph[j + 1] == '?' || paragraph[j + 1] == '!'))
        ++j;
      bool at_end = (j + 1 >= paragraph.size());
      bool ws_next = !at_end && std::isspace(static_cast<unsigned char>(paragraph[j + 1]));
      if (at_end || ws_next) {
        std::string sent = trim(paragraph.substr(start, j + 1 - start));
        if (!sent.empty()) sentences.push_back(std::move(sent));
        start = j + 1;
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  std::string rest = trim(paragraph.substr(start));
  if (!rest.empty()) sentences.push_back(std::move(rest));
  return sentences;
}

struct Piece {
  std::string text;
  std::size_t tokens;
  bool oversized;
};

// Greedy in-order merge keeping each merged piece at or under the cap.
std::vector<Piece> merge_pieces(const std::vector<Piece>& pieces, std::size_t max_tokens) {
  std::vector<Piece> merged;
  for (const Piece& p : pieces) {
    if (!merged.empty() && !merged.back().oversized && !p.oversized &&
        merged.back().tokens + p.tokens <= max_tokens) {
      merged.back().text += ' ';
      merged.back().text += p.text;
      merged.back().tokens += p.tokens;
    } else {
      merged.push_back(p);
    }
  }
  return merged;
}

}  // namespace

std::vector<Step> slice_protocol(std::string_view raw_text, std::size_t max_tokens) {
  if (max_tokens < 1) fail(ErrorKind::Invalid, "slice_protocol: max_tokens must be >= 1");

  std::vector<Piece> pieces;
  for (std::string& para : split_paragraphs(raw_text)) {
    std::size_t tokens = count_tokens(para);
    if (tokens <= max_tokens) {
      pieces.push_back({std::move(para), tokens, false});
      continue;
    }
    // Oversized paragraph: re-split at sentence level and re-merge.
    for (std::string& sent : split_sentences_text(para)) {
      std::size_t st = count_tokens(sent);
      pieces.push_back({std::move(sent), st, st > max_tokens});
    }
  }

  std::vector<Step> steps;
  int index = 0;
  for (Piece& p : merge_pieces(pieces, max_tokens)) {
    Step step;
    step.index = index++;
    step.text = std::move(p.text);
    step.token_count = p.tokens;
    step.oversized = p.oversized;
    steps.push_back(std::move(step));
  }
  return steps;
}

namespace {

Protocol protocol_from_json(const nlohmann::json& rec, const DomainMappingTable& table,
                            std::size_t max_tokens, std::size_t line_no) {
  auto require_string = [&](const char* field) -> std::string {
    if (!rec.contains(field) || !rec[field].is_string()) {
      fail(ErrorKind::Parse, "corpus line " + std::to_string(line_no) +
                                 ": missing or non-string field '" + field + "'");
    }
    return rec[field].get<std::string>();
  };
  Protocol p;
  p.id = require_string("id");
  p.topic = require_string("topic");
  p.raw_text = require_string("text");
  if (rec.contains("source")) {
    if (!rec["source"].is_string())
      fail(ErrorKind::Parse, "corpus line " + std::to_string(line_no) + ": non-string 'source'");
    p.source = rec["source"].get<std::string>();
  }
  p.domain = table.map(p.topic);
  p.steps = slice_protocol(p.raw_text, max_tokens);
  return p;
}

}  // namespace

std::vector<Protocol> parse_corpus(std::string_view text, const DomainMappingTable& table,
                                   std::size_t max_tokens) {
  std::vector<Protocol> corpus;
  std::set<std::string> seen_ids;
  std::size_t line_no = 0;
  for (const std::string& line : split_on(std::string(text), '\n')) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty()) continue;
    nlohmann::json rec = nlohmann::json::parse(body, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      fail(ErrorKind::Parse, "corpus line " + std::to_string(line_no) + ": malformed record");
    }
    Protocol p = protocol_from_json(rec, table, max_tokens, line_no);
    if (!seen_ids.insert(p.id).second) {
      fail(ErrorKind::Parse, "corpus line " + std::to_string(line_no) + ": duplicate id '" + p.id + "'");
    }
    corpus.push_back(std::move(p));
  }
  return corpus;
}

std::vector<Protocol> load_corpus(const std::string& path, const DomainMappingTable& table,
                                  std::size_t max_tokens) {
  return parse_corpus(read_file(path), table, max_tokens);
}

void save_corpus(const std::vector<Protocol>& corpus, const std::string& path) {
  std::string out;
  for (const Protocol& p : corpus) {
    nlohmann::json rec;
    rec["id"] = p.id;
    rec["topic"] = p.topic;
    rec["text"] = p.raw_text;
    if (!p.source.empty()) rec["source"] = p.source;
    out += rec.dump();
    out += '\n';
  }
  write_file_atomic(path, out);
}

std::map<std::string, DomainStats> corpus_stats(const std::vector<Protocol>& corpus) {
  std::map<std::string, DomainStats> stats;
  for (const Protocol& p : corpus) {
    DomainStats& s = stats[domain_name(p.domain)];
    s.protocols += 1;
    s.steps += p.steps.size();
  }
  for (auto& [_, s] : stats) {
    s.mean_steps_per_protocol = s.protocols ? double(s.steps) / double(s.protocols) : 0.0;
  }
  return stats;
}

}  // namespace protodsl
