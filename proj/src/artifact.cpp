#include "artifact.hpp"

#include "sha256.hpp"

namespace protodsl {

namespace {

using nlohmann::json;

json payload_of(const DslArtifact& a) {
  json root;
  root["version"] = kArtifactFormatVersion;
  root["domain"] = domain_name(a.domain);
  root["grammar_bnf"] = a.grammar.to_bnf();
  json active = json::array();
  for (ConstraintId k : a.active) active.push_back(constraint_name(k));
  root["active_constraints"] = std::move(active);
  root["registry"] = json::parse(a.registry.to_json());
  root["provenance"] = a.provenance;
  return root;
}

Domain domain_from_name(const std::string& name) {
  if (starts_with(name, "Other(") && ends_with(name, ")")) {
    return {DomainKind::Other, name.substr(6, name.size() - 7)};
  }
  return parse_domain(name);
}

}  // namespace

DslArtifact assemble(const DslSyntax& syntax, const SemanticRegistry& registry,
                     const Domain& domain, nlohmann::json provenance) {
  std::string reason;
  if (!syntax.grammar.is_well_formed(&reason))
    fail(ErrorKind::Invalid, "assemble: grammar not well-formed: " + reason);
  for (ConstraintId k : syntax.active) {
    if (!accepts_construct(syntax.grammar, k))
      fail(ErrorKind::Invalid,
           "assemble: active constraint not accepted by grammar: " + constraint_name(k));
  }
  if (registry.empty()) fail(ErrorKind::Invalid, "assemble: semantic registry is empty");
  if (!provenance.is_object() || !provenance.contains("corpus_hash") ||
      !provenance["corpus_hash"].is_string() ||
      provenance["corpus_hash"].get<std::string>().empty())
    fail(ErrorKind::Invalid, "assemble: provenance must carry a corpus_hash");

  DslArtifact artifact;
  artifact.domain = domain;
  artifact.grammar = syntax.grammar;
  artifact.active = syntax.active;
  artifact.registry = registry;
  artifact.provenance = std::move(provenance);
  return artifact;
}

std::string artifact_to_text(const DslArtifact& artifact) {
  json root = payload_of(artifact);
  root["checksum"] = sha256_hex(root.dump(2));
  return root.dump(2) + "\n";
}

DslArtifact artifact_from_text(std::string_view text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded() || !root.is_object())
    fail(ErrorKind::Parse, "artifact: not a JSON object");

  if (!root.contains("version") || !root["version"].is_number_integer())
    fail(ErrorKind::Parse, "artifact: missing format version");
  int version = root["version"].get<int>();
  if (version != kArtifactFormatVersion)
    fail(ErrorKind::Parse,
         "artifact: unsupported format version " + std::to_string(version) + " (expected " +
             std::to_string(kArtifactFormatVersion) + ")");

  if (!root.contains("checksum") || !root["checksum"].is_string())
    fail(ErrorKind::Parse, "artifact: missing checksum");
  std::string stored = root["checksum"].get<std::string>();
  json body = root;
  body.erase("checksum");
  if (sha256_hex(body.dump(2)) != stored)
    fail(ErrorKind::Parse, "artifact: checksum mismatch, file corrupted or tampered");

  for (const char* field : {"domain", "grammar_bnf", "active_constraints", "registry", "provenance"}) {
    if (!root.contains(field)) fail(ErrorKind::Parse, std::string("artifact: missing ") + field);
  }

  DslArtifact artifact;
  artifact.domain = domain_from_name(root["domain"].get<std::string>());
  artifact.grammar = Grammar::from_bnf(root["grammar_bnf"].get<std::string>());
  for (const json& name : root["active_constraints"])
    artifact.active.insert(parse_constraint(name.get<std::string>()));
  artifact.registry = SemanticRegistry::from_json(root["registry"].dump());
  artifact.provenance = root["provenance"];

  std::string reason;
  if (!artifact.grammar.is_well_formed(&reason))
    fail(ErrorKind::Parse, "artifact: embedded grammar not well-formed: " + reason);
  for (ConstraintId k : artifact.active) {
    if (!accepts_construct(artifact.grammar, k))
      fail(ErrorKind::Parse,
           "artifact: active constraint not accepted by grammar: " + constraint_name(k));
  }
  return artifact;
}

void save_artifact(const DslArtifact& artifact, const std::string& path) {
  write_file_atomic(path, artifact_to_text(artifact));
}

DslArtifact load_artifact(const std::string& path) {
  return artifact_from_text(read_file(path));
}

std::string artifact_summary(const DslArtifact& artifact) {
  std::string out;
  out += "domain: " + domain_name(artifact.domain) + "\n";
  out += "syntactic constraints (" + std::to_string(artifact.active.size()) + "):\n";
  for (ConstraintId k : artifact.active) out += "  " + constraint_name(k) + "\n";
  out += "semantic registry:\n";
  out += artifact.registry.to_json();
  out += "\n";
  return out;
}

}  // namespace protodsl
