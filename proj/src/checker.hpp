#pragma once

#include <map>

#include "artifact.hpp"
#include "features.hpp"
#include "program.hpp"

namespace protodsl {

enum class DiagnosticKind {
  ActionUndefinition,
  ParameterOmission,
  ParameterUnderSpecification,
  ConstructNotInDsl,
  MalformedProgram,
};

std::string diagnostic_kind_name(DiagnosticKind k);

struct Diagnostic {
  DiagnosticKind kind;
  std::string location;  // statement path, e.g. "program[1].body[0]"
  std::string detail;
  std::string suggestion;  // empty when no repair is known
};

// Structural checks: flags statement kinds whose constraint is inactive in
// the artifact, recursing through loop/branch/parallel/event bodies. A
// malformed tree yields a single MalformedProgram diagnostic.
std::vector<Diagnostic> check_syntax(const ProtocolProgram& program, const DslArtifact& artifact);

// Semantic checks per operation step: unknown opcode (with nearest-opcode
// suggestion), argument categories matching no registered pattern (with the
// minimal missing set against the nearest pattern), and qualitative values in
// quantitative slots.
std::vector<Diagnostic> check_semantics(const ProtocolProgram& program,
                                        const DslArtifact& artifact,
                                        const SimilarityProvider& sim, double delta = 0.5);

std::vector<Diagnostic> check_program(const ProtocolProgram& program, const DslArtifact& artifact,
                                      const SimilarityProvider& sim, double delta = 0.5);

// One machine-parseable line per finding.
std::string render_diagnostics(const std::vector<Diagnostic>& diagnostics,
                               std::size_t program_index);

// Categories that demand a numeric magnitude (plus unit except bare counts).
bool is_quantitative_category(const std::string& category);
bool quantitative_value_ok(const std::string& category, const std::string& value);

struct ClassRate {
  int matched = 0;
  int total = 0;
  double rate() const { return total == 0 ? 1.0 : double(matched) / double(total); }
};

struct UtilityScore {
  // Syntactic feature classes: ImperativeControlFlow, TypeSystem, Concurrent,
  // ReactiveModel. Semantic error classes: ActionUndefinition,
  // ParameterOmission, ParameterUnderSpecification.
  std::map<std::string, ClassRate> syntactic_success;
  std::map<std::string, ClassRate> semantic_success;
  std::vector<std::string> details;  // per-sample match notes
};

// Paired, aligned samples; order-insensitive argument comparison; name
// strings relaxed to n-gram similarity at threshold 0.5, numeric values
// compared exactly.
UtilityScore score_utility(const std::vector<ProtocolProgram>& predicted,
                           const std::vector<ProtocolProgram>& truth);

}  // namespace protodsl
