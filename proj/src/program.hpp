#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "common.hpp"

namespace protodsl {

struct Statement;

struct OpArg {
  std::string category;
  std::optional<std::string> value;  // nullopt encodes the None marker

  bool operator==(const OpArg&) const = default;
};

struct OpStep {
  std::string opcode;
  std::vector<OpArg> args;
  std::optional<std::string> output;

  bool operator==(const OpStep&) const = default;
};

struct LoopStmt {
  std::string kind;  // "for" or "while"
  std::optional<int> bound;
  std::string condition;
  std::vector<Statement> body;

  bool operator==(const LoopStmt&) const = default;
};

struct BranchStmt {
  std::string condition;
  std::vector<Statement> then_body;
  std::optional<std::vector<Statement>> else_body;

  bool operator==(const BranchStmt&) const = default;
};

struct ParallelStmt {
  std::vector<std::vector<Statement>> branches;

  bool operator==(const ParallelStmt&) const = default;
};

struct CallStmt {
  std::string name;
  std::vector<std::string> args;

  bool operator==(const CallStmt&) const = default;
};

struct AllocStmt {
  std::string type;
  std::string name;

  bool operator==(const AllocStmt&) const = default;
};

struct DeallocStmt {
  std::string name;

  bool operator==(const DeallocStmt&) const = default;
};

struct EventStmt {
  std::string on;
  std::vector<Statement> body;

  bool operator==(const EventStmt&) const = default;
};

struct Statement {
  std::variant<OpStep, LoopStmt, BranchStmt, ParallelStmt, CallStmt, AllocStmt, DeallocStmt,
               EventStmt>
      node;

  bool operator==(const Statement&) const = default;
};

struct ProtocolProgram {
  int version = 1;
  std::vector<Statement> statements;

  bool operator==(const ProtocolProgram&) const = default;
};

// Accepts the single-step object form {"OPCODE": [["Cat","Val"], ...,
// ["output", v]]} and the version-tagged wrapper {"version": 1, "program":
// [...]} with loop/branch/parallel/call/alloc/dealloc/event statement objects.
// JSON null or the string "None" mark an absent value. Trailing content and
// structural violations raise parse errors with position information.
ProtocolProgram parse_program_text(std::string_view text);

std::string program_to_json(const ProtocolProgram& program);

// One program per non-empty line.
std::vector<ProtocolProgram> load_programs(const std::string& path);

}  // namespace protodsl
