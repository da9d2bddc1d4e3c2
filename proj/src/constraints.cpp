#include "constraints.hpp"

#include <array>
#include <map>

namespace protodsl {

namespace {

constexpr std::array<const char*, kConstraintCount> kNames = {
    "integer-type-declaration",
    "floatingpoint-type-declaration",
    "boolean-type-declaration",
    "string-type-declaration",
    "vector-type-declaration",
    "dict-type-declaration",
    "set-type-declaration",
    "temporal-type-declaration",
    "reg-type-declaration",
    "device-type-declaration",
    "container-type-declaration",
    "scientific-type-declaration",
    "for-loop",
    "while-loop",
    "if-branch",
    "if-else-branch",
    "function-procedure-call",
    "function-procedure-declaration",
    "break-statement",
    "continue-statement",
    "allocate-statement",
    "add-arithmetic-operator",
    "minus-arithmetic-operator",
    "multi-arithmetic-operator",
    "devid-arithmetic-operator",
    "and-arithmetic-operator",
    "or-arithmetic-operator",
    "not-arithmetic-operator",
    "assignment-expression",
    "raise-statement",
    "resolve-statement",
    "class-type-declaration",
    "spawn-process",
    "send-message",
    "receive-message",
    "event-statement",
    "response-statement",
    "parallel-for",
    "parallel-map",
};

}  // namespace

const std::vector<ConstraintId>& all_constraints() {
  static const std::vector<ConstraintId> ids = [] {
    std::vector<ConstraintId> v;
    for (int i = 0; i < kConstraintCount; ++i) v.push_back(static_cast<ConstraintId>(i));
    return v;
  }();
  return ids;
}

std::string constraint_name(ConstraintId id) {
  int i = static_cast<int>(id);
  if (i < 0 || i >= kConstraintCount) fail(ErrorKind::Invalid, "unknown constraint id");
  return kNames[static_cast<std::size_t>(i)];
}

ConstraintId parse_constraint(std::string_view name) {
  static const std::map<std::string, ConstraintId, std::less<>> index = [] {
    std::map<std::string, ConstraintId, std::less<>> m;
    for (ConstraintId id : all_constraints()) m[constraint_name(id)] = id;
    return m;
  }();
  auto it = index.find(name);
  if (it == index.end())
    fail(ErrorKind::NotFound, "unknown constraint name: " + std::string(name));
  return it->second;
}

bool is_constant_constraint(ConstraintId id) {
  return id == ConstraintId::DeviceTypeDeclaration ||
         id == ConstraintId::ScientificTypeDeclaration;
}

std::vector<std::vector<ConstraintId>> constraint_dependencies(ConstraintId id) {
  using C = ConstraintId;
  switch (id) {
    case C::BreakStatement:
    case C::ContinueStatement:
      return {{C::WhileLoop, C::ForLoop}};  // any loop form
    case C::IfElseBranch:
      return {{C::IfBranch}};
    case C::SendMessage:
    case C::ReceiveMessage:
      return {{C::SpawnProcess}};
    default:
      return {};
  }
}

}  // namespace protodsl
