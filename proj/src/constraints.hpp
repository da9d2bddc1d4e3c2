#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace protodsl {

// Candidate atomic syntactic constraints, one per belief-function case.
enum class ConstraintId {
  IntegerTypeDeclaration,
  FloatingpointTypeDeclaration,
  BooleanTypeDeclaration,
  StringTypeDeclaration,
  VectorTypeDeclaration,
  DictTypeDeclaration,
  SetTypeDeclaration,
  TemporalTypeDeclaration,
  RegTypeDeclaration,
  DeviceTypeDeclaration,
  ContainerTypeDeclaration,
  ScientificTypeDeclaration,
  ForLoop,
  WhileLoop,
  IfBranch,
  IfElseBranch,
  FunctionProcedureCall,
  FunctionProcedureDeclaration,
  BreakStatement,
  ContinueStatement,
  AllocateStatement,
  AddArithmeticOperator,
  MinusArithmeticOperator,
  MultiArithmeticOperator,
  DevidArithmeticOperator,
  AndArithmeticOperator,
  OrArithmeticOperator,
  NotArithmeticOperator,
  AssignmentExpression,
  RaiseStatement,
  ResolveStatement,
  ClassTypeDeclaration,
  SpawnProcess,
  SendMessage,
  ReceiveMessage,
  EventStatement,
  ResponseStatement,
  ParallelFor,
  ParallelMap,
};

constexpr int kConstraintCount = 39;

const std::vector<ConstraintId>& all_constraints();
std::string constraint_name(ConstraintId id);
ConstraintId parse_constraint(std::string_view name);

// Constants of the belief function, exempt from support-based pruning.
bool is_constant_constraint(ConstraintId id);

// Constructs that only make sense in the presence of another construct:
// break/continue need a loop, the else branch needs if, and message passing
// needs a spawned process.
std::vector<std::vector<ConstraintId>> constraint_dependencies(ConstraintId id);

}  // namespace protodsl
