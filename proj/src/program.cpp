#include "program.hpp"

#include <json.hpp>

namespace protodsl {

namespace {

using nlohmann::json;

bool is_reserved_key(const std::string& key) {
  return key == "loop" || key == "branch" || key == "parallel" || key == "call" ||
         key == "alloc" || key == "dealloc" || key == "event";
}

std::optional<std::string> parse_value(const json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "None") return std::nullopt;
    return s;
  }
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_float()) {
    return json(v.get<double>()).dump();
  }
  fail(ErrorKind::Parse, "program: argument value must be a string, number or null");
}

OpStep parse_opstep(const std::string& opcode, const json& pairs) {
  if (opcode.empty()) fail(ErrorKind::Parse, "program: no opcode");
  if (!pairs.is_array()) fail(ErrorKind::Parse, "program: opcode value must be a list of pairs");
  OpStep step;
  step.opcode = opcode;
  for (const json& pair : pairs) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
      fail(ErrorKind::Parse, "program: argument entries must be [\"Category\", value] pairs");
    std::string category = pair[0].get<std::string>();
    if (category == "output") {
      step.output = parse_value(pair[1]);
      continue;
    }
    step.args.push_back({category, parse_value(pair[1])});
  }
  return step;
}

std::vector<Statement> parse_statements(const json& list);

Statement parse_statement(const json& obj) {
  if (!obj.is_object() || obj.size() != 1)
    fail(ErrorKind::Parse, "program: each statement must be an object with exactly one key");
  const auto& item = obj.items().begin();
  const std::string key = item.key();
  const json& body = item.value();

  Statement stmt;
  if (!is_reserved_key(key)) {
    stmt.node = parse_opstep(key, body);
    return stmt;
  }
  if (!body.is_object()) fail(ErrorKind::Parse, "program: '" + key + "' needs an object body");

  auto req_string = [&](const char* field) {
    if (!body.contains(field) || !body[field].is_string())
      fail(ErrorKind::Parse, "program: '" + key + "' needs string field '" + field + "'");
    return body[field].get<std::string>();
  };
  auto opt_string = [&](const char* field) -> std::string {
    if (!body.contains(field)) return "";
    if (!body[field].is_string())
      fail(ErrorKind::Parse, "program: '" + key + "' field '" + field + "' must be a string");
    return body[field].get<std::string>();
  };
  auto req_list = [&](const char* field) -> const json& {
    if (!body.contains(field) || !body[field].is_array())
      fail(ErrorKind::Parse, "program: '" + key + "' needs list field '" + field + "'");
    return body[field];
  };

  if (key == "loop") {
    LoopStmt loop;
    loop.kind = req_string("kind");
    if (loop.kind != "for" && loop.kind != "while")
      fail(ErrorKind::Parse, "program: loop kind must be 'for' or 'while'");
    loop.condition = opt_string("condition");
    if (body.contains("bound")) {
      if (!body["bound"].is_number_integer())
        fail(ErrorKind::Parse, "program: loop bound must be an integer");
      loop.bound = body["bound"].get<int>();
    }
    loop.body = parse_statements(req_list("body"));
    stmt.node = std::move(loop);
  } else if (key == "branch") {
    BranchStmt branch;
    branch.condition = req_string("condition");
    branch.then_body = parse_statements(req_list("then"));
    if (body.contains("else")) {
      if (!body["else"].is_array()) fail(ErrorKind::Parse, "program: branch else must be a list");
      branch.else_body = parse_statements(body["else"]);
    }
    stmt.node = std::move(branch);
  } else if (key == "parallel") {
    ParallelStmt par;
    for (const json& br : req_list("branches")) {
      if (!br.is_array()) fail(ErrorKind::Parse, "program: parallel branches must be lists");
      par.branches.push_back(parse_statements(br));
    }
    if (par.branches.empty()) fail(ErrorKind::Parse, "program: parallel needs at least one branch");
    stmt.node = std::move(par);
  } else if (key == "call") {
    CallStmt call;
    call.name = req_string("name");
    if (body.contains("args")) {
      for (const json& a : body["args"]) {
        if (!a.is_string()) fail(ErrorKind::Parse, "program: call args must be strings");
        call.args.push_back(a.get<std::string>());
      }
    }
    stmt.node = std::move(call);
  } else if (key == "alloc") {
    stmt.node = AllocStmt{req_string("type"), req_string("name")};
  } else if (key == "dealloc") {
    stmt.node = DeallocStmt{req_string("name")};
  } else {  // event
    EventStmt ev;
    ev.on = req_string("on");
    ev.body = parse_statements(req_list("body"));
    stmt.node = std::move(ev);
  }
  return stmt;
}

std::vector<Statement> parse_statements(const json& list) {
  std::vector<Statement> out;
  for (const json& obj : list) out.push_back(parse_statement(obj));
  return out;
}

}  // namespace

ProtocolProgram parse_program_text(std::string_view text) {
  json root;
  try {
    // Default parse rejects trailing content, so two concatenated objects
    // raise an error carrying the byte position.
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("program: ") + e.what());
  }
  if (!root.is_object()) fail(ErrorKind::Parse, "program: top level must be a JSON object");

  ProtocolProgram program;
  if (root.contains("program")) {
    if (root.contains("version")) {
      if (!root["version"].is_number_integer() || root["version"].get<int>() != 1)
        fail(ErrorKind::Parse, "program: unsupported program format version");
      program.version = root["version"].get<int>();
    }
    if (!root["program"].is_array())
      fail(ErrorKind::Parse, "program: 'program' must be a statement list");
    for (const auto& [key, _] : root.items()) {
      if (key != "program" && key != "version")
        fail(ErrorKind::Parse, "program: unexpected top-level key '" + key + "'");
    }
    program.statements = parse_statements(root["program"]);
    return program;
  }

  if (root.empty()) fail(ErrorKind::Parse, "program: no opcode");
  if (root.size() != 1)
    fail(ErrorKind::Parse, "program: single-step form must have exactly one opcode key");
  const auto& item = root.items().begin();
  Statement stmt;
  stmt.node = parse_opstep(item.key(), item.value());
  program.statements.push_back(std::move(stmt));
  return program;
}

namespace {

json value_to_json(const std::optional<std::string>& v) {
  if (!v) return nullptr;
  return *v;
}

json statement_to_json(const Statement& stmt);

json statements_to_json(const std::vector<Statement>& list) {
  json arr = json::array();
  for (const Statement& s : list) arr.push_back(statement_to_json(s));
  return arr;
}

json statement_to_json(const Statement& stmt) {
  json obj = json::object();
  if (const auto* op = std::get_if<OpStep>(&stmt.node)) {
    json pairs = json::array();
    for (const OpArg& a : op->args) pairs.push_back(json::array({a.category, value_to_json(a.value)}));
    if (op->output) pairs.push_back(json::array({"output", *op->output}));
    obj[op->opcode] = std::move(pairs);
  } else if (const auto* loop = std::get_if<LoopStmt>(&stmt.node)) {
    json body = {{"kind", loop->kind}, {"body", statements_to_json(loop->body)}};
    if (!loop->condition.empty()) body["condition"] = loop->condition;
    if (loop->bound) body["bound"] = *loop->bound;
    obj["loop"] = std::move(body);
  } else if (const auto* branch = std::get_if<BranchStmt>(&stmt.node)) {
    json body = {{"condition", branch->condition},
                 {"then", statements_to_json(branch->then_body)}};
    if (branch->else_body) body["else"] = statements_to_json(*branch->else_body);
    obj["branch"] = std::move(body);
  } else if (const auto* par = std::get_if<ParallelStmt>(&stmt.node)) {
    json branches = json::array();
    for (const auto& br : par->branches) branches.push_back(statements_to_json(br));
    obj["parallel"] = {{"branches", std::move(branches)}};
  } else if (const auto* call = std::get_if<CallStmt>(&stmt.node)) {
    json body = {{"name", call->name}};
    if (!call->args.empty()) body["args"] = call->args;
    obj["call"] = std::move(body);
  } else if (const auto* alloc = std::get_if<AllocStmt>(&stmt.node)) {
    obj["alloc"] = {{"type", alloc->type}, {"name", alloc->name}};
  } else if (const auto* dealloc = std::get_if<DeallocStmt>(&stmt.node)) {
    obj["dealloc"] = {{"name", dealloc->name}};
  } else if (const auto* ev = std::get_if<EventStmt>(&stmt.node)) {
    obj["event"] = {{"on", ev->on}, {"body", statements_to_json(ev->body)}};
  }
  return obj;
}

}  // namespace

std::string program_to_json(const ProtocolProgram& program) {
  if (program.statements.size() == 1 &&
      std::holds_alternative<OpStep>(program.statements[0].node)) {
    return statement_to_json(program.statements[0]).dump();
  }
  json root = {{"version", program.version},
               {"program", statements_to_json(program.statements)}};
  return root.dump();
}

std::vector<ProtocolProgram> load_programs(const std::string& path) {
  std::vector<ProtocolProgram> programs;
  std::size_t line_no = 0;
  for (const std::string& line : read_lines(path)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    try {
      programs.push_back(parse_program_text(body));
    } catch (const Error& e) {
      fail(ErrorKind::Parse, "programs line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return programs;
}

}  // namespace protodsl
