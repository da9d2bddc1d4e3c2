#include "grammar.hpp"

#include <algorithm>
#include <map>

namespace protodsl {

namespace {

// One prior production per row; `owner` marks the constraint the alternative
// realizes, nullopt rows are structural glue.
struct PriorRow {
  std::optional<ConstraintId> owner;
  std::string lhs;
  std::string rhs;
};

using C = ConstraintId;

const std::vector<PriorRow>& prior_rows() {
  static const std::vector<PriorRow> rows = [] {
    std::vector<PriorRow> r = {
      {std::nullopt, "program", "<statements>"},
      {std::nullopt, "statements", "<statement>"},
      {std::nullopt, "statements", "<statement> <statements>"},
      {std::nullopt, "statement", "<imperative-model>"},
      {std::nullopt, "statement", "<runtime-error-handling>"},
      {std::nullopt, "statement", "<type-system>"},
      {std::nullopt, "statement", "<concurrent>"},
      {std::nullopt, "statement", "<react>"},

      // Imperative model
      {std::nullopt, "imperative-model", "<if-statement>"},
      {std::nullopt, "imperative-model", "<loop-statement>"},
      {std::nullopt, "imperative-model", "<jump-statement>"},
      {std::nullopt, "imperative-model", "<memory-management>"},
      {std::nullopt, "imperative-model", "<function-procedure>"},
      {std::nullopt, "imperative-model", "<arithmetic-expression>"},
      {std::nullopt, "imperative-model", "<logical-expression>"},
      // The assignment constraint owns its statement position; the defining
      // production below stays as glue because the For header embeds it.
      {C::AssignmentExpression, "imperative-model", "<assignment-expression>"},
      {C::IfBranch, "if-statement", "\"if\" \"(\" <expression> \")\" \"{\" <statements> \"}\""},
      {C::IfElseBranch, "if-statement",
       "\"if\" \"(\" <expression> \")\" \"{\" <statements> \"}\" \"else\" \"{\" <statements> \"}\""},
      {C::WhileLoop, "loop-statement",
       "\"While\" \"(\" <expression> \")\" \"{\" <statements> \"}\""},
      {C::ForLoop, "loop-statement",
       "\"For\" \"(\" <assignment-expression> \";\" <expression> \";\" <assignment-expression> \")\" "
       "\"{\" <statements> \"}\""},
      {C::BreakStatement, "jump-statement", "\"break\""},
      {C::ContinueStatement, "jump-statement", "\"continue\""},
      {C::FunctionProcedureCall, "function-procedure",
       "\"Call\" <identifier> \"(\" <arguments> \")\""},
      {C::FunctionProcedureDeclaration, "function-procedure",
       "\"Function\" <identifier> \"(\" <parameters> \")\" \"{\" <statements> \"}\""},
      {C::AllocateStatement, "memory-management", "\"allocate\" <type> <identifier>"},
      {C::AllocateStatement, "memory-management", "\"deallocate\" <identifier>"},
      {std::nullopt, "assignment-expression", "<identifier> \"=\" <expression>"},
      {std::nullopt, "arithmetic-expression",
       "<expression> <arithmetic-operator> <expression>"},
      {std::nullopt, "logical-expression", "<expression> <logical-operator> <expression>"},

      // Runtime error handling
      {std::nullopt, "runtime-error-handling", "<raise-stmt>"},
      {std::nullopt, "runtime-error-handling", "<resolve-stmt>"},
      {C::RaiseStatement, "raise-stmt", "\"raise\" \"(\" <expression> \")\""},
      {C::ResolveStatement, "resolve-stmt",
       "\"try\" \"{\" <statements> \"}\" \"catch\" \"(\" <identifier> \")\" \"{\" <statements> \"}\""},

      // Type system
      {std::nullopt, "type-system", "<data-type>"},
      {std::nullopt, "type-system", "<class-type>"},
      {std::nullopt, "type-system", "<domain-specified-type>"},
      {C::TemporalTypeDeclaration, "domain-specified-type", "\"time\""},
      {C::RegTypeDeclaration, "domain-specified-type", "\"reagent\""},
      {C::DeviceTypeDeclaration, "domain-specified-type", "\"device\""},
      {C::ContainerTypeDeclaration, "domain-specified-type", "\"container\""},
      {C::ScientificTypeDeclaration, "domain-specified-type", "<scientific-type>"},
      {C::ScientificTypeDeclaration, "scientific-type",
       "\"volume\" | \"temperature\" | \"length\" | \"energy\" | \"concentration\" | \"mass\" | "
       "\"speed\" | \"acceleration\" | \"density\" | \"frequency\" | \"force\" | \"acidity\" | "
       "\"flow-rate\" | \"pressure\" | \"voltage\""},
      {C::IntegerTypeDeclaration, "data-type", "\"int\""},
      {C::FloatingpointTypeDeclaration, "data-type", "\"float\""},
      {C::BooleanTypeDeclaration, "data-type", "\"bool\""},
      {C::StringTypeDeclaration, "data-type", "\"string\""},
      {C::SetTypeDeclaration, "data-type", "\"set\" \"<\" <type> \">\""},
      {C::DictTypeDeclaration, "data-type", "\"dict\" \"<\" <type> \",\" <type> \">\""},
      {C::VectorTypeDeclaration, "data-type", "\"vector\" \"<\" <type> \">\""},
      {C::ClassTypeDeclaration, "class-type", "\"class\" <identifier> \"{\" <class-body> \"}\""},
      {std::nullopt, "kind-type", "\"type\" <identifier> \"=\" <type>"},
      {std::nullopt, "class-body", "<class-members>"},
      {std::nullopt, "class-members", "<class-member>"},
      {std::nullopt, "class-members", "<class-member> <class-members>"},
      {std::nullopt, "class-member", "<variable-declaration>"},
      {std::nullopt, "class-member", "<method-declaration>"},
      {std::nullopt, "variable-declaration", "<assignment-expression>"},
      {std::nullopt, "method-declaration", "<function-procedure>"},

      // Concurrent programming
      {std::nullopt, "concurrent", "<data-parallel>"},
      {std::nullopt, "concurrent", "<message-passing>"},
      {C::ParallelFor, "data-parallel",
       "\"parallelFor\" \"(\" <parallel-range> \")\" \"{\" <statements> \"}\""},
      {C::ParallelMap, "data-parallel", "\"parallelMap\" \"(\" <collection> \",\" <function> \")\""},
      {C::ParallelFor, "parallel-range", "\"range\" \"(\" <expression> \",\" <expression> \")\""},
      {C::ParallelMap, "collection", "<identifier>"},
      {C::ParallelMap, "function", "<identifier>"},
      {C::SpawnProcess, "message-passing", "\"spawnProcess\" \"(\" <process-function> \")\""},
      {C::SendMessage, "message-passing",
       "\"sendMessage\" \"(\" <process-identifier> \",\" <message> \")\""},
      {C::ReceiveMessage, "message-passing", "\"receiveMessage\" \"(\" <message-type> \")\""},
      {C::SpawnProcess, "process-function", "<identifier>"},
      {C::SendMessage, "process-identifier", "<identifier>"},
      {C::SendMessage, "message", "<expression>"},
      {C::ReceiveMessage, "message-type", "<type>"},

      // React model
      {std::nullopt, "react", "<event-stmt>"},
      {std::nullopt, "react", "<response-stmt>"},
      {C::EventStatement, "event-stmt", "\"emit\" \"(\" <event> \")\""},
      {C::ResponseStatement, "response-stmt", "\"on\" \"(\" <event> \")\" \"{\" <statements> \"}\""},

      // Auxiliary definitions
      {std::nullopt, "type", "<data-type>"},
      {std::nullopt, "type", "<class-type>"},
      {std::nullopt, "type", "<kind-type>"},
      {std::nullopt, "type", "\"void\""},
      {std::nullopt, "parameters", "<empty>"},
      {std::nullopt, "parameters", "<parameter>"},
      {std::nullopt, "parameters", "<parameter> \",\" <parameters>"},
      {std::nullopt, "parameter", "<identifier> \":\" <type>"},
      {std::nullopt, "arguments", "<empty>"},
      {std::nullopt, "arguments", "<expression>"},
      {std::nullopt, "arguments", "<expression> \",\" <arguments>"},
      {C::AddArithmeticOperator, "arithmetic-operator", "\"+\""},
      {C::MinusArithmeticOperator, "arithmetic-operator", "\"-\""},
      {C::MultiArithmeticOperator, "arithmetic-operator", "\"*\""},
      {C::DevidArithmeticOperator, "arithmetic-operator", "\"/\""},
      {C::AndArithmeticOperator, "logical-operator", "\"&&\""},
      {C::OrArithmeticOperator, "logical-operator", "\"||\""},
      {C::NotArithmeticOperator, "logical-operator", "\"!\""},
      {std::nullopt, "identifier", "<letter> <identifier-rest>"},
      {std::nullopt, "identifier-rest", "<empty>"},
      {std::nullopt, "identifier-rest", "<letter> <identifier-rest>"},
      {std::nullopt, "identifier-rest", "<digit> <identifier-rest>"},
      {std::nullopt, "event", "<identifier>"},
      {std::nullopt, "empty", ""},
      // Expression forms; the set ties arithmetic and logical composition to
      // an identifier base case.
      {std::nullopt, "expression", "<identifier>"},
      {std::nullopt, "expression", "<arithmetic-expression>"},
      {std::nullopt, "expression", "<logical-expression>"},
    };
    std::string letters;
    for (char c = 'A'; c <= 'Z'; ++c) {
      if (!letters.empty()) letters += " | ";
      letters += std::string("\"") + c + "\"";
    }
    for (char c = 'a'; c <= 'z'; ++c) {
      letters += std::string(" | \"") + c + "\"";
    }
    r.push_back({std::nullopt, "letter", letters});
    std::string digits;
    for (char c = '0'; c <= '9'; ++c) {
      if (!digits.empty()) digits += " | ";
      digits += std::string("\"") + c + "\"";
    }
    r.push_back({std::nullopt, "digit", digits});
    return r;
  }();
  return rows;
}

std::vector<Symbol> parse_rhs(std::string_view rhs) {
  std::vector<Symbol> symbols;
  std::size_t i = 0;
  while (i < rhs.size()) {
    char c = rhs[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '<') {
      std::size_t close = rhs.find('>', i);
      if (close == std::string_view::npos) fail(ErrorKind::Parse, "unterminated nonterminal in BNF");
      symbols.push_back({SymbolKind::Nonterminal, std::string(rhs.substr(i + 1, close - i - 1))});
      i = close + 1;
    } else if (c == '"') {
      std::size_t close = rhs.find('"', i + 1);
      if (close == std::string_view::npos) fail(ErrorKind::Parse, "unterminated terminal in BNF");
      symbols.push_back({SymbolKind::Terminal, std::string(rhs.substr(i + 1, close - i - 1))});
      i = close + 1;
    } else {
      fail(ErrorKind::Parse, "unexpected character in BNF rhs: " + std::string(rhs));
    }
  }
  return symbols;
}

// Split alternatives on '|' outside quotes ("||" stays intact).
std::vector<std::string> split_alternatives(std::string_view rhs) {
  std::vector<std::string> alts;
  std::string current;
  bool quoted = false;
  for (char c : rhs) {
    if (c == '"') quoted = !quoted;
    if (c == '|' && !quoted) {
      alts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  alts.push_back(current);
  return alts;
}

std::map<std::string, ConstraintId> build_ownership_index() {
  std::map<std::string, ConstraintId> index;
  for (const PriorRow& row : prior_rows()) {
    if (!row.owner) continue;
    for (const std::string& alt : split_alternatives(row.rhs)) {
      Production p{row.lhs, parse_rhs(alt)};
      index[production_key(p)] = *row.owner;
    }
  }
  return index;
}

const std::map<std::string, ConstraintId>& ownership_index() {
  static const std::map<std::string, ConstraintId> index = build_ownership_index();
  return index;
}

}  // namespace

std::string production_key(const Production& p) {
  std::string key = "<" + p.lhs + "> ::=";
  for (const Symbol& s : p.rhs) {
    key += ' ';
    if (s.kind == SymbolKind::Nonterminal) {
      key += '<' + s.text + '>';
    } else {
      key += '"' + s.text + '"';
    }
  }
  return key;
}

Grammar::Grammar(std::string start, std::vector<Production> productions)
    : start_(std::move(start)), productions_(std::move(productions)) {
  std::set<std::string> lhs_set;
  for (const Production& p : productions_) lhs_set.insert(p.lhs);
  if (!lhs_set.count(start_)) fail(ErrorKind::Invalid, "grammar start symbol has no production");
}

std::set<std::string> Grammar::nonterminals() const {
  std::set<std::string> nts;
  for (const Production& p : productions_) {
    nts.insert(p.lhs);
    for (const Symbol& s : p.rhs)
      if (s.kind == SymbolKind::Nonterminal) nts.insert(s.text);
  }
  return nts;
}

std::set<std::string> Grammar::terminals() const {
  std::set<std::string> ts;
  for (const Production& p : productions_)
    for (const Symbol& s : p.rhs)
      if (s.kind == SymbolKind::Terminal) ts.insert(s.text);
  return ts;
}

bool Grammar::contains(const Production& target) const {
  return std::find(productions_.begin(), productions_.end(), target) != productions_.end();
}

bool Grammar::is_well_formed(std::string* reason) const {
  auto explain = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };

  std::set<std::string> defined;
  for (const Production& p : productions_) defined.insert(p.lhs);
  for (const Production& p : productions_) {
    for (const Symbol& s : p.rhs) {
      if (s.kind == SymbolKind::Nonterminal && !defined.count(s.text))
        return explain("undefined nonterminal <" + s.text + ">");
    }
  }

  // Productive: derives some terminal string.
  std::set<std::string> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : productions_) {
      if (productive.count(p.lhs)) continue;
      bool all = true;
      for (const Symbol& s : p.rhs)
        if (s.kind == SymbolKind::Nonterminal && !productive.count(s.text)) all = false;
      if (all) {
        productive.insert(p.lhs);
        changed = true;
      }
    }
  }
  for (const std::string& nt : defined)
    if (!productive.count(nt)) return explain("unproductive nonterminal <" + nt + ">");

  // Reachable from start.
  std::set<std::string> reachable = {start_};
  changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : productions_) {
      if (!reachable.count(p.lhs)) continue;
      for (const Symbol& s : p.rhs) {
        if (s.kind == SymbolKind::Nonterminal && reachable.insert(s.text).second) changed = true;
      }
    }
  }
  for (const std::string& nt : defined)
    if (!reachable.count(nt)) return explain("unreachable nonterminal <" + nt + ">");
  return true;
}

std::string Grammar::to_bnf() const {
  // Alternatives grouped per lhs in first-occurrence order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const Production*>> groups;
  for (const Production& p : productions_) {
    if (!groups.count(p.lhs)) order.push_back(p.lhs);
    groups[p.lhs].push_back(&p);
  }
  std::string out;
  for (const std::string& lhs : order) {
    out += '<' + lhs + "> ::= ";
    bool first = true;
    for (const Production* p : groups[lhs]) {
      if (!first) out += " | ";
      first = false;
      if (p->rhs.empty()) {
        out += "\"\"";  // epsilon
        continue;
      }
      bool first_sym = true;
      for (const Symbol& s : p->rhs) {
        if (!first_sym) out += ' ';
        first_sym = false;
        if (s.kind == SymbolKind::Nonterminal) {
          out += '<' + s.text + '>';
        } else {
          out += '"' + s.text + '"';
        }
      }
    }
    out += '\n';
  }
  return out;
}

Grammar Grammar::from_bnf(std::string_view text) {
  std::vector<Production> productions;
  std::string pending_lhs;
  for (std::string line : split_on(std::string(text), '\n')) {
    // Strip // comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i + 1 < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (!quoted && line[i] == '/' && line[i + 1] == '/') {
        line = line.substr(0, i);
        break;
      }
    }
    std::string body = trim(line);
    if (body.empty() || starts_with(body, "/*") || starts_with(body, "#")) continue;

    std::string rhs_text;
    std::size_t sep = body.find("::=");
    if (sep != std::string::npos) {
      std::string lhs = trim(body.substr(0, sep));
      if (lhs.size() < 3 || lhs.front() != '<' || lhs.back() != '>')
        fail(ErrorKind::Parse, "BNF lhs must be <name>: " + body);
      pending_lhs = lhs.substr(1, lhs.size() - 2);
      rhs_text = trim(body.substr(sep + 3));
    } else if (starts_with(body, "|")) {
      rhs_text = trim(body.substr(1));
    } else {
      fail(ErrorKind::Parse, "BNF line is neither a rule nor a continuation: " + body);
    }
    if (pending_lhs.empty()) fail(ErrorKind::Parse, "BNF continuation before any rule");
    for (const std::string& alt : split_alternatives(rhs_text)) {
      std::string a = trim(alt);
      if (a.empty()) continue;
      std::vector<Symbol> rhs = (a == "\"\"") ? std::vector<Symbol>{} : parse_rhs(a);
      productions.push_back({pending_lhs, std::move(rhs)});
    }
  }
  if (productions.empty()) fail(ErrorKind::Parse, "BNF text contains no productions");
  return Grammar("program", std::move(productions));
}

const Grammar& load_prior() {
  static const Grammar prior = [] {
    std::vector<Production> productions;
    for (const PriorRow& row : prior_rows()) {
      for (const std::string& alt : split_alternatives(row.rhs)) {
        std::string a = trim(alt);
        std::vector<Symbol> rhs = a.empty() ? std::vector<Symbol>{} : parse_rhs(a);
        productions.push_back({row.lhs, std::move(rhs)});
      }
    }
    Grammar g("program", std::move(productions));
    std::string reason;
    if (!g.is_well_formed(&reason)) fail(ErrorKind::Internal, "prior grammar ill-formed: " + reason);
    return g;
  }();
  return prior;
}

const std::vector<Production>& owned_productions(ConstraintId id) {
  static const std::map<ConstraintId, std::vector<Production>> table = [] {
    std::map<ConstraintId, std::vector<Production>> t;
    for (ConstraintId c : all_constraints()) t[c];  // every id present
    for (const PriorRow& row : prior_rows()) {
      if (!row.owner) continue;
      for (const std::string& alt : split_alternatives(row.rhs)) {
        t[*row.owner].push_back({row.lhs, parse_rhs(alt)});
      }
    }
    return t;
  }();
  auto it = table.find(id);
  if (it == table.end()) fail(ErrorKind::Invalid, "unknown constraint id");
  return it->second;
}

Grammar prune(const Grammar& grammar, const std::set<ConstraintId>& inactive_in) {
  // Dependency closure: a construct whose every enabler is gone goes too.
  std::set<ConstraintId> inactive = inactive_in;
  bool grew = true;
  while (grew) {
    grew = false;
    for (ConstraintId c : all_constraints()) {
      if (inactive.count(c)) continue;
      for (const auto& group : constraint_dependencies(c)) {
        bool all_gone = true;
        for (ConstraintId dep : group)
          if (!inactive.count(dep)) all_gone = false;
        if (all_gone) {
          inactive.insert(c);
          grew = true;
        }
      }
    }
  }

  std::set<std::string> removed_keys;
  for (ConstraintId c : inactive)
    for (const Production& p : owned_productions(c)) removed_keys.insert(production_key(p));

  std::vector<Production> kept;
  for (const Production& p : grammar.productions())
    if (!removed_keys.count(production_key(p))) kept.push_back(p);

  // Iterate productivity and reachability cleanup to a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;

    std::set<std::string> productive;
    bool grow = true;
    while (grow) {
      grow = false;
      for (const Production& p : kept) {
        if (productive.count(p.lhs)) continue;
        bool all = true;
        for (const Symbol& s : p.rhs)
          if (s.kind == SymbolKind::Nonterminal && !productive.count(s.text)) all = false;
        if (all) {
          productive.insert(p.lhs);
          grow = true;
        }
      }
    }
    if (!productive.count(grammar.start())) {
      fail(ErrorKind::State,
           "prune would leave the start symbol unproductive; at least one statement form must stay");
    }

    std::vector<Production> next;
    for (const Production& p : kept) {
      bool ok = productive.count(p.lhs) > 0;
      for (const Symbol& s : p.rhs)
        if (s.kind == SymbolKind::Nonterminal && !productive.count(s.text)) ok = false;
      if (ok) next.push_back(p);
      else changed = true;
    }
    kept = std::move(next);

    std::set<std::string> reachable = {grammar.start()};
    bool grow2 = true;
    while (grow2) {
      grow2 = false;
      for (const Production& p : kept) {
        if (!reachable.count(p.lhs)) continue;
        for (const Symbol& s : p.rhs)
          if (s.kind == SymbolKind::Nonterminal && reachable.insert(s.text).second) grow2 = true;
      }
    }
    std::vector<Production> next2;
    for (const Production& p : kept) {
      if (reachable.count(p.lhs)) next2.push_back(p);
      else changed = true;
    }
    kept = std::move(next2);
  }

  Grammar result(grammar.start(), std::move(kept));
  std::string reason;
  if (!result.is_well_formed(&reason))
    fail(ErrorKind::Internal, "pruned grammar ill-formed: " + reason);
  return result;
}

bool accepts_construct(const Grammar& grammar, ConstraintId id) {
  const std::vector<Production>& owned = owned_productions(id);
  if (owned.empty()) return false;
  for (const Production& p : owned)
    if (!grammar.contains(p)) return false;
  for (const auto& group : constraint_dependencies(id)) {
    bool any = false;
    for (ConstraintId dep : group)
      if (accepts_construct(grammar, dep)) any = true;
    if (!any) return false;
  }
  return true;
}

}  // namespace protodsl
