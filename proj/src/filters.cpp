#include "filters.hpp"

#include <algorithm>
#include <map>

namespace protodsl {

namespace {

// The formulas range over the protocol's sentences; similarity terms that
// need an opcode contribute 0 for sentences without one.
constexpr std::size_t kPairSearchCap = 200;

double exists_tag(const ProtocolFeatures& f, Tag t) {
  for (const SentenceFeatures& s : f)
    if (s.has(t)) return 1.0;
  return 0.0;
}

template <typename Fn>
double max_over(const ProtocolFeatures& f, Fn&& fn) {
  double best = 0.0;
  for (const SentenceFeatures& s : f) best = std::max(best, fn(s));
  return best;
}

double opc_sim(const SentenceFeatures& s, const SimilarityProvider& sim, const char* target) {
  if (!s.opcode) return 0.0;
  return sim.word(*s.opcode, target);
}

double noun_sim(const SentenceFeatures& s, const SimilarityProvider& sim, const char* target) {
  double best = 0.0;
  for (const std::string& lemma : s.noun_lemmas) best = std::max(best, sim.word(lemma, target));
  return best;
}

double score_parallel_map(const ProtocolFeatures& f, const SimilarityProvider& sim) {
  const std::size_t n = std::min(f.size(), kPairSearchCap);
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const SentenceFeatures& a = f[i];
    if (a.chem_lemmas.empty() || a.has(Tag::Pron)) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      const SentenceFeatures& b = f[j];
      if (b.has(Tag::Pron)) continue;
      bool shared_chem = false;
      for (const std::string& c : a.chem_lemmas) {
        if (std::find(b.chem_lemmas.begin(), b.chem_lemmas.end(), c) != b.chem_lemmas.end()) {
          shared_chem = true;
          break;
        }
      }
      if (!shared_chem) continue;
      best = std::max(best, 1.0 - sim.sentence(a.text, b.text));
      if (best >= 1.0) return best;
    }
  }
  return best;
}

double score_class_type(const ProtocolFeatures& f, int epsilon) {
  // 1 iff some chem lemma occurs in at least epsilon sentences.
  std::map<std::string, int> counts;
  for (const SentenceFeatures& s : f) {
    std::map<std::string, bool> seen;
    for (const std::string& c : s.chem_lemmas) {
      if (!seen[c]) {
        seen[c] = true;
        if (++counts[c] >= epsilon) return 1.0;
      }
    }
  }
  return 0.0;
}

}  // namespace

double score(ConstraintId k, const ProtocolFeatures& f, const FilterConfig& cfg,
             const SimilarityProvider& sim) {
  cfg.validate();
  using C = ConstraintId;
  switch (k) {
    case C::IntegerTypeDeclaration:
      return exists_tag(f, Tag::Int);
    case C::FloatingpointTypeDeclaration:
      return exists_tag(f, Tag::Float);
    case C::BooleanTypeDeclaration:
      return std::max(exists_tag(f, Tag::True), exists_tag(f, Tag::False));
    case C::StringTypeDeclaration:
      return exists_tag(f, Tag::Str);
    case C::VectorTypeDeclaration:
      return max_over(f, [&](const SentenceFeatures& s) { return noun_sim(s, sim, "vector"); });
    case C::DictTypeDeclaration:
      return max_over(f, [&](const SentenceFeatures& s) { return noun_sim(s, sim, "dictionary"); });
    case C::SetTypeDeclaration:
      return max_over(f, [&](const SentenceFeatures& s) { return noun_sim(s, sim, "set"); });
    case C::TemporalTypeDeclaration:
      return exists_tag(f, Tag::Time);
    case C::RegTypeDeclaration:
      return exists_tag(f, Tag::Chem);
    case C::DeviceTypeDeclaration:
      return 1.0;
    case C::ContainerTypeDeclaration:
      return exists_tag(f, Tag::Container);
    case C::ScientificTypeDeclaration:
      return 1.0;
    case C::ForLoop:
      return max_over(f, [&](const SentenceFeatures& s) { return opc_sim(s, sim, "repeat"); });
    case C::WhileLoop:
      return max_over(f, [&](const SentenceFeatures& s) {
        return opc_sim(s, sim, "repeat") * (s.has(Tag::Int) ? 0.0 : 1.0);
      });
    case C::IfBranch:
      return exists_tag(f, Tag::If);
    case C::IfElseBranch:
      return max_over(f, [&](const SentenceFeatures& s) {
        return (s.has(Tag::If) ? 1.0 : 0.0) * (s.has(Tag::Else) ? 1.0 : 0.0);
      });
    case C::FunctionProcedureCall:
    case C::FunctionProcedureDeclaration:
      return max_over(f, [&](const SentenceFeatures& s) { return opc_sim(s, sim, "call"); });
    case C::BreakStatement:
      return score(C::WhileLoop, f, cfg, sim) * score(C::IfBranch, f, cfg, sim);
    case C::ContinueStatement:
      return 0.0;
    case C::AllocateStatement:
      return std::max(exists_tag(f, Tag::Chem), exists_tag(f, Tag::Container));
    case C::AddArithmeticOperator:
      return exists_tag(f, Tag::Add);
    case C::MinusArithmeticOperator:
      return exists_tag(f, Tag::Minus);
    case C::MultiArithmeticOperator:
      return exists_tag(f, Tag::Multiply);
    case C::DevidArithmeticOperator:
      return exists_tag(f, Tag::Devide);
    case C::AndArithmeticOperator:
      return exists_tag(f, Tag::And);
    case C::OrArithmeticOperator:
      return exists_tag(f, Tag::Or);
    case C::NotArithmeticOperator:
      return exists_tag(f, Tag::Not);
    case C::AssignmentExpression:
      return exists_tag(f, Tag::Equal);
    case C::RaiseStatement:
      return max_over(f, [&](const SentenceFeatures& s) { return noun_sim(s, sim, "error"); });
    case C::ResolveStatement:
      return max_over(f, [&](const SentenceFeatures& s) {
        return opc_sim(s, sim, "resolve") * noun_sim(s, sim, "error");
      });
    case C::ClassTypeDeclaration:
      return score_class_type(f, cfg.epsilon);
    case C::SpawnProcess:
      return exists_tag(f, Tag::Persons);
    case C::SendMessage:
    case C::ReceiveMessage:
      return score(C::SpawnProcess, f, cfg, sim) *
             max_over(f, [&](const SentenceFeatures& s) { return opc_sim(s, sim, "say"); });
    case C::EventStatement:
    case C::ResponseStatement:
      return exists_tag(f, Tag::When);
    case C::ParallelFor:
      return max_over(f, [&](const SentenceFeatures& s) {
        return s.max_num_run() >= cfg.epsilon ? 1.0 : 0.0;
      });
    case C::ParallelMap:
      return score_parallel_map(f, sim);
  }
  fail(ErrorKind::Invalid, "unknown constraint id in score()");
}

ScoreMap score_all(const ProtocolFeatures& f, const FilterConfig& cfg,
                   const SimilarityProvider& sim) {
  ScoreMap scores;
  for (ConstraintId k : all_constraints()) scores[k] = score(k, f, cfg, sim);
  return scores;
}

}  // namespace protodsl
