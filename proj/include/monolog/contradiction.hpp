#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "monolog/conllu.hpp"
#include "monolog/graph.hpp"
#include "monolog/kb.hpp"
#include "monolog/polarity.hpp"

namespace monolog {

enum class SignatureKind {
  QuantifierNegation,
  VerbNegation,
  NounNegation,
  ActionContradiction,
  DirectionContradiction,
};
std::string_view signature_kind_name(SignatureKind k);

struct Signature {
  SignatureKind kind = SignatureKind::VerbNegation;
  int premise_site = 0;     // vertex id in the premise
  int hypothesis_site = 0;  // vertex id in the hypothesis
  int clause = 0;           // premise predicate the signature belongs to
  bool cancelled = false;
};

struct ContradictionContext {
  const KnowledgeBase& kb;
  const QuantifierScale& scale;
  const QuantifierLexicon& lex;
  WordSimilarity wsim;
};

/// Lemmas that turn a subject into a negative one.
bool is_negative_quantifier(std::string_view lemma);

std::vector<Signature> detect_signatures(const SentenceGraph& gp, const SentenceGraph& gh, const AlignmentSet& a,
                                         const ContradictionContext& ctx);

/// Negation-like signatures of one clause cancel in pairs, in detection order;
/// direction signatures never cancel. Returns the survivors; `signatures` gets
/// its cancelled flags updated.
std::vector<Signature> cancel(std::vector<Signature>& signatures);

/// Every difference outside the signature sites must be licensed by the
/// premise's marks: deletions at upward vertices, insertions under downward
/// ones, word changes along the knowledge base or quantifier scale.
/// Violations are appended to `why` when given.
bool verify_meaning_preserved(const SentenceGraph& gp, const SentenceGraph& gh, const AlignmentSet& a,
                              const PolarizedTree& pt, const std::vector<Signature>& signatures,
                              const ContradictionContext& ctx, std::vector<std::string>* why = nullptr);

struct ContradictionReport {
  std::vector<Signature> signatures;  // as detected, with cancellation flags
  std::vector<Signature> surviving;
  bool meaning_preserved = false;
  std::vector<std::string> violations;
  bool contradiction = false;

  std::string render(const std::vector<UDToken>& premise, const std::vector<UDToken>& hypothesis) const;
};

ContradictionReport analyze_contradiction(const std::vector<UDToken>& premise, const std::vector<UDToken>& hypothesis,
                                          const ContradictionContext& ctx);

bool is_contradiction(const std::vector<UDToken>& premise, const std::vector<UDToken>& hypothesis,
                      const ContradictionContext& ctx);

}  // namespace monolog
