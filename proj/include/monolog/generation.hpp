#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "monolog/chunker.hpp"
#include "monolog/conllu.hpp"
#include "monolog/graph.hpp"
#include "monolog/kb.hpp"
#include "monolog/polarity.hpp"
#include "monolog/scoring.hpp"

namespace monolog {

enum class EditKind { LexSub, PhrasalDel, PhrasalIns, SynVar };
std::string_view edit_kind_name(EditKind k);

/// A local rewrite of a token list: tokens [first, last] are removed (none
/// when last < first) and `insert` goes in their place. Inserted heads use
/// -(k+1) for the k-th inserted token and plain ids for parent tokens.
/// Parent tokens whose head was removed are reattached to inserted token
/// `reattach_to`.
struct Splice {
  int first = 1;
  int last = 0;
  std::vector<UDToken> insert;
  int reattach_to = -1;
};

/// Applies a splice and renumbers. Throws StructuralError on a dangling head,
/// a cycle or a lost root.
std::vector<UDToken> apply_splice(const std::vector<UDToken>& tokens, const Splice& splice);

struct Edit {
  EditKind kind = EditKind::LexSub;
  Splice splice;
  std::vector<int> site;     // affected parent token ids
  std::string removed;       // surface text taken out
  std::string replacement;   // surface text put in

  std::string describe() const;
};

struct GeneratedSentence {
  Sentence sentence;
  PolarizedTree tree;
  Edit edit;
  int depth = 0;
};

struct ModifierEntry {
  std::string relation;
  std::string head_lemma;
  std::string head_form;
  std::string text;              // surface text of the modifier subtree
  std::vector<UDToken> tokens;   // subtree, heads encoded as in Splice (root head 0)
  bool before_head = false;
};

/// Modifier dictionary harvested from the hypothesis, keyed by relation.
using ModifierMap = std::map<std::string, std::vector<ModifierEntry>>;

ModifierMap build_modifier_map(const std::vector<UDToken>& hypothesis);

/// Relations whose dependents count as droppable/insertable modifiers.
bool is_modifier_relation(std::string_view deprel);

struct GenerationContext {
  const KnowledgeBase& kb;
  const QuantifierScale& scale;
  const QuantifierLexicon& lex;
};

/// Word replacement on nouns, verbs, numbers and quantifiers: upward marks
/// take hypernyms and synonyms, downward marks hyponyms and synonyms, flat
/// marks synonyms only. Candidates must occur among `hypothesis_lemmas`.
std::vector<GeneratedSentence> lexical_infer(const PolarizedTree& pt, const GenerationContext& ctx,
                                             const LemmaSet& hypothesis_lemmas, int parent_depth = 0);

/// Deletes modifier subtrees under upward heads and inserts dictionary
/// modifiers under downward heads. Flat heads are left alone.
std::vector<GeneratedSentence> phrasal_infer(const PolarizedTree& pt, const ModifierMap& mm,
                                             const GenerationContext& ctx, int parent_depth = 0);

constexpr double kParaphraseThreshold = 0.85;

/// Scores every (premise chunk, hypothesis chunk) pair and substitutes the
/// hypothesis chunk wherever the paraphrase probability exceeds 0.85. Output
/// order follows (premise chunk index, hypothesis chunk index). Scorer
/// failures propagate as ScoringError.
std::vector<GeneratedSentence> syntactic_variation_infer(const PolarizedTree& pt, const Sentence& hypothesis,
                                                         const std::vector<Chunk>& hypothesis_chunks,
                                                         const Scorer& para, const GenerationContext& ctx,
                                                         int parent_depth = 0);

/// Re-inflects `form` (an inflection of `lemma`) for `new_lemma`: swims/swim -> moves.
std::string reinflect(std::string_view form, std::string_view lemma, std::string_view new_lemma);

/// Lowercased lemmas of the non-punctuation tokens.
LemmaSet lemma_set(const std::vector<UDToken>& tokens);

}  // namespace monolog
