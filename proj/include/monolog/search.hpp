#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monolog/chunker.hpp"
#include "monolog/contradiction.hpp"
#include "monolog/generation.hpp"
#include "monolog/scoring.hpp"

namespace monolog {

enum class Label { Entail, Contradict, Neutral };
std::string_view label_name(Label l);

struct SearchConfig {
  int beam_width = 10;  // 0 keeps every child (unbounded)
  int max_depth = 7;
  bool synvar = true;        // syntactic-variation generator
  bool monotonicity = true;  // lexical and phrasal generators
  bool use_controller = true;
  bool strict = false;       // scorer failures become errors instead of warnings
};

/// Read-only resources shared by every search.
struct Engine {
  const KnowledgeBase& kb;
  const QuantifierScale& scale;
  const QuantifierLexicon& lex;
  const Scorer& scorer;
  const Scorer* fallback = nullptr;  // used when `scorer` fails; offline when null
};

/// Everything about the hypothesis the generators need, computed once.
struct Target {
  Sentence sentence;
  SentenceGraph graph;
  std::vector<Chunk> chunks;
  LemmaSet lemmas;
  ModifierMap modifiers;
  std::string key;

  static Target of(const Sentence& hypothesis);
};

/// Lowercased lemma sequence without punctuation; the goal and dedup key.
std::string state_key(const std::vector<UDToken>& tokens);
bool is_goal(const std::vector<UDToken>& s, const std::vector<UDToken>& h);

struct TraceStep {
  Edit edit;
  std::string sentence;  // surface text after the edit
};

struct InferenceResult {
  Label label = Label::Neutral;
  std::vector<TraceStep> trace;
  std::vector<std::string> warnings;
  std::size_t expanded = 0;
  std::size_t generated = 0;
  std::optional<ContradictionReport> contradiction;

  std::string render() const;
};

/// Scorer access with graceful degradation: the first failure of the primary
/// backend is recorded as a warning and the fallback answers from then on,
/// unless strict mode rethrows.
class ScoringSession {
 public:
  ScoringSession(const Engine& engine, bool strict);
  ScoringSession(const ScoringSession&) = delete;
  ScoringSession& operator=(const ScoringSession&) = delete;

  std::vector<double> distances(const std::vector<std::vector<UDToken>>& states, const std::vector<UDToken>& h);
  WordSimilarity word_similarity();
  /// The paraphrase-backed generator; failures leave the candidate set empty.
  std::vector<GeneratedSentence> synvar(const PolarizedTree& pt, const Target& target, const GenerationContext& gen,
                                        int depth);
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const Scorer& current() const;
  void degrade(const std::string& what, const std::exception& e);

  const Engine& engine_;
  bool strict_;
  bool degraded_ = false;
  const Scorer* fallback_;
  std::unique_ptr<Scorer> owned_fallback_;
  std::vector<std::string> warnings_;
};

/// All successors of one state: the controller picks generators from the
/// alignment; when they produce nothing every enabled generator runs.
std::vector<GeneratedSentence> expand(const PolarizedTree& state, int depth, const Target& target,
                                      const SearchConfig& cfg, const Engine& engine, ScoringSession& session);

InferenceResult classify(const Sentence& premise, const Sentence& hypothesis, const SearchConfig& cfg,
                         const Engine& engine);

/// Applies the edits in order; used to check that a trace reproduces the hypothesis.
std::vector<UDToken> replay(const std::vector<UDToken>& premise, const std::vector<TraceStep>& trace);

}  // namespace monolog
