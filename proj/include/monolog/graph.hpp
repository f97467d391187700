#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "monolog/conllu.hpp"

namespace monolog {

enum class Component { Subject, Verb, Object, Other };
std::string_view component_name(Component c);

/// Sentence representation graph: a virtual root pointing at the clause
/// components (subjects, predicates, objects) and edges from each content word
/// to its modifiers. Vertices are indexed by token id; index 0 is the root.
/// Punctuation tokens are not vertices.
class SentenceGraph {
 public:
  struct Vertex {
    bool present = false;
    Component component = Component::Other;
    int parent = -1;             // 0 for components; -1 for absent vertices
    std::vector<int> modifiers;  // surface order
  };

  const std::vector<UDToken>& tokens() const { return tokens_; }
  const UDToken& token(int id) const { return tokens_.at(id - 1); }
  const Vertex& vertex(int id) const { return vertices_.at(id); }
  std::size_t token_count() const { return tokens_.size(); }

  /// Children of the virtual root, surface order.
  const std::vector<int>& components() const { return vertices_[0].modifiers; }
  const std::vector<int>& modifiers(int id) const { return vertices_.at(id).modifiers; }
  bool present(int id) const { return id > 0 && id < static_cast<int>(vertices_.size()) && vertices_[id].present; }

  /// Content words: components and every vertex that has modifiers.
  bool is_content(int id) const;
  /// Vertices reached through a content-to-modifier edge.
  bool is_modifier(int id) const;
  std::vector<int> content_vertices() const;
  std::vector<int> modifier_vertices() const;

  /// Transitive modifiers of `id` (not including it).
  std::vector<int> descendants(int id) const;
  /// Subject / object components attached to the given predicate vertex.
  std::vector<int> subjects_of(int verb) const;
  std::vector<int> objects_of(int verb) const;
  std::vector<int> verbs() const;

  friend SentenceGraph build_graph(const std::vector<UDToken>& tokens);

 private:
  std::vector<UDToken> tokens_;
  std::vector<Vertex> vertices_;
};

SentenceGraph build_graph(const std::vector<UDToken>& tokens);

using WordSimilarity = std::function<double(const UDToken&, const UDToken&)>;

struct AlignedPair {
  int premise = 0;
  int hypothesis = 0;
  double score = 0.0;
};

/// Partial one-to-one matching between premise and hypothesis vertices.
class AlignmentSet {
 public:
  AlignmentSet() = default;
  explicit AlignmentSet(std::vector<AlignedPair> pairs);

  const std::vector<AlignedPair>& pairs() const { return pairs_; }
  /// Partner id, or 0 when unaligned.
  int partner_of_premise(int id) const;
  int partner_of_hypothesis(int id) const;
  double score_of_premise(int id) const;
  bool empty() const { return pairs_.empty(); }
  std::size_t size() const { return pairs_.size(); }

 private:
  std::vector<AlignedPair> pairs_;  // sorted by premise id
};

constexpr double kDefaultAlignThreshold = 0.1;

/// Three-round bidirectional alignment: component-level Cartesian product
/// with recursive child pairing keeping per-premise maxima, then one partner
/// per hypothesis vertex, then one partner per premise vertex. Pairs below
/// `threshold` never align. Ties go to the pair with the smaller token-index
/// distance.
AlignmentSet align(const SentenceGraph& gp, const SentenceGraph& gh, const WordSimilarity& wsim,
                   double threshold = kDefaultAlignThreshold);

enum class Directive { None, Lexical, PhrasalDelete, PhrasalInsert, SyntacticVariation };
std::string_view directive_name(Directive d);

struct Recommendation {
  std::vector<Directive> premise;     // by token id, index 0 unused
  std::vector<Directive> hypothesis;  // by token id, index 0 unused

  bool wants(Directive d) const;
  bool all_none() const;
};

/// Unaligned premise vertex: delete. Unaligned hypothesis vertex: insert.
/// Aligned with a different lemma: lexical, unless more differences sit
/// beneath it, in which case the whole subtree becomes a syntactic variation.
/// A vertex whose aligned modifiers changed relation or parent is also marked
/// as a syntactic variation.
Recommendation recommend(const SentenceGraph& gp, const SentenceGraph& gh, const AlignmentSet& a);

}  // namespace monolog
