#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monolog/conllu.hpp"

namespace monolog {

enum class Polarity { Up, Down, Flat };

/// How an operator transforms the polarity of the material it scopes over.
enum class Effect { Preserve, Flip, Flatten };

/// Flat is absorbing; Flip swaps Up and Down.
Polarity apply(Polarity p, Effect e);
Effect compose(Effect outer, Effect inner);

/// "↑", "↓" or "=".
std::string_view mark_symbol(Polarity p);
std::string_view polarity_name(Polarity p);

struct QuantifierEntry {
  Effect restrictor = Effect::Preserve;
  Effect scope = Effect::Preserve;
};

/// Monotonicity profile of determiners, quantified pronouns and negators.
/// Two-word numeric quantifiers are keyed "at-most" and "at-least".
class QuantifierLexicon {
 public:
  static QuantifierLexicon standard();

  void set(std::string lemma, QuantifierEntry entry);
  /// Unknown lemmas yield nullopt; callers treat them as (Preserve, Preserve).
  std::optional<QuantifierEntry> find(std::string_view lemma) const;
  bool contains(std::string_view lemma) const { return find(lemma).has_value(); }
  bool is_negator(std::string_view lemma) const;
  const std::map<std::string, QuantifierEntry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, QuantifierEntry, std::less<>> entries_;
};

/// Binarized dependency tree stored as an arena. Each inner node joins a head
/// constituent with one dependent constituent and is labelled with the
/// dependent's relation; a head takes its dependents nearest-first.
class BinaryDepTree {
 public:
  struct Node {
    bool leaf = true;
    int token = 0;          // leaf: token id; inner: id of the constituent's head token
    std::string relation;   // inner only
    int left = -1;
    int right = -1;
    bool head_left = true;  // inner only: which child holds the head
  };

  BinaryDepTree() = default;

  const std::vector<UDToken>& tokens() const { return tokens_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  int root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }

  /// Node index of the leaf for a token id; LookupError when absent.
  int leaf_of(int token_id) const;
  /// Token ids in in-order leaf traversal.
  std::vector<int> leaf_order() const;
  /// Bracketed rendering, e.g. "(nsubj dogs run)".
  std::string to_string() const;

 private:
  friend BinaryDepTree binarize(const std::vector<UDToken>& tokens);
  std::vector<UDToken> tokens_;
  std::vector<Node> nodes_;
  std::vector<int> leaf_index_;  // by token id
  int root_ = -1;
};

/// Throws StructuralError on zero or several roots and on crossing arcs
/// (non-projective input cannot keep surface order in a binary tree).
BinaryDepTree binarize(const std::vector<UDToken>& tokens);

class PolarizedTree {
 public:
  PolarizedTree() = default;
  PolarizedTree(BinaryDepTree tree, std::vector<Polarity> marks)
      : tree_(std::move(tree)), marks_(std::move(marks)) {}

  const BinaryDepTree& tree() const { return tree_; }
  const std::vector<UDToken>& tokens() const { return tree_.tokens(); }
  Polarity mark(int node) const { return marks_.at(node); }
  const std::vector<Polarity>& marks() const { return marks_; }

  /// Mark of a token's leaf; LookupError for an unknown id.
  Polarity polarity_of(int token_id) const;
  /// "Every^↑ healthy^↓ person^↓ ..." in surface order.
  std::string render() const;

 private:
  BinaryDepTree tree_;
  std::vector<Polarity> marks_;
};

PolarizedTree polarize(const BinaryDepTree& tree, const QuantifierLexicon& lex);

inline Polarity polarity_of(const PolarizedTree& pt, int token_id) { return pt.polarity_of(token_id); }

/// binarize + polarize.
PolarizedTree annotate(const std::vector<UDToken>& tokens, const QuantifierLexicon& lex);

/// The determiner-like operator governing a nominal head: the lexicon key that
/// applies ("every", "no", "at-most", ...) or empty when none.
std::string quantifier_of(const std::vector<UDToken>& tokens, int head_id, const QuantifierLexicon& lex);

/// Ids of negation markers ("not", "never", "n't") attached to a head.
std::vector<int> negations_of(const std::vector<UDToken>& tokens, int head_id, const QuantifierLexicon& lex);

bool is_subject_relation(std::string_view deprel);

}  // namespace monolog
