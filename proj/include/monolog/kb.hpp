#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace monolog {

enum class LexicalRelation { Hypernym, Hyponym, Synonym, Antonym };

enum class Provenance { WordNetDump, ConceptNetDump, Handcrafted };

std::string_view relation_name(LexicalRelation r);
/// Accepts "hypernym", "hyponym", "synonym", "antonym" in any case.
bool parse_relation(std::string_view text, LexicalRelation& out);
std::string_view provenance_name(Provenance p);

using LemmaSet = std::set<std::string>;

/// POS-qualified lexical relation store. Hypernym/hyponym entries are kept as
/// mutual inverses and synonym/antonym entries symmetric, whatever order they
/// were inserted in.
class KnowledgeBase {
 public:
  void add(std::string_view lemma, std::string_view pos, LexicalRelation rel, std::string_view other,
           Provenance provenance);
  void merge(const KnowledgeBase& other);

  /// Empty for unknown words; never throws.
  LemmaSet query(std::string_view lemma, std::string_view pos, LexicalRelation rel) const;
  /// Like query() but across every POS; used where the tag is unreliable.
  LemmaSet query_any_pos(std::string_view lemma, LexicalRelation rel) const;
  bool related(std::string_view a, std::string_view pos, LexicalRelation rel, std::string_view b) const;

  /// Provenance of one stored edge, if present.
  const Provenance* provenance(std::string_view lemma, std::string_view pos, LexicalRelation rel,
                               std::string_view other) const;

  std::size_t size() const { return provenance_.size(); }
  bool empty() const { return provenance_.empty(); }

 private:
  using Key = std::tuple<std::string, std::string, LexicalRelation>;
  using Edge = std::tuple<std::string, std::string, LexicalRelation, std::string>;
  void insert(const std::string& a, const std::string& pos, LexicalRelation rel, const std::string& b,
              Provenance p);

  std::map<Key, LemmaSet> store_;
  std::map<Edge, Provenance> provenance_;
};

/// Tab-separated `lemma pos relation lemma` rows; blank lines and lines
/// starting with '#' are ignored. Throws LoadError naming the line.
KnowledgeBase load_dump(const std::string& path, Provenance provenance);
KnowledgeBase parse_dump(std::string_view text, Provenance provenance);

/// The bundled dumps under the data directory (lexical relations plus the
/// handcrafted disjoint-verb list).
KnowledgeBase load_bundled_kb();
std::string data_dir();

LemmaSet restrict_to_hypothesis(const LemmaSet& candidates, const LemmaSet& hypothesis_lemmas);

enum class ScaleOrder { LEQ, GEQ, EQ, PERP, INCOMPARABLE };
std::string_view scale_order_name(ScaleOrder o);

/// Chain of quantifier equivalence classes ordered by entailment strength
/// (stronger first) plus a symmetric orthogonality relation.
class QuantifierScale {
 public:
  /// all = every = each <= most <= many <= several <= some = a, with
  /// up/down, above/below and inside/outside orthogonal.
  static QuantifierScale standard();

  void push_class(std::vector<std::string> members);
  void add_perp(std::string a, std::string b);

  ScaleOrder compare(std::string_view q1, std::string_view q2) const;
  bool contains(std::string_view q) const;
  /// Every lemma mentioned by the chain.
  std::vector<std::string> members() const;
  const std::vector<std::vector<std::string>>& classes() const { return classes_; }

 private:
  int class_of(std::string_view q) const;
  std::vector<std::vector<std::string>> classes_;
  std::set<std::pair<std::string, std::string>> perp_;
};

}  // namespace monolog
