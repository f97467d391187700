#pragma once

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "monolog/conllu.hpp"

namespace monolog {

class KnowledgeBase;

using Embedding = std::vector<double>;
using TextPair = std::pair<std::string, std::string>;

/// Which rendering of a sentence a backend expects: neural models want the
/// surface string, the offline backend works on lemmas.
enum class TextForm { Surface, Lemma };

/// Provider of sentence embeddings, word similarity and paraphrase
/// probabilities. Implementations must be callable from several threads.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual std::string name() const = 0;
  virtual TextForm input_form() const = 0;
  virtual std::size_t dimension() const = 0;

  virtual std::vector<Embedding> embed(const std::vector<std::string>& texts) const = 0;
  /// Scores in [0, 1], symmetric, 1 on identical words.
  virtual std::vector<double> word_similarity(const std::vector<TextPair>& pairs) const = 0;
  /// Probability in [0, 1] that the two chunks are paraphrases.
  virtual std::vector<double> paraphrase(const std::vector<TextPair>& pairs) const = 0;

  /// Similarity of two parsed words. The default asks word_similarity on lemmas.
  virtual double token_similarity(const UDToken& a, const UDToken& b) const;

  Embedding embed(const std::string& text) const;
  double word_similarity(const std::string& a, const std::string& b) const;
  double paraphrase_prob(const std::string& a, const std::string& b) const;
};

double euclidean(const Embedding& a, const Embedding& b);
/// Euclidean distance between the two embeddings.
double dist(const Scorer& scorer, const std::string& s, const std::string& h);

/// Renders tokens [first, last] (ids, inclusive) the way `form` asks for.
std::string render_span(const std::vector<UDToken>& tokens, int first, int last, TextForm form);
std::string render_sentence(const std::vector<UDToken>& tokens, TextForm form);

/// Fixed paraphrase probabilities keyed by normalized chunk text; consulted
/// by the offline backend before its lexical estimate.
class ParaphraseTable {
 public:
  void set(const std::string& a, const std::string& b, double prob);
  /// Looks up (a, b) and then (b, a).
  const double* find(const std::string& a, const std::string& b) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<TextPair, double> table_;
};

/// `chunk <TAB> chunk <TAB> probability` per line; '#' comments allowed.
ParaphraseTable load_paraphrase_table(const std::string& path);

/// Lowercases, drops punctuation-only tokens and collapses whitespace.
std::string normalize_text(const std::string& text);

/// Hermetic backend: hashed bag-of-words embeddings (256 dims, L2-normalized),
/// exact/synonym word similarity and a lexical paraphrase estimate. Makes no
/// claim of semantic fidelity.
class OfflineScorer final : public Scorer {
 public:
  static constexpr std::size_t kDimension = 256;

  explicit OfflineScorer(const KnowledgeBase* kb = nullptr, ParaphraseTable table = {});

  std::string name() const override { return "offline"; }
  TextForm input_form() const override { return TextForm::Lemma; }
  std::size_t dimension() const override { return kDimension; }

  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override;
  std::vector<double> word_similarity(const std::vector<TextPair>& pairs) const override;
  std::vector<double> paraphrase(const std::vector<TextPair>& pairs) const override;
  /// Exact lemma 1.0, synonym 0.9, same UPOS 0.2, otherwise 0.
  double token_similarity(const UDToken& a, const UDToken& b) const override;

  using Scorer::embed;
  using Scorer::paraphrase_prob;
  using Scorer::word_similarity;

 private:
  double word_sim(const std::string& a, const std::string& b) const;
  double lexical_paraphrase(const std::string& a, const std::string& b) const;
  std::string canonical(const std::string& lemma) const;

  const KnowledgeBase* kb_;
  ParaphraseTable table_;
};

}  // namespace monolog
