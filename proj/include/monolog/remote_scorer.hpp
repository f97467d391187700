#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

#include "monolog/conllu.hpp"
#include "monolog/scoring.hpp"

namespace monolog {

struct RemoteConfig {
  std::string url;             // e.g. http://127.0.0.1:8008
  int timeout_ms = 5000;
  int max_in_flight = 8;
  std::size_t batch_size = 32;  // items per request
};

/// `flag` when non-empty, else $MONOLOG_SCORER_URL, else empty.
std::string resolve_scorer_url(const std::string& flag);

/// JSON-over-HTTP client for the model server. Requests are split into
/// batches that run concurrently (bounded by `max_in_flight`); a timed-out
/// request is retried once. Answers are cached per item for the lifetime of
/// the client. Transport, status and shape errors raise ScoringError.
class RemoteScorer final : public Scorer {
 public:
  static constexpr int kMaxInFlightCap = 64;

  explicit RemoteScorer(RemoteConfig cfg);

  std::string name() const override { return "remote"; }
  TextForm input_form() const override { return TextForm::Surface; }
  /// Dimension reported by the last embedding response; 0 before any.
  std::size_t dimension() const override { return dim_.load(); }

  std::vector<Embedding> embed(const std::vector<std::string>& texts) const override;
  std::vector<double> word_similarity(const std::vector<TextPair>& pairs) const override;
  std::vector<double> paraphrase(const std::vector<TextPair>& pairs) const override;
  using Scorer::embed;
  using Scorer::paraphrase_prob;
  using Scorer::word_similarity;

  /// CoNLL-U documents for raw sentences, one per input text.
  std::vector<std::string> parse(const std::vector<std::string>& texts) const;
  /// GET /health; returns the "models" object rendered as JSON text.
  std::string health() const;

  std::size_t requests_sent() const { return requests_.load(); }
  int peak_in_flight() const { return peak_.load(); }
  const RemoteConfig& config() const { return cfg_; }

 private:
  std::string post(const std::string& path, const std::string& body) const;
  std::string get(const std::string& path) const;
  std::string send(const std::string& method, const std::string& path, const std::string& body) const;

  RemoteConfig cfg_;
  mutable std::counting_semaphore<kMaxInFlightCap> slots_;
  mutable std::atomic<std::size_t> requests_{0};
  mutable std::atomic<int> in_flight_{0};
  mutable std::atomic<int> peak_{0};
  mutable std::atomic<std::size_t> dim_{0};

  mutable std::mutex cache_mu_;
  mutable std::map<std::string, Embedding> embed_cache_;
  mutable std::map<TextPair, double> sim_cache_;
  mutable std::map<TextPair, double> para_cache_;
  mutable std::map<std::string, std::string> parse_cache_;
};

/// Parses raw sentences through a RemoteScorer's /parse endpoint. Throws
/// ScoringError on transport failure and ParseError on bad CoNLL-U.
Sentence parse_remote(const RemoteScorer& client, const std::string& text);

}  // namespace monolog
