#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monolog/conllu.hpp"
#include "monolog/search.hpp"

namespace monolog {

class RemoteScorer;

struct NLIPair {
  std::string id;
  std::string premise;
  std::string hypothesis;
  Label gold = Label::Neutral;
  std::string tag;  // MED only: upward, downward or none
  std::optional<Sentence> premise_parse;
  std::optional<Sentence> hypothesis_parse;
};

/// ENTAILMENT / CONTRADICTION / NEUTRAL in any case; LoadError otherwise.
Label parse_label(const std::string& text, int line);

/// Tab-separated with a header naming pair_ID, sentence_A, sentence_B and
/// entailment_judgment (other columns are ignored).
std::vector<NLIPair> parse_sick(const std::string& text);
std::vector<NLIPair> load_sick(const std::string& path);

/// Tab-separated with a header naming sentence1, sentence2, gold_label and
/// genre; the monotonicity tag is read off the genre. Ids come from pairID,
/// else index, else the row number.
std::vector<NLIPair> parse_med(const std::string& text);
std::vector<NLIPair> load_med(const std::string& path);

/// Reads DIR/<id>.conllu (premise then hypothesis) for every pair that has
/// one. Returns how many pairs received parses; unreadable files are left
/// for evaluate() to flag.
std::size_t attach_parses(std::vector<NLIPair>& pairs, const std::string& dir);

struct PairOutcome {
  std::string id;
  Label gold = Label::Neutral;
  Label predicted = Label::Neutral;
  std::string tag;
  bool unparseable = false;
  std::string error;
  std::vector<std::string> trace;
  std::vector<std::string> warnings;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  int support = 0;
};

struct TagMetrics {
  int correct = 0;
  int total = 0;
  double accuracy() const { return total ? static_cast<double>(correct) / total : 0.0; }
};

constexpr std::array<Label, 3> kLabels = {Label::Entail, Label::Contradict, Label::Neutral};

struct MetricsReport {
  std::array<std::array<int, 3>, 3> confusion{};  // [gold][predicted], order E, C, N
  int total = 0;
  double accuracy = 0.0;
  std::array<ClassMetrics, 3> per_class{};
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  bool med = false;
  std::map<std::string, TagMetrics> by_tag;  // upward / downward / none / all
  int unparseable = 0;
  std::vector<PairOutcome> outcomes;
};

/// Recomputes every scalar from the outcomes. For MED, contradiction
/// predictions count as neutral.
MetricsReport compute_metrics(std::vector<PairOutcome> outcomes, bool med);

struct EvalOptions {
  SearchConfig search;
  int workers = 1;
  bool med = false;
  const RemoteScorer* parser = nullptr;  // fills missing parses through /parse
};

/// Classifies every pair. Pairs without parses become NEUTRAL predictions
/// flagged as unparseable. Scorer errors in strict mode propagate.
MetricsReport evaluate(const std::vector<NLIPair>& pairs, const Engine& engine, const EvalOptions& opts);

/// `config` is copied verbatim into the report as string fields.
std::string report_json(const MetricsReport& r, const std::vector<std::pair<std::string, std::string>>& config);
std::string report_text(const MetricsReport& r);

}  // namespace monolog
