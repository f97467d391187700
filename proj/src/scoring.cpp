#include "monolog/scoring.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "monolog/errors.hpp"
#include "monolog/kb.hpp"

namespace monolog {

namespace {

std::vector<std::string> words(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string w;
  while (in >> w) {
    std::string lw = lowercase(w);
    if (std::all_of(lw.begin(), lw.end(), [](unsigned char c) { return std::ispunct(c); })) continue;
    out.push_back(std::move(lw));
  }
  return out;
}

// Structural words that a paraphrase may add or drop freely.
bool is_filler(const std::string& w) {
  static const std::set<std::string> kFiller = {"be", "is", "are", "was", "were", "been", "being", "am",
                                                "who", "which", "that", "whom"};
  return kFiller.count(w) > 0;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------

double Scorer::token_similarity(const UDToken& a, const UDToken& b) const {
  return word_similarity(lowercase(a.lemma), lowercase(b.lemma));
}

Embedding Scorer::embed(const std::string& text) const { return embed(std::vector<std::string>{text}).at(0); }

double Scorer::word_similarity(const std::string& a, const std::string& b) const {
  return word_similarity(std::vector<TextPair>{{a, b}}).at(0);
}

double Scorer::paraphrase_prob(const std::string& a, const std::string& b) const {
  return paraphrase(std::vector<TextPair>{{a, b}}).at(0);
}

double euclidean(const Embedding& a, const Embedding& b) {
  if (a.size() != b.size()) throw ScoringError("embedding dimensions differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

double dist(const Scorer& scorer, const std::string& s, const std::string& h) {
  auto v = scorer.embed(std::vector<std::string>{s, h});
  return euclidean(v.at(0), v.at(1));
}

std::string render_span(const std::vector<UDToken>& tokens, int first, int last, TextForm form) {
  std::string out;
  for (int id = first; id <= last; ++id) {
    const auto& t = tokens.at(id - 1);
    if (form == TextForm::Lemma && is_punct(t)) continue;
    if (!out.empty()) out += ' ';
    out += form == TextForm::Lemma ? lowercase(t.lemma) : t.form;
  }
  return out;
}

std::string render_sentence(const std::vector<UDToken>& tokens, TextForm form) {
  if (tokens.empty()) return {};
  return render_span(tokens, 1, static_cast<int>(tokens.size()), form);
}

std::string normalize_text(const std::string& text) {
  std::string out;
  for (const auto& w : words(text)) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

// ---------------------------------------------------------------------------

void ParaphraseTable::set(const std::string& a, const std::string& b, double prob) {
  table_[{normalize_text(a), normalize_text(b)}] = prob;
}

const double* ParaphraseTable::find(const std::string& a, const std::string& b) const {
  const std::string na = normalize_text(a), nb = normalize_text(b);
  auto it = table_.find({na, nb});
  if (it == table_.end()) it = table_.find({nb, na});
  return it == table_.end() ? nullptr : &it->second;
}

ParaphraseTable load_paraphrase_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path, 0);
  ParaphraseTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::istringstream ls(line);
    std::string col;
    while (std::getline(ls, col, '\t')) cols.push_back(col);
    if (cols.size() != 3) throw LoadError(path + ": expected 3 tab-separated columns", line_no);
    double p = 0;
    try {
      p = std::stod(cols[2]);
    } catch (const std::exception&) {
      throw LoadError(path + ": bad probability '" + cols[2] + "'", line_no);
    }
    if (!(p >= 0.0 && p <= 1.0)) throw LoadError(path + ": probability outside [0,1]", line_no);
    table.set(cols[0], cols[1], p);
  }
  return table;
}

// ---------------------------------------------------------------------------

OfflineScorer::OfflineScorer(const KnowledgeBase* kb, ParaphraseTable table) : kb_(kb), table_(std::move(table)) {}

std::vector<Embedding> OfflineScorer::embed(const std::vector<std::string>& texts) const {
  std::vector<Embedding> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    Embedding v(kDimension, 0.0);
    for (const auto& w : words(text)) v[fnv1a(w) % kDimension] += 1.0;
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0) {
      for (double& x : v) x /= norm;
    }
    out.push_back(std::move(v));
  }
  return out;
}

double OfflineScorer::word_sim(const std::string& a, const std::string& b) const {
  const std::string la = lowercase(a), lb = lowercase(b);
  if (la == lb) return 1.0;
  if (kb_ && kb_->query_any_pos(la, LexicalRelation::Synonym).count(lb)) return 0.9;
  return 0.0;
}

std::vector<double> OfflineScorer::word_similarity(const std::vector<TextPair>& pairs) const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) out.push_back(word_sim(a, b));
  return out;
}

double OfflineScorer::token_similarity(const UDToken& a, const UDToken& b) const {
  double s = word_sim(a.lemma, b.lemma);
  if (s < 0.2 && a.upos == b.upos) s = 0.2;
  return s;
}

std::string OfflineScorer::canonical(const std::string& lemma) const {
  if (!kb_) return lemma;
  std::string best = lemma;
  for (const auto& s : kb_->query_any_pos(lemma, LexicalRelation::Synonym)) best = std::min(best, s);
  return best;
}

double OfflineScorer::lexical_paraphrase(const std::string& a, const std::string& b) const {
  const std::string na = normalize_text(a), nb = normalize_text(b);
  if (na == nb) return 1.0;
  auto content = [&](const std::string& text) {
    std::set<std::string> s;
    for (const auto& w : words(text)) {
      if (!is_filler(w)) s.insert(canonical(w));
    }
    return s;
  };
  const auto sa = content(na), sb = content(nb);
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto& w : sa) inter += sb.count(w);
  const double jaccard = static_cast<double>(inter) / static_cast<double>(sa.size() + sb.size() - inter);
  return jaccard * jaccard;
}

std::vector<double> OfflineScorer::paraphrase(const std::vector<TextPair>& pairs) const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (const double* p = table_.find(a, b)) out.push_back(*p);
    else out.push_back(lexical_paraphrase(a, b));
  }
  return out;
}

}  // namespace monolog
