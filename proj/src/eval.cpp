#include "monolog/eval.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "monolog/errors.hpp"
#include "monolog/remote_scorer.hpp"

namespace monolog {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Table {
  std::map<std::string, std::size_t> columns;
  std::vector<std::pair<int, std::vector<std::string>>> rows;  // (line, cells)

  std::size_t column(const std::string& name) const {
    auto it = columns.find(name);
    if (it == columns.end()) throw LoadError("missing column " + name, 1);
    return it->second;
  }
  std::optional<std::size_t> maybe_column(const std::string& name) const {
    auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  }
};

Table read_table(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_tabs(line);
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i) t.columns[cells[i]] = i;
      header = false;
      continue;
    }
    t.rows.emplace_back(lineno, std::move(cells));
  }
  if (header) throw LoadError("empty file: no header row", 1);
  return t;
}

const std::string& cell(const std::vector<std::string>& cells, std::size_t col, int line) {
  if (col >= cells.size()) throw LoadError("row has " + std::to_string(cells.size()) + " columns", line);
  return cells[col];
}

int label_index(Label l) { return l == Label::Entail ? 0 : l == Label::Contradict ? 1 : 2; }

}  // namespace

Label parse_label(const std::string& text, int line) {
  const std::string l = lowercase(text);
  if (l == "entailment" || l == "entail") return Label::Entail;
  if (l == "contradiction" || l == "contradict") return Label::Contradict;
  if (l == "neutral" || l == "non-entailment") return Label::Neutral;
  throw LoadError("unknown label '" + text + "'", line);
}

std::vector<NLIPair> parse_sick(const std::string& text) {
  const Table t = read_table(text);
  const auto id = t.column("pair_ID"), a = t.column("sentence_A"), b = t.column("sentence_B"),
             g = t.column("entailment_judgment");
  std::vector<NLIPair> out;
  for (const auto& [line, cells] : t.rows) {
    NLIPair p;
    p.id = cell(cells, id, line);
    p.premise = cell(cells, a, line);
    p.hypothesis = cell(cells, b, line);
    p.gold = parse_label(cell(cells, g, line), line);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<NLIPair> load_sick(const std::string& path) { return parse_sick(read_file(path)); }

std::vector<NLIPair> parse_med(const std::string& text) {
  const Table t = read_table(text);
  const auto a = t.column("sentence1"), b = t.column("sentence2"), g = t.column("gold_label"), genre = t.column("genre");
  auto id = t.maybe_column("pairID");
  if (!id) id = t.maybe_column("index");
  std::vector<NLIPair> out;
  for (const auto& [line, cells] : t.rows) {
    NLIPair p;
    p.id = id ? cell(cells, *id, line) : std::to_string(out.size() + 1);
    p.premise = cell(cells, a, line);
    p.hypothesis = cell(cells, b, line);
    p.gold = parse_label(cell(cells, g, line), line);
    if (p.gold == Label::Contradict) p.gold = Label::Neutral;
    const std::string gen = lowercase(cell(cells, genre, line));
    if (gen.find("downward") != std::string::npos) p.tag = "downward";
    else if (gen.find("upward") != std::string::npos) p.tag = "upward";
    else p.tag = "none";
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<NLIPair> load_med(const std::string& path) { return parse_med(read_file(path)); }

std::size_t attach_parses(std::vector<NLIPair>& pairs, const std::string& dir) {
  std::size_t n = 0;
  for (auto& p : pairs) {
    const auto path = std::filesystem::path(dir) / (p.id + ".conllu");
    if (!std::filesystem::exists(path)) continue;
    try {
      auto s = read_conllu_file(path.string());
      if (s.size() != 2) continue;
      p.premise_parse = std::move(s[0]);
      p.hypothesis_parse = std::move(s[1]);
      ++n;
    } catch (const std::exception&) {
      // left unparsed; evaluate() flags it
    }
  }
  return n;
}

MetricsReport compute_metrics(std::vector<PairOutcome> outcomes, bool med) {
  MetricsReport r;
  r.med = med;
  for (auto& o : outcomes) {
    Label pred = o.predicted, gold = o.gold;
    if (med) {
      if (pred == Label::Contradict) pred = Label::Neutral;
      if (gold == Label::Contradict) gold = Label::Neutral;
    }
    ++r.confusion[label_index(gold)][label_index(pred)];
    ++r.total;
    if (o.unparseable) ++r.unparseable;
    if (med) {
      for (const std::string& key : {o.tag.empty() ? std::string("none") : o.tag, std::string("all")}) {
        auto& tm = r.by_tag[key];
        ++tm.total;
        if (pred == gold) ++tm.correct;
      }
    }
  }
  int diag = 0;
  for (int i = 0; i < 3; ++i) diag += r.confusion[i][i];
  r.accuracy = r.total ? static_cast<double>(diag) / r.total : 0.0;
  int classes = 0;
  for (int c = 0; c < 3; ++c) {
    int predicted = 0, actual = 0;
    for (int k = 0; k < 3; ++k) {
      predicted += r.confusion[k][c];
      actual += r.confusion[c][k];
    }
    auto& m = r.per_class[c];
    m.support = actual;
    m.precision = predicted ? static_cast<double>(r.confusion[c][c]) / predicted : 0.0;
    m.recall = actual ? static_cast<double>(r.confusion[c][c]) / actual : 0.0;
    if (actual > 0) {
      ++classes;
      r.macro_precision += m.precision;
      r.macro_recall += m.recall;
    }
  }
  if (classes) {
    r.macro_precision /= classes;
    r.macro_recall /= classes;
  }
  r.outcomes = std::move(outcomes);
  return r;
}

namespace {

PairOutcome run_pair(const NLIPair& p, const Engine& engine, const EvalOptions& opts) {
  PairOutcome o;
  o.id = p.id;
  o.gold = p.gold;
  o.tag = p.tag;
  std::optional<Sentence> prem = p.premise_parse, hyp = p.hypothesis_parse;
  if ((!prem || !hyp) && opts.parser) {
    try {
      if (!prem) prem = parse_remote(*opts.parser, p.premise);
      if (!hyp) hyp = parse_remote(*opts.parser, p.hypothesis);
    } catch (const std::exception& e) {
      if (opts.search.strict && dynamic_cast<const ScoringError*>(&e)) throw;
      o.error = e.what();
    }
  }
  if (!prem || !hyp) {
    o.unparseable = true;
    if (o.error.empty()) o.error = "no parse available";
    return o;
  }
  try {
    const auto res = classify(*prem, *hyp, opts.search, engine);
    o.predicted = res.label;
    for (const auto& step : res.trace) o.trace.push_back(step.edit.describe());
    o.warnings = res.warnings;
  } catch (const StructuralError& e) {
    o.unparseable = true;
    o.error = e.what();
  } catch (const ParseError& e) {
    o.unparseable = true;
    o.error = e.what();
  }
  return o;
}

std::string fixed(double x, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

}  // namespace

MetricsReport evaluate(const std::vector<NLIPair>& pairs, const Engine& engine, const EvalOptions& opts) {
  std::vector<PairOutcome> outcomes(pairs.size());
  std::vector<std::exception_ptr> errors(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      try {
        outcomes[i] = run_pair(pairs[i], engine, opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, opts.workers);
  std::vector<std::thread> threads;
  for (int k = 1; k < n; ++k) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return compute_metrics(std::move(outcomes), opts.med);
}

std::string report_json(const MetricsReport& r, const std::vector<std::pair<std::string, std::string>>& config) {
  using json = nlohmann::ordered_json;
  json j;
  json cfg = json::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  j["total"] = r.total;
  j["accuracy"] = r.accuracy;
  json labels = json::array();
  for (Label l : kLabels) labels.push_back(std::string(label_name(l)));
  j["confusion"] = {{"labels", labels}, {"matrix", r.confusion}};
  json per = json::object();
  for (int c = 0; c < 3; ++c) {
    per[std::string(label_name(kLabels[c]))] = {
        {"precision", r.per_class[c].precision}, {"recall", r.per_class[c].recall}, {"support", r.per_class[c].support}};
  }
  j["per_class"] = per;
  j["macro"] = {{"precision", r.macro_precision}, {"recall", r.macro_recall}};
  if (r.med) {
    json med = json::object();
    for (const char* key : {"upward", "downward", "none", "all"}) {
      auto it = r.by_tag.find(key);
      const TagMetrics tm = it == r.by_tag.end() ? TagMetrics{} : it->second;
      med[key] = {{"correct", tm.correct}, {"total", tm.total}, {"accuracy", tm.accuracy()}};
    }
    j["med"] = med;
  }
  j["unparseable"] = r.unparseable;
  json pairs = json::array();
  for (const auto& o : r.outcomes) {
    json p = {{"id", o.id}, {"gold", std::string(label_name(o.gold))}, {"predicted", std::string(label_name(o.predicted))}};
    if (!o.tag.empty()) p["tag"] = o.tag;
    if (o.unparseable) {
      p["unparseable"] = true;
      p["error"] = o.error;
    }
    p["trace"] = o.trace;
    if (!o.warnings.empty()) p["warnings"] = o.warnings;
    pairs.push_back(std::move(p));
  }
  j["pairs"] = pairs;
  return j.dump(2) + "\n";
}

std::string report_text(const MetricsReport& r) {
  std::ostringstream out;
  out << "pairs " << r.total << "  accuracy " << fixed(r.accuracy) << "  unparseable " << r.unparseable << "\n";
  out << "gold\\pred   ENTAIL  CONTRADICT  NEUTRAL\n";
  for (int g = 0; g < 3; ++g) {
    char row[96];
    std::snprintf(row, sizeof row, "%-10s %7d %11d %8d\n", std::string(label_name(kLabels[g])).c_str(),
                  r.confusion[g][0], r.confusion[g][1], r.confusion[g][2]);
    out << row;
  }
  out << "class        P       R       n\n";
  for (int c = 0; c < 3; ++c) {
    char row[96];
    std::snprintf(row, sizeof row, "%-10s %7s %7s %7d\n", std::string(label_name(kLabels[c])).c_str(),
                  fixed(r.per_class[c].precision).c_str(), fixed(r.per_class[c].recall).c_str(), r.per_class[c].support);
    out << row;
  }
  out << "macro      " << fixed(r.macro_precision) << "  " << fixed(r.macro_recall) << "\n";
  if (r.med) {
    out << "Up       Down     All\n";
    auto acc = [&](const char* k) {
      auto it = r.by_tag.find(k);
      return fixed(it == r.by_tag.end() ? 0.0 : it->second.accuracy());
    };
    out << acc("upward") << "   " << acc("downward") << "   " << acc("all") << "\n";
  }
  return out.str();
}

}  // namespace monolog
