#include "monolog/kb.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "monolog/conllu.hpp"
#include "monolog/errors.hpp"

namespace monolog {

std::string_view relation_name(LexicalRelation r) {
  switch (r) {
    case LexicalRelation::Hypernym: return "hypernym";
    case LexicalRelation::Hyponym: return "hyponym";
    case LexicalRelation::Synonym: return "synonym";
    case LexicalRelation::Antonym: return "antonym";
  }
  return "?";
}

bool parse_relation(std::string_view text, LexicalRelation& out) {
  const std::string t = lowercase(text);
  if (t == "hypernym") out = LexicalRelation::Hypernym;
  else if (t == "hyponym") out = LexicalRelation::Hyponym;
  else if (t == "synonym") out = LexicalRelation::Synonym;
  else if (t == "antonym") out = LexicalRelation::Antonym;
  else return false;
  return true;
}

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::WordNetDump: return "wordnet-dump";
    case Provenance::ConceptNetDump: return "conceptnet-dump";
    case Provenance::Handcrafted: return "handcrafted";
  }
  return "?";
}

namespace {

LexicalRelation inverse(LexicalRelation r) {
  switch (r) {
    case LexicalRelation::Hypernym: return LexicalRelation::Hyponym;
    case LexicalRelation::Hyponym: return LexicalRelation::Hypernym;
    default: return r;
  }
}

std::string normalize_pos(std::string_view pos) {
  std::string p(pos);
  std::transform(p.begin(), p.end(), p.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return p;
}

}  // namespace

void KnowledgeBase::insert(const std::string& a, const std::string& pos, LexicalRelation rel,
                           const std::string& b, Provenance p) {
  store_[{a, pos, rel}].insert(b);
  provenance_.emplace(Edge{a, pos, rel, b}, p);
}

void KnowledgeBase::add(std::string_view lemma, std::string_view pos, LexicalRelation rel,
                        std::string_view other, Provenance provenance) {
  const std::string a = lowercase(lemma);
  const std::string b = lowercase(other);
  if (a == b) return;  // no word is its own hypernym, synonym or antonym
  const std::string p = normalize_pos(pos);
  insert(a, p, rel, b, provenance);
  insert(b, p, inverse(rel), a, provenance);
}

void KnowledgeBase::merge(const KnowledgeBase& other) {
  for (const auto& [edge, prov] : other.provenance_) {
    const auto& [a, pos, rel, b] = edge;
    insert(a, pos, rel, b, prov);
  }
}

LemmaSet KnowledgeBase::query(std::string_view lemma, std::string_view pos, LexicalRelation rel) const {
  auto it = store_.find(Key{lowercase(lemma), normalize_pos(pos), rel});
  return it == store_.end() ? LemmaSet{} : it->second;
}

LemmaSet KnowledgeBase::query_any_pos(std::string_view lemma, LexicalRelation rel) const {
  LemmaSet out;
  const std::string l = lowercase(lemma);
  for (const auto& [key, set] : store_) {
    if (std::get<0>(key) == l && std::get<2>(key) == rel) out.insert(set.begin(), set.end());
  }
  return out;
}

bool KnowledgeBase::related(std::string_view a, std::string_view pos, LexicalRelation rel, std::string_view b) const {
  auto it = store_.find(Key{lowercase(a), normalize_pos(pos), rel});
  return it != store_.end() && it->second.count(lowercase(b)) > 0;
}

const Provenance* KnowledgeBase::provenance(std::string_view lemma, std::string_view pos, LexicalRelation rel,
                                            std::string_view other) const {
  auto it = provenance_.find(Edge{lowercase(lemma), normalize_pos(pos), rel, lowercase(other)});
  return it == provenance_.end() ? nullptr : &it->second;
}

KnowledgeBase parse_dump(std::string_view text, Provenance provenance) {
  KnowledgeBase kb;
  std::istringstream in{std::string(text)};
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
    if (cols.size() != 4) throw LoadError("expected 4 tab-separated columns", line_no);
    LexicalRelation rel;
    if (!parse_relation(cols[2], rel)) throw LoadError("unknown relation '" + cols[2] + "'", line_no);
    if (cols[0].empty() || cols[3].empty()) throw LoadError("empty lemma", line_no);
    kb.add(cols[0], cols[1], rel, cols[3], provenance);
  }
  return kb;
}

KnowledgeBase load_dump(const std::string& path, Provenance provenance) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_dump(ss.str(), provenance);
  } catch (const LoadError& e) {
    throw LoadError(path + ": " + e.what(), e.line());
  }
}

std::string data_dir() {
  if (const char* env = std::getenv("MONOLOG_DATA_DIR")) return env;
  return MONOLOG_DATA_DIR;
}

KnowledgeBase load_bundled_kb() {
  KnowledgeBase kb = load_dump(data_dir() + "/kb/lexical.tsv", Provenance::WordNetDump);
  kb.merge(load_dump(data_dir() + "/kb/handcrafted.tsv", Provenance::Handcrafted));
  return kb;
}

LemmaSet restrict_to_hypothesis(const LemmaSet& candidates, const LemmaSet& hypothesis_lemmas) {
  LemmaSet out;
  std::set_intersection(candidates.begin(), candidates.end(), hypothesis_lemmas.begin(), hypothesis_lemmas.end(),
                        std::inserter(out, out.end()));
  return out;
}

// ---------------------------------------------------------------------------

std::string_view scale_order_name(ScaleOrder o) {
  switch (o) {
    case ScaleOrder::LEQ: return "LEQ";
    case ScaleOrder::GEQ: return "GEQ";
    case ScaleOrder::EQ: return "EQ";
    case ScaleOrder::PERP: return "PERP";
    case ScaleOrder::INCOMPARABLE: return "INCOMPARABLE";
  }
  return "?";
}

QuantifierScale QuantifierScale::standard() {
  QuantifierScale s;
  s.push_class({"all", "every", "each"});
  s.push_class({"most"});
  s.push_class({"many"});
  s.push_class({"several"});
  s.push_class({"some", "a", "an"});
  s.add_perp("up", "down");
  s.add_perp("above", "below");
  s.add_perp("inside", "outside");
  return s;
}

void QuantifierScale::push_class(std::vector<std::string> members) { classes_.push_back(std::move(members)); }

void QuantifierScale::add_perp(std::string a, std::string b) {
  if (a == b) return;
  perp_.emplace(a, b);
  perp_.emplace(std::move(b), std::move(a));
}

int QuantifierScale::class_of(std::string_view q) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (const auto& m : classes_[i]) {
      if (m == q) return static_cast<int>(i);
    }
  }
  return -1;
}

bool QuantifierScale::contains(std::string_view q) const {
  if (class_of(q) >= 0) return true;
  for (const auto& [a, b] : perp_) {
    if (a == q) return true;
  }
  return false;
}

std::vector<std::string> QuantifierScale::members() const {
  std::vector<std::string> out;
  for (const auto& c : classes_) out.insert(out.end(), c.begin(), c.end());
  return out;
}

ScaleOrder QuantifierScale::compare(std::string_view q1, std::string_view q2) const {
  const std::string a = lowercase(q1);
  const std::string b = lowercase(q2);
  if (a == b) return ScaleOrder::EQ;
  if (perp_.count({a, b})) return ScaleOrder::PERP;
  const int ca = class_of(a), cb = class_of(b);
  if (ca < 0 || cb < 0) return ScaleOrder::INCOMPARABLE;
  if (ca == cb) return ScaleOrder::EQ;
  return ca < cb ? ScaleOrder::LEQ : ScaleOrder::GEQ;
}

}  // namespace monolog
