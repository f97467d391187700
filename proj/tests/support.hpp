#pragma once

#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "monolog/conllu.hpp"
#include "monolog/kb.hpp"
#include "monolog/polarity.hpp"
#include "monolog/scoring.hpp"
#include "monolog/search.hpp"

namespace testing {

inline std::string data(const std::string& rel) { return std::string(MONOLOG_TEST_DATA_DIR) + "/" + rel; }

// Premise and hypothesis stored one after the other in a single file.
inline std::pair<monolog::Sentence, monolog::Sentence> load_pair(const std::string& rel) {
  auto s = monolog::read_conllu_file(data(rel));
  return {s.at(0), s.at(1)};
}

inline monolog::Sentence load_one(const std::string& rel) { return monolog::read_conllu_file(data(rel)).at(0); }

// Bundled KB + offline scorer, the configuration every corpus test runs under.
struct Kit {
  monolog::KnowledgeBase kb;
  monolog::QuantifierScale scale = monolog::QuantifierScale::standard();
  monolog::QuantifierLexicon lex = monolog::QuantifierLexicon::standard();
  std::unique_ptr<monolog::OfflineScorer> scorer;

  explicit Kit(monolog::KnowledgeBase k, monolog::ParaphraseTable table = {}) : kb(std::move(k)) {
    scorer = std::make_unique<monolog::OfflineScorer>(&kb, std::move(table));
  }
  Kit() : Kit(monolog::load_bundled_kb()) {}

  monolog::Engine engine() const { return monolog::Engine{kb, scale, lex, *scorer, nullptr}; }
  monolog::ContradictionContext contra() const {
    return {kb, scale, lex, [s = scorer.get()](const monolog::UDToken& a, const monolog::UDToken& b) {
              return s->token_similarity(a, b);
            }};
  }
};

inline std::unique_ptr<Kit> motorcycle_kit() {
  return std::make_unique<Kit>(monolog::load_dump(data("motorcycle/kb.tsv"), monolog::Provenance::Handcrafted),
                               monolog::load_paraphrase_table(data("motorcycle/paraphrase.tsv")));
}

inline int count_kind(const monolog::InferenceResult& r, monolog::EditKind k) {
  int n = 0;
  for (const auto& s : r.trace) n += s.edit.kind == k;
  return n;
}

// ---------------------------------------------------------------------------
// Hand-rolled generators. Every sentence comes from the template
//   DET [ADJ] NOUN [not] VERB [DET2 [ADJ2] NOUN2] [ADV]
// so its tree, and the marks it should get, are known without the library.

struct Template {
  std::string det, adj, noun, verb, det2, adj2, noun2, adv;
  bool neg = false;
};

inline monolog::UDToken tok(int id, std::string form, std::string upos, int head, std::string rel) {
  monolog::UDToken t;
  t.id = id;
  t.lemma = form;
  t.form = std::move(form);
  t.upos = std::move(upos);
  t.head = head;
  t.deprel = std::move(rel);
  return t;
}

struct Built {
  std::vector<monolog::UDToken> tokens;
  int det = 0, adj = 0, noun = 0, neg = 0, verb = 0, det2 = 0, adj2 = 0, noun2 = 0, adv = 0;
};

inline Built build(const Template& t) {
  Built b;
  int id = 0;
  b.det = ++id;
  if (!t.adj.empty()) b.adj = ++id;
  b.noun = ++id;
  if (t.neg) b.neg = ++id;
  b.verb = ++id;
  if (!t.noun2.empty()) {
    b.det2 = ++id;
    if (!t.adj2.empty()) b.adj2 = ++id;
    b.noun2 = ++id;
  }
  if (!t.adv.empty()) b.adv = ++id;
  auto& v = b.tokens;
  v.push_back(tok(b.det, t.det, "DET", b.noun, "det"));
  if (b.adj) v.push_back(tok(b.adj, t.adj, "ADJ", b.noun, "amod"));
  v.push_back(tok(b.noun, t.noun, "NOUN", b.verb, "nsubj"));
  if (b.neg) v.push_back(tok(b.neg, "not", "PART", b.verb, "advmod"));
  v.push_back(tok(b.verb, t.verb, "VERB", 0, "root"));
  if (b.noun2) {
    v.push_back(tok(b.det2, t.det2, "DET", b.noun2, "det"));
    if (b.adj2) v.push_back(tok(b.adj2, t.adj2, "ADJ", b.noun2, "amod"));
    v.push_back(tok(b.noun2, t.noun2, "NOUN", b.verb, "obj"));
  }
  if (b.adv) v.push_back(tok(b.adv, t.adv, "ADV", b.verb, "advmod"));
  return b;
}

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

inline bool coin(std::mt19937& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

// Vocabulary for the small search instances: twelve lemmas in all,
// determiners and "not" included.
struct SmallWorld {
  std::vector<std::string> nouns{"poodle", "dog", "animal"};
  std::vector<std::string> verbs{"sprint", "run", "sleep"};
  std::vector<std::string> adjs{"black"};
  std::vector<std::string> advs{"quickly"};
  std::vector<std::string> dets{"a", "every", "no"};

  std::set<std::string> vocabulary() const {
    std::set<std::string> v{"not"};
    for (const auto* list : {&nouns, &verbs, &adjs, &advs, &dets}) v.insert(list->begin(), list->end());
    return v;
  }

  monolog::KnowledgeBase kb() const {
    using monolog::LexicalRelation;
    using monolog::Provenance;
    monolog::KnowledgeBase k;
    k.add("poodle", "NOUN", LexicalRelation::Hypernym, "dog", Provenance::Handcrafted);
    k.add("dog", "NOUN", LexicalRelation::Hypernym, "animal", Provenance::Handcrafted);
    k.add("poodle", "NOUN", LexicalRelation::Hypernym, "animal", Provenance::Handcrafted);
    k.add("sprint", "VERB", LexicalRelation::Hypernym, "run", Provenance::Handcrafted);
    k.add("sleep", "VERB", LexicalRelation::Antonym, "run", Provenance::Handcrafted);
    return k;
  }

  Template random(std::mt19937& rng) const {
    Template t;
    t.det = pick(rng, dets);
    if (coin(rng)) t.adj = pick(rng, adjs);
    t.noun = pick(rng, nouns);
    t.neg = coin(rng, 0.2);
    t.verb = pick(rng, verbs);
    if (coin(rng, 0.6)) {
      t.det2 = pick(rng, dets);
      if (coin(rng)) t.adj2 = pick(rng, adjs);
      t.noun2 = pick(rng, nouns);
    }
    if (coin(rng)) t.adv = pick(rng, advs);
    return t;
  }

  // A hypothesis a few random edits away from `p`, so some instances entail.
  Template perturb(std::mt19937& rng, Template t) const {
    const int edits = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int i = 0; i < edits; ++i) {
      switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
        case 0: t.noun = pick(rng, nouns); break;
        case 1: t.verb = pick(rng, verbs); break;
        case 2: t.adj = t.adj.empty() ? pick(rng, adjs) : ""; break;
        case 3: t.adv = t.adv.empty() ? pick(rng, advs) : ""; break;
        case 4: t.det = pick(rng, dets); break;
        case 5:
          if (!t.noun2.empty()) t.noun2 = pick(rng, nouns);
          break;
        case 6:
          if (!t.noun2.empty()) t.adj2 = t.adj2.empty() ? pick(rng, adjs) : "";
          break;
        case 7: t.neg = !t.neg; break;
      }
    }
    return t;
  }
};

inline monolog::Sentence as_sentence(const std::vector<monolog::UDToken>& tokens) {
  monolog::Sentence s;
  s.tokens = tokens;
  s.text = s.surface();
  return s;
}

}  // namespace testing
