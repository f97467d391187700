#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "monolog/graph.hpp"
#include "monolog/polarity.hpp"
#include "monolog/scoring.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace testing {

constexpr int kPropertyCases = 1000;

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

// Runs `body(rng, case_index)` kPropertyCases times; a non-empty return is a
// counterexample.
inline PropertyResult run_property(const std::string& name, unsigned seed,
                                   const std::function<std::string(std::mt19937&, int)>& body) {
  PropertyResult r;
  r.name = name;
  std::mt19937 rng(seed);
  for (int i = 0; i < kPropertyCases; ++i) {
    ++r.cases;
    std::string why;
    try {
      why = body(rng, i);
    } catch (const std::exception& e) {
      why = std::string("threw: ") + e.what();
    }
    if (!why.empty() && r.failures++ == 0) r.first_failure = "case " + std::to_string(i) + ": " + why;
  }
  return r;
}

// Random projective tree over ids [lo, hi] hanging from `parent`.
inline void projective(std::mt19937& rng, int lo, int hi, int parent, std::vector<monolog::UDToken>& out) {
  if (lo > hi) return;
  static const std::vector<std::string> rels{"nsubj", "obj", "amod", "advmod", "det", "obl", "case", "nmod"};
  const int h = std::uniform_int_distribution<int>(lo, hi)(rng);
  out[h - 1] = tok(h, "w" + std::to_string(h), "X", parent, parent == 0 ? "root" : pick(rng, rels));
  // split each side into consecutive blocks, each a dependent subtree of h
  for (auto [a, b] : {std::pair{lo, h - 1}, std::pair{h + 1, hi}}) {
    while (a <= b) {
      const int end = std::uniform_int_distribution<int>(a, b)(rng);
      projective(rng, a, end, h, out);
      a = end + 1;
    }
  }
}

inline PropertyResult prop_leaf_order() {
  return run_property("leaf-order preservation", 11, [](std::mt19937& rng, int) -> std::string {
    const int n = std::uniform_int_distribution<int>(1, 16)(rng);
    std::vector<monolog::UDToken> tokens(n);
    projective(rng, 1, n, 0, tokens);
    const auto bt = monolog::binarize(tokens);
    std::vector<int> expect(n);
    for (int i = 0; i < n; ++i) expect[i] = i + 1;
    if (bt.leaf_order() != expect) return "leaf order differs for n=" + std::to_string(n);
    if (static_cast<int>(bt.size()) != 2 * n - 1) return "node count " + std::to_string(bt.size());
    for (const auto& node : bt.nodes()) {
      if (node.leaf) continue;
      const auto& dep = bt.nodes()[node.head_left ? node.right : node.left];
      if (tokens[dep.token - 1].deprel != node.relation) return "inner node mislabelled";
      if (tokens[dep.token - 1].head != node.token) return "dependent does not attach to head";
    }
    return "";
  });
}

inline PropertyResult prop_double_flip() {
  const SmallWorld w;
  const auto lex = monolog::QuantifierLexicon::standard();
  return run_property("double-flip polarity", 12, [&](std::mt19937& rng, int) -> std::string {
    const auto p = static_cast<monolog::Polarity>(std::uniform_int_distribution<int>(0, 2)(rng));
    if (monolog::apply(monolog::apply(p, monolog::Effect::Flip), monolog::Effect::Flip) != p) return "apply twice";

    Template t = w.random(rng);
    t.det = pick(rng, std::vector<std::string>{"a", "some", "every"});
    t.neg = false;
    Template flipped = t;  // "no ... not": two downward operators over the scope
    flipped.det = "no";
    flipped.neg = true;
    const auto b1 = build(t), b2 = build(flipped);
    const auto m1 = monolog::annotate(b1.tokens, lex), m2 = monolog::annotate(b2.tokens, lex);
    for (const auto& [tmpl, b, m] : {std::tuple{&t, &b1, &m1}, std::tuple{&flipped, &b2, &m2}}) {
      for (const auto& [id, want] : expected_marks(*tmpl, *b))
        if (m->polarity_of(id) != want) return "mark of token " + std::to_string(id) + " in " + m->render();
    }
    const std::pair<int, int> scope[] = {{b1.verb, b2.verb}, {b1.det2, b2.det2}, {b1.noun2, b2.noun2}, {b1.adv, b2.adv}};
    for (auto [i, j] : scope)
      if (i && m1.polarity_of(i) != m2.polarity_of(j)) return "scope mark changed: " + m1.render() + " vs " + m2.render();
    return "";
  });
}

inline PropertyResult prop_alignment_injective() {
  const SmallWorld w;
  const Kit kit(w.kb());
  const auto wsim = kit.contra().wsim;
  return run_property("alignment injectivity", 13, [&](std::mt19937& rng, int) -> std::string {
    const Template tp = w.random(rng);
    const Template th = coin(rng) ? w.perturb(rng, tp) : w.random(rng);
    const auto p = build(tp).tokens, h = build(th).tokens;
    const auto gp = monolog::build_graph(p), gh = monolog::build_graph(h);
    const double threshold = coin(rng) ? monolog::kDefaultAlignThreshold : 0.5;
    const auto a = monolog::align(gp, gh, wsim, threshold);
    std::set<int> ps, hs;
    for (const auto& pr : a.pairs()) {
      if (!ps.insert(pr.premise).second) return "premise vertex aligned twice";
      if (!hs.insert(pr.hypothesis).second) return "hypothesis vertex aligned twice";
      if (!gp.present(pr.premise) || !gh.present(pr.hypothesis)) return "non-vertex aligned";
      if (pr.score < threshold) return "pair below threshold";
      if (a.partner_of_premise(pr.premise) != pr.hypothesis || a.partner_of_hypothesis(pr.hypothesis) != pr.premise)
        return "partner lookups disagree";
    }
    return "";
  });
}

inline std::string random_text(std::mt19937& rng) {
  static const std::vector<std::string> vocab{"a",   "the", "dog", "dogs", "cat", "run", "runs", "man",  "who",
                                              "is",  "tall", "red", "in",  "park", ",",  "!",   "Dog", "MAN",
                                              "fast", "lady", "woman", "é", "x1", "",   "  "};
  const int n = std::uniform_int_distribution<int>(0, 8)(rng);
  std::string s;
  for (int i = 0; i < n; ++i) s += (i ? " " : "") + pick(rng, vocab);
  return s;
}

inline PropertyResult prop_metric_axioms() {
  const monolog::OfflineScorer scorer;
  return run_property("metric axioms of offline dist", 14, [&](std::mt19937& rng, int) -> std::string {
    const auto x = random_text(rng), y = random_text(rng), z = random_text(rng);
    const double xx = monolog::dist(scorer, x, x), xy = monolog::dist(scorer, x, y), yx = monolog::dist(scorer, y, x);
    const double yz = monolog::dist(scorer, y, z), xz = monolog::dist(scorer, x, z);
    if (std::abs(xx) > 1e-12) return "d(x,x) != 0 for '" + x + "'";
    if (xy < 0 || yz < 0 || xz < 0) return "negative distance";
    if (std::abs(xy - yx) > 1e-12) return "asymmetric for '" + x + "' / '" + y + "'";
    if (xz > xy + yz + 1e-9) return "triangle inequality";
    return "";
  });
}

inline PropertyResult prop_scorer_ranges() {
  const auto kb = monolog::load_bundled_kb();
  const monolog::OfflineScorer scorer(&kb);
  return run_property("scorer outputs in range", 15, [&](std::mt19937& rng, int) -> std::string {
    const auto a = random_text(rng), b = random_text(rng);
    const auto ws = scorer.word_similarity({{a, b}, {b, a}, {a, a}});
    for (double s : ws)
      if (!(s >= 0.0 && s <= 1.0)) return "word similarity out of range";
    if (ws[0] != ws[1]) return "word similarity asymmetric";
    if (ws[2] != 1.0) return "word similarity of a word with itself";
    const double p = scorer.paraphrase_prob(a, b);
    if (!(p >= 0.0 && p <= 1.0)) return "paraphrase out of range";
    const auto v = scorer.embed(a);
    if (v.size() != scorer.dimension()) return "embedding size";
    double norm = 0;
    for (double x : v) {
      if (!std::isfinite(x)) return "non-finite embedding";
      norm += x * x;
    }
    if (norm != 0.0 && std::abs(std::sqrt(norm) - 1.0) > 1e-9) return "embedding not unit length";
    monolog::UDToken ta, tb;
    ta.lemma = a, tb.lemma = b;
    ta.upos = coin(rng) ? "NOUN" : "VERB";
    tb.upos = coin(rng) ? "NOUN" : "VERB";
    const double t = scorer.token_similarity(ta, tb);
    if (!(t >= 0.0 && t <= 1.0)) return "token similarity out of range";
    return "";
  });
}

inline std::vector<PropertyResult> all_properties() {
  return {prop_alignment_injective(), prop_leaf_order(), prop_double_flip(), prop_metric_axioms(),
          prop_scorer_ranges()};
}

// ---------------------------------------------------------------------------
// Beam (unbounded) against exhaustive BFS on small random instances.

struct BeamInstance {
  monolog::Sentence premise, hypothesis;
};

inline std::vector<BeamInstance> beam_instances(int count, unsigned seed) {
  const SmallWorld w;
  std::mt19937 rng(seed);
  std::vector<BeamInstance> out;
  std::set<std::pair<std::string, std::string>> seen;
  while (static_cast<int>(out.size()) < count) {
    const Template tp = w.random(rng);
    const Template th = w.perturb(rng, tp);
    auto p = as_sentence(build(tp).tokens), h = as_sentence(build(th).tokens);
    if (!seen.insert({p.surface(), h.surface()}).second) continue;
    out.push_back({std::move(p), std::move(h)});
  }
  return out;
}

struct BeamAgreement {
  int agree = 0;
  int total = 0;
  int entailments = 0;
  std::size_t max_states = 0;
  std::size_t vocabulary = 0;
  std::string first_mismatch;
};

inline BeamAgreement beam_vs_exhaustive(int count = 50, int max_depth = 6, std::size_t state_cap = 10000) {
  const SmallWorld w;
  const Kit kit(w.kb());
  BeamAgreement r;
  r.vocabulary = w.vocabulary().size();
  monolog::SearchConfig cfg;
  cfg.beam_width = 0;
  cfg.max_depth = max_depth;
  for (const auto& inst : beam_instances(count, 2024)) {
    ++r.total;
    const auto oracle = bfs_exhaustive(inst.premise, inst.hypothesis, kit, max_depth, state_cap);
    const auto beam = monolog::classify(inst.premise, inst.hypothesis, cfg, kit.engine());
    r.max_states = std::max(r.max_states, oracle.states);
    r.entailments += oracle.label == monolog::Label::Entail;
    const bool same = !oracle.capped && beam.label == oracle.label &&
                      (oracle.label != monolog::Label::Entail || static_cast<int>(beam.trace.size()) == oracle.depth);
    if (same) {
      ++r.agree;
    } else if (r.first_mismatch.empty()) {
      std::ostringstream m;
      m << "'" << inst.premise.surface() << "' / '" << inst.hypothesis.surface() << "': beam "
        << monolog::label_name(beam.label) << " depth " << beam.trace.size() << ", exhaustive "
        << monolog::label_name(oracle.label) << " depth " << oracle.depth << (oracle.capped ? " (capped)" : "");
      r.first_mismatch = m.str();
    }
  }
  return r;
}

}  // namespace testing
