#pragma once

#include <deque>
#include <map>
#include <string>
#include <unordered_set>

#include "monolog/contradiction.hpp"
#include "monolog/search.hpp"
#include "support.hpp"

namespace testing {

struct BfsResult {
  monolog::Label label = monolog::Label::Neutral;
  int depth = -1;          // shortest rewrite depth to the hypothesis, -1 when unreachable
  std::size_t states = 0;  // distinct states visited
  bool capped = false;     // state cap hit before the space was exhausted
};

// Exhaustive breadth-first search over every generator, no controller and no
// beam. Goal test on dequeue, dedup on the lemma key.
inline BfsResult bfs_exhaustive(const monolog::Sentence& premise, const monolog::Sentence& hypothesis,
                                const Kit& kit, int max_depth, std::size_t state_cap) {
  monolog::SearchConfig cfg;
  cfg.beam_width = 0;
  cfg.max_depth = max_depth;
  cfg.use_controller = false;
  const auto engine = kit.engine();
  monolog::ScoringSession session(engine, false);
  const auto target = monolog::Target::of(hypothesis);

  BfsResult r;
  struct Item {
    monolog::PolarizedTree tree;
    int depth;
  };
  std::deque<Item> queue;
  std::unordered_set<std::string> seen;
  queue.push_back({monolog::annotate(premise.tokens, kit.lex), 0});
  seen.insert(monolog::state_key(premise.tokens));
  while (!queue.empty()) {
    Item cur = std::move(queue.front());
    queue.pop_front();
    if (monolog::state_key(cur.tree.tokens()) == target.key) {
      r.label = monolog::Label::Entail;
      r.depth = cur.depth;
      r.states = seen.size();
      return r;
    }
    if (cur.depth == max_depth) continue;
    for (auto& g : monolog::expand(cur.tree, cur.depth, target, cfg, engine, session)) {
      if (!seen.insert(monolog::state_key(g.sentence.tokens)).second) continue;
      if (seen.size() > state_cap) {
        r.capped = true;
        r.states = seen.size();
        return r;
      }
      queue.push_back({std::move(g.tree), cur.depth + 1});
    }
  }
  r.states = seen.size();
  r.label = monolog::is_contradiction(premise.tokens, hypothesis.tokens, kit.contra()) ? monolog::Label::Contradict
                                                                                         : monolog::Label::Neutral;
  return r;
}

// Marks for a template sentence, computed from a private determiner table.
// restrictor / scope: +1 upward, -1 downward.
inline std::map<int, monolog::Polarity> expected_marks(const Template& t, const Built& b) {
  static const std::map<std::string, std::pair<int, int>> dets = {
      {"a", {1, 1}}, {"some", {1, 1}}, {"every", {-1, 1}}, {"all", {-1, 1}}, {"no", {-1, -1}}};
  auto mark = [](int s) { return s > 0 ? monolog::Polarity::Up : monolog::Polarity::Down; };
  // The object is the verb's nearest dependent, so its quantifier scopes over
  // the bare verb only; the trailing adverb sits outside it.
  const auto [restr, scope] = dets.at(t.det);
  const int vp = scope * (t.neg ? -1 : 1);
  std::map<int, monolog::Polarity> m;
  m[b.det] = monolog::Polarity::Up;
  if (b.adj) m[b.adj] = mark(restr);
  m[b.noun] = mark(restr);
  if (b.neg) m[b.neg] = mark(scope);
  m[b.verb] = mark(vp);
  if (b.noun2) {
    const auto [r2, s2] = dets.at(t.det2);
    m[b.verb] = mark(vp * s2);
    m[b.det2] = mark(vp);
    m[b.noun2] = mark(vp * r2);
    if (b.adj2) m[b.adj2] = mark(vp * r2);
  }
  if (b.adv) m[b.adv] = mark(vp);
  return m;
}

}  // namespace testing
