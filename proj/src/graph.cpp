#include "monolog/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "monolog/polarity.hpp"

namespace monolog {

std::string_view component_name(Component c) {
  switch (c) {
    case Component::Subject: return "subject";
    case Component::Verb: return "verb";
    case Component::Object: return "object";
    case Component::Other: return "other";
  }
  return "?";
}

std::string_view directive_name(Directive d) {
  switch (d) {
    case Directive::None: return "NONE";
    case Directive::Lexical: return "LEXICAL";
    case Directive::PhrasalDelete: return "PHRASAL_DELETE";
    case Directive::PhrasalInsert: return "PHRASAL_INSERT";
    case Directive::SyntacticVariation: return "SYNTACTIC_VARIATION";
  }
  return "?";
}

bool SentenceGraph::is_content(int id) const {
  if (!present(id)) return false;
  const auto& v = vertices_[id];
  return v.parent == 0 || !v.modifiers.empty();
}

bool SentenceGraph::is_modifier(int id) const { return present(id) && vertices_[id].parent > 0; }

std::vector<int> SentenceGraph::content_vertices() const {
  std::vector<int> out;
  for (int id = 1; id < static_cast<int>(vertices_.size()); ++id) {
    if (is_content(id)) out.push_back(id);
  }
  return out;
}

std::vector<int> SentenceGraph::modifier_vertices() const {
  std::vector<int> out;
  for (int id = 1; id < static_cast<int>(vertices_.size()); ++id) {
    if (is_modifier(id)) out.push_back(id);
  }
  return out;
}

std::vector<int> SentenceGraph::descendants(int id) const {
  std::vector<int> out;
  std::vector<int> stack(vertices_.at(id).modifiers.rbegin(), vertices_.at(id).modifiers.rend());
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (auto it = vertices_[v].modifiers.rbegin(); it != vertices_[v].modifiers.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<int> SentenceGraph::subjects_of(int verb) const {
  std::vector<int> out;
  for (int c : components()) {
    if (vertices_[c].component == Component::Subject && tokens_[c - 1].head == verb) out.push_back(c);
  }
  return out;
}

std::vector<int> SentenceGraph::objects_of(int verb) const {
  std::vector<int> out;
  for (int c : components()) {
    if (vertices_[c].component == Component::Object && tokens_[c - 1].head == verb) out.push_back(c);
  }
  return out;
}

std::vector<int> SentenceGraph::verbs() const {
  std::vector<int> out;
  for (int c : components()) {
    if (vertices_[c].component == Component::Verb) out.push_back(c);
  }
  return out;
}

SentenceGraph build_graph(const std::vector<UDToken>& tokens) {
  SentenceGraph g;
  g.tokens_ = tokens;
  g.vertices_.assign(tokens.size() + 1, {});
  g.vertices_[0].present = true;
  if (tokens.empty()) return g;

  // Predicates: the root and any predicate coordinated with it.
  std::set<int> verbs;
  for (const auto& t : tokens) {
    if (t.head == 0) verbs.insert(t.id);
  }
  for (const auto& t : tokens) {
    if (t.deprel == "conj" && verbs.count(t.head) &&
        (t.upos == "VERB" || t.upos == "AUX" || tokens[t.head - 1].upos == t.upos))
      verbs.insert(t.id);
  }

  for (const auto& t : tokens) {
    if (is_punct(t)) continue;
    auto& v = g.vertices_[t.id];
    v.present = true;
    if (verbs.count(t.id)) {
      v.component = Component::Verb;
      v.parent = 0;
    } else if (verbs.count(t.head) && is_subject_relation(t.deprel) && t.deprel != "expl") {
      v.component = Component::Subject;
      v.parent = 0;
    } else if (verbs.count(t.head) && (t.deprel == "obj" || t.deprel == "iobj")) {
      v.component = Component::Object;
      v.parent = 0;
    } else {
      v.parent = t.head;
    }
  }
  for (const auto& t : tokens) {
    const auto& v = g.vertices_[t.id];
    if (!v.present) continue;
    g.vertices_[v.parent].modifiers.push_back(t.id);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Alignment
// ---------------------------------------------------------------------------

AlignmentSet::AlignmentSet(std::vector<AlignedPair> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end(),
            [](const AlignedPair& a, const AlignedPair& b) { return a.premise < b.premise; });
}

int AlignmentSet::partner_of_premise(int id) const {
  for (const auto& p : pairs_) {
    if (p.premise == id) return p.hypothesis;
  }
  return 0;
}

int AlignmentSet::partner_of_hypothesis(int id) const {
  for (const auto& p : pairs_) {
    if (p.hypothesis == id) return p.premise;
  }
  return 0;
}

double AlignmentSet::score_of_premise(int id) const {
  for (const auto& p : pairs_) {
    if (p.premise == id) return p.score;
  }
  return 0.0;
}

namespace {

// Higher score wins; on equal scores the closer token positions win, then the
// lower ids, so the outcome never depends on container order.
bool better(const AlignedPair& a, const AlignedPair& b) {
  if (a.score != b.score) return a.score > b.score;
  const int da = std::abs(a.premise - a.hypothesis), db = std::abs(b.premise - b.hypothesis);
  if (da != db) return da < db;
  if (a.premise != b.premise) return a.premise < b.premise;
  return a.hypothesis < b.hypothesis;
}

}  // namespace

AlignmentSet align(const SentenceGraph& gp, const SentenceGraph& gh, const WordSimilarity& wsim, double threshold) {
  std::map<std::pair<int, int>, double> sims;
  auto sim = [&](int p, int h) {
    auto [it, fresh] = sims.try_emplace({p, h}, 0.0);
    if (fresh) it->second = wsim(gp.token(p), gh.token(h));
    return it->second;
  };

  // Round 1: component-level product plus recursive child pairing.
  std::map<std::pair<int, int>, double> candidates;
  std::set<std::pair<int, int>> expanded;
  std::function<void(int, int)> pair_children = [&](int p, int h) {
    if (!expanded.insert({p, h}).second) return;
    for (int pc : gp.modifiers(p)) {
      AlignedPair best{pc, 0, -1.0};
      for (int hc : gh.modifiers(h)) {
        AlignedPair cand{pc, hc, sim(pc, hc)};
        if (best.hypothesis == 0 || better(cand, best)) best = cand;
      }
      if (best.hypothesis == 0 || best.score < threshold) continue;
      candidates[{best.premise, best.hypothesis}] = best.score;
      pair_children(best.premise, best.hypothesis);
    }
  };
  for (int cp : gp.components()) {
    for (int ch : gh.components()) {
      const double s = sim(cp, ch);
      if (s >= threshold) candidates[{cp, ch}] = s;
      pair_children(cp, ch);
    }
  }

  // Keep only each premise vertex's maximal candidates.
  std::map<int, double> best_for_premise;
  for (const auto& [key, s] : candidates) {
    auto [it, fresh] = best_for_premise.try_emplace(key.first, s);
    if (!fresh) it->second = std::max(it->second, s);
  }
  std::vector<AlignedPair> round1;
  for (const auto& [key, s] : candidates) {
    if (s == best_for_premise[key.first]) round1.push_back({key.first, key.second, s});
  }

  // Round 2: one premise partner per hypothesis vertex.
  std::map<int, AlignedPair> by_hypothesis;
  for (const auto& p : round1) {
    auto [it, fresh] = by_hypothesis.try_emplace(p.hypothesis, p);
    if (!fresh && better(p, it->second)) it->second = p;
  }
  // Round 3: one hypothesis partner per premise vertex.
  std::map<int, AlignedPair> by_premise;
  for (const auto& [_, p] : by_hypothesis) {
    auto [it, fresh] = by_premise.try_emplace(p.premise, p);
    if (!fresh && better(p, it->second)) it->second = p;
  }
  std::vector<AlignedPair> final_pairs;
  for (const auto& [_, p] : by_premise) final_pairs.push_back(p);
  return AlignmentSet(std::move(final_pairs));
}

// ---------------------------------------------------------------------------
// Recommendation
// ---------------------------------------------------------------------------

bool Recommendation::wants(Directive d) const {
  return std::find(premise.begin(), premise.end(), d) != premise.end() ||
         std::find(hypothesis.begin(), hypothesis.end(), d) != hypothesis.end();
}

bool Recommendation::all_none() const {
  auto none = [](Directive d) { return d == Directive::None; };
  return std::all_of(premise.begin(), premise.end(), none) && std::all_of(hypothesis.begin(), hypothesis.end(), none);
}

Recommendation recommend(const SentenceGraph& gp, const SentenceGraph& gh, const AlignmentSet& a) {
  Recommendation r;
  r.premise.assign(gp.token_count() + 1, Directive::None);
  r.hypothesis.assign(gh.token_count() + 1, Directive::None);

  for (int id = 1; id <= static_cast<int>(gp.token_count()); ++id) {
    if (!gp.present(id)) continue;
    const int partner = a.partner_of_premise(id);
    if (partner == 0) r.premise[id] = Directive::PhrasalDelete;
    else if (lowercase(gp.token(id).lemma) != lowercase(gh.token(partner).lemma)) r.premise[id] = Directive::Lexical;
  }
  for (int id = 1; id <= static_cast<int>(gh.token_count()); ++id) {
    if (gh.present(id) && a.partner_of_hypothesis(id) == 0) r.hypothesis[id] = Directive::PhrasalInsert;
  }

  // Aligned modifiers that changed relation or hang under a different
  // vertex mean the parent was rephrased rather than edited.
  auto base = [](const std::string& rel) { return rel.substr(0, rel.find(':')); };
  std::vector<bool> restructured(gp.token_count() + 1, false);
  for (const auto& pr : a.pairs()) {
    const int pv = gp.vertex(pr.premise).parent;
    if (pv <= 0 || a.partner_of_premise(pv) == 0) continue;
    if (a.partner_of_premise(pv) != gh.vertex(pr.hypothesis).parent ||
        base(gp.token(pr.premise).deprel) != base(gh.token(pr.hypothesis).deprel))
      restructured[pv] = true;
  }

  for (int id = 1; id <= static_cast<int>(gp.token_count()); ++id) {
    if (!restructured[id] && r.premise[id] != Directive::Lexical) continue;
    const int partner = a.partner_of_premise(id);
    const auto below_p = gp.descendants(id);
    const auto below_h = gh.descendants(partner);
    const bool nested = std::any_of(below_p.begin(), below_p.end(), [&](int v) { return r.premise[v] != Directive::None; }) ||
                        std::any_of(below_h.begin(), below_h.end(), [&](int v) { return r.hypothesis[v] != Directive::None; });
    if (!nested && !restructured[id]) continue;
    r.premise[id] = Directive::SyntacticVariation;
    for (int v : below_p) r.premise[v] = Directive::None;
    for (int v : below_h) r.hypothesis[v] = Directive::None;
  }
  return r;
}

}  // namespace monolog
