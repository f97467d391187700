#include "monolog/search.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "monolog/errors.hpp"

namespace monolog {

std::string_view label_name(Label l) {
  switch (l) {
    case Label::Entail: return "ENTAIL";
    case Label::Contradict: return "CONTRADICT";
    case Label::Neutral: return "NEUTRAL";
  }
  return "?";
}

std::string state_key(const std::vector<UDToken>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (is_punct(t)) continue;
    if (!out.empty()) out += ' ';
    out += lowercase(t.lemma);
  }
  return out;
}

bool is_goal(const std::vector<UDToken>& s, const std::vector<UDToken>& h) { return state_key(s) == state_key(h); }

Target Target::of(const Sentence& hypothesis) {
  Target t;
  t.sentence = hypothesis;
  t.graph = build_graph(hypothesis.tokens);
  t.chunks = all_chunks(t.graph);
  t.lemmas = lemma_set(hypothesis.tokens);
  t.modifiers = build_modifier_map(hypothesis.tokens);
  t.key = state_key(hypothesis.tokens);
  return t;
}

std::string InferenceResult::render() const {
  std::string out = std::string(label_name(label)) + "\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out += std::to_string(i + 1) + ". " + trace[i].edit.describe() + "\n   " + trace[i].sentence + "\n";
  }
  for (const auto& w : warnings) out += "warning: " + w + "\n";
  return out;
}

// ---------------------------------------------------------------------------

ScoringSession::ScoringSession(const Engine& engine, bool strict)
    : engine_(engine), strict_(strict), fallback_(engine.fallback) {
  if (!fallback_) {
    owned_fallback_ = std::make_unique<OfflineScorer>(&engine.kb);
    fallback_ = owned_fallback_.get();
  }
}

const Scorer& ScoringSession::current() const { return degraded_ ? *fallback_ : engine_.scorer; }

void ScoringSession::degrade(const std::string& what, const std::exception& e) {
  if (strict_) throw;
  if (!degraded_) {
    warnings_.push_back(what + " failed (" + e.what() + "); continuing with the " + fallback_->name() + " backend");
    degraded_ = true;
  }
}

std::vector<double> ScoringSession::distances(const std::vector<std::vector<UDToken>>& states,
                                              const std::vector<UDToken>& h) {
  auto run = [&](const Scorer& s) {
    std::vector<std::string> texts;
    texts.reserve(states.size() + 1);
    texts.push_back(render_sentence(h, s.input_form()));
    for (const auto& st : states) texts.push_back(render_sentence(st, s.input_form()));
    const auto vecs = s.embed(texts);
    if (vecs.size() != texts.size()) throw ScoringError("embedding count mismatch");
    std::vector<double> out;
    out.reserve(states.size());
    for (std::size_t i = 1; i < vecs.size(); ++i) out.push_back(euclidean(vecs[i], vecs[0]));
    return out;
  };
  if (states.empty()) return {};
  if (!degraded_) {
    try {
      return run(engine_.scorer);
    } catch (const ScoringError& e) {
      degrade("embedding", e);
    }
  }
  return run(*fallback_);
}

WordSimilarity ScoringSession::word_similarity() {
  return [this](const UDToken& a, const UDToken& b) {
    if (!degraded_) {
      try {
        return engine_.scorer.token_similarity(a, b);
      } catch (const ScoringError& e) {
        degrade("word similarity", e);
      }
    }
    return fallback_->token_similarity(a, b);
  };
}

std::vector<GeneratedSentence> ScoringSession::synvar(const PolarizedTree& pt, const Target& target,
                                                      const GenerationContext& gen, int depth) {
  try {
    return syntactic_variation_infer(pt, target.sentence, target.chunks, current(), gen, depth);
  } catch (const ScoringError& e) {
    if (strict_) throw;
    warnings_.push_back(std::string("paraphrase scoring failed (") + e.what() + "); no syntactic variations for this state");
    return {};
  }
}

// ---------------------------------------------------------------------------

std::vector<GeneratedSentence> expand(const PolarizedTree& state, int depth, const Target& target,
                                      const SearchConfig& cfg, const Engine& engine, ScoringSession& session) {
  const GenerationContext gen{engine.kb, engine.scale, engine.lex};
  bool want_lex = cfg.monotonicity, want_phr = cfg.monotonicity, want_sv = cfg.synvar;
  if (cfg.use_controller) {
    const auto gp = build_graph(state.tokens());
    const auto a = align(gp, target.graph, session.word_similarity());
    const auto rec = recommend(gp, target.graph, a);
    want_lex = want_lex && rec.wants(Directive::Lexical);
    want_phr = want_phr && (rec.wants(Directive::PhrasalDelete) || rec.wants(Directive::PhrasalInsert));
    want_sv = want_sv && rec.wants(Directive::SyntacticVariation);
  }

  std::vector<GeneratedSentence> out;
  bool ran_lex = false, ran_phr = false, ran_sv = false;
  auto run = [&](bool lex, bool phr, bool sv) {
    if (lex && !ran_lex) {
      ran_lex = true;
      for (auto& g : lexical_infer(state, gen, target.lemmas, depth)) out.push_back(std::move(g));
    }
    if (phr && !ran_phr) {
      ran_phr = true;
      for (auto& g : phrasal_infer(state, target.modifiers, gen, depth)) out.push_back(std::move(g));
    }
    if (sv && !ran_sv) {
      ran_sv = true;
      for (auto& g : session.synvar(state, target, gen, depth)) out.push_back(std::move(g));
    }
  };
  run(want_lex, want_phr, want_sv);
  if (out.empty()) run(cfg.monotonicity, cfg.monotonicity, cfg.synvar);
  return out;
}

namespace {

struct Node {
  GeneratedSentence g;
  int parent = -1;
};

std::vector<TraceStep> trace_of(const std::vector<Node>& nodes, int idx) {
  std::vector<TraceStep> out;
  for (int i = idx; nodes[i].parent >= 0; i = nodes[i].parent) {
    out.push_back({nodes[i].g.edit, nodes[i].g.sentence.surface()});
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

InferenceResult classify(const Sentence& premise, const Sentence& hypothesis, const SearchConfig& cfg,
                         const Engine& engine) {
  if (cfg.beam_width < 0 || cfg.max_depth < 1) throw std::invalid_argument("beam width must be >= 0 and depth >= 1");
  InferenceResult result;
  ScoringSession session(engine, cfg.strict);
  const Target target = Target::of(hypothesis);

  std::vector<Node> nodes;
  nodes.push_back({GeneratedSentence{premise, annotate(premise.tokens, engine.lex), Edit{}, 0}, -1});
  auto finish = [&](Label label, int goal) {
    result.label = label;
    if (goal >= 0) result.trace = trace_of(nodes, goal);
    result.warnings = session.warnings();
    return result;
  };
  if (state_key(premise.tokens) == target.key) return finish(Label::Entail, 0);

  std::unordered_set<std::string> seen{state_key(premise.tokens)};
  std::vector<int> frontier{0};
  for (int depth = 1; depth <= cfg.max_depth && !frontier.empty(); ++depth) {
    std::vector<int> children;
    for (int idx : frontier) {
      ++result.expanded;
      auto succ = expand(nodes[idx].g.tree, nodes[idx].g.depth, target, cfg, engine, session);
      for (auto& g : succ) {
        ++result.generated;
        std::string key = state_key(g.sentence.tokens);
        if (!seen.insert(key).second) continue;
        nodes.push_back({std::move(g), idx});
        const int child = static_cast<int>(nodes.size()) - 1;
        if (key == target.key) return finish(Label::Entail, child);
        children.push_back(child);
      }
    }
    if (cfg.beam_width > 0 && static_cast<int>(children.size()) > cfg.beam_width) {
      std::vector<std::vector<UDToken>> states;
      states.reserve(children.size());
      for (int c : children) states.push_back(nodes[c].g.sentence.tokens);
      const auto d = session.distances(states, hypothesis.tokens);
      std::vector<std::size_t> order(children.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
      std::vector<int> kept;
      for (int k = 0; k < cfg.beam_width; ++k) kept.push_back(children[order[k]]);
      children = std::move(kept);
    }
    frontier = std::move(children);
  }

  ContradictionContext cctx{engine.kb, engine.scale, engine.lex, session.word_similarity()};
  result.contradiction = analyze_contradiction(premise.tokens, hypothesis.tokens, cctx);
  return finish(result.contradiction->contradiction ? Label::Contradict : Label::Neutral, -1);
}

std::vector<UDToken> replay(const std::vector<UDToken>& premise, const std::vector<TraceStep>& trace) {
  std::vector<UDToken> cur = premise;
  for (const auto& step : trace) cur = apply_splice(cur, step.edit.splice);
  return cur;
}

}  // namespace monolog
