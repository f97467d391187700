#include "monolog/contradiction.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "monolog/errors.hpp"

namespace monolog {

std::string_view signature_kind_name(SignatureKind k) {
  switch (k) {
    case SignatureKind::QuantifierNegation: return "QUANTIFIER_NEGATION";
    case SignatureKind::VerbNegation: return "VERB_NEGATION";
    case SignatureKind::NounNegation: return "NOUN_NEGATION";
    case SignatureKind::ActionContradiction: return "ACTION_CONTRADICTION";
    case SignatureKind::DirectionContradiction: return "DIRECTION_CONTRADICTION";
  }
  return "?";
}

bool is_negative_quantifier(std::string_view lemma) {
  static const std::set<std::string, std::less<>> kNegative = {"no", "none", "nobody", "nothing", "neither",
                                                               "noone", "no-one"};
  return kNegative.count(lemma) > 0;
}

namespace {

constexpr double kDirectionThreshold = 0.9;

bool is_passive(const std::vector<UDToken>& tokens, int verb) {
  for (const auto& t : tokens) {
    if (t.head == verb && (t.deprel == "nsubj:pass" || t.deprel == "aux:pass" || t.deprel == "csubj:pass")) return true;
  }
  return false;
}

// Tokens carrying a head's quantifier (determiners and the "at most" words).
std::vector<int> quantifier_tokens(const std::vector<UDToken>& tokens, int head, const QuantifierLexicon& lex) {
  std::vector<int> out;
  for (const auto& t : tokens) {
    if (t.head != head) continue;
    const std::string lemma = lowercase(t.lemma);
    if (t.deprel.rfind("det", 0) == 0 || (lex.contains(lemma) && !lex.is_negator(lemma))) out.push_back(t.id);
  }
  return out;
}

// Quantifier-bearing pronouns and nouns ("nobody", "someone") stand for the
// whole noun phrase.
bool quantified_head(const UDToken& t, const QuantifierLexicon& lex) {
  return (t.upos == "PRON" || t.upos == "NOUN") && lex.contains(lowercase(t.lemma));
}

// Verb pairs to inspect: aligned predicates, falling back to the two roots.
std::vector<std::pair<int, int>> clause_pairs(const SentenceGraph& gp, const SentenceGraph& gh, const AlignmentSet& a) {
  std::vector<std::pair<int, int>> out;
  const auto hv = gh.verbs();
  for (int vp : gp.verbs()) {
    const int vh = a.partner_of_premise(vp);
    if (vh != 0 && std::find(hv.begin(), hv.end(), vh) != hv.end()) out.emplace_back(vp, vh);
  }
  if (out.empty() && !gp.tokens().empty() && !gh.tokens().empty()) {
    try {
      out.emplace_back(root_id(gp.tokens()), root_id(gh.tokens()));
    } catch (const StructuralError&) {
    }
  }
  return out;
}

bool licensed_change(const std::string& from, const std::string& to, const std::string& upos, Polarity pol,
                     const ContradictionContext& ctx) {
  static const std::set<std::string> kArticles = {"a", "an", "the", "this", "that"};
  if (kArticles.count(from) && kArticles.count(to)) return true;
  const std::string pos = upos == "PROPN" ? "NOUN" : upos;
  if (ctx.kb.related(from, pos, LexicalRelation::Synonym, to)) return true;
  if (pol == Polarity::Up && ctx.kb.related(from, pos, LexicalRelation::Hypernym, to)) return true;
  if (pol == Polarity::Down && ctx.kb.related(from, pos, LexicalRelation::Hyponym, to)) return true;
  if (ctx.scale.contains(from) && ctx.scale.contains(to)) {
    const ScaleOrder o = ctx.scale.compare(from, to);
    if (o == ScaleOrder::EQ) return true;
    if (pol == Polarity::Up && o == ScaleOrder::LEQ) return true;
    if (pol == Polarity::Down && o == ScaleOrder::GEQ) return true;
  }
  return false;
}

bool ignorable(const UDToken& t) {
  if (is_punct(t)) return true;
  const std::string base = t.deprel.substr(0, t.deprel.find(':'));
  if (base == "aux" || base == "cop" || base == "mark") return true;
  const std::string lemma = lowercase(t.lemma);
  return t.upos == "PRON" && (lemma == "who" || lemma == "which" || lemma == "that");
}

}  // namespace

std::vector<Signature> detect_signatures(const SentenceGraph& gp, const SentenceGraph& gh, const AlignmentSet& a,
                                         const ContradictionContext& ctx) {
  const auto& pt = gp.tokens();
  const auto& ht = gh.tokens();
  std::vector<Signature> out;
  for (auto [vp, vh] : clause_pairs(gp, gh, a)) {
    // Subject quantifiers.
    const auto sps = gp.subjects_of(vp), shs = gh.subjects_of(vh);
    if (!sps.empty() && !shs.empty()) {
      const int sp = sps.front(), sh = shs.front();
      const std::string qp = quantifier_of(pt, sp, ctx.lex), qh = quantifier_of(ht, sh, ctx.lex);
      const bool np = is_negative_quantifier(qp), nh = is_negative_quantifier(qh);
      if (np != nh || (!qp.empty() && !qh.empty() && ctx.scale.compare(qp, qh) == ScaleOrder::PERP)) {
        const bool noun = (np && quantified_head(gp.token(sp), ctx.lex) && is_negative_quantifier(lowercase(gp.token(sp).lemma))) ||
                          (nh && quantified_head(gh.token(sh), ctx.lex) && is_negative_quantifier(lowercase(gh.token(sh).lemma)));
        out.push_back({noun ? SignatureKind::NounNegation : SignatureKind::QuantifierNegation, sp, sh, vp, false});
      }
    }

    // Negators over the verb.
    const auto negp = negations_of(pt, vp, ctx.lex), negh = negations_of(ht, vh, ctx.lex);
    const std::size_t diff = negp.size() > negh.size() ? negp.size() - negh.size() : negh.size() - negp.size();
    for (std::size_t i = 0; i < diff; ++i) out.push_back({SignatureKind::VerbNegation, vp, vh, vp, false});

    // Disjoint actions.
    const std::string lp = lowercase(gp.token(vp).lemma), lh = lowercase(gh.token(vh).lemma);
    if (lp != lh && (ctx.kb.related(lp, "VERB", LexicalRelation::Antonym, lh) ||
                     ctx.kb.query_any_pos(lp, LexicalRelation::Antonym).count(lh)))
      out.push_back({SignatureKind::ActionContradiction, vp, vh, vp, false});

    // Swapped arguments.
    if (is_passive(pt, vp) || is_passive(ht, vh)) continue;
    if (lp != lh && ctx.wsim(gp.token(vp), gh.token(vh)) < kDirectionThreshold) continue;
    const auto ops = gp.objects_of(vp), ohs = gh.objects_of(vh);
    bool crossed = false;
    for (int sp : sps) {
      for (int op : ops) {
        for (int sh : shs) {
          for (int oh : ohs) {
            if (crossed) continue;
            if (a.partner_of_premise(sp) == oh && a.partner_of_premise(op) == sh &&
                a.score_of_premise(sp) >= kDirectionThreshold && a.score_of_premise(op) >= kDirectionThreshold)
              crossed = true;
          }
        }
      }
    }
    if (crossed) out.push_back({SignatureKind::DirectionContradiction, vp, vh, vp, false});
  }
  return out;
}

std::vector<Signature> cancel(std::vector<Signature>& signatures) {
  std::map<int, std::vector<std::size_t>> by_clause;
  for (std::size_t i = 0; i < signatures.size(); ++i) {
    if (signatures[i].kind != SignatureKind::DirectionContradiction) by_clause[signatures[i].clause].push_back(i);
  }
  for (auto& [_, idx] : by_clause) {
    const std::size_t pairs = idx.size() / 2;
    for (std::size_t k = 0; k < 2 * pairs; ++k) signatures[idx[k]].cancelled = true;
  }
  std::vector<Signature> out;
  for (const auto& s : signatures) {
    if (!s.cancelled) out.push_back(s);
  }
  return out;
}

bool verify_meaning_preserved(const SentenceGraph& gp, const SentenceGraph& gh, const AlignmentSet& a,
                              const PolarizedTree& pt, const std::vector<Signature>& signatures,
                              const ContradictionContext& ctx, std::vector<std::string>* why) {
  const auto& ptoks = gp.tokens();
  const auto& htoks = gh.tokens();
  std::set<int> exempt_p, exempt_h;
  for (const auto& s : signatures) {
    switch (s.kind) {
      case SignatureKind::QuantifierNegation:
      case SignatureKind::NounNegation: {
        for (int id : quantifier_tokens(ptoks, s.premise_site, ctx.lex)) exempt_p.insert(id);
        for (int id : quantifier_tokens(htoks, s.hypothesis_site, ctx.lex)) exempt_h.insert(id);
        // A negative pronoun replaces the whole noun: its head pairs with the premise head.
        if (quantified_head(gp.token(s.premise_site), ctx.lex) || quantified_head(gh.token(s.hypothesis_site), ctx.lex)) {
          exempt_p.insert(s.premise_site);
          exempt_h.insert(s.hypothesis_site);
        }
        break;
      }
      case SignatureKind::VerbNegation:
        for (int id : negations_of(ptoks, s.premise_site, ctx.lex)) exempt_p.insert(id);
        for (int id : negations_of(htoks, s.hypothesis_site, ctx.lex)) exempt_h.insert(id);
        break;
      case SignatureKind::ActionContradiction:
        exempt_p.insert(s.premise_site);
        exempt_h.insert(s.hypothesis_site);
        break;
      case SignatureKind::DirectionContradiction:
        for (int id : gp.subjects_of(s.premise_site)) exempt_p.insert(id);
        for (int id : gp.objects_of(s.premise_site)) exempt_p.insert(id);
        for (int id : gh.subjects_of(s.hypothesis_site)) exempt_h.insert(id);
        for (int id : gh.objects_of(s.hypothesis_site)) exempt_h.insert(id);
        break;
    }
  }
  // Negators matched on both sides are not transitions.
  for (int v : gp.verbs()) {
    if (a.partner_of_premise(v) == 0) continue;
    auto np = negations_of(ptoks, v, ctx.lex), nh = negations_of(htoks, a.partner_of_premise(v), ctx.lex);
    const std::size_t common = std::min(np.size(), nh.size());
    for (std::size_t i = 0; i < common; ++i) {
      exempt_p.insert(np[i]);
      exempt_h.insert(nh[i]);
    }
  }

  bool ok = true;
  auto fail = [&](std::string msg) {
    ok = false;
    if (why) why->push_back(std::move(msg));
  };

  for (const auto& t : ptoks) {
    if (ignorable(t) || exempt_p.count(t.id)) continue;
    const Polarity pol = pt.polarity_of(t.id);
    const int h = a.partner_of_premise(t.id);
    if (h == 0) {
      if (pol != Polarity::Up) fail("deletion of '" + t.form + "' at " + std::string(polarity_name(pol)));
      continue;
    }
    if (exempt_h.count(h)) continue;
    const std::string from = lowercase(t.lemma), to = lowercase(gh.token(h).lemma);
    if (from != to && !licensed_change(from, to, t.upos, pol, ctx))
      fail("replacement '" + t.form + "' -> '" + gh.token(h).form + "' at " + std::string(polarity_name(pol)));
  }
  for (const auto& t : htoks) {
    if (ignorable(t) || exempt_h.count(t.id) || a.partner_of_hypothesis(t.id) != 0) continue;
    int anc = t.head, partner = 0;
    while (anc != 0 && partner == 0) {
      partner = a.partner_of_hypothesis(anc);
      if (partner == 0) anc = htoks[anc - 1].head;
    }
    if (partner == 0) {
      fail("insertion of '" + t.form + "' without an aligned head");
    } else if (pt.polarity_of(partner) != Polarity::Down) {
      fail("insertion of '" + t.form + "' under " + std::string(polarity_name(pt.polarity_of(partner))) + " '" +
           ptoks[partner - 1].form + "'");
    }
  }
  return ok;
}

std::string ContradictionReport::render(const std::vector<UDToken>& premise,
                                        const std::vector<UDToken>& hypothesis) const {
  std::string out;
  for (const auto& s : signatures) {
    out += std::string(signature_kind_name(s.kind)) + " " + premise.at(s.premise_site - 1).form + " -> " +
           hypothesis.at(s.hypothesis_site - 1).form + (s.cancelled ? " (cancelled)" : "") + "\n";
  }
  if (signatures.empty()) out += "no signatures\n";
  for (const auto& v : violations) out += "violation: " + v + "\n";
  out += "meaning_preserved: ";
  out += meaning_preserved ? "yes\n" : "no\n";
  out += "verdict: ";
  out += contradiction ? "CONTRADICT\n" : "NO_CONTRADICTION\n";
  return out;
}

ContradictionReport analyze_contradiction(const std::vector<UDToken>& premise, const std::vector<UDToken>& hypothesis,
                                          const ContradictionContext& ctx) {
  ContradictionReport r;
  const auto gp = build_graph(premise);
  const auto gh = build_graph(hypothesis);
  const auto a = align(gp, gh, ctx.wsim);
  r.signatures = detect_signatures(gp, gh, a, ctx);
  r.surviving = cancel(r.signatures);
  const auto pt = annotate(premise, ctx.lex);
  r.meaning_preserved = verify_meaning_preserved(gp, gh, a, pt, r.signatures, ctx, &r.violations);
  r.contradiction = !r.surviving.empty() && r.meaning_preserved;
  return r;
}

bool is_contradiction(const std::vector<UDToken>& premise, const std::vector<UDToken>& hypothesis,
                      const ContradictionContext& ctx) {
  return analyze_contradiction(premise, hypothesis, ctx).contradiction;
}

}  // namespace monolog
