#include "monolog/generation.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "monolog/errors.hpp"

namespace monolog {

std::string_view edit_kind_name(EditKind k) {
  switch (k) {
    case EditKind::LexSub: return "LEX_SUB";
    case EditKind::PhrasalDel: return "PHRASAL_DEL";
    case EditKind::PhrasalIns: return "PHRASAL_INS";
    case EditKind::SynVar: return "SYN_VAR";
  }
  return "?";
}

std::string Edit::describe() const {
  std::string out(edit_kind_name(kind));
  out += " [";
  out += removed;
  out += "] -> [";
  out += replacement;
  out += "]";
  if (!site.empty()) out += " @" + std::to_string(site.front());
  return out;
}

namespace {

constexpr int kTempBase = 1000000;

std::string join_forms(const std::vector<UDToken>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.form;
  }
  return out;
}

std::string span_forms(const std::vector<UDToken>& tokens, int first, int last) {
  std::string out;
  for (int id = first; id <= last; ++id) {
    if (!out.empty()) out += ' ';
    out += tokens[id - 1].form;
  }
  return out;
}

bool starts_upper(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

std::string match_case(std::string word, std::string_view model) {
  if (starts_upper(model) && !word.empty()) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  return word;
}

std::string base_relation(std::string_view deprel) {
  return std::string(deprel.substr(0, deprel.find(':')));
}

}  // namespace

std::vector<UDToken> apply_splice(const std::vector<UDToken>& tokens, const Splice& s) {
  const int n = static_cast<int>(tokens.size());
  if (s.first < 1 || s.first > n + 1 || s.last > n || s.last < s.first - 1)
    throw StructuralError("splice range out of bounds");
  const bool removes = s.last >= s.first;
  auto removed = [&](int id) { return removes && id >= s.first && id <= s.last; };
  if (removes && s.reattach_to >= static_cast<int>(s.insert.size()))
    throw StructuralError("splice reattachment target missing");

  auto map_parent_head = [&](int head) -> int {
    if (!removed(head)) return head;
    if (s.reattach_to < 0) throw StructuralError("splice orphans a dependent");
    return kTempBase + s.reattach_to;
  };

  std::vector<UDToken> out;
  out.reserve(tokens.size() + s.insert.size());
  auto emit_inserted = [&] {
    for (std::size_t k = 0; k < s.insert.size(); ++k) {
      UDToken t = s.insert[k];
      t.id = kTempBase + static_cast<int>(k);
      if (t.head < 0) t.head = kTempBase + (-t.head - 1);
      else if (removed(t.head)) throw StructuralError("inserted token attached to removed token");
      out.push_back(std::move(t));
    }
  };
  for (const auto& t : tokens) {
    if (t.id == s.first) emit_inserted();
    if (removed(t.id)) continue;
    UDToken copy = t;
    copy.head = map_parent_head(t.head);
    out.push_back(std::move(copy));
  }
  if (s.first == n + 1) emit_inserted();

  renumber(out);
  root_id(out);
  // Head chains must reach the root.
  const int m = static_cast<int>(out.size());
  for (const auto& t : out) {
    int cur = t.id, steps = 0;
    while (cur != 0) {
      cur = out[cur - 1].head;
      if (++steps > m) throw StructuralError("splice created a cycle");
    }
  }
  return out;
}

std::string reinflect(std::string_view form, std::string_view lemma, std::string_view new_lemma) {
  const std::string f = lowercase(form), l = lowercase(lemma), nl = lowercase(new_lemma);
  if (f == l || l.empty() || nl.empty()) return match_case(nl, form);
  std::string suffix;
  if (f.compare(0, l.size(), l) == 0) suffix = f.substr(l.size());
  else if ((l.back() == 'e' || l.back() == 'y') && f.compare(0, l.size() - 1, l, 0, l.size() - 1) == 0)
    suffix = f.substr(l.size() - 1);
  else
    return match_case(nl, form);  // irregular

  // Reduce to a canonical ending: s, ed, ing.
  if (suffix.size() > 2 && suffix[0] == l.back() && (suffix.substr(1) == "ing" || suffix.substr(1) == "ed"))
    suffix = suffix.substr(1);  // running, stopped
  if (suffix == "es" || suffix == "ies") suffix = "s";
  else if (suffix == "d" || suffix == "ied") suffix = "ed";

  auto ends = [&](std::string_view tail) {
    return nl.size() >= tail.size() && nl.compare(nl.size() - tail.size(), tail.size(), tail) == 0;
  };
  auto vowel = [](char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; };
  const bool consonant_y = nl.size() > 1 && nl.back() == 'y' && !vowel(nl[nl.size() - 2]);
  // run -> running: one vowel group closed by a single consonant
  const auto groups = std::count_if(nl.begin(), nl.end(), [&, prev = false](char c) mutable {
    const bool v = vowel(c), starts = v && !prev;
    prev = v;
    return starts;
  });
  const bool double_final = groups == 1 && nl.size() >= 3 && !vowel(nl.back()) &&
                            std::string_view("wxy").find(nl.back()) == std::string_view::npos &&
                            vowel(nl[nl.size() - 2]) && !vowel(nl[nl.size() - 3]);
  std::string out;
  if (suffix == "s") {
    if (ends("s") || ends("x") || ends("z") || ends("ch") || ends("sh")) out = nl + "es";
    else if (consonant_y) out = nl.substr(0, nl.size() - 1) + "ies";
    else out = nl + "s";
  } else if (suffix == "ed") {
    if (ends("e")) out = nl + "d";
    else if (consonant_y) out = nl.substr(0, nl.size() - 1) + "ied";
    else if (double_final) out = nl + nl.back() + "ed";
    else out = nl + "ed";
  } else if (suffix == "ing") {
    if (ends("e") && !ends("ee")) out = nl.substr(0, nl.size() - 1) + "ing";
    else if (double_final) out = nl + nl.back() + "ing";
    else out = nl + "ing";
  } else {
    out = nl + suffix;
  }
  return match_case(out, form);
}

LemmaSet lemma_set(const std::vector<UDToken>& tokens) {
  LemmaSet out;
  for (const auto& t : tokens) {
    if (!is_punct(t)) out.insert(lowercase(t.lemma));
  }
  return out;
}

bool is_modifier_relation(std::string_view deprel) {
  static const std::set<std::string, std::less<>> kRelations = {"amod", "advmod", "acl", "nmod", "obl",
                                                                 "advcl", "compound", "nummod"};
  return kRelations.count(base_relation(deprel)) > 0;
}

namespace {

// Wraps a token list into a generated sentence, or nothing when the rewrite
// does not yield a well-formed tree.
std::optional<GeneratedSentence> realize(const std::vector<UDToken>& tokens, Edit edit, const GenerationContext& ctx,
                                         int depth) {
  try {
    auto next = apply_splice(tokens, edit.splice);
    GeneratedSentence g;
    g.tree = annotate(next, ctx.lex);
    g.sentence.tokens = std::move(next);
    g.sentence.text = g.sentence.surface();
    g.edit = std::move(edit);
    g.depth = depth;
    return g;
  } catch (const StructuralError&) {
    return std::nullopt;
  }
}

const std::vector<std::pair<std::string, int>>& number_words() {
  static const std::vector<std::pair<std::string, int>> kWords = {
      {"zero", 0},  {"one", 1},    {"two", 2},     {"three", 3},    {"four", 4},    {"five", 5},     {"six", 6},
      {"seven", 7}, {"eight", 8},  {"nine", 9},    {"ten", 10},     {"eleven", 11}, {"twelve", 12},  {"thirteen", 13},
      {"fourteen", 14}, {"fifteen", 15}, {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
      {"twenty", 20}};
  return kWords;
}

std::optional<long> number_value(const std::string& lemma) {
  if (!lemma.empty() && std::all_of(lemma.begin(), lemma.end(), [](unsigned char c) { return std::isdigit(c); })) {
    if (lemma.size() > 12) return std::nullopt;
    return std::stol(lemma);
  }
  for (const auto& [w, v] : number_words()) {
    if (w == lemma) return v;
  }
  return std::nullopt;
}

const std::set<std::string>& article_class() {
  static const std::set<std::string> kArticles = {"a", "an", "the"};
  return kArticles;
}

Edit replace_token(const std::vector<UDToken>& tokens, int id, const std::string& lemma) {
  const auto& t = tokens[id - 1];
  UDToken repl = t;
  repl.lemma = lemma;
  repl.form = reinflect(t.form, t.lemma, lemma);
  Edit e;
  e.kind = EditKind::LexSub;
  e.splice.first = e.splice.last = id;
  e.splice.insert = {repl};
  e.splice.reattach_to = 0;
  e.site = {id};
  e.removed = t.form;
  e.replacement = repl.form;
  return e;
}

}  // namespace

std::vector<GeneratedSentence> lexical_infer(const PolarizedTree& pt, const GenerationContext& ctx,
                                             const LemmaSet& hypothesis_lemmas, int parent_depth) {
  const auto& tokens = pt.tokens();
  std::vector<GeneratedSentence> out;
  for (const auto& t : tokens) {
    if (is_punct(t)) continue;
    const std::string lemma = lowercase(t.lemma);
    const Polarity pol = pt.polarity_of(t.id);
    LemmaSet candidates;

    if (ctx.scale.contains(lemma) && (t.upos == "DET" || ctx.lex.contains(lemma))) {
      for (const auto& q : ctx.scale.members()) {
        if (q == lemma) continue;
        const ScaleOrder o = ctx.scale.compare(lemma, q);
        const bool ok = o == ScaleOrder::EQ || (pol == Polarity::Up && o == ScaleOrder::LEQ) ||
                        (pol == Polarity::Down && o == ScaleOrder::GEQ);
        if (ok) candidates.insert(q);
      }
    }
    // Articles are interchangeable: a repeated description is taken to corefer.
    if (t.upos == "DET" && article_class().count(lemma)) {
      for (const auto& a : article_class()) {
        if (a != lemma) candidates.insert(a);
      }
    }
    if (t.upos == "NUM") {
      if (auto v = number_value(lemma)) {
        bool up = pol == Polarity::Up;
        if (t.head > 0 && quantifier_of(tokens, t.head, ctx.lex) == "at-most") up = !up;
        for (const auto& h : hypothesis_lemmas) {
          auto hv = number_value(h);
          if (!hv || *hv == *v || pol == Polarity::Flat) continue;
          if ((up && *hv < *v) || (!up && *hv > *v)) candidates.insert(h);
        }
      }
    } else if (t.upos == "NOUN" || t.upos == "VERB" || t.upos == "PROPN") {
      const std::string pos = t.upos == "PROPN" ? "NOUN" : t.upos;
      auto add = [&](LexicalRelation r) {
        for (const auto& c : ctx.kb.query(lemma, pos, r)) candidates.insert(c);
      };
      add(LexicalRelation::Synonym);
      if (pol == Polarity::Up) add(LexicalRelation::Hypernym);
      if (pol == Polarity::Down) add(LexicalRelation::Hyponym);
    }

    for (const auto& c : restrict_to_hypothesis(candidates, hypothesis_lemmas)) {
      if (c.find_first_of(" _") != std::string::npos) continue;
      if (auto g = realize(tokens, replace_token(tokens, t.id, c), ctx, parent_depth + 1)) out.push_back(std::move(*g));
    }
  }
  return out;
}

ModifierMap build_modifier_map(const std::vector<UDToken>& hypothesis) {
  ModifierMap mm;
  QuantifierLexicon lex = QuantifierLexicon::standard();
  for (const auto& t : hypothesis) {
    if (t.head == 0 || is_punct(t) || !is_modifier_relation(t.deprel)) continue;
    if (lex.is_negator(lowercase(t.lemma)) || lex.contains(lowercase(t.lemma))) continue;
    const auto ids = subtree(hypothesis, t.id);
    // Non-contiguous subtrees cannot be spliced in as one block.
    if (ids.back() - ids.front() + 1 != static_cast<int>(ids.size())) continue;
    const auto& head = hypothesis[t.head - 1];
    ModifierEntry e;
    e.relation = t.deprel;
    e.head_lemma = lowercase(head.lemma);
    e.head_form = head.form;
    e.before_head = t.id < t.head;
    for (int id : ids) {
      UDToken c = hypothesis[id - 1];
      if (id == t.id) c.head = 0;
      else c.head = -(c.head - ids.front() + 1);
      e.tokens.push_back(std::move(c));
    }
    e.text = join_forms(e.tokens);
    mm[t.deprel].push_back(std::move(e));
  }
  return mm;
}

std::vector<GeneratedSentence> phrasal_infer(const PolarizedTree& pt, const ModifierMap& mm,
                                             const GenerationContext& ctx, int parent_depth) {
  const auto& tokens = pt.tokens();
  std::vector<GeneratedSentence> out;

  // Deletion under upward heads.
  for (const auto& t : tokens) {
    if (t.head == 0 || is_punct(t) || !is_modifier_relation(t.deprel)) continue;
    const std::string lemma = lowercase(t.lemma);
    if (ctx.lex.is_negator(lemma) || ctx.lex.contains(lemma)) continue;
    if (base_relation(t.deprel) == "nummod" && quantifier_of(tokens, t.head, ctx.lex).rfind("at-", 0) == 0) continue;
    if (pt.polarity_of(t.head) != Polarity::Up) continue;
    const auto ids = subtree(tokens, t.id);
    if (ids.back() - ids.front() + 1 != static_cast<int>(ids.size())) continue;
    Edit e;
    e.kind = EditKind::PhrasalDel;
    e.splice.first = ids.front();
    e.splice.last = ids.back();
    e.site = ids;
    e.removed = span_forms(tokens, ids.front(), ids.back());
    if (auto g = realize(tokens, std::move(e), ctx, parent_depth + 1)) out.push_back(std::move(*g));
  }

  // Insertion under downward heads.
  const auto deps = dependents(tokens);
  for (const auto& h : tokens) {
    if (is_punct(h) || pt.polarity_of(h.id) != Polarity::Down) continue;
    const std::string lemma = lowercase(h.lemma);
    std::set<std::string> present;
    for (int d : deps[h.id]) {
      const auto ids = subtree(tokens, d);
      std::string text;
      for (int id : ids) {
        if (!text.empty()) text += ' ';
        text += lowercase(tokens[id - 1].form);
      }
      present.insert(text);
    }
    for (const auto& [rel, entries] : mm) {
      for (const auto& entry : entries) {
        if (entry.head_lemma != lemma || present.count(lowercase(entry.text))) continue;
        Edit e;
        e.kind = EditKind::PhrasalIns;
        int at;
        if (entry.before_head) {
          at = h.id;
        } else {
          const auto ids = subtree(tokens, h.id);
          int last = ids.back();
          while (last > h.id && is_punct(tokens[last - 1])) --last;
          at = last + 1;
        }
        e.splice.first = at;
        e.splice.last = at - 1;
        e.splice.insert = entry.tokens;
        for (auto& tok : e.splice.insert) {
          if (tok.head == 0) tok.head = h.id;
        }
        e.site = {h.id};
        e.replacement = entry.text;
        if (auto g = realize(tokens, std::move(e), ctx, parent_depth + 1)) out.push_back(std::move(*g));
      }
    }
  }
  return out;
}

std::vector<GeneratedSentence> syntactic_variation_infer(const PolarizedTree& pt, const Sentence& hypothesis,
                                                         const std::vector<Chunk>& hypothesis_chunks,
                                                         const Scorer& para, const GenerationContext& ctx,
                                                         int parent_depth) {
  const auto& tokens = pt.tokens();
  const auto& htoks = hypothesis.tokens;
  const auto premise_chunks = all_chunks(build_graph(tokens));
  const TextForm form = para.input_form();

  std::vector<TextPair> batch;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t i = 0; i < premise_chunks.size(); ++i) {
    const auto& cp = premise_chunks[i];
    const std::string plemma = render_span(tokens, cp.first(), cp.last(), TextForm::Lemma);
    for (std::size_t j = 0; j < hypothesis_chunks.size(); ++j) {
      const auto& ch = hypothesis_chunks[j];
      if (plemma == render_span(htoks, ch.first(), ch.last(), TextForm::Lemma)) continue;
      batch.emplace_back(render_span(tokens, cp.first(), cp.last(), form), render_span(htoks, ch.first(), ch.last(), form));
      index.emplace_back(i, j);
    }
  }
  if (batch.empty()) return {};
  const auto probs = para.paraphrase(batch);

  std::vector<GeneratedSentence> out;
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (!(probs.at(k) > kParaphraseThreshold)) continue;
    const auto& cp = premise_chunks[index[k].first];
    const auto& ch = hypothesis_chunks[index[k].second];
    const auto& panchor = tokens[cp.anchor - 1];

    Edit e;
    e.kind = EditKind::SynVar;
    e.splice.first = cp.first();
    e.splice.last = cp.last();
    for (int id = ch.first(); id <= ch.last(); ++id) {
      UDToken c = htoks[id - 1];
      if (id == ch.anchor) {
        c.head = panchor.head;
        c.deprel = panchor.deprel;
        e.splice.reattach_to = id - ch.first();
      } else if (c.head >= ch.first() && c.head <= ch.last()) {
        c.head = -(c.head - ch.first() + 1);
      } else {
        c.head = -(ch.anchor - ch.first() + 1);
      }
      e.splice.insert.push_back(std::move(c));
    }
    if (panchor.head >= cp.first() && panchor.head <= cp.last()) continue;
    e.site = cp.span;
    e.removed = span_forms(tokens, cp.first(), cp.last());
    e.replacement = span_forms(htoks, ch.first(), ch.last());
    if (auto g = realize(tokens, std::move(e), ctx, parent_depth + 1)) out.push_back(std::move(*g));
  }
  return out;
}

}  // namespace monolog
