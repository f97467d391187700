#include "monolog/polarity.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "monolog/errors.hpp"

namespace monolog {

Polarity apply(Polarity p, Effect e) {
  if (p == Polarity::Flat || e == Effect::Flatten) return Polarity::Flat;
  if (e == Effect::Preserve) return p;
  return p == Polarity::Up ? Polarity::Down : Polarity::Up;
}

Effect compose(Effect outer, Effect inner) {
  if (outer == Effect::Flatten || inner == Effect::Flatten) return Effect::Flatten;
  if (outer == inner) return Effect::Preserve;
  return Effect::Flip;
}

std::string_view mark_symbol(Polarity p) {
  switch (p) {
    case Polarity::Up: return "↑";
    case Polarity::Down: return "↓";
    case Polarity::Flat: return "=";
  }
  return "?";
}

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Up: return "Up";
    case Polarity::Down: return "Down";
    case Polarity::Flat: return "Flat";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lexicon
// ---------------------------------------------------------------------------

QuantifierLexicon QuantifierLexicon::standard() {
  constexpr auto P = Effect::Preserve;
  constexpr auto F = Effect::Flip;
  constexpr auto X = Effect::Flatten;
  QuantifierLexicon lex;
  for (auto q : {"every", "all", "each", "everybody", "everyone", "everything"}) lex.set(q, {F, P});
  for (auto q : {"some", "a", "an", "several", "somebody", "someone", "something"}) lex.set(q, {P, P});
  for (auto q : {"no", "nobody", "nothing", "none", "noone", "no-one"}) lex.set(q, {F, F});
  for (auto q : {"most", "many"}) lex.set(q, {X, P});
  lex.set("few", {X, F});
  // Definite determiners license nothing inside their noun phrase.
  for (auto q : {"the", "this", "that", "these", "those"}) lex.set(q, {X, P});
  for (auto q : {"not", "never", "n't"}) lex.set(q, {P, F});
  lex.set("at-most", {F, F});
  lex.set("at-least", {P, P});
  return lex;
}

void QuantifierLexicon::set(std::string lemma, QuantifierEntry entry) {
  entries_[std::move(lemma)] = entry;
}

std::optional<QuantifierEntry> QuantifierLexicon::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool QuantifierLexicon::is_negator(std::string_view lemma) const {
  return lemma == "not" || lemma == "never" || lemma == "n't";
}

bool is_subject_relation(std::string_view deprel) {
  return deprel == "nsubj" || deprel.substr(0, 6) == "nsubj:" || deprel == "csubj" ||
         deprel.substr(0, 6) == "csubj:" || deprel == "expl";
}

namespace {

const UDToken& tok(const std::vector<UDToken>& tokens, int id) { return tokens.at(id - 1); }

bool is_argument_relation(std::string_view deprel) {
  return is_subject_relation(deprel) || deprel == "obj" || deprel == "iobj" || deprel == "obl" ||
         deprel.substr(0, 4) == "obl:";
}

// Which lexicon keys act as the determiner of `head_id`, outermost first.
// Also reports the dependent ids that carry them.
std::vector<std::pair<std::string, int>> quantifier_keys(const std::vector<UDToken>& tokens, int head_id,
                                                         const QuantifierLexicon& lex) {
  std::vector<std::pair<std::string, int>> keys;
  for (const auto& t : tokens) {
    if (t.head != head_id) continue;
    const std::string lemma = lowercase(t.lemma);
    if (lex.is_negator(lemma)) continue;
    if (t.deprel == "det:predet" && lex.contains(lemma)) keys.insert(keys.begin(), {lemma, t.id});
    else if ((t.deprel == "det" || t.deprel.substr(0, 4) == "det:") && lex.contains(lemma))
      keys.push_back({lemma, t.id});
    else if ((t.deprel == "amod" || t.deprel == "nummod") &&
             (lemma == "many" || lemma == "few" || lemma == "several" || lemma == "most"))
      keys.push_back({lemma, t.id});
    else if (t.deprel == "nummod" && t.id >= 3) {
      const std::string w1 = lowercase(tok(tokens, t.id - 2).lemma);
      const std::string w2 = lowercase(tok(tokens, t.id - 1).lemma);
      if (w1 == "at" && (w2 == "most" || w2 == "least")) keys.push_back({"at-" + w2, t.id});
    }
  }
  if (head_id > 0) {
    const auto& h = tok(tokens, head_id);
    const std::string lemma = lowercase(h.lemma);
    if ((h.upos == "PRON" || h.upos == "NOUN") && lex.contains(lemma) && !lex.is_negator(lemma) &&
        lemma != "that" && lemma != "this" && lemma != "these" && lemma != "those")
      keys.push_back({lemma, 0});
  }
  return keys;
}

struct HeadEffects {
  Effect restrictor = Effect::Preserve;
  Effect subject_scope = Effect::Preserve;
  Effect other_scope = Effect::Preserve;
  Effect negation = Effect::Preserve;
  std::vector<int> quantifier_deps;  // dependents that act as the head's determiner
  std::vector<int> negators;
};

std::vector<HeadEffects> head_effects(const std::vector<UDToken>& tokens, const QuantifierLexicon& lex) {
  std::vector<HeadEffects> fx(tokens.size() + 1);
  auto scope_of = [&](int id) {
    Effect e = Effect::Preserve;
    for (auto& [key, _] : quantifier_keys(tokens, id, lex)) e = compose(e, lex.find(key)->scope);
    return e;
  };
  for (const auto& t : tokens) {
    auto& f = fx[t.id];
    for (auto& [key, dep] : quantifier_keys(tokens, t.id, lex)) {
      f.restrictor = compose(f.restrictor, lex.find(key)->restrictor);
      if (dep != 0) f.quantifier_deps.push_back(dep);
    }
    f.negators = negations_of(tokens, t.id, lex);
    if (f.negators.size() % 2 == 1) f.negation = Effect::Flip;
  }
  for (const auto& t : tokens) {
    if (t.head == 0 || !is_argument_relation(t.deprel)) continue;
    auto& f = fx[t.head];
    if (is_subject_relation(t.deprel)) f.subject_scope = compose(f.subject_scope, scope_of(t.id));
    else f.other_scope = compose(f.other_scope, scope_of(t.id));
  }
  return fx;
}

}  // namespace

std::string quantifier_of(const std::vector<UDToken>& tokens, int head_id, const QuantifierLexicon& lex) {
  auto keys = quantifier_keys(tokens, head_id, lex);
  return keys.empty() ? std::string{} : keys.front().first;
}

std::vector<int> negations_of(const std::vector<UDToken>& tokens, int head_id, const QuantifierLexicon& lex) {
  std::vector<int> out;
  for (const auto& t : tokens) {
    if (t.head != head_id) continue;
    if ((t.deprel == "advmod" || t.deprel == "neg" || t.deprel == "advmod:neg") &&
        lex.is_negator(lowercase(t.lemma)))
      out.push_back(t.id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Binarization
// ---------------------------------------------------------------------------

int BinaryDepTree::leaf_of(int token_id) const {
  if (token_id < 1 || token_id >= static_cast<int>(leaf_index_.size()) || leaf_index_[token_id] < 0)
    throw LookupError("no token with id " + std::to_string(token_id));
  return leaf_index_[token_id];
}

std::vector<int> BinaryDepTree::leaf_order() const {
  std::vector<int> out;
  if (root_ < 0) return out;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    int n = stack.back();
    stack.pop_back();
    const auto& node = nodes_[n];
    if (node.leaf) {
      out.push_back(node.token);
      continue;
    }
    stack.push_back(node.right);
    stack.push_back(node.left);
  }
  return out;
}

std::string BinaryDepTree::to_string() const {
  std::function<void(int, std::ostream&)> rec = [&](int n, std::ostream& os) {
    const auto& node = nodes_[n];
    if (node.leaf) {
      os << tokens_[node.token - 1].form;
      return;
    }
    os << '(' << node.relation << ' ';
    rec(node.left, os);
    os << ' ';
    rec(node.right, os);
    os << ')';
  };
  std::ostringstream os;
  if (root_ >= 0) rec(root_, os);
  return os.str();
}

BinaryDepTree binarize(const std::vector<UDToken>& tokens) {
  BinaryDepTree tree;
  tree.tokens_ = tokens;
  if (tokens.empty()) return tree;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].id != static_cast<int>(i) + 1)
      throw StructuralError("token ids must run 1..n in order");
  }
  const int root = root_id(tokens);
  const auto deps = dependents(tokens);
  tree.leaf_index_.assign(tokens.size() + 1, -1);

  std::vector<char> visiting(tokens.size() + 1, 0);
  std::function<int(int)> build = [&](int h) -> int {
    if (visiting[h]) throw StructuralError("cyclic head chain at token " + std::to_string(h));
    visiting[h] = 1;
    BinaryDepTree::Node leaf;
    leaf.token = h;
    tree.nodes_.push_back(leaf);
    int current = static_cast<int>(tree.nodes_.size()) - 1;
    tree.leaf_index_[h] = current;

    std::vector<int> order = deps[h];
    std::stable_sort(order.begin(), order.end(), [h](int a, int b) {
      int da = std::abs(a - h), db = std::abs(b - h);
      if (da != db) return da < db;
      return a < b;  // equal distance: left dependent first
    });
    for (int d : order) {
      int sub = build(d);
      BinaryDepTree::Node inner;
      inner.leaf = false;
      inner.token = h;
      inner.relation = tokens[d - 1].deprel;
      inner.head_left = d > h;
      inner.left = d > h ? current : sub;
      inner.right = d > h ? sub : current;
      tree.nodes_.push_back(inner);
      current = static_cast<int>(tree.nodes_.size()) - 1;
    }
    return current;
  };
  tree.root_ = build(root);

  auto order = tree.leaf_order();
  if (order.size() != tokens.size()) throw StructuralError("tokens unreachable from the root");
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] != static_cast<int>(i) + 1)
      throw StructuralError("non-projective parse: leaf order differs from surface order");
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Polarization
// ---------------------------------------------------------------------------

Polarity PolarizedTree::polarity_of(int token_id) const { return marks_.at(tree_.leaf_of(token_id)); }

std::string PolarizedTree::render() const {
  std::string out;
  for (const auto& t : tree_.tokens()) {
    if (!out.empty()) out += ' ';
    out += t.form;
    out += '^';
    out += mark_symbol(polarity_of(t.id));
  }
  return out;
}

PolarizedTree polarize(const BinaryDepTree& tree, const QuantifierLexicon& lex) {
  const auto& tokens = tree.tokens();
  std::vector<Polarity> marks(tree.size(), Polarity::Up);
  if (tree.root() < 0) return PolarizedTree(tree, std::move(marks));
  const auto fx = head_effects(tokens, lex);

  auto dependent_context = [&](int h, int d, Polarity ctx) {
    const auto& f = fx[h];
    const auto& dep = tokens[d - 1];
    const bool determiner = std::find(f.quantifier_deps.begin(), f.quantifier_deps.end(), d) != f.quantifier_deps.end();
    if (determiner || dep.deprel == "det" || dep.deprel.substr(0, 4) == "det:" || dep.deprel == "case" ||
        dep.deprel == "punct" || dep.deprel == "cc" || dep.deprel == "mark")
      return ctx;
    Polarity p = apply(ctx, f.restrictor);
    if (is_subject_relation(dep.deprel)) return p;
    p = apply(p, f.subject_scope);
    if (std::find(f.negators.begin(), f.negators.end(), d) != f.negators.end()) return p;
    // Modifiers and complements share the polarity of their head, minus the
    // head's own non-subject quantified arguments.
    return apply(p, f.negation);
  };

  std::function<void(int, Polarity)> visit = [&](int n, Polarity ctx) {
    const auto& node = tree.nodes()[n];
    if (node.leaf) {
      const auto& f = fx[node.token];
      Polarity p = apply(ctx, f.restrictor);
      p = apply(p, f.subject_scope);
      p = apply(p, f.other_scope);
      marks[n] = apply(p, f.negation);
      return;
    }
    marks[n] = ctx;
    const int head_side = node.head_left ? node.left : node.right;
    const int dep_side = node.head_left ? node.right : node.left;
    visit(head_side, ctx);
    visit(dep_side, dependent_context(node.token, tree.nodes()[dep_side].token, ctx));
  };
  visit(tree.root(), Polarity::Up);
  return PolarizedTree(tree, std::move(marks));
}

PolarizedTree annotate(const std::vector<UDToken>& tokens, const QuantifierLexicon& lex) {
  return polarize(binarize(tokens), lex);
}

}  // namespace monolog
