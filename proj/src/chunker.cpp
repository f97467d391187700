#include "monolog/chunker.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace monolog {

namespace {

// True when every token strictly between `a` and `b` is punctuation.
bool adjacent(const std::vector<UDToken>& tokens, int a, int b) {
  if (a > b) std::swap(a, b);
  for (int id = a + 1; id < b; ++id) {
    if (!is_punct(tokens[id - 1])) return false;
  }
  return true;
}

std::vector<int> run(int lo, int hi) {
  std::vector<int> out;
  for (int id = lo; id <= hi; ++id) out.push_back(id);
  return out;
}

std::string span_text(const std::vector<UDToken>& tokens, const std::vector<int>& span) {
  std::string out;
  for (int id : span) {
    if (!out.empty()) out += ' ';
    out += tokens[id - 1].form;
  }
  return out;
}

}  // namespace

std::vector<Chunk> chunks_for(const SentenceGraph& g, const std::vector<UDToken>& tokens) {
  std::map<int, std::pair<int, int>> memo;  // vertex -> [lo, hi]
  std::function<std::pair<int, int>(int)> extent = [&](int v) -> std::pair<int, int> {
    if (auto it = memo.find(v); it != memo.end()) return it->second;
    int lo = v, hi = v;
    std::vector<std::pair<int, int>> left, right;
    for (int m : g.modifiers(v)) {
      auto block = extent(m);
      (block.second < v ? left : right).push_back(block);
    }
    std::sort(left.begin(), left.end(), [](auto& a, auto& b) { return a.second > b.second; });
    std::sort(right.begin(), right.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (const auto& [blo, bhi] : left) {
      if (!adjacent(tokens, bhi, lo)) break;
      lo = blo;
    }
    for (const auto& [blo, bhi] : right) {
      if (!adjacent(tokens, hi, blo)) break;
      hi = bhi;
    }
    memo[v] = {lo, hi};
    return {lo, hi};
  };

  std::vector<Chunk> out;
  for (int v : g.content_vertices()) {
    auto [lo, hi] = extent(v);
    Chunk c;
    c.anchor = v;
    c.span = run(lo, hi);
    c.text = span_text(tokens, c.span);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Chunk> verb_phrase_chunks(const SentenceGraph& g, const std::vector<Chunk>& base) {
  auto find_chunk = [&](int anchor) -> const Chunk* {
    for (const auto& c : base) {
      if (c.anchor == anchor && !c.verb_phrase) return &c;
    }
    return nullptr;
  };
  const auto& tokens = g.tokens();
  std::vector<Chunk> out;
  for (int v : g.verbs()) {
    const Chunk* verb = find_chunk(v);
    if (!verb) continue;
    for (int o : g.objects_of(v)) {
      const Chunk* obj = find_chunk(o);
      if (!obj) continue;
      const bool verb_first = verb->last() < obj->first();
      const bool joined = verb_first ? adjacent(tokens, verb->last(), obj->first())
                                     : obj->last() < verb->first() && adjacent(tokens, obj->last(), verb->first());
      if (!joined) continue;
      Chunk c;
      c.anchor = v;
      c.verb_phrase = true;
      c.span = run(std::min(verb->first(), obj->first()), std::max(verb->last(), obj->last()));
      c.text = span_text(tokens, c.span);
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Chunk> all_chunks(const SentenceGraph& g) {
  auto base = chunks_for(g, g.tokens());
  auto vps = verb_phrase_chunks(g, base);
  base.insert(base.end(), vps.begin(), vps.end());
  std::sort(base.begin(), base.end());
  base.erase(std::unique(base.begin(), base.end()), base.end());
  return base;
}

}  // namespace monolog
