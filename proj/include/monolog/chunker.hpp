#pragma once

#include <string>
#include <vector>

#include "monolog/conllu.hpp"
#include "monolog/graph.hpp"

namespace monolog {

/// A contiguous phrase composed around a content word. `span` lists token
/// ids in surface order; punctuation between members is included, so the
/// ids form an unbroken run.
struct Chunk {
  int anchor = 0;
  std::vector<int> span;
  std::string text;
  bool verb_phrase = false;

  int first() const { return span.front(); }
  int last() const { return span.back(); }
  bool operator==(const Chunk& o) const { return span == o.span; }
  bool operator<(const Chunk& o) const { return span < o.span; }
};

/// One chunk per content vertex: the anchor plus every modifier block that
/// keeps the chain unbroken, growing outward from the anchor. A modifier that
/// is itself a content word contributes its own chunk.
std::vector<Chunk> chunks_for(const SentenceGraph& g, const std::vector<UDToken>& tokens);

/// Verb chunk joined with each of its objects' chunks, when the two are adjacent.
std::vector<Chunk> verb_phrase_chunks(const SentenceGraph& g, const std::vector<Chunk>& base);

/// chunks_for + verb_phrase_chunks, sorted by span and deduplicated.
std::vector<Chunk> all_chunks(const SentenceGraph& g);

}  // namespace monolog
