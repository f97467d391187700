#include <algorithm>
#include <set>

#include "../support.hpp"
#include "doctest.h"
#include "monolog/chunker.hpp"
#include "monolog/graph.hpp"

using namespace monolog;

namespace {

std::set<std::string> chunk_texts(const Sentence& s) {
  std::set<std::string> out;
  for (const auto& c : all_chunks(build_graph(s.tokens))) out.insert(c.text);
  return out;
}

const Sentence& by_id(const std::vector<Sentence>& v, const std::string& id) {
  for (const auto& s : v)
    if (s.comment_value("sent_id") == id) return s;
  throw std::runtime_error("no sentence " + id);
}

}  // namespace

TEST_SUITE("graph") {
TEST_CASE("components and modifiers") {
  const auto p = testing::load_one("motorcycle/premise.conllu");
  const auto g = build_graph(p.tokens);
  CHECK(g.verbs() == std::vector<int>{8});
  CHECK(g.subjects_of(8) == std::vector<int>{2});
  CHECK(g.objects_of(8) == std::vector<int>{11});
  CHECK(g.vertex(2).component == Component::Subject);
  CHECK(g.vertex(11).component == Component::Object);
  CHECK(g.is_modifier(10));
  CHECK(g.is_content(11));
  const auto below = g.descendants(11);
  CHECK(std::set<int>(below.begin(), below.end()) == std::set<int>{9, 10, 12, 13, 14});
}

TEST_CASE("alignment on the motorcycle pair") {
  const testing::Kit kit{load_dump(testing::data("motorcycle/kb.tsv"), Provenance::Handcrafted)};
  const auto p = testing::load_one("motorcycle/premise.conllu");
  const auto h = testing::load_one("motorcycle/hypothesis.conllu");
  const auto gp = build_graph(p.tokens), gh = build_graph(h.tokens);
  const auto a = align(gp, gh, kit.contra().wsim);
  CHECK(a.partner_of_premise(2) == 2);
  CHECK(a.partner_of_premise(8) == 4);
  CHECK(a.partner_of_premise(11) == 6);
  CHECK(a.score_of_premise(11) == doctest::Approx(0.9));
  CHECK(a.partner_of_premise(14) == 9);
  CHECK(a.partner_of_premise(6) == 0);

  const auto r = recommend(gp, gh, a);
  CHECK(r.premise[6] == Directive::PhrasalDelete);
  CHECK(r.premise[11] == Directive::SyntacticVariation);
  CHECK(r.premise[10] == Directive::None);  // folded into the variation
  CHECK(r.wants(Directive::SyntacticVariation));
  CHECK_FALSE(r.all_none());
}

TEST_CASE("identical sentences need nothing") {
  const testing::Kit kit;
  const auto p = testing::load_one("motorcycle/premise.conllu");
  const auto g = build_graph(p.tokens);
  const auto a = align(g, g, kit.contra().wsim);
  CHECK(a.size() == p.tokens.size());
  CHECK(recommend(g, g, a).all_none());
}

TEST_CASE("a modifier that changes relation marks its parent for variation") {
  const testing::Kit kit;
  const auto [p, h] = testing::load_pair("minicorpus/parses/m26.conllu");
  const auto gp = build_graph(p.tokens), gh = build_graph(h.tokens);
  const auto r = recommend(gp, gh, align(gp, gh, kit.contra().wsim));
  CHECK(r.premise[2] == Directive::SyntacticVariation);
}

TEST_CASE("the threshold keeps weak pairs apart") {
  const testing::Kit kit;
  const auto [p, h] = testing::load_pair("minicorpus/parses/m56.conllu");
  const auto gp = build_graph(p.tokens), gh = build_graph(h.tokens);
  const auto a = align(gp, gh, kit.contra().wsim, 0.5);
  CHECK(a.partner_of_premise(6) == 0);  // guitar / piano only share a POS
  CHECK(align(gp, gh, kit.contra().wsim).partner_of_premise(6) == 6);
}
}

TEST_SUITE("chunker") {
TEST_CASE("a trailing adverb stays out of the verb chunk") {
  const auto s = by_id(read_conllu_file(testing::data("chunker/examples.conllu")), "carefully-excluded");
  const auto texts = chunk_texts(s);
  CHECK(texts.count("eats"));
  CHECK(texts.count("eats the food"));
  for (const auto& t : texts) CHECK(t.find("carefully") == std::string::npos);
}

TEST_CASE("a preverbal adverb joins the verb chunk") {
  const auto s = by_id(read_conllu_file(testing::data("chunker/examples.conllu")), "carefully-included");
  const auto texts = chunk_texts(s);
  CHECK(texts.count("carefully eats"));
  CHECK(texts.count("carefully eats the food"));
  CHECK_FALSE(texts.count("eats"));
}

TEST_CASE("nested prepositional chunks") {
  const auto s = by_id(read_conllu_file(testing::data("chunker/examples.conllu")), "pink-dress");
  const auto texts = chunk_texts(s);
  CHECK(texts.count("in a pink dress"));
  CHECK(texts.count("The woman in a pink dress"));
}

TEST_CASE("chunks are contiguous and sorted") {
  for (const auto& s : read_conllu_file(testing::data("chunker/examples.conllu"))) {
    const auto cs = all_chunks(build_graph(s.tokens));
    CHECK(std::is_sorted(cs.begin(), cs.end()));
    for (const auto& c : cs) {
      for (std::size_t i = 1; i < c.span.size(); ++i) CHECK(c.span[i] == c.span[i - 1] + 1);
      CHECK(std::find(c.span.begin(), c.span.end(), c.anchor) != c.span.end());
    }
  }
}
}
