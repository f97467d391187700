#include <sstream>

#include "../support.hpp"
#include "doctest.h"
#include "monolog/errors.hpp"
#include "monolog/polarity.hpp"

using namespace monolog;

namespace {

std::string marks(const Sentence& s) {
  const auto pt = annotate(s.tokens, QuantifierLexicon::standard());
  std::string out;
  for (const auto& t : s.tokens) {
    if (!out.empty()) out += ' ';
    out += mark_symbol(pt.polarity_of(t.id));
  }
  return out;
}

}  // namespace

TEST_SUITE("polarity") {
TEST_CASE("effect algebra") {
  CHECK(apply(Polarity::Up, Effect::Flip) == Polarity::Down);
  CHECK(apply(Polarity::Down, Effect::Flip) == Polarity::Up);
  CHECK(apply(Polarity::Flat, Effect::Flip) == Polarity::Flat);
  CHECK(apply(Polarity::Down, Effect::Flatten) == Polarity::Flat);
  CHECK(compose(Effect::Flip, Effect::Flip) == Effect::Preserve);
  CHECK(compose(Effect::Flatten, Effect::Flip) == Effect::Flatten);
}

TEST_CASE("every healthy person plays sports") {
  const auto s = parse_conllu(
      "1\tEvery\tevery\tDET\t_\t_\t3\tdet\t_\t_\n"
      "2\thealthy\thealthy\tADJ\t_\t_\t3\tamod\t_\t_\n"
      "3\tperson\tperson\tNOUN\t_\t_\t4\tnsubj\t_\t_\n"
      "4\tplays\tplay\tVERB\t_\t_\t0\troot\t_\t_\n"
      "5\tsports\tsport\tNOUN\t_\t_\t4\tobj\t_\t_\n")[0];
  CHECK(marks(s) == "↑ ↓ ↓ ↑ ↑");
  const auto pt = annotate(s.tokens, QuantifierLexicon::standard());
  CHECK(pt.render() == "Every^↑ healthy^↓ person^↓ plays^↑ sports^↑");
}

// Goldens were marked by hand; "# expected" holds one symbol per token.
TEST_CASE("hand-derived goldens") {
  const auto sentences = read_conllu_file(testing::data("polarity/golden.conllu"));
  REQUIRE(sentences.size() >= 20);
  for (const auto& s : sentences) {
    INFO(s.comment_value("sent_id"));
    CHECK(marks(s) == s.comment_value("expected"));
  }
}

TEST_CASE("woman in the rain: only the definite restrictor is flat") {
  const auto sentences = read_conllu_file(testing::data("polarity/golden.conllu"));
  const Sentence* rain = nullptr;
  for (const auto& s : sentences)
    if (s.comment_value("sent_id") == "woman-rain") rain = &s;
  REQUIRE(rain);
  const auto pt = annotate(rain->tokens, QuantifierLexicon::standard());
  for (const auto& t : rain->tokens) {
    INFO(t.form);
    CHECK(pt.polarity_of(t.id) == (t.form == "rain" ? Polarity::Flat : Polarity::Up));
  }
}

TEST_CASE("binarization keeps surface order and labels relations") {
  const auto s = parse_conllu(
      "1\tdogs\tdog\tNOUN\t_\t_\t2\tnsubj\t_\t_\n"
      "2\trun\trun\tVERB\t_\t_\t0\troot\t_\t_\n")[0];
  const auto bt = binarize(s.tokens);
  CHECK(bt.to_string() == "(nsubj dogs run)");
  CHECK(bt.leaf_order() == std::vector<int>{1, 2});
  CHECK_THROWS_AS(bt.leaf_of(9), LookupError);
}

TEST_CASE("crossing arcs and double roots are rejected") {
  const auto crossing = parse_conllu(
      "1\ta\ta\tX\t_\t_\t3\tdep\t_\t_\n"
      "2\tb\tb\tX\t_\t_\t4\tdep\t_\t_\n"
      "3\tc\tc\tX\t_\t_\t0\troot\t_\t_\n"
      "4\td\td\tX\t_\t_\t1\tdep\t_\t_\n")[0];
  CHECK_THROWS_AS(binarize(crossing.tokens), StructuralError);
  auto two = crossing.tokens;
  two = {two[2]};
  two.push_back(two[0]);
  two[1].id = 2;
  CHECK_THROWS_AS(binarize(two), StructuralError);
}

TEST_CASE("quantifier and negation lookups") {
  const auto lex = QuantifierLexicon::standard();
  const auto s = parse_conllu(
      "1\tAt\tat\tADV\t_\t_\t2\tadvmod\t_\t_\n"
      "2\tmost\tmost\tADV\t_\t_\t3\tadvmod\t_\t_\n"
      "3\tthree\tthree\tNUM\t_\t_\t4\tnummod\t_\t_\n"
      "4\tdogs\tdog\tNOUN\t_\t_\t6\tnsubj\t_\t_\n"
      "5\tnever\tnever\tADV\t_\t_\t6\tadvmod\t_\t_\n"
      "6\tbark\tbark\tVERB\t_\t_\t0\troot\t_\t_\n")[0];
  CHECK(quantifier_of(s.tokens, 4, lex) == "at-most");
  CHECK(negations_of(s.tokens, 6, lex) == std::vector<int>{5});
  CHECK(lex.is_negator("not"));
  CHECK_FALSE(lex.is_negator("every"));
  CHECK(is_subject_relation("nsubj:pass"));
}
}
