#include "../support.hpp"
#include "doctest.h"
#include "json.hpp"
#include "monolog/errors.hpp"
#include "monolog/eval.hpp"

using namespace monolog;

namespace {

PairOutcome outcome(Label gold, Label pred, std::string tag = "") {
  PairOutcome o;
  o.gold = gold;
  o.predicted = pred;
  o.tag = std::move(tag);
  return o;
}

}  // namespace

TEST_SUITE("eval") {
TEST_CASE("labels") {
  CHECK(parse_label("ENTAILMENT", 1) == Label::Entail);
  CHECK(parse_label("contradiction", 1) == Label::Contradict);
  CHECK(parse_label("Neutral", 1) == Label::Neutral);
  try {
    parse_label("maybe", 7);
    FAIL("expected LoadError");
  } catch (const LoadError& e) {
    CHECK(e.line() == 7);
  }
}

TEST_CASE("SICK rows") {
  const auto pairs = parse_sick(
      "pair_ID\tsentence_A\tsentence_B\trelatedness_score\tentailment_judgment\n"
      "1\tA dog runs\tAn animal runs\t4.5\tENTAILMENT\n"
      "2\tA dog runs\tNo dog runs\t3.6\tCONTRADICTION\n");
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].id == "1");
  CHECK(pairs[0].hypothesis == "An animal runs");
  CHECK(pairs[1].gold == Label::Contradict);
  CHECK_THROWS_AS(parse_sick("pair_ID\tsentence_A\n1\tx\n"), LoadError);
  CHECK_THROWS_AS(parse_sick("pair_ID\tsentence_A\tsentence_B\tentailment_judgment\n1\ta\tb\n"), LoadError);
}

TEST_CASE("MED rows: tags from the genre, contradiction folded into neutral") {
  const auto pairs = parse_med(
      "index\tgenre\tsentence1\tsentence2\tgold_label\n"
      "10\tcrowdsource:downward_monotone\tNo dog runs\tNo puppy runs\tentailment\n"
      "11\thand:upward_monotone:lexical\tA puppy runs\tA dog runs\tentailment\n"
      "12\thand:non_monotone\tA dog\tNo dog\tcontradiction\n");
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].id == "10");
  CHECK(pairs[0].tag == "downward");
  CHECK(pairs[1].tag == "upward");
  CHECK(pairs[2].tag == "none");
  CHECK(pairs[2].gold == Label::Neutral);
}

TEST_CASE("mini-corpus files load with parses") {
  auto pairs = load_sick(testing::data("minicorpus/pairs.tsv"));
  CHECK(pairs.size() == 60);
  CHECK(attach_parses(pairs, testing::data("minicorpus/parses")) == 60);
  CHECK(pairs[0].premise_parse->surface() == pairs[0].premise);
  CHECK_THROWS_AS(load_sick("/nonexistent.tsv"), LoadError);
}

// Expected figures worked out by hand from the five outcomes below.
TEST_CASE("metrics") {
  const auto r = compute_metrics({outcome(Label::Entail, Label::Entail), outcome(Label::Entail, Label::Neutral),
                                  outcome(Label::Contradict, Label::Contradict), outcome(Label::Neutral, Label::Neutral),
                                  outcome(Label::Neutral, Label::Entail)},
                                 false);
  CHECK(r.total == 5);
  CHECK(r.accuracy == doctest::Approx(0.6));
  CHECK(r.confusion[0] == std::array<int, 3>{1, 0, 1});
  CHECK(r.confusion[2] == std::array<int, 3>{1, 0, 1});
  CHECK(r.per_class[0].precision == doctest::Approx(0.5));
  CHECK(r.per_class[1].recall == doctest::Approx(1.0));
  CHECK(r.per_class[2].support == 2);
  CHECK(r.macro_precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.macro_recall == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("MED metrics by tag") {
  const auto r = compute_metrics({outcome(Label::Entail, Label::Entail, "upward"),
                                  outcome(Label::Neutral, Label::Contradict, "downward"),
                                  outcome(Label::Entail, Label::Neutral, "downward")},
                                 true);
  CHECK(r.accuracy == doctest::Approx(2.0 / 3.0));
  CHECK(r.by_tag.at("upward").accuracy() == 1.0);
  CHECK(r.by_tag.at("downward").correct == 1);
  CHECK(r.by_tag.at("all").total == 3);
}

TEST_CASE("evaluation is the same with one or four workers") {
  const testing::Kit kit;
  auto pairs = load_sick(testing::data("minicorpus/pairs.tsv"));
  attach_parses(pairs, testing::data("minicorpus/parses"));
  pairs.push_back(NLIPair{"orphan", "x", "y", Label::Neutral, "", std::nullopt, std::nullopt});
  EvalOptions one, four;
  four.workers = 4;
  const auto a = evaluate(pairs, kit.engine(), one);
  const auto b = evaluate(pairs, kit.engine(), four);
  CHECK(a.unparseable == 1);
  CHECK(report_json(a, {}) == report_json(b, {}));
  const auto j = nlohmann::json::parse(report_json(a, {{"beam", "10"}}));
  CHECK(j["config"]["beam"] == "10");
  CHECK(j["total"] == 61);
  CHECK(j["pairs"].size() == 61);
  CHECK(report_text(a).find("accuracy") != std::string::npos);
}
}
