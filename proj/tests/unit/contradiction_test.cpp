#include "../support.hpp"
#include "doctest.h"
#include "monolog/contradiction.hpp"

using namespace monolog;

namespace {

ContradictionReport report(const std::string& name) {
  static const testing::Kit kit;
  const auto [p, h] = testing::load_pair("contradiction/" + name + ".conllu");
  return analyze_contradiction(p.tokens, h.tokens, kit.contra());
}

bool has_kind(const std::vector<Signature>& v, SignatureKind k) {
  for (const auto& s : v)
    if (s.kind == k) return true;
  return false;
}

}  // namespace

TEST_SUITE("contradiction") {
TEST_CASE("signature kinds of the five canonical rows") {
  const std::pair<const char*, SignatureKind> rows[] = {
      {"signature-quantifier", SignatureKind::QuantifierNegation},
      {"signature-verb", SignatureKind::VerbNegation},
      {"signature-noun", SignatureKind::NounNegation},
      {"signature-action", SignatureKind::ActionContradiction},
      {"signature-direction", SignatureKind::DirectionContradiction},
  };
  for (const auto& [name, kind] : rows) {
    INFO(name);
    const auto r = report(name);
    CHECK(has_kind(r.surviving, kind));
    CHECK(r.meaning_preserved);
    CHECK(r.contradiction);
  }
}

TEST_CASE("a licensed deletion keeps the contradiction") {
  const auto r = report("road-deletion");
  CHECK(r.contradiction);
  CHECK(r.violations.empty());
}

TEST_CASE("an unlicensed replacement breaks it") {
  const auto r = report("road-building");
  CHECK(has_kind(r.surviving, SignatureKind::QuantifierNegation));
  CHECK_FALSE(r.meaning_preserved);
  CHECK_FALSE(r.violations.empty());
  CHECK_FALSE(r.contradiction);
}

TEST_CASE("negation and antonymy cancel") {
  const auto r = report("not-remove-add");
  CHECK(has_kind(r.signatures, SignatureKind::VerbNegation));
  CHECK(has_kind(r.signatures, SignatureKind::ActionContradiction));
  CHECK(r.surviving.empty());
  CHECK_FALSE(r.contradiction);
}

TEST_CASE("insertion under an upward restrictor is not licensed") {
  const auto r = report("tall-person");
  CHECK_FALSE(r.contradiction);
}

TEST_CASE("cancel pairs within one clause and spares direction") {
  std::vector<Signature> sigs = {
      {SignatureKind::VerbNegation, 4, 4, 4, false},
      {SignatureKind::QuantifierNegation, 2, 2, 4, false},
      {SignatureKind::DirectionContradiction, 4, 4, 4, false},
      {SignatureKind::VerbNegation, 9, 9, 9, false},
  };
  const auto left = cancel(sigs);
  REQUIRE(left.size() == 2);
  CHECK(left[0].kind == SignatureKind::DirectionContradiction);
  CHECK(left[1].clause == 9);
  CHECK(sigs[0].cancelled);
  CHECK(sigs[1].cancelled);
  CHECK_FALSE(sigs[2].cancelled);
}

TEST_CASE("negative quantifier lemmas") {
  for (const char* w : {"no", "none", "nobody", "nothing", "neither"}) CHECK(is_negative_quantifier(w));
  CHECK_FALSE(is_negative_quantifier("some"));
  CHECK_FALSE(is_negative_quantifier("not"));
}

TEST_CASE("identical sentences never contradict") {
  static const testing::Kit kit;
  const auto [p, h] = testing::load_pair("contradiction/signature-direction.conllu");
  CHECK_FALSE(is_contradiction(p.tokens, p.tokens, kit.contra()));
}

TEST_CASE("rendering") {
  static const testing::Kit kit;
  const auto [p, h] = testing::load_pair("contradiction/signature-verb.conllu");
  const auto text = analyze_contradiction(p.tokens, h.tokens, kit.contra()).render(p.tokens, h.tokens);
  CHECK(text.find("VERB_NEGATION") != std::string::npos);
  CHECK(text.find("verdict: CONTRADICT") != std::string::npos);
}
}
