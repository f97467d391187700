#include "monolog/cli.hpp"

#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "monolog/chunker.hpp"
#include "monolog/contradiction.hpp"
#include "monolog/errors.hpp"
#include "monolog/eval.hpp"
#include "monolog/generation.hpp"
#include "monolog/kb.hpp"
#include "monolog/polarity.hpp"
#include "monolog/remote_scorer.hpp"
#include "monolog/search.hpp"

namespace monolog {

namespace {

struct Options {
  // shared
  std::vector<std::string> kb_files;
  std::string paraphrase_table;
  std::string scorer = "offline";
  std::string scorer_url;
  int scorer_timeout_ms = 5000;
  bool strict = false;
  int beam = 10;
  int max_depth = 7;
  bool no_synvar = false;
  bool no_monotonicity = false;
  int workers = 1;

  // per subcommand
  std::string conllu;
  std::string premise;
  std::string hypothesis;
  std::string module;
  std::string dataset;
  std::string file;
  std::string parses;
  std::string out;
  std::vector<std::string> kb_args;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Resources {
  KnowledgeBase kb;
  QuantifierScale scale = QuantifierScale::standard();
  QuantifierLexicon lex = QuantifierLexicon::standard();
  std::unique_ptr<OfflineScorer> offline;
  std::unique_ptr<RemoteScorer> remote;

  const Scorer& scorer() const { return remote ? static_cast<const Scorer&>(*remote) : *offline; }
  Engine engine() const { return Engine{kb, scale, lex, scorer(), offline.get()}; }
};

std::unique_ptr<Resources> load_resources(const Options& o, bool need_remote_ok = true) {
  auto r = std::make_unique<Resources>();
  r->kb = load_bundled_kb();
  for (const auto& path : o.kb_files) r->kb.merge(load_dump(path, Provenance::Handcrafted));
  ParaphraseTable table;
  if (!o.paraphrase_table.empty()) table = load_paraphrase_table(o.paraphrase_table);
  r->offline = std::make_unique<OfflineScorer>(&r->kb, std::move(table));
  if (o.scorer == "remote" && need_remote_ok) {
    const std::string url = resolve_scorer_url(o.scorer_url);
    if (url.empty()) throw UsageError("--scorer remote needs --scorer-url or MONOLOG_SCORER_URL");
    r->remote = std::make_unique<RemoteScorer>(RemoteConfig{url, o.scorer_timeout_ms});
  }
  return r;
}

Sentence first_sentence(const std::string& path) {
  auto s = read_conllu_file(path);
  if (s.empty()) throw LoadError(path + ": no sentences", 0);
  return s.front();
}

SearchConfig search_config(const Options& o) {
  SearchConfig c;
  c.beam_width = o.beam;
  c.max_depth = o.max_depth;
  c.synvar = !o.no_synvar;
  c.monotonicity = !o.no_monotonicity;
  c.strict = o.strict;
  return c;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

int cmd_annotate(const Options& o, std::ostream& out) {
  const auto lex = QuantifierLexicon::standard();
  for (const auto& s : read_conllu_file(o.conllu)) out << annotate(s.tokens, lex).render() << "\n";
  return kExitOk;
}

int cmd_chunk(const Options& o, std::ostream& out) {
  bool first = true;
  for (const auto& s : read_conllu_file(o.conllu)) {
    if (!first) out << "\n";
    first = false;
    out << "# " << s.text << "\n";
    for (const auto& c : all_chunks(build_graph(s.tokens))) out << c.text << "\n";
  }
  return kExitOk;
}

int cmd_align(const Options& o, std::ostream& out) {
  auto res = load_resources(o);
  const auto p = first_sentence(o.premise), h = first_sentence(o.hypothesis);
  const auto gp = build_graph(p.tokens), gh = build_graph(h.tokens);
  const Scorer& sc = res->scorer();
  const auto a = align(gp, gh, [&](const UDToken& x, const UDToken& y) { return sc.token_similarity(x, y); });
  for (const auto& pair : a.pairs()) {
    out << gp.token(pair.premise).form << "(" << pair.premise << ")\t" << gh.token(pair.hypothesis).form << "("
        << pair.hypothesis << ")\t" << fixed(pair.score) << "\n";
  }
  const auto rec = recommend(gp, gh, a);
  for (std::size_t id = 1; id < rec.premise.size(); ++id) {
    if (rec.premise[id] != Directive::None)
      out << "premise " << gp.token(static_cast<int>(id)).form << "(" << id << ")\t" << directive_name(rec.premise[id]) << "\n";
  }
  for (std::size_t id = 1; id < rec.hypothesis.size(); ++id) {
    if (rec.hypothesis[id] != Directive::None)
      out << "hypothesis " << gh.token(static_cast<int>(id)).form << "(" << id << ")\t"
          << directive_name(rec.hypothesis[id]) << "\n";
  }
  return kExitOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  auto res = load_resources(o);
  const auto p = first_sentence(o.premise), h = first_sentence(o.hypothesis);
  const GenerationContext gen{res->kb, res->scale, res->lex};
  const auto pt = annotate(p.tokens, res->lex);
  std::vector<GeneratedSentence> gs;
  if (o.module == "lexical") {
    gs = lexical_infer(pt, gen, lemma_set(h.tokens));
  } else if (o.module == "phrasal") {
    gs = phrasal_infer(pt, build_modifier_map(h.tokens), gen);
  } else {
    const auto chunks = all_chunks(build_graph(h.tokens));
    gs = syntactic_variation_infer(pt, h, chunks, res->scorer(), gen);
  }
  for (const auto& g : gs) out << g.edit.describe() << "\t" << g.sentence.surface() << "\n";
  return kExitOk;
}

int cmd_contradict(const Options& o, std::ostream& out) {
  auto res = load_resources(o);
  const auto p = first_sentence(o.premise), h = first_sentence(o.hypothesis);
  const Scorer& sc = res->scorer();
  ContradictionContext ctx{res->kb, res->scale, res->lex,
                           [&](const UDToken& x, const UDToken& y) { return sc.token_similarity(x, y); }};
  out << analyze_contradiction(p.tokens, h.tokens, ctx).render(p.tokens, h.tokens);
  return kExitOk;
}

int cmd_infer(const Options& o, std::ostream& out, std::ostream& err) {
  auto res = load_resources(o);
  const auto p = first_sentence(o.premise), h = first_sentence(o.hypothesis);
  const auto result = classify(p, h, search_config(o), res->engine());
  out << label_name(result.label) << "\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    out << i + 1 << "\t" << result.trace[i].edit.describe() << "\t" << result.trace[i].sentence << "\n";
  }
  if (result.contradiction && !result.contradiction->signatures.empty())
    out << result.contradiction->render(p.tokens, h.tokens);
  for (const auto& w : result.warnings) err << "warning: " << w << "\n";
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  auto res = load_resources(o);
  auto pairs = o.dataset == "med" ? load_med(o.file) : load_sick(o.file);
  if (!o.parses.empty()) attach_parses(pairs, o.parses);
  EvalOptions eo;
  eo.search = search_config(o);
  eo.workers = o.workers;
  eo.med = o.dataset == "med";
  eo.parser = res->remote.get();
  const auto report = evaluate(pairs, res->engine(), eo);
  out << report_text(report);
  if (!o.out.empty()) {
    const std::vector<std::pair<std::string, std::string>> cfg = {
        {"dataset", o.dataset},
        {"scorer", o.scorer},
        {"beam", std::to_string(o.beam)},
        {"max_depth", std::to_string(o.max_depth)},
        {"synvar", o.no_synvar ? "off" : "on"},
        {"monotonicity", o.no_monotonicity ? "off" : "on"},
        {"workers", std::to_string(o.workers)}};
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw LoadError("cannot write " + o.out, 0);
    f << report_json(report, cfg);
  }
  std::size_t warned = 0;
  for (const auto& oc : report.outcomes) warned += oc.warnings.empty() ? 0 : 1;
  if (warned) err << "warning: " << warned << " pair(s) ran with scorer warnings\n";
  if (report.unparseable) err << "warning: " << report.unparseable << " pair(s) had no usable parse\n";
  return kExitOk;
}

int cmd_kb(const Options& o, std::ostream& out) {
  if (o.kb_args.size() != 3) throw UsageError("usage: monolog kb query LEMMA POS RELATION");
  LexicalRelation rel;
  if (!parse_relation(o.kb_args[2], rel)) throw UsageError("unknown relation '" + o.kb_args[2] + "'");
  KnowledgeBase kb = load_bundled_kb();
  for (const auto& path : o.kb_files) kb.merge(load_dump(path, Provenance::Handcrafted));
  for (const auto& w : kb.query(lowercase(o.kb_args[0]), o.kb_args[1], rel)) {
    const Provenance* prov = kb.provenance(lowercase(o.kb_args[0]), o.kb_args[1], rel, w);
    out << w << "\t" << (prov ? provenance_name(*prov) : "?") << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"monolog: natural-logic inference over dependency parses"};
  app.name("monolog");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; flags override it")->check(CLI::ExistingFile);
  app.add_option("--kb", o.kb_files, "extra lexical-relation dump (lemma pos relation lemma)");
  app.add_option("--paraphrase-table", o.paraphrase_table, "fixture paraphrase probabilities for the offline scorer");
  app.add_option("--scorer", o.scorer, "scoring backend")->check(CLI::IsMember({"offline", "remote"}));
  app.add_option("--scorer-url", o.scorer_url, "model server address (else $MONOLOG_SCORER_URL)");
  app.add_option("--scorer-timeout-ms", o.scorer_timeout_ms, "per-request timeout")->check(CLI::PositiveNumber);
  app.add_flag("--strict", o.strict, "scorer failures are fatal (exit 3)");
  app.add_option("--beam", o.beam, "beam width, 0 = unbounded")->check(CLI::NonNegativeNumber);
  app.add_option("--max-depth", o.max_depth, "maximum rewrite depth")->check(CLI::PositiveNumber);
  app.add_flag("--no-synvar", o.no_synvar, "disable the syntactic-variation generator");
  app.add_flag("--no-monotonicity", o.no_monotonicity, "disable the lexical and phrasal generators");
  app.add_option("--workers", o.workers, "parallel pairs in eval")->check(CLI::PositiveNumber);

  auto* annotate_cmd = app.add_subcommand("annotate", "print polarity marks");
  annotate_cmd->add_option("--conllu", o.conllu)->required();
  auto* chunk_cmd = app.add_subcommand("chunk", "print phrase chunks");
  chunk_cmd->add_option("--conllu", o.conllu)->required();

  auto pair_options = [&](CLI::App* cmd) {
    cmd->add_option("--premise-conllu,--premise", o.premise)->required();
    cmd->add_option("--hypothesis-conllu,--hypothesis", o.hypothesis)->required();
  };
  auto* align_cmd = app.add_subcommand("align", "align premise and hypothesis");
  pair_options(align_cmd);
  auto* generate_cmd = app.add_subcommand("generate", "run one generator on the premise");
  pair_options(generate_cmd);
  generate_cmd->add_option("--module", o.module)->required()->check(CLI::IsMember({"lexical", "phrasal", "synvar"}));
  auto* contradict_cmd = app.add_subcommand("contradict", "contradiction signatures and verdict");
  pair_options(contradict_cmd);
  auto* infer_cmd = app.add_subcommand("infer", "classify one pair");
  pair_options(infer_cmd);
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a dataset");
  eval_cmd->add_option("--dataset", o.dataset)->required()->check(CLI::IsMember({"sick", "med"}));
  eval_cmd->add_option("--file", o.file)->required();
  eval_cmd->add_option("--parses", o.parses, "directory of <id>.conllu files");
  eval_cmd->add_option("--out", o.out, "JSON report path");
  auto* kb_cmd = app.add_subcommand("kb", "knowledge-base lookups");
  auto* kb_query = kb_cmd->add_subcommand("query", "LEMMA POS RELATION");
  kb_query->add_option("args", o.kb_args)->expected(3);
  kb_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << app.help();
      return kExitOk;
    }
    err << "monolog: " << e.what() << "\n";
    err << "run 'monolog --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (annotate_cmd->parsed()) return cmd_annotate(o, out);
    if (chunk_cmd->parsed()) return cmd_chunk(o, out);
    if (align_cmd->parsed()) return cmd_align(o, out);
    if (generate_cmd->parsed()) return cmd_generate(o, out);
    if (contradict_cmd->parsed()) return cmd_contradict(o, out);
    if (infer_cmd->parsed()) return cmd_infer(o, out, err);
    if (eval_cmd->parsed()) return cmd_eval(o, out, err);
    if (kb_query->parsed()) return cmd_kb(o, out);
  } catch (const UsageError& e) {
    err << "monolog: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ScoringError& e) {
    err << "monolog: scorer failure: " << e.what() << "\n";
    return o.strict ? kExitScorer : kExitInput;
  } catch (const std::exception& e) {
    err << "monolog: " << e.what() << "\n";
    return kExitInput;
  }
  err << "monolog: no subcommand\n";
  return kExitUsage;
}

}  // namespace monolog
