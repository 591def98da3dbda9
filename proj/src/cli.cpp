#include "fcmono/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "fcmono/error.hpp"
#include "fcmono/report.hpp"

namespace fcmono {

namespace {

struct Options {
  std::size_t cap = kDefaultCap;
  std::string format = "json";
  std::string threads = "1";
  bool both_signs = true;
  std::vector<std::string> tokens;
  std::string mode = "theorem";
  bool cardinalities = false;
  bool no_verify = false;
  bool dump = false;
  std::string lemma;
};

unsigned thread_count(const std::string& s) {
  if (s == "auto") return std::max(1u, std::thread::hardware_concurrency());
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size() && v >= 1) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::parse_error, "bad --threads value '" + s + "'");
}

// Either a JSON object or "n=.. a=.. b=.. c=.." split across tokens; "lemma=" tokens are taken out first.
ParamSet params_from_tokens(Options& o) {
  std::vector<std::string> rest;
  for (const auto& t : o.tokens) {
    if (t.rfind("lemma=", 0) == 0)
      o.lemma = t.substr(6);
    else
      rest.push_back(t);
  }
  if (rest.empty()) throw Error(ErrorCode::parse_error, "missing parameters, e.g. n=2 a=1/6 b=5/6 c=1/3,1/2");
  std::string joined;
  for (const auto& t : rest) joined += (joined.empty() ? "" : " ") + t;
  if (joined.front() == '{') {
    Json j;
    try {
      j = Json::parse(joined);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::parse_error, std::string("bad parameter JSON: ") + e.what());
    }
    return parse_params_json(j);
  }
  return parse_params_text(joined);
}

void emit(std::ostream& out, const Options& o, const Json& j, const std::string& text) {
  if (o.format == "json")
    out << j.dump(2) << "\n";
  else
    out << text;
}

int cmd_classify(Options& o, std::ostream& out) {
  ParamSet p = params_from_tokens(o);
  ClassifyMode mode = o.mode == "enumeration" ? ClassifyMode::enumeration : ClassifyMode::theorem;
  ClassificationReport r = classify(p, mode, o.cardinalities, o.cap);
  if (r.finite == Verdict::finite && p.n >= 3) r.structure = structure_classify(p, false, o.cap);
  emit(out, o, classification_json(r), classification_text(r));
  return r.finite == Verdict::undecided ? exit_undecided : exit_ok;
}

int cmd_enumerate(Options& o, std::ostream& out) {
  ParamSet p = params_from_tokens(o);
  Cardinalities c = enumerate_cardinalities(p, o.cap);
  Json j = {{"params", params_json(p)}, {"cardinalities", cardinalities_json(c)}};
  std::string text = "params: " + p.to_string() + "\n" + cardinalities_text(p, c);
  if (o.dump) {
    MatrixGroupEnum mon = closure(build_rep(p).gens, o.cap);
    if (mon.complete()) {
      std::vector<std::string> lines;
      for (const auto& m : mon.elements()) lines.push_back(matrix_json(m).dump());
      std::sort(lines.begin(), lines.end());
      j["elements"] = Json::array();
      for (const auto& s : lines) {
        j["elements"].push_back(Json::parse(s));
        text += s + "\n";
      }
    }
  }
  emit(out, o, j, text);
  return c.complete ? exit_ok : exit_undecided;
}

int cmd_structure(Options& o, std::ostream& out) {
  ParamSet p = params_from_tokens(o);
  StructureReport r = structure_classify(p, !o.no_verify, o.cap);
  Json j = {{"params", params_json(p)}, {"structure", structure_json(r)}};
  emit(out, o, j, "params: " + p.to_string() + "\n" + structure_text(r));
  return r.verified && !r.matches ? exit_mismatch : exit_ok;
}

int cmd_verify(Options& o, std::ostream& out) {
  ParamSet p = params_from_tokens(o);
  DecompositionReport r;
  if (o.lemma == "red1")
    r = verify_red1(p, o.cap);
  else if (o.lemma == "red2")
    r = verify_red2(p, o.cap);
  else
    throw Error(ErrorCode::parse_error, "lemma must be red1 or red2, got '" + o.lemma + "'");
  Json j = {{"params", params_json(p)}, {"report", decomposition_json(r)}};
  emit(out, o, j, "params: " + p.to_string() + "\n" + decomposition_text(r));
  return r.all_pass() ? exit_ok : exit_mismatch;
}

int cmd_table(Options& o, std::ostream& out) {
  if (o.tokens.size() != 1) throw Error(ErrorCode::parse_error, "table takes one name: f4-check-1 or f4-check-2");
  auto t = parse_table_name(o.tokens[0]);
  if (!t) throw Error(ErrorCode::parse_error, "unknown table '" + o.tokens[0] + "'");
  auto rows = run_table(*t, o.both_signs, o.cap, thread_count(o.threads));
  emit(out, o, table_json(*t, rows), table_text(*t, rows));
  bool all = std::all_of(rows.begin(), rows.end(), [](const TableResult& r) { return r.match(); });
  return all ? exit_ok : exit_mismatch;
}

}  // namespace

std::size_t default_cap_from_env() {
  const char* env = std::getenv("MONODROMY_CAP");
  if (!env || !*env) return kDefaultCap;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end || v == 0) return kDefaultCap;
  return static_cast<std::size_t>(v);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.cap = default_cap_from_env();
  CLI::App app{"Monodromy groups of the Lauricella F_C system", "fcmono"};
  app.require_subcommand(1);
  app.add_option("--cap", o.cap, "Element cap for enumeration (env MONODROMY_CAP)")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--threads", o.threads, "Worker threads: positive integer or auto");
  app.add_flag("--both-signs,!--one-sign", o.both_signs, "Run both roots for alpha in table rows");

  auto params_help = "Parameters, e.g. n=3 a=1/6 b=5/6 c=1/2,1/2,1/2 or a JSON object";
  auto* classify_cmd = app.add_subcommand("classify", "Decide finiteness and report conditions");
  classify_cmd->add_option("params", o.tokens, params_help)->required();
  classify_cmd->add_option("--mode", o.mode, "theorem or enumeration")
      ->check(CLI::IsMember({"theorem", "enumeration"}));
  classify_cmd->add_flag("--cardinalities", o.cardinalities, "Also enumerate |Mon| and |Ref|");

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate |Mon| and |Ref|");
  enumerate_cmd->add_option("params", o.tokens, params_help)->required();
  enumerate_cmd->add_flag("--dump", o.dump, "Print the elements of Mon, one matrix per line");

  auto* structure_cmd = app.add_subcommand("structure", "Structure clause, Type and intersection");
  structure_cmd->add_option("params", o.tokens, params_help)->required();
  structure_cmd->add_flag("--no-verify", o.no_verify, "Skip the enumeration check of the intersection");

  auto* verify_cmd = app.add_subcommand("verify-decomposition", "Check a reduction lemma");
  verify_cmd->add_option("params", o.tokens, "lemma=red1|red2 followed by parameters")->required();
  verify_cmd->add_option("--lemma", o.lemma, "red1 or red2");

  auto* table_cmd = app.add_subcommand("table", "Reproduce a cardinality table");
  table_cmd->add_option("name", o.tokens, "f4-check-1 or f4-check-2")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_input;
  }
  try {
    if (*classify_cmd) return cmd_classify(o, out);
    if (*enumerate_cmd) return cmd_enumerate(o, out);
    if (*structure_cmd) return cmd_structure(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
    return cmd_table(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_input;
  }
}

}  // namespace fcmono
