#include "backforth/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "backforth/acceptance.hpp"
#include "backforth/errors.hpp"
#include "backforth/functor.hpp"
#include "backforth/serialize.hpp"
#include "backforth/symbolic.hpp"
#include "backforth/version.hpp"
#include "backforth/workspace.hpp"

namespace bf::cli {

using nlohmann::json;

namespace {

struct Common {
  std::string workspace_path;
  std::string mode_name = "emb";
  int cap = 8;
  bool compact = false;

  CategoryMode mode() const {
    auto m = mode_from_string(mode_name);
    if (!m) throw InvalidArgument("unknown mode '" + mode_name + "'");
    return *m;
  }
  Caps caps() const {
    Caps c;
    c.max_carrier = cap;
    return c;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Workspace load_workspace(const Common& c) {
  if (c.workspace_path.empty()) throw InvalidArgument("a workspace file is required");
  return parse_workspace(read_file(c.workspace_path));
}

json span_json(const SpanFamily& family, const Span& s) {
  return json::parse(span_to_json(family, s, false));
}

json family_json(const SpanFamily& family) {
  return json::parse(family_to_json(family, false));
}

json test_object_json(const FinStructure& ambient, const TestObject& t) {
  return json::parse(test_object_to_json(ambient, t, false));
}

json density_verdict_json(const SpanFamily& family, const DensityVerdict& v) {
  json out;
  out["dense"] = v.dense;
  if (v.counterexample) {
    const FinStructure& ambient = v.counterexample->direction == Direction::Back
                                      ? *family.left
                                      : *family.right;
    out["counterexample"] = {
        {"span", span_json(family, v.counterexample->span)},
        {"direction", std::string(to_string(v.counterexample->direction))},
        {"test_object", test_object_json(ambient, v.counterexample->test)},
    };
  }
  return out;
}

class Reporter {
 public:
  Reporter(std::string command, std::ostream& out, bool compact)
      : out_(out), compact_(compact), start_(std::chrono::steady_clock::now()) {
    report_["command"] = std::move(command);
    report_["engine_version"] = std::string(kEngineVersion);
  }

  json& body() { return report_; }

  int finish(int code) {
    const auto elapsed = std::chrono::steady_clock::now() - start_;
    report_["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    report_["exit_code"] = code;
    out_ << report_.dump(compact_ ? -1 : 2) << "\n";
    return code;
  }

 private:
  json report_;
  std::ostream& out_;
  bool compact_;
  std::chrono::steady_clock::time_point start_;
};

SpanFamily family_from_file(const std::string& path, StructureRef left, StructureRef right,
                            CategoryMode mode) {
  return family_from_json(read_file(path), std::move(left), std::move(right), mode);
}

std::unique_ptr<Functor> build_functor(const std::string& name, const std::string& keep_csv,
                                       const SignatureRef& sig, CategoryMode mode) {
  if (name == "identity") return make_identity_functor(sig, mode);
  if (name == "uset") return make_underlying_set_functor(sig, mode);
  if (name == "abelianization") return make_abelianization_functor();
  if (name == "reduct") {
    std::vector<std::string> keep;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= keep_csv.size(); ++i) {
      if (i == keep_csv.size() || keep_csv[i] == ',') {
        if (i > start) keep.push_back(keep_csv.substr(start, i - start));
        start = i + 1;
      }
    }
    if (keep.empty()) throw InvalidArgument("reduct needs --keep with at least one symbol");
    return make_reduct_functor(sig, keep, mode);
  }
  throw InvalidArgument("unknown functor '" + name + "'");
}

int do_equiv(const Common& c, const std::string& left, const std::string& right,
             std::ostream& out) {
  Reporter rep("equiv", out, c.compact);
  Workspace ws = load_workspace(c);
  SpanFamily greatest = greatest_dense_family(ws.structure(left), ws.structure(right),
                                              c.mode(), c.caps());
  const bool equivalent = !greatest.spans.empty();
  rep.body()["mode"] = std::string(to_string(c.mode()));
  rep.body()["left"] = left;
  rep.body()["right"] = right;
  rep.body()["result"] = equivalent;
  rep.body()["witness"] = {{"greatest_family_size", greatest.spans.size()},
                           {"family", family_json(greatest)}};
  return rep.finish(equivalent ? kExitTrue : kExitFalse);
}

int do_dense(const Common& c, const std::string& left, const std::string& right,
             const std::string& family_path, std::ostream& out) {
  Reporter rep("dense", out, c.compact);
  Workspace ws = load_workspace(c);
  SpanFamily family =
      family_from_file(family_path, ws.structure(left), ws.structure(right), c.mode());
  DensityVerdict v = check_density(family, c.caps());
  rep.body()["mode"] = std::string(to_string(c.mode()));
  rep.body()["family_size"] = family.spans.size();
  rep.body()["result"] = v.dense;
  rep.body()["verdict"] = density_verdict_json(family, v);
  return rep.finish(v.dense ? kExitTrue : kExitFalse);
}

int do_embed(const Common& c, const std::string& morphism, const std::string& family_path,
             std::ostream& out) {
  Reporter rep("embed", out, c.compact);
  Workspace ws = load_workspace(c);
  const Morphism& f = ws.morphism(morphism);
  rep.body()["morphism"] = morphism;
  rep.body()["mode"] = std::string(to_string(c.mode()));

  SpanFamily family;
  if (!family_path.empty()) {
    family = family_from_file(family_path, f.src, f.dst, c.mode());
  } else {
    if (!is_mode_morphism(f, c.mode())) {
      throw InvalidArgument("'" + morphism + "' is not a morphism of " +
                            std::string(to_string(c.mode())));
    }
    family = greatest_dense_family(f.src, f.dst, c.mode(), c.caps());
    if (family.spans.empty()) {
      rep.body()["result"] = false;
      rep.body()["counterexample"] = {{"reason", "the greatest dense family is empty"}};
      return rep.finish(kExitFalse);
    }
  }
  EmbeddingVerdict v = check_embedding_condition(f, family, c.caps());
  rep.body()["result"] = v.ok;
  json witnesses = json::array();
  for (const auto& w : v.witnesses) {
    witnesses.push_back({{"test_object", test_object_json(*f.src, w.test)},
                         {"span", span_json(family, family.spans[w.span_index])}});
  }
  rep.body()["witness"] = {{"family", family_json(family)}, {"witnesses", witnesses}};
  if (v.failing) {
    rep.body()["counterexample"] = {{"test_object", test_object_json(*f.src, *v.failing)}};
  }
  return rep.finish(v.ok ? kExitTrue : kExitFalse);
}

int do_compose(const Common& c, const std::string& left, const std::string& mid,
               const std::string& right, const std::string& f1, const std::string& f2,
               std::ostream& out) {
  Reporter rep("compose", out, c.compact);
  Workspace ws = load_workspace(c);
  const StructureRef& x = ws.structure(left);
  const StructureRef& y = ws.structure(mid);
  const StructureRef& z = ws.structure(right);
  SpanFamily s_xy = f1.empty() ? greatest_dense_family(x, y, c.mode(), c.caps())
                               : family_from_file(f1, x, y, c.mode());
  SpanFamily s_yz = f2.empty() ? greatest_dense_family(y, z, c.mode(), c.caps())
                               : family_from_file(f2, y, z, c.mode());
  SpanFamily composed = star_compose(s_xy, s_yz, c.caps());
  DensityVerdict v = check_density(composed, c.caps());
  rep.body()["mode"] = std::string(to_string(c.mode()));
  rep.body()["result"] = v.dense;
  rep.body()["witness"] = {{"family", family_json(composed)},
                           {"family_size", composed.spans.size()}};
  rep.body()["verdict"] = density_verdict_json(composed, v);
  return rep.finish(v.dense ? kExitTrue : kExitFalse);
}

int do_transport(const Common& c, const std::string& functor, const std::string& keep,
                 const std::string& route, const std::string& left, const std::string& right,
                 std::ostream& out) {
  Reporter rep("transport", out, c.compact);
  Workspace ws = load_workspace(c);
  const StructureRef& x = ws.structure(left);
  const StructureRef& y = ws.structure(right);
  auto f = build_functor(functor, keep, x->sig(), c.mode());
  // TODO: accept a --family file here, mirroring `compose`.
  SpanFamily family = greatest_dense_family(x, y, c.mode(), c.caps());
  if (family.spans.empty()) {
    throw InvalidArgument("'" + left + "' and '" + right +
                          "' are not equivalent; nothing to transport");
  }
  rep.body()["mode"] = std::string(to_string(c.mode()));
  rep.body()["functor"] = functor;
  rep.body()["route"] = route;
  if (route == "direct") {
    SpanFamily transported = transport_direct(*f, family, c.caps());
    DensityVerdict v = check_density(transported, c.caps());
    rep.body()["result"] = v.dense;
    rep.body()["witness"] = {{"family", family_json(transported)},
                             {"left", transported.left->name()},
                             {"right", transported.right->name()}};
    rep.body()["verdict"] = density_verdict_json(transported, v);
    return rep.finish(v.dense ? kExitTrue : kExitFalse);
  }
  if (route != "image") throw InvalidArgument("route must be 'direct' or 'image'");
  ImageTransportResult result = transport_image(*f, family, c.caps());
  DensityVerdict v = check_density(result.family, c.caps());
  json certs = json::array();
  bool all_certified = true;
  for (const auto& cert : result.certificates) {
    certs.push_back({{"span_index", cert.span_index},
                     {"well_defined", cert.well_defined},
                     {"is_iso", cert.is_iso}});
    all_certified = all_certified && cert.well_defined && cert.is_iso;
  }
  const bool ok = v.dense && all_certified;
  rep.body()["result"] = ok;
  rep.body()["witness"] = {{"family", family_json(result.family)},
                           {"certificates", certs},
                           {"left", result.family.left->name()},
                           {"right", result.family.right->name()}};
  rep.body()["verdict"] = density_verdict_json(result.family, v);
  return rep.finish(ok ? kExitTrue : kExitFalse);
}

int do_chain(const Common& c, const std::string& name, std::ostream& out) {
  Reporter rep("chain", out, c.compact);
  Workspace ws = load_workspace(c);
  const ChainDiagram& chain = ws.chain(name);
  SmoothReport smooth = verify_smooth_composition(chain, c.mode(), c.caps());
  ChainColimit col = colimit_of_chain(chain, c.mode());
  rep.body()["chain"] = name;
  rep.body()["mode"] = std::string(to_string(c.mode()));
  rep.body()["colimit"] = {{"object", col.object->name()}, {"size", col.object->size()}};
  json cocone = json::array();
  for (const auto& leg : col.cocone) cocone.push_back(leg.map);
  rep.body()["cocone"] = cocone;
  rep.body()["hypothesis_ok"] = smooth.hypothesis_ok;
  if (smooth.composite_ok) rep.body()["composite_ok"] = *smooth.composite_ok;
  if (!smooth.detail.empty()) rep.body()["detail"] = smooth.detail;
  const bool ok = smooth.hypothesis_ok && smooth.composite_ok.value_or(false);
  rep.body()["result"] = ok;
  return rep.finish(ok ? kExitTrue : kExitFalse);
}

int do_ladder(const Common& c, const std::string& name, std::ostream& out) {
  Reporter rep("ladder", out, c.compact);
  Workspace ws = load_workspace(c);
  LadderReport report = verify_ladder(ws.ladder(name), c.mode(), c.caps());
  rep.body()["ladder"] = name;
  rep.body()["mode"] = std::string(to_string(c.mode()));
  rep.body()["hypothesis_ok"] = report.hypothesis_ok;
  if (report.conclusion_ok) rep.body()["conclusion_ok"] = *report.conclusion_ok;
  if (!report.detail.empty()) rep.body()["detail"] = report.detail;
  const bool ok = report.hypothesis_ok && report.conclusion_ok.value_or(false);
  rep.body()["result"] = ok;
  return rep.finish(ok ? kExitTrue : kExitFalse);
}

int do_check(const Common& c, const std::string& morphism, const std::string& expect,
             const std::string& structure, const std::string& theory, std::ostream& out) {
  Reporter rep("check", out, c.compact);
  Workspace ws = load_workspace(c);
  rep.body()["workspace"] = {{"signatures", ws.signatures.size()},
                             {"structures", ws.structures.size()},
                             {"morphisms", ws.morphisms.size()},
                             {"theories", ws.theories.size()},
                             {"chains", ws.chains.size()},
                             {"ladders", ws.ladders.size()}};
  if (!morphism.empty()) {
    MorphClass cls = classify_morphism(ws.morphism(morphism));
    rep.body()["morphism"] = morphism;
    rep.body()["classification"] = std::string(to_string(cls));
    if (!expect.empty()) {
      auto want = morph_class_from_string(expect);
      if (!want) throw InvalidArgument("unknown class '" + expect + "'");
      const bool ok = cls >= *want;
      rep.body()["result"] = ok;
      return rep.finish(ok ? kExitTrue : kExitFalse);
    }
    rep.body()["result"] = true;
    return rep.finish(kExitTrue);
  }
  if (!structure.empty() || !theory.empty()) {
    if (structure.empty() || theory.empty()) {
      throw InvalidArgument("--structure and --theory go together");
    }
    const Theory& t = ws.theory(theory);
    Satisfaction sat = satisfies(*ws.structure(structure), t);
    rep.body()["structure"] = structure;
    rep.body()["theory"] = theory;
    rep.body()["result"] = sat.ok;
    if (!sat.ok) {
      rep.body()["counterexample"] = {
          {"sentence", t.sentences[static_cast<std::size_t>(sat.sentence)].text},
          {"assignment", sat.assignment}};
    }
    return rep.finish(sat.ok ? kExitTrue : kExitFalse);
  }
  rep.body()["result"] = true;  // the workspace itself validated
  return rep.finish(kExitTrue);
}

int do_setcalc(const Common& c, const std::vector<std::string>& argv, std::ostream& out) {
  if (argv.empty()) throw InvalidArgument("setcalc needs a subcommand");
  const std::string& op = argv[0];
  Reporter rep("setcalc " + op, out, c.compact);
  auto token = [](const std::string& s) {
    auto t = card_from_string(s);
    if (!t) throw InvalidArgument("bad cardinal '" + s + "'");
    return *t;
  };
  if (op == "equiv" || op == "dense") {
    if (argv.size() != 3) throw InvalidArgument("usage: setcalc " + op + " <card> <card>");
    const CardToken a = token(argv[1]);
    const CardToken b = token(argv[2]);
    const bool rule = sym_equivalent(a, b);
    SymDensityVerdict v = sym_density_check(a, b);
    rep.body()["left"] = to_string(a);
    rep.body()["right"] = to_string(b);
    rep.body()["equivalent"] = rule;
    rep.body()["density"] = v.dense;
    if (v.counterexample) {
      rep.body()["counterexample"] = {
          {"span_center", v.counterexample->span_center},
          {"direction",
           v.counterexample->direction == SymDirection::Back ? "back" : "forth"},
          {"test_size", v.counterexample->test_size}};
    }
    if (rule != v.dense) {
      throw TheoremViolation("symbolic density disagrees with the equivalence rule");
    }
    rep.body()["result"] = rule;
    return rep.finish(rule ? kExitTrue : kExitFalse);
  }
  if (op == "embed") {
    if (argv.size() != 4) {
      throw InvalidArgument("usage: setcalc embed <card> <card> bij|inj");
    }
    if (argv[3] != "bij" && argv[3] != "inj") {
      throw InvalidArgument("the third argument must be 'bij' or 'inj'");
    }
    const bool result = sym_embedding(token(argv[1]), token(argv[2]), argv[3] == "bij");
    rep.body()["result"] = result;
    return rep.finish(result ? kExitTrue : kExitFalse);
  }
  if (op == "colimit") {
    if (argv.size() != 2) throw InvalidArgument("usage: setcalc colimit <sizes,tail>");
    const CardToken col = sym_chain_colimit(sym_chain_from_string(argv[1]));
    rep.body()["colimit"] = to_string(col);
    rep.body()["result"] = true;
    return rep.finish(kExitTrue);
  }
  if (op == "ladder") {
    if (argv.size() != 3) throw InvalidArgument("usage: setcalc ladder <chain> <chain>");
    SymLadderReport report =
        sym_verify_ladder(sym_chain_from_string(argv[1]), sym_chain_from_string(argv[2]));
    rep.body()["hypothesis_ok"] = report.hypothesis_ok;
    if (report.conclusion_ok) rep.body()["conclusion_ok"] = *report.conclusion_ok;
    if (!report.detail.empty()) rep.body()["detail"] = report.detail;
    const bool ok = report.hypothesis_ok && report.conclusion_ok.value_or(false);
    rep.body()["result"] = ok;
    return rep.finish(ok ? kExitTrue : kExitFalse);
  }
  throw InvalidArgument("unknown setcalc subcommand '" + op + "'");
}

int do_selftest(const Common& c, int only, std::ostream& out, std::ostream& err) {
  Reporter rep("selftest", out, c.compact);
  auto results = acceptance::run_all(err, only);
  json arr = json::array();
  for (const auto& r : results) {
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"seconds", r.seconds},
                   {"detail", r.detail}});
  }
  const bool ok = acceptance::all_passed(results);
  rep.body()["criteria"] = arr;
  rep.body()["result"] = ok;
  return rep.finish(ok ? kExitTrue : kExitFalse);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"back-and-forth equivalence calculus"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* cmd, bool needs_ws) {
    cmd->add_option("--mode", common.mode_name, "category mode: emb or str");
    cmd->add_option("--cap", common.cap, "carrier size cap");
    cmd->add_flag("--json", common.compact, "compact single-line JSON");
    if (needs_ws) {
      cmd->add_option("workspace", common.workspace_path, "workspace file")->required();
    }
  };

  std::string left, right, mid, morphism, family1, family2, expect, structure, theory;
  std::string functor = "identity", keep, route = "direct", chain_name, ladder_name;
  std::vector<std::string> setcalc_args;
  int selftest_only = 0;

  CLI::App* c_check = app.add_subcommand("check", "validate a workspace; classify or model-check");
  add_common(c_check, true);
  c_check->add_option("--morphism", morphism, "morphism to classify");
  c_check->add_option("--expect", expect, "least acceptable class");
  c_check->add_option("--structure", structure, "structure to model-check");
  c_check->add_option("--theory", theory, "theory to check against");

  CLI::App* c_equiv = app.add_subcommand("equiv", "decide lambda-equivalence");
  add_common(c_equiv, true);
  c_equiv->add_option("--left", left)->required();
  c_equiv->add_option("--right", right)->required();

  CLI::App* c_dense = app.add_subcommand("dense", "check a span family for density");
  add_common(c_dense, true);
  c_dense->add_option("--left", left)->required();
  c_dense->add_option("--right", right)->required();
  c_dense->add_option("--family", family1, "family JSON file")->required();

  CLI::App* c_embed = app.add_subcommand("embed", "decide the lambda-embedding condition");
  add_common(c_embed, true);
  c_embed->add_option("--morphism", morphism)->required();
  c_embed->add_option("--family", family1, "diagnostic family JSON file");

  CLI::App* c_compose = app.add_subcommand("compose", "star-compose two families");
  add_common(c_compose, true);
  c_compose->add_option("--left", left)->required();
  c_compose->add_option("--mid", mid)->required();
  c_compose->add_option("--right", right)->required();
  c_compose->add_option("--family1", family1, "family JSON between left and mid");
  c_compose->add_option("--family2", family2, "family JSON between mid and right");

  CLI::App* c_transport = app.add_subcommand("transport", "push a family through a functor");
  add_common(c_transport, true);
  c_transport->add_option("--functor", functor, "reduct|uset|abelianization|identity");
  c_transport->add_option("--keep", keep, "symbols the reduct keeps (comma separated)");
  c_transport->add_option("--route", route, "direct|image");
  c_transport->add_option("--left", left)->required();
  c_transport->add_option("--right", right)->required();

  CLI::App* c_chain = app.add_subcommand("chain", "colimit and smooth composition of a chain");
  add_common(c_chain, true);
  c_chain->add_option("--name", chain_name)->required();

  CLI::App* c_ladder = app.add_subcommand("ladder", "verify a ladder instance");
  add_common(c_ladder, true);
  c_ladder->add_option("--name", ladder_name)->required();

  CLI::App* c_setcalc = app.add_subcommand("setcalc", "symbolic cardinal calculus");
  c_setcalc->add_flag("--json", common.compact, "compact single-line JSON");
  c_setcalc->add_option("args", setcalc_args, "equiv|dense|embed|colimit|ladder + arguments")
      ->expected(-1);

  CLI::App* c_selftest = app.add_subcommand("selftest", "run the acceptance suite");
  c_selftest->add_flag("--json", common.compact, "compact single-line JSON");
  c_selftest->add_option("--criterion", selftest_only, "run a single criterion (1-9)");

  std::vector<const char*> argv;
  argv.push_back("backforth");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help() << "\n";
      return kExitTrue;
    }
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (c_check->parsed()) return do_check(common, morphism, expect, structure, theory, out);
    if (c_equiv->parsed()) return do_equiv(common, left, right, out);
    if (c_dense->parsed()) return do_dense(common, left, right, family1, out);
    if (c_embed->parsed()) return do_embed(common, morphism, family1, out);
    if (c_compose->parsed()) return do_compose(common, left, mid, right, family1, family2, out);
    if (c_transport->parsed())
      return do_transport(common, functor, keep, route, left, right, out);
    if (c_chain->parsed()) return do_chain(common, chain_name, out);
    if (c_ladder->parsed()) return do_ladder(common, ladder_name, out);
    if (c_setcalc->parsed()) return do_setcalc(common, setcalc_args, out);
    if (c_selftest->parsed()) return do_selftest(common, selftest_only, out, err);
    err << "error: no subcommand\n";
    return kExitError;
  } catch (const Error& e) {
    json report;
    report["command"] = args.empty() ? "" : args[0];
    report["engine_version"] = std::string(kEngineVersion);
    report["error"] = e.what();
    report["exit_code"] = kExitError;
    out << report.dump(common.compact ? -1 : 2) << "\n";
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace bf::cli
