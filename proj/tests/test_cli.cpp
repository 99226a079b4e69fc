#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "backforth/cli.hpp"

using nlohmann::json;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("bf-test-" + std::to_string(++counter) + "-" + std::to_string(::getpid()) + ".bf");
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

struct CliResult {
  int code = 0;
  json report;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliResult r;
  r.code = bf::cli::run(args, out, err);
  r.err = err.str();
  if (!out.str().empty()) {
    r.report = json::parse(out.str(), nullptr, false);
  }
  return r;
}

const std::string kWorkspace =
    "signature gph : rel E/2\n"
    "structure A : gph ; size 3 ; E = {(0,1),(1,2),(2,0)}\n"
    "structure B : gph ; size 3 ; E = {(1,0),(0,2),(2,1)}\n"
    "structure C : gph ; size 2 ; E = {}\n"
    "morphism rot : A -> A ; map [1,2,0]\n"
    "morphism toB : A -> B ; map [0,2,1]\n"
    "theory sym : gph ; forall x y . E(x,y) -> E(y,x)\n"
    "structure S : gph ; size 2 ; E = {(0,1),(1,0)}\n"
    "chain K : A -rot-> A\n"
    "ladder L : K => K ; components [rot, rot]\n";

}  // namespace

TEST_CASE("equiv exit codes and reports") {
  TempFile ws(kWorkspace);
  SUBCASE("isomorphic digraphs are equivalent") {
    CliResult r = run_cli({"equiv", "--left", "A", "--right", "B", ws.path.string()});
    CHECK(r.code == bf::cli::kExitTrue);
    CHECK(r.report["result"] == true);
    CHECK(r.report["witness"]["greatest_family_size"].get<int>() > 0);
  }
  SUBCASE("different sizes are not") {
    CliResult r = run_cli({"equiv", "--left", "A", "--right", "C", ws.path.string()});
    CHECK(r.code == bf::cli::kExitFalse);
    CHECK(r.report["result"] == false);
  }
  SUBCASE("str mode works on relational workspaces") {
    CliResult r = run_cli(
        {"equiv", "--left", "A", "--right", "B", "--mode", "str", ws.path.string()});
    CHECK(r.code == bf::cli::kExitTrue);
  }
}

TEST_CASE("dense validates families from files") {
  TempFile ws(kWorkspace);
  CliResult eq = run_cli({"equiv", "--left", "A", "--right", "B", ws.path.string()});
  REQUIRE(eq.code == bf::cli::kExitTrue);
  TempFile family(eq.report["witness"]["family"].dump());
  CliResult r = run_cli({"dense", "--left", "A", "--right", "B", "--family",
                         family.path.string(), ws.path.string()});
  CHECK(r.code == bf::cli::kExitTrue);

  TempFile junk("[{\"domain\": [], \"map\": []}]");
  CliResult bad = run_cli({"dense", "--left", "A", "--right", "B", "--family",
                           junk.path.string(), ws.path.string()});
  CHECK(bad.code == bf::cli::kExitFalse);
  CHECK(bad.report["verdict"]["counterexample"]["direction"] == "back");
}

TEST_CASE("embed decides and re-checks against supplied families") {
  TempFile ws(kWorkspace);
  CliResult r = run_cli({"embed", "--morphism", "rot", ws.path.string()});
  CHECK(r.code == bf::cli::kExitTrue);
  TempFile family(r.report["witness"]["family"].dump());
  CliResult again = run_cli({"embed", "--morphism", "rot", "--family", family.path.string(),
                             ws.path.string()});
  CHECK(again.code == bf::cli::kExitTrue);
  CliResult cross = run_cli({"embed", "--morphism", "toB", ws.path.string()});
  CHECK(cross.code == bf::cli::kExitTrue);  // an isomorphism
}

TEST_CASE("check classifies morphisms and model-checks theories") {
  TempFile ws(kWorkspace);
  SUBCASE("plain validation") {
    CliResult r = run_cli({"check", ws.path.string()});
    CHECK(r.code == bf::cli::kExitTrue);
    CHECK(r.report["workspace"]["structures"] == 4);
  }
  SUBCASE("classification with expectations") {
    CliResult r = run_cli({"check", "--morphism", "rot", ws.path.string()});
    CHECK(r.code == bf::cli::kExitTrue);
    CHECK(r.report["classification"] == "iso");
    CHECK(run_cli({"check", "--morphism", "rot", "--expect", "embedding", ws.path.string()})
              .code == bf::cli::kExitTrue);
  }
  SUBCASE("model checking with a counterexample") {
    CHECK(run_cli({"check", "--structure", "S", "--theory", "sym", ws.path.string()}).code ==
          bf::cli::kExitTrue);
    CliResult r = run_cli({"check", "--structure", "A", "--theory", "sym", ws.path.string()});
    CHECK(r.code == bf::cli::kExitFalse);
    CHECK(r.report["counterexample"]["assignment"] == json::array({0, 1}));
  }
}

TEST_CASE("compose, chain and ladder subcommands") {
  TempFile ws(kWorkspace);
  CHECK(run_cli({"compose", "--left", "A", "--mid", "B", "--right", "A", ws.path.string()})
            .code == bf::cli::kExitTrue);
  // Explicit family files instead of the computed greatest families.
  CliResult eq1 = run_cli({"equiv", "--left", "A", "--right", "B", ws.path.string()});
  CliResult eq2 = run_cli({"equiv", "--left", "B", "--right", "A", ws.path.string()});
  REQUIRE(eq1.code == bf::cli::kExitTrue);
  REQUIRE(eq2.code == bf::cli::kExitTrue);
  TempFile f1(eq1.report["witness"]["family"].dump());
  TempFile f2(eq2.report["witness"]["family"].dump());
  CHECK(run_cli({"compose", "--left", "A", "--mid", "B", "--right", "A", "--family1",
                 f1.path.string(), "--family2", f2.path.string(), ws.path.string()})
            .code == bf::cli::kExitTrue);
  CliResult chain = run_cli({"chain", "--name", "K", ws.path.string()});
  CHECK(chain.code == bf::cli::kExitTrue);
  CHECK(chain.report["colimit"]["size"] == 3);
  CliResult ladder = run_cli({"ladder", "--name", "L", ws.path.string()});
  CHECK(ladder.code == bf::cli::kExitTrue);
  CHECK(ladder.report["hypothesis_ok"] == true);
  CHECK(ladder.report["conclusion_ok"] == true);
}

TEST_CASE("transport subcommand over both routes") {
  const std::string ws_text =
      "signature grp : fun m/2 ; fun inv/1 ; fun e/0\n"
      "structure G : grp ; size 2 ; m = [[0,1],[1,0]] ; inv = [0,1] ; e = [0]\n"
      "structure H : grp ; size 2 ; m = [[1,0],[0,1]] ; inv = [0,1] ; e = [1]\n";
  TempFile ws(ws_text);
  CliResult direct = run_cli({"transport", "--functor", "uset", "--left", "G", "--right", "H",
                              ws.path.string()});
  CHECK(direct.code == bf::cli::kExitTrue);
  CliResult image = run_cli({"transport", "--functor", "abelianization", "--route", "image",
                             "--left", "G", "--right", "H", ws.path.string()});
  CHECK(image.code == bf::cli::kExitTrue);
  CHECK(image.report["witness"]["certificates"].size() > 0);
}

TEST_CASE("setcalc mirrors the symbolic module") {
  CHECK(run_cli({"setcalc", "equiv", "INF", "INF"}).code == bf::cli::kExitTrue);
  CHECK(run_cli({"setcalc", "equiv", "2", "5"}).code == bf::cli::kExitFalse);
  CHECK(run_cli({"setcalc", "dense", "0", "0"}).code == bf::cli::kExitTrue);
  CHECK(run_cli({"setcalc", "embed", "4", "4", "bij"}).code == bf::cli::kExitTrue);
  CHECK(run_cli({"setcalc", "embed", "2", "3", "inj"}).code == bf::cli::kExitFalse);
  CliResult col = run_cli({"setcalc", "colimit", "1,2,3,+"});
  CHECK(col.code == bf::cli::kExitTrue);
  CHECK(col.report["colimit"] == "INF");
  CHECK(run_cli({"setcalc", "ladder", "INF,INF,=", "INF,INF,+"}).code == bf::cli::kExitTrue);
  CHECK(run_cli({"setcalc", "ladder", "1,2,+", "1,2,+"}).code == bf::cli::kExitFalse);
}

TEST_CASE("errors exit with code 2") {
  TempFile ws(kWorkspace);
  CHECK(run_cli({"frobnicate"}).code == bf::cli::kExitError);
  CHECK(run_cli({"equiv", "--left", "A", "--right", "Zed", ws.path.string()}).code ==
        bf::cli::kExitError);
  CHECK(run_cli({"equiv", "--left", "A", "--right", "B", "/nonexistent.bf"}).code ==
        bf::cli::kExitError);
  CHECK(run_cli({"setcalc", "embed", "5", "2", "inj"}).code == bf::cli::kExitError);
  TempFile big(
      "signature s : rel E/2\n"
      "structure X : s ; size 5\n"
      "structure Y : s ; size 5\n");
  CHECK(run_cli({"equiv", "--left", "X", "--right", "Y", "--cap", "4", big.path.string()})
            .code == bf::cli::kExitError);  // lowered below the carrier size
  CHECK(run_cli({"equiv", "--left", "X", "--right", "Y", big.path.string()}).code ==
        bf::cli::kExitTrue);  // the default cap of 8 admits size 5
}

TEST_CASE("reports are deterministic for a fixed input") {
  TempFile ws(kWorkspace);
  CliResult a = run_cli({"equiv", "--left", "A", "--right", "B", ws.path.string()});
  CliResult b = run_cli({"equiv", "--left", "A", "--right", "B", ws.path.string()});
  a.report.erase("timing_ms");
  b.report.erase("timing_ms");
  CHECK(a.report == b.report);
}

TEST_CASE("selftest runs a single criterion") {
  std::ostringstream out, err;
  const int code = bf::cli::run({"selftest", "--criterion", "1"}, out, err);
  CHECK(code == bf::cli::kExitTrue);
  json report = json::parse(out.str());
  CHECK(report["criteria"].size() == 1);
  CHECK(report["criteria"][0]["pass"] == true);
}
