#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

#include "denjoy/cli.hpp"

using namespace denjoy;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string error_name(const Run& r) { return nlohmann::json::parse(r.err).at("error").get<std::string>(); }

struct Workspace {
  fs::path root;
  Workspace() {
    root = fs::temp_directory_path() / "denjoy_cli_tests";
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Workspace() { fs::remove_all(root); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(root / name) << text;
    return (root / name).string();
  }
  std::string dir(const std::string& name) const { return (root / name).string(); }
};

const char* kGeometric =
    R"({"gaps": [["-inf", 0]], "generator": {"kind": "geometric", "a1": 2, "q": 2, "f": 0.5}, "truncate": 10})";
const char* kPeriodic =
    R"({"gaps": [["-inf", 1]], "generator": {"kind": "periodic", "E0": [[0, 0]], "t": 1, "index": "N"}, "truncate": 8})";

}  // namespace

TEST_CASE("cli: validate") {
  Workspace w;
  const auto ok = cli({"validate", w.file("g.json", kGeometric)});
  CHECK(ok.code == kExitOk);
  CHECK(ok.out.find("24") != std::string::npos);

  const auto bad = cli({"validate", w.file("o.json", R"({"gaps": [[0, 2], [1, 3]]})")});
  CHECK(bad.code == kExitInvalid);
  CHECK(error_name(bad) == "OverlappingGaps");

  const auto missing = cli({"validate", w.dir("missing.json")});
  CHECK(missing.code == kExitIo);
  CHECK(error_name(missing) == "Io");

  CHECK(cli({"frobnicate"}).code == kExitInvalid);
  CHECK(cli({}).code == kExitInvalid);
}

TEST_CASE("cli: geodesic files and errors") {
  Workspace w;
  const auto punctured = w.file("p.json", R"({"gaps": [["-inf", 0], [0, "inf"]]})");
  const auto out = w.dir("geo");
  const auto r = cli({"geodesic", punctured, "--points", "1,0", "0,1", "--full-plane", "--depth", "6", "--out", out});
  REQUIRE(r.code == kExitOk);
  for (const char* f : {"path.csv", "result.json", "plot.svg", "manifest.json"}) CHECK(fs::exists(fs::path(out) / f));
  std::ifstream in(fs::path(out) / "result.json");
  const auto j = nlohmann::json::parse(in);
  const double len = j.at("result").at("length").get<double>();
  CHECK(std::abs(len - std::numbers::pi / 2) <= 0.02 * std::numbers::pi / 2);

  const auto g = w.file("g.json", kGeometric);
  CHECK(cli({"geodesic", g, "--gap", "5", "--metric", "qh", "--no-check", "--out", w.dir("gap")}).code == kExitOk);
  CHECK(fs::exists(fs::path(w.dir("gap")) / "plot.svg"));

  const auto adj = cli({"geodesic", w.file("a.json", kPeriodic), "--gap", "1", "--out", w.dir("adj")});
  CHECK(adj.code == kExitSolver);
  CHECK(error_name(adj) == "AdjacentGaps");

  CHECK(cli({"geodesic", g, "--gap", "1", "--depth", "0"}).code == kExitInvalid);
  CHECK(cli({"geodesic", g, "--metric", "euclid", "--gap", "1"}).code == kExitInvalid);
}

TEST_CASE("cli: classify exit codes") {
  Workspace w;
  const auto geo = cli({"classify", w.file("g.json", kGeometric)});
  CHECK(geo.code == kExitOk);
  CHECK(nlohmann::json::parse(geo.out).at("rule") == "Thm 3.6");

  const auto per = cli({"classify", w.file("p.json", kPeriodic)});
  CHECK(per.code == kExitNotHyperbolic);
  CHECK(nlohmann::json::parse(per.out).at("rule") == "Cor 1.3");

  const auto ex = w.file("e.json", R"({"gaps": [["-inf", 0], [1, 2]], "generator": {"kind": "explicit"}})");
  CHECK(cli({"classify", ex}).code == kExitInconclusive);
  CHECK(cli({"classify", ex, "--tail-assumption", "lim-zero"}).code == kExitNotHyperbolic);
  CHECK(cli({"classify", ex, "--tail-assumption", "sometimes"}).code == kExitInvalid);
  CHECK(cli({"classify", w.file("bad.json", "[1, 2")}).code == kExitInvalid);
}

TEST_CASE("cli: scan, density, probe, thinness files") {
  Workspace w;
  const auto p = w.file("p.json", kPeriodic);
  const auto scan = cli({"scan", p, "--indices", "2,4", "--samples", "8", "--depth", "4", "--no-check", "--out", w.dir("scan")});
  CHECK(scan.code == kExitOk);
  for (const char* f : {"scan.csv", "scan.json", "scan.svg"}) CHECK(fs::exists(fs::path(w.dir("scan")) / f));

  // half the rows fail: below the 80% threshold
  const auto most_fail = cli({"scan", p, "--indices", "2,50", "--samples", "8", "--depth", "4", "--no-check",
                              "--out", w.dir("scan2")});
  CHECK(most_fail.code == kExitSolver);
  CHECK(fs::exists(fs::path(w.dir("scan2")) / "scan.csv"));

  const auto dens = cli({"density", p, "--window", "0,4,0.1,1", "--grid", "5,3", "--out", w.dir("dens")});
  CHECK(dens.code == kExitOk);
  std::ifstream csv(fs::path(w.dir("dens")) / "density.csv");
  std::string line;
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    if (!line.empty() && line[0] != '#') ++rows;
  }
  CHECK(rows == 1 + 15);  // header and samples

  const auto probe = cli({"probe", p, "--n", "100"});
  CHECK(probe.code == kExitOk);
  CHECK(nlohmann::json::parse(probe.out).at("A_lower").get<double>() == 10.0);

  const auto thin = cli({"thinness", w.file("t.json", R"({"gaps": [["-inf", 0], [1, 2]]})"), "--gap", "1",
                         "--samples", "6", "--depth", "4", "--no-check"});
  CHECK(thin.code == kExitOk);
  CHECK(cli({"probe", p}).code == kExitInvalid);
}
