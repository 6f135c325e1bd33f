#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "qfreq/serialize.hpp"

using namespace qfreq;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QFREQ_BIN) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  REQUIRE(WIFEXITED(raw));
  return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const char* tag) {
  const fs::path d = fs::temp_directory_path() / (std::string("qfreq_cli_") + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Json small_branch_config() {
  Json j;
  j["fields"] = Json::array();
  Json f;
  f["kind"] = "branch";
  f["k"] = 2;
  f["q"] = 3;
  j["fields"].push_back(f);
  j["radii"] = {{"min", 1.0 / 64}, {"max", 0.25}, {"count", 6}};
  j["grid"] = {{"angular", 64}, {"radial", 64}};
  return j;
}

void write_config(const fs::path& p, const Json& j) {
  write_text_atomic(p, j.dump(2) + "\n");
}

}  // namespace

TEST_CASE("analyze writes profile artifacts and reruns byte-identically") {
  const fs::path dir = fresh_dir("analyze");
  const fs::path cfg = dir / "run.json";
  const fs::path out = dir / "out";
  write_config(cfg, small_branch_config());

  const std::string args =
      "analyze --config " + cfg.string() + " --out " + out.string();
  REQUIRE(run_cli(args) == 0);

  const fs::path profile_csv = out / "branch_k_2_q_3_profile.csv";
  REQUIRE(fs::exists(profile_csv));
  REQUIRE(fs::exists(out / "branch_k_2_q_3_profile.json"));
  REQUIRE(fs::exists(out / "branch_k_2_q_3_profile.svg"));
  REQUIRE(fs::exists(out / "analyze_report.json"));
  REQUIRE(fs::exists(out / "analyze_report.csv"));

  const std::string csv1 = slurp(profile_csv);
  const std::string rep1 = slurp(out / "analyze_report.json");
  CHECK(csv1.find("r,D,H,N\n") == 0);

  REQUIRE(run_cli(args) == 0);
  CHECK(slurp(profile_csv) == csv1);
  CHECK(slurp(out / "analyze_report.json") == rep1);

  const Json rep = Json::parse(rep1);
  CHECK(rep.at("grid").at("angular") == 64);
  CHECK(rep.at("suite") == "analyze");
  fs::remove_all(dir);
}

TEST_CASE("grid flag overrides the config") {
  const fs::path dir = fresh_dir("gridflag");
  const fs::path cfg = dir / "run.json";
  const fs::path out = dir / "out";
  write_config(cfg, small_branch_config());

  REQUIRE(run_cli("analyze --config " + cfg.string() + " --out " + out.string() +
                  " --grid 32,48") == 0);
  const Json rep = Json::parse(slurp(out / "analyze_report.json"));
  CHECK(rep.at("grid").at("angular") == 32);
  CHECK(rep.at("grid").at("radial") == 48);
  fs::remove_all(dir);
}

TEST_CASE("usage and configuration errors exit with code 2") {
  const fs::path dir = fresh_dir("errors");
  const fs::path out = dir / "out";
  const std::string tail = " --out " + out.string();

  CHECK(run_cli("analyze --config " + (dir / "absent.json").string() + tail) == 2);

  const fs::path bad_json = dir / "bad.json";
  write_text_atomic(bad_json, "{ nope\n");
  CHECK(run_cli("analyze --config " + bad_json.string() + tail) == 2);

  Json unknown = small_branch_config();
  unknown["bogus"] = 1;
  const fs::path unknown_cfg = dir / "unknown.json";
  write_config(unknown_cfg, unknown);
  CHECK(run_cli("analyze --config " + unknown_cfg.string() + tail) == 2);

  const fs::path good = dir / "good.json";
  write_config(good, small_branch_config());
  CHECK(run_cli("analyze --config " + good.string() + tail + " --tol monotone") == 2);
  CHECK(run_cli("analyze --config " + good.string() + tail + " --tol m=abc") == 2);
  CHECK(run_cli("analyze --config " + good.string() + tail + " --grid 64") == 2);
  CHECK(run_cli("bogus --config " + good.string()) == 2);
  CHECK(run_cli("analyze") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("--help") == 0);

  Json empty = small_branch_config();
  empty.erase("fields");
  const fs::path empty_cfg = dir / "empty.json";
  write_config(empty_cfg, empty);
  CHECK(run_cli("analyze --config " + empty_cfg.string() + tail) == 2);

  Json badgrid = small_branch_config();
  badgrid["grid"] = {{"angular", 4}, {"radial", 64}};
  const fs::path badgrid_cfg = dir / "badgrid.json";
  write_config(badgrid_cfg, badgrid);
  CHECK(run_cli("analyze --config " + badgrid_cfg.string() + tail) == 2);

  fs::remove_all(dir);
}

TEST_CASE("an impossible tolerance turns into exit code 1") {
  const fs::path dir = fresh_dir("tolfail");
  const fs::path cfg = dir / "run.json";
  const fs::path out = dir / "out";
  write_config(cfg, small_branch_config());
  CHECK(run_cli("analyze --config " + cfg.string() + " --out " + out.string() +
                " --tol monotone=-1") == 1);
  // The failing report is still written for inspection.
  CHECK(fs::exists(out / "analyze_report.json"));
  fs::remove_all(dir);
}

TEST_CASE("verify runs the inequality suite on a small config") {
  const fs::path dir = fresh_dir("verify");
  const fs::path cfg = dir / "run.json";
  const fs::path out = dir / "out";
  Json j = small_branch_config();
  j["cl_fields"] = 2;
  j["seed"] = 7;
  write_config(cfg, j);

  const std::string args =
      "verify --config " + cfg.string() + " --out " + out.string();
  REQUIRE(run_cli(args) == 0);
  const std::string rep1 = slurp(out / "verify_report.json");

  const Json rep = Json::parse(rep1);
  CHECK(rep.at("suite") == "verify");
  bool saw_monotone = false, saw_cl_random = false, saw_delta = false;
  for (const Json& row : rep.at("rows")) {
    const std::string id = row.at("id").get<std::string>();
    if (id.find(":monotone") != std::string::npos) saw_monotone = true;
    if (id.find("cl_random1") != std::string::npos) saw_cl_random = true;
    if (id.find(":key_lemma_delta") != std::string::npos) saw_delta = true;
    CHECK(row.at("pass").get<bool>());
  }
  CHECK(saw_monotone);
  CHECK(saw_cl_random);
  CHECK(saw_delta);

  REQUIRE(run_cli(args) == 0);  // same seed: byte-identical
  CHECK(slurp(out / "verify_report.json") == rep1);
  fs::remove_all(dir);
}

TEST_CASE("scan and export round-trip the artifact") {
  const fs::path dir = fresh_dir("scan");
  const fs::path out = dir / "out";
  Json j;
  j["fields"] = Json::array();
  Json f;
  f["kind"] = "branch";
  f["k"] = 2;
  f["q"] = 3;
  f["points"] = Json::array({Json::array({0.0, 0.0})});
  j["fields"].push_back(f);
  j["grid"] = {{"angular", 64}, {"radial", 64}};
  j["scan_r_hat"] = 1.0 / 256;
  const fs::path cfg = dir / "run.json";
  write_config(cfg, j);

  REQUIRE(run_cli("scan --config " + cfg.string() + " --out " + out.string()) == 0);
  REQUIRE(fs::exists(out / "scan.json"));
  REQUIRE(fs::exists(out / "scan.csv"));

  const Json scan = Json::parse(slurp(out / "scan.json"));
  CHECK(scan.at("type") == "scan_result");
  CHECK(scan.at("delta_hat").get<double>() == doctest::Approx(2.0 / 3.0).epsilon(1e-4));

  Json e;
  e["input"] = (out / "scan.json").string();
  const fs::path ecfg = dir / "export.json";
  write_config(ecfg, e);
  REQUIRE(run_cli("export --config " + ecfg.string() + " --out " + out.string()) == 0);
  CHECK(slurp(out / "scan_export.csv") == slurp(out / "scan.csv"));

  Json noinput;
  noinput["fields"] = j["fields"];
  const fs::path ncfg = dir / "noinput.json";
  write_config(ncfg, noinput);
  CHECK(run_cli("export --config " + ncfg.string() + " --out " + out.string()) == 2);
  fs::remove_all(dir);
}

TEST_CASE("blowup emits per-step tables") {
  const fs::path dir = fresh_dir("blowup");
  const fs::path out = dir / "out";
  Json j = small_branch_config();
  j.erase("radii");
  j["blowup"] = {{"x0", Json::array({0.0, 0.0})},
                 {"radii", Json::array({0.5, 0.25})}};
  const fs::path cfg = dir / "run.json";
  write_config(cfg, j);

  REQUIRE(run_cli("blowup --config " + cfg.string() + " --out " + out.string()) == 0);
  const std::string steps = slurp(out / "branch_k_2_q_3_blowup_steps.csv");
  CHECK(steps.find("j,r_j,H1,D1,r0,osc,H_r0,gap\n") == 0);
  int lines = 0;
  for (char c : steps)
    if (c == '\n') ++lines;
  CHECK(lines == 3);  // header plus one row per radius
  REQUIRE(fs::exists(out / "blowup_report.json"));
  const Json rep = Json::parse(slurp(out / "blowup_report.json"));
  for (const Json& row : rep.at("rows")) CHECK(row.at("pass").get<bool>());
  fs::remove_all(dir);
}
