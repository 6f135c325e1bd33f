#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "qfreq/corpus.hpp"
#include "qfreq/serialize.hpp"

using namespace qfreq;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const char* tag) {
  const fs::path d = fs::temp_directory_path() / (std::string("qfreq_ser_") + tag);
  fs::remove_all(d);
  return d;
}

void check_fields_equal(const FieldSpec& a, const FieldSpec& b) {
  REQUIRE(a.q() == b.q());
  REQUIRE(a.n() == b.n());
  CHECK(a.center() == b.center());
  CHECK(a.domain_radius() == b.domain_radius());
  CHECK(a.label() == b.label());
  CHECK(a.offset() == b.offset());
  for (const Complex z : {Complex{0.37, -0.21}, Complex{-0.9, 0.44}, Complex{0.0, 0.0}}) {
    const Complex w = a.center() + z;
    CHECK(g_metric(eval_field(a, w), eval_field(b, w)) == 0.0);
  }
}

}  // namespace

TEST_CASE("fmt_g17 round-trips doubles exactly") {
  for (double x : {0.1, 1.0 / 3.0, 6.283185307179586, 1e-300, -4.9e17, 0.0}) {
    const std::string s = fmt_g17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(fmt_g17(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("field JSON round trip preserves the function") {
  std::vector<FieldSpec> fields;
  fields.push_back(FieldSpec::branch(2, 3, {1.5, 0.5}, {0.25, -1.0}, 3.0));
  fields.push_back(FieldSpec::single(SheetSpec::holomorphic(
      {{0.1, -0.2}, {1.0, 0.0}, {0.0, 2.0}})));
  {
    BivariatePoly p(2, 2);
    p.set_coeff(2, 0, 1.0);
    p.set_coeff(0, 2, -1.0);
    BivariatePoly q(1, 1);
    q.set_coeff(1, 0, 0.5);
    fields.push_back(FieldSpec::superposition(
        {SheetSpec::holomorphic({{0.0, 0.0}, {1.0, 0.0}}),
         SheetSpec::table({p, q})}));
  }
  {
    BivariatePoly u2(2, 0);
    u2.set_coeff(2, 0, 1.0);
    fields.push_back(FieldSpec::single(SheetSpec::table_unchecked({u2}))
                         .with_label("control"));
  }
  fields.push_back(FieldSpec::branch(1, 2)
                       .with_offset({0.3, -0.7})
                       .with_label("offset branch"));

  for (const FieldSpec& f : fields) {
    const Json j = field_to_json(f);
    // Through actual text: shortest-round-trip doubles reparse bit-exact.
    const FieldSpec g = field_from_json(Json::parse(j.dump()));
    check_fields_equal(f, g);
    CHECK(field_to_json(g).dump() == j.dump());
  }
}

TEST_CASE("field round trip keeps the harmonic-validation state") {
  BivariatePoly u2(2, 0);
  u2.set_coeff(2, 0, 1.0);
  const FieldSpec f = FieldSpec::single(SheetSpec::table_unchecked({u2}));
  const FieldSpec g = field_from_json(field_to_json(f));
  REQUIRE(g.sheets().size() == 1);
  CHECK_FALSE(g.sheets()[0].harmonic_validated());

  BivariatePoly harm(1, 1);
  harm.set_coeff(1, 0, 1.0);
  const FieldSpec h = FieldSpec::single(SheetSpec::table({harm}));
  CHECK(field_from_json(field_to_json(h)).sheets()[0].harmonic_validated());
}

TEST_CASE("malformed field JSON reports config errors") {
  CHECK_THROWS_AS(field_from_json(Json::parse(R"({"type":"field"})")), config_error);
  CHECK_THROWS_AS(field_from_json(Json::parse(
                      R"({"type":"field","kind":"branch","k":0,"q":3,)"
                      R"("center":[0,0],"domain_radius":4})")),
                  config_error);
  CHECK_THROWS_AS(field_from_json(Json::parse(R"({"type":"profile"})")), config_error);
  CHECK_THROWS_AS(field_from_json(Json::parse(R"([1,2,3])")), config_error);
}

TEST_CASE("profile serialization carries undefined frequencies as nulls") {
  RadialProfile p;
  p.label = "demo";
  p.center = {0.5, -0.25};
  p.radii = {0.25, 0.5};
  p.d_vals = {1.0, 2.0};
  p.h_vals = {0.5, 0.0};
  p.n_vals = {0.5, std::numeric_limits<double>::quiet_NaN()};
  p.n_defined = {1, 0};
  p.grid = {64, 128};

  const Json j = profile_to_json(p);
  CHECK(j.at("type") == "radial_profile");
  CHECK(j.at("rows").size() == 2);
  CHECK(j.at("rows")[0].at("n").is_number());
  CHECK(j.at("rows")[1].at("n").is_null());
  CHECK(j.at("grid").at("angular") == 64);

  const std::string csv = profile_to_csv(p);
  CHECK(csv.find("r,D,H,N") == 0);
  // The undefined frequency shows as an empty last cell.
  CHECK(csv.find(",\n") != std::string::npos);

  const std::string svg = profile_svg(p);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("demo") != std::string::npos);
}

TEST_CASE("profile with no positive heights still renders a placeholder plot") {
  RadialProfile p;
  p.label = "flat";
  p.radii = {0.25};
  p.d_vals = {0.0};
  p.h_vals = {0.0};
  p.n_vals = {std::numeric_limits<double>::quiet_NaN()};
  p.n_defined = {0};
  const std::string svg = profile_svg(p);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("insufficient positive data") != std::string::npos);
}

TEST_CASE("dump determinism for a recomputed profile") {
  const FieldSpec f = FieldSpec::branch(2, 3);
  const auto radii = log_radii(0.0625, 0.5, 6);
  const GridSpec grid{32, 32};
  const RadialProfile a = radial_profile(f, {0.0, 0.0}, radii, grid);
  const RadialProfile b = radial_profile(f, {0.0, 0.0}, radii, grid);
  CHECK(profile_to_json(a).dump(2) == profile_to_json(b).dump(2));
  CHECK(profile_to_csv(a) == profile_to_csv(b));
  CHECK(profile_svg(a) == profile_svg(b));
}

TEST_CASE("atomic writes create parents, overwrite, and leave no temp files") {
  const fs::path dir = fresh_dir("atomic");
  const fs::path target = dir / "nested" / "deep" / "out.txt";
  write_text_atomic(target, "first\n");
  CHECK(slurp(target) == "first\n");
  write_text_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(target.parent_path())) {
    (void)e;
    ++entries;
  }
  CHECK(entries == 1);
  fs::remove_all(dir);
}

TEST_CASE("report serialization quotes and nulls") {
  VerificationReport rep;
  rep.suite = "demo";
  rep.grid_angular = 32;
  rep.grid_radial = 64;
  rep.tool_version = "test";
  rep.add("plain", anchors::kFrequencyMonotone, 1.0, 2.0, 0.5, true);
  rep.add("with,comma", anchors::kHeightBoundLower, -1.0, 0.0, -0.1, false);
  rep.add_info("info", anchors::kEnergyAugmentedRatio, 3.5);

  const Json j = report_to_json(rep);
  CHECK(j.at("type") == "verification_report");
  CHECK(j.at("rows").size() == 3);
  CHECK(j.at("rows")[2].at("bound").is_null());

  const std::string csv = report_to_csv(rep);
  CHECK(csv.find("id,anchor,measured,bound,slack,pass,informational") == 0);
  CHECK(csv.find("\"with,comma\"") != std::string::npos);
  CHECK(rep.failure_count() == 1);
  CHECK_FALSE(rep.all_pass());

  CHECK_THROWS_AS(rep.add("bad", "made.up_anchor", 0.0, 0.0, 0.0, true),
                  parameter_error);
}

TEST_CASE("every registered anchor is distinct and nonempty") {
  const auto& all = anchors::all();
  CHECK(all.size() == 18);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK_FALSE(all[i].empty());
    CHECK(anchors::known(all[i]));
    for (std::size_t k = i + 1; k < all.size(); ++k) CHECK(all[i] != all[k]);
  }
  CHECK_FALSE(anchors::known("no.such_anchor"));
}

TEST_CASE("blowup and scan CSV headers") {
  BlowupReport rep;
  rep.steps.push_back({0, 0.5, 1.0, 0.66, 0.6, 0.2, 0.8, 1.7});
  const std::string csv = blowup_steps_csv(rep);
  CHECK(csv.find("j,r_j,H1,D1,r0,osc,H_r0,gap") == 0);
  CHECK(csv.find("\n0,") != std::string::npos);

  ScanResult scan;
  scan.delta_hat = 0.2;
  scan.rows.push_back({"branch(1,5)", {0.0, 0.0}, 0.2, true, ""});
  scan.rows.push_back({"other", {1.0, 2.0}, 0.0, false, "sheets do not collapse here"});
  const std::string scsv = scan_to_csv(scan);
  CHECK(scsv.find("label,point_re,point_im,n_hat,branch_ok,flag") == 0);
  CHECK(scsv.find("\"branch(1,5)\"") != std::string::npos);
  CHECK(scan_to_json(scan).at("type") == "scan_result");
  CHECK(scan_to_json(scan).at("delta_hat") == 0.2);
}

TEST_CASE("reserialize dispatches on the artifact type") {
  const FieldSpec f = FieldSpec::branch(1, 2);
  const RadialProfile prof =
      radial_profile(f, {0.0, 0.0}, {0.25, 0.5}, GridSpec{32, 32});
  const Json pj = profile_to_json(prof);
  const auto [ext, content] = reserialize(pj);
  CHECK(ext == "csv");
  CHECK(content == profile_to_csv(prof));

  const HopfPackage pkg = fit_phi_series(f, {0.0, 0.0}, 1.0, 8);
  const auto [hext, hcontent] = reserialize(hopf_to_json(pkg));
  CHECK(hext == "json");
  CHECK(hcontent.find("hopf_package") != std::string::npos);

  const auto [fext, fcontent] = reserialize(field_to_json(f));
  CHECK(fext == "json");

  CHECK_THROWS_AS(reserialize(Json::parse(R"({"no_type":1})")), config_error);
  CHECK_THROWS_AS(reserialize(Json::parse(R"({"type":"mystery"})")), config_error);
}

TEST_CASE("hopf package JSON records the fit") {
  const FieldSpec f = FieldSpec::branch(2, 3);
  const HopfPackage pkg = fit_phi_series(f, {0.0, 0.0}, 1.0, 8);
  const Json j = hopf_to_json(pkg);
  CHECK(j.at("type") == "hopf_package");
  CHECK(j.at("phi_coeffs").size() == pkg.phi_coeffs.size());
  CHECK(j.at("window_radius") == 1.0);
  CHECK(j.at("d_big").get<double>() == pkg.d_big);
}

TEST_CASE("readme check index and anchor registry agree both ways") {
  const std::string readme = slurp(fs::path(QFREQ_SOURCE_DIR) / "README.md");
  const std::size_t begin = readme.find("## Check index");
  REQUIRE(begin != std::string::npos);
  std::size_t end = readme.find("\n## ", begin + 1);
  if (end == std::string::npos) end = readme.size();
  const std::string section = readme.substr(begin, end - begin);

  for (const std::string& a : anchors::all())
    CHECK_MESSAGE(section.find("`" + a + "`") != std::string::npos, "anchor missing: ", a);

  // The index uses backticks only around anchor names, so every quoted
  // token must resolve and each anchor must be listed exactly once.
  std::size_t pos = 0;
  int listed = 0;
  while (true) {
    const std::size_t open = section.find('`', pos);
    if (open == std::string::npos) break;
    const std::size_t close = section.find('`', open + 1);
    REQUIRE(close != std::string::npos);
    const std::string token = section.substr(open + 1, close - open - 1);
    CHECK_MESSAGE(anchors::known(token), "unregistered anchor listed: ", token);
    ++listed;
    pos = close + 1;
  }
  CHECK(listed == static_cast<int>(anchors::all().size()));
}
