#include "qfreq/serialize.hpp"

#include "qfreq/version.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qfreq {

namespace fs = std::filesystem;

std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
  const fs::path parent = path.parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot open for writing: " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw config_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw config_error(key + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json sheet_to_json(const SheetSpec& sheet) {
  Json j;
  if (sheet.kind() == SheetSpec::Kind::Holomorphic) {
    j["kind"] = "holomorphic";
    Json coeffs = Json::array();
    for (Complex c : sheet.holo_coeffs()) coeffs.push_back(complex_to_json(c));
    j["coeffs"] = std::move(coeffs);
  } else {
    j["kind"] = "table";
    j["validated"] = sheet.harmonic_validated();
    Json comps = Json::array();
    for (const BivariatePoly& p : sheet.components()) {
      Json cj;
      cj["deg_u"] = p.deg_u();
      cj["deg_v"] = p.deg_v();
      Json coeffs = Json::array();
      for (int a = 0; a <= p.deg_u(); ++a)
        for (int b = 0; b <= p.deg_v(); ++b) coeffs.push_back(p.coeff(a, b));
      cj["coeffs"] = std::move(coeffs);
      comps.push_back(std::move(cj));
    }
    j["components"] = std::move(comps);
  }
  return j;
}

const Json& require_key(const Json& j, const std::string& key, const std::string& context) {
  auto it = j.find(key);
  if (it == j.end()) throw config_error(context + ": missing key \"" + key + "\"");
  return *it;
}

SheetSpec sheet_from_json(const Json& j, const std::string& context) {
  const std::string kind = require_key(j, "kind", context).get<std::string>();
  if (kind == "holomorphic") {
    std::vector<Complex> coeffs;
    for (const Json& c : require_key(j, "coeffs", context))
      coeffs.push_back(complex_from_json(c, context + ".coeffs"));
    return SheetSpec::holomorphic(std::move(coeffs));
  }
  if (kind != "table") throw config_error(context + ".kind: unknown value \"" + kind + "\"");
  std::vector<BivariatePoly> comps;
  int ci = 0;
  for (const Json& cj : require_key(j, "components", context)) {
    const std::string cctx = context + ".components[" + std::to_string(ci++) + "]";
    const int du = require_key(cj, "deg_u", cctx).get<int>();
    const int dv = require_key(cj, "deg_v", cctx).get<int>();
    if (du < 0 || dv < 0) throw config_error(cctx + ": negative degree");
    const Json& coeffs = require_key(cj, "coeffs", cctx);
    const std::size_t want = static_cast<std::size_t>(du + 1) * (dv + 1);
    if (coeffs.size() != want)
      throw config_error(cctx + ".coeffs: expected " + std::to_string(want) + " entries");
    BivariatePoly p(du, dv);
    std::size_t idx = 0;
    for (int a = 0; a <= du; ++a)
      for (int b = 0; b <= dv; ++b) p.set_coeff(a, b, coeffs[idx++].get<double>());
    comps.push_back(std::move(p));
  }
  const bool validated = j.value("validated", true);
  return validated ? SheetSpec::table(std::move(comps))
                   : SheetSpec::table_unchecked(std::move(comps));
}

// ---- CSV emitters over the JSON forms, shared with reserialize ----

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number()) return fmt_g17(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  }
  return s;
}

std::string profile_csv_from_json(const Json& j) {
  std::string out = "r,D,H,N\n";
  for (const Json& row : j.at("rows")) {
    out += csv_cell(row.at("r")) + "," + csv_cell(row.at("d")) + "," + csv_cell(row.at("h")) +
           "," + csv_cell(row.at("n")) + "\n";
  }
  return out;
}

std::string report_csv_from_json(const Json& j) {
  std::string out = "id,anchor,measured,bound,slack,pass,informational\n";
  for (const Json& row : j.at("rows")) {
    out += csv_cell(row.at("id")) + "," + csv_cell(row.at("anchor")) + "," +
           csv_cell(row.at("measured")) + "," + csv_cell(row.at("bound")) + "," +
           csv_cell(row.at("slack")) + "," + csv_cell(row.at("pass")) + "," +
           csv_cell(row.at("informational")) + "\n";
  }
  return out;
}

std::string blowup_csv_from_json(const Json& j) {
  std::string out = "j,r_j,H1,D1,r0,osc,H_r0,gap\n";
  for (const Json& row : j.at("steps")) {
    out += csv_cell(row.at("j")) + "," + csv_cell(row.at("r_j")) + "," + csv_cell(row.at("h1")) +
           "," + csv_cell(row.at("d1")) + "," + csv_cell(row.at("r0")) + "," +
           csv_cell(row.at("osc")) + "," + csv_cell(row.at("h_r0")) + "," +
           csv_cell(row.at("gap")) + "\n";
  }
  return out;
}

std::string scan_csv_from_json(const Json& j) {
  std::string out = "label,point_re,point_im,n_hat,branch_ok,flag\n";
  for (const Json& row : j.at("rows")) {
    const Json& pt = row.at("point");
    out += csv_cell(row.at("label")) + "," + csv_cell(pt[0]) + "," + csv_cell(pt[1]) + "," +
           csv_cell(row.at("n_hat")) + "," + csv_cell(row.at("branch_ok")) + "," +
           csv_cell(row.at("flag")) + "\n";
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt_px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

Json field_to_json(const FieldSpec& spec) {
  Json j;
  j["type"] = "field";
  j["label"] = spec.label();
  if (spec.is_branch()) {
    const auto& bp = spec.branch_params();
    j["kind"] = "branch";
    j["k"] = bp.k;
    j["q"] = bp.q;
    j["scale"] = complex_to_json(bp.scale);
  } else {
    j["kind"] = spec.sheets().size() == 1 ? "single" : "superposition";
    Json sheets = Json::array();
    for (const SheetSpec& s : spec.sheets()) sheets.push_back(sheet_to_json(s));
    j["sheets"] = std::move(sheets);
  }
  j["center"] = complex_to_json(spec.center());
  j["domain_radius"] = spec.domain_radius();
  if (!spec.offset().empty()) j["offset"] = spec.offset();
  return j;
}

FieldSpec field_from_json(const Json& j) {
  if (!j.is_object()) throw config_error("field: expected an object");
  const std::string kind = require_key(j, "kind", "field").get<std::string>();
  const Complex center =
      j.contains("center") ? complex_from_json(j["center"], "field.center") : Complex{0.0, 0.0};
  const double domain = j.value("domain_radius", 4.0);

  FieldSpec spec = [&] {
    try {
      if (kind == "branch") {
        const int k = require_key(j, "k", "field").get<int>();
        const int q = require_key(j, "q", "field").get<int>();
        const Complex scale = j.contains("scale")
                                  ? complex_from_json(j["scale"], "field.scale")
                                  : Complex{1.0, 0.0};
        return FieldSpec::branch(k, q, scale, center, domain);
      }
      if (kind != "single" && kind != "superposition")
        throw config_error("field.kind: unknown value \"" + kind + "\"");
      std::vector<SheetSpec> sheets;
      int si = 0;
      for (const Json& sj : require_key(j, "sheets", "field"))
        sheets.push_back(sheet_from_json(sj, "field.sheets[" + std::to_string(si++) + "]"));
      if (kind == "single") {
        if (sheets.size() != 1) throw config_error("field.sheets: single needs exactly 1 sheet");
        return FieldSpec::single(std::move(sheets.front()), center, domain);
      }
      return FieldSpec::superposition(std::move(sheets), center, domain);
    } catch (const config_error&) {
      throw;
    } catch (const error& e) {
      throw config_error(std::string("field: ") + e.what());
    }
  }();

  if (j.contains("offset")) {
    std::vector<double> p;
    for (const Json& v : j["offset"]) p.push_back(v.get<double>());
    try {
      spec = spec.with_offset(std::move(p));
    } catch (const error& e) {
      throw config_error(std::string("field.offset: ") + e.what());
    }
  }
  if (j.contains("label")) spec = spec.with_label(j["label"].get<std::string>());
  return spec;
}

Json profile_to_json(const RadialProfile& profile) {
  Json j;
  j["type"] = "radial_profile";
  j["tool_version"] = kToolVersion;
  j["label"] = profile.label;
  j["center"] = complex_to_json(profile.center);
  j["dimension"] = profile.m;
  j["grid"] = {{"angular", profile.grid.angular}, {"radial", profile.grid.radial}};
  Json rows = Json::array();
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    Json row;
    row["r"] = profile.radii[i];
    row["d"] = profile.d_vals[i];
    row["h"] = profile.h_vals[i];
    if (profile.n_defined[i])
      row["n"] = profile.n_vals[i];
    else
      row["n"] = nullptr;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  Json violations = Json::array();
  for (const MonotoneViolation& v : profile.violations)
    violations.push_back({{"r_lo", v.r_lo}, {"r_hi", v.r_hi}, {"drop", v.drop}});
  j["violations"] = std::move(violations);
  j["max_violation"] = profile.max_violation();
  return j;
}

std::string profile_to_csv(const RadialProfile& profile) {
  return profile_csv_from_json(profile_to_json(profile));
}

std::string profile_svg(const RadialProfile& profile) {
  constexpr double kW = 640, kH = 480, kML = 70, kMR = 20, kMT = 40, kMB = 50;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    const double r = profile.radii[i], h = profile.h_vals[i];
    if (r > 0.0 && h > 0.0) pts.emplace_back(std::log10(r), std::log10(h / r));
  }
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
      "viewBox=\"0 0 640 480\">\n"
      "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt_px(kW / 2) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" +
         xml_escape(profile.label) + ": H(r)/r vs r (log-log)</text>\n";
  if (pts.size() < 2) {
    svg += "<text x=\"" + fmt_px(kW / 2) + "\" y=\"" + fmt_px(kH / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
           "insufficient positive data</text>\n</svg>\n";
    return svg;
  }
  double xmin = pts[0].first, xmax = xmin, ymin = pts[0].second, ymax = ymin;
  for (auto& [x, y] : pts) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax - xmin < 1e-12) { xmin -= 0.5; xmax += 0.5; }
  if (ymax - ymin < 1e-12) { ymin -= 0.5; ymax += 0.5; }
  auto px = [&](double x) { return kML + (x - xmin) / (xmax - xmin) * (kW - kML - kMR); };
  auto py = [&](double y) { return kH - kMB - (y - ymin) / (ymax - ymin) * (kH - kMT - kMB); };

  svg += "<rect x=\"" + fmt_px(kML) + "\" y=\"" + fmt_px(kMT) + "\" width=\"" +
         fmt_px(kW - kML - kMR) + "\" height=\"" + fmt_px(kH - kMT - kMB) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
    const double x = px(e);
    svg += "<line x1=\"" + fmt_px(x) + "\" y1=\"" + fmt_px(kH - kMB) + "\" x2=\"" + fmt_px(x) +
           "\" y2=\"" + fmt_px(kH - kMB + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_px(x) + "\" y=\"" + fmt_px(kH - kMB + 20) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" +
           std::to_string(e) + "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax)); ++e) {
    const double y = py(e);
    svg += "<line x1=\"" + fmt_px(kML - 5) + "\" y1=\"" + fmt_px(y) + "\" x2=\"" + fmt_px(kML) +
           "\" y2=\"" + fmt_px(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt_px(kML - 8) + "\" y=\"" + fmt_px(y + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e" +
           std::to_string(e) + "</text>\n";
  }
  svg += "<text x=\"" + fmt_px(kML + (kW - kML - kMR) / 2) + "\" y=\"" + fmt_px(kH - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">r</text>\n";
  svg += "<polyline fill=\"none\" stroke=\"#1f6fb5\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) svg += ' ';
    svg += fmt_px(px(pts[i].first)) + "," + fmt_px(py(pts[i].second));
  }
  svg += "\"/>\n</svg>\n";
  return svg;
}

Json hopf_to_json(const HopfPackage& pkg) {
  Json j;
  j["type"] = "hopf_package";
  j["tool_version"] = kToolVersion;
  j["window_center"] = complex_to_json(pkg.window_center);
  j["window_radius"] = pkg.window_radius;
  j["d_big"] = pkg.d_big;
  j["fit_residual"] = pkg.fit_residual;
  j["defects"] = {{"holomorphy", pkg.defects.holomorphy},
                  {"conformality", pkg.defects.conformality}};
  Json phi = Json::array(), psi = Json::array();
  for (Complex c : pkg.phi_coeffs) phi.push_back(complex_to_json(c));
  for (Complex c : pkg.psi_coeffs) psi.push_back(complex_to_json(c));
  j["phi_coeffs"] = std::move(phi);
  j["psi_coeffs"] = std::move(psi);
  return j;
}

Json report_to_json(const VerificationReport& report) {
  Json j;
  j["type"] = "verification_report";
  j["suite"] = report.suite;
  j["tool_version"] = report.tool_version.empty() ? std::string(kToolVersion)
                                                  : report.tool_version;
  j["grid"] = {{"angular", report.grid_angular}, {"radial", report.grid_radial}};
  j["all_pass"] = report.all_pass();
  j["failures"] = report.failure_count();
  Json rows = Json::array();
  for (const CheckRow& r : report.rows) {
    Json row;
    row["id"] = r.id;
    row["anchor"] = r.anchor;
    row["measured"] = r.measured;
    if (std::isnan(r.bound))
      row["bound"] = nullptr;
    else
      row["bound"] = r.bound;
    if (std::isnan(r.slack))
      row["slack"] = nullptr;
    else
      row["slack"] = r.slack;
    row["pass"] = r.pass;
    row["informational"] = r.informational;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string report_to_csv(const VerificationReport& report) {
  return report_csv_from_json(report_to_json(report));
}

Json blowup_to_json(const BlowupReport& report) {
  Json j;
  j["type"] = "blowup_report";
  j["tool_version"] = kToolVersion;
  Json steps = Json::array();
  for (const BlowupStepRow& s : report.steps) {
    Json row;
    row["j"] = s.j;
    row["r_j"] = s.r_j;
    row["h1"] = s.h1;
    row["d1"] = s.d1;
    row["r0"] = s.r0;
    row["osc"] = s.osc;
    row["h_r0"] = s.h_r0;
    row["gap"] = s.gap;
    steps.push_back(std::move(row));
  }
  j["steps"] = std::move(steps);
  j["report"] = report_to_json(report.report);
  return j;
}

std::string blowup_steps_csv(const BlowupReport& report) {
  return blowup_csv_from_json(blowup_to_json(report));
}

Json scan_to_json(const ScanResult& result) {
  Json j;
  j["type"] = "scan_result";
  j["tool_version"] = kToolVersion;
  j["delta_hat"] = result.delta_hat;
  Json rows = Json::array();
  for (const ScanRow& r : result.rows) {
    Json row;
    row["label"] = r.label;
    row["point"] = complex_to_json(r.point);
    row["n_hat"] = r.n_hat;
    row["branch_ok"] = r.branch_ok;
    row["flag"] = r.flag;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["report"] = report_to_json(result.report);
  return j;
}

std::string scan_to_csv(const ScanResult& result) {
  return scan_csv_from_json(scan_to_json(result));
}

std::pair<std::string, std::string> reserialize(const Json& artifact) {
  if (!artifact.is_object() || !artifact.contains("type"))
    throw config_error("artifact: missing \"type\" field");
  const std::string type = artifact["type"].get<std::string>();
  try {
    if (type == "radial_profile") return {"csv", profile_csv_from_json(artifact)};
    if (type == "verification_report") return {"csv", report_csv_from_json(artifact)};
    if (type == "blowup_report") return {"csv", blowup_csv_from_json(artifact)};
    if (type == "scan_result") return {"csv", scan_csv_from_json(artifact)};
    if (type == "hopf_package" || type == "field")
      return {"json", artifact.dump(2) + "\n"};
  } catch (const Json::exception& e) {
    throw config_error("artifact of type \"" + type + "\" is malformed: " + e.what());
  }
  throw config_error("artifact: unknown type \"" + type + "\"");
}

}  // namespace qfreq
