#include "qfreq/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "qfreq/blowup.hpp"
#include "qfreq/functionals.hpp"
#include "qfreq/hopf.hpp"
#include "qfreq/oscillation.hpp"
#include "qfreq/serialize.hpp"
#include "qfreq/version.hpp"

namespace qfreq {

namespace fs = std::filesystem;

double RunConfig::tol_or(const std::string& name, double fallback) const {
  auto it = tol.find(name);
  return it == tol.end() ? fallback : it->second;
}

namespace {

std::string fmt6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Json parse_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw config_error(path.string() + ": " + e.what());
  }
}

std::vector<double> default_radii() { return log_radii(std::ldexp(1.0, -10), 0.25, 32); }

std::vector<double> default_blowup_radii() { return {0.5, 0.25, 0.125, 0.0625, 0.03125}; }

std::string slugify(const std::string& label, std::set<std::string>& used) {
  std::string s;
  for (char c : label) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    else if (!s.empty() && s.back() != '_')
      s += '_';
  }
  while (!s.empty() && s.back() == '_') s.pop_back();
  if (s.empty()) s = "field";
  std::string unique = s;
  int suffix = 2;
  while (used.count(unique)) unique = s + "_" + std::to_string(suffix++);
  used.insert(unique);
  return unique;
}

void merge_rows(VerificationReport& dest, const VerificationReport& src,
                const std::string& prefix) {
  for (CheckRow row : src.rows) {
    row.id = prefix + row.id;
    dest.rows.push_back(std::move(row));
  }
}

VerificationReport make_report(const RunConfig& cfg, std::string suite) {
  VerificationReport rep;
  rep.suite = std::move(suite);
  rep.grid_angular = cfg.grid.angular;
  rep.grid_radial = cfg.grid.radial;
  rep.tool_version = kToolVersion;
  return rep;
}

void print_failures(const VerificationReport& rep, std::ostream& log) {
  for (const CheckRow& row : rep.rows)
    if (!row.pass)
      log << "[FAIL] " << row.id << " (" << row.anchor << "): measured " << fmt_g17(row.measured)
          << ", bound " << fmt_g17(row.bound) << "\n";
}

void write_report_pair(const RunConfig& cfg, const std::string& stem,
                       const VerificationReport& rep) {
  write_text_atomic(cfg.out_dir / (stem + ".json"), report_to_json(rep).dump(2) + "\n");
  write_text_atomic(cfg.out_dir / (stem + ".csv"), report_to_csv(rep));
}

struct NamedField {
  std::string slug;
  FieldSpec field;
  std::vector<Complex> centers;   // centers[0] is native
  std::vector<Complex> collapse;  // full-collapse points, possibly none
};

std::vector<NamedField> gather_fields(const RunConfig& cfg) {
  std::vector<NamedField> out;
  std::set<std::string> used;
  if (cfg.use_corpus) {
    for (CorpusEntry& e : standard_corpus()) {
      std::string slug = slugify(e.field.label(), used);
      out.push_back({std::move(slug), std::move(e.field), std::move(e.centers),
                     std::move(e.branch_points)});
    }
  } else {
    for (std::size_t i = 0; i < cfg.fields.size(); ++i) {
      const FieldSpec& f = cfg.fields[i];
      const std::string label = f.label().empty() ? "field" + std::to_string(i) : f.label();
      out.push_back({slugify(label, used), f, {f.center()},
                     i < cfg.points.size() ? cfg.points[i] : std::vector<Complex>{}});
    }
  }
  if (out.empty()) throw config_error(cfg.command + ": no fields configured");
  return out;
}

std::vector<std::pair<double, double>> sample_pairs(const RadialProfile& prof) {
  const std::vector<double>& r = prof.radii;
  const std::size_t n = r.size();
  std::set<std::pair<std::size_t, std::size_t>> idx;
  if (n >= 2) {
    idx.insert({0, n - 1});
    idx.insert({0, n / 2});
    idx.insert({n / 2, n - 1});
    for (std::size_t i : {std::size_t{0}, n / 4, n / 2, (3 * n) / 4, n - 2})
      if (i + 1 < n) idx.insert({i, i + 1});
  }
  idx.insert({0, 0});
  std::vector<std::pair<double, double>> out;
  out.reserve(idx.size());
  for (auto [i, j] : idx) out.emplace_back(r[i], r[j]);
  return out;
}

double gradient_identity_error(const FieldSpec& spec, const CompletionMap& h,
                               const HopfPackage& pkg) {
  const double d = pkg.d_big;
  double worst = 0.0;
  for (double fr : {0.25, 0.5, 0.75, 0.95}) {
    for (Complex z : circle_nodes(pkg.window_center, fr * pkg.window_radius, 64)) {
      const double lhs = h.grad_norm_sq(z);
      const double rhs = d / 2.0 + std::norm(hopf_value_analytic(spec, z)) / (2.0 * d);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }
  }
  return worst;
}

double augmented_defect(const FieldSpec& spec, const CompletionMap& h, double fd_step) {
  double worst = 0.0;
  for (double fr : {0.3, 0.5, 0.7, 0.9}) {
    const double rr = fr * h.window_radius();
    for (int j = 0; j < 32; ++j) {
      // Half-step offset keeps the stencil off the tie-prone coordinate axes.
      const double theta = 2.0 * std::numbers::pi * (j + 0.5) / 32;
      const Complex z =
          h.window_center() + rr * Complex{std::cos(theta), std::sin(theta)};
      worst = std::max(worst, conformality_defect(spec, h, z, fd_step));
    }
  }
  return worst;
}

int run_analyze(const RunConfig& cfg, std::ostream& log) {
  const std::vector<NamedField> fields = gather_fields(cfg);
  const std::vector<double> radii = cfg.radii.empty() ? default_radii() : cfg.radii;
  VerificationReport rep = make_report(cfg, "analyze");
  const double tol_mono = cfg.tol_or("monotone", 1e-6);

  for (const NamedField& nf : fields) {
    RadialProfile prof = radial_profile(nf.field, nf.centers.front(), radii, cfg.grid,
                                        cfg.policy);
    write_text_atomic(cfg.out_dir / (nf.slug + "_profile.csv"), profile_to_csv(prof));
    write_text_atomic(cfg.out_dir / (nf.slug + "_profile.json"),
                      profile_to_json(prof).dump(2) + "\n");
    write_text_atomic(cfg.out_dir / (nf.slug + "_profile.svg"), profile_svg(prof));

    const double mv = prof.max_violation();
    rep.add(nf.slug + ":monotone", anchors::kFrequencyMonotone, mv, tol_mono, tol_mono - mv,
            mv <= tol_mono);
    for (std::size_t i = 0; i < prof.radii.size(); ++i)
      if (prof.n_defined[i]) {
        rep.add_info(nf.slug + ":n_smallest_r", anchors::kFrequencyHolder, prof.n_vals[i]);
        break;
      }
    try {
      const HolderFit fit = estimate_holder_exponent(prof);
      rep.add_info(nf.slug + ":alpha_hat", anchors::kFrequencyHolder, fit.alpha_hat);
      rep.add_info(nf.slug + ":alpha_residual", anchors::kFrequencyHolder, fit.fit_residual);
      log << nf.slug << ": exponent " << fmt6(fit.alpha_hat) << ", max violation " << fmt6(mv)
          << "\n";
    } catch (const error& e) {
      rep.add_info(nf.slug + ":alpha_unavailable", anchors::kFrequencyHolder,
                   std::numeric_limits<double>::quiet_NaN());
      log << nf.slug << ": exponent unavailable (" << e.what() << ")\n";
    }
  }

  write_report_pair(cfg, "analyze_report", rep);
  print_failures(rep, log);
  log << "analyze: " << rep.rows.size() << " rows, " << rep.failure_count() << " failures\n";
  return rep.all_pass() ? 0 : 1;
}

int run_verify(const RunConfig& cfg, std::ostream& log) {
  const std::vector<NamedField> fields = gather_fields(cfg);
  const std::vector<double> radii = cfg.radii.empty() ? default_radii() : cfg.radii;
  VerificationReport rep = make_report(cfg, "verify");
  const double tol_mono = cfg.tol_or("monotone", 1e-6);
  const double tol_hb = cfg.tol_or("height_bound", 1e-6);
  const double tol_grad = cfg.tol_or("gradient_identity", 1e-8);
  const double tol_conf = cfg.tol_or("conformality", 1e-6);
  const double tol_series = cfg.tol_or("energy_series", 1e-4);
  const double tol_analytic = cfg.tol_or("energy_analytic", 1e-8);

  for (const NamedField& nf : fields) {
    for (std::size_t ci = 0; ci < nf.centers.size(); ++ci) {
      const std::string tag = ci == 0 ? nf.slug : nf.slug + "@c" + std::to_string(ci);
      RadialProfile prof = radial_profile(nf.field, nf.centers[ci], radii, cfg.grid,
                                          cfg.policy);
      const double mv = prof.max_violation();
      rep.add(tag + ":monotone", anchors::kFrequencyMonotone, mv, tol_mono, tol_mono - mv,
              mv <= tol_mono);
      merge_rows(rep, check_height_bound(prof, sample_pairs(prof), tol_hb), tag + ":");
    }

    const Complex c0 = nf.centers.front();
    const double window = std::min(1.0, nf.field.domain_radius() / 2.0);
    try {
      const HopfPackage pkg = fit_phi_series(nf.field, c0, window, cfg.series_order, 512,
                                             cfg.grid, cfg.policy);
      rep.add(nf.slug + ":holomorphy", anchors::kHopfHolomorphy, pkg.defects.holomorphy,
              kHolomorphyGate, kHolomorphyGate - pkg.defects.holomorphy,
              pkg.defects.holomorphy <= kHolomorphyGate);
      rep.add_info(nf.slug + ":fit_residual", anchors::kHopfHolomorphy, pkg.fit_residual);
      merge_rows(rep,
                 energy_identity_check(nf.field, pkg, window / 2.0, cfg.grid, cfg.policy,
                                       tol_series, tol_analytic),
                 nf.slug + ":");
      const CompletionMap h = conformal_completion(pkg);
      const double gerr = gradient_identity_error(nf.field, h, pkg);
      rep.add(nf.slug + ":gradient_identity", anchors::kCompletionGradientIdentity, gerr,
              tol_grad, tol_grad - gerr, gerr <= tol_grad);
      const double defect = cfg.fd_step > 0.0 ? augmented_defect(nf.field, h, cfg.fd_step)
                                              : pkg.defects.conformality;
      rep.add(nf.slug + ":conformality", anchors::kCompletionConformality, defect, tol_conf,
              tol_conf - defect, defect <= tol_conf);
    } catch (const degenerate_energy_error&) {
      rep.add_info(nf.slug + ":completion_degenerate", anchors::kCompletionEnergyIdentity, 0.0);
    } catch (const series_fit_error& e) {
      rep.add(nf.slug + ":series_fit_failed", anchors::kHopfHolomorphy, 1.0, 0.0, -1.0, false);
      log << nf.slug << ": series fit failed: " << e.what() << "\n";
    }

    const CourantLebesgueResult cl = courant_lebesgue_radius(nf.field, c0, window, 64, 512,
                                                             cfg.grid, cfg.policy);
    rep.add(nf.slug + ":oscillation", anchors::kOscillationRadiusBound, cl.osc, cl.bound,
            (cl.bound - cl.osc) / std::max(cl.bound, 1e-300), cl.pass);

    try {
      const KeyLemmaGap gap = key_lemma_gap(nf.field, c0, window / 2.0, c0, 512, cfg.grid,
                                            cfg.policy);
      if (gap.degenerate)
        rep.add_info(nf.slug + ":key_lemma_degenerate", anchors::kOscillationCenterGap,
                     gap.lhs);
      else
        rep.add(nf.slug + ":key_lemma_delta", anchors::kOscillationCenterGap, gap.delta_hat,
                0.0, gap.delta_hat, gap.delta_hat > 0.0);
    } catch (const series_fit_error& e) {
      rep.add(nf.slug + ":key_lemma_fit_failed", anchors::kOscillationCenterGap, 1.0, 0.0,
              -1.0, false);
      log << nf.slug << ": key lemma fit failed: " << e.what() << "\n";
    }
  }

  Rng rng(cfg.seed);
  for (int i = 0; i < cfg.cl_fields; ++i) {
    const FieldSpec f = random_harmonic_field(rng);
    const CourantLebesgueResult cl = courant_lebesgue_radius(f, f.center(), 1.0, 64, 512,
                                                             cfg.grid, cfg.policy);
    rep.add("cl_random" + std::to_string(i), anchors::kOscillationRadiusBound, cl.osc,
            cl.bound, (cl.bound - cl.osc) / std::max(cl.bound, 1e-300), cl.pass);
  }

  write_report_pair(cfg, "verify_report", rep);
  print_failures(rep, log);
  log << "verify: " << rep.rows.size() << " rows, " << rep.failure_count() << " failures\n";
  return rep.all_pass() ? 0 : 1;
}

int run_blowup(const RunConfig& cfg, std::ostream& log) {
  const std::vector<NamedField> fields = gather_fields(cfg);
  const std::vector<double> bradii =
      cfg.blowup_radii.empty() ? default_blowup_radii() : cfg.blowup_radii;
  VerificationReport master = make_report(cfg, "blowup");

  for (const NamedField& nf : fields) {
    const Complex x0 = cfg.blowup_x0_set
                           ? cfg.blowup_x0
                           : (nf.collapse.empty() ? nf.field.center() : nf.collapse.front());
    const BlowupSequence seq = make_blowup_sequence(nf.field, x0, bradii, cfg.grid.angular);
    const BlowupReport br =
        blowup_report(seq, cfg.grid, cfg.policy, cfg.tol_or("unit_height", 1e-8),
                      cfg.tol_or("invariance", 1e-8), cfg.tol_or("height_floor", 1e-6));
    write_text_atomic(cfg.out_dir / (nf.slug + "_blowup.json"),
                      blowup_to_json(br).dump(2) + "\n");
    write_text_atomic(cfg.out_dir / (nf.slug + "_blowup_steps.csv"), blowup_steps_csv(br));
    merge_rows(master, br.report, nf.slug + ":");
    if (!br.steps.empty())
      log << nf.slug << ": " << br.steps.size() << " steps, last D(1) "
          << fmt6(br.steps.back().d1) << "\n";
  }

  write_report_pair(cfg, "blowup_report", master);
  print_failures(master, log);
  log << "blowup: " << master.rows.size() << " rows, " << master.failure_count()
      << " failures\n";
  return master.all_pass() ? 0 : 1;
}

int run_scan(const RunConfig& cfg, std::ostream& log) {
  std::vector<std::pair<FieldSpec, std::vector<Complex>>> corpus;
  if (cfg.use_corpus) {
    corpus = branch_scan_corpus();
  } else {
    const std::vector<NamedField> fields = gather_fields(cfg);
    for (const NamedField& nf : fields)
      corpus.emplace_back(nf.field, nf.collapse.empty()
                                        ? std::vector<Complex>{nf.field.center()}
                                        : nf.collapse);
  }
  const ScanResult res = frequency_gap_scan(corpus, cfg.scan_r_hat, cfg.grid, cfg.policy);
  write_text_atomic(cfg.out_dir / "scan.json", scan_to_json(res).dump(2) + "\n");
  write_text_atomic(cfg.out_dir / "scan.csv", scan_to_csv(res));
  log << "scan: delta_hat " << fmt_g17(res.delta_hat) << " over " << res.rows.size()
      << " points\n";
  print_failures(res.report, log);
  return res.report.all_pass() ? 0 : 1;
}

int run_export(const RunConfig& cfg, std::ostream& log) {
  const Json artifact = parse_json_file(cfg.export_input);
  const auto [ext, content] = reserialize(artifact);
  const fs::path out = cfg.out_dir / (cfg.export_input.stem().string() + "_export." + ext);
  write_text_atomic(out, content);
  log << "wrote " << out.string() << "\n";
  return 0;
}

Complex read_complex(const Json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw config_error(key + ": expected [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

RunConfig load_run_config(const std::string& command, const fs::path& config_path) {
  RunConfig cfg;
  cfg.command = command;
  const Json j = parse_json_file(config_path);
  if (!j.is_object()) throw config_error(config_path.string() + ": expected an object");

  static const std::set<std::string> allowed = {
      "corpus",       "fields", "radii",     "grid",      "seed", "out",
      "fd_step",      "policy", "tol",       "cl_fields", "blowup",
      "series_order", "input",  "scan_r_hat"};
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw config_error("unknown config key \"" + key + "\"");

  try {
    if (j.contains("corpus")) {
      const std::string name = j["corpus"].get<std::string>();
      if (name != "standard") throw config_error("corpus: unknown name \"" + name + "\"");
      cfg.use_corpus = true;
    }
    if (j.contains("fields")) {
      int fi = 0;
      for (const Json& fj : j["fields"]) {
        cfg.fields.push_back(field_from_json(fj));
        std::vector<Complex> pts;
        if (fj.contains("points")) {
          for (const Json& pj : fj["points"])
            pts.push_back(read_complex(pj, "fields[" + std::to_string(fi) + "].points"));
        }
        cfg.points.push_back(std::move(pts));
        ++fi;
      }
    }
    if (j.contains("radii")) {
      const Json& rj = j["radii"];
      if (rj.is_array()) {
        for (const Json& v : rj) cfg.radii.push_back(v.get<double>());
      } else if (rj.is_object()) {
        cfg.radii = log_radii(rj.at("min").get<double>(), rj.at("max").get<double>(),
                              rj.at("count").get<int>());
      } else {
        throw config_error("radii: expected an array or {min, max, count}");
      }
    }
    if (j.contains("grid")) {
      cfg.grid.angular = j["grid"].value("angular", cfg.grid.angular);
      cfg.grid.radial = j["grid"].value("radial", cfg.grid.radial);
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("fd_step")) cfg.fd_step = j["fd_step"].get<double>();
    if (j.contains("series_order")) cfg.series_order = j["series_order"].get<int>();
    if (j.contains("cl_fields")) cfg.cl_fields = j["cl_fields"].get<int>();
    if (j.contains("scan_r_hat")) cfg.scan_r_hat = j["scan_r_hat"].get<double>();
    if (j.contains("policy")) {
      const std::string p = j["policy"].get<std::string>();
      if (p == "serial")
        cfg.policy = ExecutionPolicy::Serial;
      else if (p == "parallel")
        cfg.policy = ExecutionPolicy::Parallel;
      else
        throw config_error("policy: expected \"serial\" or \"parallel\"");
    }
    if (j.contains("tol")) {
      for (const auto& [name, value] : j["tol"].items())
        cfg.tol[name] = value.get<double>();
    }
    if (j.contains("blowup")) {
      const Json& bj = j["blowup"];
      for (const auto& [key, value] : bj.items())
        if (key != "x0" && key != "radii")
          throw config_error("blowup: unknown key \"" + key + "\"");
      if (bj.contains("x0")) {
        cfg.blowup_x0 = read_complex(bj["x0"], "blowup.x0");
        cfg.blowup_x0_set = true;
      }
      if (bj.contains("radii"))
        for (const Json& v : bj["radii"]) cfg.blowup_radii.push_back(v.get<double>());
    }
    if (j.contains("input")) cfg.export_input = j["input"].get<std::string>();
  } catch (const Json::exception& e) {
    throw config_error(config_path.string() + ": " + e.what());
  }

  if (command == "export" && cfg.export_input.empty())
    throw config_error("export: config needs \"input\" (path to an artifact JSON)");
  if (command != "export" && !cfg.use_corpus && cfg.fields.empty())
    throw config_error(command + ": config needs \"fields\" or \"corpus\": \"standard\"");
  if (cfg.series_order < 1) throw config_error("series_order: must be at least 1");
  if (cfg.cl_fields < 0) throw config_error("cl_fields: must be nonnegative");
  return cfg;
}

int run_command(const RunConfig& cfg, std::ostream& log) {
  try {
    cfg.grid.validate();
  } catch (const error& e) {
    throw config_error(std::string("grid: ") + e.what());
  }
  if (cfg.command == "analyze") return run_analyze(cfg, log);
  if (cfg.command == "verify") return run_verify(cfg, log);
  if (cfg.command == "blowup") return run_blowup(cfg, log);
  if (cfg.command == "scan") return run_scan(cfg, log);
  if (cfg.command == "export") return run_export(cfg, log);
  throw config_error("unknown command \"" + cfg.command + "\"");
}

}  // namespace qfreq
