#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qfreq/cli.hpp"

namespace {

bool parse_grid(const std::string& text, qfreq::GridSpec& grid) {
  int a = 0, r = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%d,%d%c", &a, &r, &extra) != 2) return false;
  grid.angular = a;
  grid.radial = r;
  return true;
}

bool parse_tol(const std::string& text, std::string& name, double& value) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  name = text.substr(0, eq);
  char* end = nullptr;
  value = std::strtod(text.c_str() + eq + 1, &end);
  return end && *end == '\0' && end != text.c_str() + eq + 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frequency, energy, and oscillation checks for multi-valued harmonic fields"};
  app.require_subcommand(1);

  std::string config_path, out_dir, grid_text;
  std::uint64_t seed = 0;
  std::vector<std::string> tol_overrides;

  const std::pair<const char*, const char*> commands[] = {
      {"analyze", "radial profiles, frequency, and the fitted growth exponent"},
      {"verify", "the full inequality and identity suite"},
      {"blowup", "rescaled sequences and their per-step checks"},
      {"scan", "minimal frequency over the configured collapse points"},
      {"export", "rebuild the tabular form of a prior artifact"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--config", config_path, "JSON run configuration")->required();
    sc->add_option("--out", out_dir, "output directory (overrides config)");
    sc->add_option("--seed", seed, "random seed (overrides config)");
    sc->add_option("--grid", grid_text, "angular,radial node counts (overrides config)");
    sc->add_option("--tol", tol_overrides, "tolerance override name=value (repeatable)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    qfreq::RunConfig cfg = qfreq::load_run_config(sub->get_name(), config_path);
    if (sub->count("--out")) cfg.out_dir = out_dir;
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--grid") && !parse_grid(grid_text, cfg.grid))
      throw qfreq::config_error("--grid: expected ANGULAR,RADIAL");
    for (const std::string& t : tol_overrides) {
      std::string name;
      double value = 0.0;
      if (!parse_tol(t, name, value))
        throw qfreq::config_error("--tol: expected NAME=VALUE, got \"" + t + "\"");
      cfg.tol[name] = value;
    }
    return qfreq::run_command(cfg, std::cout);
  } catch (const qfreq::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qfreq::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
