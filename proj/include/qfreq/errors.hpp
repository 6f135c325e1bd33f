#pragma once

#include <stdexcept>
#include <string>

namespace qfreq {

enum class errc {
  dimension_mismatch,
  multiplicity_bound,
  singularity,
  degenerate_height,
  degenerate_energy,
  domain,
  parameter,
  series_fit,
  config,
};

// All library failures derive from qfreq::error and carry a machine-readable code.
class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

struct dimension_mismatch_error : error {
  explicit dimension_mismatch_error(const std::string& w) : error(errc::dimension_mismatch, w) {}
};
struct multiplicity_bound_error : error {
  explicit multiplicity_bound_error(const std::string& w) : error(errc::multiplicity_bound, w) {}
};
struct singularity_error : error {
  explicit singularity_error(const std::string& w) : error(errc::singularity, w) {}
};
struct degenerate_height_error : error {
  explicit degenerate_height_error(const std::string& w) : error(errc::degenerate_height, w) {}
};
struct degenerate_energy_error : error {
  explicit degenerate_energy_error(const std::string& w) : error(errc::degenerate_energy, w) {}
};
struct domain_error : error {
  explicit domain_error(const std::string& w) : error(errc::domain, w) {}
};
struct parameter_error : error {
  explicit parameter_error(const std::string& w) : error(errc::parameter, w) {}
};
struct series_fit_error : error {
  explicit series_fit_error(const std::string& w) : error(errc::series_fit, w) {}
};
struct config_error : error {
  explicit config_error(const std::string& w) : error(errc::config, w) {}
};

}  // namespace qfreq
