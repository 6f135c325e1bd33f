#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qfreq/families.hpp"
#include "qfreq/quadrature.hpp"
#include "qfreq/report.hpp"

namespace qfreq {

/// Heights at or below this are treated as vanishing; the frequency r·D/H
/// is left undefined there instead of overflowing.
inline constexpr double kHeightFloor = 1e-14;

enum class GradientSource { Analytic, FiniteDifference };

/// A consecutive-radius pair where the measured frequency decreased.
struct MonotoneViolation {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double drop = 0.0;  // n(r_lo) - n(r_hi) > 0
};

/// Sampled D, H, N along an ascending radius grid about one center.
/// n_vals[i] = radii[i] * d_vals[i] / h_vals[i] where n_defined[i], NaN
/// elsewhere (height at or below kHeightFloor).
struct RadialProfile {
  std::string label;
  Complex center{0.0, 0.0};
  std::vector<double> radii;
  std::vector<double> d_vals;
  std::vector<double> h_vals;
  std::vector<double> n_vals;
  std::vector<char> n_defined;
  int m = 2;  // domain dimension
  GridSpec grid;
  std::vector<MonotoneViolation> violations;  // every consecutive drop > 0

  double max_violation() const;
};

/// Throws domain_error unless the closed disk of radius r about `center`
/// lies inside the field's domain disk.
void require_disk_in_domain(const FieldSpec& spec, Complex center, double r);

/// Energy of the embedded field over the disk of radius r about `center`:
/// the disk integral of sum_i |grad f_i|^2. The FiniteDifference source
/// integrates the squared embedded Jacobian from xi0_jacobian_fd instead
/// (step defaults to 1e-6 * max(1, r) when fd_step <= 0); it is accurate
/// only where no two sheets tie in any coordinate.
double dirichlet_energy(const FieldSpec& spec, Complex center, double r, const GridSpec& grid = {},
                        ExecutionPolicy policy = ExecutionPolicy::Parallel,
                        GradientSource source = GradientSource::Analytic, double fd_step = 0.0);

/// Circle integral of sum_i |f_i|^2 at radius r about `center`.
double height(const FieldSpec& spec, Complex center, double r, int angular_nodes = 256);

/// r * D(r) / H(r). Throws degenerate_height_error when H(r) <= kHeightFloor.
double frequency(const FieldSpec& spec, Complex center, double r, const GridSpec& grid = {},
                 ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// D, H, N sampled on a strictly increasing radius grid; records every
/// consecutive frequency drop in `violations`.
RadialProfile radial_profile(const FieldSpec& spec, Complex center, std::vector<double> radii,
                             const GridSpec& grid = {},
                             ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// All (r, t) pairs with r <= t drawn from the profile grid.
std::vector<std::pair<double, double>> all_radius_pairs(const RadialProfile& profile);

/// Two-sided height growth check for each pair (r, t), r <= t:
///   lower:  (H(t)/t) * (r/t)^(2 N(t)) <= H(r)/r
///   upper:  H(r)/r <= (H(t)/t) * (r/t)^(2 N(r))
/// Pass iff relative slack >= -tol_rel. Pairs where N is undefined at r or
/// t produce informational degenerate rows.
VerificationReport check_height_bound(const RadialProfile& profile,
                                      const std::vector<std::pair<double, double>>& pairs,
                                      double tol_rel = 1e-6);

struct HolderFit {
  double alpha_hat = 0.0;
  double fit_residual = 0.0;  // max abs deviation from the fitted line
};

/// Least-squares slope of log(H(r)/r) against 2 log r over the smallest
/// decade of radii with defined frequency; the slope estimates the local
/// Hölder exponent. Requires at least 4 usable radii in that decade.
HolderFit estimate_holder_exponent(const RadialProfile& profile);

}  // namespace qfreq
