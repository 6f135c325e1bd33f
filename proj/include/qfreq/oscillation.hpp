#pragma once

#include <cmath>
#include <numbers>

#include "qfreq/families.hpp"
#include "qfreq/functionals.hpp"
#include "qfreq/hopf.hpp"

namespace qfreq {

/// Oscillation bound constant: some circle of radius r in [R/2, R] has
/// angular energy at most Dir(F; U_R)/log 2 (integrate the radial average
/// of |dF/dtheta|^2 / rho over [R/2, R]), and on that circle
/// osc^2 <= 2 pi * angular energy. Hence osc <= C sqrt(Dir) with:
inline const double kOscillationConstant = std::sqrt(2.0 * std::numbers::pi / std::log(2.0));

/// Max g_metric between sampled boundary values on |z - center| = r.
/// For single-valued fields this is the diameter of the boundary image.
double boundary_oscillation(const FieldSpec& spec, Complex center, double r, int samples = 512);

struct CourantLebesgueResult {
  double r_star = 0.0;  // oscillation-minimizing radius in [R/2, R]
  double osc = 0.0;     // boundary oscillation at r_star
  double bound = 0.0;   // kOscillationConstant * sqrt(Dir(F; U_R))
  bool pass = false;    // osc <= bound
};

/// Scans `scan_nodes` radii across [R/2, R] and returns the minimizer with
/// its oscillation and the energy bound. A violated bound is reported in
/// `pass`, never thrown.
CourantLebesgueResult courant_lebesgue_radius(const FieldSpec& spec, Complex w0, double R,
                                              int scan_nodes = 64, int samples = 512,
                                              const GridSpec& grid = {},
                                              ExecutionPolicy policy = ExecutionPolicy::Parallel);

struct KeyLemmaGap {
  double lhs = 0.0;         // inf over the boundary of g_metric(f(x), f(w_star))
  double energy_sum = 0.0;  // Dir(F; U_r) + Dir(h; U_r)
  double delta_hat = 0.0;   // energy_sum / (2 pi lhs^2)
  bool degenerate = false;  // lhs below 1e-14 or zero energy
};

/// Smallest constant delta for which
///   lhs <= sqrt(energy_sum / (2 pi delta))
/// holds on this instance; the completion window is U_r(w) itself.
KeyLemmaGap key_lemma_gap(const FieldSpec& spec, Complex w, double r, Complex w_star,
                          int samples = 512, const GridSpec& grid = {},
                          ExecutionPolicy policy = ExecutionPolicy::Parallel);

}  // namespace qfreq
