#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qfreq/families.hpp"
#include "qfreq/functionals.hpp"
#include "qfreq/oscillation.hpp"
#include "qfreq/report.hpp"

namespace qfreq {

/// The field x -> f(x0 + r_j x) / sqrt(H(r_j)/r_j). The normalizer is the
/// height per unit arc length, which makes the rescaled field's unit-circle
/// height exactly 1; the rescaled field is centered at 0.
FieldSpec rescale(const FieldSpec& base, Complex x0, double r_j, int angular_nodes = 256);

struct BlowupSequence {
  explicit BlowupSequence(FieldSpec b) : base(std::move(b)) {}
  FieldSpec base;
  Complex x0{0.0, 0.0};
  std::vector<double> radii;        // strictly decreasing
  std::vector<double> normalizers;  // base height at each radius
  std::vector<FieldSpec> steps;     // rescaled fields, one per radius
};

BlowupSequence make_blowup_sequence(const FieldSpec& base, Complex x0, std::vector<double> radii,
                                    int angular_nodes = 256);

struct BlowupStepRow {
  int j = 0;
  double r_j = 0.0;
  double h1 = 0.0;    // unit-circle height of the rescaled field, expect 1
  double d1 = 0.0;    // unit-disk energy, equals the base frequency at r_j
  double r0 = 0.0;    // oscillation-minimizing radius in [2/5, 4/5]
  double osc = 0.0;   // boundary oscillation at r0
  double h_r0 = 0.0;  // height at r0
  double gap = 0.0;   // max boundary distance from the center value at r0
};

struct BlowupReport {
  VerificationReport report;
  std::vector<BlowupStepRow> steps;
};

/// Per-step checks: unit height, frequency invariance against the base
/// field, the oscillation bound on [2/5, 4/5], and the height floor
/// H(r0) >= H(1) * r0^(1 + 2 N(1)) implied by the two-sided height growth
/// bound at t = 1.
BlowupReport blowup_report(const BlowupSequence& seq, const GridSpec& grid = {},
                           ExecutionPolicy policy = ExecutionPolicy::Parallel,
                           double tol_unit_height = 1e-8, double tol_invariance = 1e-8,
                           double tol_floor = 1e-6);

struct ScanRow {
  std::string label;
  Complex point{0.0, 0.0};
  double n_hat = 0.0;
  bool branch_ok = false;
  std::string flag;  // empty when the row is usable
};

struct ScanResult {
  double delta_hat = 0.0;  // min n_hat over usable rows
  std::vector<ScanRow> rows;
  VerificationReport report;
};

/// Frequency at radius r_hat about each listed collapse point, after
/// subtracting the collapse value so the height vanishes to leading order.
/// Points where the sheets do not fully collapse are flagged, not scored.
/// Throws parameter_error when the corpus is empty or no point qualifies.
ScanResult frequency_gap_scan(
    const std::vector<std::pair<FieldSpec, std::vector<Complex>>>& corpus,
    double r_hat = 1.0 / 1024.0, const GridSpec& grid = {},
    ExecutionPolicy policy = ExecutionPolicy::Parallel);

}  // namespace qfreq
