#include "qfreq/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfreq {

FieldSpec rescale(const FieldSpec& base, Complex x0, double r_j, int angular_nodes) {
  if (!(r_j > 0.0)) throw parameter_error("rescale radius must be positive");
  const double h = height(base, x0, r_j, angular_nodes);
  if (h <= kHeightFloor) {
    std::ostringstream os;
    os << "height " << h << " at radius " << r_j << " is too small to normalize by";
    throw degenerate_height_error(os.str());
  }
  const double amp = 1.0 / std::sqrt(h / r_j);
  return base.rescaled(x0, r_j, amp);
}

BlowupSequence make_blowup_sequence(const FieldSpec& base, Complex x0, std::vector<double> radii,
                                    int angular_nodes) {
  if (radii.empty()) throw parameter_error("blow-up radius sequence is empty");
  for (std::size_t j = 0; j < radii.size(); ++j) {
    if (!(radii[j] > 0.0)) throw parameter_error("blow-up radii must be positive");
    if (j > 0 && !(radii[j] < radii[j - 1]))
      throw parameter_error("blow-up radii must be strictly decreasing");
  }
  BlowupSequence seq(base);
  seq.x0 = x0;
  seq.radii = std::move(radii);
  seq.normalizers.reserve(seq.radii.size());
  seq.steps.reserve(seq.radii.size());
  for (double r : seq.radii) {
    seq.normalizers.push_back(height(base, x0, r, angular_nodes));
    seq.steps.push_back(rescale(base, x0, r, angular_nodes));
  }
  return seq;
}

BlowupReport blowup_report(const BlowupSequence& seq, const GridSpec& grid,
                           ExecutionPolicy policy, double tol_unit_height, double tol_invariance,
                           double tol_floor) {
  if (seq.steps.size() != seq.radii.size())
    throw parameter_error("blow-up sequence has mismatched steps and radii");

  BlowupReport out;
  out.report.suite = "blowup:" + seq.base.label();
  out.report.grid_angular = grid.angular;
  out.report.grid_radial = grid.radial;

  const Complex origin{0.0, 0.0};
  for (std::size_t j = 0; j < seq.steps.size(); ++j) {
    const FieldSpec& fj = seq.steps[j];
    const double r_j = seq.radii[j];
    BlowupStepRow row;
    row.j = static_cast<int>(j);
    row.r_j = r_j;
    const std::string tag = "step" + std::to_string(j);

    row.h1 = height(fj, origin, 1.0, grid.angular);
    const double h_err = std::abs(row.h1 - 1.0);
    out.report.add(tag, anchors::kBlowupUnitHeight, row.h1, 1.0, tol_unit_height - h_err,
                   h_err <= tol_unit_height);

    row.d1 = dirichlet_energy(fj, origin, 1.0, grid, policy);
    out.report.add_info(tag, anchors::kBlowupEnergyTrace, row.d1);

    const double n_step = row.d1 / row.h1;
    const double n_base = frequency(seq.base, seq.x0, r_j, grid, policy);
    const double inv_err = std::abs(n_step - n_base) / std::max(std::abs(n_base), 1e-300);
    out.report.add(tag, anchors::kBlowupFrequencyInvariance, n_step, n_base,
                   tol_invariance - inv_err, inv_err <= tol_invariance);

    const CourantLebesgueResult cl = courant_lebesgue_radius(fj, origin, 0.8, 64, 512, grid, policy);
    row.r0 = cl.r_star;
    row.osc = cl.osc;
    out.report.add(tag, anchors::kOscillationRadiusBound, cl.osc, cl.bound, cl.bound - cl.osc,
                   cl.pass);

    row.h_r0 = height(fj, origin, row.r0, grid.angular);
    const double floor = row.h1 * std::pow(row.r0, 1.0 + 2.0 * n_step);
    const double floor_slack = (row.h_r0 - floor) / std::max(row.h_r0, floor);
    out.report.add(tag, anchors::kBlowupHeightFloor, row.h_r0, floor, floor_slack,
                   floor_slack >= -tol_floor);
    out.report.add_info(tag + ":above_half", anchors::kBlowupHeightFloor, row.h_r0 - 0.5);

    const QPoint center_value = eval_field(fj, origin);
    double gap = 0.0;
    for (const Complex& z : circle_nodes(origin, row.r0, 512))
      gap = std::max(gap, g_metric(eval_field(fj, z), center_value));
    row.gap = gap;
    out.report.add_info(tag, anchors::kBlowupCenterOscillation, gap);

    out.steps.push_back(row);
  }
  return out;
}

ScanResult frequency_gap_scan(
    const std::vector<std::pair<FieldSpec, std::vector<Complex>>>& corpus, double r_hat,
    const GridSpec& grid, ExecutionPolicy policy) {
  if (corpus.empty()) throw parameter_error("frequency-gap scan corpus is empty");
  if (!(r_hat > 0.0)) throw parameter_error("scan radius must be positive");

  ScanResult out;
  out.report.suite = "frequency_gap_scan";
  out.report.grid_angular = grid.angular;
  out.report.grid_radial = grid.radial;

  bool any_point = false;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [spec, points] : corpus) {
    for (const Complex& p : points) {
      any_point = true;
      ScanRow row;
      row.label = spec.label();
      row.point = p;

      const QPoint value = eval_field(spec, p);
      const double diam = sheet_diameter(spec, p);
      if (spec.q() < 2 || diam > 1e-12) {
        row.flag = spec.q() < 2 ? "not multi-valued" : "sheets do not collapse here";
        out.rows.push_back(row);
        continue;
      }

      // Subtract the collapse value; the frequency of the recentered field
      // measures the vanishing order at p.
      std::vector<double> shift(static_cast<std::size_t>(spec.n()), 0.0);
      for (int i = 0; i < value.q(); ++i)
        for (int c = 0; c < value.n(); ++c) shift[c] += value.at(i, c) / value.q();
      for (int c = 0; c < spec.n(); ++c)
        shift[c] += spec.offset().empty() ? 0.0 : spec.offset()[c];
      const FieldSpec recentred = spec.with_offset(shift);

      try {
        row.n_hat = frequency(recentred, p, r_hat, grid, policy);
        row.branch_ok = true;
        best = std::min(best, row.n_hat);
      } catch (const degenerate_height_error&) {
        row.flag = "height vanishes after recentering";
      }
      out.rows.push_back(row);
    }
  }
  if (!any_point) throw parameter_error("frequency-gap scan corpus lists no points");

  bool any_ok = false;
  for (const auto& row : out.rows) {
    std::ostringstream id;
    id << row.label << "@(" << row.point.real() << "," << row.point.imag() << ")";
    if (!row.branch_ok) {
      out.report.add_info(id.str() + ":" + row.flag, anchors::kScanFrequencyGap,
                          std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    any_ok = true;
    out.report.add(id.str(), anchors::kScanFrequencyGap, row.n_hat, 0.0, row.n_hat,
                   row.n_hat > 0.0);
  }
  if (!any_ok) throw parameter_error("no corpus point passes the collapse precondition");
  out.delta_hat = best;
  out.report.add("delta_hat", anchors::kScanFrequencyGap, best, 0.0, best, best > 0.0);
  return out;
}

}  // namespace qfreq
