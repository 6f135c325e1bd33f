#include "qfreq/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qfreq/quadrature.hpp"

namespace qfreq {

namespace {

// Diameter of the sampled boundary image for a single-valued field: plain
// pairwise squared distances on a flat value array.
double diameter_single_valued(const FieldSpec& spec, const std::vector<Complex>& nodes) {
  const int n = spec.n();
  const std::size_t s = nodes.size();
  std::vector<double> vals(s * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < s; ++i) {
    const QPoint p = eval_field(spec, nodes[i]);
    for (int c = 0; c < n; ++c) vals[i * n + c] = p.at(0, c);
  }
  double best_sq = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    const double* a = vals.data() + i * n;
    for (std::size_t j = i + 1; j < s; ++j) {
      const double* b = vals.data() + j * n;
      double d = 0.0;
      for (int c = 0; c < n; ++c) {
        const double t = a[c] - b[c];
        d += t * t;
      }
      best_sq = std::max(best_sq, d);
    }
  }
  return std::sqrt(best_sq);
}

// Diameter in the matching metric. Triangle-inequality pruning against a
// few anchor points skips most exact metric evaluations.
double diameter_multi_valued(const FieldSpec& spec, const std::vector<Complex>& nodes) {
  const std::size_t s = nodes.size();
  std::vector<QPoint> vals;
  vals.reserve(s);
  for (const Complex& z : nodes) vals.push_back(eval_field(spec, z));

  const std::size_t anchor_ids[4] = {0, s / 4, s / 2, 3 * s / 4};
  std::vector<double> anchor_dist(4 * s);
  for (int a = 0; a < 4; ++a)
    for (std::size_t i = 0; i < s; ++i)
      anchor_dist[a * s + i] = g_metric(vals[anchor_ids[a]], vals[i]);

  double best = 0.0;
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      double ub = std::numeric_limits<double>::infinity();
      for (int a = 0; a < 4; ++a)
        ub = std::min(ub, anchor_dist[a * s + i] + anchor_dist[a * s + j]);
      if (ub <= best) continue;
      best = std::max(best, g_metric(vals[i], vals[j]));
    }
  }
  return best;
}

}  // namespace

double boundary_oscillation(const FieldSpec& spec, Complex center, double r, int samples) {
  if (samples < 8) throw parameter_error("need at least 8 boundary samples");
  require_disk_in_domain(spec, center, r);
  const auto nodes = circle_nodes(center, r, samples);
  if (spec.q() == 1) return diameter_single_valued(spec, nodes);
  return diameter_multi_valued(spec, nodes);
}

CourantLebesgueResult courant_lebesgue_radius(const FieldSpec& spec, Complex w0, double R,
                                              int scan_nodes, int samples, const GridSpec& grid,
                                              ExecutionPolicy policy) {
  if (scan_nodes < 2) throw parameter_error("radius scan needs at least 2 nodes");
  require_disk_in_domain(spec, w0, R);

  CourantLebesgueResult res;
  res.osc = std::numeric_limits<double>::infinity();
  for (int t = 0; t < scan_nodes; ++t) {
    const double r = 0.5 * R + 0.5 * R * t / (scan_nodes - 1);
    const double osc = boundary_oscillation(spec, w0, r, samples);
    if (osc < res.osc) {
      res.osc = osc;
      res.r_star = r;
    }
  }
  res.bound = kOscillationConstant * std::sqrt(dirichlet_energy(spec, w0, R, grid, policy));
  res.pass = res.osc <= res.bound;
  return res;
}

KeyLemmaGap key_lemma_gap(const FieldSpec& spec, Complex w, double r, Complex w_star, int samples,
                          const GridSpec& grid, ExecutionPolicy policy) {
  if (!(std::abs(w_star - w) < r))
    throw parameter_error("reference point must lie inside the disk");
  if (samples < 8) throw parameter_error("need at least 8 boundary samples");
  require_disk_in_domain(spec, w, r);

  KeyLemmaGap out;
  const QPoint p_star = eval_field(spec, w_star);
  out.lhs = std::numeric_limits<double>::infinity();
  for (const Complex& z : circle_nodes(w, r, samples))
    out.lhs = std::min(out.lhs, g_metric(eval_field(spec, z), p_star));

  const HopfPackage pkg = fit_phi_series(spec, w, r, 64, 512, grid, policy);
  if (out.lhs <= 1e-14 || !(pkg.d_big > 0.0)) {
    out.energy_sum = pkg.d_big;
    out.delta_hat = std::numeric_limits<double>::quiet_NaN();
    out.degenerate = true;
    return out;
  }
  const CompletionMap h = conformal_completion(pkg);
  const double dir_h =
      disk_integral([&](Complex z) { return h.grad_norm_sq(z); }, w, r, grid, policy);
  out.energy_sum = pkg.d_big + dir_h;
  out.delta_hat = out.energy_sum / (2.0 * std::numbers::pi * out.lhs * out.lhs);
  return out;
}

}  // namespace qfreq
