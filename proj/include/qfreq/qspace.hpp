#pragma once

#include <vector>

#include "qfreq/errors.hpp"

namespace qfreq {

/// An unordered Q-tuple of points in R^n. Storage order is not observable:
/// every operation taking QPoints is invariant under permutation of the
/// stored points.
class QPoint {
public:
  QPoint(int q, int n) : q_(q), n_(n), data_(static_cast<std::size_t>(q) * n, 0.0) {
    if (q < 1 || n < 1) throw parameter_error("QPoint requires q >= 1 and n >= 1");
  }

  /// Build from a list of Q points, each of dimension n.
  static QPoint from_points(const std::vector<std::vector<double>>& pts);

  /// Q copies of a single point p.
  static QPoint splat(int q, const std::vector<double>& p);

  int q() const noexcept { return q_; }
  int n() const noexcept { return n_; }

  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& data() const noexcept { return data_; }

  /// sqrt(sum_i |p_i|^2) — the norm used by |xi0| preservation.
  double norm() const;

private:
  int q_;
  int n_;
  std::vector<double> data_;  // row-major, q rows of n
};

/// Matching metric between Q-points: min over permutations sigma of
/// sqrt(sum_i |S_i - T_sigma(i)|^2), solved by an O(Q^3) shortest
/// augmenting path assignment on the squared-distance cost matrix.
double g_metric(const QPoint& S, const QPoint& T);

/// Exact reference: enumerates all Q! permutations. Same arithmetic as
/// g_metric (canonical ascending summation of matched squared distances),
/// so agreement is exact. Refuses Q > 8.
double g_metric_bruteforce(const QPoint& S, const QPoint& T);

/// Coordinate-sorting embedding into R^{nQ}: for each ambient coordinate j,
/// the Q scalar values are sorted ascending; blocks are concatenated
/// coordinate-major. Lipschitz-1 with respect to g_metric, norm preserving.
std::vector<double> xi0(const QPoint& S);

}  // namespace qfreq
