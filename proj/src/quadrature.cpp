#include "qfreq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Number of innermost radial cells covered by the power-law fit. The fit
// samples the radial integrand at cell kSingularCells and at half that
// radius, which must itself be a grid node: keep this a multiple of 2.
constexpr int kSingularCells = 8;

// Integral of w over [0, rho_k] from samples w_half = w(rho_k/2) and
// w_k = w(rho_k), assuming w ~ c rho^p. Exact for pure powers p > -1;
// for smooth g the radial integrand is ~ rho, recovered as p = 1.
double inner_block(double w_half, double w_k, double rho_k) {
  if (w_k == 0.0 && w_half == 0.0) return 0.0;
  if ((w_k > 0.0 && w_half > 0.0) || (w_k < 0.0 && w_half < 0.0)) {
    double p = std::log2(w_k / w_half);
    p = std::clamp(p, -0.95, 12.0);
    return w_k * rho_k / (p + 1.0);
  }
  // Sign change or a vanishing sample: trapezoid with w(0) taken as 0.
  return rho_k * (2.0 * w_half + w_k) / 4.0;
}

}  // namespace

void GridSpec::validate() const {
  if (angular < 8) throw parameter_error("angular node count must be at least 8");
  if (radial < 16 || radial % 2 != 0)
    throw parameter_error("radial interval count must be even and at least 16");
}

double disk_integral(const std::function<double(Complex)>& g, Complex center, double radius,
                     const GridSpec& grid, ExecutionPolicy policy) {
  grid.validate();
  if (!(radius > 0.0)) throw parameter_error("disk radius must be positive");

  const int a = grid.angular;
  const int n = grid.radial;
  const double dtheta = kTwoPi / a;
  const double h = radius / n;

  std::vector<Complex> dirs(static_cast<std::size_t>(a));
  for (int j = 0; j < a; ++j) {
    const double theta = kTwoPi * j / a;
    dirs[j] = {std::cos(theta), std::sin(theta)};
  }

  // w[i] = rho_i * dtheta * sum_j g(center + rho_i dirs[j]); rows needed are
  // kSingularCells/2 (the fit's half sample) and kSingularCells..n.
  std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
  const int half_row = kSingularCells / 2;

  auto row = [&](int i) {
    const double rho = h * i;
    double s = 0.0;
    for (int j = 0; j < a; ++j) s += g(center + rho * dirs[j]);
    w[i] = s * dtheta * rho;
  };

  if (policy == ExecutionPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = half_row; i <= n; ++i) {
      if (i == half_row || i >= kSingularCells) row(i);
    }
  } else {
    for (int i = half_row; i <= n; ++i) {
      if (i == half_row || i >= kSingularCells) row(i);
    }
  }

  double total = inner_block(w[half_row], w[kSingularCells], h * kSingularCells);

  // Composite Simpson over [rho_K, radius]; n - kSingularCells is even.
  double s_ends = w[kSingularCells] + w[n];
  double s4 = 0.0, s2 = 0.0;
  for (int i = kSingularCells + 1; i < n; ++i) {
    if ((i - kSingularCells) % 2 == 1)
      s4 += w[i];
    else
      s2 += w[i];
  }
  total += h / 3.0 * (s_ends + 4.0 * s4 + 2.0 * s2);
  return total;
}

std::vector<Complex> circle_nodes(Complex center, double radius, int nodes) {
  if (nodes < 8) throw parameter_error("circle node count must be at least 8");
  if (!(radius >= 0.0)) throw parameter_error("circle radius must be nonnegative");
  std::vector<Complex> out(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    const double theta = kTwoPi * j / nodes;
    out[j] = center + radius * Complex{std::cos(theta), std::sin(theta)};
  }
  return out;
}

double circle_integral(const std::function<double(Complex)>& g, Complex center, double radius,
                       int nodes) {
  if (nodes < 8) throw parameter_error("circle node count must be at least 8");
  if (!(radius > 0.0)) throw parameter_error("circle radius must be positive");
  const double dtheta = kTwoPi / nodes;
  double s = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double theta = kTwoPi * j / nodes;
    s += g(center + radius * Complex{std::cos(theta), std::sin(theta)});
  }
  return s * dtheta * radius;
}

}  // namespace qfreq
