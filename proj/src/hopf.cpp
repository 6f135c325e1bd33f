#include "qfreq/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex horner(const std::vector<Complex>& coeffs, Complex x) {
  Complex acc{0.0, 0.0};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Annulus sample radii as fractions of the window radius; strictly inside
// the window and off the center, where a branch point may sit.
constexpr double kAnnulusFractions[] = {0.3, 0.5, 0.7, 0.9};

}  // namespace

Complex HopfPackage::phi_at(Complex z) const { return horner(phi_coeffs, z - window_center); }

Complex HopfPackage::psi_at(Complex z) const { return horner(psi_coeffs, z - window_center); }

Complex hopf_differential(const FieldSpec& spec, Complex z) {
  if (spec.is_branch() && std::abs(z - spec.center()) == 0.0)
    throw singularity_error("Hopf value undefined at the branch point");
  return hopf_value_analytic(spec, z);
}

Complex hopf_differential_fd(const FieldSpec& spec, Complex z, double step) {
  const EmbeddedJacobian J = xi0_jacobian_fd(spec, z, step);
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t t = 0; t < J.du.size(); ++t) {
    uu += J.du[t] * J.du[t];
    vv += J.dv[t] * J.dv[t];
    uv += J.du[t] * J.dv[t];
  }
  return {uu - vv, -2.0 * uv};
}

double holomorphy_defect(const FieldSpec& spec, Complex window_center, double window_radius,
                         double fd_step, int angular_samples) {
  if (!(window_radius > 0.0)) throw parameter_error("window radius must be positive");
  if (angular_samples < 8) throw parameter_error("need at least 8 angular samples");
  require_disk_in_domain(spec, window_center, window_radius);
  const double h = fd_step > 0.0 ? fd_step : 1e-4 * window_radius;

  double max_phi = 0.0;
  double max_dbar = 0.0;
  for (double frac : kAnnulusFractions) {
    const double rho = frac * window_radius;
    for (int j = 0; j < angular_samples; ++j) {
      const double theta = kTwoPi * j / angular_samples;
      const Complex z = window_center + rho * Complex{std::cos(theta), std::sin(theta)};
      max_phi = std::max(max_phi, std::abs(hopf_differential(spec, z)));
      // d/dconj(z) = (d/du + i d/dv) / 2 by centered differences.
      const Complex fu = (hopf_differential(spec, z + Complex{h, 0.0}) -
                          hopf_differential(spec, z - Complex{h, 0.0})) /
                         (2.0 * h);
      const Complex fv = (hopf_differential(spec, z + Complex{0.0, h}) -
                          hopf_differential(spec, z - Complex{0.0, h})) /
                         (2.0 * h);
      max_dbar = std::max(max_dbar, 0.5 * std::abs(fu + Complex{0.0, 1.0} * fv));
    }
  }
  if (max_phi <= 1e-14) return 0.0;
  return max_dbar / max_phi;
}

HopfPackage fit_phi_series(const FieldSpec& spec, Complex window_center, double window_radius,
                           int order, int nodes, const GridSpec& grid, ExecutionPolicy policy) {
  if (order < 1) throw parameter_error("series order must be at least 1");
  if (nodes < 4 * order) throw parameter_error("need at least 4 nodes per series order");
  require_disk_in_domain(spec, window_center, window_radius);

  HopfPackage pkg;
  pkg.window_center = window_center;
  pkg.window_radius = window_radius;

  pkg.defects.holomorphy = holomorphy_defect(spec, window_center, window_radius);
  if (pkg.defects.holomorphy > kHolomorphyGate) {
    std::ostringstream os;
    os << "Hopf value fails the holomorphy gate: defect " << pkg.defects.holomorphy << " > "
       << kHolomorphyGate;
    throw series_fit_error(os.str());
  }

  // Moments on the sampling circle: c_m = (1/S) sum_s phi_s e^{-im theta_s}
  // rho^{-m}, the trapezoid rule for the contour coefficient integral.
  const double rho = 0.9 * window_radius;
  std::vector<Complex> samples(static_cast<std::size_t>(nodes));
  double max_phi = 0.0;
  for (int s = 0; s < nodes; ++s) {
    const double theta = kTwoPi * s / nodes;
    samples[s] =
        hopf_differential(spec, window_center + rho * Complex{std::cos(theta), std::sin(theta)});
    max_phi = std::max(max_phi, std::abs(samples[s]));
  }
  pkg.phi_coeffs.assign(static_cast<std::size_t>(order) + 1, Complex{0.0, 0.0});
  for (int m = 0; m <= order; ++m) {
    Complex acc{0.0, 0.0};
    for (int s = 0; s < nodes; ++s) {
      const double theta = -kTwoPi * m * s / nodes;
      acc += samples[s] * Complex{std::cos(theta), std::sin(theta)};
    }
    pkg.phi_coeffs[m] = acc / (static_cast<double>(nodes) * std::pow(rho, m));
  }

  // Residual on an offset test circle strictly inside the sampling circle.
  const double rho_test = 0.75 * window_radius;
  for (int s = 0; s < nodes; ++s) {
    const double theta = kTwoPi * (s + 0.5) / nodes;
    const Complex z = window_center + rho_test * Complex{std::cos(theta), std::sin(theta)};
    pkg.fit_residual =
        std::max(pkg.fit_residual, std::abs(hopf_differential(spec, z) - pkg.phi_at(z)));
  }
  if (pkg.fit_residual > kSeriesFitTolRel * max_phi) {
    std::ostringstream os;
    os << "series fit residual " << pkg.fit_residual << " exceeds " << kSeriesFitTolRel
       << " * max|phi| = " << kSeriesFitTolRel * max_phi;
    throw series_fit_error(os.str());
  }

  pkg.psi_coeffs.assign(pkg.phi_coeffs.size() + 1, Complex{0.0, 0.0});
  for (std::size_t m = 0; m < pkg.phi_coeffs.size(); ++m)
    pkg.psi_coeffs[m + 1] = pkg.phi_coeffs[m] / static_cast<double>(m + 1);

  pkg.d_big = dirichlet_energy(spec, window_center, window_radius, grid, policy);

  if (pkg.d_big > 0.0) {
    const CompletionMap h = conformal_completion(pkg);
    for (double frac : kAnnulusFractions) {
      const double rr = frac * window_radius;
      for (int j = 0; j < 32; ++j) {
        // Half-step angular offset: keeps the finite-difference stencil off
        // the coordinate axes, where symmetric sheet pairs tie and the
        // sorted embedding has kinks.
        const double theta = kTwoPi * (j + 0.5) / 32;
        const Complex z = window_center + rr * Complex{std::cos(theta), std::sin(theta)};
        pkg.defects.conformality =
            std::max(pkg.defects.conformality, conformality_defect(spec, h, z));
      }
    }
  }
  return pkg;
}

CompletionMap conformal_completion(const HopfPackage& pkg) {
  if (!(pkg.d_big > 0.0))
    throw degenerate_energy_error("window energy must be positive to build a completion");
  if (pkg.psi_coeffs.empty()) throw parameter_error("package has no antiderivative coefficients");
  CompletionMap h;
  h.w_ = pkg.window_center;
  h.radius_ = pkg.window_radius;
  h.d_big_ = pkg.d_big;
  h.sqrt_d_ = std::sqrt(pkg.d_big);
  h.phi_ = pkg.phi_coeffs;
  h.psi_ = pkg.psi_coeffs;
  return h;
}

Complex CompletionMap::value(Complex z) const {
  const Complex z_loc = z - w_;
  return 0.5 * sqrt_d_ * std::conj(z_loc) - horner(psi_, z_loc) / (2.0 * sqrt_d_);
}

Complex CompletionMap::d_dz(Complex z) const {
  return -horner(phi_, z - w_) / (2.0 * sqrt_d_);
}

void CompletionMap::grads(Complex z, double* du, double* dv) const {
  // h_u = a + b, h_v = i(a - b) with a = d/dz h, b = d/dconj(z) h.
  const Complex a = d_dz(z);
  const double b = d_dzbar();
  du[0] = a.real() + b;
  du[1] = a.imag();
  dv[0] = -a.imag();
  dv[1] = a.real() - b;
}

double CompletionMap::grad_norm_sq(Complex z) const {
  double du[2], dv[2];
  grads(z, du, dv);
  return du[0] * du[0] + du[1] * du[1] + dv[0] * dv[0] + dv[1] * dv[1];
}

namespace {

double defect_core(const std::vector<double>& gu, const std::vector<double>& gv) {
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (std::size_t t = 0; t < gu.size(); ++t) {
    uu += gu[t] * gu[t];
    vv += gv[t] * gv[t];
    uv += gu[t] * gv[t];
  }
  const double norm = uu + vv;
  if (norm <= 1e-300) return 0.0;
  return (std::abs(uu - vv) + 2.0 * std::abs(uv)) / norm;
}

}  // namespace

double conformality_defect(const FieldSpec& spec, Complex z, double fd_step) {
  const EmbeddedJacobian J = xi0_jacobian_fd(spec, z, fd_step);
  return defect_core(J.du, J.dv);
}

double conformality_defect(const FieldSpec& spec, const CompletionMap& h, Complex z,
                           double fd_step) {
  EmbeddedJacobian J = xi0_jacobian_fd(spec, z, fd_step);
  double hu[2], hv[2];
  h.grads(z, hu, hv);
  J.du.push_back(hu[0]);
  J.du.push_back(hu[1]);
  J.dv.push_back(hv[0]);
  J.dv.push_back(hv[1]);
  return defect_core(J.du, J.dv);
}

VerificationReport energy_identity_check(const FieldSpec& spec, const HopfPackage& pkg, double r,
                                         const GridSpec& grid, ExecutionPolicy policy,
                                         double tol_series, double tol_analytic) {
  if (!(r < pkg.window_radius)) throw parameter_error("inner radius must be below the window radius");
  if (!(r > 0.0)) throw parameter_error("inner radius must be positive");

  VerificationReport rep;
  rep.suite = "energy_identity:" + spec.label();
  rep.grid_angular = grid.angular;
  rep.grid_radial = grid.radial;

  const Complex w = pkg.window_center;
  const double d = pkg.d_big;
  const CompletionMap h = conformal_completion(pkg);

  const double dir_h =
      disk_integral([&](Complex z) { return h.grad_norm_sq(z); }, w, r, grid, policy);
  const double area_term = d * std::numbers::pi * r * r / 2.0;

  const double phi_sq_series = disk_integral(
      [&](Complex z) { const Complex p = pkg.phi_at(z); return std::norm(p); }, w, r, grid,
      policy);
  const double rhs_series = area_term + phi_sq_series / (2.0 * d);
  const double err_series = std::abs(dir_h - rhs_series) / std::max(std::abs(rhs_series), 1e-300);
  rep.add("energy_identity.series", anchors::kCompletionEnergyIdentity, dir_h, rhs_series,
          tol_series - err_series, err_series <= tol_series);

  const double phi_sq_analytic = disk_integral(
      [&](Complex z) { return std::norm(hopf_value_analytic(spec, z)); }, w, r, grid, policy);
  const double rhs_analytic = area_term + phi_sq_analytic / (2.0 * d);
  const double err_analytic =
      std::abs(dir_h - rhs_analytic) / std::max(std::abs(rhs_analytic), 1e-300);
  rep.add("energy_identity.analytic", anchors::kCompletionEnergyIdentity, dir_h, rhs_analytic,
          tol_analytic - err_analytic, err_analytic <= tol_analytic);

  const double dir_f = dirichlet_energy(spec, w, r, grid, policy);
  const double ratio = (dir_f + dir_h) / std::max(pkg.d_big, 1e-300);
  rep.add_info("augmented_ratio", anchors::kEnergyAugmentedRatio, ratio);

  // Pointwise |phi| <= 2 |grad F|^2 on sampled circles inside U_r.
  double worst = -std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (double frac : kAnnulusFractions) {
    const double rho = frac * r;
    for (int j = 0; j < 64; ++j) {
      const double theta = kTwoPi * j / 64;
      const Complex z = w + rho * Complex{std::cos(theta), std::sin(theta)};
      const double phi_abs = std::abs(hopf_value_analytic(spec, z));
      const double grad2 = grad_norm_sq_sum(spec, z);
      worst = std::max(worst, phi_abs - 2.0 * grad2);
      scale = std::max(scale, 2.0 * grad2);
    }
  }
  const double slack = scale > 0.0 ? -worst / scale : 0.0;
  rep.add("pointwise_bound", anchors::kHopfPointwiseBound, worst, 0.0, slack, worst <= 0.0);
  return rep;
}

}  // namespace qfreq
