#pragma once

#include <vector>

#include "qfreq/families.hpp"
#include "qfreq/functionals.hpp"
#include "qfreq/quadrature.hpp"
#include "qfreq/report.hpp"

namespace qfreq {

/// Series fits are rejected when the test-circle residual exceeds this
/// fraction of max |phi| on the sampling circle.
inline constexpr double kSeriesFitTolRel = 1e-8;
/// Fits are refused outright when the normalized holomorphy defect of phi
/// exceeds this gate.
inline constexpr double kHolomorphyGate = 1e-4;

struct DefectMeasures {
  double holomorphy = 0.0;
  double conformality = 0.0;
};

/// Power-series model of the Hopf value phi on a disk window, with its
/// termwise antiderivative psi (psi(center) = 0) and the field energy over
/// the window. phi_coeffs[m] multiplies (z - center)^m.
struct HopfPackage {
  Complex window_center{0.0, 0.0};
  double window_radius = 0.0;
  double d_big = 0.0;
  std::vector<Complex> phi_coeffs;
  std::vector<Complex> psi_coeffs;
  double fit_residual = 0.0;
  DefectMeasures defects;

  Complex phi_at(Complex z) const;
  Complex psi_at(Complex z) const;
};

/// Hopf value of the embedded field at z from analytic sheet gradients:
/// |F_u|^2 - |F_v|^2 - 2i <F_u, F_v>. Exactly zero for conformal sheets.
/// Throws singularity_error at the branch point of a branch family.
Complex hopf_differential(const FieldSpec& spec, Complex z);

/// Same quantity from the finite-difference embedded Jacobian; accurate
/// only where no two sheets tie in any coordinate.
Complex hopf_differential_fd(const FieldSpec& spec, Complex z, double step);

/// Max over an annulus sampling of |d phi / d conj(z)| estimated by
/// centered differences, normalized by max |phi| there; 0 when phi
/// vanishes identically within tolerance. fd_step <= 0 picks
/// 1e-4 * window_radius.
double holomorphy_defect(const FieldSpec& spec, Complex window_center, double window_radius,
                         double fd_step = 0.0, int angular_samples = 64);

/// Fits phi on the circle of radius 0.9 * window_radius (trapezoid moments,
/// `nodes` samples), validates on an offset circle at 0.75 * window_radius,
/// and builds psi and the window energy. Throws series_fit_error when the
/// holomorphy gate or the residual tolerance fails.
HopfPackage fit_phi_series(const FieldSpec& spec, Complex window_center, double window_radius,
                           int order = 64, int nodes = 512, const GridSpec& grid = {},
                           ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// The harmonic map h(z) = (sqrt(D)/2) conj(z - w) - psi(z)/(2 sqrt(D))
/// built from a package: d/dz h = -phi/(2 sqrt(D)), d/dconj(z) h =
/// sqrt(D)/2, so the pair (embedded field, h) has cancelling Hopf values.
class CompletionMap {
public:
  Complex value(Complex z) const;
  Complex d_dz(Complex z) const;
  double d_dzbar() const { return sqrt_d_ / 2.0; }

  /// Real Jacobian columns, two doubles each.
  void grads(Complex z, double* du, double* dv) const;
  double grad_norm_sq(Complex z) const;

  double d_big() const { return d_big_; }
  Complex window_center() const { return w_; }
  double window_radius() const { return radius_; }

private:
  friend CompletionMap conformal_completion(const HopfPackage& pkg);
  CompletionMap() = default;
  Complex w_{0.0, 0.0};
  double radius_ = 0.0;
  double d_big_ = 0.0;
  double sqrt_d_ = 0.0;
  std::vector<Complex> phi_, psi_;
};

/// Throws degenerate_energy_error when the package's window energy is not
/// positive (a constant field has no completion).
CompletionMap conformal_completion(const HopfPackage& pkg);

/// Conformality defect of the field alone at z, from finite-difference
/// Jacobians: (| |G_u|^2 - |G_v|^2 | + 2 |<G_u, G_v>|) / |grad G|^2.
double conformality_defect(const FieldSpec& spec, Complex z, double fd_step = 1e-4);

/// Same defect for the augmented map (embedded field, h).
double conformality_defect(const FieldSpec& spec, const CompletionMap& h, Complex z,
                           double fd_step = 1e-4);

enum class PhiSource { SeriesFit, AnalyticField };

/// Checks, on the disk of radius r about the package window center:
///   (i) energy identity: disk integral of |grad h|^2 equals
///       D pi r^2 / 2 + (1/2D) * disk integral of |phi|^2;
///  (ii) the augmented-to-field energy ratio
///       Dir((F,h); U_r) / Dir(F; U_R), reported informationally;
/// (iii) the pointwise bound |phi| <= 2 |grad F|^2 on sampled circles.
/// The identity's |phi|^2 side is evaluated from the fitted series and,
/// in a second row, from the analytic field values.
VerificationReport energy_identity_check(const FieldSpec& spec, const HopfPackage& pkg, double r,
                                         const GridSpec& grid = {},
                                         ExecutionPolicy policy = ExecutionPolicy::Parallel,
                                         double tol_series = 1e-4, double tol_analytic = 1e-8);

}  // namespace qfreq
