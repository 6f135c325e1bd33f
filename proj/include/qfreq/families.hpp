#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qfreq/errors.hpp"
#include "qfreq/qspace.hpp"

namespace qfreq {

using Complex = std::complex<double>;

/// Dense bivariate polynomial sum c[a][b] u^a v^b.
class BivariatePoly {
public:
  BivariatePoly() : nu_(1), nv_(1), c_(1, 0.0) {}
  BivariatePoly(int deg_u, int deg_v)
      : nu_(deg_u + 1), nv_(deg_v + 1), c_(static_cast<std::size_t>(nu_) * nv_, 0.0) {}

  double coeff(int a, int b) const {
    if (a >= nu_ || b >= nv_) return 0.0;
    return c_[static_cast<std::size_t>(a) * nv_ + b];
  }
  void set_coeff(int a, int b, double v) { c_[static_cast<std::size_t>(a) * nv_ + b] = v; }

  int deg_u() const { return nu_ - 1; }
  int deg_v() const { return nv_ - 1; }

  double eval(double u, double v) const;
  BivariatePoly d_du() const;
  BivariatePoly d_dv() const;

  /// Max absolute coefficient of the symbolic Laplacian; zero iff harmonic.
  double laplacian_residual() const;

  /// Coefficients of amp * P(u0 + s*u, v0 + s*v).
  BivariatePoly shifted_scaled(double u0, double v0, double s, double amp) const;

  bool same_coeffs(const BivariatePoly& o) const;
  double max_abs_coeff() const;

private:
  int nu_, nv_;
  std::vector<double> c_;
};

/// The harmonic basis polynomials Re(z^m) (imag_part=false) and Im(z^m),
/// expanded into monomial tables.
BivariatePoly harmonic_basis_table(int m, bool imag_part);

/// A single-valued sheet R^2 -> R^n: either a holomorphic polynomial in z
/// (n = 2) or one bivariate polynomial table per component. Table components
/// are validated harmonic on construction; table_unchecked skips the check
/// so tests can inject non-harmonic negative controls.
class SheetSpec {
public:
  enum class Kind { Holomorphic, Table };

  static SheetSpec holomorphic(std::vector<Complex> coeffs);
  static SheetSpec table(std::vector<BivariatePoly> components);
  static SheetSpec table_unchecked(std::vector<BivariatePoly> components);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  bool harmonic_validated() const { return harmonic_validated_; }

  const std::vector<Complex>& holo_coeffs() const { return holo_; }
  const std::vector<BivariatePoly>& components() const { return comps_; }

  /// out must hold n doubles; value at local coordinates z = u + iv.
  void eval(Complex z, double* out) const;
  /// du, dv must hold n doubles each.
  void grads(Complex z, double* du, double* dv) const;

  double grad_norm_sq(Complex z) const;
  /// Per-sheet Hopf value |F_u|^2 - |F_v|^2 - 2i<F_u, F_v>. Exactly zero on
  /// holomorphic sheets (conformal maps).
  Complex hopf(Complex z) const;

  /// Sheet evaluating to amp * this(z0 + s*z).
  SheetSpec shifted_scaled(Complex z0, double s, double amp) const;
  SheetSpec scaled_amplitude(double amp) const;

  bool same_function(const SheetSpec& o) const;

private:
  SheetSpec() = default;
  Kind kind_ = Kind::Table;
  int n_ = 0;
  bool harmonic_validated_ = true;
  std::vector<Complex> holo_, holo_der_;
  std::vector<BivariatePoly> comps_, comps_du_, comps_dv_;
};

/// Analytic Q-valued test field on a disk. Variants: the branch family
/// {a zeta^k : zeta^Q = z - center}, a superposition of distinct
/// single-valued sheets, or a single harmonic sheet. All variants evaluate
/// in coordinates local to `center`; an optional constant offset p is
/// subtracted from every sheet value (gradients are unaffected).
class FieldSpec {
public:
  struct BranchParams {
    int k = 1;
    int q = 2;
    Complex scale{1.0, 0.0};
  };

  static FieldSpec branch(int k, int q, Complex scale = {1.0, 0.0}, Complex center = {0.0, 0.0},
                          double domain_radius = 4.0);
  static FieldSpec single(SheetSpec sheet, Complex center = {0.0, 0.0},
                          double domain_radius = 4.0);
  static FieldSpec superposition(std::vector<SheetSpec> sheets, Complex center = {0.0, 0.0},
                                 double domain_radius = 4.0);

  bool is_branch() const { return branch_.has_value(); }
  const BranchParams& branch_params() const { return *branch_; }
  const std::vector<SheetSpec>& sheets() const { return sheets_; }

  int q() const { return q_; }
  int n() const { return n_; }
  Complex center() const { return center_; }
  double domain_radius() const { return domain_radius_; }

  const std::vector<double>& offset() const { return offset_; }
  FieldSpec with_offset(std::vector<double> p) const;

  const std::string& label() const { return label_; }
  FieldSpec with_label(std::string l) const;

  /// Field evaluating to amp * f(x).
  FieldSpec scaled_amplitude(double amp) const;
  /// Field evaluating to amp * f(x0 + lambda * x); the new field is centered
  /// at 0. Branch families support this only at x0 == center (elsewhere the
  /// rescaled field has no coefficient representation in this corpus).
  FieldSpec rescaled(Complex x0, double lambda, double amp) const;

private:
  FieldSpec() = default;
  std::optional<BranchParams> branch_;
  std::vector<SheetSpec> sheets_;  // empty for branch variant
  int q_ = 1;
  int n_ = 2;
  Complex center_{0.0, 0.0};
  double domain_radius_ = 4.0;
  std::vector<double> offset_;  // size n, default zeros
  std::string label_;
};

/// Unordered Q-tuple of sheet values at z. The branch point maps to Q[[0]]
/// by continuity (before offset subtraction).
QPoint eval_field(const FieldSpec& spec, Complex z);

struct SheetJacobian {
  std::vector<double> du, dv;  // each of size n
};

/// Exact per-sheet Jacobians. Branch variant: singularity error at the
/// branch point (d zeta/dz = zeta/(Qz) is undefined there).
std::vector<SheetJacobian> sheet_gradients(const FieldSpec& spec, Complex z);

struct EmbeddedJacobian {
  int nq = 0;
  std::vector<double> du, dv;  // each of size n*Q, xi0 slot order
  double frobenius_sq() const;
};

/// Centered finite differences of xi0 compose f, O(step^2) away from sorting
/// kinks and branch points.
EmbeddedJacobian xi0_jacobian_fd(const FieldSpec& spec, Complex z, double step);

/// Min over i != j of |f_i(z) - f_j(z)|; +infinity for Q = 1.
double sheet_separation(const FieldSpec& spec, Complex z);

/// Max over i != j of |f_i(z) - f_j(z)|; zero iff full collapse f(z) = Q[[p]].
double sheet_diameter(const FieldSpec& spec, Complex z);

/// Sum over sheets of |grad f_i|^2 at z; the integrand of the Dirichlet
/// energy of xi0 compose f. Offset-independent.
double grad_norm_sq_sum(const FieldSpec& spec, Complex z);

/// Sum over sheets of |f_i(z)|^2 (offset applied); the height integrand.
double value_norm_sq(const FieldSpec& spec, Complex z);

/// Hopf value of xi0 compose f at z from analytic sheet gradients
/// (additive over sheets). Exactly zero for conformal sheets.
Complex hopf_value_analytic(const FieldSpec& spec, Complex z);

}  // namespace qfreq
