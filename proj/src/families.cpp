#include "qfreq/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qfreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binom(int n, int k) {
  static std::array<std::array<double, 40>, 40> table = [] {
    std::array<std::array<double, 40>, 40> t{};
    for (int i = 0; i < 40; ++i) {
      t[i][0] = 1.0;
      for (int j = 1; j <= i; ++j) t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0.0);
    }
    return t;
  }();
  return table[n][k];
}

// amp * p(x0 + s*x) for a univariate coefficient list.
std::vector<double> shift_scale_1d(const std::vector<double>& p, double x0, double s, double amp) {
  const int deg = static_cast<int>(p.size()) - 1;
  std::vector<double> out(p.size(), 0.0);
  for (int m = 0; m <= deg; ++m) {
    double acc = 0.0;
    double x0pow = 1.0;
    for (int j = m; j <= deg; ++j) {
      acc += p[j] * binom(j, m) * x0pow;
      x0pow *= x0;
    }
    out[m] = amp * acc * std::pow(s, m);
  }
  return out;
}

}  // namespace

double BivariatePoly::eval(double u, double v) const {
  // Horner in v per row, then Horner in u over rows.
  double acc = 0.0;
  for (int a = nu_ - 1; a >= 0; --a) {
    const double* row = c_.data() + static_cast<std::size_t>(a) * nv_;
    double rv = 0.0;
    for (int b = nv_ - 1; b >= 0; --b) rv = rv * v + row[b];
    acc = acc * u + rv;
  }
  return acc;
}

BivariatePoly BivariatePoly::d_du() const {
  BivariatePoly out(std::max(0, nu_ - 2), nv_ - 1);
  for (int a = 1; a < nu_; ++a)
    for (int b = 0; b < nv_; ++b) out.set_coeff(a - 1, b, a * coeff(a, b));
  return out;
}

BivariatePoly BivariatePoly::d_dv() const {
  BivariatePoly out(nu_ - 1, std::max(0, nv_ - 2));
  for (int a = 0; a < nu_; ++a)
    for (int b = 1; b < nv_; ++b) out.set_coeff(a, b - 1, b * coeff(a, b));
  return out;
}

double BivariatePoly::laplacian_residual() const {
  double res = 0.0;
  for (int a = 0; a < nu_; ++a)
    for (int b = 0; b < nv_; ++b) {
      const double lap = (a + 2.0) * (a + 1.0) * coeff(a + 2, b) +
                         (b + 2.0) * (b + 1.0) * coeff(a, b + 2);
      res = std::max(res, std::abs(lap));
    }
  return res;
}

BivariatePoly BivariatePoly::shifted_scaled(double u0, double v0, double s, double amp) const {
  // Substitute u first (per column), then v (per row).
  BivariatePoly mid(nu_ - 1, nv_ - 1);
  for (int b = 0; b < nv_; ++b) {
    std::vector<double> col(static_cast<std::size_t>(nu_));
    for (int a = 0; a < nu_; ++a) col[a] = coeff(a, b);
    col = shift_scale_1d(col, u0, s, 1.0);
    for (int a = 0; a < nu_; ++a) mid.set_coeff(a, b, col[a]);
  }
  BivariatePoly out(nu_ - 1, nv_ - 1);
  for (int a = 0; a < nu_; ++a) {
    std::vector<double> row(static_cast<std::size_t>(nv_));
    for (int b = 0; b < nv_; ++b) row[b] = mid.coeff(a, b);
    row = shift_scale_1d(row, v0, s, amp);
    for (int b = 0; b < nv_; ++b) out.set_coeff(a, b, row[b]);
  }
  return out;
}

bool BivariatePoly::same_coeffs(const BivariatePoly& o) const {
  const int au = std::max(nu_, o.nu_);
  const int av = std::max(nv_, o.nv_);
  for (int a = 0; a < au; ++a)
    for (int b = 0; b < av; ++b)
      if (coeff(a, b) != o.coeff(a, b)) return false;
  return true;
}

double BivariatePoly::max_abs_coeff() const {
  double m = 0.0;
  for (double x : c_) m = std::max(m, std::abs(x));
  return m;
}

BivariatePoly harmonic_basis_table(int m, bool imag_part) {
  BivariatePoly out(m, m);
  if (!imag_part) {
    for (int l = 0; 2 * l <= m; ++l)
      out.set_coeff(m - 2 * l, 2 * l, binom(m, 2 * l) * ((l % 2 == 0) ? 1.0 : -1.0));
  } else {
    for (int l = 0; 2 * l + 1 <= m; ++l)
      out.set_coeff(m - 2 * l - 1, 2 * l + 1, binom(m, 2 * l + 1) * ((l % 2 == 0) ? 1.0 : -1.0));
  }
  return out;
}

SheetSpec SheetSpec::holomorphic(std::vector<Complex> coeffs) {
  if (coeffs.empty()) coeffs.push_back({0.0, 0.0});
  SheetSpec s;
  s.kind_ = Kind::Holomorphic;
  s.n_ = 2;
  s.holo_ = std::move(coeffs);
  s.holo_der_.resize(s.holo_.size() > 1 ? s.holo_.size() - 1 : 1, Complex{0.0, 0.0});
  for (std::size_t m = 1; m < s.holo_.size(); ++m)
    s.holo_der_[m - 1] = static_cast<double>(m) * s.holo_[m];
  return s;
}

SheetSpec SheetSpec::table(std::vector<BivariatePoly> components) {
  if (components.empty()) throw parameter_error("table sheet needs at least one component");
  for (std::size_t i = 0; i < components.size(); ++i) {
    const double res = components[i].laplacian_residual();
    const double scale = std::max(1.0, components[i].max_abs_coeff());
    if (res > 1e-12 * scale)
      throw parameter_error("sheet component " + std::to_string(i) +
                            " is not harmonic (Laplacian residual " + std::to_string(res) + ")");
  }
  SheetSpec s = table_unchecked(std::move(components));
  s.harmonic_validated_ = true;
  return s;
}

SheetSpec SheetSpec::table_unchecked(std::vector<BivariatePoly> components) {
  if (components.empty()) throw parameter_error("table sheet needs at least one component");
  SheetSpec s;
  s.kind_ = Kind::Table;
  s.n_ = static_cast<int>(components.size());
  s.harmonic_validated_ = false;
  s.comps_ = std::move(components);
  s.comps_du_.reserve(s.comps_.size());
  s.comps_dv_.reserve(s.comps_.size());
  for (const auto& c : s.comps_) {
    s.comps_du_.push_back(c.d_du());
    s.comps_dv_.push_back(c.d_dv());
  }
  return s;
}

void SheetSpec::eval(Complex z, double* out) const {
  if (kind_ == Kind::Holomorphic) {
    Complex acc{0.0, 0.0};
    for (auto it = holo_.rbegin(); it != holo_.rend(); ++it) acc = acc * z + *it;
    out[0] = acc.real();
    out[1] = acc.imag();
  } else {
    for (int c = 0; c < n_; ++c) out[c] = comps_[c].eval(z.real(), z.imag());
  }
}

void SheetSpec::grads(Complex z, double* du, double* dv) const {
  if (kind_ == Kind::Holomorphic) {
    Complex d{0.0, 0.0};
    for (auto it = holo_der_.rbegin(); it != holo_der_.rend(); ++it) d = d * z + *it;
    du[0] = d.real();
    du[1] = d.imag();
    dv[0] = -d.imag();
    dv[1] = d.real();
  } else {
    for (int c = 0; c < n_; ++c) {
      du[c] = comps_du_[c].eval(z.real(), z.imag());
      dv[c] = comps_dv_[c].eval(z.real(), z.imag());
    }
  }
}

double SheetSpec::grad_norm_sq(Complex z) const {
  if (kind_ == Kind::Holomorphic) {
    Complex d{0.0, 0.0};
    for (auto it = holo_der_.rbegin(); it != holo_der_.rend(); ++it) d = d * z + *it;
    return 2.0 * std::norm(d);
  }
  double s = 0.0;
  for (int c = 0; c < n_; ++c) {
    const double a = comps_du_[c].eval(z.real(), z.imag());
    const double b = comps_dv_[c].eval(z.real(), z.imag());
    s += a * a + b * b;
  }
  return s;
}

Complex SheetSpec::hopf(Complex z) const {
  if (kind_ == Kind::Holomorphic) return {0.0, 0.0};  // conformal
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (int c = 0; c < n_; ++c) {
    const double a = comps_du_[c].eval(z.real(), z.imag());
    const double b = comps_dv_[c].eval(z.real(), z.imag());
    uu += a * a;
    vv += b * b;
    uv += a * b;
  }
  return {uu - vv, -2.0 * uv};
}

SheetSpec SheetSpec::shifted_scaled(Complex z0, double s, double amp) const {
  if (kind_ == Kind::Holomorphic) {
    const int deg = static_cast<int>(holo_.size()) - 1;
    std::vector<Complex> out(holo_.size(), Complex{0.0, 0.0});
    for (int m = 0; m <= deg; ++m) {
      Complex acc{0.0, 0.0};
      Complex z0pow{1.0, 0.0};
      for (int j = m; j <= deg; ++j) {
        acc += holo_[j] * binom(j, m) * z0pow;
        z0pow *= z0;
      }
      out[m] = amp * acc * std::pow(s, m);
    }
    return holomorphic(std::move(out));
  }
  std::vector<BivariatePoly> comps;
  comps.reserve(comps_.size());
  for (const auto& c : comps_) comps.push_back(c.shifted_scaled(z0.real(), z0.imag(), s, amp));
  SheetSpec out = table_unchecked(std::move(comps));
  out.harmonic_validated_ = harmonic_validated_;
  return out;
}

SheetSpec SheetSpec::scaled_amplitude(double amp) const { return shifted_scaled({0.0, 0.0}, 1.0, amp); }

bool SheetSpec::same_function(const SheetSpec& o) const {
  if (kind_ != o.kind_ || n_ != o.n_) return false;
  if (kind_ == Kind::Holomorphic) {
    const std::size_t m = std::max(holo_.size(), o.holo_.size());
    for (std::size_t i = 0; i < m; ++i) {
      const Complex a = i < holo_.size() ? holo_[i] : Complex{0.0, 0.0};
      const Complex b = i < o.holo_.size() ? o.holo_[i] : Complex{0.0, 0.0};
      if (a != b) return false;
    }
    return true;
  }
  for (int c = 0; c < n_; ++c)
    if (!comps_[c].same_coeffs(o.comps_[c])) return false;
  return true;
}

FieldSpec FieldSpec::branch(int k, int q, Complex scale, Complex center, double domain_radius) {
  if (k < 1 || q < 2) throw parameter_error("branch family requires k >= 1 and Q >= 2");
  if (q > 32) throw multiplicity_bound_error("branch multiplicity above supported bound 32");
  if (domain_radius <= 0.0) throw parameter_error("domain radius must be positive");
  FieldSpec f;
  f.branch_ = BranchParams{k, q, scale};
  f.q_ = q;
  f.n_ = 2;
  f.center_ = center;
  f.domain_radius_ = domain_radius;
  std::ostringstream os;
  os << "branch(k=" << k << ",q=" << q << ")";
  f.label_ = os.str();
  return f;
}

FieldSpec FieldSpec::single(SheetSpec sheet, Complex center, double domain_radius) {
  if (domain_radius <= 0.0) throw parameter_error("domain radius must be positive");
  FieldSpec f;
  f.n_ = sheet.n();
  f.sheets_.push_back(std::move(sheet));
  f.q_ = 1;
  f.center_ = center;
  f.domain_radius_ = domain_radius;
  f.label_ = "single";
  return f;
}

FieldSpec FieldSpec::superposition(std::vector<SheetSpec> sheets, Complex center,
                                   double domain_radius) {
  if (sheets.size() < 2) throw parameter_error("superposition needs at least two sheets");
  if (domain_radius <= 0.0) throw parameter_error("domain radius must be positive");
  const int n = sheets[0].n();
  for (const auto& s : sheets)
    if (s.n() != n) throw dimension_mismatch_error("superposition sheets must share target dimension");
  for (std::size_t i = 0; i < sheets.size(); ++i)
    for (std::size_t j = i + 1; j < sheets.size(); ++j)
      if (sheets[i].same_function(sheets[j]))
        throw parameter_error("superposition sheets must be pairwise distinct");
  FieldSpec f;
  f.n_ = n;
  f.q_ = static_cast<int>(sheets.size());
  f.sheets_ = std::move(sheets);
  f.center_ = center;
  f.domain_radius_ = domain_radius;
  f.label_ = "superposition(" + std::to_string(f.q_) + ")";
  return f;
}

FieldSpec FieldSpec::with_offset(std::vector<double> p) const {
  if (!p.empty() && static_cast<int>(p.size()) != n_)
    throw dimension_mismatch_error("offset dimension must match field target dimension");
  FieldSpec f = *this;
  const bool all_zero = std::all_of(p.begin(), p.end(), [](double x) { return x == 0.0; });
  f.offset_ = all_zero ? std::vector<double>{} : std::move(p);
  return f;
}

FieldSpec FieldSpec::with_label(std::string l) const {
  FieldSpec f = *this;
  f.label_ = std::move(l);
  return f;
}

FieldSpec FieldSpec::scaled_amplitude(double amp) const {
  FieldSpec f = *this;
  if (branch_) {
    f.branch_->scale *= amp;
  } else {
    for (auto& s : f.sheets_) s = s.scaled_amplitude(amp);
  }
  for (auto& x : f.offset_) x *= amp;
  return f;
}

FieldSpec FieldSpec::rescaled(Complex x0, double lambda, double amp) const {
  if (lambda <= 0.0) throw parameter_error("rescale factor must be positive");
  const Complex x0_loc = x0 - center_;
  FieldSpec f;
  f.q_ = q_;
  f.n_ = n_;
  f.center_ = {0.0, 0.0};
  f.offset_ = offset_;
  for (auto& x : f.offset_) x *= amp;
  f.label_ = label_ + "@rescaled";
  if (branch_) {
    if (std::abs(x0_loc) > 1e-14 * std::max(1.0, std::abs(x0)))
      throw parameter_error("branch family rescale is supported only at its branch point");
    const BranchParams& bp = *branch_;
    const double alpha = static_cast<double>(bp.k) / bp.q;
    f.branch_ = BranchParams{bp.k, bp.q, bp.scale * std::pow(lambda, alpha) * amp};
    f.domain_radius_ = domain_radius_ / lambda;
    return f;
  }
  f.sheets_.reserve(sheets_.size());
  for (const auto& s : sheets_) f.sheets_.push_back(s.shifted_scaled(x0_loc, lambda, amp));
  f.domain_radius_ = (domain_radius_ - std::abs(x0_loc)) / lambda;
  if (f.domain_radius_ <= 0.0) throw domain_error("rescale base point outside field domain");
  return f;
}

namespace {

// Branch values a zeta^k over the Q-th roots of z_loc, in fixed enumeration
// order (principal argument cut on the negative real axis; the cut is
// unobservable because outputs are unordered).
void branch_values(const FieldSpec::BranchParams& bp, Complex z_loc, Complex* out) {
  const double r = std::abs(z_loc);
  if (r == 0.0) {
    for (int m = 0; m < bp.q; ++m) out[m] = {0.0, 0.0};
    return;
  }
  const double mag = std::pow(r, static_cast<double>(bp.k) / bp.q);
  const double theta = std::atan2(z_loc.imag(), z_loc.real());
  for (int m = 0; m < bp.q; ++m) {
    const double ang = bp.k * (theta + kTwoPi * m) / bp.q;
    out[m] = bp.scale * std::polar(mag, ang);
  }
}

}  // namespace

QPoint eval_field(const FieldSpec& spec, Complex z) {
  const Complex z_loc = z - spec.center();
  QPoint out(spec.q(), spec.n());
  if (spec.is_branch()) {
    std::array<Complex, 32> vals;
    branch_values(spec.branch_params(), z_loc, vals.data());
    for (int m = 0; m < spec.q(); ++m) {
      out.at(m, 0) = vals[m].real();
      out.at(m, 1) = vals[m].imag();
    }
  } else {
    std::vector<double> buf(static_cast<std::size_t>(spec.n()));
    for (int i = 0; i < spec.q(); ++i) {
      spec.sheets()[i].eval(z_loc, buf.data());
      for (int c = 0; c < spec.n(); ++c) out.at(i, c) = buf[c];
    }
  }
  if (!spec.offset().empty()) {
    for (int i = 0; i < spec.q(); ++i)
      for (int c = 0; c < spec.n(); ++c) out.at(i, c) -= spec.offset()[c];
  }
  return out;
}

std::vector<SheetJacobian> sheet_gradients(const FieldSpec& spec, Complex z) {
  const Complex z_loc = z - spec.center();
  std::vector<SheetJacobian> out(static_cast<std::size_t>(spec.q()));
  if (spec.is_branch()) {
    if (std::abs(z_loc) == 0.0)
      throw singularity_error("sheet gradients undefined at the branch point");
    const auto& bp = spec.branch_params();
    std::array<Complex, 32> vals;
    branch_values(bp, z_loc, vals.data());
    const double ratio = static_cast<double>(bp.k) / bp.q;
    for (int m = 0; m < bp.q; ++m) {
      const Complex d = ratio * vals[m] / z_loc;
      out[m].du = {d.real(), d.imag()};
      out[m].dv = {-d.imag(), d.real()};
    }
  } else {
    for (int i = 0; i < spec.q(); ++i) {
      out[i].du.resize(static_cast<std::size_t>(spec.n()));
      out[i].dv.resize(static_cast<std::size_t>(spec.n()));
      spec.sheets()[i].grads(z_loc, out[i].du.data(), out[i].dv.data());
    }
  }
  return out;
}

double EmbeddedJacobian::frobenius_sq() const {
  double s = 0.0;
  for (double x : du) s += x * x;
  for (double x : dv) s += x * x;
  return s;
}

EmbeddedJacobian xi0_jacobian_fd(const FieldSpec& spec, Complex z, double step) {
  if (!(step > 0.0)) throw parameter_error("finite-difference step must be positive");
  const auto xp = xi0(eval_field(spec, z + Complex{step, 0.0}));
  const auto xm = xi0(eval_field(spec, z - Complex{step, 0.0}));
  const auto yp = xi0(eval_field(spec, z + Complex{0.0, step}));
  const auto ym = xi0(eval_field(spec, z - Complex{0.0, step}));
  EmbeddedJacobian J;
  J.nq = static_cast<int>(xp.size());
  J.du.resize(xp.size());
  J.dv.resize(xp.size());
  const double inv = 1.0 / (2.0 * step);
  for (std::size_t t = 0; t < xp.size(); ++t) {
    J.du[t] = (xp[t] - xm[t]) * inv;
    J.dv[t] = (yp[t] - ym[t]) * inv;
  }
  return J;
}

double sheet_separation(const FieldSpec& spec, Complex z) {
  if (spec.q() == 1) return std::numeric_limits<double>::infinity();
  const QPoint p = eval_field(spec, z);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.q(); ++i)
    for (int j = i + 1; j < p.q(); ++j) {
      double s = 0.0;
      for (int c = 0; c < p.n(); ++c) {
        const double d = p.at(i, c) - p.at(j, c);
        s += d * d;
      }
      best = std::min(best, std::sqrt(s));
    }
  return best;
}

double sheet_diameter(const FieldSpec& spec, Complex z) {
  if (spec.q() == 1) return 0.0;
  const QPoint p = eval_field(spec, z);
  double worst = 0.0;
  for (int i = 0; i < p.q(); ++i)
    for (int j = i + 1; j < p.q(); ++j) {
      double s = 0.0;
      for (int c = 0; c < p.n(); ++c) {
        const double d = p.at(i, c) - p.at(j, c);
        s += d * d;
      }
      worst = std::max(worst, std::sqrt(s));
    }
  return worst;
}

double grad_norm_sq_sum(const FieldSpec& spec, Complex z) {
  const Complex z_loc = z - spec.center();
  if (spec.is_branch()) {
    const auto& bp = spec.branch_params();
    const double r = std::abs(z_loc);
    const double alpha = static_cast<double>(bp.k) / bp.q;
    // 2 k^2/Q |a|^2 r^(2 alpha - 2); the r -> 0 limit is correct through pow.
    return 2.0 * bp.k * bp.k / bp.q * std::norm(bp.scale) * std::pow(r, 2.0 * alpha - 2.0);
  }
  double s = 0.0;
  for (const auto& sheet : spec.sheets()) s += sheet.grad_norm_sq(z_loc);
  return s;
}

double value_norm_sq(const FieldSpec& spec, Complex z) {
  const Complex z_loc = z - spec.center();
  if (spec.offset().empty()) {
    if (spec.is_branch()) {
      const auto& bp = spec.branch_params();
      const double r = std::abs(z_loc);
      const double alpha = static_cast<double>(bp.k) / bp.q;
      return bp.q * std::norm(bp.scale) * std::pow(r, 2.0 * alpha);
    }
    double s = 0.0;
    std::array<double, 16> buf;
    for (const auto& sheet : spec.sheets()) {
      if (sheet.n() <= 16) {
        sheet.eval(z_loc, buf.data());
        for (int c = 0; c < sheet.n(); ++c) s += buf[c] * buf[c];
      } else {
        std::vector<double> big(static_cast<std::size_t>(sheet.n()));
        sheet.eval(z_loc, big.data());
        for (double x : big) s += x * x;
      }
    }
    return s;
  }
  const QPoint p = eval_field(spec, z);
  double s = 0.0;
  for (double x : p.data()) s += x * x;
  return s;
}

Complex hopf_value_analytic(const FieldSpec& spec, Complex z) {
  if (spec.is_branch()) return {0.0, 0.0};  // every branch sheet is conformal
  const Complex z_loc = z - spec.center();
  Complex acc{0.0, 0.0};
  for (const auto& sheet : spec.sheets()) acc += sheet.hopf(z_loc);
  return acc;
}

}  // namespace qfreq
