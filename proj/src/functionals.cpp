#include "qfreq/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qfreq {

namespace {

std::string pair_id(double r, double t) {
  std::ostringstream os;
  os.precision(6);
  os << "r=" << r << ",t=" << t;
  return os.str();
}

}  // namespace

double RadialProfile::max_violation() const {
  double m = 0.0;
  for (const auto& v : violations) m = std::max(m, v.drop);
  return m;
}

void require_disk_in_domain(const FieldSpec& spec, Complex center, double r) {
  const double reach = std::abs(center - spec.center()) + r;
  const double limit = spec.domain_radius() * (1.0 + 1e-12);
  if (reach > limit) {
    std::ostringstream os;
    os << "disk of radius " << r << " about (" << center.real() << "," << center.imag()
       << ") exceeds the field domain (radius " << spec.domain_radius() << ")";
    throw domain_error(os.str());
  }
}

double dirichlet_energy(const FieldSpec& spec, Complex center, double r, const GridSpec& grid,
                        ExecutionPolicy policy, GradientSource source, double fd_step) {
  require_disk_in_domain(spec, center, r);
  if (source == GradientSource::Analytic) {
    return disk_integral([&](Complex z) { return grad_norm_sq_sum(spec, z); }, center, r, grid,
                         policy);
  }
  const double step = fd_step > 0.0 ? fd_step : 1e-6 * std::max(1.0, r);
  return disk_integral(
      [&](Complex z) { return xi0_jacobian_fd(spec, z, step).frobenius_sq(); }, center, r, grid,
      policy);
}

double height(const FieldSpec& spec, Complex center, double r, int angular_nodes) {
  require_disk_in_domain(spec, center, r);
  return circle_integral([&](Complex z) { return value_norm_sq(spec, z); }, center, r,
                         angular_nodes);
}

double frequency(const FieldSpec& spec, Complex center, double r, const GridSpec& grid,
                 ExecutionPolicy policy) {
  const double h = height(spec, center, r, grid.angular);
  if (h <= kHeightFloor) {
    std::ostringstream os;
    os << "height " << h << " at radius " << r << " is below the floor " << kHeightFloor;
    throw degenerate_height_error(os.str());
  }
  return r * dirichlet_energy(spec, center, r, grid, policy) / h;
}

RadialProfile radial_profile(const FieldSpec& spec, Complex center, std::vector<double> radii,
                             const GridSpec& grid, ExecutionPolicy policy) {
  if (radii.empty()) throw parameter_error("radius grid is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw parameter_error("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw parameter_error("radii must be strictly increasing");
  }
  require_disk_in_domain(spec, center, radii.back());

  RadialProfile p;
  p.label = spec.label();
  p.center = center;
  p.grid = grid;
  p.radii = std::move(radii);
  const std::size_t k = p.radii.size();
  p.d_vals.resize(k);
  p.h_vals.resize(k);
  p.n_vals.assign(k, std::numeric_limits<double>::quiet_NaN());
  p.n_defined.assign(k, 0);

  for (std::size_t i = 0; i < k; ++i) {
    const double r = p.radii[i];
    p.d_vals[i] = dirichlet_energy(spec, center, r, grid, policy);
    p.h_vals[i] = height(spec, center, r, grid.angular);
    if (p.h_vals[i] > kHeightFloor) {
      p.n_vals[i] = r * p.d_vals[i] / p.h_vals[i];
      p.n_defined[i] = 1;
    }
  }

  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (!p.n_defined[i] || !p.n_defined[i + 1]) continue;
    const double drop = p.n_vals[i] - p.n_vals[i + 1];
    if (drop > 0.0) p.violations.push_back({p.radii[i], p.radii[i + 1], drop});
  }
  return p;
}

std::vector<std::pair<double, double>> all_radius_pairs(const RadialProfile& profile) {
  std::vector<std::pair<double, double>> out;
  const std::size_t k = profile.radii.size();
  out.reserve(k * (k + 1) / 2);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) out.emplace_back(profile.radii[i], profile.radii[j]);
  return out;
}

namespace {

std::size_t locate_radius(const RadialProfile& p, double r) {
  for (std::size_t i = 0; i < p.radii.size(); ++i) {
    if (std::abs(p.radii[i] - r) <= 1e-12 * std::max(1.0, std::abs(r))) return i;
  }
  throw parameter_error("radius not on the profile grid");
}

}  // namespace

VerificationReport check_height_bound(const RadialProfile& profile,
                                      const std::vector<std::pair<double, double>>& pairs,
                                      double tol_rel) {
  VerificationReport rep;
  rep.suite = "height_bound:" + profile.label;
  rep.grid_angular = profile.grid.angular;
  rep.grid_radial = profile.grid.radial;

  for (const auto& [r, t] : pairs) {
    if (r > t) throw parameter_error("height bound pair needs r <= t");
    const std::size_t ir = locate_radius(profile, r);
    const std::size_t it = locate_radius(profile, t);
    const std::string id = pair_id(r, t);
    if (!profile.n_defined[ir] || !profile.n_defined[it]) {
      rep.add_info(id + ":degenerate", anchors::kHeightBoundLower,
                   std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double hr = profile.h_vals[ir] / r;
    const double ht = profile.h_vals[it] / t;
    const double ratio = r / t;

    // lower: ht * ratio^(2 N(t)) <= hr
    const double lo = ht * std::pow(ratio, 2.0 * profile.n_vals[it]);
    const double lo_slack = (hr - lo) / std::max(std::abs(hr), std::abs(lo));
    rep.add(id, anchors::kHeightBoundLower, lo, hr, lo_slack, lo_slack >= -tol_rel);

    // upper: hr <= ht * ratio^(2 N(r))
    const double up = ht * std::pow(ratio, 2.0 * profile.n_vals[ir]);
    const double up_slack = (up - hr) / std::max(std::abs(hr), std::abs(up));
    rep.add(id, anchors::kHeightBoundUpper, hr, up, up_slack, up_slack >= -tol_rel);
  }
  return rep;
}

HolderFit estimate_holder_exponent(const RadialProfile& profile) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < profile.radii.size(); ++i)
    if (profile.n_defined[i]) usable.push_back(i);
  if (usable.empty())
    throw degenerate_height_error("height vanishes on every profile circle");

  const double r_min = profile.radii[usable.front()];
  std::vector<double> xs, ys;
  for (std::size_t i : usable) {
    if (profile.radii[i] > 10.0 * r_min) break;
    xs.push_back(2.0 * std::log(profile.radii[i]));
    ys.push_back(std::log(profile.h_vals[i] / profile.radii[i]));
  }
  if (xs.size() < 4)
    throw parameter_error("need at least 4 radii in the smallest decade of the profile");

  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= xs.size();
  ybar /= ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  HolderFit fit;
  fit.alpha_hat = sxy / sxx;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = ybar + fit.alpha_hat * (xs[i] - xbar);
    fit.fit_residual = std::max(fit.fit_residual, std::abs(ys[i] - pred));
  }
  return fit;
}

}  // namespace qfreq
