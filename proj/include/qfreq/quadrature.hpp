#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qfreq/errors.hpp"

namespace qfreq {

using Complex = std::complex<double>;

enum class ExecutionPolicy { Serial, Parallel };

/// Polar product grid: `angular` equispaced nodes per circle, `radial`
/// Simpson intervals from the center to the rim.
struct GridSpec {
  int angular = 256;
  int radial = 256;

  /// angular >= 8; radial even and >= 16.
  void validate() const;
  GridSpec halved() const { return {angular / 2, radial / 2}; }
  GridSpec doubled() const { return {angular * 2, radial * 2}; }
};

/// Integral of g over the disk of radius `radius` about `center`.
///
/// Periodic trapezoid rule in angle (exact for trigonometric polynomials of
/// degree below the node count), composite Simpson in radius. The innermost
/// block of radial cells is integrated by a local power-law fit of the
/// radial integrand, so integrable center singularities g ~ |z - center|^p
/// with p > -2 keep their accuracy; g is never evaluated at the center
/// itself.
///
/// The Parallel policy distributes radial rows across threads; each row is
/// summed serially and the rows are combined serially, so both policies
/// return bit-identical values.
double disk_integral(const std::function<double(Complex)>& g, Complex center, double radius,
                     const GridSpec& grid = {}, ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Arc-length integral of g over the circle |z - center| = radius by the
/// periodic trapezoid rule. Always serial.
double circle_integral(const std::function<double(Complex)>& g, Complex center, double radius,
                       int nodes = 256);

/// The `nodes` equispaced points of the circle |z - center| = radius,
/// starting at angle 0 and ordered counterclockwise.
std::vector<Complex> circle_nodes(Complex center, double radius, int nodes);

}  // namespace qfreq
