#pragma once

#include <utility>
#include <vector>

#include "qfreq/families.hpp"
#include "qfreq/rng.hpp"

namespace qfreq {

struct CorpusEntry {
  CorpusEntry(FieldSpec f, std::vector<Complex> c, std::vector<Complex> b, bool hom)
      : field(std::move(f)), centers(std::move(c)), branch_points(std::move(b)),
        homogeneous(hom) {}
  FieldSpec field;
  std::vector<Complex> centers;        // profile centers; centers[0] is native
  std::vector<Complex> branch_points;  // full-collapse points, possibly none
  bool homogeneous = false;            // power-law profile about centers[0]
};

/// Fixed corpus of analytic fields: every branch pair (k, Q) with
/// 1 <= k < Q <= 5, assorted single harmonic sheets, superpositions
/// including a non-collapsing control, and two seeded random fields. Each
/// entry carries its native center plus two off-center probes placed so
/// off-center disks of radius <= 1/4 stay clear of any gradient
/// singularity.
std::vector<CorpusEntry> standard_corpus();

/// The (field, collapse points) rows scanned for the minimal vanishing
/// order: all branch pairs with 1 <= k < Q <= 5 at their branch points.
std::vector<std::pair<FieldSpec, std::vector<Complex>>> branch_scan_corpus();

/// Single-sheet field with two random harmonic-polynomial components of
/// degree up to `max_degree`, coefficients uniform in [-1, 1].
FieldSpec random_harmonic_field(Rng& rng, int max_degree = 4);

/// `count` logarithmically spaced radii from r_min to r_max, ascending,
/// endpoints exact.
std::vector<double> log_radii(double r_min, double r_max, int count);

/// Off-center probe displacements shared by the corpus and the tests.
inline constexpr Complex kProbeOffsetA{0.5, 0.21};
inline constexpr Complex kProbeOffsetB{-0.33, 0.47};

}  // namespace qfreq
