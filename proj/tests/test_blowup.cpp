#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qfreq/blowup.hpp"
#include "qfreq/corpus.hpp"
#include "qfreq/rng.hpp"

using namespace qfreq;

namespace {

constexpr double kPi = std::numbers::pi;

FieldSpec control_pair() {
  // {constant 1, z}: collapses nowhere, frequency about 0 tends to 0.
  return FieldSpec::superposition({SheetSpec::holomorphic({{1.0, 0.0}}),
                                   SheetSpec::holomorphic({{0.0, 0.0}, {1.0, 0.0}})});
}

}  // namespace

TEST_CASE("rescaled field has unit-circle height one") {
  Rng rng(71);
  const FieldSpec fields[] = {FieldSpec::branch(2, 3), control_pair(),
                              random_harmonic_field(rng, 4)};
  for (const FieldSpec& f : fields) {
    for (double r : {0.5, 0.125}) {
      const FieldSpec g = rescale(f, {0.0, 0.0}, r);
      CHECK(height(g, {0.0, 0.0}, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(rescale(FieldSpec::branch(2, 3), {0.0, 0.0}, 0.0), parameter_error);
}

TEST_CASE("branch rescalings are a fixed point of the normalization") {
  // About its branch point the family is homogeneous, so every rescaling is
  // the same field: f / sqrt(2 pi q) evaluated without any radius dependence.
  const FieldSpec f = FieldSpec::branch(2, 3);
  const FieldSpec g1 = rescale(f, {0.0, 0.0}, 0.5);
  const FieldSpec g2 = rescale(f, {0.0, 0.0}, 0.0625);
  Rng rng(73);
  for (int t = 0; t < 25; ++t) {
    const Complex z{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    CHECK(g_metric(eval_field(g1, z), eval_field(g2, z)) <= 1e-10);
  }
  // Scale factor: the rescaled family keeps |scale| = 1 / sqrt(2 pi q).
  REQUIRE(g1.is_branch());
  CHECK(std::abs(g1.branch_params().scale) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi * 3.0)).epsilon(1e-10));
}

TEST_CASE("single conformal sheet rescales to x / sqrt(2 pi)") {
  const FieldSpec lin =
      FieldSpec::single(SheetSpec::holomorphic({{0.0, 0.0}, {1.0, 0.0}}));
  for (double r : {0.25, 0.03125}) {
    const FieldSpec g = rescale(lin, {0.0, 0.0}, r);
    const Complex z{0.6, -0.3};
    const QPoint v = eval_field(g, z);
    const Complex want = z / std::sqrt(2.0 * kPi);
    CHECK(v.at(0, 0) == doctest::Approx(want.real()).epsilon(1e-12));
    CHECK(v.at(0, 1) == doctest::Approx(want.imag()).epsilon(1e-12));
  }
}

TEST_CASE("blowup sequence construction guards") {
  const FieldSpec f = FieldSpec::branch(2, 3);
  CHECK_THROWS_AS(make_blowup_sequence(f, {0.0, 0.0}, {0.5, 0.5}), parameter_error);
  CHECK_THROWS_AS(make_blowup_sequence(f, {0.0, 0.0}, {0.25, 0.5}), parameter_error);
  CHECK_THROWS_AS(make_blowup_sequence(f, {0.0, 0.0}, {}), parameter_error);
  CHECK_THROWS_AS(make_blowup_sequence(f, {0.0, 0.0}, {0.5, 0.25, 0.0}), parameter_error);

  const BlowupSequence seq = make_blowup_sequence(f, {0.0, 0.0}, {0.5, 0.25});
  CHECK(seq.steps.size() == 2);
  CHECK(seq.normalizers.size() == 2);
  CHECK(seq.radii[0] == 0.5);
}

TEST_CASE("blowup of the branch family is the homogeneous fixed point") {
  const FieldSpec f = FieldSpec::branch(2, 3);
  const BlowupSequence seq =
      make_blowup_sequence(f, {0.0, 0.0}, {0.5, 0.25, 0.125, 0.0625});
  const BlowupReport rep = blowup_report(seq, GridSpec{128, 128});
  CHECK(rep.report.all_pass());
  REQUIRE(rep.steps.size() == 4);
  for (const BlowupStepRow& row : rep.steps) {
    CHECK(row.h1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(row.d1 == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(row.gap > 0.0);
    CHECK(row.osc <= kOscillationConstant * std::sqrt(row.d1) * (1.0 + 1e-9));
  }
  // Successive steps are the same field: compare their unit-disk energies.
  CHECK(std::abs(rep.steps[0].d1 - rep.steps[3].d1) <= 1e-9);
}

TEST_CASE("blowup separates the collapsing family from the control") {
  const BlowupSequence seq = make_blowup_sequence(
      control_pair(), {0.0, 0.0}, {0.5, 0.125, 0.03125});
  const BlowupReport rep = blowup_report(seq, GridSpec{64, 64});
  REQUIRE(rep.steps.size() == 3);
  for (const BlowupStepRow& row : rep.steps)
    CHECK(row.h1 == doctest::Approx(1.0).epsilon(1e-10));
  // Frequency about a non-collapse point tends to zero: N(r) = r^2/(1+r^2).
  CHECK(rep.steps[2].d1 < rep.steps[0].d1 / 10.0);
  CHECK(rep.steps[2].d1 ==
        doctest::Approx(std::pow(0.03125, 2) / (1.0 + std::pow(0.03125, 2)))
            .epsilon(1e-6));
}

TEST_CASE("rescaled-step energy equals the base frequency") {
  Rng rng(79);
  const FieldSpec f = random_harmonic_field(rng, 3);
  const std::vector<double> radii{0.5, 0.25};
  const BlowupSequence seq = make_blowup_sequence(f, {0.0, 0.0}, radii);
  const GridSpec grid{128, 128};
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double d1 = dirichlet_energy(seq.steps[j], {0.0, 0.0}, 1.0, grid);
    const double want = frequency(f, {0.0, 0.0}, radii[j], grid);
    CHECK(d1 == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("offsets do not change the energy trace") {
  const FieldSpec f = control_pair();
  const FieldSpec g = f.with_offset({0.4, -1.2});
  const GridSpec grid{64, 64};
  const double a = dirichlet_energy(f, {0.0, 0.0}, 1.0, grid);
  const double b = dirichlet_energy(g, {0.0, 0.0}, 1.0, grid);
  CHECK(a == b);  // gradient integrand ignores the constant shift
}

TEST_CASE("scan over the branch corpus finds the smallest frequency") {
  const ScanResult res = frequency_gap_scan(branch_scan_corpus(), 1.0 / 1024.0,
                                            GridSpec{128, 128});
  CHECK(res.delta_hat == doctest::Approx(0.2).epsilon(1e-3));
  CHECK(res.report.all_pass());
  REQUIRE(res.rows.size() == 10);
  for (const ScanRow& row : res.rows) {
    CHECK(row.flag.empty());
    CHECK(row.branch_ok);
    CHECK(row.n_hat > 0.19);
  }
  // Every k/q with 1 <= k < q <= 5 appears; spot-check the extremes.
  double lo = 1e9, hi = 0.0;
  for (const ScanRow& row : res.rows) {
    lo = std::min(lo, row.n_hat);
    hi = std::max(hi, row.n_hat);
  }
  CHECK(lo == doctest::Approx(0.2).epsilon(1e-3));    // k=1, q=5
  CHECK(hi == doctest::Approx(0.8).epsilon(1e-3));    // k=4, q=5
}

TEST_CASE("scan flags non-collapsing points and skips them") {
  std::vector<std::pair<FieldSpec, std::vector<Complex>>> corpus;
  corpus.emplace_back(FieldSpec::branch(2, 3),
                      std::vector<Complex>{{0.0, 0.0}, {0.5, 0.0}});
  const ScanResult res = frequency_gap_scan(corpus, 1.0 / 256.0, GridSpec{64, 64});
  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].flag.empty());
  CHECK_FALSE(res.rows[1].flag.empty());
  CHECK_FALSE(res.rows[1].branch_ok);
  CHECK(res.delta_hat == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
}

TEST_CASE("scan rejects an empty or fully flagged corpus") {
  CHECK_THROWS_AS(frequency_gap_scan({}), parameter_error);

  std::vector<std::pair<FieldSpec, std::vector<Complex>>> corpus;
  corpus.emplace_back(control_pair(), std::vector<Complex>{{0.0, 0.0}});
  CHECK_THROWS_AS(frequency_gap_scan(corpus, 1.0 / 256.0, GridSpec{64, 64}),
                  parameter_error);
}

TEST_CASE("single-sheet fields are flagged as not multi-valued") {
  std::vector<std::pair<FieldSpec, std::vector<Complex>>> corpus;
  corpus.emplace_back(
      FieldSpec::single(SheetSpec::holomorphic({{0.0, 0.0}, {1.0, 0.0}})),
      std::vector<Complex>{{0.0, 0.0}});
  corpus.emplace_back(FieldSpec::branch(1, 2), std::vector<Complex>{{0.0, 0.0}});
  const ScanResult res = frequency_gap_scan(corpus, 1.0 / 256.0, GridSpec{64, 64});
  REQUIRE(res.rows.size() == 2);
  CHECK_FALSE(res.rows[0].flag.empty());
  CHECK(res.rows[1].flag.empty());
  CHECK(res.delta_hat == doctest::Approx(0.5).epsilon(1e-3));
}
