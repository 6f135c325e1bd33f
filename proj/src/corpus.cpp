#include "qfreq/corpus.hpp"

#include <cmath>
#include <string>

namespace qfreq {

namespace {

std::vector<Complex> probe_centers(Complex native) {
  return {native, native + kProbeOffsetA, native + kProbeOffsetB};
}

BivariatePoly random_harmonic_component(Rng& rng, int max_degree) {
  BivariatePoly acc(max_degree, max_degree);
  const double constant = rng.uniform(-1.0, 1.0);
  acc.set_coeff(0, 0, constant);
  for (int m = 1; m <= max_degree; ++m) {
    const double a = rng.uniform(-1.0, 1.0);
    const double b = rng.uniform(-1.0, 1.0);
    const BivariatePoly re = harmonic_basis_table(m, false);
    const BivariatePoly im = harmonic_basis_table(m, true);
    for (int i = 0; i <= m; ++i)
      for (int j = 0; j <= m; ++j) {
        const double add = a * re.coeff(i, j) + b * im.coeff(i, j);
        if (add != 0.0) acc.set_coeff(i, j, acc.coeff(i, j) + add);
      }
  }
  return acc;
}

}  // namespace

FieldSpec random_harmonic_field(Rng& rng, int max_degree) {
  std::vector<BivariatePoly> comps;
  comps.push_back(random_harmonic_component(rng, max_degree));
  comps.push_back(random_harmonic_component(rng, max_degree));
  return FieldSpec::single(SheetSpec::table(std::move(comps)));
}

std::vector<double> log_radii(double r_min, double r_max, int count) {
  if (!(r_min > 0.0) || !(r_max > r_min)) throw parameter_error("bad radius range");
  if (count < 2) throw parameter_error("need at least 2 radii");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double ratio = r_max / r_min;
  for (int i = 0; i < count; ++i)
    out[i] = r_min * std::pow(ratio, static_cast<double>(i) / (count - 1));
  out.front() = r_min;
  out.back() = r_max;
  return out;
}

std::vector<CorpusEntry> standard_corpus() {
  std::vector<CorpusEntry> corpus;
  const Complex origin{0.0, 0.0};

  for (int q = 2; q <= 5; ++q) {
    for (int k = 1; k < q; ++k) {
      FieldSpec f = FieldSpec::branch(k, q);
      corpus.emplace_back(std::move(f), probe_centers(origin), std::vector<Complex>{origin},
                          true);
    }
  }

  {
    FieldSpec f = FieldSpec::branch(2, 3, Complex{1.5, 0.5}).with_label("branch(k=2,q=3)@scaled");
    corpus.emplace_back(std::move(f), probe_centers(origin), std::vector<Complex>{origin}, true);
  }

  auto holo = [](std::vector<Complex> c) { return SheetSpec::holomorphic(std::move(c)); };

  corpus.emplace_back(FieldSpec::single(holo({{0, 0}, {1, 0}})).with_label("sheet_identity"),
                      probe_centers(origin), std::vector<Complex>{}, true);

  {
    BivariatePoly p1(1, 0), p2(0, 1);
    p1.set_coeff(1, 0, 2.0);
    p2.set_coeff(0, 1, 1.0);
    corpus.emplace_back(FieldSpec::single(SheetSpec::table({p1, p2})).with_label("sheet_2u_v"),
                        probe_centers(origin), std::vector<Complex>{}, true);
  }

  corpus.emplace_back(FieldSpec::single(holo({{0, 0}, {0, 0}, {1, 0}})).with_label("sheet_z2"),
                      probe_centers(origin), std::vector<Complex>{}, true);

  corpus.emplace_back(
      FieldSpec::single(holo({{0, 0}, {1, 0}, {0, 0}, {1, 0}})).with_label("sheet_z3_plus_z"),
      probe_centers(origin), std::vector<Complex>{}, false);

  {
    BivariatePoly p1(1, 1), p2(0, 0);
    p1.set_coeff(1, 0, 1.0);
    p1.set_coeff(0, 1, 1.0);
    corpus.emplace_back(FieldSpec::single(SheetSpec::table({p1, p2})).with_label("sheet_shear"),
                        probe_centers(origin), std::vector<Complex>{}, true);
  }

  corpus.emplace_back(
      FieldSpec::superposition({holo({{0, 0}, {1, 0}}), holo({{0, 0}, {0, 0}, {1, 0}})})
          .with_label("pair_z_z2"),
      probe_centers(origin), std::vector<Complex>{origin}, false);

  corpus.emplace_back(
      FieldSpec::superposition({holo({{1, 0}}), holo({{0, 0}, {1, 0}})})
          .with_label("control_const_z"),
      probe_centers(origin), std::vector<Complex>{}, false);

  corpus.emplace_back(
      FieldSpec::superposition({holo({{0, 0}, {1, 0}}), holo({{0, 0}, {0, 0}, {1, 0}}),
                                holo({{0, 0}, {0, 0}, {0, 0}, {1, 0}})})
          .with_label("triple_z_z2_z3"),
      probe_centers(origin), std::vector<Complex>{origin}, false);

  {
    BivariatePoly p1(1, 0), p2(0, 1);
    p1.set_coeff(1, 0, 1.0);
    p2.set_coeff(0, 1, -1.0);
    corpus.emplace_back(
        FieldSpec::superposition({holo({{0, 0}, {1, 0}}), SheetSpec::table({p1, p2})})
            .with_label("pair_z_antiholo"),
        probe_centers(origin), std::vector<Complex>{origin}, false);
  }

  corpus.emplace_back(
      FieldSpec::superposition({holo({{0, 0}, {1, 0}}), holo({{10, 20}, {0, 0}, {1, 0}})})
          .with_label("pair_separated"),
      probe_centers(origin), std::vector<Complex>{}, false);

  {
    Rng rng(41);
    corpus.emplace_back(random_harmonic_field(rng).with_label("random_a"),
                        probe_centers(origin), std::vector<Complex>{}, false);
  }
  {
    Rng rng(42);
    corpus.emplace_back(random_harmonic_field(rng).with_label("random_b"),
                        probe_centers(origin), std::vector<Complex>{}, false);
  }

  return corpus;
}

std::vector<std::pair<FieldSpec, std::vector<Complex>>> branch_scan_corpus() {
  std::vector<std::pair<FieldSpec, std::vector<Complex>>> corpus;
  for (int q = 2; q <= 5; ++q)
    for (int k = 1; k < q; ++k)
      corpus.emplace_back(FieldSpec::branch(k, q), std::vector<Complex>{Complex{0.0, 0.0}});
  return corpus;
}

}  // namespace qfreq
