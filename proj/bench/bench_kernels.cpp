#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "qfreq/corpus.hpp"
#include "qfreq/functionals.hpp"
#include "qfreq/qspace.hpp"

using namespace qfreq;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

int main() {
  const GridSpec grid{1024, 1024};
  Rng rng(7);

  struct Case {
    const char* name;
    FieldSpec field;
  };
  const Case cases[] = {
      {"branch_2_3", FieldSpec::branch(2, 3)},
      {"branch_4_5", FieldSpec::branch(4, 5)},
      {"random_deg4", random_harmonic_field(rng)},
  };

  std::printf("disk energy, %dx%d grid, radius 1\n", grid.angular, grid.radial);
  std::printf("%-12s %12s %12s %8s %10s\n", "case", "serial ms", "parallel ms", "speedup",
              "delta");
  bool identical = true;
  for (const Case& c : cases) {
    const double t0 = now_ms();
    const double serial =
        dirichlet_energy(c.field, c.field.center(), 1.0, grid, ExecutionPolicy::Serial);
    const double t1 = now_ms();
    const double parallel =
        dirichlet_energy(c.field, c.field.center(), 1.0, grid, ExecutionPolicy::Parallel);
    const double t2 = now_ms();
    const double delta = serial - parallel;
    if (delta != 0.0) identical = false;
    std::printf("%-12s %12.1f %12.1f %7.2fx %10.3g\n", c.name, t1 - t0, t2 - t1,
                (t1 - t0) / std::max(t2 - t1, 1e-9), delta);
  }

  constexpr int kPairs = 200, kQ = 6, kN = 3;
  auto random_qpoint = [&rng] {
    std::vector<std::vector<double>> pts(kQ, std::vector<double>(kN));
    for (auto& p : pts)
      for (double& x : p) x = rng.uniform(-1.0, 1.0);
    return QPoint::from_points(pts);
  };
  std::vector<QPoint> as, bs;
  for (int i = 0; i < kPairs; ++i) {
    as.push_back(random_qpoint());
    bs.push_back(random_qpoint());
  }
  double fast_sum = 0.0, brute_sum = 0.0;
  const double t0 = now_ms();
  for (int i = 0; i < kPairs; ++i) fast_sum += g_metric(as[i], bs[i]);
  const double t1 = now_ms();
  for (int i = 0; i < kPairs; ++i) brute_sum += g_metric_bruteforce(as[i], bs[i]);
  const double t2 = now_ms();
  std::printf("\nmatching metric, %d pairs, Q=%d n=%d\n", kPairs, kQ, kN);
  std::printf("assignment %.2f ms, brute force %.2f ms, sum delta %.3g\n", t1 - t0, t2 - t1,
              fast_sum - brute_sum);
  if (fast_sum != brute_sum) identical = false;

  if (!identical) {
    std::fprintf(stderr, "[FAIL] kernel variants disagree\n");
    return 1;
  }
  std::printf("all kernel variants agree exactly\n");
  return 0;
}
