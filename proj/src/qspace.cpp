#include "qfreq/qspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qfreq {

QPoint QPoint::from_points(const std::vector<std::vector<double>>& pts) {
  if (pts.empty()) throw parameter_error("QPoint needs at least one point");
  const int q = static_cast<int>(pts.size());
  const int n = static_cast<int>(pts[0].size());
  QPoint out(q, n);
  for (int i = 0; i < q; ++i) {
    if (static_cast<int>(pts[i].size()) != n)
      throw dimension_mismatch_error("QPoint points must share one ambient dimension");
    for (int j = 0; j < n; ++j) out.at(i, j) = pts[i][j];
  }
  return out;
}

QPoint QPoint::splat(int q, const std::vector<double>& p) {
  QPoint out(q, static_cast<int>(p.size()));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < out.n(); ++j) out.at(i, j) = p[j];
  return out;
}

double QPoint::norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

namespace {

// Scratch buffers reused across calls; thread_local keeps g_metric reentrant.
struct Workspace {
  std::vector<double> cost, u, v, minv, terms;
  std::vector<int> p, way, match, perm;
  std::vector<char> used;

  void reserve(int q) {
    const auto qq = static_cast<std::size_t>(q);
    if (cost.size() < qq * qq) cost.resize(qq * qq);
    if (u.size() < qq + 1) {
      u.resize(qq + 1);
      v.resize(qq + 1);
      minv.resize(qq + 1);
      p.resize(qq + 1);
      way.resize(qq + 1);
      used.resize(qq + 1);
    }
    if (terms.size() < qq) {
      terms.resize(qq);
      match.resize(qq);
      perm.resize(qq);
    }
  }
};

Workspace& ws() {
  static thread_local Workspace w;
  return w;
}

void require_compatible(const QPoint& S, const QPoint& T) {
  if (S.q() != T.q())
    throw multiplicity_bound_error("multiplicity mismatch: Q=" + std::to_string(S.q()) +
                                   " vs Q=" + std::to_string(T.q()));
  if (S.n() != T.n())
    throw dimension_mismatch_error("ambient dimension mismatch: n=" + std::to_string(S.n()) +
                                   " vs n=" + std::to_string(T.n()));
}

void fill_cost(const QPoint& S, const QPoint& T, std::vector<double>& cost) {
  const int q = S.q();
  const int n = S.n();
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      double s = 0.0;
      for (int c = 0; c < n; ++c) {
        const double d = S.at(i, c) - T.at(j, c);
        s += d * d;
      }
      cost[static_cast<std::size_t>(i) * q + j] = s;
    }
  }
}

// Canonical cost of a matching: matched squared distances summed in ascending
// value order. The multiset of matched costs is independent of how the inputs
// stored their points, which makes g_metric exactly permutation invariant and
// lets the enumeration oracle reproduce it bit for bit.
double matching_cost(const std::vector<double>& cost, int q, const int* match_of_row,
                     std::vector<double>& terms) {
  for (int i = 0; i < q; ++i) terms[i] = cost[static_cast<std::size_t>(i) * q + match_of_row[i]];
  std::sort(terms.begin(), terms.begin() + q);
  double s = 0.0;
  for (int i = 0; i < q; ++i) s += terms[i];
  return s;
}

// Jonker-Volgenant style shortest augmenting path, O(Q^3).
void solve_assignment(const std::vector<double>& cost, int q, Workspace& w) {
  const double inf = std::numeric_limits<double>::infinity();
  std::fill(w.u.begin(), w.u.begin() + q + 1, 0.0);
  std::fill(w.v.begin(), w.v.begin() + q + 1, 0.0);
  std::fill(w.p.begin(), w.p.begin() + q + 1, q);
  std::fill(w.way.begin(), w.way.begin() + q + 1, q);

  for (int i = 0; i < q; ++i) {
    w.p[q] = i;
    int j0 = q;
    std::fill(w.minv.begin(), w.minv.begin() + q + 1, inf);
    std::fill(w.used.begin(), w.used.begin() + q + 1, 0);
    do {
      w.used[j0] = 1;
      const int i0 = w.p[j0];
      double delta = inf;
      int j1 = q;
      for (int j = 0; j < q; ++j) {
        if (w.used[j]) continue;
        const double cur = cost[static_cast<std::size_t>(i0) * q + j] - w.u[i0] - w.v[j];
        if (cur < w.minv[j]) {
          w.minv[j] = cur;
          w.way[j] = j0;
        }
        if (w.minv[j] < delta) {
          delta = w.minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= q; ++j) {
        if (w.used[j]) {
          w.u[w.p[j]] += delta;
          w.v[j] -= delta;
        } else {
          w.minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (w.p[j0] != q);
    do {
      const int j1 = w.way[j0];
      w.p[j0] = w.p[j1];
      j0 = j1;
    } while (j0 != q);
  }

  for (int j = 0; j < q; ++j)
    if (w.p[j] != q) w.match[w.p[j]] = j;
}

// Accept pairwise swaps that strictly lower the canonical double-precision
// cost; removes last-ulp gaps between the solver optimum and the enumeration
// oracle on near-tied instances.
void polish_assignment(const std::vector<double>& cost, int q, Workspace& w) {
  bool improved = true;
  while (improved) {
    improved = false;
    double best = matching_cost(cost, q, w.match.data(), w.terms);
    for (int a = 0; a < q; ++a) {
      for (int b = a + 1; b < q; ++b) {
        std::swap(w.match[a], w.match[b]);
        const double c = matching_cost(cost, q, w.match.data(), w.terms);
        if (c < best) {
          best = c;
          improved = true;
        } else {
          std::swap(w.match[a], w.match[b]);
        }
      }
    }
  }
}

}  // namespace

double g_metric(const QPoint& S, const QPoint& T) {
  require_compatible(S, T);
  const int q = S.q();
  Workspace& w = ws();
  w.reserve(q);
  fill_cost(S, T, w.cost);
  solve_assignment(w.cost, q, w);
  polish_assignment(w.cost, q, w);
  return std::sqrt(matching_cost(w.cost, q, w.match.data(), w.terms));
}

double g_metric_bruteforce(const QPoint& S, const QPoint& T) {
  require_compatible(S, T);
  const int q = S.q();
  if (q > 8)
    throw multiplicity_bound_error("g_metric_bruteforce refuses Q > 8 (got Q=" +
                                   std::to_string(q) + "); factorial enumeration guard");
  Workspace& w = ws();
  w.reserve(q);
  fill_cost(S, T, w.cost);

  std::iota(w.perm.begin(), w.perm.begin() + q, 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    const double c = matching_cost(w.cost, q, w.perm.data(), w.terms);
    if (c < best) best = c;
  } while (std::next_permutation(w.perm.begin(), w.perm.begin() + q));
  return std::sqrt(best);
}

std::vector<double> xi0(const QPoint& S) {
  const int q = S.q();
  const int n = S.n();
  std::vector<double> out(static_cast<std::size_t>(n) * q);
  for (int j = 0; j < n; ++j) {
    double* block = out.data() + static_cast<std::size_t>(j) * q;
    for (int i = 0; i < q; ++i) block[i] = S.at(i, j);
    std::sort(block, block + q);
  }
  return out;
}

}  // namespace qfreq
