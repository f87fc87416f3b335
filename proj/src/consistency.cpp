#include "zeroset/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include "zeroset/errors.hpp"

namespace zeroset {

namespace {

// Both point sets expressed on the finer of their two lattices.
struct CommonLattice {
  double unit = 0;
  int scale_first = 1;
  int scale_second = 1;

  LatticePoint first(LatticePoint p) const { return {p.a * scale_first, p.b * scale_first}; }
  LatticePoint second(LatticePoint p) const { return {p.a * scale_second, p.b * scale_second}; }

  /// Largest integer n with n * unit <= length.
  int floor_units(double length) const {
    return static_cast<int>(std::floor(length / unit + 1e-9));
  }
};

int integral_scale(double delta, double unit) {
  const double r = delta / unit;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * r)
    throw ConfigError("point sets live on incommensurable lattices");
  return static_cast<int>(n);
}

CommonLattice common_lattice(const PointSet& x, const PointSet& y, double fallback) {
  const double dx = x.empty() || !(x.delta > 0) ? 0.0 : x.delta;
  const double dy = y.empty() || !(y.delta > 0) ? 0.0 : y.delta;
  CommonLattice c;
  if (dx > 0 && dy > 0) c.unit = std::min(dx, dy);
  else if (dx > 0) c.unit = dx;
  else if (dy > 0) c.unit = dy;
  else c.unit = fallback;
  if (!(c.unit > 0)) throw ConfigError("point set spacing must be positive");
  if (dx > 0) c.scale_first = integral_scale(dx, c.unit);
  if (dy > 0) c.scale_second = integral_scale(dy, c.unit);
  return c;
}

std::vector<std::size_t> row_major_order(const PointSet& s) {
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return s.points[i] < s.points[j]; });
  return order;
}

bool inside(LatticePoint p, int halfwidth_units) {
  return std::abs(p.a) <= halfwidth_units && std::abs(p.b) <= halfwidth_units;
}

// Kuhn's augmenting path matching; returns the matching size.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::vector<std::vector<std::size_t>> adjacency, std::size_t right_size)
      : adj_(std::move(adjacency)), match_right_(right_size, kNone) {}

  std::size_t solve() {
    std::size_t size = 0;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      seen_.assign(match_right_.size(), 0);
      if (augment(u)) ++size;
    }
    return size;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bool augment(std::size_t u) {
    for (const std::size_t v : adj_[u]) {
      if (seen_[v]) continue;
      seen_[v] = 1;
      if (match_right_[v] == kNone || augment(match_right_[v])) {
        match_right_[v] = u;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_right_;
  std::vector<char> seen_;
};

}  // namespace

MatchResult greedy_match(const PointSet& Z_hi, const PointSet& Z_lo, double delta_lo) {
  MatchResult out;
  if (Z_hi.empty()) return out;
  const CommonLattice lat = common_lattice(Z_hi, Z_lo, delta_lo);
  const int reach = lat.floor_units(2 * delta_lo);

  std::vector<LatticePoint> lo(Z_lo.size());
  for (std::size_t j = 0; j < Z_lo.size(); ++j) lo[j] = lat.second(Z_lo.points[j]);
  const std::vector<std::size_t> lo_order = row_major_order(Z_lo);
  std::vector<char> taken(Z_lo.size(), 0);

  int worst = 0;
  for (const std::size_t i : row_major_order(Z_hi)) {
    const LatticePoint p = lat.first(Z_hi.points[i]);
    std::size_t best = Z_lo.size();
    int best_d = std::numeric_limits<int>::max();
    for (const std::size_t j : lo_order) {
      if (taken[j]) continue;
      const int d = sup_distance(p, lo[j]);
      if (d <= reach && d < best_d) {
        best = j;
        best_d = d;
      }
    }
    if (best == Z_lo.size()) {
      out.unmatched_hi.push_back(i);
      continue;
    }
    taken[best] = 1;
    out.U.push_back(i);
    out.phi.push_back(best);
    worst = std::max(worst, best_d);
  }
  out.max_distortion = worst * lat.unit;
  return out;
}

int certificate(const MatchResult& match, const PointSet& Z_hi, const PointSet& Z_lo,
                double target_halfwidth, double delta_lo) {
  if (!match.unmatched_hi.empty() || match.U.size() != Z_hi.size()) return 1;
  const double inner = target_halfwidth - 2 * delta_lo;
  if (inner < 0) return 0;
  const CommonLattice lat = common_lattice(Z_hi, Z_lo, delta_lo);
  const int inner_units = lat.floor_units(inner);
  std::vector<char> image(Z_lo.size(), 0);
  for (const std::size_t j : match.phi) image.at(j) = 1;
  for (std::size_t j = 0; j < Z_lo.size(); ++j)
    if (!image[j] && inside(lat.second(Z_lo.points[j]), inner_units)) return 1;
  return 0;
}

MatchResult match_and_certify(const PointSet& Z_hi, const PointSet& Z_lo,
                              double target_halfwidth, double delta_lo) {
  MatchResult m = greedy_match(Z_hi, Z_lo, delta_lo);
  m.certificate = certificate(m, Z_hi, Z_lo, target_halfwidth, delta_lo);
  return m;
}

double failure_rate(std::span<const int> certificates) {
  if (certificates.empty()) throw ConfigError("failure rate needs at least one certificate");
  double sum = 0;
  for (int c : certificates) sum += c;
  return sum / double(certificates.size());
}

bool wasserstein_within(const PointSet& U, const PointSet& V, double L, double theta,
                        double bound) {
  if (U.size() > V.size()) return false;
  const CommonLattice lat = common_lattice(U, V, std::max(U.delta, V.delta));
  const int reach = lat.floor_units(bound);
  const double inner = L - theta;
  const int inner_units = inner < 0 ? -1 : lat.floor_units(inner);

  std::vector<LatticePoint> u(U.size()), v(V.size());
  for (std::size_t i = 0; i < U.size(); ++i) u[i] = lat.first(U.points[i]);
  for (std::size_t j = 0; j < V.size(); ++j) v[j] = lat.second(V.points[j]);

  // every point of U must be matched
  std::vector<std::vector<std::size_t>> from_u(U.size());
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = 0; j < V.size(); ++j)
      if (sup_distance(u[i], v[j]) <= reach) from_u[i].push_back(j);
  if (BipartiteMatcher(from_u, V.size()).solve() != U.size()) return false;

  // every point of V inside the reduced box must be covered; by the
  // Mendelsohn-Dulmage theorem both saturations can be realized simultaneously
  std::vector<std::vector<std::size_t>> from_v;
  for (std::size_t j = 0; j < V.size(); ++j) {
    if (inner_units < 0 || !inside(v[j], inner_units)) continue;
    auto& row = from_v.emplace_back();
    for (std::size_t i = 0; i < U.size(); ++i)
      if (sup_distance(u[i], v[j]) <= reach) row.push_back(i);
  }
  const std::size_t required = from_v.size();
  return BipartiteMatcher(std::move(from_v), U.size()).solve() == required;
}

}  // namespace zeroset
