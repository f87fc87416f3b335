#ifndef ZEROSET_DETECT_HPP
#define ZEROSET_DETECT_HPP

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "zeroset/errors.hpp"
#include "zeroset/field.hpp"
#include "zeroset/grid.hpp"

namespace zeroset {

namespace detail {

// The 16 lattice offsets with sup-norm exactly 2.
inline constexpr std::array<LatticePoint, 16> kRing2 = {{
    {-2, -2}, {-1, -2}, {0, -2}, {1, -2}, {2, -2},
    {-2, -1}, {2, -1}, {-2, 0}, {2, 0}, {-2, 1}, {2, 1},
    {-2, 2}, {-1, 2}, {0, 2}, {1, 2}, {2, 2},
}};

inline constexpr std::array<LatticePoint, 8> kRing1 = {{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1},
}};

// Lattice steps of the target box; the stored grid must reach `rings` further.
template <typename Scalar>
int target_steps(const WeightedField<Scalar>& field, double target_halfwidth, int rings,
                 const char* who) {
  const GridSpec& g = field.grid();
  const int steps = g.steps_for(target_halfwidth, who);
  if (steps + rings > g.half_steps())
    throw BoundaryError(std::string(who) + " needs " + std::to_string(rings) +
                        " grid rings beyond the target box");
  return steps;
}

inline long long lattice_key(LatticePoint p) {
  return (static_cast<long long>(p.a) << 32) ^ static_cast<unsigned int>(p.b);
}

}  // namespace detail

/// Comparison margin
///   eta = max{ |G(l)|, 3/4 |e^{delta(2i Im l + delta)/2} G(l + delta) - G(l)| }
/// with G the stored weighted samples. Requires the right neighbour l + delta.
template <typename Scalar>
Scalar amn_margin(const WeightedField<Scalar>& field, LatticePoint lambda) {
  const GridSpec& g = field.grid();
  const LatticePoint right{lambda.a + 1, lambda.b};
  if (!g.stores(lambda) || !g.stores(right))
    throw BoundaryError("comparison margin needs the right neighbour on the grid");
  const double delta = g.delta();
  const Complex center(field.at(lambda));
  const Complex next(field.at(right));
  // e^{delta^2/2} e^{i delta Im(lambda)}, Im(lambda) = b delta
  const Complex shift = std::polar(std::exp(0.5 * delta * delta), delta * delta * lambda.b);
  const double oscillation = 0.75 * std::abs(shift * next - center);
  return static_cast<Scalar>(std::max(std::abs(center), oscillation));
}

/// AMN selection step on Omega_target: lambda is selected iff every mu with
/// |lambda - mu|_inf = 2 delta satisfies |G(mu)| >= |G(lambda)| + eta_lambda.
template <typename Scalar>
PointSet amn_select(const WeightedField<Scalar>& field, double target_halfwidth) {
  const int t = detail::target_steps(field, target_halfwidth, 2, "AMN");
  const auto mags = field.magnitudes();
  const int h = field.grid().half_steps();
  PointSet out{{}, Method::AMN, field.grid().delta(), target_halfwidth};
  for (int a = -t; a <= t; ++a)
    for (int b = -t; b <= t; ++b) {
      const Scalar g = mags(a + h, b + h);
      bool candidate = true;
      for (const auto& o : detail::kRing2)
        if (mags(a + o.a + h, b + o.b + h) < g) {
          candidate = false;
          break;
        }
      if (!candidate) continue;
      const Scalar bar = g + amn_margin(field, LatticePoint{a, b});
      const bool selected = std::all_of(detail::kRing2.begin(), detail::kRing2.end(),
                                        [&](const LatticePoint& o) {
                                          return mags(a + o.a + h, b + o.b + h) >= bar;
                                        });
      if (selected) out.points.push_back({a, b});
    }
  return out;
}

/// Greedy sieve: repeatedly keep the candidate of least weighted magnitude
/// (ties by row-major lattice order) and drop every candidate within 4 delta.
/// The output is 5 delta separated and maximal in the candidate set.
template <typename Scalar>
PointSet sieve(const PointSet& candidates, const WeightedField<Scalar>& field) {
  PointSet out{{}, candidates.method, candidates.delta, candidates.domain_halfwidth};
  const std::size_t n = candidates.size();
  if (n == 0) return out;
  if (std::abs(candidates.delta - field.grid().delta()) > 1e-12 * field.grid().delta())
    throw ConfigError("candidates and field have different spacings");

  std::vector<Scalar> mag(n);
  std::unordered_map<long long, std::size_t> where;
  where.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const LatticePoint p = candidates.points[i];
    if (!field.grid().stores(p)) throw BoundaryError("sieve candidate outside the field grid");
    mag[i] = field.magnitude(p);
    where.emplace(detail::lattice_key(p), i);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (mag[i] != mag[j]) return mag[i] < mag[j];
    return candidates.points[i] < candidates.points[j];
  });

  std::vector<char> removed(n, 0);
  for (const std::size_t i : order) {
    if (removed[i]) continue;
    const LatticePoint p = candidates.points[i];
    out.points.push_back(p);
    for (int da = -4; da <= 4; ++da)
      for (int db = -4; db <= 4; ++db) {
        const auto it = where.find(detail::lattice_key({p.a + da, p.b + db}));
        if (it != where.end()) removed[it->second] = 1;
      }
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

/// Adaptive minimal grid neighbours: selection followed by sieving.
template <typename Scalar>
PointSet amn(const WeightedField<Scalar>& field, double target_halfwidth) {
  return sieve(amn_select(field, target_halfwidth), field);
}

/// Minimal grid neighbours: |G(lambda)| <= |G(mu)| for all 8 immediate neighbours.
template <typename Scalar>
PointSet mgn(const WeightedField<Scalar>& field, double target_halfwidth) {
  const int t = detail::target_steps(field, target_halfwidth, 1, "MGN");
  const auto mags = field.magnitudes();
  const int h = field.grid().half_steps();
  PointSet out{{}, Method::MGN, field.grid().delta(), target_halfwidth};
  for (int a = -t; a <= t; ++a)
    for (int b = -t; b <= t; ++b) {
      const Scalar g = mags(a + h, b + h);
      const bool keep = std::all_of(detail::kRing1.begin(), detail::kRing1.end(),
                                    [&](const LatticePoint& o) {
                                      return g <= mags(a + o.a + h, b + o.b + h);
                                    });
      if (keep) out.points.push_back({a, b});
    }
  return out;
}

/// Sieved thresholding: grid points with |G| <= 2 delta, then the sieve.
template <typename Scalar>
PointSet st(const WeightedField<Scalar>& field, double target_halfwidth) {
  const int t = detail::target_steps(field, target_halfwidth, 1, "ST");
  const auto mags = field.magnitudes();
  const int h = field.grid().half_steps();
  const Scalar threshold = static_cast<Scalar>(2 * field.grid().delta());
  PointSet below{{}, Method::ST, field.grid().delta(), target_halfwidth};
  for (int a = -t; a <= t; ++a)
    for (int b = -t; b <= t; ++b)
      if (mags(a + h, b + h) <= threshold) below.points.push_back({a, b});
  return sieve(below, field);
}

/// Diagnostic: plain thresholding at the q-quantile of |G| over the target box,
/// without sieving.
template <typename Scalar>
PointSet raw_threshold(const WeightedField<Scalar>& field, double target_halfwidth, double q) {
  if (!(q >= 0 && q <= 1)) throw ConfigError("quantile must lie in [0, 1]");
  const int t = detail::target_steps(field, target_halfwidth, 0, "threshold");
  const auto mags = field.magnitudes();
  const int h = field.grid().half_steps();
  const auto box = mags.block(h - t, h - t, 2 * t + 1, 2 * t + 1);
  std::vector<Scalar> sorted;
  sorted.reserve(box.size());
  for (Eigen::Index j = 0; j < box.cols(); ++j)
    for (Eigen::Index i = 0; i < box.rows(); ++i) sorted.push_back(box(i, j));
  std::sort(sorted.begin(), sorted.end());
  const auto idx = static_cast<std::size_t>(std::floor(q * double(sorted.size() - 1)));
  const Scalar threshold = sorted[idx];
  PointSet out{{}, Method::RawThreshold, field.grid().delta(), target_halfwidth};
  for (int a = -t; a <= t; ++a)
    for (int b = -t; b <= t; ++b)
      if (mags(a + h, b + h) <= threshold) out.points.push_back({a, b});
  return out;
}

/// Runs one of AMN, MGN, ST.
template <typename Scalar>
PointSet detect(Method method, const WeightedField<Scalar>& field, double target_halfwidth) {
  switch (method) {
    case Method::AMN: return amn(field, target_halfwidth);
    case Method::MGN: return mgn(field, target_halfwidth);
    case Method::ST: return st(field, target_halfwidth);
    default: break;
  }
  throw ConfigError("method '" + std::string(method_name(method)) + "' is not a detector");
}

}  // namespace zeroset

#endif  // ZEROSET_DETECT_HPP
