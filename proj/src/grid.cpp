#include "zeroset/grid.hpp"

#include <climits>
#include <cmath>
#include <string>

#include "zeroset/errors.hpp"

namespace zeroset {

namespace {

// Rounds ratio to an integer if it is one up to floating-point noise.
std::optional<long long> integral_ratio(double num, double den) {
  const double r = num / den;
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-9 * std::max(1.0, std::abs(r))) return std::nullopt;
  return static_cast<long long>(n);
}

}  // namespace

GridSpec make_grid(double L, double delta, double T, int margin) {
  if (!(delta > 0)) throw ConfigError("grid spacing must be positive");
  if (delta > 0.5) throw ConfigError("grid spacing must not exceed 1/2");
  if (!(L >= 1)) throw ConfigError("domain half-width L must be at least 1");
  if (!(T > 0)) throw ConfigError("window truncation T must be positive");
  if (margin < 0) throw ConfigError("margin must be non-negative");
  const auto l_steps = integral_ratio(L, delta);
  if (!l_steps) throw ConfigError("L/delta is not an integer (L=" + std::to_string(L) +
                                  ", delta=" + std::to_string(delta) + ")");
  const auto t_steps = integral_ratio(T, delta);
  if (!t_steps) throw ConfigError("T/delta is not an integer (T=" + std::to_string(T) +
                                  ", delta=" + std::to_string(delta) + ")");
  if (*l_steps + margin > INT_MAX / 4 || *t_steps > INT_MAX / 4)
    throw ConfigError("grid too large");

  GridSpec g;
  g.L_ = L;
  g.delta_ = delta;
  g.T_ = T;
  g.margin_ = margin;
  g.l_steps_ = static_cast<int>(*l_steps);
  g.t_steps_ = static_cast<int>(*t_steps);
  return g;
}

GridSpec coarsened(const GridSpec& grid) {
  if (grid.size() < 3 || (grid.size() - 1) % 2 != 0 || grid.half_steps() % 2 != 0)
    throw SubsampleError("axis count " + std::to_string(grid.size()) +
                         " cannot be subsampled by two around the grid corner");
  if (grid.margin() % 2 != 0)
    throw SubsampleError("margin rings must be even to subsample");
  const double coarse = 2 * grid.delta();
  if (grid.target_steps() % 2 != 0 || coarse > 0.5)
    throw SubsampleError("L is not a multiple of the doubled spacing");
  if (grid.window_steps() % 2 != 0)
    throw SubsampleError("T is not a multiple of the doubled spacing");
  return make_grid(grid.L(), coarse, grid.T(), grid.margin() / 2);
}

std::optional<LatticePoint> GridSpec::index_of(Complex z) const {
  const auto a = integral_ratio(z.real(), delta_);
  const auto b = integral_ratio(z.imag(), delta_);
  if (!a || !b) return std::nullopt;
  LatticePoint p{static_cast<int>(*a), static_cast<int>(*b)};
  if (!stores(p)) return std::nullopt;
  return p;
}

int GridSpec::steps_for(double halfwidth, std::string_view what) const {
  const auto n = integral_ratio(halfwidth, delta_);
  if (!n || *n < 0)
    throw ConfigError(std::string(what) + " half-width is not a multiple of the grid spacing");
  return static_cast<int>(*n);
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::AMN: return "AMN";
    case Method::MGN: return "MGN";
    case Method::ST: return "ST";
    case Method::TrueProxy: return "TRUE_PROXY";
    case Method::RawThreshold: return "RAW";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "AMN" || name == "amn") return Method::AMN;
  if (name == "MGN" || name == "mgn") return Method::MGN;
  if (name == "ST" || name == "st") return Method::ST;
  if (name == "TRUE_PROXY") return Method::TrueProxy;
  if (name == "RAW") return Method::RawThreshold;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::size_t PointSet::count_in(const Box& box) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (box.contains(location(i))) ++n;
  return n;
}

int PointSet::min_separation() const {
  int best = INT_MAX;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::min(best, sup_distance(points[i], points[j]));
  return best;
}

}  // namespace zeroset
