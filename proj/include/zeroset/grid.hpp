#ifndef ZEROSET_GRID_HPP
#define ZEROSET_GRID_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zeroset {

using Complex = std::complex<double>;

/// Lattice coordinates relative to the origin: the point is delta * (a + i b).
struct LatticePoint {
  int a = 0;
  int b = 0;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  /// Row-major order: by real index first, then imaginary index.
  friend auto operator<=>(const LatticePoint& p, const LatticePoint& q) = default;
};

/// Sup-norm distance in lattice units.
inline int sup_distance(LatticePoint p, LatticePoint q) {
  const int dx = p.a > q.a ? p.a - q.a : q.a - p.a;
  const int dy = p.b > q.b ? p.b - q.b : q.b - p.b;
  return dx > dy ? dx : dy;
}

/// Square acquisition grid Lambda_{L + margin*delta} with window truncation T.
///
/// All counts are stored as integers; L/delta and T/delta are validated to be
/// integral at construction. Storage index (k, l) runs over [0, size()) and maps
/// to lattice coordinates (k - half_steps(), l - half_steps()).
class GridSpec {
 public:
  GridSpec() = default;

  double L() const { return L_; }
  double delta() const { return delta_; }
  double T() const { return T_; }
  int margin() const { return margin_; }

  /// L / delta.
  int target_steps() const { return l_steps_; }
  /// T / delta.
  int window_steps() const { return t_steps_; }
  /// Number of lattice steps from the origin to the stored edge.
  int half_steps() const { return l_steps_ + margin_; }
  /// Points per axis.
  int size() const { return 2 * half_steps() + 1; }
  double halfwidth() const { return half_steps() * delta_; }

  Complex point(LatticePoint p) const { return {p.a * delta_, p.b * delta_}; }
  Complex point_at(int k, int l) const { return point(lattice_of(k, l)); }

  LatticePoint lattice_of(int k, int l) const { return {k - half_steps(), l - half_steps()}; }
  int row_of(LatticePoint p) const { return p.a + half_steps(); }
  int col_of(LatticePoint p) const { return p.b + half_steps(); }

  bool stores(LatticePoint p) const {
    const int h = half_steps();
    return p.a >= -h && p.a <= h && p.b >= -h && p.b <= h;
  }

  /// Lattice coordinates of z when z is (up to rounding) a stored grid point.
  std::optional<LatticePoint> index_of(Complex z) const;

  /// Number of lattice steps corresponding to a half-width that must be a multiple of delta.
  int steps_for(double halfwidth, std::string_view what) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  friend GridSpec make_grid(double L, double delta, double T, int margin);

  double L_ = 1;
  double delta_ = 0.5;
  double T_ = 1;
  int margin_ = 0;
  int l_steps_ = 2;
  int t_steps_ = 2;
};

/// Validates L/delta, T/delta in N, 0 < delta <= 1/2, L >= 1, margin >= 0.
GridSpec make_grid(double L, double delta, double T, int margin = 0);

/// Grid with doubled spacing and the same corner; margin must be even.
GridSpec coarsened(const GridSpec& grid);

/// Closed axis-aligned box [x_min, x_max] x [y_min, y_max].
struct Box {
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

  /// Omega_L = { |x|, |y| <= L }.
  static Box centered(double halfwidth) { return {-halfwidth, halfwidth, -halfwidth, halfwidth}; }

  double area() const {
    const double w = x_max - x_min, h = y_max - y_min;
    return (w > 0 && h > 0) ? w * h : 0.0;
  }

  bool contains(Complex z) const {
    return z.real() >= x_min && z.real() <= x_max && z.imag() >= y_min && z.imag() <= y_max;
  }
};

enum class Method { AMN, MGN, ST, TrueProxy, RawThreshold };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

/// Detected zeros on a lattice of spacing delta, restricted to Omega_{domain_halfwidth}.
struct PointSet {
  std::vector<LatticePoint> points;
  Method method = Method::AMN;
  double delta = 0;
  double domain_halfwidth = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  Complex location(std::size_t i) const { return {points[i].a * delta, points[i].b * delta}; }

  /// Number of points in the closed box.
  std::size_t count_in(const Box& box) const;

  /// Smallest pairwise sup-norm separation in lattice units (INT_MAX for < 2 points).
  int min_separation() const;
};

}  // namespace zeroset

#endif  // ZEROSET_GRID_HPP
