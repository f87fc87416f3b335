#include "zeroset/stats.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zeroset/errors.hpp"
#include "zeroset/simulate.hpp"

namespace zeroset {

double rho1(const SignalModel& signal, double sigma, Complex zeta) {
  const double weight = std::exp(-std::norm(zeta));
  const Complex F = bargmann_closed_form(signal, zeta);
  const Complex dF = bargmann_derivative(signal, zeta);
  const double s2 = sigma * sigma;
  const double covariant = std::norm(dF - std::conj(zeta) * F);
  return std::exp(-std::norm(F) * weight / s2) * (1.0 + weight * covariant / s2) /
         std::numbers::pi;
}

double midpoint_count(const SignalModel& signal, double sigma, const Box& region, double step) {
  if (!(step > 0)) throw ConfigError("quadrature step must be positive");
  const double w = region.x_max - region.x_min;
  const double h = region.y_max - region.y_min;
  if (!(w > 0) || !(h > 0)) return 0.0;
  const long nx = std::max(1L, static_cast<long>(std::ceil(w / step - 1e-9)));
  const long ny = std::max(1L, static_cast<long>(std::ceil(h / step - 1e-9)));
  const double hx = w / nx, hy = h / ny;
  double total = 0;
  for (long i = 0; i < nx; ++i) {
    const double x = region.x_min + (i + 0.5) * hx;
    double column = 0;
    for (long j = 0; j < ny; ++j) column += rho1(signal, sigma, {x, region.y_min + (j + 0.5) * hy});
    total += column;
  }
  return total * hx * hy;
}

namespace {

double richardson_count(const SignalModel& signal, double sigma, const Box& region, double step) {
  if (region.area() == 0) return 0.0;
  const double coarse = midpoint_count(signal, sigma, region, step);
  const double fine = midpoint_count(signal, sigma, region, step / 2);
  return (4 * fine - coarse) / 3;
}

// Width of the density spike at the zero of c z: rho1 ~ e^{-|c|^2 |z|^2 / sigma^2}
// near the origin. Infinite when there is no such feature.
double spike_width(const SignalModel& signal, double sigma) {
  if (signal.kind != SignalKind::Hermite1 || std::abs(signal.coefficient) == 0)
    return std::numeric_limits<double>::infinity();
  return sigma / std::abs(signal.coefficient);
}

}  // namespace

double expected_count(const SignalModel& signal, double sigma, const Box& region, double step) {
  if (region.area() == 0) return 0.0;
  if (signal.kind == SignalKind::Zero) return region.area() / std::numbers::pi;
  const double width = spike_width(signal, sigma);
  if (width >= 4 * step) return richardson_count(signal, sigma, region, step);

  // Resolve the spike on a small box around the origin (e^{-100} beyond 10
  // widths) and integrate the remaining strips at the requested step.
  const double w = 10 * width;
  const Box inner{std::max(region.x_min, -w), std::min(region.x_max, w),
                  std::max(region.y_min, -w), std::min(region.y_max, w)};
  if (inner.area() == 0) return richardson_count(signal, sigma, region, step);
  const Box strips[] = {
      {region.x_min, inner.x_min, region.y_min, region.y_max},
      {inner.x_max, region.x_max, region.y_min, region.y_max},
      {inner.x_min, inner.x_max, region.y_min, inner.y_min},
      {inner.x_min, inner.x_max, inner.y_max, region.y_max},
  };
  double total = richardson_count(signal, sigma, inner, width / 8);
  for (const Box& b : strips) total += richardson_count(signal, sigma, b, step);
  return total;
}

double quadrature_step(double delta) { return std::min(delta, 1.0 / 64); }

double intensity_estimator(const PointSet& points, const Box& region) {
  const double area = region.area();
  if (!(area > 0)) throw ConfigError("estimator region has zero area");
  return static_cast<double>(points.count_in(region)) / area;
}

double count_error(const PointSet& points, const Box& region, double expected) {
  const double area = region.area();
  if (!(area > 0)) throw ConfigError("estimator region has zero area");
  return (static_cast<double>(points.count_in(region)) - expected) / area;
}

double count_error_estimator(const PointSet& points, const SignalModel& signal, double sigma,
                             const Box& region) {
  return count_error(points, region,
                     expected_count(signal, sigma, region, quadrature_step(points.delta)));
}

double variance_benchmark() { return 0.01165; }

double scaled_variance_benchmark(double halfwidth) { return variance_benchmark() * 6.0 / halfwidth; }

Summary summarize(std::span<const double> values) {
  Summary s;
  s.n = values.size();
  if (s.n == 0) return s;
  double sum = 0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (s.n - 1));
    s.se = s.std / std::sqrt(double(s.n));
  }
  return s;
}

std::vector<Summary> nested_count_errors(std::span<const PointSet> realizations,
                                         const SignalModel& signal, double sigma,
                                         int max_halfwidth) {
  std::vector<Summary> out;
  if (realizations.empty()) return out;
  const double step = quadrature_step(realizations.front().delta);
  for (int L1 = 1; L1 <= max_halfwidth; ++L1) {
    const Box box = Box::centered(L1);
    const double expected = expected_count(signal, sigma, box, step);
    std::vector<double> errors;
    errors.reserve(realizations.size());
    for (const auto& r : realizations) errors.push_back(count_error(r, box, expected));
    out.push_back(summarize(errors));
  }
  return out;
}

namespace {

Complex value_at(const WeightedField<double>& field, Complex z) {
  if (const auto p = field.grid().index_of(z)) return field.at(*p);
  if (field.source()) return evaluate_continuous(*field.source(), z);
  throw DomainError("probe point is not a grid point and the field has no source");
}

}  // namespace

Complex sample_covariance(std::span<const Complex> xs, std::span<const Complex> ys) {
  const std::size_t R = xs.size();
  if (ys.size() != R) throw ConfigError("covariance needs paired samples");
  if (R < 2) throw ConfigError("covariance needs at least two realizations");
  Complex mx = 0, my = 0;
  for (std::size_t r = 0; r < R; ++r) {
    mx += xs[r];
    my += ys[r];
  }
  mx /= double(R);
  my /= double(R);
  Complex acc = 0;
  for (std::size_t r = 0; r < R; ++r) acc += (xs[r] - mx) * std::conj(ys[r] - my);
  return acc / double(R - 1);
}

Complex covariance_probe(std::span<const WeightedField<double>> fields, Complex z, Complex w) {
  if (fields.size() < 2) throw ConfigError("covariance needs at least two realizations");
  std::vector<Complex> xs, ys;
  for (const auto& f : fields) {
    xs.push_back(value_at(f, z));
    ys.push_back(value_at(f, w));
  }
  return sample_covariance(xs, ys);
}

}  // namespace zeroset
