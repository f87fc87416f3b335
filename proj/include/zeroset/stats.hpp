#ifndef ZEROSET_STATS_HPP
#define ZEROSET_STATS_HPP

#include <span>
#include <vector>

#include "zeroset/field.hpp"
#include "zeroset/grid.hpp"
#include "zeroset/signal.hpp"

namespace zeroset {

/// Kac-Rice first intensity of the zeros of F1 + sigma F0:
///   rho1 = (1/pi) e^{-|F1|^2 e^{-|z|^2} / sigma^2}
///          (1 + e^{-|z|^2} |dF1 - conj(z) F1|^2 / sigma^2).
double rho1(const SignalModel& signal, double sigma, Complex zeta);

/// Tensor-product midpoint rule for the integral of rho1 over `region`, with
/// cells of side at most `step`.
double midpoint_count(const SignalModel& signal, double sigma, const Box& region, double step);

/// Expected number of zeros in `region`: midpoint rule at `step` and `step/2`
/// combined by one Richardson extrapolation. When the density has a spike
/// narrower than 4 steps (the zero of a strong c z signal), a box around it is
/// integrated at a finer step.
double expected_count(const SignalModel& signal, double sigma, const Box& region,
                      double step = 1.0 / 64);

/// Default quadrature step min(delta, 1/64).
double quadrature_step(double delta);

/// #(points in region) / |region|.
double intensity_estimator(const PointSet& points, const Box& region);

/// (#(points in region) - E count) / |region| with a precomputed expected count.
double count_error(const PointSet& points, const Box& region, double expected);

/// (#(points in region) - integral of rho1) / |region|.
double count_error_estimator(const PointSet& points, const SignalModel& signal, double sigma,
                             const Box& region);

/// Standard deviation of #zeros/area for the noise-only model on Omega_6.
double variance_benchmark();

/// The benchmark rescaled to Omega_halfwidth assuming count variance proportional
/// to area: 0.01165 * 6 / halfwidth.
double scaled_variance_benchmark(double halfwidth);

struct Summary {
  std::size_t n = 0;
  double mean = 0;
  double std = 0;  // sample standard deviation (n - 1)
  double se = 0;   // std / sqrt(n)
};

Summary summarize(std::span<const double> values);

/// Mean count error over realizations for each nested box Omega_{L1}, L1 = 1 .. max_halfwidth.
std::vector<Summary> nested_count_errors(std::span<const PointSet> realizations,
                                         const SignalModel& signal, double sigma,
                                         int max_halfwidth);

/// Empirical covariance (1/(R-1)) sum (X - mean X) conj(Y - mean Y) of the weighted
/// values at z and w across realizations. z and w must be grid points, or the
/// fields must carry a source.
Complex covariance_probe(std::span<const WeightedField<double>> fields, Complex z, Complex w);

/// Same estimator from paired samples x_r, y_r.
Complex sample_covariance(std::span<const Complex> xs, std::span<const Complex> ys);

}  // namespace zeroset

#endif  // ZEROSET_STATS_HPP
