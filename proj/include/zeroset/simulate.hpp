#ifndef ZEROSET_SIMULATE_HPP
#define ZEROSET_SIMULATE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <vector>

#include "zeroset/field.hpp"
#include "zeroset/grid.hpp"
#include "zeroset/signal.hpp"

namespace zeroset {

/// Discretized complex white noise w_s, s = -half .. half, spaced by delta.
/// Entries are i.i.d. circularly-symmetric with E|w_s|^2 = sigma^2 delta sqrt(pi/2).
struct NoiseDraw {
  Eigen::VectorXcd w;
  int half = 0;
  std::uint64_t seed = 0;
  double delta = 0;
  double sigma = 1;

  Complex at(int s) const { return w(s + half); }

  /// Identically zero noise covering the grid (signal-only fields).
  static NoiseDraw zeros(const GridSpec& grid);
};

/// Number of noise samples on each side of the origin needed by a grid:
/// (T + L)/delta plus the margin rings.
int noise_half_length(const GridSpec& grid);

NoiseDraw draw_noise(const GridSpec& grid, double sigma, std::uint64_t seed);

/// Everything needed to re-evaluate one realization anywhere in the grid's box.
struct FieldSource {
  GridSpec grid;
  NoiseDraw noise;
  SignalModel signal;
};

/// Weighted field e^{-ixy} H(conj z) on the grid, with H the windowed discrete
/// STFT of w + delta f1. The sum over frequencies is evaluated per column by a
/// chirp-z transform; the result carries its FieldSource.
WeightedField<double> synthesize_field(const NoiseDraw& noise, const SignalModel& signal,
                                       const GridSpec& grid);

/// Same values by the direct double sum, O(N^2 T/delta). Reference implementation.
WeightedField<double> synthesize_field_direct(const NoiseDraw& noise, const SignalModel& signal,
                                              const GridSpec& grid);

/// Convenience: draw_noise followed by synthesize_field.
WeightedField<double> simulate(const GridSpec& grid, const SignalModel& signal,
                               std::uint64_t seed);

/// Weighted value of the realization at an arbitrary z in the grid's box.
Complex evaluate_continuous(const FieldSource& source, Complex z);

struct RefinedZero {
  Complex location;
  double magnitude = 0;
  /// Minimal weighted magnitude after each level, starting with the coarse search.
  std::vector<double> level_minima;
};

/// Local minimum search of the weighted magnitude over Q_radius(z0): a coarse
/// pass at the source grid spacing, then `levels` passes each 4x finer around
/// the current argmin, restricted to Q_radius(z0) and the source's box.
RefinedZero refine_zero(const FieldSource& source, Complex z0, double radius, int levels);

}  // namespace zeroset

#endif  // ZEROSET_SIMULATE_HPP
