#ifndef ZEROSET_EXPERIMENT_HPP
#define ZEROSET_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "zeroset/config.hpp"
#include "zeroset/field.hpp"
#include "zeroset/io.hpp"

namespace zeroset {

/// Produces the delta_hi field for a seed (simulation or cache lookup).
using FieldProvider = std::function<WeightedField<double>(std::uint64_t seed)>;

/// Simulates the configured model on Lambda_L at delta_hi.
WeightedField<double> simulate_realization(const ExperimentConfig& config, std::uint64_t seed);

FieldProvider simulation_provider(const ExperimentConfig& config);

/// [F, S(F), S^2(F), ..., S^levels(F)].
std::vector<WeightedField<double>> dyadic_ladder(const WeightedField<double>& field, int levels);

/// Runs a detector on Omega_target, on the field converted to the given precision.
PointSet run_detector(Method method, const WeightedField<double>& field, double target_halfwidth,
                      Precision precision = Precision::Double);

/// Applies fn(i) for i in [0, n) on up to `threads` workers. Results are
/// returned in index order, so the output does not depend on scheduling.
template <typename Fn>
auto parallel_map(std::size_t n, int threads, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> out(n);
  const std::size_t workers = std::clamp<std::size_t>(threads > 0 ? threads : 1, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

/// Zero counts of one realization: counts[level][method][L1 - 1] on Omega_{L1}.
using CountTable = std::vector<std::vector<std::vector<int>>>;

/// Detects with every configured method at every ladder level (target Omega_{L-1})
/// and counts points in the nested boxes Omega_1 .. Omega_{L-1}.
CountTable count_zeros(const ExperimentConfig& config, const WeightedField<double>& field);

/// Intensity and count-error summaries for every level, method and nested box.
std::vector<StatsRow> run_stats(const ExperimentConfig& config, const FieldProvider& provider);

struct ConsistencyResult {
  std::vector<ConsistencyRow> rows;
  std::vector<double> deltas;              // delta_lo per level 1 .. levels
  std::vector<std::vector<double>> rates;  // rates[level - 1][method]
};

/// Proxy zeros from delta_hi, then every method at each coarser level, matched
/// and certified against the proxy.
ConsistencyResult run_consistency(const ExperimentConfig& config, const FieldProvider& provider);

}  // namespace zeroset

#endif  // ZEROSET_EXPERIMENT_HPP
