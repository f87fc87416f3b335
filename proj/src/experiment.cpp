#include "zeroset/experiment.hpp"

#include <cmath>

#include "zeroset/consistency.hpp"
#include "zeroset/detect.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/simulate.hpp"
#include "zeroset/stats.hpp"

namespace zeroset {

WeightedField<double> simulate_realization(const ExperimentConfig& config, std::uint64_t seed) {
  return simulate(config.grid(), config.signal_model(), seed);
}

FieldProvider simulation_provider(const ExperimentConfig& config) {
  return [config](std::uint64_t seed) { return simulate_realization(config, seed); };
}

std::vector<WeightedField<double>> dyadic_ladder(const WeightedField<double>& field, int levels) {
  std::vector<WeightedField<double>> ladder{field};
  for (int k = 0; k < levels; ++k) ladder.push_back(subsample(ladder.back()));
  return ladder;
}

PointSet run_detector(Method method, const WeightedField<double>& field, double target_halfwidth,
                      Precision precision) {
  if (precision == Precision::Single) return detect(method, field.cast<float>(), target_halfwidth);
  return detect(method, field, target_halfwidth);
}

namespace {

int nested_boxes(const ExperimentConfig& config) {
  const int n = static_cast<int>(std::floor(config.L - 1 + 1e-9));
  if (n < 1) throw ConfigError("L must be at least 2 for nested estimator boxes");
  return n;
}

}  // namespace

CountTable count_zeros(const ExperimentConfig& config, const WeightedField<double>& field) {
  const int boxes = nested_boxes(config);
  const double target = config.L - 1;
  CountTable table;
  for (const auto& level : dyadic_ladder(field, config.levels)) {
    auto& per_method = table.emplace_back();
    for (const Method m : config.methods) {
      const PointSet z = run_detector(m, level, target, config.precision);
      auto& counts = per_method.emplace_back();
      for (int L1 = 1; L1 <= boxes; ++L1)
        counts.push_back(static_cast<int>(z.count_in(Box::centered(L1))));
    }
  }
  return table;
}

std::vector<StatsRow> run_stats(const ExperimentConfig& config, const FieldProvider& provider) {
  config.grid();
  if (config.seeds.empty()) throw ConfigError("no seeds configured");
  const SignalModel signal = config.signal_model();
  const int boxes = nested_boxes(config);
  const auto tables = parallel_map(config.seeds.size(), config.threads, [&](std::size_t i) {
    return count_zeros(config, provider(config.seeds[i]));
  });

  std::vector<StatsRow> rows;
  const std::string descriptor = format_signal(signal);
  for (int level = 0; level <= config.levels; ++level) {
    const double delta = std::ldexp(config.delta, level);
    std::vector<double> expected;
    for (int L1 = 1; L1 <= boxes; ++L1)
      expected.push_back(
          expected_count(signal, config.sigma, Box::centered(L1), quadrature_step(delta)));
    for (std::size_t m = 0; m < config.methods.size(); ++m)
      for (int L1 = 1; L1 <= boxes; ++L1) {
        const double area = Box::centered(L1).area();
        std::vector<double> intensity, error;
        for (const auto& t : tables) {
          const double count = t[level][m][L1 - 1];
          intensity.push_back(count / area);
          error.push_back((count - expected[L1 - 1]) / area);
        }
        StatsRow row{"", std::string(method_name(config.methods[m])), descriptor,
                     signal.intensity(), config.sigma, delta, double(L1), {}};
        row.estimator = "intensity";
        row.summary = summarize(intensity);
        rows.push_back(row);
        row.estimator = "count_error";
        row.summary = summarize(error);
        rows.push_back(row);
      }
  }
  return rows;
}

ConsistencyResult run_consistency(const ExperimentConfig& config, const FieldProvider& provider) {
  config.grid();
  if (config.levels < 1) throw ConfigError("consistency needs at least one subsampling level");
  if (config.seeds.empty()) throw ConfigError("no seeds configured");
  const double target = config.L - 1;

  const auto per_seed = parallel_map(config.seeds.size(), config.threads, [&](std::size_t i) {
    const auto ladder = dyadic_ladder(provider(config.seeds[i]), config.levels);
    const PointSet proxy = run_detector(config.proxy, ladder.front(), target, config.precision);
    std::vector<ConsistencyRow> rows;
    for (int level = 1; level <= config.levels; ++level) {
      const double delta_lo = ladder[level].grid().delta();
      for (const Method m : config.methods) {
        const PointSet lo = run_detector(m, ladder[level], target, config.precision);
        const MatchResult match = match_and_certify(proxy, lo, target, delta_lo);
        rows.push_back({config.seeds[i], m, ladder.front().grid().delta(), delta_lo, proxy.size(),
                        lo.size(), *match.certificate, match.max_distortion});
      }
    }
    return rows;
  });

  ConsistencyResult result;
  const std::size_t M = config.methods.size();
  result.rates.assign(config.levels, std::vector<double>(M, 0.0));
  for (int level = 1; level <= config.levels; ++level)
    result.deltas.push_back(std::ldexp(config.delta, level));
  for (const auto& rows : per_seed)
    for (std::size_t r = 0; r < rows.size(); ++r) {
      result.rows.push_back(rows[r]);
      result.rates[r / M][r % M] += rows[r].certificate;
    }
  for (auto& level : result.rates)
    for (double& p : level) p /= double(per_seed.size());
  return result;
}

}  // namespace zeroset
