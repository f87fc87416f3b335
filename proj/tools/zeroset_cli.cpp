// zeroset: simulate noisy Bargmann transforms, detect their zeros and report
// intensity and consistency statistics.
//
// Exit codes: 0 success, 2 configuration error, 3 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <string>

#include "zeroset/config.hpp"
#include "zeroset/detect.hpp"
#include "zeroset/errors.hpp"
#include "zeroset/experiment.hpp"
#include "zeroset/io.hpp"

namespace fs = std::filesystem;
using namespace zeroset;

namespace {

constexpr int kConfigExit = 2;
constexpr int kDataExit = 3;

// Options shared by every subcommand. Flags override values from --config.
struct Common {
  std::string config_file;
  std::map<std::string, std::string> flags;

  void add_to(CLI::App* app) {
    app->add_option("--config", config_file, "key = value configuration file");
    for (const char* key : {"L", "delta", "T", "sigma", "signal", "seeds", "R", "methods",
                            "levels", "proxy", "precision", "threads"})
      app->add_option_function<std::string>(
          std::string("--") + key, [this, key](const std::string& v) { flags[key] = v; });
  }

  ExperimentConfig resolve() const {
    ExperimentConfig config;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw ConfigError("cannot read config file '" + config_file + "'");
      config.apply(parse_key_values(in));
    }
    config.apply(flags);
    config.grid();
    config.signal_model();
    return config;
  }
};

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

// Loads delta_hi fields from a cache directory, checking they match the config.
FieldProvider cache_provider(const ExperimentConfig& config, const fs::path& dir) {
  const GridSpec expected = config.grid();
  return [=](std::uint64_t seed) {
    const fs::path path = dir / field_cache_name(seed);
    if (!fs::exists(path)) throw DataError("missing field cache '" + path.string() + "'");
    LoadedField loaded = read_field_cache(path);
    if (!(loaded.field.grid() == expected))
      throw DataError("field cache '" + path.string() + "' was made with a different grid");
    return std::move(loaded.field);
  };
}

void write_manifest(const fs::path& dir, const ExperimentConfig& config) {
  auto out = open_output(dir / "manifest.txt");
  out << "# config_hash=" << config_hash(config) << "\n" << config.canonical();
}

int cmd_simulate(const ExperimentConfig& config, const fs::path& out_dir) {
  if (config.seeds.empty()) throw ConfigError("no seeds configured");
  fs::create_directories(out_dir);
  const SignalModel signal = config.signal_model();
  parallel_map(config.seeds.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t seed = config.seeds[i];
    write_field_cache(out_dir / field_cache_name(seed), simulate_realization(config, seed),
                      {seed, config.sigma, signal, config.precision});
    return 0;
  });
  write_manifest(out_dir, config);
  return 0;
}

// Seeds named in the config, or every field_<seed>.bin in the cache directory.
std::vector<std::uint64_t> cached_seeds(const ExperimentConfig& config, const fs::path& dir) {
  if (!config.seeds.empty()) return config.seeds;
  if (!fs::is_directory(dir)) throw DataError("cache directory '" + dir.string() + "' not found");
  std::vector<std::uint64_t> seeds;
  const std::regex pattern(R"(field_(\d+)\.bin)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) seeds.push_back(std::stoull(m[1]));
  }
  if (seeds.empty()) throw DataError("no field caches in '" + dir.string() + "'");
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

int cmd_detect(ExperimentConfig config, const fs::path& cache_dir, const fs::path& out_dir,
               std::optional<double> raw_quantile) {
  config.seeds = cached_seeds(config, cache_dir);
  fs::create_directories(out_dir);
  const std::string hash = config_hash(config);
  parallel_map(config.seeds.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t seed = config.seeds[i];
    const fs::path path = cache_dir / field_cache_name(seed);
    if (!fs::exists(path)) throw DataError("missing field cache '" + path.string() + "'");
    const LoadedField loaded = read_field_cache(path, false);
    const double target = loaded.field.grid().L() - 1;
    const auto ladder = dyadic_ladder(loaded.field, config.levels);
    for (std::size_t level = 0; level < ladder.size(); ++level) {
      const auto emit = [&](const PointSet& points) {
        const std::string name = "points_" + std::to_string(seed) + "_" +
                                 std::string(method_name(points.method)) + "_" +
                                 std::to_string(level) + ".csv";
        auto out = open_output(out_dir / name);
        write_points_csv(out, points, seed, hash);
      };
      for (const Method m : config.methods)
        emit(run_detector(m, ladder[level], target, config.precision));
      if (raw_quantile) emit(raw_threshold(ladder[level], target, *raw_quantile));
    }
    return 0;
  });
  return 0;
}

int cmd_stats(const ExperimentConfig& config, const std::string& cache_dir, const fs::path& out) {
  const FieldProvider provider =
      cache_dir.empty() ? simulation_provider(config) : cache_provider(config, cache_dir);
  const auto rows = run_stats(config, provider);
  auto stream = open_output(out);
  write_stats_csv(stream, rows, config_hash(config));
  return 0;
}

int cmd_consistency(const ExperimentConfig& config, const std::string& cache_dir,
                    const fs::path& out, const std::string& table) {
  const FieldProvider provider =
      cache_dir.empty() ? simulation_provider(config) : cache_provider(config, cache_dir);
  const auto result = run_consistency(config, provider);
  const std::string hash = config_hash(config);
  {
    auto stream = open_output(out);
    write_consistency_csv(stream, result.rows, hash);
  }
  if (!table.empty()) {
    auto stream = open_output(table);
    write_failure_table(stream, result.deltas, config.methods, result.rates, hash);
  } else {
    write_failure_table(std::cout, result.deltas, config.methods, result.rates, hash);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero sets of noisy Bargmann transforms on finite grids"};
  app.require_subcommand(1);

  Common sim_opts, det_opts, stats_opts, cons_opts;
  std::string sim_out = "cache";
  auto* sim = app.add_subcommand("simulate", "Simulate fields and write one cache file per seed");
  sim_opts.add_to(sim);
  sim->add_option("--out", sim_out, "cache directory");

  std::string det_cache = "cache", det_out = "points";
  std::optional<double> raw_quantile;
  auto* det = app.add_subcommand("detect", "Detect zeros in cached fields at every ladder level");
  det_opts.add_to(det);
  det->add_option("--cache-dir", det_cache, "directory with field_<seed>.bin files");
  det->add_option("--out", det_out, "output directory for point CSVs");
  det->add_option("--raw-threshold", raw_quantile,
                  "also emit unsieved thresholding at this quantile of |G|");

  std::string stats_cache, stats_out = "stats.csv";
  auto* stats = app.add_subcommand("stats", "Intensity and count-error report");
  stats_opts.add_to(stats);
  stats->add_option("--cache-dir", stats_cache, "read fields from caches instead of simulating");
  stats->add_option("--out", stats_out, "report CSV");

  std::string cons_cache, cons_out = "consistency.csv", cons_table;
  auto* cons = app.add_subcommand("consistency", "Certificates against the high-resolution proxy");
  cons_opts.add_to(cons);
  cons->add_option("--cache-dir", cons_cache, "read fields from caches instead of simulating");
  cons->add_option("--out", cons_out, "per-seed CSV");
  cons->add_option("--table", cons_table, "failure-rate table CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*sim) return cmd_simulate(sim_opts.resolve(), sim_out);
    if (*det) return cmd_detect(det_opts.resolve(), det_cache, det_out, raw_quantile);
    if (*stats) return cmd_stats(stats_opts.resolve(), stats_cache, stats_out);
    if (*cons) return cmd_consistency(cons_opts.resolve(), cons_cache, cons_out, cons_table);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataExit;
  } catch (const DomainError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataExit;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataExit;
  } catch (const std::runtime_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigExit;
  }
  return 0;
}
