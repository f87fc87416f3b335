#ifndef ZEROSET_IO_HPP
#define ZEROSET_IO_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "zeroset/config.hpp"
#include "zeroset/field.hpp"
#include "zeroset/grid.hpp"
#include "zeroset/signal.hpp"
#include "zeroset/stats.hpp"

namespace zeroset {

/// Field cache layout (little-endian):
///
///   char[8]  magic "ZSFIELD1"
///   u32      bytes per complex sample (8 = complex64, 16 = complex128)
///   f64      L, delta, T
///   i32      margin
///   f64      sigma
///   u64      seed
///   u32      signal descriptor length, then that many bytes ("gauss:A=1", ...)
///   u32      rows, cols (both equal the grid size)
///   payload  rows * cols complex samples, row-major: sample (k, l) at k * cols + l
struct FieldCacheInfo {
  std::uint64_t seed = 0;
  double sigma = 1;
  SignalModel signal;
  Precision precision = Precision::Double;
};

void write_field_cache(const std::filesystem::path& path, const WeightedField<double>& field,
                       const FieldCacheInfo& info);

struct LoadedField {
  WeightedField<double> field;
  FieldCacheInfo info;
};

/// Reads a cache; when `attach_source` is set the noise is regenerated from the
/// stored seed so the realization can be evaluated off the grid again.
LoadedField read_field_cache(const std::filesystem::path& path, bool attach_source = true);

std::string field_cache_name(std::uint64_t seed);

/// CSV columns re,im,k,l,method,delta,seed where (k, l) are the lattice
/// coordinates of the point: z = delta (k + i l).
void write_points_csv(std::ostream& out, const PointSet& points, std::uint64_t seed,
                      const std::string& config_hash);

/// Reads the CSV written above; all rows must share method and delta.
PointSet read_points_csv(std::istream& in, double domain_halfwidth = 0);

/// One line of the statistics report.
struct StatsRow {
  std::string estimator;
  std::string method;
  std::string signal;
  double A = 0;
  double sigma = 1;
  double delta = 0;
  double theta_halfwidth = 0;
  Summary summary;
};

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows,
                     const std::string& config_hash);

struct ConsistencyRow {
  std::uint64_t seed = 0;
  Method method = Method::AMN;
  double delta_hi = 0;
  double delta_lo = 0;
  std::size_t n_hi = 0;
  std::size_t n_lo = 0;
  int certificate = 0;
  double max_distortion = 0;
};

void write_consistency_csv(std::ostream& out, const std::vector<ConsistencyRow>& rows,
                           const std::string& config_hash);

/// Failure-rate table: one row per delta_lo, one column per method.
void write_failure_table(std::ostream& out, const std::vector<double>& deltas,
                         const std::vector<Method>& methods,
                         const std::vector<std::vector<double>>& rates,
                         const std::string& config_hash);

}  // namespace zeroset

#endif  // ZEROSET_IO_HPP
