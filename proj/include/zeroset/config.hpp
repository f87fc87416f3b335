#ifndef ZEROSET_CONFIG_HPP
#define ZEROSET_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zeroset/grid.hpp"
#include "zeroset/signal.hpp"

namespace zeroset {

enum class Precision { Single, Double };

/// Parses "2^-7", "0.25", "1/64" or "3". Dyadic and rational forms are exact.
double parse_spacing(std::string_view text);

/// Parses "0..99", "3,5,8", "0..9,20" into an ordered list of seeds.
std::vector<std::uint64_t> parse_seeds(std::string_view text);

/// key = value lines; '#' starts a comment. Later keys override earlier ones.
std::map<std::string, std::string> parse_key_values(std::istream& in);

/// Parameters shared by all experiment pipelines.
struct ExperimentConfig {
  double L = 7;
  double delta = 1.0 / 512;  // delta_hi
  double T = 6;
  double sigma = 1;
  std::string signal = "zero";
  std::vector<std::uint64_t> seeds;
  std::vector<Method> methods{Method::AMN, Method::MGN, Method::ST};
  int levels = 0;  // number of dyadic subsamplings of the delta_hi field
  Method proxy = Method::AMN;
  Precision precision = Precision::Double;
  int threads = 1;

  /// Overwrites fields named in `values`; unknown keys are a ConfigError.
  void apply(const std::map<std::string, std::string>& values);

  /// Validates and returns the acquisition grid Lambda_L at delta_hi.
  GridSpec grid() const;
  SignalModel signal_model() const;

  /// Canonical key=value text of every parameter that affects outputs.
  std::string canonical() const;
};

/// FNV-1a 64-bit hash of the canonical configuration, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

std::string format_spacing(double delta);

}  // namespace zeroset

#endif  // ZEROSET_CONFIG_HPP
