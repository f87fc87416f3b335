#include "zeroset/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "zeroset/errors.hpp"

namespace zeroset {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view s, const char* what) {
  s = trim(s);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError(std::string("cannot parse ") + what + " from '" + std::string(s) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

double parse_spacing(std::string_view text) {
  text = trim(text);
  if (const auto caret = text.find('^'); caret != std::string_view::npos) {
    const double base = parse_number<double>(text.substr(0, caret), "spacing base");
    const int exponent = parse_number<int>(text.substr(caret + 1), "spacing exponent");
    if (base == 2) return std::ldexp(1.0, exponent);
    return std::pow(base, exponent);
  }
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_number<double>(text.substr(0, slash), "spacing numerator");
    const double den = parse_number<double>(text.substr(slash + 1), "spacing denominator");
    if (den == 0) throw ConfigError("zero denominator in spacing");
    return num / den;
  }
  return parse_number<double>(text, "spacing");
}

std::string format_spacing(double delta) {
  int exponent = 0;
  const double mantissa = std::frexp(delta, &exponent);
  if (mantissa == 0.5) return "2^" + std::to_string(exponent - 1);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", delta);
  return buf;
}

std::vector<std::uint64_t> parse_seeds(std::string_view text) {
  std::vector<std::uint64_t> seeds;
  for (const auto part : split(text, ',')) {
    if (part.empty()) continue;
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      const auto lo = parse_number<std::uint64_t>(part.substr(0, dots), "seed");
      const auto hi = parse_number<std::uint64_t>(part.substr(dots + 2), "seed");
      if (hi < lo) throw ConfigError("empty seed range '" + std::string(part) + "'");
      for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_number<std::uint64_t>(part, "seed"));
    }
  }
  if (seeds.empty()) throw ConfigError("no seeds given");
  return seeds;
}

std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (const auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = trim(v);
    if (v.empty()) continue;
    const auto eq = v.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    out[std::string(trim(v.substr(0, eq)))] = std::string(trim(v.substr(eq + 1)));
  }
  return out;
}

void ExperimentConfig::apply(const std::map<std::string, std::string>& values) {
  for (const auto& [key, value] : values) {
    if (key == "L") L = parse_spacing(value);
    else if (key == "delta" || key == "delta_hi") delta = parse_spacing(value);
    else if (key == "T") T = parse_spacing(value);
    else if (key == "sigma") sigma = parse_number<double>(value, "sigma");
    else if (key == "signal") signal = value;
    else if (key == "seeds") seeds = parse_seeds(value);
    else if (key == "R") {
      const auto r = parse_number<std::uint64_t>(value, "R");
      seeds.clear();
      for (std::uint64_t s = 0; s < r; ++s) seeds.push_back(s);
    } else if (key == "methods") {
      methods.clear();
      for (const auto m : split(value, ',')) methods.push_back(parse_method(m));
    } else if (key == "levels" || key == "j") levels = parse_number<int>(value, "levels");
    else if (key == "proxy") proxy = parse_method(value);
    else if (key == "precision") {
      if (value == "double") precision = Precision::Double;
      else if (value == "float" || value == "single") precision = Precision::Single;
      else throw ConfigError("precision must be 'double' or 'float'");
    } else if (key == "threads") threads = parse_number<int>(value, "threads");
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

GridSpec ExperimentConfig::grid() const {
  if (levels < 0) throw ConfigError("levels must be non-negative");
  if (proxy != Method::AMN && proxy != Method::MGN) throw ConfigError("proxy must be AMN or MGN");
  return make_grid(L, delta, T, 0);
}

SignalModel ExperimentConfig::signal_model() const { return parse_signal(signal, sigma); }

std::string ExperimentConfig::canonical() const {
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  os << "L=" << num(L) << "\ndelta=" << num(delta) << "\nT=" << num(T) << "\nsigma=" << num(sigma)
     << "\nsignal=" << signal << "\nlevels=" << levels << "\nproxy=" << method_name(proxy)
     << "\nprecision=" << (precision == Precision::Double ? "double" : "float") << "\nmethods=";
  for (std::size_t i = 0; i < methods.size(); ++i) os << (i ? "," : "") << method_name(methods[i]);
  os << "\nseeds=";
  for (std::size_t i = 0; i < seeds.size(); ++i) os << (i ? "," : "") << seeds[i];
  os << "\n";
  return os.str();
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : config.canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace zeroset
