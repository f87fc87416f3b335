#include "zeroset/signal.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "zeroset/errors.hpp"

namespace zeroset {

namespace {

// sup_r r e^{-r^2/2} is attained at r = 1.
const double kHermitePeak = std::exp(-0.5);

}  // namespace

double SignalModel::intensity() const {
  switch (kind) {
    case SignalKind::Zero: return 0.0;
    case SignalKind::Gauss: return std::abs(coefficient);
    case SignalKind::Hermite1: return std::abs(coefficient) * kHermitePeak;
  }
  return 0.0;
}

Complex intensity_scale(SignalKind kind, double A) {
  if (!(A >= 0)) throw ConfigError("signal intensity A must be non-negative");
  switch (kind) {
    case SignalKind::Zero:
      if (A > 0) throw ConfigError("the zero signal cannot have positive intensity");
      return 0.0;
    case SignalKind::Gauss: return A;
    case SignalKind::Hermite1: return A / kHermitePeak;
  }
  return 0.0;
}

SignalModel make_signal(SignalKind kind, double A, double sigma) {
  if (!(sigma > 0)) throw ConfigError("noise level sigma must be positive");
  return {kind, intensity_scale(kind, A), sigma};
}

Complex bargmann_closed_form(const SignalModel& model, Complex zeta) {
  switch (model.kind) {
    case SignalKind::Zero: return 0.0;
    case SignalKind::Gauss: return model.coefficient;
    case SignalKind::Hermite1: return model.coefficient * zeta;
  }
  return 0.0;
}

Complex bargmann_derivative(const SignalModel& model, Complex /*zeta*/) {
  switch (model.kind) {
    case SignalKind::Zero:
    case SignalKind::Gauss: return 0.0;
    case SignalKind::Hermite1: return model.coefficient;
  }
  return 0.0;
}

Complex sample_signal(const SignalModel& model, double t) {
  switch (model.kind) {
    case SignalKind::Zero: return 0.0;
    case SignalKind::Gauss: return model.coefficient * std::exp(-t * t);
    case SignalKind::Hermite1: return model.coefficient * (2.0 * t * std::exp(-t * t));
  }
  return 0.0;
}

std::string_view kind_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::Zero: return "zero";
    case SignalKind::Gauss: return "gauss";
    case SignalKind::Hermite1: return "hermite1";
  }
  return "?";
}

SignalModel parse_signal(std::string_view descriptor, double sigma) {
  const auto colon = descriptor.find(':');
  const std::string_view name = descriptor.substr(0, colon);
  SignalKind kind;
  if (name == "zero") kind = SignalKind::Zero;
  else if (name == "gauss") kind = SignalKind::Gauss;
  else if (name == "hermite1") kind = SignalKind::Hermite1;
  else throw ConfigError("unknown signal kind '" + std::string(name) + "'");

  double A = kind == SignalKind::Zero ? 0.0 : 1.0;
  if (colon != std::string_view::npos) {
    std::string_view rest = descriptor.substr(colon + 1);
    if (rest.substr(0, 2) != "A=")
      throw ConfigError("signal descriptor must be of the form kind:A=<value>");
    rest.remove_prefix(2);
    const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), A);
    if (ec != std::errc() || ptr != rest.data() + rest.size())
      throw ConfigError("bad intensity in signal descriptor '" + std::string(descriptor) + "'");
  }
  return make_signal(kind, A, sigma);
}

std::string format_signal(const SignalModel& model) {
  if (model.kind == SignalKind::Zero) return "zero";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", model.intensity());
  return std::string(kind_name(model.kind)) + ":A=" + buf;
}

}  // namespace zeroset
