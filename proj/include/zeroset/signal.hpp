#ifndef ZEROSET_SIGNAL_HPP
#define ZEROSET_SIGNAL_HPP

#include <string>
#include <string_view>

#include "zeroset/grid.hpp"

namespace zeroset {

enum class SignalKind { Zero, Gauss, Hermite1 };

/// Deterministic component f1 with a closed-form Bargmann transform F1.
///
///   Gauss:    f1(t) = c e^{-t^2},      F1(z) = c
///   Hermite1: f1(t) = c 2t e^{-t^2},   F1(z) = c z
///
/// The coefficient multiplies both f1 and F1. sigma is the noise level the
/// signal is paired with.
struct SignalModel {
  SignalKind kind = SignalKind::Zero;
  Complex coefficient{0.0, 0.0};
  double sigma = 1.0;

  /// A = sup_z e^{-|z|^2/2} |F1(z)|.
  double intensity() const;
};

/// Coefficient c such that the model of the given kind has intensity A.
Complex intensity_scale(SignalKind kind, double A);

/// Model of the given kind scaled to intensity A.
SignalModel make_signal(SignalKind kind, double A, double sigma = 1.0);

Complex bargmann_closed_form(const SignalModel& model, Complex zeta);

/// Complex derivative of F1.
Complex bargmann_derivative(const SignalModel& model, Complex zeta);

/// Time-domain sample f1(t).
Complex sample_signal(const SignalModel& model, double t);

std::string_view kind_name(SignalKind kind);

/// Parses "zero", "gauss:A=1", "hermite1:A=100" (and "gauss" meaning A=1).
SignalModel parse_signal(std::string_view descriptor, double sigma = 1.0);

/// Inverse of parse_signal; A is printed with 15 significant digits.
std::string format_signal(const SignalModel& model);

}  // namespace zeroset

#endif  // ZEROSET_SIGNAL_HPP
