#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zeroset/errors.hpp"
#include "zeroset/signal.hpp"

using namespace zeroset;

TEST_CASE("closed-form Bargmann pairs") {
  const SignalModel gauss{SignalKind::Gauss, 1.0};
  const SignalModel hermite{SignalKind::Hermite1, 1.0};
  const SignalModel zero{};
  CHECK(bargmann_closed_form(gauss, {3, -2}) == Complex(1, 0));
  CHECK(bargmann_closed_form(hermite, {2, 1}) == Complex(2, 1));
  CHECK(bargmann_closed_form(zero, {0.3, 7}) == Complex(0, 0));
  CHECK(bargmann_derivative(hermite, {5, 5}) == Complex(1, 0));
  CHECK(bargmann_derivative(gauss, {5, 5}) == Complex(0, 0));
}

TEST_CASE("intensity scaling") {
  CHECK(intensity_scale(SignalKind::Gauss, 1) == Complex(1, 0));
  CHECK(intensity_scale(SignalKind::Gauss, 100) == Complex(100, 0));
  CHECK(std::abs(intensity_scale(SignalKind::Hermite1, 1) - std::exp(0.5)) < 1e-12);
  CHECK(intensity_scale(SignalKind::Zero, 0) == Complex(0, 0));
  CHECK_THROWS_AS(intensity_scale(SignalKind::Zero, 1), ConfigError);
  CHECK_THROWS_AS(intensity_scale(SignalKind::Gauss, -1), ConfigError);
  CHECK(make_signal(SignalKind::Hermite1, 100).intensity() == doctest::Approx(100).epsilon(1e-14));
}

TEST_CASE("time-domain samples") {
  const SignalModel gauss{SignalKind::Gauss, 1.0};
  CHECK(sample_signal(gauss, 0) == Complex(1, 0));
  CHECK(sample_signal({SignalKind::Hermite1, 1.0}, 0) == Complex(0, 0));
  const SignalModel scaled{SignalKind::Hermite1, std::exp(0.5)};
  CHECK(std::abs(sample_signal(scaled, 1 / std::sqrt(2.0)) - std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(sample_signal(gauss, 1.5) - std::exp(-2.25)) < 1e-15);
}

TEST_CASE("intensity is the supremum of the weighted transform") {
  for (const auto kind : {SignalKind::Gauss, SignalKind::Hermite1})
    for (const double A : {1.0, 100.0}) {
      const SignalModel m = make_signal(kind, A);
      double best = 0;
      const double h = 1.0 / 256;
      for (double x = -6; x <= 6; x += h)
        for (double y = -6; y <= 6; y += 4 * h) {
          const Complex z(x, y);
          best = std::max(best, std::exp(-0.5 * std::norm(z)) * std::abs(bargmann_closed_form(m, z)));
        }
      CHECK(std::abs(best - A) <= 1e-4 * A);
    }
}

TEST_CASE("coefficient scales signal and transform alike") {
  const Complex c(0.3, -2);
  const SignalModel one{SignalKind::Hermite1, 1.0};
  const SignalModel cm{SignalKind::Hermite1, c};
  for (const double t : {-1.0, 0.2, 2.5}) CHECK(std::abs(sample_signal(cm, t) - c * sample_signal(one, t)) < 1e-15);
  const Complex z(0.7, 0.1);
  CHECK(std::abs(bargmann_closed_form(cm, z) - c * bargmann_closed_form(one, z)) < 1e-15);
}

TEST_CASE("descriptor parsing") {
  const SignalModel g = parse_signal("gauss:A=1");
  CHECK(g.kind == SignalKind::Gauss);
  CHECK(g.intensity() == 1);
  const SignalModel h = parse_signal("hermite1:A=100", 2);
  CHECK(h.kind == SignalKind::Hermite1);
  CHECK(h.intensity() == doctest::Approx(100));
  CHECK(h.sigma == 2);
  CHECK(parse_signal("zero").kind == SignalKind::Zero);
  CHECK(parse_signal("gauss").intensity() == 1);
  CHECK(format_signal(h) == "hermite1:A=100");
  CHECK(format_signal(parse_signal("gauss:A=0.25")) == "gauss:A=0.25");
  CHECK(format_signal(SignalModel{}) == "zero");
  CHECK_THROWS_AS(parse_signal("chirp:A=1"), ConfigError);
  CHECK_THROWS_AS(parse_signal("gauss:B=1"), ConfigError);
  CHECK_THROWS_AS(parse_signal("gauss:A=x"), ConfigError);
  CHECK_THROWS_AS(parse_signal("zero:A=3"), ConfigError);
  CHECK_THROWS_AS(parse_signal("gauss", 0), ConfigError);
}
