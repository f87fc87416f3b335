#include "zeroset/simulate.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <unsupported/Eigen/FFT>

#include "zeroset/errors.hpp"

namespace zeroset {

namespace {

// sqrt(2/pi) e^{-t^2}
double window(double t) { return std::sqrt(2.0 / std::numbers::pi) * std::exp(-t * t); }

// Smallest 2^a 3^b 5^c >= n.
int fft_size(int n) {
  int best = 1;
  while (best < n) best *= 2;
  for (int p5 = 1; p5 < best; p5 *= 5)
    for (int p35 = p5; p35 < best; p35 *= 3) {
      int m = p35;
      while (m < n) m *= 2;
      best = std::min(best, m);
    }
  return best;
}

// u_s = w_s + delta f1(delta s) for s = -half .. half.
Eigen::VectorXcd mixed_input(const NoiseDraw& noise, const SignalModel& signal) {
  Eigen::VectorXcd u = noise.w;
  if (signal.kind != SignalKind::Zero)
    for (int s = -noise.half; s <= noise.half; ++s)
      u(s + noise.half) += noise.delta * sample_signal(signal, noise.delta * s);
  return u;
}

void check_compatible(const NoiseDraw& noise, const GridSpec& grid) {
  if (std::abs(noise.delta - grid.delta()) > 1e-12 * grid.delta())
    throw ConfigError("noise spacing does not match grid spacing");
  if (noise.half < noise_half_length(grid))
    throw ConfigError("noise vector does not cover the grid plus window");
}

}  // namespace

int noise_half_length(const GridSpec& grid) { return grid.window_steps() + grid.half_steps(); }

NoiseDraw NoiseDraw::zeros(const GridSpec& grid) {
  NoiseDraw n;
  n.half = noise_half_length(grid);
  n.w = Eigen::VectorXcd::Zero(2 * n.half + 1);
  n.delta = grid.delta();
  return n;
}

NoiseDraw draw_noise(const GridSpec& grid, double sigma, std::uint64_t seed) {
  if (!(sigma > 0)) throw ConfigError("noise level sigma must be positive");
  NoiseDraw n;
  n.half = noise_half_length(grid);
  n.seed = seed;
  n.delta = grid.delta();
  n.sigma = sigma;
  n.w.resize(2 * n.half + 1);
  // Each real component carries half of E|w|^2 = sigma^2 delta sqrt(pi/2).
  const double component_sd =
      sigma * std::sqrt(0.5 * grid.delta() * std::sqrt(std::numbers::pi / 2.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, component_sd);
  for (Eigen::Index i = 0; i < n.w.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    n.w(i) = Complex(re, im);
  }
  return n;
}

WeightedField<double> synthesize_field(const NoiseDraw& noise, const SignalModel& signal,
                                       const GridSpec& grid) {
  check_compatible(noise, grid);
  const Eigen::VectorXcd u = mixed_input(noise, signal);
  const double d2 = grid.delta() * grid.delta();
  const int n = grid.window_steps();
  const int h = grid.half_steps();
  const int nr = 2 * n + 1;
  const int nj = 2 * h + 1;
  const int P = fft_size(nr + nj - 1);

  // window times input chirp e^{i d2 r^2}
  std::vector<Complex> weight(nr);
  for (int r = -n; r <= n; ++r)
    weight[r + n] = window(grid.delta() * r) * std::polar(1.0, d2 * double(r) * double(r));

  // kernel e^{-i d2 (m + n - h)^2} for m in [-(nr-1), nj-1], wrapped modulo P
  std::vector<Complex> kernel(P, Complex(0.0));
  for (int m = -(nr - 1); m <= nj - 1; ++m) {
    const double q = double(m + n - h);
    kernel[(m + P) % P] = std::polar(1.0, -d2 * q * q);
  }
  Eigen::FFT<double> fft;
  std::vector<Complex> kernel_hat;
  fft.fwd(kernel_hat, kernel);

  WeightedField<double>::Values values(nj, nj);
  std::vector<Complex> buf(P), buf_hat(P);
  for (int a = -h; a <= h; ++a) {
    std::fill(buf.begin(), buf.end(), Complex(0.0));
    for (int r = -n; r <= n; ++r) buf[r + n] = u(a + r + noise.half) * weight[r + n];
    fft.fwd(buf_hat, buf);
    for (int i = 0; i < P; ++i) buf_hat[i] *= kernel_hat[i];
    fft.inv(buf, buf_hat);
    for (int b = -h; b <= h; ++b) {
      const double phase = d2 * (double(b) * double(b) + double(a) * double(b));
      values(a + h, b + h) = std::polar(1.0, phase) * buf[b + h];
    }
  }
  auto source = std::make_shared<const FieldSource>(FieldSource{grid, noise, signal});
  return WeightedField<double>(grid, std::move(values), std::move(source));
}

WeightedField<double> synthesize_field_direct(const NoiseDraw& noise, const SignalModel& signal,
                                              const GridSpec& grid) {
  check_compatible(noise, grid);
  const Eigen::VectorXcd u = mixed_input(noise, signal);
  const double d2 = grid.delta() * grid.delta();
  const int n = grid.window_steps();
  const int h = grid.half_steps();
  WeightedField<double>::Values values(2 * h + 1, 2 * h + 1);
  for (int a = -h; a <= h; ++a)
    for (int b = -h; b <= h; ++b) {
      Complex sum = 0.0;
      for (int s = a - n; s <= a + n; ++s)
        sum += u(s + noise.half) * window(grid.delta() * (s - a)) *
               std::polar(1.0, 2.0 * d2 * double(s) * double(b));
      values(a + h, b + h) = std::polar(1.0, -d2 * double(a) * double(b)) * sum;
    }
  auto source = std::make_shared<const FieldSource>(FieldSource{grid, noise, signal});
  return WeightedField<double>(grid, std::move(values), std::move(source));
}

WeightedField<double> simulate(const GridSpec& grid, const SignalModel& signal,
                               std::uint64_t seed) {
  return synthesize_field(draw_noise(grid, signal.sigma, seed), signal, grid);
}

Complex evaluate_continuous(const FieldSource& source, Complex z) {
  const GridSpec& grid = source.grid;
  const double x = z.real(), y = z.imag();
  const double reach = grid.halfwidth() * (1 + 1e-12);
  if (std::abs(x) > reach || std::abs(y) > reach)
    throw DomainError("point outside the box covered by the field source");
  const double delta = grid.delta();
  const int s_lo = static_cast<int>(std::ceil((x - grid.T()) / delta - 1e-9));
  const int s_hi = static_cast<int>(std::floor((x + grid.T()) / delta + 1e-9));
  const NoiseDraw& noise = source.noise;
  Complex sum = 0.0;
  for (int s = std::max(s_lo, -noise.half); s <= std::min(s_hi, noise.half); ++s) {
    const double t = delta * s;
    const Complex u = noise.at(s) + delta * sample_signal(source.signal, t);
    sum += u * window(t - x) * std::polar(1.0, 2.0 * t * y);
  }
  return std::polar(1.0, -x * y) * sum;
}

RefinedZero refine_zero(const FieldSource& source, Complex z0, double radius, int levels) {
  const GridSpec& grid = source.grid;
  const double reach = grid.halfwidth();
  auto admissible = [&](Complex z) {
    return std::abs(z.real() - z0.real()) <= radius * (1 + 1e-12) &&
           std::abs(z.imag() - z0.imag()) <= radius * (1 + 1e-12) &&
           std::abs(z.real()) <= reach && std::abs(z.imag()) <= reach;
  };

  RefinedZero out;
  out.location = z0;
  out.magnitude = std::numeric_limits<double>::infinity();
  auto search = [&](Complex center, double step, int reach_steps) {
    for (int i = -reach_steps; i <= reach_steps; ++i)
      for (int j = -reach_steps; j <= reach_steps; ++j) {
        const Complex z = center + step * Complex(i, j);
        if (!admissible(z)) continue;
        const double m = std::abs(evaluate_continuous(source, z));
        if (m < out.magnitude) {
          out.magnitude = m;
          out.location = z;
        }
      }
    out.level_minima.push_back(out.magnitude);
  };

  double step = grid.delta();
  search(z0, step, static_cast<int>(std::floor(radius / step + 1e-9)));
  for (int level = 0; level < levels; ++level) {
    const Complex center = out.location;
    step /= 4;
    search(center, step, 4);
  }
  return out;
}

}  // namespace zeroset
