#include "percolab/rng.hpp"

#include <array>
#include <stdexcept>

namespace percolab {

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = uniform_pos();
  double v = uniform();
  double m = std::sqrt(-2.0 * std::log(u));
  spare_ = m * std::sin(2.0 * M_PI * v);
  have_spare_ = true;
  return m * std::cos(2.0 * M_PI * v);
}

namespace {

// log(k!) for k = 0..9, used by the small-k acceptance test of the
// rejection sampler.
constexpr std::array<double, 10> kLogFactorial = {
    0.0,
    0.0,
    0.6931471805599453,
    1.791759469228055,
    3.1780538303479458,
    4.787491742782046,
    6.579251212010101,
    8.525161361065415,
    10.604602902745251,
    12.801827480081469,
};

constexpr double kLogSqrt2Pi = 0.9189385332046727;

}  // namespace

std::uint64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0)) throw std::invalid_argument("poisson: mean must be >= 0");
  if (mean == 0.0) return 0;

  if (mean < 30.0) {
    // Inversion by product of uniforms.
    const double threshold = std::exp(-mean);
    std::uint64_t k = 0;
    double prod = uniform_pos();
    while (prod > threshold) {
      prod *= uniform_pos();
      ++k;
    }
    return k;
  }

  // Hoermann's PTRD transformed rejection. Exact (rejection-based, no normal
  // approximation enters the accepted distribution) and O(1) uniforms per
  // draw for arbitrarily large means.
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    double u;
    double v = uniform();
    if (v <= 0.86 * v_r) {
      u = v / v_r - 0.43;
      return static_cast<std::uint64_t>(
          std::floor((2.0 * a / (0.5 - std::fabs(u)) + b) * u + mean + 0.445));
    }
    if (v >= v_r) {
      u = uniform() - 0.5;
    } else {
      u = v / v_r - 0.93;
      u = (u < 0 ? -0.5 : 0.5) - u;
      v = uniform() * v_r;
    }
    const double us = 0.5 - std::fabs(u);
    if (us < 0.013 && v > us) continue;

    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.445);
    v = v * inv_alpha / (a / (us * us) + b);
    if (kf >= 10.0) {
      const double t = (kf + 0.5) * std::log(mean / kf) - mean - kLogSqrt2Pi + kf -
                       (1.0 / 12.0 - 1.0 / (360.0 * kf * kf)) / kf;
      if (std::log(v * smu) <= t) return static_cast<std::uint64_t>(kf);
    } else if (kf >= 0.0) {
      const int k = static_cast<int>(kf);
      if (std::log(v) <= k * std::log(mean) - mean - kLogFactorial[static_cast<std::size_t>(k)])
        return static_cast<std::uint64_t>(k);
    }
  }
}

}  // namespace percolab
