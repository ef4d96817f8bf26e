#pragma once

#include "bam/data.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bam {

/// Generator settings for the synthetic two-component problem. Both
/// components use an SE kernel with a shared length-scale in every
/// dimension; component values are truncated Gaussians with variance
/// `beta` around the latent function.
struct ToyParams {
  int dim_routine = 2;
  int dim_event = 2;
  double signal_variance = 2.0;
  double length_scale = 1.0;
  double beta = 0.2;
  double noise_var = 0.01;
  double event_rate = 1.0;  ///< Poisson mean of the per-observation event count
};

struct ToySample {
  Dataset data;
  GroundTruth truth;
  std::vector<double> latent_routine;  ///< f^r at each observation
  std::vector<double> latent_event;    ///< f^e at each event, observation-major
};

/// Draws n observations from the additive generative process with one
/// seeded random stream. Identical (n, seed, params) give identical output.
ToySample generate_toy(int n, std::uint64_t seed, const ToyParams& params = {});

/// Draw from N(mean, sd^2) conditioned on being positive. The standard
/// normal tail z > a uses plain rejection for a <= 0.5, otherwise an
/// exponential proposal with rate (a + sqrt(a^2 + 4)) / 2.
template <class Rng>
double sample_positive_normal(Rng& rng, double mean, double sd) {
  const double a = -mean / sd;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double z;
  if (a <= 0.5) {
    std::normal_distribution<double> normal(0.0, 1.0);
    do z = normal(rng); while (!(z > a));
  } else {
    const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (;;) {
      z = a - std::log1p(-unif(rng)) / rate;
      const double d = z - rate;
      if (unif(rng) <= std::exp(-0.5 * d * d)) break;
    }
  }
  return mean + sd * z;
}

}  // namespace bam
