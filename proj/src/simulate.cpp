#include "bam/simulate.hpp"

#include "bam/kernels.hpp"

#include <Eigen/Cholesky>

#include <cstdio>
#include <random>
#include <stdexcept>

namespace bam {

namespace {

// One joint draw of a zero-mean GP at all inputs.
std::vector<double> sample_latent(const std::vector<Eigen::VectorXd>& X, const Kernel& k,
                                  std::mt19937_64& rng) {
  if (X.empty()) return {};
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(static_cast<Eigen::Index>(X.size()));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  const Eigen::LLT<Eigen::MatrixXd> llt(gram(X, k, 1e-10).matrix);
  const Eigen::VectorXd f = llt.matrixL() * z;
  return {f.data(), f.data() + f.size()};
}

}  // namespace

ToySample generate_toy(int n, std::uint64_t seed, const ToyParams& p) {
  if (n < 1) throw std::invalid_argument("generate_toy: n must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::poisson_distribution<int> count(p.event_rate);

  auto draw_features = [&](int dim) {
    Eigen::VectorXd x(dim);
    for (int d = 0; d < dim; ++d) x(d) = unif(rng);
    return x;
  };

  std::vector<Observation> obs(static_cast<std::size_t>(n));
  std::vector<Eigen::VectorXd> xr, xe;
  for (int i = 0; i < n; ++i) {
    auto& o = obs[static_cast<std::size_t>(i)];
    char id[32];
    std::snprintf(id, sizeof id, "t%05d", i);
    o.id = id;
    o.routine = draw_features(p.dim_routine);
    xr.push_back(o.routine);
    const int e = count(rng);
    for (int j = 0; j < e; ++j) {
      o.events.push_back(draw_features(p.dim_event));
      xe.push_back(o.events.back());
    }
  }

  ToySample out;
  const SeArdParams kr{p.signal_variance, Eigen::VectorXd::Constant(p.dim_routine, p.length_scale)};
  const SeArdParams ke{p.signal_variance, Eigen::VectorXd::Constant(p.dim_event, p.length_scale)};
  out.latent_routine = sample_latent(xr, kr, rng);
  out.latent_event = sample_latent(xe, ke, rng);

  const double sd = std::sqrt(p.beta);
  std::normal_distribution<double> noise(0.0, std::sqrt(p.noise_var));
  std::size_t ev = 0;
  for (int i = 0; i < n; ++i) {
    auto& o = obs[static_cast<std::size_t>(i)];
    GroundTruth::Entry t;
    t.id = o.id;
    t.routine = sample_positive_normal(rng, out.latent_routine[static_cast<std::size_t>(i)], sd);
    double total = t.routine;
    for (std::size_t j = 0; j < o.events.size(); ++j) {
      t.events.push_back(sample_positive_normal(rng, out.latent_event[ev++], sd));
      total += t.events.back();
    }
    o.y = total + noise(rng);
    out.truth.entries.push_back(std::move(t));
  }
  out.data = Dataset::make(std::move(obs), p.dim_routine, p.dim_event);
  return out;
}

}  // namespace bam
