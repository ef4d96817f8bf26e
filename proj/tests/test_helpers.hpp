#pragma once

#include "bam/data.hpp"
#include "bam/ep.hpp"
#include "oracles/tiny_oracles.hpp"

#include <string>
#include <vector>

namespace testing {

inline bam::Observation make_obs(const std::string& id, double y, std::vector<double> routine,
                                 const std::vector<std::vector<double>>& events = {}) {
  bam::Observation o;
  o.id = id;
  o.y = y;
  o.routine = Eigen::Map<Eigen::VectorXd>(routine.data(), static_cast<Eigen::Index>(routine.size()));
  for (auto e : events)
    o.events.emplace_back(Eigen::Map<Eigen::VectorXd>(e.data(), static_cast<Eigen::Index>(e.size())));
  return o;
}

inline bam::Dataset tiny_dataset(const oracle::TinyInstance& t) {
  std::vector<bam::Observation> obs;
  int k = 0;
  for (int n = 0; n < t.n; ++n) {
    std::vector<std::vector<double>> events;
    for (int i = 0; i < t.counts[n]; ++i) events.push_back({t.xe[k++]});
    obs.push_back(make_obs("o" + std::to_string(n), t.y[n], {t.xr[n]}, events));
  }
  return bam::Dataset::make(std::move(obs), 1, 1);
}

inline bam::Hyperparams tiny_hyperparams(const oracle::TinyInstance& t) {
  bam::Hyperparams hp;
  hp.routine_kernel = bam::SeArdParams{t.s2r, Eigen::VectorXd::Constant(1, t.ellr)};
  hp.event_kernel = bam::SeArdParams{t.s2e, Eigen::VectorXd::Constant(1, t.elle)};
  hp.beta_r = t.beta_r;
  hp.beta_e = t.beta_e;
  hp.noise_v = t.v;
  return hp;
}

}  // namespace testing
