#include "bam/eval.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <unordered_set>

namespace bam {

Metrics metrics(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
  if (y_true.empty() || y_true.size() != y_pred.size())
    throw std::invalid_argument("metrics: inputs must be non-empty and of equal length");
  const double n = static_cast<double>(y_true.size());
  double mean_t = 0.0, mean_p = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    mean_t += y_true[i];
    mean_p += y_pred[i];
  }
  mean_t /= n;
  mean_p /= n;
  double abs_err = 0.0, abs_dev = 0.0, sse = 0.0, sst = 0.0, spp = 0.0, stp = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_pred[i] - y_true[i];
    const double dt = y_true[i] - mean_t;
    const double dp = y_pred[i] - mean_p;
    abs_err += std::abs(e);
    abs_dev += std::abs(dt);
    sse += e * e;
    sst += dt * dt;
    spp += dp * dp;
    stp += dt * dp;
  }
  if (!(sst > 0.0)) throw std::domain_error("metrics: y_true is constant");
  Metrics m;
  m.rae = 100.0 * abs_err / abs_dev;
  m.corrcoef = spp > 0.0 ? stp / std::sqrt(sst * spp) : 0.0;
  m.r2_raw = 1.0 - sse / sst;
  m.r2 = std::max(m.r2_raw, 0.0);
  return m;
}

std::vector<Fold> cv_folds(std::size_t n, int k,
                           const std::optional<std::vector<std::string>>& group_keys) {
  if (k < 1) throw std::invalid_argument("cv_folds: k must be positive");
  // Group boundaries: start index of each group, plus n.
  std::vector<std::size_t> starts;
  if (group_keys) {
    if (group_keys->size() != n)
      throw std::invalid_argument("cv_folds: one group key per observation required");
    std::unordered_set<std::string> closed;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& key = (*group_keys)[i];
      if (i > 0 && key == (*group_keys)[i - 1]) continue;
      if (!closed.insert(key).second)
        throw std::invalid_argument("cv_folds: group '" + key + "' is not contiguous");
      starts.push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) starts.push_back(i);
  }
  const std::size_t groups = starts.size();
  if (static_cast<std::size_t>(k) > groups)
    throw std::invalid_argument("cv_folds: k = " + std::to_string(k) + " exceeds " +
                                std::to_string(groups) + " groups");
  starts.push_back(n);

  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const std::size_t g0 = f * groups / folds.size();
    const std::size_t g1 = (f + 1) * groups / folds.size();
    for (std::size_t i = 0; i < n; ++i) {
      const bool in_test = i >= starts[g0] && i < starts[g1];
      (in_test ? folds[f].test : folds[f].train).push_back(i);
    }
  }
  return folds;
}

std::vector<Fold> cv_folds(const Dataset& ds, int k,
                           const std::optional<std::vector<std::string>>& group_keys) {
  return cv_folds(ds.size(), k, group_keys);
}

DecompositionMetrics evaluate_decomposition(const std::vector<ComponentEstimate>& estimates,
                                            const std::vector<GroundTruth::Entry>& truth) {
  if (estimates.size() != truth.size())
    throw DataError("evaluate_decomposition: " + std::to_string(estimates.size()) +
                    " estimates for " + std::to_string(truth.size()) + " truth entries");
  std::vector<double> rt, rp, et, ep;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (estimates[i].events.size() != truth[i].events.size())
      throw DataError("evaluate_decomposition: event count mismatch for '" + truth[i].id + "'");
    rt.push_back(truth[i].routine);
    rp.push_back(estimates[i].routine);
    for (std::size_t j = 0; j < truth[i].events.size(); ++j) {
      et.push_back(truth[i].events[j]);
      ep.push_back(estimates[i].events[j]);
    }
  }
  DecompositionMetrics out;
  out.routine = metrics(rt, rp);
  out.events = metrics(et, ep);
  return out;
}

Summary summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return {mean, se};
}

std::string format_mean_stderr(const Summary& s, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f (%.*f)", decimals, s.mean, decimals, s.stderr_);
  return buf;
}

}  // namespace bam
