#include "bam/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bam {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opt) {
  const Eigen::Index n = x0.size();
  NelderMeadResult res;
  res.x = x0;
  res.value = std::numeric_limits<double>::infinity();

  auto eval = [&](const Eigen::VectorXd& x) {
    double v = f(x);
    if (!std::isfinite(v)) v = std::numeric_limits<double>::infinity();
    ++res.evals;
    res.trace.push_back(v);
    if (v < res.value) {
      res.value = v;
      res.x = x;
    }
    return v;
  };

  std::vector<Eigen::VectorXd> pts{x0};
  std::vector<double> vals{eval(x0)};
  for (Eigen::Index i = 0; i < n && res.evals < opt.max_evals; ++i) {
    Eigen::VectorXd x = x0;
    x(i) += opt.initial_step;
    pts.push_back(x);
    vals.push_back(eval(x));
  }
  if (static_cast<Eigen::Index>(pts.size()) < n + 1) return res;

  std::vector<std::size_t> order(pts.size());
  while (res.evals < opt.max_evals) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];

    double diameter = 0.0;
    for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).cwiseAbs().maxCoeff());
    if (std::isfinite(vals[worst]) && vals[worst] - vals[best] < opt.f_tol && diameter < opt.x_tol) {
      res.converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      if (res.evals >= opt.max_evals) {
        pts[worst] = xr;
        vals[worst] = fr;
        break;
      }
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    if (res.evals >= opt.max_evals) break;
    // Outside contraction if the reflection improved on the worst point,
    // inside contraction otherwise.
    const bool outside = fr < vals[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                       : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = eval(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < pts.size() && res.evals < opt.max_evals; ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = eval(pts[i]);
    }
  }
  return res;
}

}  // namespace bam
