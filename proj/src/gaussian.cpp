#include "bam/gaussian.hpp"

#include "bam/quadrature.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace bam {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kMillsSwitch = -8.0;

// k0 / (t + (k0+1) / (t + (k0+2) / (t + ...))), evaluated bottom-up.
double mills_tail(double t, int k0) {
  double acc = 0.0;
  for (int k = k0 + 240; k >= k0; --k) acc = k / (t + acc);
  return acc;
}

// Lower-tail quantities for z < kMillsSwitch from the continued fraction of
// the Mills ratio, written so that no step subtracts nearly equal numbers.
struct LowerTail {
  double t, c, d, e;
};

LowerTail lower_tail(double z) {
  LowerTail lt{};
  lt.t = -z;
  lt.e = mills_tail(lt.t, 3);
  lt.d = 2.0 / (lt.t + lt.e);
  lt.c = 1.0 / (lt.t + lt.d);
  return lt;
}

}  // namespace

std::pair<Gaussian1D, double> multiply(const Gaussian1D& a, const Gaussian1D& b) {
  Gaussian1D out{a.precision + b.precision, a.precision_mean + b.precision_mean};
  double log_scale = 0.0;
  if (a.is_proper() && b.is_proper()) {
    const double var = a.variance() + b.variance();
    const double diff = a.mean() - b.mean();
    log_scale = -0.5 * std::log(2.0 * std::numbers::pi * var) - 0.5 * diff * diff / var;
  }
  return {out, log_scale};
}

Gaussian1D divide(const Gaussian1D& a, const Gaussian1D& b) {
  return {a.precision - b.precision, a.precision_mean - b.precision_mean};
}

Gaussian1D damp(const Gaussian1D& previous, const Gaussian1D& next,
                double fraction_new) {
  const double keep = 1.0 - fraction_new;
  return {fraction_new * next.precision + keep * previous.precision,
          fraction_new * next.precision_mean + keep * previous.precision_mean};
}

double log_partition(const Gaussian1D& g) {
  if (!g.is_proper()) throw std::domain_error("log_partition: precision must be positive");
  return 0.5 * std::log(2.0 * std::numbers::pi / g.precision) +
         0.5 * g.precision_mean * g.precision_mean / g.precision;
}

double max_abs_change(const Gaussian1D& a, const Gaussian1D& b) {
  return std::max(std::abs(a.precision - b.precision),
                  std::abs(a.precision_mean - b.precision_mean));
}

double log_norm_pdf(double z) { return -0.5 * z * z - kLogSqrt2Pi; }

double log_norm_cdf(double z) {
  if (z < kMillsSwitch) {
    const LowerTail lt = lower_tail(z);
    return log_norm_pdf(z) - std::log(lt.t + lt.c);
  }
  if (z < 0.0) return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2));
  return std::log1p(-0.5 * std::erfc(z / std::numbers::sqrt2));
}

double inverse_mills_ratio(double z) {
  if (z < kMillsSwitch) {
    const LowerTail lt = lower_tail(z);
    return lt.t + lt.c;
  }
  return std::exp(log_norm_pdf(z) - log_norm_cdf(z));
}

MomentResult trunc_gauss_moments(double mu, double sigma2) {
  if (!std::isfinite(mu) || !std::isfinite(sigma2))
    throw std::domain_error("trunc_gauss_moments: non-finite input");
  if (!(sigma2 > 0.0)) throw std::domain_error("trunc_gauss_moments: sigma2 must be positive");
  const double sigma = std::sqrt(sigma2);
  const double z = mu / sigma;
  MomentResult out;
  out.log_z = log_norm_cdf(z);
  if (z < kMillsSwitch) {
    const LowerTail lt = lower_tail(z);
    out.mean = sigma * lt.c;
    const double numer = (lt.t - lt.e) / (lt.t + lt.e) + lt.d * lt.d;
    out.variance = sigma2 * numer / ((lt.t + lt.d) * (lt.t + lt.d));
    return out;
  }
  const double r = inverse_mills_ratio(z);
  out.mean = mu + sigma * r;
  out.variance = sigma2 * (1.0 - r * (r + z));
  return out;
}

TiltedMoments truncated_tilted_moments(const Gaussian1D& cavity_f,
                                       const Gaussian1D& cavity_y, double beta) {
  if (!cavity_f.is_proper())
    throw std::domain_error("truncated_tilted_moments: f cavity must be proper");
  const double mf = cavity_f.mean();
  const double vf = cavity_f.variance();
  const Gaussian1D marginal = Gaussian1D::from_moments(mf, vf + beta);
  const auto [product, log_scale] = multiply(marginal, cavity_y);

  TiltedMoments out;
  out.y = trunc_gauss_moments(product.mean(), product.variance());
  out.y.log_z += log_scale;

  const double gain = vf / (vf + beta);
  out.f.mean = mf + gain * (out.y.mean - mf);
  out.f.variance = vf * (1.0 - gain) + gain * gain * out.y.variance;
  out.f.log_z = out.y.log_z;
  return out;
}

double relaxed_poisson_log_density(double y, double f) {
  return y * f - std::exp(f) - std::lgamma(y + 1.0);
}

namespace {

// The relaxed Poisson tilted density, integrated over f (outer) and y
// (inner). For fixed f the y-integrand is log-concave, so each inner
// integral is handled by a rule centred on its mode.
struct PoissonTilt {
  double mf, vf;
  bool y_uniform;
  double my, vy;

  // log of exp(y f - lgamma(y + 1)) cavity_y(y) without the normalizer.
  double log_inner(double y, double f) const {
    double v = y * f - std::lgamma(y + 1.0);
    if (!y_uniform) v -= 0.5 * (y - my) * (y - my) / vy;
    return v;
  }
  double inner_grad(double y, double f) const {
    double g = f - boost::math::digamma(y + 1.0);
    if (!y_uniform) g -= (y - my) / vy;
    return g;
  }
  double inner_curv(double y) const {
    double h = boost::math::trigamma(y + 1.0);
    if (!y_uniform) h += 1.0 / vy;
    return h;
  }

  struct InnerMode {
    double y;      // mode, >= 0
    double scale;  // 1 / sqrt(curvature) at the mode
    double slope;  // gradient at the mode (nonzero only at the boundary)
  };

  InnerMode inner_mode(double f) const {
    const double g0 = inner_grad(0.0, f);
    if (g0 <= 0.0) return {0.0, 1.0 / std::sqrt(inner_curv(0.0)), g0};
    // The gradient is decreasing and convex in y, so Newton steps taken
    // left of the root stay left of it and converge monotonically.
    // digamma(y + 1) ~ log(y + 1/2) gives the starting point.
    double y = std::max(std::exp(f) - 0.5, 0.0);
    if (!y_uniform) y = std::min(y, std::max(my, 0.0) + 10.0 * std::sqrt(vy) + 1.0);
    for (int it = 0; it < 100; ++it) {
      const double next = std::max(y + inner_grad(y, f) / inner_curv(y), 0.0);
      const bool done = std::abs(next - y) < 1e-12 * (1.0 + y);
      y = next;
      if (done) break;
    }
    return {y, 1.0 / std::sqrt(inner_curv(y)), 0.0};
  }
};

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

struct WeightedNodes {
  std::vector<double> x, log_w;
};

// Nodes for the inner y-integral at fixed f. Interior modes far from zero
// use Gauss-Hermite. Otherwise Gauss-Legendre panels on either side of the
// mode, reaching where the log-integrand has dropped by about 40 nats,
// clipped at zero.
WeightedNodes inner_nodes(const PoissonTilt& tilt, double f, int n) {
  constexpr double kDrop = 40.0;
  const double reach = std::sqrt(2.0 * kDrop);
  const PoissonTilt::InnerMode mode = tilt.inner_mode(f);
  WeightedNodes out;
  out.x.reserve(2 * static_cast<std::size_t>(n));
  out.log_w.reserve(2 * static_cast<std::size_t>(n));
  if (mode.y - reach * mode.scale > 0.0) {
    const QuadratureRule& gh = gauss_hermite(n);
    const double s = std::numbers::sqrt2 * mode.scale;
    for (std::size_t k = 0; k < gh.nodes.size(); ++k) {
      out.x.push_back(mode.y + s * gh.nodes[k]);
      out.log_w.push_back(std::log(gh.weights[k] * s) + gh.nodes[k] * gh.nodes[k]);
    }
    return out;
  }
  const QuadratureRule& gl = gauss_legendre(n);
  auto panel = [&](double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      out.x.push_back(lo + half * (gl.nodes[k] + 1.0));
      out.log_w.push_back(std::log(gl.weights[k] * half));
    }
  };
  // The right tail is heavier than the quadratic estimate (lgamma grows
  // like y log y), so the edge is pushed out until the drop is real.
  const double peak = tilt.log_inner(mode.y, f);
  auto right_edge = [&](double guess) {
    double t = std::max(guess, mode.y + mode.scale);
    for (int it = 0; it < 60 && peak - tilt.log_inner(t, f) < kDrop; ++it)
      t = mode.y + 1.5 * (t - mode.y);
    return t;
  };
  if (mode.slope < 0.0) {
    const double h = 1.0 / (mode.scale * mode.scale);
    panel(0.0, right_edge((mode.slope + std::sqrt(mode.slope * mode.slope + 2.0 * kDrop * h)) / h));
  } else {
    panel(0.0, mode.y);
    panel(mode.y, right_edge(mode.y + reach * mode.scale));
  }
  return out;
}

struct InnerMoments {
  double mean, variance, log_z;
};

// Mean and variance of y under the inner integrand at fixed f.
InnerMoments inner_moments(const PoissonTilt& tilt, double f, int n) {
  const WeightedNodes nodes = inner_nodes(tilt, f, n);
  std::vector<double> lw(nodes.x.size());
  for (std::size_t j = 0; j < lw.size(); ++j) lw[j] = nodes.log_w[j] + tilt.log_inner(nodes.x[j], f);
  const double total = log_sum_exp(lw);
  double s1 = 0.0, s2 = 0.0;
  const double ref = nodes.x[nodes.x.size() / 2];
  for (std::size_t j = 0; j < lw.size(); ++j) {
    const double w = std::exp(lw[j] - total);
    s1 += w * (nodes.x[j] - ref);
    s2 += w * (nodes.x[j] - ref) * (nodes.x[j] - ref);
  }
  return {ref + s1, std::max(s2 - s1 * s1, 0.0), total};
}

}  // namespace

MomentResult relaxed_poisson_moments(double f, int quad_nodes) {
  const PoissonTilt tilt{0.0, 1.0, true, 0.0, 1.0};
  const InnerMoments m = inner_moments(tilt, f, quad_nodes);
  return {m.mean, m.variance, m.log_z - std::exp(f)};
}

std::optional<TiltedMoments> poisson_tilted_moments(const Gaussian1D& cavity_f,
                                                    const Gaussian1D& cavity_y,
                                                    int quad_nodes) {
  if (!cavity_f.is_proper())
    throw std::domain_error("poisson_tilted_moments: f cavity must be proper");
  if (cavity_y.precision < 0.0)
    throw std::domain_error("poisson_tilted_moments: y cavity has negative precision");
  PoissonTilt tilt{cavity_f.mean(), cavity_f.variance(), !cavity_y.is_proper(), 0.0, 1.0};
  if (!tilt.y_uniform) {
    tilt.my = cavity_y.mean();
    tilt.vy = cavity_y.variance();
  }

  // Log-density of the f-marginal up to a constant, with its slope and
  // curvature. The slope -(f - mf) / vf + E[y | f] - e^f is positive far
  // left and negative far right.
  struct Point {
    double log_w, grad, curv;
  };
  auto at = [&](double f) {
    const InnerMoments m = inner_moments(tilt, f, quad_nodes);
    const double ef = std::exp(f);
    return Point{m.log_z - ef - 0.5 * (f - tilt.mf) * (f - tilt.mf) / tilt.vf,
                 -(f - tilt.mf) / tilt.vf + m.mean - ef, 1.0 / tilt.vf - m.variance + ef};
  };

  // Mode by safeguarded Newton.
  double lo = tilt.mf - 1.0, hi = tilt.mf + 1.0;
  while (at(lo).grad <= 0.0) lo -= 2.0 * (hi - lo);
  while (at(hi).grad >= 0.0) hi += 2.0 * (hi - lo);
  double f_centre = tilt.mf;
  Point p{};
  for (int it = 0; it < 200; ++it) {
    p = at(f_centre);
    if (p.grad > 0.0) lo = f_centre; else hi = f_centre;
    double next = p.curv > 0.0 ? f_centre + p.grad / p.curv : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - f_centre) < 1e-10 * (1.0 + std::abs(f_centre)) ||
                      hi - lo < 1e-12 * (1.0 + std::abs(lo));
    f_centre = next;
    if (done) break;
  }
  p = at(f_centre);
  const double top = p.log_w;
  const double f_scale = p.curv > 0.0 ? 1.0 / std::sqrt(p.curv) : std::sqrt(tilt.vf);

  // The marginal can be far from Gaussian (a shoulder towards large f that
  // ends in the double-exponential e^f cliff), so the outer integral uses
  // Gauss-Legendre panels on each side of the mode out to where the
  // log-density has dropped by between kDrop and 2 kDrop.
  constexpr double kDrop = 30.0;
  auto edge = [&](double dir) {
    double inside = f_centre, outside = std::numeric_limits<double>::quiet_NaN();
    double t = f_centre + dir * std::sqrt(2.0 * kDrop) * f_scale;
    for (int it = 0; it < 60; ++it) {
      const double drop = top - at(t).log_w;
      if (drop < kDrop) {
        inside = t;
        t = std::isnan(outside) ? f_centre + 2.0 * (t - f_centre) : 0.5 * (t + outside);
      } else if (drop > 2.0 * kDrop || std::isnan(drop)) {
        outside = t;
        t = 0.5 * (inside + t);
      } else {
        break;
      }
    }
    return t;
  };
  const double f_lo = edge(-1.0), f_hi = edge(1.0);

  const QuadratureRule& gl = gauss_legendre(quad_nodes);
  std::vector<double> log_w, fs, ys;
  log_w.reserve(4 * gl.nodes.size() * gl.nodes.size());
  fs.reserve(log_w.capacity());
  ys.reserve(log_w.capacity());
  for (const auto& [a, b] : {std::pair{f_lo, f_centre}, std::pair{f_centre, f_hi}}) {
    const double half = 0.5 * (b - a);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double f = a + half * (gl.nodes[k] + 1.0);
      const double log_wf = std::log(gl.weights[k] * half) - std::exp(f) -
                            0.5 * (f - tilt.mf) * (f - tilt.mf) / tilt.vf;
      const WeightedNodes inner = inner_nodes(tilt, f, quad_nodes);
      for (std::size_t j = 0; j < inner.x.size(); ++j) {
        log_w.push_back(log_wf + inner.log_w[j] + tilt.log_inner(inner.x[j], f));
        fs.push_back(f);
        ys.push_back(inner.x[j]);
      }
    }
  }
  if (log_w.empty()) return std::nullopt;

  const double log_total = log_sum_exp(log_w);
  if (!std::isfinite(log_total)) return std::nullopt;
  const double y_ref = ys[std::max_element(log_w.begin(), log_w.end()) - log_w.begin()];
  double sf = 0, sff = 0, sy = 0, syy = 0;
  for (std::size_t j = 0; j < log_w.size(); ++j) {
    const double w = std::exp(log_w[j] - log_total);
    const double df = fs[j] - f_centre;
    const double dy = ys[j] - y_ref;
    sf += w * df;
    sff += w * df * df;
    sy += w * dy;
    syy += w * dy * dy;
  }
  double log_z = log_total - 0.5 * std::log(2.0 * std::numbers::pi * tilt.vf);
  if (!tilt.y_uniform) log_z -= 0.5 * std::log(2.0 * std::numbers::pi * tilt.vy);
  TiltedMoments out;
  out.f = {f_centre + sf, sff - sf * sf, log_z};
  out.y = {y_ref + sy, syy - sy * sy, log_z};
  if (!(out.f.variance > 0.0) || !(out.y.variance > 0.0) || !std::isfinite(log_z))
    return std::nullopt;
  return out;
}

}  // namespace bam
