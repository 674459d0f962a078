#include "qosp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qosp {

double g2_analytic_full(const ExperimentConfig& cfg, double eta_fc) {
  if (!(eta_fc >= 0.0 && eta_fc <= 1.0)) throw DomainError("eta_fc must lie in [0, 1]");
  const double numer = cfg.eta_h * eta_fc + cfg.p_noise;
  const double denom = cfg.p_herald * cfg.eta_h * eta_fc + cfg.p_noise;
  if (!(denom > 0.0))
    throw ConfigError("degenerate configuration: no noise and no conversion leaves g2 undefined");
  return numer / denom;
}

double g2_analytic_approx(const ExperimentConfig& cfg, double eta_fc) {
  if (!(cfg.p_noise > 0.0)) throw ConfigError("approximation requires p_noise > 0", "p_noise");
  return 1.0 + cfg.eta_h * eta_fc / cfg.p_noise;
}

double g2_analytic_full(const ExperimentConfig& cfg, const SellmeierModel& model,
                        double delta_omega_thz) {
  const double nu_read = wavelength_to_frequency(cfg.write_pulse.center_nm) + delta_omega_thz;
  const double read_nm = frequency_to_wavelength(nu_read);
  return g2_analytic_full(cfg, conversion_efficiency(model, read_nm, cfg));
}

std::vector<CurvePoint> g2_curve(const ExperimentConfig& cfg, const SellmeierModel& model,
                                 std::span<const double> read_wavelengths) {
  std::vector<CurvePoint> curve;
  curve.reserve(read_wavelengths.size());
  for (double read : read_wavelengths) {
    CurvePoint p;
    p.read_nm = read;
    p.output_nm = output_wavelength(read, cfg);
    p.eta_fc = conversion_efficiency(model, read, cfg);
    p.g2 = g2_analytic_full(cfg, p.eta_fc);
    curve.push_back(p);
  }
  return curve;
}

namespace {

struct Crossing {
  double read_nm = 0.0;
  double output_nm = 0.0;
};

Crossing interpolate_crossing(const CurvePoint& a, const CurvePoint& b, double level) {
  const double t = (level - a.g2) / (b.g2 - a.g2);
  return Crossing{a.read_nm + t * (b.read_nm - a.read_nm),
                  a.output_nm + t * (b.output_nm - a.output_nm)};
}

} // namespace

NonclassicalRange nonclassical_range(const std::vector<CurvePoint>& curve) {
  if (curve.size() < 3) throw ShapeError("range needs at least 3 curve points");
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (!(curve[i].read_nm > curve[i - 1].read_nm))
      throw ShapeError("curve must be strictly increasing in read wavelength");

  constexpr double kBound = 2.0;
  std::size_t peak = 0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].g2 > curve[peak].g2) peak = i;
  if (!(curve[peak].g2 > kBound)) return NonclassicalRange{}; // never non-classical

  // Nearest crossing on each side of the peak.
  std::size_t left = peak;
  while (left > 0 && curve[left - 1].g2 > kBound) --left;
  if (left == 0 && curve[0].g2 > kBound)
    throw RangeError("curve does not cross g2 = 2 below the peak");
  std::size_t right = peak;
  while (right + 1 < curve.size() && curve[right + 1].g2 > kBound) ++right;
  if (right + 1 == curve.size() && curve.back().g2 > kBound)
    throw RangeError("curve does not cross g2 = 2 above the peak");

  const Crossing lo = interpolate_crossing(curve[left - 1], curve[left], kBound);
  const Crossing hi = interpolate_crossing(curve[right], curve[right + 1], kBound);

  NonclassicalRange r;
  r.read_low_nm = lo.read_nm;
  r.read_high_nm = hi.read_nm;
  r.read_span_nm = hi.read_nm - lo.read_nm;
  // Blue-shifting flips the axis ordering; report an increasing window.
  r.output_low_nm = std::min(lo.output_nm, hi.output_nm);
  r.output_high_nm = std::max(lo.output_nm, hi.output_nm);
  r.output_span_nm = r.output_high_nm - r.output_low_nm;
  return r;
}

G2Estimate g2_from_counts(const CountRecord& r) {
  if (r.n_coincidence > std::min(r.n_herald, r.n_signal) || std::max(r.n_herald, r.n_signal) > r.n_slots)
    throw ShapeError("inconsistent count record");
  if (r.n_herald == 0 || r.n_signal == 0)
    throw EstimatorError("g2 estimator undefined with zero singles");

  const double n = static_cast<double>(r.n_slots);
  const double H = static_cast<double>(r.n_herald);
  const double S = static_cast<double>(r.n_signal);
  const double C = static_cast<double>(r.n_coincidence);

  G2Estimate est;
  est.inputs = r;
  est.value = C * n / (S * H);
  const double dC = n / (S * H);
  const double dS = C * n / (S * S * H);
  const double dH = C * n / (S * H * H);
  const double sC = poisson_sigma(C);
  const double sS = poisson_sigma(S);
  const double sH = poisson_sigma(H);
  est.std_error = std::sqrt(dC * dC * sC * sC + dS * dS * sS * sS + dH * dH * sH * sH);
  return est;
}

Classification cauchy_schwarz_check(double g2_sh, double g2_ss, double g2_hh) {
  if (g2_sh < 0.0 || g2_ss < 0.0 || g2_hh < 0.0) throw DomainError("correlations must be >= 0");
  return g2_sh > std::sqrt(g2_ss * g2_hh) ? Classification::non_classical
                                          : Classification::classical_compatible;
}

// ---------------------------------------------------------------------------
// Damped Gauss-Newton with step-halving line search.

namespace {

// f(x, theta) and its gradient with respect to theta.
using Model = std::function<double(double, const std::vector<double>&, std::vector<double>*)>;

double chi_square(const Model& f, std::span<const FitPoint> pts, const std::vector<double>& theta) {
  double chi2 = 0.0;
  for (const auto& p : pts) {
    const double r = (p.y - f(p.x, theta, nullptr)) / p.sigma;
    chi2 += r * r;
  }
  return chi2;
}

// Solve the symmetric positive definite system A x = b in place via
// Cholesky; returns false when A is numerically singular.
bool solve_spd(std::vector<double>& a, std::vector<double>& b, std::size_t p) {
  std::vector<double> l(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = a[i * p + j];
      for (std::size_t k = 0; k < j; ++k) sum -= l[i * p + k] * l[j * p + k];
      if (i == j) {
        if (!(sum > 0.0)) return false;
        l[i * p + i] = std::sqrt(sum);
      } else {
        l[i * p + j] = sum / l[j * p + j];
      }
    }
  }
  // forward then backward substitution
  for (std::size_t i = 0; i < p; ++i) {
    double sum = b[i];
    for (std::size_t k = 0; k < i; ++k) sum -= l[i * p + k] * b[k];
    b[i] = sum / l[i * p + i];
  }
  for (std::size_t ii = p; ii-- > 0;) {
    double sum = b[ii];
    for (std::size_t k = ii + 1; k < p; ++k) sum -= l[k * p + ii] * b[k];
    b[ii] = sum / l[ii * p + ii];
  }
  return true;
}

struct GaussNewtonOutcome {
  std::vector<double> theta;
  std::vector<double> errors;
  double chi2 = 0.0;
  bool converged = false;
  int iterations = 0;
};

GaussNewtonOutcome gauss_newton(const Model& f, std::span<const FitPoint> pts,
                                std::vector<double> theta) {
  constexpr int kMaxIterations = 200;
  constexpr double kStepTol = 1e-9;
  constexpr double kGradTol = 1e-12;

  const std::size_t p = theta.size();
  const std::size_t n = pts.size();
  std::vector<double> jac(n * p), resid(n), grad(p), normal(p * p), step(p), gradients(p);

  GaussNewtonOutcome out;
  double chi2 = chi_square(f, pts, theta);
  bool converged = false;
  int iter = 0;
  for (; iter < kMaxIterations && !converged; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      const double fi = f(pts[i].x, theta, &gradients);
      resid[i] = (pts[i].y - fi) / pts[i].sigma;
      for (std::size_t j = 0; j < p; ++j) jac[i * p + j] = gradients[j] / pts[i].sigma;
    }
    std::fill(normal.begin(), normal.end(), 0.0);
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        grad[j] += jac[i * p + j] * resid[i];
        for (std::size_t k = 0; k <= j; ++k) normal[j * p + k] += jac[i * p + j] * jac[i * p + k];
      }
    }
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = j + 1; k < p; ++k) normal[j * p + k] = normal[k * p + j];

    double gnorm = 0.0;
    for (double g : grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm < kGradTol) {
      converged = true;
      break;
    }

    step = grad;
    std::vector<double> normal_copy = normal;
    if (!solve_spd(normal_copy, step, p)) break; // singular normal equations

    // step-halving line search
    double lambda = 1.0;
    bool improved = false;
    std::vector<double> trial(p);
    for (int h = 0; h < 40; ++h) {
      for (std::size_t j = 0; j < p; ++j) trial[j] = theta[j] + lambda * step[j];
      const double trial_chi2 = chi_square(f, pts, trial);
      if (trial_chi2 <= chi2) {
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;

    double rel_step = 0.0;
    for (std::size_t j = 0; j < p; ++j)
      rel_step = std::max(rel_step, std::abs(lambda * step[j]) /
                                        (std::abs(theta[j]) + std::numeric_limits<double>::min()));
    for (std::size_t j = 0; j < p; ++j) theta[j] += lambda * step[j];
    chi2 = chi_square(f, pts, theta);
    if (rel_step < kStepTol) converged = true;
  }

  out.theta = theta;
  out.chi2 = chi2;
  out.converged = converged;
  out.iterations = iter;

  // Covariance from the local quadratic model: (J^T J)^{-1} at the optimum.
  out.errors.assign(p, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < n; ++i) {
    (void)f(pts[i].x, theta, &gradients);
    for (std::size_t j = 0; j < p; ++j) jac[i * p + j] = gradients[j] / pts[i].sigma;
  }
  std::fill(normal.begin(), normal.end(), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k < p; ++k) normal[j * p + k] += jac[i * p + j] * jac[i * p + k];
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<double> rhs(p, 0.0);
    rhs[j] = 1.0;
    std::vector<double> normal_copy = normal;
    if (solve_spd(normal_copy, rhs, p) && rhs[j] >= 0.0) out.errors[j] = std::sqrt(rhs[j]);
  }
  return out;
}

void require_sigmas(std::span<const FitPoint> pts) {
  for (const auto& p : pts)
    if (!(p.sigma > 0.0)) throw FitError("every fit point needs sigma > 0");
}

} // namespace

FitResult fit_exponential(std::span<const FitPoint> pts) {
  if (pts.size() < 2) throw FitError("exponential fit needs at least 2 points");
  require_sigmas(pts);
  double xmin = pts[0].x, xmax = pts[0].x;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  if (!(xmax > xmin)) throw FitError("exponential fit needs at least 2 distinct abscissae");

  // Log-linear initial guess over the positive points.
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (const auto& p : pts) {
    if (!(p.y > 0.0)) continue;
    const double w = 1.0, ly = std::log(p.y);
    sw += w;
    swx += w * p.x;
    swy += w * ly;
    swxx += w * p.x * p.x;
    swxy += w * p.x * ly;
  }
  double amp0 = 1.0, tau0 = xmax - xmin;
  const double det = sw * swxx - swx * swx;
  if (sw >= 2.0 && std::abs(det) > 1e-300) {
    const double slope = (sw * swxy - swx * swy) / det;
    const double intercept = (swy - slope * swx) / sw;
    amp0 = std::exp(intercept);
    tau0 = std::abs(slope) > 1e-12 ? -1.0 / slope : 10.0 * (xmax - xmin);
  } else {
    for (const auto& p : pts) amp0 = std::max(amp0, p.y);
  }

  const Model model = [](double x, const std::vector<double>& th, std::vector<double>* grad) {
    const double decay = std::exp(-x / th[1]);
    const double fx = th[0] * decay;
    if (grad) {
      grad->resize(2);
      (*grad)[0] = decay;
      (*grad)[1] = fx * x / (th[1] * th[1]);
    }
    return fx;
  };

  const auto gn = gauss_newton(model, pts, {amp0, tau0});
  FitResult res;
  res.parameters = {{"amplitude", gn.theta[0]}, {"lifetime", gn.theta[1]}};
  res.std_errors = {{"amplitude", gn.errors[0]}, {"lifetime", gn.errors[1]}};
  res.residual_norm = std::sqrt(gn.chi2);
  res.converged = gn.converged;
  res.iterations = gn.iterations;
  return res;
}

FitResult fit_gaussian(std::span<const FitPoint> pts) {
  if (pts.size() < 5) throw FitError("gaussian fit needs at least 5 points");
  require_sigmas(pts);

  double ymin = pts[0].y, ymax = pts[0].y, xpeak = pts[0].x;
  double xmin = pts[0].x, xmax = pts[0].x;
  for (const auto& p : pts) {
    if (p.y > ymax) {
      ymax = p.y;
      xpeak = p.x;
    }
    ymin = std::min(ymin, p.y);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  if (!(xmax > xmin)) throw FitError("gaussian fit needs at least 2 distinct abscissae");

  // Moment-based width about the peak.
  double swt = 0.0, swd2 = 0.0;
  for (const auto& p : pts) {
    const double w = std::max(p.y - ymin, 0.0);
    swt += w;
    swd2 += w * (p.x - xpeak) * (p.x - xpeak);
  }
  double fwhm0 = swt > 0.0 ? 2.3548200450309493 * std::sqrt(swd2 / swt) : (xmax - xmin) / 4.0;
  fwhm0 = std::max(fwhm0, (xmax - xmin) / static_cast<double>(pts.size()));

  const Model model = [](double x, const std::vector<double>& th, std::vector<double>* grad) {
    constexpr double k4ln2 = 2.772588722239781; // 4 ln 2
    const double c = th[0], w = th[1], a = th[2], b = th[3];
    const double d = x - c;
    const double e = std::exp(-k4ln2 * d * d / (w * w));
    if (grad) {
      grad->resize(4);
      (*grad)[0] = a * e * 2.0 * k4ln2 * d / (w * w);
      (*grad)[1] = a * e * 2.0 * k4ln2 * d * d / (w * w * w);
      (*grad)[2] = e;
      (*grad)[3] = 1.0;
    }
    return a * e + b;
  };

  const auto gn = gauss_newton(model, pts, {xpeak, fwhm0, ymax - ymin, ymin});
  FitResult res;
  res.parameters = {{"center", gn.theta[0]},
                    {"fwhm", std::abs(gn.theta[1])},
                    {"amplitude", gn.theta[2]},
                    {"offset", gn.theta[3]}};
  res.std_errors = {{"center", gn.errors[0]},
                    {"fwhm", gn.errors[1]},
                    {"amplitude", gn.errors[2]},
                    {"offset", gn.errors[3]}};
  res.residual_norm = std::sqrt(gn.chi2);
  res.converged = gn.converged;
  res.iterations = gn.iterations;
  return res;
}

} // namespace qosp
