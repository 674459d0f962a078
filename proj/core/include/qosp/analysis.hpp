#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qosp/config.hpp"
#include "qosp/counting.hpp"
#include "qosp/dispersion.hpp"

namespace qosp {

/// Signal-herald cross-correlation estimate with its propagated error.
struct G2Estimate {
  double value = 0.0;
  double std_error = 0.0;
  CountRecord inputs;
};

/// Full-form analytic cross-correlation
///   g2 = (eta_h*eta_fc + P_n) / (P_h*eta_h*eta_fc + P_n)
/// for an explicit conversion efficiency eta_fc.
double g2_analytic_full(const ExperimentConfig& cfg, double eta_fc);

/// Signal-to-noise approximation g2 ~= 1 + eta_h*eta_fc/P_n, valid when
/// P_h*eta_h*eta_fc << P_n.
double g2_analytic_approx(const ExperimentConfig& cfg, double eta_fc);

/// Full form with eta_fc(delta_omega) evaluated from the dispersion model;
/// delta_omega_thz is the output-minus-input frequency detuning, equal to
/// the read-minus-write detuning.
double g2_analytic_full(const ExperimentConfig& cfg, const SellmeierModel& model,
                        double delta_omega_thz);

/// One point of the conversion-range curve.
struct CurvePoint {
  double read_nm = 0.0;
  double output_nm = 0.0;
  double eta_fc = 0.0;
  double g2 = 0.0;
};

/// Analytic g2 versus read wavelength.
std::vector<CurvePoint> g2_curve(const ExperimentConfig& cfg, const SellmeierModel& model,
                                 std::span<const double> read_wavelengths);

/// Wavelength window over which the curve stays above the classical bound
/// g2 = 2, interpolated linearly between samples; reported on both the read
/// and the output wavelength axes. A curve whose peak never reaches 2 has
/// empty (zero) span; a curve above 2 that never crosses back is an error.
struct NonclassicalRange {
  double read_low_nm = 0.0;
  double read_high_nm = 0.0;
  double read_span_nm = 0.0;
  double output_low_nm = 0.0;
  double output_high_nm = 0.0;
  double output_span_nm = 0.0;
};

NonclassicalRange nonclassical_range(const std::vector<CurvePoint>& curve);

/// g2 = n_c * n_slots / (n_s * n_h) with first-order Poisson propagation
/// (sigma = sqrt(N), floored at 1 for zero counts).
G2Estimate g2_from_counts(const CountRecord& r);

enum class Classification { classical_compatible, non_classical };

/// Cauchy-Schwarz test: non-classical iff g2_sh > sqrt(g2_ss * g2_hh).
/// Thermal marginals give the customary bound of 2.
Classification cauchy_schwarz_check(double g2_sh, double g2_ss = 2.0, double g2_hh = 2.0);

/// Weighted nonlinear least-squares result. Parameter errors come from the
/// local quadratic model of the chi-square objective at the optimum.
struct FitResult {
  std::map<std::string, double> parameters;
  std::map<std::string, double> std_errors;
  double residual_norm = 0.0; // sqrt(chi^2)
  bool converged = false;
  int iterations = 0;
};

struct FitPoint {
  double x = 0.0;
  double y = 0.0;
  double sigma = 1.0;
};

/// Fit A*exp(-t/T); parameters "amplitude" and "lifetime". Needs >= 3 points
/// on >= 2 distinct abscissae (2 points determine the model exactly and are
/// accepted).
FitResult fit_exponential(std::span<const FitPoint> points);

/// Fit amplitude*exp(-4 ln2 (x-center)^2/fwhm^2) + offset; parameters
/// "center", "fwhm", "amplitude", "offset". Needs >= 5 points spanning the
/// peak.
FitResult fit_gaussian(std::span<const FitPoint> points);

/// Poisson sigma with the unit floor used for count data.
inline double poisson_sigma(double counts) { return counts > 1.0 ? std::sqrt(counts) : 1.0; }

} // namespace qosp
