#pragma once

#include <utility>
#include <vector>

#include "qosp/config.hpp"
#include "qosp/errors.hpp"

namespace qosp {

/// One Sellmeier resonance: strength A and pole wavelength (nm), contributing
/// A*lambda^2/(lambda^2 - pole^2) to n^2 - 1.
struct SellmeierTerm {
  double strength = 0.0;
  double pole_nm = 0.0;
};

/// n(lambda) = sqrt(1 + sum_j A_j lambda^2 / (lambda^2 - pole_j^2)) on a
/// stated validity window. No extrapolation outside the window.
struct SellmeierModel {
  std::vector<SellmeierTerm> terms;
  double valid_min_nm = 0.0;
  double valid_max_nm = 0.0;

  void validate() const;
  bool in_range(double lambda_nm) const { return lambda_nm >= valid_min_nm && lambda_nm <= valid_max_nm; }
};

/// Two-pole dispersion model for CVD diamond (poles near 106 nm and 175 nm).
SellmeierModel diamond_sellmeier();

/// Refractive index at lambda (nm). Throws DomainError outside the model's
/// validity window.
double refractive_index(const SellmeierModel& model, double lambda_nm);

/// Wavevector magnitude k = 2*pi*n/lambda, rad/m.
double wavevector(const SellmeierModel& model, double lambda_nm);

/// sin(x)/x with a series branch near zero, so sinc(0) == 1 exactly.
double sinc(double x);

/// Wavevectors and residual mismatch of the four-wave transduction
/// input(i) -> phonon -> output(o) driven by write(w) and read(r) fields.
struct PhaseMatchResult {
  double k_input = 0.0;   // rad/m
  double k_output = 0.0;
  double k_read = 0.0;
  double k_write = 0.0;
  double delta_k = 0.0;   // k_i - k_o + k_r - k_w
  double sinc2 = 0.0;     // sinc^2(delta_k * L / 2), in [0, 1]
};

/// Collinear phase mismatch for a read field centered at read_center_nm.
/// The output frequency is the read frequency blue-shifted by the phonon,
/// and the input frequency is tied to the write field the same way, so the
/// mismatch vanishes identically when read == write.
PhaseMatchResult phase_mismatch(const SellmeierModel& model, double read_center_nm,
                                const ExperimentConfig& cfg);

/// eta_fc(read) = eta_fc0 * sinc^2(delta_k L / 2). In [0, eta_fc0], equal to
/// eta_fc0 only at zero mismatch.
double conversion_efficiency(const SellmeierModel& model, double read_center_nm,
                             const ExperimentConfig& cfg);

/// Output wavelength for a read wavelength: lambda(nu_read + phonon).
double output_wavelength(double read_nm, const ExperimentConfig& cfg);

} // namespace qosp
