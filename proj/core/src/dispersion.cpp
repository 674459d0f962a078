#include "qosp/dispersion.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qosp {

void SellmeierModel::validate() const {
  if (terms.empty()) throw ConfigError("needs at least one term", "sellmeier.terms");
  if (!(valid_min_nm > 0.0) || !(valid_min_nm < valid_max_nm))
    throw ConfigError("requires 0 < min < max", "sellmeier.valid_range_nm");
  for (const auto& t : terms) {
    if (!(t.strength > 0.0)) throw ConfigError("strengths must be positive", "sellmeier.terms");
    if (t.pole_nm >= valid_min_nm && t.pole_nm <= valid_max_nm)
      throw ConfigError("pole inside validity window", "sellmeier.terms");
  }
}

SellmeierModel diamond_sellmeier() {
  // Classic two-pole fit to diamond index data; reproduces tabulated n to
  // a few 1e-5 across the visible and NIR.
  return SellmeierModel{{{0.3306, 175.0}, {4.3356, 106.0}}, 220.0, 2500.0};
}

double refractive_index(const SellmeierModel& model, double lambda_nm) {
  if (!model.in_range(lambda_nm))
    throw DomainError("wavelength " + std::to_string(lambda_nm) + " nm outside Sellmeier validity window");
  const double l2 = lambda_nm * lambda_nm;
  double n2 = 1.0;
  for (const auto& t : model.terms) n2 += t.strength * l2 / (l2 - t.pole_nm * t.pole_nm);
  if (!(n2 >= 1.0) || !std::isfinite(n2)) throw DomainError("Sellmeier model yields non-physical index");
  return std::sqrt(n2);
}

double wavevector(const SellmeierModel& model, double lambda_nm) {
  const double n = refractive_index(model, lambda_nm);
  return 2.0 * std::numbers::pi * n / (lambda_nm * 1e-9);
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

PhaseMatchResult phase_mismatch(const SellmeierModel& model, double read_center_nm,
                                const ExperimentConfig& cfg) {
  const double nu_read = wavelength_to_frequency(read_center_nm);
  const double nu_out = nu_read + cfg.phonon_freq_thz;
  const double lambda_out = frequency_to_wavelength(nu_out);
  const double lambda_in = frequency_to_wavelength(cfg.input_frequency_thz());

  PhaseMatchResult r;
  r.k_input = wavevector(model, lambda_in);
  r.k_output = wavevector(model, lambda_out);
  r.k_read = wavevector(model, read_center_nm);
  r.k_write = wavevector(model, cfg.write_pulse.center_nm);
  r.delta_k = r.k_input - r.k_output + r.k_read - r.k_write;
  const double s = sinc(r.delta_k * cfg.crystal_length_m / 2.0);
  r.sinc2 = s * s;
  return r;
}

double conversion_efficiency(const SellmeierModel& model, double read_center_nm,
                             const ExperimentConfig& cfg) {
  return cfg.eta_fc0 * phase_mismatch(model, read_center_nm, cfg).sinc2;
}

double output_wavelength(double read_nm, const ExperimentConfig& cfg) {
  return frequency_to_wavelength(wavelength_to_frequency(read_nm) + cfg.phonon_freq_thz);
}

} // namespace qosp
