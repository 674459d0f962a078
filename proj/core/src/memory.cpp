#include "qosp/memory.hpp"

#include <cmath>
#include <string>

namespace qosp {

namespace {
constexpr double kFwhmPerSigma = 2.3548200450309493;
} // namespace

RetrievedPhoton retrieved_spectrum(const PulseSpec& read, double delay_ps,
                                   const ExperimentConfig& cfg, const SellmeierModel& model,
                                   const SpectralGrid& grid) {
  read.validate();
  grid.validate();
  if (delay_ps < 0.0) throw DomainError("delay must be >= 0");

  const double omega = cfg.phonon_freq_thz;
  const double center_out = output_wavelength(read.center_nm, cfg);
  // Nominal output width from the frequency shift alone; used only to check
  // that the shifted spectrum stays on the grid.
  const double jac = (center_out / read.center_nm) * (center_out / read.center_nm);
  const double width_out = read.fwhm_nm * jac;
  if (center_out - 2.5 * width_out < grid.lambda_min || center_out + 2.5 * width_out > grid.lambda_max)
    throw ResolutionError("shifted spectrum at " + std::to_string(center_out) + " nm leaves the grid");

  const double sigma_read = read.fwhm_nm / kFwhmPerSigma;
  const double lambda_in = frequency_to_wavelength(cfg.input_frequency_thz());
  const double k_in = wavevector(model, lambda_in);
  const double k_write = wavevector(model, cfg.write_pulse.center_nm);
  const double half_length = cfg.crystal_length_m / 2.0;

  SpectralDensity out{grid, std::vector<double>(grid.n_points, 0.0)};
  double weighted_sinc2 = 0.0;
  double weight = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double lambda_o = grid.wavelength(i);
    const double nu_o = wavelength_to_frequency(lambda_o);
    const double nu_r = nu_o - omega;
    if (!(nu_r > 0.0)) continue;
    const double lambda_r = frequency_to_wavelength(nu_r);
    if (!model.in_range(lambda_r) || !model.in_range(lambda_o)) continue;

    const double d = (lambda_r - read.center_nm) / sigma_read;
    const double read_intensity = std::exp(-0.5 * d * d);
    const double dk = k_in - wavevector(model, lambda_o) + wavevector(model, lambda_r) - k_write;
    const double s = sinc(dk * half_length);
    const double envelope = s * s;
    // d(lambda_r)/d(lambda_o) maps read-wavelength intensity density onto
    // the output-wavelength axis.
    const double jacobian = (lambda_r / lambda_o) * (lambda_r / lambda_o);
    out.values[i] = read_intensity * jacobian * envelope;
    weighted_sinc2 += read_intensity * jacobian * envelope;
    weight += read_intensity * jacobian;
  }
  if (!(weight > 0.0)) throw ResolutionError("read spectrum does not overlap the grid");
  normalize(out);

  RetrievedPhoton photon;
  photon.density = std::move(out);
  photon.center_nm = center_out;
  photon.efficiency = cfg.eta_fc0 * (weighted_sinc2 / weight) * storage_decay(delay_ps, cfg);
  return photon;
}

double storage_decay(double delay_ps, const ExperimentConfig& cfg) {
  if (delay_ps < 0.0) throw DomainError("delay must be >= 0, got " + std::to_string(delay_ps));
  return std::exp(-delay_ps / cfg.lifetime_ps);
}

double deconvolve_duration(double dip_fwhm_fs, double write_duration_fs) {
  if (write_duration_fs < 0.0) throw DomainError("probe duration must be >= 0");
  if (!(dip_fwhm_fs > write_duration_fs))
    throw DomainError("dip width must exceed the probe duration for a real deconvolution");
  return std::sqrt(dip_fwhm_fs * dip_fwhm_fs - write_duration_fs * write_duration_fs);
}

double absorption_dip(double input_write_delay_fs, const ExperimentConfig& cfg) {
  const double w2 = cfg.input_duration_fs * cfg.input_duration_fs +
                    cfg.write_duration_fs * cfg.write_duration_fs;
  const double t2 = input_write_delay_fs * input_write_delay_fs;
  return 1.0 - cfg.dip_depth * std::exp(-4.0 * std::log(2.0) * t2 / w2);
}

} // namespace qosp
