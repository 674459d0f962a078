#pragma once

#include "qosp/config.hpp"
#include "qosp/dispersion.hpp"
#include "qosp/spectral.hpp"

namespace qosp {

/// Output photon predicted for one read setting: its normalized spectrum,
/// the nominal transduced center (read center blue-shifted by the phonon),
/// and the scalar retrieval efficiency
/// eta_fc0 * <sinc^2>_read-spectrum * exp(-delay/lifetime).
struct RetrievedPhoton {
  SpectralDensity density;
  double center_nm = 0.0;
  double efficiency = 0.0;
};

/// Spectrum of the retrieved photon. Each output component at frequency nu
/// inherits the read intensity at nu - phonon, weighted by the per-component
/// phase-matching envelope sinc^2(delta_k(nu) L / 2).
RetrievedPhoton retrieved_spectrum(const PulseSpec& read, double delay_ps,
                                   const ExperimentConfig& cfg, const SellmeierModel& model,
                                   const SpectralGrid& grid);

/// exp(-delay/lifetime). Throws DomainError for negative delay.
double storage_decay(double delay_ps, const ExperimentConfig& cfg);

/// Gaussian deconvolution sqrt(dip^2 - write^2), fs. The dip width must
/// exceed the probe width.
double deconvolve_duration(double dip_fwhm_fs, double write_duration_fs);

/// Relative input-herald coincidence rate while scanning the input-write
/// arrival delay: 1 - depth * exp(-4 ln2 t^2 / w^2) with w the input-write
/// cross-correlation FWHM. Minimum 1 - depth at t = 0, tends to 1 for
/// non-overlapping pulses.
double absorption_dip(double input_write_delay_fs, const ExperimentConfig& cfg);

} // namespace qosp
