#pragma once

#include "qosp/spectral.hpp"

namespace qosp {

/// Physical constants and operating parameters of the diamond-memory
/// frequency-conversion experiment. Defaults reproduce the published
/// operating point; every field can be overridden from the JSON config.
struct ExperimentConfig {
  PulseSpec input_pulse{723.5, 4.1};  // heralded signal photon
  PulseSpec write_pulse{800.0, 5.0};  // strong write field
  double herald_wavelength_nm = 894.6;
  double phonon_freq_thz = 40.0;      // optical phonon shift
  double crystal_length_m = 2.3e-3;   // diamond length along propagation
  double lifetime_ps = 3.5;           // phonon storage lifetime
  double eta_fc0 = 0.011;             // output efficiency at zero detuning
  double eta_h = 1.3e-3;              // heralding efficiency incl. monochromator
  double p_noise = 3.8e-6;            // noise-photon detection probability per slot
  double p_herald = 2.0e-4;           // herald detection probability per slot
  double rep_rate_mhz = 80.0;         // oscillator repetition rate
  double mono_resolution_nm = 1.1;    // monochromator response FWHM
  double mono_efficiency = 0.10;      // monochromator throughput
  double write_duration_fs = 190.0;   // write pulse duration
  double input_duration_fs = 289.2;   // input photon duration
  double dip_depth = 0.18;            // absorption dip depth at zero delay
  double g2_source = 164.0;           // source input-herald cross-correlation

  void validate() const;

  /// Slot period 1/rep_rate, ns (12.5 ns at 80 MHz).
  double slot_period_ns() const { return 1e3 / rep_rate_mhz; }

  /// Input signal frequency implied by Raman resonance with the write field:
  /// nu_i = nu_w + phonon. Keeps the four-wave phase mismatch exactly zero
  /// when the read field sits at the write wavelength.
  double input_frequency_thz() const {
    return wavelength_to_frequency(write_pulse.center_nm) + phonon_freq_thz;
  }
};

} // namespace qosp
