#include "qosp/config.hpp"

namespace qosp {

namespace {

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("must lie in [0, 1]", name);
}

void check_positive(double v, const char* name) {
  if (!(v > 0.0)) throw ConfigError("must be positive", name);
}

} // namespace

void ExperimentConfig::validate() const {
  input_pulse.validate();
  write_pulse.validate();
  check_positive(herald_wavelength_nm, "herald_wavelength_nm");
  check_positive(phonon_freq_thz, "phonon_freq_thz");
  check_positive(crystal_length_m, "crystal_length_m");
  check_positive(lifetime_ps, "lifetime_ps");
  check_probability(eta_fc0, "eta_fc0");
  check_probability(eta_h, "eta_h");
  check_probability(p_noise, "p_noise");
  check_probability(p_herald, "p_herald");
  check_positive(rep_rate_mhz, "rep_rate_mhz");
  if (mono_resolution_nm < 0.0) throw ConfigError("must be >= 0", "mono_resolution_nm");
  check_probability(mono_efficiency, "mono_efficiency");
  check_positive(write_duration_fs, "write_duration_fs");
  check_positive(input_duration_fs, "input_duration_fs");
  check_probability(dip_depth, "dip_depth");
  check_positive(g2_source, "g2_source");
}

} // namespace qosp
