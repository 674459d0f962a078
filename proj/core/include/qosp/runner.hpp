#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qosp/analysis.hpp"
#include "qosp/config.hpp"
#include "qosp/counting.hpp"
#include "qosp/dispersion.hpp"
#include "qosp/memory.hpp"

namespace qosp {

/// Fully resolved run configuration: experiment parameters, dispersion model
/// and spectral grid, plus the canonical JSON form they serialize to and its
/// hash (embedded in run sidecars for provenance).
struct LoadedConfig {
  ExperimentConfig cfg;
  SellmeierModel model;
  SpectralGrid grid;
  std::string canonical_json;
  std::string config_hash;
};

/// Built-in default configuration, no file needed.
LoadedConfig default_config();

/// Parse a JSON config string. Missing fields take the defaults above;
/// unknown keys are rejected; validation failures name the offending field.
LoadedConfig load_config_json(const std::string& text);

/// Read and parse a JSON config file.
LoadedConfig load_config(const std::filesystem::path& path);

enum class ScenarioKind { freq_sweep, delay_scan, bandwidth, histogram, g2_point };

std::string to_string(ScenarioKind kind);

/// One reproducible batch run. Each scenario kind mirrors one measurement of
/// the experiment: the conversion-range sweep, the storage-lifetime scan,
/// the bandwidth-conversion spectra, the coincidence time-bin histogram and
/// a single g2 operating point.
struct Scenario {
  ScenarioKind kind = ScenarioKind::g2_point;

  std::vector<double> read_wavelengths; // freq-sweep: read centers, nm
  std::vector<double> delays_ps;        // delay-scan
  std::vector<double> read_fwhms;       // bandwidth: read FWHM list, nm

  PulseSpec read{792.0, 3.5}; // read setting for single-point kinds
  double delay_ps = 0.0;

  std::uint64_t trials = 10'000'000; // Monte Carlo slots per point
  std::uint64_t seed = 1;
  bool analytic_only = false;
  unsigned shards = 0; // 0 = pick from hardware

  void validate() const;

  static Scenario freq_sweep_default();
  static Scenario delay_scan_default();
  static Scenario bandwidth_default();
  static Scenario histogram_default();
  static Scenario g2_point_default();
};

/// Execute a scenario, writing CSV/JSON outputs plus a JSON sidecar into
/// out_dir. Returns the paths written. Partial outputs are removed when the
/// run fails. Output bytes are reproducible for a fixed (config, seed),
/// independent of the shard count; wall-clock timestamps appear only in the
/// sidecar.
std::vector<std::filesystem::path> run_scenario(const Scenario& s, const LoadedConfig& loaded,
                                                const std::filesystem::path& out_dir);

/// Render a double with 9 significant digits (the serialization precision of
/// every numeric output).
std::string format_g9(double v);

/// FNV-1a 64-bit hash, hex-encoded; used for config fingerprints.
std::string fnv1a_hex(const std::string& bytes);

} // namespace qosp
