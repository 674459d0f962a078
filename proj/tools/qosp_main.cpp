// Command line front end: one subcommand per scenario kind, each mirroring
// one measurement of the frequency-conversion experiment.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qosp/runner.hpp"
#include "qosp/version.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::uint64_t trials = 10'000'000;
  bool analytic_only = false;
  unsigned shards = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON experiment config (defaults when omitted)");
  cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Monte Carlo seed")->capture_default_str();
  cmd->add_option("--trials", args.trials, "slots per point")->capture_default_str();
  cmd->add_flag("--analytic-only", args.analytic_only, "skip Monte Carlo counting");
  cmd->add_option("--shards", args.shards, "parallel shards (0 = auto; result is shard-independent)")
      ->capture_default_str();
}

qosp::Scenario with_common(qosp::Scenario s, const CommonArgs& args) {
  s.seed = args.seed;
  s.trials = args.trials;
  s.analytic_only = args.analytic_only;
  s.shards = args.shards;
  return s;
}

int run(const CommonArgs& args, const qosp::Scenario& scenario) {
  const qosp::LoadedConfig loaded =
      args.config_path.empty() ? qosp::default_config() : qosp::load_config(args.config_path);
  const auto written = qosp::run_scenario(scenario, loaded, args.out_dir);
  for (const auto& p : written) std::printf("wrote %s\n", p.c_str());
  return 0;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v;
  if (n == 1) {
    v.push_back(lo);
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diamond-memory photon frequency/bandwidth conversion simulator"};
  app.set_version_flag("--version", std::string(qosp::kVersion));
  app.require_subcommand(1);

  CommonArgs common;

  // freq-sweep
  auto* sweep = app.add_subcommand("freq-sweep", "g2 versus read wavelength (conversion range)");
  double sweep_lo = 784.0, sweep_hi = 812.0;
  std::size_t sweep_points = 29;
  double sweep_fwhm = 3.5, sweep_delay = 0.0;
  add_common(sweep, common);
  sweep->add_option("--read-min", sweep_lo, "lowest read center, nm")->capture_default_str();
  sweep->add_option("--read-max", sweep_hi, "highest read center, nm")->capture_default_str();
  sweep->add_option("--points", sweep_points, "sweep points")->capture_default_str();
  sweep->add_option("--read-fwhm", sweep_fwhm, "read bandwidth, nm")->capture_default_str();
  sweep->add_option("--delay", sweep_delay, "read-write delay, ps")->capture_default_str();

  // delay-scan
  auto* scan = app.add_subcommand("delay-scan", "retrieval counts versus storage time");
  double scan_lo = 0.0, scan_hi = 10.0;
  std::size_t scan_points = 15;
  double scan_read = 792.0, scan_fwhm = 3.5;
  add_common(scan, common);
  scan->add_option("--delay-min", scan_lo, "first delay, ps")->capture_default_str();
  scan->add_option("--delay-max", scan_hi, "last delay, ps")->capture_default_str();
  scan->add_option("--points", scan_points, "scan points")->capture_default_str();
  scan->add_option("--read-center", scan_read, "read center, nm")->capture_default_str();
  scan->add_option("--read-fwhm", scan_fwhm, "read bandwidth, nm")->capture_default_str();

  // bandwidth
  auto* band = app.add_subcommand("bandwidth", "output spectra for a list of read bandwidths");
  std::vector<double> band_fwhms{2.1, 12.1};
  double band_center = 801.0, band_delay = 0.0;
  add_common(band, common);
  band->add_option("--read-center", band_center, "read center, nm")->capture_default_str();
  band->add_option("--read-fwhms", band_fwhms, "read FWHM list, nm")->capture_default_str();
  band->add_option("--delay", band_delay, "read-write delay, ps")->capture_default_str();

  // histogram
  auto* hist = app.add_subcommand("histogram", "signal-herald coincidences versus slot offset");
  double hist_read = 792.0, hist_fwhm = 3.5, hist_delay = 0.0;
  add_common(hist, common);
  hist->add_option("--read-center", hist_read, "read center, nm")->capture_default_str();
  hist->add_option("--read-fwhm", hist_fwhm, "read bandwidth, nm")->capture_default_str();
  hist->add_option("--delay", hist_delay, "read-write delay, ps")->capture_default_str();

  // g2-point
  auto* point = app.add_subcommand("g2-point", "cross-correlation at one operating point");
  double point_read = 792.0, point_fwhm = 3.5, point_delay = 0.0;
  add_common(point, common);
  point->add_option("--read-center", point_read, "read center, nm")->capture_default_str();
  point->add_option("--read-fwhm", point_fwhm, "read bandwidth, nm")->capture_default_str();
  point->add_option("--delay", point_delay, "read-write delay, ps")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    qosp::Scenario s;
    if (sweep->parsed()) {
      s = with_common(qosp::Scenario::freq_sweep_default(), common);
      s.read_wavelengths = linspace(sweep_lo, sweep_hi, sweep_points);
      s.read.fwhm_nm = sweep_fwhm;
      s.delay_ps = sweep_delay;
    } else if (scan->parsed()) {
      s = with_common(qosp::Scenario::delay_scan_default(), common);
      s.delays_ps = linspace(scan_lo, scan_hi, scan_points);
      s.read = qosp::PulseSpec{scan_read, scan_fwhm};
    } else if (band->parsed()) {
      s = with_common(qosp::Scenario::bandwidth_default(), common);
      s.read_fwhms = band_fwhms;
      s.read.center_nm = band_center;
      s.delay_ps = band_delay;
    } else if (hist->parsed()) {
      s = with_common(qosp::Scenario::histogram_default(), common);
      s.read = qosp::PulseSpec{hist_read, hist_fwhm};
      s.delay_ps = hist_delay;
    } else {
      s = with_common(qosp::Scenario::g2_point_default(), common);
      s.read = qosp::PulseSpec{point_read, point_fwhm};
      s.delay_ps = point_delay;
    }
    return run(common, s);
  } catch (const qosp::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntimeError;
  }
}
