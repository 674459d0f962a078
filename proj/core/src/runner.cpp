#include "qosp/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qosp/version.hpp"

namespace qosp {

using json = nlohmann::json;

std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Round to the 9 significant digits used for serialization, so JSON numbers
// match their CSV counterparts byte for byte.
double round9(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_g9(v).c_str(), nullptr);
}

double require_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError("expected a number", path);
  return j.get<double>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known,
                    const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) ==
        known.end())
      throw ConfigError("unknown key", prefix.empty() ? key : prefix + "." + key);
  }
}

PulseSpec parse_pulse(const json& j, const std::string& path, PulseSpec fallback) {
  if (!j.is_object()) throw ConfigError("expected an object", path);
  reject_unknown(j, {"center_nm", "fwhm_nm"}, path);
  PulseSpec p = fallback;
  if (j.contains("center_nm")) p.center_nm = require_number(j["center_nm"], path + ".center_nm");
  if (j.contains("fwhm_nm")) p.fwhm_nm = require_number(j["fwhm_nm"], path + ".fwhm_nm");
  return p;
}

json pulse_to_json(const PulseSpec& p) {
  return json{{"center_nm", round9(p.center_nm)}, {"fwhm_nm", round9(p.fwhm_nm)}};
}

json config_to_json(const ExperimentConfig& c, const SellmeierModel& m, const SpectralGrid& g) {
  json terms = json::array();
  for (const auto& t : m.terms)
    terms.push_back(json{{"strength", round9(t.strength)}, {"pole_nm", round9(t.pole_nm)}});
  return json{
      {"input_pulse", pulse_to_json(c.input_pulse)},
      {"write_pulse", pulse_to_json(c.write_pulse)},
      {"herald_wavelength_nm", round9(c.herald_wavelength_nm)},
      {"phonon_freq_thz", round9(c.phonon_freq_thz)},
      {"crystal_length_m", round9(c.crystal_length_m)},
      {"lifetime_ps", round9(c.lifetime_ps)},
      {"eta_fc0", round9(c.eta_fc0)},
      {"eta_h", round9(c.eta_h)},
      {"p_noise", round9(c.p_noise)},
      {"p_herald", round9(c.p_herald)},
      {"rep_rate_mhz", round9(c.rep_rate_mhz)},
      {"mono_resolution_nm", round9(c.mono_resolution_nm)},
      {"mono_efficiency", round9(c.mono_efficiency)},
      {"write_duration_fs", round9(c.write_duration_fs)},
      {"input_duration_fs", round9(c.input_duration_fs)},
      {"dip_depth", round9(c.dip_depth)},
      {"g2_source", round9(c.g2_source)},
      {"sellmeier",
       json{{"terms", terms},
            {"valid_range_nm", json::array({round9(m.valid_min_nm), round9(m.valid_max_nm)})}}},
      {"grid", json{{"lambda_min_nm", round9(g.lambda_min)},
                    {"lambda_max_nm", round9(g.lambda_max)},
                    {"n_points", g.n_points}}},
  };
}

LoadedConfig finalize(ExperimentConfig cfg, SellmeierModel model, SpectralGrid grid) {
  cfg.validate();
  model.validate();
  grid.validate();
  LoadedConfig lc;
  lc.cfg = cfg;
  lc.model = model;
  lc.grid = grid;
  lc.canonical_json = config_to_json(cfg, model, grid).dump();
  lc.config_hash = fnv1a_hex(lc.canonical_json);
  return lc;
}

} // namespace

LoadedConfig default_config() {
  return finalize(ExperimentConfig{}, diamond_sellmeier(), default_grid());
}

LoadedConfig load_config_json(const std::string& text) {
  json root = json::parse(text, nullptr, false);
  if (root.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!root.is_object()) throw ConfigError("config root must be a JSON object");

  reject_unknown(root,
                 {"input_pulse", "write_pulse", "herald_wavelength_nm", "phonon_freq_thz",
                  "crystal_length_m", "lifetime_ps", "eta_fc0", "eta_h", "p_noise", "p_herald",
                  "rep_rate_mhz", "mono_resolution_nm", "mono_efficiency", "write_duration_fs",
                  "input_duration_fs", "dip_depth", "g2_source", "sellmeier", "grid"},
                 "");

  ExperimentConfig cfg;
  if (root.contains("input_pulse")) cfg.input_pulse = parse_pulse(root["input_pulse"], "input_pulse", cfg.input_pulse);
  if (root.contains("write_pulse")) cfg.write_pulse = parse_pulse(root["write_pulse"], "write_pulse", cfg.write_pulse);

  const auto scalar = [&](const char* key, double& target) {
    if (root.contains(key)) target = require_number(root[key], key);
  };
  scalar("herald_wavelength_nm", cfg.herald_wavelength_nm);
  scalar("phonon_freq_thz", cfg.phonon_freq_thz);
  scalar("crystal_length_m", cfg.crystal_length_m);
  scalar("lifetime_ps", cfg.lifetime_ps);
  scalar("eta_fc0", cfg.eta_fc0);
  scalar("eta_h", cfg.eta_h);
  scalar("p_noise", cfg.p_noise);
  scalar("p_herald", cfg.p_herald);
  scalar("rep_rate_mhz", cfg.rep_rate_mhz);
  scalar("mono_resolution_nm", cfg.mono_resolution_nm);
  scalar("mono_efficiency", cfg.mono_efficiency);
  scalar("write_duration_fs", cfg.write_duration_fs);
  scalar("input_duration_fs", cfg.input_duration_fs);
  scalar("dip_depth", cfg.dip_depth);
  scalar("g2_source", cfg.g2_source);

  SellmeierModel model = diamond_sellmeier();
  if (root.contains("sellmeier")) {
    const json& s = root["sellmeier"];
    if (!s.is_object()) throw ConfigError("expected an object", "sellmeier");
    reject_unknown(s, {"terms", "valid_range_nm"}, "sellmeier");
    if (s.contains("terms")) {
      if (!s["terms"].is_array() || s["terms"].empty())
        throw ConfigError("expected a non-empty array", "sellmeier.terms");
      model.terms.clear();
      for (const auto& t : s["terms"]) {
        if (!t.is_object()) throw ConfigError("expected objects", "sellmeier.terms");
        reject_unknown(t, {"strength", "pole_nm"}, "sellmeier.terms");
        SellmeierTerm term;
        term.strength = require_number(t.value("strength", json()), "sellmeier.terms.strength");
        term.pole_nm = require_number(t.value("pole_nm", json()), "sellmeier.terms.pole_nm");
        model.terms.push_back(term);
      }
    }
    if (s.contains("valid_range_nm")) {
      const json& r = s["valid_range_nm"];
      if (!r.is_array() || r.size() != 2)
        throw ConfigError("expected [min_nm, max_nm]", "sellmeier.valid_range_nm");
      model.valid_min_nm = require_number(r[0], "sellmeier.valid_range_nm[0]");
      model.valid_max_nm = require_number(r[1], "sellmeier.valid_range_nm[1]");
    }
  }

  SpectralGrid grid = default_grid();
  if (root.contains("grid")) {
    const json& g = root["grid"];
    if (!g.is_object()) throw ConfigError("expected an object", "grid");
    reject_unknown(g, {"lambda_min_nm", "lambda_max_nm", "n_points"}, "grid");
    if (g.contains("lambda_min_nm")) grid.lambda_min = require_number(g["lambda_min_nm"], "grid.lambda_min_nm");
    if (g.contains("lambda_max_nm")) grid.lambda_max = require_number(g["lambda_max_nm"], "grid.lambda_max_nm");
    if (g.contains("n_points")) {
      if (!g["n_points"].is_number_unsigned()) throw ConfigError("expected a positive integer", "grid.n_points");
      grid.n_points = g["n_points"].get<std::size_t>();
    }
  }

  return finalize(cfg, model, grid);
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_config_json(buf.str());
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::freq_sweep: return "freq-sweep";
    case ScenarioKind::delay_scan: return "delay-scan";
    case ScenarioKind::bandwidth: return "bandwidth";
    case ScenarioKind::histogram: return "histogram";
    case ScenarioKind::g2_point: return "g2-point";
  }
  return "unknown";
}

void Scenario::validate() const {
  if (trials < 1) throw ConfigError("trials must be >= 1", "trials");
  switch (kind) {
    case ScenarioKind::freq_sweep:
      if (read_wavelengths.empty()) throw ConfigError("needs read wavelengths", "read_wavelengths");
      break;
    case ScenarioKind::delay_scan:
      if (delays_ps.empty()) throw ConfigError("needs delays", "delays_ps");
      for (double d : delays_ps)
        if (d < 0.0) throw ConfigError("delays must be >= 0", "delays_ps");
      break;
    case ScenarioKind::bandwidth:
      if (read_fwhms.empty()) throw ConfigError("needs read FWHMs", "read_fwhms");
      break;
    case ScenarioKind::histogram:
    case ScenarioKind::g2_point:
      break;
  }
  if (delay_ps < 0.0) throw ConfigError("delay must be >= 0", "delay_ps");
}

Scenario Scenario::freq_sweep_default() {
  Scenario s;
  s.kind = ScenarioKind::freq_sweep;
  for (int nm = 784; nm <= 812; ++nm) s.read_wavelengths.push_back(static_cast<double>(nm));
  s.read = PulseSpec{800.0, 3.5};
  return s;
}

Scenario Scenario::delay_scan_default() {
  Scenario s;
  s.kind = ScenarioKind::delay_scan;
  for (int i = 0; i < 15; ++i) s.delays_ps.push_back(10.0 * static_cast<double>(i) / 14.0);
  s.read = PulseSpec{792.0, 3.5};
  return s;
}

Scenario Scenario::bandwidth_default() {
  Scenario s;
  s.kind = ScenarioKind::bandwidth;
  s.read_fwhms = {2.1, 12.1};
  s.read = PulseSpec{801.0, 3.5};
  return s;
}

Scenario Scenario::histogram_default() {
  Scenario s;
  s.kind = ScenarioKind::histogram;
  s.read = PulseSpec{792.0, 3.5};
  return s;
}

Scenario Scenario::g2_point_default() {
  Scenario s;
  s.kind = ScenarioKind::g2_point;
  s.read = PulseSpec{792.0, 3.5};
  return s;
}

namespace {

class OutputSet {
public:
  explicit OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  std::ofstream open(const std::string& name) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    written_.push_back(path);
    return out;
  }

  void write_json(const std::string& name, const json& j) {
    auto out = open(name);
    out << j.dump(2) << '\n';
  }

  const std::vector<std::filesystem::path>& written() const { return written_; }

  void remove_all() {
    for (const auto& p : written_) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  }

private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

std::string utc_now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string file_stem(ScenarioKind kind) {
  std::string name = to_string(kind);
  std::replace(name.begin(), name.end(), '-', '_');
  return name;
}

void write_sidecar(OutputSet& out, const Scenario& s, const LoadedConfig& loaded) {
  json meta{{"scenario", to_string(s.kind)},
            {"seed", s.seed},
            {"trials", s.trials},
            {"analytic_only", s.analytic_only},
            {"config_hash", loaded.config_hash},
            {"tool_version", kVersion},
            {"generated_utc", utc_now_iso8601()}};
  out.write_json(file_stem(s.kind) + "_meta.json", meta);
}

json fit_to_json(const FitResult& fit) {
  json pars = json::object();
  json errs = json::object();
  for (const auto& [k, v] : fit.parameters) pars[k] = round9(v);
  for (const auto& [k, v] : fit.std_errors) errs[k] = round9(v);
  return json{{"parameters", pars},
              {"std_errors", errs},
              {"residual_norm", round9(fit.residual_norm)},
              {"converged", fit.converged},
              {"iterations", fit.iterations}};
}

void write_spectrum_csv(OutputSet& out, const std::string& name, const SpectralDensity& s) {
  auto csv = out.open(name);
  csv << "wavelength_nm,intensity\n";
  for (std::size_t i = 0; i < s.grid.n_points; ++i)
    csv << format_g9(s.grid.wavelength(i)) << ',' << format_g9(s.values[i]) << '\n';
}

void run_freq_sweep(const Scenario& s, const LoadedConfig& loaded, OutputSet& out) {
  const auto curve = g2_curve(loaded.cfg, loaded.model, s.read_wavelengths);

  auto csv = out.open("freq_sweep.csv");
  csv << "read_nm,output_center_nm,eta_fc,g2_analytic,g2_mc,g2_mc_err\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    double g2_mc = std::numeric_limits<double>::quiet_NaN();
    double g2_err = std::numeric_limits<double>::quiet_NaN();
    if (!s.analytic_only) {
      const PulseSpec read{curve[i].read_nm, s.read.fwhm_nm};
      const auto rec = simulate_slots(loaded.cfg, loaded.model, read, s.delay_ps, s.trials, s.seed,
                                      static_cast<std::uint64_t>(i), s.shards);
      if (rec.n_herald > 0 && rec.n_signal > 0) {
        const auto est = g2_from_counts(rec);
        g2_mc = est.value;
        g2_err = est.std_error;
      }
    }
    csv << format_g9(curve[i].read_nm) << ',' << format_g9(curve[i].output_nm) << ','
        << format_g9(curve[i].eta_fc) << ',' << format_g9(curve[i].g2) << ',' << format_g9(g2_mc)
        << ',' << format_g9(g2_err) << '\n';
  }

  json summary{{"peak_g2", 0.0}, {"peak_read_nm", 0.0}};
  std::size_t peak = 0;
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (curve[i].g2 > curve[peak].g2) peak = i;
  summary["peak_g2"] = round9(curve[peak].g2);
  summary["peak_read_nm"] = round9(curve[peak].read_nm);
  try {
    const auto range = nonclassical_range(curve);
    summary["nonclassical"] = json{{"read_low_nm", round9(range.read_low_nm)},
                                   {"read_high_nm", round9(range.read_high_nm)},
                                   {"read_span_nm", round9(range.read_span_nm)},
                                   {"output_low_nm", round9(range.output_low_nm)},
                                   {"output_high_nm", round9(range.output_high_nm)},
                                   {"output_span_nm", round9(range.output_span_nm)}};
  } catch (const RangeError& e) {
    summary["nonclassical"] = json{{"error", e.what()}};
  }
  out.write_json("freq_sweep_summary.json", summary);
}

void run_delay_scan(const Scenario& s, const LoadedConfig& loaded, OutputSet& out) {
  struct Row {
    double delay, counts, noise, sigma;
  };
  std::vector<Row> rows;
  rows.reserve(s.delays_ps.size());

  for (std::size_t i = 0; i < s.delays_ps.size(); ++i) {
    const double delay = s.delays_ps[i];
    if (s.analytic_only) {
      const auto probs = slot_probabilities(loaded.cfg, loaded.model, s.read, delay);
      const double n = static_cast<double>(s.trials);
      const double bin0 = n * probs.herald * probs.signal_given_herald();
      const double acc = n * probs.signal() * probs.herald;
      rows.push_back({delay, bin0, acc, 1.0});
    } else {
      const auto sim = coincidence_histogram(loaded.cfg, loaded.model, s.read, delay, s.trials,
                                             s.seed, static_cast<std::uint64_t>(i), s.shards);
      const double bin0 = static_cast<double>(
          sim.histogram.counts[static_cast<std::size_t>(sim.histogram.bin_offsets.size() / 2)]);
      const double acc = accidental_estimate(sim.histogram);
      rows.push_back({delay, bin0, acc, 0.0});
    }
  }

  std::vector<FitPoint> pts;
  pts.reserve(rows.size());
  for (auto& r : rows) {
    const double sigma = s.analytic_only ? 1.0 : std::max(1.0, std::sqrt(r.counts + r.noise / 4.0));
    r.sigma = sigma;
    pts.push_back(FitPoint{r.delay, r.counts - r.noise, sigma});
  }
  const FitResult fit = fit_exponential(pts);
  const double amp = fit.parameters.at("amplitude");
  const double tau = fit.parameters.at("lifetime");

  auto csv = out.open("delay_scan.csv");
  csv << "delay_ps,counts,noise,fit_overlay\n";
  for (const auto& r : rows)
    csv << format_g9(r.delay) << ',' << format_g9(r.counts) << ',' << format_g9(r.noise) << ','
        << format_g9(amp * std::exp(-r.delay / tau)) << '\n';

  json summary = fit_to_json(fit);
  summary["model"] = "amplitude*exp(-delay/lifetime) on noise-subtracted counts";
  summary["n_points"] = rows.size();
  out.write_json("delay_scan_fit.json", summary);
}

void run_bandwidth(const Scenario& s, const LoadedConfig& loaded, OutputSet& out) {
  const ExperimentConfig& cfg = loaded.cfg;
  const double res = cfg.mono_resolution_nm;

  const auto input = gaussian_spectrum(cfg.input_pulse, loaded.grid);
  write_spectrum_csv(out, "bandwidth_input_raw.csv", input);
  const auto input_conv = convolve_response(input, res);
  write_spectrum_csv(out, "bandwidth_input_convolved.csv", input_conv);

  json cases = json::array();
  for (double f : s.read_fwhms) {
    const PulseSpec read{s.read.center_nm, f};
    const std::string tag = format_g9(f);

    const auto read_spec = gaussian_spectrum(read, loaded.grid);
    write_spectrum_csv(out, "bandwidth_read_" + tag + "nm_raw.csv", read_spec);
    const auto read_conv = convolve_response(read_spec, res);
    write_spectrum_csv(out, "bandwidth_read_" + tag + "nm_convolved.csv", read_conv);

    const auto photon = retrieved_spectrum(read, s.delay_ps, cfg, loaded.model, loaded.grid);
    write_spectrum_csv(out, "bandwidth_output_" + tag + "nm_raw.csv", photon.density);
    const auto out_conv = convolve_response(photon.density, res);
    write_spectrum_csv(out, "bandwidth_output_" + tag + "nm_convolved.csv", out_conv);

    cases.push_back(json{{"read_fwhm_nm", round9(f)},
                         {"read_center_nm", round9(read.center_nm)},
                         {"output_center_nm", round9(photon.center_nm)},
                         {"output_fwhm_nm", round9(fwhm(photon.density))},
                         {"output_fwhm_convolved_nm", round9(fwhm(out_conv))},
                         {"retrieval_efficiency", round9(photon.efficiency)}});
  }

  json summary{{"input_fwhm_nm", round9(fwhm(input))},
               {"input_fwhm_convolved_nm", round9(fwhm(input_conv))},
               {"mono_resolution_nm", round9(res)},
               {"cases", cases}};
  out.write_json("bandwidth_summary.json", summary);
}

void run_histogram(const Scenario& s, const LoadedConfig& loaded, OutputSet& out) {
  const double period_ns = loaded.cfg.slot_period_ns();
  auto csv = out.open("histogram.csv");
  csv << "bin_offset_ns,counts\n";

  if (s.analytic_only) {
    const auto probs = slot_probabilities(loaded.cfg, loaded.model, s.read, s.delay_ps);
    const double n = static_cast<double>(s.trials);
    for (int off = -2; off <= 2; ++off) {
      const double expected =
          off == 0 ? n * probs.herald * probs.signal_given_herald()
                   : (n - std::abs(off)) * probs.signal() * probs.herald;
      csv << format_g9(off * period_ns) << ',' << format_g9(expected) << '\n';
    }
    return;
  }

  const auto sim = coincidence_histogram(loaded.cfg, loaded.model, s.read, s.delay_ps, s.trials,
                                         s.seed, 0, s.shards);
  for (std::size_t i = 0; i < sim.histogram.bin_offsets.size(); ++i)
    csv << format_g9(sim.histogram.bin_offsets[i] * period_ns) << ','
        << format_g9(static_cast<double>(sim.histogram.counts[i])) << '\n';
}

void run_g2_point(const Scenario& s, const LoadedConfig& loaded, OutputSet& out) {
  const double eta = conversion_efficiency(loaded.model, s.read.center_nm, loaded.cfg) *
                     storage_decay(s.delay_ps, loaded.cfg);
  json doc{{"read_nm", round9(s.read.center_nm)},
           {"read_fwhm_nm", round9(s.read.fwhm_nm)},
           {"delay_ps", round9(s.delay_ps)},
           {"output_nm", round9(output_wavelength(s.read.center_nm, loaded.cfg))},
           {"eta_fc", round9(eta)},
           {"g2_analytic", round9(g2_analytic_full(loaded.cfg, eta))}};

  if (!s.analytic_only) {
    const auto rec = simulate_slots(loaded.cfg, loaded.model, s.read, s.delay_ps, s.trials, s.seed,
                                    0, s.shards);
    doc["counts"] = json{{"n_slots", rec.n_slots},
                         {"n_herald", rec.n_herald},
                         {"n_signal", rec.n_signal},
                         {"n_coincidence", rec.n_coincidence}};
    if (rec.n_herald > 0 && rec.n_signal > 0) {
      const auto est = g2_from_counts(rec);
      doc["g2"] = round9(est.value);
      doc["g2_err"] = round9(est.std_error);
      doc["classification"] = cauchy_schwarz_check(est.value) == Classification::non_classical
                                  ? "non-classical"
                                  : "classical-compatible";
    } else {
      doc["g2"] = nullptr;
      doc["g2_err"] = nullptr;
      doc["classification"] = "undefined";
    }
  }
  out.write_json("g2_point.json", doc);
}

} // namespace

std::vector<std::filesystem::path> run_scenario(const Scenario& s, const LoadedConfig& loaded,
                                                const std::filesystem::path& out_dir) {
  s.validate();
  OutputSet out(out_dir);
  try {
    switch (s.kind) {
      case ScenarioKind::freq_sweep: run_freq_sweep(s, loaded, out); break;
      case ScenarioKind::delay_scan: run_delay_scan(s, loaded, out); break;
      case ScenarioKind::bandwidth: run_bandwidth(s, loaded, out); break;
      case ScenarioKind::histogram: run_histogram(s, loaded, out); break;
      case ScenarioKind::g2_point: run_g2_point(s, loaded, out); break;
    }
    write_sidecar(out, s, loaded);
  } catch (...) {
    out.remove_all();
    throw;
  }
  return out.written();
}

} // namespace qosp
