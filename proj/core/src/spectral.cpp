#include "qosp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qosp {

namespace {
constexpr double kFwhmPerSigma = 2.3548200450309493; // 2*sqrt(2*ln 2)
} // namespace

double wavelength_to_frequency(double lambda_nm) {
  if (!(lambda_nm > 0.0)) throw DomainError("wavelength must be positive, got " + std::to_string(lambda_nm));
  return kSpeedOfLight / lambda_nm;
}

double frequency_to_wavelength(double nu_thz) {
  if (!(nu_thz > 0.0)) throw DomainError("frequency must be positive, got " + std::to_string(nu_thz));
  return kSpeedOfLight / nu_thz;
}

void SpectralGrid::validate() const {
  if (!(lambda_min > 0.0) || !(lambda_max > 0.0) || !(lambda_min < lambda_max))
    throw ConfigError("requires 0 < lambda_min < lambda_max", "grid");
  if (n_points < 2) throw ConfigError("requires n_points >= 2", "grid.n_points");
}

SpectralGrid default_grid() { return SpectralGrid{690.0, 860.0, 8501}; }

void SpectralDensity::validate() const {
  grid.validate();
  if (values.size() != grid.n_points) throw ShapeError("density length does not match grid");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("density values must be finite and non-negative");
}

void PulseSpec::validate() const {
  if (!(center_nm > 0.0)) throw DomainError("pulse center must be positive");
  if (!(fwhm_nm > 0.0) || !(fwhm_nm < center_nm)) throw DomainError("pulse fwhm must satisfy 0 < fwhm < center");
}

double integrate(const SpectralDensity& s) {
  const double h = s.grid.step();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) sum += 0.5 * (s.values[i] + s.values[i + 1]);
  return sum * h;
}

void normalize(SpectralDensity& s) {
  const double total = integrate(s);
  if (!(total > 0.0)) throw DomainError("cannot normalize a density with zero integral");
  for (double& v : s.values) v /= total;
}

SpectralDensity gaussian_spectrum(const PulseSpec& pulse, const SpectralGrid& grid) {
  pulse.validate();
  grid.validate();
  if (!grid.contains(pulse.center_nm))
    throw DomainError("pulse center " + std::to_string(pulse.center_nm) + " nm outside grid");
  if (pulse.fwhm_nm < 3.0 * grid.step())
    throw ResolutionError("fwhm " + std::to_string(pulse.fwhm_nm) + " nm narrower than 3 grid steps");

  const double sigma = pulse.fwhm_nm / kFwhmPerSigma;
  SpectralDensity out{grid, std::vector<double>(grid.n_points)};
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double d = (grid.wavelength(i) - pulse.center_nm) / sigma;
    out.values[i] = std::exp(-0.5 * d * d);
  }
  normalize(out);
  return out;
}

namespace {

// Interpolated half-maximum crossing scanning outward from the peak; the
// first bracketing pair encountered is by construction the crossing nearest
// the peak.
double half_crossing(const SpectralDensity& s, std::size_t peak, double half, int dir) {
  std::size_t i = peak;
  while (true) {
    const std::size_t j = static_cast<std::size_t>(static_cast<long long>(i) + dir);
    if (j >= s.values.size()) throw EdgeError("half-maximum not reached before grid edge");
    if (s.values[j] < half) {
      const double x0 = s.grid.wavelength(i), x1 = s.grid.wavelength(j);
      const double y0 = s.values[i], y1 = s.values[j];
      return x0 + (half - y0) * (x1 - x0) / (y1 - y0);
    }
    i = j;
  }
}

} // namespace

double fwhm(const SpectralDensity& s) {
  s.validate();
  const auto it = std::max_element(s.values.begin(), s.values.end());
  const std::size_t peak = static_cast<std::size_t>(std::distance(s.values.begin(), it));
  if (peak == 0 || peak + 1 == s.values.size()) throw EdgeError("peak sits on the grid boundary");
  const double half = 0.5 * *it;
  const double left = half_crossing(s, peak, half, -1);
  const double right = half_crossing(s, peak, half, +1);
  return right - left;
}

double peak_wavelength(const SpectralDensity& s) {
  const auto it = std::max_element(s.values.begin(), s.values.end());
  return s.grid.wavelength(static_cast<std::size_t>(std::distance(s.values.begin(), it)));
}

SpectralDensity convolve_response(const SpectralDensity& s, double resolution_fwhm) {
  s.validate();
  if (resolution_fwhm < 0.0) throw DomainError("resolution fwhm must be >= 0");
  if (resolution_fwhm == 0.0) return s;

  const double step = s.grid.step();
  const double sigma = resolution_fwhm / kFwhmPerSigma / step; // in grid steps
  const auto radius = static_cast<std::size_t>(std::ceil(6.0 * sigma));
  if (2 * radius + 1 > s.grid.n_points)
    throw ResolutionError("response kernel wider than the grid span");

  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    const double d = (static_cast<double>(k) - static_cast<double>(radius)) / sigma;
    kernel[k] = std::exp(-0.5 * d * d);
    ksum += kernel[k];
  }
  for (double& k : kernel) k /= ksum;

  SpectralDensity out{s.grid, std::vector<double>(s.grid.n_points, 0.0)};
  const auto n = static_cast<long long>(s.grid.n_points);
  for (long long i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long long k = -static_cast<long long>(radius); k <= static_cast<long long>(radius); ++k) {
      const long long j = i + k;
      if (j < 0 || j >= n) continue;
      acc += kernel[static_cast<std::size_t>(k + static_cast<long long>(radius))] * s.values[static_cast<std::size_t>(j)];
    }
    out.values[static_cast<std::size_t>(i)] = acc;
  }
  normalize(out);
  return out;
}

} // namespace qosp
