#pragma once

#include <cstddef>
#include <vector>

#include "qosp/errors.hpp"

namespace qosp {

/// Speed of light in nm*THz (equivalently nm/ps).
inline constexpr double kSpeedOfLight = 299792.458;

/// nu = c / lambda, lambda in nm, result in THz. Throws DomainError for
/// non-positive input. Strictly decreasing in lambda.
double wavelength_to_frequency(double lambda_nm);

/// lambda = c / nu, nu in THz, result in nm. Exact inverse of
/// wavelength_to_frequency up to rounding.
double frequency_to_wavelength(double nu_thz);

/// Uniform wavelength grid [lambda_min, lambda_max] with n_points samples.
struct SpectralGrid {
  double lambda_min = 690.0;
  double lambda_max = 860.0;
  std::size_t n_points = 8501;

  double step() const { return (lambda_max - lambda_min) / static_cast<double>(n_points - 1); }
  double wavelength(std::size_t i) const { return lambda_min + step() * static_cast<double>(i); }
  bool contains(double lambda_nm) const { return lambda_nm >= lambda_min && lambda_nm <= lambda_max; }

  void validate() const;
};

/// Default grid: 0.02 nm steps covering every wavelength used by the
/// experiment model with >= 50 points per narrowest feature.
SpectralGrid default_grid();

/// Sampled spectral intensity on a uniform wavelength grid, arbitrary units
/// per nm. Values are non-negative; a normalized density integrates to one
/// under the trapezoidal rule.
struct SpectralDensity {
  SpectralGrid grid;
  std::vector<double> values;

  void validate() const;
};

/// Pulse or photon spectrum summarized as center wavelength and FWHM, nm.
struct PulseSpec {
  double center_nm = 0.0;
  double fwhm_nm = 0.0;

  void validate() const;
};

/// Trapezoidal integral of the density over its grid.
double integrate(const SpectralDensity& s);

/// Rescale in place to unit trapezoidal integral. Throws DomainError if the
/// density integrates to zero.
void normalize(SpectralDensity& s);

/// Sample a normalized Gaussian with the pulse's center/FWHM on the grid.
/// The center must lie inside the grid and the FWHM must span at least three
/// grid steps, otherwise the spectrum is not representable.
SpectralDensity gaussian_spectrum(const PulseSpec& pulse, const SpectralGrid& grid);

/// Full width at half maximum via linear interpolation on each side of the
/// global maximum. When several crossings exist on one side the one nearest
/// the peak wins. Throws EdgeError when the peak sits on the grid boundary.
double fwhm(const SpectralDensity& s);

/// Wavelength of the grid point holding the global maximum.
double peak_wavelength(const SpectralDensity& s);

/// Convolve with a normalized Gaussian instrument response of the given FWHM
/// and renormalize. resolution_fwhm == 0 returns the input unchanged.
SpectralDensity convolve_response(const SpectralDensity& s, double resolution_fwhm);

} // namespace qosp
