#pragma once

#include <stdexcept>
#include <string>

namespace qosp {

/// Base class for all qosp errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside the mathematical/physical domain of an operation
/// (non-positive wavelength, wavelength outside a Sellmeier validity range,
/// negative delay, unphysical deconvolution, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A spectrum cannot be represented or processed on the given grid
/// (feature narrower than a few grid steps, kernel wider than the grid,
/// shifted spectrum leaving the grid).
class ResolutionError : public Error {
public:
  using Error::Error;
};

/// A peak sits on the grid boundary, so a width cannot be bracketed.
class EdgeError : public Error {
public:
  using Error::Error;
};

/// Input containers have the wrong shape (missing histogram bins,
/// mismatched lengths).
class ShapeError : public Error {
public:
  using Error::Error;
};

/// Invalid configuration. Carries the offending field path when known.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg, std::string field = {})
      : Error(field.empty() ? msg : field + ": " + msg), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// A fit cannot be set up (too few points, degenerate abscissae).
/// Non-convergence is not an error; it is reported via FitResult::converged.
class FitError : public Error {
public:
  using Error::Error;
};

/// An estimator is undefined for the given counts (zero singles).
class EstimatorError : public Error {
public:
  using Error::Error;
};

/// A requested interval is not bracketed by the data (no threshold crossing).
class RangeError : public Error {
public:
  using Error::Error;
};

} // namespace qosp
