#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhdlab {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation (zero wavevector,
/// non-positive density, malformed grid, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for the requested model.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// Branch point of the plasma-side spatial exponent.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// A denominator of an amplitude relation vanishes.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best_iterate,
                   int iterations)
      : Error(what), best_iterate_(best_iterate), iterations_(iterations) {}

  std::complex<double> best_iterate() const { return best_iterate_; }
  int iterations() const { return iterations_; }

 private:
  std::complex<double> best_iterate_;
  int iterations_;
};

/// Boundary matrix is numerically full rank at the requested frequency.
class NotARootError : public Error {
 public:
  NotARootError(const std::string& what, double smallest_singular_value)
      : Error(what), sigma_min_(smallest_singular_value) {}
  double smallest_singular_value() const { return sigma_min_; }

 private:
  double sigma_min_;
};

/// Scaling fit could not be performed because some mode indices had no
/// admissible root.
class PartialFitError : public Error {
 public:
  PartialFitError(const std::string& what, std::vector<long> failing_n)
      : Error(what), failing_n_(std::move(failing_n)) {}
  const std::vector<long>& failing_n() const { return failing_n_; }

 private:
  std::vector<long> failing_n_;
};

/// Analytic and numeric classification disagree.
class ConflictError : public Error {
 public:
  ConflictError(const std::string& what, std::string evidence)
      : Error(what), evidence_(std::move(evidence)) {}
  const std::string& evidence() const { return evidence_; }

 private:
  std::string evidence_;
};

/// Discretization too coarse or violating the truncation invariant.
class GridError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mhdlab
