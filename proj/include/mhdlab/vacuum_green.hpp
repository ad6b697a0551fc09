#pragma once

// Harmonic vacuum potential on the flat strip -1 <= x1 <= 0 with a Dirichlet
// bottom and Neumann data on the interface, and a quadrature check of the
// energy identity
//
//   int_{x1=0} xi H_N dx2 = int_strip |grad xi|^2 dx,   H_N = +d1 xi.
//
// The flux uses the + sign: the normal vacuum field is the first component
// of grad xi, matching the interface condition used by the MHD models.

#include <vector>

#include "mhdlab/domain.hpp"

namespace mhdlab {

/// xi(x1, x2) = c sinh(k (x1 + 1)) exp(i k x2), c = neumann_amp / (k cosh k).
struct StripPotential {
  double k = 0.0;
  Complex neumann_amp{};
  Complex c{};

  Complex value(double x1, double x2) const;
  Complex d1(double x1, double x2) const;
  Complex d2(double x1, double x2) const;
};

/// Throws DomainError unless k is finite and positive (k = 0 would need
/// constant Neumann data over a Dirichlet bottom).
StripPotential strip_potential(double k, Complex neumann_amp);

struct GreenIdentity {
  double k = 0.0;
  int points = 0;
  double lhs = 0.0;  ///< exact interface flux
  double rhs = 0.0;  ///< trapezoid in x1, exact in x2
  double relative_gap = 0.0;
};

/// Real mode c = 1, xi = sinh(k (x1 + 1)) cos(k x2), over one tangential
/// wavelength 2 pi / k. `points` trapezoid nodes span [-1, 0]; fewer than 16
/// per wavelength throws GridError.
GreenIdentity green_identity_check(double k, int points);

/// One check per wavenumber, evaluated in parallel, results in input order.
std::vector<GreenIdentity> green_identity_sweep(const std::vector<double>& ks, int points,
                                                unsigned jobs = 1);

}  // namespace mhdlab
