#include "mhdlab/vacuum_green.hpp"

#include <cmath>
#include <string>

#include "mhdlab/errors.hpp"
#include "mhdlab/parallel.hpp"

namespace mhdlab {
namespace {

const Complex kI{0.0, 1.0};

void check_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw DomainError("strip wavenumber k must be positive and finite; k = 0 is degenerate");
  }
}

}  // namespace

Complex StripPotential::value(double x1, double x2) const {
  return c * std::sinh(k * (x1 + 1.0)) * std::exp(kI * (k * x2));
}

Complex StripPotential::d1(double x1, double x2) const {
  return c * k * std::cosh(k * (x1 + 1.0)) * std::exp(kI * (k * x2));
}

Complex StripPotential::d2(double x1, double x2) const {
  return kI * k * value(x1, x2);
}

StripPotential strip_potential(double k, Complex neumann_amp) {
  check_k(k);
  return {k, neumann_amp, neumann_amp / (k * std::cosh(k))};
}

GreenIdentity green_identity_check(double k, int points) {
  check_k(k);
  // Radial extent 1 holds k / (2 pi) wavelengths.
  const double per_wavelength = (points - 1) * 2.0 * M_PI / k;
  if (points < 2 || per_wavelength < 16.0) {
    throw GridError("green_identity_check needs at least 16 points per wavelength; " +
                    std::to_string(points) + " points give " + std::to_string(per_wavelength));
  }
  const double period = 2.0 * M_PI / k;

  GreenIdentity g;
  g.k = k;
  g.points = points;
  // xi d1 xi at x1 = 0 is k sinh k cosh k cos^2, which averages to one half.
  g.lhs = 0.5 * period * k * std::sinh(k) * std::cosh(k);

  // |grad xi|^2 integrates over x2 to (period / 2) k^2 (cosh^2 + sinh^2).
  const double h = 1.0 / (points - 1);
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x1 = -1.0 + i * h;
    const double ch = std::cosh(k * (x1 + 1.0));
    const double sh = std::sinh(k * (x1 + 1.0));
    const double f = 0.5 * period * k * k * (ch * ch + sh * sh);
    sum += (i == 0 || i == points - 1) ? 0.5 * f : f;
  }
  g.rhs = h * sum;
  g.relative_gap = std::abs(g.rhs - g.lhs) / std::abs(g.lhs);
  return g;
}

std::vector<GreenIdentity> green_identity_sweep(const std::vector<double>& ks, int points,
                                                unsigned jobs) {
  return parallel_map(ks.size(), jobs, [&](std::size_t i) { return green_identity_check(ks[i], points); });
}

}  // namespace mhdlab
