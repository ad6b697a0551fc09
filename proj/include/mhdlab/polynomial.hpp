#pragma once

// Dense complex polynomials (ascending coefficients) and a simultaneous
// Aberth-Ehrlich root finder.

#include <utility>
#include <vector>

#include "mhdlab/domain.hpp"

namespace mhdlab {

/// c[0] + c[1] z + ... + c[d] z^d
using Polynomial = std::vector<Complex>;

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, Complex k);

/// Drops exactly-zero leading coefficients.
void poly_trim(Polynomial& p);

/// Removes exactly-zero low-order coefficients (roots at the origin) and
/// returns how many were removed.
int poly_deflate_zero_roots(Polynomial& p);

struct PolyValue {
  Complex value{};
  Complex derivative{};
  double magnitude = 0.0;  ///< sum |c_k| |z|^k, for backward-error tests
};

PolyValue poly_eval(const Polynomial& p, Complex z);

/// Both roots of a z^2 + b z + c with the cancellation-free formula.
/// Requires a != 0.
std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c);

/// All roots of p (after trimming), found simultaneously by Aberth-Ehrlich
/// iteration started from Newton-polygon radii. Throws ConvergenceError
/// carrying the worst iterate when max_iterations is exhausted.
std::vector<Complex> aberth_roots(const Polynomial& p, int max_iterations = 100);

}  // namespace mhdlab
