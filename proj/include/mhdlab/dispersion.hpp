#pragma once

// Exact symbols of the four frozen-coefficient interface problems.
//
// Every function works at unit tangential wavenumber: the user's wavevector
// only contributes its direction, and the mode index n carries the scale.
// The ansatz is exp{n (s t + lambda x1 + i omega'.x')} on both sides of the
// flat interface x1 = 0.
//
// Conventions:
//  * IncompressibleEuler uses the unscaled pressure (rho dv/dt + grad p = 0),
//    so its determinant is n s^2 - a0 s - a/rho.
//  * IncompressibleMHD is rho dv/dt - l+ H + grad q = 0, dH/dt - l+ v = 0,
//    div v = 0, which is the c -> infinity limit of the compressible system.
//  * All square roots take the principal branch, so lambda+ = -sqrt(R) has
//    Re lambda+ <= 0 whenever it is defined.

#include <Eigen/Dense>

#include "mhdlab/domain.hpp"

namespace mhdlab {

/// Value of the boundary determinant, its analytic s-derivative, and the sum
/// of the magnitudes of the individual terms (the natural scale for relative
/// residuals).
struct DeterminantValue {
  Complex value{};
  Complex jacobian_ds{};
  double scale = 0.0;

  double relative_residual() const {
    return scale > 0.0 ? std::abs(value) / scale : std::abs(value);
  }
};

/// lambda+^2 as a function of s, with its derivative.
struct Radicand {
  Complex value{};
  Complex derivative{};
};

Radicand lambda_radicand(ModelKind model, const BasicState& state,
                         const Wavevector& omega, Complex s);

/// 1 + s^4 / (B s^2 + C) with B = c^2 + cA^2 and C = c^2 w+^2 / rho; the
/// C = 0 case is evaluated as 1 + s^2 / B.
Radicand magnetoacoustic_radicand(double B, double C, Complex s);

/// Decaying plasma-side exponent. Throws SingularityError at the branch
/// point of the compressible MHD radicand.
Complex lambda_plus(ModelKind model, const BasicState& state,
                    const Wavevector& omega, Complex s);

/// Vacuum-side exponent, +1, so the potential decays as x1 -> -inf.
/// Throws UnsupportedModelError for Euler models.
Complex lambda_minus(ModelKind model);

/// Normal velocity amplitude v1 produced by a (total) pressure amplitude.
/// Throws ResonanceError where the relation has a pole.
Complex normal_velocity_amplitude(ModelKind model, const BasicState& state,
                                  const Wavevector& omega, Complex s,
                                  Complex q_amp);

/// Left-hand side of the model's interface determinant equation.
DeterminantValue dispersion_eval(ModelKind model, const BasicState& state,
                                 const Wavevector& omega, Complex s, long n);

/// Boundary system acting on (phi, q) for Euler models and (phi, q, xi) for
/// MHD models, with q the physical (total) pressure amplitude.
Eigen::MatrixXcd boundary_matrix(ModelKind model, const BasicState& state,
                                 const Wavevector& omega, Complex s, long n);

/// Factor f with det(boundary_matrix) = f * dispersion_eval.value:
/// -1/s for Euler models and n / (rho s^2 + w+^2) for MHD models.
Complex determinant_prefactor(ModelKind model, const BasicState& state,
                              const Wavevector& omega, Complex s, long n);

}  // namespace mhdlab
