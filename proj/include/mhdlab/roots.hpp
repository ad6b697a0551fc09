#pragma once

// Temporal-frequency roots of the interface determinants, their large-n
// asymptotics, and growth-rate scaling fits.

#include <optional>
#include <string>
#include <vector>

#include "mhdlab/domain.hpp"

namespace mhdlab {

struct RootOptions {
  double residual_tolerance = 1e-10;  ///< on the relative residual
  int max_iterations = 100;
};

/// Re s must exceed this fraction of |s| for a root to count as growing.
inline constexpr double kAdmissibilityMargin = 1e-12;

/// |a_hat| at or below this is treated as the a_hat = 0 case.
double a_hat_zero_tolerance(const BasicState& state);
bool a_hat_is_zero(const BasicState& state);

/// Evaluates lambda+-, the relative residual and the admissibility flags of a
/// candidate frequency.
ModeRoot annotate_root(ModelKind model, const BasicState& state,
                       const Wavevector& omega, Complex s, long n,
                       const RootOptions& opts = {});

/// Newton iteration on the unsquared determinant. Converges when
/// |ds| < 1e-14 (1 + |s|); otherwise throws ConvergenceError with the iterate
/// of smallest residual.
Complex newton_refine(ModelKind model, const BasicState& state,
                      const Wavevector& omega, long n, Complex seed,
                      const RootOptions& opts = {});

/// Every root of the model's determinant with relative residual within
/// tolerance, sorted by decreasing Re s, then decreasing |Im s|, then
/// lexicographically. The neutral root s = 0 is included (flagged) whenever
/// it solves the equation.
std::vector<ModeRoot> solve_dispersion(ModelKind model, const BasicState& state,
                                       const Wavevector& omega, long n,
                                       const RootOptions& opts = {});

/// First admissible root of a sorted root list.
std::optional<ModeRoot> dominant_root(const std::vector<ModeRoot>& roots);

/// s = s0 + s1 / sqrt(n) + s2 / n + s3 / n^{3/2}
struct AsymptoticRoot {
  Complex s0{};
  Complex s1{};
  Complex s2{};
  Complex s3{};

  Complex evaluate(double n) const;
};

/// Large-n root families:
///  * W = 0, a != 0: s1 = +-sqrt(a/rho), s2 = a0/2, s3 from the next order;
///  * W = 0, a = 0, a0 != 0: s = a0/n;
///  * W != 0: s0 the nonzero roots of the leading-order equation
///    (+-i sqrt(W/rho) for the incompressible model), s1 = 0, s2 from the
///    first correction; plus s = a0 w+^2 / (W n) when a0 w+ != 0.
std::vector<AsymptoticRoot> asymptotic_root(ModelKind model,
                                            const BasicState& state,
                                            const Wavevector& omega);

/// Least-squares fit of log(max admissible Re s) against log n.
/// n_grid must be strictly increasing and span at least one decade. Throws
/// PartialFitError listing the n without an admissible root.
ScalingFit fit_scaling(ModelKind model, const BasicState& state,
                       const Wavevector& omega, const std::vector<long>& n_grid,
                       const RootOptions& opts = {});

/// Nonzero roots s0 of the compressible-MHD leading-order equation
///   rho s0^2 + w+^2 + w-^2 sqrt(1 + s0^4 / ((c^2+cA^2) s0^2 + c^2 w~^2)) = 0
/// obtained by squaring into a cubic in s0^2 and keeping only candidates
/// that solve the unsquared equation.
std::vector<Complex> leading_order_roots(const BasicState& state, const WPair& w);

struct S0Sample {
  Wavevector omega;
  WPair w;
  std::vector<Complex> roots;
  double max_re = 0.0;  ///< -inf when no root exists
  std::string diagnostic;  ///< nonempty when the sample failed
};

struct S0Report {
  std::vector<S0Sample> samples;
  double max_re = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Compressible-MHD check that no leading-order root has Re s0 > tolerance.
/// Every sample must have w+ or w- nonzero (DomainError otherwise).
S0Report scan_s0(const BasicState& state, const std::vector<Wavevector>& omega_samples,
                 double tolerance, unsigned jobs = 1);

}  // namespace mhdlab
