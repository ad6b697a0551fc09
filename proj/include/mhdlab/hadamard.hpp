#pragma once

// Exponential solution sequences exp{n (s t + lambda x1 + i omega.x')} of the
// frozen problems: construction from the boundary nullspace, sampling on a
// truncated grid, finite-difference verification against the PDEs, growth
// ratios and the boundary energy-flux identity.
//
// Fields depend on (x1, eta) with eta = unit(omega) . x', so a grid is 2D:
// x1 in [0, L+] (plasma) and [-L-, 0] (vacuum) by one tangential wavelength
// 2 pi / n, periodic in eta. Spacing h = (2 pi / n) / points_per_wavelength
// in both directions.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mhdlab/domain.hpp"
#include "mhdlab/roots.hpp"

namespace mhdlab {

inline constexpr double kNullspaceTolerance = 1e-8;
inline constexpr double kTruncationEpsilon = 1e-16;
/// Past this exponent n Re s t, sampled fields switch to complex logarithms.
inline constexpr double kOverflowExponent = 700.0;

/// Nullspace of the boundary matrix at `root`, completed with the interior
/// velocity and magnetic amplitudes. Throws NotARootError when the smallest
/// relative singular value exceeds kNullspaceTolerance.
HadamardMode build_mode(ModelKind model, const BasicState& state, const Wavevector& omega,
                        const ModeRoot& root);

struct GridSpec {
  double x1_extent_plus = 0.0;
  double x1_extent_minus = 0.0;  ///< 0 for Euler models
  int points_per_wavelength = 32;
  double tangential_period = 0.0;

  double spacing() const { return tangential_period / points_per_wavelength; }
  int x1_points_plus() const;   ///< including both ends
  int x1_points_minus() const;
};

/// Depth L = min(40 / (n |Re lambda|), 20) on each side, rounded up to a
/// whole number of cells. Throws GridError if points_per_wavelength < 8 or the
/// truncated tail exceeds kTruncationEpsilon.
GridSpec make_grid(const HadamardMode& mode, int points_per_wavelength = 32);

/// Throws GridError unless `grid` resolves and truncates `mode`.
void check_grid(const HadamardMode& mode, const GridSpec& grid);

struct SampledFields {
  bool log_values = false;  ///< entries hold log(F) = log|F| + i arg F
  Eigen::VectorXd x1_plus;
  Eigen::VectorXd x1_minus;  ///< ascending, ends at 0
  Eigen::VectorXd eta;
  Eigen::Vector2d direction;  ///< x' = eta * direction
  std::vector<std::string> plasma_names;
  std::vector<Eigen::MatrixXcd> plasma;  ///< (x1_plus.size(), eta.size())
  std::vector<std::string> vacuum_names;
  std::vector<Eigen::MatrixXcd> vacuum;
  Eigen::VectorXcd phi;  ///< interface displacement over eta
};

/// Samples every field of the mode at time t. Fields are
///   Euler: p, v1, v2, v3;  MHD: q, v1..v3, H1..H3 and vacuum xi, Hv1..Hv3,
/// with the vacuum field Hv = grad xi. Switches to log values when
/// n Re s t > kOverflowExponent.
SampledFields evaluate_field(const HadamardMode& mode, const GridSpec& grid, double t);

struct ResidualEntry {
  std::string equation;
  /// "interior" and "constraint" are differenced (O(h^2)); "boundary" and
  /// "algebraic" apply exact symbols and sit at roundoff.
  std::string kind;
  double relative = 0.0;  ///< sup |residual| / sup sum |terms|; 0 if all terms vanish
  double scale = 0.0;     ///< sup sum |terms|
};

struct ResidualReport {
  double h = 0.0;
  std::vector<ResidualEntry> entries;

  double max_relative(const std::string& kind) const;
};

/// Second-order differences (central inside, one-sided at the x1 ends,
/// periodic in eta, time levels t +- h) of the real parts of the sampled
/// mode, for every interior equation and divergence/curl constraint, plus
/// the boundary conditions evaluated with exact symbols on the traces.
/// The common factor exp(n Re s t) is removed before sampling, so large t
/// does not overflow.
ResidualReport pde_residual_fd(const HadamardMode& mode, const GridSpec& grid, double t);

struct ConvergenceEntry {
  std::string equation;
  std::string kind;
  double coarse = 0.0;
  double fine = 0.0;
  double order = 0.0;  ///< log2(coarse / fine); NaN when both sit at roundoff
};

/// Residuals at points_per_wavelength and twice that.
std::vector<ConvergenceEntry> residual_convergence(const HadamardMode& mode, double t,
                                                   int points_per_wavelength = 32);

struct GrowthRow {
  long n = 0;
  bool has_root = false;  ///< false: ratio reported as 1
  Complex s{};
  double log_ratio = 0.0;     ///< log(sup|F(t)| / sup|F(0)|)
  double expected_log = 0.0;  ///< n Re s t
};

/// Sup-norm growth of the dominant admissible mode between 0 and t for each
/// n. The sup of the real part over a full period equals the modulus, so
/// norms use |F| on the grid. n_list must be strictly increasing.
std::vector<GrowthRow> growth_ratio(ModelKind model, const BasicState& state,
                                    const Wavevector& omega, const std::vector<long>& n_list,
                                    double t, int points_per_wavelength = 16,
                                    const RootOptions& opts = {});

struct FluxReport {
  double lhs_mean = 0.0;  ///< period average of -q v1
  double rhs_mean = 0.0;  ///< period average of (-a phi - Hvac_hat . Hvac) v1
  double relative_discrepancy = 0.0;  ///< sup pointwise gap / sup pointwise scale
  double log_scale = 0.0;  ///< means are reported divided by exp(log_scale)
};

/// Boundary quadratic form -q v_N = [d1 q] phi v_N - (Hvac_hat . Hvac) v_N
/// on the interface trace (real parts, `samples` points per period), with
/// [d1 q] = -a. MHD models only (UnsupportedModelError otherwise).
FluxReport boundary_flux_check(const HadamardMode& mode, double t, int samples = 64);

}  // namespace mhdlab
