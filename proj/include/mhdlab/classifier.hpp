#pragma once

// Frozen-coefficient ill-posedness verdicts, their numerical confirmation
// from root scaling, and parameter sweeps.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mhdlab/domain.hpp"
#include "mhdlab/roots.hpp"

namespace mhdlab {

inline constexpr double kDefaultCollinearTol = 1e-9;

/// |H2 V3 - H3 V2| <= rel_tol * max(1, |H'| |V'|). Zero fields are collinear.
bool is_collinear(const BasicState& state, double rel_tol = kDefaultCollinearTol);

/// Unit direction orthogonal to the larger of the two tangential fields,
/// (1, 0) when both vanish. For collinear fields both projections vanish.
Wavevector witness_direction(const BasicState& state);

/// Closed-form verdict:
///   IllPosed               iff collinear and a > 0
///   ExponentiallyUnstable  iff collinear and a = 0 and a0 > 0
///   NoHadamardGrowth       otherwise.
/// Euler models drop the collinearity clause. a1 never enters.
///
/// ExponentiallyUnstable modes grow like exp(a0 t) uniformly in n: a real
/// instability, but one that does not make the problem ill-posed.
Classification classify_frozen(ModelKind model, const BasicState& state,
                               double rel_tol = kDefaultCollinearTol);

struct NumericOptions {
  std::vector<long> n_grid{1000, 10000, 100000, 1000000};
  /// Empty means 16 directions evenly spaced on the half circle.
  std::vector<Wavevector> omega_samples;
  double rel_tol = kDefaultCollinearTol;
  double exponent_window = 0.05;
  RootOptions roots;
};

/// Verdict from fitted root scaling over the omega samples plus the analytic
/// witness. Throws ConflictError (with an evidence dump) when it disagrees
/// with classify_frozen.
Classification numeric_classify(ModelKind model, const BasicState& state,
                                const NumericOptions& opts = {});

// ---------------------------------------------------------------- sweeps

/// BasicState field names accepted as sweep axes and config keys.
const std::vector<std::string>& state_field_names();

/// Throws ConfigError for an unknown name.
double& state_field(BasicState& state, std::string_view name);
double state_field(const BasicState& state, std::string_view name);

struct GridAxis {
  std::string field;
  std::vector<double> values;
};

/// "field=lo:hi:count" (inclusive linspace) or "field=v1,v2,...".
GridAxis parse_axis(std::string_view spec);

struct ParameterGrid {
  std::vector<GridAxis> axes;
  std::size_t max_points = 100000;

  /// Product of the axis lengths; 0 without axes.
  std::size_t size() const;
};

struct SweepOptions {
  unsigned jobs = 1;
  bool numeric = false;
  NumericOptions numeric_options;
  double rel_tol = kDefaultCollinearTol;
};

struct SweepRow {
  std::vector<double> coordinates;
  BasicState state;
  Classification classification;
};

/// Classifies every grid point, overriding `base` along the axes. Rows are
/// in row-major order (last axis fastest) for any job count. Axis errors and
/// oversize grids throw ConfigError before any point is evaluated.
std::vector<SweepRow> sweep(ModelKind model, const BasicState& base,
                            const ParameterGrid& grid, const SweepOptions& opts = {});

}  // namespace mhdlab
