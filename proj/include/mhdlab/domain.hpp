#pragma once

// Value types shared by every analysis: the frozen basic state, the model
// selector, tangential wavevectors and the records produced by root finding,
// mode construction and classification.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mhdlab {

using Complex = std::complex<double>;

enum class ModelKind {
  IncompressibleEuler,
  CompressibleEuler,
  IncompressibleMHD,
  CompressibleMHD,
};

inline constexpr ModelKind kAllModels[] = {
    ModelKind::IncompressibleEuler, ModelKind::CompressibleEuler,
    ModelKind::IncompressibleMHD, ModelKind::CompressibleMHD};

constexpr bool is_mhd(ModelKind m) {
  return m == ModelKind::IncompressibleMHD || m == ModelKind::CompressibleMHD;
}

constexpr bool is_compressible(ModelKind m) {
  return m == ModelKind::CompressibleEuler || m == ModelKind::CompressibleMHD;
}

std::string_view to_string(ModelKind m);

/// Accepts both the CamelCase enumerator names and snake_case spellings.
std::optional<ModelKind> parse_model(std::string_view name);

/// Frozen unperturbed interface data at one boundary point.
///
/// The basic state is Galilean-shifted (no tangential velocity) and the
/// normal field components vanish on the flat interface, so only the
/// tangential fields are stored.
struct BasicState {
  double rho_hat = 1.0;
  double c_hat = 1.0;
  Eigen::Vector2d H_plasma = Eigen::Vector2d::Zero();
  Eigen::Vector2d H_vacuum = Eigen::Vector2d::Zero();
  double a_hat = 0.0;   ///< minus the jump of the normal total-pressure derivative
  double a0_hat = 0.0;  ///< normal derivative of the normal velocity
  double a1_hat = 0.0;  ///< minus the normal derivative of the normal vacuum field
};

/// Throws DomainError if the state is unusable for `model`: non-positive
/// density or sound speed, non-finite entries, or (Euler models) nonzero
/// magnetic data.
void validate(ModelKind model, const BasicState& state);

/// |H'| / sqrt(rho).
double alfven_speed(const BasicState& state);

/// Tangential wavevector in user scale.
struct Wavevector {
  double omega2 = 1.0;
  double omega3 = 0.0;

  Eigen::Vector2d vector() const { return {omega2, omega3}; }
  double norm() const { return vector().norm(); }
  /// Unit direction; throws DomainError for the zero vector.
  Eigen::Vector2d unit() const;
};

struct WPair {
  double w_plus = 0.0;
  double w_minus = 0.0;
  double W() const { return w_plus * w_plus + w_minus * w_minus; }
};

/// Projections of the plasma and vacuum tangential fields on the unit
/// wavevector direction.
WPair w_pair(const BasicState& state, const Wavevector& omega);

/// A temporal frequency root of a dispersion relation at mode index n.
struct ModeRoot {
  Complex s{};
  Complex lambda_plus{};
  std::optional<Complex> lambda_minus;  // absent for Euler models
  double residual = 0.0;                // relative, see dispersion_eval
  bool admissible = false;
  bool neutral = false;
  long n = 1;
};

/// Field amplitudes of one exponential mode. Unused entries stay zero
/// (H and xi for Euler models). `q` holds the pressure for Euler models and
/// the total pressure for MHD models.
struct ModeAmplitudes {
  Complex phi{};
  Complex q{};
  Eigen::Vector3cd v = Eigen::Vector3cd::Zero();
  Eigen::Vector3cd H = Eigen::Vector3cd::Zero();
  Complex xi{};
};

enum class Normalization { InterfaceUnit, UnitNorm };

struct HadamardMode {
  ModelKind model = ModelKind::CompressibleMHD;
  BasicState state;
  Wavevector omega;
  ModeRoot root;
  ModeAmplitudes amplitudes;
  Normalization normalization = Normalization::InterfaceUnit;
};

struct ScalingFit {
  double exponent = 0.0;     ///< p in Re s ~ C n^{-p}
  double coefficient = 0.0;  ///< C
  long n_min = 0;
  long n_max = 0;
  double rms_log_error = 0.0;
};

enum class Verdict { IllPosed, ExponentiallyUnstable, NoHadamardGrowth };

std::string_view to_string(Verdict v);

struct Classification {
  Verdict verdict = Verdict::NoHadamardGrowth;
  bool collinear = false;
  bool rt_sign_ok = false;  ///< a_hat < 0
  std::optional<Wavevector> witness;
  std::optional<ScalingFit> evidence;
  std::vector<std::string> warnings;
};

}  // namespace mhdlab
