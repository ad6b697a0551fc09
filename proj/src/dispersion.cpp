#include "mhdlab/dispersion.hpp"

#include <cmath>

#include "mhdlab/errors.hpp"

namespace mhdlab {
namespace {

constexpr double kPoleTol = 1e-14;
const Complex kI{0.0, 1.0};

void check_n(long n) {
  if (n < 1) throw DomainError("mode index n must be >= 1");
}

// rho s^2 + w+^2, with a resonance check.
Complex magnetic_denominator(const BasicState& st, double w_plus, Complex s) {
  const Complex p = st.rho_hat * s * s + w_plus * w_plus;
  if (std::abs(p) <= kPoleTol * (st.rho_hat * std::norm(s) + w_plus * w_plus)) {
    throw ResonanceError("rho s^2 + w+^2 vanishes (Alfven resonance)");
  }
  return p;
}

}  // namespace

Radicand magnetoacoustic_radicand(double B, double C, Complex s) {
  if (C == 0.0) {
    // s^4 / (B s^2) has a removable singularity at s = 0.
    return {1.0 + s * s / B, 2.0 * s / B};
  }
  const Complex den = B * s * s + C;
  if (std::abs(den) <= kPoleTol * (B * std::norm(s) + C)) {
    throw SingularityError(
        "(c^2 + cA^2) s^2 + c^2 w~^2 vanishes: branch point of lambda+");
  }
  const Complex s2 = s * s;
  const Complex s3 = s2 * s;
  return {1.0 + s2 * s2 / den, (2.0 * B * s3 * s2 + 4.0 * C * s3) / (den * den)};
}

Radicand lambda_radicand(ModelKind model, const BasicState& st,
                         const Wavevector& omega, Complex s) {
  validate(model, st);
  switch (model) {
    case ModelKind::IncompressibleEuler:
    case ModelKind::IncompressibleMHD:
      omega.unit();
      return {1.0, 0.0};
    case ModelKind::CompressibleEuler: {
      omega.unit();
      const double c2 = st.c_hat * st.c_hat;
      return {1.0 + s * s / c2, 2.0 * s / c2};
    }
    case ModelKind::CompressibleMHD: {
      const WPair w = w_pair(st, omega);
      const double c2 = st.c_hat * st.c_hat;
      const double cA = alfven_speed(st);
      const double B = c2 + cA * cA;
      const double C = c2 * w.w_plus * w.w_plus / st.rho_hat;
      return magnetoacoustic_radicand(B, C, s);
    }
  }
  return {1.0, 0.0};
}

Complex lambda_plus(ModelKind model, const BasicState& st,
                    const Wavevector& omega, Complex s) {
  return -std::sqrt(lambda_radicand(model, st, omega, s).value);
}

Complex lambda_minus(ModelKind model) {
  if (!is_mhd(model)) {
    throw UnsupportedModelError(std::string(to_string(model)) +
                                " has no vacuum potential");
  }
  return 1.0;
}

Complex normal_velocity_amplitude(ModelKind model, const BasicState& st,
                                  const Wavevector& omega, Complex s,
                                  Complex q_amp) {
  validate(model, st);
  if (!is_mhd(model)) {
    omega.unit();
    if (s == 0.0) throw ResonanceError("v1 = q / (rho s) has a pole at s = 0");
    const Complex r = std::sqrt(lambda_radicand(model, st, omega, s).value);
    return q_amp * r / (st.rho_hat * s);
  }
  const WPair w = w_pair(st, omega);
  const Complex p = magnetic_denominator(st, w.w_plus, s);
  const Complex r = std::sqrt(lambda_radicand(model, st, omega, s).value);
  return q_amp * s * r / p;
}

DeterminantValue dispersion_eval(ModelKind model, const BasicState& st,
                                 const Wavevector& omega, Complex s, long n) {
  check_n(n);
  const Radicand rad = lambda_radicand(model, st, omega, s);
  const double nd = static_cast<double>(n);
  const double a0 = st.a0_hat;

  if (!is_mhd(model)) {
    const double a_eff = st.a_hat / st.rho_hat;
    if (model == ModelKind::IncompressibleEuler) {
      return {nd * s * s - a0 * s - a_eff, 2.0 * nd * s - a0,
              nd * std::norm(s) + std::abs(a0 * s) + std::abs(a_eff)};
    }
    const Complex r = std::sqrt(rad.value);
    if (r == 0.0) throw SingularityError("lambda+ = 0 at a branch point");
    const Complex dr = rad.derivative / (2.0 * r);
    return {nd * s * s - a0 * s - a_eff * r, 2.0 * nd * s - a0 - a_eff * dr,
            nd * std::norm(s) + std::abs(a0 * s) + std::abs(a_eff * r)};
  }

  const WPair w = w_pair(st, omega);
  const double rho = st.rho_hat;
  const double wp2 = w.w_plus * w.w_plus;
  const double wm2 = w.w_minus * w.w_minus;
  const Complex alpha{st.a_hat, w.w_minus * st.a1_hat};
  const Complex P = rho * s * s + wp2;

  Complex r = 1.0;
  Complex dr = 0.0;
  if (model == ModelKind::CompressibleMHD) {
    r = std::sqrt(rad.value);
    if (r == 0.0) throw SingularityError("lambda+ = 0 at a branch point");
    dr = rad.derivative / (2.0 * r);
  }

  // s { n (P + wm2 r) - alpha r } - a0 P
  const Complex inner = nd * (P + wm2 * r) - alpha * r;
  const Complex value = s * inner - a0 * P;
  const Complex d_inner = nd * (2.0 * rho * s + wm2 * dr) - alpha * dr;
  const Complex deriv = inner + s * d_inner - 2.0 * a0 * rho * s;
  const double abs_s = std::abs(s);
  const double abs_r = std::abs(r);
  const double scale = nd * rho * abs_s * abs_s * abs_s + nd * wp2 * abs_s +
                       nd * wm2 * abs_r * abs_s + std::abs(alpha) * abs_r * abs_s +
                       std::abs(a0) * rho * abs_s * abs_s + std::abs(a0) * wp2;
  return {value, deriv, scale};
}

Eigen::MatrixXcd boundary_matrix(ModelKind model, const BasicState& st,
                                 const Wavevector& omega, Complex s, long n) {
  check_n(n);
  const double nd = static_cast<double>(n);
  // v1 = mu q
  const Complex mu = normal_velocity_amplitude(model, st, omega, s, 1.0);
  if (!is_mhd(model)) {
    Eigen::MatrixXcd m(2, 2);
    m << nd * s - st.a0_hat, -mu,  //
        st.a_hat, -1.0;
    return m;
  }
  const WPair w = w_pair(st, omega);
  const Complex inw = kI * nd * w.w_minus;
  Eigen::MatrixXcd m(3, 3);
  m << nd * s - st.a0_hat, -mu, 0.0,  //
      st.a_hat, -1.0, inw,             //
      st.a1_hat + inw, 0.0, -nd;
  return m;
}

Complex determinant_prefactor(ModelKind model, const BasicState& st,
                              const Wavevector& omega, Complex s, long n) {
  check_n(n);
  validate(model, st);
  if (!is_mhd(model)) {
    omega.unit();
    if (s == 0.0) throw ResonanceError("prefactor -1/s undefined at s = 0");
    return -1.0 / s;
  }
  const WPair w = w_pair(st, omega);
  return static_cast<double>(n) / magnetic_denominator(st, w.w_plus, s);
}

}  // namespace mhdlab
