#pragma once

// Seeded generators for random basic states shared by the property tests and
// the acceptance suite.

#include <cmath>
#include <random>

#include "mhdlab/domain.hpp"

namespace sample {

struct StateDraw {
  mhdlab::BasicState state;
  bool collinear = false;
};

/// Random MHD state. Collinear draws put both fields on one line (either may
/// vanish); non-collinear draws keep |H' x V'| >= 0.3. Roughly one draw in
/// eight has a_hat exactly zero.
inline StateDraw mhd_state(std::mt19937_64& rng, bool collinear) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  StateDraw d;
  d.collinear = collinear;
  mhdlab::BasicState& st = d.state;
  st.rho_hat = 0.5 + 1.5 * u(rng);
  st.c_hat = 0.5 + 2.5 * u(rng);
  const double sign = u(rng) < 0.5 ? -1.0 : 1.0;
  st.a_hat = u(rng) < 0.125 ? 0.0 : sign * (0.2 + 2.8 * u(rng));
  st.a0_hat = 2.0 * u(rng) - 1.0;
  st.a1_hat = 2.0 * u(rng) - 1.0;
  const double th = 2.0 * M_PI * u(rng);
  const Eigen::Vector2d e(std::cos(th), std::sin(th));
  if (collinear) {
    const double k = u(rng);
    const double hp = k < 0.1 ? 0.0 : 3.0 * u(rng) - 1.5;
    const double hv = k > 0.9 ? 0.0 : 3.0 * u(rng) - 1.5;
    st.H_plasma = hp * e;
    st.H_vacuum = hv * e;
  } else {
    const double phi = 0.35 + (M_PI - 0.7) * u(rng);
    const Eigen::Vector2d f(std::cos(th + phi), std::sin(th + phi));
    const double hp = 0.6 + 1.4 * u(rng);
    const double hv = 0.6 + 1.4 * u(rng);
    st.H_plasma = hp * e;
    st.H_vacuum = hv * f;
    if (std::abs(hp * hv * std::sin(phi)) < 0.3) st.H_vacuum *= 0.3 / std::abs(hp * hv * std::sin(phi));
  }
  return d;
}

/// Random Euler state (magnetic data zero).
inline mhdlab::BasicState euler_state(std::mt19937_64& rng) {
  StateDraw d = mhd_state(rng, true);
  d.state.H_plasma.setZero();
  d.state.H_vacuum.setZero();
  d.state.a1_hat = 0.0;
  return d.state;
}

}  // namespace sample
