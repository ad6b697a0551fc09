#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mhdlab/domain.hpp"
#include "mhdlab/errors.hpp"

using namespace mhdlab;

namespace {

BasicState fields(double h2, double h3, double v2, double v3) {
  BasicState s;
  s.H_plasma << h2, h3;
  s.H_vacuum << v2, v3;
  return s;
}

}  // namespace

TEST(WPair, DotProductWithUnitDirection) {
  const WPair w = w_pair(fields(1, 2, 0, 0), {0.6, 0.8});
  EXPECT_NEAR(w.w_plus, 2.2, 1e-15);
  EXPECT_EQ(w.w_minus, 0.0);
}

TEST(WPair, Orthogonal) {
  EXPECT_EQ(w_pair(fields(1, 0, 0, 0), {0, 1}).w_plus, 0.0);
}

TEST(WPair, NormalizesWavevector) {
  EXPECT_NEAR(w_pair(fields(3, 4, 0, 0), {3, 4}).w_plus, 5.0, 1e-14);
}

TEST(WPair, ZeroWavevectorRejected) {
  EXPECT_THROW(w_pair(fields(1, 0, 0, 0), {0, 0}), DomainError);
}

TEST(WPair, ScaleInvariant) {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const BasicState st = fields(u(rng), u(rng), u(rng), u(rng));
    const Wavevector om{u(rng), u(rng)};
    const double k = std::exp(u(rng));
    const WPair a = w_pair(st, om);
    const WPair b = w_pair(st, {k * om.omega2, k * om.omega3});
    EXPECT_NEAR(a.w_plus, b.w_plus, 1e-12 * (1 + std::abs(a.w_plus)));
    EXPECT_NEAR(a.w_minus, b.w_minus, 1e-12 * (1 + std::abs(a.w_minus)));
  }
}

TEST(WPair, RotationInvariant) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const BasicState st = fields(u(rng), u(rng), u(rng), u(rng));
    const Wavevector om{u(rng), u(rng)};
    const Eigen::Rotation2Dd rot(u(rng));
    BasicState r = st;
    r.H_plasma = rot * st.H_plasma;
    r.H_vacuum = rot * st.H_vacuum;
    const Eigen::Vector2d o = rot * om.vector();
    const WPair a = w_pair(st, om);
    const WPair b = w_pair(r, {o.x(), o.y()});
    EXPECT_NEAR(a.w_plus, b.w_plus, 1e-12);
    EXPECT_NEAR(a.w_minus, b.w_minus, 1e-12);
  }
}

TEST(AlfvenSpeed, Examples) {
  EXPECT_DOUBLE_EQ(alfven_speed(fields(3, 4, 0, 0)), 5.0);
  BasicState z = fields(0, 0, 0, 0);
  z.rho_hat = 2;
  EXPECT_EQ(alfven_speed(z), 0.0);
  BasicState o = fields(1, 1, 0, 0);
  o.rho_hat = 2;
  EXPECT_NEAR(alfven_speed(o), 1.0, 1e-15);
}

TEST(Validate, RejectsBadStates) {
  BasicState st;
  st.rho_hat = 0;
  EXPECT_THROW(validate(ModelKind::CompressibleMHD, st), DomainError);
  st.rho_hat = 1;
  st.c_hat = -1;
  EXPECT_THROW(validate(ModelKind::CompressibleMHD, st), DomainError);
  st.c_hat = 1;
  st.a_hat = NAN;
  EXPECT_THROW(validate(ModelKind::IncompressibleMHD, st), DomainError);
}

TEST(Validate, EulerRejectsMagneticData) {
  BasicState st = fields(1, 0, 0, 0);
  EXPECT_THROW(validate(ModelKind::CompressibleEuler, st), DomainError);
  EXPECT_NO_THROW(validate(ModelKind::CompressibleMHD, st));
  BasicState a;
  a.a1_hat = 0.5;
  EXPECT_THROW(validate(ModelKind::IncompressibleEuler, a), DomainError);
}

TEST(ModelKind, ParseRoundTrip) {
  for (ModelKind m : kAllModels) EXPECT_EQ(parse_model(to_string(m)), m);
  EXPECT_EQ(parse_model("compressible_mhd"), ModelKind::CompressibleMHD);
  EXPECT_EQ(parse_model("incompressible-euler"), ModelKind::IncompressibleEuler);
  EXPECT_FALSE(parse_model("mhd").has_value());
}
