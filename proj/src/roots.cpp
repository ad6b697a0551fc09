#include "mhdlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mhdlab/dispersion.hpp"
#include "mhdlab/errors.hpp"
#include "mhdlab/parallel.hpp"
#include "mhdlab/polynomial.hpp"

namespace mhdlab {
namespace {

const Complex kI{0.0, 1.0};

double field_scale(const BasicState& st) {
  return 1.0 + st.H_plasma.squaredNorm() + st.H_vacuum.squaredNorm();
}

bool w_is_zero(const BasicState& st, const WPair& w) {
  return w.W() <= 1e-20 * field_scale(st);
}

double magnetoacoustic_B(const BasicState& st) {
  const double cA = alfven_speed(st);
  return st.c_hat * st.c_hat + cA * cA;
}

double magnetoacoustic_C(const BasicState& st, double w_plus) {
  return st.c_hat * st.c_hat * w_plus * w_plus / st.rho_hat;
}

bool same_root(Complex a, Complex b) {
  return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)) + 1e-300;
}

bool root_order(const ModeRoot& a, const ModeRoot& b) {
  if (a.s.real() != b.s.real()) return a.s.real() > b.s.real();
  const double ia = std::abs(a.s.imag());
  const double ib = std::abs(b.s.imag());
  if (ia != ib) return ia > ib;
  return a.s.imag() < b.s.imag();
}

// Candidate frequencies (possibly spurious) from the polynomialized equation.
std::vector<Complex> polynomial_candidates(ModelKind model, const BasicState& st,
                                           const WPair& w, long n,
                                           const RootOptions& opts) {
  const double nd = static_cast<double>(n);
  const double a0 = st.a0_hat;
  switch (model) {
    case ModelKind::IncompressibleEuler: {
      const auto [r1, r2] = quadratic_roots(nd, -a0, -st.a_hat / st.rho_hat);
      return {r1, r2};
    }
    case ModelKind::CompressibleEuler: {
      const double a_eff = st.a_hat / st.rho_hat;
      if (a_eff == 0.0) {
        const auto [r1, r2] = quadratic_roots(nd, -a0, 0.0);
        return {r1, r2};
      }
      // (n s^2 - a0 s)^2 = a_eff^2 (1 + s^2 / c^2)
      const Polynomial lhs{0.0, -a0, nd};
      const double c2 = st.c_hat * st.c_hat;
      Polynomial p = poly_add(poly_mul(lhs, lhs),
                              Polynomial{-a_eff * a_eff, 0.0, -a_eff * a_eff / c2});
      return aberth_roots(p, opts.max_iterations);
    }
    case ModelKind::IncompressibleMHD: {
      const Complex alpha{st.a_hat, w.w_minus * st.a1_hat};
      const double wp2 = w.w_plus * w.w_plus;
      Polynomial p{-a0 * wp2, nd * w.W() - alpha, -a0 * st.rho_hat, nd * st.rho_hat};
      return aberth_roots(p, opts.max_iterations);
    }
    case ModelKind::CompressibleMHD: {
      // A(s) + sqrt(R(s)) E(s) = 0 with A = (n s - a0) P, E = s (n w-^2 - alpha).
      const Complex alpha{st.a_hat, w.w_minus * st.a1_hat};
      const double wp2 = w.w_plus * w.w_plus;
      const Polynomial A = poly_mul({-a0, nd}, {wp2, 0.0, st.rho_hat});
      const Complex e1 = nd * w.w_minus * w.w_minus - alpha;
      if (e1 == 0.0) return aberth_roots(A, opts.max_iterations);
      const Polynomial E{0.0, e1};
      const double B = magnetoacoustic_B(st);
      const double C = magnetoacoustic_C(st, w.w_plus);
      Polynomial p;
      if (C == 0.0) {
        // R = 1 + s^2 / B:  A^2 B = E^2 (B + s^2)
        p = poly_add(poly_scale(poly_mul(A, A), B),
                     poly_scale(poly_mul(poly_mul(E, E), {B, 0.0, 1.0}), -1.0));
      } else {
        // R = (B s^2 + C + s^4) / (B s^2 + C)
        p = poly_add(poly_mul(poly_mul(A, A), {C, 0.0, B}),
                     poly_scale(poly_mul(poly_mul(E, E), {C, 0.0, B, 0.0, 1.0}), -1.0));
      }
      return aberth_roots(p, opts.max_iterations);
    }
  }
  return {};
}

// G(s) = rho s^2 + w+^2 + w-^2 sqrt(R(s)) and G'(s).
struct LeadingOrder {
  Complex value{};
  Complex derivative{};
  double scale = 0.0;
  Complex root_R{};
};

LeadingOrder leading_order(const BasicState& st, const WPair& w, double B, double C,
                           bool compressible, Complex s) {
  Complex r = 1.0;
  Complex dr = 0.0;
  if (compressible) {
    const Radicand rad = magnetoacoustic_radicand(B, C, s);
    r = std::sqrt(rad.value);
    dr = r == 0.0 ? Complex{} : rad.derivative / (2.0 * r);
  }
  const double wp2 = w.w_plus * w.w_plus;
  const double wm2 = w.w_minus * w.w_minus;
  return {st.rho_hat * s * s + wp2 + wm2 * r, 2.0 * st.rho_hat * s + wm2 * dr,
          st.rho_hat * std::norm(s) + wp2 + wm2 * std::abs(r), r};
}

}  // namespace

double a_hat_zero_tolerance(const BasicState& st) { return 1e-12 * field_scale(st); }

bool a_hat_is_zero(const BasicState& st) {
  return std::abs(st.a_hat) <= a_hat_zero_tolerance(st);
}

ModeRoot annotate_root(ModelKind model, const BasicState& st, const Wavevector& omega,
                       Complex s, long n, const RootOptions& opts) {
  ModeRoot r;
  r.s = s;
  r.n = n;
  r.lambda_plus = lambda_plus(model, st, omega, s);
  if (is_mhd(model)) r.lambda_minus = lambda_minus(model);
  r.residual = dispersion_eval(model, st, omega, s, n).relative_residual();
  r.neutral = (s == 0.0);
  r.admissible = !r.neutral && r.residual <= opts.residual_tolerance &&
                 s.real() > kAdmissibilityMargin * std::abs(s) &&
                 r.lambda_plus.real() < 0.0 &&
                 (!r.lambda_minus || r.lambda_minus->real() > 0.0);
  return r;
}

Complex newton_refine(ModelKind model, const BasicState& st, const Wavevector& omega,
                      long n, Complex seed, const RootOptions& opts) {
  Complex s = seed;
  Complex best = seed;
  double best_res = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iterations; ++it) {
    const DeterminantValue d = dispersion_eval(model, st, omega, s, n);
    const double res = d.relative_residual();
    if (res < best_res) {
      best_res = res;
      best = s;
    }
    if (d.value == 0.0) return s;
    if (d.jacobian_ds == 0.0) break;
    const Complex step = d.value / d.jacobian_ds;
    s -= step;
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) break;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(s))) return s;
  }
  throw ConvergenceError("Newton iteration on the dispersion relation did not converge",
                         best, opts.max_iterations);
}

std::vector<ModeRoot> solve_dispersion(ModelKind model, const BasicState& st,
                                       const Wavevector& omega, long n,
                                       const RootOptions& opts) {
  validate(model, st);
  if (n < 1) throw DomainError("mode index n must be >= 1");
  const WPair w = is_mhd(model) ? w_pair(st, omega) : (omega.unit(), WPair{});

  std::vector<Complex> candidates = polynomial_candidates(model, st, w, n, opts);
  if (model == ModelKind::CompressibleMHD) {
    for (const AsymptoticRoot& a : asymptotic_root(model, st, omega)) {
      candidates.push_back(a.evaluate(static_cast<double>(n)));
    }
  }

  std::vector<Complex> accepted;
  auto accept = [&](Complex s) {
    for (Complex& a : accepted) {
      if (same_root(a, s)) return;
    }
    accepted.push_back(s);
  };

  if (dispersion_eval(model, st, omega, 0.0, n).value == 0.0) accept(0.0);

  for (const Complex& c : candidates) {
    if (c == 0.0 || !std::isfinite(c.real()) || !std::isfinite(c.imag())) continue;
    Complex s = c;
    try {
      s = newton_refine(model, st, omega, n, c, opts);
    } catch (const ConvergenceError& e) {
      s = e.best_iterate();
    } catch (const SingularityError&) {
      continue;
    }
    try {
      if (dispersion_eval(model, st, omega, s, n).relative_residual() <=
          opts.residual_tolerance) {
        accept(s);
      }
    } catch (const SingularityError&) {
    }
  }

  std::vector<ModeRoot> out;
  for (const Complex& s : accepted) {
    try {
      out.push_back(annotate_root(model, st, omega, s, n, opts));
    } catch (const SingularityError&) {
    }
  }
  std::sort(out.begin(), out.end(), root_order);
  return out;
}

std::optional<ModeRoot> dominant_root(const std::vector<ModeRoot>& roots) {
  std::optional<ModeRoot> best;
  for (const ModeRoot& r : roots) {
    if (r.admissible && (!best || root_order(r, *best))) best = r;
  }
  return best;
}

Complex AsymptoticRoot::evaluate(double n) const {
  const double rn = std::sqrt(n);
  return s0 + s1 / rn + s2 / n + s3 / (n * rn);
}

std::vector<AsymptoticRoot> asymptotic_root(ModelKind model, const BasicState& st,
                                            const Wavevector& omega) {
  validate(model, st);
  const WPair w = is_mhd(model) ? w_pair(st, omega) : (omega.unit(), WPair{});
  const double a0 = st.a0_hat;
  std::vector<AsymptoticRoot> out;

  if (w_is_zero(st, w)) {
    double inv_B = 0.0;
    if (model == ModelKind::CompressibleEuler) inv_B = 1.0 / (st.c_hat * st.c_hat);
    if (model == ModelKind::CompressibleMHD) inv_B = 1.0 / magnetoacoustic_B(st);
    if (!a_hat_is_zero(st)) {
      const double a_eff = st.a_hat / st.rho_hat;
      const Complex root = std::sqrt(Complex{a_eff, 0.0});
      for (const Complex s1 : {root, -root}) {
        AsymptoticRoot a;
        a.s1 = s1;
        a.s2 = a0 / 2.0;
        a.s3 = (a0 * a0 / 4.0 + a_eff * a_eff * inv_B / 2.0) / (2.0 * s1);
        out.push_back(a);
      }
    } else if (a0 != 0.0) {
      AsymptoticRoot a;
      a.s2 = a0;
      out.push_back(a);
    }
    return out;
  }

  const bool compressible = model == ModelKind::CompressibleMHD;
  const double B = compressible ? magnetoacoustic_B(st) : 0.0;
  const double C = compressible ? magnetoacoustic_C(st, w.w_plus) : 0.0;
  std::vector<Complex> s0s;
  if (compressible) {
    s0s = leading_order_roots(st, w);
  } else {
    const Complex r = kI * std::sqrt(w.W() / st.rho_hat);
    s0s = {r, -r};
  }
  const Complex alpha{st.a_hat, w.w_minus * st.a1_hat};
  const double wp2 = w.w_plus * w.w_plus;
  for (const Complex s0 : s0s) {
    const LeadingOrder g = leading_order(st, w, B, C, compressible, s0);
    AsymptoticRoot a;
    a.s0 = s0;
    const Complex denom = s0 * g.derivative;
    if (denom != 0.0) {
      a.s2 = (alpha * s0 * g.root_R + a0 * (st.rho_hat * s0 * s0 + wp2)) / denom;
    }
    out.push_back(a);
  }
  if (a0 * wp2 != 0.0) {
    AsymptoticRoot a;
    a.s2 = a0 * wp2 / w.W();
    out.push_back(a);
  }
  return out;
}

ScalingFit fit_scaling(ModelKind model, const BasicState& st, const Wavevector& omega,
                       const std::vector<long>& n_grid, const RootOptions& opts) {
  if (n_grid.size() < 2) throw DomainError("fit_scaling needs at least two mode indices");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw DomainError("mode indices must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw DomainError("n_grid must be strictly increasing");
    }
  }
  if (n_grid.back() < 10 * n_grid.front()) {
    throw DomainError("n_grid must span at least one decade");
  }

  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<long> failing;
  for (long n : n_grid) {
    const auto dom = dominant_root(solve_dispersion(model, st, omega, n, opts));
    if (!dom) {
      failing.push_back(n);
      continue;
    }
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(dom->s.real()));
  }
  if (!failing.empty()) {
    std::ostringstream msg;
    msg << "no admissible root for n =";
    for (long n : failing) msg << ' ' << n;
    throw PartialFitError(msg.str(), failing);
  }

  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (intercept + slope * xs[i]);
    sse += e * e;
  }
  return {-slope, std::exp(intercept), n_grid.front(), n_grid.back(), std::sqrt(sse / m)};
}

std::vector<Complex> leading_order_roots(const BasicState& st, const WPair& w) {
  const double B = magnetoacoustic_B(st);
  const double C = magnetoacoustic_C(st, w.w_plus);
  const double rho = st.rho_hat;
  const double wp2 = w.w_plus * w.w_plus;
  const double wm2 = w.w_minus * w.w_minus;

  if (wm2 == 0.0) {
    if (wp2 == 0.0) return {};
    const Complex r = kI * std::abs(w.w_plus) / std::sqrt(rho);
    return {r, -r};
  }

  // Square rho z + w+^2 = -w-^2 sqrt(R) with z = s^2.
  Polynomial p;
  if (C == 0.0) {
    // rho^2 z^2 = w-^4 (1 + z / B), times B
    p = {-wm2 * wm2 * B, -wm2 * wm2, rho * rho * B};
  } else {
    const Polynomial lin{wp2, rho};
    p = poly_add(poly_mul(poly_mul(lin, lin), {C, B}),
                 poly_scale(Polynomial{C, B, 1.0}, -wm2 * wm2));
  }
  poly_deflate_zero_roots(p);

  std::vector<Complex> out;
  for (const Complex z : aberth_roots(p)) {
    if (z == 0.0) continue;
    const Complex sq = std::sqrt(z);
    for (const Complex s : {sq, -sq}) {
      LeadingOrder g;
      try {
        g = leading_order(st, w, B, C, true, s);
      } catch (const SingularityError&) {
        continue;
      }
      if (std::abs(g.value) > 1e-8 * g.scale) continue;
      if (std::none_of(out.begin(), out.end(), [&](Complex o) { return same_root(o, s); })) {
        out.push_back(s);
      }
    }
  }
  return out;
}

S0Report scan_s0(const BasicState& st, const std::vector<Wavevector>& omega_samples,
                 double tolerance, unsigned jobs) {
  validate(ModelKind::CompressibleMHD, st);
  for (const Wavevector& om : omega_samples) {
    const WPair w = w_pair(st, om);
    if (w.w_plus == 0.0 && w.w_minus == 0.0) {
      throw DomainError("scan_s0 requires w+ or w- nonzero for every sample");
    }
  }

  S0Report report;
  report.tolerance = tolerance;
  report.samples = parallel_map(omega_samples.size(), jobs, [&](std::size_t i) {
    S0Sample sample;
    sample.omega = omega_samples[i];
    sample.w = w_pair(st, sample.omega);
    sample.max_re = -std::numeric_limits<double>::infinity();
    try {
      sample.roots = leading_order_roots(st, sample.w);
      for (const Complex r : sample.roots) sample.max_re = std::max(sample.max_re, r.real());
    } catch (const Error& e) {
      sample.diagnostic = e.what();
    }
    return sample;
  });

  report.max_re = -std::numeric_limits<double>::infinity();
  report.passed = true;
  for (const S0Sample& s : report.samples) {
    if (!s.diagnostic.empty()) report.passed = false;
    report.max_re = std::max(report.max_re, s.max_re);
  }
  if (report.max_re > tolerance) report.passed = false;
  return report;
}

}  // namespace mhdlab
