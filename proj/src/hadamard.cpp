#include "mhdlab/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mhdlab/dispersion.hpp"
#include "mhdlab/errors.hpp"

namespace mhdlab {
namespace {

const Complex kI{0.0, 1.0};

using Array = Eigen::ArrayXXd;

struct Component {
  std::string name;
  Complex amp;
};

std::vector<Component> plasma_components(const HadamardMode& m) {
  const ModeAmplitudes& a = m.amplitudes;
  std::vector<Component> out{{is_mhd(m.model) ? "q" : "p", a.q},
                             {"v1", a.v(0)},
                             {"v2", a.v(1)},
                             {"v3", a.v(2)}};
  if (is_mhd(m.model)) {
    out.push_back({"H1", a.H(0)});
    out.push_back({"H2", a.H(1)});
    out.push_back({"H3", a.H(2)});
  }
  return out;
}

// Vacuum potential and its gradient Hv = grad xi, with lambda- = 1.
std::vector<Component> vacuum_components(const HadamardMode& m) {
  if (!is_mhd(m.model)) return {};
  const double n = static_cast<double>(m.root.n);
  const Eigen::Vector2d e = m.omega.unit();
  const Complex xi = m.amplitudes.xi;
  return {{"xi", xi},
          {"Hv1", n * xi},
          {"Hv2", kI * n * e.x() * xi},
          {"Hv3", kI * n * e.y() * xi}};
}

Complex lambda_minus_of(const HadamardMode& m) {
  return is_mhd(m.model) ? lambda_minus(m.model) : Complex{};
}

// exp{n (s t + lambda x1 + i eta) - shift}, or its logarithm.
Eigen::MatrixXcd sample_block(const Component& c, long n_mode, Complex s, Complex lambda,
                              const Eigen::VectorXd& x1, const Eigen::VectorXd& eta, double t,
                              double shift, bool log_values) {
  const double n = static_cast<double>(n_mode);
  Eigen::MatrixXcd out(x1.size(), eta.size());
  const Complex log_amp = std::log(c.amp);
  for (Eigen::Index i = 0; i < x1.size(); ++i) {
    for (Eigen::Index j = 0; j < eta.size(); ++j) {
      const Complex z = n * (s * t + lambda * x1(i) + kI * eta(j)) - shift;
      out(i, j) = log_values ? log_amp + z : c.amp * std::exp(z);
    }
  }
  return out;
}

SampledFields sample(const HadamardMode& m, const GridSpec& g, double t, double shift,
                     bool log_values) {
  const double h = g.spacing();
  SampledFields f;
  f.log_values = log_values;
  f.direction = m.omega.unit();
  f.eta = Eigen::VectorXd::LinSpaced(g.points_per_wavelength, 0.0,
                                     h * (g.points_per_wavelength - 1));
  const int np = g.x1_points_plus();
  f.x1_plus = Eigen::VectorXd::LinSpaced(np, 0.0, h * (np - 1));
  for (const Component& c : plasma_components(m)) {
    f.plasma_names.push_back(c.name);
    f.plasma.push_back(sample_block(c, m.root.n, m.root.s, m.root.lambda_plus, f.x1_plus, f.eta,
                                    t, shift, log_values));
  }
  if (is_mhd(m.model)) {
    const int nm = g.x1_points_minus();
    f.x1_minus = Eigen::VectorXd::LinSpaced(nm, -h * (nm - 1), 0.0);
    f.x1_minus(nm - 1) = 0.0;
    for (const Component& c : vacuum_components(m)) {
      f.vacuum_names.push_back(c.name);
      f.vacuum.push_back(sample_block(c, m.root.n, m.root.s, lambda_minus_of(m), f.x1_minus,
                                      f.eta, t, shift, log_values));
    }
  }
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  f.phi = sample_block({"phi", m.amplitudes.phi}, m.root.n, m.root.s, 0.0, zero, f.eta, t, shift,
                       log_values)
              .row(0)
              .transpose();
  return f;
}

// ------------------------------------------------------------ differences

Array d1(const Array& a, double h) {
  const Eigen::Index n = a.rows();
  Array out(a.rows(), a.cols());
  for (Eigen::Index i = 1; i + 1 < n; ++i) out.row(i) = (a.row(i + 1) - a.row(i - 1)) / (2 * h);
  out.row(0) = (-3 * a.row(0) + 4 * a.row(1) - a.row(2)) / (2 * h);
  out.row(n - 1) = (3 * a.row(n - 1) - 4 * a.row(n - 2) + a.row(n - 3)) / (2 * h);
  return out;
}

Array d11(const Array& a, double h) {
  const Eigen::Index n = a.rows();
  Array out(a.rows(), a.cols());
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    out.row(i) = (a.row(i + 1) - 2 * a.row(i) + a.row(i - 1)) / (h * h);
  }
  out.row(0) = (2 * a.row(0) - 5 * a.row(1) + 4 * a.row(2) - a.row(3)) / (h * h);
  out.row(n - 1) =
      (2 * a.row(n - 1) - 5 * a.row(n - 2) + 4 * a.row(n - 3) - a.row(n - 4)) / (h * h);
  return out;
}

Array deta(const Array& a, double h) {
  const Eigen::Index m = a.cols();
  Array out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < m; ++j) {
    out.col(j) = (a.col((j + 1) % m) - a.col((j + m - 1) % m)) / (2 * h);
  }
  return out;
}

Array detaeta(const Array& a, double h) {
  const Eigen::Index m = a.cols();
  Array out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < m; ++j) {
    out.col(j) = (a.col((j + 1) % m) - 2 * a.col(j) + a.col((j + m - 1) % m)) / (h * h);
  }
  return out;
}

enum class Op { Dt, D1, D11, Deta, Detaeta };

struct Term {
  double coef;
  Op op;
  int field;
};

struct Equation {
  std::string name;
  std::string kind;
  bool vacuum;
  std::vector<Term> terms;
};

// Real parts of one block at t - dt, t, t + dt.
struct Levels {
  std::vector<Array> before, now, after;
};

Levels real_levels(const std::vector<Eigen::MatrixXcd>& b0, const std::vector<Eigen::MatrixXcd>& b1,
                   const std::vector<Eigen::MatrixXcd>& b2) {
  Levels l;
  for (std::size_t k = 0; k < b1.size(); ++k) {
    l.before.push_back(b0[k].real().array());
    l.now.push_back(b1[k].real().array());
    l.after.push_back(b2[k].real().array());
  }
  return l;
}

Array apply(const Term& t, const Levels& l, double h, double dt) {
  switch (t.op) {
    case Op::Dt: return (l.after[t.field] - l.before[t.field]) / (2 * dt);
    case Op::D1: return d1(l.now[t.field], h);
    case Op::D11: return d11(l.now[t.field], h);
    case Op::Deta: return deta(l.now[t.field], h);
    case Op::Detaeta: return detaeta(l.now[t.field], h);
  }
  return {};
}

// Appends coef * div(v) terms for a velocity-like triple starting at `first`.
void add_div(std::vector<Term>& terms, double coef, int first, const Eigen::Vector2d& e) {
  terms.push_back({coef, Op::D1, first});
  terms.push_back({coef * e.x(), Op::Deta, first + 1});
  terms.push_back({coef * e.y(), Op::Deta, first + 2});
}

std::vector<Equation> equations(const HadamardMode& m) {
  const BasicState& st = m.state;
  const Eigen::Vector2d e = m.omega.unit();
  const double rho = st.rho_hat;
  const double rc2 = rho * st.c_hat * st.c_hat;
  const double wp = is_mhd(m.model) ? w_pair(st, m.omega).w_plus : 0.0;
  // plasma indices: 0 pressure, 1-3 velocity, 4-6 field
  std::vector<Equation> eqs;
  for (int j = 0; j < 3; ++j) {
    Equation eq{"momentum_" + std::to_string(j + 1), "interior", false, {}};
    eq.terms.push_back({rho, Op::Dt, 1 + j});
    if (j == 0) {
      eq.terms.push_back({1.0, Op::D1, 0});
    } else {
      eq.terms.push_back({e(j - 1), Op::Deta, 0});
    }
    if (is_mhd(m.model)) eq.terms.push_back({-wp, Op::Deta, 4 + j});
    eqs.push_back(eq);
  }
  if (is_compressible(m.model)) {
    Equation eq{"pressure", "interior", false, {{1.0, Op::Dt, 0}}};
    if (is_mhd(m.model)) {
      eq.terms.push_back({-st.H_plasma.x(), Op::Dt, 5});
      eq.terms.push_back({-st.H_plasma.y(), Op::Dt, 6});
    }
    add_div(eq.terms, rc2, 1, e);
    eqs.push_back(eq);
  } else {
    Equation eq{"div_v", "interior", false, {}};
    add_div(eq.terms, 1.0, 1, e);
    eqs.push_back(eq);
  }
  if (!is_mhd(m.model)) return eqs;

  const double Hhat[3] = {0.0, st.H_plasma.x(), st.H_plasma.y()};
  for (int j = 0; j < 3; ++j) {
    Equation eq{"induction_" + std::to_string(j + 1), "interior", false, {}};
    eq.terms.push_back({1.0, Op::Dt, 4 + j});
    eq.terms.push_back({-wp, Op::Deta, 1 + j});
    if (is_compressible(m.model) && Hhat[j] != 0.0) add_div(eq.terms, Hhat[j], 1, e);
    eqs.push_back(eq);
  }
  Equation div_h{"div_H", "constraint", false, {}};
  add_div(div_h.terms, 1.0, 4, e);
  eqs.push_back(div_h);

  // vacuum indices: 0 xi, 1-3 grad xi
  eqs.push_back({"vacuum_laplace", "interior", true, {{1.0, Op::D11, 0}, {1.0, Op::Detaeta, 0}}});
  Equation vdiv{"vacuum_div", "constraint", true, {}};
  add_div(vdiv.terms, 1.0, 1, e);
  eqs.push_back(vdiv);
  eqs.push_back({"vacuum_curl_1", "constraint", true,
                 {{e.x(), Op::Deta, 3}, {-e.y(), Op::Deta, 2}}});
  eqs.push_back({"vacuum_curl_2", "constraint", true, {{e.y(), Op::Deta, 1}, {-1.0, Op::D1, 3}}});
  eqs.push_back({"vacuum_curl_3", "constraint", true, {{1.0, Op::D1, 2}, {-e.x(), Op::Deta, 1}}});
  return eqs;
}

ResidualEntry reduce(const std::string& name, const std::string& kind, const Array& residual,
                     const Array& scale) {
  ResidualEntry r{name, kind, 0.0, scale.maxCoeff()};
  if (r.scale > 0.0) r.relative = residual.abs().maxCoeff() / r.scale;
  return r;
}

// Complex pointwise residual sum_k c_k over the eta grid.
ResidualEntry algebraic(const std::string& name, const std::string& kind,
                        const std::vector<Eigen::VectorXcd>& terms) {
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(terms.front().size());
  Eigen::VectorXd mag = Eigen::VectorXd::Zero(terms.front().size());
  for (const auto& t : terms) {
    sum += t;
    mag += t.cwiseAbs();
  }
  ResidualEntry r{name, kind, 0.0, mag.maxCoeff()};
  if (r.scale > 0.0) r.relative = sum.cwiseAbs().maxCoeff() / r.scale;
  return r;
}

double depth(double n, double re_lambda) {
  if (re_lambda == 0.0) return 20.0;
  return std::min(40.0 / (n * std::abs(re_lambda)), 20.0);
}

double log_sup(const SampledFields& f) {
  double best = -std::numeric_limits<double>::infinity();
  auto visit = [&](const auto& block) {
    for (Eigen::Index k = 0; k < block.size(); ++k) {
      const Complex v = block(k);
      best = std::max(best, f.log_values ? v.real() : std::log(std::abs(v)));
    }
  };
  for (const auto& b : f.plasma) visit(b);
  for (const auto& b : f.vacuum) visit(b);
  visit(f.phi);
  return best;
}

}  // namespace

HadamardMode build_mode(ModelKind model, const BasicState& st, const Wavevector& omega,
                        const ModeRoot& root) {
  validate(model, st);
  if (!root.admissible && !root.neutral) {
    throw DomainError("build_mode needs an admissible or neutral root");
  }
  const Eigen::Vector2d e = omega.unit();
  const Complex s = root.s;

  const Eigen::MatrixXcd M = boundary_matrix(model, st, omega, s, root.n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double sigma_rel = sv(sv.size() - 1) / sv(0);
  if (!(sigma_rel <= kNullspaceTolerance)) {
    throw NotARootError("boundary matrix is numerically full rank at s", sigma_rel);
  }
  Eigen::VectorXcd z = svd.matrixV().col(M.cols() - 1);

  HadamardMode mode;
  mode.model = model;
  mode.state = st;
  mode.omega = omega;
  mode.root = root;
  if (std::abs(z(0)) > kNullspaceTolerance * z.norm()) {
    z /= z(0);
    z(0) = 1.0;
    mode.normalization = Normalization::InterfaceUnit;
  } else {
    z /= z.norm();
    mode.normalization = Normalization::UnitNorm;
  }

  ModeAmplitudes& a = mode.amplitudes;
  a.phi = z(0);
  a.q = z(1);
  if (is_mhd(model)) a.xi = z(2);

  const Complex lambda = lambda_plus(model, st, omega, s);
  const Eigen::Vector3cd k(lambda, kI * e.x(), kI * e.y());

  if (!is_mhd(model)) {
    if (s == 0.0) throw ResonanceError("Euler velocity -k q / (rho s) has a pole at s = 0");
    a.v = -k * a.q / (st.rho_hat * s);
    return mode;
  }

  const double wp = w_pair(st, omega).w_plus;
  const Complex P = st.rho_hat * s * s + wp * wp;
  if (std::abs(P) <= 1e-14 * (st.rho_hat * std::norm(s) + wp * wp)) {
    throw ResonanceError("rho s^2 + w+^2 vanishes (Alfven resonance)");
  }
  if (model == ModelKind::IncompressibleMHD) {
    a.v = -s * k * a.q / P;
    a.H = -kI * wp * k * a.q / P;
    return mode;
  }

  // div v = -(K/s) q / rho with K = lambda^2 - 1 = s^4 / (B s^2 + C).
  const double cA = alfven_speed(st);
  const double B = st.c_hat * st.c_hat + cA * cA;
  const double C = st.c_hat * st.c_hat * wp * wp / st.rho_hat;
  const Complex k_over_s = C == 0.0 ? s / B : s * s * s / (B * s * s + C);
  const Complex d = -k_over_s * a.q / st.rho_hat;
  const Eigen::Vector3cd Hhat(0.0, st.H_plasma.x(), st.H_plasma.y());
  a.v = (-kI * wp * d * Hhat - s * k * a.q) / P;
  a.H = -(st.rho_hat * s * d * Hhat + kI * wp * k * a.q) / P;
  return mode;
}

int GridSpec::x1_points_plus() const {
  return static_cast<int>(std::lround(x1_extent_plus / spacing())) + 1;
}

int GridSpec::x1_points_minus() const {
  return static_cast<int>(std::lround(x1_extent_minus / spacing())) + 1;
}

GridSpec make_grid(const HadamardMode& mode, int points_per_wavelength) {
  if (points_per_wavelength < 8) {
    throw GridError("at least 8 points per wavelength are needed; got " +
                    std::to_string(points_per_wavelength));
  }
  const double n = static_cast<double>(mode.root.n);
  GridSpec g;
  g.points_per_wavelength = points_per_wavelength;
  g.tangential_period = 2.0 * M_PI / n;
  const double h = g.spacing();
  g.x1_extent_plus = std::ceil(depth(n, mode.root.lambda_plus.real()) / h) * h;
  if (is_mhd(mode.model)) {
    g.x1_extent_minus = std::ceil(depth(n, lambda_minus(mode.model).real()) / h) * h;
  }
  check_grid(mode, g);
  return g;
}

void check_grid(const HadamardMode& mode, const GridSpec& g) {
  const double n = static_cast<double>(mode.root.n);
  if (g.points_per_wavelength < 8) {
    throw GridError("at least 8 points per wavelength are needed; refine the grid");
  }
  if (std::abs(g.tangential_period * n - 2.0 * M_PI) > 1e-12) {
    throw GridError("tangential period must be one wavelength 2 pi / n");
  }
  if (g.x1_points_plus() < 4) throw GridError("plasma depth spans fewer than 4 points");
  if (n * mode.root.lambda_plus.real() * g.x1_extent_plus > std::log(kTruncationEpsilon)) {
    throw GridError("plasma truncation leaves exp(n Re lambda+ L+) above 1e-16; "
                    "increase x1_extent_plus or n");
  }
  if (is_mhd(mode.model)) {
    if (g.x1_points_minus() < 4) throw GridError("vacuum depth spans fewer than 4 points");
    if (-n * g.x1_extent_minus > std::log(kTruncationEpsilon)) {
      throw GridError("vacuum truncation leaves exp(-n L-) above 1e-16; "
                      "increase x1_extent_minus or n");
    }
  }
}

SampledFields evaluate_field(const HadamardMode& mode, const GridSpec& grid, double t) {
  check_grid(mode, grid);
  const double growth = static_cast<double>(mode.root.n) * mode.root.s.real() * t;
  return sample(mode, grid, t, 0.0, growth > kOverflowExponent);
}

double ResidualReport::max_relative(const std::string& kind) const {
  double m = 0.0;
  for (const auto& e : entries) {
    if (e.kind == kind) m = std::max(m, e.relative);
  }
  return m;
}

ResidualReport pde_residual_fd(const HadamardMode& m, const GridSpec& g, double t) {
  check_grid(m, g);
  const double h = g.spacing();
  const double dt = h;
  const double n = static_cast<double>(m.root.n);
  const double shift = n * m.root.s.real() * t;

  const SampledFields f0 = sample(m, g, t - dt, shift, false);
  const SampledFields f1 = sample(m, g, t, shift, false);
  const SampledFields f2 = sample(m, g, t + dt, shift, false);
  const Levels plasma = real_levels(f0.plasma, f1.plasma, f2.plasma);
  const Levels vacuum = real_levels(f0.vacuum, f1.vacuum, f2.vacuum);

  ResidualReport rep;
  rep.h = h;
  for (const Equation& eq : equations(m)) {
    const Levels& lv = eq.vacuum ? vacuum : plasma;
    Array sum = Array::Zero(lv.now[0].rows(), lv.now[0].cols());
    Array mag = sum;
    for (const Term& term : eq.terms) {
      if (term.coef == 0.0) continue;
      const Array v = term.coef * apply(term, lv, h, dt);
      sum += v;
      mag += v.abs();
    }
    rep.entries.push_back(reduce(eq.name, eq.kind, sum, mag));
  }

  // Boundary conditions with exact symbols on the x1 = 0 traces.
  const BasicState& st = m.state;
  const Eigen::VectorXcd phi = f1.phi;
  const Eigen::VectorXcd q = f1.plasma[0].row(0).transpose();
  const Eigen::VectorXcd v1 = f1.plasma[1].row(0).transpose();
  const Complex ns = n * m.root.s;
  rep.entries.push_back(algebraic("bc_kinematic", "boundary", {ns * phi, -v1, -st.a0_hat * phi}));
  if (!is_mhd(m.model)) {
    rep.entries.push_back(algebraic("bc_pressure", "boundary", {q, -st.a_hat * phi}));
  } else {
    const Eigen::Index last = f1.vacuum[0].rows() - 1;
    const Eigen::VectorXcd hv1 = f1.vacuum[1].row(last).transpose();
    const Eigen::VectorXcd hv2 = f1.vacuum[2].row(last).transpose();
    const Eigen::VectorXcd hv3 = f1.vacuum[3].row(last).transpose();
    const double wm = w_pair(st, m.omega).w_minus;
    // l- xi = Hvac_hat . grad' xi
    rep.entries.push_back(algebraic(
        "bc_pressure", "boundary",
        {q, -st.H_vacuum.x() * hv2, -st.H_vacuum.y() * hv3, -st.a_hat * phi}));
    rep.entries.push_back(algebraic("bc_vacuum_normal", "boundary",
                                    {hv1, -kI * n * wm * phi, -st.a1_hat * phi}));
  }

  // Amplitude relations.
  const ModeAmplitudes& a = m.amplitudes;
  const Eigen::Vector2d e = m.omega.unit();
  const Complex mu = normal_velocity_amplitude(m.model, st, m.omega, m.root.s, 1.0);
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(1);
  rep.entries.push_back(algebraic("normal_velocity_relation", "algebraic",
                                  {a.v(0) * one, -mu * a.q * one}));
  if (is_mhd(m.model)) {
    rep.entries.push_back(algebraic(
        "div_H_amplitude", "algebraic",
        {m.root.lambda_plus * a.H(0) * one, kI * e.x() * a.H(1) * one, kI * e.y() * a.H(2) * one}));
  }
  return rep;
}

std::vector<ConvergenceEntry> residual_convergence(const HadamardMode& mode, double t,
                                                   int points_per_wavelength) {
  const ResidualReport coarse = pde_residual_fd(mode, make_grid(mode, points_per_wavelength), t);
  const ResidualReport fine = pde_residual_fd(mode, make_grid(mode, 2 * points_per_wavelength), t);
  std::vector<ConvergenceEntry> out;
  for (std::size_t i = 0; i < coarse.entries.size(); ++i) {
    ConvergenceEntry c{coarse.entries[i].equation, coarse.entries[i].kind,
                       coarse.entries[i].relative, fine.entries[i].relative,
                       std::numeric_limits<double>::quiet_NaN()};
    if (c.coarse > 1e-13 && c.fine > 1e-13) c.order = std::log2(c.coarse / c.fine);
    out.push_back(c);
  }
  return out;
}

std::vector<GrowthRow> growth_ratio(ModelKind model, const BasicState& st,
                                    const Wavevector& omega, const std::vector<long>& n_list,
                                    double t, int points_per_wavelength,
                                    const RootOptions& opts) {
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw DomainError("n_list must be strictly increasing");
  }
  if (!(t >= 0.0)) throw DomainError("t must be non-negative");
  std::vector<GrowthRow> rows;
  for (long n : n_list) {
    GrowthRow row;
    row.n = n;
    const auto dom = dominant_root(solve_dispersion(model, st, omega, n, opts));
    if (dom) {
      const HadamardMode mode = build_mode(model, st, omega, *dom);
      const GridSpec g = make_grid(mode, points_per_wavelength);
      row.has_root = true;
      row.s = dom->s;
      row.expected_log = static_cast<double>(n) * dom->s.real() * t;
      row.log_ratio = log_sup(evaluate_field(mode, g, t)) - log_sup(evaluate_field(mode, g, 0.0));
    }
    rows.push_back(row);
  }
  return rows;
}

FluxReport boundary_flux_check(const HadamardMode& m, double t, int samples) {
  if (!is_mhd(m.model)) {
    throw UnsupportedModelError("the boundary flux identity needs a vacuum field");
  }
  if (samples < 8) throw GridError("at least 8 samples per period are needed");
  const double n = static_cast<double>(m.root.n);
  const Eigen::Vector2d e = m.omega.unit();
  const ModeAmplitudes& a = m.amplitudes;
  const BasicState& st = m.state;
  // Hvac_hat . grad' xi at the interface
  const Complex lxi = kI * n * (st.H_vacuum.x() * e.x() + st.H_vacuum.y() * e.y()) * a.xi;
  // Products of two fields overflow past exponent ~350.
  const double growth = n * m.root.s.real() * t;
  const double shift = growth > 300.0 ? growth : 0.0;

  FluxReport r;
  r.log_scale = 2.0 * shift;
  double gap = 0.0;
  double scale = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double eta = 2.0 * M_PI / n * j / samples;
    const Complex ph = std::exp(n * (m.root.s * t + kI * eta) - shift);
    const double q = (a.q * ph).real();
    const double v1 = (a.v(0) * ph).real();
    const double phi = (a.phi * ph).real();
    const double hh = (lxi * ph).real();
    const double lhs = -q * v1;
    const double rhs = -st.a_hat * phi * v1 - hh * v1;
    r.lhs_mean += lhs / samples;
    r.rhs_mean += rhs / samples;
    gap = std::max(gap, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(q * v1) + std::abs(st.a_hat * phi * v1) + std::abs(hh * v1));
  }
  r.relative_discrepancy = scale > 0.0 ? gap / scale : 0.0;
  return r;
}

}  // namespace mhdlab
