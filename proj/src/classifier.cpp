#include "mhdlab/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mhdlab/errors.hpp"
#include "mhdlab/parallel.hpp"

namespace mhdlab {
namespace {

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() * b.y() - a.y() * b.x();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<Wavevector> default_samples() {
  std::vector<Wavevector> out;
  for (int i = 0; i < 16; ++i) {
    const double th = M_PI * (i + 0.5) / 16.0;
    out.push_back({std::cos(th), std::sin(th)});
  }
  return out;
}

double parse_double(std::string_view text, std::string_view context) {
  std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ConfigError("invalid number '" + s + "' in " + std::string(context));
  }
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

bool is_collinear(const BasicState& st, double rel_tol) {
  if (rel_tol < 0.0) throw DomainError("rel_tol must be non-negative");
  const double scale = std::max(1.0, st.H_plasma.norm() * st.H_vacuum.norm());
  return std::abs(cross(st.H_plasma, st.H_vacuum)) <= rel_tol * scale;
}

Wavevector witness_direction(const BasicState& st) {
  const Eigen::Vector2d& d =
      st.H_plasma.norm() >= st.H_vacuum.norm() ? st.H_plasma : st.H_vacuum;
  const double len = d.norm();
  if (len == 0.0) return {1.0, 0.0};
  // + 0.0 keeps -0 out of printed witnesses
  return {-d.y() / len + 0.0, d.x() / len + 0.0};
}

Classification classify_frozen(ModelKind model, const BasicState& st, double rel_tol) {
  validate(model, st);
  Classification c;
  c.collinear = is_mhd(model) ? is_collinear(st, rel_tol) : true;
  c.rt_sign_ok = st.a_hat < 0.0;
  const bool a_zero = a_hat_is_zero(st);
  if (a_zero && st.a_hat != 0.0) {
    c.warnings.push_back("|a_hat| = " + fmt(std::abs(st.a_hat)) +
                         " is below the zero tolerance; treated as a_hat = 0");
  }
  if (c.collinear && !a_zero && st.a_hat > 0.0) {
    c.verdict = Verdict::IllPosed;
  } else if (c.collinear && a_zero && st.a0_hat > 0.0) {
    c.verdict = Verdict::ExponentiallyUnstable;
  } else {
    c.verdict = Verdict::NoHadamardGrowth;
  }
  if (is_mhd(model) && c.collinear) c.witness = witness_direction(st);
  return c;
}

Classification numeric_classify(ModelKind model, const BasicState& st,
                                const NumericOptions& opts) {
  const Classification analytic = classify_frozen(model, st, opts.rel_tol);

  std::vector<Wavevector> samples =
      opts.omega_samples.empty() ? default_samples() : opts.omega_samples;
  const Wavevector witness = is_mhd(model) ? witness_direction(st) : Wavevector{1.0, 0.0};
  samples.push_back(witness);

  std::ostringstream dump;
  std::vector<std::optional<ScalingFit>> fits;
  for (const Wavevector& om : samples) {
    dump << "omega=(" << fmt(om.omega2) << "," << fmt(om.omega3) << ") ";
    try {
      const ScalingFit f = fit_scaling(model, st, om, opts.n_grid, opts.roots);
      fits.push_back(f);
      dump << "exponent=" << fmt(f.exponent) << " coefficient=" << fmt(f.coefficient)
           << " rms_log_error=" << fmt(f.rms_log_error) << "\n";
    } catch (const PartialFitError& e) {
      fits.push_back(std::nullopt);
      dump << e.what() << "\n";
    }
  }

  auto near = [&](const ScalingFit& f, double p) {
    return std::abs(f.exponent - p) <= opts.exponent_window && f.coefficient > 0.0;
  };

  Classification c = analytic;
  c.evidence.reset();
  for (const auto& f : fits) {
    if (f && (!c.evidence || f->exponent < c.evidence->exponent)) c.evidence = f;
  }

  const bool ill = std::any_of(fits.begin(), fits.end(),
                               [&](const auto& f) { return f && near(*f, 0.5); });
  bool exp_unstable = false;
  if (!ill && fits.back() && near(*fits.back(), 1.0)) {
    const WPair w = is_mhd(model) ? w_pair(st, witness) : WPair{};
    const double field = std::max({1.0, st.H_plasma.norm(), st.H_vacuum.norm()});
    const bool fields_vanish = std::abs(w.w_plus) <= opts.rel_tol * field &&
                               std::abs(w.w_minus) <= opts.rel_tol * field;
    exp_unstable = fields_vanish;
    for (long n : opts.n_grid) {
      if (!exp_unstable) break;
      const auto dom = dominant_root(solve_dispersion(model, st, witness, n, opts.roots));
      // Roundoff in the witness leaves |Im s| ~ 1e-9 |s|; oscillatory roots have
      // |Im s| >> |Re s|.
      exp_unstable = dom && std::abs(dom->s.imag()) <= 1e-6 * std::abs(dom->s);
    }
    if (exp_unstable) c.evidence = fits.back();
  }

  c.verdict = ill ? Verdict::IllPosed
                  : (exp_unstable ? Verdict::ExponentiallyUnstable : Verdict::NoHadamardGrowth);
  if (c.verdict != analytic.verdict) {
    throw ConflictError("numeric verdict " + std::string(to_string(c.verdict)) +
                            " disagrees with analytic verdict " +
                            std::string(to_string(analytic.verdict)),
                        dump.str());
  }
  return c;
}

const std::vector<std::string>& state_field_names() {
  static const std::vector<std::string> names{
      "rho_hat",    "c_hat",      "H_plasma_2", "H_plasma_3", "H_vacuum_2",
      "H_vacuum_3", "a_hat",      "a0_hat",     "a1_hat"};
  return names;
}

double& state_field(BasicState& st, std::string_view name) {
  if (name == "rho_hat") return st.rho_hat;
  if (name == "c_hat") return st.c_hat;
  if (name == "H_plasma_2") return st.H_plasma.x();
  if (name == "H_plasma_3") return st.H_plasma.y();
  if (name == "H_vacuum_2") return st.H_vacuum.x();
  if (name == "H_vacuum_3") return st.H_vacuum.y();
  if (name == "a_hat") return st.a_hat;
  if (name == "a0_hat") return st.a0_hat;
  if (name == "a1_hat") return st.a1_hat;
  throw ConfigError("unknown basic-state field '" + std::string(name) + "'");
}

double state_field(const BasicState& st, std::string_view name) {
  BasicState copy = st;
  return state_field(copy, name);
}

GridAxis parse_axis(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("grid axis '" + std::string(spec) + "' must look like field=lo:hi:count or field=v1,v2");
  }
  GridAxis axis;
  axis.field = std::string(trim(spec.substr(0, eq)));
  BasicState probe;
  state_field(probe, axis.field);
  const std::string_view body = trim(spec.substr(eq + 1));
  const std::string context = "grid axis '" + axis.field + "'";

  if (body.find(':') != std::string_view::npos) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || body[i] == ':') {
        parts.push_back(trim(body.substr(start, i - start)));
        start = i + 1;
      }
    }
    if (parts.size() != 3) throw ConfigError(context + " range must be lo:hi:count");
    const double lo = parse_double(parts[0], context);
    const double hi = parse_double(parts[1], context);
    long count = 0;
    const auto [ptr, ec] =
        std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc{} || ptr != parts[2].data() + parts[2].size() || count < 0) {
      throw ConfigError(context + " count must be a non-negative integer");
    }
    for (long i = 0; i < count; ++i) {
      const double v = count == 1 ? lo
                       : i == count - 1
                           ? hi
                           : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
      axis.values.push_back(v);
    }
  } else if (!body.empty()) {
    std::size_t start = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
      if (i == body.size() || body[i] == ',') {
        axis.values.push_back(parse_double(trim(body.substr(start, i - start)), context));
        start = i + 1;
      }
    }
  }
  return axis;
}

std::size_t ParameterGrid::size() const {
  if (axes.empty()) return 0;
  std::size_t total = 1;
  for (const GridAxis& a : axes) {
    if (a.values.empty()) return 0;
    if (total > max_points) return total;  // avoid overflow; already too big
    total *= a.values.size();
  }
  return total;
}

std::vector<SweepRow> sweep(ModelKind model, const BasicState& base,
                            const ParameterGrid& grid, const SweepOptions& opts) {
  std::vector<std::string> seen;
  for (const GridAxis& a : grid.axes) {
    BasicState probe;
    state_field(probe, a.field);
    if (std::find(seen.begin(), seen.end(), a.field) != seen.end()) {
      throw ConfigError("grid axis '" + a.field + "' given twice");
    }
    seen.push_back(a.field);
    for (double v : a.values) {
      if (!std::isfinite(v)) throw ConfigError("grid axis '" + a.field + "' has a non-finite value");
    }
  }
  const std::size_t total = grid.size();
  if (total > grid.max_points) {
    throw ConfigError("grid has " + std::to_string(total) + " points, above the cap of " +
                      std::to_string(grid.max_points));
  }

  return parallel_map(total, opts.jobs, [&](std::size_t index) {
    SweepRow row;
    row.state = base;
    row.coordinates.resize(grid.axes.size());
    std::size_t rem = index;
    for (std::size_t k = grid.axes.size(); k-- > 0;) {
      const GridAxis& a = grid.axes[k];
      const double v = a.values[rem % a.values.size()];
      rem /= a.values.size();
      row.coordinates[k] = v;
      state_field(row.state, a.field) = v;
    }
    if (opts.numeric) {
      NumericOptions no = opts.numeric_options;
      no.rel_tol = opts.rel_tol;
      row.classification = numeric_classify(model, row.state, no);
    } else {
      row.classification = classify_frozen(model, row.state, opts.rel_tol);
    }
    return row;
  });
}

}  // namespace mhdlab
