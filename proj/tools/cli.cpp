#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "config.hpp"
#include "mhdlab/classifier.hpp"
#include "mhdlab/errors.hpp"
#include "mhdlab/hadamard.hpp"
#include "mhdlab/roots.hpp"
#include "mhdlab/vacuum_green.hpp"

namespace mhdlab::cli {
namespace {

namespace fs = std::filesystem;

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no "-0" in exports
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

Wavevector default_direction(ModelKind model, const BasicState& st) {
  return is_mhd(model) ? witness_direction(st) : Wavevector{1.0, 0.0};
}

Wavevector checked_omega(const std::vector<double>& v) {
  const Wavevector w{v.at(0), v.at(1)};
  if (!std::isfinite(w.omega2) || !std::isfinite(w.omega3) || w.norm() == 0.0) {
    throw DomainError("--omega must be a finite nonzero wavevector");
  }
  return w;
}

unsigned resolve_jobs(std::optional<unsigned> flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("MHDLAB_JOBS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
      throw ConfigError(std::string("MHDLAB_JOBS must be a positive integer, got '") + env + "'");
    }
    return static_cast<unsigned>(v);
  }
  return 1;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  return f;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  std::string config;
  bool numeric = false;
  std::optional<double> rel_tol;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
  const Config cfg = Config::load(a.config);
  const ModelKind model = cfg.model();
  const BasicState st = cfg.state();
  const double rel_tol =
      a.rel_tol.value_or(cfg.number("classify", "rel_tol").value_or(kDefaultCollinearTol));
  const bool numeric = a.numeric || cfg.flag("classify", "numeric").value_or(false);

  Classification c;
  if (numeric) {
    NumericOptions no;
    no.rel_tol = rel_tol;
    if (const auto g = cfg.integers("classify", "n_grid")) no.n_grid = *g;
    c = numeric_classify(model, st, no);
  } else {
    c = classify_frozen(model, st, rel_tol);
  }
  for (const std::string& w : c.warnings) err << "warning: " << w << "\n";
  out << "model: " << to_string(model) << "\n";
  out << "verdict: " << to_string(c.verdict) << "\n";
  out << "collinear: " << yes_no(c.collinear) << "\n";
  out << "rt_sign_ok: " << yes_no(c.rt_sign_ok) << "\n";
  if (c.witness) out << "witness: " << fmt(c.witness->omega2) << " " << fmt(c.witness->omega3) << "\n";
  if (c.evidence) {
    out << "fitted_exponent: " << fmt(c.evidence->exponent) << "\n";
    out << "fitted_coefficient: " << fmt(c.evidence->coefficient) << "\n";
  }
  return kExitOk;
}

// ------------------------------------------------------------------- roots

struct RootsArgs {
  std::string config;
  std::vector<long> n;
  std::vector<double> omega;
};

int cmd_roots(const RootsArgs& a, std::ostream& out, std::ostream& err) {
  const Config cfg = Config::load(a.config);
  const ModelKind model = cfg.model();
  const BasicState st = cfg.state();
  const Wavevector omega = !a.omega.empty() ? checked_omega(a.omega)
                           : cfg.has("roots", "omega")
                               ? checked_omega({cfg.wavevector("roots", "omega")->omega2,
                                                cfg.wavevector("roots", "omega")->omega3})
                               : default_direction(model, st);
  std::vector<long> ns = !a.n.empty() ? a.n : cfg.integers("roots", "n").value_or(std::vector<long>{100, 1000, 10000});
  for (long n : ns) {
    if (n < 1) throw DomainError("--n values must be positive");
  }

  out << "n,omega2,omega3,re_s,im_s,re_lambda_plus,im_lambda_plus,re_lambda_minus,"
         "im_lambda_minus,residual,admissible,neutral\n";
  int status = kExitOk;
  for (long n : ns) {
    const std::string prefix = std::to_string(n) + "," + fmt(omega.omega2) + "," + fmt(omega.omega3) + ",";
    try {
      for (const ModeRoot& r : solve_dispersion(model, st, omega, n)) {
        out << prefix << fmt(r.s.real()) << "," << fmt(r.s.imag()) << ","
            << fmt(r.lambda_plus.real()) << "," << fmt(r.lambda_plus.imag()) << ",";
        if (r.lambda_minus) {
          out << fmt(r.lambda_minus->real()) << "," << fmt(r.lambda_minus->imag());
        } else {
          out << ",";
        }
        out << "," << fmt(r.residual) << "," << yes_no(r.admissible) << "," << yes_no(r.neutral)
            << "\n";
      }
    } catch (const Error& e) {
      // flagged row: NaN payload, then keep going with the other n
      out << prefix << "nan,nan,nan,nan,nan,nan,nan,false,false\n";
      err << "error: n=" << n << ": " << e.what() << "\n";
      status = kExitError;
    }
  }
  return status;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  std::string config;
  std::vector<std::string> grid;
  std::optional<unsigned> jobs;
  std::optional<std::size_t> max_points;
  bool numeric = false;
  std::string out_file;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream&) {
  const Config cfg = Config::load(a.config);
  const ModelKind model = cfg.model();
  const BasicState base = cfg.state();

  ParameterGrid grid;
  for (const std::string& spec : a.grid.empty() ? cfg.all("sweep", "grid") : a.grid) {
    grid.axes.push_back(parse_axis(spec));
  }
  if (a.max_points) {
    grid.max_points = *a.max_points;
  } else if (const auto m = cfg.integer("sweep", "max_points")) {
    grid.max_points = static_cast<std::size_t>(*m);
  }
  SweepOptions opts;
  opts.jobs = resolve_jobs(a.jobs);
  opts.numeric = a.numeric || cfg.flag("sweep", "numeric").value_or(false);
  opts.rel_tol = cfg.number("sweep", "rel_tol").value_or(kDefaultCollinearTol);

  const auto rows = sweep(model, base, grid, opts);

  std::ostringstream csv;
  for (const GridAxis& ax : grid.axes) csv << ax.field << ",";
  csv << "verdict,collinear,a_hat";
  if (opts.numeric) csv << ",fitted_exponent";
  csv << "\n";
  for (const SweepRow& r : rows) {
    for (double x : r.coordinates) csv << fmt(x) << ",";
    csv << to_string(r.classification.verdict) << "," << yes_no(r.classification.collinear) << ","
        << fmt(r.state.a_hat);
    if (opts.numeric) {
      csv << ",";
      if (r.classification.evidence) csv << fmt(r.classification.evidence->exponent);
    }
    csv << "\n";
  }
  if (a.out_file.empty()) {
    out << csv.str();
  } else {
    open_output(a.out_file) << csv.str();
  }
  return kExitOk;
}

// ---------------------------------------------------------------- hadamard

struct HadamardArgs {
  std::string config;
  std::string n_list;
  std::optional<double> t;
  std::vector<double> omega;
  std::optional<int> ppw;
  bool fields = false;
  std::string out_dir;
};

void write_fields(const fs::path& path, const SampledFields& f, bool plasma) {
  std::ofstream csv = open_output(path);
  const auto& names = plasma ? f.plasma_names : f.vacuum_names;
  const auto& blocks = plasma ? f.plasma : f.vacuum;
  const Eigen::VectorXd& x1 = plasma ? f.x1_plus : f.x1_minus;
  csv << "x1,x2,x3";
  for (const std::string& n : names) csv << "," << (f.log_values ? "log_abs_" + n : n);
  csv << "\n";
  for (Eigen::Index i = 0; i < x1.size(); ++i) {
    for (Eigen::Index j = 0; j < f.eta.size(); ++j) {
      csv << fmt(x1(i)) << "," << fmt(f.eta(j) * f.direction.x()) << ","
          << fmt(f.eta(j) * f.direction.y());
      // log values store log|F| in the real part
      for (const auto& b : blocks) csv << "," << fmt(b(i, j).real());
      csv << "\n";
    }
  }
}

int cmd_hadamard(const HadamardArgs& a, std::ostream& out, std::ostream&) {
  const Config cfg = Config::load(a.config);
  const ModelKind model = cfg.model();
  const BasicState st = cfg.state();

  const std::vector<long> ns =
      !a.n_list.empty() ? parse_integer_list(a.n_list, "--n-list")
                        : cfg.integers("hadamard", "n_list").value_or(std::vector<long>{25, 100, 400});
  const double t = a.t.value_or(cfg.number("hadamard", "t").value_or(1.0));
  if (!(t >= 0.0)) throw ConfigError("--t must be non-negative");
  Wavevector omega = default_direction(model, st);
  if (!a.omega.empty()) {
    omega = checked_omega(a.omega);
  } else if (const auto w = cfg.wavevector("hadamard", "omega")) {
    omega = checked_omega({w->omega2, w->omega3});
  }
  const int ppw = a.ppw.value_or(
      static_cast<int>(cfg.integer("hadamard", "points_per_wavelength").value_or(16)));
  const bool fields = a.fields || cfg.flag("hadamard", "fields").value_or(false);
  const std::string out_dir = !a.out_dir.empty() ? a.out_dir : cfg.text("hadamard", "out").value_or("");
  if (out_dir.empty()) throw ConfigError("an output directory is required (--out or hadamard.out)");

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw ConfigError("cannot create output directory '" + out_dir + "'");
  }
  const fs::path dir(out_dir);
  std::ofstream growth = open_output(dir / "growth.csv");
  std::ofstream residuals = open_output(dir / "residuals.jsonl");

  const auto rows = growth_ratio(model, st, omega, ns, t, ppw);
  growth << "n,has_root,re_s,im_s,log_ratio,expected_log,ratio\n";
  for (const GrowthRow& r : rows) {
    growth << r.n << "," << yes_no(r.has_root) << "," << fmt(r.s.real()) << "," << fmt(r.s.imag())
           << "," << fmt(r.log_ratio) << "," << fmt(r.expected_log) << ","
           << fmt(std::exp(r.log_ratio)) << "\n";
    if (!r.has_root) continue;
    const auto dom = dominant_root(solve_dispersion(model, st, omega, r.n));
    const HadamardMode mode = build_mode(model, st, omega, *dom);
    const GridSpec grid = make_grid(mode, ppw);
    const ResidualReport rep = pde_residual_fd(mode, grid, t);
    for (const ResidualEntry& e : rep.entries) {
      nlohmann::json j{{"n", r.n},          {"t", t},           {"h", rep.h},
                       {"equation", e.equation}, {"kind", e.kind}, {"relative", e.relative},
                       {"scale", e.scale}};
      residuals << j.dump() << "\n";
    }
    if (fields) {
      const SampledFields f = evaluate_field(mode, grid, t);
      const std::string stem = "fields_n" + std::to_string(r.n);
      write_fields(dir / (stem + "_plasma.csv"), f, true);
      if (is_mhd(model)) write_fields(dir / (stem + "_vacuum.csv"), f, false);
    }
  }
  if (!growth || !residuals) throw ConfigError("failed writing to '" + out_dir + "'");
  out << "wrote " << (dir / "growth.csv").string() << " and " << (dir / "residuals.jsonl").string()
      << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- green

int cmd_green(double k, int points, std::ostream& out) {
  const GreenIdentity g = green_identity_check(k, points);
  out << "k: " << fmt(g.k) << "\n";
  out << "points: " << g.points << "\n";
  out << "lhs: " << fmt(g.lhs) << "\n";
  out << "rhs: " << fmt(g.rhs) << "\n";
  out << "relative_gap: " << fmt(g.relative_gap) << "\n";
  return kExitOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frozen-coefficient stability analysis for plasma-vacuum interfaces"};
  app.name("mhdlab");
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Classify a basic state from a config file");
  classify->add_option("config", ca.config, "Config file")->required();
  classify->add_flag("--numeric", ca.numeric, "Confirm the verdict from root scaling");
  classify->add_option("--rel-tol", ca.rel_tol, "Collinearity tolerance");

  RootsArgs ra;
  auto* roots = app.add_subcommand("roots", "CSV of dispersion roots");
  roots->add_option("config", ra.config, "Config file")->required();
  roots->add_option("--n", ra.n, "Mode indices (default 100 1000 10000)")->delimiter(',');
  roots->add_option("--omega", ra.omega, "Wavevector w2 w3 (default: witness direction)")
      ->expected(2);

  SweepArgs sa;
  auto* sw = app.add_subcommand("sweep", "CSV stability map over a parameter grid");
  sw->add_option("config", sa.config, "Config file")->required();
  sw->add_option("--grid", sa.grid, "Axis field=lo:hi:count or field=v1,v2 (repeatable)")
      ->allow_extra_args(false);
  sw->add_option("--jobs", sa.jobs, "Worker threads (default $MHDLAB_JOBS or 1)");
  sw->add_option("--max-points", sa.max_points, "Grid size cap (default 100000)");
  sw->add_flag("--numeric", sa.numeric, "Numeric classification per point");
  sw->add_option("--out", sa.out_file, "Write the CSV here instead of stdout");

  HadamardArgs ha;
  auto* had = app.add_subcommand("hadamard", "Growth table, residual report and field dumps");
  had->add_option("config", ha.config, "Config file")->required();
  had->add_option("--n-list", ha.n_list, "Mode indices, comma separated (default 25,100,400)");
  had->add_option("--t", ha.t, "Time (default 1)");
  had->add_option("--omega", ha.omega, "Wavevector w2 w3 (default: witness direction)")
      ->expected(2);
  had->add_option("--ppw", ha.ppw, "Points per wavelength (default 16)");
  had->add_flag("--fields", ha.fields, "Also dump sampled fields");
  had->add_option("--out", ha.out_dir, "Output directory");

  double green_k = 2.0 * M_PI;
  int green_points = 256;
  auto* green = app.add_subcommand("green", "Vacuum energy identity on the unit strip");
  green->add_option("--k", green_k, "Tangential wavenumber (default 2 pi)");
  green->add_option("--points", green_points, "Radial quadrature points (default 256)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*classify) return cmd_classify(ca, out, err);
    if (*roots) return cmd_roots(ra, out, err);
    if (*sw) return cmd_sweep(sa, out, err);
    if (*had) return cmd_hadamard(ha, out, err);
    if (*green) return cmd_green(green_k, green_points, out);
  } catch (const ConflictError& e) {
    err << "conflict: " << e.what() << "\n" << e.evidence();
    return kExitConflict;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace mhdlab::cli
