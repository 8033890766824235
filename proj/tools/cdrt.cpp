// Command-line front end: sweep (figure data tables), validate (closed form
// vs Monte Carlo vs quadrature), optimize (EST-maximizing rate threshold).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cdrt/io.hpp"
#include "cdrt/presets.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonOpts {
  std::string config_path;
  std::string preset;
  long trials = -1;
  long seed = -1;
  int threads = -1;
  std::string format;
  std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--preset", o.preset, "built-in sweep preset (fig2..fig7)");
  cmd->add_option("--trials", o.trials, "Monte Carlo trials per point");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--threads", o.threads, "worker threads");
  cmd->add_option("--format", o.format, "output format: csv|json");
  cmd->add_option("--out", o.out, "output path (default stdout)");
}

cdrt::io::RunConfig load_config(const CommonOpts& o) {
  cdrt::io::RunConfig cfg;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw cdrt::io::ConfigError("cannot read config file: " + o.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = cdrt::io::parse_config(ss.str());
  }
  if (!o.preset.empty()) {
    const cdrt::exp::SweepSpec saved = cfg.spec;
    cfg.spec = cdrt::exp::preset_spec(o.preset);
    cfg.spec.n_trials = saved.n_trials;
    cfg.spec.seed = saved.seed;
    cfg.spec.threads = saved.threads;
  }
  if (o.trials > 0) cfg.spec.n_trials = o.trials;
  if (o.seed >= 0) cfg.spec.seed = static_cast<std::uint64_t>(o.seed);
  if (o.threads > 0) cfg.spec.threads = o.threads;
  if (!o.format.empty()) {
    if (o.format == "csv") cfg.format = cdrt::io::OutputFormat::CSV;
    else if (o.format == "json") cfg.format = cdrt::io::OutputFormat::JSON;
    else throw cdrt::io::ConfigError("--format must be csv|json");
  }
  if (!o.out.empty()) cfg.out_path = o.out;
  return cfg;
}

void write_rows(const cdrt::io::RunConfig& cfg, const std::vector<cdrt::exp::SweepRow>& rows) {
  if (cfg.out_path.empty())
    cdrt::io::emit_table(rows, cfg.format, std::cout);
  else
    cdrt::io::emit_table_to_file(rows, cfg.format, cfg.out_path);
}

int run_sweep_cmd(const CommonOpts& o) {
  cdrt::io::RunConfig cfg = load_config(o);
  if (cfg.spec.grid.empty())
    throw cdrt::io::ConfigError("sweep: no grid given (use --preset or a config with 'grid')");
  write_rows(cfg, cdrt::exp::run_sweep(cfg.spec));
  return 0;
}

// Three-way comparison at the default operating points.
int run_validate_cmd(const CommonOpts& o) {
  using namespace cdrt;
  io::RunConfig cfg = load_config(o);
  std::vector<double> rho_grid = cfg.spec.grid;
  if (rho_grid.empty()) rho_grid = {5, 10, 15, 20, 25, 30};

  std::ostream& os = std::cout;
  os << "scheme,signal,rho_db,mc,mc_se,closed_form,quadrature,cf_vs_quad,mc_vs_cf_sigma\n";
  for (SchemeKind scheme : {SchemeKind::DPU, SchemeKind::DPR, SchemeKind::MDPR}) {
    for (double rho : rho_grid) {
      SystemParams p = exp::apply_axis(cfg.spec.fixed, exp::SweepAxis::RHO_DB, rho);
      if (scheme_is_single_antenna(scheme)) p.n_antennas = 1;
      const DerivedThresholds t = derive_thresholds(p);
      const mc::McResult r = mc::estimate_op(scheme, p, cfg.spec.n_trials, cfg.spec.seed,
                                             cfg.spec.threads);
      for (int s = 0; s < 3; ++s) {
        const auto sig = static_cast<analytic::Signal>(s);
        const double cf = analytic::op_closed(scheme, sig, p, t).p;
        const double qd = analytic::op_quadrature(scheme, sig, p, t).p;
        const double sigma = r.op[s].std_err > 0 ? std::abs(r.op[s].p_hat - cf) / r.op[s].std_err : 0.0;
        os << to_string(scheme) << ",x" << (s + 1) << ',' << io::format_number(rho) << ','
           << io::format_number(r.op[s].p_hat) << ',' << io::format_number(r.op[s].std_err) << ','
           << io::format_number(cf) << ',' << io::format_number(qd) << ','
           << io::format_number(std::abs(cf - qd)) << ',' << io::format_number(sigma) << '\n';
      }
    }
  }
  return 0;
}

int run_optimize_cmd(const CommonOpts& o, const std::string& scheme_name, double lo, double hi) {
  using namespace cdrt;
  io::RunConfig cfg = load_config(o);
  const SchemeKind scheme = scheme_from_string(scheme_name);
  const exp::RthOptimum r = exp::find_optimal_rth(scheme, cfg.spec.fixed, lo, hi);
  std::cout << "scheme,rth_star,est_star,degenerate\n"
            << to_string(scheme) << ',' << io::format_number(r.rth_star) << ','
            << io::format_number(r.est_star) << ',' << (r.degenerate ? 1 : 0) << '\n';
  if (r.maxima.size() > 1) {
    std::cout << "# local maxima:\n";
    for (const auto& m : r.maxima)
      std::cout << "# rth=" << io::format_number(m.x) << " est=" << io::format_number(m.value)
                << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NOMA-CDRT outage and throughput evaluator"};
  app.require_subcommand(1);

  CommonOpts sweep_opts, validate_opts, optimize_opts;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and emit a table");
  add_common(sweep, sweep_opts);
  auto* validate = app.add_subcommand("validate", "closed form vs Monte Carlo vs quadrature");
  add_common(validate, validate_opts);
  auto* optimize = app.add_subcommand("optimize", "search the EST-maximizing rate threshold");
  add_common(optimize, optimize_opts);
  std::string opt_scheme = "DPU";
  double opt_lo = 0.01, opt_hi = 2.0;
  optimize->add_option("--scheme", opt_scheme, "scheme to optimize");
  optimize->add_option("--lo", opt_lo, "search range lower bound (nats/s/Hz)");
  optimize->add_option("--hi", opt_hi, "search range upper bound (nats/s/Hz)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_cmd(sweep_opts);
    if (validate->parsed()) return run_validate_cmd(validate_opts);
    if (optimize->parsed()) return run_optimize_cmd(optimize_opts, opt_scheme, opt_lo, opt_hi);
  } catch (const cdrt::io::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return 0;
}
