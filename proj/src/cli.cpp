#include "erws/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "erws/csv.hpp"
#include "erws/errors.hpp"
#include "erws/exact.hpp"
#include "erws/model.hpp"
#include "erws/oracle.hpp"
#include "erws/sim.hpp"

namespace erws::cli {

namespace {

using nlohmann::json;

// Recurrence-iteration workloads are O(t_max); closed forms are O(1) per
// checkpoint and accept any representable integer time.
constexpr std::int64_t kIterationTimeCap = 200000000;
constexpr std::int64_t kClosedFormTimeCap = 9000000000000000;  // < 2^53, exact in double
constexpr double kOracleTol = 1e-12;

std::int64_t parse_count(const std::string& text, const char* what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + text.size() || !(v >= 1.0) ||
      v > static_cast<double>(kClosedFormTimeCap) || v != std::floor(v)) {
    throw RangeError(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
  return static_cast<std::int64_t>(v);
}

std::uint64_t parse_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos, 0);
    if (pos != text.size()) throw RangeError("");
    return v;
  } catch (const std::exception&) {
    throw RangeError("seed must be an unsigned integer or 'random', got '" + text + "'");
  }
}

// "log" (powers of two), "linear"/"linear:N" (evenly spaced), or an explicit
// comma list. Always sorted, deduplicated, within [1, t_max].
std::vector<std::int64_t> parse_checkpoints(const std::string& pattern, std::int64_t t_max) {
  if (pattern == "log") return sim::log_checkpoints(t_max);
  if (pattern == "linear" || pattern.rfind("linear:", 0) == 0) {
    std::int64_t n = 50;
    if (pattern.size() > 7) n = parse_count(pattern.substr(7), "linear checkpoint count");
    if (n < 2) throw RangeError("linear checkpoint count must be at least 2");
    std::vector<std::int64_t> cps;
    for (std::int64_t i = 0; i < n; ++i) cps.push_back(1 + (t_max - 1) * i / (n - 1));
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
    return cps;
  }
  std::vector<std::int64_t> cps;
  std::size_t start = 0;
  while (start <= pattern.size()) {
    const std::size_t comma = pattern.find(',', start);
    const std::size_t len = (comma == std::string::npos) ? pattern.size() - start : comma - start;
    cps.push_back(parse_count(pattern.substr(start, len), "checkpoint"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  if (cps.empty() || cps.back() > t_max) {
    throw RangeError("checkpoints must be nonempty and lie within [1, t-max]");
  }
  return cps;
}

// (eps, r, gamma, s) -> validated parameter set with the symmetric split
// p = (1-r+gamma)/2, q = (1-r-gamma)/2. eps = 0 selects the unperturbed
// model, which the strict validator does not admit, so it is range-checked
// here with the same rules apart from eps.
Params1D params_from_cli(double eps, double r, double gamma, double s) {
  const double p = 0.5 * (1.0 - r + gamma);
  const double q = 0.5 * (1.0 - r - gamma);
  if (eps != 0.0) {
    Params1D out = validate_params_1d(p, q, r, eps, s);
    out.gamma = gamma;
    return out;
  }
  if (!(r > 0.0) || !(r < 1.0)) {
    throw RangeError("r must lie strictly in (0, 1), got " + std::to_string(r));
  }
  if (!(p > 0.0) || !(p < 1.0) || !(q > 0.0) || !(q < 1.0)) {
    throw RangeError("gamma must satisfy |gamma| < 1 - r, got " + std::to_string(gamma));
  }
  if (!(s >= 0.0) || !(s <= 1.0)) {
    throw RangeError("s must lie in [0, 1], got " + std::to_string(s));
  }
  Params1D out;
  out.p = p;
  out.q = q;
  out.r = r;
  out.eps = 0.0;
  out.s = s;
  out.gamma = gamma;
  return out;
}

// Planar split: the copy/reverse pair and the rotate pair each get half of
// the non-stopping mass, p + q = pp + qp = (1 - r)/2, shifted by gamma and
// gammap respectively.
Params2D params2d_from_cli(double eps, double r, double gamma, double gammap, double s1, double s2,
                           double s3, double s4) {
  const double half = 0.5 * (1.0 - r);
  const double p = 0.5 * (half + gamma);
  const double q = 0.5 * (half - gamma);
  const double pp = 0.5 * (half + gammap);
  const double qp = 0.5 * (half - gammap);
  if (eps != 0.0) {
    Params2D out = validate_params_2d(p, q, pp, qp, r, eps, s1, s2, s3, s4);
    out.gamma = gamma;
    out.gammap = gammap;
    return out;
  }
  if (!(r > 0.0) || !(r < 1.0)) {
    throw RangeError("r must lie strictly in (0, 1), got " + std::to_string(r));
  }
  for (double v : {p, q, pp, qp}) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw RangeError("gamma and gamma-prime must satisfy |.| < (1 - r)/2 at eps = 0");
    }
  }
  const double ssum = s1 + s2 + s3 + s4;
  if (std::fabs(ssum - 1.0) > 1e-12) {
    throw NormalizationError("s1 + s2 + s3 + s4 must equal 1, got " + std::to_string(ssum));
  }
  for (double v : {s1, s2, s3, s4}) {
    if (!(v >= 0.0) || !(v <= 1.0)) throw RangeError("s1..s4 must lie in [0, 1]");
  }
  Params2D out;
  out.p = p;
  out.q = q;
  out.pp = pp;
  out.qp = qp;
  out.r = r;
  out.eps = 0.0;
  out.s1 = s1;
  out.s2 = s2;
  out.s3 = s3;
  out.s4 = s4;
  out.gamma = gamma;
  out.gammap = gammap;
  return out;
}

void write_output(const std::string& payload, const std::string& out_path, std::ostream& fallback) {
  if (out_path.empty() || out_path == "-") {
    fallback << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw RangeError("cannot open output file: " + out_path);
  f << payload;
  if (!f) throw RangeError("cannot write output file: " + out_path);
}

double leading_term_value(const RegimeReport& rep, std::int64_t t) {
  const double td = static_cast<double>(t);
  double v = rep.leading_coefficient * std::pow(td, rep.leading_exponent);
  if (rep.leading_has_log) v *= std::log(td);
  return v;
}

struct ExactOpts {
  double eps = 0, r = 0, gamma = 0, s = 0.5;
  std::string t_max_text, checkpoints = "log", out_path;
  bool strict = false;
};

int cmd_exact(const ExactOpts& o, std::ostream& out) {
  const Params1D params = params_from_cli(o.eps, o.r, o.gamma, o.s);
  const std::int64_t t_max = parse_count(o.t_max_text, "t-max");
  const std::vector<std::int64_t> cps = parse_checkpoints(o.checkpoints, t_max);

  const bool fallback =
      (o.eps > 0.0)
          ? (exact::second_moment_resonant(o.eps, o.r, o.gamma) ||
             exact::sigma2_resonant(o.eps, o.r))
          : (!(o.gamma > 0.0 && o.gamma < 1.0) || exact::baseline_resonant(o.gamma, o.r));
  if (fallback && t_max > kIterationTimeCap) {
    throw RangeError("these parameters need recurrence iteration; t-max is capped at " +
                     std::to_string(kIterationTimeCap) + " in that mode");
  }

  const RegimeReport rep = exact::classify_regime(params);

  csv::Table table;
  table.header = {"t", "m1", "sigma2", "m2", "m2_over_t", "m2_leading_term", "method"};
  const char* method = fallback ? "recurrence" : "closed_form";

  if (fallback) {
    const oracle::MomentTable mt = oracle::iterate_recurrences(params, t_max, cps);
    for (std::size_t i = 0; i < cps.size(); ++i) {
      const double td = static_cast<double>(cps[i]);
      table.rows.push_back({csv::format_int(cps[i]), csv::format_double(mt.m1[i]),
                            csv::format_double(mt.sigma2[i]), csv::format_double(mt.m2[i]),
                            csv::format_double(mt.m2[i] / td),
                            csv::format_double(leading_term_value(rep, cps[i])), method});
    }
  } else {
    for (std::int64_t t : cps) {
      const double m1 = exact::first_moment(params, t);
      const double s2 = exact::sigma2_exact(params, t);
      const double m2 = exact::second_moment_exact(params, t);
      table.rows.push_back({csv::format_int(t), csv::format_double(m1), csv::format_double(s2),
                            csv::format_double(m2), csv::format_double(m2 / static_cast<double>(t)),
                            csv::format_double(leading_term_value(rep, t)), method});
    }
  }

  write_output(csv::emit(table), o.out_path, out);
  return (o.strict && fallback) ? 3 : 0;
}

struct SimulateOpts {
  double eps = 0, r = 0, gamma = 0, gammap = 0;
  double s = 0.5, s1 = 0.25, s2 = 0.25, s3 = 0.25, s4 = 0.25;
  int dim = 1;
  std::string walkers_text, t_max_text, seed_text = std::to_string(sim::kDefaultMasterSeed);
  std::string checkpoints = "log", out_path;
  unsigned threads = 1;
};

int cmd_simulate(const SimulateOpts& o, std::ostream& out) {
  if (o.dim != 1 && o.dim != 2) throw RangeError("dim must be 1 or 2");
  sim::EnsembleConfig cfg;
  cfg.walkers = static_cast<std::uint64_t>(parse_count(o.walkers_text, "walkers"));
  cfg.t_max = parse_count(o.t_max_text, "t-max");
  if (cfg.t_max > kIterationTimeCap) {
    throw RangeError("simulation t-max is capped at " + std::to_string(kIterationTimeCap));
  }
  cfg.checkpoints = parse_checkpoints(o.checkpoints, cfg.t_max);
  cfg.master_seed = parse_seed(o.seed_text);
  cfg.worker_count = (o.threads == 0) ? 1 : o.threads;

  csv::Table table;
  sim::MomentCurve curve;
  if (o.dim == 1) {
    const Params1D params = params_from_cli(o.eps, o.r, o.gamma, o.s);
    curve = sim::run_ensemble(params, cfg);
    table.header = {"t", "mean_x", "msd", "msd_se", "walkers"};
    for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
      table.rows.push_back({csv::format_int(curve.checkpoints[i]),
                            csv::format_double(curve.mean_x[i]), csv::format_double(curve.msd[i]),
                            csv::format_double(curve.msd_se[i]),
                            csv::format_int(static_cast<std::int64_t>(curve.walkers))});
    }
  } else {
    const Params2D params =
        params2d_from_cli(o.eps, o.r, o.gamma, o.gammap, o.s1, o.s2, o.s3, o.s4);
    curve = sim::run_ensemble_2d(params, cfg);
    table.header = {"t", "mean_x", "mean_y", "msd", "msd_se", "walkers"};
    for (std::size_t i = 0; i < curve.checkpoints.size(); ++i) {
      table.rows.push_back({csv::format_int(curve.checkpoints[i]),
                            csv::format_double(curve.mean_x[i]), csv::format_double(curve.mean_y[i]),
                            csv::format_double(curve.msd[i]), csv::format_double(curve.msd_se[i]),
                            csv::format_int(static_cast<std::int64_t>(curve.walkers))});
    }
  }
  write_output(csv::emit(table), o.out_path, out);
  return 0;
}

struct Range {
  double lo = 0, hi = 0;
  std::int64_t n = 0;
};

Range parse_range(const std::string& text, const char* what) {
  Range out;
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw RangeError(std::string(what) + " must have the form lo:hi:n, got '" + text + "'");
  }
  char* end = nullptr;
  const std::string lo_s = text.substr(0, c1);
  const std::string hi_s = text.substr(c1 + 1, c2 - c1 - 1);
  out.lo = std::strtod(lo_s.c_str(), &end);
  if (end != lo_s.c_str() + lo_s.size()) throw RangeError(std::string(what) + ": bad lower bound");
  out.hi = std::strtod(hi_s.c_str(), &end);
  if (end != hi_s.c_str() + hi_s.size()) throw RangeError(std::string(what) + ": bad upper bound");
  out.n = parse_count(text.substr(c2 + 1), what);
  if (out.n == 1 && out.lo != out.hi) {
    throw RangeError(std::string(what) + " with a single point needs lo == hi");
  }
  if (out.n > 100000) throw RangeError(std::string(what) + " point count is capped at 100000");
  return out;
}

double range_point(const Range& range, std::int64_t i) {
  if (range.n == 1) return range.lo;
  return range.lo +
         (range.hi - range.lo) * (static_cast<double>(i) / static_cast<double>(range.n - 1));
}

struct ScanOpts {
  double eps = 0;
  bool eps_set = false;
  std::string r_range_text, gamma_range_text, out_path;
  bool baseline = false;
  bool strict = false;
};

int cmd_scan(const ScanOpts& o, std::ostream& out) {
  if (o.baseline && o.eps_set && o.eps != 0.0) {
    throw RangeError("--baseline fixes eps = 0; drop the --eps flag");
  }
  if (!o.baseline) {
    if (!o.eps_set) throw RangeError("--eps is required unless --baseline is set");
    if (!(o.eps > 0.0) || !(o.eps < 1.0)) {
      throw RangeError("eps must lie strictly in (0, 1), got " + std::to_string(o.eps));
    }
  }
  const double eps = o.baseline ? 0.0 : o.eps;
  const Range r_range = parse_range(o.r_range_text, "r-range");
  const Range g_range = parse_range(o.gamma_range_text, "gamma-range");

  csv::Table table;
  table.header = {"r", "gamma", "regime", "leading_exponent", "diffusivity", "residual_gap"};
  bool any_fitted = false;
  for (std::int64_t i = 0; i < r_range.n; ++i) {
    const double r = range_point(r_range, i);
    for (std::int64_t j = 0; j < g_range.n; ++j) {
      const double gamma = range_point(g_range, j);
      const bool admissible =
          r > 0.0 && r < 1.0 && std::fabs(gamma) < 1.0 - r && (o.baseline || eps < 1.0);
      if (!admissible) {
        table.rows.push_back(
            {csv::format_double(r), csv::format_double(gamma), "invalid", "", "", ""});
        continue;
      }
      const RegimeReport rep = exact::classify_regime_raw(eps, r, gamma);
      any_fitted = any_fitted || rep.fitted;
      const bool diffusive = rep.regime == Regime::diffusive;
      table.rows.push_back(
          {csv::format_double(r), csv::format_double(gamma), regime_name(rep.regime),
           csv::format_double(rep.leading_exponent),
           diffusive ? csv::format_double(rep.leading_coefficient) : std::string(),
           rep.residual_gap ? csv::format_double(*rep.residual_gap) : std::string()});
    }
  }
  write_output(csv::emit(table), o.out_path, out);
  return (o.strict && any_fitted) ? 3 : 0;
}

struct OracleOpts {
  double eps = 0, r = 0, gamma = 0, gammap = 0, s = 0.5;
  int dim = 1;
  std::int64_t t = 0;
  std::string out_path;
};

int cmd_oracle(const OracleOpts& o, std::ostream& out, std::ostream& err) {
  json doc;
  double max_diff = 0;
  auto track = [&max_diff](double a, double b) {
    max_diff = std::max(max_diff, std::fabs(a - b));
  };

  if (o.dim == 1) {
    const Params1D params = params_from_cli(o.eps, o.r, o.gamma, o.s);
    const oracle::ExactMoments1D en = oracle::enumerate_exact(params, o.t);
    const double en_m1 = en.m1.get_d();
    const double en_m2 = en.m2.get_d();
    const double cf_m1 = exact::first_moment(params, o.t);
    const double cf_m2 = exact::second_moment_exact(params, o.t);
    const oracle::MomentTable mt = oracle::iterate_recurrences(params, o.t, {o.t});
    doc["enumeration"] = {{"m1", en_m1}, {"m2", en_m2}};
    doc["closed_form"] = {{"m1", cf_m1}, {"m2", cf_m2}};
    doc["recurrence"] = {{"m1", mt.m1[0]}, {"m2", mt.m2[0]}};
    track(en_m1, cf_m1);
    track(en_m1, mt.m1[0]);
    track(cf_m1, mt.m1[0]);
    track(en_m2, cf_m2);
    track(en_m2, mt.m2[0]);
    track(cf_m2, mt.m2[0]);
  } else if (o.dim == 2) {
    const Params2D params =
        params2d_from_cli(o.eps, o.r, o.gamma, o.gammap, 0.25, 0.25, 0.25, 0.25);
    const oracle::ExactMoments2D en = oracle::enumerate_exact_2d(params, o.t);
    const std::array<double, 2> m1 = exact::first_moment_2d(params, o.t);
    const double m2 = exact::second_moment_2d(params, o.t);
    // The mean has no closed form in 2D; the matrix-product iteration serves
    // as both the closed_form and recurrence entries.
    Params1D radial;
    radial.p = 0.5 * (1.0 - params.r + params.gamma);
    radial.q = 0.5 * (1.0 - params.r - params.gamma);
    radial.r = params.r;
    radial.eps = params.eps;
    radial.s = 0.5;
    radial.gamma = params.gamma;
    const oracle::MomentTable mt = oracle::iterate_recurrences(radial, o.t, {o.t});
    const double en_m1x = en.m1[0].get_d();
    const double en_m1y = en.m1[1].get_d();
    const double en_m2 = en.m2.get_d();
    doc["enumeration"] = {{"m1", {en_m1x, en_m1y}}, {"m2", en_m2}};
    doc["closed_form"] = {{"m1", {m1[0], m1[1]}}, {"m2", m2}};
    doc["recurrence"] = {{"m1", {m1[0], m1[1]}}, {"m2", mt.m2[0]}};
    track(en_m1x, m1[0]);
    track(en_m1y, m1[1]);
    track(en_m2, m2);
    track(en_m2, mt.m2[0]);
    track(m2, mt.m2[0]);
  } else {
    throw RangeError("dim must be 1 or 2");
  }

  doc["max_abs_diff"] = max_diff;
  write_output(doc.dump(2) + "\n", o.out_path, out);
  if (max_diff > kOracleTol) {
    err << "oracle mismatch: max_abs_diff = " << csv::format_double(max_diff) << " exceeds "
        << csv::format_double(kOracleTol) << "\n";
    return 4;
  }
  return 0;
}

struct FitOpts {
  std::string input_path, window_text, out_path;
};

int cmd_fit(const FitOpts& o, std::ostream& out) {
  std::ifstream f(o.input_path, std::ios::binary);
  if (!f) throw RangeError("cannot open input file: " + o.input_path);
  std::ostringstream buf;
  buf << f.rdbuf();
  const csv::Table table = csv::parse(buf.str());

  const std::size_t t_col = csv::column_index(table, "t");
  std::size_t y_col = 0;
  bool found = false;
  for (const char* name : {"msd", "m2"}) {
    for (std::size_t i = 0; i < table.header.size() && !found; ++i) {
      if (table.header[i] == name) {
        y_col = i;
        found = true;
      }
    }
    if (found) break;
  }
  if (!found) throw RangeError("input needs an msd or m2 column");

  const std::size_t colon = o.window_text.find(':');
  if (colon == std::string::npos) {
    throw RangeError("window must have the form lo:hi, got '" + o.window_text + "'");
  }
  const std::int64_t lo = parse_count(o.window_text.substr(0, colon), "window lower bound");
  const std::int64_t hi = parse_count(o.window_text.substr(colon + 1), "window upper bound");
  if (hi < lo) throw RangeError("window upper bound is below the lower bound");

  sim::MomentCurve curve;
  for (const auto& row : table.rows) {
    curve.checkpoints.push_back(parse_count(row[t_col], "t cell"));
    char* end = nullptr;
    const std::string& cell = row[y_col];
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size()) {
      throw RangeError("non-numeric moment cell: '" + cell + "'");
    }
    curve.msd.push_back(v);
  }

  const sim::ExponentFit fit =
      sim::fit_exponent(curve, {static_cast<double>(lo), static_cast<double>(hi)});
  json doc = {{"exponent", fit.exponent},
              {"log_coefficient", fit.log_coefficient},
              {"r_squared", fit.r_squared}};
  write_output(doc.dump(2) + "\n", o.out_path, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"moments, regimes, and Monte Carlo for a random walk with full memory and stops"};
  app.name("erws");
  app.require_subcommand(1);

  ExactOpts exact_opts;
  CLI::App* c_exact = app.add_subcommand(
      "exact", "closed-form moment curves (CSV: t,m1,sigma2,m2,m2_over_t,m2_leading_term,method)");
  c_exact->add_option("--eps", exact_opts.eps, "restart probability from a remembered stop, [0,1)")
      ->required();
  c_exact->add_option("--r", exact_opts.r, "stop probability, (0,1)")->required();
  c_exact->add_option("--gamma", exact_opts.gamma, "memory drift p - q, |gamma| < 1 - r")
      ->required();
  c_exact->add_option("--s", exact_opts.s, "probability the first step is +1 (default 0.5)");
  c_exact->add_option("--t-max", exact_opts.t_max_text, "largest time (integer, 1e6 style accepted)")
      ->required();
  c_exact->add_option("--checkpoints", exact_opts.checkpoints,
                      "log | linear | linear:N | comma list (default log)");
  c_exact->add_option("--out", exact_opts.out_path, "output file (default stdout)");
  c_exact->add_flag("--strict", exact_opts.strict,
                    "exit 3 when values come from recurrence iteration instead of closed forms");

  SimulateOpts sim_opts;
  CLI::App* c_sim = app.add_subcommand(
      "simulate", "deterministic Monte Carlo ensemble (CSV: t,mean_x[,mean_y],msd,msd_se,walkers)");
  c_sim->add_option("--eps", sim_opts.eps, "restart probability, [0,1)")->required();
  c_sim->add_option("--r", sim_opts.r, "stop probability, (0,1)")->required();
  c_sim->add_option("--gamma", sim_opts.gamma, "memory drift")->required();
  c_sim->add_option("--gamma-prime", sim_opts.gammap, "2D rotation drift pp - qp (default 0)");
  c_sim->add_option("--dim", sim_opts.dim, "1 or 2 (default 1)");
  c_sim->add_option("--s", sim_opts.s, "1D first-step +1 probability (default 0.5)");
  c_sim->add_option("--s1", sim_opts.s1, "2D first-step +i weight (default 0.25)");
  c_sim->add_option("--s2", sim_opts.s2, "2D first-step +j weight (default 0.25)");
  c_sim->add_option("--s3", sim_opts.s3, "2D first-step -i weight (default 0.25)");
  c_sim->add_option("--s4", sim_opts.s4, "2D first-step -j weight (default 0.25)");
  c_sim->add_option("--walkers", sim_opts.walkers_text, "ensemble size")->required();
  c_sim->add_option("--t-max", sim_opts.t_max_text, "largest time")->required();
  c_sim->add_option("--seed", sim_opts.seed_text,
                    "master seed (integer or 'random'; default " +
                        std::to_string(sim::kDefaultMasterSeed) + ")");
  c_sim->add_option("--threads", sim_opts.threads, "worker threads (default 1; results identical)");
  c_sim->add_option("--checkpoints", sim_opts.checkpoints,
                    "log | linear | linear:N | comma list (default log)");
  c_sim->add_option("--out", sim_opts.out_path, "output file (default stdout)");

  ScanOpts scan_opts;
  CLI::App* c_scan = app.add_subcommand(
      "scan", "regime map over an (r, gamma) grid (CSV: r,gamma,regime,"
              "leading_exponent,diffusivity,residual_gap)");
  CLI::Option* scan_eps = c_scan->add_option("--eps", scan_opts.eps, "restart probability, (0,1)");
  c_scan->add_option("--r-range", scan_opts.r_range_text, "lo:hi:n")->required();
  c_scan->add_option("--gamma-range", scan_opts.gamma_range_text, "lo:hi:n")->required();
  c_scan->add_flag("--baseline", scan_opts.baseline, "classify the unperturbed model (eps = 0)");
  c_scan->add_option("--out", scan_opts.out_path, "output file (default stdout)");
  c_scan->add_flag("--strict", scan_opts.strict,
                   "exit 3 when any cell needed the recurrence-fit fallback");

  OracleOpts oracle_opts;
  std::string oracle_t_text;
  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "cross-check enumeration, closed forms, and recurrences at one time (JSON)");
  c_oracle->add_option("--eps", oracle_opts.eps, "restart probability, [0,1)")->required();
  c_oracle->add_option("--r", oracle_opts.r, "stop probability, (0,1)")->required();
  c_oracle->add_option("--gamma", oracle_opts.gamma, "memory drift")->required();
  c_oracle->add_option("--gamma-prime", oracle_opts.gammap, "2D rotation drift (default 0)");
  c_oracle->add_option("--dim", oracle_opts.dim, "1 or 2 (default 1)");
  c_oracle->add_option("--s", oracle_opts.s, "1D first-step +1 probability (default 0.5)");
  c_oracle->add_option("--t", oracle_t_text, "time to enumerate to (small; full history sweep)")
      ->required();
  c_oracle->add_option("--out", oracle_opts.out_path, "output file (default stdout)");

  FitOpts fit_opts;
  CLI::App* c_fit = app.add_subcommand(
      "fit", "least-squares growth exponent of an msd/m2 CSV over a time window (JSON)");
  c_fit->add_option("--input", fit_opts.input_path, "CSV with t and msd (or m2) columns")
      ->required();
  c_fit->add_option("--window", fit_opts.window_text, "lo:hi time window")->required();
  c_fit->add_option("--out", fit_opts.out_path, "output file (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("erws");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    scan_opts.eps_set = scan_eps->count() > 0;
    if (c_exact->parsed()) return cmd_exact(exact_opts, out);
    if (c_sim->parsed()) return cmd_simulate(sim_opts, out);
    if (c_scan->parsed()) return cmd_scan(scan_opts, out);
    if (c_oracle->parsed()) {
      oracle_opts.t = parse_count(oracle_t_text, "t");
      return cmd_oracle(oracle_opts, out, err);
    }
    if (c_fit->parsed()) return cmd_fit(fit_opts, out);
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace erws::cli
