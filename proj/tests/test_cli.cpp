#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "erws/cli.hpp"
#include "erws/csv.hpp"
#include "erws/exact.hpp"
#include "erws/model.hpp"
#include "erws/oracle.hpp"

using namespace erws;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult res;
  res.code = cli::run_cli(args, out, err);
  res.out = out.str();
  res.err = err.str();
  return res;
}

double rel_err(double a, double b) {
  if (b == 0.0) return std::fabs(a);
  return std::fabs(a / b - 1.0);
}

double cell(const csv::Table& t, std::size_t row, const std::string& col) {
  return std::stod(t.rows[row][csv::column_index(t, col)]);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(static_cast<bool>(f));
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("exact subcommand emits the reference curve") {
  const auto res = run({"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t-max", "3",
                        "--checkpoints", "1,2,3"});
  REQUIRE(res.code == 0);
  CHECK(res.err.empty());

  const csv::Table table = csv::parse(res.out);
  CHECK(table.header == std::vector<std::string>{"t", "m1", "sigma2", "m2", "m2_over_t",
                                                 "m2_leading_term", "method"});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.rows[0][0] == "1");
  CHECK(table.rows[1][0] == "2");
  CHECK(table.rows[2][0] == "3");
  CHECK(cell(table, 0, "m2") == 1.0);
  CHECK(rel_err(cell(table, 1, "m2"), 2.4) < 1e-12);
  CHECK(rel_err(cell(table, 2, "m2"), 3.85) < 1e-12);
  CHECK(rel_err(cell(table, 1, "sigma2"), 0.8) < 1e-12);
  CHECK(rel_err(cell(table, 2, "m2_over_t"), 3.85 / 3.0) < 1e-12);
  CHECK(table.rows[0][csv::column_index(table, "m1")] == "0");
  for (const auto& row : table.rows) {
    CHECK(row[csv::column_index(table, "method")] == "closed_form");
  }

  // byte-identical round trip through the canonical formatter
  CHECK(csv::normalize(res.out) == res.out);
}

TEST_CASE("exact subcommand accepts scientific time bounds") {
  const auto res = run({"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.49", "--t-max", "1e6",
                        "--checkpoints", "1000000"});
  REQUIRE(res.code == 0);
  const csv::Table table = csv::parse(res.out);
  REQUIRE(table.rows.size() == 1);
  CHECK(table.rows[0][0] == "1000000");
  // the slow t^{-0.02} correction keeps this far below the limiting value
  // 1/(r(eps+r)) = 16.667 at every reachable horizon
  CHECK(rel_err(cell(table, 0, "m2_over_t"), 5.9287162355791741) < 1e-12);
}

TEST_CASE("log branch fills the leading-term column with t log t values") {
  const auto res = run({"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.5", "--t-max", "16",
                        "--checkpoints", "4,16"});
  REQUIRE(res.code == 0);
  const csv::Table table = csv::parse(res.out);
  REQUIRE(table.rows.size() == 2);
  const double third = 0.1 / 0.3;
  CHECK(rel_err(cell(table, 0, "m2_leading_term"), third * 4.0 * std::log(4.0)) < 1e-12);
  CHECK(rel_err(cell(table, 1, "m2_leading_term"), third * 16.0 * std::log(16.0)) < 1e-12);
  CHECK(table.rows[0][csv::column_index(table, "method")] == "closed_form");
}

TEST_CASE("resonant parameters fall back to recurrence iteration") {
  const std::vector<std::string> base = {"exact", "--eps", "0.1", "--r",           "0.2",
                                         "--gamma", "0.35", "--t-max", "1000",
                                         "--checkpoints", "1,10,1000"};
  const auto res = run(base);
  REQUIRE(res.code == 0);
  const csv::Table table = csv::parse(res.out);
  CHECK(table.rows[0][csv::column_index(table, "method")] == "recurrence");

  Params1D p;
  p.p = 0.575;
  p.q = 0.225;
  p.r = 0.2;
  p.eps = 0.1;
  p.s = 0.5;
  p.gamma = 0.35;
  const auto mt = oracle::iterate_recurrences(p, 1000, {1, 10, 1000});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rel_err(cell(table, i, "m2"), mt.m2[i]) < 1e-13);
  }

  auto strict = base;
  strict.push_back("--strict");
  CHECK(run(strict).code == 3);

  // iteration workloads are capped; closed forms are not
  auto deep = base;
  deep[8] = "300000000";
  deep[10] = "300000000";
  const auto capped = run(deep);
  CHECK(capped.code == 2);
  CHECK(capped.err.find("capped") != std::string::npos);
  const auto closed_deep = run({"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t-max",
                                "1e12", "--checkpoints", "1000000000000"});
  CHECK(closed_deep.code == 0);
}

TEST_CASE("unperturbed curves come from the dedicated closed form") {
  const auto res = run({"exact", "--eps", "0", "--r", "0.2", "--gamma", "0.3", "--t-max", "100",
                        "--checkpoints", "10,100"});
  REQUIRE(res.code == 0);
  const csv::Table table = csv::parse(res.out);
  CHECK(table.rows[0][csv::column_index(table, "method")] == "closed_form");
  CHECK(rel_err(cell(table, 0, "m2"), 13.676221644799999) < 1e-12);
  CHECK(rel_err(cell(table, 0, "m2"), exact::baseline_second_moment(0.3, 0.2, 10)) < 1e-13);

  // negative drift has no closed form; the recurrence takes over silently
  const auto neg = run({"exact", "--eps", "0", "--r", "0.2", "--gamma", "-0.2", "--t-max", "100",
                        "--checkpoints", "100"});
  REQUIRE(neg.code == 0);
  CHECK(csv::parse(neg.out).rows[0][6] == "recurrence");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"exact", "--bogus", "1"}).code == 2);
  CHECK(run({"exact", "--eps", "0.1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);

  const auto bad_eps = run({"exact", "--eps", "1.5", "--r", "0.2", "--gamma", "0.3", "--t-max",
                            "10", "--checkpoints", "1"});
  CHECK(bad_eps.code == 2);
  CHECK(bad_eps.err.find("error") != std::string::npos);

  CHECK(run({"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t-max", "10",
             "--checkpoints", "5,999"})
            .code == 2);
  CHECK(run({"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t-max", "0",
             "--checkpoints", "1"})
            .code == 2);

  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("Usage") != std::string::npos);
  CHECK(help.out.find("exact") != std::string::npos);
  CHECK(run({"exact", "--help"}).code == 0);
}

TEST_CASE("oracle subcommand cross-checks the three engines") {
  const auto res =
      run({"oracle", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t", "2"});
  REQUIRE(res.code == 0);
  const auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["max_abs_diff"].get<double>() < 1e-12);
  CHECK(rel_err(doc["enumeration"]["m2"].get<double>(), 2.4) < 1e-12);
  CHECK(rel_err(doc["closed_form"]["m2"].get<double>(), 2.4) < 1e-12);
  CHECK(rel_err(doc["recurrence"]["m2"].get<double>(), 2.4) < 1e-12);

  const auto start =
      run({"oracle", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t", "1"});
  REQUIRE(start.code == 0);
  const auto sdoc = nlohmann::json::parse(start.out);
  CHECK(sdoc["enumeration"]["m2"].get<double>() == 1.0);
  CHECK(sdoc["closed_form"]["m2"].get<double>() == 1.0);
  CHECK(sdoc["recurrence"]["m2"].get<double>() == 1.0);

  const auto planar = run({"oracle", "--dim", "2", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3",
                           "--gamma-prime", "0.1", "--t", "2"});
  REQUIRE(planar.code == 0);
  const auto pdoc = nlohmann::json::parse(planar.out);
  CHECK(pdoc["max_abs_diff"].get<double>() < 1e-12);
  CHECK(rel_err(pdoc["enumeration"]["m2"].get<double>(), 2.4) < 1e-12);

  const auto over_cap =
      run({"oracle", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t", "9"});
  CHECK(over_cap.code == 2);
  CHECK(!over_cap.err.empty());
}

TEST_CASE("scan subcommand labels the regime plane") {
  auto one_cell = [&](const std::string& eps, const std::string& gamma) {
    const auto res = run({"scan", "--eps", eps, "--r-range", "0.2:0.2:1", "--gamma-range",
                          gamma + ":" + gamma + ":1"});
    REQUIRE(res.code == 0);
    return csv::parse(res.out);
  };

  const csv::Table residual = one_cell("0.1", "0.49");
  REQUIRE(residual.rows.size() == 1);
  CHECK(residual.rows[0][csv::column_index(residual, "regime")] == "diffusive");
  CHECK(rel_err(cell(residual, 0, "diffusivity"), 50.0 / 3.0) < 1e-9);
  CHECK(rel_err(cell(residual, 0, "residual_gap"), 35.0 / 3.0) < 1e-9);
  CHECK(cell(residual, 0, "leading_exponent") == 1.0);

  const csv::Table log_cell = one_cell("0.1", "0.5");
  CHECK(log_cell.rows[0][csv::column_index(log_cell, "regime")] == "log_anomalous");
  CHECK(log_cell.rows[0][csv::column_index(log_cell, "diffusivity")].empty());
  CHECK(log_cell.rows[0][csv::column_index(log_cell, "residual_gap")].empty());

  const csv::Table super_cell = one_cell("0.1", "0.51");
  CHECK(super_cell.rows[0][csv::column_index(super_cell, "regime")] == "super_diffusive");
  CHECK(rel_err(cell(super_cell, 0, "leading_exponent"), 1.02) < 1e-12);
  CHECK(super_cell.rows[0][csv::column_index(super_cell, "diffusivity")].empty());

  const csv::Table wide_path = one_cell("0.4", "0.46");
  CHECK(wide_path.rows[0][csv::column_index(wide_path, "regime")] == "diffusive");
  CHECK(rel_err(cell(wide_path, 0, "residual_gap"), 1.0 / 0.12 - 5.0) < 1e-9);

  const auto grid = run({"scan", "--eps", "0.1", "--r-range", "0.2:0.4:2", "--gamma-range",
                         "0.1:0.3:3"});
  REQUIRE(grid.code == 0);
  const csv::Table gtable = csv::parse(grid.out);
  CHECK(gtable.rows.size() == 6);
  CHECK(csv::normalize(grid.out) == grid.out);

  const auto base = run({"scan", "--baseline", "--r-range", "0.2:0.2:1", "--gamma-range",
                         "0.3:0.3:1"});
  REQUIRE(base.code == 0);
  const csv::Table btable = csv::parse(base.out);
  CHECK(btable.rows[0][csv::column_index(btable, "regime")] == "sub_diffusive");
  CHECK(rel_err(cell(btable, 0, "leading_exponent"), 0.8) < 1e-12);
  CHECK(btable.rows[0][csv::column_index(btable, "diffusivity")].empty());

  const auto invalid = run({"scan", "--eps", "0.1", "--r-range", "0.2:0.2:1", "--gamma-range",
                            "0.9:0.9:1"});
  REQUIRE(invalid.code == 0);
  const csv::Table itable = csv::parse(invalid.out);
  CHECK(itable.rows[0][csv::column_index(itable, "regime")] == "invalid");
  CHECK(itable.rows[0][csv::column_index(itable, "leading_exponent")].empty());

  CHECK(run({"scan", "--baseline", "--eps", "0.1", "--r-range", "0.2:0.2:1", "--gamma-range",
             "0.3:0.3:1"})
            .code == 2);
  CHECK(run({"scan", "--r-range", "0.2:0.2:1", "--gamma-range", "0.3:0.3:1"}).code == 2);
  CHECK(run({"scan", "--eps", "0.1", "--r-range", "0.2:0.3:1", "--gamma-range", "0.3:0.3:1"})
            .code == 2);

  const std::vector<std::string> fitted_cell = {"scan", "--baseline", "--r-range", "0.2:0.2:1",
                                                "--gamma-range", "-0.2:-0.2:1"};
  CHECK(run(fitted_cell).code == 0);
  auto strict_cell = fitted_cell;
  strict_cell.push_back("--strict");
  CHECK(run(strict_cell).code == 3);
}

TEST_CASE("fit subcommand recovers exponents from emitted curves") {
  const std::string curve_path = "/tmp/erws_test_fit_curve.csv";
  const auto gen = run({"exact", "--eps", "0", "--r", "0.2", "--gamma", "0.1", "--t-max", "1e6",
                        "--checkpoints", "log", "--out", curve_path});
  REQUIRE(gen.code == 0);
  CHECK(gen.out.empty());

  const auto fit = run({"fit", "--input", curve_path, "--window", "10000:1000000"});
  REQUIRE(fit.code == 0);
  const auto doc = nlohmann::json::parse(fit.out);
  CHECK(std::fabs(doc["exponent"].get<double>() - 0.8) < 0.01);
  CHECK(doc["r_squared"].get<double>() > 0.9999);

  const std::string linear_path = "/tmp/erws_test_fit_linear.csv";
  {
    std::ofstream f(linear_path, std::ios::binary);
    f << "t,msd\n";
    for (std::int64_t t : {10, 100, 1000, 10000, 100000, 1000000}) {
      f << t << "," << csv::format_double(2.5 * static_cast<double>(t)) << "\n";
    }
  }
  const auto unit = run({"fit", "--input", linear_path, "--window", "10:1000000"});
  REQUIRE(unit.code == 0);
  const auto udoc = nlohmann::json::parse(unit.out);
  CHECK(std::fabs(udoc["exponent"].get<double>() - 1.0) < 1e-12);
  CHECK(std::fabs(udoc["r_squared"].get<double>() - 1.0) < 1e-12);

  CHECK(run({"fit", "--input", "/tmp/erws_no_such_file.csv", "--window", "1:10"}).code == 2);
  CHECK(run({"fit", "--input", linear_path, "--window", "banana"}).code == 2);
  CHECK(run({"fit", "--input", linear_path, "--window", "10:1000"}).code == 2);

  const std::string headless_path = "/tmp/erws_test_fit_headless.csv";
  {
    std::ofstream f(headless_path, std::ios::binary);
    f << "a,b\n1,2\n";
  }
  CHECK(run({"fit", "--input", headless_path, "--window", "1:10"}).code == 2);

  std::remove(curve_path.c_str());
  std::remove(linear_path.c_str());
  std::remove(headless_path.c_str());
}

TEST_CASE("simulate subcommand is deterministic and well-formed") {
  const std::vector<std::string> base = {"simulate", "--eps", "0.1",     "--r",     "0.2",
                                         "--gamma",  "0.3",   "--walkers", "4096",  "--t-max",
                                         "64",       "--seed", "42"};
  auto with_threads = [&](const std::string& n) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(n);
    return run(args);
  };
  const auto one = with_threads("1");
  const auto two = with_threads("2");
  const auto eight = with_threads("8");
  REQUIRE(one.code == 0);
  CHECK(one.out == two.out);
  CHECK(one.out == eight.out);

  const csv::Table table = csv::parse(one.out);
  CHECK(table.header == std::vector<std::string>{"t", "mean_x", "msd", "msd_se", "walkers"});
  CHECK(table.rows[0][csv::column_index(table, "msd")] == "1");
  CHECK(table.rows[0][csv::column_index(table, "walkers")] == "4096");
  CHECK(csv::normalize(one.out) == one.out);

  const auto planar = run({"simulate", "--dim", "2", "--eps", "0.1", "--r", "0.2", "--gamma",
                           "0.3", "--gamma-prime", "0.1", "--walkers", "1024", "--t-max", "32",
                           "--seed", "7"});
  REQUIRE(planar.code == 0);
  const csv::Table ptable = csv::parse(planar.out);
  CHECK(ptable.header ==
        std::vector<std::string>{"t", "mean_x", "mean_y", "msd", "msd_se", "walkers"});
  CHECK(ptable.rows[0][csv::column_index(ptable, "msd")] == "1");

  CHECK(run({"simulate", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--walkers", "0",
             "--t-max", "8"})
            .code == 2);
  CHECK(run({"simulate", "--dim", "3", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3",
             "--walkers", "16", "--t-max", "8"})
            .code == 2);

  auto hex_seed = base;
  hex_seed.back() = "0xdeadbeef";
  CHECK(run(hex_seed).code == 0);
}

TEST_CASE("output redirection writes the same bytes to a file") {
  const std::string path = "/tmp/erws_test_out_redirect.csv";
  const std::vector<std::string> base = {"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3",
                                         "--t-max", "8", "--checkpoints", "1,8"};
  const auto direct = run(base);
  auto redirected_args = base;
  redirected_args.push_back("--out");
  redirected_args.push_back(path);
  const auto redirected = run(redirected_args);
  REQUIRE(redirected.code == 0);
  CHECK(redirected.out.empty());
  CHECK(read_file(path) == direct.out);
  std::remove(path.c_str());

  CHECK(run({"exact", "--eps", "0.1", "--r", "0.2", "--gamma", "0.3", "--t-max", "8",
             "--checkpoints", "1", "--out", "/nonexistent_dir/x.csv"})
            .code == 2);
}
