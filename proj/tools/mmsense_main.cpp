#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmsense/io.hpp"
#include "mmsense/metrology.hpp"
#include "mmsense/oracle.hpp"
#include "mmsense/sweep.hpp"

namespace {

using namespace mmsense;

struct LossFlags {
  double fraction = 0.0;
  double db = 0.0;
  bool exact_half = false;
  CLI::Option* fraction_opt = nullptr;
  CLI::Option* db_opt = nullptr;

  double resolve(double fallback) const {
    if (exact_half) return 0.5;
    if (db_opt != nullptr && db_opt->count() > 0) return 1.0 - std::pow(10.0, -db / 10.0);
    if (fraction_opt != nullptr && fraction_opt->count() > 0) return fraction;
    return fallback;
  }
};

// --loss-b / --loss-b-db / --exact-half on a subcommand.
void add_loss_b_flags(CLI::App* cmd, LossFlags& flags) {
  flags.fraction_opt =
      cmd->add_option("--loss-b", flags.fraction, "Long-arm loss fraction in [0,1]")
          ->check(CLI::Range(0.0, 1.0));
  flags.db_opt =
      cmd->add_option("--loss-b-db", flags.db, "Long-arm loss in dB (L = 1 - 10^(-dB/10))")
          ->check(CLI::NonNegativeNumber);
  flags.fraction_opt->excludes(flags.db_opt);
  flags.db_opt->excludes(flags.fraction_opt);
  cmd->add_flag("--exact-half", flags.exact_half,
                "Use exactly 50% long-arm loss (the idealized '3 dB' point; overrides "
                "--loss-b/--loss-b-db)");
}

struct PhiFlags {
  double min = 0.0;
  double max = 0.0;
  int steps = 1024;
  CLI::Option* max_opt = nullptr;

  sweep::PhiGrid grid(int fringe_order) const {
    if (max_opt == nullptr || max_opt->count() == 0) {
      sweep::PhiGrid g = sweep::PhiGrid::fringe_period(fringe_order, steps);
      g.min += min;
      g.max += min;
      return g;
    }
    return sweep::PhiGrid{min, max, steps};
  }
};

void add_phi_flags(CLI::App* cmd, PhiFlags& flags) {
  cmd->add_option("--phi-min", flags.min, "Grid start in radians (default 0)");
  flags.max_opt = cmd->add_option(
      "--phi-max", flags.max, "Grid end in radians, inclusive (default: one fringe period)");
  cmd->add_option("--phi-steps", flags.steps, "Number of grid points (default 1024)")
      ->check(CLI::Range(2, 1 << 22));
}

void write_output(const std::string& out_path, const std::string& format,
                  const std::function<void(std::ostream&)>& write_csv,
                  const std::function<std::string()>& make_json) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    out = &file;
  }
  if (format == "json") {
    *out << make_json() << '\n';
  } else {
    write_csv(*out);
  }
  out->flush();
  if (!*out) throw std::runtime_error("failed writing output");
}

std::vector<sweep::StatePair> parse_rows(const std::string& spec) {
  std::vector<sweep::StatePair> rows;
  std::istringstream stream(spec);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--rows", "expected m:mprime pairs, got '" + token + "'");
    }
    try {
      rows.push_back({std::stoi(token.substr(0, colon)), std::stoi(token.substr(colon + 1))});
    } catch (const std::exception&) {
      throw CLI::ValidationError("--rows", "cannot parse '" + token + "'");
    }
  }
  if (rows.empty()) throw CLI::ValidationError("--rows", "no rows given");
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"Phase metrology with photon-number path entanglement in lossy two-arm "
               "interferometers"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- table ----------------------------------------------------------
  auto* table = app.add_subcommand(
      "table", "Visibility and minimum detectable phase for a list of probe states");
  struct {
    std::string rows;
    double loss_a = 0.0;
    LossFlags loss_b;
    std::string out, format = "csv";
  } t;
  table->add_option("--rows", t.rows, "Comma list of m:mprime pairs (default: reference set)");
  table->add_option("--loss-a", t.loss_a, "Delay-arm loss fraction")->check(CLI::Range(0.0, 1.0));
  add_loss_b_flags(table, t.loss_b);
  table->add_option("--out", t.out, "Write CSV/JSON to this path (stdout shows the table)");
  table->add_option("--format", t.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  table->callback([&] {
    const double loss_b = t.loss_b.resolve(0.5);
    const auto rows = t.rows.empty() ? sweep::default_table_rows() : parse_rows(t.rows);
    const sweep::TableResult result = sweep::run_table(loss_b, t.loss_a, rows);
    io::print_table(std::cout, result);
    for (const auto& record : result.records) {
      if (!record.ok()) exit_code = 1;
    }
    if (!t.out.empty()) {
      write_output(t.out, t.format, [&](std::ostream& os) { io::write_table_csv(os, result); },
                   [&] { return io::table_json(result); });
    }
  });

  // ---- sensitivity ----------------------------------------------------
  auto* sensitivity = app.add_subcommand(
      "sensitivity", "delta_phi(phi) for an M&M state and its N00N counterpart");
  struct {
    int m = 20, mprime = 10;
    double loss_a = 0.0;
    LossFlags loss_b;
    PhiFlags phi;
    std::string out, format = "csv";
  } s;
  sensitivity->add_option("--m", s.m, "Larger photon number m")->required();
  sensitivity->add_option("--mprime", s.mprime, "Smaller photon number m'")->required();
  sensitivity->add_option("--loss-a", s.loss_a, "Delay-arm loss fraction")
      ->check(CLI::Range(0.0, 1.0));
  add_loss_b_flags(sensitivity, s.loss_b);
  add_phi_flags(sensitivity, s.phi);
  sensitivity->add_option("--out", s.out, "Output path (default stdout)");
  sensitivity->add_option("--format", s.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sensitivity->callback([&] {
    const LossyInterferometer config{s.m, s.mprime, ArmLoss::from_loss(s.loss_a),
                                     ArmLoss::from_loss(s.loss_b.resolve(0.0)), 0.0};
    const auto curve = sweep::sensitivity_curve(config, s.phi.grid(config.fringe_order()));
    write_output(s.out, s.format,
                 [&](std::ostream& os) { io::write_sensitivity_csv(os, curve); },
                 [&] { return io::sensitivity_json(curve); });
  });

  // ---- resolution -----------------------------------------------------
  auto* resolution = app.add_subcommand(
      "resolution", "<A>(phi) fringes for an M&M state and its N00N counterpart");
  struct {
    int m = 20, mprime = 10;
    double loss_a = 0.0;
    LossFlags loss_b;
    PhiFlags phi;
    std::string out, format = "csv";
  } r;
  resolution->add_option("--m", r.m, "Larger photon number m")->required();
  resolution->add_option("--mprime", r.mprime, "Smaller photon number m'")->required();
  resolution->add_option("--loss-a", r.loss_a, "Delay-arm loss fraction")
      ->check(CLI::Range(0.0, 1.0));
  add_loss_b_flags(resolution, r.loss_b);
  add_phi_flags(resolution, r.phi);
  resolution->add_option("--out", r.out, "Output path (default stdout)");
  resolution->add_option("--format", r.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  resolution->callback([&] {
    const LossyInterferometer config{r.m, r.mprime, ArmLoss::from_loss(r.loss_a),
                                     ArmLoss::from_loss(r.loss_b.resolve(0.0)), 0.0};
    const auto curve = sweep::resolution_curve(config, r.phi.grid(config.fringe_order()));
    write_output(r.out, r.format,
                 [&](std::ostream& os) { io::write_resolution_csv(os, curve); },
                 [&] { return io::resolution_json(curve); });
  });

  // ---- visgrid --------------------------------------------------------
  auto* visgrid = app.add_subcommand(
      "visgrid", "Fundamental visibility over a delay-loss x long-loss grid");
  struct {
    int m = 20, mprime = 10;
    sweep::LossRange range_a{0.0, 1.0, 0.01};
    sweep::LossRange range_b{0.0, 1.0, 0.01};
    std::string out, format = "csv";
  } v;
  visgrid->add_option("--m", v.m, "Larger photon number m")->required();
  visgrid->add_option("--mprime", v.mprime, "Smaller photon number m'")->required();
  visgrid->add_option("--la-start", v.range_a.start, "Delay-arm loss start (default 0)");
  visgrid->add_option("--la-stop", v.range_a.stop, "Delay-arm loss stop (default 1)");
  visgrid->add_option("--la-step", v.range_a.step, "Delay-arm loss step (default 0.01)");
  visgrid->add_option("--lb-start", v.range_b.start, "Long-arm loss start (default 0)");
  visgrid->add_option("--lb-stop", v.range_b.stop, "Long-arm loss stop (default 1)");
  visgrid->add_option("--lb-step", v.range_b.step, "Long-arm loss step (default 0.01)");
  visgrid->add_option("--out", v.out, "Output path (default stdout)");
  visgrid->add_option("--format", v.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  visgrid->callback([&] {
    const auto grid = sweep::visibility_grid(v.m, v.mprime, v.range_a, v.range_b);
    write_output(v.out, v.format, [&](std::ostream& os) { io::write_grid_csv(os, grid); },
                 [&] { return io::grid_json(grid); });
  });

  // ---- density-matrix -------------------------------------------------
  auto* density = app.add_subcommand(
      "density-matrix", "Reduced two-arm density matrix at a fixed phase");
  struct {
    int m = 2, mprime = 0;
    double loss_a = 0.0;
    LossFlags loss_b;
    double phi = 0.0;
    double trans_phase_a = 0.0, trans_phase_b = 0.0;
    double refl_phase_a = 0.0, refl_phase_b = 0.0;
    std::string out, format = "json";
  } d;
  density->add_option("--m", d.m, "Larger photon number m")->required();
  density->add_option("--mprime", d.mprime, "Smaller photon number m'")->required();
  density->add_option("--loss-a", d.loss_a, "Delay-arm loss fraction")
      ->check(CLI::Range(0.0, 1.0));
  add_loss_b_flags(density, d.loss_b);
  density->add_option("--phi", d.phi, "Interferometer phase in radians (default 0)");
  density->add_option("--trans-phase-a", d.trans_phase_a, "Arm-a transmission phase");
  density->add_option("--trans-phase-b", d.trans_phase_b, "Arm-b transmission phase");
  density->add_option("--refl-phase-a", d.refl_phase_a, "Arm-a reflection phase");
  density->add_option("--refl-phase-b", d.refl_phase_b, "Arm-b reflection phase");
  density->add_option("--out", d.out, "Output path (default stdout)");
  density->add_option("--format", d.format, "Output format (default json)")
      ->check(CLI::IsMember({"csv", "json"}));
  density->callback([&] {
    const LossyInterferometer config{
        d.m, d.mprime, ArmLoss{1.0 - d.loss_a, d.trans_phase_a, d.refl_phase_a},
        ArmLoss{1.0 - d.loss_b.resolve(0.0), d.trans_phase_b, d.refl_phase_b}, d.phi};
    const DensityMatrix rho = reduced_density_matrix(config);
    write_output(d.out, d.format,
                 [&](std::ostream& os) { io::write_density_matrix_csv(os, rho); },
                 [&] { return io::density_matrix_json(config, rho); });
  });

  // ---- threshold ------------------------------------------------------
  auto* threshold = app.add_subcommand(
      "threshold", "Long-arm loss at which the probe stops beating shot noise");
  struct {
    int m = 20, mprime = 10;
    double loss_a = 0.0;
    std::string out, format = "json";
  } th;
  threshold->add_option("--m", th.m, "Larger photon number m")->required();
  threshold->add_option("--mprime", th.mprime, "Smaller photon number m'")->required();
  threshold->add_option("--loss-a", th.loss_a, "Fixed delay-arm loss fraction")
      ->check(CLI::Range(0.0, 1.0));
  threshold->add_option("--out", th.out, "Output path (default stdout for json)");
  threshold->add_option("--format", th.format, "Output format (default json)")
      ->check(CLI::IsMember({"csv", "json"}));
  threshold->callback([&] {
    const std::optional<double> loss = loss_threshold_to_snl(th.m, th.mprime, th.loss_a);
    const double snl = limits(th.m, th.mprime).shot_noise;
    if (loss) {
      std::cout << "|" << th.m << "::" << th.mprime << "> reaches its shot-noise limit "
                << io::format_number(snl) << " at long-arm loss " << io::format_number(*loss)
                << '\n';
    } else {
      std::cout << "|" << th.m << "::" << th.mprime
                << "> never reaches its shot-noise limit for any long-arm loss\n";
    }
    if (!th.out.empty()) {
      write_output(th.out, th.format,
                   [&](std::ostream& os) {
                     os << "m,mprime,delay_arm_loss,threshold,snl\n";
                     os << th.m << ',' << th.mprime << ',' << io::format_number(th.loss_a) << ','
                        << (loss ? io::format_number(*loss) : std::string{}) << ','
                        << io::format_number(snl) << '\n';
                   },
                   [&] {
                     nlohmann::json doc{
                         {"config",
                          {{"m", th.m}, {"mprime", th.mprime}, {"delay_arm_loss", th.loss_a}}},
                         {"data",
                          {{"threshold",
                            loss ? nlohmann::json(io::round_to_output_precision(*loss))
                                 : nlohmann::json(nullptr)},
                           {"snl", io::round_to_output_precision(snl)}}}};
                     return doc.dump(2);
                   });
    }
  });

  // ---- verify ---------------------------------------------------------
  auto* verify = app.add_subcommand(
      "verify", "Cross-check the closed form against the brute-force reference");
  struct {
    int max_m = 4;
    int samples = 12;
    unsigned long long seed = 12345;
    std::string out;
  } vf;
  verify->add_option("--max-m", vf.max_m, "Largest m to test (brute-force bound 8)");
  verify->add_option("--samples", vf.samples, "Random draws per (m, m') pair");
  verify->add_option("--seed", vf.seed, "RNG seed (results are deterministic per seed)");
  verify->add_option("--out", vf.out, "Write a JSON report to this path");
  verify->callback([&] {
    const sweep::VerifyReport report = sweep::verify(vf.max_m, vf.samples, vf.seed);
    for (const auto& c : report.cases) {
      std::cout << "|" << c.m << "::" << c.mprime
                << ">  max |closed - brute| = " << io::format_number(c.max_abs_diff) << '\n';
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << ": max deviation "
              << io::format_number(report.max_abs_diff) << " (tolerance "
              << io::format_number(report.tolerance) << ", " << report.samples
              << " draws per pair, seed " << report.seed << ")\n";
    if (!vf.out.empty()) {
      write_output(vf.out, "json", [](std::ostream&) {}, [&] { return io::verify_json(report); });
    }
    if (!report.pass) exit_code = 1;
  });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
