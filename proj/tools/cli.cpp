#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "rictube/assembly.hpp"
#include "rictube/curvature.hpp"
#include "rictube/oracle.hpp"
#include "rictube/serialize.hpp"

namespace rictube::cli {

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

/// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    if (!os.flush()) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content << '\n';
  } else {
    write_file_atomic(out_path, content);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read " + path);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

struct DesignArgs {
  TubeParams params;
  double window_frac = 1e-2;
  double delta = 0.0;
  int grid = 2048;
  std::string out, csv, config_path;
};

json design_config_echo(const DesignArgs& a) {
  return json{{"command", "design-tube"},
              {"q", a.params.q},
              {"m", a.params.m},
              {"eps", a.params.eps},
              {"nu", a.params.nu},
              {"lambda", a.params.lambda},
              {"Lambda", a.params.Lambda},
              {"iota", a.params.iota},
              {"window_frac", a.window_frac},
              {"delta", a.delta},
              {"grid", a.grid}};
}

int cmd_design_tube(const DesignArgs& args) {
  assembly::DesignOptions opt;
  opt.smoothing_window_frac = args.window_frac;
  opt.delta = args.delta;
  opt.grid_points = args.grid;
  const std::string echo = design_config_echo(args).dump();
  try {
    assembly::TubeDesign td = design_tube(args.params, opt);
    emit(args.out, tube_document_to_json_string(td.params, td.f, td.h, td.report, echo));
    if (!args.csv.empty()) {
      std::ostringstream os;
      write_grid_csv(os, td.f, td.h, td.params, check_grid2(td.f, td.h, args.grid));
      write_file_atomic(args.csv, os.str());
    }
    return td.report.all_pass() ? kExitPass : kExitChecksFailed;
  } catch (const InfeasibleParams& e) {
    json doc{{"config", json::parse(echo)},
             {"pass", false},
             {"failure", "InfeasibleParams"},
             {"message", e.what()}};
    emit(args.out, doc.dump(2));
    std::cerr << "design-tube: " << e.what() << '\n';
    return kExitChecksFailed;
  }
}

int cmd_verify_tube(const std::string& in_path, const std::string& out, int grid) {
  const TubeDocument doc = tube_document_from_json_string(read_file(in_path));
  const std::vector<double> pts = check_grid2(doc.f, doc.h, grid);
  const ConditionReport rep = verify_tube(doc.f, doc.h, doc.params, pts);
  const json echo{{"command", "verify-tube"}, {"in", in_path}, {"grid", grid}};
  emit(out, tube_document_to_json_string(doc.params, doc.f, doc.h, rep, echo.dump()));
  return rep.all_pass() ? kExitPass : kExitChecksFailed;
}

int cmd_assemble(const std::string& config_path, const std::string& out,
                 const std::string& csv_dir) {
  assembly::AssemblyConfig cfg = assembly::config_from_json_string(read_file(config_path));
  const assembly::FeasibilityReport rep = assembly::assemble(cfg);
  json echo = json::parse(assembly::to_json_string(cfg));
  echo["command"] = "assemble";
  emit(out, assembly::to_json_string(rep, echo.dump()));
  if (!csv_dir.empty()) {
    std::filesystem::create_directories(csv_dir);
    for (const auto& b : rep.boundaries) {
      if (b.tube_f && b.tube_h && b.tube_params) {
        std::ostringstream os;
        write_grid_csv(os, *b.tube_f, *b.tube_h, *b.tube_params,
                       check_grid2(*b.tube_f, *b.tube_h, cfg.grid_points));
        write_file_atomic(csv_dir + "/tube_" + b.label + ".csv", os.str());
      }
    }
  }
  return rep.overall ? kExitPass : kExitChecksFailed;
}

int cmd_double(int samples, int planes, std::uint64_t seed, const std::string& out) {
  assembly::DoubleOptions opt;
  opt.sec_points = samples;
  opt.sec_planes = planes;
  opt.seed = seed;
  const Profile cap = Profile::sine(1.0, 0.0, 0.0, M_PI / 2.0);
  const assembly::FeasibilityReport rep = assembly::assemble_double(cap, cap, opt);
  const json echo{{"command", "double"}, {"samples", samples}, {"planes", planes},
                  {"seed", seed}};
  emit(out, assembly::to_json_string(rep, echo.dump()));
  return rep.overall ? kExitPass : kExitChecksFailed;
}

int cmd_exceptional(int n, double lambda, double Lambda, double nu, const std::string& out) {
  const assembly::ExceptionalTube tube = assembly::build_exceptional_tube(n, lambda, Lambda, nu);
  const json echo{{"command", "exceptional"}, {"n", n},      {"lambda", lambda},
                  {"Lambda", Lambda},         {"nu", nu}};
  json doc{{"config", echo},
           {"h", json::parse(to_json_string(tube.h))},
           {"radius", tube.radius},
           {"report", json::parse(to_json_string(tube.report))}};
  emit(out, doc.dump(2));
  return tube.report.all_pass() ? kExitPass : kExitChecksFailed;
}

int cmd_oracle_validate(const std::string& chart, double c, const std::string& in_path,
                        int grid, double step, std::uint64_t seed, const std::string& out) {
  std::vector<oracle::ComparisonRow> rows;
  if (chart == "tube") {
    if (in_path.empty()) throw ConfigError("--chart tube needs --in tube.json");
    const TubeDocument doc = tube_document_from_json_string(read_file(in_path));
    rows = oracle::compare_tube_ricci(doc.f, doc.h, doc.params, grid, seed, step);
  } else if (chart == "round-s4") {
    const double hi = M_PI - 0.05;
    const Profile sine = Profile::sine(1.0, 0.0, 0.05, hi);
    TubeParams p;
    p.q = 1;
    p.m = 1;
    rows = oracle::compare_tube_ricci(sine, sine, p, grid, seed, step);
  } else if (chart == "berger") {
    const Profile f = Profile::constant(c, 0.0, 2.0);
    const Profile h = Profile::constant(1.0, 0.0, 2.0);
    TubeParams p;
    p.q = 1;
    p.m = 1;
    rows = oracle::compare_tube_ricci(f, h, p, grid, seed, step);
  } else if (chart == "round-s3") {
    // Cross-section check: eigenvalues of the unit round 3-sphere.
    const oracle::ChartMetric cm = oracle::chart_round_hopf_s3();
    std::mt19937_64 rng(seed);
    for (int i = 0; i < grid; ++i) {
      std::vector<double> x(3);
      for (int k = 0; k < 3; ++k) {
        const auto& [lo, hi] = cm.valid_region[static_cast<size_t>(k)];
        std::uniform_real_distribution<double> u(lo + 0.05, hi - 0.05);
        x[static_cast<size_t>(k)] = u(rng);
      }
      const oracle::CurvatureSample s = oracle::ricci_sample(cm, x, step, 0, seed);
      for (double ev : s.ricci_eigen) {
        rows.push_back(oracle::ComparisonRow{cm.name, x, "ricci_eigenvalue", 2.0, ev,
                                             std::abs(ev - 2.0) / 2.0});
      }
    }
  } else {
    throw ConfigError("unknown chart '" + chart + "'");
  }
  const json echo{{"command", "oracle-validate"}, {"chart", chart}, {"c", c},
                  {"grid", grid},                 {"step", step},   {"seed", seed}};
  emit(out, comparison_rows_to_json_string(rows, echo.dump()));
  return oracle::max_rel_err(rows) <= 1e-4 ? kExitPass : kExitChecksFailed;
}

int cmd_experiment(int d, double rhoF, const std::string& kind, const std::string& amps_csv,
                   const std::string& trims_csv, const std::string& values_csv, double lo,
                   double hi, const std::string& out) {
  std::vector<assembly::ShellFamilyMember> family;
  if (kind == "sine") {
    for (double a : parse_list(amps_csv.empty() ? "1" : amps_csv))
      for (double t : parse_list(trims_csv.empty() ? "0.3" : trims_csv)) {
        assembly::ShellFamilyMember m;
        m.kind = "sine";
        m.amplitude = a;
        m.trim = t;
        family.push_back(m);
      }
  } else if (kind == "constant") {
    for (double v : parse_list(values_csv.empty() ? "1" : values_csv)) {
      assembly::ShellFamilyMember m;
      m.kind = "constant";
      m.value = v;
      m.lo = lo;
      m.hi = hi;
      family.push_back(m);
    }
  } else {
    throw ConfigError("unknown family kind '" + kind + "'");
  }
  std::ostringstream os;
  assembly::experiment_shell_scan(d, rhoF, family, os);
  emit(out, os.str());
  return kExitPass;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"doubly warped tube metrics: design, verification, gluing feasibility"};
  app.require_subcommand(1);

  // design-tube
  DesignArgs da;
  auto* design = app.add_subcommand("design-tube", "design a singular-orbit tube profile pair");
  design->add_option("--q", da.params.q, "Hopf fiber sphere dimension (1 or 3)");
  design->add_option("--m", da.params.m, "projective base index");
  design->add_option("--eps", da.params.eps, "orbit-direction scaling margin");
  design->add_option("--nu", da.params.nu, "fiber metric scale");
  design->add_option("--lambda", da.params.lambda, "boundary value of the base profile");
  design->add_option("--Lambda", da.params.Lambda, "boundary slope of the base profile");
  design->add_option("--iota", da.params.iota, "plateau depth (0 = auto)");
  design->add_option("--window-frac", da.window_frac, "bridge width as a fraction of the radius");
  design->add_option("--delta", da.delta, "sine cap length (0 = auto)");
  design->add_option("--grid", da.grid, "verification grid points");
  design->add_option("-o,--out", da.out, "output JSON path (default stdout)");
  design->add_option("--csv", da.csv, "grid CSV path");
  design->add_option("--config", da.config_path, "JSON file with the same keys; flags override");

  // verify-tube
  std::string vt_in, vt_out;
  int vt_grid = 2048;
  auto* verify = app.add_subcommand("verify-tube", "re-verify a designed tube document");
  verify->add_option("--in", vt_in, "tube JSON document")->required();
  verify->add_option("--grid", vt_grid, "verification grid points");
  verify->add_option("-o,--out", vt_out, "output JSON path (default stdout)");

  // assemble
  std::string as_cfg, as_out, as_csvdir;
  auto* asm_cmd = app.add_subcommand("assemble", "run the full gluing feasibility pipeline");
  asm_cmd->add_option("--config", as_cfg, "assembly config JSON")->required();
  asm_cmd->add_option("-o,--out", as_out, "output JSON path (default stdout)");
  asm_cmd->add_option("--csv-dir", as_csvdir, "directory for grid CSV dumps");

  // double
  int db_samples = 40, db_planes = 30;
  std::uint64_t db_seed = 7;
  std::string db_out;
  auto* dbl = app.add_subcommand("double", "verify the mirror-double of the round disc");
  dbl->add_option("--samples", db_samples, "sectional sample points");
  dbl->add_option("--planes", db_planes, "2-planes per point");
  dbl->add_option("--seed", db_seed, "sampling seed");
  dbl->add_option("-o,--out", db_out, "output JSON path (default stdout)");

  // exceptional
  int ex_n = 2;
  double ex_lambda = 1.0, ex_Lambda = 0.5, ex_nu = 0.1;
  std::string ex_out;
  auto* exc = app.add_subcommand("exceptional", "build and check an exceptional-orbit tube");
  exc->add_option("--n", ex_n, "sphere dimension");
  exc->add_option("--lambda", ex_lambda, "boundary value");
  exc->add_option("--Lambda", ex_Lambda, "boundary slope");
  exc->add_option("--nu", ex_nu, "fiber metric scale");
  exc->add_option("-o,--out", ex_out, "output JSON path (default stdout)");

  // oracle-validate
  std::string ov_chart = "round-s4", ov_in, ov_out;
  double ov_c = 0.5, ov_step = 1e-5;
  int ov_grid = 20;
  std::uint64_t ov_seed = 11;
  auto* ov = app.add_subcommand("oracle-validate",
                                "compare closed-form curvature against the finite-difference "
                                "oracle");
  ov->add_option("--chart", ov_chart, "round-s4 | round-s3 | berger | tube");
  ov->add_option("--c", ov_c, "berger fiber scale");
  ov->add_option("--in", ov_in, "tube JSON document (chart=tube)");
  ov->add_option("--grid", ov_grid, "sample count");
  ov->add_option("--step", ov_step, "finite-difference step");
  ov->add_option("--seed", ov_seed, "sampling seed");
  ov->add_option("-o,--out", ov_out, "output JSON path (default stdout)");

  // experiment
  int xp_d = 2;
  double xp_rhoF = 1.0, xp_lo = 0.0, xp_hi = 1.0;
  std::string xp_kind = "sine", xp_amps, xp_trims, xp_values, xp_out;
  auto* xp = app.add_subcommand("experiment", "two-boundary shell feasibility scan (CSV)");
  xp->add_option("--d", xp_d, "fiber dimension");
  xp->add_option("--rhoF", xp_rhoF, "fiber Ricci constant");
  xp->add_option("--kind", xp_kind, "sine | constant");
  xp->add_option("--amplitudes", xp_amps, "comma-separated amplitudes (sine)");
  xp->add_option("--trims", xp_trims, "comma-separated trims (sine: domain [t, pi-t])");
  xp->add_option("--values", xp_values, "comma-separated levels (constant)");
  xp->add_option("--lo", xp_lo, "interval start (constant)");
  xp->add_option("--hi", xp_hi, "interval end (constant)");
  xp->add_option("-o,--out", xp_out, "output CSV path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (design->parsed()) {
    if (!da.config_path.empty()) {
      const json cfg = json::parse(read_file(da.config_path));
      auto take = [&](const char* key, auto& slot, const CLI::Option* opt) {
        using T = std::decay_t<decltype(slot)>;
        if (cfg.contains(key) && opt->count() == 0) slot = cfg.at(key).get<T>();
      };
      take("q", da.params.q, design->get_option("--q"));
      take("m", da.params.m, design->get_option("--m"));
      take("eps", da.params.eps, design->get_option("--eps"));
      take("nu", da.params.nu, design->get_option("--nu"));
      take("lambda", da.params.lambda, design->get_option("--lambda"));
      take("Lambda", da.params.Lambda, design->get_option("--Lambda"));
      take("iota", da.params.iota, design->get_option("--iota"));
      take("window_frac", da.window_frac, design->get_option("--window-frac"));
      take("delta", da.delta, design->get_option("--delta"));
      take("grid", da.grid, design->get_option("--grid"));
    }
    return cmd_design_tube(da);
  }
  if (verify->parsed()) return cmd_verify_tube(vt_in, vt_out, vt_grid);
  if (asm_cmd->parsed()) return cmd_assemble(as_cfg, as_out, as_csvdir);
  if (dbl->parsed()) return cmd_double(db_samples, db_planes, db_seed, db_out);
  if (exc->parsed()) return cmd_exceptional(ex_n, ex_lambda, ex_Lambda, ex_nu, ex_out);
  if (ov->parsed())
    return cmd_oracle_validate(ov_chart, ov_c, ov_in, ov_grid, ov_step, ov_seed, ov_out);
  if (xp->parsed())
    return cmd_experiment(xp_d, xp_rhoF, xp_kind, xp_amps, xp_trims, xp_values, xp_lo, xp_hi,
                          xp_out);
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParam& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleParams& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitChecksFailed;
  } catch (const Singular& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const DesignFailure& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace rictube::cli
