#include "razak/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "razak/central.hpp"
#include "razak/report.hpp"
#include "razak/tower.hpp"
#include "razak/tower_io.hpp"

namespace razak {

namespace {

using nlohmann::json;

const char* const kExperiments[] = {"verify", "eig-density", "trace-gap", "approx-unit", "central"};

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

template <class T>
void read_field(const json& j, const char* key, T& target) {
  if (!j.contains(key)) return;
  try {
    target = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("config field '") + key + "': " + e.what());
  }
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "," : "") + cells[k];
  return out + "\n";
}

struct Outputs {
  const ExperimentConfig& config;
  Report& report;

  void write(const std::string& name, const std::string& contents) {
    write_file_atomic(config.out / name, contents);
    report.add_file(name);
  }
};

Tower load_or_build(const ExperimentConfig& config) {
  if (!config.tower_file.empty()) {
    std::ifstream in(config.tower_file, std::ios::binary);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + config.tower_file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return tower_from_json(buf.str());
  }
  TowerOptions options;
  options.grid_size = config.grid_size;
  options.dimension_cap = config.dimension_cap;
  return build_tower(config.seed, config.depth, options);
}

std::string stage_pair(std::size_t i, std::size_t j) {
  return std::to_string(i) + "," + std::to_string(j);
}

Trace random_trace(const BuildingBlock& b, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Trace tau(b);
  const int atoms = 1 + static_cast<int>(rng() % 4);
  for (int k = 0; k < atoms; ++k) {
    const std::uint64_t kind = rng() % 6;
    const double t = kind == 0 ? 0.0 : kind == 1 ? 1.0 : unit(rng);
    tau.add(t, 0.05 + unit(rng));
  }
  return tau;
}

void verify_suite(const Tower& tower, const ExperimentConfig& config, Report& report, std::ostream& log) {
  const auto& tol = config.tol;
  for (std::size_t k = 0; k < tower.steps().size(); ++k) {
    const ConnectingMap& step = tower.steps()[k];
    if (step.target.n_prime() > config.dense_limit) continue;
    report.add(check("step" + std::to_string(k + 1) + ".unitarity",
                     path_unitarity_defect(*step.path, step.grid_size), Relation::LessEqual, tol.unitarity));
  }

  std::uint64_t map_index = 0;
  for (std::size_t i = 1; i <= tower.depth(); ++i) {
    for (std::size_t j = i + 1; j <= tower.depth(); ++j, ++map_index) {
      const ConnectingMap& phi = tower.stage_map(i, j);
      const std::string tag = "phi" + stage_pair(i, j);
      const Dyadic osc = branch_oscillation(phi.branches);
      report.add(check(tag + ".oscillation", osc.value(), Relation::Equal, std::ldexp(1.0, -phi.depth)));
      report.add(check_true(tag + ".exact_oscillation", osc == Dyadic{1, phi.depth}));
      report.add(check_true(tag + ".covers", branches_cover(phi.branches)));

      std::mt19937_64 rng(config.rng_seed * 1000003 + map_index);
      std::vector<Trace> traces;
      std::vector<BlockElement> trace_elements;
      for (std::size_t p = 0; p < config.trace_pairs; ++p) {
        traces.push_back(random_trace(phi.target, rng));
        trace_elements.push_back(random_element(phi.source, phi.grid_size, rng));
      }
      double norm_gap = 0.0;
      for (const auto& tau : traces) {
        norm_gap = std::max(norm_gap, std::abs(trace_norm(pushforward_trace(phi, tau)) - trace_norm(tau)));
      }
      report.add(check(tag + ".trace_norm_preserved", norm_gap, Relation::LessEqual, tol.trace_norm));

      if (phi.target.n_prime() > config.dense_limit) {
        log << tag << ": dense checks skipped (n' = " << phi.target.n_prime() << ")\n";
        continue;
      }
      double duality = 0.0;
      for (std::size_t p = 0; p < traces.size(); ++p) {
        const double lhs = eval_trace(pushforward_trace(phi, traces[p]), trace_elements[p]);
        const double rhs = eval_trace(traces[p], apply_map(phi, trace_elements[p]));
        duality = std::max(duality, std::abs(lhs - rhs));
      }
      report.add(check(tag + ".trace_duality", duality, Relation::LessEqual, tol.duality));

      std::vector<BlockElement> samples;
      for (std::size_t p = 0; p < 2 * config.sample_pairs; ++p) {
        samples.push_back(random_element(phi.source, phi.grid_size, rng));
      }
      MapMetricsRequest hom_only;
      hom_only.adjoint_defect = false;
      const MapMetrics m = map_metrics(phi, samples, hom_only);
      report.add(check(tag + ".hom_defect", m.hom_defect, Relation::LessEqual, tol.hom_defect));
      report.add(check(tag + ".boundary_defect", m.boundary_defect, Relation::LessEqual, tol.boundary));

      MapMetricsRequest adjoint_only;
      adjoint_only.hom_defect = false;
      const std::vector<BlockElement> few(samples.begin(),
                                          samples.begin() + std::min(samples.size(), config.adjoint_samples));
      const MapMetrics a = map_metrics(phi, few, adjoint_only);
      report.add(check(tag + ".adjoint_defect", a.adjoint_defect, Relation::LessEqual, tol.adjoint_defect));
      if (phi.kind == ConnectingMap::Kind::Composite) {
        report.add(check(tag + ".unitarity", path_unitarity_defect(*phi.path, phi.grid_size),
                         Relation::LessEqual, tol.unitarity));
      }
      log << tag << ": hom_defect " << format_double(m.hom_defect) << "\n";
    }
  }
}

void eig_density_experiment(const Tower& tower, const ExperimentConfig& config, Report& report,
                            Outputs& out) {
  std::string csv = csv_line({"j", "x", "delta", "distinct"});
  std::string dat = "# j x delta\n";
  for (std::size_t j = 2; j <= tower.depth(); ++j) {
    double worst = 0.0;
    for (std::size_t k = 0; k < config.x_points; ++k) {
      const double x = config.x_points == 1 ? 0.0
                                            : static_cast<double>(k) / static_cast<double>(config.x_points - 1);
      const EigDensity d = eig_density(tower, j, x, config.dense_limit);
      worst = std::max(worst, d.delta);
      csv += csv_line({std::to_string(j), format_double(x), format_double(d.delta),
                       std::to_string(d.spectrum.size())});
      dat += std::to_string(j) + " " + format_double(x) + " " + format_double(d.delta) + "\n";
    }
    report.add(check("eig_density.j" + std::to_string(j) + ".delta", worst, Relation::LessEqual,
                     std::ldexp(1.0, -static_cast<int>(j - 1))));
  }
  out.write("eig-density.csv", csv);
  out.write("eig-density.dat", dat);
}

void trace_gap_experiment(const Tower& tower, const ExperimentConfig& config, Report& report,
                          Outputs& out) {
  const BlockElement h = canonical_h(tower.seed(), tower.grid_size());
  std::string csv = csv_line({"j", "gap", "modulus", "bound"});
  std::string dat = "# j gap\n";
  double previous = INFINITY;
  for (std::size_t j = 2; j <= tower.depth(); ++j) {
    const OscillationGap g = oscillation_gap(tower.stage_map(1, j), h);
    const double bound = std::ldexp(1.0, -static_cast<int>(j - 1));
    const std::string tag = "trace_gap.j" + std::to_string(j);
    report.add(check(tag + ".modulus_bound", g.gap, Relation::LessEqual, g.modulus + config.tol.gap_slack));
    report.add(check(tag + ".rate_bound", g.gap, Relation::LessEqual, bound + config.tol.gap_slack));
    if (std::isfinite(previous)) {
      report.add(check(tag + ".nonincreasing", g.gap, Relation::LessEqual, previous + config.tol.monotone));
    }
    previous = g.gap;
    csv += csv_line({std::to_string(j), format_double(g.gap), format_double(g.modulus), format_double(bound)});
    dat += std::to_string(j) + " " + format_double(g.gap) + "\n";
  }
  out.write("trace-gap.csv", csv);
  out.write("trace-gap.dat", dat);
}

void approx_unit_experiment(const Tower& tower, const ExperimentConfig& config, Report& report,
                            Outputs& out) {
  if (tower.depth() < 2) throw Error(ErrorKind::ConfigError, "approx-unit needs depth >= 2");
  const ConnectingMap& phi = tower.stage_map(1, 2);
  std::mt19937_64 rng(config.rng_seed);
  std::vector<BlockElement> randoms;
  for (std::size_t p = 0; p < 4; ++p) randoms.push_back(random_element(phi.source, phi.grid_size, rng));

  MapMetricsRequest request;
  request.hom_defect = false;
  request.adjoint_defect = false;
  request.approx_unit_orders = config.orders;
  const MapMetrics mh = map_metrics(phi, {canonical_h(phi.source, phi.grid_size)}, request);
  const MapMetrics mr = map_metrics(phi, randoms, request);

  std::string csv = csv_line({"n", "defect_h", "defect_random"});
  std::string dat = "# n defect_h defect_random\n";
  for (std::size_t q = 0; q < config.orders.size(); ++q) {
    const int n = config.orders[q];
    const double dh = mh.approx_unit_defect[q].second;
    const double dr = mr.approx_unit_defect[q].second;
    csv += csv_line({std::to_string(n), format_double(dh), format_double(dr)});
    dat += std::to_string(n) + " " + format_double(dh) + " " + format_double(dr) + "\n";
    if (q > 0) {
      report.add(check("approx_unit.h.n" + std::to_string(n) + ".nonincreasing", dh, Relation::LessEqual,
                       mh.approx_unit_defect[q - 1].second + config.tol.monotone));
      report.add(check("approx_unit.random.n" + std::to_string(n) + ".nonincreasing", dr, Relation::LessEqual,
                       mr.approx_unit_defect[q - 1].second + config.tol.monotone));
    }
    if (n >= 64) {
      report.add(check("approx_unit.h.n" + std::to_string(n), dh, Relation::LessEqual, config.tol.approx_unit));
      report.add(check("approx_unit.random.n" + std::to_string(n), dr, Relation::LessEqual,
                       config.tol.approx_unit));
    }
  }
  out.write("approx-unit.csv", csv);
  out.write("approx-unit.dat", dat);
}

void central_experiment(const Tower& tower, const ExperimentConfig& config, Report& report, Outputs& out) {
  const std::size_t i = config.central_stage;
  if (i < 2) throw Error(ErrorKind::ConfigError, "central_stage must be >= 2");
  const BuildingBlock& block = tower.stage(i);
  const TensorTruncation trunc = make_truncation(block.n_prime(), config.factors);
  const std::size_t m = trunc.factors.size();
  if (m == 0) throw Error(ErrorKind::ConfigError, "central needs at least one tensor factor");

  // a = φ_1i(h), and simple-tensor test elements on the earlier factors.
  const BlockElement a = apply_map(tower.stage_map(1, i), canonical_h(tower.seed(), tower.grid_size()));
  std::mt19937_64 rng(config.rng_seed);
  const auto tests = disjoint_test_elements(trunc, m, 8, rng);
  const SigmaMetrics s = sigma_stage(tower, i, trunc, m, a, tests);

  report.add(check("central.commutator", s.commutator, Relation::Equal, 0.0));
  report.add(check("central.norm_defect", s.norm_defect, Relation::LessEqual, config.tol.norm_defect));
  std::string csv = csv_line({"j", "norm_recovery", "trace_match"});
  std::string dat = "# j norm_recovery trace_match\n";
  for (std::size_t k = 0; k < s.trace_match.size(); ++k) {
    const auto [j, tm] = s.trace_match[k];
    const double nr = s.norm_recovery[k].second;
    csv += csv_line({std::to_string(j), format_double(nr), format_double(tm)});
    dat += std::to_string(j) + " " + format_double(nr) + " " + format_double(tm) + "\n";
    if (k > 0) {
      report.add(check("central.trace_match.j" + std::to_string(j) + ".rate",
                       std::abs(tm - s.trace_match[k - 1].second), Relation::LessEqual,
                       std::ldexp(1.0, -static_cast<int>(j - 2))));
    }
  }
  out.write("central.csv", csv);
  out.write("central.dat", dat);
}

void record_config(const ExperimentConfig& c, Report& r) {
  r.set("seed.n", static_cast<std::int64_t>(c.seed.n));
  r.set("seed.a", static_cast<std::int64_t>(c.seed.a));
  r.set("depth", static_cast<std::int64_t>(c.depth));
  r.set("grid_size", static_cast<std::int64_t>(c.grid_size));
  r.set("rng_seed", static_cast<std::int64_t>(c.rng_seed));
  r.set("sample_pairs", static_cast<std::int64_t>(c.sample_pairs));
  r.set("tower_file", c.tower_file.string());
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config must be a JSON object");
  static const char* const known[] = {"seed", "depth", "grid", "experiment", "rng_seed", "sample_pairs",
                                      "adjoint_samples", "trace_pairs", "x_points", "orders",
                                      "central_stage", "factors", "dense_limit", "dimension_cap", "out",
                                      "tower_file", "tolerances"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw Error(ErrorKind::ConfigError, "unknown config key '" + key + "'");
    }
  }
  ExperimentConfig c;
  if (j.contains("seed")) {
    const json& s = j["seed"];
    read_field(s, "n", c.seed.n);
    read_field(s, "a", c.seed.a);
  }
  read_field(j, "depth", c.depth);
  read_field(j, "grid", c.grid_size);
  read_field(j, "experiment", c.experiment);
  read_field(j, "rng_seed", c.rng_seed);
  read_field(j, "sample_pairs", c.sample_pairs);
  read_field(j, "adjoint_samples", c.adjoint_samples);
  read_field(j, "trace_pairs", c.trace_pairs);
  read_field(j, "x_points", c.x_points);
  read_field(j, "orders", c.orders);
  read_field(j, "central_stage", c.central_stage);
  read_field(j, "factors", c.factors);
  read_field(j, "dense_limit", c.dense_limit);
  read_field(j, "dimension_cap", c.dimension_cap);
  std::string path;
  read_field(j, "out", path);
  if (!path.empty()) c.out = path;
  path.clear();
  read_field(j, "tower_file", path);
  if (!path.empty()) c.tower_file = path;
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    read_field(t, "hom_defect", c.tol.hom_defect);
    read_field(t, "adjoint_defect", c.tol.adjoint_defect);
    read_field(t, "boundary", c.tol.boundary);
    read_field(t, "unitarity", c.tol.unitarity);
    read_field(t, "duality", c.tol.duality);
    read_field(t, "trace_norm", c.tol.trace_norm);
    read_field(t, "gap_slack", c.tol.gap_slack);
    read_field(t, "monotone", c.tol.monotone);
    read_field(t, "approx_unit", c.tol.approx_unit);
    read_field(t, "norm_defect", c.tol.norm_defect);
  }
  return c;
}

void validate_config(const ExperimentConfig& c) {
  if (c.seed.n < 1 || c.seed.a < 1) throw Error(ErrorKind::ConfigError, "seed needs n >= 1 and a >= 1");
  if (c.depth < 1) throw Error(ErrorKind::ConfigError, "depth must be >= 1");
  if (!is_power_of_two(c.grid_size)) throw Error(ErrorKind::ConfigError, "grid must be a power of two");
  if (std::find(std::begin(kExperiments), std::end(kExperiments), c.experiment) == std::end(kExperiments)) {
    throw Error(ErrorKind::ConfigError, "unknown experiment '" + c.experiment + "'");
  }
  for (int n : c.orders) {
    if (n < 1) throw Error(ErrorKind::ConfigError, "orders must be >= 1");
  }
  if (c.x_points < 1) throw Error(ErrorKind::ConfigError, "x_points must be >= 1");
}

std::string csv_schema() {
  return "report.json  {command, config, invariants: [{name, value, relation, bound, pass}], files, pass}\n"
         "eig-density.csv  j,x,delta,distinct   stage j, point x, density radius, distinct eigenvalue count\n"
         "eig-density.dat  j x delta\n"
         "trace-gap.csv  j,gap,modulus,bound   spread of tr(phi_1j(h)(x)) over x, modulus of h, 2^-(j-1)\n"
         "trace-gap.dat  j gap\n"
         "approx-unit.csv  n,defect_h,defect_random   max ||phi(h)^(1/n) phi(f) - phi(f)|| for f = h and random f\n"
         "approx-unit.dat  n defect_h defect_random\n"
         "central.csv  j,norm_recovery,trace_match   ||ev_inf(phi_ij(a))|| and its normalized trace\n"
         "central.dat  j norm_recovery trace_match\n"
         "tower.json  {seed, depth, grid_size, stages, steps: [{branches, dim, unitary_path}]}\n";
}

int run_command(const ExperimentConfig& config, const std::string& command, std::ostream& log) {
  validate_config(config);
  std::filesystem::create_directories(config.out);
  Report report(command);
  record_config(config, report);
  Outputs out{config, report};

  const Tower tower = load_or_build(config);
  report.set("stages", static_cast<std::int64_t>(tower.depth()));
  if (command == "tower-build") {
    out.write("tower.json", tower_to_json(tower));
    for (std::size_t i = 1; i < tower.depth(); ++i) {
      const BuildingBlock& b = tower.stage(i);
      const BuildingBlock& next = tower.stage(i + 1);
      report.add(check("stage" + std::to_string(i + 1) + ".a_recurrence", static_cast<double>(next.a),
                       Relation::Equal, static_cast<double>(2 * b.a + 1)));
      report.add(check("stage" + std::to_string(i + 1) + ".n_recurrence", static_cast<double>(next.n),
                       Relation::Equal, static_cast<double>((2 * b.a + 1) * b.n)));
    }
  } else if (command == "verify") {
    verify_suite(tower, config, report, log);
  } else if (command == "eig-density") {
    eig_density_experiment(tower, config, report, out);
  } else if (command == "trace-gap") {
    trace_gap_experiment(tower, config, report, out);
  } else if (command == "approx-unit") {
    approx_unit_experiment(tower, config, report, out);
  } else if (command == "central") {
    central_experiment(tower, config, report, out);
  } else {
    throw Error(ErrorKind::ConfigError, "unknown command '" + command + "'");
  }

  for (const auto& inv : report.invariants()) {
    if (!inv.pass) {
      log << "FAIL " << inv.name << ": " << format_double(inv.value) << " " << to_string(inv.relation) << " "
          << format_double(inv.bound) << "\n";
    }
  }
  write_file_atomic(config.out / "report.json", report.to_json());
  log << command << ": " << report.invariants().size() << " invariants, "
      << (report.all_pass() ? "all pass" : "FAILURES") << "\n";
  return report.all_pass() ? 0 : 1;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Razak building-block towers: construction, verification and experiments"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::size_t> depth, grid;
  std::optional<std::uint64_t> seed;
  std::string out_dir, tower_path;
  bool schema = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--depth", depth, "number of tower stages");
  app.add_option("--grid", grid, "grid size N (power of two)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "random seed for sampled elements");
  app.add_flag("--schema", schema, "print the output file columns");

  std::string command;
  auto* tower = app.add_subcommand("tower", "build or verify a tower");
  tower->require_subcommand(1);
  tower->add_subcommand("build", "build a tower and write tower.json")->callback([&] { command = "tower-build"; });
  auto* verify = tower->add_subcommand("verify", "run the map invariant suite");
  verify->add_option("--tower", tower_path, "verify a stored tower.json");
  verify->callback([&] { command = "verify"; });
  auto* experiment = app.add_subcommand("experiment", "run an experiment");
  experiment->require_subcommand(1);
  for (const char* name : {"eig-density", "trace-gap", "approx-unit", "central"}) {
    experiment->add_subcommand(name, std::string("experiment ") + name)->callback([&command, name] {
      command = name;
    });
  }
  app.add_subcommand("run", "run the experiment selected in the config")->callback([&] { command = "run"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (schema) {
    std::cout << csv_schema();
    return 0;
  }
  if (command.empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    ExperimentConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::ConfigError, "cannot read config " + config_path);
      std::stringstream buf;
      buf << in.rdbuf();
      config = config_from_json(buf.str());
    }
    if (depth) config.depth = *depth;
    if (grid) config.grid_size = *grid;
    if (seed) config.rng_seed = *seed;
    if (!out_dir.empty()) config.out = out_dir;
    if (!tower_path.empty()) config.tower_file = tower_path;
    if (command == "run") command = config.experiment;
    return run_command(config, command, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::ConfigError:
      case ErrorKind::FormatError: return 2;
      case ErrorKind::ResourceLimit: return 3;
      default: return 1;
    }
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace razak
