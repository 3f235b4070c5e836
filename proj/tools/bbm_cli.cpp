// Command-line front end: runs the studies and writes CSV tables, column
// schemas, plot scripts and a JSON manifest per run.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bbm/acceptance.hpp"
#include "bbm/csvio.hpp"
#include "bbm/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double parse_speed(const std::string& s) {
  if (s.rfind("sqrt", 0) == 0) return std::sqrt(std::stod(s.substr(4)));
  return std::stod(s);
}

std::pair<double, double> parse_domain(const std::string& s) {
  const auto colon = s.find(':', 1);  // skip a leading minus sign
  if (colon == std::string::npos)
    throw bbm::ConfigError("domain must be given as a:b");
  const double a = std::stod(s.substr(0, colon));
  const double b = std::stod(s.substr(colon + 1));
  if (b <= a) throw bbm::ConfigError("domain must satisfy a < b");
  return {a, b};
}

std::vector<double> parse_dx_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
  if (out.empty()) throw bbm::ConfigError("empty resolution list");
  return out;
}

// "ratio:X" scales with dx; a plain number is an absolute step
struct DtSpec {
  bool is_ratio = false;
  double value = 0.0;
};

DtSpec parse_dt(const std::string& s) {
  DtSpec d;
  if (s.rfind("ratio:", 0) == 0) {
    d.is_ratio = true;
    d.value = std::stod(s.substr(6));
  } else {
    d.value = std::stod(s);
  }
  if (d.value <= 0.0) throw bbm::ConfigError("time step must be positive");
  return d;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void write_manifest(const fs::path& dir, const json& config, double wall_s,
                    const json& extra = json::object()) {
  json m;
  m["config"] = config;
  m["wall_time_seconds"] = wall_s;
  m["artifact_version"] = "1.0.0";
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = *it;
  bbm::write_text_file(dir / "run.json", m.dump(2) + "\n");
}

std::string opt_str(const std::optional<double>& v) {
  return v ? bbm::format_double(*v) : std::string();
}

void write_convergence_outputs(const fs::path& dir,
                               const std::vector<bbm::ConvergenceRow>& rows) {
  bbm::CsvTable t;
  t.header = {"dx",   "E0_H", "R0_H", "E0_U", "R0_U", "E1_H", "R1_H",
              "E1_U", "R1_U", "tE1_H", "tR1_H", "tE1_U", "tR1_U"};
  for (const bbm::ConvergenceRow& r : rows)
    t.rows.push_back({bbm::format_double(r.dx), bbm::format_double(r.E0_H),
                      opt_str(r.R0_H), bbm::format_double(r.E0_U),
                      opt_str(r.R0_U), bbm::format_double(r.E1_H),
                      opt_str(r.R1_H), bbm::format_double(r.E1_U),
                      opt_str(r.R1_U), opt_str(r.tE1_H), opt_str(r.tR1_H),
                      opt_str(r.tE1_U), opt_str(r.tR1_U)});
  bbm::write_csv(dir / "convergence.csv", t);
  bbm::write_schema(
      dir / "convergence.schema.txt",
      {{"dx", "cell width"},
       {"E0_H", "L2 error of the elevation"},
       {"R0_H", "rate of E0_H between consecutive rows (blank on first row)"},
       {"E0_U", "L2 error of the velocity"},
       {"R0_U", "rate of E0_U"},
       {"E1_H", "H1 error of the elevation (broken derivative)"},
       {"R1_H", "rate of E1_H"},
       {"E1_U", "H1 error of the velocity"},
       {"R1_U", "rate of E1_U"},
       {"tE1_H", "modified H1 error using the evolved derivative field"},
       {"tR1_H", "rate of tE1_H"},
       {"tE1_U", "modified H1 error of the velocity"},
       {"tR1_U", "rate of tE1_U"}});
  bbm::write_text_file(dir / "plot_convergence.gp",
                       "set logscale xy\n"
                       "set datafile separator ','\n"
                       "set key left top\n"
                       "set xlabel 'dx'\n"
                       "set ylabel 'error'\n"
                       "plot 'convergence.csv' using 1:2 skip 1 with linespoints title 'E0[H]', \\\n"
                       "     'convergence.csv' using 1:4 skip 1 with linespoints title 'E0[U]'\n");
}

void write_invariant_series(const fs::path& dir,
                            const std::vector<bbm::StepRecord>& steps) {
  bbm::CsvTable t;
  t.header = {"t", "mass", "momentum", "impulse", "energy", "gamma"};
  for (const bbm::StepRecord& s : steps)
    t.rows.push_back({bbm::format_double(s.t_new),
                      bbm::format_double(s.invariants.mass),
                      bbm::format_double(s.invariants.momentum),
                      bbm::format_double(s.invariants.impulse),
                      bbm::format_double(s.invariants.energy),
                      bbm::format_double(s.gamma)});
  bbm::write_csv(dir / "invariants.csv", t);
  bbm::write_schema(dir / "invariants.schema.txt",
                    {{"t", "time after the step"},
                     {"mass", "integral of the elevation"},
                     {"momentum", "integral of the velocity"},
                     {"impulse", "cross functional (monitored, not conserved)"},
                     {"energy", "total energy"},
                     {"gamma", "relaxation factor of the step (1 when disabled)"}});
  bbm::write_text_file(dir / "plot_invariants.gp",
                       "set datafile separator ','\n"
                       "set xlabel 't'\n"
                       "set ylabel 'energy'\n"
                       "plot 'invariants.csv' using 1:5 skip 1 with lines title 'energy'\n");
}

void write_drift(const fs::path& dir, const bbm::DriftReport& d,
                 const bbm::ConservedSet& cs) {
  bbm::CsvTable t;
  t.header = {"invariant", "max_drift", "expected_conserved"};
  auto row = [&t](const char* name, double v, bool c) {
    t.rows.push_back({name, bbm::format_double(v), c ? "yes" : "no"});
  };
  row("mass", d.mass, cs.mass);
  row("momentum", d.momentum, cs.momentum);
  row("impulse", d.impulse, cs.impulse);
  row("energy", d.energy, cs.energy);
  bbm::write_csv(dir / "drift.csv", t);
}

void write_snapshots(const fs::path& dir,
                     const std::vector<bbm::Snapshot>& snaps) {
  for (size_t k = 0; k < snaps.size(); ++k) {
    bbm::CsvTable t;
    t.header = {"x", "H", "U"};
    for (size_t i = 0; i < snaps[k].x.size(); ++i)
      t.rows.push_back({bbm::format_double(snaps[k].x[i]),
                        bbm::format_double(snaps[k].H[i]),
                        bbm::format_double(snaps[k].U[i])});
    std::ostringstream name;
    name << "snapshot_" << k << ".csv";
    bbm::write_csv(dir / name.str(), t);
  }
  if (!snaps.empty()) {
    std::ostringstream gp;
    gp << "set datafile separator ','\nset xlabel 'x'\nset ylabel 'H'\nplot ";
    for (size_t k = 0; k < snaps.size(); ++k) {
      if (k) gp << ", \\\n     ";
      gp << "'snapshot_" << k << ".csv' using 1:2 skip 1 with lines title 't="
         << snaps[k].t << "'";
    }
    gp << "\n";
    bbm::write_text_file(dir / "plot_snapshots.gp", gp.str());
  }
}

json gamma_stats(double lo, double hi) {
  return {{"gamma_minus_one_min", lo}, {"gamma_minus_one_max", hi}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conservative Galerkin solver for a regularised shallow-water system"};
  app.require_subcommand(1);
  app.set_config("--config");

  std::string out_dir = "out";
  app.add_option("--out", out_dir, "output directory")->capture_default_str();

  // shared option storage; each subcommand registers the subset it uses
  std::string bc_s = "reflective", scheme_s = "conservative";
  int degree = 1;
  std::string dx_s = "0.1", dt_s = "ratio:0.1", cs_s = "sqrt1.6";
  std::string domain_s, seed_wave;
  double T = 1.0;
  int jobs = 1;
  bool no_relax = false, travelling = false, long_time = false;
  double x0 = 0.0;

  auto* converge = app.add_subcommand("converge", "spatial convergence study");
  converge->add_option("--bc", bc_s, "periodic or reflective");
  converge->add_option("--scheme", scheme_s, "conservative or standard");
  converge->add_option("--r", degree, "element degree (1..4)");
  converge->add_option("--dx", dx_s, "comma-separated cell widths");
  converge->add_option("--dt", dt_s, "time step, ratio:X form only here");
  converge->add_option("--T", T, "final time");
  converge->add_option("--jobs", jobs, "parallel resolutions");
  converge->add_flag("--travelling", travelling,
                     "use the closed-form travelling wave instead of the "
                     "manufactured solution");
  converge->add_option("--domain", domain_s, "a:b (travelling case)");
  converge->add_flag("--no-relax", no_relax, "disable relaxation");

  auto* solitary = app.add_subcommand("solitary", "solitary-wave propagation");
  solitary->add_option("--cs", cs_s, "phase speed (accepts sqrtX)");
  solitary->add_option("--bc", bc_s, "periodic or reflective");
  solitary->add_option("--scheme", scheme_s, "conservative or standard");
  solitary->add_option("--r", degree, "element degree (1..4)");
  solitary->add_option("--dx", dx_s, "cell width");
  solitary->add_option("--dt", dt_s, "time step");
  solitary->add_option("--T", T, "final time");
  solitary->add_option("--domain", domain_s, "a:b");
  solitary->add_option("--x0", x0, "initial peak location");
  solitary->add_option(
      "--seed-wave", seed_wave,
      "directory of a previous petviashvili run to load instead of "
      "generating");
  solitary->add_flag("--no-relax", no_relax, "disable relaxation");

  auto* collide = app.add_subcommand("collide", "two-wave interaction");
  std::string cs1_s = "1.6", cs2_s = "1.4";
  double center1 = -25.0, center2 = 0.0;
  collide->add_option("--cs1", cs1_s, "speed of the trailing (faster) wave");
  collide->add_option("--cs2", cs2_s, "speed of the leading wave");
  collide->add_option("--r", degree, "element degree (1..4)");
  collide->add_option("--dx", dx_s, "cell width");
  collide->add_option("--dt", dt_s, "time step");
  collide->add_option("--T", T, "final time");
  collide->add_option("--domain", domain_s, "a:b");
  collide->add_option("--x1", center1, "initial peak of the faster wave");
  collide->add_option("--x2", center2, "initial peak of the slower wave");
  collide->add_flag("--no-relax", no_relax, "disable relaxation");

  auto* reflect = app.add_subcommand("reflect", "wall reflection");
  reflect->add_option("--cs", cs_s, "phase speed (accepts sqrtX)");
  reflect->add_option("--r", degree, "element degree (1..4)");
  reflect->add_option("--dx", dx_s, "cell width");
  reflect->add_option("--dt", dt_s, "time step");
  reflect->add_option("--T", T, "final time");
  reflect->add_option("--domain", domain_s, "a:b");
  reflect->add_option("--x0", x0, "initial peak location");
  reflect->add_flag("--no-relax", no_relax, "disable relaxation");

  auto* petv = app.add_subcommand("petviashvili", "generate a solitary wave");
  petv->add_option("--cs", cs_s, "phase speed (accepts sqrtX)");
  petv->add_option("--bc", bc_s, "periodic or reflective");
  petv->add_option("--r", degree, "element degree (1..4)");
  petv->add_option("--dx", dx_s, "cell width");
  petv->add_option("--domain", domain_s, "a:b");

  auto* check = app.add_subcommand("check", "run the acceptance gates");
  check->add_flag("--long-time", long_time,
                  "run only the slow T=1000 propagation gate");

  // let top-level options (--out, --config) appear after the subcommand name
  for (auto* sub : {converge, solitary, collide, reflect, petv, check})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw bbm::IoError("cannot create output directory: " + out_dir);

    const bbm::BcKind bc = bc_s == "periodic" ? bbm::BcKind::Periodic
                           : bc_s == "reflective"
                               ? bbm::BcKind::Reflective
                               : throw bbm::ConfigError("unknown bc: " + bc_s);
    const bbm::SchemeKind scheme =
        scheme_s == "conservative" ? bbm::SchemeKind::Conservative
        : scheme_s == "standard"
            ? bbm::SchemeKind::Standard
            : throw bbm::ConfigError("unknown scheme: " + scheme_s);
    if (degree < 1 || degree > 4)
      throw bbm::ConfigError("element degree must be in 1..4");

    Timer timer;

    if (*converge) {
      const DtSpec dt = parse_dt(dt_s);
      if (!dt.is_ratio)
        throw bbm::ConfigError("converge needs --dt in ratio:X form");
      bbm::ConvergenceConfig cfg;
      cfg.kind = travelling ? bbm::ConvergenceCase::ExactTravellingWave
                 : bc == bbm::BcKind::Periodic
                     ? bbm::ConvergenceCase::ManufacturedPeriodic
                     : bbm::ConvergenceCase::ManufacturedReflective;
      cfg.scheme = scheme;
      cfg.degree = degree;
      cfg.dx_list = parse_dx_list(dx_s);
      cfg.dt_ratio = dt.value;
      cfg.T = T;
      cfg.relax = travelling && !no_relax;
      cfg.jobs = jobs;
      if (!domain_s.empty()) std::tie(cfg.a, cfg.b) = parse_domain(domain_s);
      const auto rows = bbm::run_convergence_study(cfg);
      write_convergence_outputs(dir, rows);
      write_manifest(dir,
                     {{"command", "converge"},
                      {"bc", bc_s},
                      {"scheme", scheme_s},
                      {"r", degree},
                      {"dx", cfg.dx_list},
                      {"dt_ratio", cfg.dt_ratio},
                      {"T", cfg.T},
                      {"travelling", travelling},
                      {"relax", cfg.relax},
                      {"domain", {cfg.a, cfg.b}},
                      {"jobs", jobs}},
                     timer.seconds());
      std::cout << "wrote " << (dir / "convergence.csv").string() << " ("
                << rows.size() << " rows)\n";
    } else if (*solitary) {
      const DtSpec dt = parse_dt(dt_s);
      bbm::SolitaryConfig cfg;
      cfg.c_s = parse_speed(cs_s);
      cfg.bc = bc;
      cfg.scheme = scheme;
      cfg.degree = degree;
      cfg.dx = parse_dx_list(dx_s).front();
      cfg.dt = dt.is_ratio ? dt.value * cfg.dx : dt.value;
      cfg.T = T;
      cfg.relax = !no_relax && scheme == bbm::SchemeKind::Conservative;
      cfg.x0 = x0;
      if (!domain_s.empty()) std::tie(cfg.a, cfg.b) = parse_domain(domain_s);
      bbm::TravellingWave seed;
      if (!seed_wave.empty()) {
        seed = bbm::read_wave(seed_wave, "wave");
        if (std::abs(seed.c_s - cfg.c_s) > 1e-12)
          throw bbm::ConfigError("seed wave speed does not match --cs");
        cfg.seed = &seed;
      }
      const bbm::SolitaryResult res = bbm::run_solitary_propagation(cfg);
      write_invariant_series(dir, res.steps);
      write_drift(dir, res.drift, bbm::conserved_invariants(cfg.bc));
      bbm::CsvTable track;
      track.header = {"t", "x_star", "E_amp", "E_phase", "E_shape"};
      for (const bbm::WaveTrackRecord& r : res.track)
        track.rows.push_back({bbm::format_double(r.t),
                              bbm::format_double(r.x_star),
                              bbm::format_double(r.E_amp),
                              bbm::format_double(r.E_phase),
                              bbm::format_double(r.E_shape)});
      bbm::write_csv(dir / "track.csv", track);
      bbm::write_schema(dir / "track.schema.txt",
                        {{"t", "tracking time"},
                         {"x_star", "peak location (unwrapped)"},
                         {"E_amp", "normalized amplitude error"},
                         {"E_phase", "peak position error against c_s t"},
                         {"E_shape", "normalized shape error at best shift"}});
      write_manifest(dir,
                     {{"command", "solitary"},
                      {"c_s", cfg.c_s},
                      {"bc", bc_s},
                      {"scheme", scheme_s},
                      {"r", degree},
                      {"dx", cfg.dx},
                      {"dt", cfg.dt},
                      {"T", cfg.T},
                      {"relax", cfg.relax},
                      {"x0", cfg.x0},
                      {"domain", {cfg.a, cfg.b}}},
                     timer.seconds(),
                     gamma_stats(res.gamma_minus_one_min, res.gamma_minus_one_max));
      std::cout << "final time " << res.t_final << ", energy drift "
                << res.drift.energy << "\n";
    } else if (*collide) {
      const DtSpec dt = parse_dt(dt_s);
      bbm::CollisionConfig cfg;
      cfg.cs_fast = parse_speed(cs1_s);
      cfg.cs_slow = parse_speed(cs2_s);
      cfg.degree = degree;
      cfg.dx = parse_dx_list(dx_s).front();
      cfg.dt = dt.is_ratio ? dt.value * cfg.dx : dt.value;
      cfg.T = T;
      cfg.center_fast = center1;
      cfg.center_slow = center2;
      cfg.relax = !no_relax;
      if (!domain_s.empty()) std::tie(cfg.a, cfg.b) = parse_domain(domain_s);
      const bbm::PropagationResult res = bbm::run_collision(cfg);
      write_invariant_series(dir, res.steps);
      write_drift(dir, res.drift, bbm::conserved_invariants(cfg.bc));
      write_snapshots(dir, res.snapshots);
      write_manifest(dir,
                     {{"command", "collide"},
                      {"cs_fast", cfg.cs_fast},
                      {"cs_slow", cfg.cs_slow},
                      {"r", degree},
                      {"dx", cfg.dx},
                      {"dt", cfg.dt},
                      {"T", cfg.T},
                      {"centers", {cfg.center_fast, cfg.center_slow}},
                      {"relax", cfg.relax},
                      {"domain", {cfg.a, cfg.b}}},
                     timer.seconds(),
                     gamma_stats(res.gamma_minus_one_min, res.gamma_minus_one_max));
      std::cout << "final time " << res.t_final << ", mass drift "
                << res.drift.mass << "\n";
    } else if (*reflect) {
      const DtSpec dt = parse_dt(dt_s);
      bbm::ReflectionConfig cfg;
      cfg.c_s = parse_speed(cs_s);
      cfg.degree = degree;
      cfg.dx = parse_dx_list(dx_s).front();
      cfg.dt = dt.is_ratio ? dt.value * cfg.dx : dt.value;
      cfg.T = T;
      cfg.center = x0;
      cfg.relax = !no_relax;
      if (!domain_s.empty()) std::tie(cfg.a, cfg.b) = parse_domain(domain_s);
      const bbm::PropagationResult res = bbm::run_reflection(cfg);
      write_invariant_series(dir, res.steps);
      write_drift(dir, res.drift,
                  bbm::conserved_invariants(bbm::BcKind::Reflective));
      write_snapshots(dir, res.snapshots);
      write_manifest(dir,
                     {{"command", "reflect"},
                      {"c_s", cfg.c_s},
                      {"r", degree},
                      {"dx", cfg.dx},
                      {"dt", cfg.dt},
                      {"T", cfg.T},
                      {"x0", cfg.center},
                      {"relax", cfg.relax},
                      {"domain", {cfg.a, cfg.b}}},
                     timer.seconds(),
                     gamma_stats(res.gamma_minus_one_min, res.gamma_minus_one_max));
      std::cout << "final time " << res.t_final << ", energy drift "
                << res.drift.energy << "\n";
    } else if (*petv) {
      double a = -40.0, b = 40.0;
      if (!domain_s.empty()) std::tie(a, b) = parse_domain(domain_s);
      const double dx = parse_dx_list(dx_s).front();
      const int n = static_cast<int>(std::llround((b - a) / dx));
      const double c_s = parse_speed(cs_s);
      bbm::PetviashviliConfig pcfg;
      pcfg.center = 0.5 * (a + b);
      const bbm::TravellingWave wave =
          bbm::petviashvili_solve(a, b, n, degree, bc, c_s, pcfg);
      bbm::write_wave(dir, "wave", wave, bc);
      bbm::CsvTable res;
      res.header = {"iteration", "residual"};
      for (size_t k = 0; k < wave.residual_history.size(); ++k)
        res.rows.push_back({std::to_string(k),
                            bbm::format_double(wave.residual_history[k])});
      bbm::write_csv(dir / "residuals.csv", res);
      write_manifest(dir,
                     {{"command", "petviashvili"},
                      {"c_s", c_s},
                      {"bc", bc_s},
                      {"r", degree},
                      {"dx", dx},
                      {"domain", {a, b}}},
                     timer.seconds(),
                     {{"iterations", wave.iterations},
                      {"amplitude", wave.amplitude},
                      {"final_residual", wave.residual_history.back()}});
      std::cout << "converged in " << wave.iterations
                << " iterations, amplitude " << wave.amplitude << "\n";
    } else if (*check) {
      bool all_pass = true;
      if (long_time) {
        const bbm::CriterionResult r = bbm::run_long_time_criterion();
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": "
                  << r.detail << "\n";
        all_pass = r.pass;
      } else {
        for (const bbm::CriterionResult& r : bbm::run_acceptance()) {
          std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id
                    << " (" << r.name << "): " << r.detail << "\n";
          all_pass = all_pass && r.pass;
        }
      }
      return all_pass ? 0 : 2;
    }
  } catch (const bbm::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const bbm::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad numeric argument: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
