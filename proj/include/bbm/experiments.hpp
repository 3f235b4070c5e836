#pragma once

#include <optional>
#include <vector>

#include "bbm/diagnostics.hpp"
#include "bbm/timeint.hpp"
#include "bbm/waves.hpp"

namespace bbm {

// ---------------------------------------------------------------------------
// Convergence studies against closed-form solutions
// ---------------------------------------------------------------------------

enum class ConvergenceCase {
  ManufacturedReflective,  // forced system on [0,1], relaxation off
  ManufacturedPeriodic,    // forced system on [0,1], relaxation off
  ExactTravellingWave      // homogeneous periodic run, relaxation available
};

struct ConvergenceConfig {
  ConvergenceCase kind = ConvergenceCase::ManufacturedReflective;
  SchemeKind scheme = SchemeKind::Conservative;
  int degree = 1;
  std::vector<double> dx_list = {0.1, 0.05, 0.02, 0.01, 0.005};
  double dt_ratio = 0.1;  // dt = ratio * dx
  double T = 1.0;
  bool relax = false;  // travelling-wave case only
  double a = -20.0, b = 20.0;  // travelling-wave case only
  int jobs = 1;
};

struct ConvergenceRow {
  double dx = 0.0;
  double E0_H = 0.0, E1_H = 0.0, E0_U = 0.0, E1_U = 0.0;
  std::optional<double> tE1_H, tE1_U;  // absent for the standard scheme
  std::optional<double> R0_H, R1_H, R0_U, R1_U, tR1_H, tR1_U;
  double t_final = 0.0;
};

std::vector<ConvergenceRow> run_convergence_study(const ConvergenceConfig& cfg);

// ---------------------------------------------------------------------------
// Solitary-wave propagation
// ---------------------------------------------------------------------------

struct SolitaryConfig {
  double c_s = 1.2649110640673518;  // sqrt(1.6)
  double a = -20.0, b = 20.0;
  BcKind bc = BcKind::Periodic;
  SchemeKind scheme = SchemeKind::Conservative;
  int degree = 1;
  int gen_degree = 3;  // wave generation space, transferred by interpolation
  double dx = 0.1, dt = 0.1, T = 100.0;
  bool relax = true;
  double x0 = 0.0;  // initial peak location
  double track_every_t = 1.0;
  PetviashviliConfig petviashvili;
  const TravellingWave* seed = nullptr;  // reuse instead of generating
};

struct SolitaryResult {
  TravellingWave wave;
  std::vector<WaveTrackRecord> track;
  std::vector<StepRecord> steps;  // strided invariant/gamma records
  DriftReport drift;              // over every step
  double gamma_minus_one_min = 0.0, gamma_minus_one_max = 0.0;
  double H0 = 0.0;  // initial discrete peak height
  double t_final = 0.0;
  long n_steps = 0;
};

SolitaryResult run_solitary_propagation(const SolitaryConfig& cfg);

// ---------------------------------------------------------------------------
// Two-wave interaction and wall reflection
// ---------------------------------------------------------------------------

struct Snapshot {
  double t = 0.0;
  std::vector<double> x, H, U;  // nodal samples
};

struct CollisionConfig {
  double cs_fast = 1.6, cs_slow = 1.4;
  double a = -50.0, b = 150.0;
  BcKind bc = BcKind::Periodic;
  int degree = 1;
  int gen_degree = 3;
  double gen_a = -40.0, gen_b = 40.0;
  double dx = 0.1, dt = 0.1, T = 600.0;
  double center_fast = -25.0, center_slow = 0.0;  // faster wave behind
  bool relax = true;
  std::vector<double> snapshot_times = {0.0, 140.01, 240.01, 465.02};
  int invariant_stride = 10;
  PetviashviliConfig petviashvili;
};

struct PropagationResult {
  std::vector<Snapshot> snapshots;
  std::vector<StepRecord> steps;
  DriftReport drift;
  double gamma_minus_one_min = 0.0, gamma_minus_one_max = 0.0;
  double t_final = 0.0;
  long n_steps = 0;
};

PropagationResult run_collision(const CollisionConfig& cfg);

struct ReflectionConfig {
  double c_s = 1.6;
  double a = -40.0, b = 40.0;
  int degree = 1;
  int gen_degree = 3;
  double dx = 0.1, dt = 0.1, T = 50.0;
  double center = 0.0;  // wave aimed at the right wall
  bool relax = true;
  std::vector<double> snapshot_times = {0.0, 20.0, 40.0, 50.0};
  int invariant_stride = 10;
  PetviashviliConfig petviashvili;
};

PropagationResult run_reflection(const ReflectionConfig& cfg);

}  // namespace bbm
