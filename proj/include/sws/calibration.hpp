#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sws/gate.hpp"
#include "sws/lindblad.hpp"

namespace sws {

struct SweepResult {
  std::string observable;
  std::string axis_name;
  std::vector<double> axis;
  std::vector<double> values;
  std::map<std::string, double> fixed;

  std::size_t argmin() const;
  std::size_t argmax() const;
  void write_csv(std::ostream& out) const;
  void validate() const;  // finite values, strictly monotonic axis
};

struct Sweep2D {
  std::string observable;
  std::vector<double> rows;  // detunings, rad/us
  std::vector<double> cols;  // durations, us
  RealMatrix values;         // rows x cols

  void write_csv(std::ostream& out) const;
};

struct ChevronNoise {
  double kappa = 0.0;      // photon loss of both modes, 1/us
  double kappa_phi = 0.0;  // decay rate of the swap oscillation, 1/us
};

// a2 population after the detuned swap (g/2)(a2^dag c + h.c.) + delta n_c from |a2 = 1>.
Sweep2D chevron_scan(const SystemParams& p, const std::vector<double>& detunings,
                     const std::vector<double>& durations, const ChevronNoise& noise = {});
// 1/2 e^{-kappa t}(1 + e^{-kappa_phi t} cos(g t))
double resonant_cavity_population(double g, double kappa, double kappa_phi, double t);

// a2 population after n identical swaps from |01g01>; n must be odd.
SweepResult swap_duration_scan(const SystemParams& p, int n_repeats, const std::vector<double>& durations,
                               const NoiseModel& noise = {});

// Erasure fraction of the full gate versus the second-swap phase.
SweepResult swapback_phase_scan(const SystemParams& p, const std::vector<double>& phases);
SweepResult swapback_phase_scan(const SystemParams& p, const GateParams& timing, const std::vector<double>& phases,
                                const std::string& initial = "01g10", const NoiseModel& noise = {});

// Second-swap phase returning |01g10> to the codespace for the given timing.
double optimal_swapback_phase(const SystemParams& p, double t_swap, double t_wait,
                              const ScheduleOptions& opts = {});

struct EntanglingScan {
  SweepResult phi_e;  // per gate, wrapped to (0, 2pi]
  std::vector<double> phi_swap;
  double slope = 0.0;     // d phi_e / d t_wait
  double crossing = 0.0;  // t_wait with phi_e = pi
};

// Ramsey-like sequence: N gates, X (x) X, N gates; fringe phase = N phi_e.
double entangling_fringe_phase(const Matrix& u4, int n_repeats);
EntanglingScan entangling_phase_scan(const SystemParams& p, double t_swap, const std::vector<double>& wait_times,
                                     int n_repeats, const ScheduleOptions& opts = {});
EntanglingScan entangling_phase_scan(const SystemParams& p, const std::vector<double>& wait_times, int n_repeats);

struct LocalZScan {
  std::vector<int> n_gates;
  std::vector<double> phase_a;  // accumulated, unwrapped
  std::vector<double> phase_b;
  double phi_a = 0.0;  // slope per gate
  double phi_b = 0.0;
};

LocalZScan local_z_scan(const SystemParams& p, const GateParams& timing, int n_repeats,
                        const ScheduleOptions& opts = {});
LocalZScan local_z_scan(const SystemParams& p, int n_repeats, const ScheduleOptions& opts = {});

struct CalibrationGrids {
  int points = 201;
  double relative_span = 0.05;
  int swap_repeats = 5;
  int entangling_repeats = 1;
  int local_z_repeats = 8;
};

struct CalibrationResult {
  GateParams start;
  GateParams calibrated;
  GateParams analytic;
  LocalFrame frame;
  double chevron_t_swap = 0.0;
  double t_swap_step = 0.0;
  double t_wait_step = 0.0;
  double phase_step = 0.0;
  std::vector<SweepResult> sweeps;

  bool within_resolution() const;
};

// chevron, swap duration, entangling phase (wait time), swap-back phase, local Z
CalibrationResult run_calibration(const SystemParams& p, const GateParams& start, const CalibrationGrids& grids = {});

std::vector<double> linspace(double a, double b, int n);

}  // namespace sws
