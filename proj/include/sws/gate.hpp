#pragma once

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include "sws/fock.hpp"

namespace sws {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

double mhz_to_angular(double nu_mhz);  // rad/us
double khz_to_angular(double nu_khz);  // rad/us

struct Coherence {
  double t1 = kInfinity;    // us
  double tphi = kInfinity;  // us
};

// Rates in rad/us, times in us.
struct SystemParams {
  double chi_bc = 0.0;
  double chi_ac = 0.0;
  double chi_ab = 0.0;
  double g_ac = 0.0;
  std::map<std::string, Coherence> coherence;

  // Device values with a1 as the outer (231 us) control cavity.
  static SystemParams measured();
  void validate() const;
  Coherence coherence_of(const std::string& label) const;
};

struct GateParams {
  double t_swap = 0.0;
  double t_wait = 0.0;
  double phi_swap = 0.0;
  double t_gate() const { return 2.0 * t_swap + t_wait; }
};

class ParameterRegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

GateParams derive_gate_params(const SystemParams& p);

enum class SegmentTag { swap1, wait, swap2 };
const char* to_string(SegmentTag tag);

struct Segment {
  Matrix hamiltonian;
  double duration = 0.0;
  SegmentTag tag = SegmentTag::swap1;
};

struct ScheduleOptions {
  // Adds chi_ac n_a2 n_c and chi_ab n_a2 n_b1 to every segment.
  bool include_static_kerr = false;
};

struct GateSchedule {
  ModeRegister reg;
  GateParams params;
  std::array<Segment, 3> segments;
};

GateSchedule build_schedule(const SystemParams& p, const ModeRegister& reg,
                            const ScheduleOptions& opts = {});
// Same Hamiltonians with explicit timing and second-swap phase.
GateSchedule build_schedule(const SystemParams& p, const ModeRegister& reg, const GateParams& timing,
                            const ScheduleOptions& opts = {});

Matrix ideal_unitary(const GateSchedule& s);
// 4x4 block on the logical basis |c t>, index 2c + t.
Matrix codespace_block(const Matrix& u, const ModeRegister& reg);

struct LocalFrame {
  double phi_a = 0.0;
  double phi_b = 0.0;
  double phi_e = 0.0;
};

LocalFrame extract_local_frame(const Matrix& u4);
// diag(1, e^{i phi_b}, e^{i phi_a}, e^{i(phi_a + phi_b + phi_e)})
Matrix frame_unitary(const LocalFrame& f);
Matrix cz_matrix();

double on_off_ratio(const SystemParams& p);

}  // namespace sws
