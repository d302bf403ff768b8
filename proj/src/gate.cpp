#include "sws/gate.hpp"

#include <cmath>

namespace sws {

double mhz_to_angular(double nu_mhz) { return 2.0 * kPi * nu_mhz; }
double khz_to_angular(double nu_khz) { return 2.0 * kPi * nu_khz * 1e-3; }

SystemParams SystemParams::measured() {
  SystemParams p;
  p.chi_bc = mhz_to_angular(-1.51);
  p.chi_ac = mhz_to_angular(-1.26);
  p.chi_ab = khz_to_angular(-6.64);
  p.g_ac = mhz_to_angular(4.23);
  p.coherence["a1"] = {231.0, 8000.0};
  p.coherence["a2"] = {411.0, 8000.0};
  p.coherence["c"] = {70.0, 1001.0};
  p.coherence["b1"] = {652.0, 9600.0};
  p.coherence["b2"] = {342.0, 9600.0};
  return p;
}

void SystemParams::validate() const {
  if (!(g_ac > 0.0)) throw std::invalid_argument("g_ac must be positive");
  if (!(std::abs(chi_bc) > 0.0)) throw std::invalid_argument("chi_bc must be nonzero");
  for (const auto& [label, c] : coherence) {
    if (!(c.t1 > 0.0) || !(c.tphi > 0.0))
      throw std::invalid_argument("coherence times of mode '" + label + "' must be positive");
  }
}

Coherence SystemParams::coherence_of(const std::string& label) const {
  auto it = coherence.find(label);
  return it == coherence.end() ? Coherence{} : it->second;
}

GateParams derive_gate_params(const SystemParams& p) {
  p.validate();
  const double g = p.g_ac, chi = p.chi_bc;
  GateParams out;
  out.t_swap = kPi / g;
  out.t_wait = kPi / std::abs(chi) - kPi / g;
  if (!(out.t_wait > 0.0)) throw ParameterRegimeError("t_wait <= 0: requires g_ac > |chi_bc|");
  const double omega = std::hypot(g, chi);
  const double cot = 1.0 / std::tan(kPi * omega / (2.0 * g));
  out.phi_swap = wrap_phase(chi * out.t_wait + 2.0 * std::atan(-(omega / chi) * cot));
  return out;
}

const char* to_string(SegmentTag tag) {
  switch (tag) {
    case SegmentTag::swap1: return "swap1";
    case SegmentTag::wait: return "wait";
    case SegmentTag::swap2: return "swap2";
  }
  return "?";
}

GateSchedule build_schedule(const SystemParams& p, const ModeRegister& reg, const ScheduleOptions& opts) {
  return build_schedule(p, reg, derive_gate_params(p), opts);
}

GateSchedule build_schedule(const SystemParams& p, const ModeRegister& reg, const GateParams& timing,
                            const ScheduleOptions& opts) {
  for (const char* l : {"a2", "c", "b1"})
    if (!reg.contains(l)) throw std::invalid_argument(std::string("register is missing mode '") + l + "'");
  if (!(timing.t_swap > 0.0) || !(timing.t_wait > 0.0)) throw ParameterRegimeError("segment durations must be positive");

  const Matrix a2 = build_mode_operator(reg, "a2", OperatorKind::annihilate);
  const Matrix c = build_mode_operator(reg, "c", OperatorKind::annihilate);
  const Matrix n_a2 = build_mode_operator(reg, "a2", OperatorKind::number);
  const Matrix n_c = build_mode_operator(reg, "c", OperatorKind::number);
  const Matrix n_b1 = build_mode_operator(reg, "b1", OperatorKind::number);

  Matrix h_static = p.chi_bc * n_b1 * n_c;
  if (opts.include_static_kerr) h_static += p.chi_ac * n_a2 * n_c + p.chi_ab * n_a2 * n_b1;

  const Complex e = std::exp(kI * timing.phi_swap);
  const Matrix hop = a2.adjoint() * c;
  const Matrix h1 = 0.5 * p.g_ac * (hop + hop.adjoint()) + h_static;
  const Matrix h3 = 0.5 * p.g_ac * (e * hop + std::conj(e) * hop.adjoint()) + h_static;

  return GateSchedule{reg, timing,
                      {Segment{h1, timing.t_swap, SegmentTag::swap1},
                       Segment{h_static, timing.t_wait, SegmentTag::wait},
                       Segment{h3, timing.t_swap, SegmentTag::swap2}}};
}

Matrix ideal_unitary(const GateSchedule& s) {
  Matrix u = Matrix::Identity(s.reg.dimension(), s.reg.dimension());
  for (const auto& seg : s.segments) u = expm_hermitian(seg.hamiltonian, seg.duration) * u;
  return u;
}

Matrix codespace_block(const Matrix& u, const ModeRegister& reg) {
  const Matrix v = codespace_isometry(reg);
  return v.adjoint() * u * v;
}

LocalFrame extract_local_frame(const Matrix& u4) {
  if (u4.rows() != 4 || u4.cols() != 4) throw DimensionError("extract_local_frame expects a 4x4 matrix");
  Matrix off = u4;
  off.diagonal().setZero();
  if (off.norm() > 1e-8) throw std::domain_error("extract_local_frame: input is not diagonal");
  const double a0 = std::arg(u4(0, 0)), a1 = std::arg(u4(1, 1));
  const double a2 = std::arg(u4(2, 2)), a3 = std::arg(u4(3, 3));
  return {wrap_phase(a2 - a0), wrap_phase(a1 - a0), wrap_phase(a3 - a1 - a2 + a0)};
}

Matrix frame_unitary(const LocalFrame& f) {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = std::exp(kI * f.phi_b);
  u(2, 2) = std::exp(kI * f.phi_a);
  u(3, 3) = std::exp(kI * (f.phi_a + f.phi_b + f.phi_e));
  return u;
}

Matrix cz_matrix() {
  Matrix u = Matrix::Identity(4, 4);
  u(3, 3) = -1.0;
  return u;
}

double on_off_ratio(const SystemParams& p) {
  if (p.chi_ab == 0.0) return kInfinity;
  return std::abs(p.chi_bc) / std::abs(p.chi_ab);
}

}  // namespace sws
