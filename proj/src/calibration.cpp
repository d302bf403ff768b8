#include "sws/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "sws/fock.hpp"

namespace sws {

namespace {

struct Piece {
  Matrix h;
  double t = 0.0;
};

// Evolves rho0 through the pieces; open-system pieces are propagated on the
// basis states reachable from the support of rho0.
Matrix evolve(const ModeRegister& reg, const std::vector<Piece>& pieces, const NoiseModel& noise,
              const Matrix& rho0) {
  if (noise.is_zero()) {
    Matrix u = Matrix::Identity(reg.dimension(), reg.dimension());
    for (const auto& pc : pieces) u = expm_hermitian(pc.h, pc.t) * u;
    return u * rho0 * u.adjoint();
  }
  const auto cops = collapse_operators(reg, noise);
  std::vector<Matrix> ops = cops;
  for (const auto& pc : pieces) ops.push_back(pc.h);
  std::vector<Eigen::Index> seeds;
  for (Eigen::Index i = 0; i < rho0.rows(); ++i)
    if (std::abs(rho0(i, i)) > 0.0) seeds.push_back(i);
  const auto states = reachable_states(ops, seeds);
  const auto n = Eigen::Index(states.size());
  auto restrict = [&](const Matrix& m) {
    Matrix r(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) r(i, j) = m(states[i], states[j]);
    return r;
  };
  std::vector<Matrix> csub;
  for (const auto& c : cops) csub.push_back(restrict(c));
  Vector v = vec(restrict(rho0));
  for (const auto& pc : pieces) v = expm(liouvillian(restrict(pc.h), csub) * pc.t) * v;
  const Matrix rs = unvec(v, n, n);
  Matrix out = Matrix::Zero(reg.dimension(), reg.dimension());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(states[i], states[j]) = rs(i, j);
  return out;
}

Matrix projector_of(const ModeRegister& reg, const std::string& label) {
  const Vector k = reg.ket(label);
  return k * k.adjoint();
}

std::vector<Piece> gate_pieces(const GateSchedule& s) {
  std::vector<Piece> out;
  for (const auto& seg : s.segments) out.push_back({seg.hamiltonian, seg.duration});
  return out;
}

Matrix gate_block(const SystemParams& p, const GateParams& timing, const ScheduleOptions& opts) {
  const auto reg = ModeRegister::canonical();
  return codespace_block(ideal_unitary(build_schedule(p, reg, timing, opts)), reg);
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(x.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("slope fit needs distinct abscissae");
  return sxy / sxx;
}

void check_axis(const std::vector<double>& axis, const char* what) {
  if (axis.empty()) throw std::invalid_argument(std::string(what) + " must not be empty");
  for (std::size_t i = 0; i + 1 < axis.size(); ++i)
    if (!(axis[i + 1] > axis[i])) throw std::invalid_argument(std::string(what) + " must be strictly increasing");
}

}  // namespace

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace needs at least two points");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * double(i) / double(n - 1);
  return out;
}

std::size_t SweepResult::argmin() const {
  if (values.empty()) throw std::logic_error("empty sweep");
  return std::size_t(std::min_element(values.begin(), values.end()) - values.begin());
}

std::size_t SweepResult::argmax() const {
  if (values.empty()) throw std::logic_error("empty sweep");
  return std::size_t(std::max_element(values.begin(), values.end()) - values.begin());
}

void SweepResult::validate() const {
  if (axis.size() != values.size()) throw std::logic_error("sweep axis and values differ in length");
  for (double v : values)
    if (!std::isfinite(v)) throw std::logic_error("sweep contains a non-finite value");
  for (std::size_t i = 0; i + 1 < axis.size(); ++i)
    if (!(axis[i + 1] > axis[i])) throw std::logic_error("sweep axis is not strictly increasing");
}

void SweepResult::write_csv(std::ostream& out) const {
  out.precision(12);
  out << axis_name << ',' << observable << '\n';
  for (std::size_t i = 0; i < axis.size(); ++i) out << axis[i] << ',' << values[i] << '\n';
}

void Sweep2D::write_csv(std::ostream& out) const {
  out.precision(12);
  out << "detuning,duration," << observable << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out << rows[i] << ',' << cols[j] << ',' << values(Eigen::Index(i), Eigen::Index(j)) << '\n';
}

double resonant_cavity_population(double g, double kappa, double kappa_phi, double t) {
  return 0.5 * std::exp(-kappa * t) * (1.0 + std::exp(-kappa_phi * t) * std::cos(g * t));
}

Sweep2D chevron_scan(const SystemParams& p, const std::vector<double>& detunings,
                     const std::vector<double>& durations, const ChevronNoise& noise) {
  if (noise.kappa < 0.0 || noise.kappa_phi < 0.0) throw std::invalid_argument("noise rates must be non-negative");
  check_axis(detunings, "detunings");
  check_axis(durations, "durations");
  const ModeRegister reg({{"a2", 2}, {"c", 2}});
  const Matrix a = build_mode_operator(reg, "a2", OperatorKind::annihilate);
  const Matrix c = build_mode_operator(reg, "c", OperatorKind::annihilate);
  const Matrix nc = build_mode_operator(reg, "c", OperatorKind::number);
  const Matrix na = build_mode_operator(reg, "a2", OperatorKind::number);
  NoiseModel nm;
  // Coupler dephasing at 2 kappa_phi damps the swap oscillation at kappa_phi.
  nm.set("a2", {noise.kappa, 0.0, 0.0});
  nm.set("c", {noise.kappa, 2.0 * noise.kappa_phi, 0.0});
  Matrix rho0 = Matrix::Zero(4, 4);
  const Vector k0 = reg.ket({1, 0});
  rho0 = k0 * k0.adjoint();

  Sweep2D out;
  out.observable = "cavity_population";
  out.rows = detunings;
  out.cols = durations;
  out.values.resize(Eigen::Index(detunings.size()), Eigen::Index(durations.size()));
  for (std::size_t i = 0; i < detunings.size(); ++i) {
    const Matrix h = 0.5 * p.g_ac * (a.adjoint() * c + c.adjoint() * a) + detunings[i] * nc;
    for (std::size_t j = 0; j < durations.size(); ++j) {
      const Matrix rho = evolve(reg, {{h, durations[j]}}, nm, rho0);
      out.values(Eigen::Index(i), Eigen::Index(j)) = (na * rho).trace().real();
    }
  }
  return out;
}

SweepResult swap_duration_scan(const SystemParams& p, int n_repeats, const std::vector<double>& durations,
                               const NoiseModel& noise) {
  if (n_repeats < 1 || n_repeats % 2 == 0) throw std::invalid_argument("swap repeats must be a positive odd number");
  check_axis(durations, "durations");
  const auto reg = ModeRegister::canonical();
  GateParams timing = derive_gate_params(p);
  const Matrix rho0 = projector_of(reg, "01g01");
  const Matrix na2 = build_mode_operator(reg, "a2", OperatorKind::number);
  SweepResult out;
  out.observable = "a2_population";
  out.axis_name = "swap_duration_us";
  out.axis = durations;
  out.fixed["n_repeats"] = n_repeats;
  for (double t : durations) {
    if (!(t > 0.0)) throw std::invalid_argument("swap durations must be positive");
    timing.t_swap = t;
    const auto s = build_schedule(p, reg, timing);
    std::vector<Piece> pieces(std::size_t(n_repeats), Piece{s.segments[0].hamiltonian, t});
    const Matrix rho = evolve(reg, pieces, noise, rho0);
    out.values.push_back((na2 * rho).trace().real());
  }
  return out;
}

SweepResult swapback_phase_scan(const SystemParams& p, const std::vector<double>& phases) {
  return swapback_phase_scan(p, derive_gate_params(p), phases);
}

SweepResult swapback_phase_scan(const SystemParams& p, const GateParams& timing, const std::vector<double>& phases,
                                const std::string& initial, const NoiseModel& noise) {
  check_axis(phases, "phases");
  const auto reg = ModeRegister::canonical();
  const Matrix rho0 = projector_of(reg, initial);
  const Matrix code = codespace_projector(reg);
  SweepResult out;
  out.observable = "erasure_fraction";
  out.axis_name = "swapback_phase_rad";
  out.axis = phases;
  out.fixed["t_swap_us"] = timing.t_swap;
  out.fixed["t_wait_us"] = timing.t_wait;
  for (double phi : phases) {
    GateParams t = timing;
    t.phi_swap = phi;
    const Matrix rho = evolve(reg, gate_pieces(build_schedule(p, reg, t)), noise, rho0);
    out.values.push_back(1.0 - (code * rho).trace().real());
  }
  return out;
}

double optimal_swapback_phase(const SystemParams& p, double t_swap, double t_wait, const ScheduleOptions& opts) {
  // The return amplitude is X + Y e^{i phi}; the erasure is minimal for phi = arg X - arg Y.
  const auto reg = ModeRegister::canonical();
  const Vector k = reg.ket("01g10");
  auto amp = [&](double phi) {
    const Matrix u = ideal_unitary(build_schedule(p, reg, GateParams{t_swap, t_wait, phi}, opts));
    return Complex(k.dot(u * k));
  };
  const Complex f0 = amp(0.0), fpi = amp(kPi);
  const Complex x = 0.5 * (f0 + fpi), y = 0.5 * (f0 - fpi);
  return wrap_phase(std::arg(x) - std::arg(y));
}

double entangling_fringe_phase(const Matrix& u4, int n_repeats) {
  if (u4.rows() != 4 || u4.cols() != 4) throw DimensionError("fringe phase needs a 4x4 codespace block");
  if (n_repeats < 1) throw std::invalid_argument("repeats must be positive");
  Vector psi = Vector::Zero(4);
  psi(1) = psi(3) = 1.0 / std::sqrt(2.0);
  Matrix un = Matrix::Identity(4, 4);
  for (int k = 0; k < n_repeats; ++k) un = u4 * un;
  const Matrix xx = kron(pauli('X'), pauli('X'));
  psi = un * (xx * (un * psi));
  return std::arg(psi(0) / psi(2));
}

EntanglingScan entangling_phase_scan(const SystemParams& p, double t_swap, const std::vector<double>& wait_times,
                                     int n_repeats, const ScheduleOptions& opts) {
  check_axis(wait_times, "wait times");
  if (n_repeats < 1) throw std::invalid_argument("repeats must be positive");
  EntanglingScan out;
  out.phi_e.observable = "phi_e_per_gate_rad";
  out.phi_e.axis_name = "t_wait_us";
  out.phi_e.axis = wait_times;
  out.phi_e.fixed["n_repeats"] = n_repeats;
  out.phi_e.fixed["t_swap_us"] = t_swap;
  for (double tw : wait_times) {
    const double phi = optimal_swapback_phase(p, t_swap, tw, opts);
    out.phi_swap.push_back(phi);
    const Matrix u4 = gate_block(p, GateParams{t_swap, tw, phi}, opts);
    const double anchor = entangling_fringe_phase(u4, 1);
    double per_gate = anchor + wrap_phase(entangling_fringe_phase(u4, n_repeats) - n_repeats * anchor) / n_repeats;
    per_gate = std::fmod(per_gate, 2.0 * kPi);
    if (per_gate <= 0.0) per_gate += 2.0 * kPi;
    out.phi_e.values.push_back(per_gate);
  }
  if (wait_times.size() >= 2) out.slope = fit_slope(wait_times, out.phi_e.values);
  out.crossing = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i + 1 < wait_times.size(); ++i) {
    const double d0 = out.phi_e.values[i] - kPi, d1 = out.phi_e.values[i + 1] - kPi;
    if (d0 == 0.0) {
      out.crossing = wait_times[i];
      break;
    }
    if ((d0 < 0.0) != (d1 < 0.0) && std::abs(d1 - d0) < kPi) {
      out.crossing = wait_times[i] + (wait_times[i + 1] - wait_times[i]) * d0 / (d0 - d1);
      break;
    }
  }
  if (std::isnan(out.crossing) && !wait_times.empty() && out.phi_e.values.back() == kPi)
    out.crossing = wait_times.back();
  return out;
}

EntanglingScan entangling_phase_scan(const SystemParams& p, const std::vector<double>& wait_times, int n_repeats) {
  return entangling_phase_scan(p, derive_gate_params(p).t_swap, wait_times, n_repeats);
}

LocalZScan local_z_scan(const SystemParams& p, const GateParams& timing, int n_repeats,
                        const ScheduleOptions& opts) {
  if (n_repeats < 2) throw std::invalid_argument("local Z scan needs at least two repeats");
  const Matrix u4 = gate_block(p, timing, opts);
  LocalZScan out;
  Vector pc = Vector::Zero(4), pt = Vector::Zero(4);
  pc(0) = pc(2) = 1.0 / std::sqrt(2.0);
  pt(0) = pt(1) = 1.0 / std::sqrt(2.0);
  double prev_a = 0.0, prev_b = 0.0;
  std::vector<double> x;
  for (int n = 1; n <= n_repeats; ++n) {
    pc = u4 * pc;
    pt = u4 * pt;
    const double ra = std::arg(pc(2) / pc(0)), rb = std::arg(pt(1) / pt(0));
    const double ua = prev_a + wrap_phase(ra - prev_a), ub = prev_b + wrap_phase(rb - prev_b);
    out.n_gates.push_back(n);
    out.phase_a.push_back(ua);
    out.phase_b.push_back(ub);
    x.push_back(n);
    prev_a = ua;
    prev_b = ub;
  }
  out.phi_a = fit_slope(x, out.phase_a);
  out.phi_b = fit_slope(x, out.phase_b);
  return out;
}

LocalZScan local_z_scan(const SystemParams& p, int n_repeats, const ScheduleOptions& opts) {
  return local_z_scan(p, derive_gate_params(p), n_repeats, opts);
}

bool CalibrationResult::within_resolution() const {
  return std::abs(calibrated.t_swap - analytic.t_swap) <= t_swap_step &&
         std::abs(calibrated.t_wait - analytic.t_wait) <= t_wait_step &&
         std::abs(wrap_phase(calibrated.phi_swap - analytic.phi_swap)) <= phase_step;
}

CalibrationResult run_calibration(const SystemParams& p, const GateParams& start, const CalibrationGrids& grids) {
  if (grids.points < 3 || !(grids.relative_span > 0.0)) throw std::invalid_argument("invalid calibration grid");
  CalibrationResult r;
  r.start = start;
  r.analytic = derive_gate_params(p);

  // Chevron: first transfer minimum on resonance gives a coarse swap time.
  {
    const auto durations = linspace(0.5 * start.t_swap, 1.5 * start.t_swap, grids.points);
    const auto ch = chevron_scan(p, {0.0}, durations);
    Eigen::Index j = 0;
    ch.values.row(0).minCoeff(&j);
    r.chevron_t_swap = durations[std::size_t(j)];
    SweepResult s{"cavity_population", "swap_duration_us", durations, {}, {{"detuning", 0.0}}};
    for (Eigen::Index k = 0; k < ch.values.cols(); ++k) s.values.push_back(ch.values(0, k));
    r.sweeps.push_back(std::move(s));
  }

  // Swap duration with odd repeats around the chevron estimate.
  {
    const double c = r.chevron_t_swap;
    const auto durations = linspace(c * (1.0 - grids.relative_span), c * (1.0 + grids.relative_span), grids.points);
    r.t_swap_step = durations[1] - durations[0];
    auto s = swap_duration_scan(p, grids.swap_repeats, durations);
    r.calibrated.t_swap = durations[s.argmin()];
    r.sweeps.push_back(std::move(s));
  }

  // Wait time at which the conditional phase crosses pi.
  {
    const double c = start.t_wait;
    const auto waits = linspace(c * (1.0 - grids.relative_span), c * (1.0 + grids.relative_span), grids.points);
    r.t_wait_step = waits[1] - waits[0];
    auto e = entangling_phase_scan(p, r.calibrated.t_swap, waits, grids.entangling_repeats);
    if (std::isnan(e.crossing)) throw std::runtime_error("entangling phase does not cross pi inside the scan");
    std::size_t best = 0;
    for (std::size_t i = 1; i < waits.size(); ++i)
      if (std::abs(waits[i] - e.crossing) < std::abs(waits[best] - e.crossing)) best = i;
    r.calibrated.t_wait = waits[best];
    r.sweeps.push_back(std::move(e.phi_e));
  }

  // Swap-back phase minimizing the erasure fraction.
  {
    const double c = start.phi_swap;
    const double half = kPi * grids.relative_span * 4.0;
    const auto phases = linspace(c - half, c + half, grids.points);
    r.phase_step = phases[1] - phases[0];
    GateParams t = r.calibrated;
    auto s = swapback_phase_scan(p, t, phases);
    r.calibrated.phi_swap = wrap_phase(phases[s.argmin()]);
    r.sweeps.push_back(std::move(s));
  }

  const auto z = local_z_scan(p, r.calibrated, grids.local_z_repeats);
  const auto frame = extract_local_frame(gate_block(p, r.calibrated, {}));
  r.frame = {wrap_phase(z.phi_a), wrap_phase(z.phi_b), frame.phi_e};
  return r;
}

}  // namespace sws
