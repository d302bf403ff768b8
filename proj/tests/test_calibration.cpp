#include "doctest.h"

#include "oracles.hpp"
#include "sws/calibration.hpp"

using namespace sws;

namespace {

// Detuned Rabi transfer out of a2 for (g/2)(a2^dag c + h.c.) + delta n_c.
double rabi_population(double g, double delta, double t) {
  const double w = std::hypot(g, delta);
  const double s = std::sin(w * t / 2.0);
  return 1.0 - (g * g) / (w * w) * s * s;
}

}  // namespace

TEST_SUITE("calibration") {

TEST_CASE("chevron matches the detuned Rabi formula") {
  const auto p = SystemParams::measured();
  const double g = p.g_ac;
  const auto det = linspace(-2.0 * g, 2.0 * g, 9);
  const auto dur = linspace(0.01, 3.0 * kPi / g, 13);
  const auto s = chevron_scan(p, det, dur);
  CHECK(s.values.rows() == 9);
  CHECK(s.values.cols() == 13);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 13; ++j) CHECK(std::abs(s.values(i, j) - rabi_population(g, det[i], dur[j])) < 1e-9);
  const auto full = chevron_scan(p, {0.0}, {kPi / g, 2.0 * kPi / g});
  CHECK(full.values(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(full.values(0, 0)) < 1e-12);
  CHECK(full.values(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("resonant chevron with loss and dephasing") {
  const auto p = SystemParams::measured();
  const ChevronNoise n{1.0 / 70.0, 0.05};
  const auto dur = linspace(0.01, 10.0 * kPi / p.g_ac, 31);
  const auto s = chevron_scan(p, {0.0}, dur, n);
  for (std::size_t j = 0; j < dur.size(); ++j)
    CHECK(std::abs(s.values(0, Eigen::Index(j)) - resonant_cavity_population(p.g_ac, n.kappa, n.kappa_phi, dur[j])) <
          1e-3);
  const auto clean = chevron_scan(p, {0.0}, dur);
  for (std::size_t j = 0; j < dur.size(); ++j)
    CHECK(std::abs(clean.values(0, Eigen::Index(j)) - resonant_cavity_population(p.g_ac, 0.0, 0.0, dur[j])) < 1e-6);
}

TEST_CASE("swap duration scan") {
  const auto p = SystemParams::measured();
  const double ts = kPi / p.g_ac;
  const auto grid = linspace(0.9 * ts, 1.1 * ts, 201);
  const auto one = swap_duration_scan(p, 1, grid);
  CHECK(std::abs(one.axis[one.argmin()] - ts) <= (grid[1] - grid[0]) / 2 + 1e-15);
  for (double eps : {-0.004, 0.001, 0.003}) {
    const auto five = swap_duration_scan(p, 5, {ts + eps});
    const double s = std::sin(5.0 * p.g_ac * eps / 2.0);
    CHECK(five.values[0] == doctest::Approx(s * s).epsilon(1e-9));
  }
  for (int n : {1, 3, 7}) CHECK(swap_duration_scan(p, n, {ts}).values[0] < 1e-9);
  CHECK_THROWS(swap_duration_scan(p, 2, grid));
  const auto wide1 = swap_duration_scan(p, 1, {ts * 1.01});
  const auto wide5 = swap_duration_scan(p, 5, {ts * 1.01});
  CHECK(wide5.values[0] > 20.0 * wide1.values[0]);
}

TEST_CASE("swap-back phase scan") {
  const auto p = SystemParams::measured();
  const auto t = derive_gate_params(p);
  const auto phases = linspace(-kPi, kPi, 361);
  const auto s = swapback_phase_scan(p, phases);
  s.validate();
  CHECK(std::abs(oracle::wrap(s.axis[s.argmin()] - t.phi_swap)) <= (phases[1] - phases[0]) / 2 + 1e-12);
  CHECK(std::abs(oracle::wrap(s.axis[s.argmax()] - (t.phi_swap + kPi))) <= (phases[1] - phases[0]) / 2 + 1e-12);
  CHECK(swapback_phase_scan(p, {t.phi_swap}).values[0] < 1e-12);
  const auto flat = swapback_phase_scan(p, t, phases, "01g01");
  for (double v : flat.values) CHECK(std::abs(v - flat.values[0]) < 1e-12);
  CHECK(std::abs(oracle::wrap(optimal_swapback_phase(p, t.t_swap, t.t_wait) - t.phi_swap)) < 1e-9);
}

TEST_CASE("entangling phase scan") {
  const auto p = SystemParams::measured();
  const auto t = derive_gate_params(p);
  const auto waits = linspace(0.9 * t.t_wait, 1.1 * t.t_wait, 21);
  const auto e = entangling_phase_scan(p, waits, 1);
  CHECK(e.phi_e.values[10] == doctest::Approx(kPi).epsilon(1e-6));
  CHECK(e.slope == doctest::Approx(p.chi_bc).epsilon(1e-6));
  CHECK(e.crossing == doctest::Approx(t.t_wait).epsilon(1e-6));
  const auto e3 = entangling_phase_scan(p, waits, 3);
  for (std::size_t k = 0; k < waits.size(); ++k)
    CHECK(std::abs(oracle::wrap(e3.phi_e.values[k] - e.phi_e.values[k])) < 1e-8);

  Matrix u = Matrix::Identity(4, 4);
  u(3, 3) = std::exp(kI * 0.3);
  CHECK(std::abs(oracle::wrap(entangling_fringe_phase(u, 3) - 3 * 0.3)) < 1e-12);
}

TEST_CASE("local Z scan") {
  const auto p = SystemParams::measured();
  const auto t = derive_gate_params(p);
  const auto z = local_z_scan(p, 8);
  CHECK(std::abs(z.phi_b) < 1e-9);
  CHECK(std::abs(oracle::wrap(z.phi_a - t.phi_swap)) < 1e-9);
  const auto z16 = local_z_scan(p, 16);
  CHECK(z16.phase_a.back() == doctest::Approx(2.0 * z.phase_a.back()).epsilon(1e-9));
  ScheduleOptions kerr;
  kerr.include_static_kerr = true;
  const auto zk = local_z_scan(p, 8, kerr);
  CHECK(std::abs(zk.phi_b - z.phi_b) < 1e-9);
  const double drift = std::abs(oracle::wrap(zk.phi_a - z.phi_a));
  CHECK(drift > 0.1 * std::abs(p.chi_ab) * t.t_swap);
  CHECK(drift < std::abs(p.chi_ab) * t.t_gate());
}

TEST_CASE("calibration fixed point from perturbed starts") {
  const auto p = SystemParams::measured();
  const auto a = derive_gate_params(p);
  for (double f : {1.01, 0.99}) {
    const GateParams start{f * a.t_swap, f * a.t_wait, f * a.phi_swap};
    const auto r = run_calibration(p, start);
    CAPTURE(f);
    CHECK(r.within_resolution());
    CHECK(std::abs(r.calibrated.t_swap - a.t_swap) <= r.t_swap_step);
    CHECK(std::abs(r.calibrated.t_wait - a.t_wait) <= r.t_wait_step);
    CHECK(std::abs(oracle::wrap(r.calibrated.phi_swap - a.phi_swap)) <= r.phase_step);
    CHECK(r.sweeps.size() >= 4);
  }
}

TEST_CASE("sweep validation") {
  SweepResult s;
  s.axis = {0.0, 1.0, 1.0};
  s.values = {0.0, 0.0, 0.0};
  CHECK_THROWS(s.validate());
  s.axis = {0.0, 1.0, 2.0};
  s.values = {0.0, std::nan(""), 0.0};
  CHECK_THROWS(s.validate());
  CHECK(linspace(0.0, 1.0, 5)[2] == doctest::Approx(0.5));
}

}
