#include "doctest.h"

#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sws/error_channels.hpp"
#include "sws/fock.hpp"

using namespace sws;

namespace {

// (1/pi) int_0^pi CZ(phi) rho CZ(-phi) dphi, entry by entry.
Matrix phase_average_oracle(const Matrix& rho) {
  using boost::math::quadrature::gauss_kronrod;
  Matrix out(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double w = double(i == 3) - double(j == 3);
      auto re = [&](double phi) { return (rho(i, j) * std::exp(kI * w * phi)).real(); };
      auto im = [&](double phi) { return (rho(i, j) * std::exp(kI * w * phi)).imag(); };
      out(i, j) = Complex(gauss_kronrod<double, 61>::integrate(re, 0.0, kPi, 0, 1e-14),
                          gauss_kronrod<double, 61>::integrate(im, 0.0, kPi, 0, 1e-14)) /
                  kPi;
    }
  return out;
}

Matrix basis_op(int i, int j, int d) {
  Matrix m = Matrix::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

Vector haar_state(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> n;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(n(rng), n(rng));
  return v.normalized();
}

}  // namespace

TEST_SUITE("error_channels") {

TEST_CASE("phase-averaged channel equals the quadrature oracle") {
  const auto ch = leakage_averaged_channel();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Matrix e = basis_op(i, j, 4);
      CHECK((ch.apply(e) - phase_average_oracle(e)).cwiseAbs().maxCoeff() < 1e-9);
    }
  const Matrix avg = phase_average_oracle(basis_op(3, 0, 4));
  CHECK(std::abs(avg(3, 0) - 2.0 * kI / kPi) < 1e-12);
  CHECK(leakage_average_coefficient() == doctest::Approx(0.3183098862).epsilon(1e-10));
  CHECK(std::abs(leakage_average_coefficient() - 4.0 / (3.0 * kPi)) > 0.1);
  CHECK(ch.is_cp());
  CHECK(ch.is_trace_preserving());
}

TEST_CASE("phase averaging preserves computational populations") {
  Vector pp = Vector::Constant(4, 0.5);
  const Matrix out = leakage_averaged_channel().apply(pp * pp.adjoint());
  for (int k = 0; k < 4; ++k) CHECK(std::abs(out(k, k) - 0.25) < 1e-14);
}

TEST_CASE("digitized channel") {
  const auto d = digitized_channel();
  CHECK(std::abs(d.chi()(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(d.chi()(1, 1) - 0.5) < 1e-15);
  const auto twice = d.then(d);
  CHECK((twice.to_superop() - d.to_superop()).norm() < 1e-12);
}

TEST_CASE("digitized and averaged channels agree on computational-basis outcomes") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const Vector a = haar_state(rng, 4);
    const Matrix rho = a * a.adjoint();
    const Matrix x = leakage_averaged_channel().apply(rho), y = digitized_channel().apply(rho);
    CHECK((x.diagonal() - y.diagonal()).norm() < 1e-12);
  }
}

TEST_CASE("qutrit gate channel limits") {
  const auto ideal = qutrit_gate_channel({});
  CHECK((ideal.to_superop() - unitary_superop(qutrit_cz())).norm() < 1e-12);
  CHECK(std::abs(qutrit_cz()(8, 8) - 1.0) < 1e-15);

  ChannelRates full;
  full.p_leak_control = 1.0;
  const auto leak = qutrit_gate_channel(full);
  for (int c = 0; c < 2; ++c)
    for (int t = 0; t < 3; ++t) {
      const Matrix out = leak.apply(basis_op(3 * c + t, 3 * c + t, 9));
      CHECK(std::abs(out(3 * kLeaked + t, 3 * kLeaked + t) - 1.0) < 1e-14);
    }
  ChannelRates bad;
  bad.p_z_control = 0.7;
  bad.p_z_target = 0.7;
  CHECK_THROWS(qutrit_gate_channel(bad));
}

TEST_CASE("gate channels are CPTP") {
  ChannelRates r{4e-3, 9.6e-4, 3.9e-4, 1.12e-4, 1e-4};
  for (const auto& ch : {qutrit_gate_channel(r), full_gate_channel(r)}) {
    CHECK(ch.is_trace_preserving());
    CHECK(ch.is_cp());
  }
}

TEST_CASE("no-jump Kraus and imbalance estimate") {
  const auto eq = no_jump_kraus(3e-3, 3e-3);
  CHECK(eq.epsilon == 0.0);
  CHECK((eq.kraus - std::sqrt(1 - 3e-3) * Matrix::Identity(4, 4)).norm() < 1e-15);
  const double tg = 0.449329;
  const double pa = tg / 231.0, pc = tg / 70.0;
  CHECK(pa == doctest::Approx(1.945e-3).epsilon(1e-3));
  CHECK(pc == doctest::Approx(6.419e-3).epsilon(1e-3));
  CHECK(no_jump_kraus(pa, pc).epsilon == doctest::Approx(5.0e-6).epsilon(0.01));
  CHECK_THROWS(no_jump_kraus(1.0, 0.0));
}

TEST_CASE("no-jump exact conditioning scales quadratically") {
  for (double dp : {1e-3, 3e-3, 1e-2}) {
    const double exact = no_jump_exact_infidelity(0.01 + dp, 0.01);
    const double a = std::sqrt(1 - 0.01 - dp), b = std::sqrt(1 - 0.01);
    Vector psi(2);
    psi << a, b;
    psi /= psi.norm();
    const double overlap = std::norm((psi(0) + psi(1)) / std::sqrt(2.0));
    CHECK(exact == doctest::Approx(1.0 - overlap).epsilon(1e-9));
    CHECK(exact / (dp * dp) == doctest::Approx(1.0 / (16.0 * 0.99 * 0.99)).epsilon(0.02));
  }
}

TEST_CASE("echo cancels no-jump polarization") {
  const auto zero = echo_cancellation_check(0.0, 1.0);
  CHECK(zero.residual == 0.0);
  const auto e = echo_cancellation_check(0.1, 1.0);
  CHECK(e.residual < 1e-12);
  CHECK(e.scalar_factor == doctest::Approx(std::exp(-0.05)).epsilon(1e-14));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 10; ++k) {
    const Vector v = haar_state(rng, 2);
    CHECK(echo_cancellation_check(0.3, 2.0, v * v.adjoint(), true).residual < 1e-12);
  }
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  const auto no = echo_cancellation_check(0.1, 1.0, plus, false);
  CHECK(no.residual > 1e-3);
  CHECK(no.rho_out(0, 0).real() > no.rho_out(1, 1).real());
}

TEST_CASE("postselected fidelity limits") {
  CHECK(postselected_fidelity(qutrit_gate_channel({}), cz_phase(kPi), SpamModel::perfect()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  const auto detail = postselected_fidelity_detail(qutrit_gate_channel({}), cz_phase(kPi), SpamModel::perfect());
  CHECK(detail.condition_number < 100.0);
  ChannelRates leak;
  leak.p_leak_control = 0.05;
  leak.p_leak_target = 0.02;
  CHECK(postselected_fidelity(qutrit_gate_channel(leak), cz_phase(kPi), SpamModel::perfect()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(postselected_fidelity(QuantumChannel::identity(4), cz_phase(kPi), SpamModel::perfect()));
}

TEST_CASE("postselected fidelity matches a Haar average-fidelity oracle") {
  ChannelRates r;
  r.p_z_control = 0.02;
  r.p_zz = 0.01;
  const auto ch = qutrit_gate_channel(r);
  const double fe = postselected_fidelity(ch, cz_phase(kPi), SpamModel::perfect());
  CHECK(fe == doctest::Approx(1.0 - 0.03).epsilon(1e-12));

  std::mt19937_64 rng(11);
  const Matrix iso = qutrit_pair_isometry();
  const Matrix cz = cz_phase(kPi);
  const int n = 10000;
  double sum = 0.0, sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const Vector psi = haar_state(rng, 4);
    const Matrix out = iso.adjoint() * ch.apply(iso * psi * psi.adjoint() * iso.adjoint()) * iso;
    const Vector target = cz * psi;
    const double f = target.dot(out * target).real();
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / n, sem = std::sqrt((sum2 / n - mean * mean) / n);
  const double predicted = (4.0 * fe + 1.0) / 5.0;
  CHECK(std::abs(mean - predicted) < 4.0 * sem);
}

TEST_CASE("operating-point channel infidelity") {
  ChannelRates r{4e-3, 9.6e-4, 3.9e-4, 1.12e-4, 1e-4};
  const double inf = 1.0 - postselected_fidelity(qutrit_gate_channel(r), cz_phase(kPi), SpamModel::perfect());
  CHECK(inf == doctest::Approx(3.9e-4 + 1.12e-4 + 1e-4).epsilon(1e-9));
  const double with_spam =
      1.0 - postselected_fidelity(qutrit_gate_channel(r), cz_phase(kPi), SpamModel::two_round());
  CHECK(with_spam > inf);
}

TEST_CASE("assignment map confusion") {
  const auto s = SpamModel::one_round();
  const RealMatrix c = s.control.confusion();
  for (int j = 0; j < 3; ++j) CHECK(c.col(j).sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c(2, 2) == doctest::Approx(1.0 - 3.46e-3));
  const auto m = assignment_map(SpamModel::perfect());
  CHECK(m.dim_in() == 9);
  CHECK(m.dim_out() == 4);
  const Matrix out = m.apply(basis_op(8, 8, 9));
  CHECK(out.norm() == 0.0);
}

}
