#include "doctest.h"

#include <random>
#include <sstream>

#include "sws/fock.hpp"
#include "sws/tomography.hpp"

using namespace sws;

namespace {

Matrix embed(const Matrix& rho4) {
  const Matrix v = qutrit_pair_isometry();
  return v * rho4 * v.adjoint();
}

Matrix werner(double p) { return (1.0 - p) * canonical_bell_state() + p * Matrix::Identity(4, 4) / 4.0; }

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("canonical Bell state correlators") {
  const Matrix b = canonical_bell_state();
  const auto c = pauli_correlators(b);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[5] == doctest::Approx(1.0));   // XX
  CHECK(c[11] == doctest::Approx(-1.0)); // YZ
  CHECK(c[14] == doctest::Approx(-1.0)); // ZY
  CHECK(std::abs((b * b).trace() - 1.0) < 1e-14);
}

TEST_CASE("exact-probability reconstruction") {
  const auto settings = overcomplete_settings();
  CHECK(settings.size() == 36);
  const auto rec = simulate_record(embed(canonical_bell_state()), settings, SpamModel::perfect(), 0, nullptr);
  const Matrix rho = reconstruct_state(rec, true);
  const auto m = bell_metrics(rho);
  CHECK(m.fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(m.purity == doctest::Approx(1.0).epsilon(1e-10));

  const auto mixed = simulate_record(embed(Matrix::Identity(4, 4) / 4.0), settings, SpamModel::perfect(), 0, nullptr);
  const Matrix r2 = reconstruct_state(mixed, true);
  const auto c = pauli_correlators(r2);
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(std::abs(c[k]) < 1e-12);
  const auto m2 = bell_metrics(r2);
  CHECK(m2.fidelity == doctest::Approx(0.25));
  CHECK(m2.purity == doctest::Approx(0.25));
}

TEST_CASE("postselection removes leaked population") {
  Matrix rho9 = 0.9 * embed(canonical_bell_state());
  rho9(8, 8) = 0.05;
  rho9(2, 2) = 0.05;
  const auto rec = simulate_record(rho9, overcomplete_settings(), SpamModel::perfect(), 0, nullptr);
  CHECK(bell_metrics(reconstruct_state(rec, true)).fidelity == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bell_metrics(reconstruct_state(rec, false)).fidelity < 0.95);
}

TEST_CASE("finite-shot estimate within three sigma") {
  const double truth = bell_metrics(werner(0.05)).fidelity;
  const auto settings = overcomplete_settings();
  std::mt19937_64 rng(5);
  std::vector<double> f;
  for (int k = 0; k < 40; ++k) {
    const auto rec = simulate_record(embed(werner(0.05)), settings, SpamModel::perfect(), 10000, &rng);
    f.push_back(bell_metrics(reconstruct_state(rec, true)).fidelity);
  }
  double mean = 0.0, var = 0.0;
  for (double x : f) mean += x / f.size();
  for (double x : f) var += (x - mean) * (x - mean) / (f.size() - 1);
  const double sigma = std::sqrt(var);
  CHECK(sigma > 0.0);
  CHECK(sigma < 5e-3);
  for (double x : f) CHECK(std::abs(x - truth) < 4.0 * sigma);
  CHECK(std::abs(mean - truth) < 3.0 * sigma / std::sqrt(double(f.size())) + 1e-4);
}

TEST_CASE("record CSV round trip") {
  std::mt19937_64 rng(1);
  const auto rec = simulate_record(embed(werner(0.2)), overcomplete_settings(), SpamModel::one_round(), 100, &rng);
  std::stringstream ss;
  rec.write_csv(ss);
  const auto back = MeasurementRecord::read_csv(ss);
  for (const auto& s : rec.settings())
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) CHECK(back.count(s, Outcome(a), Outcome(b)) == rec.count(s, Outcome(a), Outcome(b)));
  std::stringstream bad("setting_control,setting_target,outcome_control,outcome_target,count\nI,I,0\n");
  CHECK_THROWS(MeasurementRecord::read_csv(bad));
}

TEST_CASE("reconstruction is a physical state") {
  std::mt19937_64 rng(9);
  const auto rec = simulate_record(embed(canonical_bell_state()), overcomplete_settings(), SpamModel::perfect(), 200, &rng);
  const Matrix rho = reconstruct_state(rec, true);
  CHECK_NOTHROW(validate_density(rho, 1e-10, -1e-10));
  CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
}

TEST_CASE("PSD projection onto the simplex") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = 1.2;
  m(1, 1) = 0.1;
  m(2, 2) = -0.3;
  const Matrix p = project_psd(m);
  CHECK(p(0, 0).real() == doctest::Approx(1.0 - 0.0).epsilon(1e-12));
  CHECK(std::abs(p(2, 2)) < 1e-15);
  CHECK(std::abs(p.trace() - 1.0) < 1e-14);
}

TEST_CASE("single-qubit process tomography") {
  const Matrix id = process_tomography(QuantumChannel::identity(2));
  CHECK(std::abs(id(0, 0) - 1.0) < 1e-12);
  const Matrix z = process_tomography(QuantumChannel::unitary(pauli('Z')));
  CHECK(std::abs(z(3, 3) - 1.0) < 1e-12);
  const double p = 0.07;
  const auto deph = QuantumChannel::from_kraus({std::sqrt(1 - p) * Matrix::Identity(2, 2), std::sqrt(p) * pauli('Z')});
  const auto ef = error_fractions(chi_error(process_tomography(deph), Matrix::Identity(2, 2)));
  CHECK(ef.p[0] == doctest::Approx(1 - p));
  CHECK(ef.p[3] == doctest::Approx(p));
  CHECK(ef.residual == doctest::Approx(p));
}

TEST_CASE("chi error against a reference") {
  const Matrix h = (pauli('X') + pauli('Z')) / std::sqrt(2.0);
  const Matrix chi = process_tomography(QuantumChannel::unitary(h));
  const Matrix err = chi_error(chi, h);
  CHECK(std::abs(err(0, 0) - 1.0) < 1e-12);
  const Matrix chi_zh = process_tomography(QuantumChannel::unitary(pauli('Z') * h));
  CHECK(std::abs(chi_error(chi_zh, h)(3, 3) - 1.0) < 1e-12);
  const Matrix cz = Matrix::Identity(4, 4);
  CHECK_THROWS(chi_error(Matrix::Identity(4, 4), Matrix::Identity(3, 3)));
}

TEST_CASE("conditioned process with phase-averaged control") {
  const auto lambda = leakage_averaged_channel();
  auto process = [&](const Matrix& rho) {
    Matrix c = Matrix::Zero(2, 2);
    c(1, 1) = 1.0;
    const Matrix out = lambda.apply(kron(c, rho));
    return Matrix(out.bottomRightCorner(2, 2));
  };
  const Matrix chi = process_tomography(process);
  CHECK(std::abs(chi(0, 0) - 0.5) < 1e-12);
  CHECK(std::abs(chi(3, 3) - 0.5) < 1e-12);
  CHECK(std::abs(std::abs(chi(0, 3)) - 1.0 / kPi) < 1e-12);
  CHECK(std::abs(chi(0, 3).real()) < 1e-12);
}

TEST_CASE("prerotation names") {
  for (auto r : all_prerotations()) CHECK(prerotation_from_string(to_string(r)) == r);
  CHECK_THROWS(prerotation_from_string("Q"));
  CHECK(outcome_from_string(to_string(Outcome::erasure)) == Outcome::erasure);
  CHECK(is_unitary(rotation('Y', 0.3), 1e-14));
}

}
