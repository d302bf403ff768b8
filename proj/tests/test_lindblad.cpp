#include "doctest.h"

#include "sws/lindblad.hpp"

using namespace sws;

namespace {

Matrix projector_of(const ModeRegister& reg, std::initializer_list<const char*> labels) {
  Matrix p = Matrix::Zero(reg.dimension(), reg.dimension());
  for (const char* l : labels) {
    const Vector k = reg.ket(l);
    p += k * k.adjoint();
  }
  return p;
}

Matrix pure(const Vector& v) { return v * v.adjoint(); }

}  // namespace

TEST_SUITE("lindblad") {

TEST_CASE("zero noise zero Hamiltonian gives the zero generator") {
  const Matrix h = Matrix::Zero(4, 4);
  CHECK(liouvillian(h, std::vector<Matrix>{}).norm() == 0.0);
}

TEST_CASE("lone mode loss and dephasing match exponential laws") {
  const ModeRegister reg({{"m", 2}});
  NoiseModel noise;
  noise.set("m", {1.0 / 50.0, 1.0 / 80.0, 0.0});
  const Matrix l = liouvillian(Matrix::Zero(2, 2), noise, reg);
  const double t = 13.0;
  Matrix rho(2, 2);
  rho << 0.5, 0.5, 0.5, 0.5;
  const Matrix out = unvec(expm(l * t) * vec(rho), 2, 2);
  CHECK(std::abs(out(1, 1).real() - 0.5 * std::exp(-t / 50.0)) < 1e-12);
  CHECK(std::abs(std::abs(out(0, 1)) - 0.5 * std::exp(-t / 100.0 - t / 80.0)) < 1e-12);
}

TEST_CASE("Taylor exp-action agrees with the dense exponential") {
  const ModeRegister reg({{"x", 3}, {"y", 3}});
  const Matrix x = build_mode_operator(reg, "x", OperatorKind::annihilate);
  const Matrix y = build_mode_operator(reg, "y", OperatorKind::annihilate);
  const Matrix h = 3.0 * (x.adjoint() * y + y.adjoint() * x) + 1.7 * y.adjoint() * y;
  NoiseModel noise;
  noise.set("x", {0.1, 0.05, 0.02});
  noise.set("y", {0.3, 0.0, 0.01});
  const auto c = collapse_operators(reg, noise);
  CHECK(c.size() == 5);
  Vector psi = reg.ket({1, 0}) + reg.ket({0, 2});
  psi.normalize();
  const Matrix rho = pure(psi);
  const double t = 2.3;
  const Matrix dense = unvec(expm(liouvillian(h, c) * t) * vec(rho), 9, 9);
  const Matrix action = expm_action(h, c, rho, t);
  CHECK((dense - action).norm() < 1e-11);
  CHECK(std::abs(action.trace() - 1.0) < 1e-12);
}

TEST_CASE("reachable states without heating") {
  const auto p = SystemParams::measured();
  for (int dim : {2, 3}) {
    const auto reg = ModeRegister::canonical(dim);
    const auto s = build_schedule(p, reg);
    const auto noise = NoiseModel::from_params(p, reg);
    std::vector<Eigen::Index> seeds;
    for (const char* l : {"10g10", "10g01", "01g10", "01g01"}) {
      Eigen::Index i = 0;
      reg.ket(l).cwiseAbs().maxCoeff(&i);
      seeds.push_back(i);
    }
    const auto sup = gate_superoperator(s, noise, seeds);
    CHECK(sup.states.size() == 12);
  }
}

TEST_CASE("noiseless propagation equals unitary conjugation") {
  const auto p = SystemParams::measured();
  const auto reg = ModeRegister::canonical();
  const auto s = build_schedule(p, reg);
  Vector psi = reg.ket("10g10") + reg.ket("01g01") + reg.ket("01g10");
  psi.normalize();
  const auto r = propagate(s, NoiseModel{}, pure(psi));
  const Matrix u = ideal_unitary(s);
  CHECK((r.rho - u * pure(psi) * u.adjoint()).norm() < 1e-9);
  CHECK(r.elapsed == doctest::Approx(s.params.t_gate()));
}

TEST_CASE("dense subspace and exp-action routes agree on the gate") {
  const auto p = SystemParams::measured();
  const auto reg = ModeRegister::canonical();
  const auto s = build_schedule(p, reg);
  const auto noise = NoiseModel::from_params(p, reg);
  Vector psi = reg.ket("01g10") + reg.ket("10g01");
  psi.normalize();
  const Matrix rho = pure(psi);
  const auto dense = propagate(s, noise, rho);
  Matrix stepped = rho;
  const auto c = collapse_operators(reg, noise);
  for (const auto& seg : s.segments) stepped = expm_action(seg.hamiltonian, c, stepped, seg.duration);
  CHECK((dense.rho - stepped).norm() < 1e-10);
}

TEST_CASE("device noise on the mixed codespace state") {
  const auto p = SystemParams::measured();
  const auto reg = ModeRegister::canonical();
  const auto s = build_schedule(p, reg);
  const auto noise = NoiseModel::from_params(p, reg);
  const Matrix code = codespace_projector(reg);
  const Matrix partition[] = {code, Matrix::Identity(32, 32) - code};
  const auto r = propagate(s, noise, code / 4.0, partition);
  CHECK(std::abs(r.rho.trace() - 1.0) < 1e-12);
  CHECK_NOTHROW(validate_density(r.rho));
  const double erasure = r.probabilities[1];
  CHECK(erasure == doctest::Approx(4.4223e-3).epsilon(1e-3));
  CHECK(std::abs(erasure / 5.3e-3 - 1.0) < 0.2);
}

TEST_CASE("coupler dephasing only touches the swapped control") {
  auto p = SystemParams::measured();
  p.coherence.clear();
  p.coherence["c"] = {kInfinity, 1001.0};
  const auto reg = ModeRegister::canonical();
  const auto s = build_schedule(p, reg);
  const auto noise = NoiseModel::from_params(p, reg);
  const Matrix u = ideal_unitary(s);

  Vector pc = reg.ket("10g01") + reg.ket("01g01");
  pc.normalize();
  const Matrix out_c = propagate(s, noise, pure(pc)).rho;
  const Matrix ideal_c = u * pure(pc) * u.adjoint();
  Eigen::Index i0 = 0, i1 = 0;
  reg.ket("10g01").cwiseAbs().maxCoeff(&i0);
  reg.ket("01g01").cwiseAbs().maxCoeff(&i1);
  CHECK(std::abs(out_c(i0, i1)) < std::abs(ideal_c(i0, i1)) - 1e-6);

  Vector pt = reg.ket("10g10") + reg.ket("10g01");
  pt.normalize();
  const Matrix out_t = propagate(s, noise, pure(pt)).rho;
  CHECK((out_t - u * pure(pt) * u.adjoint()).norm() < 1e-9);
}

TEST_CASE("conditioning") {
  const auto p = SystemParams::measured();
  const auto reg = ModeRegister::canonical();
  const auto s = build_schedule(p, reg);
  Vector psi = reg.ket("01g10") + reg.ket("01g01");
  psi.normalize();
  const auto r = propagate(s, NoiseModel{}, pure(psi));
  const auto c = condition(r, codespace_projector(reg));
  CHECK(c.fraction == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(condition(r, projector_of(reg, {"00e10", "00e01"})), NullConditioning);
  CHECK_THROWS(condition(r, 2.0 * codespace_projector(reg)));
}

TEST_CASE("noise model bookkeeping") {
  const auto p = SystemParams::measured();
  const auto reg = ModeRegister::canonical();
  auto n = NoiseModel::from_params(p, reg);
  CHECK(n.get("a1").loss == doctest::Approx(1.0 / 231.0));
  CHECK(n.get("c").dephasing == doctest::Approx(1.0 / 1001.0));
  n.disable("a1");
  CHECK(n.get("a1").loss == 0.0);
  CHECK(NoiseModel{}.is_zero());
  CHECK_THROWS(propagate(build_schedule(p, reg), n, Matrix::Identity(4, 4)));
}

}
