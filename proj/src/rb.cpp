#include "sws/rb.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/NonLinearOptimization>

#include "sws/fock.hpp"

namespace sws {

namespace {

Matrix embed3(const Matrix& u2) {
  Matrix u = Matrix::Identity(3, 3);
  u.topLeftCorner(2, 2) = u2;
  return u;
}

Matrix rot(char axis, double theta) {
  return std::cos(theta / 2.0) * Matrix::Identity(2, 2) - kI * std::sin(theta / 2.0) * pauli(axis);
}

Matrix rz2(double theta) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = std::exp(-kI * theta / 2.0);
  m(1, 1) = std::exp(kI * theta / 2.0);
  return m;
}

Matrix qutrit_pair_gate(const Matrix& uc, const Matrix& ut) { return kron(embed3(uc), embed3(ut)); }

NativeGate to_target(NativeGate g) {
  switch (g) {
    case NativeGate::x90_c: return NativeGate::x90_t;
    case NativeGate::z90_c: return NativeGate::z90_t;
    case NativeGate::zm90_c: return NativeGate::zm90_t;
    case NativeGate::z_c: return NativeGate::z_t;
    default: break;
  }
  throw std::invalid_argument("expected a control-labelled one-qubit gate");
}

struct Outcomes {
  double raw = 0.0;
  double postselected = 0.0;
  double fraction = 0.0;
  RealMatrix assigned;  // rows control {0,1,E}, cols target {0,1,E}
};

Outcomes assign(const Matrix& rho9, const SpamModel& spam) {
  RealMatrix p(3, 3);
  for (int c = 0; c < 3; ++c)
    for (int t = 0; t < 3; ++t) p(c, t) = std::max(0.0, rho9(3 * c + t, 3 * c + t).real());
  Outcomes o;
  o.assigned = spam.control.confusion() * p * spam.target.confusion().transpose();
  o.raw = o.assigned(0, 0);
  o.fraction = o.assigned.topLeftCorner(2, 2).sum();
  o.postselected = o.fraction > 0.0 ? o.raw / o.fraction : 0.0;
  return o;
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y, double* intercept, double* stderr_) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("a linear fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(n);
  my /= double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("a linear fit needs distinct abscissae");
  const double slope = sxy / sxx;
  const double b = my - slope * mx;
  if (intercept) *intercept = b;
  if (stderr_) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - slope * x[i] - b;
      rss += r * r;
    }
    *stderr_ = n > 2 ? std::sqrt(rss / double(n - 2) / sxx) : 0.0;
  }
  return slope;
}

}  // namespace

QutritGateSet QutritGateSet::ideal() {
  const Matrix x90 = rot('X', kPi / 2);
  return {unitary_superop(qutrit_cz()), unitary_superop(qutrit_pair_gate(x90, Matrix::Identity(2, 2))),
          unitary_superop(qutrit_pair_gate(Matrix::Identity(2, 2), x90))};
}

QuantumChannel single_qubit_gate_channel(const SystemParams& p, int qubit, double duration_us, bool cross_kerr) {
  if (qubit != 0 && qubit != 1) throw std::invalid_argument("qubit must be 0 (control) or 1 (target)");
  if (!(duration_us >= 0.0)) throw std::invalid_argument("gate duration must be non-negative");
  const double tau = duration_us;
  auto leak = [&](const char* m1, const char* m2) {
    return 1.0 - std::exp(-tau * 0.5 * (1.0 / p.coherence_of(m1).t1 + 1.0 / p.coherence_of(m2).t1));
  };
  auto dephase = [&](const char* m1, const char* m2) {
    return 0.5 * (1.0 - std::exp(-tau * (1.0 / p.coherence_of(m1).tphi + 1.0 / p.coherence_of(m2).tphi)));
  };
  ChannelRates r;
  r.p_leak_control = leak("a1", "a2");
  r.p_leak_target = leak("b1", "b2");
  r.p_z_control = dephase("a1", "a2");
  r.p_z_target = dephase("b1", "b2");

  const Matrix x90 = rot('X', kPi / 2);
  const Matrix id = Matrix::Identity(2, 2);
  Matrix u = qubit == 0 ? qutrit_pair_gate(x90, id) : qutrit_pair_gate(id, x90);
  if (cross_kerr) {
    // n_a2 n_b1 is nonzero only on |1_L 0_L>.
    Matrix k = Matrix::Identity(9, 9);
    k(3, 3) = std::exp(-kI * p.chi_ab * tau);
    u = k * u;
  }
  return QuantumChannel::unitary(u)
      .then(qutrit_dephasing_channel(r))
      .then(qutrit_leakage_channel(r.p_leak_target, 1, false))
      .then(qutrit_leakage_channel(r.p_leak_control, 0, false));
}

QutritGateSet make_gate_set(const QuantumChannel& cz, const SystemParams& p, const SingleQubitGateTimes& times,
                            bool cross_kerr) {
  if (cz.dim_in() != kQutritPairDim || cz.dim_out() != kQutritPairDim)
    throw DimensionError("CZ channel must act on two qutrits");
  return {cz.to_superop(), single_qubit_gate_channel(p, 0, times.control_us, cross_kerr).to_superop(),
          single_qubit_gate_channel(p, 1, times.target_us, cross_kerr).to_superop()};
}

QuantumChannel depolarizing_cz_channel(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing parameter outside [0, 1]");
  const auto paulis = pauli_basis(2);
  const Matrix cz = qutrit_cz();
  std::vector<Matrix> ops;
  ops.push_back(std::sqrt(p + (1.0 - p) / 16.0) * cz);
  if (p < 1.0)
    for (std::size_t k = 1; k < paulis.size(); ++k)
      ops.push_back(std::sqrt((1.0 - p) / 16.0) * embed_qubit_pair(paulis[k]) * cz);
  return QuantumChannel::from_kraus(std::move(ops));
}

std::vector<double> RbRecord::mean_survival(bool postselected) const {
  std::vector<double> sum(depths.size(), 0.0), n(depths.size(), 0.0);
  for (const auto& pt : points)
    for (std::size_t k = 0; k < depths.size(); ++k)
      if (depths[k] == pt.depth) {
        sum[k] += postselected ? pt.survival_postselected : pt.survival_raw;
        n[k] += 1.0;
      }
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = n[k] > 0 ? sum[k] / n[k] : 0.0;
  return sum;
}

std::vector<double> RbRecord::mean_fraction() const {
  std::vector<double> sum(depths.size(), 0.0), n(depths.size(), 0.0);
  for (const auto& pt : points)
    for (std::size_t k = 0; k < depths.size(); ++k)
      if (depths[k] == pt.depth) {
        sum[k] += pt.postselected_fraction;
        n[k] += 1.0;
      }
  for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = n[k] > 0 ? sum[k] / n[k] : 0.0;
  return sum;
}

void RbRecord::write_csv(std::ostream& out) const {
  out << "depth,seed,interleaved,survival_raw,survival_postselected,postselected_fraction\n";
  out.precision(12);
  for (const auto& pt : points)
    out << pt.depth << ',' << pt.seed << ',' << (interleaved ? 1 : 0) << ',' << pt.survival_raw << ','
        << pt.survival_postselected << ',' << pt.postselected_fraction << '\n';
}

RbSimulator::RbSimulator(const CliffordGroup& two, const CliffordGroup& one, QutritGateSet gates)
    : two_(two), gates_(std::move(gates)) {
  if (two.n_qubits() != 2 || one.n_qubits() != 1) throw std::invalid_argument("RB needs the 2- and 1-qubit groups");
  for (const Matrix* s : {&gates_.cz, &gates_.x90_control, &gates_.x90_target})
    if (s->rows() != 81 || s->cols() != 81) throw DimensionError("gate superoperators must be 81 x 81");

  programs_.reserve(two.size());
  for (const auto& el : two.elements()) {
    std::vector<NativeGate> prog;
    Matrix uc = Matrix::Identity(2, 2), ut = Matrix::Identity(2, 2);
    auto flush = [&]() {
      for (auto g : one.element(one.index_of(uc)).word) prog.push_back(g);
      for (auto g : one.element(one.index_of(ut)).word) prog.push_back(to_target(g));
      uc = Matrix::Identity(2, 2);
      ut = Matrix::Identity(2, 2);
    };
    for (auto g : el.word) {
      if (g == NativeGate::cz) {
        flush();
        prog.push_back(g);
      } else if (gate_qubit(g) == 0) {
        uc = single_qubit_native(g) * uc;
      } else {
        ut = single_qubit_native(g) * ut;
      }
    }
    flush();
    programs_.push_back(std::move(prog));
  }
  cz_index_ = two.index_of(native_unitary(NativeGate::cz, 2));

  for (int k = 0; k < 8; ++k) {
    const auto g = static_cast<NativeGate>(k);
    if (!is_virtual(g)) continue;
    const Matrix u2 = single_qubit_native(g);
    const Matrix id = Matrix::Identity(2, 2);
    const Vector d = (gate_qubit(g) == 0 ? qutrit_pair_gate(u2, id) : qutrit_pair_gate(id, u2)).diagonal();
    Vector ph(81);
    for (int j = 0; j < 9; ++j)
      for (int i = 0; i < 9; ++i) ph(j * 9 + i) = std::conj(d(j)) * d(i);
    z_phases_[k] = ph;
  }
}

RbSimulator::RbSimulator(const RbSimulator& base, QutritGateSet gates)
    : two_(base.two_),
      gates_(std::move(gates)),
      programs_(base.programs_),
      z_phases_(base.z_phases_),
      cz_index_(base.cz_index_) {
  for (const Matrix* s : {&gates_.cz, &gates_.x90_control, &gates_.x90_target})
    if (s->rows() != 81 || s->cols() != 81) throw DimensionError("gate superoperators must be 81 x 81");
}

double RbSimulator::mean_cz_count() const {
  double n = 0.0;
  for (const auto& p : programs_)
    for (auto g : p) n += g == NativeGate::cz ? 1.0 : 0.0;
  return n / double(programs_.size());
}

Vector RbSimulator::apply_gate(NativeGate g, const Vector& v) const {
  switch (g) {
    case NativeGate::cz: return gates_.cz * v;
    case NativeGate::x90_c: return gates_.x90_control * v;
    case NativeGate::x90_t: return gates_.x90_target * v;
    default: return v.cwiseProduct(z_phases_[static_cast<int>(g)]);
  }
}

Vector RbSimulator::apply_clifford(std::size_t idx, const Vector& v) const {
  Vector out = v;
  for (auto g : programs_.at(idx)) out = apply_gate(g, out);
  return out;
}

RbRecord RbSimulator::run(const RbOptions& opts) const {
  if (opts.depths.empty()) throw std::invalid_argument("RB needs at least one depth");
  if (opts.seeds < 1) throw std::invalid_argument("RB needs at least one random sequence per depth");
  RbRecord rec;
  rec.depths = opts.depths;
  rec.interleaved = opts.interleave_cz;
  Vector v0 = Vector::Zero(81);
  v0(0) = 1.0;
  for (std::size_t di = 0; di < opts.depths.size(); ++di) {
    const int depth = opts.depths[di];
    if (depth < 1) throw std::invalid_argument("RB depths must be positive");
    for (int s = 0; s < opts.seeds; ++s) {
      std::seed_seq sq{std::uint64_t(opts.seed), std::uint64_t(depth), std::uint64_t(s)};
      std::mt19937_64 rng(sq);
      std::uniform_int_distribution<std::size_t> pick(0, two_.size() - 1);
      Vector v = v0;
      std::size_t total = two_.identity_index();
      for (int k = 0; k < depth; ++k) {
        const std::size_t c = pick(rng);
        v = apply_clifford(c, v);
        total = two_.compose(total, c);
        if (opts.interleave_cz) {
          v = apply_gate(NativeGate::cz, v);
          total = two_.compose(total, cz_index_);
        }
      }
      v = apply_clifford(two_.inverse(total), v);
      const Outcomes o = assign(unvec(v, 9, 9), opts.spam);
      rec.points.push_back({depth, s, o.raw, o.postselected, o.fraction});
    }
  }
  return rec;
}

LinearFit fit_linear(const RbRecord& rec, bool postselected) {
  std::vector<double> x, y;
  for (const auto& pt : rec.points) {
    x.push_back(pt.depth);
    y.push_back(postselected ? pt.survival_postselected : pt.survival_raw);
  }
  LinearFit f;
  f.slope = linear_slope(x, y, &f.intercept, &f.slope_stderr);

  // Means must not rise by more than three standard errors between depths.
  const auto means = rec.mean_survival(postselected);
  for (std::size_t k = 0; k + 1 < rec.depths.size(); ++k) {
    double var = 0.0;
    int n = 0;
    for (const auto& pt : rec.points)
      if (pt.depth == rec.depths[k + 1]) {
        const double yv = postselected ? pt.survival_postselected : pt.survival_raw;
        var += (yv - means[k + 1]) * (yv - means[k + 1]);
        ++n;
      }
    const double sem = n > 1 ? std::sqrt(var / double(n - 1) / double(n)) : 0.0;
    if (rec.depths[k + 1] > rec.depths[k] && means[k + 1] > means[k] + 3.0 * sem + 1e-12) f.monotonic = false;
  }
  return f;
}

namespace {

struct DecayFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  std::vector<double> x, y;

  int inputs() const { return 3; }
  int values() const { return int(x.size()); }

  // theta = (a, p, b): y = a p^x + b
  int operator()(const Eigen::VectorXd& th, Eigen::VectorXd& fv) const {
    for (std::size_t i = 0; i < x.size(); ++i) fv(Eigen::Index(i)) = th(0) * std::pow(th(1), x[i]) + th(2) - y[i];
    return 0;
  }
  int df(const Eigen::VectorXd& th, Eigen::MatrixXd& j) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto r = Eigen::Index(i);
      j(r, 0) = std::pow(th(1), x[i]);
      j(r, 1) = x[i] > 0 ? th(0) * x[i] * std::pow(th(1), x[i] - 1.0) : 0.0;
      j(r, 2) = 1.0;
    }
    return 0;
  }
};

}  // namespace

ExponentialFit fit_exponential(const RbRecord& rec, bool postselected) {
  DecayFunctor f;
  for (const auto& pt : rec.points) {
    f.x.push_back(pt.depth);
    f.y.push_back(postselected ? pt.survival_postselected : pt.survival_raw);
  }
  if (rec.depths.size() < 3 || f.x.size() < 4) throw std::invalid_argument("an exponential fit needs three depths");
  const auto means = rec.mean_survival(postselected);
  const double b0 = 0.25;
  const double a0 = std::max(1e-3, means.front() - b0);
  const double span = double(rec.depths.back() - rec.depths.front());
  double p0 = 0.99;
  if (span > 0 && means.back() - b0 > 0 && means.front() - b0 > 0)
    p0 = std::clamp(std::pow((means.back() - b0) / (means.front() - b0), 1.0 / span), 0.5, 1.0 - 1e-9);
  Eigen::VectorXd th(3);
  th << a0, p0, b0;
  Eigen::LevenbergMarquardt<DecayFunctor> lm(f);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.parameters.maxfev = 2000;
  const auto status = lm.minimize(th);

  ExponentialFit out;
  out.a = th(0);
  out.p = th(1);
  out.b = th(2);
  out.converged = status == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::CosinusTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::FtolTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::XtolTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::GtolTooSmall;
  Eigen::VectorXd fv(f.values());
  Eigen::MatrixXd jac(f.values(), 3);
  f(th, fv);
  f.df(th, jac);
  const double dof = double(f.values()) - 3.0;
  const Eigen::MatrixXd jtj = jac.transpose() * jac;
  if (dof > 0 && std::abs(jtj.determinant()) > 1e-300) {
    const Eigen::MatrixXd cov = jtj.inverse() * (fv.squaredNorm() / dof);
    out.p_stderr = std::sqrt(std::max(0.0, cov(1, 1)));
  }
  return out;
}

double r_cz_from_slopes(double m_i, double m_r) {
  const double ar = std::abs(m_r), ai = std::abs(m_i);
  if (ar >= 0.75) throw std::domain_error("reference slope too steep for the linear estimator");
  return 0.75 * (ai - ar) / (0.75 - ar);
}

double r_1q_from_slope(double m) { return std::abs(m); }

double bell_depolarizing_from_slope(double m) { return 1.0 - 4.0 * std::abs(m) / 3.0; }

FidelityEstimate fit_linear_fidelity(const RbRecord& reference, const RbRecord& interleaved) {
  FidelityEstimate e;
  e.m_reference = fit_linear(reference).slope;
  e.m_interleaved = fit_linear(interleaved).slope;
  e.r = r_cz_from_slopes(e.m_interleaved, e.m_reference);
  return e;
}

FidelityEstimate fit_linear_fidelity(const RbRecord& single, int n_qubits) {
  if (n_qubits != 1 && n_qubits != 2) throw std::invalid_argument("n_qubits must be 1 or 2");
  FidelityEstimate e;
  e.m_reference = fit_linear(single).slope;
  e.r = r_1q_from_slope(e.m_reference);
  return e;
}

IrbSample irb_point(const RbSimulator& base, const ChannelRates& rates, const IrbStudyOptions& opts) {
  const QuantumChannel ch = qutrit_gate_channel(rates);
  const RbSimulator sim(base, make_gate_set(ch, opts.params, opts.times));
  RbOptions ro{opts.depths, opts.seeds, opts.seed, false, opts.spam};
  const RbRecord ref = sim.run(ro);
  ro.interleave_cz = true;
  const RbRecord inter = sim.run(ro);
  IrbSample s;
  s.rates = rates;
  s.inferred = fit_linear_fidelity(ref, inter).r;
  s.channel = 1.0 - postselected_fidelity(ch, cz_phase(kPi), opts.spam);
  return s;
}

IrbStudy irb_accuracy_study(const IrbStudyOptions& opts) {
  if (opts.n_samples < 2) throw std::invalid_argument("the IRB study needs at least two samples");
  const auto two = CliffordGroup::generate(2);
  const auto one = CliffordGroup::generate(1);
  const RbSimulator base(two, one, QutritGateSet::ideal());

  std::mt19937_64 rng(opts.seed);
  auto uni = [&rng](const std::array<double, 2>& r) {
    return std::uniform_real_distribution<double>(r[0], r[1])(rng);
  };
  IrbStudy st;
  std::vector<double> x, y;
  for (int k = 0; k < opts.n_samples; ++k) {
    ChannelRates r;
    r.p_z_control = uni(opts.ranges.p_z);
    r.p_z_target = uni(opts.ranges.p_z);
    r.p_zz = uni(opts.ranges.p_zz);
    r.p_leak_control = uni(opts.ranges.p_leak);
    r.p_leak_target = uni(opts.ranges.p_leak);
    st.samples.push_back(irb_point(base, r, opts));
    x.push_back(st.samples.back().channel);
    y.push_back(st.samples.back().inferred);
  }
  st.slope = linear_slope(x, y, &st.offset, nullptr);
  if (opts.operating_point) {
    st.operating_point = irb_point(base, *opts.operating_point, opts);
    st.operating_underestimate = 1.0 - st.operating_point->inferred / st.operating_point->channel;
  }
  return st;
}

Matrix repeated_cz_state(const Matrix& cz_superop, const RepeatedCzOptions& opts) {
  if (cz_superop.rows() != 81 || cz_superop.cols() != 81) throw DimensionError("CZ superoperator must be 81 x 81");
  if (opts.n_gates < 0) throw std::invalid_argument("number of gates must be non-negative");
  const Matrix y90 = rot('Y', kPi / 2);
  const Matrix x180 = pauli('X');
  const Matrix zm90 = rz2(-kPi / 2);
  const Matrix sy = unitary_superop(qutrit_pair_gate(y90, y90));
  const Matrix sx = unitary_superop(qutrit_pair_gate(x180, x180));
  const Matrix sz = unitary_superop(qutrit_pair_gate(zm90, zm90));

  const bool echo = opts.echo && opts.n_gates >= 3;
  const int half = (opts.n_gates - 1) / 2;
  Vector v = Vector::Zero(81);
  v(0) = 1.0;
  v = sy * v;
  for (int k = 0; k < opts.n_gates; ++k) {
    v = cz_superop * v;
    if (echo && k + 1 == half) v = sx * v;
  }
  if (echo) v = sx * v;
  v = sz * v;
  return unvec(v, 9, 9);
}

BitflipResult simulate_bitflip_protocol(const Matrix& cz_superop, Spectator spectator, int basis_state,
                                        const std::vector<int>& n_gates, const SpamModel& spam) {
  if (cz_superop.rows() != 81 || cz_superop.cols() != 81) throw DimensionError("CZ superoperator must be 81 x 81");
  if (basis_state != 0 && basis_state != 1) throw std::invalid_argument("spectator basis state must be 0 or 1");
  if (n_gates.size() < 2) throw std::invalid_argument("bit-flip protocol needs at least two gate counts");
  const int spec = spectator == Spectator::control ? 0 : 1;
  const Matrix x90 = rot('X', kPi / 2);
  const Matrix id = Matrix::Identity(2, 2);
  const Matrix sx = unitary_superop(spec == 0 ? qutrit_pair_gate(id, x90) : qutrit_pair_gate(x90, id));

  Matrix rho0 = Matrix::Zero(9, 9);
  const int idx = spec == 0 ? 3 * basis_state : basis_state;
  rho0(idx, idx) = 1.0;

  BitflipResult out;
  out.n_gates = n_gates;
  std::vector<double> x;
  for (int n : n_gates) {
    if (n < 0) throw std::invalid_argument("number of gates must be non-negative");
    Vector v = sx * vec(rho0);
    for (int k = 0; k < n; ++k) v = cz_superop * v;
    v = sx * v;
    const Outcomes o = assign(unvec(v, 9, 9), spam);
    const int flipped = 1 - basis_state;
    double flip = 0.0;
    for (int other = 0; other < 2; ++other)
      flip += spec == 0 ? o.assigned(flipped, other) : o.assigned(other, flipped);
    out.flip_fraction.push_back(o.fraction > 0.0 ? flip / o.fraction : 0.0);
    x.push_back(n);
  }
  out.rate_per_gate = linear_slope(x, out.flip_fraction, nullptr, nullptr);
  return out;
}

}  // namespace sws
