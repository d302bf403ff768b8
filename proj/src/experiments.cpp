#include "sws/experiments.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sws/budget.hpp"
#include "sws/calibration.hpp"
#include "sws/fock.hpp"
#include "sws/rb.hpp"
#include "sws/tomography.hpp"

namespace sws {

namespace {

using Json = nlohmann::ordered_json;

struct Builder {
  std::ostringstream csv;
  Json json;
  std::ostringstream txt;

  Builder() {
    csv.precision(12);
    txt << std::fixed;
  }
};

std::string num(double v, int prec = 6) {
  std::ostringstream os;
  os << std::setprecision(prec) << v;
  return os.str();
}

std::string pct(double v, int decimals = 5) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals) << 100.0 * v << " %";
  return os.str();
}

void row(std::ostream& out, const std::string& label, const std::string& value) {
  out << std::left << std::setw(36) << label << value << '\n';
}

BudgetOptions budget_options(const ExperimentContext& ctx) {
  BudgetOptions o;
  o.truncation = ctx.truncation;
  o.schedule.include_static_kerr = ctx.include_static_kerr;
  return o;
}

Matrix cz_superop(const ExperimentContext& ctx) {
  return physical_qutrit_channel(ctx.config.system_params(), budget_options(ctx)).to_superop();
}

// The mid-sequence echo maps CZ to -ZZ CZ, so the ideal output is the Bell
// state only for N = 1 and N = 3 mod 4.
std::vector<int> repeated_cz_counts() {
  std::vector<int> n{1};
  for (int k = 3; k <= 103; k += 4) n.push_back(k);
  return n;
}

std::vector<int> rb_depths() { return {1, 4, 8, 12, 16, 24, 32}; }

ChannelRates operating_point() {
  ChannelRates r;
  r.p_leak_control = 4.0e-3;
  r.p_leak_target = 9.6e-4;
  r.p_z_control = 3.9e-4;
  r.p_z_target = 1.12e-4;
  r.p_zz = 1.0e-4;
  return r;
}

void gate_unitary(const ExperimentContext& ctx, Builder& b) {
  ScheduleOptions so;
  so.include_static_kerr = ctx.include_static_kerr;
  const auto p = ctx.config.system_params();
  const auto reg = ModeRegister::canonical(ctx.truncation);
  const auto sched = build_schedule(p, reg, so);
  const Matrix u4 = codespace_block(ideal_unitary(sched), reg);
  Matrix diag = u4;
  diag.diagonal().setZero();
  const bool diagonal = diag.norm() < 1e-8;
  LocalFrame f{};
  double infid = 1.0;
  if (diagonal) {
    f = extract_local_frame(u4);
    infid = 1.0 - unitary_entanglement_fidelity(frame_unitary(f), u4);
  }
  const Matrix corrected = frame_unitary({-f.phi_a, -f.phi_b, 0.0}) * u4;
  const double cz_infid = 1.0 - unitary_entanglement_fidelity(cz_matrix(), corrected);

  b.csv << "basis_state,amplitude_abs,phase_rad\n";
  const char* names[] = {"00", "01", "10", "11"};
  for (int k = 0; k < 4; ++k) b.csv << names[k] << ',' << std::abs(u4(k, k)) << ',' << std::arg(u4(k, k)) << '\n';

  const auto& t = sched.params;
  b.json["t_swap_us"] = t.t_swap;
  b.json["t_wait_us"] = t.t_wait;
  b.json["t_gate_us"] = t.t_gate();
  b.json["phi_swap_rad"] = t.phi_swap;
  b.json["phi_a_rad"] = f.phi_a;
  b.json["phi_b_rad"] = f.phi_b;
  b.json["phi_e_rad"] = f.phi_e;
  b.json["codespace_infidelity"] = infid;
  b.json["cz_infidelity_after_frame"] = cz_infid;
  b.json["on_off_ratio"] = on_off_ratio(p);

  b.txt << "Noiseless gate synthesis\n\n";
  row(b.txt, "t_swap", num(1e3 * t.t_swap) + " ns");
  row(b.txt, "t_wait", num(1e3 * t.t_wait) + " ns");
  row(b.txt, "t_gate", num(1e3 * t.t_gate()) + " ns");
  row(b.txt, "phi_swap", num(t.phi_swap) + " rad");
  row(b.txt, "local frame (phi_a, phi_b, phi_e)", num(f.phi_a) + ", " + num(f.phi_b) + ", " + num(f.phi_e));
  row(b.txt, "codespace infidelity", num(infid, 3));
  row(b.txt, "on/off ratio", num(on_off_ratio(p)));
}

void error_budget(const ExperimentContext& ctx, Builder& b) {
  const auto bud = compute_error_budget(ctx.config.system_params(), budget_options(ctx));
  b.csv << "entry,probability\n";
  for (const auto& e : bud.entries()) b.csv << e.name << ',' << e.probability << '\n';
  for (const auto& e : bud.entries()) b.json["entries"][e.name] = e.probability;
  b.json["total"] = bud.total();
  b.json["erasure_asymmetry"] = bud.erasure_asymmetry();
  b.json["residual_coupler_excitation"] = bud.residual_coupler_excitation;
  b.json["correlated_double_erasure"] = bud.correlated_double_erasure;
  b.json["stuck_suppression_chi_over_g_squared"] = bud.stuck_suppression;
  b.json["control_T1_order"] = to_string(ctx.config.control_t1_order);

  b.txt << "Error budget for a single CZ gate\n\n";
  const std::map<std::string, std::string> label = {
      {"control_loss", "Control photon loss"}, {"target_loss", "Target photon loss"},
      {"double_loss", "Double photon loss"},   {"stuck_in_coupler", "Stuck in coupler |00e10>, |00e01>"},
      {"lone_coupler", "Lone coupler |00e00>"}, {"control_z", "Control Z"},
      {"target_z", "Target Z"},                {"zz", "ZZ"},
      {"no_error", "No error"},                {"other", "Other codespace error"}};
  for (const auto& e : bud.entries()) row(b.txt, label.at(e.name), pct(e.probability));
  b.txt << '\n';
  row(b.txt, "Sum", num(bud.total(), 12));
  row(b.txt, "Erasure asymmetry (control/target)", num(bud.erasure_asymmetry(), 4));
  row(b.txt, "Residual coupler excitation", num(bud.residual_coupler_excitation, 3));
  row(b.txt, "Correlated double erasure", num(bud.correlated_double_erasure, 3));
}

void bell_tomography(const ExperimentContext& ctx, Builder& b) {
  const Matrix rho = repeated_cz_state(cz_superop(ctx), {1, true});
  std::mt19937_64 rng(ctx.seed);
  const int shots = 20000;
  const auto rec = simulate_record(rho, overcomplete_settings(), ctx.config.spam, shots, &rng);
  const Matrix est = reconstruct_state(rec, true);
  const auto m = bell_metrics(est);
  const auto corr = pauli_correlators(est);
  const auto ideal = pauli_correlators(canonical_bell_state());
  b.csv << "pauli,measured,ideal\n";
  for (std::size_t k = 0; k < corr.size(); ++k)
    b.csv << pauli_label(int(k), 2) << ',' << corr[k] << ',' << ideal[k] << '\n';
  double kept = 0.0, all = 0.0;
  for (const auto& s : rec.settings()) {
    all += rec.total(s);
    for (auto c : {Outcome::zero, Outcome::one})
      for (auto t : {Outcome::zero, Outcome::one}) kept += rec.count(s, c, t);
  }
  b.json["shots_per_setting"] = shots;
  b.json["bell_fidelity"] = m.fidelity;
  b.json["purity"] = m.purity;
  b.json["postselected_fraction"] = kept / all;
  b.txt << "Bell-state tomography after one CZ (postselected)\n\n";
  row(b.txt, "Fidelity", pct(m.fidelity, 3));
  row(b.txt, "Purity", num(m.purity, 5));
  row(b.txt, "Postselected fraction", num(kept / all, 5));
  b.txt << "\nPauli correlators\n";
  for (std::size_t k = 0; k < corr.size(); ++k)
    row(b.txt, pauli_label(int(k), 2), num(corr[k], 5) + "  (ideal " + num(ideal[k], 3) + ")");
}

void repeated_cz(const ExperimentContext& ctx, Builder& b) {
  const Matrix s = cz_superop(ctx);
  const Matrix v = qutrit_pair_isometry();
  std::vector<double> xs, ys;
  b.csv << "n_gates,bell_fidelity,purity,postselected_fraction\n";
  b.txt << "Repeated-CZ Bell fidelity (exact probabilities, postselected)\n\n";
  b.txt << std::left << std::setw(10) << "N" << std::setw(16) << "fidelity" << std::setw(16) << "purity"
        << "kept\n";
  for (int n : repeated_cz_counts()) {
    const Matrix rho9 = repeated_cz_state(s, {n, true});
    const auto rec = simulate_record(rho9, overcomplete_settings(), ctx.config.spam, 0, nullptr);
    const Matrix est = reconstruct_state(rec, true);
    const auto m = bell_metrics(est);
    const double kept = (v.adjoint() * rho9 * v).trace().real();
    b.csv << n << ',' << m.fidelity << ',' << m.purity << ',' << kept << '\n';
    b.json["points"].push_back({{"n_gates", n}, {"bell_fidelity", m.fidelity}, {"purity", m.purity}});
    b.txt << std::left << std::setw(10) << n << std::setw(16) << num(m.fidelity, 7) << std::setw(16)
          << num(m.purity, 7) << num(kept, 6) << '\n';
    xs.push_back(n);
    ys.push_back(m.fidelity);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= double(xs.size());
  my /= double(xs.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  b.json["fidelity_slope_per_gate"] = sxy / sxx;
  b.txt << '\n';
  row(b.txt, "Fidelity slope per gate", num(sxy / sxx, 4));
}

struct RbSetup {
  CliffordGroup two = CliffordGroup::generate(2);
  CliffordGroup one = CliffordGroup::generate(1);
};

void rb_common(const ExperimentContext& ctx, Builder& b, bool interleave) {
  const auto p = ctx.config.system_params();
  const auto ch = physical_qutrit_channel(p, budget_options(ctx));
  RbSetup g;
  const RbSimulator sim(g.two, g.one, make_gate_set(ch, p, ctx.config.gate_times()));
  RbOptions ro{rb_depths(), 20, ctx.seed, false, ctx.config.spam};
  const RbRecord ref = sim.run(ro);
  const LinearFit lr = fit_linear(ref);
  b.csv << "depth,seed,interleaved,survival_raw,survival_postselected,postselected_fraction\n";
  auto dump = [&](const RbRecord& r) {
    for (const auto& pt : r.points)
      b.csv << pt.depth << ',' << pt.seed << ',' << (r.interleaved ? 1 : 0) << ',' << pt.survival_raw << ','
            << pt.survival_postselected << ',' << pt.postselected_fraction << '\n';
  };
  dump(ref);
  b.json["depths"] = rb_depths();
  b.json["seeds"] = 20;
  b.json["mean_cz_per_clifford"] = sim.mean_cz_count();
  b.json["reference"] = {{"slope", lr.slope}, {"slope_stderr", lr.slope_stderr}, {"monotonic", lr.monotonic},
                         {"error_per_clifford", r_1q_from_slope(lr.slope)}};
  b.txt << (interleave ? "Interleaved randomized benchmarking of the CZ\n\n"
                       : "Two-qubit randomized benchmarking (postselected)\n\n");
  row(b.txt, "Mean CZ per Clifford", num(sim.mean_cz_count(), 5));
  row(b.txt, "Reference slope", num(lr.slope, 5) + " +- " + num(lr.slope_stderr, 2));
  row(b.txt, "Error per Clifford", pct(r_1q_from_slope(lr.slope), 4));
  if (!interleave) return;
  ro.interleave_cz = true;
  const RbRecord inter = sim.run(ro);
  dump(inter);
  const LinearFit li = fit_linear(inter);
  const double r = r_cz_from_slopes(li.slope, lr.slope);
  const double fe = 1.0 - postselected_fidelity(ch, cz_phase(kPi), ctx.config.spam);
  b.json["interleaved"] = {{"slope", li.slope}, {"slope_stderr", li.slope_stderr}, {"monotonic", li.monotonic}};
  b.json["cz_average_infidelity"] = r;
  b.json["cz_fidelity"] = 1.0 - r;
  b.json["channel_entanglement_infidelity"] = fe;
  row(b.txt, "Interleaved slope", num(li.slope, 5) + " +- " + num(li.slope_stderr, 2));
  row(b.txt, "CZ infidelity (IRB)", pct(r, 4));
  row(b.txt, "CZ fidelity (IRB)", pct(1.0 - r, 4));
  row(b.txt, "1 - F_e of the simulated channel", pct(fe, 4));
}

void irb_accuracy(const ExperimentContext& ctx, Builder& b) {
  IrbStudyOptions o;
  o.n_samples = ctx.irb_samples;
  o.seed = ctx.seed;
  o.spam = ctx.config.spam;
  o.params = ctx.config.system_params();
  o.times = ctx.config.gate_times();
  o.operating_point = operating_point();
  const auto st = irb_accuracy_study(o);
  b.csv << "p_leak_control,p_leak_target,p_z_control,p_z_target,p_zz,irb_infidelity,channel_infidelity\n";
  for (const auto& s : st.samples)
    b.csv << s.rates.p_leak_control << ',' << s.rates.p_leak_target << ',' << s.rates.p_z_control << ','
          << s.rates.p_z_target << ',' << s.rates.p_zz << ',' << s.inferred << ',' << s.channel << '\n';
  b.json["n_samples"] = st.samples.size();
  b.json["slope"] = st.slope;
  b.json["offset"] = st.offset;
  b.json["operating_point"] = {{"irb_infidelity", st.operating_point->inferred},
                               {"channel_infidelity", st.operating_point->channel},
                               {"underestimate", st.operating_underestimate}};
  b.txt << "Accuracy of IRB with postselection\n\n";
  row(b.txt, "Samples", std::to_string(st.samples.size()));
  row(b.txt, "Fit slope (IRB vs channel)", num(st.slope, 4));
  row(b.txt, "Fit offset", num(st.offset, 3));
  row(b.txt, "Operating point IRB infidelity", num(st.operating_point->inferred, 4));
  row(b.txt, "Operating point channel infidelity", num(st.operating_point->channel, 4));
  row(b.txt, "Underestimate", pct(st.operating_underestimate, 2));
}

void leakage_propagation(const ExperimentContext& ctx, Builder& b) {
  const auto p = ctx.config.system_params();
  const auto analytic = leakage_averaged_channel();
  const Matrix chi_a = analytic.chi();
  b.csv << "control_prep,row,col,re,im\n";
  b.txt << "Target process conditioned on control leakage\n\n";
  const char* names[] = {"I", "X", "Y", "Z"};
  for (const std::string prep : {"00", "10", "01"}) {
    const Matrix chi = leakage_conditioned_target_chi(p, prep, budget_options(ctx));
    const auto ef = error_fractions(chi_error(chi, Matrix::Identity(2, 2)));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        b.csv << prep << ',' << names[i] << ',' << names[j] << ',' << chi(i, j).real() << ',' << chi(i, j).imag()
              << '\n';
    b.json["conditioned"][prep] = {{"chi_II", chi(0, 0).real()},
                                   {"chi_ZZ", chi(3, 3).real()},
                                   {"chi_IZ_re", chi(0, 3).real()},
                                   {"chi_IZ_im", chi(0, 3).imag()},
                                   {"residual_pauli_error", ef.residual}};
    b.txt << "control prepared |" << prep << ">\n";
    row(b.txt, "  chi_II", num(chi(0, 0).real(), 6));
    row(b.txt, "  chi_ZZ", num(chi(3, 3).real(), 6));
    row(b.txt, "  chi_IZ", num(chi(0, 3).real(), 4) + " + " + num(chi(0, 3).imag(), 4) + "i");
    row(b.txt, "  residual Pauli error", num(ef.residual, 4));
  }
  b.json["phase_averaged_offdiagonal"] = {{"re", chi_a(0, 1).real()}, {"im", chi_a(0, 1).imag()}};
  b.txt << '\n';
  row(b.txt, "Phase-averaged chi_{I,CZ} (analytic)", num(chi_a(0, 1).imag(), 6) + "i");
}

void calibration(const ExperimentContext& ctx, Builder& b) {
  const auto p = ctx.config.system_params();
  const auto a = derive_gate_params(p);
  const GateParams start{1.01 * a.t_swap, 1.01 * a.t_wait, 1.01 * a.phi_swap};
  const auto r = run_calibration(p, start);
  b.csv << "sweep,axis,value\n";
  for (const auto& s : r.sweeps)
    for (std::size_t i = 0; i < s.axis.size(); ++i) b.csv << s.axis_name << ',' << s.axis[i] << ',' << s.values[i] << '\n';
  auto gp = [](const GateParams& g) {
    return Json{{"t_swap_us", g.t_swap}, {"t_wait_us", g.t_wait}, {"phi_swap_rad", g.phi_swap}};
  };
  b.json["start"] = gp(r.start);
  b.json["calibrated"] = gp(r.calibrated);
  b.json["analytic"] = gp(r.analytic);
  b.json["chevron_t_swap_us"] = r.chevron_t_swap;
  b.json["grid_steps"] = {{"t_swap_us", r.t_swap_step}, {"t_wait_us", r.t_wait_step}, {"phase_rad", r.phase_step}};
  b.json["local_frame"] = {{"phi_a", r.frame.phi_a}, {"phi_b", r.frame.phi_b}, {"phi_e", r.frame.phi_e}};
  b.json["within_resolution"] = r.within_resolution();
  b.txt << "Calibration pass from 1% perturbed parameters\n\n";
  b.txt << std::left << std::setw(16) << "parameter" << std::setw(16) << "start" << std::setw(16) << "calibrated"
        << std::setw(16) << "analytic" << "grid step\n";
  auto line = [&](const char* n, double s, double c, double an, double st) {
    b.txt << std::left << std::setw(16) << n << std::setw(16) << num(s, 7) << std::setw(16) << num(c, 7)
          << std::setw(16) << num(an, 7) << num(st, 3) << '\n';
  };
  line("t_swap (us)", r.start.t_swap, r.calibrated.t_swap, r.analytic.t_swap, r.t_swap_step);
  line("t_wait (us)", r.start.t_wait, r.calibrated.t_wait, r.analytic.t_wait, r.t_wait_step);
  line("phi_swap (rad)", r.start.phi_swap, r.calibrated.phi_swap, r.analytic.phi_swap, r.phase_step);
  b.txt << '\n';
  row(b.txt, "Local Z (phi_a, phi_b)", num(r.frame.phi_a) + ", " + num(r.frame.phi_b));
  row(b.txt, "Within grid resolution", r.within_resolution() ? "yes" : "no");
}

void bitflip(const ExperimentContext& ctx, Builder& b) {
  const Matrix s = cz_superop(ctx);
  std::vector<int> ns;
  for (int n = 0; n <= 40; n += 4) ns.push_back(n);
  b.csv << "spectator,basis_state,n_gates,flip_fraction\n";
  b.txt << "Apparent bit flips of a spectator under repeated CZ (single-round readout)\n\n";
  for (auto sp : {Spectator::control, Spectator::target})
    for (int basis : {0, 1}) {
      const auto r = simulate_bitflip_protocol(s, sp, basis, ns, ctx.config.spam_single_round);
      const std::string name = sp == Spectator::control ? "control" : "target";
      for (std::size_t i = 0; i < ns.size(); ++i)
        b.csv << name << ',' << basis << ',' << ns[i] << ',' << r.flip_fraction[i] << '\n';
      b.json["rate_per_gate"][name + "_" + std::to_string(basis)] = r.rate_per_gate;
      row(b.txt, name + " prepared |" + std::to_string(basis) + ">", num(r.rate_per_gate, 3) + " per gate");
    }
}

void limits(const ExperimentContext& ctx, Builder& b) {
  const auto p = ctx.config.system_params();
  const double g_ref = 0.02;
  const double alpha = std::abs(p.chi_bc) / (2.0 * g_ref);
  const auto c = p.coherence_of("c");
  b.csv << "G,p_e_control,p_e_target,p_z_control,p_z_target,bias_bound\n";
  b.json["alpha_c_rad_per_us"] = alpha;
  b.json["coupler_t1_us"] = c.t1;
  b.json["coupler_tphi_us"] = c.tphi;
  b.txt << "Coupler-inherited error scalings (unit prefactors), alpha_c = |chi_bc|/(2 x 0.02)\n\n";
  b.txt << std::left << std::setw(8) << "G" << std::setw(14) << "p_e ctrl" << std::setw(14) << "p_e tgt"
        << std::setw(14) << "p_Z ctrl" << std::setw(14) << "p_Z tgt" << "bias 1/G^2\n";
  for (double g : {0.01, 0.02, 0.05, 0.1, 0.5, 1.0}) {
    const auto f = fundamental_limits(g, alpha, c.t1, c.tphi);
    b.csv << g << ',' << f.p_e_control << ',' << f.p_e_target << ',' << f.p_z_control << ',' << f.p_z_target << ','
          << f.bias_bound << '\n';
    b.json["table"].push_back({{"G", g},
                               {"p_e_control", f.p_e_control},
                               {"p_e_target", f.p_e_target},
                               {"p_z_control", f.p_z_control},
                               {"p_z_target", f.p_z_target},
                               {"bias_bound", f.bias_bound}});
    b.txt << std::left << std::setw(8) << num(g, 3) << std::setw(14) << num(f.p_e_control, 3) << std::setw(14)
          << num(f.p_e_target, 3) << std::setw(14) << num(f.p_z_control, 3) << std::setw(14) << num(f.p_z_target, 3)
          << num(f.bias_bound, 4) << '\n';
  }
}

using Runner = std::function<void(const ExperimentContext&, Builder&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> r = {
      {"gate-unitary", gate_unitary},
      {"error-budget", error_budget},
      {"bell-tomography", bell_tomography},
      {"repeated-cz", repeated_cz},
      {"rb", [](const ExperimentContext& c, Builder& b) { rb_common(c, b, false); }},
      {"irb", [](const ExperimentContext& c, Builder& b) { rb_common(c, b, true); }},
      {"irb-accuracy", irb_accuracy},
      {"leakage-propagation", leakage_propagation},
      {"calibration", calibration},
      {"bitflip", bitflip},
      {"limits", limits},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

ExperimentOutput run_experiment(const std::string& name, const ExperimentContext& ctx) {
  const auto& reg = registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& kv) { return kv.first == name; });
  if (it == reg.end()) throw UnknownExperiment("unknown experiment '" + name + "'");
  if (ctx.truncation != 2 && ctx.truncation != 3) throw std::invalid_argument("truncation must be 2 or 3");
  Builder b;
  b.json["experiment"] = name;
  b.json["seed"] = ctx.seed;
  b.json["truncation"] = ctx.truncation;
  b.json["include_static_kerr"] = ctx.include_static_kerr;
  it->second(ctx, b);
  ExperimentOutput out{name, b.csv.str(), b.json.dump(2) + "\n", b.txt.str()};
  if (!ctx.out_dir.empty()) write_outputs(out, ctx.out_dir);
  return out;
}

void write_outputs(const ExperimentOutput& out, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& [ext, body] : {std::pair<const char*, const std::string*>{".csv", &out.csv},
                                  {".json", &out.json},
                                  {".txt", &out.txt}}) {
    const fs::path path = fs::path(dir) / (out.name + ext);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    f << *body;
    if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
  }
}

}  // namespace sws
