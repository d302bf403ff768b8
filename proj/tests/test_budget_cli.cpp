#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sws/budget.hpp"
#include "sws/config.hpp"
#include "sws/experiments.hpp"

using namespace sws;
namespace fs = std::filesystem;

namespace {

std::string ini_text() {
  std::stringstream ss;
  write_config_ini(DeviceConfig::defaults(), ss);
  return ss.str();
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  REQUIRE(pos != std::string::npos);
  return s.replace(pos, from.size(), to);
}

int line_of(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::string l;
  int n = 0;
  while (std::getline(in, l)) {
    ++n;
    if (l.find(needle) != std::string::npos) return n;
  }
  return 0;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("sws_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SWSIM_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("budget") {

TEST_CASE("error budget with device coherences") {
  const auto b = compute_error_budget(SystemParams::measured());
  CHECK(b.control_loss == doctest::Approx(3.3729e-3).epsilon(1e-3));
  CHECK(b.target_loss == doctest::Approx(9.834e-4).epsilon(1e-3));
  CHECK(b.double_loss == doctest::Approx(3.4e-6).epsilon(0.05));
  CHECK(b.control_z == doctest::Approx(1.685e-4).epsilon(2e-3));
  CHECK(b.target_z == doctest::Approx(4.71e-5).epsilon(5e-3));
  CHECK(b.no_error == doctest::Approx(0.9953614).epsilon(1e-6));
  CHECK(b.total() == doctest::Approx(1.0).epsilon(1e-6));
  for (const auto& e : b.entries()) CHECK(e.probability >= -1e-12);
  CHECK(b.double_loss == doctest::Approx(b.control_loss * b.target_loss).epsilon(0.1));
  CHECK(b.erasure_asymmetry() == doctest::Approx(3.43).epsilon(0.01));
  CHECK(b.stuck_suppression == doctest::Approx((1.51 / 4.23) * (1.51 / 4.23)).epsilon(1e-12));
}

TEST_CASE("diagnostics at order of magnitude") {
  const auto b = compute_error_budget(SystemParams::measured());
  CHECK(b.residual_coupler_excitation > 8.0e-6);
  CHECK(b.residual_coupler_excitation < 8.0e-4);
  CHECK(b.correlated_double_erasure > 1.3e-6);
  CHECK(b.correlated_double_erasure < 1.3e-4);
}

TEST_CASE("noiseless budget") {
  auto p = SystemParams::measured();
  p.coherence.clear();
  const auto b = compute_error_budget(p);
  CHECK(b.no_error == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.control_loss == doctest::Approx(0.0));
}

TEST_CASE("both control T1 orders") {
  auto cfg = DeviceConfig::defaults();
  const auto outer = compute_error_budget(cfg.system_params());
  cfg.control_t1_order = T1Order::inner_first;
  const auto inner = compute_error_budget(cfg.system_params());
  CHECK(outer.control_loss == doctest::Approx(3.3729e-3).epsilon(1e-3));
  CHECK(inner.control_loss == doctest::Approx(3.075e-3).epsilon(2e-3));
  CHECK(std::abs(outer.control_loss / 3.37e-3 - 1.0) < std::abs(inner.control_loss / 3.37e-3 - 1.0));
}

TEST_CASE("truncation three agrees with two") {
  BudgetOptions o;
  o.truncation = 3;
  const auto b3 = compute_error_budget(SystemParams::measured(), o);
  const auto b2 = compute_error_budget(SystemParams::measured());
  CHECK(b3.control_loss == doctest::Approx(b2.control_loss).epsilon(1e-9));
  CHECK(b3.no_error == doctest::Approx(b2.no_error).epsilon(1e-9));
}

TEST_CASE("physical qutrit channel") {
  const auto ch = physical_qutrit_channel(SystemParams::measured());
  CHECK(ch.dim_in() == 9);
  CHECK(ch.is_trace_preserving(1e-9));
  CHECK(ch.is_cp(1e-8));
  const double f = postselected_fidelity(ch, cz_phase(kPi), SpamModel::perfect());
  CHECK(1.0 - f < 1e-3);
}

TEST_CASE("leakage-conditioned target process") {
  const auto p = SystemParams::measured();
  for (const char* prep : {"00", "10"}) {
    const Matrix chi = leakage_conditioned_target_chi(p, prep);
    CHECK(chi(0, 0).real() == doctest::Approx(0.99995).epsilon(1e-4));
  }
  const Matrix chi = leakage_conditioned_target_chi(p, "01");
  CHECK(chi(0, 0).real() == doctest::Approx(0.5005).epsilon(1e-3));
  CHECK(chi(0, 3).imag() == doctest::Approx(-0.3105).epsilon(2e-3));
  CHECK_THROWS(leakage_conditioned_target_chi(p, "11"));
}

TEST_CASE("fundamental limits") {
  const auto one = fundamental_limits(1.0, 2.0, 70.0, 1000.0);
  CHECK(one.p_z_control == doctest::Approx(one.p_z_target));
  const auto a = fundamental_limits(0.4, 2.0, 70.0, 1000.0);
  const auto h = fundamental_limits(0.2, 2.0, 70.0, 1000.0);
  CHECK((h.p_z_target / h.p_z_control) / (a.p_z_target / a.p_z_control) == doctest::Approx(0.25));
  const auto g = fundamental_limits(0.02, 2.0, 70.0, 1000.0);
  CHECK(g.p_e_target / g.p_e_control == doctest::Approx(0.02));
  CHECK(g.bias_bound == doctest::Approx(2500.0));
  CHECK_THROWS(fundamental_limits(0.0, 2.0, 70.0, 1000.0));
  CHECK_THROWS(fundamental_limits(1.5, 2.0, 70.0, 1000.0));
  CHECK_THROWS(fundamental_limits(0.5, -2.0, 70.0, 1000.0));
}

TEST_CASE("pauli chi of a superoperator") {
  const Matrix chi = pauli_chi_from_superop(unitary_superop(kron(pauli('Z'), pauli('I'))), 2);
  CHECK(std::abs(chi(12, 12) - 1.0) < 1e-12);
  CHECK_THROWS(pauli_chi_from_superop(Matrix::Identity(4, 4), 2));
}

}

TEST_SUITE("config") {

TEST_CASE("shipped configs equal the defaults") {
  CHECK(load_config(std::string(SWS_SOURCE_DIR) + "/configs/device.ini") == DeviceConfig::defaults());
  CHECK(load_config(std::string(SWS_SOURCE_DIR) + "/configs/device.json") == DeviceConfig::defaults());
}

TEST_CASE("INI and JSON round trips are idempotent") {
  auto cfg = DeviceConfig::defaults();
  cfg.g_ac_mhz = 4.5;
  cfg.control_t1_order = T1Order::inner_first;
  cfg.spam.control.misassignment = 1.25e-5;
  std::stringstream ini;
  write_config_ini(cfg, ini);
  const auto a = parse_config_ini(ini);
  CHECK(a == cfg);
  std::stringstream ini2;
  write_config_ini(a, ini2);
  CHECK(ini2.str() == ini.str());
  std::stringstream js;
  write_config_json(cfg, js);
  CHECK(parse_config_json(js) == cfg);
}

TEST_CASE("system parameters from the config") {
  const auto p = DeviceConfig::defaults().system_params();
  CHECK(p.g_ac == doctest::Approx(2 * kPi * 4.23));
  CHECK(p.chi_ab == doctest::Approx(2 * kPi * -6.64e-3));
  CHECK(p.coherence_of("a1").t1 == 231.0);
  CHECK(p.coherence_of("a1").tphi == 8000.0);
  CHECK(p.coherence_of("b2").tphi == 9600.0);
  auto inner = DeviceConfig::defaults();
  inner.control_t1_order = T1Order::inner_first;
  CHECK(inner.system_params().coherence_of("a1").t1 == 411.0);
  const auto t = DeviceConfig::defaults().gate_times();
  CHECK(t.control_us == doctest::Approx(0.208));
}

TEST_CASE("errors carry line and field") {
  const std::string text = ini_text();
  SUBCASE("non-numeric value") {
    std::stringstream in(replace(text, "g_ac_mhz = 4.23", "g_ac_mhz = fast"));
    try {
      parse_config_ini(in, "dev.ini");
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(e.line() == line_of(text, "g_ac_mhz"));
      CHECK(e.field() == "hamiltonian.g_ac_mhz");
    }
  }
  SUBCASE("wrong unit") {
    std::stringstream in(replace(text, "coupler_t1_us = 70", "coupler_t1_us = 70 ms"));
    CHECK_THROWS_AS(parse_config_ini(in), ConfigError);
  }
  SUBCASE("matching unit accepted") {
    std::stringstream in(replace(text, "coupler_t1_us = 70", "coupler_t1_us = 70 us"));
    CHECK(parse_config_ini(in).coupler_t1_us == 70.0);
  }
  SUBCASE("unit label mismatch on the key") {
    std::stringstream in(replace(text, "coupler_t1_us", "coupler_t1_ns"));
    try {
      parse_config_ini(in);
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("unit label mismatch") != std::string::npos);
      CHECK(e.line() == line_of(text, "coupler_t1_us"));
    }
  }
  SUBCASE("unknown key") {
    std::stringstream in(replace(text, "coupler_tphi_us", "coupler_frobnication"));
    CHECK_THROWS_AS(parse_config_ini(in), ConfigError);
  }
  SUBCASE("missing key") {
    std::stringstream in(replace(text, "x90_target_ns = 136\n", ""));
    try {
      parse_config_ini(in);
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(e.field() == "gates.x90_target_ns");
    }
  }
  SUBCASE("negative time") {
    std::stringstream in(replace(text, "target_t1_b1_us = 652", "target_t1_b1_us = -652"));
    CHECK_THROWS_AS(parse_config_ini(in), ConfigError);
  }
  SUBCASE("probability out of range") {
    std::stringstream in(replace(text, "control_erasure_assignment = 0.181", "control_erasure_assignment = 1.5"));
    CHECK_THROWS_AS(parse_config_ini(in), ConfigError);
  }
  SUBCASE("gate regime") {
    std::stringstream in(replace(text, "chi_bc_mhz = -1.51", "chi_bc_mhz = -5"));
    CHECK_THROWS_AS(parse_config_ini(in), ConfigError);
  }
  SUBCASE("malformed INI") {
    std::stringstream in("[hamiltonian\ng_ac_mhz = 4.23\n");
    try {
      parse_config_ini(in);
      FAIL("expected an error");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("bad T1 order") {
    std::stringstream in(replace(text, "outer_first", "sideways"));
    CHECK_THROWS_AS(parse_config_ini(in), ConfigError);
  }
  SUBCASE("malformed JSON") {
    std::stringstream in("{\"hamiltonian\": ");
    CHECK_THROWS_AS(parse_config_json(in), ConfigError);
  }
}

TEST_CASE("missing file") { CHECK_THROWS_AS(load_config("/nonexistent/device.ini"), ConfigError); }

}

TEST_SUITE("cli") {

TEST_CASE("experiment registry") {
  const auto& n = experiment_names();
  CHECK(n.size() == 11);
  CHECK(std::find(n.begin(), n.end(), "irb-accuracy") != n.end());
  ExperimentContext ctx;
  CHECK_THROWS_AS(run_experiment("nonsense", ctx), UnknownExperiment);
}

TEST_CASE("gate-unitary report") {
  ExperimentContext ctx;
  const auto out = run_experiment("gate-unitary", ctx);
  CHECK(out.json.find("t_swap") != std::string::npos);
  CHECK(out.json.find("phi_swap") != std::string::npos);
  CHECK(!out.txt.empty());
  CHECK(!out.csv.empty());
}

TEST_CASE("experiments are deterministic for a fixed seed") {
  ExperimentContext ctx;
  ctx.seed = 4;
  for (const char* name : {"bell-tomography", "rb"}) {
    const auto a = run_experiment(name, ctx), b = run_experiment(name, ctx);
    CHECK(a.csv == b.csv);
    CHECK(a.json == b.json);
  }
}

TEST_CASE("exit codes and output files") {
  const fs::path out = scratch_dir("cli");
  const std::string cfg = std::string(SWS_SOURCE_DIR) + "/configs/device.ini";
  CHECK(run_cli("error-budget --config " + cfg + " --out " + out.string() + " --seed 1") == 0);
  for (const char* ext : {".csv", ".json", ".txt"}) CHECK(fs::exists(out / (std::string("error-budget") + ext)));
  const std::string first = slurp(out / "error-budget.json");
  CHECK(run_cli("error-budget --config " + cfg + " --out " + out.string() + " --seed 1") == 0);
  CHECK(slurp(out / "error-budget.json") == first);
  CHECK(first.find("no_error") != std::string::npos);

  CHECK(run_cli("no-such-experiment --config " + cfg + " --out " + out.string() + " --seed 1") == 3);
  CHECK(run_cli("error-budget --config /dev/null --out " + out.string() + " --seed 1") == 2);
  CHECK(run_cli("error-budget --config /nonexistent.ini --out " + out.string() + " --seed 1") == 2);
  CHECK(run_cli("error-budget --out " + out.string() + " --seed 1") != 0);
  CHECK(run_cli("error-budget --config " + cfg + " --out " + out.string() + " --seed 1 --truncation 4") != 0);

  const fs::path json_cfg = out / "device.json";
  {
    std::ofstream f(json_cfg);
    write_config_json(DeviceConfig::defaults(), f);
  }
  CHECK(run_cli("limits --config " + json_cfg.string() + " --out " + out.string() + " --seed 1") == 0);
}

}
