#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "sws/error_channels.hpp"
#include "sws/gate.hpp"
#include "sws/rb.hpp"

namespace sws {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& field, const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_ = 0;
  std::string field_;
};

enum class T1Order { outer_first, inner_first };

const char* to_string(T1Order o);
T1Order t1_order_from_string(const std::string& s);

// Device values in their labelled units; converted by system_params().
struct DeviceConfig {
  double g_ac_mhz = 4.23;
  double chi_bc_mhz = -1.51;
  double chi_ac_mhz = -1.26;
  double chi_ab_khz = -6.64;

  double control_t1_outer_us = 231.0;
  double control_t1_inner_us = 411.0;
  T1Order control_t1_order = T1Order::outer_first;
  double target_t1_b1_us = 652.0;
  double target_t1_b2_us = 342.0;
  double coupler_t1_us = 70.0;
  double coupler_tphi_us = 1001.0;
  double control_t2_echo_us = 4000.0;  // dual rail
  double target_t2_echo_us = 4800.0;   // dual rail

  SpamModel spam = SpamModel::two_round();
  SpamModel spam_single_round = SpamModel::one_round();

  double x90_control_ns = 208.0;
  double x90_target_ns = 136.0;

  static DeviceConfig defaults() { return {}; }

  // Cavity Tphi = 2 T_echo of the dual rail.
  SystemParams system_params() const;
  SingleQubitGateTimes gate_times() const;
  void validate(const std::string& source = "config") const;

  bool operator==(const DeviceConfig&) const = default;
};

DeviceConfig parse_config_ini(std::istream& in, const std::string& source = "config");
DeviceConfig parse_config_json(std::istream& in, const std::string& source = "config");
// Dispatches on the .json extension; anything else is read as INI.
DeviceConfig load_config(const std::string& path);

void write_config_ini(const DeviceConfig& cfg, std::ostream& out);
void write_config_json(const DeviceConfig& cfg, std::ostream& out);

}  // namespace sws
