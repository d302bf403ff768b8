#include "sws/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "json.hpp"

namespace sws {

namespace {

enum class Check { any, positive, nonzero, probability };

struct Field {
  const char* section;
  const char* key;
  const char* unit;  // empty for dimensionless
  Check check;
  std::function<double&(DeviceConfig&)> ref;
};

std::vector<Field> fields() {
  auto spam = [](SpamModel DeviceConfig::*model, QubitSpam SpamModel::*qubit, double QubitSpam::*member) {
    return [=](DeviceConfig& c) -> double& { return (c.*model.*qubit).*member; };
  };
  using D = DeviceConfig;
  std::vector<Field> f = {
      {"hamiltonian", "g_ac_mhz", "MHz", Check::positive, [](D& c) -> double& { return c.g_ac_mhz; }},
      {"hamiltonian", "chi_bc_mhz", "MHz", Check::nonzero, [](D& c) -> double& { return c.chi_bc_mhz; }},
      {"hamiltonian", "chi_ac_mhz", "MHz", Check::any, [](D& c) -> double& { return c.chi_ac_mhz; }},
      {"hamiltonian", "chi_ab_khz", "kHz", Check::any, [](D& c) -> double& { return c.chi_ab_khz; }},
      {"coherence", "control_t1_outer_us", "us", Check::positive,
       [](D& c) -> double& { return c.control_t1_outer_us; }},
      {"coherence", "control_t1_inner_us", "us", Check::positive,
       [](D& c) -> double& { return c.control_t1_inner_us; }},
      {"coherence", "target_t1_b1_us", "us", Check::positive, [](D& c) -> double& { return c.target_t1_b1_us; }},
      {"coherence", "target_t1_b2_us", "us", Check::positive, [](D& c) -> double& { return c.target_t1_b2_us; }},
      {"coherence", "coupler_t1_us", "us", Check::positive, [](D& c) -> double& { return c.coupler_t1_us; }},
      {"coherence", "coupler_tphi_us", "us", Check::positive, [](D& c) -> double& { return c.coupler_tphi_us; }},
      {"coherence", "control_t2_echo_us", "us", Check::positive,
       [](D& c) -> double& { return c.control_t2_echo_us; }},
      {"coherence", "target_t2_echo_us", "us", Check::positive,
       [](D& c) -> double& { return c.target_t2_echo_us; }},
      {"gates", "x90_control_ns", "ns", Check::positive, [](D& c) -> double& { return c.x90_control_ns; }},
      {"gates", "x90_target_ns", "ns", Check::positive, [](D& c) -> double& { return c.x90_target_ns; }},
  };
  const std::pair<const char*, SpamModel D::*> models[] = {{"spam", &D::spam},
                                                           {"spam_single_round", &D::spam_single_round}};
  const std::pair<const char*, QubitSpam SpamModel::*> qubits[] = {{"control", &SpamModel::control},
                                                                   {"target", &SpamModel::target}};
  const std::pair<const char*, double QubitSpam::*> members[] = {
      {"misassignment", &QubitSpam::misassignment},
      {"leak_detection_error", &QubitSpam::leak_detection_error},
      {"erasure_assignment", &QubitSpam::erasure_assignment}};
  static std::vector<std::string> names;
  if (names.empty())
    for (const auto& q : qubits)
      for (const auto& m : members) names.push_back(std::string(q.first) + "_" + m.first);
  for (const auto& mo : models) {
    std::size_t k = 0;
    for (const auto& q : qubits)
      for (const auto& m : members)
        f.push_back({mo.first, names[k++].c_str(), "", Check::probability, spam(mo.second, q.second, m.second)});
  }
  return f;
}

constexpr const char* kOrderSection = "coherence";
constexpr const char* kOrderKey = "control_T1_order";

std::string trim(std::string s) {
  auto ws = [](unsigned char ch) { return std::isspace(ch) != 0; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), [&](char ch) { return !ws(ch); }));
  s.erase(std::find_if(s.rbegin(), s.rend(), [&](char ch) { return !ws(ch); }).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  for (auto& ch : s) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

bool unit_matches(const std::string& given, const std::string& expected) {
  const std::string g = lower(given), e = lower(expected);
  if (g == e) return true;
  return e == "us" && (g == "\xc2\xb5s" || g == "\xce\xbcs");
}

// Number with an optional trailing unit that must match the field label.
double parse_number(const std::string& raw, const Field& f, const std::string& source, int line) {
  const std::string field = std::string(f.section) + "." + f.key;
  const std::string text = trim(raw);
  double v = 0.0;
  const char* b = text.data();
  const char* e = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr == b) throw ConfigError(source, line, field, "expected a number, got '" + text + "'");
  const std::string rest = trim(std::string(ptr, e));
  if (!rest.empty()) {
    if (*f.unit == '\0') throw ConfigError(source, line, field, "dimensionless value carries unit '" + rest + "'");
    if (!unit_matches(rest, f.unit))
      throw ConfigError(source, line, field, "unit '" + rest + "' does not match the labelled unit " + f.unit);
  }
  return v;
}

void check_value(double v, const Field& f, const std::string& source, int line) {
  const std::string field = std::string(f.section) + "." + f.key;
  if (!std::isfinite(v)) throw ConfigError(source, line, field, "value must be finite");
  switch (f.check) {
    case Check::any: break;
    case Check::positive:
      if (!(v > 0.0)) throw ConfigError(source, line, field, "value must be positive");
      break;
    case Check::nonzero:
      if (v == 0.0) throw ConfigError(source, line, field, "value must be nonzero");
      break;
    case Check::probability:
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(source, line, field, "probability must lie in [0, 1]");
      break;
  }
}

std::string strip_unit_suffix(const std::string& key) {
  const auto pos = key.rfind('_');
  return pos == std::string::npos ? key : key.substr(0, pos);
}

// Line of `key` inside `[section]`, or 0.
int locate(const std::vector<std::string>& lines, const std::string& section, const std::string& key) {
  std::string current;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string l = trim(lines[i]);
    if (l.empty() || l[0] == ';' || l[0] == '#') continue;
    if (l.front() == '[' && l.back() == ']') {
      current = trim(l.substr(1, l.size() - 2));
      continue;
    }
    const auto eq = l.find('=');
    if (eq != std::string::npos && current == section && trim(l.substr(0, eq)) == key) return int(i) + 1;
  }
  return 0;
}

int locate_section(const std::vector<std::string>& lines, const std::string& section) {
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string l = trim(lines[i]);
    if (!l.empty() && l.front() == '[' && l.back() == ']' && trim(l.substr(1, l.size() - 2)) == section)
      return int(i) + 1;
  }
  return 0;
}

std::string format(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& field, const std::string& message)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                         (field.empty() ? std::string() : ": " + field) + ": " + message),
      line_(line),
      field_(field) {}

const char* to_string(T1Order o) { return o == T1Order::outer_first ? "outer_first" : "inner_first"; }

T1Order t1_order_from_string(const std::string& s) {
  if (s == "outer_first") return T1Order::outer_first;
  if (s == "inner_first") return T1Order::inner_first;
  throw std::invalid_argument("control_T1_order must be outer_first or inner_first, got '" + s + "'");
}

SystemParams DeviceConfig::system_params() const {
  SystemParams p;
  p.g_ac = mhz_to_angular(g_ac_mhz);
  p.chi_bc = mhz_to_angular(chi_bc_mhz);
  p.chi_ac = mhz_to_angular(chi_ac_mhz);
  p.chi_ab = khz_to_angular(chi_ab_khz);
  const bool outer = control_t1_order == T1Order::outer_first;
  p.coherence["a1"] = {outer ? control_t1_outer_us : control_t1_inner_us, 2.0 * control_t2_echo_us};
  p.coherence["a2"] = {outer ? control_t1_inner_us : control_t1_outer_us, 2.0 * control_t2_echo_us};
  p.coherence["c"] = {coupler_t1_us, coupler_tphi_us};
  p.coherence["b1"] = {target_t1_b1_us, 2.0 * target_t2_echo_us};
  p.coherence["b2"] = {target_t1_b2_us, 2.0 * target_t2_echo_us};
  return p;
}

SingleQubitGateTimes DeviceConfig::gate_times() const { return {x90_control_ns * 1e-3, x90_target_ns * 1e-3}; }

void DeviceConfig::validate(const std::string& source) const {
  DeviceConfig copy = *this;
  for (const auto& f : fields()) check_value(f.ref(copy), f, source, 0);
  for (const SpamModel* m : {&spam, &spam_single_round})
    for (const QubitSpam* q : {&m->control, &m->target})
      if (q->misassignment + q->erasure_assignment > 1.0)
        throw ConfigError(source, 0, "spam", "misassignment plus erasure assignment exceeds 1");
  if (!(std::abs(mhz_to_angular(chi_bc_mhz)) < mhz_to_angular(g_ac_mhz)))
    throw ConfigError(source, 0, "hamiltonian.chi_bc_mhz", "the gate requires |chi_bc| < g_ac");
}

DeviceConfig parse_config_ini(std::istream& in, const std::string& source) {
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::vector<std::string> lines;
  {
    std::istringstream ls(text);
    for (std::string l; std::getline(ls, l);) lines.push_back(l);
  }
  boost::property_tree::ptree tree;
  try {
    std::istringstream is(text);
    boost::property_tree::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(source, int(e.line()), "", e.message());
  }

  const auto table = fields();
  DeviceConfig cfg;
  bool have_order = false;
  std::vector<std::string> seen;
  for (const auto& [section, node] : tree) {
    if (!node.data().empty() && node.empty())
      throw ConfigError(source, locate(lines, "", section), section, "key outside of any section");
    for (const auto& [key, value] : node) {
      const int line = locate(lines, section, key);
      const std::string field = section + "." + key;
      if (section == kOrderSection && key == kOrderKey) {
        try {
          cfg.control_t1_order = t1_order_from_string(trim(value.data()));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(source, line, field, e.what());
        }
        have_order = true;
        continue;
      }
      auto it = std::find_if(table.begin(), table.end(),
                             [&](const Field& f) { return f.section == section && f.key == key; });
      if (it == table.end()) {
        auto near = std::find_if(table.begin(), table.end(), [&](const Field& f) {
          return f.section == section && *f.unit != '\0' && strip_unit_suffix(f.key) == strip_unit_suffix(key);
        });
        if (near != table.end())
          throw ConfigError(source, line, field, std::string("unit label mismatch; expected key ") + near->key);
        throw ConfigError(source, line, field, "unknown key");
      }
      const double v = parse_number(value.data(), *it, source, line);
      check_value(v, *it, source, line);
      it->ref(cfg) = v;
      seen.push_back(field);
    }
  }
  for (const auto& f : table) {
    const std::string field = std::string(f.section) + "." + f.key;
    if (std::find(seen.begin(), seen.end(), field) == seen.end())
      throw ConfigError(source, locate_section(lines, f.section), field, "required key is missing");
  }
  if (!have_order)
    throw ConfigError(source, locate_section(lines, kOrderSection), std::string(kOrderSection) + "." + kOrderKey,
                      "required key is missing");
  cfg.validate(source);
  return cfg;
}

DeviceConfig parse_config_json(std::istream& in, const std::string& source) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source, 0, "", e.what());
  }
  if (!j.is_object()) throw ConfigError(source, 0, "", "top level must be an object");
  const auto table = fields();
  DeviceConfig cfg;
  for (const auto& [section, node] : j.items()) {
    if (!node.is_object()) throw ConfigError(source, 0, section, "section must be an object");
    for (const auto& [key, value] : node.items()) {
      const std::string field = section + "." + key;
      if (section == kOrderSection && key == kOrderKey) {
        if (!value.is_string()) throw ConfigError(source, 0, field, "expected a string");
        try {
          cfg.control_t1_order = t1_order_from_string(value.get<std::string>());
        } catch (const std::invalid_argument& e) {
          throw ConfigError(source, 0, field, e.what());
        }
        continue;
      }
      auto it = std::find_if(table.begin(), table.end(),
                             [&](const Field& f) { return f.section == section && f.key == key; });
      if (it == table.end()) throw ConfigError(source, 0, field, "unknown key");
      double v = 0.0;
      if (value.is_number()) {
        v = value.get<double>();
      } else if (value.is_string()) {
        v = parse_number(value.get<std::string>(), *it, source, 0);
      } else {
        throw ConfigError(source, 0, field, "expected a number");
      }
      check_value(v, *it, source, 0);
      it->ref(cfg) = v;
    }
  }
  for (const auto& f : table)
    if (!j.contains(f.section) || !j[f.section].contains(f.key))
      throw ConfigError(source, 0, std::string(f.section) + "." + f.key, "required key is missing");
  if (!j.contains(kOrderSection) || !j[kOrderSection].contains(kOrderKey))
    throw ConfigError(source, 0, std::string(kOrderSection) + "." + kOrderKey, "required key is missing");
  cfg.validate(source);
  return cfg;
}

DeviceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "", "cannot open file");
  const bool json = path.size() >= 5 && lower(path.substr(path.size() - 5)) == ".json";
  return json ? parse_config_json(in, path) : parse_config_ini(in, path);
}

void write_config_ini(const DeviceConfig& cfg, std::ostream& out) {
  DeviceConfig c = cfg;
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      if (!section.empty()) out << '\n';
      section = f.section;
      out << '[' << section << "]\n";
      if (section == kOrderSection) out << kOrderKey << " = " << to_string(c.control_t1_order) << '\n';
    }
    out << f.key << " = " << format(f.ref(c)) << '\n';
  }
}

void write_config_json(const DeviceConfig& cfg, std::ostream& out) {
  DeviceConfig c = cfg;
  nlohmann::ordered_json j;
  for (const auto& f : fields()) {
    j[f.section][f.key] = f.ref(c);
    if (std::string(f.section) == kOrderSection && !j[f.section].contains(kOrderKey))
      j[f.section][kOrderKey] = to_string(c.control_t1_order);
  }
  out << j.dump(2) << '\n';
}

}  // namespace sws
