// Copyright 2026 The qmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "profile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qmux::tools {

namespace {

// key -> {default value, description}
const std::map<std::string, std::pair<double, std::string>>& table() {
  static const std::map<std::string, std::pair<double, std::string>> t{
      {"r", {35.0, "Josephson-to-charging energy ratio"}},
      {"nu01_ghz", {8.512, "qubit transition at the working point, GHz"}},
      {"nu01_design_ghz", {8.5, "design target transition, GHz"}},
      {"nu_gap_ghz", {48.3, "superconducting gap frequency, GHz"}},
      {"f_r_ghz", {7.522, "measured resonator frequency, GHz"}},
      {"f0_design_ghz", {7.0, "design resonator frequency, GHz"}},
      {"g_mhz", {54.3, "qubit-resonator coupling g/2pi, MHz"}},
      {"chi_mhz", {3.9, "measured dispersive shift chi/2pi, MHz"}},
      {"chi_design_mhz", {4.93, "design dispersive-shift target, MHz"}},
      {"nu_c_measured_ghz", {0.561, "deduced charging frequency, GHz"}},
      {"qc", {5500.0, "measured coupling quality factor"}},
      {"qc_design", {5000.0, "design coupling quality factor"}},
      {"qi", {38600.0, "internal quality factor"}},
      {"s21_db", {-35.0, "coupler transmission at resonance, dB"}},
      {"t1_us", {4.72, "relaxation time, us"}},
      {"t2_ramsey_us", {6.38, "Ramsey coherence time, us"}},
      {"t2_echo_us", {6.69, "echo coherence time, us"}},
      {"parity_split_mhz", {0.554, "quasiparticle parity splitting, MHz"}},
      {"omega_mhz", {6.17, "on-resonance Rabi rate, MHz"}},
      {"ramsey_detuning_mhz", {2.0, "nominal Ramsey drive detuning, MHz"}},
      {"tau_pi_ns", {80.0, "pi-pulse duration for closed forms, ns"}},
      {"tau_swap_ns", {58.0, "swap duration for closed forms, ns"}},
      {"cpw_w_um", {20.0, "centre conductor width, um"}},
      {"cpw_s_um", {10.0, "centre-to-ground gap, um"}},
      {"c_per_len_pf_m", {153.0, "capacitance per length, pF/m"}},
      {"l_per_len_nh_m", {402.0, "inductance per length, nH/m"}},
      {"beta_rad_m_ghz", {53.3, "phase constant per frequency, rad/m/GHz"}},
      {"z0_ohm", {50.0, "characteristic impedance, Ohm"}},
      {"qi_improved", {2e6, "internal quality, improved scenario"}},
      {"qc_improved", {3500.0, "coupling quality, improved scenario"}},
      {"t1_improved_us", {70.0, "relaxation time, improved scenario, us"}},
      {"photon_levels", {3.0, "resonator truncation for protocol runs"}},
      {"n_cut", {30.0, "charge-basis half width"}},
      {"integrator_step_ns", {0.25, "integrator step, ns"}},
      {"tolerance", {1e-6, "integrator observable tolerance"}},
      {"seed", {1.0, "seed for synthetic noise"}},
      {"vacuum_literal", {0.0, "1 = literal vacuum-fluctuation form"}},
      {"qc_opt_angular", {0.0, "1 = angular reading of the Qc optimum"}},
      {"flux_offset", {0.0, "flux axis offset, flux quanta"}},
  };
  return t;
}

}  // namespace

Profile Profile::device_defaults() {
  Profile p;
  for (const auto& [key, entry] : table()) {
    p.values_[key] = entry.first;
  }
  return p;
}

double Profile::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw UsageError("unknown parameter: " + key);
  }
  return it->second;
}

bool Profile::has(const std::string& key) const {
  return values_.count(key) != 0;
}

void Profile::set(const std::string& key, double value) {
  if (table().find(key) == table().end()) {
    throw UsageError("unknown parameter: " + key);
  }
  values_[key] = value;
}

std::vector<std::pair<std::string, double>> Profile::resolved() const {
  std::vector<std::pair<std::string, double>> out(values_.begin(),
                                                  values_.end());
  return out;
}

const std::map<std::string, std::string>& Profile::registry() {
  static const std::map<std::string, std::string> reg = [] {
    std::map<std::string, std::string> r;
    for (const auto& [key, entry] : table()) r[key] = entry.second;
    return r;
  }();
  return reg;
}

namespace {

double parse_number(const std::string& text, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    while (used < text.size() && std::isspace(text[used]) != 0) ++used;
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad numeric value '" + text + "' " + context);
  }
}

Profile load_key_value(std::istream& is, Profile base) {
  std::string line;
  int line_no = 0;
  std::map<std::string, int> seen;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("profile line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string()
                                    : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw UsageError("profile line " + std::to_string(line_no) +
                       ": empty key");
    }
    if (++seen[key] == 2) {
      base.warnings.push_back("duplicate key '" + key +
                              "' in profile, last value wins");
    }
    base.set(key, parse_number(value, "at profile line " +
                                          std::to_string(line_no)));
  }
  return base;
}

Profile load_json(const std::string& text, Profile base) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw UsageError(std::string("profile JSON: ") + err.what());
  }
  if (!doc.is_object()) {
    throw UsageError("profile JSON must be a flat object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) {
      throw UsageError("profile JSON key '" + key + "' must be numeric");
    }
    base.set(key, value.get<double>());
  }
  return base;
}

}  // namespace

Profile load_profile_file(const std::string& path, Profile base) {
  std::ifstream is(path);
  if (!is) {
    throw UsageError("cannot open profile: " + path);
  }
  std::stringstream buffer;
  buffer << is.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return load_json(text, std::move(base));
  }
  std::stringstream ss(text);
  return load_key_value(ss, std::move(base));
}

void apply_overrides(Profile& profile,
                     const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("override must look like key=value: " + a);
    }
    profile.set(a.substr(0, eq),
                parse_number(a.substr(eq + 1), "in override " + a));
  }
}

}  // namespace qmux::tools
