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

#ifndef QMUX_TOOLS_PROFILE_HPP
#define QMUX_TOOLS_PROFILE_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmux::tools {

/// Raised on malformed configuration input; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat numeric parameter set with a fixed key registry. Resolution is
/// layered: built-in device defaults, then an optional profile file, then
/// command-line overrides; unknown keys are rejected by name.
class Profile {
 public:
  /// Built-in defaults: the measured multiplexed-device working point.
  static Profile device_defaults();

  double get(const std::string& key) const;
  void set(const std::string& key, double value);  // key must be registered
  bool has(const std::string& key) const;

  /// All keys with their resolved values, sorted, for artifact headers.
  std::vector<std::pair<std::string, double>> resolved() const;

  /// Key registry with one-line descriptions.
  static const std::map<std::string, std::string>& registry();

  std::vector<std::string> warnings;  // duplicate-key notes etc.

 private:
  std::map<std::string, double> values_;
};

/// Loads `key = value` lines ('#' comments) or a flat JSON object,
/// depending on content. Later duplicates win with a recorded warning.
Profile load_profile_file(const std::string& path, Profile base);

/// Applies "key=value" strings from the command line.
void apply_overrides(Profile& profile,
                     const std::vector<std::string>& assignments);

}  // namespace qmux::tools

#endif  // QMUX_TOOLS_PROFILE_HPP
