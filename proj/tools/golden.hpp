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

#ifndef QMUX_TOOLS_GOLDEN_HPP
#define QMUX_TOOLS_GOLDEN_HPP

#include <string>
#include <vector>

#include "profile.hpp"

namespace qmux::tools {

struct GoldenCheck {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;  // absolute
  bool pass = false;
};

/// Closed-form regression checks against the published device numbers.
std::vector<GoldenCheck> golden_fast(const Profile& p);

/// Adds the time-domain simulations (several tens of seconds).
std::vector<GoldenCheck> golden_full(const Profile& p);

}  // namespace qmux::tools

#endif  // QMUX_TOOLS_GOLDEN_HPP
