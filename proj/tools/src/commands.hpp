// Copyright 2026 The entis Authors.
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

#ifndef ENTIS_TOOLS_COMMANDS_HPP
#define ENTIS_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"

namespace entis::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Shared run settings resolved from flags and config.
struct RunContext {
  std::uint64_t seed{0};
  std::filesystem::path out;
};

void cmd_entropy(Config& cfg, const RunContext& ctx);
void cmd_bound_sweep(Config& cfg, const RunContext& ctx);
void cmd_wlc_sweep(Config& cfg, const RunContext& ctx);
void cmd_gibbs_fit(Config& cfg, const RunContext& ctx);
void cmd_smc(Config& cfg, const RunContext& ctx);
void cmd_cross_entropy(Config& cfg, const RunContext& ctx);
void cmd_nstar(Config& cfg, const RunContext& ctx);

/// Full command line (argv[0] excluded); returns the process exit code.
int run(const std::vector<std::string>& args);

}  // namespace entis::cli

#endif
