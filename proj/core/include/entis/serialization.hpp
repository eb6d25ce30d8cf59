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

#ifndef ENTIS_SERIALIZATION_HPP
#define ENTIS_SERIALIZATION_HPP

#include <string>

#include "entis/adaptive.hpp"
#include "entis/bounds.hpp"
#include "entis/entropy.hpp"
#include "entis/gibbs.hpp"
#include "entis/smc.hpp"
#include "entis/wlc.hpp"

/**
 * \file
 * \brief JSON text for the result records. Non-finite numbers are written as null.
 */

namespace entis::json {

std::string to_json(const EntropyReport& report);
std::string to_json(const GibbsParameters& params);
std::string to_json(const SmcResult& result);
std::string to_json(const BoundReport& report);
std::string to_json(const ThreePointReport& report);
std::string to_json(const WlcSolution& solution);
std::string to_json(const CriticalNResult& result);
std::string to_json(const CrossEntropyRun& run);
std::string to_json(const StripLowerBoundCheck& check);

/// Inverse of to_json; nulls read back as +∞ (entropies) or are rejected where a finite value is required.
EntropyReport entropy_report_from_json(const std::string& text);
GibbsParameters gibbs_parameters_from_json(const std::string& text);
BoundReport bound_report_from_json(const std::string& text);
ThreePointReport three_point_report_from_json(const std::string& text);
WlcSolution wlc_solution_from_json(const std::string& text);
CriticalNResult critical_n_from_json(const std::string& text);

}  // namespace entis::json

#endif
