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

#ifndef ENTIS_CSV_HPP
#define ENTIS_CSV_HPP

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

#include "entis/measures.hpp"

namespace entis::csv {

/// `%.12g` rendering used by every CSV artifact.
std::string format_number(double value);

/// Row-at-a-time CSV emitter with a fixed header.
class Writer {
 public:
  Writer(std::ostream& out, std::vector<std::string> header);

  void row(const std::vector<std::string>& cells);
  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Columns `point_0..point_{d-1},log_weight`.
void write_ensemble(std::ostream& out, const WeightedEnsemble& ensemble);
WeightedEnsemble read_ensemble(std::istream& in);

/// Columns `atom,prob`.
void write_distribution(std::ostream& out, const FiniteDistribution& dist);
FiniteDistribution read_distribution(std::istream& in);

}  // namespace entis::csv

#endif
