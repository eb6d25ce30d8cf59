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

#include "entis/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "entis/errors.hpp"

namespace entis::csv {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') {
      cell.pop_back();
    }
    cells.push_back(cell);
  }
  return cells;
}

double parse_number(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw Error(ErrorKind::kInvalidArgument, "not a number: '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

Writer::Writer(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
  row(header);
}

void Writer::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw Error(ErrorKind::kInvalidArgument, "CSV row width does not match the header");
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out_ << ',';
    }
    out_ << cells[i];
  }
  out_ << '\n';
}

void Writer::row(std::initializer_list<double> values) { row(std::vector<double>(values)); }

void Writer::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (const double v : values) {
    cells.push_back(format_number(v));
  }
  row(cells);
}

void write_ensemble(std::ostream& out, const WeightedEnsemble& ensemble) {
  std::vector<std::string> header;
  for (std::size_t j = 0; j < ensemble.dimension(); ++j) {
    header.push_back("point_" + std::to_string(j));
  }
  header.emplace_back("log_weight");
  Writer writer(out, std::move(header));
  std::vector<double> values(ensemble.dimension() + 1);
  for (std::size_t n = 0; n < ensemble.size(); ++n) {
    const auto& p = ensemble.points()[n];
    for (std::size_t j = 0; j < ensemble.dimension(); ++j) {
      values[j] = p(static_cast<Eigen::Index>(j));
    }
    values.back() = ensemble.log_weights()[n];
    writer.row(values);
  }
}

WeightedEnsemble read_ensemble(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::kInvalidArgument, "missing CSV header");
  }
  const auto header = split_line(line);
  if (header.size() < 2 || header.back() != "log_weight") {
    throw Error(ErrorKind::kInvalidArgument, "ensemble CSV must end with a log_weight column");
  }
  const std::size_t d = header.size() - 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (header[j] != "point_" + std::to_string(j)) {
      throw Error(ErrorKind::kInvalidArgument, "unexpected column '" + header[j] + "'");
    }
  }
  std::vector<Point> points;
  std::vector<double> log_weights;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto cells = split_line(line);
    if (cells.size() != d + 1) {
      throw Error(ErrorKind::kInvalidArgument, "ragged ensemble CSV row");
    }
    Point p(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) {
      p(static_cast<Eigen::Index>(j)) = parse_number(cells[j]);
    }
    points.push_back(std::move(p));
    log_weights.push_back(parse_number(cells.back()));
  }
  return WeightedEnsemble(std::move(points), std::move(log_weights));
}

void write_distribution(std::ostream& out, const FiniteDistribution& dist) {
  Writer writer(out, {"atom", "prob"});
  for (std::size_t i = 0; i < dist.size(); ++i) {
    writer.row(std::vector<std::string>{dist.atoms()[i], format_number(dist[i])});
  }
}

FiniteDistribution read_distribution(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || split_line(line) != std::vector<std::string>{"atom", "prob"}) {
    throw Error(ErrorKind::kInvalidArgument, "distribution CSV must have header atom,prob");
  }
  std::vector<std::string> atoms;
  std::vector<double> weights;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    const auto cells = split_line(line);
    if (cells.size() != 2) {
      throw Error(ErrorKind::kInvalidArgument, "distribution CSV rows need two cells");
    }
    atoms.push_back(cells[0]);
    weights.push_back(parse_number(cells[1]));
  }
  // %.12g loses the last digits, so renormalize rather than demand 1e-12 mass.
  return FiniteDistribution::from_weights(std::move(atoms), std::move(weights));
}

}  // namespace entis::csv
