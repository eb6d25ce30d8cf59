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

#include <gmock/gmock.h>

#include <set>

#include "entis/rng.hpp"

namespace {

using entis::Rng;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    ASSERT_EQ(a(), b());
  }
}

TEST(Rng, SplitDoesNotAdvanceParent) {
  Rng a(7);
  const Rng before = a;
  (void)a.split(3);
  (void)a.split("name");
  EXPECT_EQ(a, before);
}

TEST(Rng, SplitStreamsDiffer) {
  const Rng root(1);
  std::set<std::uint64_t> first;
  for (std::uint64_t s = 0; s < 64; ++s) {
    Rng child = root.split(s);
    first.insert(child());
  }
  EXPECT_EQ(first.size(), 64u);
  Rng x = root.split("alpha");
  Rng y = root.split("beta");
  EXPECT_NE(x(), y());
}

TEST(Rng, UniformInUnitIntervalWithCorrectMean) {
  Rng rng(3);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

}  // namespace
