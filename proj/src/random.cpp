// Copyright 2026 The frugal Authors
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

#include "frugal/random.hpp"

#include <algorithm>
#include <numeric>

namespace frugal {

std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  return order;
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, Rng& rng) {
  auto order = permutation(n, rng);
  order.resize(std::min(count, n));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace frugal
