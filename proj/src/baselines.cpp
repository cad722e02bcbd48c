// Copyright 2026 The ifmsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <stdexcept>
#include <string>

#include "ifmsearch/baselines.hpp"
#include "ifmsearch/circuit_sim.hpp"

namespace ifmsearch::baselines {

double classical_success(std::size_t n_boxes, std::size_t queries) {
    if (n_boxes == 0) {
        throw std::invalid_argument("n_boxes must be >= 1");
    }
    if (queries > n_boxes) {
        throw std::invalid_argument("queries (" + std::to_string(queries) +
                                    ") exceed the number of boxes (" + std::to_string(n_boxes) +
                                    ")");
    }
    return static_cast<double>(queries) / static_cast<double>(n_boxes);
}

double grover_success(std::size_t n_boxes, std::size_t iterations) {
    if (n_boxes < 2) {
        throw std::invalid_argument("n_boxes must be >= 2");
    }
    const double n = static_cast<double>(n_boxes);
    const double half_angle = std::asin(1.0 / std::sqrt(n));
    const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * half_angle);
    return s * s;
}

std::size_t query_count(std::size_t large_cycles, std::size_t small_cycles) {
    return large_cycles * small_cycles;
}

SingleBoxOutcome ifm_single(std::size_t small_cycles, double theta, bool bomb_present) {
    if (small_cycles < 1) {
        throw std::invalid_argument("small_cycles must be >= 1");
    }
    if (!bomb_present) {
        return {0.0, static_cast<double>(small_cycles) * theta};
    }
    // Each pass keeps cos^2(theta) of the probability in |H>.
    const double keep = std::pow(std::cos(theta), 2.0 * static_cast<double>(small_cycles));
    return {1.0 - keep, 0.0};
}

ComparisonRow compare(std::size_t n_boxes, std::size_t small_cycles, double theta,
                      std::size_t large_cycles) {
    const SearchParams params = SearchParams::make(n_boxes, small_cycles, theta, large_cycles);
    ComparisonRow row;
    row.n_boxes = n_boxes;
    row.queries = query_count(large_cycles, small_cycles);
    row.classical = classical_success(n_boxes, row.queries);
    row.grover = grover_success(n_boxes, row.queries);
    row.ifm_grover = run_search(params).success(large_cycles);
    row.small_cycles = small_cycles;
    row.theta = theta;
    row.large_cycles = large_cycles;
    return row;
}

}  // namespace ifmsearch::baselines
