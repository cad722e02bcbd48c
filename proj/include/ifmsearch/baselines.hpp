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

#pragma once

#include <cstddef>

#include "ifmsearch/params.hpp"

namespace ifmsearch::baselines {

/// Opening `queries` distinct boxes out of N.
double classical_success(std::size_t n_boxes, std::size_t queries);

/// Ideal unitary-oracle Grover search: sin^2((2i+1) asin(1/sqrt N)).
double grover_success(std::size_t n_boxes, std::size_t iterations);

/// Oracle interrogations consumed by k large cycles of M small cycles.
std::size_t query_count(std::size_t large_cycles, std::size_t small_cycles);

struct SingleBoxOutcome {
    double explosion_probability;
    double exit_polarization;  // angle from |H>, radians
};

/// One box, photon cycled M times through a rotator of angle theta.
SingleBoxOutcome ifm_single(std::size_t small_cycles, double theta, bool bomb_present);

struct ComparisonRow {
    std::size_t n_boxes = 0;
    std::size_t queries = 0;
    double classical = 0.0;
    double grover = 0.0;
    double ifm_grover = 0.0;
    std::size_t small_cycles = 0;
    double theta = 0.0;
    std::size_t large_cycles = 0;
};

/// Same query budget kM for all three strategies. The IFM column comes from
/// the circuit simulator, so any theta is accepted.
ComparisonRow compare(std::size_t n_boxes, std::size_t small_cycles, double theta,
                      std::size_t large_cycles);

}  // namespace ifmsearch::baselines
