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

#include "ifmsearch/params.hpp"

#include <cmath>
#include <numbers>

namespace ifmsearch {

double resolve_theta(ThetaMode mode, std::size_t small_cycles) {
    if (small_cycles == 0) {
        throw std::invalid_argument("small_cycles must be >= 1");
    }
    const double m = static_cast<double>(small_cycles);
    switch (mode) {
        case ThetaMode::PiOverM:
            return std::numbers::pi / m;
        case ThetaMode::PiOver2M:
            return std::numbers::pi / (2.0 * m);
    }
    throw std::invalid_argument("unknown theta mode");
}

ThetaMode parse_theta_mode(std::string_view text) {
    if (text == "pi-over-m") {
        return ThetaMode::PiOverM;
    }
    if (text == "pi-over-2m") {
        return ThetaMode::PiOver2M;
    }
    throw std::invalid_argument("unknown theta mode '" + std::string(text) +
                                "' (expected pi-over-m or pi-over-2m)");
}

std::string_view to_string(ThetaMode mode) {
    return mode == ThetaMode::PiOverM ? "pi-over-m" : "pi-over-2m";
}

bool is_pi_over_m(std::size_t small_cycles, double theta) {
    if (small_cycles == 0) {
        return false;
    }
    const double product = static_cast<double>(small_cycles) * theta;
    return std::abs(product - std::numbers::pi) <= 1e-12 * std::numbers::pi;
}

void SearchParams::validate() const {
    if (n_boxes < 2) {
        throw std::invalid_argument("n_boxes must be >= 2 (got " + std::to_string(n_boxes) + ")");
    }
    if (small_cycles < 1) {
        throw std::invalid_argument("small_cycles must be >= 1");
    }
    if (!(theta > 0.0 && theta <= std::numbers::pi)) {
        throw std::invalid_argument("theta must lie in (0, pi]");
    }
    if (target >= n_boxes) {
        throw std::invalid_argument("target must lie in [0, n_boxes)");
    }
}

SearchParams SearchParams::make(std::size_t n_boxes, std::size_t small_cycles, double theta,
                                std::size_t large_cycles, std::size_t target) {
    SearchParams p{n_boxes, small_cycles, theta, large_cycles, target};
    p.validate();
    return p;
}

SearchParams SearchParams::make(std::size_t n_boxes, std::size_t small_cycles, ThetaMode mode,
                                std::size_t large_cycles, std::size_t target) {
    if (small_cycles < 1) {
        throw std::invalid_argument("small_cycles must be >= 1");
    }
    return make(n_boxes, small_cycles, resolve_theta(mode, small_cycles), large_cycles, target);
}

}  // namespace ifmsearch
