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
#include <stdexcept>
#include <string>
#include <string_view>

namespace ifmsearch {

/// Closed form is inapplicable: the leak factor cos^M(theta) is not positive.
struct DegenerateLeak : std::domain_error {
    using std::domain_error::domain_error;
};

/// Closed form only describes theta = pi/M.
struct UnsupportedAngle : std::domain_error {
    using std::domain_error::domain_error;
};

struct NormalizationUnderflow : std::domain_error {
    using std::domain_error::domain_error;
};

enum class ThetaMode {
    PiOverM,   // bomb imprints a pi phase after M small cycles
    PiOver2M,  // textbook single-box interrogation angle
};

double resolve_theta(ThetaMode mode, std::size_t small_cycles);
ThetaMode parse_theta_mode(std::string_view text);
std::string_view to_string(ThetaMode mode);

/// True when theta equals pi/M to within rounding.
bool is_pi_over_m(std::size_t small_cycles, double theta);

/// One search instance: N boxes, M small cycles of rotation theta per large
/// cycle, k large cycles, bomb in mode `target`.
struct SearchParams {
    std::size_t n_boxes = 2;
    std::size_t small_cycles = 1;
    double theta = 0.0;
    std::size_t large_cycles = 0;
    std::size_t target = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    static SearchParams make(std::size_t n_boxes, std::size_t small_cycles, double theta,
                             std::size_t large_cycles, std::size_t target = 0);
    static SearchParams make(std::size_t n_boxes, std::size_t small_cycles, ThetaMode mode,
                             std::size_t large_cycles, std::size_t target = 0);
};

}  // namespace ifmsearch
