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

#include <complex>
#include <cstddef>
#include <string_view>

#include "ifmsearch/params.hpp"

namespace ifmsearch::closed_form {

enum class Regime { Oscillation, Saturation, Critical };

std::string_view to_string(Regime regime);

/// |cos_phi - 1| below this is Critical.
inline constexpr double kCriticalTolerance = 1e-12;

/// Largest allowed |Im| of the normalized amplitudes.
inline constexpr double kImaginaryTolerance = 1e-12;

struct PhaseParameter {
    double cos_phi = 0.0;
    std::complex<double> phi;  // principal complex arccos of cos_phi
    Regime regime = Regime::Oscillation;
};

struct AmplitudePair {
    std::complex<double> alpha_raw;  // unnormalized non-target amplitude
    std::complex<double> tau_raw;    // unnormalized target amplitude
    double alpha = 0.0;
    double tau = 0.0;
    double leak_factor = 0.0;  // c = cos^M(theta)
    double imaginary_residue = 0.0;
};

struct Survival {
    double cumulative = 1.0;
    double lower_bound = 1.0;  // cos^{2kM}(theta)
};

/// c = cos^M(theta). Throws DegenerateLeak when c <= 0, including cos(theta)
/// that is zero up to rounding (theta = pi/2).
double leak_factor(std::size_t small_cycles, double theta);

PhaseParameter phase_parameter_from_leak(std::size_t n_boxes, double leak);
PhaseParameter phase_parameter(std::size_t n_boxes, std::size_t small_cycles, double theta);

/// Normalized (alpha, tau) after k large cycles. Only theta = pi/M is
/// supported (UnsupportedAngle otherwise).
AmplitudePair amplitudes(std::size_t n_boxes, std::size_t small_cycles, double theta,
                         std::size_t cycle_index);

Survival survival(std::size_t n_boxes, std::size_t small_cycles, double theta,
                  std::size_t cycle_index);

/// survival(k).cumulative * tau(k)^2
double success_probability(std::size_t n_boxes, std::size_t small_cycles, double theta,
                           std::size_t cycle_index);

}  // namespace ifmsearch::closed_form
