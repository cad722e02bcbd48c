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

#include <algorithm>
#include <cmath>
#include <string>

#include "ifmsearch/closed_form.hpp"

namespace ifmsearch::closed_form {

namespace {

using cplx = std::complex<double>;

// cos(pi/2) evaluates to ~6e-17; anything this small is a zero leak factor.
constexpr double kZeroCosine = 1e-14;

void require_pi_over_m(std::size_t small_cycles, double theta) {
    if (!is_pi_over_m(small_cycles, theta)) {
        throw UnsupportedAngle("closed form requires theta = pi/M (M=" +
                               std::to_string(small_cycles) + ", theta=" + std::to_string(theta) +
                               ")");
    }
}

// U_{k-1}(x) = sin(k phi) / sin(phi) for x = cos(phi).
double chebyshev_ratio(std::size_t k, double x) {
    double prev = 0.0;
    double cur = 1.0;
    if (k == 0) return 0.0;
    for (std::size_t i = 1; i < k; ++i) {
        const double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Oscillation:
            return "oscillation";
        case Regime::Saturation:
            return "saturation";
        case Regime::Critical:
            return "critical";
    }
    return "unknown";
}

double leak_factor(std::size_t small_cycles, double theta) {
    if (small_cycles == 0) {
        throw std::invalid_argument("small_cycles must be >= 1");
    }
    const double cos_theta = std::cos(theta);
    const double m = static_cast<double>(small_cycles);
    if (std::abs(cos_theta) <= kZeroCosine) {
        throw DegenerateLeak("cos^M(theta) is zero: closed form inapplicable");
    }
    if (cos_theta < 0.0 && small_cycles % 2 == 1) {
        throw DegenerateLeak("cos^M(theta) is negative: closed form inapplicable");
    }
    // exp(M ln|cos|) keeps full relative precision at large M.
    return std::exp(m * std::log(std::abs(cos_theta)));
}

PhaseParameter phase_parameter_from_leak(std::size_t n_boxes, double leak) {
    if (n_boxes < 2) {
        throw std::invalid_argument("n_boxes must be >= 2");
    }
    if (!(leak > 0.0)) {
        throw DegenerateLeak("leak factor must be positive");
    }
    const double n = static_cast<double>(n_boxes);
    PhaseParameter out;
    out.cos_phi = (1.0 - 2.0 / n) * (1.0 + leak) / (2.0 * std::sqrt(leak));
    out.phi = std::acos(cplx(out.cos_phi, 0.0));
    const double distance = std::abs(out.cos_phi) - 1.0;
    if (std::abs(distance) <= kCriticalTolerance) {
        out.regime = Regime::Critical;
    } else {
        out.regime = distance > 0.0 ? Regime::Saturation : Regime::Oscillation;
    }
    return out;
}

PhaseParameter phase_parameter(std::size_t n_boxes, std::size_t small_cycles, double theta) {
    return phase_parameter_from_leak(n_boxes, leak_factor(small_cycles, theta));
}

AmplitudePair amplitudes(std::size_t n_boxes, std::size_t small_cycles, double theta,
                         std::size_t cycle_index) {
    const double c = leak_factor(small_cycles, theta);
    require_pi_over_m(small_cycles, theta);
    const PhaseParameter pp = phase_parameter_from_leak(n_boxes, c);
    const double root_c = std::sqrt(c);
    const double k = static_cast<double>(cycle_index);

    const cplx sin_k = std::sin(k * pp.phi);
    const cplx sin_k1 = std::sin((k + 1.0) * pp.phi);

    AmplitudePair out;
    out.leak_factor = c;
    out.alpha_raw = -c * sin_k + root_c * sin_k1;
    out.tau_raw = sin_k + root_c * sin_k1;

    // Dividing by sin(phi) turns both into real Chebyshev polynomials of
    // cos_phi, which pins the overall sign in the saturation regime where the
    // raw values are purely imaginary. At the critical point that quotient is
    // 0/0, so the polynomial form is evaluated directly.
    cplx a;
    cplx t;
    if (pp.regime == Regime::Critical) {
        const double u_k = chebyshev_ratio(cycle_index, pp.cos_phi);
        const double u_k1 = chebyshev_ratio(cycle_index + 1, pp.cos_phi);
        a = -c * u_k + root_c * u_k1;
        t = u_k + root_c * u_k1;
    } else {
        const cplx sin_phi = std::sin(pp.phi);
        if (std::abs(sin_phi) < 1e-300) {
            throw NormalizationUnderflow("sin(phi) vanished");
        }
        a = out.alpha_raw / sin_phi;
        t = out.tau_raw / sin_phi;
    }
    const double scale = std::max(std::abs(a), std::abs(t));
    if (!std::isfinite(scale)) {
        throw std::overflow_error("closed-form amplitudes overflowed at k=" +
                                  std::to_string(cycle_index));
    }
    if (scale < 1e-300) {
        throw NormalizationUnderflow("closed-form normalizer underflowed");
    }
    a /= scale;
    t /= scale;
    const cplx norm = std::sqrt(static_cast<double>(n_boxes - 1) * a * a + t * t);
    if (std::abs(norm) < 1e-300) {
        throw NormalizationUnderflow("closed-form normalizer underflowed");
    }
    const cplx alpha = a / norm;
    const cplx tau = t / norm;
    out.imaginary_residue = std::max(std::abs(alpha.imag()), std::abs(tau.imag()));
    if (out.imaginary_residue >= kImaginaryTolerance) {
        throw std::domain_error("closed-form amplitudes are not real (residue " +
                                std::to_string(out.imaginary_residue) + ")");
    }
    out.alpha = alpha.real();
    out.tau = tau.real();
    return out;
}

Survival survival(std::size_t n_boxes, std::size_t small_cycles, double theta,
                  std::size_t cycle_index) {
    const double c = leak_factor(small_cycles, theta);
    require_pi_over_m(small_cycles, theta);
    const double per_target_loss = 1.0 - c * c;
    Survival out;
    for (std::size_t i = 0; i < cycle_index; ++i) {
        const double tau = amplitudes(n_boxes, small_cycles, theta, i).tau;
        out.cumulative *= 1.0 - tau * tau * per_target_loss;
    }
    out.lower_bound = std::pow(c, 2.0 * static_cast<double>(cycle_index));
    return out;
}

double success_probability(std::size_t n_boxes, std::size_t small_cycles, double theta,
                           std::size_t cycle_index) {
    const double tau = amplitudes(n_boxes, small_cycles, theta, cycle_index).tau;
    return survival(n_boxes, small_cycles, theta, cycle_index).cumulative * tau * tau;
}

}  // namespace ifmsearch::closed_form
