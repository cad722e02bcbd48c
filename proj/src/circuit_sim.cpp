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
#include <numeric>
#include <stdexcept>
#include <string>

#include "ifmsearch/circuit_sim.hpp"

namespace ifmsearch {

struct StateOps {
    static void rotate(PolarizedState& s, double angle) {
        const double c = std::cos(angle);
        const double sn = std::sin(angle);
        for (std::size_t i = 0; i < s.h_.size(); ++i) {
            const double h = s.h_[i];
            const double v = s.v_[i];
            s.h_[i] = c * h - sn * v;
            s.v_[i] = sn * h + c * v;
        }
    }

    // Removes the V amplitude of `mode`; returns the removed probability
    // relative to the normalized state.
    static double absorb_v(PolarizedState& s, std::size_t mode, bool explosion) {
        const double total = s.raw_norm_sq();
        if (total == 0.0) {
            return 0.0;
        }
        const double removed = s.v_[mode] * s.v_[mode];
        s.v_[mode] = 0.0;
        return account(s, removed / total, explosion);
    }

    static double project_h(PolarizedState& s) {
        const double total = s.raw_norm_sq();
        if (total == 0.0) {
            return 0.0;
        }
        double removed = 0.0;
        for (double& v : s.v_) {
            removed += v * v;
            v = 0.0;
        }
        return account(s, removed / total, false);
    }

    static double account(PolarizedState& s, double p, bool explosion) {
        p = std::min(std::max(p, 0.0), 1.0);
        const double dropped = s.survival_ * p;
        (explosion ? s.exploded_ : s.lost_) += dropped;
        s.survival_ -= dropped;
        return p;
    }

    static std::vector<double>& h(PolarizedState& s) { return s.h_; }
    static void renormalize(PolarizedState& s) { s.renormalize(); }
};

PolarizedState PolarizedState::uniform(std::size_t n_boxes) {
    if (n_boxes < 2) {
        throw std::invalid_argument("n_boxes must be >= 2 (got " + std::to_string(n_boxes) + ")");
    }
    PolarizedState s;
    s.h_.assign(n_boxes, 1.0 / std::sqrt(static_cast<double>(n_boxes)));
    s.v_.assign(n_boxes, 0.0);
    return s;
}

PolarizedState PolarizedState::from_amplitudes(std::vector<double> h, std::vector<double> v) {
    if (h.size() != v.size() || h.size() < 2) {
        throw std::invalid_argument("h and v must have equal length >= 2");
    }
    PolarizedState s;
    s.h_ = std::move(h);
    s.v_ = std::move(v);
    if (!(s.raw_norm_sq() > 0.0)) {
        throw std::invalid_argument("state must have nonzero norm");
    }
    s.renormalize();
    return s;
}

double PolarizedState::raw_norm_sq() const {
    double total = 0.0;
    for (std::size_t i = 0; i < h_.size(); ++i) {
        total += h_[i] * h_[i] + v_[i] * v_[i];
    }
    return total;
}

void PolarizedState::renormalize() {
    const double total = raw_norm_sq();
    if (total == 0.0) {
        return;
    }
    const double scale = 1.0 / std::sqrt(total);
    for (std::size_t i = 0; i < h_.size(); ++i) {
        h_[i] *= scale;
        v_[i] *= scale;
    }
}

double PolarizedState::h(std::size_t mode) const {
    const double total = raw_norm_sq();
    return total == 0.0 ? 0.0 : h_.at(mode) / std::sqrt(total);
}

double PolarizedState::v(std::size_t mode) const {
    const double total = raw_norm_sq();
    return total == 0.0 ? 0.0 : v_.at(mode) / std::sqrt(total);
}

std::vector<double> PolarizedState::h_amplitudes() const {
    std::vector<double> out(h_);
    const double total = raw_norm_sq();
    if (total > 0.0) {
        const double scale = 1.0 / std::sqrt(total);
        for (double& x : out) x *= scale;
    }
    return out;
}

std::vector<double> PolarizedState::v_amplitudes() const {
    std::vector<double> out(v_);
    const double total = raw_norm_sq();
    if (total > 0.0) {
        const double scale = 1.0 / std::sqrt(total);
        for (double& x : out) x *= scale;
    }
    return out;
}

double PolarizedState::mode_probability(std::size_t mode) const {
    const double total = raw_norm_sq();
    if (total == 0.0) {
        return 0.0;
    }
    return (h_.at(mode) * h_[mode] + v_.at(mode) * v_[mode]) / total;
}

double PolarizedState::norm_sq() const {
    const double total = raw_norm_sq();
    if (total == 0.0) {
        return 0.0;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < h_.size(); ++i) {
        const double a = h_[i] / std::sqrt(total);
        const double b = v_[i] / std::sqrt(total);
        sum += a * a + b * b;
    }
    return sum;
}

bool PolarizedState::is_h_polarized(double tol) const {
    const double total = raw_norm_sq();
    if (total == 0.0) {
        return true;
    }
    double v_mass = 0.0;
    for (double v : v_) v_mass += v * v;
    return v_mass <= tol * tol * total;
}

SmallCycleResult small_cycle(const PolarizedState& state, double theta, std::size_t target) {
    if (target >= state.n_boxes()) {
        throw std::invalid_argument("target must lie in [0, n_boxes)");
    }
    PolarizedState next = state;
    StateOps::rotate(next, theta);
    const double p = StateOps::absorb_v(next, target, true);
    return {std::move(next), p};
}

OracleResult leaky_oracle(const PolarizedState& state, std::size_t small_cycles, double theta,
                          std::size_t target) {
    if (target >= state.n_boxes()) {
        throw std::invalid_argument("target must lie in [0, n_boxes)");
    }
    if (!state.is_h_polarized()) {
        throw std::invalid_argument("leaky_oracle requires an H-polarized input state");
    }
    OracleResult out{state, 1.0, {}, 0.0};
    out.explosion_probabilities.reserve(small_cycles);
    for (std::size_t s = 0; s < small_cycles; ++s) {
        StateOps::rotate(out.state, theta);
        const double p = StateOps::absorb_v(out.state, target, true);
        out.explosion_probabilities.push_back(p);
        out.cycle_survival *= 1.0 - p;
    }
    StateOps::rotate(out.state, -static_cast<double>(small_cycles) * theta);
    out.loss_probability = StateOps::project_h(out.state);
    out.cycle_survival *= 1.0 - out.loss_probability;
    StateOps::renormalize(out.state);
    return out;
}

PolarizedState inversion_about_average(const PolarizedState& state) {
    if (!state.is_h_polarized()) {
        throw std::invalid_argument("inversion_about_average requires an H-polarized state");
    }
    PolarizedState next = state;
    std::vector<double>& h = StateOps::h(next);
    const std::size_t n = h.size();
    const double w = 2.0 / static_cast<double>(n);

    // 2 mean - h_i = w * (sum over j != i) - (1 - w) h_i. The exclusive sums are
    // built from prefix and suffix sums so no h_i is added and subtracted back.
    std::vector<double> prefix(n + 1, 0.0);
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + h[i];
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + h[i];
    const std::vector<double> old = h;
    for (std::size_t i = 0; i < n; ++i) {
        h[i] = w * (prefix[i] + suffix[i + 1]) - (1.0 - w) * old[i];
    }
    return next;
}

SearchTrace run_search(const SearchParams& params) {
    params.validate();
    const std::size_t other = params.target == 0 ? 1 : 0;
    SearchTrace trace{params, {}, PolarizedState::uniform(params.n_boxes)};
    trace.records.reserve(params.large_cycles);
    for (std::size_t j = 1; j <= params.large_cycles; ++j) {
        OracleResult oracle =
            leaky_oracle(trace.final_state, params.small_cycles, params.theta, params.target);
        trace.final_state = inversion_about_average(oracle.state);
        const PolarizedState& s = trace.final_state;
        LargeCycleRecord rec;
        rec.cycle_index = j;
        rec.tau = s.h(params.target);
        rec.alpha = s.h(other);
        rec.cycle_survival = oracle.cycle_survival;
        rec.cumulative_survival = s.survival();
        rec.success_probability = s.survival() * rec.tau * rec.tau;
        rec.cumulative_explosion = s.exploded();
        rec.cumulative_loss = s.lost();
        trace.records.push_back(rec);
    }
    return trace;
}

double SearchTrace::tau(std::size_t k) const {
    if (k == 0) return 1.0 / std::sqrt(static_cast<double>(params.n_boxes));
    return records.at(k - 1).tau;
}

double SearchTrace::alpha(std::size_t k) const {
    if (k == 0) return 1.0 / std::sqrt(static_cast<double>(params.n_boxes));
    return records.at(k - 1).alpha;
}

double SearchTrace::survival(std::size_t k) const {
    if (k == 0) return 1.0;
    return records.at(k - 1).cumulative_survival;
}

double SearchTrace::success(std::size_t k) const {
    if (k == 0) return 1.0 / static_cast<double>(params.n_boxes);
    return records.at(k - 1).success_probability;
}

}  // namespace ifmsearch
