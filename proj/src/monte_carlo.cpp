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
#include <stdexcept>
#include <thread>

#include "ifmsearch/circuit_sim.hpp"

namespace ifmsearch {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Conditional event probabilities along the single surviving branch. Every
// surviving trajectory shares the same conditional state, so sampling only
// needs these numbers.
struct TrajectoryPlan {
    std::vector<std::vector<double>> explode;  // [large][small], conditional
    std::vector<double> loss;                  // [large], conditional
    std::vector<double> mode_cdf;              // final detection distribution
};

TrajectoryPlan plan_for(const SearchParams& params) {
    params.validate();
    TrajectoryPlan plan;
    PolarizedState state = PolarizedState::uniform(params.n_boxes);
    for (std::size_t j = 0; j < params.large_cycles; ++j) {
        OracleResult oracle = leaky_oracle(state, params.small_cycles, params.theta, params.target);
        plan.explode.push_back(oracle.explosion_probabilities);
        plan.loss.push_back(oracle.loss_probability);
        state = inversion_about_average(oracle.state);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < params.n_boxes; ++i) {
        acc += state.mode_probability(i);
        plan.mode_cdf.push_back(acc);
    }
    return plan;
}

void run_trials(const TrajectoryPlan& plan, std::uint64_t seed, std::uint64_t begin,
                std::uint64_t end, OutcomeDistribution& out) {
    for (std::uint64_t trial = begin; trial < end; ++trial) {
        SplitMix64 rng = SplitMix64::for_stream(seed, trial);
        bool alive = true;
        for (std::size_t j = 0; j < plan.explode.size() && alive; ++j) {
            for (std::size_t s = 0; s < plan.explode[j].size(); ++s) {
                if (rng.uniform() < plan.explode[j][s]) {
                    ++out.explosions[{j + 1, s + 1}];
                    alive = false;
                    break;
                }
            }
            if (alive && plan.loss[j] > 0.0 && rng.uniform() < plan.loss[j]) {
                ++out.lost;
                alive = false;
            }
        }
        if (!alive) {
            continue;
        }
        const double u = rng.uniform() * plan.mode_cdf.back();
        const auto it = std::upper_bound(plan.mode_cdf.begin(), plan.mode_cdf.end(), u);
        const std::size_t mode = std::min<std::size_t>(
            static_cast<std::size_t>(it - plan.mode_cdf.begin()), plan.mode_cdf.size() - 1);
        ++out.detections[mode];
    }
}

}  // namespace

SplitMix64 SplitMix64::for_stream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(mix64(seed ^ mix64(stream + 0x9e3779b97f4a7c15ULL)));
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t OutcomeDistribution::total_explosions() const {
    std::uint64_t n = 0;
    for (const auto& [cell, count] : explosions) n += count;
    return n;
}

std::uint64_t OutcomeDistribution::total_detections() const {
    std::uint64_t n = 0;
    for (const auto& [mode, count] : detections) n += count;
    return n;
}

std::uint64_t OutcomeDistribution::detections_in(std::size_t mode) const {
    const auto it = detections.find(mode);
    return it == detections.end() ? 0 : it->second;
}

double OutcomeProbabilities::total_explosion() const {
    double p = 0.0;
    for (const auto& [cell, prob] : explosions) p += prob;
    return p;
}

OutcomeProbabilities outcome_probabilities(const SearchParams& params) {
    const TrajectoryPlan plan = plan_for(params);
    OutcomeProbabilities out;
    double alive = 1.0;
    for (std::size_t j = 0; j < plan.explode.size(); ++j) {
        for (std::size_t s = 0; s < plan.explode[j].size(); ++s) {
            out.explosions[{j + 1, s + 1}] = alive * plan.explode[j][s];
            alive *= 1.0 - plan.explode[j][s];
        }
        out.lost += alive * plan.loss[j];
        alive *= 1.0 - plan.loss[j];
    }
    double prev = 0.0;
    for (double c : plan.mode_cdf) {
        out.detections.push_back(alive * (c - prev) / plan.mode_cdf.back());
        prev = c;
    }
    return out;
}

OutcomeDistribution monte_carlo(const SearchParams& params, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads) {
    if (trials == 0) {
        throw std::invalid_argument("trials must be >= 1");
    }
    const TrajectoryPlan plan = plan_for(params);
    const std::uint64_t workers = std::clamp<std::uint64_t>(threads, 1, trials);
    std::vector<OutcomeDistribution> partial(workers);
    {
        std::vector<std::jthread> pool;
        for (std::uint64_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = trials * w / workers;
            const std::uint64_t end = trials * (w + 1) / workers;
            pool.emplace_back(
                [&plan, &partial, seed, begin, end, w] { run_trials(plan, seed, begin, end, partial[w]); });
        }
    }
    OutcomeDistribution out;
    out.trials = trials;
    for (const OutcomeDistribution& p : partial) {
        for (const auto& [cell, count] : p.explosions) out.explosions[cell] += count;
        for (const auto& [mode, count] : p.detections) out.detections[mode] += count;
        out.lost += p.lost;
    }
    return out;
}

}  // namespace ifmsearch
