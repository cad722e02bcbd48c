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
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ifmsearch/params.hpp"

namespace ifmsearch {

/**
 * Conditional (post-selected) photon state over N spatial modes, each carrying
 * an H and a V polarization amplitude.
 *
 * Amplitudes are stored unnormalized; every accessor returns the normalized
 * view. The probability bookkeeping is kept alongside so that
 * exploded() + lost() + survival() == 1 for any state reachable from
 * uniform().
 */
class PolarizedState {
   public:
    /// |psi0> = (1/sqrt N) sum_i |H_i>. Rejects N < 2.
    static PolarizedState uniform(std::size_t n_boxes);

    /// Arbitrary starting amplitudes (need not be normalized, must be nonzero).
    static PolarizedState from_amplitudes(std::vector<double> h, std::vector<double> v);

    std::size_t n_boxes() const { return h_.size(); }

    double h(std::size_t mode) const;
    double v(std::size_t mode) const;
    std::vector<double> h_amplitudes() const;
    std::vector<double> v_amplitudes() const;

    /// Probability of the mode-basis outcome `mode` (|h|^2 + |v|^2, normalized).
    double mode_probability(std::size_t mode) const;

    /// Product of all no-explosion and retained-after-projection probabilities.
    double survival() const { return survival_; }
    double exploded() const { return exploded_; }
    double lost() const { return lost_; }

    /// Sum of squared normalized amplitudes; 1 up to rounding.
    double norm_sq() const;

    bool is_h_polarized(double tol = 1e-12) const;

   private:
    friend struct StateOps;

    PolarizedState() = default;
    double raw_norm_sq() const;
    void renormalize();

    std::vector<double> h_;
    std::vector<double> v_;
    double survival_ = 1.0;
    double exploded_ = 0.0;
    double lost_ = 0.0;
};

struct SmallCycleResult {
    PolarizedState state;
    double explosion_probability;
};

/// Rotate every mode by theta, then absorb the target's V amplitude.
SmallCycleResult small_cycle(const PolarizedState& state, double theta, std::size_t target);

struct OracleResult {
    PolarizedState state;
    /// Probability of neither exploding nor being rejected by the final H projection.
    double cycle_survival;
    /// Conditional explosion probability of each small cycle, given survival so far.
    std::vector<double> explosion_probabilities;
    /// Conditional probability of being rejected by the final projection.
    double loss_probability;
};

/**
 * M small cycles, then a uniform repolarization by -M*theta and a projection
 * onto H. Non-target modes come back with factor +1, the target with
 * cos(M theta) cos^M(theta); for theta = pi/M that is -cos^M(theta).
 */
OracleResult leaky_oracle(const PolarizedState& state, std::size_t small_cycles, double theta,
                          std::size_t target);

/// h_i -> 2 mean(h) - h_i. Requires an H-polarized state.
PolarizedState inversion_about_average(const PolarizedState& state);

struct LargeCycleRecord {
    std::size_t cycle_index = 0;
    double tau = 0.0;
    double alpha = 0.0;
    double cycle_survival = 1.0;
    double cumulative_survival = 1.0;
    double success_probability = 0.0;
    double cumulative_explosion = 0.0;
    double cumulative_loss = 0.0;
};

/// Records for k = 1..large_cycles; k = 0 is implicit (uniform state, survival 1).
struct SearchTrace {
    SearchParams params;
    std::vector<LargeCycleRecord> records;
    PolarizedState final_state;

    double tau(std::size_t k) const;
    double alpha(std::size_t k) const;
    double survival(std::size_t k) const;
    double success(std::size_t k) const;
};

SearchTrace run_search(const SearchParams& params);

/// Empirical outcome tallies. Cycle indices are 1-based.
struct OutcomeDistribution {
    std::uint64_t trials = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> explosions;
    std::map<std::size_t, std::uint64_t> detections;
    /// Trajectories rejected by the end-of-oracle H projection (zero for
    /// theta = pi/M and theta = pi/2M up to rounding).
    std::uint64_t lost = 0;

    std::uint64_t total_explosions() const;
    std::uint64_t total_detections() const;
    std::uint64_t detections_in(std::size_t mode) const;
};

/// Exact outcome probabilities matching OutcomeDistribution's cells.
struct OutcomeProbabilities {
    std::map<std::pair<std::size_t, std::size_t>, double> explosions;
    std::vector<double> detections;
    double lost = 0.0;

    double total_explosion() const;
};

OutcomeProbabilities outcome_probabilities(const SearchParams& params);

/// Seeded trajectory sampling; trajectory i draws from a stream derived from
/// (seed, i), so results do not depend on `threads`.
OutcomeDistribution monte_carlo(const SearchParams& params, std::uint64_t trials,
                                std::uint64_t seed, unsigned threads = 1);

/// SplitMix64, used per trajectory.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}
    static SplitMix64 for_stream(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();

   private:
    std::uint64_t state_;
};

}  // namespace ifmsearch
