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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ifmsearch/closed_form.hpp"
#include "ifmsearch/params.hpp"

namespace ifmsearch::analysis {

/// Upper end of the k range for a given N: either a constant or ceil(factor * sqrt N).
class KMaxRule {
   public:
    static KMaxRule fixed(std::size_t k_max);
    static KMaxRule sqrt_scaled(double factor);

    std::size_t evaluate(std::size_t n_boxes) const;
    bool is_fixed() const { return fixed_.has_value(); }

   private:
    std::optional<std::size_t> fixed_;
    double factor_ = 0.0;
};

struct SweepGrid {
    std::vector<std::size_t> n_values;
    std::vector<std::size_t> m_values;
    KMaxRule k_max_rule = KMaxRule::sqrt_scaled(2.0);
    ThetaMode theta_mode = ThetaMode::PiOverM;

    /// N in {2, 4, 8, 15, 16, 32, 64}, M in {2, 3, 4, 8, 9, 12, 16, 32}, k <= ceil(2 sqrt N).
    static SweepGrid default_grid();

    void validate() const;
};

struct GridPoint {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t k = 0;

    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct ValidationPoint {
    GridPoint point;
    double diff_tau = 0.0;
    double diff_survival = 0.0;
    double circuit_survival = 0.0;
    double survival_lower_bound = 0.0;
};

inline constexpr double kValidationThreshold = 1e-10;

struct ValidationReport {
    SweepGrid grid;
    double max_abs_diff_tau = 0.0;
    double max_abs_diff_survival = 0.0;
    GridPoint worst_point;
    bool passed = true;
    /// Sorted by (N, M, k).
    std::vector<ValidationPoint> points;
    /// (N, M) pairs where the closed form is inapplicable (leak factor <= 0).
    std::vector<std::pair<std::size_t, std::size_t>> skipped;
};

/// Circuit simulation against the closed form at every grid point.
ValidationReport validate_grid(const SweepGrid& grid, unsigned threads = 1);

struct Fig3Row {
    std::size_t m = 0;
    std::size_t k = 0;
    double tau = 0.0;
    double survival = 0.0;
    double success = 0.0;
};

struct Fig3Dataset {
    std::size_t n_boxes = 0;
    std::vector<Fig3Row> rows;  // ordered by (m as given, k)
    std::map<std::size_t, closed_form::Regime> regimes;
};

Fig3Dataset fig3_dataset(std::size_t n_boxes, const std::vector<std::size_t>& m_values,
                         std::size_t k_max);

struct OptimalK {
    std::size_t k_star = 0;
    double success = 0.0;
};

inline constexpr double kPlateauTolerance = 1e-12;

/// Smallest k in [0, ceil(4 sqrt N)] whose success is within 1e-12 of the maximum.
OptimalK optimal_k(std::size_t n_boxes, std::size_t small_cycles);

/// Closed-form success at fixed (N, k) for each M, theta = pi/M.
std::vector<std::pair<std::size_t, double>> asymptotic_probe(
    std::size_t n_boxes, std::size_t k, const std::vector<std::size_t>& m_values);

struct SweepRow {
    std::size_t n = 0;
    std::size_t m = 0;
    double cos_phi = 0.0;
    closed_form::Regime regime = closed_form::Regime::Oscillation;
    std::size_t k_star = 0;
    double success = 0.0;
    double grover_at_k_star = 0.0;
};

/// (N, M_smaller, M_larger) where raising M raised the optimal k by more than one.
struct OptimalKFinding {
    std::size_t n = 0;
    std::size_t m_from = 0;
    std::size_t m_to = 0;
    std::size_t k_from = 0;
    std::size_t k_to = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;  // sorted by (N, M)
    std::vector<std::pair<std::size_t, std::size_t>> skipped;
    std::vector<OptimalKFinding> findings;
};

/// Regime and optimal k for every (N, M) of the grid.
SweepResult sweep(const SweepGrid& grid, unsigned threads = 1);

}  // namespace ifmsearch::analysis
