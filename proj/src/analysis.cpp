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
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ifmsearch/analysis.hpp"
#include "ifmsearch/baselines.hpp"
#include "ifmsearch/circuit_sim.hpp"

namespace ifmsearch::analysis {

namespace {

using Pair = std::pair<std::size_t, std::size_t>;

std::vector<Pair> grid_pairs(const SweepGrid& grid) {
    std::vector<Pair> pairs;
    for (std::size_t n : grid.n_values) {
        for (std::size_t m : grid.m_values) {
            pairs.emplace_back(n, m);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index
// writes only its own output slot, so the result is schedule-independent.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) fn(i);
        });
    }
}

struct PairValidation {
    std::vector<ValidationPoint> points;
    bool skipped = false;
};

PairValidation validate_pair(std::size_t n, std::size_t m, std::size_t k_max) {
    PairValidation out;
    const double theta = resolve_theta(ThetaMode::PiOverM, m);
    try {
        (void)closed_form::leak_factor(m, theta);
    } catch (const DegenerateLeak&) {
        out.skipped = true;
        return out;
    }
    const SearchTrace trace = run_search(SearchParams::make(n, m, theta, k_max));
    for (std::size_t k = 0; k <= k_max; ++k) {
        const double tau = closed_form::amplitudes(n, m, theta, k).tau;
        const closed_form::Survival surv = closed_form::survival(n, m, theta, k);
        ValidationPoint vp;
        vp.point = {n, m, k};
        vp.diff_tau = std::abs(trace.tau(k) - tau);
        vp.diff_survival = std::abs(trace.survival(k) - surv.cumulative);
        vp.circuit_survival = trace.survival(k);
        vp.survival_lower_bound = surv.lower_bound;
        out.points.push_back(vp);
    }
    return out;
}

}  // namespace

KMaxRule KMaxRule::fixed(std::size_t k_max) {
    KMaxRule rule;
    rule.fixed_ = k_max;
    return rule;
}

KMaxRule KMaxRule::sqrt_scaled(double factor) {
    if (!(factor > 0.0)) {
        throw std::invalid_argument("k_max factor must be positive");
    }
    KMaxRule rule;
    rule.factor_ = factor;
    return rule;
}

std::size_t KMaxRule::evaluate(std::size_t n_boxes) const {
    if (fixed_) {
        return *fixed_;
    }
    return static_cast<std::size_t>(std::ceil(factor_ * std::sqrt(static_cast<double>(n_boxes))));
}

SweepGrid SweepGrid::default_grid() {
    return SweepGrid{{2, 4, 8, 15, 16, 32, 64},
                     {2, 3, 4, 8, 9, 12, 16, 32},
                     KMaxRule::sqrt_scaled(2.0),
                     ThetaMode::PiOverM};
}

void SweepGrid::validate() const {
    if (n_values.empty() || m_values.empty()) {
        throw std::invalid_argument("sweep grid needs at least one N and one M");
    }
    for (std::size_t n : n_values) {
        if (n < 2) throw std::invalid_argument("grid N values must be >= 2");
    }
    for (std::size_t m : m_values) {
        if (m < 1) throw std::invalid_argument("grid M values must be >= 1");
    }
}

ValidationReport validate_grid(const SweepGrid& grid, unsigned threads) {
    grid.validate();
    if (grid.theta_mode != ThetaMode::PiOverM) {
        throw std::invalid_argument("validation requires theta = pi/M");
    }
    const std::vector<Pair> pairs = grid_pairs(grid);
    std::vector<PairValidation> results(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const auto [n, m] = pairs[i];
        results[i] = validate_pair(n, m, grid.k_max_rule.evaluate(n));
    });

    ValidationReport report;
    report.grid = grid;
    bool have_worst = false;
    double worst = -1.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (results[i].skipped) {
            report.skipped.push_back(pairs[i]);
            continue;
        }
        for (const ValidationPoint& vp : results[i].points) {
            report.max_abs_diff_tau = std::max(report.max_abs_diff_tau, vp.diff_tau);
            report.max_abs_diff_survival = std::max(report.max_abs_diff_survival, vp.diff_survival);
            const double score = std::max(vp.diff_tau, vp.diff_survival);
            if (!have_worst || score > worst) {
                worst = score;
                report.worst_point = vp.point;
                have_worst = true;
            }
            report.points.push_back(vp);
        }
    }
    report.passed = report.max_abs_diff_tau <= kValidationThreshold &&
                    report.max_abs_diff_survival <= kValidationThreshold;
    return report;
}

Fig3Dataset fig3_dataset(std::size_t n_boxes, const std::vector<std::size_t>& m_values,
                         std::size_t k_max) {
    Fig3Dataset out;
    out.n_boxes = n_boxes;
    for (std::size_t m : m_values) {
        const double theta = resolve_theta(ThetaMode::PiOverM, m);
        out.regimes[m] = closed_form::phase_parameter(n_boxes, m, theta).regime;
        double survival = 1.0;
        const double per_target_loss = 1.0 - std::pow(closed_form::leak_factor(m, theta), 2.0);
        for (std::size_t k = 0; k <= k_max; ++k) {
            const double tau = closed_form::amplitudes(n_boxes, m, theta, k).tau;
            out.rows.push_back({m, k, tau, survival, survival * tau * tau});
            survival *= 1.0 - tau * tau * per_target_loss;
        }
    }
    return out;
}

OptimalK optimal_k(std::size_t n_boxes, std::size_t small_cycles) {
    const std::size_t k_limit =
        static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(static_cast<double>(n_boxes))));
    const Fig3Dataset curve = fig3_dataset(n_boxes, {small_cycles}, k_limit);
    double best = 0.0;
    for (const Fig3Row& row : curve.rows) best = std::max(best, row.success);
    for (const Fig3Row& row : curve.rows) {
        if (row.success >= best - kPlateauTolerance) {
            return {row.k, row.success};
        }
    }
    return {0, curve.rows.front().success};
}

std::vector<std::pair<std::size_t, double>> asymptotic_probe(
    std::size_t n_boxes, std::size_t k, const std::vector<std::size_t>& m_values) {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(m_values.size());
    for (std::size_t m : m_values) {
        const double theta = resolve_theta(ThetaMode::PiOverM, m);
        out.emplace_back(m, closed_form::success_probability(n_boxes, m, theta, k));
    }
    return out;
}

SweepResult sweep(const SweepGrid& grid, unsigned threads) {
    grid.validate();
    if (grid.theta_mode != ThetaMode::PiOverM) {
        throw std::invalid_argument("sweep requires theta = pi/M");
    }
    const std::vector<Pair> pairs = grid_pairs(grid);
    std::vector<std::optional<SweepRow>> rows(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i) {
        const auto [n, m] = pairs[i];
        const double theta = resolve_theta(ThetaMode::PiOverM, m);
        try {
            const closed_form::PhaseParameter pp = closed_form::phase_parameter(n, m, theta);
            const OptimalK best = optimal_k(n, m);
            rows[i] = SweepRow{n, m, pp.cos_phi, pp.regime, best.k_star, best.success,
                               baselines::grover_success(n, best.k_star)};
        } catch (const DegenerateLeak&) {
            rows[i].reset();
        }
    });

    SweepResult out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (rows[i]) {
            out.rows.push_back(*rows[i]);
        } else {
            out.skipped.push_back(pairs[i]);
        }
    }
    // Rows are sorted by (N, M), so consecutive rows with equal N step up in M.
    for (std::size_t i = 1; i < out.rows.size(); ++i) {
        const SweepRow& a = out.rows[i - 1];
        const SweepRow& b = out.rows[i];
        if (a.n == b.n && b.k_star > a.k_star + 1) {
            out.findings.push_back({a.n, a.m, b.m, a.k_star, b.k_star});
        }
    }
    return out;
}

}  // namespace ifmsearch::analysis
