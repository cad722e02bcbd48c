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

// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "ifmsearch/analysis.hpp"
#include "ifmsearch/baselines.hpp"
#include "ifmsearch/circuit_sim.hpp"
#include "ifmsearch/closed_form.hpp"

using namespace ifmsearch;

namespace {

constexpr double kPi = std::numbers::pi;

struct Result {
    bool ok = true;
    std::ostringstream detail;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

// Best-of-n wall time in milliseconds.
double best_ms(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

bool within_sigmas(std::uint64_t count, std::uint64_t trials, double p, double sigmas,
                   double* z_out) {
    const double t = static_cast<double>(trials);
    const double sd = std::sqrt(t * p * (1.0 - p));
    const double dev = std::abs(static_cast<double>(count) - t * p);
    *z_out = sd > 0.0 ? dev / sd : (dev == 0.0 ? 0.0 : INFINITY);
    return dev <= sigmas * sd || dev == 0.0;
}

Result criterion1() {
    Result r;
    const SearchParams p = SearchParams::make(4, 1, ThetaMode::PiOver2M, 1);
    const SearchTrace t = run_search(p);
    const double success = t.success(1);
    const double ms = best_ms(20, [&] { (void)run_search(p); });
    r.check(std::abs(success - 0.5625) <= 1e-9, "success 0.5625");
    r.check(std::abs(t.survival(1) - 0.75) <= 1e-9, "survival 0.75");
    r.check(std::abs(t.tau(1) * t.tau(1) - 0.75) <= 1e-9, "tau^2 0.75");
    r.check(ms < 1.0, "runtime < 1 ms");
    r.detail << " success=" << success << " survival=" << t.survival(1)
             << " tau^2=" << t.tau(1) * t.tau(1) << " time_ms=" << ms;
    return r;
}

Result criterion2() {
    Result r;
    const SearchParams p = SearchParams::make(15, 3, ThetaMode::PiOverM, 1);
    const SearchTrace t = run_search(p);
    const double success = t.success(1);
    const double cf = closed_form::success_probability(15, 3, p.theta, 1);
    const double ms = best_ms(20, [&] { (void)run_search(p); });
    r.check(success >= 0.255 && success <= 0.265, "success in [0.255, 0.265]");
    r.check(std::abs(success - cf) <= 1e-10, "circuit == closed form");
    r.check(std::abs(t.records[0].cycle_survival - 0.934375) <= 1e-12, "cycle survival");
    r.check(ms < 1.0, "runtime < 1 ms");
    r.detail << " success=" << success << " closed_form=" << cf
             << " cycle_survival=" << t.records[0].cycle_survival << " time_ms=" << ms;
    return r;
}

Result criterion3() {
    Result r;
    const double g15 = baselines::grover_success(15, 3);
    const double g4 = baselines::grover_success(4, 1);
    const double c15 = baselines::classical_success(15, 3);
    const double c4 = baselines::classical_success(4, 1);
    r.check(std::abs(g15 - 0.935) <= 5e-4, "grover(15,3) ~ 0.935");
    r.check(std::abs(g4 - 1.0) <= 1e-12, "grover(4,1) == 1");
    r.check(std::abs(c15 - 0.2) <= 1e-15, "classical(15,3) == 0.2");
    r.check(std::abs(c4 - 0.25) <= 1e-15, "classical(4,1) == 0.25");
    r.detail << " grover15=" << g15 << " grover4=" << g4 << " classical15=" << c15
             << " classical4=" << c4;
    return r;
}

Result criterion4() {
    Result r;
    using closed_form::Regime;
    const auto p9 = closed_form::phase_parameter(64, 9, kPi / 9);
    const auto p12 = closed_form::phase_parameter(64, 12, kPi / 12);
    const auto p32 = closed_form::phase_parameter(64, 32, kPi / 32);
    r.check(p9.regime == Regime::Saturation, "(64,9) saturation");
    r.check(p12.regime == Regime::Oscillation, "(64,12) oscillation");
    r.check(p32.regime == Regime::Oscillation, "(64,32) oscillation");
    r.check(std::abs(p9.cos_phi - 1.0070) <= 1e-4, "cos_phi(64,9) ~ 1.0070");
    r.check(std::abs(p12.cos_phi - 0.9898) <= 1e-4, "cos_phi(64,12) ~ 0.9898");
    r.detail << " cos_phi(9)=" << p9.cos_phi << " cos_phi(12)=" << p12.cos_phi
             << " cos_phi(32)=" << p32.cos_phi;
    return r;
}

Result criteria5and6(Result& c6) {
    Result r;
    analysis::ValidationReport report;
    const double ms = best_ms(1, [&] {
        report = analysis::validate_grid(analysis::SweepGrid::default_grid(), 1);
    });
    r.check(report.max_abs_diff_tau <= 1e-10, "max |dtau| <= 1e-10");
    r.check(report.max_abs_diff_survival <= 1e-10, "max |dsurvival| <= 1e-10");
    r.check(report.passed, "report passed");
    r.check(ms < 10000.0, "runtime < 10 s");
    r.check(!report.points.empty(), "non-empty grid");
    r.detail << " points=" << report.points.size() << " max_dtau=" << report.max_abs_diff_tau
             << " max_dsurvival=" << report.max_abs_diff_survival
             << " skipped_pairs=" << report.skipped.size() << " time_ms=" << ms;

    double worst_margin = 1e300;
    for (const analysis::ValidationPoint& vp : report.points) {
        const double margin = vp.circuit_survival - vp.survival_lower_bound;
        worst_margin = std::min(worst_margin, margin);
        if (margin < -1e-12) {
            c6.check(false, "bound at n=" + std::to_string(vp.point.n) +
                                " m=" + std::to_string(vp.point.m) +
                                " k=" + std::to_string(vp.point.k));
        }
    }
    c6.check(!report.points.empty(), "non-empty grid");
    c6.detail << " points=" << report.points.size() << " min(survival - bound)=" << worst_margin;
    return r;
}

Result criterion7() {
    Result r;
    const auto probe = analysis::asymptotic_probe(1024, 25, {100, 400, 1600});
    const double grover = baselines::grover_success(1024, 25);
    for (std::size_t i = 1; i < probe.size(); ++i) {
        r.check(probe[i].second > probe[i - 1].second, "increasing in M");
    }
    r.check(probe.back().second > 0.9, "M=1600 > 0.9");
    r.check(probe.back().second < grover, "below Grover reference");
    for (const auto& [m, s] : probe) r.detail << " M" << m << "=" << s;
    r.detail << " grover=" << grover;
    return r;
}

void mc_case(Result& r, const SearchParams& p, const std::string& label) {
    constexpr std::uint64_t kTrials = 100000;
    constexpr std::uint64_t kSeed = 12345;
    const OutcomeDistribution a = monte_carlo(p, kTrials, kSeed, 1);
    const OutcomeDistribution b = monte_carlo(p, kTrials, kSeed, 4);
    const OutcomeProbabilities exact = outcome_probabilities(p);
    double z_det = 0.0;
    double z_exp = 0.0;
    r.check(within_sigmas(a.detections_in(p.target), kTrials, exact.detections[p.target], 4.0,
                          &z_det),
            label + " target detection within 4 sigma");
    r.check(within_sigmas(a.total_explosions(), kTrials, exact.total_explosion(), 4.0, &z_exp),
            label + " explosions within 4 sigma");
    r.check(a.explosions == b.explosions && a.detections == b.detections && a.lost == b.lost,
            label + " reproducible for fixed seed");
    r.check(a.total_explosions() + a.total_detections() + a.lost == kTrials,
            label + " outcomes sum to trials");
    r.detail << " " << label << ": detect=" << a.detections_in(p.target)
             << " expected=" << exact.detections[p.target] * kTrials << " z=" << z_det
             << " explode=" << a.total_explosions()
             << " expected=" << exact.total_explosion() * kTrials << " z=" << z_exp;
}

Result criterion8() {
    Result r;
    mc_case(r, SearchParams::make(4, 1, ThetaMode::PiOver2M, 1), "N4");
    mc_case(r, SearchParams::make(15, 3, ThetaMode::PiOverM, 1), "N15");
    return r;
}

// Randomized invariants over 1000 draws with a fixed generator seed.
Result criterion9() {
    Result r;
    constexpr int kDraws = 1000;
    std::mt19937_64 rng(424242);
    std::uniform_int_distribution<std::size_t> n_dist(2, 40);
    std::uniform_int_distribution<std::size_t> m_dist(3, 24);
    std::uniform_int_distribution<std::size_t> k_dist(0, 10);
    std::normal_distribution<double> amp(0.0, 1.0);
    double worst_norm = 0.0, worst_conservation = 0.0, worst_symmetry = 0.0;
    double worst_involution = 0.0, worst_residue = 0.0;
    for (int draw = 0; draw < kDraws; ++draw) {
        const std::size_t n = n_dist(rng);
        const std::size_t m = m_dist(rng);
        const std::size_t k = k_dist(rng);
        const std::size_t target = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        const double theta = kPi / static_cast<double>(m);

        PolarizedState s = PolarizedState::uniform(n);
        for (std::size_t j = 0; j < k; ++j) {
            s = inversion_about_average(leaky_oracle(s, m, theta, target).state);
            worst_norm = std::max(worst_norm, std::abs(s.norm_sq() - 1.0));
            worst_conservation = std::max(
                worst_conservation, std::abs(s.survival() + s.exploded() + s.lost() - 1.0));
            const double ref = s.h(target == 0 ? 1 : 0);
            for (std::size_t i = 0; i < n; ++i) {
                if (i != target) worst_symmetry = std::max(worst_symmetry, std::abs(s.h(i) - ref));
            }
        }
        worst_residue =
            std::max(worst_residue, closed_form::amplitudes(n, m, theta, k).imaginary_residue);

        std::vector<double> h(n);
        for (double& x : h) x = amp(rng);
        const PolarizedState in = PolarizedState::from_amplitudes(h, std::vector<double>(n, 0.0));
        const PolarizedState back = inversion_about_average(inversion_about_average(in));
        for (std::size_t i = 0; i < n; ++i) {
            worst_involution = std::max(worst_involution, std::abs(back.h(i) - in.h(i)));
        }
    }
    r.check(worst_norm <= 1e-12, "normalization");
    r.check(worst_conservation <= 1e-12, "probability conservation");
    r.check(worst_symmetry <= 1e-12, "non-target symmetry");
    r.check(worst_involution <= 1e-12, "diffusion involution");
    r.check(worst_residue < 1e-12, "closed-form imaginary residue");
    r.detail << " draws=" << kDraws << " norm=" << worst_norm
             << " conservation=" << worst_conservation << " symmetry=" << worst_symmetry
             << " involution=" << worst_involution << " residue=" << worst_residue;
    return r;
}

Result guarded(const std::function<Result()>& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        Result r;
        r.check(false, std::string("exception: ") + e.what());
        return r;
    }
}

}  // namespace

int main() {
    Result c6;
    Result results[9];
    results[0] = guarded(criterion1);
    results[1] = guarded(criterion2);
    results[2] = guarded(criterion3);
    results[3] = guarded(criterion4);
    results[4] = guarded([&] { return criteria5and6(c6); });
    results[5] = std::move(c6);
    results[6] = guarded(criterion7);
    results[7] = guarded(criterion8);
    results[8] = guarded(criterion9);
    int failures = 0;
    for (int i = 0; i < 9; ++i) {
        std::printf("%s criterion %d:%s\n", results[i].ok ? "PASS" : "FAIL", i + 1,
                    results[i].detail.str().c_str());
        if (!results[i].ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
