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

#include "ifmsearch/circuit_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dense_oracle.hpp"

using namespace ifmsearch;

namespace {

PolarizedState basis_h(std::size_t n, std::size_t mode) {
    std::vector<double> h(n, 0.0), v(n, 0.0);
    h[mode] = 1.0;
    return PolarizedState::from_amplitudes(h, v);
}

}  // namespace

TEST(InitialState, UniformAmplitudes) {
    const PolarizedState s4 = PolarizedState::uniform(4);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(s4.h(i), 0.5);
        EXPECT_EQ(s4.v(i), 0.0);
    }
    EXPECT_EQ(s4.survival(), 1.0);

    const PolarizedState s2 = PolarizedState::uniform(2);
    EXPECT_DOUBLE_EQ(s2.h(0), 1.0 / std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(s2.h(1), 1.0 / std::sqrt(2.0));

    const PolarizedState s15 = PolarizedState::uniform(15);
    for (double a : s15.h_amplitudes()) EXPECT_NEAR(a, 0.2581988897, 1e-10);
}

TEST(InitialState, RejectsDegenerateInstances) {
    EXPECT_THROW(PolarizedState::uniform(1), std::invalid_argument);
    EXPECT_THROW(PolarizedState::uniform(0), std::invalid_argument);
}

TEST(SmallCycle, FullRotationIntoBombArmExplodes) {
    const SmallCycleResult r = small_cycle(basis_h(3, 0), std::numbers::pi / 2, 0);
    EXPECT_NEAR(r.explosion_probability, 1.0, 1e-15);
    EXPECT_NEAR(r.state.survival(), 0.0, 1e-15);
    EXPECT_NEAR(r.state.exploded(), 1.0, 1e-15);
}

TEST(SmallCycle, NoAmplitudeInBombArmIsLossless) {
    const double theta = 0.37;
    const SmallCycleResult r = small_cycle(basis_h(5, 2), theta, 0);
    EXPECT_EQ(r.explosion_probability, 0.0);
    EXPECT_EQ(r.state.survival(), 1.0);
    EXPECT_NEAR(r.state.h(2), std::cos(theta), 1e-15);
    EXPECT_NEAR(r.state.v(2), std::sin(theta), 1e-15);
}

TEST(SmallCycle, UniformFifteenModeFirstCycle) {
    const SmallCycleResult r = small_cycle(PolarizedState::uniform(15), std::numbers::pi / 3, 0);
    EXPECT_NEAR(r.explosion_probability, 0.05, 1e-15);
    EXPECT_NEAR(r.state.survival(), 0.95, 1e-15);
    EXPECT_NEAR(r.state.norm_sq(), 1.0, 1e-12);
    EXPECT_EQ(r.state.v(0), 0.0);
}

TEST(LeakyOracle, FifteenBoxesThreeCycles) {
    const OracleResult r = leaky_oracle(PolarizedState::uniform(15), 3, std::numbers::pi / 3, 0);
    EXPECT_NEAR(r.cycle_survival, 0.934375, 1e-15);
    ASSERT_EQ(r.explosion_probabilities.size(), 3u);
    EXPECT_NEAR(r.loss_probability, 0.0, 1e-15);
    // Target flipped and scaled by cos^3(pi/3) = 1/8 relative to the others.
    EXPECT_NEAR(r.state.h(0) / r.state.h(1), -0.125, 1e-14);
    for (std::size_t i = 2; i < 15; ++i) EXPECT_NEAR(r.state.h(i), r.state.h(1), 1e-15);
    EXPECT_TRUE(r.state.is_h_polarized());
}

TEST(LeakyOracle, NoTargetAmplitudeNothingReachesBomb) {
    std::vector<double> h{0.0, 0.6, 0.8}, v(3, 0.0);
    const PolarizedState in = PolarizedState::from_amplitudes(h, v);
    const OracleResult r = leaky_oracle(in, 4, std::numbers::pi / 4, 0);
    EXPECT_NEAR(r.cycle_survival, 1.0, 1e-15);
    EXPECT_NEAR(std::abs(r.state.h(1)), 0.6, 1e-15);
    EXPECT_NEAR(std::abs(r.state.h(2)), 0.8, 1e-15);
    EXPECT_NEAR(r.state.h(0), 0.0, 1e-15);
}

TEST(LeakyOracle, AbsorptionLimitForFourBoxes) {
    const OracleResult r = leaky_oracle(PolarizedState::uniform(4), 1, std::numbers::pi / 2, 0);
    EXPECT_NEAR(r.cycle_survival, 0.75, 1e-15);
    EXPECT_NEAR(r.state.h(0), 0.0, 1e-15);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(r.state.h(i), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(LeakyOracle, RejectsVPolarizedInput) {
    std::vector<double> h{0.6, 0.0}, v{0.0, 0.8};
    EXPECT_THROW(leaky_oracle(PolarizedState::from_amplitudes(h, v), 2, 0.3, 0),
                 std::invalid_argument);
}

TEST(LeakyOracle, GeneralAngleLossGoesToLostNotExploded) {
    // theta = 0.4, M = 3: Mθ is neither π nor π/2, so the target keeps some V
    // after repolarization and the projection rejects it.
    const OracleResult r = leaky_oracle(PolarizedState::uniform(6), 3, 0.4, 2);
    EXPECT_GT(r.loss_probability, 0.0);
    const PolarizedState& s = r.state;
    EXPECT_NEAR(s.survival() + s.exploded() + s.lost(), 1.0, 1e-15);
    const double c3 = std::pow(std::cos(0.4), 3);
    // Target ends with cos(3θ) cos^3θ times its input, V share dropped.
    EXPECT_NEAR(s.h(2) / s.h(0), std::cos(1.2) * c3, 1e-14);
}

TEST(InversionAboutAverage, UniformIsFixedPoint) {
    const PolarizedState s = inversion_about_average(PolarizedState::uniform(7));
    for (double a : s.h_amplitudes()) EXPECT_NEAR(a, 1.0 / std::sqrt(7.0), 1e-15);
}

TEST(InversionAboutAverage, FourBoxWorkedExample) {
    const double r3 = 1.0 / std::sqrt(3.0);
    const PolarizedState in = PolarizedState::from_amplitudes({0.0, r3, r3, r3}, {0, 0, 0, 0});
    const PolarizedState out = inversion_about_average(in);
    EXPECT_NEAR(out.h(0), std::sqrt(3.0) / 2.0, 1e-15);
    for (std::size_t i = 1; i < 4; ++i) EXPECT_NEAR(out.h(i), 1.0 / (2.0 * std::sqrt(3.0)), 1e-15);
}

TEST(InversionAboutAverage, IsAnInvolution) {
    const PolarizedState in =
        PolarizedState::from_amplitudes({0.1, -0.4, 0.7, 0.2, 0.5}, {0, 0, 0, 0, 0});
    const PolarizedState twice = inversion_about_average(inversion_about_average(in));
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(twice.h(i), in.h(i), 1e-15);
}

TEST(InversionAboutAverage, TwoModesSwapExactly) {
    // For N = 2 the map swaps the amplitudes; tiny entries must survive.
    const PolarizedState in = PolarizedState::from_amplitudes({1.0, -1e-30}, {0, 0});
    const PolarizedState out = inversion_about_average(in);
    EXPECT_EQ(out.h(0), in.h(1));
    EXPECT_EQ(out.h(1), in.h(0));
}

TEST(RunSearch, FourBoxOneQuery) {
    const SearchTrace t =
        run_search(SearchParams::make(4, 1, ThetaMode::PiOver2M, 1));
    ASSERT_EQ(t.records.size(), 1u);
    EXPECT_NEAR(t.records[0].success_probability, 0.5625, 1e-12);
    EXPECT_NEAR(t.records[0].cumulative_survival, 0.75, 1e-12);
    EXPECT_NEAR(t.records[0].tau * t.records[0].tau, 0.75, 1e-12);
}

TEST(RunSearch, FifteenBoxThreeQueries) {
    const SearchTrace t = run_search(SearchParams::make(15, 3, ThetaMode::PiOverM, 1));
    // Hand evaluation: oracle output (1,..,1,-1/8), diffusion -> tau~ = 1.975,
    // alpha~ = 0.85, norm^2 = 14.015625 = 15 * 0.934375.
    EXPECT_NEAR(t.records[0].cycle_survival, 0.934375, 1e-15);
    EXPECT_NEAR(t.records[0].tau, 1.975 / std::sqrt(14.015625), 1e-14);
    EXPECT_NEAR(t.records[0].alpha, 0.85 / std::sqrt(14.015625), 1e-14);
    EXPECT_NEAR(t.records[0].success_probability, 3.900625 / 15.0, 1e-14);
}

TEST(RunSearch, ZeroCyclesIsUniform) {
    const SearchTrace t = run_search(SearchParams::make(9, 3, ThetaMode::PiOverM, 0));
    EXPECT_TRUE(t.records.empty());
    EXPECT_DOUBLE_EQ(t.success(0), 1.0 / 9.0);
    EXPECT_EQ(t.survival(0), 1.0);
}

TEST(RunSearch, MatchesDenseMatrixOracle) {
    struct Case {
        std::size_t n, m;
        double theta;
        std::size_t k, target;
    };
    const Case cases[] = {
        {4, 1, std::numbers::pi / 2, 3, 0},  {15, 3, std::numbers::pi / 3, 5, 4},
        {8, 12, std::numbers::pi / 12, 6, 7}, {6, 5, 0.3, 4, 2},
        {5, 7, std::numbers::pi / 14, 4, 1},
    };
    for (const Case& c : cases) {
        const SearchTrace t = run_search(SearchParams::make(c.n, c.m, c.theta, c.k, c.target));
        const auto ref = oracle::dense_search(c.n, c.m, c.theta, c.k, c.target);
        for (std::size_t k = 0; k <= c.k; ++k) {
            EXPECT_NEAR(t.tau(k), ref.tau[k], 1e-12) << "n=" << c.n << " k=" << k;
            EXPECT_NEAR(t.alpha(k), ref.alpha[k], 1e-12) << "n=" << c.n << " k=" << k;
            EXPECT_NEAR(t.survival(k), ref.survival[k], 1e-12) << "n=" << c.n << " k=" << k;
        }
    }
}

TEST(RunSearch, RejectsInvalidParams) {
    SearchParams p{4, 1, 0.5, 1, 4};
    EXPECT_THROW(run_search(p), std::invalid_argument);
}
