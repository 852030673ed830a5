// Copyright 2026 The squidsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "squidsim/device.hpp"

using namespace squidsim;

namespace {

SquidParams reference_params() {
    SquidParams p;  // defaults are the reference device: L=100 pH, C=40 fF, Ic=3.95 uA
    p.grid.n_points = 2001;
    return p;
}

SquidParams lc_params() {
    SquidParams p = reference_params();
    p.critical_current_uA = 0.0;  // pure LC oscillator
    return p;
}

}  // namespace

TEST_CASE("potential: shape and symmetry") {
    SECTION("pure inductor: zero at the bias point") {
        SquidParams p = lc_params();
        CHECK(potential(p, p.external_flux) == 0.0);
    }
    SECTION("reference device has exactly two minima and one barrier in between") {
        const SquidParams p = reference_params();
        CHECK(p.screening_parameter() > 1.0);
        int minima = 0, maxima = 0;
        const int n = 2001;
        for (int i = 1; i + 1 < n; ++i) {
            const double x0 = -1.0 + (static_cast<double>(i - 1) / (n - 1));
            const double x1 = -1.0 + (static_cast<double>(i) / (n - 1));
            const double x2 = -1.0 + (static_cast<double>(i + 1) / (n - 1));
            const double um = potential(p, x0), u0 = potential(p, x1), up = potential(p, x2);
            if (u0 < um && u0 < up) ++minima;
            if (u0 > um && u0 > up) ++maxima;
        }
        CHECK(minima == 2);
        CHECK(maxima == 1);
    }
    SECTION("reflection symmetry about a half-quantum bias") {
        SquidParams p = reference_params();
        p.external_flux = -0.5;
        for (double x : {0.05, 0.1, 0.22, 0.4}) {
            CHECK(potential(p, -0.5 + x) == Catch::Approx(potential(p, -0.5 - x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("stationary_states: LC limit matches the harmonic oscillator") {
    const auto spec = stationary_states(lc_params(), 7);
    const double omega = 500.0;  // 1/sqrt(LC) for 100 pH, 40 fF, in rad/ns
    for (int k = 0; k <= 5; ++k) {
        const double spacing = spec.energies[k + 1] - spec.energies[k];
        CHECK(std::abs(spacing - omega) / omega < 1e-3);
        CHECK(std::abs(spec.energies[k] - omega * (k + 0.5)) / (omega * (k + 0.5)) < 1e-3);
    }
}

TEST_CASE("stationary_states: reference device spectrum") {
    const auto spec = stationary_states(reference_params(), 8);

    SECTION("two lowest states localize in distinct wells") {
        REQUIRE(spec.double_well);
        CHECK(spec.mean_flux[0] < spec.barrier_phi);
        CHECK(spec.mean_flux[1] > spec.barrier_phi);
        CHECK(spec.well_assignments[0] == WellSide::left);
        CHECK(spec.well_assignments[1] == WellSide::right);
    }
    SECTION("wavefunctions orthonormal under the trapezoidal inner product") {
        const double h = spec.grid_spacing();
        for (int i = 0; i < spec.n_levels(); ++i) {
            for (int j = i; j < spec.n_levels(); ++j) {
                const double ip =
                    h * (spec.wavefunctions.col(i).array() * spec.wavefunctions.col(j).array())
                            .sum();
                CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-8);
            }
        }
    }
    SECTION("energies strictly increasing") {
        for (int k = 0; k + 1 < spec.n_levels(); ++k) {
            CHECK(spec.energies[k] < spec.energies[k + 1]);
        }
    }
}

TEST_CASE("stationary_states: grid convergence is second order from below") {
    auto at_points = [](int n) {
        SquidParams p = reference_params();
        p.grid.n_points = n;
        return stationary_states(p, 3);
    };
    const auto coarse = at_points(501);
    const auto medium = at_points(1001);
    const auto fine = at_points(2001);
    for (int k = 0; k < 3; ++k) {
        const double step1 = medium.energies[k] - coarse.energies[k];
        const double step2 = fine.energies[k] - medium.energies[k];
        // second-order stencil: each refinement closes ~4x less ground
        CHECK(step1 / step2 == Catch::Approx(4.0).margin(1.0));
        // three-point Laplacian converges from below: refining never lowers a level
        CHECK(medium.energies[k] >= coarse.energies[k] - 1e-6);
        CHECK(fine.energies[k] >= medium.energies[k] - 1e-6);
    }
}

TEST_CASE("stationary_states: boundary leakage is detected") {
    SquidParams p = lc_params();
    p.grid.phi_min = p.external_flux - 0.03;  // far too narrow for the requested levels
    p.grid.phi_max = p.external_flux + 0.03;
    p.grid.n_points = 301;
    CHECK_THROWS_AS(stationary_states(p, 4), NumericalError);
}

TEST_CASE("classify_levels") {
    SECTION("reference device: idx0 = 0, idx1 = 1, and an above-barrier level exists") {
        const auto spec = stationary_states(reference_params(), 8);
        const auto cls = classify_levels(spec);
        CHECK(cls.idx0 == 0);
        CHECK(cls.idx1 == 1);
        CHECK(cls.idxE >= 2);
        CHECK(spec.energies[cls.idxE] > spec.barrier_top);
        CHECK(cls.warnings.empty());
    }
    SECTION("symmetric bias: delocalized doublet raises a warning") {
        SquidParams p = reference_params();
        p.external_flux = -0.5;
        const auto cls = classify_levels(stationary_states(p, 8));
        REQUIRE_FALSE(cls.warnings.empty());
        CHECK(cls.idx0 == 0);
        CHECK(cls.idx1 == 1);
    }
    SECTION("single well (beta_L < 1) is rejected") {
        SquidParams p = reference_params();
        p.critical_current_uA = 1.0;
        CHECK(p.screening_parameter() < 1.0);
        CHECK_THROWS_AS(classify_levels(stationary_states(p, 4)), ValidationError);
    }
}

TEST_CASE("flux_matrix_element") {
    SECTION("parity: <phi> = 0 for a symmetric single well") {
        SquidParams p = lc_params();
        p.external_flux = 0.0;
        p.grid.phi_min = -0.75;
        p.grid.phi_max = 0.75;
        const auto spec = stationary_states(p, 3);
        for (int k = 0; k < 3; ++k) {
            CHECK(std::abs(flux_matrix_element(spec, k, k)) < 1e-10);
        }
    }
    SECTION("reference device: excited-state couplings dominate the direct one") {
        const auto spec = stationary_states(reference_params(), 8);
        const auto cls = classify_levels(spec);
        const double m01 = std::abs(flux_matrix_element(spec, cls.idx0, cls.idx1));
        const double m0e = std::abs(flux_matrix_element(spec, cls.idx0, cls.idxE));
        const double m1e = std::abs(flux_matrix_element(spec, cls.idx1, cls.idxE));
        CHECK(m0e > m01);
        CHECK(m1e > m01);
    }
    SECTION("symmetric in the level indices") {
        const auto spec = stationary_states(reference_params(), 4);
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                CHECK(std::abs(flux_matrix_element(spec, i, j) -
                               flux_matrix_element(spec, j, i)) < 1e-12);
            }
        }
    }
}
