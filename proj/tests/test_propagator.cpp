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

#include <random>

#include "squidsim/propagator.hpp"
#include "squidsim/rotation.hpp"

using namespace squidsim;

namespace {

HamiltonianModel constant_two_level(double omega) {
    HamiltonianModel h;
    h.labels = {"g", "x"};
    h.generator = [omega](double) {
        Eigen::MatrixXcd m(2, 2);
        m << 0.0, 0.5 * omega, 0.5 * omega, 0.0;
        return m;
    };
    return h;
}

}  // namespace

TEST_CASE("propagate: null generator leaves the state unchanged") {
    HamiltonianModel h;
    h.labels = {"a", "b", "c"};
    h.generator = [](double) { return Eigen::MatrixXcd::Zero(3, 3); };
    Eigen::VectorXcd amps(3);
    amps << Complex(0.5, 0.5), Complex(0.5, 0.0), Complex(0.0, 0.5);
    const StateVector psi0 = StateVector::normalized(h.labels, amps);
    const Trajectory traj = propagate(h, psi0, 0.0, 2.0, 1e-2);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        CHECK((traj.amplitudes(k) - psi0.amplitudes()).norm() < 1e-15);
    }
    CHECK(traj.final_time() == 2.0);
}

TEST_CASE("propagate: resonant pi pulse inverts a two-level system") {
    const double omega = 1.7;
    const HamiltonianModel h = constant_two_level(omega);
    const Trajectory traj =
        propagate(h, StateVector::basis_state(h.labels, 0), 0.0, M_PI / omega, 1e-3);
    CHECK(std::abs(traj.population(traj.size() - 1, 1) - 1.0) <= 1e-8);
}

TEST_CASE("propagate: three-level drive reproduces the analytic inversion") {
    // full population transfer |0> -> |1> certified by the constant-drive
    // transfer matrix, which is exact for this Hamiltonian
    const MixingAngles angles{5.0 * M_PI / 4.0, M_PI};
    const RabiDesign design = rabi_design(2, M_PI, 2.0);
    const PulseEnvelope pulse =
        PulseEnvelope::rectangular(design.Omega, 0.5 * design.T, design.T);
    const HamiltonianModel h = lambda_hamiltonian(angles, pulse, design.Delta, Frame::rotating);
    const Trajectory traj =
        propagate(h, StateVector::basis_state(lambda_labels(), 0), 0.0, design.T, 1e-3);
    CHECK(traj.population(traj.size() - 1, 1) >= 0.999);
    const TransferMatrix tm = rabi_transfer_matrix(design.Omega, design.Delta, design.T);
    CHECK(std::abs(tm.beta) < 1e-12);  // pulse-area quantization empties |e>
}

TEST_CASE("propagate: validation and error paths") {
    const HamiltonianModel h = constant_two_level(1.0);
    const StateVector psi0 = StateVector::basis_state(h.labels, 0);
    CHECK_THROWS_AS(propagate(h, psi0, 0.0, 1.0, -1e-3), ValidationError);
    CHECK_THROWS_AS(propagate(h, psi0, 1.0, 1.0, 1e-3), ValidationError);

    HamiltonianModel mismatched = h;
    mismatched.labels = {"a", "b", "c"};
    CHECK_THROWS_AS(propagate(mismatched, psi0, 0.0, 1.0, 1e-3), ValidationError);

    HamiltonianModel nonfinite;
    nonfinite.labels = {"a", "b"};
    nonfinite.generator = [](double t) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        if (t > 0.5) m(0, 1) = m(1, 0) = std::numeric_limits<double>::quiet_NaN();
        return m;
    };
    CHECK_THROWS_AS(propagate_amplitudes(nonfinite, psi0.amplitudes(), 0.0, 1.0, {}),
                    NumericalError);

    HamiltonianModel nonhermitian;
    nonhermitian.labels = {"a", "b"};
    nonhermitian.generator = [](double) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
        m(0, 1) = 1.0;
        return m;
    };
    CHECK_THROWS_AS(propagate_amplitudes(nonhermitian, psi0.amplitudes(), 0.0, 1.0, {}),
                    NumericalError);
}

TEST_CASE("propagate: step halving changes final populations below 1e-8") {
    const MixingAngles angles{5.0 * M_PI / 4.0, M_PI};
    const RabiDesign design = rabi_design(2, M_PI, 2.0);
    const PulseEnvelope pulse =
        PulseEnvelope::rectangular(design.Omega, 0.5 * design.T, design.T);
    const HamiltonianModel h = lambda_hamiltonian(angles, pulse, design.Delta, Frame::rotating);
    const StateVector psi0 = StateVector::basis_state(lambda_labels(), 0);
    const Trajectory coarse = propagate(h, psi0, 0.0, design.T, 1e-3);
    const Trajectory fine = propagate(h, psi0, 0.0, design.T, 5e-4);
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(std::abs(coarse.population(coarse.size() - 1, i) -
                       fine.population(fine.size() - 1, i)) <= 1e-8);
    }
}

TEST_CASE("propagate: the map is linear in the initial amplitudes") {
    const HamiltonianModel h = lambda_hamiltonian(MixingAngles{0.7, 1.3},
                                                  PulseEnvelope::gaussian(1.5, 2.0, 0.8), -0.4,
                                                  Frame::rotating);
    std::mt19937 rng(271828);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_vec = [&] {
        Eigen::VectorXcd v(3);
        for (int i = 0; i < 3; ++i) v[i] = Complex(u(rng), u(rng));
        return v;
    };
    const Eigen::VectorXcd a = random_vec();
    const Eigen::VectorXcd b = random_vec();
    const Complex c0(u(rng), u(rng));
    const Complex c1(u(rng), u(rng));

    PropagateOptions opts;
    opts.dt = 1e-3;
    const Eigen::VectorXcd combined =
        propagate_amplitudes(h, c0 * a + c1 * b, 0.0, 4.0, opts).final_amplitudes();
    const Eigen::VectorXcd separate =
        c0 * propagate_amplitudes(h, a, 0.0, 4.0, opts).final_amplitudes() +
        c1 * propagate_amplitudes(h, b, 0.0, 4.0, opts).final_amplitudes();
    CHECK((combined - separate).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("propagate: norm drift stays below 1e-9 on a long run") {
    const HamiltonianModel h = constant_two_level(3.0);
    const Trajectory traj = propagate(h, StateVector::basis_state(h.labels, 0), 0.0, 60.0, 1e-3);
    CHECK(traj.norm_drift() <= 1e-9);
    SECTION("times are strictly increasing and end exactly at t_end") {
        CHECK(traj.final_time() == 60.0);
        for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
            REQUIRE(traj.time(k + 1) > traj.time(k));
        }
    }
    SECTION("populations sum to the squared norm at every step") {
        for (std::size_t k = 0; k < traj.size(); k += 1000) {
            double sum = 0.0;
            for (double p : traj.populations(k)) sum += p;
            REQUIRE(sum == Catch::Approx(traj.amplitudes(k).squaredNorm()).margin(1e-14));
        }
    }
}
