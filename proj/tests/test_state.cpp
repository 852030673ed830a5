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

#include "squidsim/state.hpp"

using namespace squidsim;

namespace {

StateVector ket(const std::string& which) {
    std::vector<std::string> labels{"0", "1"};
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2);
    amps[which == "0" ? 0 : 1] = 1.0;
    return StateVector(labels, amps);
}

}  // namespace

TEST_CASE("StateVector enforces its invariants") {
    Eigen::VectorXcd amps(2);
    amps << 1.0, 0.0;

    SECTION("unit norm within 1e-12") {
        Eigen::VectorXcd bad(2);
        bad << 1.0 + 1e-6, 0.0;
        CHECK_THROWS_AS(StateVector({"0", "1"}, bad), ValidationError);
        CHECK_NOTHROW(StateVector({"0", "1"}, amps));
    }
    SECTION("labels unique and matching length") {
        CHECK_THROWS_AS(StateVector({"0", "0"}, amps), ValidationError);
        CHECK_THROWS_AS(StateVector({"0", "1", "2"}, amps), ValidationError);
    }
    SECTION("normalized factory rescales") {
        Eigen::VectorXcd scaled(2);
        scaled << Complex(0.0, 3.0), 4.0;
        const StateVector s = StateVector::normalized({"0", "1"}, scaled);
        CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-15);
        CHECK(s.population(0) == Catch::Approx(0.36));
        CHECK_THROWS_AS(StateVector::normalized({"0", "1"}, Eigen::VectorXcd::Zero(2)),
                        ValidationError);
    }
}

TEST_CASE("fidelity") {
    SECTION("fidelity(x, x) = 1") {
        const StateVector x = StateVector::normalized({"0", "1"}, [] {
            Eigen::VectorXcd a(2);
            a << Complex(0.3, 0.4), Complex(-0.5, 0.7);
            return a;
        }());
        CHECK(fidelity(x, x) == Catch::Approx(1.0).margin(1e-14));
    }
    SECTION("orthogonal basis kets give 0") {
        CHECK(fidelity(ket("0"), ket("1")) == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("|0> vs (|0>+|1>)/sqrt(2) gives 1/2") {
        Eigen::VectorXcd amps(2);
        amps << 1.0, 1.0;
        const StateVector plus = StateVector::normalized({"0", "1"}, amps);
        CHECK(fidelity(ket("0"), plus) == Catch::Approx(0.5).epsilon(1e-12));
    }
    SECTION("symmetric in its arguments and label-checked") {
        Eigen::VectorXcd amps(2);
        amps << Complex(0.6, 0.0), Complex(0.0, 0.8);
        const StateVector a = StateVector({"0", "1"}, amps);
        CHECK(fidelity(a, ket("0")) == Catch::Approx(fidelity(ket("0"), a)));
        const StateVector other({"x", "y"}, ket("0").amplitudes());
        CHECK_THROWS_AS(fidelity(a, other), ValidationError);
    }
}
