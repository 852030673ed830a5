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

#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "squidsim/errors.hpp"

namespace squidsim {

// Time-dependent Hermitian generator in angular-frequency units (rad/ns,
// hbar = 1), together with the basis labels it acts on.
struct HamiltonianModel {
    std::vector<std::string> labels;
    std::function<Eigen::MatrixXcd(double)> generator;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(labels.size()); }

    Eigen::MatrixXcd evaluate(double t) const {
        Eigen::MatrixXcd m = generator(t);
        if (m.rows() != dim() || m.cols() != dim()) {
            throw NumericalError("HamiltonianModel: generator dimension does not match labels");
        }
        return m;
    }
};

// Largest |H - H^dag| entry, for Hermiticity checks.
inline double hermiticity_defect(const Eigen::MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace squidsim
