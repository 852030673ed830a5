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

#include <complex>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "squidsim/errors.hpp"

namespace squidsim {

using Complex = std::complex<double>;

// Unit-norm state over a labeled basis. Labels are unique and ordered;
// amplitudes are dimensionless.
class StateVector {
public:
    StateVector(std::vector<std::string> labels, Eigen::VectorXcd amplitudes)
        : labels_(std::move(labels)), amps_(std::move(amplitudes)) {
        validate(1e-12);
    }

    // Scales the amplitudes to unit norm before constructing.
    static StateVector normalized(std::vector<std::string> labels, Eigen::VectorXcd amplitudes) {
        const double n = amplitudes.norm();
        if (!(n > 0.0)) {
            throw ValidationError("StateVector: cannot normalize a zero vector");
        }
        return StateVector(std::move(labels), amplitudes / n);
    }

    static StateVector basis_state(std::vector<std::string> labels, Eigen::Index which) {
        Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(labels.size()));
        if (which < 0 || which >= amps.size()) {
            throw ValidationError("StateVector: basis index out of range");
        }
        amps[which] = 1.0;
        return StateVector(std::move(labels), std::move(amps));
    }

    Eigen::Index dim() const { return amps_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }

    Complex amplitude(Eigen::Index i) const { return amps_[i]; }
    Complex amplitude(const std::string& label) const { return amps_[index_of(label)]; }

    double population(Eigen::Index i) const { return std::norm(amps_[i]); }
    double population(const std::string& label) const { return std::norm(amps_[index_of(label)]); }

    Eigen::Index index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (labels_[i] == label) return static_cast<Eigen::Index>(i);
        }
        throw ValidationError("StateVector: unknown basis label '" + label + "'");
    }

private:
    void validate(double norm_tol) const {
        if (static_cast<Eigen::Index>(labels_.size()) != amps_.size()) {
            throw ValidationError("StateVector: label count does not match amplitude count");
        }
        if (labels_.empty()) {
            throw ValidationError("StateVector: empty basis");
        }
        std::unordered_set<std::string> seen;
        for (const auto& l : labels_) {
            if (!seen.insert(l).second) {
                throw ValidationError("StateVector: duplicate basis label '" + l + "'");
            }
        }
        if (std::abs(amps_.norm() - 1.0) > norm_tol) {
            throw ValidationError("StateVector: norm deviates from 1 beyond 1e-12");
        }
    }

    std::vector<std::string> labels_;
    Eigen::VectorXcd amps_;
};

inline void require_same_basis(const StateVector& a, const StateVector& b) {
    if (a.labels() != b.labels()) {
        throw ValidationError("state operation: basis labels do not match");
    }
}

// <a|b>
inline Complex inner(const StateVector& a, const StateVector& b) {
    require_same_basis(a, b);
    return a.amplitudes().dot(b.amplitudes());
}

// |<a|b>|^2, symmetric in its arguments.
inline double fidelity(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a, b));
}

}  // namespace squidsim
