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

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "squidsim/errors.hpp"
#include "squidsim/hamiltonian.hpp"
#include "squidsim/state.hpp"

namespace squidsim {

struct PropagateOptions {
    double dt = 1e-3;             // step size, ns
    bool check_generator = true;  // Hermiticity/finiteness at every sampled t
    double hermitian_tol = 1e-12;
};

// Time grid plus the state at every step. Amplitudes are stored raw; the
// recorded norm drift is max_t | ||psi(t)|| - 1 |.
class Trajectory {
public:
    Trajectory(std::vector<std::string> labels, std::vector<double> times,
               std::vector<Eigen::VectorXcd> states)
        : labels_(std::move(labels)), times_(std::move(times)), states_(std::move(states)) {
        for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
            if (!(times_[k + 1] > times_[k])) {
                throw NumericalError("Trajectory: times must be strictly increasing");
            }
        }
        norm_drift_ = 0.0;
        for (const auto& s : states_) {
            norm_drift_ = std::max(norm_drift_, std::abs(s.norm() - 1.0));
        }
    }

    const std::vector<std::string>& labels() const { return labels_; }
    std::size_t size() const { return times_.size(); }
    double time(std::size_t k) const { return times_[k]; }
    const std::vector<double>& times() const { return times_; }
    const Eigen::VectorXcd& amplitudes(std::size_t k) const { return states_[k]; }

    StateVector state(std::size_t k) const { return StateVector::normalized(labels_, states_[k]); }

    double population(std::size_t k, Eigen::Index i) const { return std::norm(states_[k][i]); }
    std::vector<double> populations(std::size_t k) const {
        std::vector<double> p(static_cast<std::size_t>(states_[k].size()));
        for (Eigen::Index i = 0; i < states_[k].size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(states_[k][i]);
        return p;
    }

    double final_time() const { return times_.back(); }
    const Eigen::VectorXcd& final_amplitudes() const { return states_.back(); }

    double norm_drift() const { return norm_drift_; }

private:
    std::vector<std::string> labels_;
    std::vector<double> times_;
    std::vector<Eigen::VectorXcd> states_;
    double norm_drift_ = 0.0;
};

namespace detail {

inline void check_generator_sample(const Eigen::MatrixXcd& m, double t, double tol) {
    if (!m.allFinite()) {
        throw NumericalError("propagate: non-finite Hamiltonian entries at t = " + std::to_string(t));
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermiticity_defect(m) > tol * scale) {
        throw NumericalError("propagate: Hamiltonian not Hermitian at t = " + std::to_string(t));
    }
}

}  // namespace detail

// Fixed-step RK4 integration of i d|psi>/dt = H(t)|psi>. The step count is
// chosen so the final sample lands exactly on t_end. Norm is not enforced;
// the drift is reported on the returned trajectory. The input amplitudes are
// taken as-is (no unit-norm requirement), which keeps the map exactly linear.
inline Trajectory propagate_amplitudes(const HamiltonianModel& h, Eigen::VectorXcd y,
                                       double t_start, double t_end,
                                       const PropagateOptions& opts = {}) {
    if (!(opts.dt > 0.0)) throw ValidationError("propagate: dt must be positive");
    if (!(t_end > t_start)) throw ValidationError("propagate: t_end must exceed t_start");
    if (y.size() != h.dim()) throw ValidationError("propagate: state dimension does not match Hamiltonian");

    const double span = t_end - t_start;
    const auto n_steps = static_cast<std::size_t>(std::ceil(span / opts.dt - 1e-9));
    const std::size_t n = std::max<std::size_t>(n_steps, 1);
    const double hstep = span / static_cast<double>(n);

    const Complex mi(0.0, -1.0);
    auto rhs = [&](double t, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
        Eigen::MatrixXcd m = h.evaluate(t);
        if (opts.check_generator) detail::check_generator_sample(m, t, opts.hermitian_tol);
        return mi * (m * v);
    };

    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    times.reserve(n + 1);
    states.reserve(n + 1);
    times.push_back(t_start);
    states.push_back(y);

    // stages sample the exact step endpoints, so the evaluation never lands a
    // rounding ulp outside [t_start, t_end] (envelopes may be discontinuous
    // right at the window edges)
    double t_cur = t_start;
    for (std::size_t k = 0; k < n; ++k) {
        const double t_next =
            (k + 1 == n) ? t_end : t_start + static_cast<double>(k + 1) * hstep;
        const double hk = t_next - t_cur;
        const double t_mid = t_cur + 0.5 * hk;
        const Eigen::VectorXcd k1 = rhs(t_cur, y);
        const Eigen::VectorXcd k2 = rhs(t_mid, y + (0.5 * hk) * k1);
        const Eigen::VectorXcd k3 = rhs(t_mid, y + (0.5 * hk) * k2);
        const Eigen::VectorXcd k4 = rhs(t_next, y + hk * k3);
        y += (hk / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        times.push_back(t_next);
        states.push_back(y);
        t_cur = t_next;
    }

    return Trajectory(h.labels, std::move(times), std::move(states));
}

inline Trajectory propagate(const HamiltonianModel& h, const StateVector& psi0, double t_start,
                            double t_end, const PropagateOptions& opts = {}) {
    if (psi0.labels() != h.labels) {
        throw ValidationError("propagate: state basis does not match Hamiltonian basis");
    }
    return propagate_amplitudes(h, psi0.amplitudes(), t_start, t_end, opts);
}

inline Trajectory propagate(const HamiltonianModel& h, const StateVector& psi0, double t_start,
                            double t_end, double dt) {
    PropagateOptions opts;
    opts.dt = dt;
    return propagate(h, psi0, t_start, t_end, opts);
}

}  // namespace squidsim
