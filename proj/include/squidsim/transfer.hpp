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
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "squidsim/cavity.hpp"
#include "squidsim/propagator.hpp"

namespace squidsim {

// Outcome of an adiabatic-passage run: the raw trajectory, per-step dark-state
// diagnostics, and the figures of merit against the intended target state.
struct TransferResult {
    Trajectory trajectory;           // in the propagation space
    StateVector final_state;         // includes the stationary |110> channel when split off
    std::vector<std::pair<std::string, double>> final_populations;
    std::vector<double> dark_overlap;   // |<psi^I(t)|psi(t)>|^2 per step
    std::vector<double> adiabaticity;   // metric per step
    double adiabaticity_max = 0.0;
    double dark_residual_max = 0.0;     // max_t ||H psi^I|| / ||H||_F
    double fidelity_target = 0.0;       // phase-sensitive |<target|final>|^2
    double concurrence = 0.0;           // after cavity-vacuum post-selection
    double max_population_111 = 0.0;    // transient cavity excitation
    std::vector<std::string> warnings;
};

namespace detail {

struct TransferDiagnostics {
    std::vector<double> dark_overlap;
    std::vector<double> adiabaticity;
    double adiabaticity_max = 0.0;
    double dark_residual_max = 0.0;
};

// Dark-overlap / adiabaticity / nullity-residual series along a trajectory.
// `project` maps a trajectory sample onto closed-5 coordinates (identity for
// closed-5 runs, label gather for full-space runs). The metric is NaN where
// it is undefined (non-differentiable envelopes, vanishing couplings).
template <typename Project>
TransferDiagnostics transfer_diagnostics(const CavitySystemParams& params, const Trajectory& traj,
                                         const Project& project) {
    const bool smooth = params.pulse_A.differentiable() && params.pulse_B.differentiable();
    TransferDiagnostics diag;
    const std::size_t n = traj.size();
    diag.dark_overlap.resize(n);
    diag.adiabaticity.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = traj.time(k);
        const Complex oa = params.pulse_A.evaluate(t);
        const Complex ob = params.pulse_B.evaluate(t);
        const Eigen::VectorXcd u = dark_state_coordinates(oa, ob, params.g);
        const Eigen::MatrixXcd h =
            cavity_hamiltonian_closed5(oa, ob, params.g, params.delta_prime);
        const double un = u.norm();
        if (un > 0.0) {
            const Eigen::VectorXcd psi_dark = u / un;
            diag.dark_overlap[k] = std::norm(psi_dark.dot(project(traj.amplitudes(k))));
            diag.dark_residual_max = std::max(
                diag.dark_residual_max, (h * psi_dark).norm() / std::max(h.norm(), 1e-300));
        } else {
            diag.dark_overlap[k] = 0.0;
        }
        if (smooth && un > 0.0) {
            const AdiabaticityPoint m = adiabaticity_metric_at(
                oa, ob, params.pulse_A.derivative(t), params.pulse_B.derivative(t), params.g,
                params.delta_prime);
            diag.adiabaticity[k] = m.value;
            diag.adiabaticity_max = std::max(diag.adiabaticity_max, m.value);
        } else {
            diag.adiabaticity[k] = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return diag;
}

inline Eigen::VectorXcd gather_closed5(const std::vector<std::string>& labels,
                                       const Eigen::VectorXcd& amps) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(5);
    const auto& c5 = closed5_labels();
    for (int i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < labels.size(); ++j) {
            if (labels[j] == c5[static_cast<std::size_t>(i)]) {
                out[i] = amps[static_cast<Eigen::Index>(j)];
                break;
            }
        }
    }
    return out;
}

inline std::vector<std::pair<std::string, double>> population_table(const StateVector& s) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(static_cast<std::size_t>(s.dim()));
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        out.emplace_back(s.labels()[static_cast<std::size_t>(i)], s.population(i));
    }
    return out;
}

inline double max_population_of(const Trajectory& traj, const std::string& label) {
    Eigen::Index idx = -1;
    for (std::size_t j = 0; j < traj.labels().size(); ++j) {
        if (traj.labels()[j] == label) idx = static_cast<Eigen::Index>(j);
    }
    if (idx < 0) return 0.0;
    double best = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) best = std::max(best, traj.population(k, idx));
    return best;
}

}  // namespace detail

// Adiabatic information transfer: the initial state c0|0,1,0> + c1|1,1,0>
// rides the uncoupled states into |1>_A (c0|0> + c1|1>)_B |0>_c, provided the
// B drive precedes the A drive (checked at the window edges, ratio >= 10).
// In the closed-5 space only the c0 channel is propagated; |1,1,0> is exactly
// stationary and is reattached when assembling the final state.
inline TransferResult run_transfer(const CavitySystemParams& params, Complex c0, Complex c1,
                                   const PropagateOptions& opts = {}) {
    params.validate();
    if (std::abs(std::norm(c0) + std::norm(c1) - 1.0) > 1e-10) {
        throw ValidationError("run_transfer: |c0|^2 + |c1|^2 must equal 1");
    }

    std::vector<std::string> warnings;
    const double a_start = std::abs(params.pulse_A.evaluate(params.t_start));
    const double b_start = std::abs(params.pulse_B.evaluate(params.t_start));
    const double a_end = std::abs(params.pulse_A.evaluate(params.t_end));
    const double b_end = std::abs(params.pulse_B.evaluate(params.t_end));
    if (b_start < 10.0 * a_start) {
        warnings.push_back("run_transfer: pulse ordering violated at t_start "
                           "(|Omega_B| < 10 |Omega_A|); expected the B drive first");
    }
    if (a_end < 10.0 * b_end) {
        warnings.push_back("run_transfer: pulse ordering violated at t_end "
                           "(|Omega_A| < 10 |Omega_B|)");
    }

    // target: |1>_A (c0|0> + c1|1>)_B |0>_c
    Eigen::VectorXcd target_amps = Eigen::VectorXcd::Zero(4);
    target_amps[2] = c0;  // "100"
    target_amps[3] = c1;  // "110"
    const StateVector target(qubit_vacuum_labels(), target_amps);

    if (params.space == CavitySpace::closed5) {
        const HamiltonianModel h = closed5_model(params);
        Trajectory traj = propagate(h, StateVector::basis_state(closed5_labels(), 0),
                                    params.t_start, params.t_end, opts);
        auto diag = detail::transfer_diagnostics(params, traj,
                                                 [](const Eigen::VectorXcd& v) { return v; });

        std::vector<std::string> labels6 = closed5_labels();
        labels6.push_back("110");
        Eigen::VectorXcd final6(6);
        final6.head<5>() = c0 * traj.final_amplitudes();
        final6[5] = c1;
        const StateVector final_state = StateVector::normalized(labels6, final6);

        TransferResult out{std::move(traj),
                           final_state,
                           detail::population_table(final_state),
                           std::move(diag.dark_overlap),
                           std::move(diag.adiabaticity),
                           diag.adiabaticity_max,
                           diag.dark_residual_max,
                           std::norm(overlap_on_labels(target, final_state)),
                           0.0,
                           0.0,
                           std::move(warnings)};
        out.max_population_111 =
            std::norm(c0) * detail::max_population_of(out.trajectory, "111");
        out.concurrence = concurrence(postselect_qubit_vacuum(final_state));
        return out;
    }

    const HamiltonianModel h = full_model(params);
    const std::vector<std::string> labels = full_labels(params.n_max);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == "010") psi0[static_cast<Eigen::Index>(i)] = c0;
        if (labels[i] == "110") psi0[static_cast<Eigen::Index>(i)] = c1;
    }
    Trajectory traj = propagate_amplitudes(h, psi0, params.t_start, params.t_end, opts);
    auto diag = detail::transfer_diagnostics(params, traj, [&](const Eigen::VectorXcd& v) {
        return detail::gather_closed5(labels, v);
    });
    const StateVector final_state = StateVector::normalized(labels, traj.final_amplitudes());

    TransferResult out{std::move(traj),
                       final_state,
                       detail::population_table(final_state),
                       std::move(diag.dark_overlap),
                       std::move(diag.adiabaticity),
                       diag.adiabaticity_max,
                       diag.dark_residual_max,
                       std::norm(overlap_on_labels(target, final_state)),
                       0.0,
                       0.0,
                       std::move(warnings)};
    out.max_population_111 = detail::max_population_of(out.trajectory, "111");
    out.concurrence = concurrence(postselect_qubit_vacuum(final_state));
    return out;
}

// Fractional adiabatic passage from |0,1,0>: when the two drives switch off
// in the fixed ratio Omega_A : Omega_B = cos(theta) : sin(theta) e^{i xi},
// the dark state halts on (cos(theta)|1,0> + e^{-i xi} sin(theta)|0,1>)|0>_c.
inline TransferResult run_fractional_stirap(const CavitySystemParams& params, double theta,
                                            double xi, const PropagateOptions& opts = {}) {
    params.validate();

    std::vector<std::string> warnings;
    // late-time ratio condition, sampled over the last 5% of the window
    const double ct = std::cos(theta);
    const Complex st = std::sin(theta) * std::exp(Complex(0.0, xi));
    double worst = 0.0;
    for (int k = 0; k <= 4; ++k) {
        const double t = params.t_end - 0.05 * (params.t_end - params.t_start) * k / 4.0;
        const Complex oa = params.pulse_A.evaluate(t);
        const Complex ob = params.pulse_B.evaluate(t);
        const double scale = std::max(std::abs(oa), std::abs(ob));
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(oa * st - ob * ct) / scale);
    }
    if (worst > 0.01) {
        warnings.push_back(
            "run_fractional_stirap: switch-off ratio Omega_A:Omega_B deviates from "
            "cos(theta):sin(theta)e^{i xi} by " +
            std::to_string(worst) + " near t_end");
    }

    const StateVector target = entangled_target(theta, xi);

    TransferResult out = [&]() {
        if (params.space == CavitySpace::closed5) {
            const HamiltonianModel h = closed5_model(params);
            Trajectory traj = propagate(h, StateVector::basis_state(closed5_labels(), 0),
                                        params.t_start, params.t_end, opts);
            auto diag = detail::transfer_diagnostics(params, traj,
                                                     [](const Eigen::VectorXcd& v) { return v; });
            const StateVector final_state =
                StateVector::normalized(closed5_labels(), traj.final_amplitudes());
            return TransferResult{std::move(traj),
                                  final_state,
                                  detail::population_table(final_state),
                                  std::move(diag.dark_overlap),
                                  std::move(diag.adiabaticity),
                                  diag.adiabaticity_max,
                                  diag.dark_residual_max,
                                  std::norm(overlap_on_labels(target, final_state)),
                                  0.0,
                                  0.0,
                                  {}};
        }
        const HamiltonianModel h = full_model(params);
        const std::vector<std::string> labels = full_labels(params.n_max);
        Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(labels.size()));
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == "010") psi0[static_cast<Eigen::Index>(i)] = 1.0;
        }
        Trajectory traj = propagate_amplitudes(h, psi0, params.t_start, params.t_end, opts);
        auto diag = detail::transfer_diagnostics(params, traj, [&](const Eigen::VectorXcd& v) {
            return detail::gather_closed5(labels, v);
        });
        const StateVector final_state = StateVector::normalized(labels, traj.final_amplitudes());
        return TransferResult{std::move(traj),
                              final_state,
                              detail::population_table(final_state),
                              std::move(diag.dark_overlap),
                              std::move(diag.adiabaticity),
                              diag.adiabaticity_max,
                              diag.dark_residual_max,
                              std::norm(overlap_on_labels(target, final_state)),
                              0.0,
                              0.0,
                              {}};
    }();

    out.warnings = std::move(warnings);
    out.max_population_111 = detail::max_population_of(out.trajectory, "111");
    out.concurrence = concurrence(postselect_qubit_vacuum(out.final_state));
    return out;
}

// Pulse pair realizing the fractional passage with Gaussian envelopes: the B
// drive carries its own early pulse plus a late component locked to the A
// drive so the switch-off ratio is exact.
inline std::pair<PulseEnvelope, PulseEnvelope> fractional_stirap_pulses(
    double omega_bar, double tau_a, double tau_b, double tau_p, double theta, double xi) {
    const PulseEnvelope ga = PulseEnvelope::gaussian(omega_bar, tau_a, tau_p);
    const PulseEnvelope gb = PulseEnvelope::gaussian(omega_bar, tau_b, tau_p);
    const PulseEnvelope pulse_a = ga.scaled(std::cos(theta));
    const PulseEnvelope pulse_b = PulseEnvelope::scaled_sum(
        {{Complex(1.0, 0.0), gb},
         {std::sin(theta) * std::exp(Complex(0.0, xi)), ga}});
    return {pulse_a, pulse_b};
}

}  // namespace squidsim
