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

#include "squidsim/errors.hpp"
#include "squidsim/hamiltonian.hpp"
#include "squidsim/propagator.hpp"
#include "squidsim/pulse.hpp"
#include "squidsim/state.hpp"

namespace squidsim {

// Single-qubit rotation on a three-level Lambda system {|0>, |1>, |e>}.
// Two drives share one envelope Omega(t), split as Omega_0 = Omega cos(phi)
// and Omega_1 = Omega e^{i eta} sin(phi); the pair defines a coupled state
// that picks up a phase -delta while the uncoupled state is untouched, which
// realizes a rotation about an axis set by (phi, eta).

inline const std::vector<std::string>& qubit_labels() {
    static const std::vector<std::string> labels{"0", "1"};
    return labels;
}

inline const std::vector<std::string>& lambda_labels() {
    static const std::vector<std::string> labels{"0", "1", "e"};
    return labels;
}

struct MixingAngles {
    double phi = 0.0;  // rad
    double eta = 0.0;  // rad
};

// Rotation axis and angle of the induced SU(2) map.
struct RotationSpec {
    Eigen::Vector3d axis;
    double delta = 0.0;  // rad

    void validate() const {
        if (std::abs(axis.norm() - 1.0) > 1e-12) {
            throw ValidationError("RotationSpec: axis must be unit length");
        }
    }
};

// (alpha, beta) parameterization of a driven two-level evolution:
// |C> -> alpha|C> + beta|e>, with |alpha|^2 + |beta|^2 = 1.
struct TransferMatrix {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
};

// Constant-drive design with quantized pulse area: sqrt(Omega^2+Delta^2)*T = 2 pi m.
struct RabiDesign {
    double Omega = 0.0;  // rad/ns
    double Delta = 0.0;  // rad/ns
    double T = 0.0;      // ns
    int m = 1;
};

// Far-off-resonant drive accumulating a pure phase on the coupled state.
struct RamanConfig {
    PulseEnvelope pulse;
    double Delta = 0.0;  // rad/ns
    double t_start = 0.0;
    double t_end = 0.0;
};

inline StateVector coupled_state(const MixingAngles& a) {
    Eigen::VectorXcd amps(2);
    amps << std::cos(a.phi), std::exp(Complex(0.0, a.eta)) * std::sin(a.phi);
    return StateVector(qubit_labels(), std::move(amps));
}

inline StateVector uncoupled_state(const MixingAngles& a) {
    Eigen::VectorXcd amps(2);
    amps << -std::sin(a.phi), std::exp(Complex(0.0, a.eta)) * std::cos(a.phi);
    return StateVector(qubit_labels(), std::move(amps));
}

inline Eigen::Vector3d rotation_axis(const MixingAngles& a) {
    return {std::sin(2.0 * a.phi) * std::cos(a.eta), std::sin(2.0 * a.phi) * std::sin(a.eta),
            std::cos(2.0 * a.phi)};
}

enum class Frame { interaction, rotating };

// Three-level Hamiltonian at two-photon resonance. In the rotating frame the
// excited level carries Delta and the couplings are static; the interaction
// frame carries explicit e^{-i Delta t} phases instead. The two are related
// by a diagonal unitary, so populations agree.
inline HamiltonianModel lambda_hamiltonian(const MixingAngles& a, const PulseEnvelope& pulse,
                                           double Delta, Frame frame = Frame::rotating) {
    const double cphi = std::cos(a.phi);
    const Complex sphi = std::exp(Complex(0.0, a.eta)) * std::sin(a.phi);
    HamiltonianModel h;
    h.labels = lambda_labels();
    h.generator = [cphi, sphi, pulse, Delta, frame](double t) {
        const Complex omega = pulse.evaluate(t);
        const Complex phase = (frame == Frame::interaction)
                                  ? std::exp(Complex(0.0, -Delta * t))
                                  : Complex(1.0, 0.0);
        const Complex c0e = 0.5 * omega * cphi * phase;
        const Complex c1e = 0.5 * omega * sphi * phase;
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
        m(0, 2) = c0e;
        m(2, 0) = std::conj(c0e);
        m(1, 2) = c1e;
        m(2, 1) = std::conj(c1e);
        if (frame == Frame::rotating) m(2, 2) = Delta;
        return m;
    };
    return h;
}

// Transfer matrix of the Rabi model (constant Omega, Delta over duration T).
inline TransferMatrix rabi_transfer_matrix(double Omega, double Delta, double T) {
    if (T < 0.0) throw ValidationError("rabi_transfer_matrix: T must be non-negative");
    const double eff = std::hypot(Omega, Delta);
    if (eff == 0.0) return {Complex(1.0, 0.0), Complex(0.0, 0.0)};  // free evolution
    const double half_area = 0.5 * eff * T;
    const Complex drift = std::exp(Complex(0.0, -0.5 * Delta * T));
    TransferMatrix u;
    u.alpha = (Complex(std::cos(half_area), 0.0) +
               Complex(0.0, Delta / eff) * std::sin(half_area)) *
              drift;
    u.beta = Complex(0.0, -Omega / eff) * std::sin(half_area) * drift;
    return u;
}

// Picks (Delta, T) so a constant drive of amplitude Omega implements the
// rotation angle delta with m full generalized Rabi cycles: the pulse area is
// 2 pi m (so |e> empties) and delta = (Delta/Omega_eff + 1) m pi.
inline RabiDesign rabi_design(int m, double delta, double Omega) {
    if (m < 1) throw ValidationError("rabi_design: m must be a positive integer");
    if (!(Omega > 0.0)) throw ValidationError("rabi_design: Omega must be positive");
    const double r = delta / (m * M_PI) - 1.0;
    if (!(std::abs(r) < 1.0)) {
        throw ValidationError("rabi_design: delta = " + std::to_string(delta) +
                              " infeasible for m = " + std::to_string(m) +
                              "; admissible interval is (0, " + std::to_string(2.0 * m * M_PI) +
                              ")");
    }
    RabiDesign d;
    d.m = m;
    d.Omega = Omega;
    const double eff = Omega / std::sqrt(1.0 - r * r);
    d.Delta = r * eff;
    d.T = 2.0 * M_PI * m / eff;
    return d;
}

// Rotation angle accumulated by the coupled state in the adiabatic-
// elimination limit: delta = -(1/4 Delta) * integral |Omega|^2 dt.
// A warning is appended when the drive is not far off resonance.
inline double raman_phase(const PulseEnvelope& pulse, double Delta, double t_i, double t_f,
                          std::vector<std::string>* warnings = nullptr) {
    if (Delta == 0.0) throw ValidationError("raman_phase: Delta must be nonzero");
    if (!(t_f > t_i)) throw ValidationError("raman_phase: t_f must exceed t_i");
    if (warnings != nullptr) {
        const double ratio = pulse.max_abs(t_i, t_f) / (2.0 * std::abs(Delta));
        if (ratio > 0.2) {
            warnings->push_back("raman_phase: max|Omega|/(2|Delta|) = " + std::to_string(ratio) +
                                " exceeds 0.2; adiabatic elimination is unreliable");
        }
    }
    return -abs_square_integral(pulse, t_i, t_f) / (4.0 * Delta);
}

// e^{-i delta/2} R_n(delta) with R_n(delta) = cos(delta/2) I - i sin(delta/2) n.sigma,
// i.e. the full map including the global phase.
inline Eigen::Matrix2cd rotation_operator(const RotationSpec& spec) {
    spec.validate();
    const double c = std::cos(0.5 * spec.delta);
    const double s = std::sin(0.5 * spec.delta);
    const Eigen::Vector3d& n = spec.axis;
    Eigen::Matrix2cd r;
    r << Complex(c, -s * n.z()), Complex(-s * n.y(), -s * n.x()),
        Complex(s * n.y(), -s * n.x()), Complex(c, s * n.z());
    return std::exp(Complex(0.0, -0.5 * spec.delta)) * r;
}

// Analytic final state e^{-i delta/2} R_n(delta) |psi_i> over {|0>,|1>}.
inline StateVector rotated_state(const MixingAngles& a, double delta, const StateVector& psi_i) {
    RotationSpec spec{rotation_axis(a), delta};
    Eigen::VectorXcd out = rotation_operator(spec) * psi_i.amplitudes();
    return StateVector(qubit_labels(), std::move(out));
}

// Rotation angle folded to (-pi, pi].
inline double principal_angle(double delta) {
    double d = std::fmod(delta, 2.0 * M_PI);
    if (d > M_PI) d -= 2.0 * M_PI;
    if (d <= -M_PI) d += 2.0 * M_PI;
    return d;
}

struct RotationRun {
    StateVector psi_f;            // full three-level final state
    Trajectory trajectory;
    double delta = 0.0;           // realized rotation angle, folded to (-pi, pi]
    double fidelity_analytic = 0.0;  // |<analytic|projected final>|^2
    Complex overlap_analytic{0.0, 0.0};  // phase-sensitive <analytic|final_{01}>
    double residual_e_population = 0.0;
    std::vector<std::string> warnings;
};

namespace detail {

inline Eigen::VectorXcd embed_qubit_state(const StateVector& psi_i) {
    if (psi_i.labels() != qubit_labels()) {
        throw ValidationError("simulate_rotation: psi_i must live on the {0,1} basis");
    }
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(3);
    full.head<2>() = psi_i.amplitudes();
    return full;
}

inline RotationRun finish_rotation_run(Trajectory&& traj, const MixingAngles& a, double delta,
                                       const StateVector& psi_i,
                                       std::vector<std::string> warnings) {
    const Eigen::VectorXcd& final_amps = traj.final_amplitudes();
    // e^{-i delta/2} R_n(delta) is 2 pi periodic, so the folded angle drives
    // the same analytic state.
    const StateVector analytic = rotated_state(a, delta, psi_i);
    const Complex overlap = analytic.amplitudes().dot(final_amps.head<2>());
    RotationRun run{StateVector::normalized(lambda_labels(), final_amps),
                    std::move(traj),
                    principal_angle(delta),
                    std::norm(overlap),
                    overlap,
                    std::norm(final_amps[2]),
                    std::move(warnings)};
    return run;
}

}  // namespace detail

// Full three-level propagation of a constant-drive design, certified against
// the analytic rotation law.
inline RotationRun simulate_rotation(const MixingAngles& a, const RabiDesign& design,
                                     const StateVector& psi_i,
                                     const PropagateOptions& opts = {}) {
    const Eigen::VectorXcd psi0 = detail::embed_qubit_state(psi_i);
    const double eff = std::hypot(design.Omega, design.Delta);
    const double delta = (eff == 0.0) ? 0.0 : (design.Delta / eff + 1.0) * design.m * M_PI;
    const PulseEnvelope pulse =
        PulseEnvelope::rectangular(design.Omega, 0.5 * design.T, design.T);
    const HamiltonianModel h = lambda_hamiltonian(a, pulse, design.Delta, Frame::rotating);
    PropagateOptions run_opts = opts;
    run_opts.dt = std::min(opts.dt, design.T / 1000.0);  // resolve fast designs
    Trajectory traj = propagate_amplitudes(h, psi0, 0.0, design.T, run_opts);
    return detail::finish_rotation_run(std::move(traj), a, delta, psi_i, {});
}

inline RotationRun simulate_rotation(const MixingAngles& a, const RamanConfig& config,
                                     const StateVector& psi_i,
                                     const PropagateOptions& opts = {}) {
    const Eigen::VectorXcd psi0 = detail::embed_qubit_state(psi_i);
    std::vector<std::string> warnings;
    const double delta = raman_phase(config.pulse, config.Delta, config.t_start, config.t_end,
                                     &warnings);
    const HamiltonianModel h =
        lambda_hamiltonian(a, config.pulse, config.Delta, Frame::rotating);
    Trajectory traj = propagate_amplitudes(h, psi0, config.t_start, config.t_end, opts);
    return detail::finish_rotation_run(std::move(traj), a, delta, psi_i, std::move(warnings));
}

}  // namespace squidsim
