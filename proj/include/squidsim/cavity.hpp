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

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "squidsim/eigensystem.hpp"
#include "squidsim/errors.hpp"
#include "squidsim/hamiltonian.hpp"
#include "squidsim/propagator.hpp"
#include "squidsim/pulse.hpp"
#include "squidsim/state.hpp"

namespace squidsim {

// Two Lambda-type SQUIDs in a common cavity mode. Basis kets are labeled
// "abn": the state of qubit A, of qubit B (each '0', '1', or 'e' for the
// cavity-coupled excited level), and the photon number n. Drives Omega_A and
// Omega_B act on the |0>_j -> |e>_j legs; the cavity couples |1>_j -> |e>_j
// with a real constant g. Dynamics starting from "010" stay inside a closed
// five-state subspace.

inline const std::vector<std::string>& closed5_labels() {
    static const std::vector<std::string> labels{"010", "e10", "111", "1e0", "100"};
    return labels;
}

inline std::vector<std::string> full_labels(int n_max) {
    static const char* qubit_chars = "01e";
    std::vector<std::string> labels;
    labels.reserve(9 * static_cast<std::size_t>(n_max + 1));
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int n = 0; n <= n_max; ++n) {
                labels.push_back(std::string{qubit_chars[a], qubit_chars[b],
                                             static_cast<char>('0' + n)});
            }
        }
    }
    return labels;
}

enum class CavitySpace { closed5, full };

struct CavitySystemParams {
    double g = 0.0;            // cavity coupling, rad/ns (real)
    double delta_prime = 0.0;  // one-photon detuning, rad/ns
    PulseEnvelope pulse_A;
    PulseEnvelope pulse_B;
    double t_start = 0.0;
    double t_end = 0.0;
    CavitySpace space = CavitySpace::closed5;
    int n_max = 2;  // photon cutoff for the full space

    void validate() const {
        if (!(t_end > t_start)) throw ValidationError("cavity: t_end must exceed t_start");
        if (n_max < 1) throw ValidationError("cavity: n_max must be at least 1");
    }
};

// 5x5 Hamiltonian on {|010>, |e10>, |111>, |1e0>, |100>} (hbar = 1):
//   (1/2) [[0, OA, 0, 0, 0], [OA*, 2D', g, 0, 0], [0, g, 0, g, 0],
//          [0, 0, g, 2D', OB*], [0, 0, 0, OB, 0]]
inline Eigen::MatrixXcd cavity_hamiltonian_closed5(Complex omega_a, Complex omega_b, double g,
                                                   double delta_prime) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
    m(0, 1) = 0.5 * omega_a;
    m(1, 0) = std::conj(m(0, 1));
    m(1, 1) = delta_prime;
    m(1, 2) = 0.5 * g;
    m(2, 1) = 0.5 * g;
    m(2, 3) = 0.5 * g;
    m(3, 2) = 0.5 * g;
    m(3, 3) = delta_prime;
    m(3, 4) = 0.5 * std::conj(omega_b);
    m(4, 3) = 0.5 * omega_b;
    return m;
}

inline HamiltonianModel closed5_model(const CavitySystemParams& params) {
    HamiltonianModel h;
    h.labels = closed5_labels();
    h.generator = [pa = params.pulse_A, pb = params.pulse_B, g = params.g,
                   dp = params.delta_prime](double t) {
        return cavity_hamiltonian_closed5(pa.evaluate(t), pb.evaluate(t), g, dp);
    };
    return h;
}

// Full tensor-product Hamiltonian {0,1,e}_A x {0,1,e}_B x Fock(n_max):
//   sum_j D'|e><e|_j + (1/2) sum_j (Omega_j |0><e|_j + g |1><e|_j b^dag + h.c.)
inline Eigen::MatrixXcd cavity_hamiltonian_full(Complex omega_a, Complex omega_b, double g,
                                                double delta_prime, int n_max) {
    if (n_max < 1) throw ValidationError("cavity: n_max must be at least 1");
    const int nph = n_max + 1;
    const int dim = 9 * nph;
    const auto idx = [nph](int a, int b, int n) { return (a * 3 + b) * nph + n; };
    constexpr int kE = 2;

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            for (int n = 0; n < nph; ++n) {
                const int i = idx(a, b, n);
                if (a == kE) m(i, i) += delta_prime;
                if (b == kE) m(i, i) += delta_prime;
            }
        }
    }
    for (int other = 0; other < 3; ++other) {
        for (int n = 0; n < nph; ++n) {
            // drive on qubit A: <0,b,n|H|e,b,n> = Omega_A/2
            m(idx(0, other, n), idx(kE, other, n)) += 0.5 * omega_a;
            m(idx(kE, other, n), idx(0, other, n)) += 0.5 * std::conj(omega_a);
            // drive on qubit B
            m(idx(other, 0, n), idx(other, kE, n)) += 0.5 * omega_b;
            m(idx(other, kE, n), idx(other, 0, n)) += 0.5 * std::conj(omega_b);
            // cavity leg: <1,b,n+1|H|e,b,n> = (g/2) sqrt(n+1)
            if (n + 1 < nph) {
                const double fock = 0.5 * g * std::sqrt(static_cast<double>(n + 1));
                m(idx(1, other, n + 1), idx(kE, other, n)) += fock;
                m(idx(kE, other, n), idx(1, other, n + 1)) += fock;
                m(idx(other, 1, n + 1), idx(other, kE, n)) += fock;
                m(idx(other, kE, n), idx(other, 1, n + 1)) += fock;
            }
        }
    }
    return m;
}

inline HamiltonianModel full_model(const CavitySystemParams& params) {
    HamiltonianModel h;
    h.labels = full_labels(params.n_max);
    h.generator = [pa = params.pulse_A, pb = params.pulse_B, g = params.g,
                   dp = params.delta_prime, nm = params.n_max](double t) {
        return cavity_hamiltonian_full(pa.evaluate(t), pb.evaluate(t), g, dp, nm);
    };
    return h;
}

// Unnormalized dark-state coordinates in the closed-5 basis:
//   N [ OB* g |010> - OA* OB* |111> + OA* g |100> ].
inline Eigen::VectorXcd dark_state_coordinates(Complex omega_a, Complex omega_b, double g) {
    Eigen::VectorXcd u = Eigen::VectorXcd::Zero(5);
    u[0] = std::conj(omega_b) * g;
    u[2] = -std::conj(omega_a) * std::conj(omega_b);
    u[4] = std::conj(omega_a) * g;
    return u;
}

// |psi^I>, the time-dependent uncoupled state annihilated by the Hamiltonian.
inline StateVector dark_state_I(Complex omega_a, Complex omega_b, double g) {
    const Eigen::VectorXcd u = dark_state_coordinates(omega_a, omega_b, g);
    if (!(u.norm() > 0.0)) {
        throw ValidationError("dark_state_I: all of Omega_A g, Omega_B g, Omega_A Omega_B vanish");
    }
    return StateVector::normalized(closed5_labels(), u);
}

// |psi^II> = |1,1,0>, stationary in the full space.
inline StateVector dark_state_II(int n_max = 1) {
    const std::vector<std::string> labels = full_labels(n_max);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == "110") amps[static_cast<Eigen::Index>(i)] = 1.0;
    }
    return StateVector(labels, std::move(amps));
}

struct DarkStatePair {
    StateVector psi_I;   // closed-5 basis
    StateVector psi_II;  // full basis, |1,1,0>
};

inline DarkStatePair dark_states(Complex omega_a, Complex omega_b, double g, int n_max = 1) {
    return {dark_state_I(omega_a, omega_b, g), dark_state_II(n_max)};
}

// Closed forms printed for the four non-dark eigenvalues/eigenvectors, taking
// the detuning symbol in them to mean delta_prime. They are evaluated
// verbatim and residual-tested against the numerical eigensystem, which is
// authoritative (the printed forms do not typecheck against the matrix; see
// analytic_residuals).
struct AnalyticEigensystem {
    std::array<double, 4> analytic_values{};
    Eigen::Matrix<Complex, 5, 4> analytic_vectors;  // normalized columns (NaN-free best effort)
    Eigensystem numeric;                            // ascending, authoritative
    int dark_index = -1;                            // numeric column matching |psi^I>
    std::array<double, 4> numeric_residuals{};      // ||H v - e v|| / ||H||_F, non-dark modes
    std::array<int, 4> nonzero_indices{};           // numeric columns of the non-dark modes
    std::array<double, 4> analytic_residuals{};     // same residual for the printed pairs
    std::array<double, 4> value_mismatch{};         // |analytic e - nearest numeric e|
    bool analytic_consistent = false;               // all analytic residuals <= 1e-8 (scaled)
};

inline AnalyticEigensystem analytic_eigensystem(Complex omega_a, Complex omega_b, double g,
                                                double delta_prime) {
    const Eigen::MatrixXcd h = cavity_hamiltonian_closed5(omega_a, omega_b, g, delta_prime);
    const double hnorm = std::max(h.norm(), 1e-300);

    AnalyticEigensystem out;
    out.numeric = eigendecompose(h);

    // identify the dark mode by overlap when |psi^I> exists, else by min |e|
    const Eigen::VectorXcd u = dark_state_coordinates(omega_a, omega_b, g);
    Eigen::Index dark = 0;
    if (u.norm() > 0.0) {
        const Eigen::VectorXcd psi = u / u.norm();
        double best = -1.0;
        for (Eigen::Index k = 0; k < 5; ++k) {
            const double ov = std::abs(out.numeric.vectors.col(k).dot(psi));
            if (ov > best) {
                best = ov;
                dark = k;
            }
        }
    } else {
        out.numeric.values.cwiseAbs().minCoeff(&dark);
    }
    out.dark_index = static_cast<int>(dark);

    int slot = 0;
    for (Eigen::Index k = 0; k < 5; ++k) {
        if (k == dark) continue;
        out.nonzero_indices[static_cast<std::size_t>(slot)] = static_cast<int>(k);
        const double e = out.numeric.values[k];
        out.numeric_residuals[static_cast<std::size_t>(slot)] =
            (h * out.numeric.vectors.col(k) - e * out.numeric.vectors.col(k)).norm() / hnorm;
        ++slot;
    }

    // printed eigenvalue display, all four sign combinations
    const double oa2 = std::norm(omega_a);
    const double ob2 = std::norm(omega_b);
    const double omega_tilde_sq = 2.0 * g * g + oa2 + ob2;
    const double inner = std::sqrt((oa2 - ob2) * (oa2 - ob2) + 4.0 * g * g * g * g);
    const double dp = delta_prime;
    int slot2 = 0;
    for (const double s_outer : {+1.0, -1.0}) {
        for (const double s_inner : {+1.0, -1.0}) {
            const double arg = 4.0 * dp * dp + 2.0 * omega_tilde_sq + 2.0 * s_inner * inner;
            const double e = 0.5 * dp + 0.5 * s_outer * std::sqrt(std::max(arg, 0.0));
            out.analytic_values[static_cast<std::size_t>(slot2)] = e;

            // printed eigenvector display for this eigenvalue
            const Complex common = g * g + oa2 + 4.0 * e * (dp - e);
            Eigen::VectorXcd v(5);
            v << g * g * omega_a, Complex(2.0 * g * g * e, 0.0),
                -g * (Complex(oa2, 0.0) + 4.0 * e * (dp - e)), -2.0 * e * common,
                -omega_b * common;
            const double vn = v.norm();
            if (vn > 0.0) v /= vn;
            out.analytic_vectors.col(slot2) = v;
            out.analytic_residuals[static_cast<std::size_t>(slot2)] =
                (vn > 0.0) ? (h * v - e * v).norm() / hnorm
                           : std::numeric_limits<double>::infinity();

            double mism = std::numeric_limits<double>::infinity();
            for (Eigen::Index k = 0; k < 5; ++k) {
                if (k == dark) continue;
                mism = std::min(mism, std::abs(out.numeric.values[k] - e));
            }
            out.value_mismatch[static_cast<std::size_t>(slot2)] = mism;
            ++slot2;
        }
    }

    out.analytic_consistent = true;
    for (const double r : out.analytic_residuals) {
        if (!(r <= 1e-8)) out.analytic_consistent = false;
    }
    return out;
}

// max_k |<psi_k | d psi^I/dt>| / |e_k| over the four non-dark instantaneous
// eigenmodes. The dark-state derivative comes from the analytic envelope
// derivatives through the product rule; only magnitudes enter, so the
// eigenvector phase convention drops out.
struct AdiabaticityPoint {
    double value = 0.0;
    int offending_mode = -1;  // set when some non-dark |e_k| vanishes (value = inf)
};

inline AdiabaticityPoint adiabaticity_metric_at(Complex omega_a, Complex omega_b,
                                                Complex domega_a, Complex domega_b, double g,
                                                double delta_prime) {
    const Eigen::VectorXcd u = dark_state_coordinates(omega_a, omega_b, g);
    const double un = u.norm();
    if (!(un > 0.0)) {
        throw ValidationError("adiabaticity_metric: dark state undefined (all couplings zero)");
    }

    Eigen::VectorXcd du = Eigen::VectorXcd::Zero(5);
    du[0] = std::conj(domega_b) * g;
    du[2] = -(std::conj(domega_a) * std::conj(omega_b) + std::conj(omega_a) * std::conj(domega_b));
    du[4] = std::conj(domega_a) * g;

    const double dun = (u.dot(du)).real() / un;  // d||u||/dt
    const Eigen::VectorXcd psi = u / un;
    const Eigen::VectorXcd dpsi = du / un - u * (dun / (un * un));

    const Eigen::MatrixXcd h = cavity_hamiltonian_closed5(omega_a, omega_b, g, delta_prime);
    const Eigensystem eig = eigendecompose(h);

    Eigen::Index dark = 0;
    double best = -1.0;
    for (Eigen::Index k = 0; k < 5; ++k) {
        const double ov = std::abs(eig.vectors.col(k).dot(psi));
        if (ov > best) {
            best = ov;
            dark = k;
        }
    }

    AdiabaticityPoint out;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    for (Eigen::Index k = 0; k < 5; ++k) {
        if (k == dark) continue;
        const double coupling = std::abs(eig.vectors.col(k).dot(dpsi));
        const double gap = std::abs(eig.values[k]);
        if (gap <= 1e-12 * scale) {
            out.value = std::numeric_limits<double>::infinity();
            out.offending_mode = static_cast<int>(k);
            return out;
        }
        out.value = std::max(out.value, coupling / gap);
    }
    return out;
}

inline AdiabaticityPoint adiabaticity_metric(const CavitySystemParams& params, double t) {
    return adiabaticity_metric_at(params.pulse_A.evaluate(t), params.pulse_B.evaluate(t),
                                  params.pulse_A.derivative(t), params.pulse_B.derivative(t),
                                  params.g, params.delta_prime);
}

// ---- targets, post-selection, entanglement ----------------------------------

inline const std::vector<std::string>& qubit_vacuum_labels() {
    static const std::vector<std::string> labels{"000", "010", "100", "110"};
    return labels;
}

inline const std::vector<std::string>& two_qubit_labels() {
    static const std::vector<std::string> labels{"00", "01", "10", "11"};
    return labels;
}

// (cos(theta)|1,0> + e^{-i xi} sin(theta)|0,1>) |0>_c
inline StateVector entangled_target(double theta, double xi) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps[2] = std::cos(theta);                                    // "100"
    amps[1] = std::exp(Complex(0.0, -xi)) * std::sin(theta);      // "010"
    return StateVector(qubit_vacuum_labels(), std::move(amps));
}

// (cos(theta)|0,0> + e^{-i xi} sin(theta)|1,1>) |0>_c, reachable from the
// state above by flipping qubit A.
inline StateVector flipped_entangled_target(double theta, double xi) {
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
    amps[0] = std::cos(theta);                                    // "000"
    amps[3] = std::exp(Complex(0.0, -xi)) * std::sin(theta);      // "110"
    return StateVector(qubit_vacuum_labels(), std::move(amps));
}

// sigma_x on qubit A over the {a b 0} labels: swaps 000<->100 and 010<->110.
inline StateVector flip_qubit_A(const StateVector& s) {
    if (s.labels() != qubit_vacuum_labels()) {
        throw ValidationError("flip_qubit_A: state must live on the qubit-vacuum basis");
    }
    Eigen::VectorXcd amps(4);
    amps[0] = s.amplitude(2);
    amps[1] = s.amplitude(3);
    amps[2] = s.amplitude(0);
    amps[3] = s.amplitude(1);
    return StateVector(qubit_vacuum_labels(), std::move(amps));
}

// <target|state> where the target is zero outside its own label set and the
// state is zero on target labels it does not carry.
inline Complex overlap_on_labels(const StateVector& target, const StateVector& state) {
    Complex sum = 0.0;
    for (Eigen::Index i = 0; i < target.dim(); ++i) {
        const std::string& label = target.labels()[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < state.dim(); ++j) {
            if (state.labels()[static_cast<std::size_t>(j)] == label) {
                sum += std::conj(target.amplitude(i)) * state.amplitude(j);
                break;
            }
        }
    }
    return sum;
}

// Projects onto {|a,b,0> : a,b in {0,1}} and renormalizes; errors when the
// post-selection probability vanishes.
inline StateVector postselect_qubit_vacuum(const StateVector& s) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(4);
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
        const std::string& l = s.labels()[static_cast<std::size_t>(i)];
        if (l.size() == 3 && l[2] == '0' && (l[0] == '0' || l[0] == '1') &&
            (l[1] == '0' || l[1] == '1')) {
            const int a = l[0] - '0';
            const int b = l[1] - '0';
            c[2 * a + b] = s.amplitude(i);
        }
    }
    if (c.norm() < 1e-9) {
        throw NumericalError("postselect_qubit_vacuum: zero post-selection probability");
    }
    return StateVector::normalized(two_qubit_labels(), c);
}

// Pure-state concurrence 2 |c00 c11 - c01 c10| over {|0>,|1>}^2.
inline double concurrence(const StateVector& two_qubit_state) {
    if (two_qubit_state.labels() != two_qubit_labels()) {
        throw ValidationError("concurrence: state must live on the two-qubit basis");
    }
    const auto& c = two_qubit_state.amplitudes();
    return 2.0 * std::abs(c[0] * c[3] - c[1] * c[2]);
}

}  // namespace squidsim
