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
#include <lapacke.h>

#include <cmath>
#include <string>
#include <vector>

#include "squidsim/errors.hpp"

namespace squidsim {

// rf-SQUID flux Hamiltonian on a 1-D flux grid. The dynamical coordinate is
// the dimensionless flux phi = Phi/Phi_0; all energies are expressed as
// angular frequencies in rad/ns (hbar = 1).

namespace constants {
inline constexpr double hbar_Js = 1.054571817e-34;      // J s
inline constexpr double flux_quantum_Wb = 2.067833848e-15;  // h/2e, Wb
}  // namespace constants

struct SquidGrid {
    double phi_min = 0.0;  // units of Phi_0
    double phi_max = 0.0;
    int n_points = 2001;
};

struct SquidParams {
    double inductance_pH = 100.0;
    double capacitance_fF = 40.0;
    double critical_current_uA = 3.95;
    double external_flux = -0.501;  // Phi_x in units of Phi_0
    SquidGrid grid;                 // phi_max <= phi_min selects the default window

    SquidGrid resolved_grid() const {
        SquidGrid g = grid;
        if (!(g.phi_max > g.phi_min)) {
            g.phi_min = external_flux - 0.75;
            g.phi_max = external_flux + 0.75;
        }
        return g;
    }

    void validate() const {
        if (!(inductance_pH > 0.0)) throw ValidationError("device: inductance_pH must be positive");
        if (!(capacitance_fF > 0.0)) throw ValidationError("device: capacitance_fF must be positive");
        if (critical_current_uA < 0.0) throw ValidationError("device: critical_current_uA must be non-negative");
        const SquidGrid g = resolved_grid();
        if (g.n_points < 3) throw ValidationError("device: grid.n_points must be at least 3");
        if (!(g.phi_max > g.phi_min)) throw ValidationError("device: grid.phi_max must exceed phi_min");
    }

    // hbar / (2 C Phi_0^2), rad/ns: coefficient of -d^2/dphi^2.
    double kinetic_coefficient() const {
        const double c_F = capacitance_fF * 1e-15;
        const double phi0 = constants::flux_quantum_Wb;
        return constants::hbar_Js / (2.0 * c_F * phi0 * phi0) * 1e-9;
    }

    // Phi_0^2 / (2 L hbar), rad/ns: coefficient of (phi - phi_x)^2.
    double parabola_coefficient() const {
        const double l_H = inductance_pH * 1e-12;
        const double phi0 = constants::flux_quantum_Wb;
        return phi0 * phi0 / (2.0 * l_H * constants::hbar_Js) * 1e-9;
    }

    // E_J / hbar = I_c Phi_0 / (2 pi hbar), rad/ns.
    double josephson_frequency() const {
        const double ic_A = critical_current_uA * 1e-6;
        const double phi0 = constants::flux_quantum_Wb;
        return ic_A * phi0 / (2.0 * M_PI * constants::hbar_Js) * 1e-9;
    }

    // 2 pi L I_c / Phi_0; a double well requires beta_L > 1.
    double screening_parameter() const {
        return 2.0 * M_PI * (inductance_pH * 1e-12) * (critical_current_uA * 1e-6) /
               constants::flux_quantum_Wb;
    }
};

// U(phi) = (Phi_0^2/2L)(phi - phi_x)^2 - E_J cos(2 pi phi), in rad/ns.
inline double potential(const SquidParams& params, double phi) {
    const double d = phi - params.external_flux;
    return params.parabola_coefficient() * d * d -
           params.josephson_frequency() * std::cos(2.0 * M_PI * phi);
}

enum class WellSide { left, right, above_barrier };

// Stationary states of the discretized flux Hamiltonian. Wavefunctions are
// real grid functions (columns, boundary points included), orthonormal under
// the trapezoidal inner product.
struct DeviceSpectrum {
    Eigen::VectorXd phi;            // grid, units of Phi_0
    Eigen::VectorXd energies;       // rad/ns, ascending
    Eigen::MatrixXd wavefunctions;  // n_grid x n_levels
    std::vector<WellSide> well_assignments;
    std::vector<double> mean_flux;  // <phi> per level

    bool double_well = false;
    double barrier_top = 0.0;  // rad/ns
    double barrier_phi = 0.0;  // flux of the local maximum
    std::vector<double> minima_phi;

    int n_levels() const { return static_cast<int>(energies.size()); }
    double grid_spacing() const { return phi[1] - phi[0]; }
};

namespace detail {

// Lowest n eigenpairs of a symmetric tridiagonal matrix (LAPACK dstevr).
inline void tridiag_lowest(const std::vector<double>& diag, const std::vector<double>& subdiag,
                           int n_want, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
    const auto n = static_cast<lapack_int>(diag.size());
    std::vector<double> d = diag;
    std::vector<double> e = subdiag;
    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n) * n_want);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n_want));
    lapack_int found = 0;
    const lapack_int info =
        LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, d.data(), e.data(), 0.0, 0.0, 1,
                       n_want, 0.0, &found, w.data(), z.data(), n, isuppz.data());
    if (info != 0 || found < n_want) {
        throw NumericalError("device: tridiagonal eigensolve did not converge");
    }
    values = Eigen::Map<Eigen::VectorXd>(w.data(), n_want);
    vectors = Eigen::Map<Eigen::MatrixXd>(z.data(), n, n_want);
}

struct PotentialShape {
    bool double_well = false;
    double barrier_top = 0.0;
    double barrier_phi = 0.0;
    std::vector<double> minima_phi;
};

inline PotentialShape scan_potential(const SquidParams& params, const Eigen::VectorXd& phi) {
    PotentialShape shape;
    std::vector<double> maxima_phi;
    std::vector<double> maxima_val;
    for (Eigen::Index i = 1; i + 1 < phi.size(); ++i) {
        const double um = potential(params, phi[i - 1]);
        const double u0 = potential(params, phi[i]);
        const double up = potential(params, phi[i + 1]);
        if (u0 < um && u0 < up) shape.minima_phi.push_back(phi[i]);
        if (u0 > um && u0 > up) {
            maxima_phi.push_back(phi[i]);
            maxima_val.push_back(u0);
        }
    }
    if (shape.minima_phi.size() == 2) {
        // barrier = the local maximum between the two minima
        for (std::size_t k = 0; k < maxima_phi.size(); ++k) {
            if (maxima_phi[k] > shape.minima_phi[0] && maxima_phi[k] < shape.minima_phi[1]) {
                shape.double_well = true;
                shape.barrier_phi = maxima_phi[k];
                shape.barrier_top = maxima_val[k];
                break;
            }
        }
    }
    return shape;
}

}  // namespace detail

// Lowest n_levels eigenpairs of -(kinetic) d^2/dphi^2 + U(phi) with Dirichlet
// boundaries on the configured grid (three-point Laplacian, second order).
// Errors out if any requested wavefunction fails to decay at the boundary.
inline DeviceSpectrum stationary_states(const SquidParams& params, int n_levels) {
    params.validate();
    if (n_levels < 1) throw ValidationError("device: n_levels must be at least 1");
    const SquidGrid grid = params.resolved_grid();
    const int n = grid.n_points;
    const int n_interior = n - 2;
    if (n_levels > n_interior) throw ValidationError("device: n_levels exceeds interior grid size");

    DeviceSpectrum spec;
    spec.phi = Eigen::VectorXd::LinSpaced(n, grid.phi_min, grid.phi_max);
    const double h = spec.phi[1] - spec.phi[0];
    const double kin = params.kinetic_coefficient();

    std::vector<double> diag(static_cast<std::size_t>(n_interior));
    std::vector<double> sub(static_cast<std::size_t>(n_interior - 1), -kin / (h * h));
    for (int i = 0; i < n_interior; ++i) {
        diag[static_cast<std::size_t>(i)] = 2.0 * kin / (h * h) + potential(params, spec.phi[i + 1]);
    }

    Eigen::VectorXd values;
    Eigen::MatrixXd interior;
    detail::tridiag_lowest(diag, sub, n_levels, values, interior);

    spec.energies = values;
    spec.wavefunctions = Eigen::MatrixXd::Zero(n, n_levels);
    const double continuum_scale = 1.0 / std::sqrt(h);  // discrete -> trapezoid normalization
    for (int k = 0; k < n_levels; ++k) {
        Eigen::VectorXd v = interior.col(k);
        // sign convention: largest-magnitude sample positive, ties to lowest index
        Eigen::Index best = 0;
        for (Eigen::Index i = 1; i < v.size(); ++i) {
            if (std::abs(v[i]) > std::abs(v[best])) best = i;
        }
        if (v[best] < 0.0) v = -v;
        spec.wavefunctions.block(1, k, n_interior, 1) = v * continuum_scale;
    }

    // boundary decay check: the grid must be wide enough for every level
    for (int k = 0; k < n_levels; ++k) {
        const double peak = spec.wavefunctions.col(k).cwiseAbs().maxCoeff();
        const double edge = std::max(std::abs(spec.wavefunctions(1, k)),
                                     std::abs(spec.wavefunctions(n - 2, k)));
        if (edge > 1e-8 * peak) {
            throw NumericalError("device: wavefunction " + std::to_string(k) +
                                 " does not decay at the grid boundary; widen the grid");
        }
    }

    const detail::PotentialShape shape = detail::scan_potential(params, spec.phi);
    spec.double_well = shape.double_well;
    spec.barrier_top = shape.barrier_top;
    spec.barrier_phi = shape.barrier_phi;
    spec.minima_phi = shape.minima_phi;

    spec.mean_flux.resize(static_cast<std::size_t>(n_levels));
    spec.well_assignments.resize(static_cast<std::size_t>(n_levels));
    for (int k = 0; k < n_levels; ++k) {
        const Eigen::VectorXd& psi = spec.wavefunctions.col(k);
        spec.mean_flux[static_cast<std::size_t>(k)] =
            h * (spec.phi.array() * psi.array().square()).sum();
        if (spec.double_well && spec.energies[k] > spec.barrier_top) {
            spec.well_assignments[static_cast<std::size_t>(k)] = WellSide::above_barrier;
        } else if (spec.double_well) {
            spec.well_assignments[static_cast<std::size_t>(k)] =
                spec.mean_flux[static_cast<std::size_t>(k)] < spec.barrier_phi ? WellSide::left
                                                                               : WellSide::right;
        } else {
            spec.well_assignments[static_cast<std::size_t>(k)] = WellSide::left;
        }
    }
    return spec;
}

// The three Lambda-system levels: the two lowest states living in distinct
// wells and the lowest state above the barrier.
struct LevelClassification {
    int idx0 = -1;
    int idx1 = -1;
    int idxE = -1;
    std::vector<std::string> warnings;
};

// Fraction of |psi|^2 on the left of the barrier; used to detect states
// delocalized over both wells (symmetric bias).
inline double left_well_weight(const DeviceSpectrum& spec, int level) {
    const double hgrid = spec.grid_spacing();
    double w = 0.0;
    for (Eigen::Index i = 0; i < spec.phi.size(); ++i) {
        if (spec.phi[i] < spec.barrier_phi) w += hgrid * spec.wavefunctions(i, level) * spec.wavefunctions(i, level);
    }
    return w;
}

inline LevelClassification classify_levels(const DeviceSpectrum& spec) {
    if (spec.n_levels() < 3) throw ValidationError("classify_levels: need at least 3 levels");
    if (!spec.double_well) {
        throw ValidationError("classify_levels: potential is not a double well");
    }

    LevelClassification out;
    out.idx0 = 0;
    if (spec.well_assignments[0] == WellSide::above_barrier) {
        throw ValidationError("classify_levels: ground state lies above the barrier");
    }

    // Symmetric bias produces delocalized symmetric/antisymmetric doublets;
    // the side assignment is then meaningless, so report {0, 1} with a warning.
    bool degenerate = false;
    for (int k : {0, 1}) {
        const double w = left_well_weight(spec, k);
        if (w > 0.1 && w < 0.9) degenerate = true;
    }
    if (degenerate) {
        out.idx1 = 1;
        out.warnings.push_back(
            "degenerate wells: the two lowest states are delocalized over both wells");
    } else {
        const WellSide side0 = spec.well_assignments[0];
        for (int k = 1; k < spec.n_levels(); ++k) {
            if (spec.well_assignments[static_cast<std::size_t>(k)] != side0 &&
                spec.well_assignments[static_cast<std::size_t>(k)] != WellSide::above_barrier) {
                out.idx1 = k;
                break;
            }
        }
        if (out.idx1 < 0) {
            throw ValidationError("classify_levels: no second state in the opposite well");
        }
    }

    for (int k = 0; k < spec.n_levels(); ++k) {
        if (spec.well_assignments[static_cast<std::size_t>(k)] == WellSide::above_barrier) {
            out.idxE = k;
            break;
        }
    }
    if (out.idxE < 0) {
        throw ValidationError("classify_levels: no state above the barrier within computed levels");
    }
    return out;
}

// <i| phi |j> by trapezoidal quadrature, in units of Phi_0. Real
// wavefunctions make this exactly symmetric.
inline double flux_matrix_element(const DeviceSpectrum& spec, int i, int j) {
    if (i < 0 || j < 0 || i >= spec.n_levels() || j >= spec.n_levels()) {
        throw ValidationError("flux_matrix_element: level index out of range");
    }
    const double h = spec.grid_spacing();
    return h * (spec.wavefunctions.col(i).array() * spec.phi.array() *
                spec.wavefunctions.col(j).array())
                   .sum();
}

}  // namespace squidsim
