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
#include "squidsim/state.hpp"

namespace squidsim {

// Eigenpairs of a Hermitian matrix with deterministic conventions:
// eigenvalues ascending, each eigenvector scaled so its largest-magnitude
// component is real and positive (ties broken by lowest index).
struct Eigensystem {
    Eigen::VectorXd values;   // ascending, rad/ns
    Eigen::MatrixXcd vectors; // columns, orthonormal
};

// Applies the phase convention above to one vector.
inline void fix_eigenvector_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index best = 0;
    double best_mag = std::abs(v[0]);
    for (Eigen::Index i = 1; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag == 0.0) return;
    const std::complex<double> phase = v[best] / best_mag;
    v *= std::conj(phase);
    v[best] = std::complex<double>(v[best].real(), 0.0);  // kill rounding residue
}

inline Eigensystem eigendecompose(const Eigen::MatrixXcd& m, double hermitian_tol = 1e-12) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError("eigendecompose: matrix must be square and non-empty");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermiticity_defect(m) > hermitian_tol * scale) {
        throw NumericalError("eigendecompose: input is not Hermitian within tolerance");
    }

    // Symmetrize so the solver sees an exactly Hermitian matrix.
    const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigendecompose: eigensolver did not converge");
    }

    Eigensystem out;
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
        fix_eigenvector_phase(out.vectors.col(k));
    }
    return out;
}

// Same decomposition with the eigenvectors attached to basis labels.
inline std::vector<std::pair<double, StateVector>> eigendecompose_labeled(
    const Eigen::MatrixXcd& m, const std::vector<std::string>& labels,
    double hermitian_tol = 1e-12) {
    if (static_cast<Eigen::Index>(labels.size()) != m.rows()) {
        throw ValidationError("eigendecompose: label count does not match matrix dimension");
    }
    const Eigensystem eig = eigendecompose(m, hermitian_tol);
    std::vector<std::pair<double, StateVector>> out;
    out.reserve(static_cast<std::size_t>(eig.values.size()));
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        out.emplace_back(eig.values[k], StateVector::normalized(labels, eig.vectors.col(k)));
    }
    return out;
}

}  // namespace squidsim
