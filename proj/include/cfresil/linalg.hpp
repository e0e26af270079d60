// SPDX-License-Identifier: Apache-2.0
//
// cfresil - resilience simulation for cell-free massive MIMO uplinks
// Copyright (C) 2026 The cfresil authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef cfresil_linalg_H
#define cfresil_linalg_H

#include "cfresil/types.hpp"

// Small Hermitian-matrix toolkit on top of Armadillo's eigensolver.
namespace cfresil
{
    /// Factor L with L * L^H = A for a Hermitian positive semidefinite A.
    /// Eigenvalues below `clip` are set to zero, so rank-deficient inputs are
    /// fine. Throws std::invalid_argument if A has an eigenvalue below
    /// -1e-9 * max(1, |lambda_max|), i.e. A is not PSD.
    arma::cx_mat hermitian_sqrt(const arma::cx_mat &A, double clip = 1e-12);

    /// Moore-Penrose pseudo-inverse of a Hermitian matrix. Eigenvalues with
    /// |lambda| < rel_tol * max|lambda| are treated as zero.
    arma::cx_mat hermitian_pinv(const arma::cx_mat &A, double rel_tol = 1e-12);

    /// Eigenvalues (ascending) of the Hermitian part (A + A^H) / 2.
    arma::vec hermitian_eigenvalues(const arma::cx_mat &A);

    bool is_hermitian(const arma::cx_mat &A, double tol);

    // Standard circularly-symmetric complex Gaussian entries, CN(0, 1).
    arma::cx_vec complex_normal(std::size_t n, Rng &rng);
    arma::cx_mat complex_normal(std::size_t rows, std::size_t cols, Rng &rng);
}

#endif
