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

#include "cfresil/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace cfresil
{
    namespace
    {
        void hermitian_eig(const arma::cx_mat &A, arma::vec &eigval, arma::cx_mat &eigvec)
        {
            if (A.n_rows != A.n_cols)
                throw std::invalid_argument("Hermitian decomposition needs a square matrix.");

            const arma::cx_mat H = 0.5 * (A + A.t());
            if (!arma::eig_sym(eigval, eigvec, H))
                throw std::runtime_error("Hermitian eigendecomposition failed to converge.");
        }
    }

    arma::cx_mat hermitian_sqrt(const arma::cx_mat &A, double clip)
    {
        if (A.n_elem == 0)
            return arma::cx_mat(A.n_rows, A.n_cols);

        arma::vec eigval;
        arma::cx_mat eigvec;
        hermitian_eig(A, eigval, eigvec);

        const double scale = std::max(1.0, arma::abs(eigval).max());
        if (eigval.min() < -1e-9 * scale)
            throw std::invalid_argument("Matrix is not positive semidefinite.");

        for (auto &lambda : eigval)
            lambda = lambda < clip ? 0.0 : std::sqrt(lambda);

        return eigvec * arma::diagmat(arma::conv_to<arma::cx_vec>::from(eigval)) * eigvec.t();
    }

    arma::cx_mat hermitian_pinv(const arma::cx_mat &A, double rel_tol)
    {
        if (A.n_elem == 0)
            return arma::cx_mat(A.n_cols, A.n_rows);

        arma::vec eigval;
        arma::cx_mat eigvec;
        hermitian_eig(A, eigval, eigvec);

        const double cutoff = rel_tol * arma::abs(eigval).max();
        arma::vec inv_eig(eigval.n_elem, arma::fill::zeros);
        for (arma::uword i = 0; i < eigval.n_elem; ++i)
            if (std::abs(eigval[i]) > cutoff && eigval[i] != 0.0)
                inv_eig[i] = 1.0 / eigval[i];

        // V diag(1/lambda) V^H, scaling columns instead of forming the diagonal
        arma::cx_mat scaled = eigvec;
        scaled.each_row() %= arma::conv_to<arma::cx_rowvec>::from(inv_eig.t());
        return scaled * eigvec.t();
    }

    arma::vec hermitian_eigenvalues(const arma::cx_mat &A)
    {
        if (A.n_rows != A.n_cols)
            throw std::invalid_argument("Hermitian decomposition needs a square matrix.");
        arma::vec eigval;
        if (!arma::eig_sym(eigval, arma::cx_mat(0.5 * (A + A.t()))))
            throw std::runtime_error("Hermitian eigendecomposition failed to converge.");
        return eigval;
    }

    bool is_hermitian(const arma::cx_mat &A, double tol)
    {
        if (A.n_rows != A.n_cols)
            return false;
        return arma::abs(A - A.t()).max() <= tol;
    }

    arma::cx_vec complex_normal(std::size_t n, Rng &rng)
    {
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        arma::cx_vec out(n);
        for (auto &v : out)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            v = cx(re, im);
        }
        return out;
    }

    arma::cx_mat complex_normal(std::size_t rows, std::size_t cols, Rng &rng)
    {
        arma::cx_mat out(rows, cols);
        // column-major fill, same draw order as the vector overload
        arma::cx_vec flat = complex_normal(rows * cols, rng);
        std::copy(flat.begin(), flat.end(), out.begin());
        return out;
    }
}
