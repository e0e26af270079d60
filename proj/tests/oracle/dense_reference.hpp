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

#ifndef cfresil_tests_dense_reference_H
#define cfresil_tests_dense_reference_H

// Straight-line reference implementation of the uplink on dense
// MN-dimensional vectors and MN x MN selector matrices. Test-only: it shares
// nothing with the sliced implementation in src/uplink.cpp beyond the
// estimate containers, and uses Armadillo's SVD-based pinv / inv.

#include "cfresil/estimation.hpp"
#include "cfresil/uplink.hpp"

namespace cfresil::oracle
{
    /// [g_1k; ...; g_Mk]
    arma::cx_vec stacked(const EstimationResult &est, UeIndex k);

    /// diag(C_1k, ..., C_Mk)
    arma::cx_mat block_err_cov(const EstimationResult &est, UeIndex k);

    /// D_k = diag(D_1k, ..., D_Mk) with D_mk = I_N for members, 0_N otherwise.
    arma::cx_mat selector(const ApSet &cluster, std::size_t num_aps, std::size_t antennas);

    /// P_k = { k' : D_k D_k' != 0 }
    UeSet partial_users(const std::vector<ApSet> &clusters, std::size_t num_aps, std::size_t antennas, UeIndex k);

    /// Partial-MMSE combiner as a length-MN row vector (zeros off the cluster).
    arma::cx_rowvec pmmse(const EstimationResult &est, const std::vector<ApSet> &clusters, const SystemParams &params,
                          UeIndex k);

    /// Centralized MMSE over every antenna and every UE (no selector).
    arma::cx_rowvec full_mmse(const EstimationResult &est, const SystemParams &params, UeIndex k);

    /// SINR of a length-MN combiner with selector D of UE k.
    double sinr(const arma::cx_rowvec &w, const arma::cx_mat &D, const EstimationResult &est,
                const SystemParams &params, UeIndex k);

    /// SINR of the partial model the P-MMSE combiner is built from: interference
    /// and error covariance restricted to P_k. `w` is length MN.
    double partial_sinr(const arma::cx_rowvec &w, const EstimationResult &est, const std::vector<ApSet> &clusters,
                        const SystemParams &params, UeIndex k);

    /// Full per-UE evaluation from pre-failure clusters and an alive mask.
    RateReport evaluate(const EstimationResult &est, const std::vector<ApSet> &clusters,
                        const std::vector<bool> &alive, const SystemParams &params);

    /// Threshold clustering by enumeration: for n = 1..M, take the n largest
    /// reliability-weighted gains by repeated linear argmax and test the
    /// coverage ratio. Returned in ascending AP index order.
    ApSet brute_force_cluster(const arma::vec &beta, const arma::vec &probs, double epsilon, std::size_t min_cluster);
}

#endif
