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

#ifndef cfresil_uplink_H
#define cfresil_uplink_H

#include "cfresil/estimation.hpp"
#include "cfresil/selection.hpp"

#include <optional>

namespace cfresil
{
    // Uplink combining and SINR evaluation.
    //
    // All vectors and matrices here live on the antenna coordinates of one
    // UE's surviving cluster A (ascending AP order, N entries per AP). The
    // selector D_k is realized by this slicing: zero blocks of D_k never
    // enter the algebra, so a cluster of n APs costs nN x nN matrices
    // regardless of M.
    //
    // The CPU is assumed to know which APs died: clusters are fixed before
    // the failure draw and combining runs over the survivors only.

    struct CombinerSet
    {
        std::vector<ApSet> active;            // surviving cluster per UE
        std::vector<UeSet> partial_sets;      // P_k over surviving clusters
        std::vector<arma::cx_rowvec> weights; // N |active[k]| entries; empty on outage
    };

    struct RateReport
    {
        std::vector<double> sinr;
        std::vector<double> se; // bits/s/Hz, prelog included
        std::vector<bool> outage;

        std::size_t num_ues() const { return se.size(); }
    };

    /// Surviving cluster of every UE.
    std::vector<ApSet> surviving_clusters(const ClusterAssignment &clusters, const FailureRealization &failures);

    /// { k' : clusters[k] and clusters[k'] share an AP }. Clusters must be sorted.
    UeSet partial_set(const std::vector<ApSet> &clusters, UeIndex k);

    /// Estimates of UE k stacked over the APs of `active`.
    arma::cx_vec stack_estimate(const EstimationResult &estimates, const ApSet &active, UeIndex k);

    /// Maximum-ratio combiner g_hat_k^H restricted to `active`.
    arma::cx_rowvec mr_weights(const EstimationResult &estimates, const ApSet &active, UeIndex k);

    /// Partial-MMSE combiner
    ///   w = p g_k^H [ sum_{P} p g g^H + blockdiag(sum_{P} p C + sigma^2 I) ]^+
    /// on the surviving cluster of k. Returns nullopt when that cluster is empty.
    std::optional<arma::cx_rowvec> pmmse_weights(const EstimationResult &estimates, const ClusterAssignment &clusters,
                                                 const FailureRealization &failures, const SystemParams &params,
                                                 UeIndex k);

    /// Uplink SINR of UE k for combiner w on `active`:
    ///   p |w g_k|^2 / ( sum_{k' != k} p |w g_k'|^2 + w zeta w^H ),
    /// zeta = blockdiag(sum_{all k'} p C_{mk'} + sigma^2 I). Zero for an empty cluster.
    double sinr(const arma::cx_rowvec &w, const ApSet &active, const EstimationResult &estimates,
                const SystemParams &params, UeIndex k);

    double sinr(const CombinerSet &combiners, const EstimationResult &estimates, const SystemParams &params,
                UeIndex k);

    /// Evaluator bound to one estimation pass. Precomputes the per-AP noise
    /// plus estimation-error covariance so that repeated failure draws only
    /// pay for the combiners. Reuses one pseudo-inverse for UEs that share
    /// both surviving cluster and partial set.
    class UplinkEvaluator
    {
    public:
        UplinkEvaluator(const EstimationResult &estimates, const SystemParams &params);

        CombinerSet combiners(const ClusterAssignment &clusters, const FailureRealization &failures) const;

        RateReport evaluate(const ClusterAssignment &clusters, const FailureRealization &failures) const;

        /// sum_{all k'} p C_{mk'} + sigma^2 I at AP m.
        const arma::cx_mat &impairment(ApIndex m) const { return impairment_[m]; }

    private:
        const EstimationResult &estimates_;
        SystemParams params_;
        std::vector<arma::cx_mat> impairment_;
    };

    /// Per-UE SINR and spectral efficiency for one failure realization.
    /// Outage UEs get SINR 0, SE 0 and the outage flag.
    RateReport evaluate_rates(const NetworkSnapshot &snapshot, const EstimationResult &estimates,
                              const ClusterAssignment &clusters, const FailureRealization &failures,
                              const SystemParams &params);
}

#endif
