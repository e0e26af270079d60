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

#ifndef cfresil_selection_H
#define cfresil_selection_H

#include "cfresil/geometry.hpp"

#include <string>
#include <string_view>

namespace cfresil
{
    enum class Scheme
    {
        FailureAware, // reliability-weighted clustering
        Agnostic,     // same threshold rule, failure probabilities ignored
        AllAps        // every AP serves every UE
    };

    /// "faas", "agnostic" or "allaps".
    std::string_view to_string(Scheme scheme);

    /// Accepts the names above (case-insensitive) plus "all" and "fa".
    /// Throws std::invalid_argument otherwise.
    Scheme parse_scheme(std::string_view name);

    /// Serving clusters chosen before any failure is drawn.
    ///
    /// `master_ap[k]` is the first AP of cluster k in ranking order, i.e.
    /// the strongest reliability-weighted AP, so it is always a member of a
    /// non-empty cluster. For the agnostic and all-APs schemes it equals the
    /// strongest-gain AP that anchors pilot assignment (select_master); with
    /// failure awareness the two can differ. Pilots never depend on the scheme.
    struct ClusterAssignment
    {
        Scheme scheme = Scheme::FailureAware;
        double epsilon = 0.9;
        std::size_t min_cluster = 2;
        std::vector<ApSet> clusters; // ascending AP index per UE
        std::vector<ApIndex> master_ap;

        std::size_t num_ues() const { return clusters.size(); }
        bool servable(UeIndex k) const { return !clusters[k].empty(); }
    };

    struct FailureRealization
    {
        std::vector<bool> alive;
        arma::vec effective_probs;

        std::size_t num_dead() const;
    };

    /// alpha * baseline, elementwise. Rejects alpha outside [0, 1] and
    /// baseline entries outside [0, 1].
    arma::vec scale_failure_probs(double alpha, const arma::vec &baseline);

    /// argmax of the column, ties to the lowest index.
    ApIndex select_master(const arma::vec &beta_column);

    /// Master AP of every UE of the snapshot.
    std::vector<ApIndex> select_masters(const NetworkSnapshot &snapshot);

    /// Reliability-weighted threshold clustering.
    ///
    /// APs are ranked by w_m = beta_m (1 - p_m) in descending order (ties to
    /// the lower index). The cluster is the shortest prefix whose share of
    /// the total weight sum_m w_m reaches epsilon, extended down the ranking
    /// to at least min_cluster APs (or all M if M < min_cluster). Passing an
    /// all-zero probability vector gives the failure-agnostic rule.
    ///
    /// Returns the cluster in ranking order. An empty result means every
    /// weight is zero and the UE cannot be served.
    ApSet select_cluster(const arma::vec &beta_column, const arma::vec &failure_probs, double epsilon,
                         std::size_t min_cluster);

    /// Clusters for all UEs under `scheme`. `failure_probs` are the scaled
    /// probabilities known to the CPU; they only affect the FailureAware scheme.
    ClusterAssignment assign_clusters(const NetworkSnapshot &snapshot, Scheme scheme, const arma::vec &failure_probs,
                                      double epsilon, std::size_t min_cluster);

    /// Block-diagonal selector D_k kept as a membership mask, never as a
    /// dense MN x MN matrix.
    struct Selector
    {
        std::size_t antennas = 1;
        std::vector<bool> member; // length M

        bool contains(ApIndex m) const { return member[m]; }

        /// D_k x for a stacked length-MN vector x.
        arma::cx_vec apply(const arma::cx_vec &stacked) const;
    };

    Selector build_selector(const ApSet &cluster, std::size_t num_aps, std::size_t antennas);

    /// alive[m] = (u_m >= p_m) with u_m ~ U[0, 1) drawn in AP order. Reusing
    /// the same stream with larger probabilities kills a superset of APs.
    FailureRealization sample_failures(const arma::vec &effective_probs, Rng &rng);

    /// Cluster members that are still alive, in ascending AP index order.
    /// Empty means the UE is in outage.
    ApSet surviving_cluster(const ApSet &cluster, const FailureRealization &failures);
}

#endif
