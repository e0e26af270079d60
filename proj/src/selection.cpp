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

#include "cfresil/selection.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cfresil
{
    std::string_view to_string(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::FailureAware:
            return "faas";
        case Scheme::Agnostic:
            return "agnostic";
        case Scheme::AllAps:
            return "allaps";
        }
        return "unknown";
    }

    Scheme parse_scheme(std::string_view name)
    {
        std::string lower(name);
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c)
                       { return char(std::tolower(c)); });

        if (lower == "faas" || lower == "fa")
            return Scheme::FailureAware;
        if (lower == "agnostic")
            return Scheme::Agnostic;
        if (lower == "allaps" || lower == "all")
            return Scheme::AllAps;
        throw std::invalid_argument("Unknown scheme '" + std::string(name) + "'.");
    }

    std::size_t FailureRealization::num_dead() const
    {
        return std::size_t(std::count(alive.begin(), alive.end(), false));
    }

    arma::vec scale_failure_probs(double alpha, const arma::vec &baseline)
    {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw std::invalid_argument("alpha must lie in [0, 1], got " + std::to_string(alpha));
        if (arma::any(baseline < 0.0) || arma::any(baseline > 1.0) || baseline.has_nan())
            throw std::invalid_argument("Baseline failure probabilities must lie in [0, 1].");
        return alpha * baseline;
    }

    ApIndex select_master(const arma::vec &beta_column)
    {
        if (beta_column.n_elem == 0)
            throw std::invalid_argument("Master selection needs at least one AP.");
        ApIndex best = 0;
        for (ApIndex m = 1; m < beta_column.n_elem; ++m)
            if (beta_column[m] > beta_column[best])
                best = m;
        return best;
    }

    std::vector<ApIndex> select_masters(const NetworkSnapshot &snapshot)
    {
        std::vector<ApIndex> masters(snapshot.num_ues());
        for (UeIndex k = 0; k < snapshot.num_ues(); ++k)
            masters[k] = select_master(snapshot.beta.col(k));
        return masters;
    }

    ApSet select_cluster(const arma::vec &beta_column, const arma::vec &failure_probs, double epsilon,
                         std::size_t min_cluster)
    {
        const std::size_t M = beta_column.n_elem;
        if (failure_probs.n_elem != M)
            throw std::invalid_argument("Gain and failure-probability vectors differ in length.");
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("epsilon must lie in (0, 1).");

        std::vector<double> weight(M);
        for (ApIndex m = 0; m < M; ++m)
            weight[m] = beta_column[m] * (1.0 - failure_probs[m]);

        double total = 0.0;
        for (double w : weight)
            total += w;
        if (!(total > 0.0))
            return {};

        std::vector<ApIndex> order(M);
        std::iota(order.begin(), order.end(), ApIndex{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](ApIndex a, ApIndex b)
                         { return weight[a] > weight[b]; });

        std::size_t size = M;
        double cumulative = 0.0;
        for (std::size_t i = 0; i < M; ++i)
        {
            cumulative += weight[order[i]];
            if (cumulative / total >= epsilon)
            {
                size = i + 1;
                break;
            }
        }
        size = std::min(M, std::max(size, min_cluster));
        order.resize(size);
        return order;
    }

    ClusterAssignment assign_clusters(const NetworkSnapshot &snapshot, Scheme scheme, const arma::vec &failure_probs,
                                      double epsilon, std::size_t min_cluster)
    {
        const std::size_t M = snapshot.num_aps(), K = snapshot.num_ues();

        ClusterAssignment out;
        out.scheme = scheme;
        out.epsilon = epsilon;
        out.min_cluster = min_cluster;
        out.clusters.resize(K);
        out.master_ap.resize(K);

        const arma::vec no_failures(M, arma::fill::zeros);
        for (UeIndex k = 0; k < K; ++k)
        {
            const arma::vec beta = snapshot.beta.col(k);
            ApSet ranked;
            switch (scheme)
            {
            case Scheme::FailureAware:
                ranked = select_cluster(beta, failure_probs, epsilon, min_cluster);
                break;
            case Scheme::Agnostic:
                ranked = select_cluster(beta, no_failures, epsilon, min_cluster);
                break;
            case Scheme::AllAps:
                ranked = select_cluster(beta, no_failures, epsilon, M);
                break;
            }

            out.master_ap[k] = ranked.empty() ? select_master(beta) : ranked.front();
            std::sort(ranked.begin(), ranked.end());
            out.clusters[k] = std::move(ranked);
        }
        return out;
    }

    arma::cx_vec Selector::apply(const arma::cx_vec &stacked) const
    {
        if (stacked.n_elem != member.size() * antennas)
            throw std::invalid_argument("Stacked vector length does not match M * N.");
        arma::cx_vec out = stacked;
        for (ApIndex m = 0; m < member.size(); ++m)
            if (!member[m])
                out.subvec(m * antennas, (m + 1) * antennas - 1).zeros();
        return out;
    }

    Selector build_selector(const ApSet &cluster, std::size_t num_aps, std::size_t antennas)
    {
        Selector sel;
        sel.antennas = antennas;
        sel.member.assign(num_aps, false);
        for (ApIndex m : cluster)
        {
            if (m >= num_aps)
                throw std::invalid_argument("Cluster contains an AP index out of range.");
            sel.member[m] = true;
        }
        return sel;
    }

    FailureRealization sample_failures(const arma::vec &effective_probs, Rng &rng)
    {
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        FailureRealization out;
        out.effective_probs = effective_probs;
        out.alive.resize(effective_probs.n_elem);
        for (ApIndex m = 0; m < effective_probs.n_elem; ++m)
            out.alive[m] = !(uniform(rng) < effective_probs[m]);
        return out;
    }

    ApSet surviving_cluster(const ApSet &cluster, const FailureRealization &failures)
    {
        ApSet out;
        out.reserve(cluster.size());
        for (ApIndex m : cluster)
            if (failures.alive.at(m))
                out.push_back(m);
        std::sort(out.begin(), out.end());
        return out;
    }
}
