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

#include "cfresil/uplink.hpp"
#include "cfresil/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cfresil
{
    namespace
    {
        bool intersects(const ApSet &a, const ApSet &b)
        {
            auto i = a.begin();
            auto j = b.begin();
            while (i != a.end() && j != b.end())
            {
                if (*i == *j)
                    return true;
                if (*i < *j)
                    ++i;
                else
                    ++j;
            }
            return false;
        }

        // Estimates of `ues` stacked column-wise over the APs of `active`.
        arma::cx_mat stack_estimates(const EstimationResult &est, const ApSet &active, const UeSet &ues)
        {
            const std::size_t N = est.antennas();
            arma::cx_mat out(N * active.size(), ues.size());
            for (std::size_t c = 0; c < ues.size(); ++c)
                for (std::size_t i = 0; i < active.size(); ++i)
                    out.col(c).subvec(i * N, (i + 1) * N - 1) = est.g_hat(active[i], ues[c]);
            return out;
        }

        UeSet all_ues(std::size_t K)
        {
            UeSet out(K);
            for (UeIndex k = 0; k < K; ++k)
                out[k] = k;
            return out;
        }

        // [ sum_P p g g^H + blockdiag(sum_P p C + sigma^2 I) ]^+ on `active`
        arma::cx_mat pmmse_inverse(const EstimationResult &est, const ApSet &active, const UeSet &partial,
                                   const SystemParams &params)
        {
            const std::size_t N = est.antennas();
            const double p = params.uplink_power;

            const arma::cx_mat V = stack_estimates(est, active, partial);
            arma::cx_mat gram = p * (V * V.t());
            for (std::size_t i = 0; i < active.size(); ++i)
            {
                arma::cx_mat block = params.noise_power * arma::cx_mat(N, N, arma::fill::eye);
                for (UeIndex kp : partial)
                    block += p * est.err_cov(active[i], kp);
                gram.submat(i * N, i * N, (i + 1) * N - 1, (i + 1) * N - 1) += block;
            }
            return hermitian_pinv(gram, 1e-12);
        }

        double sinr_from_projection(const arma::cx_rowvec &w, const arma::cx_rowvec &projection, const ApSet &active,
                                    const std::vector<arma::cx_mat> &impairment, std::size_t N, double p, UeIndex k)
        {
            const double signal = p * std::norm(projection[k]);
            double interference = 0.0;
            for (UeIndex kp = 0; kp < projection.n_elem; ++kp)
                if (kp != k)
                    interference += p * std::norm(projection[kp]);

            double noise = 0.0;
            for (std::size_t i = 0; i < active.size(); ++i)
            {
                const arma::cx_rowvec wi = w.subvec(i * N, (i + 1) * N - 1);
                noise += std::real(arma::cdot(wi.t(), impairment[active[i]] * wi.t()));
            }

            const double denominator = interference + noise;
            if (!(denominator > 0.0))
                return 0.0;
            return signal / denominator;
        }

        std::vector<arma::cx_mat> impairment_per_ap(const EstimationResult &est, const SystemParams &params)
        {
            const std::size_t N = est.antennas();
            std::vector<arma::cx_mat> out(est.num_aps());
            for (ApIndex m = 0; m < est.num_aps(); ++m)
            {
                out[m] = params.noise_power * arma::cx_mat(N, N, arma::fill::eye);
                for (UeIndex k = 0; k < est.num_ues(); ++k)
                    out[m] += params.uplink_power * est.err_cov(m, k);
            }
            return out;
        }
    }

    std::vector<ApSet> surviving_clusters(const ClusterAssignment &clusters, const FailureRealization &failures)
    {
        std::vector<ApSet> out(clusters.num_ues());
        for (UeIndex k = 0; k < clusters.num_ues(); ++k)
            out[k] = surviving_cluster(clusters.clusters[k], failures);
        return out;
    }

    UeSet partial_set(const std::vector<ApSet> &clusters, UeIndex k)
    {
        UeSet out;
        for (UeIndex kp = 0; kp < clusters.size(); ++kp)
            if (intersects(clusters.at(k), clusters[kp]))
                out.push_back(kp);
        return out;
    }

    arma::cx_vec stack_estimate(const EstimationResult &estimates, const ApSet &active, UeIndex k)
    {
        return stack_estimates(estimates, active, UeSet{k}).col(0);
    }

    arma::cx_rowvec mr_weights(const EstimationResult &estimates, const ApSet &active, UeIndex k)
    {
        return stack_estimate(estimates, active, k).t();
    }

    std::optional<arma::cx_rowvec> pmmse_weights(const EstimationResult &estimates, const ClusterAssignment &clusters,
                                                 const FailureRealization &failures, const SystemParams &params,
                                                 UeIndex k)
    {
        const std::vector<ApSet> active = surviving_clusters(clusters, failures);
        if (active.at(k).empty())
            return std::nullopt;

        const UeSet partial = partial_set(active, k);
        const arma::cx_mat inverse = pmmse_inverse(estimates, active[k], partial, params);
        return arma::cx_rowvec(params.uplink_power * stack_estimate(estimates, active[k], k).t() * inverse);
    }

    double sinr(const arma::cx_rowvec &w, const ApSet &active, const EstimationResult &estimates,
                const SystemParams &params, UeIndex k)
    {
        if (active.empty())
            return 0.0;
        const std::size_t N = estimates.antennas();
        if (w.n_elem != N * active.size())
            throw std::invalid_argument("Combiner length does not match the active cluster.");

        const arma::cx_mat G = stack_estimates(estimates, active, all_ues(estimates.num_ues()));
        const arma::cx_rowvec projection = w * G;
        return sinr_from_projection(w, projection, active, impairment_per_ap(estimates, params), N,
                                    params.uplink_power, k);
    }

    double sinr(const CombinerSet &combiners, const EstimationResult &estimates, const SystemParams &params,
                UeIndex k)
    {
        return sinr(combiners.weights.at(k), combiners.active.at(k), estimates, params, k);
    }

    UplinkEvaluator::UplinkEvaluator(const EstimationResult &estimates, const SystemParams &params)
        : estimates_(estimates), params_(params), impairment_(impairment_per_ap(estimates, params))
    {
    }

    CombinerSet UplinkEvaluator::combiners(const ClusterAssignment &clusters, const FailureRealization &failures) const
    {
        const std::size_t K = clusters.num_ues();
        if (K != estimates_.num_ues())
            throw std::invalid_argument("Cluster assignment and estimates disagree on the number of UEs.");

        CombinerSet out;
        out.active = surviving_clusters(clusters, failures);
        out.partial_sets.resize(K);
        out.weights.resize(K);

        std::map<std::pair<ApSet, UeSet>, arma::cx_mat> inverses;
        for (UeIndex k = 0; k < K; ++k)
        {
            if (out.active[k].empty())
                continue;
            out.partial_sets[k] = partial_set(out.active, k);

            auto key = std::make_pair(out.active[k], out.partial_sets[k]);
            auto it = inverses.find(key);
            if (it == inverses.end())
                it = inverses.emplace(std::move(key),
                                      pmmse_inverse(estimates_, out.active[k], out.partial_sets[k], params_))
                         .first;

            out.weights[k] = params_.uplink_power * stack_estimate(estimates_, out.active[k], k).t() * it->second;
        }
        return out;
    }

    RateReport UplinkEvaluator::evaluate(const ClusterAssignment &clusters, const FailureRealization &failures) const
    {
        const std::size_t K = clusters.num_ues();
        const std::size_t N = estimates_.antennas();
        const CombinerSet comb = combiners(clusters, failures);
        const UeSet everyone = all_ues(K);

        RateReport report;
        report.sinr.assign(K, 0.0);
        report.se.assign(K, 0.0);
        report.outage.assign(K, false);

        std::map<ApSet, arma::cx_mat> stacked;
        for (UeIndex k = 0; k < K; ++k)
        {
            if (comb.active[k].empty())
            {
                report.outage[k] = true;
                continue;
            }
            auto it = stacked.find(comb.active[k]);
            if (it == stacked.end())
                it = stacked.emplace(comb.active[k], stack_estimates(estimates_, comb.active[k], everyone)).first;

            const arma::cx_rowvec projection = comb.weights[k] * it->second;
            report.sinr[k] = sinr_from_projection(comb.weights[k], projection, comb.active[k], impairment_, N,
                                                  params_.uplink_power, k);
            report.se[k] = params_.prelog() * std::log2(1.0 + report.sinr[k]);
        }
        return report;
    }

    RateReport evaluate_rates(const NetworkSnapshot &snapshot, const EstimationResult &estimates,
                              const ClusterAssignment &clusters, const FailureRealization &failures,
                              const SystemParams &params)
    {
        if (snapshot.num_aps() != estimates.num_aps() || snapshot.num_ues() != estimates.num_ues())
            throw std::invalid_argument("Snapshot and estimates disagree on dimensions.");
        if (failures.alive.size() != snapshot.num_aps())
            throw std::invalid_argument("Failure mask length does not match the number of APs.");
        return UplinkEvaluator(estimates, params).evaluate(clusters, failures);
    }
}
