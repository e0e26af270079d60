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

#ifndef cfresil_metrics_H
#define cfresil_metrics_H

#include "cfresil/uplink.hpp"

#include <span>

namespace cfresil
{
    struct CdfPoint
    {
        double value = 0.0;
        double cumulative = 0.0; // fraction of samples <= value
    };

    /// Resilience metrics over a set of rate reports sharing the same UEs.
    struct AggregateResult
    {
        double min_se = 0.0;      // min_k of the failure-averaged SE
        double mean_se = 0.0;     // mean_k of the failure-averaged SE
        double outage_prob = 0.0; // outage flags / (K * reports)
        std::vector<double> per_ue_mean_se;
        std::vector<CdfPoint> cdf_points; // CDF of per_ue_mean_se
        std::size_t num_reports = 0;
    };

    /// One step per distinct value, cumulative fraction of samples <= value.
    /// Throws std::invalid_argument on empty input.
    std::vector<CdfPoint> empirical_cdf(std::span<const double> values);

    /// Streaming form of aggregate(); adding reports one at a time gives the
    /// same result as aggregating the whole list.
    class RateAccumulator
    {
    public:
        void add(const RateReport &report);

        std::size_t num_reports() const { return num_reports_; }

        /// Throws std::logic_error if nothing was added.
        AggregateResult result() const;

    private:
        std::vector<double> se_sum_;
        std::size_t outage_count_ = 0;
        std::size_t num_reports_ = 0;
    };

    /// Throws std::invalid_argument on an empty list or mismatched K.
    AggregateResult aggregate(std::span<const RateReport> reports);
}

#endif
