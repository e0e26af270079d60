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

#include "cfresil/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfresil
{
    std::vector<CdfPoint> empirical_cdf(std::span<const double> values)
    {
        if (values.empty())
            throw std::invalid_argument("Empirical CDF needs at least one sample.");

        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());

        std::vector<CdfPoint> out;
        const double n = double(sorted.size());
        for (std::size_t i = 0; i < sorted.size(); ++i)
        {
            // emit only at the last occurrence of each value
            if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i])
                continue;
            out.push_back({sorted[i], double(i + 1) / n});
        }
        return out;
    }

    void RateAccumulator::add(const RateReport &report)
    {
        if (num_reports_ == 0)
            se_sum_.assign(report.num_ues(), 0.0);
        else if (report.num_ues() != se_sum_.size())
            throw std::invalid_argument("Rate reports disagree on the number of UEs.");
        if (report.outage.size() != report.num_ues())
            throw std::invalid_argument("Rate report has inconsistent lengths.");

        for (std::size_t k = 0; k < se_sum_.size(); ++k)
            se_sum_[k] += report.se[k];
        outage_count_ += std::size_t(std::count(report.outage.begin(), report.outage.end(), true));
        ++num_reports_;
    }

    AggregateResult RateAccumulator::result() const
    {
        if (num_reports_ == 0)
            throw std::logic_error("No rate reports accumulated.");

        AggregateResult out;
        out.num_reports = num_reports_;
        out.per_ue_mean_se.resize(se_sum_.size());
        for (std::size_t k = 0; k < se_sum_.size(); ++k)
            out.per_ue_mean_se[k] = se_sum_[k] / double(num_reports_);

        if (!out.per_ue_mean_se.empty())
        {
            out.min_se = *std::min_element(out.per_ue_mean_se.begin(), out.per_ue_mean_se.end());
            double sum = 0.0;
            for (double v : out.per_ue_mean_se)
                sum += v;
            out.mean_se = sum / double(out.per_ue_mean_se.size());
            out.cdf_points = empirical_cdf(out.per_ue_mean_se);
            out.outage_prob = double(outage_count_) / (double(se_sum_.size()) * double(num_reports_));
        }
        return out;
    }

    AggregateResult aggregate(std::span<const RateReport> reports)
    {
        if (reports.empty())
            throw std::invalid_argument("Cannot aggregate an empty list of rate reports.");
        RateAccumulator acc;
        for (const auto &r : reports)
            acc.add(r);
        return acc.result();
    }
}
