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

#include "cfresil/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cfresil
{
    void NetworkConfig::validate() const
    {
        auto fail = [](const std::string &field, const std::string &why)
        { throw std::invalid_argument("network." + field + ": " + why); };

        if (!(area_side > 0.0))
            fail("area_side", "must be positive");
        if (num_aps < 1)
            fail("num_aps", "must be at least 1");
        if (antennas_per_ap < 1)
            fail("antennas_per_ap", "must be at least 1");
        if (num_ues < 1)
            fail("num_ues", "must be at least 1");
        if (!(ap_height >= 0.0))
            fail("ap_height", "must be non-negative");
        if (!(shadow_std_db >= 0.0))
            fail("shadow_std_db", "must be non-negative");
        if (!(asd_deg > 0.0 && asd_deg <= 90.0))
            fail("asd_deg", "must lie in (0, 90]");
        if (!std::isfinite(pathloss_intercept_db))
            fail("pathloss_intercept_db", "must be finite");
        if (!std::isfinite(pathloss_exponent_db))
            fail("pathloss_exponent_db", "must be finite");
    }

    void FailureRange::validate() const
    {
        if (!(low >= 0.0 && low <= 1.0))
            throw std::invalid_argument("failure_low: must lie in [0, 1]");
        if (!(high >= 0.0 && high <= 1.0))
            throw std::invalid_argument("failure_high: must lie in [0, 1]");
        if (low > high)
            throw std::invalid_argument("failure_low: must not exceed failure_high");
    }

    std::vector<Point2> place_uniform(std::size_t count, double area_side, Rng &rng)
    {
        if (!(area_side > 0.0))
            throw std::invalid_argument("Area side must be positive.");

        std::uniform_real_distribution<double> uniform(0.0, area_side);
        std::vector<Point2> points(count);
        for (auto &p : points)
        {
            p.x = uniform(rng);
            p.y = uniform(rng);
        }
        return points;
    }

    Point2 wraparound_offset(Point2 a, Point2 b, double area_side)
    {
        Point2 best{b.x - a.x, b.y - a.y};
        double best_sq = std::numeric_limits<double>::infinity();
        for (int i = -1; i <= 1; ++i)
            for (int j = -1; j <= 1; ++j)
            {
                const double dx = b.x + i * area_side - a.x;
                const double dy = b.y + j * area_side - a.y;
                const double sq = dx * dx + dy * dy;
                if (sq < best_sq)
                {
                    best_sq = sq;
                    best = {dx, dy};
                }
            }
        return best;
    }

    double wraparound_distance(Point2 a, Point2 b, double area_side, double ap_height)
    {
        const Point2 d = wraparound_offset(a, b, area_side);
        return std::sqrt(d.x * d.x + d.y * d.y + ap_height * ap_height);
    }

    double large_scale_gain(double distance, double shadow_db, const NetworkConfig &config)
    {
        if (!(distance > 0.0))
            throw std::invalid_argument("Distance must be positive.");

        const double gain_db = config.pathloss_intercept_db -
                               config.pathloss_exponent_db * std::log10(distance) + shadow_db;
        return std::pow(10.0, gain_db / 10.0);
    }

    arma::cx_mat local_scattering_correlation(std::size_t antennas, double nominal_angle, double asd)
    {
        const double pi = std::numbers::pi;
        arma::cx_mat R(antennas, antennas);
        for (std::size_t a = 0; a < antennas; ++a)
            for (std::size_t b = 0; b < antennas; ++b)
            {
                const double dist = double(a) - double(b);
                const double spread = pi * dist * std::cos(nominal_angle);
                const double magnitude = std::exp(-0.5 * asd * asd * spread * spread);
                R(a, b) = std::polar(magnitude, pi * dist * std::sin(nominal_angle));
            }

        // Diagonal is exactly 1 already; keep the normalization explicit.
        const double trace = std::real(arma::trace(R));
        return R * (double(antennas) / trace);
    }

    NetworkSnapshot build_snapshot(const NetworkConfig &config, FailureRange failure_range, Rng &rng)
    {
        config.validate();
        failure_range.validate();

        const std::size_t M = config.num_aps, K = config.num_ues, N = config.antennas_per_ap;
        const double asd = config.asd_deg * std::numbers::pi / 180.0;

        NetworkSnapshot snap;
        snap.ap_positions = place_uniform(M, config.area_side, rng);
        snap.ue_positions = place_uniform(K, config.area_side, rng);
        snap.beta.set_size(M, K);
        snap.corr = ApUeGrid<arma::cx_mat>(M, K);

        std::normal_distribution<double> shadowing(0.0, 1.0);
        for (std::size_t m = 0; m < M; ++m)
            for (std::size_t k = 0; k < K; ++k)
            {
                const Point2 &ap = snap.ap_positions[m];
                const Point2 &ue = snap.ue_positions[k];
                const Point2 d = wraparound_offset(ap, ue, config.area_side);
                const double distance = std::sqrt(d.x * d.x + d.y * d.y + config.ap_height * config.ap_height);
                const double shadow_db = config.shadow_std_db * shadowing(rng);

                snap.beta(m, k) = large_scale_gain(distance, shadow_db, config);
                snap.corr(m, k) = local_scattering_correlation(N, std::atan2(d.y, d.x), asd);
            }

        std::uniform_real_distribution<double> failure(failure_range.low, failure_range.high);
        snap.baseline_failure_probs.set_size(M);
        for (auto &p : snap.baseline_failure_probs)
            p = failure_range.low == failure_range.high ? failure_range.low : failure(rng);

        return snap;
    }
}
