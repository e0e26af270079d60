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

#ifndef cfresil_geometry_H
#define cfresil_geometry_H

#include "cfresil/types.hpp"

#include <vector>

namespace cfresil
{
    struct Point2
    {
        double x = 0.0; // meters
        double y = 0.0; // meters
    };

    /// Deployment and propagation parameters of one network drop.
    ///
    /// Large-scale gain in dB is
    ///   pathloss_intercept_db - pathloss_exponent_db * log10(d / 1 m) + F,
    /// with F ~ N(0, shadow_std_db^2) drawn independently per AP-UE pair.
    struct NetworkConfig
    {
        double area_side = 1000.0;            // meters, square side with wrap-around
        std::size_t num_aps = 100;            // M
        std::size_t antennas_per_ap = 1;      // N
        std::size_t num_ues = 20;             // K
        double ap_height = 10.0;              // meters above the UEs
        double pathloss_intercept_db = -30.5; // dB at 1 m
        double pathloss_exponent_db = 36.7;   // dB per decade of distance
        double shadow_std_db = 4.0;           // dB
        double asd_deg = 15.0;                // angular standard deviation, degrees

        /// Throws std::invalid_argument naming the first offending field.
        void validate() const;
    };

    /// Range for the baseline per-AP failure probabilities, drawn uniformly.
    struct FailureRange
    {
        double low = 0.01;
        double high = 0.1;

        void validate() const;
    };

    /// One random network drop. Immutable after build_snapshot.
    struct NetworkSnapshot
    {
        std::vector<Point2> ap_positions;
        std::vector<Point2> ue_positions;
        arma::mat beta;                  // M x K large-scale gains (linear)
        ApUeGrid<arma::cx_mat> corr;     // N x N spatial correlation, trace N
        arma::vec baseline_failure_probs; // length M

        std::size_t num_aps() const { return ap_positions.size(); }
        std::size_t num_ues() const { return ue_positions.size(); }
        std::size_t antennas() const { return corr.size() == 0 ? 0 : corr(0, 0).n_rows; }
    };

    /// `count` points i.i.d. uniform on [0, area_side)^2; x then y per point.
    std::vector<Point2> place_uniform(std::size_t count, double area_side, Rng &rng);

    /// Planar displacement b - a taken over the nearest of the 9 torus translates of b.
    Point2 wraparound_offset(Point2 a, Point2 b, double area_side);

    /// 3D distance on the torus: sqrt(d_min^2 + ap_height^2).
    double wraparound_distance(Point2 a, Point2 b, double area_side, double ap_height);

    /// Linear large-scale gain at `distance` meters with `shadow_db` shadowing.
    double large_scale_gain(double distance, double shadow_db, const NetworkConfig &config);

    /// Gaussian local-scattering correlation of a half-wavelength ULA:
    ///   R(a, b) = exp(j pi (a-b) sin(theta)) exp(-asd^2 / 2 (pi (a-b) cos(theta))^2)
    /// renormalized to trace N. Angles in radians.
    arma::cx_mat local_scattering_correlation(std::size_t antennas, double nominal_angle, double asd);

    /// Draw a full snapshot. Draw order: AP positions, UE positions, shadowing
    /// (AP-major), baseline failure probabilities.
    NetworkSnapshot build_snapshot(const NetworkConfig &config, FailureRange failure_range, Rng &rng);
}

#endif
