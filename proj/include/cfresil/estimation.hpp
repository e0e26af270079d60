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

#ifndef cfresil_estimation_H
#define cfresil_estimation_H

#include "cfresil/channel.hpp"

#include <span>

namespace cfresil
{
    /// Thermal noise power in watts: -174 dBm/Hz + 10 log10(bandwidth) + noise figure.
    double thermal_noise_power(double bandwidth_hz, double noise_figure_db);

    /// Coherence-block split and power levels. Every UE transmits pilots and
    /// data at the same power `uplink_power`.
    struct SystemParams
    {
        std::size_t tau_c = 200;   // symbols per coherence block
        std::size_t tau_p = 10;    // pilot symbols
        std::size_t tau_u = 190;   // uplink data symbols
        double uplink_power = 0.1; // watts per UE
        double bandwidth = 20e6;   // Hz
        double noise_figure_db = 7.0;
        double noise_power = thermal_noise_power(20e6, 7.0); // watts

        /// tau_u / (tau_u + tau_p)
        double prelog() const { return double(tau_u) / double(tau_u + tau_p); }

        /// Throws std::invalid_argument naming the first offending field.
        void validate() const;
    };

    struct PilotAssignment
    {
        std::vector<std::size_t> pilot_of; // length K
        std::vector<UeSet> copilots;       // S_t for t in [0, tau_p)

        std::size_t tau_p() const { return copilots.size(); }
    };

    /// Greedy least-contamination pilot assignment. UEs are processed in
    /// index order; UE k takes the pilot minimizing the summed gain of its
    /// already-assigned users at master_ap[k]. Ties go to the lowest pilot.
    PilotAssignment assign_pilots(const NetworkSnapshot &snapshot, std::span<const ApIndex> master_ap,
                                  std::size_t tau_p);

    /// Pilot t: column t of the tau_p-point DFT scaled to squared norm tau_p.
    arma::cx_vec pilot_sequence(std::size_t t, std::size_t tau_p);

    /// N x tau_p pilot observation at AP m: sum_k sqrt(p) g_mk phi_k^T + noise.
    arma::cx_mat received_pilot(const ChannelRealization &realization, const PilotAssignment &assignment,
                                const SystemParams &params, ApIndex m, Rng &rng);

    /// (1 / sqrt(tau_p)) y phi^*
    arma::cx_vec coarse_estimate(const arma::cx_mat &y_pilot, const arma::cx_vec &pilot);

    /// Covariance of the despread pilot for pilot t at AP m:
    ///   sum_{k in S_t} tau_p p beta_mk R_mk + sigma^2 I
    arma::cx_mat compute_psi(const NetworkSnapshot &snapshot, const PilotAssignment &assignment,
                             const SystemParams &params, ApIndex m, std::size_t t);

    struct MmseEstimate
    {
        arma::cx_vec g_hat;
        arma::cx_mat err_cov;
    };

    /// g_hat = sqrt(p tau_p) beta R Psi^-1 coarse and
    /// C = beta R - p tau_p beta^2 R Psi^-1 R.
    /// Throws std::invalid_argument if psi is singular.
    MmseEstimate mmse_estimate(const arma::cx_vec &coarse, const NetworkSnapshot &snapshot,
                               const SystemParams &params, ApIndex m, UeIndex k, const arma::cx_mat &psi);

    struct EstimationResult
    {
        ApUeGrid<arma::cx_vec> g_hat;
        ApUeGrid<arma::cx_mat> err_cov;
        ApUeGrid<arma::cx_mat> psi; // AP x pilot

        std::size_t num_aps() const { return g_hat.num_aps(); }
        std::size_t num_ues() const { return g_hat.num_ues(); }
        std::size_t antennas() const { return g_hat.size() == 0 ? 0 : g_hat(0, 0).n_elem; }
    };

    /// Full estimation pass over every AP: synthesizes the pilot observation
    /// (AP order, one noise matrix per AP) and runs the MMSE estimator per UE.
    EstimationResult estimate_channels(const NetworkSnapshot &snapshot, const ChannelRealization &realization,
                                       const PilotAssignment &assignment, const SystemParams &params, Rng &rng);
}

#endif
