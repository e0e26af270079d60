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

#include "cfresil/estimation.hpp"
#include "cfresil/linalg.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cfresil
{
    double thermal_noise_power(double bandwidth_hz, double noise_figure_db)
    {
        const double dbm = -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    void SystemParams::validate() const
    {
        auto fail = [](const std::string &field, const std::string &why)
        { throw std::invalid_argument("system." + field + ": " + why); };

        if (tau_p < 1)
            fail("tau_p", "must be at least 1");
        if (tau_u < 1)
            fail("tau_u", "must be at least 1");
        if (tau_u + tau_p > tau_c)
            fail("tau_u", "tau_u + tau_p must not exceed tau_c");
        if (!(uplink_power > 0.0))
            fail("uplink_power", "must be positive");
        if (!(bandwidth > 0.0))
            fail("bandwidth", "must be positive");
        if (!(noise_power > 0.0))
            fail("noise_power", "must be positive");
    }

    PilotAssignment assign_pilots(const NetworkSnapshot &snapshot, std::span<const ApIndex> master_ap,
                                  std::size_t tau_p)
    {
        if (tau_p < 1)
            throw std::invalid_argument("At least one pilot is required.");
        if (master_ap.size() != snapshot.num_ues())
            throw std::invalid_argument("Need one master AP per UE.");

        PilotAssignment out;
        out.pilot_of.assign(snapshot.num_ues(), 0);
        out.copilots.assign(tau_p, {});

        for (UeIndex k = 0; k < snapshot.num_ues(); ++k)
        {
            const ApIndex master = master_ap[k];
            if (master >= snapshot.num_aps())
                throw std::invalid_argument("Master AP index out of range.");

            std::size_t best = 0;
            double best_contamination = std::numeric_limits<double>::infinity();
            for (std::size_t t = 0; t < tau_p; ++t)
            {
                double contamination = 0.0;
                for (UeIndex other : out.copilots[t])
                    contamination += snapshot.beta(master, other);
                if (contamination < best_contamination)
                {
                    best_contamination = contamination;
                    best = t;
                }
            }
            out.pilot_of[k] = best;
            out.copilots[best].push_back(k);
        }
        return out;
    }

    arma::cx_vec pilot_sequence(std::size_t t, std::size_t tau_p)
    {
        if (t >= tau_p)
            throw std::invalid_argument("Pilot index out of range.");
        arma::cx_vec phi(tau_p);
        for (std::size_t i = 0; i < tau_p; ++i)
            phi[i] = std::polar(1.0, -2.0 * std::numbers::pi * double(t * i % tau_p) / double(tau_p));
        return phi;
    }

    arma::cx_mat received_pilot(const ChannelRealization &realization, const PilotAssignment &assignment,
                                const SystemParams &params, ApIndex m, Rng &rng)
    {
        const std::size_t tau_p = assignment.tau_p();
        const std::size_t N = realization.g.size() == 0 ? 0 : realization.g(0, 0).n_elem;

        arma::cx_mat y(N, tau_p, arma::fill::zeros);
        const double amplitude = std::sqrt(params.uplink_power);
        for (UeIndex k = 0; k < realization.num_ues(); ++k)
            y += amplitude * realization.g(m, k) * pilot_sequence(assignment.pilot_of[k], tau_p).st();

        const arma::cx_mat noise = complex_normal(N, tau_p, rng);
        return y + std::sqrt(params.noise_power) * noise;
    }

    arma::cx_vec coarse_estimate(const arma::cx_mat &y_pilot, const arma::cx_vec &pilot)
    {
        if (y_pilot.n_cols != pilot.n_elem)
            throw std::invalid_argument("Pilot length does not match the observation.");
        return y_pilot * arma::conj(pilot) / std::sqrt(double(pilot.n_elem));
    }

    arma::cx_mat compute_psi(const NetworkSnapshot &snapshot, const PilotAssignment &assignment,
                             const SystemParams &params, ApIndex m, std::size_t t)
    {
        const std::size_t N = snapshot.antennas();
        arma::cx_mat psi = params.noise_power * arma::cx_mat(N, N, arma::fill::eye);
        if (assignment.tau_p() != params.tau_p)
            throw std::invalid_argument("Pilot assignment and system parameters disagree on tau_p.");
        const double scale = double(params.tau_p) * params.uplink_power;
        for (UeIndex k : assignment.copilots.at(t))
            psi += scale * snapshot.beta(m, k) * snapshot.corr(m, k);
        return psi;
    }

    MmseEstimate mmse_estimate(const arma::cx_vec &coarse, const NetworkSnapshot &snapshot,
                               const SystemParams &params, ApIndex m, UeIndex k, const arma::cx_mat &psi)
    {
        const double beta = snapshot.beta(m, k);
        const arma::cx_mat &R = snapshot.corr(m, k);
        const double p_tau = params.uplink_power * double(params.tau_p);

        if (psi.n_rows != R.n_rows || psi.n_cols != R.n_cols)
            throw std::invalid_argument("Psi dimension does not match the correlation matrix.");
        const double rc = arma::rcond(psi);
        if (!(rc > 1e3 * std::numeric_limits<double>::epsilon()))
            throw std::invalid_argument("Psi is singular; noise power must be positive.");

        // Psi^-1 R, so that R Psi^-1 = (Psi^-1 R)^H for Hermitian Psi and R
        arma::cx_mat psi_inv_R;
        if (!arma::solve(psi_inv_R, psi, R, arma::solve_opts::no_approx))
            throw std::invalid_argument("Psi is singular; noise power must be positive.");
        const arma::cx_mat R_psi_inv = psi_inv_R.t();

        MmseEstimate out;
        out.g_hat = std::sqrt(p_tau) * beta * (R_psi_inv * coarse);
        out.err_cov = beta * R - p_tau * beta * beta * (R_psi_inv * R);
        out.err_cov = 0.5 * (out.err_cov + out.err_cov.t());
        return out;
    }

    EstimationResult estimate_channels(const NetworkSnapshot &snapshot, const ChannelRealization &realization,
                                       const PilotAssignment &assignment, const SystemParams &params, Rng &rng)
    {
        const std::size_t M = snapshot.num_aps(), K = snapshot.num_ues(), tau_p = assignment.tau_p();
        if (tau_p != params.tau_p)
            throw std::invalid_argument("Pilot assignment and system parameters disagree on tau_p.");

        std::vector<arma::cx_vec> pilots;
        pilots.reserve(tau_p);
        for (std::size_t t = 0; t < tau_p; ++t)
            pilots.push_back(pilot_sequence(t, tau_p));

        EstimationResult out;
        out.g_hat = ApUeGrid<arma::cx_vec>(M, K);
        out.err_cov = ApUeGrid<arma::cx_mat>(M, K);
        out.psi = ApUeGrid<arma::cx_mat>(M, tau_p);

        for (ApIndex m = 0; m < M; ++m)
        {
            const arma::cx_mat y = received_pilot(realization, assignment, params, m, rng);
            for (std::size_t t = 0; t < tau_p; ++t)
                out.psi(m, t) = compute_psi(snapshot, assignment, params, m, t);

            for (UeIndex k = 0; k < K; ++k)
            {
                const std::size_t t = assignment.pilot_of[k];
                MmseEstimate est = mmse_estimate(coarse_estimate(y, pilots[t]), snapshot, params, m, k, out.psi(m, t));
                out.g_hat(m, k) = std::move(est.g_hat);
                out.err_cov(m, k) = std::move(est.err_cov);
            }
        }
        return out;
    }
}
