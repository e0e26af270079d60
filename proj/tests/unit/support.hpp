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

#ifndef cfresil_tests_support_H
#define cfresil_tests_support_H

#include "cfresil/estimation.hpp"
#include "cfresil/selection.hpp"
#include "cfresil/uplink.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace cfresil::testing
{
    // Snapshot from an explicit gain matrix; every R is the identity.
    inline NetworkSnapshot hand_snapshot(const arma::mat &beta, std::size_t antennas = 1)
    {
        NetworkSnapshot s;
        s.ap_positions.resize(beta.n_rows);
        s.ue_positions.resize(beta.n_cols);
        s.beta = beta;
        s.corr = ApUeGrid<arma::cx_mat>(beta.n_rows, beta.n_cols);
        for (auto &R : s.corr)
            R = arma::cx_mat(antennas, antennas, arma::fill::eye);
        s.baseline_failure_probs = arma::vec(beta.n_rows, arma::fill::value(0.05));
        return s;
    }

    struct Instance
    {
        NetworkSnapshot snapshot;
        SystemParams params;
        PilotAssignment pilots;
        ChannelRealization realization;
        EstimationResult estimates;
    };

    // Small random network with the full estimation chain applied.
    inline Instance random_instance(std::size_t M, std::size_t N, std::size_t K, std::uint64_t seed,
                                    std::size_t tau_p = 2, double side = 400.0)
    {
        Rng rng(seed);
        NetworkConfig net;
        net.num_aps = M;
        net.antennas_per_ap = N;
        net.num_ues = K;
        net.area_side = side;

        Instance in;
        in.params.tau_p = tau_p;
        in.params.tau_u = in.params.tau_c - tau_p;
        in.snapshot = build_snapshot(net, FailureRange{}, rng);
        const auto masters = select_masters(in.snapshot);
        in.pilots = assign_pilots(in.snapshot, masters, tau_p);
        in.realization = realize_block(in.snapshot, rng);
        in.estimates = estimate_channels(in.snapshot, in.realization, in.pilots, in.params, rng);
        return in;
    }

    inline ClusterAssignment explicit_clusters(std::vector<ApSet> clusters)
    {
        ClusterAssignment c;
        c.scheme = Scheme::Agnostic;
        for (const auto &cluster : clusters)
            c.master_ap.push_back(cluster.empty() ? 0 : cluster.front());
        c.clusters = std::move(clusters);
        return c;
    }

    inline FailureRealization all_alive(std::size_t M)
    {
        FailureRealization f;
        f.alive.assign(M, true);
        f.effective_probs = arma::vec(M, arma::fill::zeros);
        return f;
    }

    inline FailureRealization mask(std::vector<bool> alive)
    {
        FailureRealization f;
        f.effective_probs = arma::vec(alive.size(), arma::fill::zeros);
        f.alive = std::move(alive);
        return f;
    }

    // Random non-empty cluster per UE.
    inline std::vector<ApSet> random_clusters(std::size_t M, std::size_t K, Rng &rng)
    {
        std::vector<ApSet> out(K);
        std::bernoulli_distribution coin(0.5);
        std::uniform_int_distribution<std::size_t> pick(0, M - 1);
        for (auto &cluster : out)
        {
            for (ApIndex m = 0; m < M; ++m)
                if (coin(rng))
                    cluster.push_back(m);
            if (cluster.empty())
                cluster.push_back(pick(rng));
        }
        return out;
    }

    inline double rel_diff(double a, double b)
    {
        const double scale = std::max(std::abs(a), std::abs(b));
        return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
    }

    inline std::filesystem::path scratch_dir(const std::string &name)
    {
        const char *root = std::getenv("CFRESIL_TEST_TMP");
        std::filesystem::path base = root ? root : std::filesystem::temp_directory_path() / "cfresil-tests";
        std::filesystem::path dir = base / name;
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
        return dir;
    }

    inline std::string slurp(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
}

#endif
