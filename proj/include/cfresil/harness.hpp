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

#ifndef cfresil_harness_H
#define cfresil_harness_H

#include "cfresil/config.hpp"
#include "cfresil/metrics.hpp"

#include <cstdint>
#include <filesystem>
#include <string_view>

namespace cfresil
{
    inline constexpr std::string_view version = "0.1.0";

    /// Purpose tag of a derived random stream.
    enum class Stream : std::uint64_t
    {
        Geometry = 1,   // positions, shadowing, baseline failure probabilities
        Channel = 2,    // small-scale fading of one block
        PilotNoise = 3, // receiver noise during pilot transmission
        Failure = 4     // AP failure draw
    };

    /// Engine seeded with std::seed_seq over the 32-bit words of
    /// (master, snapshot, block, draw, tag). Streams never share state, so
    /// results do not depend on scheduling.
    Rng derive_rng(std::uint64_t master_seed, std::uint64_t snapshot, std::uint64_t block, std::uint64_t draw,
                   Stream stream);

    /// Metrics of one (scheme, alpha) pair.
    ///
    /// Per snapshot, SE is averaged over blocks and failure draws for every
    /// UE; min_se and mean_se of the snapshot are then the min and mean over
    /// UEs. Row-level values average the per-snapshot values; the CDF is
    /// taken over the per-snapshot minimum user SE.
    struct ResultRow
    {
        Scheme scheme = Scheme::FailureAware;
        double alpha = 0.0;
        double min_se = 0.0;
        double mean_se = 0.0;
        double outage_prob = 0.0;
        double min_se_stderr = 0.0;  // standard error across snapshots
        double mean_se_stderr = 0.0; // standard error across snapshots
        std::size_t num_snapshots = 0;
        std::size_t num_draws = 0; // blocks x failure draws per snapshot
        std::vector<double> snapshot_min_se;
        std::vector<double> snapshot_mean_se;
        std::vector<double> snapshot_outage;
        std::vector<CdfPoint> cdf;
    };

    struct ResultTable
    {
        ExperimentConfig config;
        std::vector<ResultRow> rows; // scheme-major, in config order
        double wall_seconds = 0.0;

        /// Throws std::out_of_range when the pair was not requested.
        const ResultRow &row(Scheme scheme, double alpha) const;
    };

    /// Validates the config and runs the full Monte-Carlo loop on `threads`
    /// workers (0 means 1). All schemes and alphas see the same snapshots,
    /// channel blocks and failure uniforms. Output is identical for any
    /// thread count.
    ResultTable run_experiment(const ExperimentConfig &config, unsigned threads = 1);

    /// Writes into directory `dir` (created if needed):
    ///   summary.csv                 one line per (scheme, alpha)
    ///   cdf_<scheme>_<alpha>.csv    per-snapshot minimum user SE CDF
    ///   metadata.json               config echo, seed, version
    /// Numbers use "%.6e" and '\n' line endings. The wall time is not
    /// written, so identical runs give identical files.
    void write_results(const ResultTable &table, const std::filesystem::path &dir);

    /// "cdf_<scheme>_<alpha>.csv" with the shortest round-trip alpha text.
    std::string cdf_file_name(Scheme scheme, double alpha);
}

#endif
