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

#ifndef cfresil_config_H
#define cfresil_config_H

#include "cfresil/estimation.hpp"
#include "cfresil/selection.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace cfresil
{
    /// Everything needed to reproduce one Monte-Carlo experiment.
    struct ExperimentConfig
    {
        NetworkConfig network;
        SystemParams params;
        double epsilon = 0.9;
        std::size_t min_cluster = 2;
        FailureRange failure_range;
        std::vector<double> alpha_values{0.0, 0.25, 0.5, 0.75, 1.0};
        std::vector<Scheme> schemes{Scheme::AllAps, Scheme::Agnostic, Scheme::FailureAware};
        std::size_t num_snapshots = 20;
        std::size_t blocks_per_snapshot = 1;
        std::size_t failure_draws_per_block = 100;
        std::uint64_t master_seed = 1;
        std::string output_path = "results";

        /// Throws std::invalid_argument whose message starts with the
        /// offending field, e.g. "experiment.alpha: ...".
        void validate() const;
    };

    /// Parse the INI-style format (sections [network], [system],
    /// [selection], [experiment]; `key = value`; `#` or `;` comments).
    /// Missing keys keep their defaults, unknown keys are rejected. Does not
    /// call validate().
    ExperimentConfig parse_config(std::istream &in);

    /// Read and parse a file; errors carry the path.
    ExperimentConfig load_config(const std::filesystem::path &path);

    /// Inverse of parse_config: every field, shortest round-trip numbers.
    std::string format_config(const ExperimentConfig &config);

    /// Names accepted by make_preset.
    std::vector<std::string> preset_names();

    /// "paper-fig2-a": M=400, N=1, K=100 on 2 km x 2 km.
    /// "paper-fig2-b": M=100, N=4, K=100 on 2 km x 2 km.
    /// "desk": M=100, N=1, K=20 on 1 km x 1 km, small trial counts.
    ExperimentConfig make_preset(std::string_view name);

    /// Comma-separated numbers, e.g. "0, 0.5,1".
    std::vector<double> parse_number_list(std::string_view text);

    /// Shortest decimal text that parses back to the same double.
    std::string format_number(double value);
}

#endif
