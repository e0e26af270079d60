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

#ifndef cfresil_channel_H
#define cfresil_channel_H

#include "cfresil/geometry.hpp"

namespace cfresil
{
    /// True channels g_mk of one coherence block.
    struct ChannelRealization
    {
        ApUeGrid<arma::cx_vec> g; // length-N vectors
        std::size_t block_index = 0;

        std::size_t num_aps() const { return g.num_aps(); }
        std::size_t num_ues() const { return g.num_ues(); }
    };

    /// sqrt(beta) * L * u with L L^H = R and u ~ CN(0, I). Throws
    /// std::invalid_argument when R is not positive semidefinite.
    arma::cx_vec sample_channel(double beta, const arma::cx_mat &R, Rng &rng);

    /// Caches the square-root factors of every R_mk so repeated blocks over
    /// the same snapshot skip the eigendecompositions.
    class ChannelSampler
    {
    public:
        explicit ChannelSampler(const NetworkSnapshot &snapshot);

        /// Draws AP-major, same order and values as calling sample_channel per pair.
        ChannelRealization realize(Rng &rng, std::size_t block_index = 0) const;

    private:
        arma::mat sqrt_beta_;
        ApUeGrid<arma::cx_mat> factors_;
    };

    ChannelRealization realize_block(const NetworkSnapshot &snapshot, Rng &rng, std::size_t block_index = 0);
}

#endif
