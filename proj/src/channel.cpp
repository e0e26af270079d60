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

#include "cfresil/channel.hpp"
#include "cfresil/linalg.hpp"

#include <cmath>

namespace cfresil
{
    namespace
    {
        arma::cx_vec draw(double sqrt_beta, const arma::cx_mat &factor, Rng &rng)
        {
            const arma::cx_vec u = complex_normal(factor.n_cols, rng);
            return sqrt_beta * (factor * u);
        }
    }

    arma::cx_vec sample_channel(double beta, const arma::cx_mat &R, Rng &rng)
    {
        if (beta < 0.0)
            throw std::invalid_argument("Large-scale gain must be non-negative.");
        return draw(std::sqrt(beta), hermitian_sqrt(R), rng);
    }

    ChannelSampler::ChannelSampler(const NetworkSnapshot &snapshot)
        : sqrt_beta_(arma::sqrt(snapshot.beta)),
          factors_(snapshot.num_aps(), snapshot.num_ues())
    {
        for (std::size_t m = 0; m < snapshot.num_aps(); ++m)
            for (std::size_t k = 0; k < snapshot.num_ues(); ++k)
                factors_(m, k) = hermitian_sqrt(snapshot.corr(m, k));
    }

    ChannelRealization ChannelSampler::realize(Rng &rng, std::size_t block_index) const
    {
        ChannelRealization out;
        out.block_index = block_index;
        out.g = ApUeGrid<arma::cx_vec>(factors_.num_aps(), factors_.num_ues());
        for (std::size_t m = 0; m < factors_.num_aps(); ++m)
            for (std::size_t k = 0; k < factors_.num_ues(); ++k)
                out.g(m, k) = draw(sqrt_beta_(m, k), factors_(m, k), rng);
        return out;
    }

    ChannelRealization realize_block(const NetworkSnapshot &snapshot, Rng &rng, std::size_t block_index)
    {
        return ChannelSampler(snapshot).realize(rng, block_index);
    }
}
