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

#ifndef cfresil_types_H
#define cfresil_types_H

#include <armadillo>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

namespace cfresil
{
    using cx = std::complex<double>;

    // All random draws in the library go through this engine. Streams are
    // seeded by the harness from a master seed (see derive_rng).
    using Rng = std::mt19937_64;

    using ApIndex = std::size_t;
    using UeIndex = std::size_t;

    // Ordered set of AP indices (a serving cluster or a surviving subset).
    using ApSet = std::vector<ApIndex>;
    using UeSet = std::vector<UeIndex>;

    // M x K collection stored AP-major: element (m, k) lives at m * K + k.
    template <typename T>
    class ApUeGrid
    {
    public:
        ApUeGrid() = default;
        ApUeGrid(std::size_t num_aps, std::size_t num_ues)
            : num_aps_(num_aps), num_ues_(num_ues), data_(num_aps * num_ues) {}

        T &operator()(ApIndex m, UeIndex k) { return data_[m * num_ues_ + k]; }
        const T &operator()(ApIndex m, UeIndex k) const { return data_[m * num_ues_ + k]; }

        std::size_t num_aps() const { return num_aps_; }
        std::size_t num_ues() const { return num_ues_; }
        std::size_t size() const { return data_.size(); }

        auto begin() { return data_.begin(); }
        auto end() { return data_.end(); }
        auto begin() const { return data_.begin(); }
        auto end() const { return data_.end(); }

    private:
        std::size_t num_aps_ = 0;
        std::size_t num_ues_ = 0;
        std::vector<T> data_;
    };
}

#endif
