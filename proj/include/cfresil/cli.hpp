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

#ifndef cfresil_cli_H
#define cfresil_cli_H

#include <iosfwd>
#include <string>
#include <vector>

namespace cfresil
{
    // Subcommands:
    //   run <config|preset> [--seed N] [--threads N] [--out DIR] [--alpha LIST]
    //   preset <paper-fig2-a|paper-fig2-b|desk> [--seed N] [--out FILE] [--alpha LIST]
    //   validate <config|preset> [--seed N] [--alpha LIST]
    // The thread count falls back to $CFR_THREADS, then 1.
    // Returns 0 on success and nonzero with a message on `err` otherwise.
    int cli_main(int argc, char **argv);
    int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
