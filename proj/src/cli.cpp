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

#include "cfresil/cli.hpp"
#include "cfresil/harness.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace cfresil
{
    namespace
    {
        struct Overrides
        {
            std::optional<std::uint64_t> seed;
            std::optional<std::string> alpha;
            std::optional<std::string> out;
            std::optional<unsigned> threads;
        };

        ExperimentConfig resolve_config(const std::string &source)
        {
            if (std::filesystem::is_regular_file(source))
                return load_config(source);
            const auto names = preset_names();
            if (std::find(names.begin(), names.end(), source) != names.end())
                return make_preset(source);
            throw std::runtime_error("cannot read config file '" + source + "'");
        }

        void apply(ExperimentConfig &config, const Overrides &o, bool out_is_dir)
        {
            if (o.seed)
                config.master_seed = *o.seed;
            if (o.alpha)
            {
                try
                {
                    config.alpha_values = parse_number_list(*o.alpha);
                }
                catch (const std::invalid_argument &e)
                {
                    throw std::invalid_argument(std::string("--alpha: ") + e.what());
                }
            }
            if (o.out && out_is_dir)
                config.output_path = *o.out;
        }

        unsigned resolve_threads(const std::optional<unsigned> &flag)
        {
            if (flag)
                return std::max(1u, *flag);
            if (const char *env = std::getenv("CFR_THREADS"))
            {
                try
                {
                    const long v = std::stol(env);
                    if (v >= 1)
                        return unsigned(v);
                }
                catch (const std::exception &)
                {
                }
                throw std::invalid_argument(std::string("CFR_THREADS: expected a positive integer, got '") + env + "'");
            }
            return 1;
        }

        void print_table(const ResultTable &table, std::ostream &out)
        {
            char line[160];
            std::snprintf(line, sizeof(line), "%-9s %6s %12s %12s %12s\n", "scheme", "alpha", "min_se", "mean_se",
                          "outage");
            out << line;
            for (const auto &row : table.rows)
            {
                std::snprintf(line, sizeof(line), "%-9s %6.3f %12.6f %12.6f %12.4e\n",
                              std::string(to_string(row.scheme)).c_str(), row.alpha, row.min_se, row.mean_se,
                              row.outage_prob);
                out << line;
            }
        }
    }

    int cli_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Cell-free massive MIMO uplink resilience simulator"};
        app.name(args.empty() ? "cfresil" : args.front());
        app.require_subcommand(1);

        Overrides o;
        std::string source;

        auto *run = app.add_subcommand("run", "Run an experiment from a config file or preset name");
        run->add_option("config", source, "Config file or preset name")->required();
        run->add_option("--seed", o.seed, "Override the master seed");
        run->add_option("--threads", o.threads, "Worker threads (default: $CFR_THREADS or 1)");
        run->add_option("--out", o.out, "Output directory");
        run->add_option("--alpha", o.alpha, "Comma-separated failure intensities");

        auto *preset = app.add_subcommand("preset", "Print a ready-made config");
        preset->add_option("name", source, "paper-fig2-a | paper-fig2-b | desk")
            ->required()
            ->check(CLI::IsMember(preset_names()));
        preset->add_option("--seed", o.seed, "Override the master seed");
        preset->add_option("--out", o.out, "Write the config to this file instead of stdout");
        preset->add_option("--alpha", o.alpha, "Comma-separated failure intensities");

        auto *validate = app.add_subcommand("validate", "Parse and check a config without running it");
        validate->add_option("config", source, "Config file or preset name")->required();
        validate->add_option("--seed", o.seed, "Override the master seed");
        validate->add_option("--alpha", o.alpha, "Comma-separated failure intensities");

        std::vector<const char *> argv;
        argv.push_back(args.empty() ? "cfresil" : args.front().c_str());
        for (std::size_t i = 1; i < args.size(); ++i)
            argv.push_back(args[i].c_str());

        try
        {
            app.parse(int(argv.size()), argv.data());
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return 0;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << "\n";
            return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
        }

        try
        {
            if (*preset)
            {
                ExperimentConfig config = make_preset(source);
                apply(config, o, false);
                config.validate();
                const std::string text = format_config(config);
                if (o.out)
                {
                    std::ofstream file(*o.out, std::ios::binary | std::ios::trunc);
                    if (!(file << text))
                        throw std::runtime_error("cannot write '" + *o.out + "'");
                }
                else
                    out << text;
                return 0;
            }

            ExperimentConfig config = resolve_config(source);
            apply(config, o, true);
            config.validate();

            if (*validate)
            {
                out << "ok: " << source << "\n";
                return 0;
            }

            const unsigned workers = resolve_threads(o.threads);
            const ResultTable table = run_experiment(config, workers);
            write_results(table, config.output_path);
            print_table(table, out);
            out << "wrote " << table.rows.size() << " rows to " << config.output_path << " in "
                << format_number(std::round(table.wall_seconds * 100.0) / 100.0) << " s\n";
            return 0;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << "\n";
            return 1;
        }
    }

    int cli_main(int argc, char **argv)
    {
        std::vector<std::string> args(argv, argv + argc);
        return cli_main(args, std::cout, std::cerr);
    }
}
