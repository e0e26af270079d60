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

#include "cfresil/harness.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace cfresil
{
    namespace
    {
        // Accumulators and clusters for one snapshot, indexed [scheme][alpha].
        struct SnapshotOutcome
        {
            std::vector<std::vector<AggregateResult>> results;
        };

        struct SchemeAlpha
        {
            const ClusterAssignment *clusters = nullptr;
            std::vector<bool> used_aps; // union of the clusters
        };

        std::vector<bool> used_aps(const ClusterAssignment &clusters, std::size_t M)
        {
            std::vector<bool> used(M, false);
            for (const auto &cluster : clusters.clusters)
                for (ApIndex m : cluster)
                    used[m] = true;
            return used;
        }

        bool hits(const std::vector<bool> &used, const FailureRealization &failures)
        {
            for (std::size_t m = 0; m < used.size(); ++m)
                if (used[m] && !failures.alive[m])
                    return true;
            return false;
        }

        SnapshotOutcome run_snapshot(const ExperimentConfig &cfg, std::size_t s)
        {
            const std::size_t S = cfg.schemes.size(), A = cfg.alpha_values.size();

            Rng geometry_rng = derive_rng(cfg.master_seed, s, 0, 0, Stream::Geometry);
            const NetworkSnapshot snap = build_snapshot(cfg.network, cfg.failure_range, geometry_rng);
            const std::size_t M = snap.num_aps();

            const std::vector<ApIndex> masters = select_masters(snap);
            const PilotAssignment pilots = assign_pilots(snap, masters, cfg.params.tau_p);

            std::vector<arma::vec> probs;
            for (double alpha : cfg.alpha_values)
                probs.push_back(scale_failure_probs(alpha, snap.baseline_failure_probs));

            // Agnostic and all-APs clusters do not depend on alpha.
            const arma::vec no_failures(M, arma::fill::zeros);
            std::vector<ClusterAssignment> storage;
            storage.reserve(S * A);
            std::vector<std::vector<SchemeAlpha>> plan(S, std::vector<SchemeAlpha>(A));
            for (std::size_t i = 0; i < S; ++i)
            {
                const Scheme scheme = cfg.schemes[i];
                for (std::size_t a = 0; a < A; ++a)
                {
                    if (scheme != Scheme::FailureAware && a > 0)
                    {
                        plan[i][a] = plan[i][0];
                        continue;
                    }
                    storage.push_back(assign_clusters(snap, scheme, scheme == Scheme::FailureAware ? probs[a] : no_failures,
                                                      cfg.epsilon, cfg.min_cluster));
                    plan[i][a].clusters = &storage.back();
                    plan[i][a].used_aps = used_aps(storage.back(), M);
                }
            }

            std::vector<std::vector<RateAccumulator>> acc(S, std::vector<RateAccumulator>(A));

            FailureRealization nobody_failed;
            nobody_failed.alive.assign(M, true);
            nobody_failed.effective_probs = no_failures;

            const ChannelSampler sampler(snap);
            for (std::size_t b = 0; b < cfg.blocks_per_snapshot; ++b)
            {
                Rng channel_rng = derive_rng(cfg.master_seed, s, b, 0, Stream::Channel);
                const ChannelRealization realization = sampler.realize(channel_rng, b);
                Rng noise_rng = derive_rng(cfg.master_seed, s, b, 0, Stream::PilotNoise);
                const EstimationResult estimates = estimate_channels(snap, realization, pilots, cfg.params, noise_rng);
                const UplinkEvaluator evaluator(estimates, cfg.params);

                // Report when no serving AP of the scheme failed; identical to
                // evaluating the actual draw, computed at most once per block.
                std::vector<std::vector<std::optional<RateReport>>> intact(S, std::vector<std::optional<RateReport>>(A));

                for (std::size_t d = 0; d < cfg.failure_draws_per_block; ++d)
                    for (std::size_t a = 0; a < A; ++a)
                    {
                        // same uniforms for every alpha and scheme
                        Rng failure_rng = derive_rng(cfg.master_seed, s, b, d, Stream::Failure);
                        const FailureRealization failures = sample_failures(probs[a], failure_rng);

                        for (std::size_t i = 0; i < S; ++i)
                        {
                            const SchemeAlpha &entry = plan[i][a];
                            if (hits(entry.used_aps, failures))
                            {
                                acc[i][a].add(evaluator.evaluate(*entry.clusters, failures));
                                continue;
                            }
                            auto &cached = intact[i][a];
                            if (!cached)
                                cached = evaluator.evaluate(*entry.clusters, nobody_failed);
                            acc[i][a].add(*cached);
                        }
                    }
            }

            SnapshotOutcome out;
            out.results.assign(S, std::vector<AggregateResult>(A));
            for (std::size_t i = 0; i < S; ++i)
                for (std::size_t a = 0; a < A; ++a)
                    out.results[i][a] = acc[i][a].result();
            return out;
        }

        double mean(const std::vector<double> &v)
        {
            double sum = 0.0;
            for (double x : v)
                sum += x;
            return sum / double(v.size());
        }

        double standard_error(const std::vector<double> &v)
        {
            if (v.size() < 2)
                return 0.0;
            const double mu = mean(v);
            double ss = 0.0;
            for (double x : v)
                ss += (x - mu) * (x - mu);
            return std::sqrt(ss / double(v.size() - 1) / double(v.size()));
        }

        std::string sci(double value)
        {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6e", value);
            return buf;
        }

        void write_text(const std::filesystem::path &path, const std::string &text)
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot open '" + path.string() + "' for writing");
            out << text;
            out.flush();
            if (!out)
                throw std::runtime_error("failed writing '" + path.string() + "'");
        }
    }

    Rng derive_rng(std::uint64_t master_seed, std::uint64_t snapshot, std::uint64_t block, std::uint64_t draw,
                   Stream stream)
    {
        const std::uint64_t words[] = {master_seed, snapshot, block, draw, static_cast<std::uint64_t>(stream)};
        std::vector<std::uint32_t> seeds;
        for (std::uint64_t w : words)
        {
            seeds.push_back(std::uint32_t(w & 0xffffffffu));
            seeds.push_back(std::uint32_t(w >> 32));
        }
        std::seed_seq seq(seeds.begin(), seeds.end());
        return Rng(seq);
    }

    const ResultRow &ResultTable::row(Scheme scheme, double alpha) const
    {
        for (const auto &r : rows)
            if (r.scheme == scheme && r.alpha == alpha)
                return r;
        throw std::out_of_range("no result row for scheme '" + std::string(to_string(scheme)) + "' at alpha " +
                                format_number(alpha));
    }

    ResultTable run_experiment(const ExperimentConfig &config, unsigned threads)
    {
        config.validate();
        const auto start = std::chrono::steady_clock::now();

        const std::size_t num_snapshots = config.num_snapshots;
        std::vector<SnapshotOutcome> outcomes(num_snapshots);

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]
        {
            for (std::size_t s = next++; s < num_snapshots; s = next++)
            {
                try
                {
                    outcomes[s] = run_snapshot(config, s);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next = num_snapshots;
                }
            }
        };

        const unsigned workers = std::max(1u, std::min<unsigned>(threads, unsigned(num_snapshots)));
        if (workers == 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < workers; ++t)
                pool.emplace_back(worker);
        }
        if (failure)
            std::rethrow_exception(failure);

        // Reduce in snapshot order.
        ResultTable table;
        table.config = config;
        for (std::size_t i = 0; i < config.schemes.size(); ++i)
            for (std::size_t a = 0; a < config.alpha_values.size(); ++a)
            {
                ResultRow row;
                row.scheme = config.schemes[i];
                row.alpha = config.alpha_values[a];
                row.num_snapshots = num_snapshots;
                row.num_draws = config.blocks_per_snapshot * config.failure_draws_per_block;
                for (const auto &outcome : outcomes)
                {
                    const AggregateResult &r = outcome.results[i][a];
                    row.snapshot_min_se.push_back(r.min_se);
                    row.snapshot_mean_se.push_back(r.mean_se);
                    row.snapshot_outage.push_back(r.outage_prob);
                }
                row.min_se = mean(row.snapshot_min_se);
                row.mean_se = mean(row.snapshot_mean_se);
                row.outage_prob = mean(row.snapshot_outage);
                row.min_se_stderr = standard_error(row.snapshot_min_se);
                row.mean_se_stderr = standard_error(row.snapshot_mean_se);
                row.cdf = empirical_cdf(row.snapshot_min_se);
                table.rows.push_back(std::move(row));
            }

        table.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return table;
    }

    std::string cdf_file_name(Scheme scheme, double alpha)
    {
        return "cdf_" + std::string(to_string(scheme)) + "_" + format_number(alpha) + ".csv";
    }

    void write_results(const ResultTable &table, const std::filesystem::path &dir)
    {
        if (table.rows.empty())
            throw std::invalid_argument("result table has no rows to write");

        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

        std::string summary = "scheme,alpha,min_se,mean_se,outage_prob,num_snapshots,num_draws\n";
        for (const auto &row : table.rows)
        {
            summary += std::string(to_string(row.scheme)) + "," + sci(row.alpha) + "," + sci(row.min_se) + "," +
                       sci(row.mean_se) + "," + sci(row.outage_prob) + "," + std::to_string(row.num_snapshots) +
                       "," + std::to_string(row.num_draws) + "\n";

            std::string cdf = "min_rate_bits_per_hz,cum_fraction\n";
            for (const auto &point : row.cdf)
                cdf += sci(point.value) + "," + sci(point.cumulative) + "\n";
            write_text(dir / cdf_file_name(row.scheme, row.alpha), cdf);
        }
        write_text(dir / "summary.csv", summary);

        const ExperimentConfig &c = table.config;
        nlohmann::ordered_json meta;
        meta["version"] = version;
        meta["master_seed"] = c.master_seed;
        meta["network"] = {
            {"area_side", c.network.area_side},
            {"num_aps", c.network.num_aps},
            {"antennas_per_ap", c.network.antennas_per_ap},
            {"num_ues", c.network.num_ues},
            {"ap_height", c.network.ap_height},
            {"pathloss_intercept_db", c.network.pathloss_intercept_db},
            {"pathloss_exponent_db", c.network.pathloss_exponent_db},
            {"shadow_std_db", c.network.shadow_std_db},
            {"asd_deg", c.network.asd_deg},
        };
        meta["system"] = {
            {"tau_c", c.params.tau_c},
            {"tau_p", c.params.tau_p},
            {"tau_u", c.params.tau_u},
            {"uplink_power", c.params.uplink_power},
            {"bandwidth", c.params.bandwidth},
            {"noise_figure_db", c.params.noise_figure_db},
            {"noise_power", c.params.noise_power},
        };
        meta["selection"] = {
            {"epsilon", c.epsilon},
            {"min_cluster", c.min_cluster},
            {"failure_low", c.failure_range.low},
            {"failure_high", c.failure_range.high},
        };
        std::vector<std::string> schemes;
        for (Scheme s : c.schemes)
            schemes.emplace_back(to_string(s));
        meta["experiment"] = {
            {"alpha", c.alpha_values},
            {"schemes", schemes},
            {"num_snapshots", c.num_snapshots},
            {"blocks_per_snapshot", c.blocks_per_snapshot},
            {"failure_draws_per_block", c.failure_draws_per_block},
        };
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto &row : table.rows)
            rows.push_back({{"scheme", to_string(row.scheme)},
                            {"alpha", row.alpha},
                            {"min_se_stderr", row.min_se_stderr},
                            {"mean_se_stderr", row.mean_se_stderr},
                            {"cdf_file", cdf_file_name(row.scheme, row.alpha)}});
        meta["rows"] = rows;
        write_text(dir / "metadata.json", meta.dump(2) + "\n");
    }
}
