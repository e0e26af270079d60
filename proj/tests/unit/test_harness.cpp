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
#include "dense_reference.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace cfresil;
namespace t = cfresil::testing;

namespace
{
    ExperimentConfig small_config()
    {
        ExperimentConfig c;
        c.network.num_aps = 20;
        c.network.num_ues = 5;
        c.network.area_side = 500.0;
        c.params.tau_p = 3;
        c.params.tau_u = 197;
        c.alpha_values = {0.0, 0.5, 1.0};
        c.num_snapshots = 3;
        c.blocks_per_snapshot = 2;
        c.failure_draws_per_block = 15;
        c.failure_range = {0.1, 0.4};
        c.master_seed = 77;
        return c;
    }

    // Straight-line pipeline for one run: library geometry/estimation,
    // enumerated clusters, dense uplink evaluation, hand aggregation.
    ResultRow reference_row(const ExperimentConfig &c, Scheme scheme, double alpha)
    {
        ResultRow row;
        double min_sum = 0.0, mean_sum = 0.0, outage_sum = 0.0;
        for (std::size_t s = 0; s < c.num_snapshots; ++s)
        {
            Rng grng = derive_rng(c.master_seed, s, 0, 0, Stream::Geometry);
            const NetworkSnapshot snap = build_snapshot(c.network, c.failure_range, grng);
            const std::size_t M = snap.num_aps(), K = snap.num_ues();
            std::vector<ApIndex> masters(K);
            for (UeIndex k = 0; k < K; ++k)
                masters[k] = snap.beta.col(k).index_max();
            const PilotAssignment pilots = assign_pilots(snap, masters, c.params.tau_p);

            arma::vec probs = alpha * snap.baseline_failure_probs;
            std::vector<ApSet> clusters(K);
            for (UeIndex k = 0; k < K; ++k)
            {
                if (scheme == Scheme::AllAps)
                    for (ApIndex m = 0; m < M; ++m)
                        clusters[k].push_back(m);
                else
                    clusters[k] = oracle::brute_force_cluster(
                        snap.beta.col(k), scheme == Scheme::FailureAware ? probs : arma::vec(M, arma::fill::zeros),
                        c.epsilon, c.min_cluster);
            }

            std::vector<double> se_sum(K, 0.0);
            std::size_t outages = 0, draws = 0;
            for (std::size_t b = 0; b < c.blocks_per_snapshot; ++b)
            {
                Rng crng = derive_rng(c.master_seed, s, b, 0, Stream::Channel);
                const ChannelRealization real = realize_block(snap, crng, b);
                Rng nrng = derive_rng(c.master_seed, s, b, 0, Stream::PilotNoise);
                const EstimationResult est = estimate_channels(snap, real, pilots, c.params, nrng);
                for (std::size_t d = 0; d < c.failure_draws_per_block; ++d)
                {
                    Rng frng = derive_rng(c.master_seed, s, b, d, Stream::Failure);
                    std::uniform_real_distribution<double> u(0.0, 1.0);
                    std::vector<bool> alive(M);
                    for (ApIndex m = 0; m < M; ++m)
                        alive[m] = u(frng) >= probs[m];
                    const RateReport r = oracle::evaluate(est, clusters, alive, c.params);
                    for (UeIndex k = 0; k < K; ++k)
                    {
                        se_sum[k] += r.se[k];
                        outages += r.outage[k];
                    }
                    ++draws;
                }
            }
            double mn = 1e300, mean = 0.0;
            for (double x : se_sum)
            {
                mn = std::min(mn, x / double(draws));
                mean += x / double(draws) / double(K);
            }
            min_sum += mn;
            mean_sum += mean;
            outage_sum += double(outages) / double(K * draws);
        }
        row.min_se = min_sum / double(c.num_snapshots);
        row.mean_se = mean_sum / double(c.num_snapshots);
        row.outage_prob = outage_sum / double(c.num_snapshots);
        return row;
    }

    void expect_same_rows(const ResultTable &a, const ResultTable &b)
    {
        ASSERT_EQ(a.rows.size(), b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i)
        {
            EXPECT_EQ(a.rows[i].scheme, b.rows[i].scheme);
            EXPECT_EQ(a.rows[i].alpha, b.rows[i].alpha);
            EXPECT_EQ(a.rows[i].snapshot_min_se, b.rows[i].snapshot_min_se);
            EXPECT_EQ(a.rows[i].snapshot_mean_se, b.rows[i].snapshot_mean_se);
            EXPECT_EQ(a.rows[i].snapshot_outage, b.rows[i].snapshot_outage);
        }
    }
}

TEST(DeriveRng, StreamsDiffer)
{
    std::vector<std::uint64_t> first;
    for (auto [s, b, d, st] : std::vector<std::tuple<int, int, int, Stream>>{{0, 0, 0, Stream::Geometry},
                                                                            {0, 0, 0, Stream::Channel},
                                                                            {1, 0, 0, Stream::Geometry},
                                                                            {0, 1, 0, Stream::Channel},
                                                                            {0, 0, 1, Stream::Failure},
                                                                            {0, 0, 2, Stream::Failure}})
        first.push_back(derive_rng(5, s, b, d, st)());
    std::sort(first.begin(), first.end());
    EXPECT_EQ(std::adjacent_find(first.begin(), first.end()), first.end());
    EXPECT_EQ(derive_rng(5, 1, 2, 3, Stream::Failure)(), derive_rng(5, 1, 2, 3, Stream::Failure)());
    EXPECT_NE(derive_rng(5, 1, 2, 3, Stream::Failure)(), derive_rng(6, 1, 2, 3, Stream::Failure)());
}

TEST(RunExperiment, TinyPipelineMatchesDenseReference)
{
    ExperimentConfig c;
    c.network.num_aps = 4;
    c.network.num_ues = 2;
    c.network.area_side = 300.0;
    c.params.tau_p = 1;
    c.params.tau_u = 199;
    c.alpha_values = {0.0, 1.0};
    c.num_snapshots = 1;
    c.blocks_per_snapshot = 1;
    c.failure_draws_per_block = 1;
    c.master_seed = 3;
    const ResultTable table = run_experiment(c);
    for (Scheme scheme : c.schemes)
        for (double alpha : c.alpha_values)
        {
            const ResultRow &got = table.row(scheme, alpha);
            const ResultRow want = reference_row(c, scheme, alpha);
            EXPECT_LT(t::rel_diff(got.min_se, want.min_se), 1e-9);
            EXPECT_LT(t::rel_diff(got.mean_se, want.mean_se), 1e-9);
            EXPECT_EQ(got.outage_prob, want.outage_prob);
        }
}

TEST(RunExperiment, PipelineWithFailuresMatchesDenseReference)
{
    ExperimentConfig c = small_config();
    c.network.num_aps = 4;
    c.network.antennas_per_ap = 2;
    c.network.num_ues = 3;
    c.network.area_side = 300.0;
    c.failure_range = {0.3, 0.6};
    c.num_snapshots = 2;
    c.failure_draws_per_block = 10;
    const ResultTable table = run_experiment(c);
    double total_outage = 0.0;
    for (Scheme scheme : c.schemes)
        for (double alpha : c.alpha_values)
        {
            const ResultRow &got = table.row(scheme, alpha);
            const ResultRow want = reference_row(c, scheme, alpha);
            EXPECT_LT(t::rel_diff(got.min_se, want.min_se), 1e-9) << to_string(scheme) << " " << alpha;
            EXPECT_LT(t::rel_diff(got.mean_se, want.mean_se), 1e-9) << to_string(scheme) << " " << alpha;
            EXPECT_NEAR(got.outage_prob, want.outage_prob, 1e-15);
            total_outage += got.outage_prob;
        }
    EXPECT_GT(total_outage, 0.0); // masking was exercised
}

TEST(RunExperiment, RowsAndCounts)
{
    const ExperimentConfig c = small_config();
    const ResultTable table = run_experiment(c);
    ASSERT_EQ(table.rows.size(), 9u);
    for (const auto &row : table.rows)
    {
        EXPECT_EQ(row.num_snapshots, 3u);
        EXPECT_EQ(row.num_draws, 30u);
        EXPECT_EQ(row.snapshot_min_se.size(), 3u);
        EXPECT_LE(row.min_se, row.mean_se);
        EXPECT_GE(row.outage_prob, 0.0);
        EXPECT_LE(row.outage_prob, 1.0);
        EXPECT_EQ(row.cdf.back().cumulative, 1.0);
    }
    EXPECT_EQ(table.rows[0].scheme, c.schemes[0]);
    EXPECT_EQ(table.rows[1].alpha, c.alpha_values[1]);
    EXPECT_THROW(table.row(Scheme::AllAps, 0.3), std::out_of_range);
}

TEST(RunExperiment, ZeroAlphaSchemesIdentical)
{
    ExperimentConfig c = small_config();
    c.schemes = {Scheme::FailureAware, Scheme::Agnostic};
    c.alpha_values = {0.0};
    const ResultTable table = run_experiment(c);
    const ResultRow &a = table.row(Scheme::FailureAware, 0.0), &b = table.row(Scheme::Agnostic, 0.0);
    EXPECT_EQ(a.snapshot_min_se, b.snapshot_min_se);
    EXPECT_EQ(a.snapshot_mean_se, b.snapshot_mean_se);
    EXPECT_EQ(a.outage_prob, 0.0);
    EXPECT_EQ(b.outage_prob, 0.0);
}

TEST(RunExperiment, AllApsNeverInOutage)
{
    ExperimentConfig c = small_config();
    c.schemes = {Scheme::AllAps};
    c.failure_range = {0.5, 0.9};
    const ResultTable table = run_experiment(c);
    for (const auto &row : table.rows)
        EXPECT_EQ(row.outage_prob, 0.0);
}

TEST(RunExperiment, IndependentOfThreadCount)
{
    const ExperimentConfig c = small_config();
    expect_same_rows(run_experiment(c, 1), run_experiment(c, 3));
}

TEST(RunExperiment, RejectsInvalidConfig)
{
    ExperimentConfig c = small_config();
    c.schemes.clear();
    EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(WriteResults, FilesAndFormat)
{
    const ExperimentConfig c = small_config();
    const ResultTable table = run_experiment(c);
    const auto dir = t::scratch_dir("write-results");
    write_results(table, dir);
    const std::string summary = t::slurp(dir / "summary.csv");
    EXPECT_EQ(summary.rfind("scheme,alpha,min_se,mean_se,outage_prob,num_snapshots,num_draws\n", 0), 0u);
    EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 10);
    EXPECT_EQ(summary.find('\r'), std::string::npos);
    EXPECT_NE(summary.find("faas,5.000000e-01,"), std::string::npos);
    for (const auto &row : table.rows)
    {
        const std::string cdf = t::slurp(dir / cdf_file_name(row.scheme, row.alpha));
        EXPECT_EQ(cdf.rfind("min_rate_bits_per_hz,cum_fraction\n", 0), 0u);
    }
    EXPECT_EQ(cdf_file_name(Scheme::FailureAware, 0.25), "cdf_faas_0.25.csv");
    const std::string meta = t::slurp(dir / "metadata.json");
    EXPECT_NE(meta.find("\"master_seed\": 77"), std::string::npos);
    EXPECT_NE(meta.find("\"num_aps\": 20"), std::string::npos);
}

TEST(WriteResults, OneRowOneCdf)
{
    ExperimentConfig c = small_config();
    c.schemes = {Scheme::Agnostic};
    c.alpha_values = {1.0};
    const auto dir = t::scratch_dir("one-row");
    write_results(run_experiment(c), dir);
    std::size_t files = 0;
    for (const auto &entry : std::filesystem::directory_iterator(dir))
        files += entry.path().filename().string().rfind("cdf_", 0) == 0;
    EXPECT_EQ(files, 1u);
    const std::string summary = t::slurp(dir / "summary.csv");
    EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 2);
}

TEST(WriteResults, ByteIdenticalRerun)
{
    const ExperimentConfig c = small_config();
    const auto a = t::scratch_dir("rerun-a"), b = t::scratch_dir("rerun-b");
    write_results(run_experiment(c, 1), a);
    write_results(run_experiment(c, 2), b);
    for (const auto &entry : std::filesystem::directory_iterator(a))
        EXPECT_EQ(t::slurp(entry.path()), t::slurp(b / entry.path().filename())) << entry.path().filename();
}

TEST(WriteResults, EmptyTableRejected)
{
    ResultTable empty;
    EXPECT_THROW(write_results(empty, t::scratch_dir("empty")), std::invalid_argument);
}
