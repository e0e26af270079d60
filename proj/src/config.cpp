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

#include "cfresil/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cfresil
{
    namespace
    {
        std::string trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return std::string(s.substr(first, last - first + 1));
        }

        double to_double(const std::string &key, const std::string &text)
        {
            const std::string t = trim(text);
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
            if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
                throw std::invalid_argument(key + ": expected a number, got '" + text + "'");
            return value;
        }

        std::uint64_t to_unsigned(const std::string &key, const std::string &text)
        {
            const std::string t = trim(text);
            std::uint64_t value = 0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
            if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
                throw std::invalid_argument(key + ": expected a non-negative integer, got '" + text + "'");
            return value;
        }

        std::vector<std::string> split_list(std::string_view text)
        {
            std::vector<std::string> out;
            std::size_t start = 0;
            while (start <= text.size())
            {
                const auto comma = text.find(',', start);
                const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                                       : comma - start);
                out.push_back(trim(piece));
                if (comma == std::string_view::npos)
                    break;
                start = comma + 1;
            }
            if (out.size() == 1 && out.front().empty())
                out.clear();
            return out;
        }

        using Setter = std::function<void(ExperimentConfig &, const std::string &key, const std::string &value)>;

        template <typename T>
        Setter real(T ExperimentConfig::*field)
        {
            return [field](ExperimentConfig &c, const std::string &key, const std::string &v)
            { c.*field = to_double(key, v); };
        }

        // key -> setter, keys as "section.name"
        const std::map<std::string, Setter> &setters()
        {
            static const std::map<std::string, Setter> table = {
                {"network.area_side", [](auto &c, auto &k, auto &v)
                 { c.network.area_side = to_double(k, v); }},
                {"network.num_aps", [](auto &c, auto &k, auto &v)
                 { c.network.num_aps = to_unsigned(k, v); }},
                {"network.antennas_per_ap", [](auto &c, auto &k, auto &v)
                 { c.network.antennas_per_ap = to_unsigned(k, v); }},
                {"network.num_ues", [](auto &c, auto &k, auto &v)
                 { c.network.num_ues = to_unsigned(k, v); }},
                {"network.ap_height", [](auto &c, auto &k, auto &v)
                 { c.network.ap_height = to_double(k, v); }},
                {"network.pathloss_intercept_db", [](auto &c, auto &k, auto &v)
                 { c.network.pathloss_intercept_db = to_double(k, v); }},
                {"network.pathloss_exponent_db", [](auto &c, auto &k, auto &v)
                 { c.network.pathloss_exponent_db = to_double(k, v); }},
                {"network.shadow_std_db", [](auto &c, auto &k, auto &v)
                 { c.network.shadow_std_db = to_double(k, v); }},
                {"network.asd_deg", [](auto &c, auto &k, auto &v)
                 { c.network.asd_deg = to_double(k, v); }},

                {"system.tau_c", [](auto &c, auto &k, auto &v)
                 { c.params.tau_c = to_unsigned(k, v); }},
                {"system.tau_p", [](auto &c, auto &k, auto &v)
                 { c.params.tau_p = to_unsigned(k, v); }},
                {"system.tau_u", [](auto &c, auto &k, auto &v)
                 { c.params.tau_u = to_unsigned(k, v); }},
                {"system.uplink_power", [](auto &c, auto &k, auto &v)
                 { c.params.uplink_power = to_double(k, v); }},
                {"system.bandwidth", [](auto &c, auto &k, auto &v)
                 { c.params.bandwidth = to_double(k, v); }},
                {"system.noise_figure_db", [](auto &c, auto &k, auto &v)
                 { c.params.noise_figure_db = to_double(k, v); }},
                // handled after the other keys, see parse_config
                {"system.noise_power", [](auto &, auto &, auto &) {}},

                {"selection.epsilon", real(&ExperimentConfig::epsilon)},
                {"selection.min_cluster", [](auto &c, auto &k, auto &v)
                 { c.min_cluster = to_unsigned(k, v); }},
                {"selection.failure_low", [](auto &c, auto &k, auto &v)
                 { c.failure_range.low = to_double(k, v); }},
                {"selection.failure_high", [](auto &c, auto &k, auto &v)
                 { c.failure_range.high = to_double(k, v); }},

                {"experiment.alpha", [](auto &c, auto &k, auto &v)
                 {
                     try
                     {
                         c.alpha_values = parse_number_list(v);
                     }
                     catch (const std::invalid_argument &e)
                     {
                         throw std::invalid_argument(k + ": " + e.what());
                     }
                 }},
                {"experiment.schemes", [](auto &c, auto &k, auto &v)
                 {
                     c.schemes.clear();
                     for (const auto &name : split_list(v))
                     {
                         try
                         {
                             c.schemes.push_back(parse_scheme(name));
                         }
                         catch (const std::invalid_argument &e)
                         {
                             throw std::invalid_argument(k + ": " + e.what());
                         }
                     }
                 }},
                {"experiment.num_snapshots", [](auto &c, auto &k, auto &v)
                 { c.num_snapshots = to_unsigned(k, v); }},
                {"experiment.blocks_per_snapshot", [](auto &c, auto &k, auto &v)
                 { c.blocks_per_snapshot = to_unsigned(k, v); }},
                {"experiment.failure_draws_per_block", [](auto &c, auto &k, auto &v)
                 { c.failure_draws_per_block = to_unsigned(k, v); }},
                {"experiment.master_seed", [](auto &c, auto &k, auto &v)
                 { c.master_seed = to_unsigned(k, v); }},
                {"experiment.output_path", [](auto &c, auto &, auto &v)
                 { c.output_path = trim(v); }},
            };
            return table;
        }
    }

    std::string format_number(double value)
    {
        char buf[64];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
        if (ec != std::errc())
            throw std::runtime_error("Number formatting failed.");
        return std::string(buf, ptr);
    }

    std::vector<double> parse_number_list(std::string_view text)
    {
        std::vector<double> out;
        for (const auto &piece : split_list(text))
            out.push_back(to_double("list entry", piece));
        return out;
    }

    void ExperimentConfig::validate() const
    {
        network.validate();
        params.validate();
        try
        {
            failure_range.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument(std::string("selection.") + e.what());
        }

        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("selection.epsilon: must lie in (0, 1)");
        if (min_cluster < 1)
            throw std::invalid_argument("selection.min_cluster: must be at least 1");
        if (alpha_values.empty())
            throw std::invalid_argument("experiment.alpha: at least one value is required");
        for (double a : alpha_values)
            if (!(a >= 0.0 && a <= 1.0))
                throw std::invalid_argument("experiment.alpha: value " + format_number(a) + " outside [0, 1]");
        if (schemes.empty())
            throw std::invalid_argument("experiment.schemes: at least one scheme is required");
        for (std::size_t i = 0; i < schemes.size(); ++i)
            for (std::size_t j = i + 1; j < schemes.size(); ++j)
                if (schemes[i] == schemes[j])
                    throw std::invalid_argument("experiment.schemes: '" + std::string(to_string(schemes[i])) +
                                                "' listed twice");
        for (std::size_t i = 0; i < alpha_values.size(); ++i)
            for (std::size_t j = i + 1; j < alpha_values.size(); ++j)
                if (alpha_values[i] == alpha_values[j])
                    throw std::invalid_argument("experiment.alpha: value " + format_number(alpha_values[i]) +
                                                " listed twice");
        if (num_snapshots < 1)
            throw std::invalid_argument("experiment.num_snapshots: must be at least 1");
        if (blocks_per_snapshot < 1)
            throw std::invalid_argument("experiment.blocks_per_snapshot: must be at least 1");
        if (failure_draws_per_block < 1)
            throw std::invalid_argument("experiment.failure_draws_per_block: must be at least 1");
    }

    ExperimentConfig parse_config(std::istream &in)
    {
        boost::property_tree::ptree tree;
        try
        {
            boost::property_tree::read_ini(in, tree);
        }
        catch (const boost::property_tree::ini_parser_error &e)
        {
            throw std::invalid_argument("config line " + std::to_string(e.line()) + ": " + e.message());
        }

        ExperimentConfig config;
        const auto &table = setters();
        for (const auto &[section, body] : tree)
        {
            if (body.empty() && !body.data().empty())
                throw std::invalid_argument(section + ": key outside of a section");
            for (const auto &[name, value] : body)
            {
                const std::string key = section + "." + name;
                const auto it = table.find(key);
                if (it == table.end())
                    throw std::invalid_argument(key + ": unknown key");
                it->second(config, key, value.data());
            }
        }

        // Derived from bandwidth and noise figure unless given explicitly.
        config.params.noise_power = thermal_noise_power(config.params.bandwidth, config.params.noise_figure_db);
        if (const auto explicit_noise = tree.get_optional<std::string>("system.noise_power"))
            config.params.noise_power = to_double("system.noise_power", *explicit_noise);

        return config;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot read config file '" + path.string() + "'");
        try
        {
            return parse_config(in);
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument(path.string() + ": " + e.what());
        }
    }

    std::string format_config(const ExperimentConfig &c)
    {
        std::ostringstream out;
        const auto num = format_number;

        out << "[network]\n"
            << "area_side = " << num(c.network.area_side) << "\n"
            << "num_aps = " << c.network.num_aps << "\n"
            << "antennas_per_ap = " << c.network.antennas_per_ap << "\n"
            << "num_ues = " << c.network.num_ues << "\n"
            << "ap_height = " << num(c.network.ap_height) << "\n"
            << "pathloss_intercept_db = " << num(c.network.pathloss_intercept_db) << "\n"
            << "pathloss_exponent_db = " << num(c.network.pathloss_exponent_db) << "\n"
            << "shadow_std_db = " << num(c.network.shadow_std_db) << "\n"
            << "asd_deg = " << num(c.network.asd_deg) << "\n\n";

        out << "[system]\n"
            << "tau_c = " << c.params.tau_c << "\n"
            << "tau_p = " << c.params.tau_p << "\n"
            << "tau_u = " << c.params.tau_u << "\n"
            << "uplink_power = " << num(c.params.uplink_power) << "\n"
            << "bandwidth = " << num(c.params.bandwidth) << "\n"
            << "noise_figure_db = " << num(c.params.noise_figure_db) << "\n";
        if (c.params.noise_power != thermal_noise_power(c.params.bandwidth, c.params.noise_figure_db))
            out << "noise_power = " << num(c.params.noise_power) << "\n";
        out << "\n";

        out << "[selection]\n"
            << "epsilon = " << num(c.epsilon) << "\n"
            << "min_cluster = " << c.min_cluster << "\n"
            << "failure_low = " << num(c.failure_range.low) << "\n"
            << "failure_high = " << num(c.failure_range.high) << "\n\n";

        out << "[experiment]\n"
            << "alpha = ";
        for (std::size_t i = 0; i < c.alpha_values.size(); ++i)
            out << (i ? ", " : "") << num(c.alpha_values[i]);
        out << "\nschemes = ";
        for (std::size_t i = 0; i < c.schemes.size(); ++i)
            out << (i ? ", " : "") << to_string(c.schemes[i]);
        out << "\n"
            << "num_snapshots = " << c.num_snapshots << "\n"
            << "blocks_per_snapshot = " << c.blocks_per_snapshot << "\n"
            << "failure_draws_per_block = " << c.failure_draws_per_block << "\n"
            << "master_seed = " << c.master_seed << "\n"
            << "output_path = " << c.output_path << "\n";
        return out.str();
    }

    std::vector<std::string> preset_names()
    {
        return {"paper-fig2-a", "paper-fig2-b", "desk"};
    }

    ExperimentConfig make_preset(std::string_view name)
    {
        ExperimentConfig c;
        if (name == "paper-fig2-a" || name == "paper-fig2-b")
        {
            c.network.area_side = 2000.0;
            c.network.num_ues = 100;
            c.network.num_aps = name == "paper-fig2-a" ? 400 : 100;
            c.network.antennas_per_ap = name == "paper-fig2-a" ? 1 : 4;
            c.num_snapshots = 50;
            c.blocks_per_snapshot = 2;
            c.failure_draws_per_block = 50;
            c.output_path = "results-" + std::string(name);
        }
        else if (name == "desk")
        {
            c.network.area_side = 1000.0;
            c.network.num_aps = 100;
            c.network.antennas_per_ap = 1;
            c.network.num_ues = 20;
            c.num_snapshots = 20;
            c.blocks_per_snapshot = 2;
            c.failure_draws_per_block = 100;
            c.output_path = "results-desk";
        }
        else
            throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
        return c;
    }
}
