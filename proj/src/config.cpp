// SPDX-License-Identifier: Apache-2.0
//
// lenspdma - uplink path-division multiple access simulator for lens antenna arrays
// Copyright (C) 2026 the lenspdma developers
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

#include "lenspdma/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lenspdma
{
    using json = nlohmann::ordered_json;

    // ------------------------------------------------------------- validate

    void SimConfig::validate(int mu) const
    {
        if (n_trials < 1)
            throw config_error("sim.n_trials must be >= 1");
        if (mc_blocks < 1)
            throw config_error("sim.mc_blocks must be >= 1");
        if (modulation != "gaussian" && modulation != "qpsk")
            throw config_error("sim.modulation must be gaussian or qpsk");
        if (!std::isfinite(snr_db))
            throw config_error("sim.snr_db must be finite");
        if (n_symbols < 0)
            throw config_error("sim.n_symbols must be >= 0");
        if (n_symbols > 0 && n_symbols < 4L * mu + 16)
            throw config_error("sim.n_symbols too short for the delay-trimmed window; need >= " +
                               std::to_string(4L * mu + 16));
    }

    void PdmaConfig::validate() const
    {
        if (mode != "mrc" && mode != "mmse")
            throw config_error("pdma.mode must be mrc or mmse");
        if (csi != "perfect" && csi != "estimated")
            throw config_error("pdma.csi must be perfect or estimated");
        if (m_rf < 1)
            throw config_error("pdma.m_rf must be >= 1");
    }

    void CodebookConfig::validate() const
    {
        if (n_cb < 1)
            throw config_error("codebook.n_cb must be >= 1");
        if (!(el_support_deg > 0.0 && el_support_deg <= 90.0))
            throw config_error("codebook.el_support_deg must be in (0, 90]");
        if (!(az_support_deg > 0.0 && az_support_deg <= 90.0))
            throw config_error("codebook.az_support_deg must be in (0, 90]");
    }

    void SweepSpec::validate() const
    {
        if (axis != "snr_db" && axis != "m_rf" && axis != "k_users")
            throw config_error("sweep.axis must be snr_db, m_rf or k_users");
        if (values.empty())
            throw config_error("sweep.values must be non-empty");
        for (double v : values)
        {
            if (!std::isfinite(v))
                throw config_error("sweep.values must be finite");
            if ((axis == "m_rf" || axis == "k_users") &&
                (v < 1.0 || std::abs(v - std::round(v)) > 1e-9))
                throw config_error("sweep." + axis + " values must be positive integers");
        }
    }

    void ExperimentConfig::validate() const
    {
        scenario.validate();
        lens.validate();
        ms.validate();
        codebook.validate();
        pdma.validate();
        sweep.validate();
        training.validate(scenario.n_users, scenario.mu());
        sim.validate(scenario.mu());

        if (!std::isfinite(training_snr_db))
            throw config_error("training_snr_db must be finite");
        if (t_coherence < 1)
            throw config_error("t_coherence must be >= 1");
        if (pdma.csi == "estimated" && pdma.mode == "mmse")
            throw config_error("pdma: estimated CSI is only supported with the mrc combiner");
        if (output.format != "csv" && output.format != "jsonl")
            throw config_error("output.format must be csv or jsonl");
        if (output.path.empty())
            throw config_error("output.path must be non-empty");

        const int m_bs = (int)antenna_grid(lens).size();
        auto check_m_rf = [&](int m_rf) {
            if (m_rf > m_bs)
                throw config_error("pdma.m_rf (" + std::to_string(m_rf) +
                                   ") exceeds the array size " + std::to_string(m_bs));
        };
        check_m_rf(pdma.m_rf);
        if (sweep.axis == "m_rf")
            for (double v : sweep.values)
                check_m_rf((int)std::lround(v));
    }

    // ---------------------------------------------------------------- apply

    namespace
    {
        [[noreturn]] void unknown_key(const std::string &path, const std::string &key)
        {
            throw config_error("unknown config key: " + (path.empty() ? key : path + "." + key));
        }

        void expect_object(const json &j, const std::string &path)
        {
            if (!j.is_object())
                throw config_error("config field " + path + " must be an object");
        }

        double as_num(const json &j, const std::string &path)
        {
            if (!j.is_number())
                throw config_error("config field " + path + " must be a number");
            return j.get<double>();
        }

        int as_int(const json &j, const std::string &path)
        {
            double v = as_num(j, path);
            if (std::abs(v - std::round(v)) > 1e-9)
                throw config_error("config field " + path + " must be an integer");
            return (int)std::lround(v);
        }

        std::string as_str(const json &j, const std::string &path)
        {
            if (!j.is_string())
                throw config_error("config field " + path + " must be a string");
            return j.get<std::string>();
        }

        bool as_bool(const json &j, const std::string &path)
        {
            if (!j.is_boolean())
                throw config_error("config field " + path + " must be a boolean");
            return j.get<bool>();
        }

        void apply_pathloss(PathLossConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "exponent")
                    c.exponent = as_num(kv.value(), p + ".exponent");
                else if (k == "ref_distance_m")
                    c.ref_distance_m = as_num(kv.value(), p + ".ref_distance_m");
                else if (k == "dominant_fraction")
                    c.dominant_fraction = as_num(kv.value(), p + ".dominant_fraction");
                else
                    unknown_key(p, k);
            }
        }

        void apply_scenario(ScenarioConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "n_users")
                    c.n_users = as_int(kv.value(), p + ".n_users");
                else if (k == "n_paths")
                    c.n_paths = as_int(kv.value(), p + ".n_paths");
                else if (k == "carrier_hz")
                    c.carrier_hz = as_num(kv.value(), p + ".carrier_hz");
                else if (k == "bandwidth_hz")
                    c.bandwidth_hz = as_num(kv.value(), p + ".bandwidth_hz");
                else if (k == "max_delay_s")
                    c.max_delay_s = as_num(kv.value(), p + ".max_delay_s");
                else if (k == "angle_range_deg")
                    c.angle_range = deg2rad(as_num(kv.value(), p + ".angle_range_deg"));
                else if (k == "distance_m")
                    c.distance_m = as_num(kv.value(), p + ".distance_m");
                else if (k == "pathloss")
                    apply_pathloss(c.pathloss, kv.value(), p + ".pathloss");
                else
                    unknown_key(p, k);
            }
        }

        void apply_lens(LensArrayConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "d_y")
                    c.d_y = as_num(kv.value(), p + ".d_y");
                else if (k == "d_z")
                    c.d_z = as_num(kv.value(), p + ".d_z");
                else if (k == "theta_cov_deg")
                    c.theta_cov = deg2rad(as_num(kv.value(), p + ".theta_cov_deg"));
                else if (k == "phi_cov_deg")
                    c.phi_cov = deg2rad(as_num(kv.value(), p + ".phi_cov_deg"));
                else if (k == "focal_ratio")
                    c.focal_ratio = as_num(kv.value(), p + ".focal_ratio");
                else if (k == "phi0")
                    c.phi0 = as_num(kv.value(), p + ".phi0");
                else
                    unknown_key(p, k);
            }
        }

        void apply_ms(UpaConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "n_y")
                    c.n_y = as_int(kv.value(), p + ".n_y");
                else if (k == "n_z")
                    c.n_z = as_int(kv.value(), p + ".n_z");
                else if (k == "spacing")
                    c.spacing = as_num(kv.value(), p + ".spacing");
                else
                    unknown_key(p, k);
            }
        }

        void apply_codebook(CodebookConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "n_cb")
                    c.n_cb = as_int(kv.value(), p + ".n_cb");
                else if (k == "el_support_deg")
                    c.el_support_deg = as_num(kv.value(), p + ".el_support_deg");
                else if (k == "az_support_deg")
                    c.az_support_deg = as_num(kv.value(), p + ".az_support_deg");
                else
                    unknown_key(p, k);
            }
        }

        void apply_training(TrainingConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "rho")
                    c.rho = as_num(kv.value(), p + ".rho");
                else if (k == "t2")
                    c.t2 = as_int(kv.value(), p + ".t2");
                else if (k == "pilot_seed")
                    c.pilot_seed = (std::uint64_t)as_num(kv.value(), p + ".pilot_seed");
                else if (k == "average_phase1")
                    c.average_phase1 = as_bool(kv.value(), p + ".average_phase1");
                else
                    unknown_key(p, k);
            }
        }

        void apply_pdma(PdmaConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "mode")
                    c.mode = as_str(kv.value(), p + ".mode");
                else if (k == "csi")
                    c.csi = as_str(kv.value(), p + ".csi");
                else if (k == "m_rf")
                    c.m_rf = as_int(kv.value(), p + ".m_rf");
                else
                    unknown_key(p, k);
            }
        }

        void apply_sim(SimConfig &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "n_symbols")
                    c.n_symbols = (long)as_num(kv.value(), p + ".n_symbols");
                else if (k == "n_trials")
                    c.n_trials = as_int(kv.value(), p + ".n_trials");
                else if (k == "snr_db")
                    c.snr_db = as_num(kv.value(), p + ".snr_db");
                else if (k == "seed")
                    c.seed = (std::uint64_t)as_num(kv.value(), p + ".seed");
                else if (k == "modulation")
                    c.modulation = as_str(kv.value(), p + ".modulation");
                else if (k == "mc_blocks")
                    c.mc_blocks = as_int(kv.value(), p + ".mc_blocks");
                else
                    unknown_key(p, k);
            }
        }

        void apply_sweep(SweepSpec &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "axis")
                    c.axis = as_str(kv.value(), p + ".axis");
                else if (k == "values")
                {
                    if (!kv.value().is_array())
                        throw config_error("config field " + p + ".values must be an array");
                    c.values.clear();
                    for (const auto &e : kv.value())
                        c.values.push_back(as_num(e, p + ".values[]"));
                }
                else
                    unknown_key(p, k);
            }
        }

        void apply_output(OutputSpec &c, const json &j, const std::string &p)
        {
            expect_object(j, p);
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "path")
                    c.path = as_str(kv.value(), p + ".path");
                else if (k == "format")
                    c.format = as_str(kv.value(), p + ".format");
                else
                    unknown_key(p, k);
            }
        }

        void apply_root(ExperimentConfig &c, const json &j)
        {
            expect_object(j, "config");
            for (auto &kv : j.items())
            {
                const std::string &k = kv.key();
                if (k == "preset")
                    continue; // handled by the caller before the overlay
                else if (k == "scenario")
                    apply_scenario(c.scenario, kv.value(), "scenario");
                else if (k == "lens")
                    apply_lens(c.lens, kv.value(), "lens");
                else if (k == "ms")
                    apply_ms(c.ms, kv.value(), "ms");
                else if (k == "codebook")
                    apply_codebook(c.codebook, kv.value(), "codebook");
                else if (k == "training")
                    apply_training(c.training, kv.value(), "training");
                else if (k == "training_snr_db")
                    c.training_snr_db = as_num(kv.value(), "training_snr_db");
                else if (k == "t_coherence")
                    c.t_coherence = (long long)as_num(kv.value(), "t_coherence");
                else if (k == "pdma")
                    apply_pdma(c.pdma, kv.value(), "pdma");
                else if (k == "sim")
                    apply_sim(c.sim, kv.value(), "sim");
                else if (k == "sweep")
                    apply_sweep(c.sweep, kv.value(), "sweep");
                else if (k == "output")
                    apply_output(c.output, kv.value(), "output");
                else
                    unknown_key("", k);
            }
        }
    } // namespace

    // --------------------------------------------------------------- presets

    ExperimentConfig preset_config(const std::string &name)
    {
        ExperimentConfig cfg; // struct defaults already match the reference scenario
        if (name == "paper-defaults")
        {
            cfg.sweep.axis = "snr_db";
            cfg.sweep.values = {-20.0, -15.0, -10.0, -5.0, 0.0, 5.0, 10.0};
            cfg.output.path = "paper_defaults.csv";
            return cfg;
        }
        if (name == "single-user")
        {
            cfg.scenario.n_users = 1;
            cfg.sweep.axis = "snr_db";
            cfg.sweep.values = {-10.0, 0.0, 10.0};
            cfg.output.path = "single_user.csv";
            return cfg;
        }
        throw config_error("unknown preset: " + name +
                           " (available: paper-defaults, single-user)");
    }

    ExperimentConfig parse_config_text(const std::string &json_text)
    {
        json j;
        try
        {
            j = json::parse(json_text);
        }
        catch (const std::exception &e)
        {
            throw config_error(std::string("config is not valid JSON: ") + e.what());
        }
        expect_object(j, "config");
        ExperimentConfig cfg;
        if (j.contains("preset"))
            cfg = preset_config(as_str(j.at("preset"), "preset"));
        apply_root(cfg, j);
        return cfg;
    }

    ExperimentConfig parse_config_file(const std::string &path)
    {
        // A bare preset name is accepted in place of a file path.
        if (path == "paper-defaults" || path == "single-user")
            return preset_config(path);
        std::ifstream in(path);
        if (!in)
            throw config_error("cannot open config file: " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config_text(ss.str());
    }

    // ------------------------------------------------------------------ dump

    std::string dump_config(const ExperimentConfig &cfg)
    {
        json j;
        j["scenario"] = {{"n_users", cfg.scenario.n_users},
                         {"n_paths", cfg.scenario.n_paths},
                         {"carrier_hz", cfg.scenario.carrier_hz},
                         {"bandwidth_hz", cfg.scenario.bandwidth_hz},
                         {"max_delay_s", cfg.scenario.max_delay_s},
                         {"angle_range_deg", rad2deg(cfg.scenario.angle_range)},
                         {"distance_m", cfg.scenario.distance_m},
                         {"pathloss",
                          {{"exponent", cfg.scenario.pathloss.exponent},
                           {"ref_distance_m", cfg.scenario.pathloss.ref_distance_m},
                           {"dominant_fraction", cfg.scenario.pathloss.dominant_fraction}}}};
        j["lens"] = {{"d_y", cfg.lens.d_y},
                     {"d_z", cfg.lens.d_z},
                     {"theta_cov_deg", rad2deg(cfg.lens.theta_cov)},
                     {"phi_cov_deg", rad2deg(cfg.lens.phi_cov)},
                     {"focal_ratio", cfg.lens.focal_ratio},
                     {"phi0", cfg.lens.phi0}};
        j["ms"] = {{"n_y", cfg.ms.n_y}, {"n_z", cfg.ms.n_z}, {"spacing", cfg.ms.spacing}};
        j["codebook"] = {{"n_cb", cfg.codebook.n_cb},
                         {"el_support_deg", cfg.codebook.el_support_deg},
                         {"az_support_deg", cfg.codebook.az_support_deg}};
        j["training"] = {{"rho", cfg.training.rho},
                         {"t2", cfg.training.t2},
                         {"pilot_seed", cfg.training.pilot_seed},
                         {"average_phase1", cfg.training.average_phase1}};
        j["training_snr_db"] = cfg.training_snr_db;
        j["t_coherence"] = cfg.t_coherence;
        j["pdma"] = {{"mode", cfg.pdma.mode}, {"csi", cfg.pdma.csi}, {"m_rf", cfg.pdma.m_rf}};
        j["sim"] = {{"n_symbols", cfg.sim.n_symbols},
                    {"n_trials", cfg.sim.n_trials},
                    {"snr_db", cfg.sim.snr_db},
                    {"seed", cfg.sim.seed},
                    {"modulation", cfg.sim.modulation},
                    {"mc_blocks", cfg.sim.mc_blocks}};
        j["sweep"] = {{"axis", cfg.sweep.axis}, {"values", cfg.sweep.values}};
        j["output"] = {{"path", cfg.output.path}, {"format", cfg.output.format}};
        return j.dump(2);
    }

    std::string config_digest(const ExperimentConfig &cfg)
    {
        // The digest identifies the experiment itself; where the results are
        // written must not change it, or re-running with --out would break
        // reproducibility comparisons.
        ExperimentConfig keyed = cfg;
        keyed.output = OutputSpec{};
        const std::string s = dump_config(keyed);
        std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a 64-bit
        for (unsigned char c : s)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)h);
        return buf;
    }

} // namespace lenspdma
