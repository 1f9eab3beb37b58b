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

#include "lenspdma/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "lenspdma/codebook.hpp"
#include "lenspdma/estimation.hpp"
#include "lenspdma/lens_array.hpp"
#include "lenspdma/rng.hpp"

namespace lenspdma
{
    namespace
    {
        // Bit-exact double formatting (17 significant digits round-trips).
        std::string fmt(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }

        std::string join_rates(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); i++)
            {
                if (i)
                    s += ';';
                s += fmt(v[i]);
            }
            return s;
        }

        const char *csv_header =
            "axis,value,mode,csi,k_users,m_rf,snr_db,trials,failed,overhead_t,"
            "mean_sum_rate,stderr_sum_rate,mean_empirical_sum_rate,user_rates";

        nlohmann::ordered_json row_to_json(const SweepRow &r)
        {
            nlohmann::ordered_json j;
            j["axis"] = r.axis;
            j["value"] = r.value;
            j["mode"] = r.mode;
            j["csi"] = r.csi;
            j["k_users"] = r.k_users;
            j["m_rf"] = r.m_rf;
            j["snr_db"] = r.snr_db;
            j["trials"] = r.trials;
            j["failed"] = r.failed;
            j["overhead_t"] = r.overhead_t;
            j["mean_sum_rate"] = r.mean_sum_rate;
            j["stderr_sum_rate"] = r.stderr_sum_rate;
            if (std::isfinite(r.mean_empirical_sum_rate))
                j["mean_empirical_sum_rate"] = r.mean_empirical_sum_rate;
            else
                j["mean_empirical_sum_rate"] = nullptr;
            j["user_rates"] = r.user_rates;
            return j;
        }

        SweepRow row_from_json(const nlohmann::ordered_json &j)
        {
            SweepRow r;
            r.axis = j.at("axis").get<std::string>();
            r.value = j.at("value").get<double>();
            r.mode = j.at("mode").get<std::string>();
            r.csi = j.at("csi").get<std::string>();
            r.k_users = j.at("k_users").get<int>();
            r.m_rf = j.at("m_rf").get<int>();
            r.snr_db = j.at("snr_db").get<double>();
            r.trials = j.at("trials").get<int>();
            r.failed = j.at("failed").get<int>();
            r.overhead_t = j.at("overhead_t").get<long long>();
            r.mean_sum_rate = j.at("mean_sum_rate").get<double>();
            r.stderr_sum_rate = j.at("stderr_sum_rate").get<double>();
            if (j.at("mean_empirical_sum_rate").is_null())
                r.mean_empirical_sum_rate = std::numeric_limits<double>::quiet_NaN();
            else
                r.mean_empirical_sum_rate = j.at("mean_empirical_sum_rate").get<double>();
            r.user_rates = j.at("user_rates").get<std::vector<double>>();
            return r;
        }

        std::vector<std::string> split(const std::string &line, char sep)
        {
            std::vector<std::string> out;
            std::string cur;
            for (char c : line)
            {
                if (c == sep)
                {
                    out.push_back(cur);
                    cur.clear();
                }
                else
                    cur += c;
            }
            out.push_back(cur);
            return out;
        }
    } // namespace

    void write_sweep(const SweepResult &r, const std::string &path, const std::string &format,
                     const std::string &config_dump)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open output file: " + path);

        if (format == "csv")
        {
            out << csv_header << "\n";
            for (const SweepRow &row : r.rows)
                out << row.axis << ',' << fmt(row.value) << ',' << row.mode << ',' << row.csi
                    << ',' << row.k_users << ',' << row.m_rf << ',' << fmt(row.snr_db) << ','
                    << row.trials << ',' << row.failed << ',' << row.overhead_t << ','
                    << fmt(row.mean_sum_rate) << ',' << fmt(row.stderr_sum_rate) << ','
                    << fmt(row.mean_empirical_sum_rate) << ',' << join_rates(row.user_rates)
                    << "\n";
        }
        else if (format == "jsonl")
        {
            for (const SweepRow &row : r.rows)
                out << row_to_json(row).dump() << "\n";
        }
        else
            throw config_error("unknown output format: " + format);

        // Sidecar metadata: resolved config + digest, no timestamps.
        nlohmann::ordered_json meta;
        meta["digest"] = r.digest;
        meta["axis"] = r.axis;
        meta["rows"] = r.rows.size();
        meta["config"] = nlohmann::ordered_json::parse(config_dump);
        std::ofstream mout(path + ".meta.json", std::ios::binary);
        if (!mout)
            throw std::runtime_error("cannot open output file: " + path + ".meta.json");
        mout << meta.dump(2) << "\n";
    }

    SweepResult read_sweep(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open results file: " + path);

        SweepResult res;
        std::string line;
        bool first = true;
        bool is_csv = false;
        while (std::getline(in, line))
        {
            if (line.empty())
                continue;
            if (first)
            {
                first = false;
                is_csv = line[0] != '{';
                if (is_csv)
                {
                    if (line != csv_header)
                        throw std::runtime_error("unrecognized results header in " + path);
                    continue;
                }
            }
            if (is_csv)
            {
                std::vector<std::string> f = split(line, ',');
                if (f.size() != 14)
                    throw std::runtime_error("malformed results row in " + path);
                SweepRow r;
                r.axis = f[0];
                r.value = std::strtod(f[1].c_str(), nullptr);
                r.mode = f[2];
                r.csi = f[3];
                r.k_users = std::atoi(f[4].c_str());
                r.m_rf = std::atoi(f[5].c_str());
                r.snr_db = std::strtod(f[6].c_str(), nullptr);
                r.trials = std::atoi(f[7].c_str());
                r.failed = std::atoi(f[8].c_str());
                r.overhead_t = std::atoll(f[9].c_str());
                r.mean_sum_rate = std::strtod(f[10].c_str(), nullptr);
                r.stderr_sum_rate = std::strtod(f[11].c_str(), nullptr);
                r.mean_empirical_sum_rate = std::strtod(f[12].c_str(), nullptr);
                if (!f[13].empty())
                    for (const std::string &s : split(f[13], ';'))
                        r.user_rates.push_back(std::strtod(s.c_str(), nullptr));
                res.rows.push_back(std::move(r));
            }
            else
            {
                res.rows.push_back(row_from_json(nlohmann::ordered_json::parse(line)));
            }
        }
        if (!res.rows.empty())
            res.axis = res.rows.front().axis;

        std::ifstream meta(path + ".meta.json");
        if (meta)
        {
            std::stringstream ss;
            ss << meta.rdbuf();
            try
            {
                res.digest = nlohmann::ordered_json::parse(ss.str()).at("digest").get<std::string>();
            }
            catch (...)
            {
                // Metadata is advisory; a missing digest does not invalidate rows.
            }
        }
        return res;
    }

    // -------------------------------------------------------------- cmd_run

    int cmd_run(const std::string &config, std::uint64_t seed_override, bool has_seed,
                int trials_override, const std::string &out_override,
                const std::string &format_override, std::ostream &out, std::ostream &err)
    {
        ExperimentConfig cfg;
        try
        {
            cfg = parse_config_file(config);
            if (has_seed)
                cfg.sim.seed = seed_override;
            if (trials_override > 0)
                cfg.sim.n_trials = trials_override;
            if (!out_override.empty())
                cfg.output.path = out_override;
            if (!format_override.empty())
                cfg.output.format = format_override;
            cfg.validate();
        }
        catch (const config_error &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config_error;
        }

        try
        {
            SweepResult res = run_experiment(cfg);
            write_sweep(res, cfg.output.path, cfg.output.format, dump_config(cfg));
            out << "axis=" << res.axis << " digest=" << res.digest << "\n";
            for (const SweepRow &r : res.rows)
            {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "  %s=%-8g sum_rate=%.6g +/- %.3g bit/s/Hz  (K=%d, M_RF=%d, %s/%s,"
                              " failed %d/%d)",
                              r.axis.c_str(), r.value, r.mean_sum_rate, r.stderr_sum_rate,
                              r.k_users, r.m_rf, r.mode.c_str(), r.csi.c_str(), r.failed,
                              r.trials);
                out << buf << "\n";
            }
            out << "wrote " << cfg.output.path << " and " << cfg.output.path << ".meta.json\n";
            return exit_ok;
        }
        catch (const config_error &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config_error;
        }
        catch (const std::exception &e)
        {
            err << "runtime error: " << e.what() << "\n";
            return exit_runtime_error;
        }
    }

    // --------------------------------------------------------- cmd_validate

    namespace
    {
        struct CheckList
        {
            std::ostream &out;
            bool all_ok = true;

            void record(const std::string &name, bool ok, const std::string &detail)
            {
                out << (ok ? "ok   - " : "FAIL - ") << name;
                if (!detail.empty())
                    out << " (" << detail << ")";
                out << "\n";
                all_ok = all_ok && ok;
            }
        };
    } // namespace

    int cmd_validate(bool quick, std::ostream &out, std::ostream &err)
    {
        CheckList cl{out};
        try
        {
            // 1. Antenna grid counts for three pinned geometries.
            {
                LensArrayConfig big;
                auto g1 = antenna_grid(big);
                LensArrayConfig small;
                small.d_y = small.d_z = 1.0;
                auto g2 = antenna_grid(small);
                LensArrayConfig flat;
                flat.theta_cov = 0.0;
                auto g3 = antenna_grid(flat);
                bool ok = g1.size() == 317 && g2.size() == 5 && g3.size() == 21;
                cl.record("antenna grid counts", ok,
                          "317/5/21 expected, got " + std::to_string(g1.size()) + "/" +
                              std::to_string(g2.size()) + "/" + std::to_string(g3.size()));
            }

            // 2. Closed-form response vs aperture integration at normal
            //    incidence (analytically exact up to quadrature error).
            LensArrayConfig lens;
            lens.d_y = lens.d_z = 4.0;
            const double scale = std::sqrt(lens.d_y * lens.d_z);
            {
                cx closed = lens_response_at(lens, 0.0, 0.0, {0, 0});
                cx oracle = aperture_integration_oracle(lens, 0.0, 0.0, {0, 0});
                double diff = std::abs(oracle - closed) / scale;
                cl.record("aperture oracle, normal incidence", diff <= 1e-3,
                          "relative diff " + fmt(diff));
            }

            // 3. Oblique incidence on the focused antenna (small Fresnel
            //    residual expected at this aperture).
            {
                double th = deg2rad(12.0), ph = deg2rad(20.0);
                auto grid = antenna_grid(lens);
                AntennaIndex best{0, 0};
                double best_mag = -1.0;
                for (const auto &m : grid)
                {
                    double v = std::abs(lens_response_at(lens, th, ph, m));
                    if (v > best_mag)
                    {
                        best_mag = v;
                        best = m;
                    }
                }
                cx closed = lens_response_at(lens, th, ph, best);
                cx oracle = aperture_integration_oracle(lens, th, ph, best);
                double diff = std::abs(std::abs(oracle) - std::abs(closed)) / scale;
                cl.record("aperture oracle, oblique incidence", diff <= 0.06,
                          "relative magnitude diff " + fmt(diff));
            }

            // 4. Self-distrust: a 1% multiplicative error injected into the
            //    closed form must be caught by the oracle comparison --
            //    proves the tolerance actually binds.
            {
                cx closed = lens_response_at(lens, 0.0, 0.0, {0, 0}) * 1.01;
                cx oracle = aperture_integration_oracle(lens, 0.0, 0.0, {0, 0});
                double diff = std::abs(oracle - closed) / scale;
                cl.record("mutation detection (1% perturbation)", diff > 1e-3,
                          "perturbed diff " + fmt(diff));
            }

            // 5. MRC codeword selection against exhaustive search.
            {
                UpaConfig ms;
                ms.n_y = 2;
                ms.n_z = 2;
                Codebook cb = beamsteering_codebook(ms, 16);
                std::mt19937_64 rng = make_rng(77);
                bool ok = true;
                for (int rep = 0; rep < (quick ? 5 : 25) && ok; rep++)
                {
                    arma::cx_mat g(3, (arma::uword)ms.size());
                    for (auto &ge : g)
                        ge = randn_cx(rng, 1.0);
                    BeamformerSet bf = mrc_design({g}, cb);
                    int best = 0;
                    double best_v = -1.0;
                    for (int c = 0; c < cb.size(); c++)
                    {
                        double v = std::pow(arma::norm(g * cb.vectors.col((arma::uword)c)), 2);
                        if (v > best_v)
                        {
                            best_v = v;
                            best = c;
                        }
                    }
                    ok = bf.v_index[0] == best;
                }
                cl.record("mrc codeword brute force", ok, "");
            }

            // 6. MMSE closed-form SINR equals the term-by-term evaluation.
            {
                ScenarioConfig scen;
                scen.n_users = 2;
                scen.n_paths = 2;
                LensArrayConfig small;
                small.d_y = small.d_z = 3.0;
                UpaConfig ms;
                ms.n_y = 2;
                ms.n_z = 2;
                ArrayGeometry geom = make_geometry(small, ms);
                ChannelRealization real = sample_channel(scen, 4242);
                DiscreteChannel d = discretize(real, geom, scen.bandwidth_hz);
                std::vector<int> sel = {0, 1, 2, 3, 4, 5};
                EffectiveChannels eff = effective_matrices(d, sel);
                arma::vec p(2, arma::fill::ones);
                Codebook cb = beamsteering_codebook(ms, 16);
                BeamformerSet bf = mmse_design(eff, p, 0.1, cb);
                RateReport r21 = sinr_eq21(eff, bf, p, 0.1);
                arma::vec r25 = sinr_mmse_closed_form(eff, bf, p, 0.1);
                double diff = arma::abs(r21.sinr - r25).max();
                cl.record("mmse closed-form equivalence", diff <= 1e-9,
                          "max diff " + fmt(diff));
            }

            // 7. Training overhead identities.
            {
                OverheadReport o = training_overhead(317, 10, 16, 50, 5);
                bool ok = o.total == 503 && o.brute_force == 128000 && o.t1 == 82 &&
                          o.t2_total == 305 && o.t3 == 116;
                cl.record("training overhead identities", ok,
                          "T=" + std::to_string(o.total) + " T'=" + std::to_string(o.brute_force));
            }

            if (!quick)
            {
                // 8. Full-size lens point (slow: wide aperture integration).
                LensArrayConfig big;
                double th = deg2rad(10.0), ph = deg2rad(15.0);
                auto grid = antenna_grid(big);
                AntennaIndex best{0, 0};
                double best_mag = -1.0;
                for (const auto &m : grid)
                {
                    double v = std::abs(lens_response_at(big, th, ph, m));
                    if (v > best_mag)
                    {
                        best_mag = v;
                        best = m;
                    }
                }
                cx closed = lens_response_at(big, th, ph, best);
                cx oracle = aperture_integration_oracle(big, th, ph, best);
                double diff = std::abs(std::abs(oracle) - std::abs(closed)) /
                              std::sqrt(big.d_y * big.d_z);
                cl.record("aperture oracle, full-size lens", diff <= 0.10,
                          "relative magnitude diff " + fmt(diff));
            }
        }
        catch (const std::exception &e)
        {
            err << "validate aborted: " << e.what() << "\n";
            return exit_runtime_error;
        }

        out << (cl.all_ok ? "validate: all checks passed\n" : "validate: CHECKS FAILED\n");
        return cl.all_ok ? exit_ok : exit_oracle_failure;
    }

    // ----------------------------------------------------------- cmd_report

    int cmd_report(const std::vector<std::string> &files, const std::string &out_path,
                   std::ostream &out, std::ostream &err)
    {
        if (files.empty())
        {
            err << "report: no input files\n";
            return exit_config_error;
        }
        SweepResult merged;
        try
        {
            for (const std::string &f : files)
            {
                SweepResult r = read_sweep(f);
                out << f << ": " << r.rows.size() << " rows"
                    << (r.digest.empty() ? "" : ", digest " + r.digest) << "\n";
                for (SweepRow &row : r.rows)
                    merged.rows.push_back(std::move(row));
            }
        }
        catch (const std::exception &e)
        {
            err << "report: " << e.what() << "\n";
            return exit_runtime_error;
        }

        std::stable_sort(merged.rows.begin(), merged.rows.end(),
                         [](const SweepRow &a, const SweepRow &b) {
                             if (a.axis != b.axis)
                                 return a.axis < b.axis;
                             if (a.value != b.value)
                                 return a.value < b.value;
                             if (a.mode != b.mode)
                                 return a.mode < b.mode;
                             return a.csi < b.csi;
                         });
        if (!merged.rows.empty())
            merged.axis = merged.rows.front().axis;

        if (!out_path.empty())
        {
            std::ofstream fo(out_path, std::ios::binary);
            if (!fo)
            {
                err << "report: cannot open " << out_path << "\n";
                return exit_runtime_error;
            }
            fo << csv_header << "\n";
            for (const SweepRow &row : merged.rows)
                fo << row.axis << ',' << fmt(row.value) << ',' << row.mode << ',' << row.csi
                   << ',' << row.k_users << ',' << row.m_rf << ',' << fmt(row.snr_db) << ','
                   << row.trials << ',' << row.failed << ',' << row.overhead_t << ','
                   << fmt(row.mean_sum_rate) << ',' << fmt(row.stderr_sum_rate) << ','
                   << fmt(row.mean_empirical_sum_rate) << ',' << join_rates(row.user_rates)
                   << "\n";
            out << "wrote " << out_path << " (" << merged.rows.size() << " rows)\n";
        }
        else
        {
            for (const SweepRow &row : merged.rows)
            {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "%s=%-8g %s/%-9s K=%d M_RF=%-3d sum_rate=%.6g +/- %.3g",
                              row.axis.c_str(), row.value, row.mode.c_str(), row.csi.c_str(),
                              row.k_users, row.m_rf, row.mean_sum_rate, row.stderr_sum_rate);
                out << buf << "\n";
            }
        }
        return exit_ok;
    }

} // namespace lenspdma
