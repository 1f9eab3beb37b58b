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

#include "lenspdma/channel.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "lenspdma/rng.hpp"

namespace lenspdma
{
    void PathLossConfig::validate() const
    {
        if (!(exponent >= 0.0))
            throw config_error("pathloss: exponent must be >= 0");
        if (!(ref_distance_m > 0.0))
            throw config_error("pathloss: ref_distance_m must be positive");
        if (dominant_fraction < 0.0 || dominant_fraction >= 1.0)
            throw config_error("pathloss: dominant_fraction must lie in [0, 1)");
    }

    int ScenarioConfig::mu() const
    {
        return (int)std::lround(bandwidth_hz * max_delay_s);
    }

    void ScenarioConfig::validate() const
    {
        if (n_users < 1)
            throw config_error("scenario: n_users must be >= 1");
        if (n_paths < 1)
            throw config_error("scenario: n_paths must be >= 1");
        if (!(bandwidth_hz > 0.0))
            throw config_error("scenario: bandwidth_hz must be positive");
        if (max_delay_s < 0.0)
            throw config_error("scenario: max_delay_s must be >= 0");
        if (!(carrier_hz > 0.0))
            throw config_error("scenario: carrier_hz must be positive");
        if (angle_range < 0.0 || angle_range > 0.5 * pi)
            throw config_error("scenario: angle_range must lie in [0, pi/2]");
        if (!(distance_m > 0.0))
            throw config_error("scenario: distance_m must be positive");
        pathloss.validate();
    }

    ChannelRealization sample_channel(const ScenarioConfig &scenario, std::uint64_t seed)
    {
        scenario.validate();

        const int K = scenario.n_users;
        const int L = scenario.n_paths;
        const double pl = std::pow(scenario.distance_m / scenario.pathloss.ref_distance_m,
                                   -scenario.pathloss.exponent);
        const double s = scenario.pathloss.dominant_fraction;

        std::mt19937_64 rng = make_rng(seed);

        ChannelRealization r;
        r.rng_seed = seed;
        r.max_delay_s = scenario.max_delay_s;
        r.paths.assign((std::size_t)K, std::vector<PathParams>((std::size_t)L));

        for (int k = 0; k < K; k++)
        {
            auto &u = r.paths[(std::size_t)k];
            for (int l = 0; l < L; l++)
                u[(std::size_t)l].delay_s = randu(rng, 0.0, scenario.max_delay_s);

            // Path 0 carries the dominant fraction of the power; the rest is
            // spread with a flat Dirichlet draw.
            std::vector<double> w = dirichlet_flat(rng, (std::size_t)L);
            for (int l = 0; l < L; l++)
            {
                double frac = (1.0 - s) * w[(std::size_t)l] + (l == 0 ? s : 0.0);
                double psi = randu(rng, 0.0, 2.0 * pi);
                u[(std::size_t)l].gain = std::sqrt(pl * frac) * std::polar(1.0, psi);
            }

            for (int l = 0; l < L; l++)
            {
                auto &p = u[(std::size_t)l];
                p.aoa_el = randu(rng, -scenario.angle_range, scenario.angle_range);
                p.aoa_az = randu(rng, -scenario.angle_range, scenario.angle_range);
                p.aod_el = randu(rng, -scenario.angle_range, scenario.angle_range);
                p.aod_az = randu(rng, -scenario.angle_range, scenario.angle_range);
            }
        }
        return r;
    }

    void save_realization(const ChannelRealization &r, const std::string &path)
    {
        std::FILE *fp = std::fopen(path.c_str(), "w");
        if (!fp)
            throw std::runtime_error("cannot open " + path + " for writing");

        int L = r.paths.empty() ? 0 : (int)r.paths[0].size();
        std::fprintf(fp, "lenspdma-channel 1 users=%d paths=%d seed=%" PRIu64 " max_delay_s=%a\n",
                     r.n_users(), L, r.rng_seed, r.max_delay_s);
        std::fprintf(fp, "# user path gain_re gain_im delay_s aoa_el aoa_az aod_el aod_az\n");
        for (int k = 0; k < r.n_users(); k++)
            for (std::size_t l = 0; l < r.paths[(std::size_t)k].size(); l++)
            {
                const PathParams &p = r.paths[(std::size_t)k][l];
                std::fprintf(fp, "%d %zu %a %a %a %a %a %a %a\n", k, l,
                             p.gain.real(), p.gain.imag(), p.delay_s,
                             p.aoa_el, p.aoa_az, p.aod_el, p.aod_az);
            }
        std::fclose(fp);
    }

    ChannelRealization load_realization(const std::string &path)
    {
        std::FILE *fp = std::fopen(path.c_str(), "r");
        if (!fp)
            throw std::runtime_error("cannot open " + path);

        int users = 0, paths = 0;
        std::uint64_t seed = 0;
        double max_delay = 0.0;
        if (std::fscanf(fp, "lenspdma-channel 1 users=%d paths=%d seed=%" SCNu64 " max_delay_s=%la\n",
                        &users, &paths, &seed, &max_delay) != 4)
        {
            std::fclose(fp);
            throw std::runtime_error(path + ": not a lenspdma channel file");
        }
        // Skip the column-name comment.
        int ch;
        while ((ch = std::fgetc(fp)) != EOF && ch != '\n')
            ;

        ChannelRealization r;
        r.rng_seed = seed;
        r.max_delay_s = max_delay;
        r.paths.assign((std::size_t)users, std::vector<PathParams>((std::size_t)paths));
        for (int i = 0; i < users * paths; i++)
        {
            int k = 0;
            std::size_t l = 0;
            double re = 0, im = 0;
            PathParams p;
            if (std::fscanf(fp, "%d %zu %la %la %la %la %la %la %la\n", &k, &l, &re, &im,
                            &p.delay_s, &p.aoa_el, &p.aoa_az, &p.aod_el, &p.aod_az) != 9 ||
                k < 0 || k >= users || l >= (std::size_t)paths)
            {
                std::fclose(fp);
                throw std::runtime_error(path + ": truncated or corrupt record");
            }
            p.gain = cx(re, im);
            r.paths[(std::size_t)k][l] = p;
        }
        std::fclose(fp);
        return r;
    }

    ArrayGeometry make_geometry(const LensArrayConfig &lens, const UpaConfig &ms)
    {
        lens.validate();
        ms.validate();
        ArrayGeometry g;
        g.lens = lens;
        g.grid = antenna_grid(lens);
        g.ms = ms;
        return g;
    }

    DiscreteChannel discretize(const ChannelRealization &r, const ArrayGeometry &arrays,
                               double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0))
            throw config_error("discretize: bandwidth_hz must be positive");

        DiscreteChannel d;
        d.m_bs = arrays.m_bs();
        d.m_ms = arrays.m_ms();
        d.mu_frame = (int)std::lround(bandwidth_hz * r.max_delay_s);
        d.users.resize(r.paths.size());

        for (std::size_t k = 0; k < r.paths.size(); k++)
        {
            std::map<int, Tap> merged;
            for (const PathParams &p : r.paths[k])
            {
                int n = (int)std::lround(p.delay_s * bandwidth_hz);
                arma::cx_vec a = lens_response(arrays.lens, arrays.grid, p.aoa_el, p.aoa_az);
                arma::cx_vec b = upa_response(arrays.ms, p.aod_el, p.aod_az);
                arma::cx_vec beta_vec = p.gain * a;
                auto it = merged.find(n);
                if (it == merged.end())
                {
                    Tap t;
                    t.n = n;
                    t.beta = beta_vec;
                    t.rows = beta_vec * b.t();
                    merged.emplace(n, std::move(t));
                }
                else
                {
                    it->second.beta += beta_vec;
                    it->second.rows += beta_vec * b.t();
                }
            }
            auto &taps = d.users[k];
            for (auto &kv : merged)
            {
                d.mu = std::max(d.mu, kv.first);
                taps.push_back(std::move(kv.second));
            }
        }
        return d;
    }

    cx beta(const DiscreteChannel &d, int m, int k, int l)
    {
        return d.users.at((std::size_t)k).at((std::size_t)l).beta((arma::uword)m);
    }

    AssocMap genie_assoc(const DiscreteChannel &d, const std::vector<int> &selected)
    {
        for (int id : selected)
            if (id < 0 || id >= d.m_bs)
                throw config_error("genie association: antenna id " + std::to_string(id) +
                                   " outside [0, " + std::to_string(d.m_bs) + ")");
        const int K = d.n_users();
        AssocMap a;
        a.owner.assign(selected.size(), -1);
        a.delay.assign(selected.size(), std::vector<int>((std::size_t)K, -1));

        for (std::size_t j = 0; j < selected.size(); j++)
        {
            arma::uword id = (arma::uword)selected[j];
            double best_global = -1.0;
            for (int k = 0; k < K; k++)
            {
                double best_user = -1.0;
                for (const Tap &t : d.users[(std::size_t)k])
                {
                    double e = std::norm(t.beta(id));
                    if (e > best_user)
                    {
                        best_user = e;
                        a.delay[j][(std::size_t)k] = t.n;
                    }
                }
                if (best_user > best_global)
                {
                    best_global = best_user;
                    a.owner[j] = k;
                }
            }
        }
        return a;
    }

    const arma::cx_mat *EffectiveChannels::cross(int k, int k2, int i) const
    {
        const auto &m = g_cross[(std::size_t)k][(std::size_t)k2];
        auto it = m.find(i);
        return it == m.end() ? nullptr : &it->second;
    }

    EffectiveChannels build_effective(const DiscreteChannel &d,
                                      const std::vector<int> &selected,
                                      const AssocMap &assoc)
    {
        if (selected.empty())
            throw config_error("effective matrices: selected antenna set is empty");
        for (int id : selected)
            if (id < 0 || id >= d.m_bs)
                throw config_error("effective matrices: antenna id " + std::to_string(id) +
                                   " outside [0, " + std::to_string(d.m_bs) + ")");
        if (assoc.owner.size() != selected.size())
            throw config_error("effective matrices: association size mismatch");

        const int K = d.n_users();
        const std::size_t M = selected.size();

        EffectiveChannels eff;
        eff.selected = selected;
        eff.assoc = assoc;
        eff.mu = d.mu;
        eff.m_k.assign((std::size_t)K, {});
        for (std::size_t j = 0; j < M; j++)
            if (assoc.owner[j] >= 0 && assoc.owner[j] < K)
                eff.m_k[(std::size_t)assoc.owner[j]].push_back((int)j);

        eff.g_cross.assign((std::size_t)K, std::vector<std::map<int, arma::cx_mat>>((std::size_t)K));
        for (int k = 0; k < K; k++)
        {
            auto &maps = eff.g_cross[(std::size_t)k];
            for (std::size_t j = 0; j < M; j++)
            {
                int n0 = assoc.delay[j][(std::size_t)k];
                if (n0 < 0)
                    continue; // undefined compensation: the row stays zero
                arma::uword id = (arma::uword)selected[j];
                for (int k2 = 0; k2 < K; k2++)
                    for (const Tap &t : d.users[(std::size_t)k2])
                    {
                        int i = t.n - n0;
                        auto ins = maps[(std::size_t)k2].try_emplace(
                            i, arma::cx_mat(M, (arma::uword)d.m_ms, arma::fill::zeros));
                        ins.first->second.row(j) += t.rows.row(id);
                    }
            }
        }

        eff.g_self.resize((std::size_t)K);
        for (int k = 0; k < K; k++)
        {
            const auto &mk = eff.m_k[(std::size_t)k];
            arma::cx_mat g(mk.size(), (arma::uword)d.m_ms, arma::fill::zeros);
            const arma::cx_mat *g0 = eff.cross(k, k, 0);
            if (g0)
                for (std::size_t r = 0; r < mk.size(); r++)
                    g.row(r) = g0->row((arma::uword)mk[r]);
            eff.g_self[(std::size_t)k] = std::move(g);
        }
        return eff;
    }

    EffectiveChannels effective_matrices(const DiscreteChannel &d,
                                         const std::vector<int> &selected)
    {
        return build_effective(d, selected, genie_assoc(d, selected));
    }

} // namespace lenspdma
