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

#include "lenspdma/linksim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "lenspdma/estimation.hpp"
#include "lenspdma/rng.hpp"

namespace lenspdma
{
    Streams transmit_receive(const DiscreteChannel &d, const std::vector<int> &selected,
                             const BeamformerSet &bf, const arma::vec &p, double sigma2,
                             long n_symbols, const std::string &modulation,
                             std::mt19937_64 &rng)
    {
        const int K = d.n_users();
        const arma::uword M = selected.size();
        const arma::uword N = (arma::uword)n_symbols;
        if (n_symbols < 1)
            throw config_error("transmit_receive: n_symbols must be >= 1");
        if (modulation != "gaussian" && modulation != "qpsk")
            throw config_error("transmit_receive: unknown modulation " + modulation);

        Streams st;
        st.sigma2 = sigma2;
        st.p = p;
        st.s.set_size((arma::uword)K, N);
        for (int k = 0; k < K; k++)
            for (arma::uword n = 0; n < N; n++)
                st.s((arma::uword)k, n) = modulation == "qpsk" ? qpsk(rng) : randn_cx(rng, 1.0);

        st.z.set_size(M, N);
        for (arma::uword j = 0; j < M; j++)
            for (arma::uword n = 0; n < N; n++)
                st.z(j, n) = randn_cx(rng, sigma2);

        st.y = st.z;
        for (int k = 0; k < K; k++)
        {
            if (bf.v[(std::size_t)k].is_empty())
                continue; // zero-rate users stay silent
            arma::cx_rowvec xs = std::sqrt(p((arma::uword)k)) * st.s.row((arma::uword)k);
            for (const Tap &t : d.users[(std::size_t)k])
            {
                arma::cx_vec w(M);
                for (arma::uword j = 0; j < M; j++)
                    w(j) = arma::as_scalar(t.rows.row((arma::uword)selected[j]) *
                                           bf.v[(std::size_t)k]);
                if ((arma::uword)t.n >= N)
                    continue;
                st.y.cols((arma::uword)t.n, N - 1) += w * xs.cols(0, N - 1 - (arma::uword)t.n);
            }
        }
        return st;
    }

    namespace
    {
        arma::cx_vec padded_combiner(const EffectiveChannels &eff, const BeamformerSet &bf, int k)
        {
            const arma::uword M = eff.selected.size();
            arma::cx_vec u(M, arma::fill::zeros);
            if (bf.zero_rate[(std::size_t)k] || bf.u[(std::size_t)k].is_empty())
                return u;
            if (bf.mode == CombinerMode::mrc)
            {
                const auto &mk = eff.m_k[(std::size_t)k];
                for (std::size_t r = 0; r < mk.size(); r++)
                    u((arma::uword)mk[r]) = bf.u[(std::size_t)k](r);
            }
            else
            {
                u = bf.u[(std::size_t)k];
                // Rows without a defined compensation delay carry no signal
                // model; they are excluded from the measurement combiner the
                // same way build_effective zeroes them analytically.
                for (arma::uword j = 0; j < M; j++)
                    if (eff.assoc.delay[j][(std::size_t)k] < 0)
                        u(j) = 0.0;
            }
            return u;
        }
    } // namespace

    TrialResult measure_sinr(const Streams &streams, const BeamformerSet &bf,
                             const EffectiveChannels &eff, int mc_blocks)
    {
        const int K = (int)eff.g_cross.size();
        const arma::uword N = streams.y.n_cols;

        // Valid measurement window: clear of the leading convolution
        // transient and of the largest compensation shift at the tail.
        int max_shift = eff.mu;
        for (std::size_t j = 0; j < eff.assoc.delay.size(); j++)
            for (int k = 0; k < K; k++)
                max_shift = std::max(max_shift, eff.assoc.delay[j][(std::size_t)k]);
        const arma::uword lo = (arma::uword)max_shift;
        if (N < 2 * (arma::uword)max_shift + 16)
            throw config_error("measure_sinr: stream too short after delay trimming");
        const arma::uword hi = N - (arma::uword)max_shift;

        TrialResult res;
        res.empirical_sinr.zeros((arma::uword)K);
        res.empirical_rate.zeros((arma::uword)K);
        res.sinr_sigma_mc.zeros((arma::uword)K);
        res.p_desired.zeros((arma::uword)K);
        res.p_isi.zeros((arma::uword)K);
        res.p_iui.zeros((arma::uword)K);
        res.p_noise.zeros((arma::uword)K);

        RateReport analytic = sinr_eq21(eff, bf, streams.p, streams.sigma2);
        res.analytic_sinr = analytic.sinr;
        res.analytic_rate = analytic.rate;

        const arma::uword W = hi - lo;
        const int blocks = std::max(1, std::min(mc_blocks, (int)(W / 4)));

        for (int k = 0; k < K; k++)
        {
            arma::cx_vec u = padded_combiner(eff, bf, k);
            if (arma::norm(u) == 0.0)
                continue; // zero-rate: empirical SINR stays 0

            // Term regeneration: scalar gain per (user, offset) pair.
            std::vector<std::vector<std::pair<int, cx>>> gains((std::size_t)K);
            for (int k2 = 0; k2 < K; k2++)
            {
                if (bf.v[(std::size_t)k2].is_empty())
                    continue;
                for (const auto &kv : eff.g_cross[(std::size_t)k][(std::size_t)k2])
                {
                    cx g = arma::cdot(u, kv.second * bf.v[(std::size_t)k2]) *
                           std::sqrt(streams.p((arma::uword)k2));
                    gains[(std::size_t)k2].push_back({kv.first, g});
                }
            }

            arma::vec bd(blocks, arma::fill::zeros), bi(blocks, arma::fill::zeros),
                bn(blocks, arma::fill::zeros);
            double p_des = 0.0, p_isi = 0.0, p_iui = 0.0, p_noise = 0.0;

            for (arma::uword n = lo; n < hi; n++)
            {
                int blk = (int)(((n - lo) * (arma::uword)blocks) / W);

                cx des = 0.0, isi = 0.0, iui = 0.0;
                for (int k2 = 0; k2 < K; k2++)
                    for (const auto &gi : gains[(std::size_t)k2])
                    {
                        cx term = gi.second * streams.s((arma::uword)k2, n - (arma::uword)gi.first);
                        if (k2 == k && gi.first == 0)
                            des += term;
                        else if (k2 == k)
                            isi += term;
                        else
                            iui += term;
                    }

                // Delay-compensated combiner output from the actual receive
                // streams; whatever the regenerated signal terms do not
                // explain is counted as noise, so a mismatch between the
                // waveform and the effective-channel model shows up as an
                // empirical SINR loss instead of being silently absorbed.
                cx tot = 0.0;
                for (arma::uword j = 0; j < u.n_elem; j++)
                {
                    if (u(j) == cx(0.0))
                        continue;
                    int shift = eff.assoc.delay[j][(std::size_t)k];
                    tot += std::conj(u(j)) * streams.y(j, n + (arma::uword)shift);
                }
                cx noise = tot - des - isi - iui;

                p_des += std::norm(des);
                p_isi += std::norm(isi);
                p_iui += std::norm(iui);
                p_noise += std::norm(noise);
                bd((arma::uword)blk) += std::norm(des);
                bi((arma::uword)blk) += std::norm(isi) + std::norm(iui) + std::norm(noise);
            }

            res.p_desired((arma::uword)k) = p_des / (double)W;
            res.p_isi((arma::uword)k) = p_isi / (double)W;
            res.p_iui((arma::uword)k) = p_iui / (double)W;
            res.p_noise((arma::uword)k) = p_noise / (double)W;

            double denom = p_isi + p_iui + p_noise;
            double gamma = denom > 0.0 ? p_des / denom
                                       : (p_des > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
            res.empirical_sinr((arma::uword)k) = gamma;
            res.empirical_rate((arma::uword)k) = std::log2(1.0 + gamma);

            if (blocks > 1 && denom > 0.0)
            {
                arma::vec gb(blocks);
                for (int b = 0; b < blocks; b++)
                    gb((arma::uword)b) = bi((arma::uword)b) > 0.0
                                             ? bd((arma::uword)b) / bi((arma::uword)b)
                                             : 0.0;
                res.sinr_sigma_mc((arma::uword)k) =
                    arma::stddev(gb) / std::sqrt((double)blocks);
            }
        }
        return res;
    }

    TrialResult measure_sinr(const Streams &streams, const BeamformerSet &bf,
                             const DiscreteChannel &d, const std::vector<int> &selected,
                             int mc_blocks)
    {
        return measure_sinr(streams, bf, effective_matrices(d, selected), mc_blocks);
    }

    namespace
    {
        int worker_count()
        {
            if (const char *env = std::getenv("SIM_THREADS"))
            {
                int n = std::atoi(env);
                if (n >= 1)
                    return n;
            }
            unsigned hw = std::thread::hardware_concurrency();
            return hw == 0 ? 1 : (int)hw;
        }

        struct TrialOutcome
        {
            arma::vec rate;          // per-user net rates
            double sum_rate = 0.0;
            double empirical_sum = std::numeric_limits<double>::quiet_NaN();
            long long overhead = 0;
            bool failed = false;
        };

        TrialOutcome run_single_trial(const ExperimentConfig &cfg, const ScenarioConfig &scen,
                                      const ArrayGeometry &geom, const Codebook &cb,
                                      const OmniBeamformer &omni, const arma::cx_mat &f_train,
                                      int m_rf, double snr_db, std::uint64_t trial_seed)
        {
            const double sigma2 = db2lin(-snr_db); // p = 1
            const int K = scen.n_users;
            const arma::vec p((arma::uword)K, arma::fill::ones);

            ChannelRealization real = sample_channel(scen, trial_seed);
            DiscreteChannel d = discretize(real, geom, scen.bandwidth_hz);

            EffectiveChannels eff;
            BeamformerSet bf;
            TrialOutcome out;
            double factor = 1.0;

            if (cfg.pdma.csi == "estimated")
            {
                TrainingConfig tc = cfg.training;
                tc.p_tr = sigma2 * db2lin(cfg.training_snr_db);
                TrainingReport rep = run_training(d, tc, omni, f_train, m_rf, sigma2,
                                                  mix64(trial_seed, 0xE5), cfg.t_coherence);
                eff = build_effective(d, rep.selected, rep.assoc);
                bf = mrc_design(rep.g_hat, cb);
                out.overhead = rep.overhead.total;
                factor = std::max(0.0, 1.0 - (double)rep.overhead.total / (double)cfg.t_coherence);
                for (bool e : rep.empty_user)
                    out.failed = out.failed || e;
            }
            else
            {
                arma::vec q((arma::uword)d.m_bs, arma::fill::zeros);
                for (int k = 0; k < K; k++)
                    for (const Tap &t : d.users[(std::size_t)k])
                        q += p((arma::uword)k) * arma::square(arma::abs(t.beta));
                std::vector<int> selected = select_antennas(q, m_rf);
                eff = effective_matrices(d, selected);
                if (cfg.pdma.mode == "mmse")
                    bf = mmse_design(eff, p, sigma2, cb);
                else
                    bf = mrc_design(eff.g_self, cb);
            }

            RateReport rep = sinr_eq21(eff, bf, p, sigma2);
            out.rate = factor * rep.rate;
            out.sum_rate = factor * rep.sum_rate;
            for (bool f : rep.flagged)
                out.failed = out.failed || f;

            if (cfg.sim.n_symbols > 0)
            {
                std::mt19937_64 rng(mix64(trial_seed, 0x51));
                Streams st = transmit_receive(d, eff.selected, bf, p, sigma2,
                                              cfg.sim.n_symbols, cfg.sim.modulation, rng);
                TrialResult tr = measure_sinr(st, bf, eff, cfg.sim.mc_blocks);
                double emp = 0.0;
                for (arma::uword k = 0; k < tr.empirical_rate.n_elem; k++)
                    if (std::isfinite(tr.empirical_rate(k)))
                        emp += tr.empirical_rate(k);
                out.empirical_sum = factor * emp;
            }
            return out;
        }
    } // namespace

    SweepResult run_experiment(const ExperimentConfig &cfg)
    {
        cfg.validate();

        const ArrayGeometry geom = make_geometry(cfg.lens, cfg.ms);
        const Codebook cb = beamsteering_codebook(cfg.ms, cfg.codebook.n_cb,
                                                  deg2rad(cfg.codebook.el_support_deg),
                                                  deg2rad(cfg.codebook.az_support_deg));
        const OmniBeamformer omni = omni_beamformer(cfg.ms);
        const arma::cx_mat f_train = training_matrix(cfg.ms.size());

        SweepResult result;
        result.axis = cfg.sweep.axis;
        result.digest = config_digest(cfg);

        struct Task
        {
            std::size_t point, trial;
        };
        std::vector<Task> tasks;
        const std::size_t n_points = cfg.sweep.values.size();
        const std::size_t n_trials = (std::size_t)cfg.sim.n_trials;
        for (std::size_t a = 0; a < n_points; a++)
            for (std::size_t t = 0; t < n_trials; t++)
                tasks.push_back({a, t});

        std::vector<std::vector<TrialOutcome>> slots(n_points,
                                                     std::vector<TrialOutcome>(n_trials));

        auto point_params = [&](std::size_t a, ScenarioConfig &scen, int &m_rf, double &snr_db) {
            scen = cfg.scenario;
            m_rf = cfg.pdma.m_rf;
            snr_db = cfg.sim.snr_db;
            double v = cfg.sweep.values[a];
            if (cfg.sweep.axis == "snr_db")
                snr_db = v;
            else if (cfg.sweep.axis == "m_rf")
                m_rf = (int)std::lround(v);
            else if (cfg.sweep.axis == "k_users")
                scen.n_users = (int)std::lround(v);
        };

        std::atomic<std::size_t> next(0);

        auto work = [&]() {
            for (;;)
            {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size())
                    return;
                const Task &task = tasks[i];
                try
                {
                    ScenarioConfig scen;
                    int m_rf = 0;
                    double snr_db = 0.0;
                    point_params(task.point, scen, m_rf, snr_db);
                    std::uint64_t seed = mix64(cfg.sim.seed, (std::uint64_t)task.point,
                                               (std::uint64_t)task.trial);
                    slots[task.point][task.trial] =
                        run_single_trial(cfg, scen, geom, cb, omni, f_train, m_rf, snr_db, seed);
                }
                catch (const std::exception &e)
                {
                    // Per-trial failures are recorded, not fatal -- unless
                    // they are systematic (config-level), which the initial
                    // validate() call already screens.
                    slots[task.point][task.trial].failed = true;
                    slots[task.point][task.trial].rate.reset();
                    (void)e;
                }
            }
        };

        int threads = std::min<int>(worker_count(), (int)tasks.size());
        if (threads <= 1)
            work();
        else
        {
            std::vector<std::thread> pool;
            for (int i = 0; i < threads; i++)
                pool.emplace_back(work);
            for (auto &th : pool)
                th.join();
        }

        for (std::size_t a = 0; a < n_points; a++)
        {
            ScenarioConfig scen;
            int m_rf = 0;
            double snr_db = 0.0;
            point_params(a, scen, m_rf, snr_db);

            SweepRow row;
            row.axis = cfg.sweep.axis;
            row.value = cfg.sweep.values[a];
            row.mode = cfg.pdma.mode;
            row.csi = cfg.pdma.csi;
            row.k_users = scen.n_users;
            row.m_rf = m_rf;
            row.snr_db = snr_db;
            row.trials = (int)n_trials;

            arma::vec sums(n_trials, arma::fill::zeros);
            arma::vec user_acc((arma::uword)scen.n_users, arma::fill::zeros);
            double emp_acc = 0.0;
            int emp_n = 0;
            for (std::size_t t = 0; t < n_trials; t++)
            {
                const TrialOutcome &o = slots[a][t];
                row.failed += o.failed ? 1 : 0;
                sums((arma::uword)t) = o.sum_rate;
                if (o.rate.n_elem == user_acc.n_elem)
                    user_acc += o.rate;
                row.overhead_t = std::max(row.overhead_t, o.overhead);
                if (std::isfinite(o.empirical_sum))
                {
                    emp_acc += o.empirical_sum;
                    emp_n++;
                }
            }
            row.mean_sum_rate = arma::mean(sums);
            row.stderr_sum_rate =
                n_trials > 1 ? arma::stddev(sums) / std::sqrt((double)n_trials) : 0.0;
            user_acc /= (double)n_trials;
            row.user_rates.assign(user_acc.begin(), user_acc.end());
            row.mean_empirical_sum_rate =
                emp_n > 0 ? emp_acc / (double)emp_n : std::numeric_limits<double>::quiet_NaN();
            result.rows.push_back(std::move(row));
        }

        std::stable_sort(result.rows.begin(), result.rows.end(),
                         [](const SweepRow &a, const SweepRow &b) { return a.value < b.value; });
        return result;
    }

} // namespace lenspdma
