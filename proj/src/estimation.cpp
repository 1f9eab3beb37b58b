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

#include "lenspdma/estimation.hpp"

#include <cmath>

#include "lenspdma/pdma.hpp"
#include "lenspdma/rng.hpp"

namespace lenspdma
{
    void TrainingConfig::validate(int k, int mu) const
    {
        if (!(p_tr > 0.0))
            throw config_error("training: p_tr must be positive");
        if (rho < 0.0)
            throw config_error("training: rho must be >= 0");
        if (t2 != 0 && t2 < k * (mu + 1))
            throw config_error("training: t2 must be >= K*(mu+1)");
    }

    int TrainingConfig::t2_effective(int k, int mu) const
    {
        return t2 == 0 ? k * (mu + 1) : t2;
    }

    OverheadReport training_overhead(int m_bs, int m_rf, int m_ms, int mu, int k,
                                     long long t_coherence)
    {
        if (m_bs < 1 || m_rf < 1 || m_ms < 1 || mu < 0 || k < 1)
            throw config_error("training_overhead: counts must be positive (mu >= 0)");

        long long scan = (m_bs + m_rf - 1) / m_rf; // ceil
        OverheadReport o;
        o.t1 = scan + mu;
        o.t2_total = mu + (long long)k * (mu + 1);
        o.t3 = (long long)m_ms + 2 * mu;
        o.total = scan + m_ms + 4LL * mu + (long long)k * (mu + 1);
        o.brute_force = scan * (long long)mu * (long long)k * (long long)m_ms;
        o.coherence_ratio = t_coherence > 0 ? (double)o.total / (double)t_coherence : 0.0;
        return o;
    }

    namespace
    {
        // The literal training frame on one global symbol timeline:
        //
        //   [0, scan+mu)                 phase 1: constant probe through f_bar
        //   [+0, +mu)                    guard (all users silent)
        //   [+0, +t2)                    phase 2: per-user QPSK pilots through f_bar
        //   [+0, +mu)                    guard
        //   [+0, +m_ms)                  phase 3: beam sweep f[0..m_ms-1], unit symbol
        //   [+0, +mu)                    tail (silent; late taps still arriving)
        //
        // Each phase can also be laid out alone (its window preceded only by
        // the silence the protocol guarantees); the guard intervals make the
        // two layouts produce identical observations, which the tests check.
        struct FrameLayout
        {
            int mu = 0;
            int t1_scan = 0; // 0 when phase 1 absent
            int t2 = 0;      // 0 when phase 2 absent
            int m_ms = 0;    // 0 when phase 3 absent

            int p1_begin() const { return 0; }
            int p1_end() const { return t1_scan > 0 ? t1_scan + mu : 0; }
            int p2_begin() const { return p1_end() + (t2 > 0 ? mu : 0); }
            int p2_end() const { return p2_begin() + t2; }
            int p3_begin() const { return p2_end() + (m_ms > 0 ? mu : 0); }
            int p3_end() const { return p3_begin() + m_ms; }
        };

        // Per-tap beamformed channel scalars/rows, precomputed once.
        struct FrameChannel
        {
            const DiscreteChannel *d = nullptr;
            std::vector<std::vector<arma::cx_vec>> omni_rows; // [k][l]: rows * f_bar, length M_BS
            std::vector<std::vector<arma::cx_mat>> sweep_rows; // [k][l]: rows * F, M_BS x M_MS
        };

        FrameChannel prepare_channel(const DiscreteChannel &d, const arma::cx_vec &f_bar,
                                     const arma::cx_mat *f_train)
        {
            FrameChannel fc;
            fc.d = &d;
            fc.omni_rows.resize(d.users.size());
            if (f_train)
                fc.sweep_rows.resize(d.users.size());
            for (std::size_t k = 0; k < d.users.size(); k++)
            {
                for (const Tap &t : d.users[k])
                {
                    fc.omni_rows[k].push_back(t.rows * f_bar);
                    if (f_train)
                        fc.sweep_rows[k].push_back(t.rows * (*f_train));
                }
            }
            return fc;
        }

        // Noiseless received sample at antenna id and global frame time t.
        cx signal_at(const FrameChannel &fc, const FrameLayout &fl,
                     const arma::cx_mat &pilots, double sqrt_ptr, arma::uword id, int t)
        {
            cx acc = 0.0;
            const DiscreteChannel &d = *fc.d;
            for (std::size_t k = 0; k < d.users.size(); k++)
                for (std::size_t l = 0; l < d.users[k].size(); l++)
                {
                    int tx = t - d.users[k][l].n; // transmit instant of this tap
                    if (tx < 0)
                        continue;
                    if (fl.t1_scan > 0 && tx < fl.p1_end())
                        acc += fc.omni_rows[k][l](id);
                    else if (fl.t2 > 0 && tx >= fl.p2_begin() && tx < fl.p2_end())
                        acc += fc.omni_rows[k][l](id) * pilots((arma::uword)k, (arma::uword)(tx - fl.p2_begin()));
                    else if (fl.m_ms > 0 && tx >= fl.p3_begin() && tx < fl.p3_end())
                        acc += fc.sweep_rows[k][l](id, (arma::uword)(tx - fl.p3_begin()));
                }
            return sqrt_ptr * acc;
        }

        arma::cx_mat make_pilots(const TrainingConfig &cfg, int k_users, int t2)
        {
            arma::cx_mat p((arma::uword)k_users, (arma::uword)t2);
            for (int k = 0; k < k_users; k++)
            {
                std::mt19937_64 rng(mix64(cfg.pilot_seed, (std::uint64_t)k));
                for (int n = 0; n < t2; n++)
                    p((arma::uword)k, (arma::uword)n) = qpsk(rng);
            }
            return p;
        }

        Phase1Result phase1_core(const FrameChannel &fc, const FrameLayout &fl,
                                 const TrainingConfig &cfg, int m_rf, double sigma2,
                                 std::mt19937_64 &noise)
        {
            const int m_bs = fc.d->m_bs;
            const arma::cx_mat no_pilots;
            const double sp = std::sqrt(cfg.p_tr);

            Phase1Result res;
            res.q.zeros((arma::uword)m_bs);
            res.t1 = fl.p1_end();

            // RF chains scan the array in canonical groups, one symbol per
            // group after the first mu samples are discarded.
            const int groups = (m_bs + m_rf - 1) / m_rf;
            for (int g = 0; g < groups; g++)
            {
                int t = fl.mu + g;
                for (int m = g * m_rf; m < std::min((g + 1) * m_rf, m_bs); m++)
                {
                    cx r = signal_at(fc, fl, no_pilots, sp, (arma::uword)m, t) +
                           randn_cx(noise, sigma2);
                    // A slot is currently a single sample; the average over
                    // the slot therefore coincides with the snapshot.
                    res.q((arma::uword)m) = std::norm(r);
                    (void)cfg.average_phase1;
                }
            }
            res.selected = select_antennas(res.q, m_rf);
            return res;
        }

        Phase2Result phase2_core(const FrameChannel &fc, const FrameLayout &fl,
                                 const std::vector<int> &selected, const TrainingConfig &cfg,
                                 const arma::cx_mat &pilots, cx omni_gain, double sigma2,
                                 std::mt19937_64 &noise)
        {
            const DiscreteChannel &d = *fc.d;
            const int K = d.n_users();
            const int mu = fl.mu;
            const int t2 = fl.t2;
            const double sp = std::sqrt(cfg.p_tr);

            // Block-Toeplitz pilot matrix: column i*K + k holds user k's
            // pilot delayed by i symbols. The record spans the pilot window
            // plus the mu-symbol guard that follows it -- the receiver keeps
            // listening while the pilot rings out through the channel, so
            // every column holds one complete shifted pilot copy. Cutting
            // the record at t2 samples would truncate the shifted copies
            // and, for a single user at the minimum pilot length, turn the
            // solve into a square triangular Toeplitz system whose condition
            // number grows exponentially in mu.
            const int rec = t2 + mu;
            arma::cx_mat s((arma::uword)rec, (arma::uword)(K * (mu + 1)), arma::fill::zeros);
            for (int i = 0; i <= mu; i++)
                for (int k = 0; k < K; k++)
                    for (int n = i; n < i + t2; n++)
                        s((arma::uword)n, (arma::uword)(i * K + k)) =
                            pilots((arma::uword)k, (arma::uword)(n - i));

            arma::cx_mat r((arma::uword)rec, selected.size());
            for (std::size_t j = 0; j < selected.size(); j++)
                for (int n = 0; n < rec; n++)
                    r((arma::uword)n, (arma::uword)j) =
                        signal_at(fc, fl, pilots, sp, (arma::uword)selected[j], fl.p2_begin() + n) +
                        randn_cx(noise, sigma2);

            arma::cx_mat shs = s.t() * s;
            Phase2Result res;
            res.cond = arma::cond(shs);
            res.beta_hat = arma::solve(shs, s.t() * r, arma::solve_opts::likely_sympd);
            res.beta_hat /= sp * omni_gain;
            res.duration = mu + t2;

            res.assoc.owner.assign(selected.size(), -1);
            res.assoc.delay.assign(selected.size(), std::vector<int>((std::size_t)K, -1));
            for (std::size_t j = 0; j < selected.size(); j++)
            {
                arma::vec e = arma::square(arma::abs(res.beta_hat.col((arma::uword)j)));
                arma::uword best = 0;
                for (arma::uword idx = 1; idx < e.n_elem; idx++)
                    if (e(idx) > e(best))
                        best = idx;
                double rest = arma::accu(e) - e(best);
                if (e(best) > 0.0 && e(best) >= cfg.rho * rest)
                {
                    int k = (int)(best % (arma::uword)K);
                    int i = (int)(best / (arma::uword)K);
                    res.assoc.owner[j] = k;
                    res.assoc.delay[j][(std::size_t)k] = i;
                }
            }
            return res;
        }

        Phase3Result phase3_core(const FrameChannel &fc, const FrameLayout &fl,
                                 const std::vector<int> &selected, const AssocMap &assoc,
                                 const TrainingConfig &cfg, const arma::cx_mat &pilots,
                                 const arma::cx_mat &f_train, double sigma2,
                                 std::mt19937_64 &noise)
        {
            const DiscreteChannel &d = *fc.d;
            const int K = d.n_users();
            const int m_ms = d.m_ms;
            const int mu = fl.mu;
            const double sp = std::sqrt(cfg.p_tr);

            // Record the whole burst-plus-tail window on every selected
            // antenna, then shift each associated stream by its estimated
            // delay.
            arma::cx_mat r(selected.size(), (arma::uword)(m_ms + mu));
            for (std::size_t j = 0; j < selected.size(); j++)
                for (int n = 0; n < m_ms + mu; n++)
                    r((arma::uword)j, (arma::uword)n) =
                        signal_at(fc, fl, pilots, sp, (arma::uword)selected[j], fl.p3_begin() + n) +
                        randn_cx(noise, sigma2);

            arma::cx_mat f_inv = arma::inv(f_train);

            Phase3Result res;
            res.duration = m_ms + 2 * mu;
            res.m_k.assign((std::size_t)K, {});
            res.g_hat.resize((std::size_t)K);
            for (std::size_t j = 0; j < selected.size(); j++)
                if (assoc.owner[j] >= 0 && assoc.owner[j] < K)
                    res.m_k[(std::size_t)assoc.owner[j]].push_back((int)j);

            for (int k = 0; k < K; k++)
            {
                const auto &mk = res.m_k[(std::size_t)k];
                arma::cx_mat g(mk.size(), (arma::uword)m_ms);
                for (std::size_t row = 0; row < mk.size(); row++)
                {
                    std::size_t j = (std::size_t)mk[row];
                    int shift = assoc.delay[j][(std::size_t)k];
                    arma::cx_rowvec bar((arma::uword)m_ms);
                    for (int n = 0; n < m_ms; n++)
                        bar((arma::uword)n) = r((arma::uword)j, (arma::uword)(n + shift));
                    g.row((arma::uword)row) = bar * f_inv / sp;
                }
                res.g_hat[(std::size_t)k] = std::move(g);
            }
            return res;
        }
    } // namespace

    Phase1Result phase1_probe(const DiscreteChannel &d, const TrainingConfig &cfg,
                              const OmniBeamformer &omni, int m_rf, double sigma2,
                              std::mt19937_64 &noise)
    {
        cfg.validate(d.n_users(), d.mu_frame);
        if (m_rf < 1 || m_rf > d.m_bs)
            throw config_error("phase1: m_rf out of range");

        FrameChannel fc = prepare_channel(d, omni.f, nullptr);
        FrameLayout fl;
        fl.mu = d.mu_frame;
        fl.t1_scan = (d.m_bs + m_rf - 1) / m_rf;
        return phase1_core(fc, fl, cfg, m_rf, sigma2, noise);
    }

    Phase2Result phase2_path_ls(const DiscreteChannel &d, const std::vector<int> &selected,
                                const TrainingConfig &cfg, const OmniBeamformer &omni,
                                double sigma2, std::mt19937_64 &noise)
    {
        cfg.validate(d.n_users(), d.mu_frame);
        FrameChannel fc = prepare_channel(d, omni.f, nullptr);
        FrameLayout fl;
        fl.mu = d.mu_frame;
        fl.t2 = cfg.t2_effective(d.n_users(), d.mu_frame);
        arma::cx_mat pilots = make_pilots(cfg, d.n_users(), fl.t2);
        return phase2_core(fc, fl, selected, cfg, pilots, omni.gain, sigma2, noise);
    }

    Phase3Result phase3_effective_ls(const DiscreteChannel &d, const std::vector<int> &selected,
                                     const AssocMap &assoc, const TrainingConfig &cfg,
                                     const arma::cx_mat &f_train, double sigma2,
                                     std::mt19937_64 &noise)
    {
        cfg.validate(d.n_users(), d.mu_frame);
        if (assoc.owner.size() != selected.size())
            throw config_error("phase3: association size mismatch");

        FrameChannel fc = prepare_channel(d, arma::cx_vec((arma::uword)d.m_ms, arma::fill::zeros),
                                          &f_train);
        FrameLayout fl;
        fl.mu = d.mu_frame;
        fl.m_ms = d.m_ms;
        const arma::cx_mat no_pilots;
        return phase3_core(fc, fl, selected, assoc, cfg, no_pilots, f_train, sigma2, noise);
    }

    TrainingReport run_training(const DiscreteChannel &d, const TrainingConfig &cfg,
                                const OmniBeamformer &omni, const arma::cx_mat &f_train,
                                int m_rf, double sigma2, std::uint64_t seed,
                                long long t_coherence)
    {
        cfg.validate(d.n_users(), d.mu_frame);
        if (m_rf < 1 || m_rf > d.m_bs)
            throw config_error("run_training: m_rf out of range");

        FrameChannel fc = prepare_channel(d, omni.f, &f_train);
        FrameLayout fl;
        fl.mu = d.mu_frame;
        fl.t1_scan = (d.m_bs + m_rf - 1) / m_rf;
        fl.t2 = cfg.t2_effective(d.n_users(), d.mu_frame);
        fl.m_ms = d.m_ms;
        arma::cx_mat pilots = make_pilots(cfg, d.n_users(), fl.t2);

        std::mt19937_64 n1(mix64(seed, 1));
        std::mt19937_64 n2(mix64(seed, 2));
        std::mt19937_64 n3(mix64(seed, 3));

        Phase1Result p1 = phase1_core(fc, fl, cfg, m_rf, sigma2, n1);
        Phase2Result p2 = phase2_core(fc, fl, p1.selected, cfg, pilots, omni.gain, sigma2, n2);
        Phase3Result p3 = phase3_core(fc, fl, p1.selected, p2.assoc, cfg, pilots, f_train,
                                      sigma2, n3);

        TrainingReport rep;
        rep.selected = p1.selected;
        rep.q_power = p1.q;
        rep.assoc = p2.assoc;
        rep.beta_hat = p2.beta_hat;
        rep.cond_s = p2.cond;
        rep.g_hat = p3.g_hat;
        rep.m_k = p3.m_k;
        rep.overhead.t1 = p1.t1;
        rep.overhead.t2_total = p2.duration;
        rep.overhead.t3 = p3.duration;
        rep.overhead.total = (long long)p1.t1 + p2.duration + p3.duration;
        rep.overhead.brute_force =
            training_overhead(d.m_bs, m_rf, d.m_ms, d.mu_frame, d.n_users(), t_coherence)
                .brute_force;
        rep.overhead.coherence_ratio =
            t_coherence > 0 ? (double)rep.overhead.total / (double)t_coherence : 0.0;
        rep.empty_user.assign((std::size_t)d.n_users(), false);
        for (int k = 0; k < d.n_users(); k++)
            rep.empty_user[(std::size_t)k] = rep.m_k[(std::size_t)k].empty();
        return rep;
    }

} // namespace lenspdma
