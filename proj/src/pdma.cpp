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

#include "lenspdma/pdma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lenspdma
{
    namespace
    {
        // First index of the strictly largest entry (deterministic ties).
        int argmax_first(const arma::vec &x)
        {
            int best = 0;
            for (arma::uword i = 1; i < x.n_elem; i++)
                if (x(i) > x(best))
                    best = (int)i;
            return best;
        }

        // Interference-plus-noise covariance of user k for fixed transmit
        // beamformers: all self terms with offset i != 0 plus every stored
        // cross-user term.
        arma::cx_mat noise_covariance(const EffectiveChannels &eff, int k,
                                      const std::vector<arma::cx_vec> &v,
                                      const arma::vec &p, double sigma2)
        {
            const arma::uword M = eff.selected.size();
            arma::cx_mat c(M, M, arma::fill::eye);
            c *= sigma2;
            const int K = (int)eff.g_cross.size();
            for (int k2 = 0; k2 < K; k2++)
            {
                if (v[(std::size_t)k2].is_empty())
                    continue;
                for (const auto &kv : eff.g_cross[(std::size_t)k][(std::size_t)k2])
                {
                    if (k2 == k && kv.first == 0)
                        continue; // the desired term
                    arma::cx_vec t = kv.second * v[(std::size_t)k2];
                    c += p((arma::uword)k2) * (t * t.t());
                }
            }
            return c;
        }
    } // namespace

    std::vector<int> select_antennas(const arma::vec &power, int m_rf)
    {
        if (m_rf < 1 || (arma::uword)m_rf > power.n_elem)
            throw config_error("select_antennas: m_rf out of range");

        std::vector<int> idx((std::size_t)power.n_elem);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return power((arma::uword)a) > power((arma::uword)b);
        });
        idx.resize((std::size_t)m_rf);
        std::sort(idx.begin(), idx.end());
        return idx;
    }

    BeamformerSet mrc_design(const std::vector<arma::cx_mat> &g_k, const Codebook &cb)
    {
        const std::size_t K = g_k.size();
        BeamformerSet bf;
        bf.mode = CombinerMode::mrc;
        bf.v_index.assign(K, -1);
        bf.v.resize(K);
        bf.u.resize(K);
        bf.zero_rate.assign(K, false);

        for (std::size_t k = 0; k < K; k++)
        {
            const arma::cx_mat &g = g_k[k];
            if (g.n_rows == 0)
            {
                bf.zero_rate[k] = true;
                continue;
            }
            arma::vec score(cb.vectors.n_cols);
            arma::cx_mat prod = g * cb.vectors;
            for (arma::uword c = 0; c < prod.n_cols; c++)
                score(c) = arma::accu(arma::square(arma::abs(prod.col(c))));
            int c = argmax_first(score);
            double gain = std::sqrt(score((arma::uword)c));
            if (gain <= 0.0)
            {
                bf.zero_rate[k] = true;
                continue;
            }
            bf.v_index[k] = c;
            bf.v[k] = cb.vectors.col((arma::uword)c);
            bf.u[k] = prod.col((arma::uword)c) / gain;
        }
        return bf;
    }

    BeamformerSet mmse_design(const EffectiveChannels &eff, const arma::vec &p,
                              double sigma2, const Codebook &cb)
    {
        if (!(sigma2 > 0.0))
            throw config_error("mmse_design: sigma2 must be positive");

        const int K = (int)eff.g_cross.size();
        BeamformerSet bf;
        bf.mode = CombinerMode::mmse;
        bf.v_index.assign((std::size_t)K, -1);
        bf.v.resize((std::size_t)K);
        bf.u.resize((std::size_t)K);
        bf.zero_rate.assign((std::size_t)K, false);
        bf.cond.zeros((arma::uword)K);

        // Transmit beamformers first: the combiner of each user depends on
        // every other user's choice.
        for (int k = 0; k < K; k++)
        {
            const arma::cx_mat *g0 = eff.cross(k, k, 0);
            if (!g0)
            {
                bf.zero_rate[(std::size_t)k] = true;
                continue;
            }
            arma::cx_mat prod = (*g0) * cb.vectors;
            arma::vec score(prod.n_cols);
            for (arma::uword c = 0; c < prod.n_cols; c++)
                score(c) = arma::accu(arma::square(arma::abs(prod.col(c))));
            int c = argmax_first(score);
            if (score((arma::uword)c) <= 0.0)
            {
                bf.zero_rate[(std::size_t)k] = true;
                continue;
            }
            bf.v_index[(std::size_t)k] = c;
            bf.v[(std::size_t)k] = cb.vectors.col((arma::uword)c);
        }

        for (int k = 0; k < K; k++)
        {
            if (bf.zero_rate[(std::size_t)k])
                continue;
            const arma::cx_mat *g0 = eff.cross(k, k, 0);
            arma::cx_vec d = (*g0) * bf.v[(std::size_t)k];
            arma::cx_mat c = noise_covariance(eff, k, bf.v, p, sigma2);
            bf.cond((arma::uword)k) = 1.0 / std::max(arma::rcond(c), 1.0e-300);
            arma::cx_vec u = arma::solve(c, d, arma::solve_opts::likely_sympd);
            double n = arma::norm(u);
            if (n <= 0.0)
            {
                bf.zero_rate[(std::size_t)k] = true;
                continue;
            }
            bf.u[(std::size_t)k] = u / n;
        }
        return bf;
    }

    RateReport sinr_eq21(const EffectiveChannels &eff, const BeamformerSet &bf,
                         const arma::vec &p, double sigma2)
    {
        const int K = (int)eff.g_cross.size();
        const arma::uword M = eff.selected.size();

        RateReport rep;
        rep.sinr.zeros((arma::uword)K);
        rep.rate.zeros((arma::uword)K);
        rep.flagged.assign((std::size_t)K, false);

        for (int k = 0; k < K; k++)
        {
            if (bf.zero_rate[(std::size_t)k] || bf.u[(std::size_t)k].is_empty())
            {
                rep.flagged[(std::size_t)k] = true;
                continue;
            }

            // MRC combiners live on M_k; lift them to the full selected set.
            arma::cx_vec u(M, arma::fill::zeros);
            if (bf.mode == CombinerMode::mrc)
            {
                const auto &mk = eff.m_k[(std::size_t)k];
                if (mk.size() != bf.u[(std::size_t)k].n_elem)
                    throw std::invalid_argument("sinr_eq21: combiner does not match M_k");
                for (std::size_t r = 0; r < mk.size(); r++)
                    u((arma::uword)mk[r]) = bf.u[(std::size_t)k](r);
            }
            else
            {
                if (bf.u[(std::size_t)k].n_elem != M)
                    throw std::invalid_argument("sinr_eq21: combiner does not match M_S");
                u = bf.u[(std::size_t)k];
            }

            double desired = 0.0, interference = 0.0;
            for (int k2 = 0; k2 < K; k2++)
            {
                if (bf.v[(std::size_t)k2].is_empty())
                    continue;
                for (const auto &kv : eff.g_cross[(std::size_t)k][(std::size_t)k2])
                {
                    double term = p((arma::uword)k2) *
                                  std::norm(arma::cdot(u, kv.second * bf.v[(std::size_t)k2]));
                    if (k2 == k && kv.first == 0)
                        desired = term;
                    else
                        interference += term;
                }
            }

            double u_norm = arma::norm(u);
            double denom = interference + sigma2 * u_norm * u_norm;
            double gamma = denom > 0.0 ? desired / denom
                                       : (desired > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
            rep.sinr((arma::uword)k) = gamma;
            rep.rate((arma::uword)k) = std::log2(1.0 + gamma);
        }
        rep.sum_rate = arma::accu(rep.rate);
        return rep;
    }

    arma::vec sinr_mmse_closed_form(const EffectiveChannels &eff, const BeamformerSet &bf,
                                    const arma::vec &p, double sigma2)
    {
        if (bf.mode != CombinerMode::mmse)
            throw std::invalid_argument("closed-form SINR applies to MMSE beamformers");

        const int K = (int)eff.g_cross.size();
        arma::vec gamma((arma::uword)K, arma::fill::zeros);
        for (int k = 0; k < K; k++)
        {
            if (bf.zero_rate[(std::size_t)k])
                continue;
            const arma::cx_mat *g0 = eff.cross(k, k, 0);
            if (!g0)
                continue;
            arma::cx_vec d = (*g0) * bf.v[(std::size_t)k];
            arma::cx_mat c = noise_covariance(eff, k, bf.v, p, sigma2);
            arma::cx_vec x = arma::solve(c, d, arma::solve_opts::likely_sympd);
            gamma((arma::uword)k) = p((arma::uword)k) * std::real(arma::cdot(d, x));
        }
        return gamma;
    }

    BeamformerSet exhaustive_p1_oracle(const EffectiveChannels &eff, const arma::vec &p,
                                       double sigma2, const Codebook &cb,
                                       std::size_t tuple_limit)
    {
        if (!(sigma2 > 0.0))
            throw config_error("p1 oracle: sigma2 must be positive");

        const int K = (int)eff.g_cross.size();
        const int N = cb.size();
        double tuples = std::pow((double)N, (double)K);
        if (tuples > (double)tuple_limit)
            throw config_error("p1 oracle: codebook product space exceeds the configured limit");

        std::vector<int> idx((std::size_t)K, 0);
        std::vector<arma::cx_vec> v((std::size_t)K);
        double best_rate = -1.0;
        BeamformerSet best;

        for (;;)
        {
            for (int k = 0; k < K; k++)
                v[(std::size_t)k] = cb.vectors.col((arma::uword)idx[(std::size_t)k]);

            double sum_rate = 0.0;
            std::vector<arma::cx_vec> u((std::size_t)K);
            for (int k = 0; k < K; k++)
            {
                const arma::cx_mat *g0 = eff.cross(k, k, 0);
                if (!g0)
                    continue;
                arma::cx_vec d = (*g0) * v[(std::size_t)k];
                arma::cx_mat c = noise_covariance(eff, k, v, p, sigma2);
                arma::cx_vec x = arma::solve(c, d, arma::solve_opts::likely_sympd);
                double gamma = p((arma::uword)k) * std::real(arma::cdot(d, x));
                sum_rate += std::log2(1.0 + std::max(gamma, 0.0));
                double n = arma::norm(x);
                if (n > 0.0)
                    u[(std::size_t)k] = x / n;
            }

            if (sum_rate > best_rate)
            {
                best_rate = sum_rate;
                best.mode = CombinerMode::mmse;
                best.v_index = idx;
                best.v = v;
                best.u = u;
                best.zero_rate.assign((std::size_t)K, false);
                for (int k = 0; k < K; k++)
                    if (u[(std::size_t)k].is_empty())
                        best.zero_rate[(std::size_t)k] = true;
                best.cond.zeros((arma::uword)K);
            }

            // Lexicographic advance, last user fastest.
            int pos = K - 1;
            while (pos >= 0 && ++idx[(std::size_t)pos] == N)
                idx[(std::size_t)pos--] = 0;
            if (pos < 0)
                break;
        }
        return best;
    }

    double tdma_sum_rate(const arma::vec &single_user_rates)
    {
        if (single_user_rates.is_empty())
            return 0.0;
        return arma::mean(single_user_rates);
    }

} // namespace lenspdma
