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

#ifndef lenspdma_pdma_H
#define lenspdma_pdma_H

#include <armadillo>
#include <vector>

#include "lenspdma/channel.hpp"
#include "lenspdma/codebook.hpp"
#include "lenspdma/common.hpp"

namespace lenspdma
{
    enum class CombinerMode
    {
        mrc,
        mmse
    };

    // Per-user transmit beamformer (codebook index + vector) and digital
    // combiner. MRC combiners live on the user's own antennas M_k; MMSE
    // combiners span the whole selected set M_S.
    struct BeamformerSet
    {
        CombinerMode mode = CombinerMode::mrc;
        std::vector<int> v_index;        // codebook index per user
        std::vector<arma::cx_vec> v;     // transmit beamformers, length M_MS
        std::vector<arma::cx_vec> u;     // combiners; empty for zero-rate users
        std::vector<bool> zero_rate;     // user has no usable antennas
        arma::vec cond;                  // MMSE only: condition estimate of C_k
    };

    struct RateReport
    {
        arma::vec sinr;   // per-user gamma_k, linear
        arma::vec rate;   // log2(1 + gamma_k)
        double sum_rate = 0.0;
        std::vector<bool> flagged; // zero-rate users
    };

    // The m_rf antennas with the largest power levels; ties broken by
    // canonical antenna order; result sorted ascending.
    std::vector<int> select_antennas(const arma::vec &power, int m_rf);

    // MRC transceiver per user: v maximizes ||G_k f||^2 over the codebook
    // (ties to the lowest index), u = G_k v / ||G_k v||. Works from any
    // per-user effective matrix source (true or estimated); an empty G_k
    // flags the user zero-rate.
    BeamformerSet mrc_design(const std::vector<arma::cx_mat> &g_k, const Codebook &cb);

    // MMSE transceiver: v maximizes ||G_kk[0] f||^2, the combiner whitens
    // interference-plus-noise with covariance C_k assembled from all stored
    // cross matrices, u = C_k^{-1} G_kk[0] v normalized. Positive-definite
    // solves; sigma2 > 0 required.
    BeamformerSet mmse_design(const EffectiveChannels &eff, const arma::vec &p,
                              double sigma2, const Codebook &cb);

    // Analytic per-user SINR: desired p_k |u^H G_kk[0] v|^2 against ISI
    // (same user, offsets i != 0), IUI (all offsets of other users), and
    // noise sigma2 ||u||^2. MRC combiners are zero-padded from M_k to M_S
    // so the same expression serves both modes.
    RateReport sinr_eq21(const EffectiveChannels &eff, const BeamformerSet &bf,
                         const arma::vec &p, double sigma2);

    // Closed-form MMSE SINR p_k v^H G^H C^{-1} G v for the mmse_design
    // output; equals sinr_eq21 on the same beamformers.
    arma::vec sinr_mmse_closed_form(const EffectiveChannels &eff, const BeamformerSet &bf,
                                    const arma::vec &p, double sigma2);

    // Exact sum-rate maximization over the codebook product space with the
    // per-tuple optimal (MMSE) combiner. Test oracle; refuses instances
    // with more than tuple_limit candidate tuples.
    BeamformerSet exhaustive_p1_oracle(const EffectiveChannels &eff, const arma::vec &p,
                                       double sigma2, const Codebook &cb,
                                       std::size_t tuple_limit = 1000000);

    // Time-division baseline: each user gets a 1/K share of the block at
    // its single-user rate.
    double tdma_sum_rate(const arma::vec &single_user_rates);

} // namespace lenspdma

#endif
