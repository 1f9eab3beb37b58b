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

#ifndef lenspdma_estimation_H
#define lenspdma_estimation_H

#include <armadillo>
#include <cstdint>
#include <random>
#include <vector>

#include "lenspdma/channel.hpp"
#include "lenspdma/codebook.hpp"
#include "lenspdma/common.hpp"

namespace lenspdma
{
    struct TrainingConfig
    {
        double p_tr = 1.0;  // training transmit power; p_tr / sigma2 is the training SNR
        double rho = 0.0;   // association threshold (0 = always associate)
        int t2 = 0;         // phase-2 pilot length; 0 selects the minimum K*(mu+1)
        std::uint64_t pilot_seed = 0x9157;
        bool average_phase1 = false; // average the whole scan slot instead of one snapshot

        void validate(int k, int mu) const;
        int t2_effective(int k, int mu) const;
    };

    struct OverheadReport
    {
        long long t1 = 0, t2_total = 0, t3 = 0, total = 0;
        long long brute_force = 0;      // T' of the exhaustive baseline
        double coherence_ratio = 0.0;   // total / T_c
    };

    // Exact integer training-length bookkeeping:
    //   T  = ceil(M_BS / M_RF) + M_MS + 4*mu + K*(mu+1)   (three-phase protocol)
    //   T' = ceil(M_BS / M_RF) * mu * K * M_MS            (brute-force baseline)
    OverheadReport training_overhead(int m_bs, int m_rf, int m_ms, int mu, int k,
                                     long long t_coherence = 50000);

    struct Phase1Result
    {
        arma::vec q;               // per-antenna power snapshot, all M_BS antennas
        std::vector<int> selected; // top m_rf canonical ids, ascending
        int t1 = 0;
    };

    // All users transmit the identical probing symbol through f_bar while
    // the RF chains scan the array in canonical groups of m_rf; the first
    // mu samples are discarded, then each antenna is read once in its scan
    // slot. Full convolution through the true taps -- no steady-state
    // shortcut.
    Phase1Result phase1_probe(const DiscreteChannel &d, const TrainingConfig &cfg,
                              const OmniBeamformer &omni, int m_rf, double sigma2,
                              std::mt19937_64 &noise);

    struct Phase2Result
    {
        arma::cx_mat beta_hat;   // K*(mu+1) x |M_S|, stacked beta estimates per antenna
        AssocMap assoc;          // owner + that owner's delay per antenna
        int duration = 0;        // mu guard + t2
        double cond = 0.0;       // condition number of S^H S
    };

    // Per-user pseudo-random QPSK pilot sequences form the block-Toeplitz
    // matrix S; per antenna an LS solve recovers all K*(mu+1) delay-bin
    // path gains, and the strongest bin is associated when it passes the
    // rho test against the energy of all remaining bins.
    Phase2Result phase2_path_ls(const DiscreteChannel &d, const std::vector<int> &selected,
                                const TrainingConfig &cfg, const OmniBeamformer &omni,
                                double sigma2, std::mt19937_64 &noise);

    struct Phase3Result
    {
        std::vector<arma::cx_mat> g_hat;   // per user, |M_k| x M_MS
        std::vector<std::vector<int>> m_k; // per user: positions into `selected`
        int duration = 0;                  // M_MS + 2*mu
    };

    // All users sweep the training beams f[0..M_MS-1] simultaneously with
    // the identical known symbol; each associated antenna's stream is
    // delay-shifted by its estimated delay and the training matrix is
    // inverted to recover the effective channel rows.
    Phase3Result phase3_effective_ls(const DiscreteChannel &d, const std::vector<int> &selected,
                                     const AssocMap &assoc, const TrainingConfig &cfg,
                                     const arma::cx_mat &f_train, double sigma2,
                                     std::mt19937_64 &noise);

    struct TrainingReport
    {
        std::vector<int> selected;
        arma::vec q_power;
        AssocMap assoc;
        std::vector<arma::cx_mat> g_hat;
        std::vector<std::vector<int>> m_k;
        arma::cx_mat beta_hat;
        OverheadReport overhead;
        double cond_s = 0.0;
        double feedback_bits = 0.0; // K * log2(N_CB), filled by the caller's codebook size
        std::vector<bool> empty_user; // user ended up with no associated antenna
    };

    // Runs the three phases on one literal frame timeline: phase 1, a
    // mu-symbol guard, phase 2, a mu-symbol guard, phase 3 and its
    // mu-symbol tail. Per-phase noise streams derive from `seed`.
    TrainingReport run_training(const DiscreteChannel &d, const TrainingConfig &cfg,
                                const OmniBeamformer &omni, const arma::cx_mat &f_train,
                                int m_rf, double sigma2, std::uint64_t seed,
                                long long t_coherence = 50000);

} // namespace lenspdma

#endif
