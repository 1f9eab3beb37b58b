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

#ifndef lenspdma_linksim_H
#define lenspdma_linksim_H

#include <armadillo>
#include <string>
#include <vector>

#include "lenspdma/config.hpp"
#include "lenspdma/pdma.hpp"

namespace lenspdma
{
    // Raw waveform-level receive streams on the selected antennas: y is
    // signal plus noise, with the symbol and noise streams retained so the
    // measurement stage (and the tests) can regenerate the signal terms of
    // the decomposition exactly.
    struct Streams
    {
        arma::cx_mat y; // |M_S| x N
        arma::cx_mat s; // K x N true symbols
        arma::cx_mat z; // |M_S| x N noise
        double sigma2 = 0.0;
        arma::vec p;    // per-user transmit powers
    };

    Streams transmit_receive(const DiscreteChannel &d, const std::vector<int> &selected,
                             const BeamformerSet &bf, const arma::vec &p, double sigma2,
                             long n_symbols, const std::string &modulation,
                             std::mt19937_64 &rng);

    struct TrialResult
    {
        arma::vec empirical_sinr;   // inf for zero measured interference+noise
        arma::vec empirical_rate;
        arma::vec analytic_sinr;
        arma::vec analytic_rate;
        arma::vec sinr_sigma_mc;    // Monte Carlo standard error of empirical_sinr
        arma::vec p_desired, p_isi, p_iui, p_noise; // accumulated term powers
    };

    // Applies per-antenna delay compensation and the combiners, decomposes
    // the combiner output into desired / ISI / IUI by regenerating the
    // signal terms from the known symbols -- the residual of the actual
    // combined stream is the noise term -- and reports empirical vs
    // analytic SINR. The overload without explicit EffectiveChannels
    // rebuilds the genie matrices from the true taps.
    TrialResult measure_sinr(const Streams &streams, const BeamformerSet &bf,
                             const EffectiveChannels &eff, int mc_blocks = 25);
    TrialResult measure_sinr(const Streams &streams, const BeamformerSet &bf,
                             const DiscreteChannel &d, const std::vector<int> &selected,
                             int mc_blocks = 25);

    struct SweepRow
    {
        std::string axis;
        double value = 0.0;
        std::string mode, csi;
        int k_users = 0, m_rf = 0;
        double snr_db = 0.0;
        int trials = 0;
        int failed = 0;             // trials with at least one zero-rate user
        long long overhead_t = 0;   // training length (0 for perfect CSI)
        double mean_sum_rate = 0.0; // net of the (1 - T/T_c) factor when estimated
        double stderr_sum_rate = 0.0;
        std::vector<double> user_rates;     // per-user means
        double mean_empirical_sum_rate = 0.0; // NaN when waveform pass disabled
    };

    struct SweepResult
    {
        std::string axis;
        std::vector<SweepRow> rows; // sorted by axis value
        std::string digest;         // config digest the rows were produced under
    };

    // One full Monte Carlo sweep: for every axis value and trial, sample a
    // channel, select antennas and associate paths (genie, or through the
    // literal training protocol when csi = estimated), design beamformers,
    // and score analytic (and optionally waveform-measured) rates. Trials
    // run on a worker pool capped by the SIM_THREADS environment variable;
    // per-trial seeds derive from (seed, axis index, trial index) so the
    // result is independent of scheduling.
    SweepResult run_experiment(const ExperimentConfig &cfg);

} // namespace lenspdma

#endif
