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

#ifndef lenspdma_config_H
#define lenspdma_config_H

#include <cstdint>
#include <string>
#include <vector>

#include "lenspdma/channel.hpp"
#include "lenspdma/estimation.hpp"
#include "lenspdma/lens_array.hpp"

namespace lenspdma
{
    struct SimConfig
    {
        long n_symbols = 0;     // waveform symbols per trial; 0 disables empirical SINR
        int n_trials = 20;
        double snr_db = -10.0;  // data-phase SNR p / sigma2 (p = 1)
        std::uint64_t seed = 1;
        std::string modulation = "gaussian"; // or "qpsk"
        int mc_blocks = 25;     // blocks for the empirical-SINR error bar

        void validate(int mu) const;
    };

    struct PdmaConfig
    {
        std::string mode = "mrc";   // mrc | mmse
        std::string csi = "perfect"; // perfect | estimated
        int m_rf = 10;

        void validate() const;
    };

    struct CodebookConfig
    {
        int n_cb = 256;
        double el_support_deg = 90.0;
        double az_support_deg = 90.0;

        void validate() const;
    };

    struct SweepSpec
    {
        std::string axis = "snr_db"; // snr_db | m_rf | k_users
        std::vector<double> values;

        void validate() const;
    };

    struct OutputSpec
    {
        std::string path = "results.csv";
        std::string format = "csv"; // csv | jsonl
    };

    struct ExperimentConfig
    {
        ScenarioConfig scenario;
        LensArrayConfig lens;
        UpaConfig ms;
        CodebookConfig codebook;
        TrainingConfig training;
        double training_snr_db = 10.0; // fixes p_tr = sigma2 * 10^(snr/10) per point
        long long t_coherence = 50000;
        PdmaConfig pdma;
        SimConfig sim;
        SweepSpec sweep;
        OutputSpec output;

        void validate() const; // throws config_error with a field path
    };

    // JSON round-trip. parse_config accepts either a file path or the name
    // of a built-in preset ("paper-defaults", "single-user"). Unknown keys
    // are an error; a "preset" key loads the preset first and applies the
    // remaining keys on top.
    ExperimentConfig parse_config_file(const std::string &path);
    ExperimentConfig parse_config_text(const std::string &json_text);
    ExperimentConfig preset_config(const std::string &name);
    std::string dump_config(const ExperimentConfig &cfg);

    // FNV-1a digest of the canonical config dump; embedded in result
    // metadata so every row traces to an exact reproduction command.
    std::string config_digest(const ExperimentConfig &cfg);

} // namespace lenspdma

#endif
