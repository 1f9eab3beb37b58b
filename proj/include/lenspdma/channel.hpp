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

#ifndef lenspdma_channel_H
#define lenspdma_channel_H

#include <armadillo>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lenspdma/common.hpp"
#include "lenspdma/lens_array.hpp"

namespace lenspdma
{
    // Large-scale gain model. The per-path complex gain is
    //     alpha_kl = sqrt(PL(d) * w_kl) * exp(j psi),
    // with log-distance path loss PL(d) = (d / ref_distance_m)^(-exponent),
    // power fractions w_kl drawn so that the first path holds at least
    // `dominant_fraction` of the total, and psi uniform phase. This is a
    // configurable stand-in for a measured power-division model; everything
    // downstream that depends on absolute gain is compared in relative
    // terms only.
    struct PathLossConfig
    {
        double exponent = 2.9;        // 28 GHz urban-style slope
        double ref_distance_m = 100.0; // distance at which PL = 1 (0 dB)
        double dominant_fraction = 0.5;

        void validate() const;
    };

    struct ScenarioConfig
    {
        int n_users = 5;  // K
        int n_paths = 3;  // L per user
        double carrier_hz = 28.0e9;
        double bandwidth_hz = 500.0e6; // symbol rate B
        double max_delay_s = 100.0e-9; // T_m
        double angle_range = pi / 3.0; // all four angles uniform in +-angle_range
        double distance_m = 100.0;
        PathLossConfig pathloss;

        // Maximum path delay in symbol durations the frame design budgets
        // for: mu = round(B * T_m).
        int mu() const;
        void validate() const;
    };

    struct PathParams
    {
        cx gain = 0.0;      // alpha_kl
        double delay_s = 0.0; // tau_kl
        double aoa_el = 0.0, aoa_az = 0.0; // theta_kl, phi_kl
        double aod_el = 0.0, aod_az = 0.0; // theta'_kl, phi'_kl
    };

    struct ChannelRealization
    {
        std::vector<std::vector<PathParams>> paths; // [user][path]
        std::uint64_t rng_seed = 0;
        double max_delay_s = 0.0; // T_m the realization was drawn under

        int n_users() const { return (int)paths.size(); }
    };

    ChannelRealization sample_channel(const ScenarioConfig &scenario, std::uint64_t seed);

    // Human-readable fixture format: one record per path. Round-trips
    // exactly (full-precision hex floats).
    void save_realization(const ChannelRealization &r, const std::string &path);
    ChannelRealization load_realization(const std::string &path);

    // Both array configurations plus the precomputed lens grid.
    struct ArrayGeometry
    {
        LensArrayConfig lens;
        std::vector<AntennaIndex> grid; // canonical antenna order
        UpaConfig ms;

        int m_bs() const { return (int)grid.size(); }
        int m_ms() const { return ms.size(); }
    };
    ArrayGeometry make_geometry(const LensArrayConfig &lens, const UpaConfig &ms);

    // One symbol-rate tap of one user: all paths with the same integer
    // delay merged by summing their rows.
    struct Tap
    {
        int n = 0;             // delay in symbol durations
        arma::cx_vec beta;     // per-antenna path gain alpha * a_m (length M_BS)
        arma::cx_mat rows;     // per-antenna rows h_mkl^H (M_BS x M_MS)
    };

    struct DiscreteChannel
    {
        int m_bs = 0, m_ms = 0;
        int mu = 0;      // max over realized taps of n
        int mu_frame = 0; // frame budget round(B * T_m) >= mu
        std::vector<std::vector<Tap>> users; // [k][tap], taps sorted by n, delays unique per user

        int n_users() const { return (int)users.size(); }
    };

    DiscreteChannel discretize(const ChannelRealization &r, const ArrayGeometry &arrays,
                               double bandwidth_hz);

    // beta_mkl of merged tap l of user k at antenna m.
    cx beta(const DiscreteChannel &d, int m, int k, int l);

    // Per-antenna ownership and delay-compensation table over a selected
    // antenna set. `owner[j]` is the user whose path antenna M_S[j] is
    // assigned to (-1 when unassigned), and `delay(j, k)` the compensation
    // delay the receiver of user k applies at that antenna (-1 when
    // undefined; rows with undefined compensation contribute zero to the
    // effective matrices).
    struct AssocMap
    {
        std::vector<int> owner;          // per selected antenna
        std::vector<std::vector<int>> delay; // [antenna][user]

        int n_antennas() const { return (int)owner.size(); }
    };

    // Genie association from true taps: per antenna the globally strongest
    // (k, l) by |beta|^2 decides the owner, and for every user k the
    // strongest own path l_m^k decides the compensation delay. Ties break
    // to the lowest (k, l).
    AssocMap genie_assoc(const DiscreteChannel &d, const std::vector<int> &selected);

    // Delay-compensated frequency-flat matrices. g_cross[k][k2] maps an
    // excessive delay i to the |M_S| x M_MS matrix whose row j collects the
    // taps of user k2 offset by i from user k's compensation delay at
    // antenna M_S[j]; absent keys are zero matrices. g_self[k] is the same
    // at i = 0 restricted to the rows user k owns.
    struct EffectiveChannels
    {
        std::vector<int> selected;            // canonical antenna ids, ascending
        AssocMap assoc;
        std::vector<std::vector<int>> m_k;    // per user: row positions into `selected`
        std::vector<arma::cx_mat> g_self;     // per user: |M_k| x M_MS
        std::vector<std::vector<std::map<int, arma::cx_mat>>> g_cross; // [k][k2][i]
        int mu = 0;

        const arma::cx_mat *cross(int k, int k2, int i) const;
    };

    // Genie effective matrices (associations recomputed from true taps).
    EffectiveChannels effective_matrices(const DiscreteChannel &d,
                                         const std::vector<int> &selected);

    // Effective matrices under an externally supplied association, e.g.
    // one produced by the training protocol.
    EffectiveChannels build_effective(const DiscreteChannel &d,
                                      const std::vector<int> &selected,
                                      const AssocMap &assoc);

} // namespace lenspdma

#endif
