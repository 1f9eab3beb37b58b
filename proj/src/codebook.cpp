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

#include "lenspdma/codebook.hpp"

#include <cmath>

namespace lenspdma
{
    Codebook beamsteering_codebook(const UpaConfig &upa, int n_cb,
                                   double el_support, double az_support)
    {
        upa.validate();
        if (n_cb < 1)
            throw config_error("codebook: n_cb must be >= 1");
        if (!(el_support > 0.0) || el_support > 0.5 * pi ||
            !(az_support > 0.0) || az_support > 0.5 * pi)
            throw config_error("codebook: angle support must lie in (0, pi/2]");

        // Factor n_cb into an (elevation x azimuth) grid as close to square
        // as possible; any n_cb >= 1 admits at least the 1 x n_cb split.
        int n_el = (int)std::floor(std::sqrt((double)n_cb));
        while (n_cb % n_el != 0)
            n_el--;
        int n_az = n_cb / n_el;

        Codebook cb;
        cb.n_el = n_el;
        cb.n_az = n_az;
        cb.vectors.set_size((arma::uword)upa.size(), (arma::uword)n_cb);
        cb.angle_grid.set_size((arma::uword)n_cb, 2);

        for (int i = 0; i < n_el; i++)
        {
            double el = -el_support + (2.0 * el_support) * ((double)i + 0.5) / (double)n_el;
            for (int j = 0; j < n_az; j++)
            {
                double az = -az_support + (2.0 * az_support) * ((double)j + 0.5) / (double)n_az;
                arma::uword c = (arma::uword)(i * n_az + j);
                cb.vectors.col(c) = upa_response(upa, el, az);
                cb.angle_grid(c, 0) = el;
                cb.angle_grid(c, 1) = az;
            }
        }
        return cb;
    }

    OmniBeamformer omni_beamformer(const UpaConfig &upa, int grid_pts)
    {
        upa.validate();
        if (grid_pts < 2)
            throw config_error("omni: grid_pts must be >= 2");

        const int M = upa.size();
        const double norm = 1.0 / std::sqrt((double)M);

        // Response rows b(theta, phi)^H over the evaluation grid.
        const arma::uword G = (arma::uword)grid_pts * (arma::uword)grid_pts;
        arma::cx_mat R(G, (arma::uword)M);
        {
            arma::uword g = 0;
            for (int a = 0; a < grid_pts; a++)
            {
                double th = -0.5 * pi + pi * (double)a / (double)(grid_pts - 1);
                for (int b = 0; b < grid_pts; b++)
                {
                    double ph = -0.5 * pi + pi * (double)b / (double)(grid_pts - 1);
                    R.row(g++) = upa_response(upa, th, ph).t();
                }
            }
        }

        // Quadratic per-axis phase start: a discrete chirp spreads energy
        // nearly uniformly in angle for each axis.
        arma::vec phase((arma::uword)M);
        for (int p = 0; p < upa.n_y; p++)
            for (int q = 0; q < upa.n_z; q++)
                phase((arma::uword)(p * upa.n_z + q)) =
                    pi * ((double)(p * p) / (double)upa.n_y + (double)(q * q) / (double)upa.n_z);

        auto build = [&](const arma::vec &ph) {
            arma::cx_vec f((arma::uword)M);
            for (int e = 0; e < M; e++)
                f((arma::uword)e) = norm * std::polar(1.0, ph((arma::uword)e));
            return f;
        };

        arma::cx_vec f = build(phase);
        arma::cx_vec g = R * f;

        auto ripple_of = [](const arma::cx_vec &v) {
            arma::vec mag = arma::abs(v);
            return mag.max() / std::max(mag.min(), 1.0e-300);
        };

        // Deterministic coordinate descent on the max/min ripple: each
        // element tries a fixed fan of phases, keeping strict improvements.
        const int candidates = 64;
        const int sweeps = 8;
        double best = ripple_of(g);
        for (int sweep = 0; sweep < sweeps; sweep++)
        {
            bool improved = false;
            for (int e = 0; e < M; e++)
            {
                arma::uword ue = (arma::uword)e;
                const cx *col = R.colptr(ue);
                for (int c = 0; c < candidates; c++)
                {
                    double cand = 2.0 * pi * (double)c / (double)candidates;
                    cx delta = norm * std::polar(1.0, cand) - f(ue);
                    double lo = 1.0e300, hi = 0.0;
                    for (arma::uword i = 0; i < G; i++)
                    {
                        double m = std::abs(g(i) + col[i] * delta);
                        lo = std::min(lo, m);
                        hi = std::max(hi, m);
                    }
                    double r = hi / std::max(lo, 1.0e-300);
                    if (r < best - 1.0e-12)
                    {
                        best = r;
                        phase(ue) = cand;
                        g += R.col(ue) * delta;
                        f(ue) = norm * std::polar(1.0, cand);
                        improved = true;
                    }
                }
            }
            if (!improved)
                break;
        }

        OmniBeamformer o;
        o.f = f;
        // Scalar de-bias constant for downstream estimators: the mean
        // response magnitude. (A complex mean would be meaningless here --
        // the response phase rotates across the grid and can cancel.)
        o.gain = cx(arma::mean(arma::abs(g)), 0.0);
        o.ripple_db = 20.0 * std::log10(best);
        return o;
    }

    arma::cx_mat training_matrix(int m_ms)
    {
        if (m_ms < 1)
            throw config_error("training_matrix: m_ms must be >= 1");
        arma::cx_mat f((arma::uword)m_ms, (arma::uword)m_ms);
        const double norm = 1.0 / std::sqrt((double)m_ms);
        for (int a = 0; a < m_ms; a++)
            for (int b = 0; b < m_ms; b++)
                f((arma::uword)a, (arma::uword)b) =
                    norm * std::polar(1.0, -2.0 * pi * (double)(a * b) / (double)m_ms);
        return f;
    }

} // namespace lenspdma
