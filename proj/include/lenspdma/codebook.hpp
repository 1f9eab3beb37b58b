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

#ifndef lenspdma_codebook_H
#define lenspdma_codebook_H

#include <armadillo>

#include "lenspdma/common.hpp"
#include "lenspdma/lens_array.hpp"

namespace lenspdma
{
    // Analog beamsteering codebook: unit-norm constant-modulus vectors,
    // one per quantized (elevation, azimuth) pair.
    struct Codebook
    {
        arma::cx_mat vectors;  // M_MS x N_CB, column c is codeword c
        arma::mat angle_grid;  // N_CB x 2: (elevation, azimuth) per codeword
        int n_el = 0, n_az = 0;

        int size() const { return (int)vectors.n_cols; }
    };

    // Quantizes elevation and azimuth uniformly (bin centers) over
    // +-el_support / +-az_support and steers one codeword to each pair.
    // n_cb is factored as n_el x n_az, as close to square as possible;
    // codeword index c = i_el * n_az + i_az.
    Codebook beamsteering_codebook(const UpaConfig &upa, int n_cb,
                                   double el_support = pi / 2.0,
                                   double az_support = pi / 2.0);

    // Quasi-omnidirectional probing beamformer: constant-modulus f with
    // minimal response-magnitude ripple over the angle support, found by a
    // deterministic per-element phase search from a quadratic-phase start.
    struct OmniBeamformer
    {
        arma::cx_vec f;        // unit norm, constant modulus
        cx gain = 0.0;         // nominal gain C: mean |b^H f| over the grid
        double ripple_db = 0.0; // max/min of |b^H f| over the evaluation grid
    };
    OmniBeamformer omni_beamformer(const UpaConfig &upa, int grid_pts = 181);

    // Unitary discrete-Fourier training matrix of size m_ms: constant
    // modulus entries of magnitude 1/sqrt(m_ms), F^H F = I.
    arma::cx_mat training_matrix(int m_ms);

} // namespace lenspdma

#endif
