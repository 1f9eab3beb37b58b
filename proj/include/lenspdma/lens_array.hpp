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

#ifndef lenspdma_lens_array_H
#define lenspdma_lens_array_H

#include <armadillo>
#include <vector>

#include "lenspdma/common.hpp"

namespace lenspdma
{
    // Electromagnetic lens with a full-dimensional antenna surface on its
    // focal arc. Apertures are electric dimensions (units of the carrier
    // wavelength).
    struct LensArrayConfig
    {
        double d_y = 10.0;         // azimuth aperture (wavelengths)
        double d_z = 10.0;         // elevation aperture (wavelengths)
        double theta_cov = pi;     // elevation coverage angle (rad); grid spans +-theta_cov/2
        double phi_cov = pi;       // azimuth coverage angle (rad)
        double focal_ratio = 10.0; // F / max(D_y, D_z); used only by the aperture oracle
        double phi0 = 0.0;         // common phase shift applied by the lens (rad)

        void validate() const; // throws config_error
    };

    // Index pair of one antenna on the focal arc: m_e counts elevation rows,
    // m_a the azimuth position inside a row.
    struct AntennaIndex
    {
        int m_e = 0;
        int m_a = 0;
    };

    // Angular position (theta_m, phi_m) of an antenna: the incidence
    // direction this element is matched to.
    void antenna_angles(const LensArrayConfig &cfg, AntennaIndex m,
                        double &theta_m, double &phi_m);

    // All antenna index pairs admitted by the coverage region, ordered
    // lexicographically by (m_e, m_a) with both indices ascending. The
    // position of a pair in this vector is its canonical antenna id; every
    // other module references antennas by this id.
    std::vector<AntennaIndex> antenna_grid(const LensArrayConfig &cfg);

    // Closed-form array response to a unit plane wave from elevation theta
    // and azimuth phi, one entry per grid antenna. The overload taking a
    // precomputed grid avoids rebuilding it in inner loops.
    arma::cx_vec lens_response(const LensArrayConfig &cfg,
                               const std::vector<AntennaIndex> &grid,
                               double theta, double phi);
    arma::cx_vec lens_response(const LensArrayConfig &cfg, double theta, double phi);

    // Single-antenna closed-form response; scalar counterpart of the
    // vector version, mainly for comparisons against the aperture oracle.
    cx lens_response_at(const LensArrayConfig &cfg, double theta, double phi, AntennaIndex m);

    // Reference model for the closed form above: numerically integrates the
    // incident field over the lens aperture, with the exact square-root
    // phase profile rather than its first-order expansion, and evaluates
    // the received signal at the focal-arc position of antenna m,
    // normalized by the transmit amplitude. Test oracle only; orders of
    // magnitude slower than lens_response.
    cx aperture_integration_oracle(const LensArrayConfig &cfg,
                                   double theta, double phi, AntennaIndex m,
                                   double rel_tol = 1.0e-6);

    // Uniform planar array at the mobile side, n_y x n_z elements in the
    // y-z plane with the given spacing (in wavelengths).
    struct UpaConfig
    {
        int n_y = 4;
        int n_z = 4;
        double spacing = 0.5;

        int size() const { return n_y * n_z; }
        void validate() const; // throws config_error
    };

    // Unit-norm steering vector of the planar array towards (theta, phi).
    // Element (p, q) maps to entry p * n_z + q and carries phase
    // 2*pi*spacing*(p*cos(theta)*sin(phi) + q*sin(theta)).
    arma::cx_vec upa_response(const UpaConfig &cfg, double theta, double phi);

} // namespace lenspdma

#endif
