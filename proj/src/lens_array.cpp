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

#include "lenspdma/lens_array.hpp"

#include <cmath>
#include <iostream>
#include <mutex>

#include "lenspdma/quadrature.hpp"

namespace lenspdma
{
    namespace
    {
        // Snap floor(x) for arguments that are integers up to rounding
        // error: the grid bounds are of the form d*sin(coverage/2) and must
        // not lose an antenna row to a 1-ulp undershoot.
        int floor_snapped(double x)
        {
            return (int)std::floor(x + 1.0e-9);
        }

        double clamped_asin(double x)
        {
            if (x > 1.0)
                x = 1.0;
            if (x < -1.0)
                x = -1.0;
            return std::asin(x);
        }
    } // namespace

    void LensArrayConfig::validate() const
    {
        if (!(d_y > 0.0) || !(d_z > 0.0))
            throw config_error("lens: d_y and d_z must be positive");
        if (theta_cov < 0.0 || theta_cov > pi)
            throw config_error("lens: theta_cov must lie in [0, pi]");
        if (!(phi_cov > 0.0) || phi_cov > pi)
            throw config_error("lens: phi_cov must lie in (0, pi]");
        if (focal_ratio < 1.0)
            throw config_error("lens: focal_ratio must be >= 1");
    }

    void antenna_angles(const LensArrayConfig &cfg, AntennaIndex m,
                        double &theta_m, double &phi_m)
    {
        theta_m = clamped_asin((double)m.m_e / cfg.d_z);
        double c = std::cos(theta_m);
        if (c < 1.0e-12)
        {
            // Polar antenna rows admit only m_a = 0; its azimuth is
            // degenerate and fixed at 0.
            phi_m = 0.0;
            return;
        }
        phi_m = clamped_asin((double)m.m_a / (cfg.d_y * c));
    }

    std::vector<AntennaIndex> antenna_grid(const LensArrayConfig &cfg)
    {
        cfg.validate();

        const int e_max = floor_snapped(cfg.d_z * std::sin(0.5 * cfg.theta_cov));
        std::vector<AntennaIndex> grid;
        for (int me = -e_max; me <= e_max; me++)
        {
            double st = (double)me / cfg.d_z;
            double ct = std::sqrt(std::max(0.0, 1.0 - st * st));
            int a_max = floor_snapped(cfg.d_y * ct * std::sin(0.5 * cfg.phi_cov));
            for (int ma = -a_max; ma <= a_max; ma++)
                grid.push_back({me, ma});
        }
        return grid;
    }

    arma::cx_vec lens_response(const LensArrayConfig &cfg,
                               const std::vector<AntennaIndex> &grid,
                               double theta, double phi)
    {
        const double eps = 1.0e-12;
        if (std::abs(theta) > 0.5 * pi + eps || std::abs(phi) > 0.5 * pi + eps)
            throw std::domain_error("lens_response: angles must lie in [-pi/2, pi/2]");

        const double amp = std::sqrt(cfg.d_y * cfg.d_z);
        const cx common = amp * std::polar(1.0, -cfg.phi0);
        const double ze = cfg.d_z * std::sin(theta);
        const double za = cfg.d_y * std::cos(theta) * std::sin(phi);

        arma::cx_vec a(grid.size());
        for (std::size_t i = 0; i < grid.size(); i++)
            a(i) = common * sinc((double)grid[i].m_e - ze) * sinc((double)grid[i].m_a - za);
        return a;
    }

    arma::cx_vec lens_response(const LensArrayConfig &cfg, double theta, double phi)
    {
        return lens_response(cfg, antenna_grid(cfg), theta, phi);
    }

    cx lens_response_at(const LensArrayConfig &cfg, double theta, double phi, AntennaIndex m)
    {
        const double eps = 1.0e-12;
        if (std::abs(theta) > 0.5 * pi + eps || std::abs(phi) > 0.5 * pi + eps)
            throw std::domain_error("lens_response: angles must lie in [-pi/2, pi/2]");
        const cx common = std::sqrt(cfg.d_y * cfg.d_z) * std::polar(1.0, -cfg.phi0);
        return common * sinc((double)m.m_e - cfg.d_z * std::sin(theta)) *
               sinc((double)m.m_a - cfg.d_y * std::cos(theta) * std::sin(phi));
    }

    cx aperture_integration_oracle(const LensArrayConfig &cfg,
                                   double theta, double phi, AntennaIndex m,
                                   double rel_tol)
    {
        cfg.validate();
        if (cfg.focal_ratio < 5.0)
            throw config_error("aperture oracle: focal_ratio must be >= 5");
        if (cfg.focal_ratio < 10.0)
        {
            static std::once_flag warned;
            std::call_once(warned, [] {
                std::cerr << "lenspdma: aperture oracle below focal_ratio 10; "
                             "agreement with the closed form degrades\n";
            });
        }

        // All lengths in carrier wavelengths, so k0 = 2*pi.
        const double k0 = 2.0 * pi;
        const double F = cfg.focal_ratio * std::max(cfg.d_y, cfg.d_z);

        double theta_m = 0.0, phi_m = 0.0;
        antenna_angles(cfg, m, theta_m, phi_m);
        const double ay = std::cos(theta_m) * std::sin(phi_m); // antenna at F*(ax, ay, az)
        const double az = std::sin(theta_m);

        const double ky = std::cos(theta) * std::sin(phi); // incident transverse wave numbers
        const double kz = std::sin(theta);

        const double amp = 1.0 / std::sqrt(cfg.d_y * cfg.d_z); // 1/sqrt(beta), x0 = 1

        auto integrand = [&](double y, double z) -> cx {
            double r2 = F * F + y * y + z * z;
            double lens_phase = cfg.phi0 - k0 * std::sqrt(r2);
            double d_m = std::sqrt(r2 - 2.0 * F * (y * ay + z * az));
            double psi = lens_phase + k0 * d_m;
            double inc = -k0 * (y * ky + z * kz);
            return amp * std::polar(1.0, inc - psi);
        };

        quad_result q = integrate_2d(integrand, -0.5 * cfg.d_y, 0.5 * cfg.d_y,
                                     -0.5 * cfg.d_z, 0.5 * cfg.d_z, rel_tol, 8);
        return q.value;
    }

    void UpaConfig::validate() const
    {
        if (n_y < 1 || n_z < 1)
            throw config_error("upa: element counts must be >= 1");
        if (!(spacing > 0.0))
            throw config_error("upa: spacing must be positive");
    }

    arma::cx_vec upa_response(const UpaConfig &cfg, double theta, double phi)
    {
        const double norm = 1.0 / std::sqrt((double)cfg.size());
        const double w = 2.0 * pi * cfg.spacing;
        const double ky = std::cos(theta) * std::sin(phi);
        const double kz = std::sin(theta);

        arma::cx_vec b(cfg.size());
        for (int p = 0; p < cfg.n_y; p++)
            for (int q = 0; q < cfg.n_z; q++)
                b(p * cfg.n_z + q) = norm * std::polar(1.0, w * ((double)p * ky + (double)q * kz));
        return b;
    }

} // namespace lenspdma
