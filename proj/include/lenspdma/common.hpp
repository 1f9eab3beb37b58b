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

#ifndef lenspdma_common_H
#define lenspdma_common_H

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace lenspdma
{
    using cx = std::complex<double>;

    constexpr double pi = 3.14159265358979323846;

    // Thrown by the validate() methods of all configuration structs.
    class config_error : public std::runtime_error
    {
    public:
        explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
    };

    // Normalized sinc, sin(pi*x)/(pi*x). The guard keeps the removable
    // singularity exact for on-grid angles, where the argument is an
    // integer up to rounding error.
    inline double sinc(double x)
    {
        if (std::abs(x) < 1.0e-12)
            return 1.0;
        return std::sin(pi * x) / (pi * x);
    }

    inline double deg2rad(double deg) { return deg * pi / 180.0; }
    inline double rad2deg(double rad) { return rad * 180.0 / pi; }

    inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
    inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

} // namespace lenspdma

#endif
