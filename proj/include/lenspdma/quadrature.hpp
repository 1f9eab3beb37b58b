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

#ifndef lenspdma_quadrature_H
#define lenspdma_quadrature_H

#include <cstddef>
#include <functional>

#include "lenspdma/common.hpp"

namespace lenspdma
{
    struct quad_result
    {
        cx value = 0.0;
        double abs_err = 0.0;  // accumulated error estimate
        std::size_t evals = 0; // integrand evaluations
    };

    // Adaptive Gauss-Kronrod (G7, K15) quadrature for complex-valued
    // integrands on [a, b]. Subdivides the worst interval until the summed
    // Kronrod error estimate satisfies
    //     err <= max(abs_tol, rel_tol * |value|).
    // Throws std::runtime_error if max_intervals is exhausted first.
    quad_result integrate_gk(const std::function<cx(double)> &f, double a, double b,
                             double rel_tol = 1.0e-8, double abs_tol = 0.0,
                             std::size_t max_intervals = 4000);

    // Iterated 2-D integral over [ya, yb] x [za, zb]: the outer adaptive pass
    // runs over z, and each outer evaluation integrates over y adaptively
    // with a tolerance tightened by one order of magnitude. `min_panels`
    // pre-splits both axes so that oscillatory integrands are resolved
    // before the error estimate is trusted.
    quad_result integrate_2d(const std::function<cx(double, double)> &f,
                             double ya, double yb, double za, double zb,
                             double rel_tol = 1.0e-6, std::size_t min_panels = 8);

} // namespace lenspdma

#endif
