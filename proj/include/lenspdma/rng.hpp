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

#ifndef lenspdma_rng_H
#define lenspdma_rng_H

#include <cstdint>
#include <random>
#include <vector>

#include "lenspdma/common.hpp"

namespace lenspdma
{
    // splitmix64 finalizer. Used to derive independent per-task seeds from a
    // master seed plus one or two stream indices, so that results do not
    // depend on the order in which parallel trials are executed.
    inline std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ b); }

    inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c)
    {
        return mix64(mix64(a, b) ^ c);
    }

    inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(mix64(seed)); }

    // Circularly symmetric complex Gaussian with total variance `var`,
    // i.e. real and imaginary parts are N(0, var/2). var = 0 yields exact
    // zeros (normal_distribution requires a positive stddev).
    inline cx randn_cx(std::mt19937_64 &rng, double var = 1.0)
    {
        if (var <= 0.0)
            return cx(0.0, 0.0);
        std::normal_distribution<double> n(0.0, std::sqrt(var / 2.0));
        double re = n(rng);
        double im = n(rng);
        return cx(re, im);
    }

    inline double randu(std::mt19937_64 &rng, double lo = 0.0, double hi = 1.0)
    {
        std::uniform_real_distribution<double> u(lo, hi);
        return u(rng);
    }

    // Flat Dirichlet sample of dimension n (normalized unit-rate exponentials).
    inline std::vector<double> dirichlet_flat(std::mt19937_64 &rng, std::size_t n)
    {
        std::exponential_distribution<double> e(1.0);
        std::vector<double> w(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; i++)
        {
            w[i] = e(rng);
            sum += w[i];
        }
        for (std::size_t i = 0; i < n; i++)
            w[i] /= sum;
        return w;
    }

    // Unit-power QPSK symbol, equiprobable over {(+-1 +-1j)/sqrt(2)}.
    inline cx qpsk(std::mt19937_64 &rng)
    {
        std::uniform_int_distribution<int> b(0, 3);
        static const double s = 1.0 / std::sqrt(2.0);
        switch (b(rng))
        {
        case 0: return cx(+s, +s);
        case 1: return cx(+s, -s);
        case 2: return cx(-s, +s);
        default: return cx(-s, -s);
        }
    }

} // namespace lenspdma

#endif
