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

#include "lenspdma/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lenspdma
{
    namespace
    {
        // Gauss-Kronrod (G7, K15) abscissae and weights on [-1, 1].
        // Positive half; nodes are symmetric. Odd indices are the
        // embedded Gauss-7 points.
        constexpr double xgk[8] = {
            0.991455371120812639206854697526329,
            0.949107912342758524526189684047851,
            0.864864423359769072789712788640926,
            0.741531185599394439863864773280788,
            0.586087235467691130294144838258730,
            0.405845151377397166906606412076961,
            0.207784955007898467600689403773245,
            0.000000000000000000000000000000000};
        constexpr double wgk[8] = {
            0.022935322010529224963732008058970,
            0.063092092629978553290700663189204,
            0.104790010322250183839876322541518,
            0.140653259715525918745189590510238,
            0.169004726639267902826583426598550,
            0.190350578064785409913256402421014,
            0.204432940075298892414161999234649,
            0.209482141084727828012999174891714};
        constexpr double wg[4] = {
            0.129484966168869693270611432679082,
            0.279705391489276667901467771423780,
            0.381830050505118944950369775488975,
            0.417959183673469387755102040816327};

        struct segment
        {
            double a, b;
            cx value;
            double err;
        };

        segment gk15(const std::function<cx(double)> &f, double a, double b,
                     std::size_t &evals)
        {
            const double c = 0.5 * (a + b);
            const double h = 0.5 * (b - a);

            cx fc = f(c);
            cx resk = wgk[7] * fc;
            cx resg = wg[3] * fc;
            for (int i = 0; i < 7; i++)
            {
                cx f1 = f(c - h * xgk[i]);
                cx f2 = f(c + h * xgk[i]);
                resk += wgk[i] * (f1 + f2);
                if (i % 2 == 1)
                    resg += wg[i / 2] * (f1 + f2);
            }
            evals += 15;

            segment s;
            s.a = a;
            s.b = b;
            s.value = resk * h;
            s.err = std::abs((resk - resg) * h);
            return s;
        }

        struct worse
        {
            bool operator()(const segment &l, const segment &r) const { return l.err < r.err; }
        };
    } // namespace

    quad_result integrate_gk(const std::function<cx(double)> &f, double a, double b,
                             double rel_tol, double abs_tol, std::size_t max_intervals)
    {
        std::size_t evals = 0;
        std::priority_queue<segment, std::vector<segment>, worse> heap;
        heap.push(gk15(f, a, b, evals));

        cx total = heap.top().value;
        double err = heap.top().err;

        while (heap.size() < max_intervals)
        {
            double bound = std::max(abs_tol, rel_tol * std::abs(total));
            if (err <= bound)
                break;

            segment s = heap.top();
            heap.pop();
            total -= s.value;
            err -= s.err;

            double mid = 0.5 * (s.a + s.b);
            segment l = gk15(f, s.a, mid, evals);
            segment r = gk15(f, mid, s.b, evals);
            total += l.value + r.value;
            err += l.err + r.err;
            heap.push(l);
            heap.push(r);
        }

        if (err > std::max(abs_tol, rel_tol * std::abs(total)))
        {
            std::ostringstream msg;
            msg << "quadrature did not converge: error estimate " << err
                << " after " << heap.size() << " intervals (" << evals << " evaluations)";
            throw std::runtime_error(msg.str());
        }

        quad_result q;
        q.value = total;
        q.abs_err = err;
        q.evals = evals;
        return q;
    }

    quad_result integrate_2d(const std::function<cx(double, double)> &f,
                             double ya, double yb, double za, double zb,
                             double rel_tol, std::size_t min_panels)
    {
        if (min_panels < 1)
            min_panels = 1;

        std::size_t evals = 0;
        const double inner_tol = rel_tol * 0.1;

        auto inner = [&](double z) -> cx {
            cx sum = 0.0;
            double step = (yb - ya) / (double)min_panels;
            for (std::size_t j = 0; j < min_panels; j++)
            {
                quad_result q = integrate_gk([&](double y) { return f(y, z); },
                                             ya + step * (double)j, ya + step * (double)(j + 1),
                                             inner_tol, 0.0, 2000);
                sum += q.value;
                evals += q.evals;
            }
            return sum;
        };

        cx total = 0.0;
        double err = 0.0;
        double step = (zb - za) / (double)min_panels;
        for (std::size_t j = 0; j < min_panels; j++)
        {
            quad_result q = integrate_gk(inner, za + step * (double)j,
                                         za + step * (double)(j + 1), rel_tol, 0.0, 2000);
            total += q.value;
            err += q.abs_err;
        }

        quad_result q;
        q.value = total;
        q.abs_err = err;
        q.evals = evals;
        return q;
    }

} // namespace lenspdma
