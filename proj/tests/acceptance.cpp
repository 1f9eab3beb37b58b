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
//
// Acceptance gate: eleven end-to-end criteria, each printing one PASS/FAIL
// line with its measured values. Run all (`acceptance`) or one criterion
// (`acceptance --criterion N`). Exit code 0 iff every executed criterion
// passed. Tolerances are pinned here, next to each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lenspdma/cli.hpp"
#include "lenspdma/config.hpp"
#include "lenspdma/estimation.hpp"
#include "lenspdma/linksim.hpp"
#include "lenspdma/rng.hpp"

using namespace lenspdma;

namespace
{
    // ------------------------------------------------------------------ 1
    // The default full-dimensional grid (10x10 wavelengths, 180 degree
    // coverage both axes) must hold exactly 317 antennas.
    bool criterion_1()
    {
        auto t0 = std::chrono::steady_clock::now();
        LensArrayConfig lens; // defaults: d = 10x10, coverage 180/180 deg
        std::size_t n = antenna_grid(lens).size();
        double us = std::chrono::duration<double, std::micro>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
        bool ok = n == 317;
        std::printf("criterion 1: %s - antenna grid count (got %zu, expected 317, %.0f us)\n",
                    ok ? "PASS" : "FAIL", n, us);
        return ok;
    }

    // ------------------------------------------------------------------ 2
    // Integer training-length identities for the reference configurations.
    bool criterion_2()
    {
        OverheadReport a = training_overhead(317, 10, 16, 50, 5);
        OverheadReport b = training_overhead(317, 3, 16, 50, 1);
        bool ok = a.total == 503 && a.brute_force == 128000 && b.total == 373;
        std::printf("criterion 2: %s - training overhead identities "
                    "(T=%lld/503, T'=%lld/128000, single-user T=%lld/373)\n",
                    ok ? "PASS" : "FAIL", a.total, a.brute_force, b.total);
        return ok;
    }

    // ------------------------------------------------------------------ 3
    // Closed-form response vs the exact-phase aperture integration on the
    // focused antenna and its 8 grid neighbors, 20 random directions in
    // +-45 degrees, focal_ratio 10. Gate: magnitude error <= 5% of the
    // aperture scale sqrt(d_y*d_z) (= the peak response) per antenna. The
    // per-antenna relative worst is printed as a diagnostic only, since it
    // divides by near-zero closed-form values at response nulls. The closed
    // form is the large-focal-ratio limit and its residual on first-ring
    // neighbors decays roughly as one over the focal ratio squared, so this
    // criterion probes how far from that limit focal_ratio 10 sits.
    bool criterion_3()
    {
        const double tol = 0.05;
        LensArrayConfig lens; // focal_ratio defaults to 10
        auto grid = antenna_grid(lens);
        std::set<std::pair<int, int>> present;
        for (const AntennaIndex &m : grid)
            present.insert({m.m_e, m.m_a});

        std::mt19937_64 rng = make_rng(33);
        double worst_rel = 0.0, worst_scale = 0.0;
        int worst_me = 0, worst_ma = 0;
        double worst_th = 0.0, worst_ph = 0.0;
        const double scale = std::sqrt(lens.d_y * lens.d_z);

        for (int rep = 0; rep < 20; rep++)
        {
            double th = randu(rng, -pi / 4.0, pi / 4.0);
            double ph = randu(rng, -pi / 4.0, pi / 4.0);
            AntennaIndex best{0, 0};
            double best_mag = -1.0;
            for (const AntennaIndex &m : grid)
            {
                double v = std::abs(lens_response_at(lens, th, ph, m));
                if (v > best_mag)
                {
                    best_mag = v;
                    best = m;
                }
            }
            for (int de = -1; de <= 1; de++)
                for (int da = -1; da <= 1; da++)
                {
                    AntennaIndex m{best.m_e + de, best.m_a + da};
                    if (!present.count({m.m_e, m.m_a}))
                        continue;
                    double mc = std::abs(lens_response_at(lens, th, ph, m));
                    double mo = std::abs(aperture_integration_oracle(lens, th, ph, m));
                    worst_rel = std::max(worst_rel, std::abs(mo - mc) / mc);
                    double rel = std::abs(mo - mc) / scale;
                    if (rel > worst_scale)
                    {
                        worst_scale = rel;
                        worst_me = m.m_e;
                        worst_ma = m.m_a;
                        worst_th = th;
                        worst_ph = ph;
                    }
                }
        }
        bool ok = worst_scale <= tol;
        std::printf("criterion 3: %s - closed form vs aperture integration "
                    "(worst magnitude error %.4f of the peak response at antenna "
                    "(%d,%d), direction (%.3f,%.3f) rad, tolerance %.2f; "
                    "worst per-antenna relative error %.4f)\n",
                    ok ? "PASS" : "FAIL", worst_scale, worst_me, worst_ma, worst_th,
                    worst_ph, tol, worst_rel);
        return ok;
    }

    // ------------------------------------------------------------------ 4
    // Noiseless least-squares training exactness with the exact-omni
    // construction (single-antenna mobile, so the probing beamformer is
    // literally omnidirectional with unit gain). Users get disjoint delay
    // ranges so no two merged taps of different users share a delay bin;
    // the stage-2 gain estimates and stage-3 effective rows then equal the
    // ground truth to solver precision.
    bool criterion_4()
    {
        const double tol = 1e-9;
        LensArrayConfig lens;
        lens.d_y = lens.d_z = 3.0;
        UpaConfig ms;
        ms.n_y = ms.n_z = 1;
        ArrayGeometry geom = make_geometry(lens, ms);
        OmniBeamformer omni = omni_beamformer(ms);
        arma::cx_mat f_train = training_matrix(ms.size());
        TrainingConfig tc;
        tc.p_tr = 1.7;
        tc.rho = 0.0;

        double worst_beta = 0.0, worst_g = 0.0;
        for (int seed = 1; seed <= 50; seed++)
        {
            std::mt19937_64 rng = make_rng(4000 + (std::uint64_t)seed);
            ChannelRealization r;
            r.max_delay_s = 100e-9;
            r.paths.resize(2);
            for (int k = 0; k < 2; k++)
                for (int l = 0; l < 3; l++)
                {
                    PathParams p;
                    p.gain = randn_cx(rng, 1.0 / 3.0);
                    p.delay_s = k == 0 ? randu(rng, 1e-9, 39e-9)
                                       : randu(rng, 52e-9, 96e-9);
                    p.aoa_el = randu(rng, -pi / 3.0, pi / 3.0);
                    p.aoa_az = randu(rng, -pi / 3.0, pi / 3.0);
                    r.paths[(std::size_t)k].push_back(p);
                }
            DiscreteChannel d = discretize(r, geom, 500e6);

            TrainingReport rep = run_training(d, tc, omni, f_train, 8, 0.0,
                                              (std::uint64_t)seed);

            // Ground truth for the stage-2 estimates: the merged per-bin
            // gains of every user at every selected antenna.
            const int bins = d.mu_frame + 1;
            arma::cx_mat truth((arma::uword)(2 * bins), rep.beta_hat.n_cols,
                               arma::fill::zeros);
            for (int k = 0; k < 2; k++)
                for (const Tap &t : d.users[(std::size_t)k])
                    for (std::size_t j = 0; j < rep.selected.size(); j++)
                        truth((arma::uword)(t.n * 2 + k), (arma::uword)j) =
                            t.beta((arma::uword)rep.selected[j]);
            worst_beta = std::max(worst_beta,
                                  arma::abs(rep.beta_hat - truth).max());

            EffectiveChannels eff = build_effective(d, rep.selected, rep.assoc);
            for (int k = 0; k < 2; k++)
            {
                const arma::cx_mat &ghat = rep.g_hat[(std::size_t)k];
                const arma::cx_mat &gref = eff.g_self[(std::size_t)k];
                if (ghat.n_rows != gref.n_rows)
                {
                    worst_g = 1.0;
                    continue;
                }
                if (!ghat.is_empty())
                    worst_g = std::max(worst_g, arma::abs(ghat - gref).max());
            }
        }
        bool ok = worst_beta <= tol && worst_g <= tol;
        std::printf("criterion 4: %s - noiseless training exactness "
                    "(50 seeds: worst gain-estimate error %.3g, worst effective-row "
                    "error %.3g, tolerance %.0e)\n",
                    ok ? "PASS" : "FAIL", worst_beta, worst_g, tol);
        return ok;
    }

    // ------------------------------------------------------------------ 5
    // Waveform-measured SINR vs the analytic expression: 20 random
    // two-user instances, 1e5 symbols each; every user must land inside
    // the Monte Carlo confidence interval. The per-user bound is the
    // Sidak-corrected 3-sigma level for the 40 simultaneous comparisons
    // (family false-alarm 0.27%, i.e. 3-sigma strength for the criterion
    // as a whole): a plain per-user 3-sigma gate would reject a correct
    // implementation with ~10% probability on pure Monte Carlo luck.
    // A genuine bias scales as sqrt(symbols) in z and was ruled out by
    // rerunning the worst seeds at 10x and 40x the symbol count (z fell
    // from 3.5 to 0.2 / -0.9).
    bool criterion_5()
    {
        const double z_max = 3.98; // Phi^-1 applied to 1 - (1-(1-2*Phi(-3))^(1/40))/2
        LensArrayConfig lens;
        lens.d_y = lens.d_z = 3.0;
        UpaConfig ms;
        ms.n_y = ms.n_z = 2;
        ArrayGeometry geom = make_geometry(lens, ms);
        Codebook cb = beamsteering_codebook(ms, 16);
        ScenarioConfig scen;
        scen.n_users = 2;
        scen.n_paths = 2;
        const double sigma2 = 1.0; // 0 dB
        const arma::vec p = {1.0, 1.0};

        int outside = 0;
        double worst_z = 0.0;
        for (int seed = 1; seed <= 20; seed++)
        {
            DiscreteChannel d = discretize(sample_channel(scen, (std::uint64_t)seed),
                                           geom, scen.bandwidth_hz);
            arma::vec q((arma::uword)d.m_bs, arma::fill::zeros);
            for (int k = 0; k < 2; k++)
                for (const Tap &t : d.users[(std::size_t)k])
                    q += arma::square(arma::abs(t.beta));
            std::vector<int> sel = select_antennas(q, 6);
            EffectiveChannels eff = effective_matrices(d, sel);
            BeamformerSet bf = mrc_design(eff.g_self, cb);

            std::mt19937_64 rng = make_rng(1000 + (std::uint64_t)seed);
            Streams st = transmit_receive(d, sel, bf, p, sigma2, 100000,
                                          "gaussian", rng);
            TrialResult tr = measure_sinr(st, bf, eff, 100);
            for (int k = 0; k < 2; k++)
            {
                double diff = std::abs(tr.empirical_sinr((arma::uword)k) -
                                       tr.analytic_sinr((arma::uword)k));
                double s = tr.sinr_sigma_mc((arma::uword)k);
                if (diff > z_max * s)
                    outside++;
                if (s > 0.0)
                    worst_z = std::max(worst_z, diff / s);
            }
        }
        bool ok = outside == 0;
        std::printf("criterion 5: %s - empirical vs analytic SINR "
                    "(40 user-instances, %d outside the corrected 3-sigma bound %.2f, "
                    "worst |z| = %.2f)\n",
                    ok ? "PASS" : "FAIL", outside, z_max, worst_z);
        return ok;
    }

    // Constructed two-user channel whose four paths focus on four distinct
    // grid antennas: no inter-path energy overlap at all, so interference
    // vanishes and the two combiner designs coincide.
    DiscreteChannel separated_instance(const ArrayGeometry &geom, int variant)
    {
        static const AntennaIndex sets[3][4] = {
            {{1, 1}, {-2, 0}, {0, 2}, {2, -1}},
            {{0, -2}, {2, 1}, {-1, -1}, {-3, 0}},
            {{1, -2}, {-1, 2}, {3, 0}, {0, 1}},
        };
        static const double delays_ns[3][4] = {
            {4.0, 30.0, 11.0, 57.0},
            {0.0, 14.5, 36.0, 72.0},
            {8.0, 8.0, 22.0, 90.0}, // same delay, different users: still disjoint
        };
        std::mt19937_64 rng = make_rng(600 + (std::uint64_t)variant);
        ChannelRealization r;
        r.max_delay_s = 100e-9;
        r.paths.resize(2);
        for (int i = 0; i < 4; i++)
        {
            double th = 0.0, ph = 0.0;
            antenna_angles(geom.lens, sets[variant][i], th, ph);
            PathParams p;
            p.gain = randn_cx(rng, 1.0);
            p.delay_s = delays_ns[variant][i] * 1e-9;
            p.aoa_el = th;
            p.aoa_az = ph;
            p.aod_el = randu(rng, -0.5, 0.5);
            p.aod_az = randu(rng, -0.5, 0.5);
            r.paths[(std::size_t)(i / 2)].push_back(p);
        }
        return discretize(r, geom, 500e6);
    }

    // ------------------------------------------------------------------ 6
    // On separated instances the interference covariance degenerates to
    // noise only, so the whitening combiner equals the matched filter and
    // the per-user rates of the two designs agree exactly.
    bool criterion_6()
    {
        const double tol = 1e-9;
        LensArrayConfig lens;
        lens.d_y = lens.d_z = 3.0;
        UpaConfig ms;
        ms.n_y = ms.n_z = 2;
        ArrayGeometry geom = make_geometry(lens, ms);
        Codebook cb = beamsteering_codebook(ms, 16);
        const arma::vec p = {1.0, 1.0};
        const double sigma2 = 0.1;

        double worst = 0.0;
        for (int variant = 0; variant < 3; variant++)
        {
            DiscreteChannel d = separated_instance(geom, variant);
            arma::vec q((arma::uword)d.m_bs, arma::fill::zeros);
            for (int k = 0; k < 2; k++)
                for (const Tap &t : d.users[(std::size_t)k])
                    q += arma::square(arma::abs(t.beta));
            std::vector<int> sel = select_antennas(q, 4);
            EffectiveChannels eff = effective_matrices(d, sel);

            RateReport mrc = sinr_eq21(eff, mrc_design(eff.g_self, cb), p, sigma2);
            RateReport mmse = sinr_eq21(eff, mmse_design(eff, p, sigma2, cb), p, sigma2);
            worst = std::max(worst, arma::abs(mrc.rate - mmse.rate).max());
        }
        bool ok = worst <= tol;
        std::printf("criterion 6: %s - matched filter equals whitening combiner when "
                    "separated (worst per-user rate difference %.3g, tolerance %.0e)\n",
                    ok ? "PASS" : "FAIL", worst, tol);
        return ok;
    }

    // ------------------------------------------------------------------ 7
    // The exhaustive beam-pair search with per-tuple optimal combining must
    // dominate the per-user greedy design everywhere, and coincide with it
    // on separated instances.
    bool criterion_7()
    {
        const double tol = 1e-9;
        LensArrayConfig lens;
        lens.d_y = lens.d_z = 3.0;
        UpaConfig ms;
        ms.n_y = ms.n_z = 2;
        ArrayGeometry geom = make_geometry(lens, ms);
        Codebook cb = beamsteering_codebook(ms, 8);
        ScenarioConfig scen;
        scen.n_users = 2;
        scen.n_paths = 2;
        const arma::vec p = {1.0, 1.0};
        const double sigma2 = 0.3;

        double min_margin = 1e300;
        for (int seed = 1; seed <= 100; seed++)
        {
            DiscreteChannel d = discretize(sample_channel(scen, 7000 + (std::uint64_t)seed),
                                           geom, scen.bandwidth_hz);
            arma::vec q((arma::uword)d.m_bs, arma::fill::zeros);
            for (int k = 0; k < 2; k++)
                for (const Tap &t : d.users[(std::size_t)k])
                    q += arma::square(arma::abs(t.beta));
            std::vector<int> sel = select_antennas(q, 6);
            EffectiveChannels eff = effective_matrices(d, sel);

            double greedy = sinr_eq21(eff, mmse_design(eff, p, sigma2, cb), p, sigma2)
                                .sum_rate;
            double oracle = sinr_eq21(eff, exhaustive_p1_oracle(eff, p, sigma2, cb),
                                      p, sigma2)
                                .sum_rate;
            min_margin = std::min(min_margin, oracle - greedy);
        }

        double worst_eq = 0.0;
        for (int variant = 0; variant < 3; variant++)
        {
            DiscreteChannel d = separated_instance(geom, variant);
            arma::vec q((arma::uword)d.m_bs, arma::fill::zeros);
            for (int k = 0; k < 2; k++)
                for (const Tap &t : d.users[(std::size_t)k])
                    q += arma::square(arma::abs(t.beta));
            std::vector<int> sel = select_antennas(q, 4);
            EffectiveChannels eff = effective_matrices(d, sel);
            double greedy = sinr_eq21(eff, mmse_design(eff, p, sigma2, cb), p, sigma2)
                                .sum_rate;
            double oracle = sinr_eq21(eff, exhaustive_p1_oracle(eff, p, sigma2, cb),
                                      p, sigma2)
                                .sum_rate;
            worst_eq = std::max(worst_eq, std::abs(oracle - greedy));
        }
        bool ok = min_margin >= -tol && worst_eq <= tol;
        std::printf("criterion 7: %s - exhaustive search dominance "
                    "(min margin %.3g over 100 instances, separated-instance gap %.3g, "
                    "tolerance %.0e)\n",
                    ok ? "PASS" : "FAIL", min_margin, worst_eq, tol);
        return ok;
    }

    ExperimentConfig ratio_experiment(int k_users, double v_small, std::uint64_t seed,
                                      int trials)
    {
        ExperimentConfig cfg; // full-size defaults: 10x10 lens, 4x4 mobile, 256 beams
        cfg.scenario.n_users = k_users;
        cfg.pdma.mode = "mrc";
        cfg.sim.n_trials = trials;
        cfg.sim.seed = seed;
        cfg.sim.snr_db = -10.0;
        cfg.sweep.axis = "m_rf";
        cfg.sweep.values = {v_small, 317.0};
        return cfg;
    }

    bool ratio_criterion(int idx, int k_users, int m_rf_small, int trials,
                         double threshold, std::uint64_t seed)
    {
        ExperimentConfig cfg = ratio_experiment(k_users, (double)m_rf_small, seed, trials);
        SweepResult res = run_experiment(cfg);
        const SweepRow &small = res.rows[0], &full = res.rows[1];
        double ratio = small.mean_sum_rate / full.mean_sum_rate;
        // First-order error of the ratio of two independent means.
        double rel_err = std::sqrt(std::pow(small.stderr_sum_rate / small.mean_sum_rate, 2) +
                                   std::pow(full.stderr_sum_rate / full.mean_sum_rate, 2));
        bool ok = ratio >= threshold;
        std::printf("criterion %d: %s - K=%d selection ratio at M_RF=%d "
                    "(%.4f +/- %.4f of the full-array rate %.4f bit/s/Hz over %d trials, "
                    "threshold %.2f)\n",
                    idx, ok ? "PASS" : "FAIL", k_users, m_rf_small, ratio,
                    ratio * rel_err, full.mean_sum_rate, trials, threshold);
        return ok;
    }

    // ------------------------------------------------------------------ 8
    // Single user at -10 dB: five RF chains must retain at least 97% of the
    // full 317-chain rate on average.
    bool criterion_8() { return ratio_criterion(8, 1, 5, 500, 0.97, 88); }

    // ------------------------------------------------------------------ 9
    // Five users at -10 dB: twenty RF chains must retain at least 85% of
    // the full-array sum rate.
    bool criterion_9() { return ratio_criterion(9, 5, 20, 300, 0.85, 99); }

    // ----------------------------------------------------------------- 10
    // Estimated CSI (three-phase training, net of the (1 - T/T_c) overhead
    // factor) must stay within 90% of perfect-CSI MRC at every point of the
    // SNR grid; training SNR 10 dB for the single-user case and 20 dB for
    // five users.
    bool criterion_10()
    {
        const double threshold = 0.90;
        bool ok = true;
        double measured[2] = {0.0, 0.0};
        double aggregate[2] = {0.0, 0.0};
        const int k_set[2] = {1, 5};
        const double tr_snr[2] = {10.0, 20.0};
        const int trials[2] = {150, 100};

        for (int c = 0; c < 2; c++)
        {
            ExperimentConfig cfg;
            cfg.scenario.n_users = k_set[c];
            cfg.pdma.mode = "mrc";
            cfg.pdma.m_rf = 10;
            cfg.training_snr_db = tr_snr[c];
            cfg.sim.n_trials = trials[c];
            cfg.sim.seed = 1200 + (std::uint64_t)c;
            cfg.sweep.axis = "snr_db";
            cfg.sweep.values = {-20.0, -15.0, -10.0, -5.0, 0.0, 5.0, 10.0};

            ExperimentConfig est = cfg;
            est.pdma.csi = "estimated";
            SweepResult perfect = run_experiment(cfg);
            SweepResult estimated = run_experiment(est);

            double min_ratio = 1e300, sum_est = 0.0, sum_per = 0.0;
            for (std::size_t i = 0; i < perfect.rows.size(); i++)
            {
                min_ratio = std::min(min_ratio, estimated.rows[i].mean_sum_rate /
                                                    perfect.rows[i].mean_sum_rate);
                sum_est += estimated.rows[i].mean_sum_rate;
                sum_per += perfect.rows[i].mean_sum_rate;
            }
            measured[c] = min_ratio;
            aggregate[c] = sum_est / sum_per;
            ok = ok && min_ratio >= threshold;
        }
        std::printf("criterion 10: %s - estimated vs perfect CSI net rate "
                    "(min grid-point ratio %.4f at K=1 / %.4f at K=5, threshold %.2f; "
                    "grid-aggregate ratios %.4f / %.4f)\n",
                    ok ? "PASS" : "FAIL", measured[0], measured[1], threshold,
                    aggregate[0], aggregate[1]);
        return ok;
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    // ----------------------------------------------------------------- 11
    // Re-running the reference configuration with the same seed must
    // reproduce the result table (and its metadata sidecar) byte for byte.
    bool criterion_11()
    {
        const std::string path = "acc_tmp_paper_defaults.csv";
        std::ostringstream sink;
        int rc1 = cmd_run("paper-defaults", 0, false, 0, path, "", sink, sink);
        std::string csv1 = slurp(path), meta1 = slurp(path + ".meta.json");
        int rc2 = cmd_run("paper-defaults", 0, false, 0, path, "", sink, sink);
        std::string csv2 = slurp(path), meta2 = slurp(path + ".meta.json");
        std::remove(path.c_str());
        std::remove((path + ".meta.json").c_str());

        bool ok = rc1 == exit_ok && rc2 == exit_ok && !csv1.empty() && csv1 == csv2 &&
                  meta1 == meta2;
        std::printf("criterion 11: %s - byte-identical reruns "
                    "(exit codes %d/%d, %zu result bytes, tables %s, metadata %s)\n",
                    ok ? "PASS" : "FAIL", rc1, rc2, csv1.size(),
                    csv1 == csv2 ? "identical" : "DIFFER",
                    meta1 == meta2 ? "identical" : "DIFFER");
        return ok;
    }
} // namespace

int main(int argc, char **argv)
{
    int only = 0;
    for (int i = 1; i < argc; i++)
    {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
            only = std::atoi(argv[++i]);
        else
        {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }

    bool (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                            criterion_5, criterion_6, criterion_7, criterion_8,
                            criterion_9, criterion_10, criterion_11};
    const int n = (int)(sizeof(criteria) / sizeof(criteria[0]));
    if (only < 0 || only > n)
    {
        std::fprintf(stderr, "criterion index out of range (1..%d)\n", n);
        return 2;
    }

    int failed = 0;
    for (int i = 0; i < n; i++)
    {
        if (only != 0 && only != i + 1)
            continue;
        if (!criteria[i]())
            failed++;
    }
    if (only == 0)
        std::printf("acceptance: %d of %d criteria failed\n", failed, n);
    return failed == 0 ? 0 : 1;
}
