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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lenspdma/cli.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"lenspdma - uplink path-division multiple access simulator for lens "
                 "antenna arrays"};
    app.require_subcommand(1);

    // run ----------------------------------------------------------------
    std::string config;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int trials = 0;
    std::string out_path, format;
    CLI::App *run = app.add_subcommand("run", "execute a Monte Carlo sweep");
    run->add_option("--config", config,
                    "config file path or preset name (paper-defaults, single-user)")
        ->required();
    run->add_option("--seed", seed, "override sim.seed")->each([&](const std::string &) {
        has_seed = true;
    });
    run->add_option("--trials", trials, "override sim.n_trials");
    run->add_option("--out", out_path, "override output.path");
    run->add_option("--format", format, "override output.format (csv|jsonl)")
        ->check(CLI::IsMember({"csv", "jsonl"}));

    // validate -----------------------------------------------------------
    bool quick = false;
    CLI::App *validate = app.add_subcommand("validate", "run built-in self-checks");
    validate->add_flag("--quick", quick, "skip the slow full-size aperture check");

    // report -------------------------------------------------------------
    std::vector<std::string> files;
    std::string report_out;
    CLI::App *report = app.add_subcommand("report", "merge result files into one table");
    report->add_option("files", files, "result files (csv or jsonl)")->required();
    report->add_option("--out", report_out, "write the merged table here instead of stdout");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        int rc = app.exit(e);
        return rc == 0 ? lenspdma::exit_ok : lenspdma::exit_config_error;
    }

    try
    {
        if (run->parsed())
            return lenspdma::cmd_run(config, seed, has_seed, trials, out_path, format,
                                     std::cout, std::cerr);
        if (validate->parsed())
            return lenspdma::cmd_validate(quick, std::cout, std::cerr);
        if (report->parsed())
            return lenspdma::cmd_report(files, report_out, std::cout, std::cerr);
    }
    catch (const lenspdma::config_error &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return lenspdma::exit_config_error;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return lenspdma::exit_runtime_error;
    }
    return lenspdma::exit_config_error;
}
