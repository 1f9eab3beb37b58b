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

#ifndef lenspdma_cli_H
#define lenspdma_cli_H

#include <iosfwd>
#include <string>
#include <vector>

#include "lenspdma/linksim.hpp"

namespace lenspdma
{
    // Exit codes shared by all subcommands.
    enum exit_code
    {
        exit_ok = 0,
        exit_config_error = 1,
        exit_oracle_failure = 2,
        exit_runtime_error = 3
    };

    // Results round-trip: comma-separated table (or JSON lines) plus an
    // adjacent <path>.meta.json carrying the resolved config and digest.
    // Numeric formatting is bit-exact (max_digits10); no timestamps, so
    // identical runs produce identical bytes.
    void write_sweep(const SweepResult &r, const std::string &path, const std::string &format,
                     const std::string &config_dump);
    SweepResult read_sweep(const std::string &path);

    // Subcommand bodies (exit code returned, output on the given streams).
    int cmd_run(const std::string &config, std::uint64_t seed_override, bool has_seed,
                int trials_override, const std::string &out_override,
                const std::string &format_override, std::ostream &out, std::ostream &err);
    int cmd_validate(bool quick, std::ostream &out, std::ostream &err);
    int cmd_report(const std::vector<std::string> &files, const std::string &out_path,
                   std::ostream &out, std::ostream &err);

} // namespace lenspdma

#endif
