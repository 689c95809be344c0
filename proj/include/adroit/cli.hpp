// Copyright 2026 The adroit-lg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adroit/sweep.hpp"
#include "adroit/table_io.hpp"

namespace adroit {

/// Fully resolved settings for one invocation: defaults for the command,
/// then the config file, then flags.
struct CliSettings {
  SweepConfig sweep;
  OutputFormat format = OutputFormat::Csv;
  std::string out_path;  // empty: write to the given stream
  std::string in_path;   // `check` only
};

/// Applies one `key = value` setting. Throws ConfigError naming the field
/// (and `line`, when nonzero).
void apply_setting(CliSettings& settings, const std::string& key, const std::string& value,
                   int line = 0);

/// Reads a plain `key = value` config file ('#' starts a comment).
void apply_config_file(CliSettings& settings, const std::string& path);

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 on success, 2 for usage, configuration or input errors, 1 for
/// runtime failures. Errors are reported as a single line on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adroit
