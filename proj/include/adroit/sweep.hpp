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

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adroit/protocol.hpp"

namespace adroit {

/// Invalid sweep configuration. `field` names the offending key; `line` is
/// the config-file line, or 0 when the value came from a flag.
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0);

  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

/// Inclusive grid start..stop with `steps` points (steps = 1 gives start).
struct Range {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 1;

  std::vector<double> values() const;
  std::string to_string() const;
};

/// Parses "a:b:steps" or a single value. Numbers may carry a "pi" factor: "pi", "0.75pi", "2*pi".
Range parse_range(std::string_view text, const std::string& field);
double parse_number(std::string_view text, const std::string& field);

struct SweepConfig {
  Range theta{0.0, std::numbers::pi, 181};
  Range gamma{0.0, 0.0, 1};
  std::vector<int> n_values{1};
  double omega = 1.0;
  int m = 1;
  Criterion criterion = Criterion::Strict;
  std::optional<std::size_t> shots;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;  // 0: one per hardware thread

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  /// Uniform measurement interval pi m / omega.
  double tau() const { return qnd_interval(omega, m); }
};

struct SweepRecord {
  double theta = 0.0;
  double gamma = 0.0;
  int n = 1;
  double c12 = 0.0;
  double c23 = 0.0;
  double c13_prime = 0.0;
  double lg_quantity = 1.0;
  double eps_total = 0.0;
  Verdict verdict = Verdict::NoViolation;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Protocol schedule at (theta, n) with tau = pi m / omega, evaluated
/// exactly, plus the adroitness total at the same tau.
SweepRecord evaluate_point(double theta, double gamma, int n, double omega, int m);

/// Every (n, gamma, theta) grid point, in that nesting order. Points are
/// spread over `config.workers` threads; output order does not depend on it.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// Violation margin L + eps_total (strict) or L (lenient); negative means
/// a violation under that criterion.
double violation_margin(double theta, double gamma, int n, double omega, int m,
                        Criterion criterion);

/// Theta scan resolution and bisection target for onset detection, in
/// units of pi.
inline constexpr double kOnsetScanStep = 1e-4;
inline constexpr double kOnsetBisectWidth = 1e-6;

/// First violating interval in [0, pi]. `lower`/`upper` are bisection
/// midpoints; an edge that coincides with the scan boundary is reported as
/// the boundary with zero bracket.
struct ViolationWindow {
  bool found = false;
  double lower = 0.0;
  double lower_bracket = 0.0;
  double upper = 0.0;
  double upper_bracket = 0.0;

  double width() const { return found ? upper - lower : 0.0; }
};

ViolationWindow violation_window(int n, double gamma, double omega, int m, Criterion criterion);

/// Minimum of violation_margin over theta in [0, 2 pi).
struct MarginMinimum {
  double theta = 0.0;
  double margin = 0.0;
};

MarginMinimum minimum_margin(double gamma, int n, double omega, int m, Criterion criterion);

/// Dephasing rate at which minimum_margin crosses zero, by bisection.
/// `found` is false if no violation exists even at gamma = 0.
struct GammaCutoff {
  bool found = false;
  double gamma = 0.0;
  double bracket = 0.0;
};

GammaCutoff gamma_cutoff(int n, double omega, int m, Criterion criterion,
                         double tolerance = 1e-7);

}  // namespace adroit
