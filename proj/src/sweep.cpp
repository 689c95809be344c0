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

#include "adroit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace adroit {

namespace {

constexpr double kPi = std::numbers::pi;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Bisects a sign change of `violates` between a non-violating point `ok`
// and a violating point `bad` down to `width`.
template <typename Pred>
std::pair<double, double> bisect_edge(double ok, double bad, double width, Pred violates) {
  while (std::abs(bad - ok) > width) {
    const double mid = 0.5 * (ok + bad);
    if (violates(mid)) {
      bad = mid;
    } else {
      ok = mid;
    }
  }
  return {0.5 * (ok + bad), std::abs(bad - ok)};
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message, int line)
    : ValidationError(message), field_(std::move(field)), line_(line) {}

std::vector<double> Range::values() const {
  std::vector<double> out;
  out.reserve(steps);
  if (steps == 1) {
    out.push_back(start);
    return out;
  }
  const double span = stop - start;
  for (std::size_t i = 0; i < steps; ++i) {
    // The last point is pinned to `stop` exactly.
    out.push_back(i + 1 == steps ? stop : start + span * static_cast<double>(i) / static_cast<double>(steps - 1));
  }
  return out;
}

std::string Range::to_string() const {
  std::ostringstream s;
  s.precision(17);
  s << start << ':' << stop << ':' << steps;
  return s.str();
}

double parse_number(std::string_view text, const std::string& field) {
  std::string_view t = trim(text);
  if (t.empty()) throw ConfigError(field, "empty number");
  double factor = 1.0;
  if (t.size() >= 2 && t.substr(t.size() - 2) == "pi") {
    factor = kPi;
    t.remove_suffix(2);
    t = trim(t);
    if (!t.empty() && t.back() == '*') t.remove_suffix(1);
    t = trim(t);
    if (t.empty()) return kPi;
    if (t == "-") return -kPi;
  }
  double value = 0.0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (!t.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(field, "cannot parse number '" + std::string(text) + "'");
  }
  return value * factor;
}

Range parse_range(std::string_view text, const std::string& field) {
  const std::string_view t = trim(text);
  const auto first = t.find(':');
  if (first == std::string_view::npos) {
    const double v = parse_number(t, field);
    return Range{v, v, 1};
  }
  const auto second = t.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw ConfigError(field, "expected start:stop:steps or a single value, got '" + std::string(text) + "'");
  }
  Range r;
  r.start = parse_number(t.substr(0, first), field);
  r.stop = parse_number(t.substr(first + 1, second - first - 1), field);
  const std::string_view steps = trim(t.substr(second + 1));
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(steps.data(), steps.data() + steps.size(), n);
  if (ec != std::errc() || ptr != steps.data() + steps.size()) {
    throw ConfigError(field, "cannot parse step count '" + std::string(steps) + "'");
  }
  r.steps = n;
  return r;
}

void SweepConfig::validate() const {
  auto check_range = [](const Range& r, const char* field) {
    if (r.steps < 1) throw ConfigError(field, "steps must be >= 1");
    if (!(r.start <= r.stop)) throw ConfigError(field, "start must be <= stop");
  };
  check_range(theta, "theta");
  check_range(gamma, "gamma");
  if (gamma.start < 0.0) throw ConfigError("gamma", "dephasing rate must be >= 0");
  if (n_values.empty()) throw ConfigError("n", "need at least one value");
  for (int n : n_values) {
    if (n < 0) throw ConfigError("n", "values must be >= 0");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ConfigError("omega", "must be > 0");
  if (m < 1) throw ConfigError("m", "must be >= 1");
  if (shots && *shots < 1) throw ConfigError("shots", "must be >= 1");
}

SweepRecord evaluate_point(double theta, double gamma, int n, double omega, int m) {
  const double tau = qnd_interval(omega, m);
  const LindbladSpec dynamics(HamiltonianSpec(omega), gamma);
  const CorrelatorSet cs = lg_quantity(build_protocol_schedule(theta, n, tau, dynamics));
  const double eps = epsilon_total(theta, tau, dynamics);
  return {theta, gamma, n, cs.c12, cs.c23, cs.c13_prime, cs.lg_quantity, eps,
          violation_verdict(cs, eps)};
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> thetas = config.theta.values();
  const std::vector<double> gammas = config.gamma.values();
  struct Point {
    double theta, gamma;
    int n;
  };
  std::vector<Point> points;
  points.reserve(config.n_values.size() * gammas.size() * thetas.size());
  for (int n : config.n_values) {
    for (double g : gammas) {
      for (double t : thetas) points.push_back({t, g, n});
    }
  }

  std::vector<SweepRecord> out(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        const Point& p = points[i];
        out[i] = evaluate_point(p.theta, p.gamma, p.n, config.omega, config.m);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = points.size();
      }
    }
  };

  unsigned workers = config.workers == 0 ? std::thread::hardware_concurrency() : config.workers;
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, points.size())));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double violation_margin(double theta, double gamma, int n, double omega, int m,
                        Criterion criterion) {
  const double tau = qnd_interval(omega, m);
  const LindbladSpec dynamics(HamiltonianSpec(omega), gamma);
  const double lg = lg_quantity(build_protocol_schedule(theta, n, tau, dynamics)).lg_quantity;
  if (criterion == Criterion::Lenient) return lg;
  return lg + epsilon_total(theta, tau, dynamics);
}

ViolationWindow violation_window(int n, double gamma, double omega, int m, Criterion criterion) {
  auto violates = [&](double theta) {
    return violation_margin(theta, gamma, n, omega, m, criterion) < 0.0;
  };
  const auto steps = static_cast<std::size_t>(std::llround(1.0 / kOnsetScanStep));
  const double step = kPi / static_cast<double>(steps);
  const double width = kOnsetBisectWidth * kPi;

  ViolationWindow w;
  std::size_t i = 0;
  while (i <= steps && !violates(step * static_cast<double>(i))) ++i;
  if (i > steps) return w;
  w.found = true;
  if (i == 0) {
    w.lower = 0.0;
  } else {
    std::tie(w.lower, w.lower_bracket) =
        bisect_edge(step * static_cast<double>(i - 1), step * static_cast<double>(i), width, violates);
  }
  std::size_t j = i + 1;
  while (j <= steps && violates(step * static_cast<double>(j))) ++j;
  if (j > steps) {
    w.upper = kPi;
  } else {
    std::tie(w.upper, w.upper_bracket) =
        bisect_edge(step * static_cast<double>(j), step * static_cast<double>(j - 1), width, violates);
  }
  return w;
}

MarginMinimum minimum_margin(double gamma, int n, double omega, int m, Criterion criterion) {
  auto margin = [&](double theta) {
    return violation_margin(theta, gamma, n, omega, m, criterion);
  };
  constexpr int kScan = 2048;
  const double h = 2.0 * kPi / kScan;
  MarginMinimum best{0.0, margin(0.0)};
  for (int k = 1; k < kScan; ++k) {
    const double theta = h * k;
    const double v = margin(theta);
    if (v < best.margin) best = {theta, v};
  }
  // Golden-section refinement inside the neighbouring scan cells.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best.theta - h;
  double b = best.theta + h;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = margin(c);
  double fd = margin(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = margin(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = margin(d);
    }
  }
  const double theta = 0.5 * (a + b);
  const double v = margin(theta);
  if (v < best.margin) best = {theta, v};
  return best;
}

GammaCutoff gamma_cutoff(int n, double omega, int m, Criterion criterion, double tolerance) {
  auto violates = [&](double gamma) {
    return minimum_margin(gamma, n, omega, m, criterion).margin < 0.0;
  };
  GammaCutoff cut;
  if (!violates(0.0)) return cut;
  double bad = 0.0;
  double ok = 1e-3;
  while (violates(ok)) {
    bad = ok;
    ok *= 2.0;
    if (ok > 1e3) return cut;
  }
  cut.found = true;
  std::tie(cut.gamma, cut.bracket) = bisect_edge(ok, bad, tolerance, violates);
  return cut;
}

}  // namespace adroit
