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

#include "adroit/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "adroit/sampling.hpp"

namespace adroit {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename Int>
Int parse_integer(const std::string& text, const std::string& field) {
  const std::string t = trimmed(text);
  Int v{};
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ConfigError(field, "cannot parse integer '" + text + "'");
  }
  return v;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

KeyValues config_echo(const std::string& command, const CliSettings& s) {
  const SweepConfig& c = s.sweep;
  return {
      {"command", command},
      {"theta", c.theta.to_string()},
      {"gamma", c.gamma.to_string()},
      {"n", join_ints(c.n_values)},
      {"omega", format_double(c.omega)},
      {"m", std::to_string(c.m)},
      {"tau", format_double(c.tau())},
      {"criterion", std::string(to_string(c.criterion))},
      {"shots", c.shots ? std::to_string(*c.shots) : "none"},
      {"seed", c.seed ? std::to_string(*c.seed) : "none"},
      {"format", s.format == OutputFormat::Csv ? "csv" : "jsonl"},
      {"workers", std::to_string(c.workers)},
  };
}

void emit_sweep(std::ostream& os, const CliSettings& s, const std::string& command,
                const std::vector<SweepRecord>& records) {
  write_block(os, s.format, "config", config_echo(command, s));
  write_sweep_header(os, s.format);
  for (const SweepRecord& r : records) write_sweep_record(os, s.format, r);
}

void cmd_fig2(CliSettings s, std::ostream& os) {
  s.sweep.gamma = Range{0.0, 0.0, 1};
  s.sweep.validate();
  const std::vector<SweepRecord> records = run_sweep(s.sweep);
  emit_sweep(os, s, "fig2", records);

  KeyValues summary;
  for (int n : s.sweep.n_values) {
    const ViolationWindow w = violation_window(n, 0.0, s.sweep.omega, s.sweep.m, s.sweep.criterion);
    const std::string key = "onset.n" + std::to_string(n);
    if (!w.found) {
      summary.emplace_back(key, "none");
      continue;
    }
    summary.emplace_back(key + ".theta", format_double(w.lower));
    summary.emplace_back(key + ".theta_over_pi", format_double(w.lower / kPi));
    summary.emplace_back(key + ".bracket", format_double(w.lower_bracket));
  }
  write_block(os, s.format, "summary", summary);
}

void cmd_fig3(CliSettings s, std::ostream& os) {
  s.sweep.validate();
  if (s.sweep.n_values.size() != 1) throw ConfigError("n", "fig3 takes a single value of n");
  const int n = s.sweep.n_values.front();
  const std::vector<SweepRecord> records = run_sweep(s.sweep);
  emit_sweep(os, s, "fig3", records);

  std::optional<double> grid_strict, grid_lenient;
  for (const SweepRecord& r : records) {
    if (is_violation(r.verdict, Criterion::Strict)) grid_strict = std::max(grid_strict.value_or(r.gamma), r.gamma);
    if (is_violation(r.verdict, Criterion::Lenient)) grid_lenient = std::max(grid_lenient.value_or(r.gamma), r.gamma);
  }
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("none"); };
  KeyValues summary = {{"max_gamma_grid.strict", opt(grid_strict)},
                       {"max_gamma_grid.lenient", opt(grid_lenient)}};
  for (Criterion c : {Criterion::Strict, Criterion::Lenient}) {
    const GammaCutoff cut = gamma_cutoff(n, s.sweep.omega, s.sweep.m, c);
    const std::string key = "gamma_cutoff." + std::string(to_string(c));
    summary.emplace_back(key, cut.found ? format_double(cut.gamma) : "none");
    summary.emplace_back(key + ".bracket", format_double(cut.bracket));
  }
  write_block(os, s.format, "summary", summary);
}

void cmd_adroitness(CliSettings s, std::ostream& os) {
  s.sweep.validate();
  const SweepConfig& c = s.sweep;
  const bool mc = c.shots.has_value();
  const std::uint64_t seed = c.seed.value_or(0);
  if (mc && !c.seed) s.sweep.seed = seed;

  std::vector<Row> rows;
  std::uint64_t point = 0;
  for (double gamma : c.gamma.values()) {
    for (double theta : c.theta.values()) {
      const LindbladSpec dynamics(HamiltonianSpec(c.omega), gamma);
      const auto battery = adroitness_experiments(theta, c.tau(), dynamics);
      double total = 0.0;
      double total_mc = 0.0;
      std::uint64_t stream = point * battery.size();
      for (const AdroitnessExperiment& e : battery) {
        const double eps = epsilon_adroitness(e.schedule);
        total += eps;
        Row row = {{"theta", format_double(theta)},
                   {"gamma", format_double(gamma)},
                   {"experiment", std::string(1, e.id)},
                   {"eps", format_double(eps)}};
        if (mc) {
          const std::uint64_t sub = derive_seed(seed, stream++);
          const AdroitnessEstimate est = sample_adroitness(e.schedule, *c.shots, sub, c.workers);
          total_mc += est.epsilon;
          row.emplace_back("eps_mc", format_double(est.epsilon));
          row.emplace_back("se_pp", format_double(est.cell_standard_error[0]));
          row.emplace_back("se_pm", format_double(est.cell_standard_error[1]));
          row.emplace_back("se_mp", format_double(est.cell_standard_error[2]));
          row.emplace_back("se_mm", format_double(est.cell_standard_error[3]));
          row.emplace_back("seed", std::to_string(sub));
        }
        rows.push_back(std::move(row));
      }
      Row row = {{"theta", format_double(theta)},
                 {"gamma", format_double(gamma)},
                 {"experiment", "total"},
                 {"eps", format_double(total)}};
      if (mc) {
        row.emplace_back("eps_mc", format_double(total_mc));
        for (const char* k : {"se_pp", "se_pm", "se_mp", "se_mm"}) row.emplace_back(k, "");
        row.emplace_back("seed", std::to_string(seed));
      }
      rows.push_back(std::move(row));
      ++point;
    }
  }
  write_block(os, s.format, "config", config_echo("adroitness", s));
  write_rows(os, s.format, rows);
  if (mc) {
    write_block(os, s.format, "summary",
                {{"note", "eps_mc is a plug-in estimate biased upward at finite shots; "
                          "violation verdicts use the exact eps only"}});
  }
}

void cmd_classic(CliSettings s, std::ostream& os) {
  s.sweep.validate();
  const SweepConfig& c = s.sweep;
  const CorrelatorSet cs = classic_lg(c.omega);
  // Without an adroitness battery only the lenient reading applies.
  const Verdict verdict = cs.lg_quantity < 0.0 ? Verdict::ViolatesLenient : Verdict::NoViolation;
  Row row = {{"omega", format_double(c.omega)},     {"c12", format_double(cs.c12)},
             {"c23", format_double(cs.c23)},        {"c13_prime", format_double(cs.c13_prime)},
             {"lg_quantity", format_double(cs.lg_quantity)}, {"eps_total", format_double(0.0)},
             {"verdict", std::string(to_string(verdict))}};
  if (c.shots) {
    const std::uint64_t seed = c.seed.value_or(0);
    s.sweep.seed = seed;
    const SampledCorrelators mc = sample_lg_quantity(classic_schedule(c.omega), *c.shots, seed, c.workers);
    row.emplace_back("c12_mc", format_double(mc.c12.mean));
    row.emplace_back("c12_se", format_double(mc.c12.standard_error));
    row.emplace_back("c23_mc", format_double(mc.c23.mean));
    row.emplace_back("c23_se", format_double(mc.c23.standard_error));
    row.emplace_back("c13_prime_mc", format_double(mc.c13_prime.mean));
    row.emplace_back("c13_prime_se", format_double(mc.c13_prime.standard_error));
    row.emplace_back("seed", std::to_string(seed));
  }
  write_block(os, s.format, "config", config_echo("classic", s));
  const std::vector<Row> rows = {row};
  write_rows(os, s.format, rows);
  write_block(os, s.format, "summary",
              {{"note", "eps_total is not applicable to the classic test and is reported as 0"}});
}

void cmd_sweep(CliSettings s, std::ostream& os) {
  s.sweep.validate();
  const std::vector<SweepRecord> records = run_sweep(s.sweep);
  emit_sweep(os, s, "sweep", records);
  std::size_t strict = 0, lenient = 0;
  for (const SweepRecord& r : records) {
    strict += is_violation(r.verdict, Criterion::Strict);
    lenient += is_violation(r.verdict, Criterion::Lenient);
  }
  const std::size_t chosen = s.sweep.criterion == Criterion::Strict ? strict : lenient;
  write_block(os, s.format, "summary",
              {{"points", std::to_string(records.size())},
               {"violating.strict", std::to_string(strict)},
               {"violating.lenient", std::to_string(lenient)},
               {"violating", std::to_string(chosen)}});
}

void cmd_check(const CliSettings& s, std::ostream& os) {
  if (s.in_path.empty()) throw ConfigError("in", "check needs --in");
  std::ifstream in(s.in_path);
  if (!in) throw ConfigError("in", "cannot open '" + s.in_path + "'");
  const std::vector<SweepRecord> records = read_sweep_records(in, s.format);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    const double sum = 1.0 + r.c12 + r.c23 + r.c13_prime;
    if (std::abs(r.lg_quantity - sum) > 1e-12) {
      throw NumericalError("record " + std::to_string(i) + ": lg_quantity != 1 + c12 + c23 + c13_prime");
    }
    if (r.verdict != violation_verdict(CorrelatorSet{r.c12, r.c23, r.c13_prime, r.lg_quantity}, r.eps_total)) {
      throw NumericalError("record " + std::to_string(i) + ": verdict inconsistent with lg_quantity and eps_total");
    }
  }
  write_sweep_header(os, s.format);
  for (const SweepRecord& r : records) write_sweep_record(os, s.format, r);
  write_block(os, s.format, "summary", {{"records", std::to_string(records.size())}, {"ok", "true"}});
}

}  // namespace

void apply_setting(CliSettings& settings, const std::string& key, const std::string& value,
                   int line) {
  try {
    SweepConfig& c = settings.sweep;
    if (key == "theta") {
      c.theta = parse_range(value, key);
    } else if (key == "gamma") {
      c.gamma = parse_range(value, key);
    } else if (key == "n") {
      std::vector<int> ns;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) ns.push_back(parse_integer<int>(item, key));
      if (ns.empty()) throw ConfigError(key, "need at least one value");
      c.n_values = ns;
    } else if (key == "omega") {
      c.omega = parse_number(value, key);
    } else if (key == "m") {
      c.m = parse_integer<int>(value, key);
    } else if (key == "criterion") {
      const auto crit = parse_criterion(trimmed(value));
      if (!crit) throw ConfigError(key, "expected strict or lenient, got '" + value + "'");
      c.criterion = *crit;
    } else if (key == "shots") {
      c.shots = parse_integer<std::size_t>(value, key);
    } else if (key == "seed") {
      c.seed = parse_integer<std::uint64_t>(value, key);
    } else if (key == "workers") {
      c.workers = parse_integer<unsigned>(value, key);
    } else if (key == "format") {
      const auto f = parse_output_format(trimmed(value));
      if (!f) throw ConfigError(key, "expected csv or jsonl, got '" + value + "'");
      settings.format = *f;
    } else if (key == "out") {
      settings.out_path = trimmed(value);
    } else if (key == "in") {
      settings.in_path = trimmed(value);
    } else {
      throw ConfigError(key, "unknown setting");
    }
    // Earlier settings were already checked, so any failure names `key`.
    c.validate();
  } catch (const ConfigError& e) {
    if (line == 0) throw;
    throw ConfigError(e.field(), e.what(), line);
  }
}

void apply_config_file(CliSettings& settings, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config", "expected key = value", line_no);
    apply_setting(settings, trimmed(line.substr(0, eq)), trimmed(line.substr(eq + 1)), line_no);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adroit-measurement Leggett-Garg simulator", "adroit_lg"};
  app.require_subcommand(1);

  struct Command {
    std::string name;
    std::function<void(const CliSettings&, std::ostream&)> run;
    std::function<void(CliSettings&)> defaults;
  };
  const std::vector<Command> commands = {
      {"fig2", cmd_fig2,
       [](CliSettings& s) { s.sweep.n_values = {1, 2, 3, 5, 10}; }},
      {"fig3", cmd_fig3,
       [](CliSettings& s) {
         s.sweep.theta = Range{0.5 * kPi, kPi, 101};
         s.sweep.gamma = Range{0.0, 0.015, 16};
       }},
      {"adroitness", cmd_adroitness,
       [](CliSettings& s) {
         s.sweep.theta = Range{0.75 * kPi, 0.75 * kPi, 1};
       }},
      {"classic", cmd_classic, [](CliSettings&) {}},
      {"sweep", cmd_sweep, [](CliSettings&) {}},
      {"check", [](const CliSettings& s, std::ostream& os) { cmd_check(s, os); },
       [](CliSettings&) {}},
  };
  const std::map<std::string, std::string> descriptions = {
      {"fig2", "L(theta) for several n with gamma = 0, plus violation onset angles"},
      {"fig3", "L and eps_total over a (theta, gamma) grid, plus gamma cutoffs"},
      {"adroitness", "epsilon-adroitness of the four-experiment battery"},
      {"classic", "standard three-time Leggett-Garg test"},
      {"sweep", "free-form (theta, gamma, n) grid"},
      {"check", "re-read a sweep table, verify it and emit its records"},
  };

  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"theta", "theta grid start:stop:steps in radians (\"pi\" suffix allowed)"},
      {"gamma", "gamma grid start:stop:steps"},
      {"n", "comma-separated list of n"},
      {"omega", "angular frequency"},
      {"m", "interval multiplier, tau = pi m / omega"},
      {"criterion", "strict|lenient"},
      {"shots", "Monte Carlo shots"},
      {"seed", "Monte Carlo seed"},
      {"format", "csv|jsonl"},
      {"out", "output path (default stdout)"},
      {"workers", "worker threads (0 = all cores)"},
      {"in", "input table (check)"},
  };

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> config_paths;
  std::map<std::string, CLI::App*> subs;
  for (const Command& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, descriptions.at(cmd.name));
    subs[cmd.name] = sub;
    for (const auto& [flag, help] : kFlags) {
      options[cmd.name][flag] = sub->add_option("--" + flag, values[cmd.name][flag], help);
    }
    sub->add_option("--config", config_paths[cmd.name], "plain key = value config file");
  }

  std::vector<const char*> argv = {"adroit_lg"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: kind=usage message=" << quote(e.what()) << '\n';
    return 2;
  }

  for (const Command& cmd : commands) {
    if (!subs[cmd.name]->parsed()) continue;
    CliSettings settings;
    try {
      cmd.defaults(settings);
      if (!config_paths[cmd.name].empty()) apply_config_file(settings, config_paths[cmd.name]);
      for (const auto& [flag, help] : kFlags) {
        if (options[cmd.name][flag]->count() > 0) apply_setting(settings, flag, values[cmd.name][flag]);
      }
      if (settings.out_path.empty()) {
        cmd.run(settings, out);
      } else {
        std::ofstream file(settings.out_path);
        if (!file) throw ConfigError("out", "cannot open '" + settings.out_path + "'");
        cmd.run(settings, file);
      }
    } catch (const ConfigError& e) {
      err << "error: kind=config field=" << e.field();
      if (e.line() > 0) err << " line=" << e.line();
      err << " message=" << quote(e.what()) << '\n';
      return 2;
    } catch (const ValidationError& e) {
      err << "error: kind=input message=" << quote(e.what()) << '\n';
      return 2;
    } catch (const std::exception& e) {
      err << "error: kind=runtime message=" << quote(e.what()) << '\n';
      return 1;
    }
    return 0;
  }
  err << "error: kind=usage message=\"no subcommand\"\n";
  return 2;
}

}  // namespace adroit
