// Copyright 2026 The ctoq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// ctoq: property suites and Hayden–Preskill experiments from the command line.
//
// Exit status: 0 pass, 1 property violation, 2 usage or configuration error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctoq/haarhp.hpp"
#include "ctoq/verify.hpp"
#include "hp_config.hpp"

namespace {

using nlohmann::json;
using namespace ctoq;
using ctoq::cli::ConfigError;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr std::size_t kDefaultQubitCap = 8;

/// --seed, then the config file, then CTOQ_SEED, then 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const std::optional<std::uint64_t>& config) {
  if (flag) return *flag;
  if (config) return *config;
  if (const char* env = std::getenv("CTOQ_SEED"); env && *env) {
    try {
      return ctoq::cli::detail::parse_integer<std::uint64_t>("CTOQ_SEED", env);
    } catch (const ConfigError&) {
      throw ConfigError(std::string("CTOQ_SEED is not a non-negative integer: '") + env + "'");
    }
  }
  return 0;
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Non-finite values become null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << text;
}

class Stopwatch {
 public:
  [[nodiscard]] double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::size_t instances = 200;
  std::optional<std::uint64_t> seed;
  unsigned threads = default_threads();
  std::string out;
};

json suite_json(const SuiteReport& r, std::uint64_t seed) {
  json checks = json::object();
  for (const auto& [label, c] : r.checks)
    checks[label] = {{"count", c.count},
                     {"violations", c.violations},
                     {"worst_slack", num(c.worst_slack)},
                     {"worst_instance", c.worst_instance}};
  return {{"kind", "verify"}, {"suite", r.suite},    {"seed", seed},         {"version", kVersion},
          {"instances", r.instances}, {"skipped", r.skipped}, {"errors", r.errors}, {"error_messages", r.error_messages},
          {"checks", checks}, {"passed", r.passed()}};
}

int cmd_verify(const VerifyArgs& a) {
  if (!is_suite(a.suite)) {
    std::cerr << "unknown suite '" << a.suite << "'; expected one of:";
    for (const auto& n : suite_names()) std::cerr << ' ' << n;
    std::cerr << '\n';
    return kExitUsage;
  }
  const std::uint64_t seed = resolve_seed(a.seed, std::nullopt);
  const Stopwatch sw;
  const SuiteReport r = run_suite(a.suite, a.instances, seed, a.threads);

  std::printf("suite %s  seed %llu  instances %zu  skipped %zu  errors %zu\n", r.suite.c_str(),
              static_cast<unsigned long long>(seed), r.instances, r.skipped, r.errors);
  for (const auto& m : r.error_messages) std::printf("  error: %s\n", m.c_str());
  for (const auto& [label, c] : r.checks)
    std::printf("  %-48s n=%-5zu violations=%-4zu worst slack=%.3e\n", label.c_str(), c.count, c.violations,
                c.worst_slack);
  std::printf("%s (worst slack %.3e)\n", r.passed() ? "PASS" : "FAIL", r.worst_slack());
  std::fprintf(stderr, "wall-clock %.2f s\n", sw.seconds());

  if (!a.out.empty()) write_file(a.out, suite_json(r, seed).dump(2) + "\n");
  return r.passed() ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// hp-run
// ---------------------------------------------------------------------------

struct HpRunArgs {
  std::string config;
  std::string out;
  unsigned threads = default_threads();
  bool csv = false;
  bool allow_large = false;
  std::optional<std::uint64_t> seed;
};

void check_cap(const cli::RunConfig& c, bool allow_large) {
  if (!allow_large && c.n + c.k > kDefaultQubitCap)
    throw ConfigError("N + k = " + std::to_string(c.n + c.k) + " exceeds the cap of " +
                      std::to_string(kDefaultQubitCap) + " qubits; pass --allow-large to override");
}

/// The configured ε, or the midpoint of the admissible interval (2(1−Λ), 1].
std::optional<double> effective_epsilon(const cli::RunConfig& c, const HpConfig& h) {
  if (c.epsilon) return c.epsilon;
  const double lower = 2.0 * (1.0 - derived_quantities(h).lambda_xi);
  if (lower >= 1.0) return std::nullopt;
  return 0.5 * (std::max(lower, 0.0) + 1.0);
}

json config_json(const cli::RunConfig& c) {
  json j = {{"N", c.n}, {"k", c.k}, {"ell", c.ells}, {"xi", c.xi.to_string()}, {"trials", c.trials},
            {"swap_bases", c.swap_bases}};
  j["epsilon"] = c.epsilon ? json(*c.epsilon) : json(nullptr);
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  return j;
}

json trial_json(const TrialResult& r, std::size_t ell, std::uint64_t seed) {
  json j = {{"kind", "trial"}, {"seed", seed}, {"ell", ell}, {"trial", r.trial}, {"seed_stream", r.seed_stream}};
  if (!r.ok) {
    j["flags"] = {{"ok", false}};
    j["error"] = r.error;
    return j;
  }
  j["delta_cl_x"] = num(r.delta_cl_x);
  j["delta_cl_z"] = num(r.delta_cl_z);
  j["delta_q"] = num(r.delta_q);
  j["lambda_min"] = {{"x", num(r.lambda_min_x)}, {"z", num(r.lambda_min_z)}, {"s_in", num(r.lambda_min_s_in)}};
  j["bounds"] = {{"prop2_x", num(r.prop2_x)},   {"prop2_z", num(r.prop2_z)}, {"projector_x", num(r.appx_b_x)},
                 {"projector_z", num(r.appx_b_z)}, {"cor1", num(r.cor1_bound)}};
  j["pairwise_overlap"] = num(r.pairwise_overlap);
  json hz = json::array(), hx = json::array();
  for (double h : r.h2_z) hz.push_back(num(h));
  for (double h : r.h2_x) hx.push_back(num(h));
  j["h2"] = {{"pi", num(r.h2_pi)}, {"z", hz}, {"x", hx}};
  j["flags"] = {{"ok", true},
                {"ill_conditioned", r.ill_conditioned},
                {"prop2_violation", r.slack_prop2() < -kBoundSlack},
                {"cor1_violation", r.slack_cor1() < -kBoundSlack}};
  return j;
}

json mean_json(const MeanSe& m) { return {{"mean", num(m.mean)}, {"se", num(m.se)}, {"n", m.n}}; }

json summary_json(const HpSummary& s, std::size_t ell, std::uint64_t seed, const std::optional<double>& eps) {
  json j = {{"kind", "summary"},
            {"seed", seed},
            {"ell", ell},
            {"trials_ok", s.n_ok},
            {"trials_failed", s.n_failed},
            {"delta_cl_x", mean_json(s.delta_cl_x)},
            {"delta_cl_z", mean_json(s.delta_cl_z)},
            {"delta_cl", mean_json(s.delta_cl)},
            {"delta_q", mean_json(s.delta_q)},
            {"pairwise_overlap", mean_json(s.pairwise_overlap)},
            {"closed_form", num(s.closed_form)},
            {"z_score", num(s.z_score)},
            {"prop2_violations", s.prop2_violations},
            {"cor1_violations", s.cor1_violations},
            {"worst_prop2_slack", num(s.worst_prop2_slack)},
            {"worst_cor1_slack", num(s.worst_cor1_slack)},
            {"ill_conditioned", s.ill_conditioned},
            {"ell_th", num(s.derived.ell_th)},
            {"lambda_xi", num(s.derived.lambda_xi)},
            {"h2_xi", num(s.derived.h2_bin)}};
  j["epsilon"] = eps ? json(*eps) : json(nullptr);
  if (s.theorem3) {
    const auto& t = *s.theorem3;
    j["theorem3"] = {{"cl_bound", num(t.cl_bound)}, {"q_bound", num(t.q_bound)}, {"delta", num(t.delta_term)},
                     {"log2_delta", num(t.log2_delta)}, {"c", num(t.c)}, {"vacuous", t.vacuous}};
  } else {
    j["theorem3"] = nullptr;
  }
  if (s.min_eig_fraction) {
    j["min_eig"] = {{"fraction", num(*s.min_eig_fraction)}, {"threshold", num(s.min_eig_threshold)}};
  } else {
    j["min_eig"] = nullptr;
  }
  return j;
}

std::string csv_header() {
  return "ell,trial,seed_stream,ok,delta_cl_x,delta_cl_z,delta_q,lambda_min_x,lambda_min_z,lambda_min_s_in,"
         "prop2_x,prop2_z,projector_x,projector_z,cor1,pairwise_overlap,h2_pi,ill_conditioned\n";
}

std::string csv_row(const TrialResult& r, std::size_t ell) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, "%zu,%zu,%llu,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                ell, r.trial, static_cast<unsigned long long>(r.seed_stream), r.ok ? 1 : 0, r.delta_cl_x, r.delta_cl_z,
                r.delta_q, r.lambda_min_x, r.lambda_min_z, r.lambda_min_s_in, r.prop2_x, r.prop2_z, r.appx_b_x,
                r.appx_b_z, r.cor1_bound, r.pairwise_overlap, r.h2_pi, r.ill_conditioned ? 1 : 0);
  return buf;
}

/// Mean Δ_cl must not increase with ℓ by more than 2 combined standard errors.
struct MonotoneCheck {
  bool ok = true;
  std::vector<json> steps;
};

MonotoneCheck check_monotone(const std::vector<std::pair<std::size_t, HpSummary>>& by_ell) {
  MonotoneCheck m;
  auto sorted = by_ell;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    const MeanSe& lo = sorted[i - 1].second.delta_cl;
    const MeanSe& hi = sorted[i].second.delta_cl;
    const double allowance = 2.0 * std::sqrt(lo.se * lo.se + hi.se * hi.se);
    const bool ok = hi.mean <= lo.mean + allowance;
    m.ok = m.ok && ok;
    m.steps.push_back({{"from_ell", sorted[i - 1].first}, {"to_ell", sorted[i].first},
                       {"increase", num(hi.mean - lo.mean)}, {"allowance", num(allowance)}, {"ok", ok}});
  }
  return m;
}

int cmd_hp_run(const HpRunArgs& a) {
  const cli::RunConfig c = cli::load_config(a.config);
  check_cap(c, a.allow_large);
  const std::uint64_t seed = resolve_seed(a.seed, c.seed);
  const std::filesystem::path dir(a.out);
  std::filesystem::create_directories(dir);

  const Stopwatch sw;
  std::string jsonl;
  std::string csv = csv_header();
  std::vector<std::pair<std::size_t, HpSummary>> summaries;
  json counts = json::array();
  bool all_ok = true;
  std::optional<double> eps_used;

  for (std::size_t ell : c.ells) {
    // Every ℓ reuses the same per-trial unitaries (same master seed).
    const HpConfig h = cli::to_hp_config(c, ell, seed);
    h.validate();
    const std::optional<double> eps = effective_epsilon(c, h);
    eps_used = eps;
    const auto results = run_experiment(h, a.threads);
    const HpSummary s = summarize(h, results, eps);
    for (const auto& r : results) {
      jsonl += trial_json(r, ell, seed).dump() + "\n";
      if (a.csv) csv += csv_row(r, ell);
    }
    jsonl += summary_json(s, ell, seed, eps).dump() + "\n";
    const bool ok = s.n_failed == 0 && s.prop2_violations == 0 && s.cor1_violations == 0;
    all_ok = all_ok && ok;
    counts.push_back({{"ell", ell}, {"trials", c.trials}, {"failed", s.n_failed},
                      {"prop2_violations", s.prop2_violations}, {"cor1_violations", s.cor1_violations},
                      {"passed", ok}});
    summaries.emplace_back(ell, s);

    std::printf("ell=%-2zu  dcl_x=%.6f  dcl_z=%.6f  dq=%.6f  overlap=%.6f (closed form %.6f, z=%+.2f)  "
                "violations prop2=%zu cor1=%zu failed=%zu\n",
                ell, s.delta_cl_x.mean, s.delta_cl_z.mean, s.delta_q.mean, s.pairwise_overlap.mean, s.closed_form,
                s.z_score, s.prop2_violations, s.cor1_violations, s.n_failed);
  }

  const MonotoneCheck mono = check_monotone(summaries);
  jsonl += json({{"kind", "sweep"}, {"seed", seed}, {"monotone_delta_cl", mono.ok}, {"steps", mono.steps}}).dump() + "\n";
  all_ok = all_ok && mono.ok;

  write_file(dir / "results.jsonl", jsonl);
  std::vector<std::string> files{"results.jsonl"};
  if (a.csv) {
    write_file(dir / "results.csv", csv);
    files.emplace_back("results.csv");
  }
  json manifest = {{"command", "hp-run"}, {"version", kVersion},   {"seed", seed},
                   {"config", config_json(c)}, {"per_ell", counts}, {"monotone_delta_cl", mono.ok},
                   {"passed", all_ok},         {"files", files}};
  manifest["epsilon_used"] = eps_used ? json(*eps_used) : json(nullptr);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  std::printf("%s  monotone=%s  output in %s\n", all_ok ? "PASS" : "FAIL", mono.ok ? "yes" : "no",
              dir.string().c_str());
  std::fprintf(stderr, "wall-clock %.2f s\n", sw.seconds());
  return all_ok ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// haar-mean
// ---------------------------------------------------------------------------

struct HaarMeanArgs {
  std::string config;
  std::string out;
  bool allow_large = false;
  std::optional<std::uint64_t> seed;
};

int cmd_haar_mean(const HaarMeanArgs& a) {
  const cli::RunConfig c = cli::load_config(a.config);
  check_cap(c, a.allow_large);
  const std::uint64_t seed = resolve_seed(a.seed, c.seed);
  const Stopwatch sw;
  json rows = json::array();
  bool ok = true;
  for (std::size_t ell : c.ells) {
    const HpConfig h = cli::to_hp_config(c, ell, seed);
    h.validate();
    const double closed = haar_mean_pairwise_overlap(h);
    const MeanSe mc = sample_pairwise_overlap(h);
    const double z = z_score(mc, closed);
    const bool row_ok = std::abs(z) <= 3.0;
    ok = ok && row_ok;
    std::printf("N=%zu k=%zu ell=%zu xi=%s  closed form %.12g  Monte Carlo %.12g  SE %.3e  z %+.3f  %s\n", c.n, c.k,
                ell, c.xi.to_string().c_str(), closed, mc.mean, mc.se, z, row_ok ? "ok" : "MISMATCH");
    rows.push_back({{"ell", ell}, {"closed_form", num(closed)}, {"monte_carlo", num(mc.mean)}, {"se", num(mc.se)},
                    {"z_score", num(z)}, {"samples", mc.n}, {"ok", row_ok}});
  }
  std::fprintf(stderr, "wall-clock %.2f s\n", sw.seconds());
  if (!a.out.empty()) {
    const json report = {{"kind", "haar-mean"}, {"version", kVersion}, {"seed", seed},
                         {"config", config_json(c)}, {"rows", rows}, {"passed", ok}};
    write_file(a.out, report.dump(2) + "\n");
  }
  return ok ? kExitPass : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical-to-quantum decoder checks and Hayden-Preskill experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a randomized property suite");
  verify->add_option("suite", va.suite, "thm1 | cor1 | prop2 | appx_a | appx_b | eq18 | ghz | error_forms")->required();
  verify->add_option("--instances", va.instances, "Instance count (per dimension for thm1 and cor1)")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", va.seed, "Master seed (falls back to CTOQ_SEED, then 0)");
  verify->add_option("--threads", va.threads, "Worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--out", va.out, "Write the report as JSON to this file");

  HpRunArgs ha;
  auto* hp = app.add_subcommand("hp-run", "Run Hayden-Preskill trials over an ell sweep");
  hp->add_option("--config", ha.config, "Configuration file")->required();
  hp->add_option("--out", ha.out, "Output directory")->required();
  hp->add_option("--threads", ha.threads, "Worker threads")->check(CLI::PositiveNumber);
  hp->add_flag("--csv", ha.csv, "Also write results.csv");
  hp->add_flag("--allow-large", ha.allow_large, "Lift the N + k <= 8 cap");
  hp->add_option("--seed", ha.seed, "Override the configured seed");

  HaarMeanArgs ma;
  auto* hm = app.add_subcommand("haar-mean", "Compare the Haar-mean overlap closed form with Monte Carlo");
  hm->add_option("--config", ma.config, "Configuration file")->required();
  hm->add_option("--out", ma.out, "Write the report as JSON to this file");
  hm->add_flag("--allow-large", ma.allow_large, "Lift the N + k <= 8 cap");
  hm->add_option("--seed", ma.seed, "Override the configured seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(va);
    if (*hp) return cmd_hp_run(ha);
    if (*hm) return cmd_haar_mean(ma);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ctoq::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ctoq::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}
