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

// Randomized property suites. Each instance yields named checks with a signed
// slack (bound − value, tolerance included); a negative slack is a violation.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "ctoq/ctoq.hpp"
#include "ctoq/instances.hpp"
#include "ctoq/ppgm.hpp"

namespace ctoq {

struct Check {
  std::string label;
  double slack;
};

struct CheckSummary {
  std::size_t count = 0;
  std::size_t violations = 0;
  double worst_slack = kInfinity;
  std::size_t worst_instance = 0;
};

struct SuiteReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t skipped = 0;
  std::size_t errors = 0;
  std::vector<std::string> error_messages;
  std::map<std::string, CheckSummary> checks;

  [[nodiscard]] std::size_t violations() const {
    std::size_t v = errors;
    for (const auto& [_, c] : checks) v += c.violations;
    return v;
  }
  [[nodiscard]] bool passed() const { return violations() == 0; }
  [[nodiscard]] double worst_slack() const {
    double w = kInfinity;
    for (const auto& [_, c] : checks) w = std::min(w, c.worst_slack);
    return w;
  }
};

/// Outcome of one instance: its checks, or a skip, or an error message.
struct InstanceOutcome {
  std::vector<Check> checks;
  bool skipped = false;
  std::string error;
};

using InstanceFn = std::function<InstanceOutcome(std::size_t index, Rng& rng)>;

inline constexpr double kBoundTol = 1e-9;
inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kMubXiTol = 1e-12;
inline constexpr double kSandwichTol = 1e-6;
inline const std::vector<std::size_t> kSuiteDims{2, 3, 4};

/// Dimension of instance `index`: instances are spread evenly over kSuiteDims.
inline std::size_t suite_dim(std::size_t index) { return kSuiteDims[index % kSuiteDims.size()]; }

inline SuiteReport run_instances(const std::string& name, std::size_t count, std::uint64_t seed,
                                 const InstanceFn& fn, unsigned threads = 1) {
  std::vector<InstanceOutcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      Rng rng = Rng::stream(seed, i);
      try {
        outcomes[i] = fn(i, rng);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  SuiteReport rep;
  rep.suite = name;
  rep.instances = count;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& o = outcomes[i];
    if (!o.error.empty()) {
      ++rep.errors;
      if (rep.error_messages.size() < 5) rep.error_messages.push_back("instance " + std::to_string(i) + ": " + o.error);
      continue;
    }
    if (o.skipped) {
      ++rep.skipped;
      continue;
    }
    for (const auto& c : o.checks) {
      auto& s = rep.checks[c.label];
      ++s.count;
      if (c.slack < 0.0 || std::isnan(c.slack)) ++s.violations;
      if (c.slack < s.worst_slack || std::isnan(c.slack)) {
        s.worst_slack = c.slack;
        s.worst_instance = i;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Instance bodies
// ---------------------------------------------------------------------------

/// Decoding error against the main bound, for both assignments of (E, F).
inline InstanceOutcome thm1_instance(std::size_t d, Rng& rng) {
  const DecodingInstance in = random_decoding_instance(d, rng, false);
  const auto [ef, fe] = theorem1_report_both_orders(in.channel, in.povm_e, in.povm_f, in.e_basis, in.f_basis);
  return {{{"delta_q <= thm1 bound (E,F)", ef.bound_thm1 + kBoundTol - ef.delta_q},
           {"delta_q <= thm1 bound (F,E)", fe.bound_thm1 + kBoundTol - fe.delta_q}}};
}

inline InstanceOutcome cor1_instance(std::size_t d, Rng& rng) {
  const DecodingInstance in = random_decoding_instance(d, rng, true);
  const ErrorReport r = theorem1_report(in.channel, in.povm_e, in.povm_f, in.e_basis, in.f_basis);
  const double loose =
      (1.0 + std::numbers::sqrt2) * std::sqrt(std::max({r.delta_cl_e, r.delta_cl_f, 0.0}));
  return {{{"delta_q <= cor1 bound", r.bound_cor1 + kBoundTol - r.delta_q},
           {"delta_q <= (1+sqrt2) max sqrt(delta_W)", loose + kBoundTol - r.delta_q}}};
}

/// The probability-of-error and trace-norm forms of the classical error agree.
inline InstanceOutcome error_forms_instance(std::size_t d, Rng& rng) {
  const DecodingInstance in = random_decoding_instance(d, rng, rng.uniform() < 0.5);
  InstanceOutcome o;
  const double a = delta_cl(in.povm_e, in.channel, in.e_basis);
  const double b = delta_cl_trace_norm(in.povm_e, in.channel, in.e_basis);
  o.checks.push_back({"|sum form - trace-norm form|", kIdentityTol - std::abs(a - b)});
  return o;
}

inline InstanceOutcome appx_a_instance(std::size_t d, Rng& rng) {
  const DecodingInstance in = random_decoding_instance(d, rng, false);
  const double xi = xi_ef(in.channel, in.povm_f, in.e_basis, in.f_basis);
  const XiBounds b = xi_bounds(in.channel, in.povm_f, in.e_basis, in.f_basis);
  const DecodingInstance mub = random_decoding_instance(d, rng, true);
  const double xi_mub = xi_ef(mub.channel, mub.povm_f, mub.e_basis, mub.f_basis);
  return {{{"xi <= 1 - min F_BC", b.eq15 + kBoundTol - xi},
           {"xi <= averaged bound", b.eq17 + kBoundTol - xi},
           {"|xi| on MUB pairs", kMubXiTol - std::abs(xi_mub)}}};
}

/// A random channel and basis with a well-conditioned pPGM, or a skip.
inline std::optional<PpgmBundle> ppgm_instance_bundle(std::size_t d, Rng& rng) {
  const Channel ch = low_rank_test_channel(d, rng);
  const OrthoBasis basis = random_basis(d, rng);
  PpgmBundle b = build_ppgm(ch, basis);
  if (b.ill_conditioned()) return std::nullopt;
  return b;
}

inline InstanceOutcome prop2_instance(std::size_t d, Rng& rng) {
  const auto b = ppgm_instance_bundle(d, rng);
  InstanceOutcome o;
  if (!b) {
    o.skipped = true;
    return o;
  }
  const double err = delta_cl(*b);
  const double hb = appendix_b_bound(*b);
  const Prop2Bound p = prop2_bound(*b);
  o.checks = {{"delta_cl <= projector bound", hb + kBoundTol - err},
              {"projector bound <= sum form", p.sum_form + kBoundTol - hb},
              {"|sum form - entropy form|", kIdentityTol - std::abs(p.sum_form - p.entropy_form)},
              {"residual weight", kBoundTol - residual_weight(*b)}};
  return o;
}

inline InstanceOutcome appx_b_instance(std::size_t d, Rng& rng) {
  const auto b = ppgm_instance_bundle(d, rng);
  InstanceOutcome o;
  if (!b) {
    o.skipped = true;
    return o;
  }
  const double err = delta_cl(*b);
  const double hb = appendix_b_bound(*b);
  o.checks = {{"delta_cl <= projector bound", hb + kBoundTol - err},
              {"delta_cl <= 4 x projector bound", 4.0 * hb + kBoundTol - err}};
  return o;
}

/// POVMs read off a reference decoder, and the decoder rebuilt from them.
inline InstanceOutcome eq18_instance(std::size_t d, Rng& rng) {
  const ReferenceDecoderInstance in = random_reference_decoder_instance(d, rng);
  const double dq_ref = delta_q(in.decoder, in.channel);
  const Povm pe = povm_from_decoder(in.decoder, in.e_basis);
  const Povm pf = povm_from_decoder(in.decoder, in.f_basis);
  const double de = delta_cl(pe, in.channel, in.e_basis);
  const double df = delta_cl(pf, in.channel, in.f_basis);
  const CtoQDecoder dec = build_ctoq(pe, pf, in.e_basis, in.f_basis);
  const double dq = delta_q(dec.total, in.channel);
  return {{{"delta_cl(E) <= delta_q(reference)", dq_ref + kIdentityTol - de},
           {"delta_cl(F) <= delta_q(reference)", dq_ref + kIdentityTol - df},
           {"delta_q <= (1+sqrt2) sqrt(delta_q(reference))",
            (1.0 + std::numbers::sqrt2) * std::sqrt(std::max(dq_ref, 0.0)) + kSandwichTol - dq}}};
}

/// Coherent measurement of a channel that is block diagonal in E reproduces the
/// noisy GHZ state.
inline InstanceOutcome ghz_instance(std::size_t d, Rng& rng) {
  const BlockInstance in = random_block_instance(d, rng.integer(1, 2), rng.integer(1, 3), rng);
  const NaimarkExtension ext = naimark_extend(in.povm_e);
  const Channel coherent = build_coherent_measurement(ext, in.e_basis);
  const Operator got = coherent_measurement_output(coherent, in.channel);
  const Operator want = noisy_ghz_state(in.channel, in.e_basis);
  return {{{"delta_cl(E) == 0", kBoundTol - std::abs(delta_cl(in.povm_e, in.channel, in.e_basis))},
           {"trace distance to GHZ construction", kBoundTol - trace_distance(got, want)}}};
}

// ---------------------------------------------------------------------------
// Suite registry
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm1", "cor1", "prop2", "appx_a", "appx_b", "eq18", "ghz", "error_forms"};
  return names;
}

inline bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

/// Runs `instances` instances of the named suite. For thm1 and cor1 the count is
/// per dimension in {2, 3, 4}; the others spread the count over those dimensions.
inline SuiteReport run_suite(const std::string& name, std::size_t instances, std::uint64_t seed, unsigned threads = 1) {
  using Body = InstanceOutcome (*)(std::size_t, Rng&);
  Body body = nullptr;
  bool per_dim = false;
  if (name == "thm1") body = thm1_instance, per_dim = true;
  else if (name == "cor1") body = cor1_instance, per_dim = true;
  else if (name == "error_forms") body = error_forms_instance;
  else if (name == "appx_a") body = appx_a_instance;
  else if (name == "prop2") body = prop2_instance;
  else if (name == "appx_b") body = appx_b_instance;
  else if (name == "eq18") body = eq18_instance;
  else if (name == "ghz") body = ghz_instance;
  else throw DomainError("unknown suite '" + name + "'");
  const std::size_t total = per_dim ? instances * kSuiteDims.size() : instances;
  return run_instances(
      name, total, seed, [body](std::size_t i, Rng& rng) { return body(suite_dim(i), rng); }, threads);
}

}  // namespace ctoq
