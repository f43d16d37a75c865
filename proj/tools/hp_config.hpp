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

// Plain-text experiment configuration: one `key = value` per line, `#` starts
// a comment.
//
//   N = 3
//   k = 1
//   ell = 2,3,4        # or a range 0..3, or a single value
//   xi = pure          # pure | maximally_mixed | mixed:0.5,0.25,0.25
//   seed = 42
//   trials = 500
//   epsilon = 0.5      # optional
//   swap_bases = false # optional

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ctoq/haarhp.hpp"

namespace ctoq::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<std::size_t> ells;
  XiSpec xi;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 0;
  std::optional<double> epsilon;
  bool swap_bases = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end)
    throw ConfigError("config: '" + key + "' expects a non-negative integer, got '" + text + "'");
  return v;
}

inline double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw ConfigError("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  }
}

inline std::vector<std::size_t> parse_ells(const std::string& text) {
  std::vector<std::size_t> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_integer<std::size_t>("ell", trim(text.substr(0, dots)));
    const auto hi = parse_integer<std::size_t>("ell", trim(text.substr(dots + 2)));
    if (hi < lo) throw ConfigError("config: empty ell range '" + text + "'");
    for (std::size_t l = lo; l <= hi; ++l) out.push_back(l);
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(parse_integer<std::size_t>("ell", part));
  if (out.empty()) throw ConfigError("config: 'ell' is empty");
  return out;
}

inline XiSpec parse_xi(const std::string& text) {
  XiSpec s;
  if (text == "pure") {
    s.kind = XiSpec::Kind::Pure;
  } else if (text == "maximally_mixed") {
    s.kind = XiSpec::Kind::MaximallyMixed;
  } else if (text.rfind("mixed:", 0) == 0) {
    s.kind = XiSpec::Kind::Mixed;
    for (const auto& part : split(text.substr(6), ',')) s.spectrum.push_back(parse_real("xi", part));
    if (s.spectrum.empty()) throw ConfigError("config: 'mixed:' needs a spectrum");
  } else {
    throw ConfigError("config: 'xi' must be pure, maximally_mixed or mixed:<csv>, got '" + text + "'");
  }
  return s;
}

inline bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("config: '" + key + "' expects true or false");
}

}  // namespace detail

inline RunConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    if (!kv.emplace(key, value).second) throw ConfigError("config: duplicate key '" + key + "'");
  }

  RunConfig c;
  for (const auto& [key, value] : kv) {
    if (key == "N") c.n = detail::parse_integer<std::size_t>(key, value);
    else if (key == "k") c.k = detail::parse_integer<std::size_t>(key, value);
    else if (key == "ell") c.ells = detail::parse_ells(value);
    else if (key == "xi") c.xi = detail::parse_xi(value);
    else if (key == "seed") c.seed = detail::parse_integer<std::uint64_t>(key, value);
    else if (key == "trials") c.trials = detail::parse_integer<std::size_t>(key, value);
    else if (key == "epsilon") c.epsilon = detail::parse_real(key, value);
    else if (key == "swap_bases") c.swap_bases = detail::parse_bool(key, value);
    else throw ConfigError("config: unknown key '" + key + "'");
  }
  for (const char* req : {"N", "k", "ell", "trials"})
    if (!kv.count(req)) throw ConfigError(std::string("config: missing required key '") + req + "'");
  if (c.k == 0) throw ConfigError("config: k must be >= 1");
  if (c.trials == 0) throw ConfigError("config: trials must be >= 1");
  for (auto l : c.ells)
    if (l > c.n + c.k) throw ConfigError("config: ell = " + std::to_string(l) + " exceeds N + k");
  if (c.xi.kind == XiSpec::Kind::Mixed && c.xi.spectrum.size() > (std::size_t{1} << c.n))
    throw ConfigError("config: xi spectrum has more than 2^N entries");
  return c;
}

inline RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

/// The experiment configuration for one value of ℓ.
inline HpConfig to_hp_config(const RunConfig& c, std::size_t ell, std::uint64_t seed) {
  HpConfig h;
  h.n_qubits_bh = c.n;
  h.n_qubits_msg = c.k;
  h.n_qubits_rad = ell;
  try {
    h.initial_state = make_xi(c.xi, c.n);
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  h.seed = seed;
  h.trials = c.trials;
  h.swap_bases = c.swap_bases;
  return h;
}

}  // namespace ctoq::cli
