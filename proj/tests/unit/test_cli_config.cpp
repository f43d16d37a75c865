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


#include <gtest/gtest.h>

#include "hp_config.hpp"

namespace ctoq::cli {
namespace {

TEST(ParseConfig, FullExample) {
  const RunConfig c = parse_config_string(
      "# sweep\n"
      "N = 3\n"
      "k = 1\n"
      "ell = 2,3, 4   # three values\n"
      "xi = mixed:0.5,0.25,0.25\n"
      "seed = 42\n"
      "trials = 500\n"
      "epsilon = 0.75\n"
      "swap_bases = true\n");
  EXPECT_EQ(c.n, 3u);
  EXPECT_EQ(c.k, 1u);
  EXPECT_EQ(c.ells, (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(c.xi.kind, XiSpec::Kind::Mixed);
  EXPECT_EQ(c.xi.spectrum.size(), 3u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.trials, 500u);
  EXPECT_DOUBLE_EQ(*c.epsilon, 0.75);
  EXPECT_TRUE(c.swap_bases);
}

TEST(ParseConfig, RangeAndDefaults) {
  const RunConfig c = parse_config_string("N=2\nk=1\nell=0..3\ntrials=1\n");
  EXPECT_EQ(c.ells, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(c.xi.kind, XiSpec::Kind::Pure);
  EXPECT_FALSE(c.seed.has_value());
  EXPECT_FALSE(c.epsilon.has_value());
  EXPECT_FALSE(c.swap_bases);
}

TEST(ParseConfig, Rejects) {
  const char* bad[] = {
      "N=2\nk=1\nell=1\ntrials=0\n",            // zero trials
      "N=2\nk=0\nell=1\ntrials=1\n",            // no message
      "N=2\nk=1\nell=4\ntrials=1\n",            // ell > N + k
      "N=2\nk=1\ntrials=1\n",                   // missing ell
      "N=2\nk=1\nell=1\ntrials=1\nfoo=1\n",     // unknown key
      "N=2\nN=3\nk=1\nell=1\ntrials=1\n",       // duplicate
      "N=-1\nk=1\nell=1\ntrials=1\n",           // negative
      "N=2\nk=1\nell=3..1\ntrials=1\n",         // empty range
      "N=2\nk=1\nell=1\ntrials=1\nxi=thermal\n",
      "N=1\nk=1\nell=1\ntrials=1\nxi=mixed:0.5,0.2,0.3\n",
      "N=2\nk=1\nell=1\ntrials=1\nepsilon=abc\n",
      "N=2\nk=1\nell=1\ntrials=1\nswap_bases=yes\n",
      "N 2\n",
  };
  for (const char* text : bad) EXPECT_THROW(parse_config_string(text), ConfigError) << text;
}

TEST(ToHpConfig, BuildsState) {
  const RunConfig c = parse_config_string("N=2\nk=1\nell=1,2\ntrials=3\nxi=maximally_mixed\n");
  const HpConfig h = to_hp_config(c, 2, 5);
  EXPECT_EQ(h.n_qubits_rad, 2u);
  EXPECT_EQ(h.seed, 5u);
  EXPECT_EQ(h.initial_state.dim(), 4u);
  EXPECT_NO_THROW(h.validate());
  const RunConfig neg = parse_config_string("N=1\nk=1\nell=1\ntrials=1\nxi=mixed:-1,2\n");
  EXPECT_THROW(to_hp_config(neg, 1, 0), ConfigError);
}

TEST(LoadConfig, MissingFile) { EXPECT_THROW(load_config("/nonexistent/cfg.txt"), ConfigError); }

}  // namespace
}  // namespace ctoq::cli
