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


// Decodes a qubit sent through a dephasing channel with the classical-to-quantum
// decoder, then runs a few Hayden-Preskill trials.

#include <cmath>
#include <cstdio>

#include "ctoq/ctoq.hpp"
#include "ctoq/haarhp.hpp"

int main() {
  using namespace ctoq;

  // ρ ↦ (1−p)ρ + p ZρZ: the Z basis survives, the X basis does not.
  const double p = 0.3;
  Matrix z = Matrix::Identity(2, 2);
  z(1, 1) = -1.0;
  const Channel dephasing({std::sqrt(1.0 - p) * Operator::identity(Dims{2}), Operator(std::sqrt(p) * z, Dims{2})},
                          Dims{2}, Dims{2});

  const OrthoBasis e = OrthoBasis::pauli(1, PauliAxis::Z);
  const OrthoBasis f = OrthoBasis::pauli(1, PauliAxis::X);
  const ErrorReport r = theorem1_report(dephasing, Povm::projective(e), Povm::projective(f), e, f);
  std::printf("dephasing p=%.2f: delta_cl(Z)=%.4f delta_cl(X)=%.4f xi=%.4f delta_q=%.4f bound=%.4f\n", p,
              r.delta_cl_e, r.delta_cl_f, r.xi_ef, r.delta_q, r.bound_thm1);

  // Two black-hole qubits, one message qubit, two radiated qubits.
  HpConfig cfg;
  cfg.n_qubits_bh = 2;
  cfg.n_qubits_msg = 1;
  cfg.n_qubits_rad = 2;
  cfg.initial_state = make_xi({}, cfg.n_qubits_bh);
  cfg.seed = 1;
  cfg.trials = 20;
  const HpSummary s = summarize(cfg, run_experiment(cfg), std::nullopt);
  std::printf("HP N=2 k=1 ell=2: mean delta_cl=%.4f +- %.4f, mean delta_q=%.4f, bound violations=%zu\n",
              s.delta_cl.mean, s.delta_cl.se, s.delta_q.mean, s.prop2_violations + s.cor1_violations);
  return 0;
}
