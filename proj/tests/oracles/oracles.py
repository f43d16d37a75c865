# Copyright 2026 The ctoq Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values frozen into the C++ tests.

Written directly in numpy/mpmath from the definitions, sharing no code with
the C++ library. Run: python3 tests/oracles/oracles.py
"""

import numpy as np
from fractions import Fraction
from mpmath import mp, mpf, log, sqrt

mp.dps = 40


def psd_sqrt(m):
    w, v = np.linalg.eigh(m)
    return (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T


def half_trace_norm(m):
    return 0.5 * np.abs(np.linalg.eigvalsh(m)).sum()


def apply_on_first(kraus, rho, d_rest):
    """Apply a Kraus channel to the first factor of rho (first ⊗ rest)."""
    out = 0
    for k in kraus:
        kk = np.kron(k, np.eye(d_rest))
        out = out + kk @ rho @ kk.conj().T
    return out


def literal_decoder(me, mf, e_basis, f_basis):
    """Kraus operators of eraser ∘ coherent measurement, built stage by stage."""
    dc = me[0].shape[0]
    m = len(me)
    d = e_basis.shape[1]
    # Naimark: V|c> = sum_j sqrt(M_j)|c> ⊗ |j>
    v = sum(np.kron(psd_sqrt(me[j]), np.eye(m)[:, [j]]) for j in range(m))
    proj = [np.kron(np.eye(dc), np.outer(np.eye(m)[j], np.eye(m)[j])) for j in range(m)]
    dcp = dc * m
    e0 = v[:, [0]]
    e0p = np.eye(dc)[:, [0]]
    q = np.eye(dcp) - v @ v.conj().T
    vinv = np.kron(v.conj().T, e0) + np.kron(e0p, q)  # C' -> C ⊗ C'
    store = sum(np.kron(proj[j], e_basis[:, [j]]) for j in range(m))  # C' -> C' ⊗ A
    r = np.kron(vinv, np.eye(d)) @ store @ v  # C -> C ⊗ C' ⊗ A
    # trace C' by slicing: rows indexed (c, c', a)
    r = r.reshape(dc, dcp, d, dc)
    r_kraus = [r[:, cp, :, :].reshape(dc * d, dc) for cp in range(dcp)]
    thetas = []
    for l in range(d):
        ov = e_basis.conj().T @ f_basis[:, l]
        ph = np.array([x / abs(x) if abs(x) > 1e-14 else 1.0 for x in ov])
        thetas.append(e_basis @ np.diag(ph) @ e_basis.conj().T)
    q_kraus = []
    for l in range(d):
        root = psd_sqrt(mf[l])
        for mm in range(dc):
            q_kraus.append(thetas[l] @ np.kron(root[[mm], :], np.eye(d)))
    return [a @ b for a in q_kraus for b in r_kraus]


def delta_q(dec_kraus, ch_kraus, d):
    phi = np.zeros((d * d, 1))
    for j in range(d):
        phi[j * d + j] = 1 / np.sqrt(d)
    phi = phi @ phi.T
    out = apply_on_first(ch_kraus, phi, d)
    out = apply_on_first(dec_kraus, out, d)
    return half_trace_norm(phi - out)


def dephasing_case(p):
    z = np.diag([1.0, -1.0])
    ch = [np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * z]
    zb = np.eye(2)
    xb = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    me = [np.outer(zb[:, j], zb[:, j]) for j in range(2)]
    mf = [np.outer(xb[:, j], xb[:, j]) for j in range(2)]
    dec = literal_decoder(me, mf, zb.astype(complex), xb.astype(complex))
    return delta_q(dec, ch, 2)


def random_unitary(d, rng):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    qm, rm = np.linalg.qr(z)
    return qm * (np.diag(rm) / np.abs(np.diag(rm)))


def hp_overlap_sample(n, k, ell, xi_diag, rng):
    """sum_{i != j} tr[xi_i xi_j] for one Haar draw, full (non-minimal) purification."""
    da, db = 2 ** k, 2 ** n
    ds = da * db
    drad = 2 ** ell
    u = random_unitary(ds, rng)
    psi = np.zeros((db, db))
    for x in range(db):
        psi[x, x] = np.sqrt(xi_diag[x])  # |psi> = sum_x sqrt(p_x)|x>|x>
    states = []
    for j in range(da):
        # |Psi_j> on S ⊗ B_rad : (U ⊗ I)(|j> ⊗ psi)
        vec = np.kron(np.eye(da)[:, [j]], psi.reshape(db, db))  # (ds, db) as S x B_rad
        vec = u @ vec  # S x B_rad
        vec = vec.reshape(ds // drad, drad, db)  # S_in, S_rad, B_rad
        # reduced state on (S_rad, B_rad)
        m = vec.reshape(ds // drad, drad * db)
        states.append(m.T @ m.conj())
    return sum(np.trace(states[i] @ states[j]).real for i in range(da) for j in range(da) if i != j)


def closed_form(n, k, ell, purity):
    dk = Fraction(2 ** k)
    return dk * (dk - 1) * Fraction(2 ** (2 * (n + k) - ell) - 2 ** ell, 2 ** (2 * (n + k)) - 1) * purity


def main():
    print("delta_q of literal decoder, qubit dephasing:")
    for p in (0.0, 0.1, 0.3, 0.5):
        print(f"  p={p}: {dephasing_case(p):.17g}")

    print("Haar closed form (exact fractions):")
    for n, k, ell in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2)]:
        for name, pur in [("pure", Fraction(1)), ("mixed", Fraction(1, 2 ** n))]:
            f = closed_form(n, k, ell, pur)
            print(f"  ({n},{k},{ell},{name}) = {f} = {float(f):.17g}")

    rng = np.random.default_rng(7)
    xs = [hp_overlap_sample(2, 1, 1, np.full(4, 0.25), rng) for _ in range(4000)]
    print(f"  MC (2,1,1,mixed) with full purification: {np.mean(xs):.6f} +- {np.std(xs, ddof=1)/np.sqrt(len(xs)):.6f}"
          f" vs {float(closed_form(2, 1, 1, Fraction(1, 4))):.6f}")

    print("asymptotic bound spot value N=4,k=1,ell=3, pure, eps=1/2:")
    n, k, ell, eps, lam, h2 = 4, 1, 3, mpf(1) / 2, mpf(1), mpf(0)
    c = 1 - (1 - eps / 2) / lam
    log2_delta = k + mpf(2) ** (n + k - ell + 1) * (n + k - ell + log(5 / eps, 2)) \
        - (c ** 2 * log(mp.e, 2) / 6) * mpf(2) ** (ell + h2)
    ell_th = k + (n - h2) / 2
    cl = mpf(4) ** (ell_th - ell) / (1 - eps) + mpf(2) ** log2_delta
    print(f"  c = {c}\n  log2_delta = {mp.nstr(log2_delta, 20)}\n  cl_bound = {mp.nstr(cl, 20)}"
          f"\n  q_bound = {mp.nstr((1 + sqrt(2)) * sqrt(cl), 20)}")

    print("spectrum (1/2,1/4,1/8,1/8) on N=4, k=1:")
    sp = [mpf(1) / 2, mpf(1) / 4, mpf(1) / 8, mpf(1) / 8]
    pur = sum(x * x for x in sp)
    h2 = -log(pur, 2)
    print(f"  purity = {pur}\n  H2 = {mp.nstr(h2, 20)}\n  ell_th = {mp.nstr(1 + (4 - h2) / 2, 20)}\n  Lambda = {4 * sp[-1]}")

    print("collision entropy of diag(3/4,1/4):", mp.nstr(-log(mpf(9) / 16 + mpf(1) / 16, 2), 20))


if __name__ == "__main__":
    main()
