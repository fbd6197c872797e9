"""Compiled kernels for the coherent-state chart.

Each factor exp(-i c x G) is applied in its eigenbasis, G = V diag(lam) V^H,
so exponentials are exact and cheap. Parameter derivatives come from inserting
-i c G at the factor's position in the product.
"""

import numba as nb
import numpy as np


@nb.njit(cache=True)
def site_state(x, vecs, vecsh, lams, cs, pidx, psi, tangents):
    """Fill ``psi`` (d,) and ``tangents`` (n, d) for one site with parameters ``x``."""
    nf = lams.shape[0]
    d = lams.shape[1]
    suffix = np.zeros((nf + 1, d), dtype=np.complex128)
    suffix[nf, 0] = 1.0
    us = np.empty((nf, d, d), dtype=np.complex128)
    phase = np.empty(d, dtype=np.complex128)
    for j in range(nf - 1, -1, -1):
        for q in range(d):
            phase[q] = np.exp(-1j * cs[j] * x[pidx[j]] * lams[j, q])
        for r in range(d):
            for col in range(d):
                acc = 0.0j
                for q in range(d):
                    acc += vecs[j, r, q] * phase[q] * vecsh[j, q, col]
                us[j, r, col] = acc
        for r in range(d):
            acc = 0.0j
            for col in range(d):
                acc += us[j, r, col] * suffix[j + 1, col]
            suffix[j, r] = acc
    for r in range(d):
        psi[r] = suffix[0, r]
    prefix = np.eye(d, dtype=np.complex128)
    w = np.empty(d, dtype=np.complex128)
    for j in range(nf):
        # w = -i c G_j v_j, with G_j v = V diag(lam) V^H v
        tmp = np.zeros(d, dtype=np.complex128)
        for q in range(d):
            acc = 0.0j
            for col in range(d):
                acc += vecsh[j, q, col] * suffix[j, col]
            tmp[q] = acc * lams[j, q]
        for r in range(d):
            acc = 0.0j
            for q in range(d):
                acc += vecs[j, r, q] * tmp[q]
            w[r] = -1j * cs[j] * acc
        a = pidx[j]
        for r in range(d):
            acc = 0.0j
            for col in range(d):
                acc += prefix[r, col] * w[col]
            tangents[a, r] = acc
        newp = np.zeros((d, d), dtype=np.complex128)
        for r in range(d):
            for col in range(d):
                acc = 0.0j
                for q in range(d):
                    acc += prefix[r, q] * us[j, q, col]
                newp[r, col] = acc
        prefix = newp


@nb.njit(cache=True)
def states(x, vecs, vecsh, lams, cs, pidx):
    """States and tangents for all sites; ``x`` has shape (L, n)."""
    L, n = x.shape
    d = lams.shape[1]
    psi = np.empty((L, d), dtype=np.complex128)
    tang = np.empty((L, n, d), dtype=np.complex128)
    for s in range(L):
        site_state(x[s], vecs, vecsh, lams, cs, pidx, psi[s], tang[s])
    return psi, tang


@nb.njit(cache=True)
def _vdot(a, b):
    acc = 0.0j
    for i in range(a.shape[0]):
        acc += np.conj(a[i]) * b[i]
    return acc


@nb.njit(cache=True)
def _matvec(m, v):
    d = v.shape[0]
    out = np.zeros(d, dtype=np.complex128)
    for r in range(d):
        acc = 0.0j
        for c in range(d):
            acc += m[r, c] * v[c]
        out[r] = acc
    return out


@nb.njit(cache=True)
def energy_gradient(psi, tang, ops, coeffs):
    """Energy Re sum_t c_t prod_s <O_ts> and its gradient (L, n)."""
    L, n, d = tang.shape
    nt = coeffs.shape[0]
    e = np.empty((nt, L), dtype=np.complex128)
    de = np.empty((nt, L, n), dtype=np.complex128)
    for t in range(nt):
        for s in range(L):
            opsi = _matvec(ops[t, s], psi[s])
            e[t, s] = _vdot(psi[s], opsi)
            for a in range(n):
                ot = _matvec(ops[t, s], tang[s, a])
                de[t, s, a] = _vdot(tang[s, a], opsi) + _vdot(psi[s], ot)
    energy = 0.0
    grad = np.zeros((L, n))
    for t in range(nt):
        full = coeffs[t]
        for s in range(L):
            full *= e[t, s]
        energy += full.real
        for s in range(L):
            rest = coeffs[t]
            for s2 in range(L):
                if s2 != s:
                    rest *= e[t, s2]
            for a in range(n):
                grad[s, a] += (rest * de[t, s, a]).real
    return energy, grad


@nb.njit(cache=True)
def omega_site(tang, hbar):
    """-2 hbar Im <d_a psi|d_b psi>, antisymmetric by construction."""
    n = tang.shape[0]
    w = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            v = -2.0 * hbar * _vdot(tang[a], tang[b]).imag
            w[a, b] = v
            w[b, a] = -v
    return w


@nb.njit(cache=True)
def gepp_solve(a, b):
    """Gaussian elimination with partial pivoting; returns x with a x = b."""
    n = a.shape[0]
    m = a.copy()
    x = b.copy()
    for col in range(n):
        piv = col
        best = abs(m[col, col])
        for r in range(col + 1, n):
            if abs(m[r, col]) > best:
                best = abs(m[r, col])
                piv = r
        if piv != col:
            for c in range(n):
                tmp = m[col, c]
                m[col, c] = m[piv, c]
                m[piv, c] = tmp
            tmp = x[col]
            x[col] = x[piv]
            x[piv] = tmp
        if m[col, col] == 0.0:
            x[:] = np.nan
            return x
        for r in range(col + 1, n):
            f = m[r, col] / m[col, col]
            if f != 0.0:
                for c in range(col, n):
                    m[r, c] -= f * m[col, c]
                x[r] -= f * x[col]
    for r in range(n - 1, -1, -1):
        acc = x[r]
        for c in range(r + 1, n):
            acc -= m[r, c] * x[c]
        x[r] = acc / m[r, r]
    return x


@nb.njit(cache=True)
def berry_field(x, vecs, vecsh, lams, cs, pidx, ops, coeffs, hbar, check):
    """Velocity solving omega qdot = grad H site by site.

    Returns (qdot, energy, worst condition number, smallest singular value, psi).
    The conditioning is only measured when ``check`` is set (else -1, inf).
    """
    psi, tang = states(x, vecs, vecsh, lams, cs, pidx)
    energy, grad = energy_gradient(psi, tang, ops, coeffs)
    L, n = x.shape
    qdot = np.empty((L, n))
    worst = -1.0
    smin = np.inf
    for s in range(L):
        w = omega_site(tang[s], hbar)
        if check:
            sv = np.abs(np.linalg.eigvalsh(1j * w))
            lo = sv.min()
            hi = sv.max()
            smin = min(smin, lo)
            cond = np.inf if lo <= 0.0 else hi / lo
            worst = max(worst, cond)
        qdot[s] = gepp_solve(w, grad[s])
    return qdot, energy, worst, smin, psi


@nb.njit(cache=True)
def rk4_berry(x0, dt, steps, vecs, vecsh, lams, cs, pidx, ops, coeffs, hbar, max_cond, min_sigma,
              energy_tol):
    """Fixed-step RK4 on the BERRY field.

    Returns (points, energies, states, n_done, code); code 0 means all steps
    completed, 1 ill-conditioned omega, 2 non-finite velocity, 3 energy drift
    above ``energy_tol`` relative to max(1, |E0|) (disabled when <= 0).
    """
    L, n = x0.shape
    d = lams.shape[1]
    pts = np.empty((steps + 1, L, n))
    energies = np.empty(steps + 1)
    psis = np.empty((steps + 1, L, d), dtype=np.complex128)
    x = x0.copy()
    for i in range(steps + 1):
        k1, e, cond, smin, psi = berry_field(x, vecs, vecsh, lams, cs, pidx, ops, coeffs, hbar, True)
        pts[i] = x
        energies[i] = e
        psis[i] = psi
        if cond > max_cond or smin < min_sigma:
            return pts, energies, psis, i, 1
        if energy_tol > 0.0 and abs(e - energies[0]) > energy_tol * max(1.0, abs(energies[0])):
            return pts, energies, psis, i, 3
        if i == steps:
            break
        k2 = berry_field(x + 0.5 * dt * k1, vecs, vecsh, lams, cs, pidx, ops, coeffs, hbar, False)[0]
        k3 = berry_field(x + 0.5 * dt * k2, vecs, vecsh, lams, cs, pidx, ops, coeffs, hbar, False)[0]
        k4 = berry_field(x + dt * k3, vecs, vecsh, lams, cs, pidx, ops, coeffs, hbar, False)[0]
        step = (k1 + 2.0 * k2 + 2.0 * k3 + k4) * (dt / 6.0)
        if not np.all(np.isfinite(step)):
            return pts, energies, psis, i, 2
        x = x + step
    return pts, energies, psis, steps, 0
