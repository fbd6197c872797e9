"""Coordinate chart of a group's coherent-state manifold backed by compiled kernels."""

from functools import lru_cache

import numpy as np

from . import _kernels
from .coherent import FACTORS, Group
from .generators import operator


class Chart:
    """Precomputed eigen-decompositions of one group's exponential factors."""

    def __init__(self, group):
        group = Group.parse(group)
        self.group = group
        rep = group.rep
        vecs, lams, cs, pidx = [], [], [], []
        for gen, name, c in FACTORS[group]:
            lam, v = np.linalg.eigh(operator(rep, gen))
            vecs.append(v)
            lams.append(lam)
            cs.append(c)
            pidx.append(group.params.index(name))
        self.vecs = np.ascontiguousarray(np.array(vecs, dtype=complex))
        self.vecsh = np.ascontiguousarray(np.conj(np.transpose(self.vecs, (0, 2, 1))))
        self.lams = np.array(lams, dtype=float)
        self.cs = np.array(cs, dtype=float)
        self.pidx = np.array(pidx, dtype=np.int64)

    @property
    def dim(self):
        return self.group.dim

    @property
    def n_params(self):
        return self.group.n_params

    def _args(self):
        return self.vecs, self.vecsh, self.lams, self.cs, self.pidx

    def states(self, x):
        """States (L, d) and tangents (L, n, d) for parameters of shape (L, n)."""
        x = np.ascontiguousarray(np.atleast_2d(np.asarray(x, dtype=float)))
        return _kernels.states(x, *self._args())

    def state(self, x):
        return self.states(x)[0][0]

    def tangents(self, x):
        return self.states(x)[1][0]

    def berry_field(self, x, ops, coeffs, hbar=1.0, check=True):
        x = np.ascontiguousarray(np.atleast_2d(np.asarray(x, dtype=float)))
        return _kernels.berry_field(x, *self._args(), ops, coeffs, float(hbar), check)

    def rk4_berry(self, x0, dt, steps, ops, coeffs, hbar, max_cond, min_sigma, energy_tol):
        x0 = np.ascontiguousarray(np.atleast_2d(np.asarray(x0, dtype=float)))
        return _kernels.rk4_berry(x0, float(dt), int(steps), *self._args(), ops, coeffs,
                                  float(hbar), float(max_cond), float(min_sigma), float(energy_tol))

    def energy_gradient(self, x, ops, coeffs):
        psi, tang = self.states(x)
        return _kernels.energy_gradient(psi, tang, ops, coeffs)

    def omega(self, x, hbar=1.0):
        return _kernels.omega_site(self.tangents(x), float(hbar))


@lru_cache(maxsize=None)
def chart(group):
    return Chart(Group.parse(group))
