"""Spin irreps (spin 1/2 .. 2) and the multipole operators built on them.

Basis is ordered highest weight first, so the reference state is always
``(1, 0, ..., 0)``. The multipole matrices are the explicit printed ones; the
ladder-operator forms ``prefactor * (S+^k - S-^k)`` are only used to build a
reconciliation table listing where the two disagree.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import TOL

GENERATOR_NAMES = ("Sx", "Sy", "Sz", "Sp", "Sm", "Qxy", "Oxyz", "Xxyzl")
ALIASES = {"Fxyz": "Oxyz", "S+": "Sp", "S-": "Sm"}


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SpinRep:
    two_s: int
    Sz: np.ndarray
    Sp: np.ndarray
    Sm: np.ndarray
    Sx: np.ndarray
    Sy: np.ndarray

    @property
    def dim(self):
        return self.two_s + 1

    @property
    def spin(self):
        return self.two_s / 2


@lru_cache(maxsize=None)
def spin_rep(two_s):
    """Irreducible spin representation with spin ``two_s / 2``."""
    if not isinstance(two_s, (int, np.integer)) or not 1 <= two_s <= 4:
        raise ValueError(f"two_s must be an integer in 1..4, got {two_s!r}")
    s = two_s / 2
    d = two_s + 1
    weights = s - np.arange(d)
    sp = np.zeros((d, d), dtype=complex)
    for i in range(1, d):
        m = weights[i]
        sp[i - 1, i] = np.sqrt(s * (s + 1) - m * (m + 1))
    sm = sp.conj().T
    return SpinRep(
        two_s=int(two_s),
        Sz=_frozen(np.diag(weights)),
        Sp=_frozen(sp),
        Sm=_frozen(sm),
        Sx=_frozen((sp + sm) / 2),
        Sy=_frozen((sp - sm) / 2j),
    )


def _printed(d, entries, prefactor):
    m = np.zeros((d, d), dtype=complex)
    for (i, j), v in entries.items():
        m[i, j] = v
    return prefactor * m


# Explicit printed matrices: {dim: {name: matrix}}.
PRINTED = {
    3: {"Qxy": _printed(3, {(0, 2): 1, (2, 0): -1}, 0.5j)},
    4: {
        "Qxy": _printed(4, {(0, 2): 1, (1, 3): 1, (2, 0): -1, (3, 1): -1}, 1 / 2j),
        "Oxyz": _printed(4, {(0, 3): 1, (3, 0): -1}, 1 / 1j),
    },
    5: {
        "Qxy": _printed(
            5, {(0, 2): 1, (1, 3): 1, (2, 0): -1, (2, 4): 1, (3, 1): -1, (4, 2): -1}, 1 / 2j
        ),
        "Oxyz": _printed(5, {(0, 3): 1, (1, 4): 1, (3, 0): -1, (4, 1): -1}, 1 / 1j),
        "Xxyzl": _printed(5, {(0, 4): 1, (4, 0): -1}, 1 / 1j),
    },
}

# (power of the ladder operators, prefactor) of the ladder-built forms.
# The dim-5 quadrupole has no printed ladder form; the dim-3 prefactor is used.
LADDER = {
    3: {"Qxy": (2, 1 / 4j)},
    4: {"Qxy": (2, 1 / (4j * np.sqrt(3))), "Oxyz": (3, 1 / 6j)},
    5: {"Qxy": (2, 1 / 4j), "Oxyz": (3, 1 / 12j), "Xxyzl": (4, 1 / 24j)},
}


@dataclass(frozen=True)
class ReconciliationEntry:
    operator: str
    row: int
    col: int
    printed: complex
    ladder: complex

    @property
    def deviation(self):
        return abs(self.printed - self.ladder)


@dataclass(frozen=True, eq=False)
class MultipoleSet:
    dim: int
    Qxy: np.ndarray
    Oxyz: np.ndarray = None
    Xxyzl: np.ndarray = None
    ladder: dict = None
    reconciliation: tuple = ()

    @property
    def Fxyz(self):
        return self.Oxyz


def ladder_form(rep, power, prefactor):
    up = np.linalg.matrix_power(rep.Sp, power)
    down = np.linalg.matrix_power(rep.Sm, power)
    return prefactor * (up - down)


@lru_cache(maxsize=None)
def multipole_ops(rep):
    """Printed multipole matrices for ``rep`` plus the ladder reconciliation."""
    if rep.dim < 3:
        raise ValueError(f"multipole operators need dim >= 3, got {rep.dim}")
    printed = PRINTED[rep.dim]
    ladder = {}
    entries = []
    for name, (power, pref) in LADDER[rep.dim].items():
        lf = _frozen(ladder_form(rep, power, pref))
        ladder[name] = lf
        pm = printed[name]
        for i in range(rep.dim):
            for j in range(rep.dim):
                if abs(pm[i, j] - lf[i, j]) > TOL:
                    entries.append(ReconciliationEntry(name, i, j, complex(pm[i, j]), complex(lf[i, j])))
    return MultipoleSet(
        dim=rep.dim,
        Qxy=_frozen(printed["Qxy"]),
        Oxyz=_frozen(printed["Oxyz"]) if "Oxyz" in printed else None,
        Xxyzl=_frozen(printed["Xxyzl"]) if "Xxyzl" in printed else None,
        ladder=ladder,
        reconciliation=tuple(entries),
    )


def operator(rep, name):
    """Named generator matrix for ``rep``; raises KeyError for unknown names."""
    name = ALIASES.get(name, name)
    if name in ("Sx", "Sy", "Sz", "Sp", "Sm"):
        return getattr(rep, name)
    if name not in GENERATOR_NAMES:
        raise KeyError(f"unknown generator {name!r}")
    if rep.dim < 3:
        raise KeyError(f"{name} is not defined for dim {rep.dim}")
    m = getattr(multipole_ops(rep), name)
    if m is None:
        raise KeyError(f"{name} is not defined for dim {rep.dim}")
    return m
