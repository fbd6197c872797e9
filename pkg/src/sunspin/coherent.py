"""SU(2)..SU(5) coherent states in real parameterization.

Two independent constructions are provided:

* ``build_oracle`` applies the group's product of matrix exponentials to the
  highest-weight reference state. It is the ground truth everywhere.
* ``build_closed_form`` evaluates the printed coefficient formulas.

The global phase is whatever the exponential product yields; nothing here
re-chooses it.
"""

import enum
from dataclasses import dataclass, field

import numpy as np
from numpy import cos, exp, sin, sqrt

from . import algebra
from .generators import operator, spin_rep


class Group(enum.Enum):
    SU2 = 2
    SU3 = 3
    SU4 = 4
    SU5 = 5

    @property
    def dim(self):
        return self.value

    @property
    def rep(self):
        return spin_rep(self.value - 1)

    @property
    def params(self):
        return PARAM_NAMES[self]

    @property
    def n_params(self):
        return len(PARAM_NAMES[self])

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip().upper().replace("(", "").replace(")", "")
        try:
            return cls[key]
        except KeyError:
            raise ValueError(f"unknown group {text!r}; expected one of SU2..SU5") from None


PARAM_NAMES = {
    Group.SU2: ("theta", "phi"),
    Group.SU3: ("theta", "phi", "gamma", "g"),
    Group.SU4: ("theta", "phi", "gamma", "g", "beta", "k"),
    Group.SU5: ("theta", "phi", "gamma", "g", "beta", "k", "m", "n"),
}

# Factor sequence, left to right: (generator, parameter, c) stands for
# exp(-i * c * value * G). exp(2ig Qxy) is c = -2.
FACTORS = {
    Group.SU2: (("Sz", "phi", 1.0), ("Sy", "theta", 1.0)),
    Group.SU3: (("Sz", "phi", 1.0), ("Sy", "theta", 1.0), ("Sz", "gamma", 1.0), ("Qxy", "g", -2.0)),
    Group.SU4: (
        ("Sz", "phi", 1.0), ("Sy", "theta", 1.0), ("Sz", "gamma", 1.0),
        ("Qxy", "g", -2.0), ("Sz", "beta", 1.0), ("Oxyz", "k", 1.0),
    ),
    Group.SU5: (
        ("Sz", "phi", 1.0), ("Sy", "theta", 1.0), ("Sz", "gamma", 1.0),
        ("Qxy", "g", -2.0), ("Sz", "beta", 1.0), ("Oxyz", "k", 1.0),
        ("Sz", "m", 1.0), ("Xxyzl", "n", 1.0),
    ),
}


@dataclass(frozen=True)
class CoherentParams:
    group: Group
    values: tuple

    def __post_init__(self):
        group = Group.parse(self.group)
        object.__setattr__(self, "group", group)
        vals = tuple(float(v) for v in self.values)
        if len(vals) != group.n_params:
            raise ValueError(f"{group.name} takes {group.n_params} parameters, got {len(vals)}")
        if not all(np.isfinite(vals)):
            raise ValueError(f"non-finite parameter in {vals}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, group, mapping):
        group = Group.parse(group)
        unknown = set(mapping) - set(group.params)
        if unknown:
            raise ValueError(f"unknown parameters for {group.name}: {sorted(unknown)}")
        return cls(group, tuple(mapping.get(name, 0.0) for name in group.params))

    def as_dict(self):
        return dict(zip(self.group.params, self.values))

    def __getitem__(self, name):
        return self.values[self.group.params.index(name)]

    def array(self):
        return np.array(self.values)

    def replace(self, **changes):
        d = self.as_dict()
        d.update(changes)
        return CoherentParams.from_mapping(self.group, d)


@dataclass(frozen=True, eq=False)
class CoherentState:
    group: Group
    amplitudes: np.ndarray
    normalized: bool = False
    notes: tuple = field(default=())

    @property
    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


def reference_state(dim):
    v = np.zeros(dim, dtype=complex)
    v[0] = 1.0
    return v


def build_oracle(p):
    """Coherent state from the exact product of matrix exponentials."""
    group = p.group
    rep = group.rep
    vals = p.as_dict()
    v = reference_state(group.dim)
    for gen, name, c in reversed(FACTORS[group]):
        v = algebra.expm(-1j * c * vals[name] * operator(rep, gen)) @ v
    return CoherentState(group, v)


# ---------------------------------------------------------------------------
# Printed closed forms


def _su2(theta, phi):
    return [cos(theta / 2) * exp(-0.5j * phi), sin(theta / 2) * exp(0.5j * phi)]


def _su3(theta, phi, gamma, g):
    s2, c2 = sin(theta / 2) ** 2, cos(theta / 2) ** 2
    c0 = exp(1j * phi) * (exp(-1j * gamma) * s2 * cos(g) + exp(1j * gamma) * c2 * sin(g))
    c1 = sin(theta) / sqrt(2) * (exp(-1j * gamma) * cos(g) - exp(1j * gamma) * sin(g))
    c2_ = exp(-1j * phi) * (exp(-1j * gamma) * c2 * cos(g) + exp(1j * gamma) * s2 * sin(g))
    # printed C0..C2 run from lowest weight to highest
    return [c2_, c1, c0]


def _su4(theta, phi, gamma, g, beta, k):
    sh, ch = sin(theta / 2), cos(theta / 2)
    a1 = sh ** 3 * cos(g)
    b1 = sqrt(3) * sh ** 2 * ch * sin(g)
    a2 = sqrt(3) * sh * ch ** 2 * sin(g)
    b2 = ch ** 3 * cos(g)
    a3 = sqrt(3) * sh ** 2 * ch * cos(g)
    b3 = sin(theta) * (2 - 3 * sh ** 2) * sin(g)
    a4 = cos(theta) * (1 - sh ** 2) * sin(g)
    b4 = sqrt(3) * sh * ch ** 2 * cos(g)
    A = lambda a: a * sin(k)  # noqa: E731
    B = lambda b: b * cos(k)  # noqa: E731
    Ap = lambda a: a * cos(k)  # noqa: E731
    Bp = lambda b: b * sin(k)  # noqa: E731
    ph, ga, be = phi, gamma, beta
    c0 = (A(a1) * exp(1.5j * (ph - ga - be)) - A(a2) * exp(0.5j * (3 * ph + ga - 3 * be))
          + B(b1) * exp(0.5j * (3 * ph - ga + 3 * be)) + B(b2) * exp(1.5j * (ph + ga + be)))
    c1 = (A(a3) * exp(1.5j * (ph - ga + be)) - A(a4) * exp(0.5j * (ph + ga - 3 * be))
          + B(b3) * exp(0.5j * (ph - ga + 3 * be)) - B(b4) * exp(0.5j * (ph + 3 * ga + 3 * be)))
    c2 = (Bp(b4) * exp(-0.5j * (ph + 3 * ga + 3 * be)) + Bp(b4) * exp(0.5j * (ph - ga + 3 * be))
          + Ap(a4) * exp(-0.5j * (ph + ga - 3 * be)) - Ap(a2) * exp(-0.5j * (ph - 3 * ga - 3 * be)))
    c3 = (Bp(b1) * exp(-1.5j * (ph + ga + be)) - Bp(b2) * exp(-0.5j * (3 * ph - ga + 3 * be))
          - Ap(a1) * exp(-1.5j * (ph - ga - be)) + Ap(a2) * exp(-0.5j * (3 * ph + ga - 3 * be)))
    return [c0, c1, c2, c3]


def wigner_series_dim5(theta):
    """Printed truncated power series f_1..f_10 (through theta**10) for dim 5."""
    t = theta
    r6, r23 = sqrt(6), sqrt(2 / 3)
    return (
        1 - t**2 / 2 + 5 * t**4 / 48 - 17 * t**6 / 1440 + 13 * t**8 / 16128 - 257 * t**10 / 7257600,
        -t + 5 * t**3 / 12 - 17 * t**5 / 240 + 13 * t**7 / 2016 - 257 * t**9 / 725760,
        0.5 * sqrt(1.5) * t**2 - t**4 / (2 * r6) + t**6 / (15 * r6) - t**8 / (210 * r6) + t**10 / (4725 * r6),
        -t**3 / 4 + t**5 / 16 - t**7 / 160 + 17 * t**9 / 48384,
        t**4 / 16 - t**6 / 96 + t**8 / 1280 - 17 * t**10 / 483840,
        t - 5 * t**3 / 12 + 17 * t**5 / 240 - 13 * t**7 / 2016 + 257 * t**9 / 725760,
        1 - 5 * t**2 / 4 + 17 * t**4 / 48 - 13 * t**6 / 288 + 257 * t**8 / 80640 - 41 * t**10 / 290304,
        -sqrt(1.5) * t + r23 * t**3 - r23 * t**5 / 5 + 2 * r23 * t**7 / 105 - r23 * t**9 / 945,
        3 * t**2 / 4 - 5 * t**4 / 16 + 7 * t**6 / 160 - 17 * t**8 / 5376 + 341 * t**10 / 2419200,
        1 - 1.5 * t**2 + t**4 / 2 - t**6 / 15 + t**8 / 210 - t**10 / 4725,
    )


def _su5(theta, phi, gamma, g, beta, k, m, n):
    f1, f2, f3, f4, f5, f6, f7, f8, f9, f10 = wigner_series_dim5(theta)
    r2 = sqrt(2)
    A = 0.5 * (1 + cos(r2 * g))
    B = 0.5 * (1 - cos(r2 * g))
    C = sin(r2 * g) / r2
    ph, ga, be = phi, gamma, beta
    up = exp(2j * (be + m)) * sin(n)
    low = cos(n) * exp(-2j * m)
    eb, e2b = exp(1j * be), exp(-2j * be)
    sg, cg = sin(g), cos(g)
    c0 = (-up * (A * exp(2j * (ph - ga)) * f5 + B * exp(2j * (ph + ga)) * f1 + C * exp(2j * ph) * f3)
          + low * (eb * (cg * exp(1j * (2 * ph - ga)) * f4 + sg * exp(1j * (2 * ph + ga)) * f2) * sin(k)
                   + e2b * (B * exp(2j * (ph - ga)) * f5 + A * exp(2j * (ph + ga)) * f1
                            - C * exp(2j * ph) * f3) * cos(k)))
    c1 = (-up * (A * exp(1j * (ph - 2 * ga)) * f4 + B * exp(1j * (ph + 2 * ga)) * f6 + C * exp(1j * ph) * f8)
          + low * (eb * (cg * exp(1j * (ph - ga)) * f9 + sg * exp(1j * (ph + ga)) * f7) * sin(k)
                   + e2b * (B * exp(1j * (ph - 2 * ga)) * f4 + A * exp(1j * (ph + 2 * ga)) * f6
                            - C * exp(1j * ph) * f8) * cos(k)))
    c2 = (-up * (A * exp(-2j * ga) * f3 + B * exp(2j * ga) * f3 + C * f10)
          + low * (eb * (cg * exp(-1j * ga) * f8 - sg * exp(1j * ga) * f8) * sin(k)
                   + e2b * (B * exp(-2j * ga) * f3 + A * exp(2j * ga) * f3 - C * f10) * cos(k)))
    c3 = (up * (A * exp(-1j * (ph + 2 * ga)) * f6 + B * exp(1j * (-ph + 2 * ga)) * f4 + C * exp(-1j * ph) * f8)
          + low * (eb * (cg * exp(-1j * (ph + ga)) * f7 + sg * exp(1j * (-ph + ga)) * f9) * sin(k)
                   - e2b * (B * exp(-1j * (ph + 2 * ga)) * f6 + A * exp(1j * (-ph + 2 * ga)) * f4
                            - C * exp(-1j * ph) * f8) * cos(k)))
    # the printed C4 has "C e^{-2i phi} f" with no subscript; f_3 mirrors C0
    c4 = (-up * (A * exp(-2j * (ph + ga)) * f1 + B * exp(2j * (-ph + ga)) * f5 + C * exp(-2j * ph) * f3)
          + low * (eb * (-cg * exp(-1j * (2 * ph + ga)) * f2 - sg * exp(1j * (-2 * ph + ga)) * f4) * sin(k)
                   + e2b * (B * exp(-2j * (ph + ga)) * f1 + A * exp(2j * (-ph + ga)) * f5
                            - C * exp(-2j * ph) * f3) * cos(k)))
    return [c0, c1, c2, c3, c4]


_CLOSED = {Group.SU2: _su2, Group.SU3: _su3, Group.SU4: _su4, Group.SU5: _su5}

CLOSED_FORM_NOTES = {
    Group.SU3: ("printed C0..C2 are listed lowest weight first; mapped to highest-weight-first basis",),
    Group.SU5: ("C4 term 'C e^{-2i phi} f' has no subscript; f_3 assumed by symmetry with C0",
                "f_1..f_10 are the printed series truncated at theta**10"),
}


def build_closed_form(p, norm_tol=1e-9):
    """Coherent state from the printed coefficient formulas.

    The result is renormalized only when the printed amplitudes miss unit
    norm by more than ``norm_tol``; ``normalized`` records that.
    """
    amps = np.array(_CLOSED[p.group](*p.values), dtype=complex)
    norm = np.linalg.norm(amps)
    notes = CLOSED_FORM_NOTES.get(p.group, ())
    normalized = False
    if abs(norm - 1.0) > norm_tol and norm > 0:
        amps = amps / norm
        normalized = True
        notes = notes + (f"printed amplitudes have norm {norm:.17g}; renormalized",)
    return CoherentState(p.group, amps, normalized, notes)


def closed_form_amplitudes(p):
    """Printed amplitudes with no renormalization."""
    return np.array(_CLOSED[p.group](*p.values), dtype=complex)


# ---------------------------------------------------------------------------
# Wigner d-matrices


def wigner_d_closed(dim, theta):
    """Closed-form d-matrix exp(-i theta Sy) for dims 2..4."""
    c, s = cos(theta / 2), sin(theta / 2)
    if dim == 2:
        return np.array([[c, -s], [s, c]], dtype=complex)
    if dim == 3:
        r = sqrt(2) * c * s
        return np.array([[c * c, -r, s * s], [r, c * c - s * s, -r], [s * s, r, c * c]], dtype=complex)
    if dim == 4:
        f1, f2 = c ** 3, s ** 3
        f3, f4 = sqrt(3) * c * c * s, sqrt(3) * c * s * s
        f5, f6 = c * (1 - 3 * s * s), s * (2 - 3 * s * s)
        return np.array([
            [f1, -f3, f4, -f2],
            [f3, f5, -f6, f4],
            [f4, f6, f5, -f3],
            [f2, f4, f3, f1],
        ], dtype=complex)
    raise ValueError(f"no closed form for dim {dim}")


def wigner_d_series(theta):
    """Dim-5 d-matrix assembled from the printed truncated series."""
    f = (None,) + wigner_series_dim5(theta)
    return np.array([
        [f[1], f[2], f[3], f[4], f[5]],
        [f[6], f[7], f[8], f[9], f[4]],
        [f[3], -f[8], f[10], f[8], f[3]],
        [-f[4], f[9], -f[8], f[7], -f[6]],
        [f[5], -f[4], f[3], -f[2], f[1]],
    ], dtype=complex)


def wigner_d_oracle(rep, theta):
    return algebra.expm(-1j * theta * rep.Sy)


def wigner_d(rep, theta):
    """Rotation matrix exp(-i theta Sy): closed form for dims 2..4, expm for dim 5."""
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    if rep.dim <= 4:
        return wigner_d_closed(rep.dim, theta)
    return wigner_d_oracle(rep, theta)


def wigner_series_deviation(theta):
    """Max entrywise |series - expm| for the dim-5 d-matrix."""
    return algebra.max_abs(wigner_d_series(theta) - wigner_d_oracle(spin_rep(4), theta))


# ---------------------------------------------------------------------------
# Overlaps and the Berry connection


def overlap(p1, p2):
    """<psi(p1)|psi(p2)> from oracle amplitudes."""
    if p1.group is not p2.group:
        raise ValueError(f"group mismatch: {p1.group.name} vs {p2.group.name}")
    return complex(np.vdot(build_oracle(p1).amplitudes, build_oracle(p2).amplitudes))


def fd_tangents(p, step):
    """Central finite-difference derivatives of the oracle amplitudes, one row per parameter."""
    x = p.array()
    rows = []
    for a in range(len(x)):
        dx = np.zeros_like(x)
        dx[a] = step
        plus = build_oracle(CoherentParams(p.group, x + dx)).amplitudes
        minus = build_oracle(CoherentParams(p.group, x - dx)).amplitudes
        rows.append((plus - minus) / (2 * step))
    return np.array(rows)


def berry_connection(p, hbar=1.0, step=1e-6):
    """A_a = hbar * Re[i <psi|d_a psi>] by central differences."""
    psi = build_oracle(p).amplitudes
    tangents = fd_tangents(p, step)
    return hbar * np.real(1j * (tangents @ psi.conj()))
