"""Classical equations of motion on the coherent-state manifold.

Two vector fields are available:

* ``EomMethod.BERRY`` solves ``omega qdot = grad H`` where ``omega`` is the curl
  of the Berry connection. This is the stationary-action flow and conserves H.
* ``EomMethod.PAPER`` evaluates the printed equations verbatim. It is a
  diagnostic; it does not conserve H in general.

Integration is fixed-step RK4. Hitting a chart singularity aborts the run and
returns the partial trajectory flagged.
"""

import enum
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy import cos, sin

from . import algebra
from .chart import chart
from .coherent import CoherentParams, Group, build_oracle, fd_tangents
from .generators import operator
from .observables import ChainState, ReportEntry, format_point

MAX_COND = 1e12
MIN_SIGMA = 1e-12
PAPER_MIN_DENOM = 1e-6
ENERGY_TOL = 1e-9


class EomMethod(enum.Enum):
    BERRY = "berry"
    PAPER = "paper"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown method {value!r}; expected berry or paper") from None


class SingularPoint(RuntimeError):
    """The equations of motion cannot be solved at this point of the chart."""


class HamiltonianError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Hamiltonians


@dataclass(frozen=True, eq=False)
class Term:
    """``coeff`` times a product of per-site factors.

    ``factors`` is a tuple of ``(site, ops)`` where ``ops`` is a tuple of
    generator names (multiplied left to right) or an explicit matrix. An empty
    ``factors`` is a constant term.
    """

    coeff: complex
    factors: tuple = ()


def _normalize_factor(site, ops):
    if isinstance(ops, str):
        ops = (ops,)
    if isinstance(ops, np.ndarray):
        return int(site), ops.astype(complex)
    return int(site), tuple(ops)


@dataclass(frozen=True, eq=False)
class HamiltonianSpec:
    group: Group
    n_sites: int
    terms: tuple

    def __post_init__(self):
        group = Group.parse(self.group)
        object.__setattr__(self, "group", group)
        if self.n_sites < 1:
            raise HamiltonianError("chain length must be >= 1")
        terms = []
        for t in self.terms:
            if not isinstance(t, Term):
                coeff, factors = t
                t = Term(coeff, factors)
            factors = tuple(_normalize_factor(s, ops) for s, ops in t.factors)
            for site, ops in factors:
                if not 0 <= site < self.n_sites:
                    raise HamiltonianError(f"site index {site} out of range for chain length {self.n_sites}")
                self._factor_matrix(ops)
            terms.append(Term(complex(t.coeff), factors))
        object.__setattr__(self, "terms", tuple(terms))
        self._check_hermitian()

    @classmethod
    def single(cls, group, matrix):
        """One-site Hamiltonian given as an explicit Hermitian matrix."""
        return cls(group, 1, (Term(1.0, ((0, np.asarray(matrix, dtype=complex)),)),))

    def _factor_matrix(self, ops):
        d = self.group.dim
        if isinstance(ops, np.ndarray):
            if ops.shape != (d, d):
                raise HamiltonianError(f"matrix factor has shape {ops.shape}, expected {(d, d)}")
            return ops
        m = np.eye(d, dtype=complex)
        for name in ops:
            if name == "I":
                continue
            try:
                m = m @ operator(self.group.rep, name)
            except KeyError as exc:
                raise HamiltonianError(f"unknown generator {name!r} for {self.group.name}") from exc
        return m

    def site_operators(self, term):
        """Per-site operator of one term, identity where the term does not act."""
        d = self.group.dim
        ops = [np.eye(d, dtype=complex) for _ in range(self.n_sites)]
        for site, factor in term.factors:
            ops[site] = ops[site] @ self._factor_matrix(factor)
        return ops

    def _assemble(self, sites, terms):
        d = self.group.dim
        total = np.zeros((d ** len(sites),) * 2, dtype=complex)
        for t in terms:
            ops = self.site_operators(t)
            m = np.ones((1, 1), dtype=complex)
            for s in sites:
                m = np.kron(m, ops[s])
            total += t.coeff * m
        return total

    def _check_hermitian(self):
        d = self.group.dim
        used = sorted({s for t in self.terms for s, _ in t.factors})
        if d ** max(len(used), 1) <= algebra.MAX_DIM:
            groups = [(used, self.terms)]
        else:
            by_support = {}
            for t in self.terms:
                key = tuple(sorted({s for s, _ in t.factors}))
                by_support.setdefault(key, []).append(t)
            groups = list(by_support.items())
        for sites, terms in groups:
            m = self._assemble(list(sites), terms)
            if not algebra.is_hermitian(m):
                raise HamiltonianError("assembled Hamiltonian is not Hermitian")

    def matrix(self):
        """Full operator on the chain (site 0 leftmost); capped at dimension 256."""
        if self.group.dim ** self.n_sites > algebra.MAX_DIM:
            raise ValueError("chain Hilbert space exceeds dimension cap")
        return self._assemble(list(range(self.n_sites)), self.terms)

    @cached_property
    def kernel_arrays(self):
        """(ops, coeffs) with one-site terms merged per site, for the compiled field."""
        d, L = self.group.dim, self.n_sites
        eye = np.eye(d, dtype=complex)
        local = [np.zeros((d, d), dtype=complex) for _ in range(L)]
        constant = 0.0j
        multi = []
        for t in self.terms:
            sites = {s for s, _ in t.factors}
            if not sites:
                constant += t.coeff
            elif len(sites) == 1:
                (s,) = sites
                local[s] += t.coeff * self.site_operators(t)[s]
            else:
                multi.append(t)
        ops, coeffs = [], []
        for s in range(L):
            if np.any(local[s] != 0):
                row = [eye] * L
                row[s] = local[s]
                ops.append(row)
                coeffs.append(1.0)
        for t in multi:
            ops.append(self.site_operators(t))
            coeffs.append(t.coeff)
        if constant != 0 or not ops:
            ops.append([eye] * L)
            coeffs.append(constant)
        return np.ascontiguousarray(np.array(ops, dtype=complex)), np.array(coeffs, dtype=complex)


def field_hamiltonian(group, direction=(0.0, 0.0, 1.0), n_sites=1):
    """Linear Zeeman-type Hamiltonian sum_i direction . S_i."""
    group = Group.parse(group)
    terms = []
    for site in range(n_sites):
        for c, name in zip(direction, ("Sx", "Sy", "Sz")):
            if c:
                terms.append(Term(c, ((site, (name,)),)))
    return HamiltonianSpec(group, n_sites, tuple(terms))


# ---------------------------------------------------------------------------
# Points


def as_points(group, points):
    """Normalize params / list of params / ChainState / array to an (L, n) array."""
    group = Group.parse(group)
    if isinstance(points, CoherentParams):
        points = [points]
    elif isinstance(points, ChainState):
        points = list(points.sites)
    if isinstance(points, (list, tuple)) and points and isinstance(points[0], CoherentParams):
        for p in points:
            if p.group is not group:
                raise ValueError(f"point belongs to {p.group.name}, expected {group.name}")
        return np.array([p.values for p in points], dtype=float)
    x = np.atleast_2d(np.asarray(points, dtype=float))
    if x.shape[1] != group.n_params:
        raise ValueError(f"{group.name} points need {group.n_params} parameters, got {x.shape[1]}")
    return x


def _check_spec(h, group, x):
    if h.group is not group:
        raise ValueError(f"Hamiltonian is for {h.group.name}, points for {group.name}")
    if h.n_sites != x.shape[0]:
        raise ValueError(f"Hamiltonian has {h.n_sites} sites, got {x.shape[0]} points")


# ---------------------------------------------------------------------------
# Energy, gradient, symplectic form


def classical_energy(h, points):
    """H(q) = Re sum_terms c * prod_sites <psi_s|O_s|psi_s> on oracle states."""
    x = as_points(h.group, points)
    _check_spec(h, h.group, x)
    psis = [build_oracle(CoherentParams(h.group, row)).amplitudes for row in x]
    total = 0.0j
    for t in h.terms:
        val = t.coeff
        for psi, op in zip(psis, h.site_operators(t)):
            val *= np.vdot(psi, op @ psi)
        total += val
    return float(total.real)


def grad_H(h, points, step=1e-5):
    """Central-difference gradient of ``classical_energy``, flattened over sites."""
    x = as_points(h.group, points)
    flat = x.ravel()
    g = np.empty_like(flat)
    for i in range(flat.size):
        dx = np.zeros_like(flat)
        dx[i] = step
        g[i] = (classical_energy(h, (flat + dx).reshape(x.shape))
                - classical_energy(h, (flat - dx).reshape(x.shape))) / (2 * step)
    return g


def symplectic_form(group, p, hbar=1.0, step=1e-5):
    """omega_ab = d_a A_b - d_b A_a = -2 hbar Im <d_a psi|d_b psi> from FD tangents."""
    group = Group.parse(group)
    if p.group is not group:
        raise ValueError("group mismatch")
    t = fd_tangents(p, step)
    w = -2.0 * hbar * np.imag(t.conj() @ t.T)
    return 0.5 * (w - w.T)


# ---------------------------------------------------------------------------
# Printed equations of motion


def _denominators(group, v):
    th = v["theta"]
    out = {"sin(theta)": sin(th)}
    if group is Group.SU3:
        g = v["g"]
        out.update({"cos(2g)": cos(2 * g), "sin(2g)": sin(2 * g)})
    elif group is Group.SU4:
        g, k = v["g"], v["k"]
        out.update({"cos(2k)": cos(2 * k), "sin(2k)": sin(2 * k), "cos(g)": cos(g),
                    "sin(g)": sin(g), "sin(2g)": sin(2 * g)})
    elif group is Group.SU5:
        g, k, n = v["g"], v["k"], v["n"]
        out.update({"cos(2n)": cos(2 * n), "sin(2n)": sin(2 * n), "cos(g)": cos(g), "sin(g)": sin(g),
                    "sin(2g)": sin(2 * g), "cos(k)": cos(k), "sin(k)": sin(k)})
    return out


def paper_velocity(group, x, grad, hbar=1.0):
    """Right-hand sides of the printed equations of motion for one site."""
    group = Group.parse(group)
    v = dict(zip(group.params, x))
    for name, val in _denominators(group, v).items():
        if abs(val) < PAPER_MIN_DENOM:
            raise SingularPoint(f"printed equations singular: {name} = {val:.3e}")
    H = dict(zip(group.params, grad))
    th = v["theta"]
    st, ct = sin(th), cos(th)
    out = {}
    if group is Group.SU2:
        out["phi"] = H["theta"] / st
        out["theta"] = H["phi"] / st
    elif group is Group.SU3:
        c2g, s2g = cos(2 * v["g"]), sin(2 * v["g"])
        out["theta"] = -(H["phi"] - ct * H["gamma"]) / (c2g * st)
        out["g"] = -H["gamma"] / (2 * s2g)
        out["phi"] = H["theta"] / (c2g * st)
        out["gamma"] = -H["g"] / (2 * s2g) - ct / (c2g * st) * H["theta"]
    elif group is Group.SU4:
        g, k = v["g"], v["k"]
        cg, sg, c2k, s2k, s2g = cos(g), sin(g), cos(2 * k), sin(2 * k), sin(2 * g)
        out["theta"] = (H["phi"] - ct * H["gamma"]) / (c2k * cg**2 * st)
        out["phi"] = -H["theta"] / (c2k * cg**2 * st)
        out["g"] = H["beta"] / (6 * c2k * cg**3 * sg) - H["gamma"] / (c2k * s2g)
        out["gamma"] = (ct / (c2k * cg**2 * st) * H["theta"] + H["g"] / (2 * c2k * cg * sg)
                        + H["k"] / (s2k * cg**2))
        out["k"] = H["gamma"] / (s2k * cg**2) - H["beta"] / (6 * s2k * cg**4)
        out["beta"] = -H["k"] / (6 * s2k * cg**4) - H["g"] / (6 * c2k * cg**3 * sg)
    else:
        g, k, n = v["g"], v["k"], v["n"]
        cg, sg, ck, sk = cos(g), sin(g), cos(k), sin(k)
        c2n, s2n, s2g = cos(2 * n), sin(2 * n), sin(2 * g)
        out["theta"] = (H["phi"] / (c2n * cg**2 * st * ck**2)
                        - ct / (c2n * cg**2 * ck**2 * st) * H["gamma"])
        out["phi"] = -H["theta"] / (c2n * cg**2 * ck**2 * st)
        out["g"] = H["beta"] / (6 * c2n * cg**3 * sg * ck**4) - H["m"] / (3 * c2n * s2g * ck**4)
        out["gamma"] = (ct / (c2n * cg**2 * st * ck**2) * H["theta"] + H["k"] / (2 * c2n * cg**2 * sk * ck)
                        - H["n"] / (s2n * cg**2 * ck**2))
        out["k"] = H["m"] / (6 * sk * cg**2 * c2n * ck**3) - H["gamma"] / (2 * sk * cg**2 * ck * c2n)
        # the printed beta row repeats the dH/dn term
        out["beta"] = (H["n"] / (6 * s2n * cg**4 * ck**4) - H["g"] / (6 * c2n * cg**3 * sg * ck**4)
                       - H["n"] / (s2n * cg**2 * ck**2))
        out["n"] = H["gamma"] / (c2n * cg**2 * ck**2 * st) - H["beta"] / (6 * s2n * cg**4 * ck**4)
        out["m"] = -H["g"] / (cg * ck**4 * s2n) - H["k"] / (cg**2 * ck**3 * c2n * sk)
    return np.array([out[name] for name in group.params]) / hbar


# ---------------------------------------------------------------------------
# Vector fields


def _berry(group, h, x, hbar):
    ops, coeffs = h.kernel_arrays
    qdot, energy, cond, smin, psi = chart(group).berry_field(x, ops, coeffs, hbar, True)
    if cond > MAX_COND or smin < MIN_SIGMA * hbar or not np.all(np.isfinite(qdot)):
        raise SingularPoint(f"symplectic form degenerate: condition number {cond:.3e}, "
                            f"smallest singular value {smin:.3e}")
    return qdot


def _paper(group, h, x, hbar):
    ops, coeffs = h.kernel_arrays
    _, grad = chart(group).energy_gradient(x, ops, coeffs)
    return np.array([paper_velocity(group, xs, gs, hbar) for xs, gs in zip(x, grad)])


def eom_rhs(group, h, points, method=EomMethod.BERRY, hbar=1.0):
    """Parameter velocities at ``points``, flattened site-major."""
    group = Group.parse(group)
    method = EomMethod.parse(method)
    x = as_points(group, points)
    _check_spec(h, group, x)
    if method is EomMethod.BERRY:
        return _berry(group, h, x, hbar).ravel()
    return _paper(group, h, x, hbar).ravel()


def energy_orthogonality(group, h, points, hbar=1.0):
    """grad H . qdot for the BERRY field; zero for a Hamiltonian flow."""
    x = as_points(group, points)
    ops, coeffs = h.kernel_arrays
    _, grad = chart(group).energy_gradient(x, ops, coeffs)
    return float(np.dot(grad.ravel(), eom_rhs(group, h, x, EomMethod.BERRY, hbar)))


# ---------------------------------------------------------------------------
# Trajectories


@dataclass
class Trajectory:
    group: Group
    method: EomMethod
    times: np.ndarray
    points: np.ndarray
    energies: np.ndarray
    observables: np.ndarray
    aborted: bool = False
    reason: str = ""

    def __len__(self):
        return len(self.times)

    @property
    def n_sites(self):
        return self.points.shape[1]

    def params(self, i):
        return [CoherentParams(self.group, row) for row in self.points[i]]


def spin_observables(group, psis):
    """<Sx>, <Sy>, <Sz> for states of shape (..., d); returns shape (..., 3)."""
    rep = Group.parse(group).rep
    out = [np.einsum("...i,ij,...j->...", psis.conj(), s, psis).real for s in (rep.Sx, rep.Sy, rep.Sz)]
    return np.stack(out, axis=-1)


def integrate(group, h, initial, dt, steps, method=EomMethod.BERRY, hbar=1.0,
              energy_tol=ENERGY_TOL, t0=0.0):
    """Fixed-step RK4 trajectory.

    Raises SingularPoint when the initial point is singular. A singular point
    reached mid-run stops the integration; the partial trajectory is returned
    with ``aborted`` set. For BERRY runs a relative energy drift above
    ``energy_tol`` is treated as a chart singularity crossing (the exact flow
    conserves H); pass ``energy_tol=0`` to disable.
    """
    group = Group.parse(group)
    method = EomMethod.parse(method)
    if dt <= 0:
        raise ValueError("dt must be positive")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    x0 = as_points(group, initial)
    _check_spec(h, group, x0)
    eom_rhs(group, h, x0, method, hbar)
    ch = chart(group)
    ops, coeffs = h.kernel_arrays
    reason = ""
    if method is EomMethod.BERRY:
        pts, energies, psis, n_done, code = ch.rk4_berry(
            x0, dt, steps, ops, coeffs, hbar, MAX_COND, MIN_SIGMA * hbar, energy_tol)
        reason = {0: "", 1: "symplectic form degenerate", 2: "non-finite velocity",
                  3: "energy drift: chart singularity crossed"}[code]
        pts, energies, psis = pts[:n_done + 1], energies[:n_done + 1], psis[:n_done + 1]
    else:
        pts_list = [x0]
        x = x0
        for _ in range(steps):
            try:
                k1 = _paper(group, h, x, hbar)
                k2 = _paper(group, h, x + 0.5 * dt * k1, hbar)
                k3 = _paper(group, h, x + 0.5 * dt * k2, hbar)
                k4 = _paper(group, h, x + dt * k3, hbar)
            except SingularPoint as exc:
                reason = str(exc)
                break
            x = x + (k1 + 2 * k2 + 2 * k3 + k4) * (dt / 6)
            if not np.all(np.isfinite(x)):
                reason = "non-finite velocity"
                break
            pts_list.append(x)
        pts = np.array(pts_list)
        psis = np.array([ch.states(p)[0] for p in pts])
        energies = np.array([ch.energy_gradient(p, ops, coeffs)[0] for p in pts])
    times = t0 + dt * np.arange(len(pts))
    return Trajectory(group, method, times, pts, energies, spin_observables(group, psis),
                      aborted=bool(reason), reason=reason)


# ---------------------------------------------------------------------------
# Path-integral action


def _single_site_matrix(h):
    if isinstance(h, HamiltonianSpec):
        if h.n_sites != 1:
            raise ValueError("the action is defined here for single-site paths")
        return h.matrix()
    return np.asarray(h, dtype=complex)


def discrete_action(path, h, eps, hbar=1.0):
    """sum_k [ ln<psi_k|psi_{k-1}> - (i eps / hbar) <psi_k|H|psi_{k-1}> / <psi_k|psi_{k-1}> ]."""
    path = list(path)
    if len(path) < 2:
        raise ValueError("a path needs at least two points")
    group = path[0].group
    if any(p.group is not group for p in path):
        raise ValueError("all path points must belong to one group")
    H = _single_site_matrix(h)
    psis = [build_oracle(p).amplitudes for p in path]
    total = 0.0j
    for prev, cur in zip(psis[:-1], psis[1:]):
        # normalizing by the computed norms makes identical slices give exactly 1
        ov = np.vdot(cur, prev) / np.sqrt(np.vdot(cur, cur).real * np.vdot(prev, prev).real)
        if abs(ov) < 1e-12:
            raise ValueError("consecutive path points are orthogonal; slice is ill-conditioned")
        total += np.log(ov) - 1j * eps / hbar * np.vdot(cur, H @ prev) / ov
    return complex(total)


def continuum_action(path_fn, group, h, t0, t1, hbar=1.0, nodes=64, panels=8, velocity_fn=None):
    """(i / hbar) * integral of (A . qdot - H) dt by composite Gauss-Legendre.

    ``path_fn(t)`` returns the parameter vector; velocities default to central
    differences of it.
    """
    from .coherent import berry_connection

    group = Group.parse(group)
    H = _single_site_matrix(h)
    xs, ws = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(t0, t1, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        for xi, wi in zip(xs, ws):
            t = 0.5 * (b - a) * xi + 0.5 * (a + b)
            q = np.asarray(path_fn(t), dtype=float)
            if velocity_fn is None:
                dq = (np.asarray(path_fn(t + 1e-6)) - np.asarray(path_fn(t - 1e-6))) / 2e-6
            else:
                dq = np.asarray(velocity_fn(t), dtype=float)
            p = CoherentParams(group, q)
            psi = build_oracle(p).amplitudes
            lag = np.dot(berry_connection(p, hbar), dq) - np.vdot(psi, H @ psi).real
            total += 0.5 * (b - a) * wi * lag
    return 1j * total / hbar


# ---------------------------------------------------------------------------
# Group reductions

# larger-group point from a smaller-group point, and the shared coordinates
# as (index in larger, index in smaller)
_EMBED = {
    (Group.SU3, Group.SU2): (lambda v: [v[0], v[1], 0.0, 0.0], ((0, 0), (1, 1))),
    (Group.SU4, Group.SU3): (lambda v: [v[0], v[1], v[2], 0.0, 0.0, v[3]],
                             ((0, 0), (1, 1), (2, 2), (5, 3))),
    (Group.SU5, Group.SU4): (lambda v: [v[0], v[1], v[2], 0.0, v[4], v[3], 0.0, v[5]],
                             ((0, 0), (1, 1), (2, 2), (4, 4), (5, 3), (7, 5))),
}


def embed(from_group, to_group, p):
    """Image of a smaller-group point under the reduction substitution."""
    key = (Group.parse(from_group), Group.parse(to_group))
    fn, _ = _EMBED[key]
    return CoherentParams(key[0], fn(list(p.values)))


def restricted_berry_velocity(group, h, p, indices, hbar=1.0):
    """BERRY field of ``group`` restricted to the coordinate subset ``indices``."""
    group = Group.parse(group)
    x = as_points(group, p)
    ops, coeffs = h.kernel_arrays
    ch = chart(group)
    _, grad = ch.energy_gradient(x, ops, coeffs)
    idx = np.asarray(indices)
    w = ch.omega(x[0], hbar)[np.ix_(idx, idx)]
    sv = np.abs(np.linalg.eigvalsh(1j * w))
    if sv.min() < MIN_SIGMA * hbar or sv.max() / sv.min() > MAX_COND:
        raise SingularPoint("restricted symplectic form degenerate")
    return np.linalg.solve(w, grad[0][idx])


@dataclass
class ReductionReport:
    larger: Group
    smaller: Group
    n_points: int
    max_deviation: float
    deviations: list
    n_larger_singular: int = 0

    @property
    def passed_points(self):
        return len(self.deviations)


def reduce_check(from_group, to_group, n_points=100, seed=0, direction=(0.0, 0.0, 1.0), hbar=1.0):
    """Compare BERRY fields of a smaller group and of its embedding into a larger one.

    Embedded points lie on a degenerate set of the larger chart (the inserted
    zeros make two directions collapse), so the larger field is solved on the
    embedded coordinates only. Both sides use ``direction . S`` in their own
    spin representation.

    Points where even the restricted larger field is singular are counted in
    ``n_larger_singular``; if every sampled point is like that the maximum
    deviation is reported as infinite.
    """
    from .observables import sample_params

    larger, smaller = Group.parse(from_group), Group.parse(to_group)
    if (larger, smaller) not in _EMBED:
        raise ValueError(f"no reduction rule from {larger.name} to {smaller.name}")
    _, pairs = _EMBED[(larger, smaller)]
    big_idx = [a for a, _ in pairs]
    small_idx = [b for _, b in pairs]
    h_big = field_hamiltonian(larger, direction)
    h_small = field_hamiltonian(smaller, direction)
    rng = np.random.default_rng(seed)
    devs = []
    sampled = singular = 0
    while sampled < n_points:
        p = sample_params(smaller, rng)
        try:
            v_small = eom_rhs(smaller, h_small, p, EomMethod.BERRY, hbar)
        except SingularPoint:
            continue
        sampled += 1
        try:
            v_big = restricted_berry_velocity(larger, h_big, embed(larger, smaller, p), big_idx, hbar)
        except SingularPoint:
            singular += 1
            continue
        devs.append(float(np.max(np.abs(v_big - v_small[small_idx]))))
    worst = max(devs) if devs else float("inf")
    return ReductionReport(larger, smaller, n_points, worst, devs, singular)


# ---------------------------------------------------------------------------
# PAPER vs BERRY


def report_hamiltonian(group):
    """Fixed generic Hamiltonian used for PAPER vs BERRY comparisons."""
    group = Group.parse(group)
    terms = [Term(0.7, ((0, ("Sx",)),)), Term(0.4, ((0, ("Sy",)),)), Term(1.0, ((0, ("Sz",)),)),
             Term(0.3, ((0, ("Sz", "Sz")),))]
    return HamiltonianSpec(group, 1, tuple(terms))


def eom_report_rows(group, points, h=None, hbar=1.0):
    """Per-coordinate PAPER (paper_value) vs BERRY (oracle_value) velocities."""
    group = Group.parse(group)
    h = h or report_hamiltonian(group)
    rows = []
    for p in points:
        try:
            paper = eom_rhs(group, h, p, EomMethod.PAPER, hbar)
            berry = eom_rhs(group, h, p, EomMethod.BERRY, hbar)
        except SingularPoint:
            continue
        where = format_point(p)
        for name, a, b in zip(group.params, paper, berry):
            rows.append(ReportEntry(f"eom.{name}_t", where, a, b))
    return rows
