"""Exact quantum reference dynamics and the spin-1/2 resolution-of-unity check."""

from dataclasses import dataclass

import numpy as np

from . import algebra
from .coherent import CoherentParams, Group, build_oracle
from .dynamics import EomMethod, as_points, integrate, spin_observables


@dataclass(frozen=True, eq=False)
class QuantumState:
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.amplitudes, dtype=complex).ravel()
        if abs(np.linalg.norm(a) - 1.0) > 1e-12:
            raise ValueError(f"state norm {np.linalg.norm(a):.15g} differs from 1")
        object.__setattr__(self, "amplitudes", a)

    @property
    def dim(self):
        return self.amplitudes.size


def _vector(psi):
    return psi.amplitudes if isinstance(psi, QuantumState) else np.asarray(psi, dtype=complex).ravel()


def propagate(H, psi0, t, hbar=1.0):
    """exp(-i H t / hbar) psi0."""
    H = algebra.as_matrix(H)
    if not algebra.is_hermitian(H):
        raise ValueError("Hamiltonian is not Hermitian")
    v = _vector(psi0)
    if v.size != H.shape[0]:
        raise ValueError(f"state dimension {v.size} does not match Hamiltonian {H.shape[0]}")
    out = algebra.expm(-1j * t / hbar * H) @ v
    return QuantumState(out) if isinstance(psi0, QuantumState) else out


def product_state(group, points):
    """Kronecker product of oracle coherent states, site 0 leftmost."""
    group = Group.parse(group)
    psi = np.ones(1, dtype=complex)
    for row in as_points(group, points):
        psi = np.kron(psi, build_oracle(CoherentParams(group, row)).amplitudes)
    return psi


def site_spin_expectations(group, psi, n_sites):
    """<S^a_i> for a chain state; shape (n_sites, 3)."""
    group = Group.parse(group)
    d = group.dim
    rho = np.asarray(psi).reshape((d,) * n_sites)
    out = np.empty((n_sites, 3))
    for i in range(n_sites):
        # reduced density matrix of site i
        m = np.moveaxis(rho, i, 0).reshape(d, -1)
        red = m @ m.conj().T
        for a, s in enumerate((group.rep.Sx, group.rep.Sy, group.rep.Sz)):
            out[i, a] = np.trace(red @ s).real
    return out


@dataclass
class Comparison:
    times: np.ndarray
    classical: np.ndarray  # (N, L, 3)
    quantum: np.ndarray  # (N, L, 3)
    aborted: bool
    reason: str

    @property
    def deviation(self):
        """|delta <S^a_i>| over time, shape (N, L, 3)."""
        return np.abs(self.classical - self.quantum)

    @property
    def max_per_site(self):
        return self.deviation.max(axis=(0, 2))

    @property
    def max_deviation(self):
        return float(self.deviation.max())


def compare(h, initial, t_max, dt, hbar=1.0, energy_tol=None):
    """BERRY classical trajectory vs exact propagation from the same product state.

    The quantum side is stepped with one exact propagator per classical step so
    both live on the same time grid.
    """
    from .dynamics import ENERGY_TOL

    group = h.group
    x0 = as_points(group, initial)
    if group.dim ** h.n_sites > algebra.MAX_DIM:
        raise ValueError(f"quantum dimension {group.dim ** h.n_sites} exceeds cap {algebra.MAX_DIM}")
    steps = int(round(t_max / dt))
    tol = ENERGY_TOL if energy_tol is None else energy_tol
    traj = integrate(group, h, x0, dt, steps, EomMethod.BERRY, hbar, energy_tol=tol)
    U = algebra.expm(-1j * dt / hbar * h.matrix())
    psi = product_state(group, x0)
    quantum = np.empty_like(traj.observables)
    for n in range(len(traj)):
        quantum[n] = site_spin_expectations(group, psi, h.n_sites)
        psi = U @ psi
    return Comparison(traj.times, traj.observables, quantum, traj.aborted, traj.reason)


def random_hermitian(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def unity_check(n_theta, n_phi):
    """max |(2j+1)/(4 pi) * int |psi><psi| dOmega - I| for spin 1/2."""
    if n_theta < 2 or n_phi < 2:
        raise ValueError("quadrature orders must be >= 2")
    x, w = np.polynomial.legendre.leggauss(n_theta)
    # theta in [0, pi]; sin(theta) dtheta = d(-cos theta)
    thetas = np.arccos(-x)
    phis = 2 * np.pi * np.arange(n_phi) / n_phi
    rings = np.empty((n_theta, 2, 2), dtype=complex)
    for i, th in enumerate(thetas):
        psis = np.array([build_oracle(CoherentParams(Group.SU2, (th, ph))).amplitudes for ph in phis])
        # trapezoid on a periodic grid is the plain mean times the period
        rings[i] = np.einsum("pi,pj->ij", psis, psis.conj()) / n_phi
    acc = np.tensordot(w, rings, axes=1) * (2 * np.pi) * 2 / (4 * np.pi)
    return float(np.max(np.abs(acc - np.eye(2))))
