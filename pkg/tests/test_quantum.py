import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from sunspin import quantum
from sunspin.coherent import CoherentParams, Group, build_oracle
from sunspin.dynamics import HamiltonianSpec, field_hamiltonian
from sunspin.observables import sample_params
from sunspin.quantum import QuantumState, compare, propagate, random_hermitian, unity_check


def test_propagate_zero_hamiltonian():
    psi = build_oracle(CoherentParams("SU3", (0.4, 1, 2, 0.3))).amplitudes
    assert np.array_equal(propagate(np.zeros((3, 3)), psi, 2.0), psi)


@given(seed=st.integers(0, 2**32 - 1), t=st.floats(-5, 5))
def test_propagate_unitary_and_matches_scipy(seed, t):
    rng = np.random.default_rng(seed)
    H = random_hermitian(4, rng)
    psi = QuantumState(build_oracle(sample_params("SU4", rng)).amplitudes)
    out = propagate(H, psi, t)
    assert abs(np.linalg.norm(out.amplitudes) - 1) < 1e-12
    assert np.max(np.abs(out.amplitudes - scipy.linalg.expm(-1j * t * H) @ psi.amplitudes)) < 1e-12


def test_propagate_eigenstate_phase(rng):
    H = random_hermitian(5, rng)
    evals, evecs = np.linalg.eigh(H)
    out = propagate(H, evecs[:, 2], 1.7)
    assert np.max(np.abs(out - np.exp(-1.7j * evals[2]) * evecs[:, 2])) < 1e-12


def test_propagate_composition(rng):
    H = random_hermitian(5, rng)
    psi = build_oracle(sample_params("SU5", rng)).amplitudes
    a = propagate(H, psi, 1.1)
    b = propagate(H, propagate(H, psi, 0.4), 0.7)
    assert np.max(np.abs(a - b)) < 1e-12


def test_propagate_hbar():
    H = Group.SU2.rep.Sz
    psi = np.array([1, 1]) / np.sqrt(2)
    assert np.allclose(propagate(H, psi, 2.0, hbar=2.0), propagate(H, psi, 1.0))


def test_propagate_errors():
    with pytest.raises(ValueError, match="Hermitian"):
        propagate(Group.SU2.rep.Sp, np.array([1, 0]), 1.0)
    with pytest.raises(ValueError):
        propagate(np.eye(3), np.array([1, 0]), 1.0)
    with pytest.raises(ValueError):
        QuantumState(np.array([1.0, 1.0]))


def test_compare_larmor():
    c = compare(field_hamiltonian("SU2"), CoherentParams("SU2", (1.0, 0.2)), 10.0, 1e-4)
    assert not c.aborted
    assert c.max_deviation < 1e-6
    assert np.max(c.deviation[0]) < 1e-14
    assert np.all(c.deviation >= 0)


def test_compare_su3_random(rng):
    for _ in range(3):
        h = HamiltonianSpec.single("SU3", random_hermitian(3, rng))
        c = compare(h, sample_params("SU3", rng), 1.0, 1e-4)
        assert c.aborted or c.max_deviation < 1e-6


def test_compare_exchange_chain_is_informational():
    h = HamiltonianSpec("SU2", 2, [(1.0, [(0, [a]), (1, [a])]) for a in ("Sx", "Sy", "Sz")])
    init = [CoherentParams("SU2", (1.0, 0.0)), CoherentParams("SU2", (2.0, 1.0))]
    c = compare(h, init, 2.0, 1e-3)
    assert c.max_per_site.shape == (2,)
    # entanglement breaks the product ansatz, so a visible deviation appears
    assert c.max_deviation > 1e-3


def test_compare_dimension_cap():
    h = HamiltonianSpec("SU3", 6, [(1.0, [(i, ["Sz"])]) for i in range(6)])
    with pytest.raises(ValueError, match="exceeds"):
        compare(h, [CoherentParams("SU3", (1, 0, 0, 0.3))] * 6, 0.1, 0.01)


def test_site_spin_expectations_match_single_site(rng):
    ps = [sample_params("SU3", rng) for _ in range(3)]
    psi = quantum.product_state("SU3", ps)
    got = quantum.site_spin_expectations("SU3", psi, 3)
    rep = Group.SU3.rep
    for i, p in enumerate(ps):
        a = build_oracle(p).amplitudes
        want = [np.vdot(a, s @ a).real for s in (rep.Sx, rep.Sy, rep.Sz)]
        assert np.allclose(got[i], want, atol=1e-14)


def test_unity_check():
    assert unity_check(64, 64) < 1e-12
    devs = [unity_check(n, n) for n in (8, 16, 32, 64)]
    assert all(b <= a + 1e-14 for a, b in zip(devs, devs[1:]))
    with pytest.raises(ValueError):
        unity_check(1, 8)


def test_unity_coarse_grid_is_already_exact():
    # the spin-1/2 projector is a first-degree polynomial in cos(theta) and
    # e^{+-i phi}, so two nodes in each direction integrate it exactly
    assert unity_check(2, 2) < 1e-14


def test_unity_trace():
    x, w = np.polynomial.legendre.leggauss(16)
    total = 0.0
    for th, wt in zip(np.arccos(-x), w):
        for ph in 2 * np.pi * np.arange(16) / 16:
            a = build_oracle(CoherentParams("SU2", (th, ph))).amplitudes
            total += wt * (2 * np.pi / 16) * np.vdot(a, a).real
    assert abs(2 / (4 * np.pi) * total - 2) < 1e-12
