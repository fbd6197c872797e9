import numpy as np
import pytest

from sunspin import algebra
from sunspin.generators import multipole_ops, operator, spin_rep


def test_spin_half():
    assert np.array_equal(spin_rep(1).Sz, np.diag([0.5, -0.5]))


def test_spin_one_ladder():
    sp = spin_rep(2).Sp
    assert np.allclose([sp[0, 1], sp[1, 2]], [np.sqrt(2), np.sqrt(2)], atol=1e-15)


@pytest.mark.parametrize("two_s", [1, 2, 3, 4])
def test_casimir(two_s):
    r = spin_rep(two_s)
    s = two_s / 2
    cas = r.Sx @ r.Sx + r.Sy @ r.Sy + r.Sz @ r.Sz
    assert algebra.max_abs(cas - s * (s + 1) * np.eye(r.dim)) < 1e-12
    assert np.allclose(np.diag(r.Sz), s - np.arange(r.dim))
    assert np.array_equal(r.Sm, r.Sp.conj().T)
    assert algebra.max_abs(algebra.commutator(r.Sx, r.Sy) - 1j * r.Sz) < 1e-12


@pytest.mark.parametrize("two_s", [0, 5, -1])
def test_spin_rep_range(two_s):
    with pytest.raises(ValueError):
        spin_rep(two_s)


def test_dim3_qxy_printed():
    q = multipole_ops(spin_rep(2)).Qxy
    want = np.zeros((3, 3), complex)
    want[0, 2], want[2, 0] = 0.5j, -0.5j
    assert np.array_equal(q, want)


def test_dim4_fxyz_printed():
    f = multipole_ops(spin_rep(3)).Fxyz
    want = np.zeros((4, 4), complex)
    want[0, 3], want[3, 0] = -1j, 1j
    assert np.array_equal(f, want)


def test_dim5_xxyzl_printed():
    x = multipole_ops(spin_rep(4)).Xxyzl
    want = np.zeros((5, 5), complex)
    want[0, 4], want[4, 0] = -1j, 1j
    assert np.array_equal(x, want)


def test_dim3_reconciliation_sign():
    table = multipole_ops(spin_rep(2)).reconciliation
    entry = next(e for e in table if e.operator == "Qxy" and (e.row, e.col) == (0, 2))
    assert np.isclose(entry.ladder, -0.5j)
    assert np.isclose(entry.printed, 0.5j)
    assert np.isclose(entry.deviation, 1.0)


@pytest.mark.parametrize("two_s", [2, 3, 4])
def test_multipoles_hermitian_traceless(two_s):
    ms = multipole_ops(spin_rep(two_s))
    for m in (ms.Qxy, ms.Oxyz, ms.Xxyzl):
        if m is not None:
            assert algebra.is_hermitian(m)
            assert abs(np.trace(m)) < 1e-12


def test_reconciliation_deterministic():
    a = [(e.operator, e.row, e.col, e.printed, e.ladder) for e in multipole_ops(spin_rep(4)).reconciliation]
    b = [(e.operator, e.row, e.col, e.printed, e.ladder) for e in multipole_ops(spin_rep(4)).reconciliation]
    assert a == b


def test_multipoles_need_dim3():
    with pytest.raises(ValueError):
        multipole_ops(spin_rep(1))


def test_operator_lookup():
    r = spin_rep(3)
    assert np.array_equal(operator(r, "Fxyz"), operator(r, "Oxyz"))
    assert np.array_equal(operator(r, "S+"), r.Sp)
    with pytest.raises(KeyError):
        operator(r, "Qzz")
