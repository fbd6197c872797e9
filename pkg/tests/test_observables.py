import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunspin import observables
from sunspin.coherent import CoherentParams, Group, build_oracle
from sunspin.observables import (ChainState, bond_energy, compatibility_report, expect,
                                 paper_average, read_report_csv, sample_params)

angle = st.floats(-7, 7, allow_nan=False)


def test_expect_examples():
    sz1 = Group.SU3.rep.Sz
    assert abs(expect(CoherentParams("SU3", (0, 0, 0, 0)), sz1) - 1) < 1e-15
    sz = Group.SU2.rep.Sz
    assert abs(expect(CoherentParams("SU2", (0, 0)), sz @ sz) - 0.25) < 1e-15
    p = CoherentParams("SU5", (0.3, 1, 2, 0.1, 0.5, -0.3, 2, 0.7))
    assert abs(expect(p, np.eye(5)) - 1) < 1e-14


def test_expect_dimension_mismatch():
    with pytest.raises(ValueError):
        expect(CoherentParams("SU2", (0, 0)), np.eye(3))


@pytest.mark.parametrize("group", list(Group))
@given(vals=st.lists(angle, min_size=8, max_size=8))
def test_expect_hermitian_real_and_bounded(group, vals):
    p = CoherentParams(group, vals[: group.n_params])
    rep = group.rep
    for op in (rep.Sx, rep.Sy, rep.Sz, rep.Sx @ rep.Sz + rep.Sz @ rep.Sx):
        assert abs(expect(p, op).imag) < 1e-12
    assert abs(expect(p, rep.Sz).real) <= rep.spin + 1e-12


def test_paper_average_examples():
    sp, _, _ = paper_average("SU3", CoherentParams("SU3", (np.pi / 2, 0, 0, 0)))
    assert abs(sp - 1) < 1e-15
    assert paper_average("SU2", CoherentParams("SU2", (0, 0)))[2] == 1.0
    assert expect(CoherentParams("SU2", (0, 0)), Group.SU2.rep.Sz) == 0.5
    assert paper_average("SU4", CoherentParams("SU4", (0,) * 6))[2] == pytest.approx(-4.5)


def test_bond_energy_examples():
    up, down = CoherentParams("SU2", (0, 0)), CoherentParams("SU2", (np.pi, 0))
    assert bond_energy(ChainState((up, up)), 0, 1, ("Sz", "Sz"), 1.0) == pytest.approx(0.25)
    assert bond_energy(ChainState((up, down)), 0, 1, ("Sz", "Sz"), 1.0) == pytest.approx(-0.25)
    assert bond_energy(ChainState((up, down)), 0, 1, ("Sx", "Sz"), 0.0) == 0
    with pytest.raises(IndexError):
        bond_energy(ChainState((up, down)), 0, 2, ("Sz", "Sz"), 1.0)


@pytest.mark.parametrize("group", list(Group))
def test_bond_energy_is_product_state_expectation(group, rng):
    chain = ChainState(tuple(sample_params(group, rng) for _ in range(3)))
    rep = group.rep
    full = np.kron(np.kron(rep.Sx, np.eye(group.dim)), rep.Sy)
    want = 0.8 * expect(chain.product_state(), full).real
    assert abs(bond_energy(chain, 0, 2, (rep.Sx, rep.Sy), 0.8) - want) < 1e-12


def test_chain_rejects_mixed_groups():
    with pytest.raises(ValueError):
        ChainState((CoherentParams("SU2", (0, 0)), CoherentParams("SU3", (0, 0, 0, 0))))


def test_report_su2():
    rep = compatibility_report("SU2", n_samples=100, seed=0)
    assert not rep.rows("amplitude")
    # printed averages carry the spin-1 normalization: a uniform factor of 2
    for e in rep.rows("average"):
        assert abs(e.paper_value - 2 * e.oracle_value) < 1e-12


def test_report_su3_amplitudes_clean():
    assert not compatibility_report("SU3", n_samples=100, seed=0, include_eom=False).rows("amplitude")


def test_report_su4_flags_sz_everywhere():
    rep = compatibility_report("SU4", n_samples=30, seed=3, include_eom=False)
    points = {e.point for e in rep.rows("average.Sz")}
    assert len(points) == 30
    assert any(e.paper_value.real < -1.5 for e in rep.rows("average.Sz"))


def test_report_sorted_and_deterministic(tmp_path):
    a = compatibility_report("SU5", n_samples=4, seed=11)
    b = compatibility_report("SU5", n_samples=4, seed=11)
    assert a.to_csv_text() == b.to_csv_text()
    keys = [(e.formula, -e.abs_dev) for e in a.entries]
    assert keys == sorted(keys)
    assert all(e.abs_dev > 1e-9 for e in a.entries)
    path = tmp_path / "r.csv"
    a.to_csv(path)
    back = read_report_csv(path, "SU5")
    assert [(e.formula, e.point) for e in back.entries] == [(e.formula, e.point) for e in a.entries]
    assert back.assumptions == a.assumptions
    assert max(abs(x.abs_dev - y.abs_dev) for x, y in zip(back.entries, a.entries)) == 0


def test_report_rejects_zero_samples():
    with pytest.raises(ValueError):
        compatibility_report("SU2", n_samples=0)


def test_sample_ranges(rng):
    for _ in range(200):
        p = sample_params("SU5", rng)
        assert 0.1 < p["theta"] < np.pi - 0.1
        assert all(-1 < p[n] < 1 for n in ("g", "k", "n"))
        assert all(0 <= p[n] < 2 * np.pi for n in ("phi", "gamma", "beta", "m"))


def test_spin_vector_matches_oracle():
    p = CoherentParams("SU2", (0.9, 0.4))
    v = observables.spin_vector(p, "SU2")
    want = 0.5 * np.array([np.sin(0.9) * np.cos(0.4), np.sin(0.9) * np.sin(0.4), np.cos(0.9)])
    assert np.allclose(v, want, atol=1e-14)
    assert np.allclose(build_oracle(p).amplitudes.conj() @ Group.SU2.rep.Sz @ build_oracle(p).amplitudes,
                       v[2])
