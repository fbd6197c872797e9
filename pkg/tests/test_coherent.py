import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from sunspin import coherent
from sunspin.coherent import CoherentParams, Group, build_closed_form, build_oracle, overlap
from sunspin.generators import operator, spin_rep
from sunspin.observables import sample_params

angle = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)


def params(group):
    return st.lists(angle, min_size=group.n_params, max_size=group.n_params).map(
        lambda v: CoherentParams(group, v))


def scipy_oracle(p):
    """Independent construction: scipy expm of every factor, applied right to left."""
    rep = p.group.rep
    psi = np.zeros(rep.dim, complex)
    psi[0] = 1
    for gen, name, c in reversed(coherent.FACTORS[p.group]):
        psi = scipy.linalg.expm(-1j * c * p[name] * operator(rep, gen)) @ psi
    return psi


def test_param_counts_even():
    assert [g.n_params for g in Group] == [2, 4, 6, 8]


def test_params_validation():
    with pytest.raises(ValueError):
        CoherentParams(Group.SU2, (1.0,))
    with pytest.raises(ValueError):
        CoherentParams(Group.SU3, (1.0, np.nan, 0, 0))
    with pytest.raises(ValueError):
        CoherentParams.from_mapping("SU2", {"theta": 1, "gamma": 2})
    p = CoherentParams.from_mapping("su3", {"theta": 1.0})
    assert p.values == (1.0, 0.0, 0.0, 0.0)
    assert p.replace(g=0.5)["g"] == 0.5


def test_su2_oracle_examples():
    assert np.allclose(build_oracle(CoherentParams("SU2", (0, 0))).amplitudes, [1, 0], atol=0)
    assert np.allclose(build_oracle(CoherentParams("SU2", (np.pi, 0))).amplitudes, [0, 1], atol=1e-14)
    assert np.allclose(build_oracle(CoherentParams("SU3", (0, 0, 0, 0))).amplitudes, [1, 0, 0], atol=0)


@pytest.mark.parametrize("group", list(Group))
def test_oracle_matches_scipy(group, rng):
    for _ in range(20):
        p = sample_params(group, rng)
        assert np.max(np.abs(build_oracle(p).amplitudes - scipy_oracle(p))) < 1e-13


@pytest.mark.parametrize("group", list(Group))
@given(data=st.data())
def test_oracle_unit_norm(group, data):
    p = data.draw(params(group))
    assert abs(build_oracle(p).norm - 1) < 1e-12


def test_closed_form_examples():
    s = np.sqrt(0.5)
    assert np.allclose(build_closed_form(CoherentParams("SU2", (np.pi / 2, 0))).amplitudes, [s, s])
    assert np.allclose(build_closed_form(CoherentParams("SU3", (np.pi / 2, 0, 0, 0))).amplitudes,
                       [0.5, s, 0.5])
    assert np.allclose(build_closed_form(CoherentParams("SU5", (0,) * 8)).amplitudes, [1, 0, 0, 0, 0])


@pytest.mark.parametrize("group", [Group.SU2, Group.SU3])
@given(data=st.data())
def test_closed_form_matches_oracle(group, data):
    p = data.draw(params(group))
    cf = build_closed_form(p)
    assert not cf.normalized
    assert np.max(np.abs(cf.amplitudes - build_oracle(p).amplitudes)) < 1e-10


def test_su4_closed_form_renormalizes_and_records(rng):
    p = sample_params(Group.SU4, rng)
    cf = build_closed_form(p)
    assert cf.normalized
    assert abs(cf.norm - 1) < 1e-12
    assert cf.notes
    raw = coherent.closed_form_amplitudes(p)
    assert abs(np.linalg.norm(raw) - 1) > 1e-9


@pytest.mark.parametrize("two_s", [1, 2, 3])
def test_wigner_closed_vs_expm(two_s):
    rep = spin_rep(two_s)
    for th in np.linspace(-np.pi, np.pi, 41):
        want = scipy.linalg.expm(-1j * th * rep.Sy)
        assert np.max(np.abs(coherent.wigner_d(rep, th) - want)) < 1e-12


def test_wigner_identity_and_printed_entry():
    for two_s in range(1, 5):
        assert np.allclose(coherent.wigner_d(spin_rep(two_s), 0.0), np.eye(two_s + 1), atol=1e-15)
    assert np.isclose(coherent.wigner_d(spin_rep(3), np.pi / 2)[0, 0].real, 0.35355, atol=1e-5)


def test_wigner_series_small_angle():
    assert coherent.wigner_series_deviation(0.5) < 1e-6


def test_wigner_series_truncation_grows():
    # the printed series stops at theta^10, so its error grows like theta^12
    devs = [coherent.wigner_series_deviation(t) for t in (0.2, 0.4, 0.8)]
    assert devs[0] < devs[1] < devs[2]
    assert 2 ** 10 < devs[2] / devs[1] < 2 ** 14


@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(1, 4))
def test_wigner_one_parameter_subgroup(a, b, two_s):
    rep = spin_rep(two_s)
    lhs = coherent.wigner_d(rep, a) @ coherent.wigner_d(rep, b)
    assert np.max(np.abs(lhs - coherent.wigner_d(rep, a + b))) < 1e-12


def test_wigner_rejects_nonfinite():
    with pytest.raises(ValueError):
        coherent.wigner_d(spin_rep(2), np.inf)


def test_overlap_examples():
    p = CoherentParams("SU3", (0.3, 1.0, 2.0, 0.4))
    assert abs(overlap(p, p) - 1) < 1e-14
    th = np.pi / 3
    ov = overlap(CoherentParams("SU2", (th, 0.7)), CoherentParams("SU2", (th, 0.7 - 1e-3)))
    assert abs(ov - (1 + 2.5e-4j)) < 1e-6
    assert abs(overlap(CoherentParams("SU2", (0, 0)), CoherentParams("SU2", (np.pi, 0)))) < 1e-15
    with pytest.raises(ValueError):
        overlap(CoherentParams("SU2", (0, 0)), CoherentParams("SU3", (0, 0, 0, 0)))


@pytest.mark.parametrize("group", list(Group))
@given(data=st.data())
def test_overlap_hermitian_and_bounded(group, data):
    p, q = data.draw(params(group)), data.draw(params(group))
    assert abs(overlap(p, q) - np.conj(overlap(q, p))) < 1e-12
    assert abs(overlap(p, q)) <= 1 + 1e-12


def test_berry_connection_su2():
    for th in np.linspace(0.1, 3.0, 9):
        a = coherent.berry_connection(CoherentParams("SU2", (th, 0.4)))
        assert abs(a[0]) < 1e-9
        assert abs(a[1] - 0.5 * np.cos(th)) < 1e-9
    assert abs(coherent.berry_connection(CoherentParams("SU2", (np.pi / 2, 0)))[1]) < 1e-9
    assert abs(coherent.berry_connection(CoherentParams("SU2", (0, 0)))[1] - 0.5) < 1e-9


def test_berry_connection_su3_gamma():
    a = coherent.berry_connection(CoherentParams("SU3", (0.8, 0.3, 1.1, 0.0)))
    assert abs(a[2] - 1.0) < 1e-9


def test_berry_connection_scales_with_hbar():
    p = CoherentParams("SU4", (0.8, 0.3, 1.1, 0.2, 0.5, 0.3))
    assert np.allclose(coherent.berry_connection(p, hbar=2.5), 2.5 * coherent.berry_connection(p))


def test_berry_connection_exact_tangents(rng):
    from sunspin.chart import chart

    for g in Group:
        p = sample_params(g, rng)
        psi, tang = chart(g).states(p.array())
        exact = np.real(1j * (tang[0] @ psi[0].conj()))
        assert np.max(np.abs(exact - coherent.berry_connection(p))) < 1e-8
