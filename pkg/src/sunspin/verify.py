"""Invariant suite behind ``sunspin verify``.

Each check returns ``(ok, detail)``. Sample counts are smaller than in the test
suite so the whole run stays interactive.
"""

from dataclasses import dataclass

import numpy as np

from . import algebra, coherent, dynamics, observables, quantum
from .coherent import CoherentParams, Group, build_closed_form, build_oracle
from .generators import multipole_ops, spin_rep
from .observables import sample_params

GROUPS = tuple(Group)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def _rand_matrix(rng, d, scale=1.0):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return scale * a / np.linalg.norm(a, 2)


def check_expm_inverse(rng):
    # anti-Hermitian up to norm 10; general matrices up to norm 1, where
    # ||e^A|| ||e^-A|| stays O(1) and the bound is meaningful
    worst = 0.0
    for d in (2, 3, 4, 5, 8):
        h = _rand_matrix(rng, d)
        anti = 0.5j * rng.uniform(0, 10) * (h + h.conj().T) / np.linalg.norm(h + h.conj().T, 2)
        for a in (anti, _rand_matrix(rng, d, rng.uniform(0, 1))):
            worst = max(worst, algebra.max_abs(algebra.expm(a) @ algebra.expm(-a) - np.eye(d)))
    return worst < 1e-12, f"max |e^A e^-A - I| = {worst:.2e}"


def check_expm_blocks(rng):
    a, b = _rand_matrix(rng, 3, 2.0), _rand_matrix(rng, 5, 2.0)
    block = np.zeros((8, 8), dtype=complex)
    block[:3, :3], block[3:, 3:] = a, b
    want = np.zeros_like(block)
    want[:3, :3], want[3:, 3:] = algebra.expm(a), algebra.expm(b)
    dev = algebra.max_abs(algebra.expm(block) - want)
    return dev < 1e-12, f"block deviation {dev:.2e}"


def check_kron(rng):
    a, c = _rand_matrix(rng, 3), _rand_matrix(rng, 3)
    b, d = _rand_matrix(rng, 4), _rand_matrix(rng, 4)
    dev = algebra.max_abs(algebra.kron(a, b) @ algebra.kron(c, d) - algebra.kron(a @ c, b @ d))
    return dev < 1e-12, f"mixed-product deviation {dev:.2e}"


def check_commutators(rng):
    worst = 0.0
    for two_s in range(1, 5):
        r = spin_rep(two_s)
        worst = max(worst,
                    algebra.max_abs(algebra.commutator(r.Sx, r.Sy) - 1j * r.Sz),
                    algebra.max_abs(algebra.commutator(r.Sy, r.Sz) - 1j * r.Sx),
                    algebra.max_abs(algebra.commutator(r.Sz, r.Sx) - 1j * r.Sy),
                    algebra.max_abs(algebra.commutator(r.Sz, r.Sp) - r.Sp),
                    algebra.max_abs(r.Sx @ r.Sx + r.Sy @ r.Sy + r.Sz @ r.Sz
                                    - r.spin * (r.spin + 1) * np.eye(r.dim)))
    return worst < 1e-12, f"max commutator/Casimir deviation {worst:.2e}"


def check_multipoles(rng):
    worst = 0.0
    for two_s in (2, 3, 4):
        ms = multipole_ops(spin_rep(two_s))
        for m in (ms.Qxy, ms.Oxyz, ms.Xxyzl):
            if m is None:
                continue
            worst = max(worst, algebra.max_abs(m - m.conj().T), abs(np.trace(m)))
    again = [multipole_ops(spin_rep(t)).reconciliation for t in (2, 3, 4)]
    same = again == [multipole_ops(spin_rep(t)).reconciliation for t in (2, 3, 4)]
    return worst < 1e-12 and same, f"hermiticity/trace deviation {worst:.2e}, reconciliation stable {same}"


def check_oracle_norm(rng, n=200):
    worst = 0.0
    for g in GROUPS:
        for _ in range(n):
            worst = max(worst, abs(build_oracle(sample_params(g, rng)).norm - 1))
    return worst < 1e-12, f"max norm deviation {worst:.2e}"


def check_closed_form(rng, n=200):
    worst = 0.0
    for g in (Group.SU2, Group.SU3):
        for _ in range(n):
            p = sample_params(g, rng)
            worst = max(worst, np.max(np.abs(build_closed_form(p).amplitudes - build_oracle(p).amplitudes)))
    return worst < 1e-10, f"SU2/SU3 closed form vs oracle {worst:.2e}"


def check_wigner_group(rng):
    worst = 0.0
    for two_s in range(1, 5):
        r = spin_rep(two_s)
        for _ in range(5):
            a, b = rng.uniform(-np.pi, np.pi, size=2)
            worst = max(worst, algebra.max_abs(coherent.wigner_d(r, a) @ coherent.wigner_d(r, b)
                                               - coherent.wigner_d(r, a + b)))
    return worst < 1e-12, f"one-parameter subgroup deviation {worst:.2e}"


def check_overlap(rng, n=50):
    worst_sym = worst_mag = 0.0
    for g in GROUPS:
        for _ in range(n):
            p, q = sample_params(g, rng), sample_params(g, rng)
            worst_sym = max(worst_sym, abs(coherent.overlap(p, q) - np.conj(coherent.overlap(q, p))))
            worst_mag = max(worst_mag, abs(coherent.overlap(p, q)))
    ok = worst_sym < 1e-12 and worst_mag <= 1 + 1e-12
    return ok, f"hermitian symmetry {worst_sym:.2e}, max |overlap| {worst_mag:.15f}"


def check_connection(rng, n=50):
    worst = 0.0
    for g in (Group.SU2, Group.SU3):
        for _ in range(n):
            p = sample_params(g, rng)
            worst = max(worst, np.max(np.abs(coherent.berry_connection(p)
                                             - observables.paper_connection(g, p))))
    return worst < 1e-6, f"FD connection vs printed kinetic terms {worst:.2e}"


def check_expect(rng, n=50):
    worst_im = worst_sz = 0.0
    for g in GROUPS:
        rep = g.rep
        for _ in range(n):
            p = sample_params(g, rng)
            for op in (rep.Sx, rep.Sy, rep.Sz):
                worst_im = max(worst_im, abs(observables.expect(p, op).imag))
            worst_sz = max(worst_sz, abs(observables.expect(p, rep.Sz).real) - rep.spin)
    return worst_im < 1e-12 and worst_sz <= 1e-12, f"max Im {worst_im:.2e}, max |Sz|-s {worst_sz:.2e}"


def check_bond_energy(rng):
    worst = 0.0
    for g in GROUPS:
        rep = g.rep
        chain = observables.ChainState((sample_params(g, rng), sample_params(g, rng)))
        for a, b in ((rep.Sx, rep.Sx), (rep.Sz, rep.Sy)):
            direct = observables.expect(chain.product_state(), np.kron(a, b)).real
            worst = max(worst, abs(observables.bond_energy(chain, 0, 1, (a, b), 0.7) - 0.7 * direct))
    return worst < 1e-12, f"bond energy vs Kronecker expectation {worst:.2e}"


def check_report_determinism(rng):
    ok = True
    for g in GROUPS:
        a = observables.compatibility_report(g, n_samples=5, seed=7).to_csv_text()
        b = observables.compatibility_report(g, n_samples=5, seed=7).to_csv_text()
        ok &= a == b
    return ok, "reports byte-identical" if ok else "reports differ between runs"


def check_energy_conservation(rng):
    worst, skipped, runs = 0.0, 0, 0
    for g in GROUPS:
        for _ in range(2):
            h = dynamics.HamiltonianSpec.single(g, quantum.random_hermitian(g.dim, rng))
            p = sample_params(g, rng)
            try:
                traj = dynamics.integrate(g, h, p, 1e-3, 2000)
            except dynamics.SingularPoint:
                continue
            runs += 1
            if traj.aborted:
                skipped += 1
                continue
            e = traj.energies
            worst = max(worst, np.max(np.abs(e - e[0])) / max(1.0, abs(e[0])))
    return worst < 1e-9, f"max relative drift {worst:.2e} over {runs - skipped} runs ({skipped} flagged)"


def check_omega(rng, n=20):
    worst_asym, worst_cond = 0.0, 0.0
    for g in GROUPS:
        ch = dynamics.chart(g)
        for _ in range(n):
            w = ch.omega(sample_params(g, rng).array())
            worst_asym = max(worst_asym, algebra.max_abs(w + w.T))
            sv = np.linalg.svd(w, compute_uv=False)
            worst_cond = max(worst_cond, sv[0] / sv[-1])
    return worst_asym == 0 and worst_cond < 1e12, f"asymmetry {worst_asym:.1e}, worst condition {worst_cond:.2e}"


def check_orthogonality(rng, n=20):
    worst = 0.0
    for g in GROUPS:
        h = dynamics.report_hamiltonian(g)
        for _ in range(n):
            try:
                worst = max(worst, abs(dynamics.energy_orthogonality(g, h, sample_params(g, rng))))
            except dynamics.SingularPoint:
                continue
    return worst < 1e-9, f"max |grad H . qdot| {worst:.2e}"


def check_action(rng):
    p = CoherentParams(Group.SU2, (0.7, 0.2))
    zero = dynamics.discrete_action([p] * 5, np.zeros((2, 2)), 0.1)
    th, n = 0.9, 400
    loop = [CoherentParams(Group.SU2, (th, 2 * np.pi * k / n)) for k in range(n + 1)]
    phase = sum(np.angle(coherent.overlap(b, a)) for a, b in zip(loop[:-1], loop[1:]))
    expected = 0.5 * 2 * np.pi * np.cos(th)
    dev = abs(phase - expected)
    return zero == 0 and dev < 1e-3, f"constant path {zero}, loop phase deviation {dev:.2e}"


def check_propagation(rng):
    H = quantum.random_hermitian(4, rng)
    psi = build_oracle(sample_params(Group.SU4, rng)).amplitudes
    a = quantum.propagate(H, psi, 0.7)
    b = quantum.propagate(H, quantum.propagate(H, psi, 0.3), 0.4)
    dev = np.max(np.abs(a - b))
    return dev < 1e-12, f"composition deviation {dev:.2e}"


def check_compare(rng):
    h = dynamics.HamiltonianSpec.single(Group.SU3, quantum.random_hermitian(3, rng))
    c = quantum.compare(h, sample_params(Group.SU3, rng), 0.2, 1e-3)
    d = c.deviation
    ok = bool(np.all(d >= 0) and np.max(d[0]) < 1e-12)
    return ok, f"t=0 deviation {np.max(d[0]):.2e}, overall {c.max_deviation:.2e}"


def check_unity(rng):
    devs = [quantum.unity_check(n, n) for n in (8, 16, 32, 64)]
    ok = all(b <= a + 1e-14 for a, b in zip(devs, devs[1:]))
    return ok, "deviations " + ", ".join(f"{d:.1e}" for d in devs)


CHECKS = (
    ("expm inverse", check_expm_inverse),
    ("expm block diagonal", check_expm_blocks),
    ("kron mixed product", check_kron),
    ("su(2) commutators and Casimir", check_commutators),
    ("multipoles Hermitian traceless", check_multipoles),
    ("oracle normalization", check_oracle_norm),
    ("closed form SU2/SU3", check_closed_form),
    ("Wigner one-parameter subgroup", check_wigner_group),
    ("overlap symmetry", check_overlap),
    ("Berry connection vs kinetic terms", check_connection),
    ("expectation values", check_expect),
    ("bond energy factorization", check_bond_energy),
    ("report determinism", check_report_determinism),
    ("energy conservation", check_energy_conservation),
    ("symplectic form", check_omega),
    ("energy orthogonality", check_orthogonality),
    ("discrete action", check_action),
    ("propagator composition", check_propagation),
    ("classical vs quantum metrics", check_compare),
    ("resolution of unity", check_unity),
)


def run_suite(seed=0):
    results = []
    for name, fn in CHECKS:
        rng = np.random.default_rng([seed, len(results)])
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
