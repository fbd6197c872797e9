"""Expectation values, printed spin averages, chain energies and the
compatibility report that sets printed formulas against the oracle."""

import csv
import io
from dataclasses import dataclass, field

import numpy as np
from numpy import cos, exp, sin, sqrt

from . import coherent
from .coherent import CoherentParams, CoherentState, Group, build_oracle
from .generators import multipole_ops, operator

REPORT_TOL = 1e-9
HEADER = ("formula", "point", "paper_value", "oracle_value", "abs_dev")


def _amplitudes(state):
    if isinstance(state, CoherentState):
        return state.amplitudes
    if isinstance(state, CoherentParams):
        return build_oracle(state).amplitudes
    return np.asarray(state, dtype=complex)


def expect(state, op):
    """<psi|A|psi> for a state (or params, or raw amplitudes) and an operator matrix."""
    psi = _amplitudes(state)
    op = np.asarray(op, dtype=complex)
    if op.shape != (psi.size, psi.size):
        raise ValueError(f"operator shape {op.shape} does not match state dim {psi.size}")
    return complex(np.vdot(psi, op @ psi))


def spin_vector(state, group):
    rep = Group.parse(group).rep
    return np.array([expect(state, rep.Sx).real, expect(state, rep.Sy).real, expect(state, rep.Sz).real])


def paper_average(group, p):
    """Printed (S+, S-, Sz) averages, evaluated verbatim."""
    group = Group.parse(group)
    d = p.as_dict()
    th, ph = d["theta"], d["phi"]
    if group is Group.SU2:
        amp, z = sin(th), cos(th)
    elif group is Group.SU3:
        amp, z = cos(2 * d["g"]) * sin(th), cos(2 * d["g"]) * cos(th)
    elif group is Group.SU4:
        f = 1.5 * (1 - 4 * cos(d["g"]) ** 2) * cos(2 * d["k"])
        amp, z = f * sin(th), f * cos(th)
    else:
        f = 2 * cos(sqrt(2) * d["g"]) * (1 - 4 * cos(d["k"]) ** 2) * cos(2 * d["n"])
        # the printed Sz row carries sin(theta)
        amp, z = f * sin(th), f * sin(th)
    return complex(exp(1j * ph) * amp), complex(exp(-1j * ph) * amp), float(z)


def paper_connection(group, p):
    """Kinetic one-form coefficients read off the printed Lagrangians (hbar = 1, j = 1)."""
    group = Group.parse(group)
    d = p.as_dict()
    out = dict.fromkeys(group.params, 0.0)
    th = d["theta"]
    if group is Group.SU2:
        out["phi"] = 0.5 * cos(th)
    elif group is Group.SU3:
        c = cos(2 * d["g"])
        out["phi"], out["gamma"] = c * cos(th), c
    elif group is Group.SU4:
        c = cos(2 * d["k"]) * cos(d["g"]) ** 2
        out["beta"] = 3 * cos(d["g"]) ** 2 * c
        out["phi"], out["gamma"] = c * cos(th), c
    else:
        c = 2 * cos(2 * d["n"]) * cos(d["k"]) ** 2 * cos(d["g"]) ** 2
        out["beta"] = 3 * cos(d["k"]) ** 2 * cos(d["g"]) ** 2 * c
        out["m"] = 3 * cos(d["k"]) ** 2 * c
        out["phi"], out["gamma"] = c * cos(th), c
    return np.array([out[name] for name in group.params])


# ---------------------------------------------------------------------------
# Chains


@dataclass(frozen=True)
class ChainState:
    sites: tuple

    def __post_init__(self):
        sites = tuple(self.sites)
        if not sites:
            raise ValueError("a chain needs at least one site")
        groups = {s.group for s in sites}
        if len(groups) != 1:
            raise ValueError("all chain sites must belong to the same group")
        object.__setattr__(self, "sites", sites)

    @property
    def group(self):
        return self.sites[0].group

    def __len__(self):
        return len(self.sites)

    def product_state(self):
        psi = np.ones(1, dtype=complex)
        for p in self.sites:
            psi = np.kron(psi, build_oracle(p).amplitudes)
        return psi


def _site_op(group, op):
    if isinstance(op, str):
        return operator(group.rep, op)
    if isinstance(op, (list, tuple)) and op and all(isinstance(o, str) for o in op):
        m = np.eye(group.dim, dtype=complex)
        for name in op:
            m = m @ operator(group.rep, name)
        return m
    return np.asarray(op, dtype=complex)


def bond_energy(chain, site_i, site_j, term, J):
    """J * <A>_i <B>_j using the product-state factorization.

    ``term`` is a pair (A, B) of matrices, generator names, or name lists.
    """
    n = len(chain)
    for s in (site_i, site_j):
        if not 0 <= s < n:
            raise IndexError(f"site {s} out of range for chain of length {n}")
    a, b = term
    ea = expect(chain.sites[site_i], _site_op(chain.group, a))
    eb = expect(chain.sites[site_j], _site_op(chain.group, b))
    return float((J * ea * eb).real)


# ---------------------------------------------------------------------------
# Compatibility report


@dataclass(frozen=True)
class ReportEntry:
    formula: str
    point: str
    paper_value: complex
    oracle_value: complex

    @property
    def abs_dev(self):
        return float(abs(self.paper_value - self.oracle_value))


@dataclass
class CompatibilityReport:
    group: Group
    entries: list
    assumptions: list = field(default_factory=list)

    def formulas(self):
        return sorted({e.formula for e in self.entries})

    def rows(self, prefix):
        return [e for e in self.entries if e.formula.startswith(prefix)]

    def to_csv(self, path):
        with open(path, "w", newline="", encoding="utf-8") as fh:
            fh.write(self.to_csv_text())

    def to_csv_text(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(HEADER)
        for e in self.entries:
            w.writerow([e.formula, e.point, format_complex(e.paper_value),
                        format_complex(e.oracle_value), f"{e.abs_dev:.17g}"])
        for note in self.assumptions:
            buf.write(f"# {note}\n")
        return buf.getvalue()


def format_complex(z):
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.17g}"
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_point(p):
    return ";".join(f"{k}={v:.17g}" for k, v in p.as_dict().items())


def read_report_csv(path, group=None):
    entries, notes = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    body = [ln for ln in lines if not ln.startswith("#")]
    notes = [ln[2:] for ln in lines if ln.startswith("# ")]
    reader = csv.reader(body)
    header = next(reader)
    if tuple(header) != HEADER:
        raise ValueError(f"unexpected header {header}")
    for row in reader:
        entries.append(ReportEntry(row[0], row[1], complex(row[2]), complex(row[3])))
    return CompatibilityReport(Group.parse(group) if group else None, entries, notes)


def sample_params(group, rng):
    """theta in (0.1, pi - 0.1); angles in [0, 2 pi); g, k, n in (-1, 1)."""
    group = Group.parse(group)
    vals = []
    for name in group.params:
        if name == "theta":
            vals.append(rng.uniform(0.1, np.pi - 0.1))
        elif name in ("g", "k", "n"):
            vals.append(rng.uniform(-1.0, 1.0))
        else:
            vals.append(rng.uniform(0.0, 2 * np.pi))
    return CoherentParams(group, vals)


def _reconciliation_rows(group):
    if group.dim < 3:
        return []
    rows = []
    for e in multipole_ops(group.rep).reconciliation:
        rows.append(ReportEntry(f"generator.{e.operator}[{e.row},{e.col}]", "-", e.printed, e.ladder))
    return rows


def compatibility_report(group, n_samples=100, seed=0, tol=REPORT_TOL, include_eom=True):
    """Every printed-formula vs oracle deviation above ``tol`` at seeded sample points."""
    from .dynamics import eom_report_rows

    group = Group.parse(group)
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    rep = group.rep
    rows = _reconciliation_rows(group)
    points = [sample_params(group, rng) for _ in range(n_samples)]
    for p in points:
        where = format_point(p)
        oracle = build_oracle(p).amplitudes
        printed = coherent.closed_form_amplitudes(p)
        for i in range(group.dim):
            rows.append(ReportEntry(f"amplitude.C{i}", where, printed[i], oracle[i]))
        rows.append(ReportEntry("amplitude.norm", where, np.linalg.norm(printed), 1.0))
        sp, sm, sz = paper_average(group, p)
        rows.append(ReportEntry("average.S+", where, sp, expect(oracle, rep.Sp)))
        rows.append(ReportEntry("average.S-", where, sm, expect(oracle, rep.Sm)))
        rows.append(ReportEntry("average.Sz", where, sz, expect(oracle, rep.Sz).real))
        fd = coherent.berry_connection(p)
        for name, pv, ov in zip(group.params, paper_connection(group, p), fd):
            rows.append(ReportEntry(f"connection.A_{name}", where, pv, ov))
        if group is Group.SU5:
            th = p["theta"]
            series = coherent.wigner_d_series(th)
            exact = coherent.wigner_d_oracle(rep, th)
            for i in range(5):
                for j in range(5):
                    rows.append(ReportEntry(f"wigner.series[{i},{j}]", f"theta={th:.17g}",
                                            series[i, j], exact[i, j]))
    if include_eom:
        rows.extend(eom_report_rows(group, points))
    kept = [r for r in rows if r.abs_dev > tol]
    kept.sort(key=lambda r: (r.formula, -r.abs_dev, r.point))
    notes = list(coherent.CLOSED_FORM_NOTES.get(group, ()))
    if group.dim == 5:
        notes.append("dim-5 Qxy ladder form uses the dim-3 prefactor 1/(4i); no ladder form is printed for it")
    return CompatibilityReport(group, kept, notes)
