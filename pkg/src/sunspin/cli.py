"""Command-line front end.

    sunspin simulate --config run.json [--output traj.csv] [--method berry|paper]
    sunspin expect   --config run.json
    sunspin derive   --config run.json
    sunspin compare  --config run.json
    sunspin verify   [--seed N]
    sunspin report   su4 [--output report.csv] [--seed N]

Exit codes: 0 ok, 1 invalid config, 2 singular point, 3 verification failure.
"""

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import algebra, dynamics, observables, quantum, verify
from .coherent import CoherentParams, Group
from .dynamics import EomMethod, HamiltonianError, HamiltonianSpec, SingularPoint, Term

EXIT_OK, EXIT_CONFIG, EXIT_SINGULAR, EXIT_VERIFY = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Hamiltonian grammar

_FACTOR = re.compile(r"^([A-Za-z+\-]+)(?:@(\d+))?$")


def _parse_coeff(value):
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ConfigError(f"complex coefficient must be [re, im], got {value!r}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError:
            raise ConfigError(f"bad coefficient {value!r}") from None
    return complex(value)


def parse_term_text(text):
    """'0.5 Sz@0 Sz@1' -> (0.5, [(0, ['Sz']), (1, ['Sz'])]).

    The leading number is optional (default 1). A factor without ``@site``
    acts on site 0. Repeated factors on one site multiply in written order.
    """
    tokens = text.split()
    if not tokens:
        raise ConfigError("empty Hamiltonian term")
    coeff = 1.0
    try:
        coeff = _parse_coeff(tokens[0])
        tokens = tokens[1:]
    except (ConfigError, ValueError):
        pass
    factors = []
    for tok in tokens:
        m = _FACTOR.match(tok)
        if not m:
            raise ConfigError(f"bad factor {tok!r}; expected Name@site")
        name, site = m.group(1), int(m.group(2) or 0)
        if factors and factors[-1][0] == site:
            factors[-1][1].append(name)
        else:
            factors.append((site, [name]))
    return coeff, factors


def _parse_term(term):
    if isinstance(term, str):
        return parse_term_text(term)
    if isinstance(term, dict):
        if "factors" not in term:
            raise ConfigError(f"term object needs 'factors': {term!r}")
        coeff = _parse_coeff(term.get("coeff", 1.0))
        factors = []
        for item in term["factors"]:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise ConfigError(f"factor must be [site, [names]], got {item!r}")
            site, names = item
            factors.append((int(site), [names] if isinstance(names, str) else list(names)))
        return coeff, factors
    if isinstance(term, (list, tuple)) and len(term) == 2:
        return _parse_coeff(term[0]), [(int(s), list(n)) for s, n in term[1]]
    raise ConfigError(f"cannot parse Hamiltonian term {term!r}")


def parse_hamiltonian(terms, group, chain_length=1):
    """Build a validated HamiltonianSpec from strings, objects or (coeff, factors) pairs."""
    if isinstance(terms, str):
        terms = [t for t in terms.split(";") if t.strip()]
    parsed = [_parse_term(t) for t in terms]
    spec_terms = tuple(Term(c, tuple((s, tuple(n)) for s, n in f)) for c, f in parsed)
    try:
        return HamiltonianSpec(Group.parse(group), int(chain_length), spec_terms)
    except HamiltonianError as exc:
        raise ConfigError(str(exc)) from None


# ---------------------------------------------------------------------------
# Config


@dataclass
class RunConfig:
    group: Group
    chain_length: int
    hamiltonian: HamiltonianSpec
    initial: list
    dt: float = 1e-3
    steps: int = 1000
    method: EomMethod = EomMethod.BERRY
    output: str = None
    seed: int = 0
    hbar: float = 1.0
    samples: int = 100


def _parse_initial(raw, group, chain_length):
    if raw is None:
        raise ConfigError("config needs 'initial' parameters")
    if isinstance(raw, dict) or (raw and not isinstance(raw[0], (list, dict))):
        raw = [raw]
    if len(raw) != chain_length:
        raise ConfigError(f"'initial' has {len(raw)} sites, chain length is {chain_length}")
    out = []
    for site in raw:
        try:
            if isinstance(site, dict):
                out.append(CoherentParams.from_mapping(group, site))
            else:
                out.append(CoherentParams(group, site))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad initial parameters {site!r}: {exc}") from None
    return out


def config_from_dict(data):
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    try:
        group = Group.parse(data["group"])
    except KeyError:
        raise ConfigError("config needs 'group'") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    L = int(data.get("chain_length", 1))
    if L < 1:
        raise ConfigError("chain_length must be >= 1")
    if "hamiltonian" not in data:
        raise ConfigError("config needs 'hamiltonian'")
    h = parse_hamiltonian(data["hamiltonian"], group, L)
    try:
        cfg = RunConfig(
            group=group, chain_length=L, hamiltonian=h,
            initial=_parse_initial(data.get("initial"), group, L),
            dt=float(data.get("dt", 1e-3)), steps=int(data.get("steps", 1000)),
            method=EomMethod.parse(data.get("method", "berry")),
            output=data.get("output"), seed=int(data.get("seed", 0)),
            hbar=float(data.get("hbar", 1.0)), samples=int(data.get("samples", 100)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    if not cfg.dt > 0:
        raise ConfigError("dt must be positive")
    if cfg.steps < 0:
        raise ConfigError("steps must be >= 0")
    if not cfg.hbar > 0:
        raise ConfigError("hbar must be positive")
    return cfg


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc}") from None
    return config_from_dict(data)


# ---------------------------------------------------------------------------
# CSV


def _g(x):
    return f"{float(x):.17g}"


def trajectory_header(group, n_sites):
    cols = ["t"]
    for i in range(n_sites):
        cols += [f"{name}_{i}" for name in group.params]
    for i in range(n_sites):
        cols += [f"Sx_{i}", f"Sy_{i}", f"Sz_{i}"]
    return cols + ["energy"]


def trajectory_csv(traj):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(trajectory_header(traj.group, traj.n_sites))
    for n in range(len(traj)):
        row = [_g(traj.times[n])]
        row += [_g(v) for v in traj.points[n].ravel()]
        row += [_g(v) for v in traj.observables[n].ravel()]
        row.append(_g(traj.energies[n]))
        w.writerow(row)
    return buf.getvalue()


def read_csv(path_or_text):
    """Header and float rows of any numeric CSV this tool writes."""
    text = path_or_text
    if "\n" not in path_or_text:
        with open(path_or_text, encoding="utf-8") as fh:
            text = fh.read()
    rows = list(csv.reader(ln for ln in text.splitlines() if ln and not ln.startswith("#")))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]])


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_simulate(cfg, out):
    try:
        traj = dynamics.integrate(cfg.group, cfg.hamiltonian, cfg.initial, cfg.dt, cfg.steps,
                                  cfg.method, cfg.hbar)
    except SingularPoint as exc:
        print(f"singular initial point: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    _emit(trajectory_csv(traj), out)
    if traj.aborted:
        print(f"stopped at t={traj.times[-1]:.17g}: {traj.reason}", file=sys.stderr)
        return EXIT_SINGULAR
    return EXIT_OK


def cmd_expect(cfg, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["site", "observable", "value"])
    rep = cfg.group.rep
    names = ["Sx", "Sy", "Sz", "Qxy", "Oxyz", "Xxyzl"][: {2: 3, 3: 4, 4: 5, 5: 6}[cfg.group.dim]]
    from .generators import operator

    for i, p in enumerate(cfg.initial):
        for name in names:
            w.writerow([i, name, _g(observables.expect(p, operator(rep, name)).real)])
    w.writerow(["all", "energy", _g(dynamics.classical_energy(cfg.hamiltonian, cfg.initial))])
    _emit(buf.getvalue(), out)
    return EXIT_OK


def cmd_derive(cfg, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["quantity", "site", "row", "col", "value"])
    try:
        berry = dynamics.eom_rhs(cfg.group, cfg.hamiltonian, cfg.initial, EomMethod.BERRY, cfg.hbar)
    except SingularPoint as exc:
        print(f"singular point: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    try:
        paper = dynamics.eom_rhs(cfg.group, cfg.hamiltonian, cfg.initial, EomMethod.PAPER, cfg.hbar)
    except SingularPoint as exc:
        print(f"printed equations singular here: {exc}", file=sys.stderr)
        paper = np.full_like(berry, np.nan)
    n = cfg.group.n_params
    for i, p in enumerate(cfg.initial):
        om = dynamics.chart(cfg.group).omega(p.array(), cfg.hbar)
        for a in range(n):
            for b in range(n):
                w.writerow(["omega", i, cfg.group.params[a], cfg.group.params[b], _g(om[a, b])])
        for a, name in enumerate(cfg.group.params):
            w.writerow(["berry_rhs", i, name, "", _g(berry[i * n + a])])
            w.writerow(["paper_rhs", i, name, "", _g(paper[i * n + a])])
    _emit(buf.getvalue(), out)
    return EXIT_OK


def cmd_compare(cfg, out):
    if cfg.group.dim ** cfg.chain_length > algebra.MAX_DIM:
        print("quantum dimension exceeds 256", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cmp = quantum.compare(cfg.hamiltonian, cfg.initial, cfg.dt * cfg.steps, cfg.dt, cfg.hbar)
    except SingularPoint as exc:
        print(f"singular initial point: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["t"]
    for i in range(cfg.chain_length):
        header += [f"dSx_{i}", f"dSy_{i}", f"dSz_{i}"]
    w.writerow(header)
    dev = cmp.deviation
    for n, t in enumerate(cmp.times):
        w.writerow([_g(t)] + [_g(v) for v in dev[n].ravel()])
    _emit(buf.getvalue(), out)
    for i, m in enumerate(cmp.max_per_site):
        print(f"site {i}: max |dS| = {m:.3e}", file=sys.stderr)
    if cmp.aborted:
        print(f"classical run stopped at t={cmp.times[-1]:.17g}: {cmp.reason}", file=sys.stderr)
        return EXIT_SINGULAR
    return EXIT_OK


def cmd_verify(seed, out):
    results = verify.run_suite(seed)
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}: {r.detail}" for r in results]
    _emit("\n".join(lines) + "\n", out)
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFY


def cmd_report(group, seed, samples, out):
    rep = observables.compatibility_report(group, n_samples=samples, seed=seed)
    _emit(rep.to_csv_text(), out)
    flagged = rep.formulas()
    print(f"{len(rep.entries)} rows above tolerance across {len(flagged)} formulas", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="sunspin", description="SU(N) spin coherent-state dynamics")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--output", help="output path (default: stdout)")
        p.add_argument("--seed", type=int, help="random seed")

    for name in ("simulate", "expect", "derive", "compare"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--method", choices=["berry", "paper"])
    common(sub.add_parser("verify"), config=False)
    p = sub.add_parser("report")
    p.add_argument("group", help="su2 | su3 | su4 | su5")
    p.add_argument("--samples", type=int, default=100)
    common(p, config=False)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    seed = 0 if args.seed is None else args.seed
    if args.command == "verify":
        return cmd_verify(seed, args.output)
    if args.command == "report":
        try:
            group = Group.parse(args.group)
        except ValueError as exc:
            print(exc, file=sys.stderr)
            return EXIT_CONFIG
        return cmd_report(group, seed, args.samples, args.output)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.method:
        cfg.method = EomMethod.parse(args.method)
    if args.seed is not None:
        cfg.seed = args.seed
    out = args.output or cfg.output
    handler = {"simulate": cmd_simulate, "expect": cmd_expect, "derive": cmd_derive, "compare": cmd_compare}
    return handler[args.command](cfg, out)


if __name__ == "__main__":
    sys.exit(main())
