"""``photon-subsets`` command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import verify
from .applications import projector_expectation_series, reduced_purity_direct, reduced_purity_formula, stokes
from .config import hermitian_tolerance
from .correlations import CorrelationIndex, correlation_table, expectation, parse_pattern
from .errors import ConsistencyError, PhotonSubsetError
from .fock import sector_decompose
from .io import dumps, load_state, load_unitary
from .linear_optics import apply_unitary
from .loss import loss
from .random_states import KINDS, random_state
from .removal import remove_k
from .subsets import subset_state, subset_weights

EXAMPLES = {
    "reduce": "photon-subsets reduce --input noon.json --remove 1",
    "subset": "photon-subsets subset --input state.json --q 2 --method direct",
    "correlate": 'photon-subsets correlate --input state.json --k "2,0" --l "1,1"',
    "loss": "photon-subsets loss --input state.json --eta 0.5 --method kraus",
    "transform": "photon-subsets transform --input state.json --unitary U.json",
    "purity": "photon-subsets purity --input state.json --q 1",
    "stokes": "photon-subsets stokes --input state.json",
    "project": "photon-subsets project --input state.json --m 2 --method series",
    "verify": "photon-subsets verify all --seed 42",
    "random": "photon-subsets random --modes 2 --n-max 2 --kind pure --seed 0",
}


class UsageError(Exception):
    def __init__(self, flag: str, message: str, command: str | None = None):
        super().__init__(message)
        self.flag = flag
        self.command = command


def num(x: float) -> str:
    """A real number with 17 significant digits."""
    return format(float(x), ".17g")


def cnum(z: complex) -> str:
    z = complex(z)
    return f"{num(z.real)} {num(z.imag)}"


def _digest(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    checks: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=1)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("", message, self.prog.split()[-1] if " " in self.prog else None)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="photon-subsets", allow_abbrev=False, description="Photon-subset states, removal, loss and correlations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_text, needs_input=True):
        sp = sub.add_parser(name, help=help_text, allow_abbrev=False)
        if needs_input:
            sp.add_argument("--input", required=True, help="state JSON file")
        sp.add_argument("--output", help="write the result here instead of stdout")
        sp.add_argument("--tolerance", type=float, help="Hermiticity tolerance on load / check tolerance override")
        return sp

    sp = add("reduce", "remove k photons with Tr_1 applied k times")
    sp.add_argument("--remove", type=int, default=1)
    sp.add_argument("--normalize", action="store_true", help="renormalize the trace-decreasing result")

    sp = add("subset", "state of q photons picked at random from the beam")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--method", default="direct", choices=["direct", "convex", "binomial"])

    sp = add("correlate", "normally ordered correlation <O_kl>")
    sp.add_argument("--k", help='creation pattern, e.g. "2,0"')
    sp.add_argument("--l", help='annihilation pattern, e.g. "1,1"')
    sp.add_argument("--all-order", type=int, dest="all_order", help="print every balanced correlation of this order as CSV")

    sp = add("loss", "uniform beam-splitter loss")
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--method", default="kraus", choices=["kraus", "fixedN", "general"])

    sp = add("transform", "apply a passive linear network")
    sp.add_argument("--unitary", required=True, help='JSON {"re": [[...]], "im": [[...]]}')

    sp = add("purity", "purity of the q-photon reduced state of a pure fixed-N state")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--method", default="formula", choices=["formula", "direct"])

    add("stokes", "Stokes parameters of a two-mode state")

    sp = add("project", "single-mode photon-number probability")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--method", default="series", choices=["series", "direct"])

    sp = add("verify", "run seeded property suites", needs_input=False)
    sp.add_argument("suite", choices=[*verify.SUITES, "all"])
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--q", type=int, help="uniqueness suite (eq13) only: restrict to this subset size")
    sp.add_argument("--eta", type=float, help="loss only: transmission to test")

    sp = add("random", "write a seeded random state", needs_input=False)
    sp.add_argument("--modes", type=int, required=True)
    sp.add_argument("--n-max", type=int, dest="n_max", required=True)
    sp.add_argument("--kind", default="mixed", choices=list(KINDS))
    sp.add_argument("--seed", type=int, default=0)
    return p


def _emit(args, text: str, report: RunReport) -> None:
    if args.output:
        Path(args.output).write_text(text if text.endswith("\n") else text + "\n")
        report.outputs.append(args.output)
    else:
        print(text)


def _load(args, report: RunReport):
    report.inputs[args.input] = _digest(args.input)
    tol = args.tolerance if args.tolerance is not None else hermitian_tolerance()
    return load_state(args.input, tol=tol)


def _cmd_reduce(args, report):
    if args.remove < 0:
        raise UsageError("--remove", f"--remove must be non-negative, got {args.remove}", "reduce")
    rho = _load(args, report)
    result = remove_k(rho, args.remove)
    state = result.state.normalize() if args.normalize else result.state
    meta = {"removed": result.removed, "trace_retained": result.trace_retained, "normalized": args.normalize}
    _emit(args, dumps(state, meta), report)
    return 0


def _cmd_subset(args, report):
    rho = _load(args, report)
    state = subset_state(rho, args.q, method=args.method)
    sw = subset_weights(sector_decompose(rho), args.q)
    meta = {"q": args.q, "normalization": sw.normalization, "weights": {str(n): w for n, w in sorted(sw.weights.items())}}
    _emit(args, dumps(state, meta), report)
    return 0


def _cmd_correlate(args, report):
    rho = _load(args, report)
    if args.all_order is not None:
        buf = _io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "l", "re", "im"])
        table = correlation_table(rho, args.all_order)
        for (k, l), v in sorted(table.items()):
            writer.writerow([",".join(map(str, k)), ",".join(map(str, l)), num(v.real), num(v.imag)])
        _emit(args, buf.getvalue().rstrip("\n"), report)
        return 0
    if args.k is None or args.l is None:
        raise UsageError("--k/--l", "give both --k and --l, or --all-order", "correlate")
    try:
        idx = CorrelationIndex(parse_pattern(args.k), parse_pattern(args.l))
    except ValueError as exc:
        raise UsageError("--k/--l", str(exc), "correlate") from exc
    _emit(args, cnum(expectation(rho, idx)), report)
    return 0


def _cmd_loss(args, report):
    rho = _load(args, report)
    _emit(args, dumps(loss(rho, args.eta, method=args.method), {"eta": args.eta, "method": args.method}), report)
    return 0


def _cmd_transform(args, report):
    rho = _load(args, report)
    report.inputs[args.unitary] = _digest(args.unitary)
    _emit(args, dumps(apply_unitary(rho, load_unitary(args.unitary))), report)
    return 0


def _cmd_purity(args, report):
    rho = _load(args, report)
    if not rho.is_fixed_n():
        raise UsageError("--input", "purity needs a state with one photon number", "purity")
    n = rho.n_max
    fn = reduced_purity_formula if args.method == "formula" else reduced_purity_direct
    _emit(args, num(fn(rho, n, args.q)), report)
    return 0


def _cmd_stokes(args, report):
    rho = _load(args, report)
    _emit(args, " ".join(num(x) for x in stokes(rho).as_tuple()), report)
    return 0


def _cmd_project(args, report):
    rho = _load(args, report)
    series, direct = projector_expectation_series(rho, args.m)
    _emit(args, num(series if args.method == "series" else direct), report)
    return 0


def _cmd_random(args, report):
    if not 1 <= args.modes <= 4:
        raise UsageError("--modes", f"--modes must lie in 1..4, got {args.modes}", "random")
    if not 0 <= args.n_max <= 6:
        raise UsageError("--n-max", f"--n-max must lie in 0..6, got {args.n_max}", "random")
    state = random_state(args.modes, args.n_max, args.kind, args.seed)
    _emit(args, dumps(state), report)
    return 0


def _cmd_verify(args, report):
    kwargs = {"seed": args.seed, "tolerance": args.tolerance}
    if args.q is not None:
        if args.suite != "eq13":
            raise UsageError("--q", "--q only applies to the eq13 suite", "verify")
        kwargs["q"] = args.q
    if args.eta is not None:
        if args.suite != "loss":
            raise UsageError("--eta", "--eta only applies to the loss suite", "verify")
        kwargs["eta"] = args.eta
    checks = verify.run_all(**kwargs) if args.suite == "all" else verify.SUITES[args.suite](**kwargs)
    for check in checks:
        print(check.line(), file=sys.stderr)
    report.checks = [c.to_dict() for c in checks]
    return 0 if all(c.passed for c in checks) else 1


COMMANDS = {
    "reduce": _cmd_reduce,
    "subset": _cmd_subset,
    "correlate": _cmd_correlate,
    "loss": _cmd_loss,
    "transform": _cmd_transform,
    "purity": _cmd_purity,
    "stokes": _cmd_stokes,
    "project": _cmd_project,
    "verify": _cmd_verify,
    "random": _cmd_random,
}


def _usage(exc: UsageError) -> None:
    flag = f"{exc.flag}: " if exc.flag else ""
    print(f"usage error: {flag}{exc}", file=sys.stderr)
    example = EXAMPLES.get(exc.command or "")
    examples = [example] if example else list(EXAMPLES.values())[:3]
    for line in examples:
        print(f"  example: {line}", file=sys.stderr)


def run(argv: list[str] | None = None) -> int:
    start = time.perf_counter()
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        words = sys.argv[1:] if argv is None else argv
        if exc.command is None and words and words[0] in EXAMPLES:
            exc.command = words[0]
        _usage(exc)
        return 2
    if args.command is None:
        _usage(UsageError("", "a subcommand is required"))
        return 2
    report = RunReport(command=args.command if args.command != "verify" else f"verify {args.suite}")
    try:
        code = COMMANDS[args.command](args, report)
    except UsageError as exc:
        _usage(exc)
        return 2
    except ConsistencyError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (PhotonSubsetError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    report.wall_time = time.perf_counter() - start
    if args.command == "verify":
        print(report.to_json())
    return code


def main() -> None:
    sys.exit(run())
