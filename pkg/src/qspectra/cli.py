"""Command line front end.

Exit codes: 0 success, 1 parse or configuration error, 2 violated
precondition, 3 numerical failure, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys

import numpy as np

from .bounded_transform import bounded_transform, decompose_via_transform, inverse_transform
from .checks import run_suites
from .errors import NotInjective, QSpectraError
from .left_mult import LeftScalarMultiplication, is_left_scalar_multiplication, left_mult_defects
from .left_spectrum import left_spectrum
from .qmatrix import QMatrix, operator_norm
from .quaternion import I, J, K, Quaternion, require_unit
from .slice_decomp import decompose
from .spectral import (
    classify_spectrum, integrate, invert_via_calculus, reconstruct, spectral_decompose,
)

log = logging.getLogger("qspectra")


class ConfigError(Exception):
    """Bad command line configuration or unreadable input."""


class VerificationFailure(Exception):
    """At least one invariant failed."""


# ---------------------------------------------------------------------------
# phi expressions
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?|\.\d+(?:[eE][-+]?\d+)?)"
    r"|(?P<quat>\[[^\]]*\])"
    r"|(?P<conj>conj\(\s*z\s*\)|zbar)"
    r"|(?P<z>z)"
    r"|(?P<unit>[ijk])"
    r"|(?P<op>[-+*^]))"
)


def parse_phi(text: str) -> list:
    """Parse a polynomial in ``z`` and ``conj(z)`` with quaternion coefficients.

    Terms are products of factors: real numbers, quaternion literals
    ``[w,x,y,z]``, the units ``i j k``, ``z`` and ``conj(z)`` (or ``zbar``),
    each optionally raised to a nonnegative integer power with ``^``.
    Returns a list of ``(sign, factors)``; each factor is ``("c", q)``,
    ``("z", power)`` or ``("zbar", power)``.
    """
    pos, tokens = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ConfigError(f"cannot parse phi near {text[pos:]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    if not tokens:
        raise ConfigError("empty phi expression")

    terms, sign, factors, k = [], 1, [], 0
    expect_factor = True
    while k < len(tokens):
        kind, val = tokens[k]
        if kind == "op" and val in "+-" and expect_factor and not factors:
            sign = sign * (-1 if val == "-" else 1)
        elif kind == "op" and val in "+-":
            terms.append((sign, factors))
            sign, factors, expect_factor = (-1 if val == "-" else 1), [], True
        elif kind == "op" and val == "*":
            if expect_factor:
                raise ConfigError("misplaced '*' in phi")
            expect_factor = True
        elif kind == "op" and val == "^":
            if expect_factor or k + 1 >= len(tokens) or tokens[k + 1][0] != "num":
                raise ConfigError("'^' must follow a factor and precede an integer")
            p = tokens[k + 1][1]
            if not p.isdigit():
                raise ConfigError("powers must be nonnegative integers")
            fk, fv = factors[-1]
            factors[-1] = (fk, fv * int(p)) if fk in ("z", "zbar") else ("c", _qpow(fv, int(p)))
            k += 1
        else:
            if not expect_factor:
                raise ConfigError("missing '*' between factors in phi")
            if kind == "num":
                factors.append(("c", Quaternion(float(val))))
            elif kind == "quat":
                try:
                    comps = [float(c) for c in val.strip("[]").split(",")]
                except ValueError as exc:
                    raise ConfigError(f"bad quaternion literal {val}") from exc
                if len(comps) != 4:
                    raise ConfigError(f"quaternion literal {val} needs four components")
                factors.append(("c", Quaternion(*comps)))
            elif kind == "unit":
                factors.append(("c", {"i": I, "j": J, "k": K}[val]))
            elif kind == "z":
                factors.append(("z", 1))
            else:
                factors.append(("zbar", 1))
            expect_factor = False
        k += 1
    if expect_factor:
        raise ConfigError("phi ends with an operator")
    terms.append((sign, factors))
    return terms


def _qpow(q: Quaternion, p: int) -> Quaternion:
    out = Quaternion(1.0)
    for _ in range(p):
        out = out * q
    return out


def evaluate_phi(terms: list, z: Quaternion) -> Quaternion:
    """Evaluate parsed terms at ``z``, multiplying factors left to right."""
    total = Quaternion(0.0)
    for sign, factors in terms:
        val = Quaternion(1.0)
        for kind, f in factors:
            if kind == "c":
                val = val * f
            elif kind == "z":
                val = val * _qpow(z, f)
            else:
                val = val * _qpow(z.conj(), f)
        total = total + val * float(sign)
    return total


# ---------------------------------------------------------------------------
# input and output
# ---------------------------------------------------------------------------

def parse_unit(text: str) -> Quaternion:
    names = {"i": I, "j": J, "k": K}
    if text in names:
        return names[text]
    try:
        comps = json.loads(text)
        return require_unit(comps)
    except (ValueError, TypeError, QSpectraError) as exc:
        raise ConfigError(f"--unit must be i, j, k or a 4-array imaginary unit, got {text!r}") from exc


def load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read JSON from {path}: {exc}") from exc


def load_matrix(path: str | None) -> QMatrix:
    if path is None:
        raise ConfigError("--input is required")
    obj = load_json(path)
    if isinstance(obj, dict) and "T" in obj:
        obj = obj["T"]
    try:
        return QMatrix.from_json(obj)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def emit(report: dict, fmt: str, out) -> None:
    report = _plain(report)
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        out.write(_as_text(report) + "\n")


def _fmt_num(x) -> str:
    return f"{x:.10g}" if isinstance(x, float) else str(x)


def _as_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict) and "entries" in val:
            lines.append(f"{pad}{key}:")
            for row in val["entries"]:
                cells = ["(" + ", ".join(_fmt_num(c) for c in q) + ")" for q in row]
                lines.append(f"{pad}  " + "  ".join(cells))
        elif isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_as_text(val, indent + 1))
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{pad}{key}:")
            for item in val:
                lines.append(_as_text(item, indent + 1))
                lines.append(f"{pad}  --")
        else:
            if isinstance(val, list):
                val = json.dumps(val)
            lines.append(f"{pad}{key}: {_fmt_num(val)}")
    return "\n".join(lines)


def _tolerances(args, T: QMatrix | None = None) -> dict:
    ctol = args.cluster_tol
    if ctol is None and T is not None:
        nrm = operator_norm(T)
        ctol = 1e-8 * (nrm if nrm > 0 else 1.0)
    return {"cluster_tol": ctol, "sing_tol": args.sing_tol}


def _support_json(pvm) -> list:
    return [[p.alpha, p.beta] for p in pvm.support]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def run_decompose(args) -> dict:
    T = load_matrix(args.input)
    dec = decompose(T, args.unit)
    pvm = spectral_decompose(T, args.unit, args.cluster_tol)
    return {
        "A": dec.A.to_json(),
        "B": dec.B.to_json(),
        "J": dec.J.to_json(),
        "pvm": pvm.to_json(),
        "reconstruction_error": operator_norm(T - reconstruct(pvm)),
        "slice_error": operator_norm(T - dec.reconstruct()),
        "tolerances": _tolerances(args, T),
    }


def run_spectrum(args) -> dict:
    T = load_matrix(args.input)
    pvm = spectral_decompose(T, args.unit, args.cluster_tol)
    cls = classify_spectrum(pvm)
    return {
        "unit": args.unit.as_list(),
        "point": [[p.alpha, p.beta] for p in cls.point],
        "residual": [],
        "continuous": [],
        "spherical_spheres": [list(s) for s in cls.spherical.spheres],
        "ranks": [pvm.rank(a) for a in range(len(pvm.support))],
        "tolerances": _tolerances(args, T),
    }


def run_left_spectrum(args) -> dict:
    T = load_matrix(args.input)
    pvm = spectral_decompose(T, args.unit, args.cluster_tol)
    if args.left_mult:
        try:
            L = LeftScalarMultiplication.from_json(load_json(args.left_mult))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    else:
        L = pvm.L
    rng = np.random.default_rng(args.seed)
    nrm = operator_norm(T)
    samples = [Quaternion(*rng.normal(size=4)) * (2 * nrm + 1) for _ in range(args.samples)]
    rep = left_spectrum(T, L, args.unit, samples, args.sing_tol)
    out = rep.to_json()
    out["tolerances"] = _tolerances(args, T)
    return out


def run_calculus(args) -> dict:
    T = load_matrix(args.input)
    pvm = spectral_decompose(T, args.unit, args.cluster_tol)
    if args.phi_values:
        vals = load_json(args.phi_values)
        try:
            phi = [Quaternion.coerce(v) for v in vals]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad phi values: {exc}") from exc
        text = None
    elif args.phi:
        terms = parse_phi(args.phi)
        phi = [evaluate_phi(terms, p.as_quaternion()) for p in pvm.support]
        text = args.phi
    else:
        raise ConfigError("calculus needs --phi or --phi-values")
    result = integrate(phi, pvm)
    out = {
        "phi": text,
        "support": _support_json(pvm),
        "values": [q.as_list() for q in phi],
        "phi_T": result.to_json(),
        "tolerances": _tolerances(args, T),
    }
    try:
        out["inverse"] = invert_via_calculus(phi, pvm).to_json()
    except NotInjective:
        out["inverse"] = None
    return out


def run_transform(args) -> dict:
    T = load_matrix(args.input)
    pair = bounded_transform(T)
    nrm = operator_norm(T)
    out = {
        "C": pair.C.to_json(),
        "Z": pair.Z.to_json(),
        "norm_Z": operator_norm(pair.Z),
        "roundtrip_error": operator_norm(T - inverse_transform(pair.Z)) / (1 + nrm ** 2),
        "tolerances": _tolerances(args, T),
    }
    try:
        pvm = decompose_via_transform(T, args.unit, args.cluster_tol)
        out["support"] = _support_json(pvm)
    except QSpectraError as exc:
        if exc.exit_code == 2:
            out["support"] = None
        else:
            raise
    return out


def run_verify(args) -> dict:
    report: dict = {"seed": args.seed, "trials": args.trials, "max_n": args.max_n}
    failures = []
    if args.input:
        obj = load_json(args.input)
        try:
            L = LeftScalarMultiplication.from_json(obj)
        except (ValueError, QSpectraError) as exc:
            raise ConfigError(str(exc)) from exc
        defects = left_mult_defects(L.Li, L.Lj)
        ok = is_left_scalar_multiplication(L.Li, L.Lj)
        report["left_multiplication"] = {"defects": defects, "passed": ok}
        if not ok:
            failures.append("NotLeftScalarMultiplication")
    suites = run_suites(args.seed, args.trials, args.max_n, args.unit)
    report["suites"] = [s.to_json() for s in suites]
    failures += [s.name for s in suites if not s.passed]
    report["failures"] = failures
    report["passed"] = not failures
    return report


def run_demo_l2(args) -> dict:
    n = args.n
    t = np.linspace(0.0, 1.0, n)
    T = QMatrix.diag([float(x) for x in t])
    pvm = spectral_decompose(T, args.unit, args.cluster_tol)
    return {
        "n": n,
        "support": _support_json(pvm),
        "real_spectrum": all(p.beta == 0.0 for p in pvm.support),
        "reconstruction_error": operator_norm(T - reconstruct(pvm)),
    }


COMMANDS = {
    "decompose": run_decompose,
    "spectrum": run_spectrum,
    "left-spectrum": run_left_spectrum,
    "calculus": run_calculus,
    "transform": run_transform,
    "verify": run_verify,
    "demo-l2": run_demo_l2,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="QMatrix JSON file, or - for stdin")
    common.add_argument("--unit", default="i", help="imaginary unit: i, j, k or a JSON 4-array")
    common.add_argument("--cluster-tol", type=float, default=None,
                        help="eigenvalue clustering tolerance (default 1e-8*||T||)")
    common.add_argument("--sing-tol", type=float, default=1e-10, help="singularity tolerance")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--trials", type=int, default=50)
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = argparse.ArgumentParser(
        prog="qspectra", description="Spectral analysis of normal quaternionic matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("decompose", parents=[common], help="slice decomposition and spectral measure")
    sub.add_parser("spectrum", parents=[common], help="spectrum classification")
    p = sub.add_parser("left-spectrum", parents=[common], help="left spectrum report")
    p.add_argument("--left-mult", help="left multiplication JSON (default: the constructed one)")
    p.add_argument("--samples", type=int, default=5, help="number of resolvent samples")
    p = sub.add_parser("calculus", parents=[common], help="functional calculus")
    p.add_argument("--phi", help="polynomial in z and conj(z), e.g. '2*z^2 + i*conj(z)'")
    p.add_argument("--phi-values", help="JSON list with one quaternion per support point")
    sub.add_parser("transform", parents=[common], help="bounded transform")
    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--max-n", type=int, default=6)
    p = sub.add_parser("demo-l2", parents=[common], help="diagonal sampling of [0,1]")
    p.add_argument("--n", type=int, default=8)
    return parser


def _configure_logging():
    level = os.environ.get("QSPECTRA_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        args.unit = parse_unit(args.unit)
        if args.trials < 1:
            raise ConfigError("--trials must be at least 1")
        for name in ("cluster_tol", "sing_tol"):
            val = getattr(args, name)
            if val is not None and not val > 0:
                raise ConfigError(f"--{name.replace('_', '-')} must be positive")
        if getattr(args, "max_n", 2) < 2 or getattr(args, "n", 2) < 2:
            raise ConfigError("dimensions must be at least 2")
        report = COMMANDS[args.command](args)
        report["command"] = args.command
        emit(report, args.format, out)
        if args.command == "verify" and not report["passed"]:
            raise VerificationFailure(", ".join(report["failures"]))
        return 0
    except VerificationFailure as exc:
        sys.stderr.write(f"error: verification failed: {exc}\n")
        return 4
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except QSpectraError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
