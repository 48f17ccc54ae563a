"""Command-line entry point: `tropfay <subcommand> [--input ...] [--output ...]`.

Input is a JSON object given inline, as a file path, or as a packaged
fixture (`--fixture ex_counter`).  Exact values travel as "p/q" strings.
Exit codes: 0 ok, 2 input error, 3 violated precondition, 4 numeric
non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any, Callable

import mpmath

from . import curve, dtoda, fay, hyperell, taudyn, theta, udtoda
from .errors import InputError, TropFayError
from .rational import fmt, fmt_vec, mat, vec

SUBCOMMANDS = ("evolve", "curve", "theta", "fay", "solve", "discrete", "udlimit")
FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    payload: dict
    output: str | None = None
    format: str = "json"
    seed: int = 0
    precision: int | None = None

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in FORMATS:
            raise InputError(f"format must be one of {FORMATS}")
        if not isinstance(self.payload, dict):
            raise InputError("input must be a JSON object")
        if self.precision is not None and self.precision < 15:
            raise InputError("precision must be at least 15 digits")


@dataclass(frozen=True)
class Result:
    data: dict
    rows: list[list] | None = None   # CSV body, first row is the header
    ok: bool = True


def load_fixture(name: str) -> dict:
    try:
        text = resources.files("tropfay.fixtures").joinpath(f"{name}.json").read_text()
    except FileNotFoundError as exc:
        raise InputError(f"no packaged fixture named {name!r}") from exc
    return json.loads(text)


def read_payload(source: str | None, fixture: str | None) -> dict:
    if fixture:
        return load_fixture(fixture)
    if source is None or source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            with open(source) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("input must be a JSON object")
    return obj


def _need(p: dict, key: str):
    if key not in p:
        raise InputError(f"input is missing key {key!r}")
    return p[key]


def _int(p: dict, key: str, default: int) -> int:
    v = p.get(key, default)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise InputError(f"{key} must be a non-negative integer")
    return v


def _eps_list(p: dict, default) -> list[Fraction]:
    raw = p.get("eps", default)
    if not isinstance(raw, list) or not raw:
        raise InputError("eps must be a non-empty list")
    out = []
    for x in raw:
        try:
            e = Fraction(str(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad eps value {x!r}") from exc
        if e <= 0:
            raise InputError("eps values must be positive")
        out.append(e)
    return out


def _invariants(p: dict) -> udtoda.SpectralInvariants:
    return udtoda.SpectralInvariants.of(vec(_need(p, "C")))


def _point(G: curve.MetricGraph, desc: Any) -> curve.PointOnCurve:
    if isinstance(desc, dict) and "edge" in desc:
        return curve.point(G, desc["edge"], Fraction(str(desc.get("offset", 0))))
    if isinstance(desc, dict) and "X" in desc:
        X, Y = vec([desc["X"], desc["Y"]])
        P = curve.locate(G.cd, X, Y)
        return curve.point(G, P.edge, P.offset)
    raise InputError("a point is {'edge': name|id, 'offset': q} or {'X': q, 'Y': q}")


# ---------------------------------------------------------------- commands


def cmd_evolve(cfg: RunConfig) -> Result:
    p = cfg.payload
    state = udtoda.UDState.from_json(p)
    steps = _int(p, "steps", 10)
    orbit = udtoda.evolve(state, steps)
    inv = udtoda.invariants(state)
    for s in orbit:
        if udtoda.invariants(s) != inv:
            raise AssertionError("invariants drifted along the orbit")
    rows = [["t", "n", "Q", "W"]]
    for t, s in enumerate(orbit):
        for n in range(state.g + 1):
            rows.append([t, n + 1, fmt(s.Q[n]), fmt(s.W[n])])
    data = {"invariants": inv.to_json(), "generic": udtoda.is_generic(inv),
            "orbit": [s.to_json() for s in orbit]}
    return Result(data, rows)


def cmd_curve(cfg: RunConfig) -> Result:
    cd = curve.curve_data(_invariants(cfg.payload))
    G = curve.build_graph(cd)
    rows = list(csv.reader(io.StringIO(G.corner_locus_csv())))
    return Result({"curve": cd.to_json(), "graph": G.to_json()}, rows)


def cmd_theta(cfg: RunConfig) -> Result:
    p = cfg.payload
    K = mat(_need(p, "K"))
    Z = vec(_need(p, "Z"))
    if "beta" in p:
        r = theta.theta_char(K, vec(p["beta"]), Z)
    else:
        r = theta.theta(K, Z)
    data = {"theta": r.to_json()}
    if "m" in p:
        data["membership"] = theta.in_domain(K, Z, [int(x) for x in p["m"]]).value
    return Result(data, [["value", "argmin", "unique"],
                         [fmt(r.value), " ".join(str(x) for x in r.argmin), r.unique]])


def _fay_input(p: dict) -> fay.FayInput:
    cd = curve.curve_data(_invariants(p))
    Z = vec(p.get("Z", [0] * cd.g))
    beta = vec(p["beta"]) if "beta" in p else None
    if p.get("canonical"):
        return fay.canonical_input(cd, Z, beta)
    G = curve.build_graph(cd)
    pts = tuple(_point(G, s) for s in _need(p, "points"))
    if beta is None:
        raise InputError("beta is required unless canonical is set")
    windings = tuple(tuple(int(x) for x in w) for w in p.get("windings", ()))
    return fay.FayInput(cd, pts, Z, beta, windings)


def cmd_fay(cfg: RunConfig) -> Result:
    inp = _fay_input(cfg.payload)
    v = fay.fay_check(inp)
    data = {"verdict": v.to_json(), "lifts": [fmt_vec(a) for a in inp.lifts()],
            "alpha": fmt_vec(inp.alpha)}
    rows = [["F1", "F2", "F3", "status", "index"],
            fmt_vec(v.F) + [v.status, v.index if v.index is not None else ""]]
    return Result(data, rows, ok=v.status != fay.VIOLATED)


def cmd_solve(cfg: RunConfig) -> Result:
    p = cfg.payload
    cd = curve.curve_data(_invariants(p))
    Z0 = vec(p.get("Z0", [0] * cd.g))
    steps = _int(p, "steps", 10)
    records = taudyn.solve(cd, Z0, steps)
    flow = taudyn.translation_flow_check(cd, Z0, steps)
    q = taudyn.quasi_for(cd, Z0)
    rows = [["t", "n", "Q", "W", "T_t", "T_t1", "matches_direct"]]
    for t, w, st, ok in records:
        for n in range(cd.g + 1):
            rows.append([t, n + 1, fmt(st.Q[n]), fmt(st.W[n]),
                         fmt(w.rows[0][n]), fmt(w.rows[1][n]), ok])
    data = {"quasi": fmt_vec(q.as_tuple()), "translation_flow": flow,
            "all_match": all(r[3] for r in records),
            "states": [st.to_json() for _, _, st, _ in records]}
    return Result(data, rows, ok=flow and data["all_match"])


def cmd_discrete(cfg: RunConfig) -> Result:
    p = cfg.payload
    state = udtoda.UDState.from_json(p)
    eps = _eps_list(p, ["1/2", "1/10", "1/50"])
    steps = _int(p, "steps", 10)
    dps = cfg.precision or dtoda.DEFAULT_DPS
    rep = dtoda.ud_trajectory_compare(state, eps, steps, dps)
    chars = dtoda.ud_char_consistency(state, eps, dps)
    rows = [["eps", "t", "n", "I", "V", "err_Q", "err_W"]]
    for r in rep.rows:
        rows.append([fmt(r.eps), r.t, r.n, mpmath.nstr(r.I, 15), mpmath.nstr(r.V, 15),
                     mpmath.nstr(r.err_Q, 12), mpmath.nstr(r.err_W, 12)])
    data = {"precision": dps, "sup": rep.to_json()["sup"],
            "char_errors": {fmt(e): [mpmath.nstr(x, 12) for x in errs]
                            for e, errs in chars.items()}}
    return Result(data, rows)


def cmd_udlimit(cfg: RunConfig) -> Result:
    p = cfg.payload
    inv = _invariants(p)
    cd = curve.curve_data(inv)
    eps = _eps_list(p, ["1/5", "1/10", "1/20"])
    prec = cfg.precision or int(p.get("precision", hyperell.DEFAULT_PRECISION))
    Kt = hyperell.basis_change(cd).K_tilde
    X = hyperell.predicted_X(inv)
    g = inv.g
    rows = [["eps", "quantity", "computed", "target", "abs_err"]]
    summary = {}
    for e in eps:
        sc = hyperell.scaled_curve(inv, e, prec)
        with mpmath.workdps(prec):
            ev = mpmath.mpf(e.numerator) / e.denominator
            for name, rs in (("u", sc.roots), ("u-", sc.minus), ("u+", sc.plus)):
                for j, r in enumerate(rs):
                    val = -ev * mpmath.log(r)
                    tgt = mpmath.mpf(X[j].numerator) / X[j].denominator
                    rows.append([fmt(e), f"X[{name}]_{j}", mpmath.nstr(val, 15), fmt(X[j]),
                                 mpmath.nstr(abs(val - tgt), 6)])
            A = hyperell.a_periods(sc)
            P = hyperell.b_period_limits(sc)
            for i in range(g):
                for j in range(g):
                    d = 1 if i == j else 0
                    rows.append([fmt(e), f"A_{i + 1}{j + 1}", mpmath.nstr(A[i, j], 15), d,
                                 mpmath.nstr(abs(A[i, j] - d), 6)])
                    t = Kt[i][j]
                    rows.append([fmt(e), f"P_{i + 1}{j + 1}", mpmath.nstr(P[i, j], 15), fmt(t),
                                 mpmath.nstr(abs(P[i, j] - mpmath.mpf(t.numerator) / t.denominator), 6)])
            summary[fmt(e)] = {
                "root_error": mpmath.nstr(max(hyperell.root_errors(sc).values()), 8),
                "a_error": mpmath.nstr(hyperell.identity_error(A), 8),
                "b_rel_error": mpmath.nstr(hyperell.mat_error(P, Kt), 8)}
    data = {"precision": prec, "K_tilde": [fmt_vec(r) for r in Kt], "summary": summary}
    return Result(data, rows)


COMMANDS: dict[str, Callable[[RunConfig], Result]] = {
    "evolve": cmd_evolve, "curve": cmd_curve, "theta": cmd_theta, "fay": cmd_fay,
    "solve": cmd_solve, "discrete": cmd_discrete, "udlimit": cmd_udlimit,
}


# ---------------------------------------------------------------- plumbing


def render(res: Result, fmt_: str) -> str:
    if fmt_ == "csv" and res.rows is not None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(res.rows)
        return buf.getvalue()
    return json.dumps(res.data, indent=2, sort_keys=True) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    random.seed(cfg.seed)
    try:
        res = COMMANDS[cfg.subcommand](cfg)
    except TropFayError as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "exit_code": exc.exit_code}
        return exc.exit_code, json.dumps(err, sort_keys=True) + "\n"
    return (0 if res.ok else 1), render(res, cfg.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="JSON file, inline JSON object, or - for stdin")
    common.add_argument("--fixture", help="use a packaged fixture (ex_counter, g1_orbit)")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--format", "-f", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision", type=int, help="decimal digits for the numeric layers")
    parser = argparse.ArgumentParser(prog="tropfay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "evolve": "run the ultra-discrete Toda lattice",
        "curve": "tropical spectral curve, metric graph and period matrix",
        "theta": "tropical theta value, arg-min and domain membership",
        "fay": "evaluate the three Fay terms and the sign calculus",
        "solve": "theta-driven tau solution and its translation flow",
        "discrete": "compare the discrete Toda lattice with its ultra-discrete limit",
        "udlimit": "periods of the scaled hyperelliptic curve against K~",
    }
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = read_payload(args.input, args.fixture)
        cfg = RunConfig(args.subcommand, payload, args.output, args.format,
                        args.seed, args.precision)
    except TropFayError as exc:
        sys.stdout.write(json.dumps({"error": type(exc).__name__, "message": str(exc),
                                     "exit_code": exc.exit_code}, sort_keys=True) + "\n")
        return exc.exit_code
    code, text = run(cfg)
    if cfg.output and code in (0, 1):
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
