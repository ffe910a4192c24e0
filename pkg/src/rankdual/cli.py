"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
domain errors, 3 for precision or resource errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import branching, characters, fock, verlinde
from .errors import DomainError, PrecisionError, ResourceError, SmallRankWarning
from .numeric import NumericConfig
from .weights import (
    BWeight,
    YoungDiagram,
    diagrams_in_box,
    enumerate_level_set,
    parse_weight_literal,
    u_label,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


# --------------------------------------------------------------------------
# parsing helpers


def parse_diagram(text: str) -> YoungDiagram:
    """'2,1' or '[2,1]' or '' for the empty diagram."""
    text = text.strip().strip("[]")
    if not text:
        return YoungDiagram(())
    try:
        return YoungDiagram(tuple(int(x) for x in text.split(",")))
    except ValueError as exc:
        raise DomainError(f"cannot read diagram {text!r}") from exc


def parse_weight_token(token: str, r: int, level: int) -> BWeight:
    """Compact weight token for --triple.

    '0' is the zero weight, 'Y2.1' the diagram [2,1], 'sY2.1' its sigma
    image, 'F1.0.0' raw fundamental coefficients.  'Y' alone is empty.
    """
    t = token.strip()
    try:
        if t == "0":
            return BWeight.zero(r)
        if t.startswith("sY") or t.startswith("Y"):
            flip = t.startswith("s")
            body = t[2:] if flip else t[1:]
            rows = tuple(int(x) for x in body.split(".")) if body else ()
            return parse_weight_literal({"young": list(rows), "sigma": flip}, r, level)
        if t.startswith("F"):
            return parse_weight_literal({"fund": [int(x) for x in t[1:].split(".")]}, r, level)
    except ValueError as exc:
        raise DomainError(f"cannot read weight token {token!r}") from exc
    raise DomainError(f"cannot read weight token {token!r}")


def read_json_file(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read {path}: {exc}") from exc


def read_weights(path: str, r: int, level: int) -> list[BWeight]:
    data = read_json_file(path)
    if not isinstance(data, list):
        raise DomainError("weights file must hold a JSON array of weight literals")
    return [parse_weight_literal(x, r, level) for x in data]


def read_diagrams(path: str) -> list[YoungDiagram]:
    data = read_json_file(path)
    if not isinstance(data, list):
        raise DomainError("weights file must hold a JSON array of weight literals")
    out = []
    for x in data:
        if not isinstance(x, dict) or "young" not in x or x.get("sigma", False):
            raise DomainError(f"duality insertions must be plain diagrams, got {x!r}")
        out.append(YoungDiagram(tuple(x["young"])))
    return out


# --------------------------------------------------------------------------
# output


class Output:
    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream

    def record(self, obj: dict) -> None:
        self.records([obj])

    def records(self, rows: Sequence[dict]) -> None:
        if self.fmt == "json":
            for row in rows:
                self.stream.write(json.dumps(row, sort_keys=False) + "\n")
            return
        if not rows:
            return
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        self.stream.write(buf.getvalue())


def config_from(args) -> NumericConfig:
    return NumericConfig(prec=args.precision, identity_tol=args.tolerance)


# --------------------------------------------------------------------------
# subcommands


def cmd_levelset(args, out: Output) -> int:
    ws = enumerate_level_set(args.r, args.level, tensor=args.tensor)
    rows = []
    for w in ws:
        row = {
            "fund": list(w.fund),
            "level": w.level,
            "l_coords": [str(x) for x in w.l_coords],
            "tensor": w.is_tensor,
        }
        if args.r >= 2:
            u = u_label(w, args.level)
            row["u"] = [str(x) for x in u.entries]
            row["orbit_length"] = u.orbit_length
        rows.append(row)
    out.records(rows)
    return EXIT_OK


def cmd_dim(args, out: Output) -> int:
    ws = read_weights(args.weights, args.r, args.level)
    res = verlinde.verlinde_eval(args.r, args.level, args.genus, ws, config_from(args), args.jobs)
    out.record(
        {
            "algebra": f"B{args.r}",
            "level": args.level,
            "genus": args.genus,
            "weights": [list(w.fund) for w in ws],
            "dim": res.dim,
            "residual": float(f"{res.residual:.3e}"),
        }
    )
    return EXIT_OK


def cmd_fusion(args, out: Output) -> int:
    tokens = args.triple.split(",")
    if len(tokens) != 3:
        raise DomainError("--triple needs exactly three weight tokens")
    ws = [parse_weight_token(t, args.r, args.level) for t in tokens]
    res = verlinde.verlinde_eval(args.r, args.level, 0, ws, config_from(args), args.jobs)
    out.record(
        {
            "algebra": f"B{args.r}",
            "level": args.level,
            "triple": [list(w.fund) for w in ws],
            "coeff": res.dim,
            "residual": float(f"{res.residual:.3e}"),
        }
    )
    return EXIT_OK


def cmd_duality(args, out: Output) -> int:
    ys = read_diagrams(args.weights)
    rep = verlinde.duality_check(args.r, args.s, ys, args.case, config_from(args), args.jobs)
    out.record({"lhs": rep.lhs, "rhs": rep.rhs, "pass": rep.passed})
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_branch(args, out: Output) -> int:
    rows = [p.as_dict() for p in branching.iter_branch_set(args.r, args.s, args.source, args.max_size)]
    out.records(rows)
    return EXIT_OK


def cmd_anomaly(args, out: Output) -> int:
    r, s = args.r, args.s
    e = branching.EmbeddingData(r, s)
    cl, cr = branching.central_charge(r, 2 * s + 1), branching.central_charge(s, 2 * r + 1)
    ys = diagrams_in_box(r, s)
    delta_ok = all(branching.delta_sum_check(y, r, s) for y in ys)
    conformal = branching.conformal_check(r, s)
    out.record(
        {
            "r": r,
            "s": s,
            "N": e.n,
            "c_left": str(cl),
            "c_right": str(cr),
            "c_total": str(branching.central_charge(e.d, 1)),
            "conformal": conformal,
            "dynkin": list(branching.dynkin_index(r, s)),
            "diagrams": len(ys),
            "delta_sum": delta_ok,
        }
    )
    return EXIT_OK if conformal and delta_ok else EXIT_FAIL


def cmd_fock(args, out: Output) -> int:
    r, s = args.r, args.s
    if args.fock_cmd == "hwv":
        lam = parse_diagram(args.lam)
        v = fock.hwv_wedge(lam, args.variant, r, s)
        left, right = fock.expected_weights(lam, args.variant, r, s)
        row = {
            "lambda": list(lam.rows),
            "variant": args.variant,
            "left": list(left.fund),
            "right": list(right.fund),
            "vector": v.to_json(),
        }
        code = EXIT_OK
        if args.verify:
            rep = fock.verify_hwv(v, left, right)
            row.update(
                {
                    "pass": rep.passed,
                    "parity": rep.parity,
                    "energy": str(rep.energy),
                    "failures": rep.failures,
                }
            )
            code = EXIT_OK if rep.passed else EXIT_FAIL
        out.record(row)
        return code
    rows = gauge_rows(r, s, args.max_size)
    out.records(rows)
    return EXIT_OK if all(row["pass"] for row in rows) else EXIT_FAIL


def gauge_rows(r: int, s: int, max_size: int) -> list[dict]:
    """The displayed operator instance plus every lowest-vector instance up to max_size boxes."""
    one = fock.vacuum()
    phi3 = fock.current_apply((-1, -1), (1, 2), -1, one)
    rows = [
        {
            "a": [1, 2],
            "c": [2, 1],
            "e": [1, 2],
            "base": [],
            "pass": fock.verify_gauge_vanishing((1, 2), (2, 1), phi3),
        }
    ]
    rows.extend(gauge_cases(r, s, max_size))
    return rows


def gauge_cases(r: int, s: int, max_size: int) -> list[dict]:
    rows = []
    for lam3 in diagrams_in_box(r, s, max_size):
        if lam3.size < 2 or lam3.size % 2:
            continue
        boxes = set(lam3.boxes())
        for a in sorted(_removable(lam3)):
            rest = YoungDiagram(_without(lam3, a))
            for e in sorted(_removable(rest)):
                base = YoungDiagram(_without(rest, e))
                phi3 = fock.gauge_instance(a, e, base)
                for c in sorted(_addable(lam3, r, s)):
                    if c <= a or c in boxes:
                        continue
                    rows.append(
                        {
                            "a": list(a),
                            "c": list(c),
                            "e": list(e),
                            "base": list(base.rows),
                            "pass": fock.verify_gauge_vanishing(a, c, phi3),
                        }
                    )
    return rows


def _removable(y: YoungDiagram) -> list[tuple[int, int]]:
    return [(i, y.row(i)) for i in range(1, y.length + 1) if y.row(i) > y.row(i + 1)]


def _addable(y: YoungDiagram, r: int, s: int) -> list[tuple[int, int]]:
    out = []
    for i in range(1, min(y.length + 1, r) + 1):
        j = y.row(i) + 1
        if j <= s and (i == 1 or y.row(i - 1) >= j):
            out.append((i, j))
    return out


def _without(y: YoungDiagram, box: tuple[int, int]) -> tuple[int, ...]:
    rows = list(y.rows)
    rows[box[0] - 1] -= 1
    return tuple(rows)


# --------------------------------------------------------------------------
# randomized identity harnesses


def _trial_surprise(seed, r, s, cfg):
    rng = np.random.default_rng(seed)
    n = r + s
    while True:
        a = rng.integers(-5, 6, size=(n, n)).tolist()
        if characters.bareiss_det(a):
            break
    u = [int(x) + 1 for x in rng.permutation(n)[:r]]
    t = [int(x) + 1 for x in rng.permutation(n)[:r]]
    return {"u": u, "t": t, "pass": characters.verify_minor_identity(a, u, t)}


def _trial_trig1(seed, r, s, cfg):
    rng = np.random.default_rng(seed)
    a = int(rng.integers(1, 9))
    v = [x for x in range(1, a) if rng.integers(0, 2)]
    return {"a": a, "v": v, "pass": characters.verify_trig1(v, a, cfg)}


def _trial_trig2(seed, r, s, cfg):
    rng = np.random.default_rng(seed)
    a = int(rng.integers(1, 9))
    v = [Fraction(2 * x + 1, 2) for x in range(a) if rng.integers(0, 2)]
    return {"a": a, "v": [str(x) for x in v], "pass": characters.verify_trig2(v, a, cfg)}


def _trial_charduality(seed, r, s, cfg):
    rng = np.random.default_rng(seed)
    ys = diagrams_in_box(r, s)
    lam = ys[int(rng.integers(0, len(ys)))]
    sub = sorted((int(x) + 1 for x in rng.permutation(r + s)[:r]), reverse=True)
    tensor = bool(rng.integers(0, 2))
    rep = characters.verify_char_duality(lam, r, s, u0=sub, config=cfg) if tensor else characters.verify_char_duality(
        lam, r, s, u=sub, config=cfg
    )
    return {"lambda": list(lam.rows), "label": sub, "tensor": tensor, "pass": rep.passed}


def _trial_centertrace(seed, r, s, cfg):
    rng = np.random.default_rng(seed)
    level = 2 * s + 1
    ys = diagrams_in_box(r, s, 4)
    while True:
        pick = [ys[int(i)] for i in rng.integers(0, len(ys), size=2)]
        if sum(y.size for y in pick) % 2 == 0:
            break
    mus = enumerate_level_set(r, level)
    mu = mus[int(rng.integers(0, len(mus)))]
    ok = characters.verify_center_trace(pick, mu, level, cfg)
    return {"lambdas": [list(y.rows) for y in pick], "mu": list(mu.fund), "pass": ok}


TRIALS: dict[str, Callable] = {
    "surprise": _trial_surprise,
    "trig1": _trial_trig1,
    "trig2": _trial_trig2,
    "charduality": _trial_charduality,
    "centertrace": _trial_centertrace,
}


def _run_trial(job):
    name, seed, r, s, prec, tol = job
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SmallRankWarning)
        return TRIALS[name](seed, r, s, NumericConfig(prec=prec, identity_tol=tol))


def run_trials(name: str, trials: int, seed: int, r: int, s: int, cfg: NumericConfig, jobs: int = 1) -> list[dict]:
    """Independent child seeds per trial so results do not depend on `jobs`."""
    seeds = np.random.SeedSequence(seed).spawn(trials)
    work = [(name, sd, r, s, cfg.prec, cfg.identity_tol) for sd in seeds]
    if jobs > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_trial, work, chunksize=max(1, trials // (4 * jobs))))
    return [_run_trial(w) for w in work]


def cmd_identities(args, out: Output) -> int:
    results = run_trials(args.check, args.trials, args.seed, args.r, args.s, config_from(args), args.jobs)
    failed = [row for row in results if not row["pass"]]
    out.record(
        {
            "check": args.check,
            "trials": args.trials,
            "seed": args.seed,
            "passed": len(results) - len(failed),
            "failed": len(failed),
            "failures": failed[:10],
        }
    )
    return EXIT_OK if not failed else EXIT_FAIL


# --------------------------------------------------------------------------
# parser


def _global_options(p: argparse.ArgumentParser, with_defaults: bool) -> None:
    d = (lambda v: v) if with_defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--precision", type=int, default=d(160), help="working precision in bits (default 160)")
    p.add_argument("--tolerance", type=float, default=d(1e-9), help="identity tolerance (default 1e-9)")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    p.add_argument("--out", default=d(None), help="write output to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankdual",
        description="Verlinde dimensions, branching data and identity checks for so(2r+1) rank-level duality.",
    )
    _global_options(parser, True)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("levelset", parents=[common], help="list the dominant weights at a level")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--tensor", action="store_true")
    p.set_defaults(func=cmd_levelset)

    p = sub.add_parser("dim", parents=[common], help="conformal block dimension")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--genus", type=int, default=0)
    p.add_argument("--weights", required=True, help="JSON array of weight literals, '-' for stdin")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("fusion", parents=[common], help="three-point genus-0 dimension")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--triple", required=True, help="three tokens such as Y1,Y1,0 or sY2.1,F1.0.0,Y")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("duality", parents=[common], help="compare dimensions on both sides")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--case", choices=verlinde.CASES, required=True)
    p.add_argument("--weights", required=True, help="JSON array of {'young': rows}")
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("branch", parents=[common], help="level-1 branching components, JSON lines")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--source", choices=branching.SOURCES, required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("anomaly", parents=[common], help="central charges, Dynkin indices, anomaly sums")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(func=cmd_anomaly)

    p = sub.add_parser("fock", parents=[common], help="fermionic highest weight vectors and gauge identities")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    fsub = p.add_subparsers(dest="fock_cmd", required=True)
    h = fsub.add_parser("hwv", parents=[common])
    h.add_argument("--lambda", dest="lam", required=True, help="diagram rows, e.g. 2,1 (empty string for [])")
    h.add_argument("--variant", choices=branching.VARIANTS, default="plain")
    h.add_argument("--verify", action="store_true")
    g = fsub.add_parser("gauge", parents=[common])
    g.add_argument("--max-size", type=int, default=4)
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("identities", parents=[common], help="seeded randomized identity checks")
    p.add_argument("--check", choices=sorted(TRIALS), required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--s", type=int, default=3)
    p.set_defaults(func=cmd_identities)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    stream = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SmallRankWarning)
            return args.func(args, Output(args.format, stream))
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PrecisionError, ResourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if args.out:
            stream.close()


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
