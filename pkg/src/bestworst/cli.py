"""Command-line interface.

    bestworst check profile.json
    bestworst construct --c 1/2 --m 6 --family max_dispersed
    bestworst sweep --m 6 --family min_dispersed --c 0,1/4,1/2,3/4 --out fig2.csv
    bestworst mc profile.json --n 1000000 --seed 7

Rationals cross this boundary as "p/q" strings. ``check`` exits 0 for an
equilibrium, 1 otherwise; every command exits 2 on malformed input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .construct import FAMILIES, Construction, construct
from .core import Profile, Rule, as_rational, canonicalize, electorates, fmt
from .equilibrium import EquilibriumCertificate, classify
from .errors import BestWorstError, InternalInconsistency
from .mc_oracle import grid_best_deviation, sample_scores
from .scoring import LeftLimitAt, Point, RightLimitAt, score_all

EXIT_OK, EXIT_NOT_EQUILIBRIUM, EXIT_ERROR = 0, 1, 2
SWEEP_HEADER = ["c", "m", "family", "verdict", "x1", "Ip", "positions"]
Z_LIMIT = 4.0


class InputError(Exception):
    pass


# -- serialization ----------------------------------------------------------


def _rational(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"{what}: floats are not accepted, write rationals as \"p/q\"")
    try:
        return as_rational(value)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: {exc}") from None


def parse_profile(doc) -> tuple[Rule, Profile]:
    if not isinstance(doc, dict):
        raise InputError("profile document must be a JSON object")
    for key in ("c", "m", "positions"):
        if key not in doc:
            raise InputError(f"missing key {key!r}")
    m = doc["m"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise InputError("m must be an integer")
    if not isinstance(doc["positions"], list):
        raise InputError("positions must be a list")
    c = _rational(doc["c"], "c")
    pos = tuple(_rational(x, f"positions[{k}]") for k, x in enumerate(doc["positions"]))
    if len(pos) != m:
        raise InputError(f"m={m} but {len(pos)} positions given")
    return Rule(c, m), Profile(pos)


def profile_doc(rule: Rule, profile: Profile) -> dict:
    return {"c": fmt(rule.c), "m": rule.m, "positions": [fmt(x) for x in profile]}


def _witness(w) -> dict:
    if isinstance(w, Point):
        return {"kind": "point", "at": fmt(w.t)}
    if isinstance(w, LeftLimitAt):
        return {"kind": "left_limit", "at": fmt(w.x)}
    if isinstance(w, RightLimitAt):
        return {"kind": "right_limit", "at": fmt(w.x)}
    raise TypeError(w)


def certificate_doc(cert: EquilibriumCertificate) -> dict:
    doc = {
        "verdict": str(cert.verdict),
        "per_candidate": [
            {
                "candidate": ch.candidate,
                "score": fmt(ch.score),
                "sup_deviation": fmt(ch.sup_deviation),
                "slack": fmt(ch.slack),
                "witness": _witness(ch.witness),
                "attained": ch.attained,
            }
            for ch in cert.per_candidate
        ],
        "violated_by": cert.violated_by,
    }
    if cert.conditions:
        doc["conditions"] = [
            {"name": cd.name, "holds": cd.holds, "evidence": cd.evidence} for cd in cert.conditions
        ]
    if cert.in_cne_interval is not None:
        doc["cne_interval"] = [fmt(x) for x in cert.cne_interval] if cert.cne_interval else None
        doc["in_cne_interval"] = cert.in_cne_interval
    return doc


def construction_doc(con: Construction, cert: EquilibriumCertificate) -> dict:
    return {
        **profile_doc(con.rule, con.profile),
        "family": con.family,
        "limit": con.limit,
        "metadata": con.metadata,
        "certificate": certificate_doc(cert),
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        raw = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _c_list(text: str) -> list[Fraction]:
    return [_rational(tok, "c") for tok in text.split(",") if tok.strip()]


# -- commands ---------------------------------------------------------------


def cmd_check(args) -> int:
    rule, profile = parse_profile(_load(args.input))
    cert = classify(rule, profile)
    doc = certificate_doc(cert)
    if args.grid_step is not None:
        step = _rational(args.grid_step, "--grid-step")
        doc["grid"] = []
        for i in range(rule.m):
            val, t = grid_best_deviation(rule, profile, i, step)
            doc["grid"].append({"candidate": i, "max": fmt(val), "argmax": fmt(t)})
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if cert.verdict.is_equilibrium else EXIT_NOT_EQUILIBRIUM


def _counts(text: str | None):
    if not text:
        return None
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise InputError(f"--counts must be comma-separated integers: {text!r}") from None


def cmd_construct(args) -> int:
    rule = Rule(_rational(args.c, "--c"), args.m)
    eps = None if args.epsilon is None else _rational(args.epsilon, "--epsilon")
    x1 = None if args.x1 is None else _rational(args.x1, "--x1")
    con = construct(rule, args.family, epsilon=eps, counts=_counts(args.counts), x1=x1)
    cert = classify(rule, con.profile)
    _emit(json.dumps(construction_doc(con, cert), indent=2) + "\n", args.out)
    return EXIT_OK


def sweep_row(c: Fraction, m: int, family: str, epsilon=None, counts=None) -> dict:
    row = {"c": fmt(c), "m": m, "family": family, "verdict": "", "x1": "", "Ip": "", "positions": ""}
    try:
        rule = Rule(c, m)
        con = construct(rule, family, epsilon=epsilon, counts=counts)
        cert = classify(rule, con.profile)
    except InternalInconsistency:
        raise
    except BestWorstError as exc:
        row["verdict"] = f"Error: {type(exc).__name__}: {exc}"
        return row
    cp = canonicalize(con.profile)
    verdict = str(cert.verdict)
    if con.limit:
        verdict += " (limit, not NCNE)"
    row.update(
        verdict=verdict,
        x1=fmt(cp.occupied[0]),
        Ip=fmt(electorates(cp).right_half[0].length) if cp.q >= 2 else "",
        positions=";".join(fmt(x) for x in sorted(con.profile)),
    )
    return row


def sweep_csv(m: int, family: str, cs, epsilon=None, counts=None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_HEADER, lineterminator="\n")
    writer.writeheader()
    for c in cs:
        writer.writerow(sweep_row(c, m, family, epsilon, counts))
    return buf.getvalue()


def cmd_sweep(args) -> int:
    eps = None if args.epsilon is None else _rational(args.epsilon, "--epsilon")
    _emit(sweep_csv(args.m, args.family, _c_list(args.c), eps, _counts(args.counts)), args.out)
    return EXIT_OK


def mc_report(rule: Rule, profile: Profile, n: int, seed: int) -> dict:
    exact = score_all(rule, profile).per_candidate
    est = sample_scores(rule, profile, n, seed)
    rows = []
    for i, (v, mean, se) in enumerate(zip(exact, est.per_candidate_mean, est.per_candidate_stderr)):
        diff = mean - float(v)
        z = diff / se if se > 0 else (0.0 if diff == 0 else float("inf"))
        rows.append({"candidate": i, "exact": fmt(v), "mc_mean": mean, "stderr": se, "z": z})
    return {**profile_doc(rule, profile), "n": n, "seed": seed, "per_candidate": rows}


def cmd_mc(args) -> int:
    if args.n < 1:
        raise InputError("--n must be >= 1")
    rule, profile = parse_profile(_load(args.input))
    report = mc_report(rule, profile, args.n, args.seed)
    worst = max(abs(r["z"]) for r in report["per_candidate"])
    report["max_abs_z"] = worst
    report["pass"] = worst <= Z_LIMIT
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK if report["pass"] else EXIT_NOT_EQUILIBRIUM


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bestworst", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="certify a profile")
    p.add_argument("input", nargs="?", default="-", help="profile JSON file, '-' for stdin")
    p.add_argument("--grid-step", default=None, help="also report a grid search with this step")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="build an equilibrium profile")
    p.add_argument("--c", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--epsilon", default=None)
    p.add_argument("--counts", default=None, help="e.g. 2,1,1,2 (max_dispersed only)")
    p.add_argument("--x1", default=None, help="convergent position (cne only)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("sweep", help="CSV of constructed equilibria over a list of c")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--c", required=True, help="comma-separated rationals, e.g. 0,1/4,1/2")
    p.add_argument("--epsilon", default=None)
    p.add_argument("--counts", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mc", help="Monte Carlo check of exact scores")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--n", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_mc)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, BestWorstError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
