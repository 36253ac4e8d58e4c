"""``cotor-spin`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition
error, 3 truncation too short for a collapse claim.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .checks import check_n, failures
from .f2poly import format_monomial, format_poly, parse_poly
from .groebner import BasisSet, coprime_pairs_criterion, is_groebner, reduce
from .order import build_order_for_n
from .series import (
    InsufficientTruncation,
    collapse_verdict,
    default_truncation,
    divergence_degree,
    first_divergence,
    poincare_cotor,
    poincare_quillen,
)
from .spinarith import TABLE_COLUMNS, format_table, spin_params
from .steenrod import regular_sequence_certificate, relations_in_R, v_generators

log = logging.getLogger("cotor_spin")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TRUNCATION = 0, 1, 2, 3
TRUNCATE_ENV = "COTOR_SPIN_TRUNCATE"


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_from: int | None = None
    n_to: int | None = None
    truncate: int | None = None
    fmt: str = "text"
    jobs: int = 1
    verbosity: int = 0

    def validate(self) -> None:
        for v in (self.n_from, self.n_to):
            if v is not None and v < 9:
                raise UsageError(f"n must be >= 9, got {v}")
        if self.n_from is not None and self.n_to is not None and self.n_from > self.n_to:
            raise UsageError(f"empty range {self.n_from}..{self.n_to}")
        if self.truncate is not None and self.truncate < 1:
            raise UsageError(f"truncation must be >= 1, got {self.truncate}")


def _truncation(cfg: RunConfig, n: int) -> int:
    if cfg.truncate is not None:
        return cfg.truncate
    env = os.environ.get(TRUNCATE_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{TRUNCATE_ENV} must be an integer, got {env!r}") from None
    return default_truncation(n)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_analyze(cfg: RunConfig) -> tuple[str, int]:
    n = cfg.n_from
    p = spin_params(n)
    D = _truncation(cfg, n)
    gens = v_generators(p)
    report = {
        "params": p.row(),
        "E": list(p.E),
        "D": list(p.D),
        "generators": [f"v_{k} = {format_poly(v)}" for k, v in enumerate(gens)],
    }
    if p.d_empty:
        report["order"] = None
        report["leading_monomials"] = []
        report["regular_sequence"] = "polynomial quotient: only v_0..v_{s-1}, all variables"
    else:
        cert = regular_sequence_certificate(p)
        report["order"] = cert["order"].to_dict()
        report["leading_monomials"] = [
            f"v_{p.s + k}: {format_monomial(m)}" for k, m in enumerate(cert["leading"])
        ]
        report["regular_sequence"] = (
            "certified: pairwise coprime leading monomials" if cert["coprime"] else "not certified"
        )
    report["truncation"] = D
    verdict = collapse_verdict(n, D)
    report["first_divergence"] = divergence_degree(n, D)
    report["verdict"] = verdict

    if cfg.fmt == "json":
        return _dump_json(report), EXIT_OK
    if cfg.fmt == "csv":
        rows = [["field", "value"]]
        rows += [[k, "" if v is None else v] for k, v in p.row().items()]
        rows += [[g.split(" = ")[0], g.split(" = ")[1]] for g in report["generators"]]
        rows += [["verdict", verdict]]
        return _csv(rows), EXIT_OK
    lines = [f"n = {n}", format_table([p]).rstrip("\n"), ""]
    lines.append("E = {" + ", ".join(map(str, p.E)) + "}")
    lines.append("generators:")
    lines += ["  " + g for g in report["generators"]]
    if not p.d_empty:
        lines.append(f"term order: {cert['order'].describe()}")
        lines.append("leading monomials:")
        lines += ["  " + s for s in report["leading_monomials"]]
    lines.append(f"regular sequence: {report['regular_sequence']}")
    div = report["first_divergence"]
    lines.append(f"series through degree {D}: " + ("equal" if div is None else f"first divergence at degree {div}"))
    lines.append(f"verdict: {verdict}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_table(cfg: RunConfig) -> tuple[str, int]:
    rows = [spin_params(n) for n in range(cfg.n_from, cfg.n_to + 1)]
    if cfg.fmt == "json":
        return _dump_json([r.row() for r in rows]), EXIT_OK
    if cfg.fmt == "csv":
        body = [list(TABLE_COLUMNS)]
        body += [["" if v is None else v for v in r.row().values()] for r in rows]
        return _csv(body), EXIT_OK
    return format_table(rows), EXIT_OK


def cmd_series(cfg: RunConfig, which: str, want_verdict: bool) -> tuple[str, int]:
    n = cfg.n_from
    D = _truncation(cfg, n)
    spin_params(n)
    verdict = None
    if want_verdict:
        verdict = collapse_verdict(n, D)
    series = {}
    if which in ("cotor", "both", "diff"):
        series["cotor"] = poincare_cotor(n, D)
    if which in ("quillen", "both", "diff"):
        series["quillen"] = poincare_quillen(n, D)

    if which == "diff":
        div = first_divergence(series["cotor"], series["quillen"])
        if cfg.fmt == "json":
            obj = {"n": n, "D": D, "first_divergence": div}
            if verdict:
                obj["verdict"] = verdict
            return _dump_json(obj), EXIT_OK
        if cfg.fmt == "csv":
            rows = [["n", "D", "first_divergence"], [n, D, "equal" if div is None else div]]
            return _csv(rows), EXIT_OK
        text = "equal" if div is None else str(div)
        if verdict:
            text += f"\nverdict: {verdict}"
        return text + "\n", EXIT_OK

    if cfg.fmt == "json":
        obj = {"n": n, "D": D}
        obj.update({k: list(s.coeffs) for k, s in series.items()})
        if verdict:
            obj["verdict"] = verdict
        return _dump_json(obj), EXIT_OK
    if cfg.fmt == "csv":
        names = list(series)
        rows = [["degree"] + names]
        rows += [[d] + [series[k][d] for k in names] for d in range(D + 1)]
        return _csv(rows), EXIT_OK
    width = max(map(len, series))
    lines = [f"{k.ljust(width)} " + " ".join(map(str, s.coeffs)) for k, s in series.items()]
    if verdict:
        lines.append(f"verdict: {verdict}")
    return "\n".join(lines) + "\n", EXIT_OK


def _check_star(args):
    return check_n(*args)


def cmd_verify(cfg: RunConfig, inject_fault: bool = False) -> tuple[str, int]:
    ns = list(range(cfg.n_from, cfg.n_to + 1))
    work = [(n, inject_fault) for n in ns]
    if cfg.jobs > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_check_star, work, chunksize=max(1, len(ns) // (4 * cfg.jobs))))
    else:
        reports = [check_n(*w) for w in work]
    failed = {n: failures(r) for n, r in zip(ns, reports) if failures(r)}
    code = EXIT_FAIL if failed else EXIT_OK

    if cfg.fmt == "json":
        obj = {"ok": not failed, "results": [{"n": n, "checks": r} for n, r in zip(ns, reports)]}
        return _dump_json(obj), code
    if cfg.fmt == "csv":
        rows = [["n", "check", "status"]]
        rows += [[n, k, v] for n, r in zip(ns, reports) for k, v in r.items()]
        return _csv(rows), code
    lines = []
    for n, r in zip(ns, reports):
        if n in failed:
            lines.append(f"n={n}: FAIL")
            lines += [f"  {k}: {r[k]}" for k in failed[n]]
        elif cfg.verbosity:
            lines.append(f"n={n}: ok")
    total = len(ns)
    lines.append(f"{total - len(failed)}/{total} values of n passed every applicable check")
    return "\n".join(lines) + "\n", code


def cmd_groebner(cfg: RunConfig, members: list[str]) -> tuple[str, int]:
    n = cfg.n_from
    p = spin_params(n)
    if p.d_empty:
        raise UsageError(f"n={n} = 2^(s-1)+1: R has no relations beyond the variables")
    order = build_order_for_n(p)
    rel = relations_in_R(p)
    G = BasisSet(tuple(rel), order)
    gb = is_groebner(G)
    out = {
        "n": n,
        "order": order.to_dict(),
        "basis": [format_poly(g) for g in rel],
        "leading_monomials": [format_monomial(m) for m in G.leading_monomials()],
        "coprime_leading_monomials": coprime_pairs_criterion(G),
        "is_groebner": gb,
        "membership": [],
    }
    for text in members:
        f = parse_poly(text, n)
        nf, zero = reduce(f, G)
        out["membership"].append({"poly": format_poly(f), "normal_form": format_poly(nf), "in_ideal": zero})

    if cfg.fmt == "json":
        return _dump_json(out), EXIT_OK
    if cfg.fmt == "csv":
        rows = [["poly", "normal_form", "in_ideal"]]
        rows += [[m["poly"], m["normal_form"], m["in_ideal"]] for m in out["membership"]]
        return _csv(rows), EXIT_OK
    lines = [f"n = {n}", f"term order: {order.describe()}", "basis of the relations in R:"]
    lines += [f"  {g}    [lt = {m}]" for g, m in zip(out["basis"], out["leading_monomials"])]
    lines.append(f"pairwise coprime leading monomials: {out['coprime_leading_monomials']}")
    lines.append(f"Buchberger criterion holds: {gb}")
    for m in out["membership"]:
        lines.append(f"{m['poly']} -> normal form {m['normal_form']} ({'in' if m['in_ideal'] else 'not in'} ideal)")
    return "\n".join(lines) + "\n", EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--truncate", type=int, default=None, metavar="D",
                        help=f"series truncation degree (default: ${TRUNCATE_ENV} or max(64, 2^h'+8))")
    common.add_argument("--jobs", type=int, default=1, metavar="K")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="cotor-spin", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="generators, order, certificate and verdict for one n")
    a.add_argument("n", type=int)

    t = sub.add_parser("table", parents=[common], help="the n s t m m' eps h' l h table")
    t.add_argument("n_from", type=int)
    t.add_argument("n_to", type=int, nargs="?")

    s = sub.add_parser("series", parents=[common], help="Poincare series of the cotorsion product and of BSpin(n)")
    s.add_argument("n", type=int)
    s.add_argument("D", type=int, nargs="?")
    s.add_argument("which", nargs="?", default="both", choices=("cotor", "quillen", "both", "diff"))
    s.add_argument("--verdict", action="store_true", help="also decide collapse (exit 3 if D < 2^h'+2)")

    v = sub.add_parser("verify", parents=[common], help="run every check over a range of n")
    v.add_argument("n_from", type=int)
    v.add_argument("n_to", type=int, nargs="?")
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    g = sub.add_parser("groebner", parents=[common], help="the relation basis in R and membership tests")
    g.add_argument("n", type=int)
    g.add_argument("--member", action="append", default=[], metavar="POLY")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose > 1 else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")

    n_from = getattr(args, "n", None) or getattr(args, "n_from", None)
    n_to = getattr(args, "n_to", None)
    if args.command in ("table", "verify") and n_to is None:
        n_to = n_from
    truncate = args.truncate
    if args.command == "series" and args.D is not None:
        truncate = args.D
    cfg = RunConfig(args.command, n_from, n_to, truncate, args.format, max(1, args.jobs), args.verbose)

    try:
        cfg.validate()
        if cfg.command == "analyze":
            text, code = cmd_analyze(cfg)
        elif cfg.command == "table":
            text, code = cmd_table(cfg)
        elif cfg.command == "series":
            text, code = cmd_series(cfg, args.which, args.verdict)
        elif cfg.command == "verify":
            text, code = cmd_verify(cfg, args.inject_fault)
        else:
            text, code = cmd_groebner(cfg, args.member)
    except InsufficientTruncation as exc:
        print(f"cotor-spin: error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (UsageError, ValueError) as exc:
        print(f"cotor-spin: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
