"""Command-line front end: run verification suites, emit JSON reports.

Subcommands cover the braiding-matrix checks, the exchange-relation
generators evaluated against the rational backend, the current-algebra
suites over either backend, the kernel-expansion lemma checks, the
finite-type checks, the triangular-decomposition emitter, and report
merging.  Every run writes a schema-versioned JSON report whose bytes
depend only on configuration and seed: no timestamps, sorted keys, and
worker results assembled in submission order.  A plain key=value config
file may set defaults; command-line flags override it.  The environment
variable RTT_KERNEL_THREADS caps the worker pool (default 1).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import drinfeld, evalrep, freealg, gauss, report, rmatrix, rtt
from .freealg import word_key, word_str

EX_OK = 0
EX_FAIL = 1
EX_UNKNOWN = 2
EX_USAGE = 64

_EXIT_BY_VERDICT = {report.PASS: EX_OK, report.FAIL: EX_FAIL,
                    report.UNKNOWN: EX_UNKNOWN}

ALGEBRAS = ("gl", "sl")
BACKENDS = ("eval", "ideal")
_BACKEND_MAP = {"eval": drinfeld.BACKEND_EVAL,
                "ideal": drinfeld.BACKEND_IDEAL}


class UsageError(Exception):
    """Bad invocation or configuration; mapped to exit 64."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError("expected a boolean, got %r" % (text,))


# config keys mirror the long flags; values are cast like the flags
_CASTERS = {"n": int, "order": int, "length": int, "seed": int,
            "prob": int, "exact": _parse_bool, "algebra": str,
            "backend": str, "out": str}


def load_config(path: str) -> dict:
    """Plain key=value lines; # comments and blank lines ignored."""
    out: dict = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError("cannot read config %s: %s" % (path, exc))
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise UsageError("%s:%d: expected key=value" % (path, lineno))
            key, val = key.strip(), val.strip()
            caster = _CASTERS.get(key)
            if caster is None:
                raise UsageError("%s:%d: unknown key %r" % (path, lineno, key))
            try:
                out[key] = caster(val)
            except ValueError as exc:
                raise UsageError("%s:%d: %s" % (path, lineno, exc))
    return out


class RunConfig:
    """One run's resolved settings, validated before any work starts."""

    __slots__ = ("n", "order", "length", "algebra", "backend", "points",
                 "seed", "out")

    def __init__(self, n: int, order, length: int, algebra, backend,
                 points, seed: int, out: str):
        if n < 1:
            raise UsageError("n must be at least 1")
        if order is not None and order < 0:
            raise UsageError("order must be nonnegative")
        if length < 2:
            raise UsageError("length cap must be at least 2")
        if algebra is not None and algebra not in ALGEBRAS:
            raise UsageError("algebra must be one of %s" % (ALGEBRAS,))
        if backend is not None and backend not in BACKENDS:
            raise UsageError("backend must be one of %s" % (BACKENDS,))
        if points is not None and points < 1:
            raise UsageError("sample count must be positive")
        self.n = n
        self.order = order
        self.length = length
        self.algebra = algebra
        self.backend = backend
        self.points = points
        self.seed = seed
        self.out = out


def _pick(ns, cfg: dict, key: str, default):
    val = getattr(ns, key, None)
    if val is not None:
        return val
    return cfg.get(key, default)


def _resolve(ns, cfg: dict) -> RunConfig:
    # --exact / --prob are exclusive on the command line; an explicit
    # flag overrides whichever mode the config file selected
    if getattr(ns, "exact", None):
        points = None
    elif getattr(ns, "prob", None) is not None:
        points = ns.prob
    elif cfg.get("exact"):
        points = None
    else:
        points = cfg.get("prob")
    return RunConfig(
        n=_pick(ns, cfg, "n", 2),
        order=_pick(ns, cfg, "order", None),
        length=_pick(ns, cfg, "length", 8),
        algebra=_pick(ns, cfg, "algebra", None),
        backend=_pick(ns, cfg, "backend", None),
        points=points,
        seed=_pick(ns, cfg, "seed", 0),
        out=_pick(ns, cfg, "out", "report.json"))


def _threads() -> int:
    raw = os.environ.get("RTT_KERNEL_THREADS", "1")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError("RTT_KERNEL_THREADS must be an integer, got %r"
                         % (raw,))
    return max(cap, 1)


def _run_jobs(jobs: list) -> list:
    """Run check jobs on the capped pool; flatten in submission order."""
    threads = _threads()
    if threads <= 1 or len(jobs) <= 1:
        groups = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            groups = list(pool.map(lambda job: job(), jobs))
    return [chk for group in groups for chk in group]


# -- subcommand bodies --------------------------------------------------------


def _require(value, flag: str):
    if value is None:
        raise UsageError("%s is required" % flag)
    return value


def _cmd_rmatrix(rc: RunConfig):
    return "check-rmatrix", {"n": rc.n}, [lambda: rmatrix.suite(rc.n)], {}


def _cmd_defining(rc: RunConfig):
    order = _require(rc.order, "--order")

    def symbolic():
        E = evalrep.build_eval(rc.n)
        return [evalrep.check_defining_eval(E), evalrep.check_zero_modes(E)]

    def instances():
        return [rtt.cross_backend_check(rc.n, order,
                                        points=rc.points or 0,
                                        seed=rc.seed)]

    fields = {"n": rc.n, "order": order,
              "mode": "prob" if rc.points else "exact"}
    if rc.points:
        fields["points"] = rc.points
    return "check-defining", fields, [symbolic, instances], {}


def _cmd_drinfeld(rc: RunConfig):
    algebra = _require(rc.algebra, "--algebra")
    backend = _require(rc.backend, "--backend")
    # the eval suite defaults to a deeper lattice cut than the ideal one
    order = rc.order if rc.order is not None else \
        (2 if backend == "eval" else 1)
    if order < 1:
        raise UsageError("order must be at least 1 here")

    def job():
        return drinfeld.relation_suite(algebra, _BACKEND_MAP[backend],
                                       rc.n, order)

    fields = {"algebra": algebra, "backend": backend, "n": rc.n,
              "order": order}
    return "check-drinfeld", fields, [job], {}


def _cmd_lemmas(rc: RunConfig):
    order = rc.order if rc.order is not None else 2
    if order < 1:
        raise UsageError("order must be at least 1 here")

    def job():
        return drinfeld.lemma_checks(drinfeld.BACKEND_EVAL, rc.n, order)

    return "check-lemmas", {"n": rc.n, "order": order}, [job], {}


def _cmd_natural(rc: RunConfig):
    return ("check-natural", {"n": rc.n},
            [lambda: evalrep.natural_rep_check(rc.n)], {})


def _series_doc(ser) -> dict:
    lo, hi = ser.window()
    out = {}
    for e in range(lo, hi + 1):
        p = ser.get(e)
        if p:
            out[str(e)] = {
                word_str(w): str(c)
                for w, c in sorted(p.terms.items(),
                                   key=lambda kv: word_key(kv[0]))}
    return out


def _triple_doc(tri) -> dict:
    return {
        "k": [_series_doc(ser) for ser in tri.k],
        "e": [[_series_doc(ser) for ser in row] for row in tri.e],
        "f": [[_series_doc(ser) for ser in row] for row in tri.f]}


def _cmd_gauss(rc: RunConfig, emit):
    order = _require(rc.order, "--order")
    triples = {}
    checks = []
    for sign in freealg.SIGNS:
        L = freealg.build_L(sign, rc.n, order)
        tri = gauss.gauss_decompose(L.grid,
                                    freealg.series_one(sign, order),
                                    freealg.series_zero(sign, order))
        miss = gauss.verify_refactor(L.grid, tri)
        checks.append(report.CheckReport.from_bool(
            "gauss.refactor", miss is None,
            {"sign": sign, "n": rc.n, "order": order},
            witness=None if miss is None else {"entry": list(miss)}))
        triples[sign] = _triple_doc(tri)
    if emit:
        with open(emit, "w", encoding="utf-8") as fh:
            fh.write(report.dump_json({"schema": report.SCHEMA,
                                       "kind": "gauss-triple",
                                       "n": rc.n, "order": order,
                                       "triples": triples}))
    fields = {"n": rc.n, "order": order}
    return "gauss", fields, [lambda: checks], {"triples": triples}


def _cmd_report(paths: list, out: str) -> int:
    docs = []
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                docs.append(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError("cannot load report %s: %s" % (path, exc))
    try:
        merged = report.merge_docs(docs)
    except ValueError as exc:
        raise UsageError(str(exc))
    _write_doc(merged, out)
    checks = merged["checks"]
    _print_summary(checks, out)
    return _EXIT_BY_VERDICT[report.worst_verdict(checks)] if checks else EX_OK


# -- plumbing -----------------------------------------------------------------


def _write_doc(doc: dict, out: str):
    text = report.dump_json(doc)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _print_summary(checks: list, out: str):
    for chk in checks:
        row = chk if isinstance(chk, dict) else chk.to_dict()
        line = "%-7s %s" % (row["verdict"].upper(), row["id"])
        params = row.get("params")
        if params:
            line += "  " + json.dumps(params, sort_keys=True, default=str)
        print(line)
    tally = report.summarize(checks)
    print("pass %d  fail %d  unknown %d  -> %s"
          % (tally[report.PASS], tally[report.FAIL],
             tally[report.UNKNOWN], out))


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value defaults file")
    common.add_argument("--out",
                        help="report output path (default report.json)")
    common.add_argument("--seed", type=int,
                        help="seed recorded in the report")

    top = _Parser(prog="rttcheck", parents=[common],
                  description="exact verification suites with JSON reports")
    sub = top.add_subparsers(dest="command")

    chk = sub.add_parser("check", parents=[common],
                         help="run one verification suite")
    csub = chk.add_subparsers(dest="suite")

    p = csub.add_parser("rmatrix", parents=[common],
                        help="constant and spectral matrix checks")
    p.add_argument("--n", type=int)

    p = csub.add_parser("defining", parents=[common],
                        help="exchange relations, both backends")
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--exact", action="store_true", default=None)
    group.add_argument("--prob", type=int, metavar="K",
                       help="check instances at K prime-field points")

    p = csub.add_parser("drinfeld", parents=[common],
                        help="current-algebra relation suite")
    p.add_argument("--algebra", choices=ALGEBRAS)
    p.add_argument("--backend", choices=BACKENDS)
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=int)

    p = csub.add_parser("lemmas", parents=[common],
                        help="kernel-expansion lemma checks")
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=int)

    p = csub.add_parser("natural", parents=[common],
                        help="finite-type matrix relation checks")
    p.add_argument("--n", type=int)

    p = sub.add_parser("gauss", parents=[common],
                       help="emit the triangular decomposition")
    p.add_argument("--n", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--emit", help="also write the triples to this path")

    p = sub.add_parser("report", parents=[common],
                       help="merge report files")
    p.add_argument("--merge", nargs="+", required=True, metavar="PATH")

    return top


_SUITES = {"rmatrix": _cmd_rmatrix, "defining": _cmd_defining,
           "drinfeld": _cmd_drinfeld, "lemmas": _cmd_lemmas,
           "natural": _cmd_natural}


def _main(argv) -> int:
    ns = _build_parser().parse_args(argv)
    cfg = load_config(ns.config) if ns.config else {}
    if ns.command is None:
        raise UsageError("a subcommand is required")
    rc = _resolve(ns, cfg)
    if ns.command == "report":
        return _cmd_report(ns.merge, rc.out)
    if ns.command == "gauss":
        kind, fields, jobs, extra = _cmd_gauss(rc, ns.emit)
    else:
        handler = _SUITES.get(ns.suite)
        if handler is None:
            raise UsageError("a check suite is required")
        kind, fields, jobs, extra = handler(rc)
    checks = _run_jobs(jobs)
    doc = report.report_doc(kind, checks, seed=rc.seed, **fields, **extra)
    _write_doc(doc, rc.out)
    _print_summary(checks, rc.out)
    return _EXIT_BY_VERDICT[report.worst_verdict(checks)]


def main(argv=None) -> int:
    try:
        return _main(argv)
    except UsageError as exc:
        print("usage error: %s" % (exc,), file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
