"""Machine-readable check reports and deterministic JSON serialization.

Every verification routine in this package returns a CheckReport: an
identifier, a verdict (pass / fail / unknown), the parameters the check ran
with, and a witness for failures (typically the first differing
coefficient).  Reports aggregate into schema-versioned JSON documents that
are byte-identical across reruns with the same configuration: keys are
sorted, no timestamps or durations are recorded, and every random choice is
tied to a seed stored in the document itself.
"""

from __future__ import annotations

import json

SCHEMA = 1

PASS = "pass"
FAIL = "fail"
UNKNOWN = "unknown"


class CheckReport:
    """Verdict plus certificate data for one relation check."""

    __slots__ = ("id", "verdict", "params", "witness", "meta")

    def __init__(self, id: str, verdict: str, params=None, witness=None,
                 meta=None):
        if verdict not in (PASS, FAIL, UNKNOWN):
            raise ValueError("bad verdict %r" % (verdict,))
        self.id = id
        self.verdict = verdict
        self.params = dict(params or {})
        self.witness = witness
        self.meta = dict(meta or {})

    @classmethod
    def from_bool(cls, id: str, ok: bool, params=None, witness=None,
                  meta=None) -> "CheckReport":
        # witness is only meaningful on failure; drop it otherwise
        return cls(id, PASS if ok else FAIL, params,
                   None if ok else witness, meta)

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict:
        out = {"id": self.id, "verdict": self.verdict}
        if self.params:
            out["params"] = self.params
        if self.witness is not None:
            out["witness"] = self.witness
        if self.meta:
            out["meta"] = self.meta
        return out

    def __repr__(self):
        return "CheckReport(%r, %r)" % (self.id, self.verdict)


def summarize(reports) -> dict:
    """Tally pass / fail / unknown over a list of CheckReports or dicts."""
    tally = {PASS: 0, FAIL: 0, UNKNOWN: 0}
    for rep in reports:
        verdict = rep["verdict"] if isinstance(rep, dict) else rep.verdict
        tally[verdict] += 1
    return tally


def report_doc(kind: str, checks, seed=None, **fields) -> dict:
    """Assemble one run's report document (extra fields go top-level)."""
    rows = [c.to_dict() if isinstance(c, CheckReport) else c for c in checks]
    doc = {"schema": SCHEMA, "kind": kind, "seed": seed, "checks": rows,
           "summary": summarize(rows)}
    doc.update(fields)
    return doc


def dump_json(doc: dict) -> str:
    """Canonical serialization: sorted keys, stable for byte-level diffing."""
    return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"


def _canon(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=str)


def merge_docs(docs) -> dict:
    """Merge report documents: flatten runs, dedupe identical checks.

    Associative and idempotent on disjoint check sets; the result records
    every source run header under "runs".
    """
    runs = []
    checks = []
    seen_runs, seen_checks = set(), set()
    for doc in docs:
        if doc.get("schema") != SCHEMA:
            raise ValueError("unsupported schema %r" % (doc.get("schema"),))
        headers = doc["runs"] if doc.get("kind") == "merged" else [
            {k: v for k, v in doc.items()
             if k not in ("checks", "summary", "schema")}]
        for header in headers:
            key = _canon(header)
            if key not in seen_runs:
                seen_runs.add(key)
                runs.append(header)
        for row in doc.get("checks", []):
            key = _canon(row)
            if key not in seen_checks:
                seen_checks.add(key)
                checks.append(row)
    runs.sort(key=_canon)
    checks.sort(key=_canon)
    return {"schema": SCHEMA, "kind": "merged", "runs": runs,
            "checks": checks, "summary": summarize(checks)}


def worst_verdict(reports) -> str:
    """fail dominates unknown dominates pass (drives CLI exit codes)."""
    verdicts = {rep["verdict"] if isinstance(rep, dict) else rep.verdict
                for rep in reports}
    if FAIL in verdicts:
        return FAIL
    if UNKNOWN in verdicts:
        return UNKNOWN
    return PASS
