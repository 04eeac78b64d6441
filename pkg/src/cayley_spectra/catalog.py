"""Append-only JSON-lines catalog of walk phenomena, with replay.

Each record stores the canonical spec, the phenomenon (period, pst, um or
mst), the signed Delta, the discovered times and the matching metrics.
Recomputing a record from its spec reproduces everything but the timestamp.
"""
from __future__ import annotations

import datetime as _dt
import json
import math
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path

import networkx as nx

from .errors import ParseError
from .specio import parse_graph_spec, round_floats, serialize_spec
from .walk import ANY_PERIOD, build_walk, detect_pst, detect_uniform_mixing, pst_graph, period

CATALOG_ENV = "CAYLEY_SPECTRA_CATALOG"
DEFAULT_CATALOG = "cayley_spectra_catalog.jsonl"
PHENOMENA = ("period", "pst", "um", "mst")
REPLAY_TOL = 1e-8


def tool_version() -> str:
    from . import __version__

    return __version__


def catalog_path(override: str | None = None) -> Path:
    return Path(override or os.environ.get(CATALOG_ENV) or DEFAULT_CATALOG)


@dataclass
class CatalogRecord:
    spec: dict
    phenomenon: str
    delta: int | None
    times: list
    metrics: dict
    notes: dict = field(default_factory=dict)
    tool_version: str = field(default_factory=tool_version)
    timestamp: str = ""

    def body(self) -> dict:
        """Everything except the timestamp, with floats at output precision."""
        d = asdict(self)
        d.pop("timestamp")
        return round_floats(d)


def _signed_delta(spec, D):
    if D is None:
        return None
    return -D if spec.kind == "oriented" else D


def discover(spec, phenomenon: str, *, pair: tuple[int, int] | None = None,
             notes: dict | None = None) -> CatalogRecord:
    """Run one walk computation and package it as a record (times may be empty)."""
    if phenomenon not in PHENOMENA:
        raise ParseError(f"unknown phenomenon {phenomenon!r}")
    W = build_walk(spec)
    delta = _signed_delta(spec, W.radicand)
    s = serialize_spec(spec)
    notes = dict(notes or {})
    if phenomenon == "period":
        T = period(W)
        times = [] if T is None else ["any" if T == ANY_PERIOD else T]
        return CatalogRecord(s, phenomenon, delta, times, {}, notes)
    if phenomenon == "pst":
        a, b = pair if pair is not None else (0, None)
        if b is None:
            raise ParseError("pst records need a vertex pair")
        ev = detect_pst(W, a, b)
        notes["pair"] = [a, b]
        return CatalogRecord(s, phenomenon, delta, [t for t, _ in ev], {"fidelity": [f for _, f in ev]}, notes)
    if phenomenon == "um":
        ev = detect_uniform_mixing(W)
        return CatalogRecord(s, phenomenon, delta, [t for t, _ in ev], {"deviation": [d for _, d in ev]}, notes)
    graph, from0 = pst_graph(W) if period(W) not in (None, ANY_PERIOD) else (None, {})
    sets = [] if graph is None else sorted(tuple(sorted(c)) for c in nx.find_cliques(graph) if len(c) >= 3)
    # times of 0 -> b for b in the set through 0, which generate all pair times by translation
    base = next((S for S in sets if 0 in S), None)
    pair_times = {str(b): [t for t, _ in from0[b]] for b in (base or ()) if b != 0}
    return CatalogRecord(s, phenomenon, delta, sorted({t for v in pair_times.values() for t in v}),
                         {"sets": [list(S) for S in sets], "pair_times": pair_times}, notes)


def append(record: CatalogRecord, path: str | os.PathLike | None = None) -> Path:
    p = catalog_path(path)
    record.timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    line = json.dumps({**record.body(), "timestamp": record.timestamp})
    with open(p, "a", encoding="utf-8") as fh:
        fh.write(line + "\n")
    return p


def read(path: str | os.PathLike | None = None) -> list[dict]:
    p = catalog_path(path)
    if not p.exists():
        return []
    out = []
    with open(p, encoding="utf-8") as fh:
        for i, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise ParseError(f"{p}:{i}: {exc}") from None
    return out


def _close(x, y) -> bool:
    if isinstance(x, (int, float)) and isinstance(y, (int, float)):
        return math.isclose(x, y, rel_tol=REPLAY_TOL, abs_tol=REPLAY_TOL)
    if isinstance(x, list) and isinstance(y, list):
        return len(x) == len(y) and all(_close(a, b) for a, b in zip(x, y))
    if isinstance(x, dict) and isinstance(y, dict):
        return x.keys() == y.keys() and all(_close(x[k], y[k]) for k in x)
    return x == y


def replay(rec: dict) -> tuple[bool, dict]:
    """Recompute a stored record; True when times and metrics agree within 1e-8."""
    spec = parse_graph_spec(rec["spec"])
    pair = tuple(rec.get("notes", {}).get("pair", ())) or None
    fresh = discover(spec, rec["phenomenon"], pair=pair, notes=rec.get("notes")).body()
    keys = ("phenomenon", "delta", "times", "metrics")
    ok = all(_close(rec.get(k), fresh[k]) for k in keys)
    return ok, fresh
