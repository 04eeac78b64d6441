"""Command-line interface: ``cayley-spectra <command> ...``.

Output is JSON on stdout (floats at 15 significant digits) unless
``--format csv`` is given.  Exit codes: 0 ok, 2 invalid input, 3 computation
error; failures print a JSON object with an ``error`` field.
"""
from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from pathlib import Path

from . import catalog
from .errors import CayleySpectraError, ComputationError, InputError, InvalidArgument, InvalidSpec, ParseError
from .families import family_spec
from .gauss_sum import check_identity, sweep
from .number_theory import delta_spec, feasible_deltas, h_delta
from .specio import dumps, format_element, load_json, parse_graph_spec, parse_group, serialize_spec
from .spectra import (
    FIT_TOL,
    candidate_verdicts,
    classify_sets,
    delta_partition,
    enumerate_valid_specs,
    spectrum,
)
from .walk import (
    ANY_PERIOD,
    EVENT_TOL,
    build_walk,
    detect_pst,
    detect_uniform_mixing,
    period,
    transition_matrix,
    um_necessary_condition,
    walk_report,
)

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3


def _read_arg(value: str) -> str:
    """Inline JSON, or a path to a file holding it ('-' reads stdin)."""
    if value == "-":
        return sys.stdin.read()
    s = value.lstrip()
    if s.startswith("{") or s.startswith("["):
        return value
    p = Path(value)
    if not p.exists():
        raise ParseError(f"{value!r} is neither JSON nor an existing file")
    return p.read_text(encoding="utf-8")


def _group(args):
    return parse_group(load_json(_read_arg(args.group)))


def _graph(args):
    if getattr(args, "family", None):
        spec, _ = family_spec(args.family, args.m, args.a)
        return spec
    if not getattr(args, "graph", None):
        raise InvalidArgument("give --graph or --family")
    return parse_graph_spec(load_json(_read_arg(args.graph)))


def _emit(obj, out) -> None:
    out.write(dumps(obj) + "\n")


def _emit_csv(header, rows, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([f"{x:.15g}" if isinstance(x, float) else x for x in r])


# -- commands -------------------------------------------------------------------

def cmd_deltas(args, out):
    G = _group(args)
    rows = []
    for d in feasible_deltas(G.exponent):
        H = h_delta(G.exponent, d)
        rows.append({
            "delta": d.value,
            "flags": {"w0": d.w0, "w": d.w, "w_i": dict(zip(map(str, d.primes), d.ws))},
            "H": list(H.members),
            "index": H.index,
            "coset_rep": H.nonmember_coset_rep,
        })
    _emit({"exponent": G.exponent, "deltas": rows}, out)


def cmd_classes(args, out):
    G = _group(args)
    if args.delta is None:
        classes = G.conjugacy_classes
        label = "conjugacy"
    else:
        classes = delta_partition(G, args.delta).classes
        label = f"~_{args.delta}"
    _emit({
        "group": G.describe(),
        "partition": label,
        "classes": [[format_element(G, g) for g in c] for c in classes],
        "sizes": [len(c) for c in classes],
    }, out)


def cmd_classify(args, out):
    spec = _graph(args)
    verdicts = candidate_verdicts(spec) if args.all else classify_sets(spec)
    rep = spectrum(spec)
    _emit({
        "kind": spec.kind,
        "normal": spec.is_normal,
        "verdicts": [v.to_dict() for v in verdicts],
        "delta": rep.delta if rep.multipliers is not None else None,
        "multipliers": list(rep.multipliers) if rep.multipliers is not None else None,
        "residual": rep.residual,
        "tolerance": FIT_TOL,
    }, out)


def cmd_spectrum(args, out):
    spec = _graph(args)
    rep = spectrum(spec)
    if args.format == "csv":
        m = rep.multipliers
        _emit_csv(["index", "eigenvalue", "multiplier"],
                  [(i, float(v), "" if m is None else m[i]) for i, v in enumerate(rep.eigenvalues)], out)
        return
    _emit(rep.to_dict(), out)


def cmd_enumerate(args, out):
    G = _group(args)
    shard = None
    if args.shard:
        i, k = (int(x) for x in args.shard.split("/"))
        shard = (i, k)
    for spec in enumerate_valid_specs(G, args.delta, args.mode, args.limit, shard):
        _emit(serialize_spec(spec), out)


def cmd_gauss_sum(args, out):
    if args.sweep:
        bad = [c.to_dict() for c in sweep(args.sweep) if not c.ok]
        total = sum(len(feasible_deltas(n)) for n in range(2, args.sweep + 1))
        _emit({"n_max": args.sweep, "checked": total, "failures": bad}, out)
        return
    if args.n is None or args.delta is None:
        raise InvalidArgument("gauss-sum needs --n and --delta (or --sweep)")
    _emit(check_identity(args.n, delta_spec(args.n, args.delta)).to_dict(), out)


def _pair(text):
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise InvalidArgument(f"--pair expects 'a,b', got {text!r}") from None
    return a, b


def cmd_walk(args, out):
    spec = _graph(args)
    W = build_walk(spec)
    if args.pair:
        for v in _pair(args.pair):
            if not 0 <= v < W.n:
                raise InvalidArgument(f"vertex {v} outside 0..{W.n - 1}")
    T = period(W)
    base = {
        "n": W.n,
        "radicand": W.radicand,
        "multipliers": list(W.multipliers) if W.multipliers is not None else None,
        "period": "any" if T == ANY_PERIOD else T,
        "tolerance": EVENT_TOL,
    }
    action = args.action
    record = None
    if action == "period":
        _emit(base, out)
        record = catalog.discover(spec, "period") if args.record else None
    elif action == "pst":
        if args.pair:
            a, b = _pair(args.pair)
            ev = detect_pst(W, a, b, t_max=args.tmax, n_grid=args.grid)
            _emit({**base, "pst_events": [{"a": a, "b": b, "time": t, "fidelity": f} for t, f in ev]}, out)
            record = catalog.discover(spec, "pst", pair=(a, b)) if args.record and ev else None
        else:
            rep = walk_report(W, mixing=False, mst=False, n_grid=args.grid)
            _emit({**base, **{k: v for k, v in rep.to_dict().items() if k == "pst_events"}}, out)
    elif action == "mixing":
        ev = detect_uniform_mixing(W, t_max=args.tmax, n_grid=args.grid)
        cond = um_necessary_condition(W)
        if args.format == "csv":
            _emit_csv(["time", "deviation"], ev, out)
        else:
            _emit({**base, "um_necessary_condition": cond,
                   "mixing_times": [{"time": t, "deviation": d} for t, d in ev]}, out)
        record = catalog.discover(spec, "um") if args.record and ev else None
    elif action == "mst":
        rec = catalog.discover(spec, "mst")
        _emit({**base, "mst_sets": rec.metrics["sets"], "pair_times": rec.metrics["pair_times"]}, out)
        record = rec if args.record and rec.metrics["sets"] else None
    elif action == "sample":
        if not args.times:
            raise InvalidArgument("walk sample needs --times")
        times = [float(eval_time(x)) for x in args.times.split(",")]
        mats = [(t, transition_matrix(W, t)) for t in times]
        if args.format == "json":
            _emit({**base, "samples": [{"time": t, "re": U.real.tolist(), "im": U.imag.tolist()} for t, U in mats]}, out)
        else:
            rows = [(t, j, k, float(U[j, k].real), float(U[j, k].imag))
                    for t, U in mats for j in range(W.n) for k in range(W.n)]
            _emit_csv(["time", "row", "col", "re", "im"], rows, out)
    if record is not None:
        if args.family:
            record.notes["family"] = {"name": args.family, "m": args.m, "a": args.a}
        catalog.append(record, args.catalog)


def eval_time(text: str) -> float:
    """Parse a time such as '0.785', 'pi/4' or '3*pi/4'."""
    t = text.strip().replace("π", "pi")
    try:
        return float(t)
    except ValueError:
        pass
    num, _, den = t.partition("/")
    num = num.strip()
    if num.endswith("pi"):
        coef = num[:-2].rstrip("*").strip() or "1"
        val = float(coef) * math.pi
    else:
        raise InvalidArgument(f"cannot parse time {text!r}")
    return val / float(den) if den else val


def cmd_catalog(args, out):
    records = catalog.read(args.catalog)
    if args.action == "list":
        for r in records:
            _emit(r, out)
        return EXIT_OK
    failures = 0
    for i, r in enumerate(records):
        ok, fresh = catalog.replay(r)
        failures += not ok
        _emit({"record": i, "phenomenon": r["phenomenon"], "reproduced": ok,
               "times": r["times"], "replayed_times": fresh["times"]}, out)
    return EXIT_OK if failures == 0 else EXIT_COMPUTE


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayley-spectra", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("deltas", help="feasible Delta with H_Delta for a group exponent")
    s.add_argument("--group", required=True, help="group spec JSON or file")
    s.set_defaults(func=cmd_deltas)

    s = sub.add_parser("classes", help="conjugacy classes or ~_Delta classes")
    s.add_argument("--group", required=True)
    s.add_argument("--delta", type=int)
    s.set_defaults(func=cmd_classes)

    for name, func, hlp in (("classify", cmd_classify, "which Delta the connection sets admit"),
                            ("spectrum", cmd_spectrum, "eigenvalues and their classification")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--graph", required=True, help="graph spec JSON or file")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "classify":
            s.add_argument("--all", action="store_true", help="report failing candidates too")
        s.set_defaults(func=func)

    s = sub.add_parser("enumerate", help="stream valid connection sets (JSON lines)")
    s.add_argument("--group", required=True)
    s.add_argument("--delta", type=int, required=True)
    s.add_argument("--mode", choices=("oriented", "signed", "mixed"), default="oriented")
    s.add_argument("--limit", type=int)
    s.add_argument("--shard", help="i/k: keep every k-th spec starting at i")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("gauss-sum", help="check the combined Gauss-sum identity")
    s.add_argument("--n", type=int)
    s.add_argument("--delta", type=int)
    s.add_argument("--sweep", type=int, help="check every n in [2, SWEEP]")
    s.set_defaults(func=cmd_gauss_sum)

    s = sub.add_parser("walk", help="continuous quantum walk phenomena")
    s.add_argument("action", choices=("period", "pst", "mixing", "mst", "sample"))
    s.add_argument("--graph")
    s.add_argument("--family", choices=("cocktail", "tournament", "third"))
    s.add_argument("--m", type=int, default=3)
    s.add_argument("--a", type=int, default=1)
    s.add_argument("--pair")
    s.add_argument("--tmax", type=float)
    s.add_argument("--grid", type=int, default=2**14)
    s.add_argument("--times", help="comma-separated times, e.g. pi/4,pi/2")
    s.add_argument("--format", choices=("json", "csv"), default=None)
    s.add_argument("--record", action="store_true", help="append discoveries to the catalog")
    s.add_argument("--catalog", help="catalog path (default: $CAYLEY_SPECTRA_CATALOG)")
    s.set_defaults(func=cmd_walk)

    s = sub.add_parser("catalog", help="list or replay the discovery catalog")
    s.add_argument("action", choices=("list", "replay"))
    s.add_argument("--catalog")
    s.set_defaults(func=cmd_catalog)
    return p


def run_command(argv, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if args.command == "walk" and args.format is None:
        args.format = "csv" if args.action == "sample" else "json"
    try:
        code = args.func(args, out)
        return EXIT_OK if code is None else code
    except InputError as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, InvalidSpec):
            err.update(field=exc.field, reason=exc.reason)
        _emit(err, out)
        return EXIT_INPUT
    except (ComputationError, ArithmeticError, CayleySpectraError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, out)
        return EXIT_COMPUTE


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
