"""Search oriented Cayley graphs with all eigenvalues in Z*i for uniform mixing.

Enumerates every connection set built from ~_{-1} classes on the given
groups, runs the flatness search over one period and appends each hit to
the catalog.  Group orders that are not even perfect squares are still
searched; any hit there would contradict the even-square condition.

    python scripts/search_uniform_mixing.py --orders 4 --orders 4,4 --limit 200
"""
import argparse
import time

from cayley_spectra import catalog, make_group
from cayley_spectra.spectra import enumerate_valid_specs
from cayley_spectra.walk import build_walk, detect_uniform_mixing, um_necessary_condition


def product_note(spec):
    """Flag connection sets that are not just the standard generators of the factors."""
    G = spec.group
    basis = {tuple(int(i == j) for i in range(len(G.orders))) for j in range(len(G.orders))}
    return {"cartesian_product_of_cycles": set(spec.c_i) == basis}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", action="append", default=None,
                    help="comma-separated cyclic factor orders; repeatable")
    ap.add_argument("--limit", type=int, default=500)
    ap.add_argument("--grid", type=int, default=2**12)
    ap.add_argument("--catalog")
    ap.add_argument("--dry-run", action="store_true")
    args = ap.parse_args()

    for spec_text in args.orders or ["4", "4,4", "2,8", "16"]:
        G = make_group([int(x) for x in spec_text.split(",")])
        t0 = time.perf_counter()
        hits = tried = 0
        for spec in enumerate_valid_specs(G, -1, "oriented", limit=args.limit):
            tried += 1
            W = build_walk(spec)
            ev = detect_uniform_mixing(W, n_grid=args.grid)
            if not ev:
                continue
            hits += 1
            assert um_necessary_condition(W), "uniform mixing on a group whose order is not an even square"
            if not args.dry_run:
                rec = catalog.discover(spec, "um", notes=product_note(spec))
                catalog.append(rec, args.catalog)
            if hits <= 5:
                print(f"  {G.describe()} C={sorted(spec.c_i)} times={[round(t, 6) for t, _ in ev]}")
        print(f"{G.describe()}: {hits} of {tried} sets mix uniformly ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
