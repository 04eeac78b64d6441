"""Infinite families of oriented circulants with multiple state transfer.

Each constructor returns the oriented spec on Z_N together with the vertex
set S on which multiple state transfer is expected.
"""
from __future__ import annotations

import math

from .errors import InvalidArgument
from .groups import make_group
from .spectra import MixedCayleySpec, make_spec


def cocktail_party_set(m: int) -> list[int]:
    """{2^(m-d)(4r+1) : d = 2..m, r = 0..2^(d-2)-1} in Z_{2^m}."""
    if m < 3:
        raise InvalidArgument(f"cocktail party family needs m >= 3, got {m}")
    n = 2**m
    return sorted({(2 ** (m - d) * (4 * r + 1)) % n for d in range(2, m + 1) for r in range(2 ** (d - 2))})


def tournament_set(m: int, literal: bool = False) -> list[int]:
    """Connection set of the tournament family on Z_{3^m}.

    ``literal=True`` gives {3^(m-d) r : r = 0..3^(d-1)-1} with 0 removed.
    That set is {1, ..., 3^(m-1) - 1}: empty for m = 1 and aperiodic for
    m = 2, 3, so it cannot carry state transfer.  The default reads the
    multiplier as 3r+1, i.e. the nonzero elements whose 3-adic unit part is
    1 mod 3, which gives MST on {0, 3^(m-1), 2*3^(m-1)}.
    """
    if m < 1:
        raise InvalidArgument(f"tournament family needs m >= 1, got {m}")
    n = 3**m
    if literal:
        out = {(3 ** (m - d) * r) % n for d in range(1, m + 1) for r in range(3 ** (d - 1))}
    else:
        out = {(3 ** (m - d) * (3 * r + 1)) % n for d in range(1, m + 1) for r in range(3 ** (d - 1))}
    out.discard(0)
    return sorted(out)


def third_family_set(m: int, a: int) -> list[int]:
    """{2^(m-3)a, 2^(m-3)2a, 2^(m-3)5a} union {b unit mod 2^m a : b = 1 mod 4}."""
    if m < 3 or a < 1:
        raise InvalidArgument(f"third family needs m >= 3 and a >= 1, got m={m}, a={a}")
    n = 2**m * a
    base = 2 ** (m - 3) * a
    out = {base % n, (2 * base) % n, (5 * base) % n}
    out |= {b for b in range(1, n) if math.gcd(b, n) == 1 and b % 4 == 1}
    return sorted(out)


def family_spec(family: str, m: int, a: int = 1, literal: bool = False) -> tuple[MixedCayleySpec, list[int]]:
    """(spec, expected MST set) for a named family."""
    if family == "cocktail":
        n, conn = 2**m, cocktail_party_set(m)
        step = 2 ** (m - 2)
        S = [0, step, 2 * step, 3 * step]
    elif family == "tournament":
        n, conn = 3**m, tournament_set(m, literal)
        step = 3 ** (m - 1)
        S = [0, step, 2 * step]
    elif family == "third":
        n, conn = 2**m * a, third_family_set(m, a)
        step = 2 ** (m - 2) * a
        S = [0, step, 2 * step, 3 * step]
    else:
        raise InvalidArgument(f"unknown family {family!r}")
    G = make_group([n])
    return make_spec(G, c_i=[(c,) for c in conn]), S
