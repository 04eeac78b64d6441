"""Quadratic characters, CRT, and the square-free Delta admitted by Q(zeta_n).

A feasible Delta for an exponent n1 = 2^m p_1^{m_1} ... p_r^{m_r} is

    Delta = 2^w0 * (-1)^w * prod_i ((-1)^((p_i-1)/2) p_i)^{w_i}

with w0 = 0 unless m >= 3 and w = 0 unless m >= 2.  The matching subgroup
H_Delta of Z_{n1}^* is the kernel of

    k -> chi8(k)^w0 * char_mod4(k)^w * prod_i legendre(k, p_i)^{w_i}.

``char_mod4`` is the nontrivial character mod 4, not the Jacobi symbol
(k/4), which would be identically 1 on odd k.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CrtInfeasible, InfeasibleDelta, InvalidArgument, InvalidModulus
from .groups import unit_group


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial division; returns sorted (prime, multiplicity) pairs."""
    if n < 1:
        raise InvalidArgument(f"cannot factor {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in factorize(abs(n)))


def squarefree_kernel(n: int) -> int:
    """The square-free d with n = d * s^2 (sign of n kept)."""
    if n == 0:
        raise InvalidArgument("0 has no square-free kernel")
    d = math.prod(p for p, e in factorize(abs(n)) if e % 2)
    return d if n > 0 else -d


def legendre(k: int, p: int) -> int:
    if p < 3 or not is_prime(p):
        raise InvalidModulus(f"{p} is not an odd prime")
    k %= p
    if k == 0:
        return 0
    return 1 if pow(k, (p - 1) // 2, p) == 1 else -1


def char_mod4(k: int) -> int:
    if k % 2 == 0:
        raise InvalidArgument(f"char_mod4 needs an odd argument, got {k}")
    return 1 if k % 4 == 1 else -1


def chi8(k: int) -> int:
    if k % 2 == 0:
        raise InvalidArgument(f"chi8 needs an odd argument, got {k}")
    return 1 if k % 8 in (1, 7) else -1


def crt_solve(residues, moduli) -> int:
    """x = sum a_j s_j N_j mod N with N_j = N / n_j and s_j = N_j^{-1} mod n_j."""
    residues = [int(a) for a in residues]
    moduli = [int(n) for n in moduli]
    if len(residues) != len(moduli) or not moduli:
        raise CrtInfeasible("need one residue per modulus")
    if any(n < 2 for n in moduli):
        raise CrtInfeasible(f"moduli must exceed 1: {moduli}")
    for a, b in itertools.combinations(moduli, 2):
        if math.gcd(a, b) != 1:
            raise CrtInfeasible(f"moduli {a} and {b} are not coprime")
    N = math.prod(moduli)
    x = 0
    for a, n in zip(residues, moduli):
        Nj = N // n
        x += a * pow(Nj, -1, n) * Nj
    return x % N


@dataclass(frozen=True)
class DeltaSpec:
    n1: int
    primes: tuple[int, ...]
    m: int
    w0: int
    w: int
    ws: tuple[int, ...]

    @property
    def value(self) -> int:
        v = 2**self.w0 * (-1) ** self.w
        for p, wi in zip(self.primes, self.ws):
            if wi:
                v *= (-1) ** ((p - 1) // 2) * p
        return v

    @property
    def feasible(self) -> bool:
        return (self.w0 == 0 or self.m >= 3) and (self.w == 0 or self.m >= 2)

    def character(self, k: int) -> int:
        """The quadratic character whose kernel is H_Delta (k coprime to n1)."""
        if self.n1 == 1:
            return 1
        v = 1
        if self.w0:
            v *= chi8(k)
        if self.w:
            v *= char_mod4(k)
        for p, wi in zip(self.primes, self.ws):
            if wi:
                v *= legendre(k, p)
        return v

    def __str__(self):
        return str(self.value)


def _two_adic(n1: int) -> tuple[int, tuple[int, ...]]:
    fac = factorize(n1) if n1 > 1 else []
    m = next((e for p, e in fac if p == 2), 0)
    return m, tuple(p for p, _ in fac if p != 2)


def feasible_deltas(n1: int) -> list[DeltaSpec]:
    """Every feasible Delta for exponent n1 (Delta = 1 included), sorted by (|Delta|, Delta)."""
    if n1 < 1:
        raise InvalidArgument(f"n1 must be >= 1, got {n1}")
    m, primes = _two_adic(n1)
    out = []
    for w0 in (0, 1) if m >= 3 else (0,):
        for w in (0, 1) if m >= 2 else (0,):
            for ws in itertools.product((0, 1), repeat=len(primes)):
                out.append(DeltaSpec(n1, primes, m, w0, w, ws))
    out.sort(key=lambda d: (abs(d.value), d.value))
    return out


def delta_spec(n1: int, value: int) -> DeltaSpec:
    """Encode an integer Delta as its flag vector; InfeasibleDelta if Q(sqrt Delta) is not in Q(zeta_n1)."""
    if not is_squarefree(value):
        raise InfeasibleDelta(f"{value} is not square-free")
    m, primes = _two_adic(n1)
    rest = abs(value)
    w0 = 1 if rest % 2 == 0 else 0
    rest //= 2**w0
    ws = []
    sign = 1
    for p in primes:
        wi = 1 if rest % p == 0 else 0
        if wi:
            rest //= p
            sign *= (-1) ** ((p - 1) // 2)
        ws.append(wi)
    if rest != 1:
        raise InfeasibleDelta(f"Delta={value} has a prime factor not dividing n1={n1}")
    w = 0 if sign * (1 if value > 0 else -1) == 1 else 1
    d = DeltaSpec(n1, primes, m, w0, w, tuple(ws))
    if not d.feasible:
        raise InfeasibleDelta(f"Delta={value} is not admitted by n1={n1} (2-adic valuation {m})")
    return d


def quadratic_subfield_count(n: int) -> int:
    if n <= 1:
        raise InvalidArgument(f"n must exceed 1, got {n}")
    m, primes = _two_adic(n)
    r = len(primes)
    if m >= 3:
        return 2 ** (2 + r) - 1
    if m == 2:
        return 2 ** (1 + r) - 1
    return 2**r - 1


@dataclass(frozen=True)
class UnitSubgroup:
    modulus: int
    members: tuple[int, ...]
    index: int
    nonmember_coset_rep: int | None

    def __contains__(self, k: int) -> bool:
        return (k % self.modulus if self.modulus > 1 else 1) in self.members


def h_delta(n1: int, d: DeltaSpec) -> UnitSubgroup:
    if d.n1 != n1:
        d = delta_spec(n1, d.value)
    if not d.feasible:
        raise InfeasibleDelta(f"Delta={d.value} is not admitted by n1={n1}")
    units = unit_group(n1).units
    members = tuple(k for k in units if d.character(k) == 1)
    outside = [k for k in units if k not in set(members)]
    index = len(units) // len(members)
    return UnitSubgroup(n1, members, index, outside[0] if outside else None)
