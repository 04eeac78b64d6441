"""Numerical checks of the Gauss-sum identities that write a*sqrt(Delta) as a
signed sum of n-th roots of unity.

Square roots of negative numbers use the principal branch, sqrt(-x) = i*sqrt(x).
The combined coefficient is computed two ways: ``printed_coefficient`` is the
closed form as usually stated, which multiplies the per-prime roots
sqrt(-1), sqrt(-p), ... as if sqrt(x)sqrt(y) = sqrt(xy); ``closed_form_coefficient``
restores the principal branch with the extra factor (-1)^floor(q/2), q being
the number of negative radicands in that product.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleDelta, InvalidArgument
from .number_theory import (
    DeltaSpec,
    char_mod4,
    chi8,
    delta_spec,
    factorize,
    feasible_deltas,
    legendre,
)

TOL = 1e-9


def _zeta(n: int, k) -> complex:
    return np.exp(2j * np.pi * (np.asarray(k) % n) / n)


def csqrt(x: int | float) -> complex:
    return cmath.sqrt(complex(x))


def prime_power_sum_mod4(m: int, t: int) -> complex:
    """sum over odd j < 2^m of char_mod4(j) * i^(t j)."""
    if m < 2 or t % 2 == 0:
        raise InvalidArgument("need m >= 2 and odd t")
    j = np.arange(1, 2**m, 2)
    coef = np.where(j % 4 == 1, 1, -1)
    return complex(np.sum(coef * _zeta(4, t * j)))


def prime_power_sum_mod4_closed(m: int, t: int) -> complex:
    return char_mod4(t) * 2 ** (m - 1) * 1j


def prime_power_sum_mod8(m: int, t: int, w: int) -> complex:
    """sum over odd j < 2^m of chi8(j) char_mod4(j)^w zeta_8^(t j)."""
    if m < 3 or t % 2 == 0:
        raise InvalidArgument("need m >= 3 and odd t")
    total = 0j
    for j in range(1, 2**m, 2):
        total += chi8(j) * char_mod4(j) ** w * _zeta(8, t * j)
    return complex(total)


def prime_power_sum_mod8_closed(m: int, t: int, w: int) -> complex:
    return chi8(t) * char_mod4(t) ** w * 2 ** (m - 2) * math.sqrt(2) * (1j) ** w


def prime_power_sum_odd(p: int, m: int, t: int, w: int) -> complex:
    """sum over j < p^m with p not dividing j of legendre(j, p)^w zeta_p^(t j)."""
    if m < 1 or t % p == 0:
        raise InvalidArgument("need m >= 1 and t coprime to p")
    j = np.arange(1, p**m)
    j = j[j % p != 0]
    coef = np.array([legendre(int(x), p) ** w for x in j])
    return complex(np.sum(coef * _zeta(p, t * j)))


def prime_power_sum_odd_closed(p: int, m: int, t: int, w: int) -> complex:
    pstar = (-1) ** ((p - 1) // 2) * p
    return legendre(t, p) ** w * (-1) ** (w + 1) * p ** (m - 1) * csqrt(pstar) ** w


def _spec_for(n: int, d: DeltaSpec) -> DeltaSpec:
    if n <= 1:
        raise InvalidArgument(f"n must exceed 1, got {n}")
    if d.n1 != n:
        d = delta_spec(n, d.value)
    if not d.feasible:
        raise InfeasibleDelta(f"Delta={d.value} is not admitted by n={n}")
    return d


def root_denominator(d: DeltaSpec) -> int:
    """min(4^w 8^w0, 8) * p_1 ... p_r, the order of the root of unity in the sum."""
    return min(4**d.w * 8**d.w0, 8) * math.prod(d.primes)


def gauss_lhs(n: int, d: DeltaSpec, k: int = 1) -> complex:
    """Direct summation over j in Z_n^*, with the substitution j -> k j applied to the root."""
    d = _spec_for(n, d)
    step = n // root_denominator(d)
    total = 0j
    for j in range(1, n):
        if math.gcd(j, n) != 1:
            continue
        total += d.character(j) * _zeta(n, step * j * k)
    return complex(total)


def printed_coefficient(n: int, d: DeltaSpec) -> int:
    d = _spec_for(n, d)
    mult = dict(factorize(n))
    r = len(d.primes)
    P = math.prod(d.primes)
    a = (-1) ** (sum(d.ws) + r) * math.prod(p ** (mult[p] - 1) for p in d.primes)
    a *= 2 ** (max(d.m, 1) - 1 - d.w0)
    if d.w0:
        a *= chi8(P)
    if d.w:
        a *= char_mod4(P)
    for p, wi in zip(d.primes, d.ws):
        if wi:
            other = 2**d.w0 * (P // p)
            a *= legendre(other, p)
    return a


def branch_sign(d: DeltaSpec) -> int:
    """(-1)^floor(q/2) with q the number of negative radicands among sqrt(-1), sqrt(p*)."""
    q = d.w + sum(1 for p, wi in zip(d.primes, d.ws) if wi and p % 4 == 3)
    return -1 if (q // 2) % 2 else 1


def closed_form_coefficient(n: int, d: DeltaSpec) -> int:
    d = _spec_for(n, d)
    return printed_coefficient(n, d) * branch_sign(d)


def master_gauss_sum(n: int, d: DeltaSpec) -> tuple[complex, int]:
    """(direct sum, closed-form a) with sum = a * sqrt(Delta)."""
    d = _spec_for(n, d)
    return gauss_lhs(n, d), closed_form_coefficient(n, d)


@dataclass(frozen=True)
class GaussCheck:
    n: int
    delta: int
    lhs: complex
    a: int
    printed_a: int
    residual: float

    @property
    def ok(self) -> bool:
        return self.a != 0 and self.residual < TOL * max(1, abs(self.a))

    @property
    def printed_ok(self) -> bool:
        return abs(self.lhs - self.printed_a * csqrt(self.delta)) < TOL * max(1, abs(self.a))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "lhs": [self.lhs.real, self.lhs.imag],
            "a": self.a,
            "printed_a": self.printed_a,
            "residual": self.residual,
            "ok": self.ok,
            "printed_sign_ok": self.printed_ok,
            "tolerance": TOL,
        }


def check_identity(n: int, d: DeltaSpec) -> GaussCheck:
    d = _spec_for(n, d)
    lhs, a = master_gauss_sum(n, d)
    residual = abs(lhs - a * csqrt(d.value))
    return GaussCheck(n, d.value, lhs, a, printed_coefficient(n, d), residual)


def sweep(n_max: int, n_min: int = 2):
    """Yield a GaussCheck for every n in [n_min, n_max] and every feasible Delta."""
    for n in range(n_min, n_max + 1):
        for d in feasible_deltas(n):
            yield check_identity(n, d)
