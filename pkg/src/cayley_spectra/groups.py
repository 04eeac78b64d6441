"""Finite abelian groups Z_{n_1} x ... x Z_{n_e} and the unit groups Z_n^*.

Elements are plain tuples of residues.  The group is written additively, and
``power(g, k)`` is the scalar action ``k*g`` so that abelian and permutation
groups can be driven by the same classification code.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce

from .errors import GroupMismatch, InvalidGroupSpec

Element = tuple


@dataclass(frozen=True)
class AbelianGroup:
    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if any(n < 2 for n in orders):
            raise InvalidGroupSpec(f"cyclic factor orders must be >= 2, got {list(orders)}")
        object.__setattr__(self, "orders", orders)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.orders, 1)

    @property
    def size(self) -> int:
        return math.prod(self.orders)

    @property
    def identity(self) -> Element:
        return (0,) * len(self.orders)

    @cached_property
    def elements(self) -> tuple[Element, ...]:
        """All elements in lexicographic order; the identity comes first."""
        return tuple(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _index(self) -> dict[Element, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g: Element) -> int:
        self.check(g)
        return self._index[tuple(g)]

    def check(self, g: Element) -> None:
        if len(g) != len(self.orders) or any(not 0 <= x < n for x, n in zip(g, self.orders)):
            raise GroupMismatch(f"{tuple(g)} is not an element of Z{self.orders}")

    def element(self, residues) -> Element:
        """Reduce an integer or a sequence of integers into a group element."""
        if isinstance(residues, int):
            residues = (residues,)
        residues = tuple(int(x) for x in residues)
        if len(residues) != len(self.orders):
            raise GroupMismatch(f"expected {len(self.orders)} residues, got {residues}")
        return tuple(x % n for x, n in zip(residues, self.orders))

    def add(self, g: Element, h: Element) -> Element:
        self.check(g)
        self.check(h)
        return tuple((a + b) % n for a, b, n in zip(g, h, self.orders))

    def neg(self, g: Element) -> Element:
        self.check(g)
        return tuple(-a % n for a, n in zip(g, self.orders))

    def scalar_mul(self, k: int, g: Element) -> Element:
        self.check(g)
        return tuple(k * a % n for a, n in zip(g, self.orders))

    # generic group interface (shared with PermGroup)
    op = add
    inv = neg

    def power(self, g: Element, k: int) -> Element:
        return self.scalar_mul(k, g)

    def element_order(self, g: Element) -> int:
        return reduce(math.lcm, (n // math.gcd(a, n) for a, n in zip(g, self.orders)), 1)

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[Element, ...], ...]:
        return tuple((g,) for g in self.elements)

    def character_value(self, h: Element, g: Element) -> complex:
        """Value at g of the character indexed by h: prod_j exp(2 pi i h_j g_j / n_j)."""
        self.check(h)
        self.check(g)
        frac = sum(a * b / n for a, b, n in zip(h, g, self.orders))
        return cmath.exp(2j * math.pi * (frac % 1.0))

    def describe(self) -> str:
        return " x ".join(f"Z_{n}" for n in self.orders) or "trivial"


def make_group(orders) -> AbelianGroup:
    return AbelianGroup(tuple(orders))


@dataclass(frozen=True)
class UnitGroup:
    modulus: int
    units: tuple[int, ...] = field(default=())

    def __contains__(self, k: int) -> bool:
        return k % self.modulus in self.units or (self.modulus == 1)

    def __iter__(self):
        return iter(self.units)

    def __len__(self):
        return len(self.units)

    def inverse(self, k: int) -> int:
        return pow(k, -1, self.modulus) if self.modulus > 1 else 1


def unit_group(n: int) -> UnitGroup:
    """Z_n^* as a sorted tuple of residues.  For n = 1 the group is {1}."""
    if n < 1:
        raise InvalidGroupSpec(f"modulus must be >= 1, got {n}")
    if n == 1:
        return UnitGroup(1, (1,))
    return UnitGroup(n, tuple(k for k in range(1, n) if math.gcd(k, n) == 1))
