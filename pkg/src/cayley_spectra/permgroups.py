"""Explicitly enumerated permutation groups.

Permutations are tuples of images on {0, ..., degree-1}.  Products compose
right to left: ``op(p, q)[x] == p[q[x]]``.  Cycle notation on input and
output is 1-based, e.g. ``"(1 2)(3 4)"``.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce

from .errors import ClosureBoundExceeded, GroupMismatch, InvalidPermutation

Perm = tuple

DEFAULT_CLOSURE_BOUND = 25000

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def identity_perm(degree: int) -> Perm:
    return tuple(range(degree))


def compose(p: Perm, q: Perm) -> Perm:
    return tuple(p[x] for x in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    """Nontrivial cycles, 0-based, each starting at its smallest point."""
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = p[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = p[x]
        out.append(tuple(cyc))
    return out


def perm_order(p: Perm) -> int:
    return reduce(math.lcm, (len(c) for c in cycles(p)), 1)


def perm_power(p: Perm, k: int) -> Perm:
    out = list(range(len(p)))
    for cyc in cycles(p):
        n = len(cyc)
        for i, x in enumerate(cyc):
            out[x] = cyc[(i + k) % n]
    return tuple(out)


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"`` or ``"(1)"``."""
    text = text.strip()
    if not text or _CYCLE_RE.sub("", text).strip():
        raise InvalidPermutation(f"cannot parse cycle notation {text!r}")
    img = list(range(degree))
    used: set[int] = set()
    for body in _CYCLE_RE.findall(text):
        tokens = body.replace(",", " ").split()
        if len(tokens) == 1 and len(tokens[0]) > 1 and degree <= 9 and tokens[0].isdigit():
            tokens = list(tokens[0])  # compact form "(1234)"
        try:
            pts = [int(t) - 1 for t in tokens]
        except ValueError:
            raise InvalidPermutation(f"non-integer point in {text!r}") from None
        if any(not 0 <= x < degree for x in pts):
            raise InvalidPermutation(f"point out of range 1..{degree} in {text!r}")
        if len(pts) <= 1:
            continue
        if used & set(pts) or len(set(pts)) != len(pts):
            raise InvalidPermutation(f"cycles in {text!r} are not disjoint")
        used |= set(pts)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


def format_cycles(p: Perm) -> str:
    cs = cycles(p)
    if not cs:
        return "(1)"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cs)


def check_perm(p, degree: int) -> Perm:
    p = tuple(int(x) for x in p)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise InvalidPermutation(f"{p} is not a permutation of 0..{degree - 1}")
    return p


def _class_key(p: Perm):
    return tuple(cycles(p))


@dataclass(frozen=True)
class ConjugacyClasses:
    classes: tuple[tuple[Perm, ...], ...]
    representatives: tuple[Perm, ...]

    def __len__(self):
        return len(self.classes)

    def label_of(self, p: Perm) -> int:
        for i, cls in enumerate(self.classes):
            if p in cls:
                return i
        raise GroupMismatch(f"{format_cycles(p)} not in the group")


@dataclass(frozen=True, eq=False)
class PermGroup:
    degree: int
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (perm_order(g) for g in self.elements), 1)

    @property
    def identity(self) -> Perm:
        return identity_perm(self.degree)

    @cached_property
    def _index(self) -> dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    def index(self, g: Perm) -> int:
        try:
            return self._index[tuple(g)]
        except KeyError:
            raise GroupMismatch(f"{format_cycles(tuple(g))} is not in the group") from None

    def check(self, g: Perm) -> None:
        self.index(g)

    def __contains__(self, g) -> bool:
        return tuple(g) in self._index

    def element(self, spec) -> Perm:
        """Accept cycle notation or an image list; verify membership."""
        if isinstance(spec, str):
            p = parse_cycles(spec, self.degree)
        else:
            p = check_perm(spec, self.degree)
        self.check(p)
        return p

    def op(self, p: Perm, q: Perm) -> Perm:
        return compose(p, q)

    def inv(self, p: Perm) -> Perm:
        return inverse(p)

    def power(self, p: Perm, k: int) -> Perm:
        return perm_power(p, k)

    def element_order(self, p: Perm) -> int:
        return perm_order(p)

    @cached_property
    def classes(self) -> ConjugacyClasses:
        return conjugacy_classes(self)

    @property
    def conjugacy_classes(self) -> tuple[tuple[Perm, ...], ...]:
        return self.classes.classes

    def describe(self) -> str:
        gens = ", ".join(format_cycles(g) for g in self.generators)
        return f"<{gens}> on {self.degree} points"


def group_from_generators(degree: int, gens, bound: int = DEFAULT_CLOSURE_BOUND) -> PermGroup:
    """Breadth-first closure of the generators; the identity is element 0."""
    gens = tuple(
        parse_cycles(g, degree) if isinstance(g, str) else check_perm(g, degree) for g in gens
    )
    e = identity_perm(degree)
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > bound:
                    raise ClosureBoundExceeded(f"group closure exceeds {bound} elements")
                queue.append(y)
    return PermGroup(degree, tuple(order), gens)


def conjugacy_classes(G: PermGroup) -> ConjugacyClasses:
    """Orbits under conjugation by the generators, in a deterministic order.

    Classes are sorted by (element order, class size, smallest member), where
    members compare by their cycle lists, so "(1 2 3)" sorts before "(1 3 2)".
    """
    gens = [(g, inverse(g)) for g in G.generators]
    label: dict[Perm, int] = {}
    raw = []
    for x in G.elements:
        if x in label:
            continue
        cls = [x]
        label[x] = len(raw)
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g, gi in gens:
                z = compose(compose(g, y), gi)
                if z not in label:
                    label[z] = len(raw)
                    cls.append(z)
                    queue.append(z)
        raw.append(cls)
    keyed = []
    for cls in raw:
        rep = min(cls, key=_class_key)
        keyed.append(((perm_order(rep), len(cls), _class_key(rep)), rep, tuple(sorted(cls, key=_class_key))))
    keyed.sort(key=lambda t: t[0])
    return ConjugacyClasses(tuple(c for _, _, c in keyed), tuple(r for _, r, _ in keyed))


def class_power(cls, k: int, G: PermGroup | None = None) -> list[Perm]:
    """The set {g^k : g in cls}, sorted like a conjugacy class."""
    return sorted({perm_power(tuple(g), k) for g in cls}, key=_class_key)


# -- groups used in the worked examples ---------------------------------------

def symmetric_group(n: int) -> PermGroup:
    if n < 2:
        return group_from_generators(max(n, 1), [])
    gens = ["(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"]
    return group_from_generators(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return group_from_generators(max(n, 1), [])
    gens = [f"(1 2 {i})" for i in range(3, n + 1)]
    return group_from_generators(n, gens)


def cyclic_perm_group(n: int) -> PermGroup:
    """Z_n acting regularly on itself (for cross-checks against AbelianGroup)."""
    return group_from_generators(n, [tuple((x + 1) % n for x in range(n))])


def c7_rtimes_c3() -> PermGroup:
    """The Frobenius group of order 21: x -> x+1 and x -> 2x on Z_7."""
    shift = tuple((x + 1) % 7 for x in range(7))
    mult = tuple((2 * x) % 7 for x in range(7))
    return group_from_generators(7, [shift, mult])
