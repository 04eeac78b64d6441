"""Mixed Cayley graphs, the ~_Delta partitions, and spectrum classification.

A mixed Cayley graph X(G, C(i), C(1), C(-1)) has Hermitian matrix

    M[a, b] = w(a b^{-1}),  w = i on C(i), -i on C(i)^{-1}, +1 on C(1), -1 on C(-1).

Row a collects the arcs entering a.  This is the transpose of the arc-row
convention; it leaves every spectrum unchanged (M^T is the conjugate of M),
makes M invariant under right translation, and gives exp(itM) for the
directed 4-cycle the familiar flat matrix at t = pi/4 with U[0, 1] = 1/2.

For abelian groups and for normal Cayley graphs (every set a union of
conjugacy classes) ``classify_sets`` decides periodicity from the connection
sets alone.  Non-normal permutation-group specs fall back to a numeric fit.
"""
from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Union

import numpy as np

from .errors import GroupTooLarge, InfeasibleDelta, InvalidArgument, InvalidSpec
from .groups import AbelianGroup
from .number_theory import (
    DeltaSpec,
    UnitSubgroup,
    delta_spec,
    feasible_deltas,
    h_delta,
    is_squarefree,
    squarefree_kernel,
)
from .permgroups import PermGroup

log = logging.getLogger(__name__)

Group = Union[AbelianGroup, PermGroup]

FIT_TOL = 1e-8
REAL_TOL = 1e-10
MAX_REGULAR_REP = 2000


@dataclass(frozen=True, eq=False)
class MixedCayleySpec:
    group: Group
    c_i: frozenset = frozenset()
    c_plus: frozenset = frozenset()
    c_minus: frozenset = frozenset()

    def __post_init__(self):
        G = self.group
        for name in ("c_i", "c_plus", "c_minus"):
            s = frozenset(tuple(g) for g in getattr(self, name))
            for g in s:
                try:
                    G.check(g)
                except Exception as exc:
                    raise InvalidSpec(name, str(exc)) from None
            if G.identity in s:
                raise InvalidSpec(name, "contains the identity")
            object.__setattr__(self, name, s)
        inv_i = frozenset(G.inv(g) for g in self.c_i)
        if self.c_i & inv_i:
            raise InvalidSpec("c_i", "C meets its inverse set (not an orientation)")
        for name in ("c_plus", "c_minus"):
            s = getattr(self, name)
            if frozenset(G.inv(g) for g in s) != s:
                raise InvalidSpec(name, "not closed under inverses")
        parts = {"c_i": self.c_i, "c_i^-1": inv_i, "c_plus": self.c_plus, "c_minus": self.c_minus}
        for (na, a), (nb, b) in itertools.combinations(parts.items(), 2):
            if a & b:
                raise InvalidSpec(nb, f"overlaps {na}")

    @property
    def kind(self) -> str:
        signed = bool(self.c_plus or self.c_minus)
        if self.c_i and signed:
            return "mixed"
        if self.c_i:
            return "oriented"
        return "signed" if signed else "empty"

    @property
    def is_abelian(self) -> bool:
        return isinstance(self.group, AbelianGroup)

    @property
    def is_normal(self) -> bool:
        if self.is_abelian:
            return True
        classes = self.group.conjugacy_classes
        return all(is_union_of(s, classes) for s in (self.c_i, self.c_plus, self.c_minus))

    def weights(self) -> dict:
        G = self.group
        w: dict = {}
        for g in self.c_i:
            w[g] = 1j
            w[G.inv(g)] = -1j
        for g in self.c_plus:
            w[g] = 1.0
        for g in self.c_minus:
            w[g] = -1.0
        return w

    def edge_count(self) -> int:
        """Number of nonzero entries of M (= tr M^2)."""
        return self.group.size * (2 * len(self.c_i) + len(self.c_plus) + len(self.c_minus))


def make_spec(group: Group, c_i=(), c_plus=(), c_minus=()) -> MixedCayleySpec:
    """Build a spec from loose element descriptions (ints, lists, cycle strings)."""
    conv = group.element
    return MixedCayleySpec(
        group,
        frozenset(conv(g) for g in c_i),
        frozenset(conv(g) for g in c_plus),
        frozenset(conv(g) for g in c_minus),
    )


def is_union_of(s, classes) -> bool:
    s = set(s)
    for cls in classes:
        hit = s.intersection(cls)
        if hit and len(hit) != len(cls):
            return False
    return True


def hermitian_matrix(spec: MixedCayleySpec) -> np.ndarray:
    G = spec.group
    n = G.size
    M = np.zeros((n, n), dtype=complex)
    for c, wc in spec.weights().items():
        for b, g in enumerate(G.elements):
            M[G.index(G.op(c, g)), b] = wc
    return M


# -- ~_Delta partitions ---------------------------------------------------------

@dataclass(frozen=True)
class DeltaPartition:
    delta: DeltaSpec
    subgroup: UnitSubgroup
    classes: tuple[tuple, ...]
    label: dict = field(repr=False, compare=False)

    def is_union(self, s) -> bool:
        return is_union_of(s, self.classes)

    def class_of(self, g) -> tuple:
        return self.classes[self.label[g]]


def _as_delta(group: Group, d) -> DeltaSpec:
    n1 = group.exponent
    if isinstance(d, DeltaSpec):
        if d.n1 == n1:
            if not d.feasible:
                raise InfeasibleDelta(f"Delta={d.value} infeasible for exponent {n1}")
            return d
        d = d.value
    return delta_spec(n1, int(d))


def delta_partition(group: Group, d) -> DeltaPartition:
    """Orbits of G minus the identity under conjugation and g -> g^k, k in H_Delta."""
    return _delta_partition(group, _as_delta(group, d))


@lru_cache(maxsize=512)
def _delta_partition(group: Group, d: DeltaSpec) -> DeltaPartition:
    H = h_delta(group.exponent, d)
    classes = [c for c in group.conjugacy_classes if group.identity not in c]
    where = {g: i for i, c in enumerate(classes) for g in c}
    parent = list(range(len(classes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, c in enumerate(classes):
        for k in H.members:
            j = where[group.power(c[0], k)]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    merged: dict[int, list] = {}
    for i, c in enumerate(classes):
        merged.setdefault(find(i), []).extend(c)
    idx = group.index
    out = sorted((tuple(sorted(v, key=idx)) for v in merged.values()), key=lambda c: idx(c[0]))
    label = {g: i for i, c in enumerate(out) for g in c}
    return DeltaPartition(d, H, tuple(out), label)


def set_power(group: Group, s, k: int) -> frozenset:
    return frozenset(group.power(g, k) for g in s)


# -- classification from connection sets -------------------------------------------

@dataclass(frozen=True)
class Verdict:
    radicand: int
    delta: int
    holds: bool
    method: str
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "delta": self.delta,
            "radicand": self.radicand,
            "holds": self.holds,
            "method": self.method,
            "reason": self.reason,
        }


def _signed_delta(spec: MixedCayleySpec, D: int) -> int:
    return -D if spec.kind == "oriented" else D


def _theorem_verdict(spec: MixedCayleySpec, D: int, feas: dict) -> Verdict:
    G = spec.group
    delta = _signed_delta(spec, D)
    if spec.c_i:
        neg = feas.get(-D)
        if neg is None:
            return Verdict(D, delta, False, "theorem", f"-{D} infeasible so C(i) must be empty")
        if not delta_partition(G, neg).is_union(spec.c_i):
            return Verdict(D, delta, False, "theorem", f"C(i) is not a union of ~_{-D} classes")
    if spec.c_plus or spec.c_minus:
        pos = feas.get(D)
        if pos is None:
            return Verdict(D, delta, False, "theorem", f"{D} infeasible so C(1), C(-1) must be empty")
        part = delta_partition(G, pos)
        if not (part.is_union(spec.c_plus) and part.is_union(spec.c_minus)):
            return Verdict(D, delta, False, "theorem", f"C(1) or C(-1) is not a union of ~_{D} classes")
        if D != 1:
            k = part.subgroup.nonmember_coset_rep
            if set_power(G, spec.c_plus, k) != spec.c_minus:
                return Verdict(D, delta, False, "theorem", f"C(-1) != {k}*C(1) with {k} outside H_{D}")
    return Verdict(D, delta, True, "theorem")


def fits_multiples(eigs, D: int, tol: float = FIT_TOL) -> bool:
    """True when every value is m*sqrt(D) with |theta - m sqrt D| < tol (1 + |m|)."""
    eigs = np.asarray(eigs, dtype=float)
    r = math.sqrt(D)
    m = np.round(eigs / r)
    return bool(np.all(np.abs(eigs - m * r) < tol * (1 + np.abs(m))))


def hermitian_eigenvalues(spec: MixedCayleySpec) -> np.ndarray:
    if spec.group.size > MAX_REGULAR_REP:
        raise GroupTooLarge(f"|G| = {spec.group.size} exceeds {MAX_REGULAR_REP}")
    return np.linalg.eigvalsh(hermitian_matrix(spec))


def _numeric_verdicts(spec: MixedCayleySpec) -> list[Verdict]:
    eigs = hermitian_eigenvalues(spec)
    bound = max(1, spec.edge_count())
    out = []
    for D in range(1, bound + 1):
        if not is_squarefree(D):
            continue
        ok = fits_multiples(eigs, D)
        out.append(Verdict(D, _signed_delta(spec, D), ok, "numeric",
                           "" if ok else "spectrum is not in Z*sqrt(D)"))
    return out


def candidate_verdicts(spec: MixedCayleySpec) -> list[Verdict]:
    """One verdict per candidate radicand D (theorem route when applicable)."""
    if not spec.is_normal:
        return _numeric_verdicts(spec)
    feas = {d.value: d for d in feasible_deltas(spec.group.exponent)}
    radicands = sorted({abs(v) for v in feas})
    return [_theorem_verdict(spec, D, feas) for D in radicands]


def classify_sets(spec: MixedCayleySpec) -> list[Verdict]:
    """The Delta = 1 verdict followed by every Delta whose criterion holds."""
    verdicts = candidate_verdicts(spec)
    return [v for v in verdicts if v.radicand == 1 or v.holds]


def periodic_delta(spec: MixedCayleySpec) -> int | None:
    for v in classify_sets(spec):
        if v.holds:
            return v.delta
    return None


# -- spectra ----------------------------------------------------------------------

@dataclass
class SpectrumReport:
    eigenvalues: np.ndarray
    kind: str  # integer | multiple_of_sqrt | in_field | unstructured
    radicand: int | None
    delta: int | None
    multipliers: tuple[int, ...] | None
    residual: float
    method: str

    def multiplicities(self, tol: float = 1e-9) -> list[tuple[float, int]]:
        vals = np.sort(self.eigenvalues)
        out: list[list] = []
        for v in vals:
            if out and abs(v - out[-1][0]) < tol * (1 + abs(v)):
                out[-1][1] += 1
            else:
                out.append([float(v), 1])
        return [(v, k) for v, k in out]

    def trace_sums(self) -> tuple[float, float]:
        return float(np.sum(self.eigenvalues)), float(np.sum(self.eigenvalues**2))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "delta": self.delta,
            "radicand": self.radicand,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "multipliers": list(self.multipliers) if self.multipliers is not None else None,
            "multiplicities": [[v, k] for v, k in self.multiplicities()],
            "residual": self.residual,
            "method": self.method,
            "tolerance": FIT_TOL,
        }


def radicand_of(eigs, tol: float = FIT_TOL) -> int | None:
    """The square-free D with eigs in Z*sqrt(D), read off from theta^2, or None."""
    eigs = np.asarray(eigs, dtype=float)
    nz = eigs[np.abs(eigs) > 0.5]
    if np.any((np.abs(eigs) > 1e-6) & (np.abs(eigs) <= 0.5)):
        return None
    if nz.size == 0:
        return 1
    kernels = set()
    for th in nz:
        sq = th * th
        N = round(sq)
        if N == 0 or abs(sq - N) > tol * (1 + N):
            return None
        kernels.add(squarefree_kernel(N))
    if len(kernels) != 1:
        return None
    D = kernels.pop()
    return D if fits_multiples(eigs, D, tol) else None


def _in_field(eigs, D: int, tol: float = FIT_TOL) -> bool:
    """Every theta = (a + b sqrt D)/2 with integers a, b, closed under b -> -b."""
    r = math.sqrt(D)
    rho = float(np.max(np.abs(eigs))) if len(eigs) else 0.0
    bmax = int(2 * rho / r) + 1
    pairs = Counter()
    bs = np.arange(-bmax, bmax + 1)
    for th in eigs:
        rest = 2 * th - bs * r
        a = np.round(rest)
        hit = np.nonzero(np.abs(rest - a) < tol * (1 + np.abs(a)))[0]
        if hit.size == 0:
            return False
        i = hit[np.argmin(np.abs(bs[hit]))]
        pairs[(int(a[i]), int(bs[i]))] += 1
    return all(pairs[(a, -b)] == c for (a, b), c in pairs.items())


def _candidate_radicands(spec: MixedCayleySpec) -> list[int]:
    if spec.is_normal:
        return sorted({abs(d.value) for d in feasible_deltas(spec.group.exponent)} - {1})
    return [D for D in range(2, max(2, spec.edge_count()) + 1) if is_squarefree(D)]


def classify_spectrum(spec: MixedCayleySpec, eigs: np.ndarray, method: str) -> SpectrumReport:
    eigs = np.asarray(eigs, dtype=float)
    D = radicand_of(eigs)
    if D is not None:
        r = math.sqrt(D)
        m = np.round(eigs / r).astype(int)
        delta = _signed_delta(spec, D)
        kind = "integer" if delta == 1 else "multiple_of_sqrt"
        residual = float(np.max(np.abs(eigs - m * r))) if eigs.size else 0.0
        return SpectrumReport(eigs, kind, D, delta, tuple(int(x) for x in m), residual, method)
    for D in _candidate_radicands(spec):
        if _in_field(eigs, D):
            return SpectrumReport(eigs, "in_field", D, D, None, float("nan"), method)
    return SpectrumReport(eigs, "unstructured", None, None, None, float("nan"), method)


def abelian_eigenvalues(spec: MixedCayleySpec) -> np.ndarray:
    """theta_h = sum_c w(c) chi_h(c), one value per character h in element order."""
    G = spec.group
    if not isinstance(G, AbelianGroup):
        raise InvalidArgument("abelian_eigenvalues needs an AbelianGroup")
    w = spec.weights()
    H = np.array(G.elements, dtype=float).reshape(G.size, len(G.orders))
    if not w:
        return np.zeros(G.size)
    C = np.array(list(w), dtype=float).reshape(len(w), len(G.orders))
    wv = np.array(list(w.values()), dtype=complex)
    orders = np.array(G.orders, dtype=float)
    frac = np.mod(np.einsum("he,ce->hc", H, C / orders if orders.size else C), 1.0)
    theta = np.exp(2j * np.pi * frac) @ wv
    if theta.size and np.max(np.abs(theta.imag)) > REAL_TOL:
        raise ArithmeticError("character sums are not real; the spec is not Hermitian")
    return theta.real


def spectrum_abelian(spec: MixedCayleySpec) -> SpectrumReport:
    return classify_spectrum(spec, abelian_eigenvalues(spec), "characters")


def spectrum_regular_rep(spec: MixedCayleySpec) -> SpectrumReport:
    return classify_spectrum(spec, hermitian_eigenvalues(spec), "regular_rep")


def spectrum(spec: MixedCayleySpec) -> SpectrumReport:
    return spectrum_abelian(spec) if spec.is_abelian else spectrum_regular_rep(spec)


# -- enumeration ------------------------------------------------------------------

def _paired_classes(part: DeltaPartition, partner) -> list[tuple[tuple, tuple]]:
    """Pairs (K, partner(K)) with K != partner(K), each pair listed once."""
    pairs = []
    seen = set()
    for i, K in enumerate(part.classes):
        if i in seen:
            continue
        j = part.label[partner(K[0])]
        seen.update((i, j))
        if j != i:
            pairs.append((K, part.classes[j]))
    return pairs


def _choices(pairs) -> Iterator[frozenset]:
    """Nonempty unions picking at most one side of every pair, lexicographic in the pair index."""
    for pick in itertools.product((0, 1, 2), repeat=len(pairs)):
        if not any(pick):
            continue
        out = set()
        for (K, L), p in zip(pairs, pick):
            if p == 1:
                out.update(K)
            elif p == 2:
                out.update(L)
        yield frozenset(out)


def _oriented_sets(group: Group, d: DeltaSpec) -> Iterator[frozenset]:
    part = delta_partition(group, d)
    yield from _choices(_paired_classes(part, group.inv))


def _signed_pairs(group: Group, d: DeltaSpec) -> Iterator[tuple[frozenset, frozenset]]:
    part = delta_partition(group, d)
    if d.value == 1:
        classes = part.classes
        for pick in itertools.product((0, 1, 2), repeat=len(classes)):
            if not any(pick):
                continue
            plus = frozenset(g for K, p in zip(classes, pick) if p == 1 for g in K)
            minus = frozenset(g for K, p in zip(classes, pick) if p == 2 for g in K)
            yield plus, minus
        return
    k = part.subgroup.nonmember_coset_rep
    for plus in _choices(_paired_classes(part, lambda g: group.power(g, k))):
        yield plus, set_power(group, plus, k)


def enumerate_valid_specs(group: Group, d, mode: str = "oriented", limit: int | None = None,
                          shard: tuple[int, int] | None = None) -> Iterator[MixedCayleySpec]:
    """Connection sets built from ~_Delta classes that meet the integer-multiple criterion.

    ``shard=(i, k)`` keeps every k-th spec starting at i, so k workers can split
    one stream into disjoint pieces.
    """
    d = _as_delta(group, d)
    D = abs(d.value)
    if mode == "oriented":
        if d.value > 0:
            raise InvalidArgument("oriented graphs need Delta < 0")
        stream = (MixedCayleySpec(group, c_i=c) for c in _oriented_sets(group, d))
    elif mode == "signed":
        if d.value < 0:
            raise InvalidArgument("signed graphs need Delta > 0")
        stream = (MixedCayleySpec(group, c_plus=p, c_minus=m) for p, m in _signed_pairs(group, d))
    elif mode == "mixed":
        neg = _as_delta(group, -D)
        pos = _as_delta(group, D)
        stream = _mixed_stream(group, neg, pos)
    else:
        raise InvalidArgument(f"unknown mode {mode!r}")
    count = 0
    for j, spec in enumerate(stream):
        if shard is not None and j % shard[1] != shard[0]:
            continue
        if limit is not None and count >= limit:
            return
        count += 1
        yield spec


def _mixed_stream(group: Group, neg: DeltaSpec, pos: DeltaSpec) -> Iterator[MixedCayleySpec]:
    signed = list(_signed_pairs(group, pos))
    for ci in _oriented_sets(group, neg):
        both = ci | frozenset(group.inv(g) for g in ci)
        for p, m in signed:
            if both & (p | m):
                continue
            yield MixedCayleySpec(group, c_i=ci, c_plus=p, c_minus=m)
