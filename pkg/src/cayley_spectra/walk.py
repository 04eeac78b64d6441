"""Continuous-time quantum walks U(t) = exp(itM) on mixed Cayley graphs.

Everything is driven by one spectral decomposition M = sum_r theta_r E_r.
Time searches (perfect state transfer, uniform mixing) scan a uniform grid
over one period, refine each promising grid minimum with a bounded scalar
minimiser, and finally try snapping the time to a nearby rational multiple
of 2 pi / sqrt(D), which recovers exact times such as pi/4.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce

import networkx as nx
import numpy as np
from scipy.optimize import minimize_scalar

from .errors import GroupTooLarge, InvalidArgument
from .spectra import MAX_REGULAR_REP, MixedCayleySpec, hermitian_matrix, radicand_of

log = logging.getLogger(__name__)

CLUSTER_TOL = 1e-9
EVENT_TOL = 1e-9
GRID_POINTS = 2**14
DEFAULT_TMAX = 8 * math.pi
# U(t) is a global phase for every t when M has a single eigenvalue
ANY_PERIOD = 0.0
_CHUNK = 2048


@dataclass(frozen=True, eq=False)
class WalkOperator:
    matrix: np.ndarray
    thetas: np.ndarray  # distinct eigenvalues, ascending
    vectors: np.ndarray  # orthonormal eigenvectors as columns
    cluster: np.ndarray  # index into thetas for every eigenvector
    radicand: int | None
    spec: MixedCayleySpec | None = None

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def multipliers(self) -> tuple[int, ...] | None:
        if self.radicand is None:
            return None
        r = math.sqrt(self.radicand)
        return tuple(int(round(t / r)) for t in self.thetas)

    @cached_property
    def _indicator(self) -> np.ndarray:
        S = np.zeros((self.n, len(self.thetas)))
        S[np.arange(self.n), self.cluster] = 1.0
        return S

    def projector_column(self, a: int) -> np.ndarray:
        """n x R array whose column r is E_r e_a."""
        V = self.vectors
        return (V * V[a].conj()) @ self._indicator

    def projectors(self) -> list[np.ndarray]:
        V = self.vectors
        return [V[:, self.cluster == r] @ V[:, self.cluster == r].conj().T for r in range(len(self.thetas))]

    def column(self, a: int, ts) -> np.ndarray:
        """U(t) e_a for every t in ts, as an n x len(ts) array."""
        B = self.projector_column(a)
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        out = np.empty((self.n, ts.size), dtype=complex)
        for s in range(0, ts.size, _CHUNK):
            tt = ts[s:s + _CHUNK]
            out[:, s:s + _CHUNK] = B @ np.exp(1j * np.outer(self.thetas, tt))
        return out

    @property
    def oriented(self) -> bool:
        return self.spec is not None and self.spec.kind == "oriented"


def build_walk_from_matrix(M: np.ndarray, spec: MixedCayleySpec | None = None) -> WalkOperator:
    M = np.asarray(M, dtype=complex)
    if not np.allclose(M, M.conj().T, atol=1e-12):
        raise InvalidArgument("walk matrix must be Hermitian")
    w, V = np.linalg.eigh(M)
    cluster = np.zeros(len(w), dtype=int)
    thetas = []
    start = 0
    for j in range(1, len(w) + 1):
        if j == len(w) or w[j] - w[j - 1] > CLUSTER_TOL:
            thetas.append(float(np.mean(w[start:j])))
            cluster[start:j] = len(thetas) - 1
            start = j
    thetas = np.array(thetas)
    return WalkOperator(M, thetas, V, cluster, radicand_of(thetas), spec)


def build_walk(spec: MixedCayleySpec) -> WalkOperator:
    if spec.group.size > MAX_REGULAR_REP:
        raise GroupTooLarge(f"|G| = {spec.group.size} exceeds {MAX_REGULAR_REP}")
    return build_walk_from_matrix(hermitian_matrix(spec), spec)


def transition_matrix(W: WalkOperator, t: float) -> np.ndarray:
    V = W.vectors
    phase = np.exp(1j * t * W.thetas[W.cluster])
    return (V * phase) @ V.conj().T


def period(W: WalkOperator) -> float | None:
    """Least T > 0 with U(T) a scalar matrix, ANY_PERIOD if M is scalar, None if aperiodic."""
    if W.radicand is None:
        return None
    m = W.multipliers
    g = reduce(math.gcd, (abs(x - m[0]) for x in m), 0)
    if g == 0:
        return ANY_PERIOD
    T = 2 * math.pi / (math.sqrt(W.radicand) * g)
    U = transition_matrix(W, T)
    if np.max(np.abs(U - U[0, 0] * np.eye(W.n))) > 1e-8:
        log.warning("U(T) is not scalar at the fitted period %.15g", T)
        return None
    return T


def _search_horizon(W: WalkOperator, t_max: float | None) -> float:
    T = period(W)
    if T is None:
        return DEFAULT_TMAX if t_max is None else t_max
    if T == ANY_PERIOD:
        return 0.0
    return T


def _snap_unit(W: WalkOperator) -> float | None:
    return None if W.radicand is None else 2 * math.pi / math.sqrt(W.radicand)


def _refine(f, lo: float, hi: float, unit: float | None) -> tuple[float, float]:
    res = minimize_scalar(f, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    t, v = float(res.x), float(res.fun)
    if unit is not None:
        q = Fraction(t / unit).limit_denominator(4096)
        ts = float(q) * unit
        if abs(ts - t) < 1e-6:
            vs = float(f(ts))
            if vs <= v + 1e-15:
                t, v = ts, vs
    return t, v


def _grid_minima(values: np.ndarray, threshold: float) -> list[int]:
    """Interior indices k (1..len-2) that are local minima below threshold."""
    v = values
    idx = np.nonzero((v[1:-1] <= v[:-2]) & (v[1:-1] <= v[2:]) & (v[1:-1] < threshold))[0] + 1
    return idx.tolist()


def _dedupe(events: list[tuple[float, float]], better) -> list[tuple[float, float]]:
    events.sort()
    out: list[tuple[float, float]] = []
    for t, v in events:
        if out and abs(t - out[-1][0]) < 1e-7:
            if better(v, out[-1][1]):
                out[-1] = (t, v)
            continue
        out.append((t, v))
    return out


def _grid(horizon: float, n_grid: int) -> np.ndarray:
    # one extra point on each side so that minima at the horizon are interior
    return horizon * np.arange(0, n_grid + 2) / n_grid


def _pst_events_from(W: WalkOperator, a: int, targets, horizon: float, n_grid: int) -> dict[int, list]:
    if horizon <= 0:
        return {b: [] for b in targets}
    ts = _grid(horizon, n_grid)
    col = W.column(a, ts)
    B = W.projector_column(a)
    unit = _snap_unit(W)
    out = {}
    for b in targets:
        loss = 1.0 - np.abs(col[b]) ** 2
        coef = B[b]

        def f(t, coef=coef):
            return 1.0 - abs(coef @ np.exp(1j * W.thetas * t)) ** 2

        found = []
        for k in _grid_minima(loss, 0.05):
            t, v = _refine(f, ts[k - 1], ts[k + 1], unit)
            if 1e-9 < t <= horizon * (1 + 1e-12) and v <= EVENT_TOL:
                found.append((t, 1.0 - v))
        out[b] = _dedupe(found, lambda new, old: new > old)
    return out


def detect_pst(W: WalkOperator, a: int, b: int, t_max: float | None = None,
               n_grid: int = GRID_POINTS) -> list[tuple[float, float]]:
    """Times t in (0, T] (or (0, t_max] if aperiodic) with |U(t)_{b,a}|^2 >= 1 - 1e-9."""
    horizon = _search_horizon(W, t_max)
    return _pst_events_from(W, a, [b], horizon, n_grid)[b]


def flatness_deviation(U: np.ndarray) -> float:
    n = U.shape[0]
    return float(np.max(np.abs(np.abs(U) ** 2 - 1.0 / n)))


def um_necessary_condition(W: WalkOperator) -> bool:
    """Necessary condition for uniform mixing on an oriented Cayley graph.

    Real flat orthogonal matrices force n in {1, 2} or 4 | n, and the group
    algebra forces n > 2 to be an even perfect square.  No restriction is
    known for signed or mixed graphs, so those return True.
    """
    if not W.oriented:
        return True
    n = W.n
    if n <= 2:
        return True
    return n % 4 == 0 and math.isqrt(n) ** 2 == n


def detect_uniform_mixing(W: WalkOperator, t_max: float | None = None,
                          n_grid: int = GRID_POINTS) -> list[tuple[float, float]]:
    """Times where every entry of U(t) has squared modulus 1/n within 1e-9.

    The grid uses column 0 (all columns of a Cayley walk are translates of
    it); each accepted time is then re-checked on the full matrix.
    """
    horizon = _search_horizon(W, t_max)
    if horizon <= 0:
        U = transition_matrix(W, 1.0)
        return [(0.0, flatness_deviation(U))] if flatness_deviation(U) < EVENT_TOL else []
    n = W.n
    ts = _grid(horizon, n_grid)
    col = W.column(0, ts)
    dev = np.max(np.abs(np.abs(col) ** 2 - 1.0 / n), axis=0)
    B = W.projector_column(0)
    unit = _snap_unit(W)

    def f(t):
        return float(np.max(np.abs(np.abs(B @ np.exp(1j * W.thetas * t)) ** 2 - 1.0 / n)))

    found = []
    for k in _grid_minima(dev, 0.05):
        t, v = _refine(f, ts[k - 1], ts[k + 1], unit)
        if 1e-9 < t <= horizon * (1 + 1e-12) and v <= EVENT_TOL:
            full = flatness_deviation(transition_matrix(W, t))
            if full <= EVENT_TOL:
                found.append((t, full))
    return _dedupe(found, lambda new, old: new < old)


def _pst_targets(W: WalkOperator, n_grid: int) -> dict[int, list]:
    horizon = _search_horizon(W, None)
    return _pst_events_from(W, 0, range(1, W.n), horizon, n_grid)


def pst_graph(W: WalkOperator, n_grid: int = GRID_POINTS) -> tuple[nx.Graph, dict[int, list]]:
    """Graph on the vertices joining a, b whenever a -> b has perfect state transfer.

    Only pairs (0, b) are scanned; for a Cayley graph U(t)[b, a] depends on
    b a^{-1} alone, so a -> b inherits the events of 0 -> b a^{-1}.
    """
    from0 = _pst_targets(W, n_grid)
    reach = {b for b, ev in from0.items() if ev}
    graph = nx.Graph()
    graph.add_nodes_from(range(W.n))
    if W.spec is None:
        raise InvalidArgument("pst_graph needs the Cayley spec to translate pairs")
    G = W.spec.group
    els = G.elements
    for a, ga in enumerate(els):
        ia = G.inv(ga)
        for b, gb in enumerate(els):
            if a != b and G.index(G.op(gb, ia)) in reach:
                graph.add_edge(a, b)
    return graph, from0


def detect_mst(W: WalkOperator, n_grid: int = GRID_POINTS) -> list[tuple[int, ...]]:
    """Maximal vertex sets of size >= 3 with perfect state transfer between every pair."""
    if period(W) in (None, ANY_PERIOD):
        return []
    graph, _ = pst_graph(W, n_grid)
    cliques = [tuple(sorted(c)) for c in nx.find_cliques(graph) if len(c) >= 3]
    return sorted(cliques)


@dataclass
class WalkReport:
    period: float | None
    radicand: int | None
    pst_events: list[tuple[int, int, float, float]] = field(default_factory=list)
    mixing_times: list[tuple[float, float]] = field(default_factory=list)
    mst_sets: list[tuple[int, ...]] = field(default_factory=list)
    um_condition: bool | None = None

    def to_dict(self) -> dict:
        per = self.period
        return {
            "period": "any" if per == ANY_PERIOD else per,
            "radicand": self.radicand,
            "pst_events": [
                {"a": a, "b": b, "time": t, "fidelity": f} for a, b, t, f in self.pst_events
            ],
            "mixing_times": [{"time": t, "deviation": d} for t, d in self.mixing_times],
            "mst_sets": [list(s) for s in self.mst_sets],
            "um_necessary_condition": self.um_condition,
            "tolerance": EVENT_TOL,
        }


def walk_report(W: WalkOperator, *, pst: bool = True, mixing: bool = True, mst: bool = True,
                n_grid: int = GRID_POINTS) -> WalkReport:
    rep = WalkReport(period(W), W.radicand)
    if pst or mst:
        if W.spec is not None:
            graph, from0 = pst_graph(W, n_grid) if rep.period not in (None, ANY_PERIOD) else (None, _pst_targets(W, n_grid))
        else:
            graph, from0 = None, _pst_targets(W, n_grid)
        rep.pst_events = [(0, b, t, f) for b, ev in sorted(from0.items()) for t, f in ev]
        if mst and graph is not None:
            rep.mst_sets = sorted(tuple(sorted(c)) for c in nx.find_cliques(graph) if len(c) >= 3)
    if mixing:
        rep.um_condition = um_necessary_condition(W)
        rep.mixing_times = detect_uniform_mixing(W, n_grid=n_grid)
    return rep
