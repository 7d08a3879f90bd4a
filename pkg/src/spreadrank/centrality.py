"""Degree, strength, betweenness, closeness, eigenvector, Katz, and
k-shell style centralities.

All functions are pure: they take an immutable :class:`GraphView` (or the
network itself where the measure is inherently directed and weighted) and
return a :class:`ScoreVector`.  Distance-based measures expect the caller
to hand them the appropriate view; by convention weighted distances use
inverted weights so that a high cascade probability reads as proximity.
"""
from __future__ import annotations

import heapq
import math
from enum import Enum

import numpy as np

from .errors import ConvergenceError, ParameterError, ValidationError
from .graph import GraphView, Network, ViewKind
from .scores import ScoreVector

EIGEN_TOL = 1e-9
EIGEN_MAX_ITERS = 10_000
KATZ_TOL = 1e-12
KATZ_MAX_ITERS = 10_000
KATZ_ALPHA_FRACTION = 0.85


class Direction(Enum):
    IN = "in"
    OUT = "out"
    TOTAL = "total"


def degree(view: GraphView, direction: Direction = Direction.OUT) -> ScoreVector:
    """Count of incident edges per node, split by direction on directed views."""
    n = view.n
    if view.undirected:
        # every undirected edge appears once per endpoint as a source
        values = np.bincount(view.src, minlength=n).astype(np.float64)
        return ScoreVector(f"degree_{direction.value}", values)
    out = np.bincount(view.src, minlength=n).astype(np.float64)
    inc = np.bincount(view.dst, minlength=n).astype(np.float64)
    if direction is Direction.OUT:
        values = out
    elif direction is Direction.IN:
        values = inc
    else:
        values = out + inc
    return ScoreVector(f"degree_{direction.value}", values)


def strength(view: GraphView, direction: Direction = Direction.OUT) -> ScoreVector:
    """Sum of incident edge weights per node."""
    n = view.n
    if view.undirected:
        values = np.bincount(view.src, weights=view.weight, minlength=n)
        return ScoreVector(f"strength_{direction.value}", values)
    out = np.bincount(view.src, weights=view.weight, minlength=n)
    inc = np.bincount(view.dst, weights=view.weight, minlength=n)
    if direction is Direction.OUT:
        values = out
    elif direction is Direction.IN:
        values = inc
    else:
        values = out + inc
    return ScoreVector(f"strength_{direction.value}", values)


def _sssp(view: GraphView, source: int) -> tuple[list[int], np.ndarray]:
    """Distances and settle order from ``source`` over the view's weights.

    Unit-weight views use breadth-first search, others Dijkstra.
    """
    n = view.n
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    order: list[int] = []
    if view.unit_weights:
        frontier = [source]
        order.append(source)
        d = 0.0
        while frontier:
            d += 1.0
            nxt = []
            for u in frontier:
                targets, _ = view.neighbors(u)
                for v in targets:
                    if dist[v] == np.inf:
                        dist[v] = d
                        nxt.append(int(v))
                        order.append(int(v))
            frontier = nxt
        return order, dist
    heap: list[tuple[float, int]] = [(0.0, source)]
    settled = np.zeros(n, dtype=bool)
    while heap:
        d, u = heapq.heappop(heap)
        if settled[u]:
            continue
        settled[u] = True
        order.append(u)
        targets, weights = view.neighbors(u)
        for v, w in zip(targets, weights):
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, int(v)))
    return order, dist


def betweenness(view: GraphView) -> ScoreVector:
    """Fraction of shortest paths passing through each node as intermediate.

    Pair accumulation follows the standard dependency scheme: ordered
    source/target pairs on directed views, each unordered pair once on
    undirected views.  Disconnected pairs contribute nothing.
    """
    n = view.n
    bc = np.zeros(n)
    for s in range(n):
        order, dist = _sssp(view, s)
        # tight edges (u, v) with dist[u] + w == dist[v] form the shortest-path DAG
        sigma = np.zeros(n)
        sigma[s] = 1.0
        preds: list[list[int]] = [[] for _ in range(n)]
        for u in order:
            targets, weights = view.neighbors(u)
            for v, w in zip(targets, weights):
                if dist[u] + w == dist[v]:
                    preds[v].append(u)
        for u in order[1:]:
            sigma[u] = sum(sigma[p] for p in preds[u])
        delta = np.zeros(n)
        for u in reversed(order):
            if u != s:
                coeff = (1.0 + delta[u]) / sigma[u]
                for p in preds[u]:
                    delta[p] += sigma[p] * coeff
        delta[s] = 0.0
        bc += delta
    if view.undirected:
        bc *= 0.5
    return ScoreVector("betweenness", bc)


def closeness(view: GraphView, direction: str = "outbound") -> ScoreVector:
    """Reciprocal average outbound distance, scaled to the reachable set.

    For a node reaching ``r`` others with total distance ``t`` the score is
    ``(r / (n - 1)) * (r / t)``; nodes reaching nothing score 0.
    """
    if direction != "outbound":
        raise ParameterError(f"unsupported closeness direction {direction!r}")
    n = view.n
    values = np.zeros(n)
    if n < 2:
        return ScoreVector("closeness", values)
    for u in range(n):
        _, dist = _sssp(view, u)
        finite = np.isfinite(dist)
        finite[u] = False
        reached = int(finite.sum())
        if reached == 0:
            continue
        total = float(dist[finite].sum())
        values[u] = (reached / (n - 1)) * (reached / total)
    return ScoreVector("closeness", values)


def _multiply_adjacency(view: GraphView, x: np.ndarray, incoming: bool) -> np.ndarray:
    """``y[u] = sum_v A[v,u] x[v]`` when incoming, else ``sum_v A[u,v] x[v]``."""
    if incoming:
        return np.bincount(view.dst, weights=view.weight * x[view.src], minlength=view.n)
    return np.bincount(view.src, weights=view.weight * x[view.dst], minlength=view.n)


def eigenvector(view: GraphView, tol: float = EIGEN_TOL,
                max_iters: int = EIGEN_MAX_ITERS) -> ScoreVector:
    """Leading eigenvector of the undirected unweighted adjacency matrix.

    Power iteration with an identity shift, which keeps bipartite graphs
    from oscillating; the result is non-negative with unit L2 norm.
    """
    if view.kind is not ViewKind.UU:
        raise ValidationError("eigenvector centrality runs on the undirected unweighted view")
    n = view.n
    if n == 0:
        return ScoreVector("eigenvector", np.zeros(0))
    x = np.full(n, 1.0 / math.sqrt(n))
    for _ in range(max_iters):
        y = _multiply_adjacency(view, x, incoming=False) + x
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) < tol:
            return ScoreVector("eigenvector", y)
        x = y
    ax = _multiply_adjacency(view, x, incoming=False)
    rayleigh = float(x @ ax)
    raise ConvergenceError("eigenvector power iteration did not converge",
                           residual=float(np.linalg.norm(ax - rayleigh * x)))


def spectral_radius_estimate(view: GraphView, iterations: int = 200) -> float:
    """Power-iteration estimate of the adjacency spectral radius."""
    n = view.n
    if n == 0 or view.edge_count == 0:
        return 0.0
    x = np.full(n, 1.0 / math.sqrt(n))
    estimate = 0.0
    for _ in range(iterations):
        y = _multiply_adjacency(view, x, incoming=False)
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return 0.0
        estimate = norm
        x = y / norm
    return estimate


def default_katz_alpha(view: GraphView) -> float:
    """Attenuation guaranteeing convergence: 0.85 over the spectral radius."""
    radius = spectral_radius_estimate(view)
    if radius <= 1e-12:
        return KATZ_ALPHA_FRACTION
    return KATZ_ALPHA_FRACTION / radius


def katz(view: GraphView, direction: Direction = Direction.IN,
         alpha: float | None = None) -> ScoreVector:
    """Attenuated count of walks ending at (IN) or leaving (OUT) each node.

    Walk counts of length k are damped by ``alpha**k``; the empty walk is
    excluded, so sources (IN) respectively sinks (OUT) score 0.
    """
    if direction not in (Direction.IN, Direction.OUT):
        raise ParameterError("katz direction must be IN or OUT")
    if alpha is None:
        alpha = default_katz_alpha(view)
    if alpha <= 0:
        raise ParameterError("katz alpha must be positive")
    radius = spectral_radius_estimate(view)
    if radius > 0 and alpha * radius >= 1.0:
        raise ParameterError(
            f"katz alpha {alpha} >= 1/spectral_radius ({1.0 / radius:.6g}); series diverges")
    incoming = direction is Direction.IN
    n = view.n
    c = np.zeros(n)
    ones = np.ones(n)
    diff = math.inf
    for _ in range(KATZ_MAX_ITERS):
        c_next = alpha * _multiply_adjacency(view, c + ones, incoming=incoming)
        diff = float(np.max(np.abs(c_next - c))) if n else 0.0
        c = c_next
        if diff < KATZ_TOL:
            return ScoreVector(f"katz_{direction.value}", c)
        if not np.all(np.isfinite(c)) or float(np.max(np.abs(c), initial=0.0)) > 1e15:
            raise ConvergenceError("katz iteration diverged; alpha too large")
    raise ConvergenceError("katz iteration did not converge", residual=diff)


def kshell(view: GraphView) -> ScoreVector:
    """Iterative-peeling shell index on the undirected unweighted view."""
    if view.kind is not ViewKind.UU:
        raise ValidationError("k-shell decomposition runs on the undirected unweighted view")
    n = view.n
    deg = np.bincount(view.src, minlength=n).astype(np.int64)
    alive = np.ones(n, dtype=bool)
    shell = np.zeros(n, dtype=np.int64)
    k = 0
    remaining = n
    while remaining:
        candidates = np.flatnonzero(alive & (deg <= k))
        if candidates.size == 0:
            k += 1
            continue
        for u in candidates:
            if not alive[u]:
                continue
            alive[u] = False
            shell[u] = k
            remaining -= 1
            targets, _ = view.neighbors(u)
            for v in targets:
                if alive[v]:
                    deg[v] -= 1
    return ScoreVector("kshell", shell.astype(np.float64))


def weighted_kshell(net: Network) -> ScoreVector:
    """Shell decomposition driven by the partially weighted out-degree.

    Each node's mass is ``sqrt(out_degree * out_strength)``, recomputed on
    the remaining subgraph while peeling.  Masses are quantized to integer
    levels ``floor(n * mass / initial_max_mass)`` so the peeling thresholds
    are discrete; out-strength 0 nodes sit in the lowest shell.
    """
    n = net.node_count
    if n == 0:
        return ScoreVector("wks", np.zeros(0))
    out_deg = net.out_degree().astype(np.float64)
    out_str = net.out_strength()
    kprime = np.sqrt(out_deg * out_str)
    peak = float(kprime.max())
    if peak == 0.0:
        return ScoreVector("wks", np.zeros(n))
    scale = n / peak

    cur_deg = out_deg.copy()
    cur_str = out_str.copy()
    alive = np.ones(n, dtype=bool)
    shell = np.zeros(n, dtype=np.int64)

    def level(u: int) -> int:
        mass = max(cur_deg[u] * cur_str[u], 0.0)  # float drift guard
        return int(math.floor(scale * math.sqrt(mass)))

    remaining = n
    k = 0
    while remaining:
        levels = np.array([level(u) if alive[u] else np.iinfo(np.int64).max
                           for u in range(n)])
        candidates = np.flatnonzero(alive & (levels <= k))
        if candidates.size == 0:
            k += 1
            continue
        queue = list(candidates)
        while queue:
            u = queue.pop()
            if not alive[u]:
                continue
            if level(u) > k:
                continue
            alive[u] = False
            shell[u] = k
            remaining -= 1
            # removing u deletes its incoming edges, shrinking the sources' mass
            for eid in net.in_edge_ids(u):
                s = int(net.src[eid])
                if alive[s]:
                    cur_deg[s] -= 1
                    cur_str[s] -= net.weight[eid]
                    if level(s) <= k:
                        queue.append(s)
    return ScoreVector("wks", shell.astype(np.float64))
