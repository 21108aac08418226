"""Hyperbolicity and quasi-convexity constants of finite graphs.

Every quantifier over geodesics is taken over intervals: x lies on some
geodesic from u to v exactly when d(u, x) + d(x, v) = d(u, v).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import networkx as nx
import numpy as np
from scipy.optimize import brentq
from scipy.sparse.csgraph import shortest_path

from .errors import InputError


class MetricGraph:
    def __init__(self, g: nx.Graph):
        if g.number_of_nodes() == 0:
            raise InputError("empty graph")
        if not nx.is_connected(g):
            raise InputError("disconnected graph", "hyperbolicity needs a connected graph")
        self.graph = g
        self.nodes: list[Hashable] = list(g.nodes)
        self.index = {v: i for i, v in enumerate(self.nodes)}
        A = nx.to_scipy_sparse_array(g, nodelist=self.nodes, weight=None, format="csr")
        D = shortest_path(A, unweighted=True, directed=False)
        self.D = D.astype(np.int64)
        self._intervals: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.nodes)

    def ids(self, S: Iterable[Hashable]) -> np.ndarray:
        try:
            return np.array(sorted({self.index[v] for v in S}), dtype=np.int64)
        except KeyError as e:
            raise InputError("unknown vertex", repr(e.args[0])) from None

    def interval(self, u: int, v: int) -> np.ndarray:
        D = self.D
        return np.nonzero(D[u] + D[v] == D[u, v])[0]

    def intervals(self) -> np.ndarray:
        """Boolean array I[u, v, x]."""
        if self._intervals is None:
            D = self.D
            self._intervals = (D[:, None, :] + D[None, :, :]) == D[:, :, None]
        return self._intervals

    def dist_to(self, S: np.ndarray) -> np.ndarray:
        return self.D[:, S].min(axis=1)


def graph_from_dict(raw: dict) -> nx.Graph:
    if "vertices" not in raw or "edges" not in raw:
        raise InputError("bad graph file", "needs 'vertices' and 'edges'")
    g = nx.Graph()
    g.add_nodes_from(raw["vertices"])
    for k, e in enumerate(raw["edges"]):
        if len(e) != 2 or e[0] not in g or e[1] not in g:
            raise InputError("bad edge", f"{e!r}", where=f"edges[{k}]")
        g.add_edge(e[0], e[1])
    return g


# ------------------------------------------------------------- constants
def delta_slim(M: MetricGraph) -> int:
    """max over a, b, c and x in I(a, b) of d(x, I(a, c) u I(b, c)).

    Uses O(n^3) memory; trees short-circuit to 0.
    """
    if nx.is_tree(M.graph):
        return 0
    D = M.D
    I = M.intervals()
    n = M.n
    # dI[a, c, x] = d(x, I(a, c))
    dI = np.empty((n, n, n), dtype=np.int64)
    big = D.max() + 1
    for a in range(n):
        masked = np.where(I[a][:, None, :], D[None, :, :], big)  # [c, x, u]
        dI[a] = masked.min(axis=2)
    best = 0
    for a in range(n):
        for b in range(a, n):
            xs = np.nonzero(I[a, b])[0]
            if len(xs) == 0:
                continue
            m = np.minimum(dI[a][:, xs], dI[b][:, xs])  # [c, x]
            best = max(best, int(m.max()))
    return best


def four_point_delta(M: MetricGraph) -> float:
    """Gromov four-point constant, for comparison only."""
    D = M.D.astype(np.float64)
    n = M.n
    best = 0.0
    for w in range(n):
        G = (D[w][:, None] + D[w][None, :] - D) / 2
        for x in range(n):
            m = np.minimum(G[x][:, None], G[x][None, :])
            best = max(best, float((m - G).max()))
    return best


def qc_constant(M: MetricGraph, S: Iterable[Hashable] | np.ndarray, ids: bool = False) -> int:
    """max over u, v in S and x in I(u, v) of d(x, S)."""
    S = np.asarray(S, dtype=np.int64) if ids else M.ids(S)
    if len(S) == 0:
        raise InputError("empty set", "quasi-convexity of the empty set")
    D = M.D
    dS = M.dist_to(S)
    DSS = D[np.ix_(S, S)]
    order = np.argsort(-dS, kind="stable")
    for x in order:
        if dS[x] == 0:
            return 0
        a = D[S, x]
        if np.any(a[:, None] + a[None, :] == DSS):
            return int(dS[x])
    return 0


def log_union_bound(k: int, delta: float, eps: float) -> float:
    if k < 1:
        raise InputError("bad k", "k must be at least 1")
    return delta * (math.log2(k) + 1) + eps


# ------------------------------------------------------ linear beats log
def _g(x: float, delta: float, eps: float) -> float:
    return delta * (math.log2(x + 1) + 1) + eps


def _margin(x: float, m: float, c: float, eps: float, delta: float) -> float:
    g = _g(x, delta, eps)
    return m * (x / 4 - (2 * g + 1) / m - 3 * c) / 200 - g


def linear_beats_log_threshold(m: float, c: float, eps: float, delta: float, samples: int = 200) -> dict:
    """Smallest natural R with a positive margin on all of (R, infinity).

    The margin is linear minus a multiple of a logarithm, hence convex, so
    its nonpositive set is an interval; R is the ceiling of its right end.
    The window (R, 10R] is then sampled as a check.
    """
    if m <= 0 or c < 0:
        raise InputError("bad parameters", "need m > 0 and c >= 0")
    f = lambda x: _margin(x, m, c, eps, delta)
    hi = 1.0
    while f(hi) <= 0 or f(2 * hi) <= f(hi):
        hi *= 2
        if hi > 1e15:
            raise InputError("no threshold", "margin never becomes positive")
    if f(0.0) > 0 and all(f(x) > 0 for x in np.linspace(0, hi, 64)):
        R = 0
    else:
        lo = hi / 2
        while f(lo) > 0 and lo > 1e-9:
            lo /= 2
        root = brentq(f, lo, hi) if f(lo) <= 0 else 0.0
        R = max(0, math.ceil(root))
        if R > 0 and f(R) <= 0 and f(R + 1e-9) <= 0:
            R = math.ceil(root + 1e-9)
    top = max(10 * R, 10)
    xs = np.linspace(R, top, samples + 1)[1:]
    vals = np.array([f(x) for x in xs])
    return {
        "R": int(R),
        "window": [R, top],
        "min_margin": float(vals.min()),
        "increasing": bool(np.all(np.diff(vals) > 0)),
        "holds": bool(vals.min() > 0),
    }


# --------------------------------------------------------- chains
@dataclass
class QcChain:
    sets: list[list[Hashable]]
    m: float
    c: float
    eps: float
    meta: dict = field(default_factory=dict)


def chain_from_dict(raw: dict) -> QcChain:
    try:
        return QcChain([list(s) for s in raw["sets"]], float(raw["m"]), float(raw["c"]), float(raw["eps"]))
    except KeyError as e:
        raise InputError("bad chain file", f"missing field {e.args[0]!r}") from None


def check_chain_hypotheses(M: MetricGraph, ch: QcChain) -> dict:
    ids = [M.ids(s) for s in ch.sets]
    for i, s in enumerate(ids):
        if len(s) == 0:
            return {"ok": False, "hypothesis": 0, "witness": {"index": i, "reason": "empty set"}}
    for i, s in enumerate(ids):
        q = qc_constant(M, s, ids=True)
        if q > ch.eps:
            return {"ok": False, "hypothesis": 1, "witness": {"index": i, "qc": q}}
    for i in range(len(ids) - 1):
        if len(np.intersect1d(ids[i], ids[i + 1])) == 0:
            return {"ok": False, "hypothesis": 2, "witness": {"index": i}}
    D = M.D
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            need = ch.m * (j - i - ch.c)
            if need <= 0:
                continue
            sub = D[np.ix_(ids[i], ids[j])]
            if sub.min() < need:
                a, b = np.unravel_index(int(sub.argmin()), sub.shape)
                return {"ok": False, "hypothesis": 3,
                        "witness": {"i": i, "j": j, "x": M.nodes[ids[i][a]], "y": M.nodes[ids[j][b]],
                                    "distance": int(sub.min()), "required": need}}
    return {"ok": True}


def verify_globally_qc(M: MetricGraph, ch: QcChain, delta: float | None = None, R: int | None = None) -> dict:
    hyp = check_chain_hypotheses(M, ch)
    if not hyp["ok"]:
        raise InputError("chain hypothesis fails", f"hypothesis ({hyp['hypothesis']}): {hyp['witness']}")
    if delta is None:
        delta = 0 if nx.is_tree(M.graph) else delta_slim(M)
    union = np.unique(np.concatenate([M.ids(s) for s in ch.sets]))
    eps_prime = qc_constant(M, union, ids=True)
    Lam = len(ch.sets)
    thr = linear_beats_log_threshold(ch.m, ch.c, ch.eps, max(delta, 1e-9))
    R_used = thr["R"] if R is None else R
    R_used = max(R_used, 1)
    out = {
        "eps_prime": eps_prime,
        "Lambda": Lam,
        "delta": delta,
        "log_bound": log_union_bound(Lam, delta, ch.eps),
        "R": R_used,
        "R_derived": R is None,
    }
    if Lam > 100 * R_used:
        out["replay"] = replay(M, ch, delta, R_used)
    else:
        out["replay"] = {"applicable": False, "reason": f"Lambda = {Lam} is at most 100R = {100 * R_used}"}
    return out


def _geodesic(M: MetricGraph, u: int, v: int) -> list[int]:
    D = M.D
    path = [u]
    while path[-1] != v:
        x = path[-1]
        nb = [M.index[y] for y in M.graph[M.nodes[x]]]
        path.append(min(y for y in nb if D[y, v] == D[x, v] - 1))
    return path


def replay(M: MetricGraph, ch: QcChain, delta: float, R: int) -> dict:
    """Rebuild the broken geodesic through the sets at indices spaced by
    100R and measure the quantities the argument bounds."""
    D = M.D
    ids = [M.ids(s) for s in ch.sets]
    Lam = len(ids)
    K = _g(200 * R, delta, ch.eps)
    t = list(range(0, Lam, 100 * R))
    if Lam - 1 - t[-1] < 100 * R and len(t) > 1:
        t[-1] = Lam - 1
    else:
        t.append(Lam - 1)
    u = [int(ids[i][0]) for i in t]
    ys, ks, progress = [], [], []
    for r in range(len(t) - 1):
        Yr = np.unique(np.concatenate(ids[t[r]:t[r + 1] + 1]))
        gam = _geodesic(M, u[r], u[r + 1])
        dY = D[np.ix_(gam, Yr)]
        near = dY.min(axis=1)
        best = None
        mid = (t[r] + t[r + 1]) / 2
        for k, x in enumerate(gam):
            proj = Yr[dY[k] == near[k]]
            idx = [l for l in range(t[r], t[r + 1] + 1) if np.intersect1d(proj, ids[l]).size]
            for l in idx:
                if best is None or abs(l - mid) < abs(best[0] - mid):
                    best = (l, int(proj[np.isin(proj, ids[l])][0]))
        bound = (2 * K + 1) / (2 * ch.m) + ch.c
        progress.append(abs(best[0] - mid) - bound)
        ks.append(best[0])
        ys.append(best[1])
    lengths = [int(D[ys[r - 1], ys[r]]) for r in range(1, len(ys))]
    gromov = []
    pts = [u[0]] + ys + [u[-1]]
    for r in range(1, len(pts) - 1):
        a, b, c = pts[r - 1], pts[r], pts[r + 1]
        gromov.append((D[a, b] + D[c, b] - D[a, c]) / 2)
    return {
        "applicable": True,
        "K": K,
        "indices": t,
        "progress_ok": all(p <= 0 for p in progress),
        "progress_margin": max(progress) if progress else 0.0,
        "sigma_long_ok": all(L >= 200 * K for L in lengths),
        "min_sigma": min(lengths) if lengths else None,
        "gromov_ok": all(gp <= 8 * K for gp in gromov),
        "max_gromov": max(gromov) if gromov else 0.0,
    }


# -------------------------------------------------------------- families
def comb_tree(length: int, tooth: int = 1) -> nx.Graph:
    """A path 0..length with a pendant path of the given size at each vertex."""
    g = nx.path_graph(length + 1)
    for i in range(length + 1):
        prev = i
        for j in range(tooth):
            v = ("t", i, j)
            g.add_edge(prev, v)
            prev = v
    return g


def ball(M: MetricGraph, centre: Hashable, r: int) -> list[Hashable]:
    row = M.D[M.index[centre]]
    return [M.nodes[i] for i in np.nonzero(row <= r)[0]]


def ball_chain(length: int, radius: int = 2, spacing: int = 2, tooth: int = 1) -> tuple[MetricGraph, QcChain]:
    """Balls of the given radius centred at every ``spacing``-th spine
    vertex of a comb tree; Lambda = length balls."""
    span = spacing * (length - 1)
    M = MetricGraph(comb_tree(span + 2 * radius, tooth))
    sets = [ball(M, radius + spacing * i, radius) for i in range(length)]
    # two balls whose indices differ by d are at distance >= spacing*d - 2*radius
    m = float(spacing)
    c = 2.0 * radius / spacing
    return M, QcChain(sets, m, c, 0.0, {"radius": radius, "spacing": spacing})


def interval_chain(M: MetricGraph, points: Sequence[Hashable]) -> list[list[Hashable]]:
    out = []
    for a, b in zip(points, points[1:]):
        out.append([M.nodes[i] for i in M.interval(M.index[a], M.index[b])])
    return out


def plateau(lengths: Sequence[int] = tuple(range(10, 201, 10)), radius: int = 2) -> dict:
    values = {}
    for L in lengths:
        M, ch = ball_chain(L, radius=radius)
        values[L] = verify_globally_qc(M, ch)["eps_prime"]
    vs = list(values.values())
    return {"values": values, "deviation": max(vs) - min(vs)}
