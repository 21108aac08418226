"""Algebraic link conditions for X/K and a direct geometric check of the
links of X/K.

The five condition sets are built from the link-edge and corner tables of a
complex of groups.  Every tuple is a product pattern of the form
``p_1 S_1 p_2 S_2 ...`` with ``S_i`` subsets of conjugates ``Q_v`` of local
groups; X/K has flag simplicial links exactly when no pattern meets K.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .cgy_dev import BasePaths, Corner, Cover, LinkEdge, corner_table, link_edge, link_edge_paths
from .cube_core import Verdict, simply_connected
from .errors import GroupError, InvariantViolation
from .grp_action import ComplexOfGroups, FiniteGroup, GroupAction, QuotientComplex, co_cubical, quotient_complex


# ------------------------------------------------------------ products
def find_in_product(G: FiniteGroup, factors: Sequence[Iterable[int]], target: Iterable[int]) -> list[int] | None:
    """A choice (f_1, ..., f_n) with f_1 f_2 ... f_n in ``target``, or None.

    Forward reachability over group elements with back-pointers, so the
    cost is O(|G| * sum |F_i|) rather than the size of the product set.
    """
    target = frozenset(target)
    layers: list[dict[int, tuple[int, int]]] = [{0: (-1, -1)}]
    for F in factors:
        F = list(F)
        nxt: dict[int, tuple[int, int]] = {}
        for x in layers[-1]:
            row = G.mul[x]
            for f in F:
                y = int(row[f])
                if y not in nxt:
                    nxt[y] = (x, f)
        if not nxt:
            return None
        layers.append(nxt)
    hit = next((y for y in sorted(layers[-1]) if y in target), None)
    if hit is None:
        return None
    out = []
    y = hit
    for layer in reversed(layers[1:]):
        x, f = layer[y]
        out.append(f)
        y = x
    return out[::-1]


def product_set(G: FiniteGroup, factors: Sequence[Iterable[int]]) -> frozenset:
    cur = {0}
    for F in factors:
        F = list(F)
        cur = {int(G.mul[x, f]) for x in cur for f in F}
    return frozenset(cur)


def _conj(G: FiniteGroup, p: int, Q: Iterable[int]) -> frozenset:
    """Q^p = p Q p^-1."""
    return G.conj_set(p, Q)


def _sub(G: FiniteGroup, Q: frozenset, B: frozenset, KQ: frozenset) -> frozenset:
    """Q minus B(K cap Q)."""
    return Q - G.prod_set(B, KQ)


# --------------------------------------------------------- condition sets
@dataclass
class Tuple1:
    Q: frozenset
    p: int
    source: dict


@dataclass
class Tuple2:
    Q: tuple[frozenset, frozenset]
    p: tuple[int, int]
    source: dict
    A: tuple[frozenset, frozenset] = (frozenset(), frozenset())


@dataclass
class Tuple3:
    Q: tuple[frozenset, frozenset, frozenset]
    p: tuple[int, int, int]
    source: dict
    h: tuple[tuple[int, ...], ...] = ()
    A_minus: tuple[frozenset, ...] = ()
    A_plus: tuple[frozenset, ...] = ()
    B: tuple[frozenset, ...] = ()


@dataclass
class ConditionSets:
    C: ComplexOfGroups
    base: BasePaths
    edges: dict[int, LinkEdge]
    corners: dict[int, Corner]
    F1: list[Tuple1] = field(default_factory=list)
    F2: list[Tuple2] = field(default_factory=list)
    F3: list[Tuple2] = field(default_factory=list)
    F4: list[Tuple3] = field(default_factory=list)
    F5: list[Tuple3] = field(default_factory=list)

    def sizes(self) -> dict[str, int]:
        return {k: len(getattr(self, k)) for k in ("F1", "F2", "F3", "F4", "F5")}


def _vertex_object(C: ComplexOfGroups) -> int:
    for v in range(C.n_objects):
        ch = C.lift_chain[v]
        if len(ch) == 1 and C.X.dims[ch[0]] == 0:
            return v
    raise InvariantViolation("no vertex object in Y")


def _edge_name(C: ComplexOfGroups, e: LinkEdge) -> list[str]:
    return [C.X.names[c] for c in C.lift_chain[e.mu1]]


def _ends(C: ComplexOfGroups, e: LinkEdge) -> tuple[int, int]:
    Y = C.Y
    return Y.dst(e.a1), Y.dst(e.a4)


def _two_cells(C: ComplexOfGroups):
    """Oriented boundary data of 2-cells in links of cubes, one entry per
    (sigma, psi, cyclic order of the three epsilons), sigma a lift cell.

    Yields the three link-edge keys (Y-objects <sigma < e_i < phi_i,i+1>)
    and the three corner keys (Y-objects <sigma < e_i+1 < phi_i,i+1 < psi>).
    """
    X = C.X
    for v in range(C.n_objects):
        ch = C.lift_chain[v]
        if len(ch) != 1:
            continue
        s = ch[0]
        d = X.dims[s]
        for psi in X.cofaces[s]:
            if X.dims[psi] != d + 3:
                continue
            eps = [e for e in X.faces[psi] if X.dims[e] == d + 1 and s in X.faces[e]]
            for order in ((0, 1, 2), (0, 2, 1)):
                for r in range(3):
                    es = [eps[order[(r + k) % 3]] for k in range(3)]
                    phis = []
                    for k in range(3):
                        a, b = es[k], es[(k + 1) % 3]
                        phi = [f for f in X.faces[psi] if X.dims[f] == d + 2 and a in X.faces[f] and b in X.faces[f]]
                        if len(phi) != 1:
                            raise InvariantViolation("two epsilons do not span a unique face")
                        phis.append(phi[0])
                    edges = tuple(C.object_of_chain((s, es[k], phis[k])) for k in range(3))
                    corners = tuple(C.object_of_chain((s, es[(k + 1) % 3], phis[k], psi)) for k in range(3))
                    yield edges, corners


def build_condition_sets(C: ComplexOfGroups, cover: Cover | None = None, v0: int | None = None,
                         check: bool = True) -> ConditionSets:
    G = C.G
    cover = cover or Cover(C)
    bp = BasePaths(C, cover, _vertex_object(C) if v0 is None else v0)
    edges = link_edge_paths(C, chain_length=1)
    corners = corner_table(C, cover, chain_length=2)
    S = ConditionSets(C, bp, edges, corners)
    ell = {mu: bp.ell(e.path) for mu, e in edges.items()}
    Qt = {mu: bp.Q(_ends(C, e)[1]) for mu, e in edges.items()}
    Qi = {mu: bp.Q(_ends(C, e)[0]) for mu, e in edges.items()}
    rev = {mu: e.mu2 for mu, e in edges.items()}

    # stabilizer of the edge seen from its terminal and initial ends
    def a_minus(mu):
        e = edges[mu]
        A = Qt[mu] & G.conj_set(int(G.inv[ell[mu]]), Qi[mu])
        if A != _conj(G, bp.x[_ends(C, e)[1]], e.E):
            raise InvariantViolation("edge stabilizer at the terminal end disagrees with E")
        return A

    def a_plus(mu):
        e = edges[mu]
        A = Qi[mu] & _conj(G, ell[mu], Qt[mu])
        if A != _conj(G, bp.x[_ends(C, e)[0]], e.E_bar):
            raise InvariantViolation("edge stabilizer at the initial end disagrees with E_bar")
        return A

    for mu, e in sorted(edges.items()):
        i, t = _ends(C, e)
        if i == t:
            S.F1.append(Tuple1(Qt[mu], ell[mu], {"edge": mu, "chain": _edge_name(C, e)}))

    for m1 in sorted(edges):
        i1, t1 = _ends(C, edges[m1])
        for m2 in sorted(edges):
            i2, t2 = _ends(C, edges[m2])
            if i2 != t1 or t2 != i1:
                continue
            src = {"edges": [m1, m2], "chains": [_edge_name(C, edges[m1]), _edge_name(C, edges[m2])]}
            if m2 == rev[m1]:
                A1 = Qt[m1] & _conj(G, ell[m2], Qt[m2])
                A2 = Qt[m2] & _conj(G, ell[m1], Qt[m1])
                if A1 != a_minus(m1) or A2 != a_minus(m2):
                    raise InvariantViolation("reverse-edge stabilizers disagree")
                S.F3.append(Tuple2((Qt[m1], Qt[m2]), (ell[m1], ell[m2]), src, (A1, A2)))
            else:
                S.F2.append(Tuple2((Qt[m1], Qt[m2]), (ell[m1], ell[m2]), src))

    # corners bounded by 2-cells, keyed by consecutive edge pairs
    bounded: dict[tuple[int, int], set[int]] = {}
    filled: set[tuple[int, int, int]] = set()
    for es, cs in _two_cells(C):
        filled.add(es)
        for k in range(3):
            c = corners[cs[k]]
            if c.edge.mu1 != cs[k]:
                raise InvariantViolation("corner table key mismatch")
            bounded.setdefault((es[k], es[(k + 1) % 3]), set()).add(c.by_eval)
    for m1 in sorted(edges):
        for m2 in sorted(edges):
            if _ends(C, edges[m2])[0] != _ends(C, edges[m1])[1]:
                continue
            for m3 in sorted(edges):
                if _ends(C, edges[m3])[0] != _ends(C, edges[m2])[1] or _ends(C, edges[m3])[1] != _ends(C, edges[m1])[0]:
                    continue
                ms = (m1, m2, m3)
                Q = tuple(Qt[m] for m in ms)
                p = tuple(ell[m] for m in ms)
                src = {"edges": list(ms), "chains": [_edge_name(C, edges[m]) for m in ms]}
                if ms not in filled:
                    S.F4.append(Tuple3(Q, p, src))
                    continue
                hs, Am, Ap, Bs = [], [], [], []
                for k in range(3):
                    nxt = ms[(k + 1) % 3]
                    t = _ends(C, edges[ms[k]])[1]
                    gs = tuple(sorted(bounded.get((ms[k], nxt), ())))
                    h = tuple(G.conj(bp.x[t], g) for g in gs)
                    am = Q[k] & G.conj_set(int(G.inv[p[k]]), Q[k - 1])
                    ap = Q[k] & _conj(G, p[(k + 1) % 3], Q[(k + 1) % 3])
                    if am != a_minus(ms[k]) or ap != a_plus(nxt):
                        raise InvariantViolation("corner stabilizers disagree with edge data")
                    B = frozenset().union(*(G.prod_set(G.prod_set(am, [x]), ap) for x in h))
                    hs.append(h)
                    Am.append(am)
                    Ap.append(ap)
                    Bs.append(B)
                S.F5.append(Tuple3(Q, p, src, tuple(hs), tuple(Am), tuple(Ap), tuple(Bs)))
    if check:
        v = evaluate_conditions(S, [0])
        if not v["ok"]:
            raise InvariantViolation(f"condition sets fail for K = 1: {v['failures'][:1]}")
    return S


# ------------------------------------------------------------- evaluation
def _factors(G: FiniteGroup, K: frozenset, kind: str, T) -> list:
    if kind == "F1":
        return [[T.p], T.Q]
    if kind == "F2":
        return [[T.p[0]], T.Q[0], [T.p[1]], T.Q[1]]
    if kind == "F3":
        return [[T.p[0]], _sub(G, T.Q[0], T.A[0], T.Q[0] & K),
                [T.p[1]], _sub(G, T.Q[1], T.A[1], T.Q[1] & K)]
    if kind == "F4":
        return [x for k in range(3) for x in ([T.p[k]], T.Q[k])]
    if kind == "F5":
        return [x for k in range(3) for x in ([T.p[k]], _sub(G, T.Q[k], T.B[k], T.Q[k] & K))]
    raise ValueError(kind)


def evaluate_conditions(S: ConditionSets, K: Iterable[int]) -> dict:
    """Per-set verdicts.  For F1 the pattern is p Q meeting K, which is the
    same as p in Q.K since K is normal."""
    G = S.C.G
    K = frozenset(K)
    out: dict = {"ok": True, "failures": []}
    for kind in ("F1", "F2", "F3", "F4", "F5"):
        bad = []
        for n, T in enumerate(getattr(S, kind)):
            fac = _factors(G, K, kind, T)
            w = find_in_product(G, fac, K)
            if w is not None:
                bad.append({"set": kind, "tuple": n, "factors": w, "product": product_of(G, w),
                            "source": T.source})
        out[kind] = {"ok": not bad, "tuples": len(getattr(S, kind)), "failed": len(bad)}
        out["failures"] += bad
        out["ok"] = out["ok"] and not bad
    return out


def product_of(G: FiniteGroup, w: Sequence[int]) -> int:
    return G.m(*w)


# -------------------------------------------------------- geometric oracle
def link_data(A: GroupAction, K: frozenset, s: int):
    """Link of the cell s modulo K cap Stab(s): vertex classes, edge
    classes with their endpoint classes, and 2-cell vertex sets."""
    X = A.X
    Ks = sorted(K & A.stabilizer(s))
    P = A.cellperm[Ks]
    d = X.dims[s]

    def cls(c):
        return int(P[:, c].min())

    up = [c for c in X.cofaces[s]]
    verts = sorted({cls(c) for c in up if X.dims[c] == d + 1})
    edges = {}
    for phi in up:
        if X.dims[phi] != d + 2:
            continue
        k = cls(phi)
        if k in edges:
            continue
        ends = [e for e in X.faces[phi] if X.dims[e] == d + 1 and s in X.faces[e]]
        edges[k] = (cls(ends[0]), cls(ends[1]))
    tris = {}
    for psi in up:
        if X.dims[psi] != d + 3:
            continue
        k = cls(psi)
        if k in tris:
            continue
        tris[k] = frozenset(cls(e) for e in X.faces[psi] if X.dims[e] == d + 1 and s in X.faces[e])
    return verts, edges, tris


def geometric_oracle(Z: QuotientComplex) -> dict:
    """Links of every cell of Z = X/K: no loops of length 1 or 2 and every
    3-cycle filled.  Reports the first offending cell for each length."""
    A, K = Z.A, Z.K
    names = A.X.names
    found: dict[int, dict | None] = {1: None, 2: None, 3: None}
    for r, s in enumerate(Z.reps):
        verts, edges, tris = link_data(A, K, s)
        seen: dict[frozenset, int] = {}
        adj: dict[int, set[int]] = {v: set() for v in verts}
        for k, (a, b) in sorted(edges.items()):
            if a == b:
                if found[1] is None:
                    found[1] = {"cell": names[s], "loop": [names[k]], "vertex": names[a]}
                continue
            key = frozenset((a, b))
            if key in seen:
                if found[2] is None:
                    found[2] = {"cell": names[s], "loop": [names[seen[key]], names[k]],
                                "vertices": [names[a], names[b]]}
                continue
            seen[key] = k
            adj[a].add(b)
            adj[b].add(a)
        if found[3] is None:
            fills = set(tris.values())
            for a in verts:
                for b in sorted(adj[a]):
                    if b <= a:
                        continue
                    for c in sorted(adj[a] & adj[b]):
                        if c <= b:
                            continue
                        if frozenset((a, b, c)) not in fills:
                            found[3] = {"cell": names[s], "vertices": [names[a], names[b], names[c]]}
                            break
                    if found[3]:
                        break
                if found[3]:
                    break
    ok = all(v is None for v in found.values())
    return {"ok": ok, "length1": found[1], "length2": found[2], "length3": found[3]}


# ---------------------------------------------------------- combined
def elliptic_generation(A: GroupAction, K: Iterable[int]) -> dict:
    """Whether K is generated by elements fixing a cell (so that X/K is
    simply connected when X is)."""
    K = frozenset(K)
    stabs = set()
    for c in A.orbit_reps():
        for g in range(len(A.G)):
            stabs.update(A.G.conj_set(g, A.stabilizer(c)))
    E = K & stabs
    H = A.G.generated(E)
    return {"ok": H == K, "elliptic": len(E), "generated": len(H), "order": len(K)}


def npc_quotient_verdict(C: ComplexOfGroups, K: Iterable[int], sets: ConditionSets | None = None) -> dict:
    A = C.A
    K = frozenset(K)
    if not A.G.is_normal(K):
        raise GroupError("not normal", "K is not a normal subgroup")
    cv = co_cubical(A, K)
    if not cv:
        raise GroupError("not co-cubical", cv.reason)
    S = sets or build_condition_sets(C)
    alg = evaluate_conditions(S, K)
    Z = quotient_complex(A, K)
    geo = geometric_oracle(Z)
    staged = {
        "length1": (alg["F1"]["ok"], geo["length1"] is None),
        "length2": (alg["F2"]["ok"] and alg["F3"]["ok"], geo["length2"] is None),
        "length3": (alg["F4"]["ok"] and alg["F5"]["ok"], geo["length3"] is None),
    }
    agree = alg["ok"] == geo["ok"] and staged["length1"][0] == staged["length1"][1]
    if staged["length1"][1]:
        agree = agree and staged["length2"][0] == staged["length2"][1]
        if staged["length2"][1]:
            agree = agree and staged["length3"][0] == staged["length3"][1]
    if not agree:
        raise InvariantViolation(f"algebraic and geometric link checks disagree: {staged}")
    route = elliptic_generation(A, K)
    sc = {"route": "elliptic generation", "status": "verified" if route["ok"] else "unknown", "detail": route}
    if not route["ok"] and Z.complex is not None:
        status, info = simply_connected(Z.complex)
        sc = {"route": "presentation", "status": status, "detail": info}
    return {
        "ok": alg["ok"],
        "npc": geo["ok"],
        "cat0": geo["ok"] and sc["status"] == "verified",
        "conditions": alg,
        "oracle": geo,
        "staged": {k: {"algebra": a, "geometry": g} for k, (a, g) in staged.items()},
        "agree": True,
        "simply_connected": sc,
        "quotient_cells": Z.n_cells,
        "sizes": S.sizes(),
    }


def npc_verdict(C: ComplexOfGroups, K: Iterable[int]) -> Verdict:
    r = npc_quotient_verdict(C, K)
    if r["ok"]:
        return Verdict(True)
    return Verdict(False, "link condition fails in X/K", r["conditions"]["failures"][0])
