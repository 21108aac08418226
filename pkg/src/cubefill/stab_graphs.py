"""Graphs built from arrows of the K = {1} cover: Gamma(A), representative
hyperplane lists, pushed-down subcomplexes and the graphs Gamma-hat(C)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .cgy_dev import Cover
from .cube_core import Subdivision, Verdict, cubical_subdivision
from .errors import InputError, InvariantViolation
from .grp_action import ComplexOfGroups, FiniteGroup

Node = tuple  # cover object (y, v)


# ------------------------------------------------------------ subdivision
class SubdivisionAction:
    """The G-action on X^b and on its hyperplanes."""

    def __init__(self, C: ComplexOfGroups, S: Subdivision | None = None):
        self.C = C
        self.G = C.G
        self.S = S or cubical_subdivision(C.X)
        Xb = self.S.complex
        cp = C.A.cellperm
        n = len(Xb.cells)
        self.cellperm = np.empty((len(self.G), n), dtype=np.int64)
        for c, (lo, hi) in enumerate(self.S.pair_of):
            self.cellperm[:, c] = [self.S.cell_of_pair[(int(cp[g, lo]), int(cp[g, hi]))] for g in self.G.elements]
        self.hyperplanes = self.S.hyperplanes()
        self.edge_class = {}
        for W in self.hyperplanes:
            for e in W.edges:
                self.edge_class[e] = W.id
        self.hperm = np.empty((len(self.G), len(self.hyperplanes)), dtype=np.int64)
        for W in self.hyperplanes:
            e = W.edges[0]
            self.hperm[:, W.id] = [self.edge_class[int(self.cellperm[g, e])] for g in self.G.elements]
        # cells of X^b crossed by each hyperplane
        self.crossed: list[frozenset] = []
        for W in self.hyperplanes:
            es = set(W.edges)
            self.crossed.append(frozenset(c for c in W.carrier
                                          if any(Xb.edge_along(c, j) in es for j in range(int(Xb.dims[c])))))
        self._splits: dict[int, tuple[frozenset, frozenset]] = {}

    def split(self, w: int) -> tuple[frozenset, frozenset]:
        if w not in self._splits:
            self._splits[w] = self.S.hyperplane_carrier_split(self.hyperplanes[w])
        return self._splits[w]

    def stab(self, ws: Sequence[int]) -> frozenset:
        ok = np.ones(len(self.G), dtype=bool)
        for w in ws:
            ok &= self.hperm[:, w] == w
        return frozenset(np.nonzero(ok)[0].tolist())

    def meet(self, ws: Sequence[int]) -> frozenset:
        cells = None
        for w in ws:
            cells = self.crossed[w] if cells is None else cells & self.crossed[w]
        return cells if cells is not None else frozenset(range(len(self.S.complex.cells)))


def representative_lists(D: SubdivisionAction, max_len: int | None = None) -> list[tuple[int, ...]]:
    """One ordered list per G-orbit of lists of distinct, jointly
    intersecting hyperplanes of X^b, grown by appending so every initial
    segment of a representative is a representative."""
    if max_len is None:
        max_len = D.C.X.dim
    reps: list[tuple[int, ...]] = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for c in layer:
            st = sorted(D.stab(c))
            base = D.meet(c)
            seen = set()
            for w in range(len(D.hyperplanes)):
                if w in c or w in seen or not (base & D.crossed[w]):
                    continue
                orb = {int(D.hperm[g, w]) for g in st}
                seen |= orb
                nxt.append(c + (min(orb),))
        reps += nxt
        layer = nxt
        if not layer:
            break
    return reps


def base_representative_lists(C: ComplexOfGroups, max_len: int | None = None) -> list[tuple[int, ...]]:
    """Same construction for hyperplanes of X itself."""
    X = C.X
    hs = X.hyperplanes()
    edge_class = {e: W.id for W in hs for e in W.edges}
    cp = C.A.cellperm
    hperm = np.array([[edge_class[int(cp[g, W.edges[0]])] for W in hs] for g in C.G.elements], dtype=np.int64)
    crossed = []
    for W in hs:
        es = set(W.edges)
        crossed.append(frozenset(c for c in W.carrier if any(X.edge_along(c, j) in es for j in range(int(X.dims[c])))))
    reps: list[tuple[int, ...]] = [()]
    layer = [()]
    for _ in range(max_len if max_len is not None else X.dim):
        nxt = []
        for c in layer:
            ok = np.ones(len(C.G), dtype=bool)
            for w in c:
                ok &= hperm[:, w] == w
            st = np.nonzero(ok)[0]
            base = frozenset(range(len(X.cells)))
            for w in c:
                base &= crossed[w]
            seen = set()
            for w in range(len(hs)):
                if w in c or w in seen or not (base & crossed[w]):
                    continue
                orb = set(hperm[st, w].tolist())
                seen |= orb
                nxt.append(c + (min(orb),))
        reps += nxt
        layer = nxt
    return reps


def push_down(D: SubdivisionAction, clist: Sequence[int]) -> list[frozenset]:
    """I_() ⊇ I_(W1) ⊇ ... as sets of X^b cells, one entry per prefix."""
    Xb = D.S.complex
    cur = frozenset(range(len(Xb.cells)))
    out = [cur]
    for w in clist:
        up, down = D.split(w)
        es = set(D.hyperplanes[w].edges)
        nxt = set()
        for c in cur & D.crossed[w]:
            for j in range(int(Xb.dims[c])):
                if Xb.edge_along(c, j) in es:
                    nxt.add(Xb.facets[c][j][0])
        if not nxt:
            raise InputError("empty intersection", f"list {tuple(clist)} does not meet")
        cur = frozenset(nxt)
        out.append(cur)
    return out


# ----------------------------------------------------------------- graphs
@dataclass
class StabGraph:
    """Gr(S) for a set S of cover arrows."""

    graph: nx.Graph
    cubical: frozenset
    central: frozenset
    clist: tuple = ()

    @property
    def vertices(self) -> frozenset:
        return frozenset(self.graph.nodes)

    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.graph.edges)


def _is_central(C: ComplexOfGroups, v: int) -> bool:
    ch = C.lift_chain[v]
    return len(ch) == 2 and C.X.dims[ch[1]] == C.X.dims[ch[0]] + 1


def opposable_arrows(C: ComplexOfGroups, centre: int) -> tuple[int, int]:
    """Y arrows (to the smaller cube, to the larger cube) from a central object."""
    return C.arrow(centre, (0,)), C.arrow(centre, (1,))


def _add_group_edges(g: nx.Graph, cover: Cover, node: Node, labels: Iterable[int], keep=None):
    y, o = node
    for k in labels:
        if k == 0:
            continue
        tgt = cover.step(node, ((k, o), -1))
        if keep is not None and tgt not in keep:
            continue
        if not g.has_edge(node, tgt):
            g.add_edge(node, tgt, label=(k, o), src=node, kind="group")


def _add_opposable(g: nx.Graph, cover: Cover, keep=None):
    C = cover.C
    for v in range(C.n_objects):
        if not _is_central(C, v):
            continue
        a, b = opposable_arrows(C, v)
        for y in map(int, cover.coset_rep):
            c = (y, v)
            t1 = cover.step(c, ((0, a), -1))
            t2 = cover.step(c, ((0, b), -1))
            if keep is not None and (t1 not in keep or t2 not in keep):
                continue
            g.add_edge(c, t1, label=(0, a), src=c, kind="scwol")
            g.add_edge(c, t2, label=(0, b), src=c, kind="scwol")


def cubical_nodes(cover: Cover) -> list[Node]:
    C = cover.C
    return [(int(y), v) for v in range(C.n_objects) if len(C.lift_chain[v]) == 1 for y in cover.coset_rep]


def build_gamma(cover: Cover, A: dict[int, Iterable[int]] | None = None) -> StabGraph:
    """Gamma(A); A maps cubical Y-objects to subsets of their local groups
    (default: the whole local group).  Unit arrows are not drawn."""
    C = cover.C
    if len(cover.K) != 1:
        raise InputError("bad cover", "graphs live in the K = {1} cover")
    g = nx.Graph()
    cub = cubical_nodes(cover)
    g.add_nodes_from(cub)
    for node in cub:
        labels = C.local[node[1]] if A is None else A.get(node[1], ())
        bad = set(labels) - C.local[node[1]]
        if bad:
            raise InputError("bad label set", f"labels {sorted(bad)} are not in the local group")
        _add_group_edges(g, cover, node, labels)
    _add_opposable(g, cover)
    central = frozenset(n for n in g.nodes if _is_central(C, n[1]))
    return StabGraph(g, frozenset(cub), central)


def check_central_valence(G: StabGraph) -> Verdict:
    for c in G.central:
        nb = list(G.graph.neighbors(c))
        if len(nb) != 2 or any(n not in G.cubical for n in nb):
            return Verdict(False, "central vertex without two cubical neighbours", {"vertex": list(c)})
    return Verdict(True)


# --------------------------------------------------------- Gamma-hat(C)
@dataclass
class ListData:
    clist: tuple
    I: list[frozenset]            # I for each prefix
    V: frozenset                  # V_box(C)
    gamma_src: dict               # v -> source of gamma_1 (central object)
    graph: StabGraph
    stab: frozenset


class StabGraphs:
    """All the per-list data for one complex of groups."""

    def __init__(self, C: ComplexOfGroups, cover: Cover | None = None, D: SubdivisionAction | None = None):
        self.C = C
        self.G = C.G
        self.cover = cover or Cover(C)
        self.D = D or SubdivisionAction(C)
        self._data: dict[tuple, ListData] = {}

    @cached_property
    def gamma_U(self) -> StabGraph:
        return build_gamma(self.cover)

    @cached_property
    def lists(self) -> list[tuple[int, ...]]:
        return representative_lists(self.D)

    def theta_cells(self, node: Node) -> tuple[int, ...]:
        return self.C.ideal.chains[self.cover.theta(node)]

    def fibre(self, chain_id: int) -> list[Node]:
        C = self.C
        u = int(C.orbit_of[chain_id])
        ys = np.nonzero(C.objperm[:, C.lift[u]] == chain_id)[0]
        return [(int(y), u) for y in ys]

    def data(self, clist: Sequence[int]) -> ListData:
        clist = tuple(clist)
        if clist in self._data:
            return self._data[clist]
        C, D = self.C, self.D
        I = push_down(D, clist)
        if not clist:
            V = frozenset(cubical_nodes(self.cover))
            src: dict = {}
        else:
            prev = self.data(clist[:-1])
            Xb = D.S.complex
            es = set(D.hyperplanes[clist[-1]].edges)
            found: dict[Node, Node] = {}
            for e in es:
                if e not in prev.I[-1]:
                    continue
                lo, hi = (D.S.pair_of[Xb.vertex_cell[x]][0] for x in Xb.cells[e])
                chain = C.ideal.chain_index[(lo, hi)]
                a = C.arrow(int(C.orbit_of[chain]), (0,))
                for node in self.fibre(chain):
                    t = self.cover.step(node, ((0, a), -1))
                    if t in found and found[t] != node:
                        raise InvariantViolation("two arrows gamma_v with the same target")
                    found[t] = node
            V = frozenset(found) & prev.V
            src = {v: found[v] for v in V}
        g = nx.Graph()
        g.add_nodes_from(V)
        for node in V:
            _add_group_edges(g, self.cover, node, C.local[node[1]], keep=V)
        _add_opposable(g, self.cover, keep=V)
        central = frozenset(n for n in g.nodes if _is_central(C, n[1]))
        sg = StabGraph(g, V, central, clist)
        out = ListData(clist, I, V, src, sg, D.stab(clist))
        self._data[clist] = out
        return out

    # ---------------------------------------------------------- checks
    def act(self, g: int, node: Node) -> Node:
        return self.cover.norm(int(self.G.mul[g, node[0]])), node[1]

    def stab_invariance(self, clist: Sequence[int], vertices: frozenset | None = None) -> Verdict:
        """Stab(C) preserves the graph, and g(graph) meets the graph only
        for g in Stab(C)."""
        d = self.data(clist)
        verts = vertices if vertices is not None else d.graph.vertices
        edges = d.graph.edge_set()
        for g in self.G.elements:
            img = {self.act(g, x) for x in verts}
            if g in d.stab:
                if img != set(verts):
                    return Verdict(False, "Stab(C) does not preserve the vertex set", {"element": g})
                if vertices is None:
                    for e in edges:
                        a, b = tuple(e)
                        if frozenset((self.act(g, a), self.act(g, b))) not in edges:
                            return Verdict(False, "Stab(C) does not preserve the edge set", {"element": g})
            elif img & set(verts):
                return Verdict(False, "translate meets the graph for g outside Stab(C)", {"element": g})
        return Verdict(True)

    def mutated_vertices(self, clist: Sequence[int]) -> frozenset | None:
        """Vertex set with one foreign translate added, or None when
        Stab(C) = G."""
        d = self.data(clist)
        outside = [g for g in self.G.elements if g not in d.stab]
        if not outside or not d.V:
            return None
        v = min(d.V)
        return d.graph.vertices | {self.act(outside[0], v)}

    def local_group(self, clist: Sequence[int], v: Node) -> frozenset:
        d = self.data(clist)
        if v not in d.V:
            raise InputError("not cubical", "vertex is not in V_box(C)")
        H = {0}
        for k in self.C.local[v[1]]:
            if self.cover.step(v, ((k, v[1]), -1)) in d.V:
                H.add(k)
        return frozenset(H)

    def check_local_groups(self, clist: Sequence[int]) -> Verdict:
        G, C, d = self.G, self.C, self.data(clist)
        X = C.X
        for v in d.V:
            H = self.local_group(clist, v)
            if not G.is_subgroup(H):
                return Verdict(False, "labels do not form a subgroup", {"vertex": list(v)})
            cell = self.theta_cells(v)[0]
            stab_cell = frozenset(np.nonzero(C.A.cellperm[:, cell] == cell)[0].tolist())
            want = d.stab & stab_cell
            y = v[0]
            img = frozenset(G.conj(y, int(G.inv[k])) for k in H)
            if img != want:
                return Verdict(False, "label group differs from Stab(C) ∩ Stab(cell)",
                               {"vertex": list(v), "labels": sorted(H), "expected_size": len(want)})
            for g in d.stab:
                if self.local_group(clist, self.act(g, v)) != H:
                    return Verdict(False, "label group not constant on a Stab(C)-orbit", {"vertex": list(v)})
        del X
        return Verdict(True)

    def xi_chains(self, clist: Sequence[int]) -> dict[int, int]:
        """Chains tau_C for cubes tau meeting the intersection, keyed by tau."""
        X, D = self.C.X, self.D
        d = self.data(clist)
        meet = D.meet(clist)
        out = {}
        for tau in range(len(X.cells)):
            faces = set(X.faces[tau])
            inside = {c for c in meet if D.S.pair_of[c][1] in faces}
            if clist and not inside:
                continue
            chain = []
            for I in reversed(d.I):
                verts = {D.S.pair_of[D.S.complex.vertex_cell[x]][0] for c in I for x in D.S.complex.cells[c]} & faces
                top = max(verts, key=lambda s: X.dims[s])
                if verts != set(X.faces[top]):
                    raise InvariantViolation("I_C meets a cube in something other than a face")
                chain.append(top)
            if len(set(chain)) != len(chain):
                raise InvariantViolation("tau_C is not a strict chain")
            out[tau] = self.C.ideal.chain_index[tuple(chain)]
        return out

    def alpha_bijection(self, clist: Sequence[int]) -> Verdict:
        C, d = self.C, self.data(clist)
        k = len(clist)
        xi = set(self.xi_chains(clist).values())
        target = {n for c in xi for n in self.fibre(c)}
        if k == 0:
            alpha = {v: v for v in d.V}
        else:
            by_prefix: dict[tuple, list[int]] = {}
            for c in xi:
                by_prefix.setdefault(C.ideal.chains[c][:2], []).append(c)
            alpha = {}
            for v in d.V:
                s = d.gamma_src[v]
                if k == 1:
                    alpha[v] = s
                    continue
                hits = []
                for c in by_prefix.get(self.theta_cells(s), []):
                    u = int(C.orbit_of[c])
                    a = C.arrow(u, (0, 1))
                    cand = self.cover.step(s, ((0, a), 1))
                    if self.cover.theta(cand) == c:
                        hits.append(cand)
                if len(hits) != 1:
                    return Verdict(False, "alpha is not well defined", {"vertex": list(v), "candidates": len(hits)})
                alpha[v] = hits[0]
        img = set(alpha.values())
        if len(img) != len(alpha) or img != target:
            return Verdict(False, "alpha is not a bijection onto the fibre of Xi",
                           {"image": len(img), "domain": len(alpha), "target": len(target)})
        for g in d.stab:
            for v, a in alpha.items():
                if alpha[self.act(g, v)] != self.act(g, a):
                    return Verdict(False, "alpha is not equivariant", {"element": g})
        return Verdict(True, "", {"orbits": self.orbit_count(clist), "xi": len(xi)})

    def orbit_count(self, clist: Sequence[int]) -> int:
        d = self.data(clist)
        seen, n = set(), 0
        for v in sorted(d.V):
            if v in seen:
                continue
            n += 1
            seen |= {self.act(g, v) for g in d.stab}
        return n

    def nesting(self, clist: Sequence[int]) -> Verdict:
        if not clist:
            return Verdict(True)
        d, p = self.data(clist), self.data(tuple(clist)[:-1])
        if not d.graph.vertices <= p.graph.vertices or not d.graph.edge_set() <= p.graph.edge_set():
            return Verdict(False, "graph not nested in its prefix graph", {"list": list(clist)})
        return Verdict(True)

    def theta_in_I(self, clist: Sequence[int]) -> Verdict:
        d = self.data(clist)
        D = self.D
        vert_cells = {D.S.pair_of[c][0] for c in d.I[-1] if D.S.complex.dims[c] == 0}
        for v in d.V:
            if self.theta_cells(v)[0] not in vert_cells:
                return Verdict(False, "Theta(V_box) leaves I_C", {"vertex": list(v)})
        return Verdict(True)

    def gamma_C(self, clist: Sequence[int], B: dict[Node, Iterable[int]] | None = None) -> StabGraph:
        """Gamma_C(B); B maps Stab(C)-orbit representatives to label subsets
        (default: a greedy generating set of each local group)."""
        d = self.data(clist)
        reps = {}
        for v in sorted(d.V):
            if v in reps:
                continue
            for g in d.stab:
                reps.setdefault(self.act(g, v), (v, g))
        g = nx.Graph()
        g.add_nodes_from(d.V)
        for v, (r, _) in reps.items():
            if B is not None and r in B:
                labels = set(B[r])
            else:
                labels = set(generating_set(self.G, self.local_group(clist, r)))
            if not labels <= self.local_group(clist, r):
                raise InputError("bad label set", "labels must lie in the local label group")
            # the label sets are carried along the orbit unchanged
            _add_group_edges(g, self.cover, v, labels, keep=d.V)
        _add_opposable(g, self.cover, keep=d.V)
        central = frozenset(n for n in g.nodes if _is_central(self.C, n[1]))
        return StabGraph(g, d.V, central, tuple(clist))

    def free_action(self, sg: StabGraph, stab: frozenset) -> Verdict:
        for g in stab:
            if g == 0:
                continue
            for x in sg.graph.nodes:
                if self.act(g, x) == x:
                    return Verdict(False, "Stab(C) fixes a vertex", {"element": g, "vertex": list(x)})
        return Verdict(True)

    # ------------------------------------------------------------ Psi
    def psi(self, node: Node) -> int:
        """X^b cell under a node: a vertex for cubical, an edge for central."""
        ch = self.theta_cells(node)
        S = self.D.S
        if len(ch) == 1:
            return S.cell_of_pair[(ch[0], ch[0])]
        return S.cell_of_pair[(ch[0], ch[1])]

    def check_psi(self) -> Verdict:
        g = self.gamma_U.graph
        S = self.D.S
        Xb = S.complex
        for u, w, data in g.edges(data=True):
            pu, pw = self.psi(u), self.psi(w)
            if data["kind"] == "group":
                if pu != pw:
                    return Verdict(False, "group edge not collapsed", {"edge": [list(u), list(w)]})
            else:
                c, x = (u, w) if u in self.gamma_U.central else (w, u)
                if self.psi(x) not in Xb.faces[self.psi(c)] or Xb.dims[self.psi(x)] != 0:
                    return Verdict(False, "opposable arrow not sent to a half-edge", {"edge": [list(u), list(w)]})
        imgs = {self.psi(n) for n in g.nodes}
        want = {c for c in range(len(Xb.cells)) if Xb.dims[c] <= 1}
        if imgs != want:
            return Verdict(False, "Psi does not surject onto the 1-skeleton", {"missing": len(want - imgs)})
        for h in self.G.elements:
            for n in g.nodes:
                if self.psi(self.act(h, n)) != int(self.D.cellperm[h, self.psi(n)]):
                    return Verdict(False, "Psi is not equivariant", {"element": h})
        return Verdict(True)


def generating_set(G: FiniteGroup, H: Iterable[int]) -> list[int]:
    """Greedy generating set of a subgroup."""
    H = sorted(H)
    gens: list[int] = []
    cur = frozenset({0})
    for h in H:
        if h not in cur:
            gens.append(h)
            cur = G.generated(gens)
    return gens


def report(C: ComplexOfGroups, max_len: int | None = None, sg: StabGraphs | None = None) -> dict:
    """Run every structural check over the representative lists."""
    sg = sg or StabGraphs(C)
    lists = representative_lists(sg.D, max_len)
    out = {"lists": [], "gamma_U_connected": nx.is_connected(sg.gamma_U.graph),
           "central_valence": bool(check_central_valence(sg.gamma_U)), "psi": bool(sg.check_psi())}
    ok = out["gamma_U_connected"] and out["central_valence"] and out["psi"]
    for cl in lists:
        d = sg.data(cl)
        row = {
            "list": list(cl),
            "vertices": d.graph.graph.number_of_nodes(),
            "cubical": len(d.V),
            "stab": len(d.stab),
            "stab_invariance": bool(sg.stab_invariance(cl)),
            "alpha": bool(sg.alpha_bijection(cl)),
            "orbits": sg.orbit_count(cl),
            "nesting": bool(sg.nesting(cl)),
            "theta_in_I": bool(sg.theta_in_I(cl)),
            "local_groups": bool(sg.check_local_groups(cl)),
        }
        gc = sg.gamma_C(cl)
        row["gamma_C_connected"] = nx.is_connected(gc.graph) if gc.graph.number_of_nodes() else True
        row["free"] = bool(sg.free_action(gc, d.stab))
        mv = sg.mutated_vertices(cl)
        row["mutation_detected"] = None if mv is None else not sg.stab_invariance(cl, mv)
        ok = ok and all(row[k] for k in ("stab_invariance", "alpha", "nesting", "theta_in_I", "local_groups",
                                         "gamma_C_connected", "free")) and row["mutation_detected"] is not False
        out["lists"].append(row)
    out["ok"] = bool(ok)
    return out


# ---------------------------------------------------- intersection bound
def coarse_gauge(D: np.ndarray, S: Sequence[int], slack: int) -> int:
    """Upper bound for the Morse gauge M(1, slack) of S: the largest distance
    to S from a point x with d(u,x)+d(x,v) <= d(u,v)+slack, u, v in S."""
    S = list(S)
    dS = D[:, S].min(axis=1)
    best = 0
    for i, u in enumerate(S):
        for v in S[i:]:
            near = D[u] + D[v] <= D[u, v] + slack
            if near.any():
                best = max(best, int(dS[near].max()))
    return best


def count_pointed_paths(adj: np.ndarray, perms: np.ndarray, length: int) -> int:
    """G-orbits of pairs of walks of length <= ``length`` from a common
    vertex (Burnside count)."""
    total = 0
    for p in perms:
        fixed = p == np.arange(len(p))
        A = adj * np.outer(fixed, fixed)
        w = fixed.astype(object)
        acc = w.copy()
        Ao = A.astype(object)
        for _ in range(length):
            w = Ao.dot(w)
            acc = acc + w
        total += int(sum(x * x for x in acc))
    if total % len(perms):
        raise InvariantViolation("Burnside count is not an integer")
    return total // len(perms)


def intersection_proximity(g: nx.Graph, perms: np.ndarray | None, A: Iterable, B: Iterable, r: int,
                           M0: int | None = None, cap: int = 10**7) -> dict:
    """Check d(p, A ∩ B) <= R whenever max(d(p,A), d(p,B)) <= r."""
    nodes = list(g.nodes)
    idx = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    if perms is None:
        perms = np.arange(n)[None, :]
    A = {idx[a] for a in A}
    B = {idx[b] for b in B}
    if not A or not B or not (A & B):
        raise InputError("hypothesis failed", "A ∩ B is empty")
    for name, S in (("A", A), ("B", B)):
        for p in perms:
            img = {int(p[x]) for x in S}
            if img & S and img != S:
                return {"ok": False, "reason": f"translate of {name} meets {name} without equality"}
    D = nx.floyd_warshall_numpy(g, nodelist=nodes).astype(np.int64)
    if M0 is None:
        M0 = max(coarse_gauge(D, sorted(A), 2 * r), coarse_gauge(D, sorted(B), 2 * r))
    adj = nx.to_numpy_array(g, nodelist=nodes, dtype=np.int64)
    R = count_pointed_paths(adj, perms, M0)
    AB = sorted(A & B)
    dA = D[:, sorted(A)].min(axis=1)
    dB = D[:, sorted(B)].min(axis=1)
    dAB = D[:, AB].min(axis=1)
    near = np.maximum(dA, dB) <= r
    worst = int(dAB[near].max()) if near.any() else 0
    return {"ok": worst <= R, "R": R, "M0": M0, "worst": worst, "r": r, "checked": int(near.sum())}
