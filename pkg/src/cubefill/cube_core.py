"""Finite cube complexes described by corner maps.

A cube of dimension n is a tuple of 2**n vertex indices; corner ``m`` is the
vertex at the point whose j-th coordinate is bit j of ``m``.  Faces are taken
by fixing some coordinates, so everything here is combinatorial.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import ComplexError


@dataclass
class Verdict:
    ok: bool
    reason: str = ""
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {"ok": self.ok, "reason": self.reason, "witness": self.witness}


@lru_cache(maxsize=None)
def face_patterns(n: int) -> tuple[tuple[tuple, tuple[int, ...]], ...]:
    """All faces of the standard n-cube.

    Each entry is ``(pattern, corner_indices)`` where pattern has one of
    0, 1 or None per coordinate (None = free) and corner_indices lists the
    corners of the face in its own corner order.
    """
    out = []
    for pat in itertools.product((0, 1, None), repeat=n):
        free = [j for j, p in enumerate(pat) if p is None]
        base = sum(1 << j for j, p in enumerate(pat) if p == 1)
        idx = []
        for m in range(1 << len(free)):
            c = base
            for i, j in enumerate(free):
                if m >> i & 1:
                    c |= 1 << j
            idx.append(c)
        out.append((pat, tuple(idx)))
    return tuple(out)


def pattern_corners(n: int, pat: Sequence) -> tuple[int, ...]:
    free = [j for j, p in enumerate(pat) if p is None]
    base = sum(1 << j for j, p in enumerate(pat) if p == 1)
    idx = []
    for m in range(1 << len(free)):
        c = base
        for i, j in enumerate(free):
            if m >> i & 1:
                c |= 1 << j
        idx.append(c)
    return tuple(idx)


def _edge_structure(corners: Sequence[int]) -> frozenset:
    n = len(corners).bit_length() - 1
    return frozenset(
        frozenset((corners[m], corners[m | 1 << j]))
        for m in range(len(corners))
        for j in range(n)
        if not m >> j & 1
    )


@dataclass(frozen=True)
class Hyperplane:
    id: int
    edges: tuple[int, ...]
    carrier: tuple[int, ...]


@dataclass
class LinkComplex:
    """Delta-complex of cells strictly containing ``owner``.

    ``simplices[k]`` lists ``(cell, vertex_tuple)`` for cofaces of dimension
    dim(owner) + k + 1; the vertices are cofaces one dimension up.
    """

    owner: int
    vertices: list[int]
    simplices: dict[int, list[tuple[int, tuple[int, ...]]]]

    @property
    def edges(self) -> list[tuple[int, tuple[int, ...]]]:
        return self.simplices.get(1, [])

    def graph(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for cell, (a, b) in self.edges:
            g.add_edge(a, b, cell=cell)
        return g


class CubeComplex:
    """Immutable finite cube complex with embedded cubes."""

    def __init__(self, vertex_names: Sequence[str], cubes: Iterable[Sequence[int]], close: bool = True):
        self.vertex_names = list(vertex_names)
        raw: dict[frozenset, tuple[int, ...]] = {}
        structure: dict[frozenset, frozenset] = {}
        declared = []
        for k, c in enumerate(cubes):
            c = tuple(int(v) for v in c)
            if len(c) & (len(c) - 1) or not c:
                raise ComplexError("malformed", "corner count is not a power of two", f"cubes[{k}]")
            if len(set(c)) != len(c):
                raise ComplexError("corner collision", "corners of a cube must be distinct", f"cubes[{k}]")
            declared.append(frozenset(c))
            todo = [f for f in face_patterns(len(c).bit_length() - 1)] if close else [(None, tuple(range(len(c))))]
            for _, idx in todo:
                face = tuple(c[i] for i in idx)
                key = frozenset(face)
                es = _edge_structure(face)
                if key in raw:
                    if structure[key] != es:
                        raise ComplexError(
                            "corner collision",
                            "two cubes share a corner set with different edge structure",
                            f"cubes[{k}]",
                        )
                    continue
                raw[key] = face
                structure[key] = es
        for v in range(len(self.vertex_names)):
            raw.setdefault(frozenset((v,)), (v,))
        names = self.vertex_names
        order = sorted(raw, key=lambda s: (len(s), sorted(names[v] for v in s)))
        self.cells: list[tuple[int, ...]] = [raw[s] for s in order]
        self.index: dict[frozenset, int] = {s: i for i, s in enumerate(order)}
        self.dims = np.array([len(c).bit_length() - 1 for c in self.cells], dtype=np.int64)
        self.names = ["+".join(sorted(names[v] for v in c)) for c in self.cells]
        self.name_index = {n: i for i, n in enumerate(self.names)}
        self.vertex_cell = [self.index[frozenset((v,))] for v in range(len(names))]
        self.cell_vertex = {c: v for v, c in enumerate(self.vertex_cell)}

        if not close:
            for k, s in enumerate(declared):
                c = raw[s]
                n = len(c).bit_length() - 1
                if n < 2:
                    continue
                for j in range(n):
                    for side in (0, 1):
                        pat = [None] * n
                        pat[j] = side
                        f = frozenset(c[i] for i in pattern_corners(n, pat))
                        if f not in raw:
                            raise ComplexError("missing face", f"facet {j}:{side} not listed", f"cubes[{k}]")

        self.facets: list[list[tuple[int, int]]] = []
        self.faces: list[frozenset[int]] = []
        for c in self.cells:
            n = len(c).bit_length() - 1
            fs = []
            for j in range(n):
                pair = []
                for side in (0, 1):
                    pat = [None] * n
                    pat[j] = side
                    pair.append(self.index[frozenset(c[i] for i in pattern_corners(n, pat))])
                fs.append((pair[0], pair[1]))
            self.facets.append(fs)
            self.faces.append(frozenset(self.index[frozenset(c[i] for i in idx)] for _, idx in face_patterns(n)))
        self.cofaces: list[list[int]] = [[] for _ in self.cells]
        for t, fs in enumerate(self.faces):
            for s in fs:
                if s != t:
                    self.cofaces[s].append(t)
        for lst in self.cofaces:
            lst.sort()
        self._check_connected()

    # ------------------------------------------------------------------ basics
    def __len__(self) -> int:
        return len(self.cells)

    @property
    def dim(self) -> int:
        return int(self.dims.max()) if len(self.cells) else -1

    def cells_of_dim(self, d: int) -> list[int]:
        return [i for i in range(len(self.cells)) if self.dims[i] == d]

    def counts(self) -> list[int]:
        return [int((self.dims == d).sum()) for d in range(self.dim + 1)]

    def euler(self) -> int:
        return int(sum((-1) ** int(d) for d in self.dims))

    def corner_set(self, c: int) -> frozenset[int]:
        return frozenset(self.cells[c])

    def is_face(self, s: int, t: int) -> bool:
        return s in self.faces[t]

    def face_by_pattern(self, c: int, pat: Sequence) -> int:
        corners = self.cells[c]
        n = len(corners).bit_length() - 1
        return self.index[frozenset(corners[i] for i in pattern_corners(n, pat))]

    def face_pattern(self, s: int, t: int) -> tuple:
        """Pattern of ``s`` as a face of ``t``."""
        corners = self.cells[t]
        n = len(corners).bit_length() - 1
        target = frozenset(self.cells[s])
        for pat, idx in face_patterns(n):
            if len(idx) == len(target) and frozenset(corners[i] for i in idx) == target:
                return pat
        raise KeyError((s, t))

    def edge_along(self, c: int, j: int) -> int:
        corners = self.cells[c]
        return self.index[frozenset((corners[0], corners[1 << j]))]

    def skeleton(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.vertex_names)))
        for c in self.cells_of_dim(1):
            a, b = self.cells[c]
            g.add_edge(a, b, cell=c)
        return g

    def _check_connected(self) -> None:
        if len(self.vertex_names) <= 1:
            return
        if not nx.is_connected(self.skeleton()):
            raise ComplexError("disconnected complex", "1-skeleton is not connected")

    def to_dict(self) -> dict:
        top = [c for c in range(len(self.cells)) if not self.cofaces[c]]
        cubes = []
        for c in top:
            corners = self.cells[c]
            n = int(self.dims[c])
            cubes.append({
                "dim": n,
                "corners": {format_bits(m, n): self.vertex_names[v] for m, v in enumerate(corners)},
            })
        return {"vertices": list(self.vertex_names), "cubes": cubes}

    # ------------------------------------------------------------ structures
    def link(self, s: int) -> LinkComplex:
        d = int(self.dims[s])
        up = [t for t in self.cofaces[s]]
        verts = [t for t in up if self.dims[t] == d + 1]
        vset = set(verts)
        simp: dict[int, list] = {}
        for t in up:
            k = int(self.dims[t]) - d - 1
            if k == 0:
                continue
            vs = tuple(sorted(f for f in self.faces[t] if f in vset))
            simp.setdefault(k, []).append((t, vs))
        return LinkComplex(s, verts, simp)

    def hyperplanes(self) -> list[Hyperplane]:
        edges = self.cells_of_dim(1)
        parent = {e: e for e in edges}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for sq in self.cells_of_dim(2):
            for a, b in self.facets[sq]:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        classes: dict[int, list[int]] = {}
        for e in edges:
            classes.setdefault(find(e), []).append(e)
        edge_class = {}
        ordered = sorted(classes.values(), key=lambda es: min(es))
        for h, es in enumerate(ordered):
            for e in es:
                edge_class[e] = h
        carriers: list[set[int]] = [set() for _ in ordered]
        for c in range(len(self.cells)):
            for j in range(int(self.dims[c])):
                carriers[edge_class[self.edge_along(c, j)]].add(c)
        return [Hyperplane(h, tuple(sorted(es)), tuple(sorted(carriers[h]))) for h, es in enumerate(ordered)]

    def distance_matrix(self) -> np.ndarray:
        n = len(self.vertex_names)
        rows, cols = [], []
        for c in self.cells_of_dim(1):
            a, b = self.cells[c]
            rows += [a, b]
            cols += [b, a]
        m = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        d = shortest_path(m, unweighted=True, directed=False)
        return d.astype(np.int64)


def format_bits(m: int, n: int) -> str:
    return "".join(str(m >> j & 1) for j in range(n))


def parse_bits(s: str) -> int:
    return sum(1 << j for j, ch in enumerate(s) if ch == "1")


def validate(raw: dict, close: bool = True) -> CubeComplex:
    """Build a CubeComplex from the JSON complex format, checking invariants."""
    if not isinstance(raw, dict) or "cubes" not in raw:
        raise ComplexError("malformed", "expected an object with a 'cubes' list")
    names: list[str] = []
    seen: dict[str, int] = {}

    def vid(x) -> int:
        x = str(x)
        if x not in seen:
            seen[x] = len(names)
            names.append(x)
        return seen[x]

    for v in raw.get("vertices", []) or []:
        vid(v)
    cubes = []
    for k, rec in enumerate(raw["cubes"]):
        where = f"cubes[{k}]"
        if not isinstance(rec, dict) or "corners" not in rec:
            raise ComplexError("malformed", "cube record needs 'corners'", where)
        corners = rec["corners"]
        n = rec.get("dim")
        if n is None:
            n = len(next(iter(corners))) if corners else 0
        if not isinstance(n, int) or n < 0:
            raise ComplexError("malformed", "bad dim", f"{where}.dim")
        if len(corners) != 1 << n:
            raise ComplexError("malformed", f"expected {1 << n} corners, got {len(corners)}", f"{where}.corners")
        tup = [None] * (1 << n)
        for bits, v in corners.items():
            if n == 0 and bits == "":
                m = 0
            else:
                if len(bits) != n or set(bits) - {"0", "1"}:
                    raise ComplexError("malformed", f"bad bitstring {bits!r}", f"{where}.corners")
                m = parse_bits(bits)
            if tup[m] is not None:
                raise ComplexError("malformed", f"repeated bitstring {bits!r}", f"{where}.corners")
            tup[m] = vid(v)
        cubes.append(tup)
    if not names:
        raise ComplexError("malformed", "complex has no vertices")
    return CubeComplex(names, cubes, close=close)


def from_cubes(cubes: Iterable[dict | Sequence], vertices: Sequence[str] | None = None) -> CubeComplex:
    """Convenience constructor: each cube is either a corner list of vertex
    names (corner m at position m) or a JSON-style record."""
    recs = []
    for c in cubes:
        if isinstance(c, dict):
            recs.append(c)
        else:
            c = list(c)
            n = len(c).bit_length() - 1
            recs.append({"dim": n, "corners": {format_bits(m, n): str(v) for m, v in enumerate(c)}})
    return validate({"vertices": list(vertices or []), "cubes": recs})


# ---------------------------------------------------------------- link tests
def link_loops(X: CubeComplex, s: int) -> dict | None:
    """First short loop problem in the link of cell ``s`` or None."""
    d = int(X.dims[s])
    verts = [t for t in X.cofaces[s] if X.dims[t] == d + 1]
    vset = set(verts)
    ends: dict[int, tuple[int, ...]] = {}
    for t in X.cofaces[s]:
        if X.dims[t] == d + 2:
            ends[t] = tuple(sorted(f for f in X.faces[t] if f in vset))
    by_pair: dict[tuple, int] = {}
    for e, vs in ends.items():
        if len(vs) != 2 or vs[0] == vs[1]:
            return {"cell": s, "length": 1, "loop": [e]}
        if vs in by_pair:
            return {"cell": s, "length": 2, "loop": [by_pair[vs], e], "vertices": list(vs)}
        by_pair[vs] = e
    filled = set()
    for t in X.cofaces[s]:
        if X.dims[t] == d + 3:
            filled.add(frozenset(f for f in X.faces[t] if f in vset))
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for a, b in by_pair:
        adj[a].add(b)
        adj[b].add(a)
    for a in verts:
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a] & adj[b]:
                if c <= b:
                    continue
                if frozenset((a, b, c)) not in filled:
                    return {
                        "cell": s,
                        "length": 3,
                        "loop": [by_pair[(a, b)], by_pair[tuple(sorted((b, c)))], by_pair[(a, c)]],
                        "vertices": [a, b, c],
                    }
    return None


def is_npc(X: CubeComplex) -> Verdict:
    for s in range(len(X.cells)):
        w = link_loops(X, s)
        if w is not None:
            w = dict(w, cell_name=X.names[s])
            return Verdict(False, f"length-{w['length']} loop in a link", w)
    return Verdict(True)


# --------------------------------------------------------------- CAT(0) test
def interval_bitsets(D: np.ndarray) -> np.ndarray:
    """T[u, v] = packed bitmask of the interval I(u, v)."""
    n = D.shape[0]
    words = (n + 63) // 64
    T = np.zeros((n, n, words), dtype=np.uint64)
    for u in range(n):
        mask = (D[u][None, :] + D) == D[u][:, None]
        packed = np.packbits(mask, axis=1, bitorder="little")
        pad = words * 8 - packed.shape[1]
        if pad:
            packed = np.pad(packed, ((0, 0), (0, pad)))
        T[u] = packed.view(np.uint64).reshape(n, words)
    return T


def median_check(D: np.ndarray) -> dict | None:
    """Return a triple without a unique median, or None for a median graph."""
    n = D.shape[0]
    if n <= 2:
        return None
    T = interval_bitsets(D)
    for u in range(n - 2):
        A = T[u, u + 1:]
        cnt = np.bitwise_count(A[:, None, :] & A[None, :, :] & T[u + 1:, u + 1:]).sum(axis=2)
        iu = np.triu_indices(n - u - 1, k=1)
        vals = cnt[iu]
        bad = np.nonzero(vals != 1)[0]
        if len(bad):
            v, w = iu[0][bad[0]] + u + 1, iu[1][bad[0]] + u + 1
            return {"triple": [u, int(v), int(w)], "medians": int(vals[bad[0]])}
    return None


def unfilled_four_cycle(X: CubeComplex) -> dict | None:
    squares = {X.corner_set(c) for c in X.cells_of_dim(2)}
    g = X.skeleton()
    for a in g.nodes:
        for c in g.nodes:
            if c <= a:
                continue
            common = sorted(set(g[a]) & set(g[c]))
            for b, d in itertools.combinations(common, 2):
                if frozenset((a, b, c, d)) not in squares:
                    return {"cycle": [a, b, c, d]}
    return None


def uncompleted_cube(X: CubeComplex, max_dim: int | None = None) -> dict | None:
    """Look for an induced cube graph with all squares filled but no cube."""
    fourth: dict[tuple[int, frozenset], int] = {}
    for sq in X.cells_of_dim(2):
        c = X.cells[sq]
        for m in range(4):
            fourth[(c[m], frozenset((c[m ^ 1], c[m ^ 2])))] = c[m ^ 3]
    cubes = {X.corner_set(c) for c in range(len(X.cells))}
    g = X.skeleton()
    top = max_dim if max_dim is not None else max((d for _, d in g.degree), default=0)
    for v in g.nodes:
        nbrs = sorted(g[v])
        lg = nx.Graph()
        lg.add_nodes_from(nbrs)
        for a, b in itertools.combinations(nbrs, 2):
            if (v, frozenset((a, b))) in fourth:
                lg.add_edge(a, b)
        for clique in nx.enumerate_all_cliques(lg):
            k = len(clique)
            if k < 3:
                continue
            if k > top:
                break
            corner = {0: v}
            for i, u in enumerate(clique):
                corner[1 << i] = u
            ok = True
            for m in sorted(range(1 << k), key=lambda x: bin(x).count("1")):
                if m in corner:
                    continue
                bits = [i for i in range(k) if m >> i & 1]
                vals = set()
                for i, j in itertools.combinations(bits, 2):
                    base = corner[m & ~(1 << i) & ~(1 << j)]
                    key = (base, frozenset((corner[m & ~(1 << i)], corner[m & ~(1 << j)])))
                    vals.add(fourth.get(key))
                if len(vals) != 1 or None in vals:
                    ok = False
                    break
                corner[m] = vals.pop()
            if not ok or len(set(corner.values())) != 1 << k:
                continue
            if frozenset(corner.values()) not in cubes:
                return {"vertex": v, "corners": [corner[m] for m in range(1 << k)]}
    return None


def is_cat0(X: CubeComplex) -> Verdict:
    npc = is_npc(X)
    if not npc:
        return Verdict(False, "not npc: " + npc.reason, npc.witness)
    med = median_check(X.distance_matrix())
    if med is not None:
        return Verdict(False, "1-skeleton is not a median graph", med)
    cyc = unfilled_four_cycle(X)
    if cyc is not None:
        return Verdict(False, "unfilled 4-cycle in the 1-skeleton", cyc)
    cube = uncompleted_cube(X)
    if cube is not None:
        return Verdict(False, "cube graph with filled squares but no cube", cube)
    return Verdict(True)


# ------------------------------------------------------- fundamental group
def _reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    while len(out) > 1 and out[0] == -out[-1]:
        out = out[1:-1]
    return out


def _inverse(word: list[int]) -> list[int]:
    return [-x for x in reversed(word)]


def presentation(X: CubeComplex) -> tuple[list[int], list[list[int]]]:
    """Edge-path presentation of pi_1 from a BFS spanning tree.

    Generators are non-tree edges (signed by corner order), relators are
    boundaries of squares.
    """
    g = X.skeleton()
    tree = set()
    if g.number_of_nodes() > 1:
        for a, b in nx.bfs_edges(g, 0):
            tree.add(g[a][b]["cell"])
    gens = [e for e in X.cells_of_dim(1) if e not in tree]
    gid = {e: i + 1 for i, e in enumerate(gens)}

    def step(a: int, b: int) -> list[int]:
        e = X.index[frozenset((a, b))]
        if e in tree:
            return []
        s = gid[e]
        return [s] if X.cells[e][0] == a else [-s]

    rels = []
    for sq in X.cells_of_dim(2):
        c = X.cells[sq]
        cyc = [c[0], c[1], c[3], c[2], c[0]]
        w = []
        for a, b in zip(cyc, cyc[1:]):
            w += step(a, b)
        rels.append(w)
    return gens, rels


def simply_connected(X: CubeComplex, cap: int = 10000) -> tuple[str, dict]:
    """Return ('verified' | 'refuted' | 'unknown', details)."""
    gens, rels = presentation(X)
    alive = set(range(1, len(gens) + 1))
    rels = [r for r in (_reduce(r) for r in rels) if r]
    steps = 0
    while alive and steps < cap:
        steps += 1
        best = None
        for ri, r in enumerate(rels):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for x, k in counts.items():
                if k == 1 and (best is None or len(r) < best[0]):
                    best = (len(r), ri, x)
        if best is None:
            break
        _, ri, x = best
        r = rels.pop(ri)
        pos = next(i for i, y in enumerate(r) if abs(y) == x)
        r = r[pos:] + r[:pos]
        rest = r[1:]
        image = _inverse(rest) if r[0] > 0 else rest
        new = []
        total = 0
        for w in rels:
            out = []
            for y in w:
                if y == x:
                    out += image
                elif y == -x:
                    out += _inverse(image)
                else:
                    out.append(y)
            out = _reduce(out)
            total += len(out)
            if out:
                new.append(out)
        rels = new
        alive.discard(x)
        if total > 50 * cap:
            break
    info = {"generators": len(gens), "relators": len(rels), "remaining": len(alive), "steps": steps}
    if not alive:
        return "verified", info
    order = sorted(alive)
    col = {x: i for i, x in enumerate(order)}
    rank_def, torsion = _abelianization(rels, col, len(order))
    info.update(h1_free_rank=rank_def, h1_torsion=torsion)
    if rank_def > 0 or torsion:
        return "refuted", info
    return "unknown", info


def _abelianization(rels: list[list[int]], col: dict[int, int], n: int) -> tuple[int, list[int]]:
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form

    if not rels:
        return n, []
    rows = []
    for r in rels:
        row = [0] * n
        for y in r:
            if abs(y) in col:
                row[col[abs(y)]] += 1 if y > 0 else -1
        rows.append(row)
    M = Matrix(rows)
    snf = smith_normal_form(M, domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d != 0]
    return n - len(nonzero), [d for d in nonzero if d > 1]


# --------------------------------------------------------------- subdivision
@dataclass
class Subdivision:
    """The cubical subdivision X^b with index maps back to X."""

    base: CubeComplex
    complex: CubeComplex
    pair_of: list[tuple[int, int]]
    cell_of_pair: dict[tuple[int, int], int]
    vertex_of_cell: list[int]
    _hyperplanes: list[Hyperplane] | None = field(default=None, repr=False)

    def hyperplanes(self) -> list[Hyperplane]:
        if self._hyperplanes is None:
            self._hyperplanes = self.complex.hyperplanes()
        return self._hyperplanes

    def hyperplane_carrier_split(self, W: Hyperplane | int) -> tuple[frozenset[int], frozenset[int]]:
        if isinstance(W, int):
            W = self.hyperplanes()[W]
        Xb = self.complex
        edges = set(W.edges)
        up, down = set(), set()
        for c in W.carrier:
            js = [j for j in range(int(Xb.dims[c])) if Xb.edge_along(c, j) in edges]
            if len(js) != 1:
                raise ComplexError("not a subdivision hyperplane", f"cell {c} crosses W {len(js)} times")
            lo, hi = Xb.facets[c][js[0]]
            up.add(hi)
            down.add(lo)
        for e in edges:
            a, b = Xb.cells[e]
            sa, sb = self.pair_of[Xb.vertex_cell[a]][0], self.pair_of[Xb.vertex_cell[b]][0]
            if not self.base.dims[sb] == self.base.dims[sa] + 1:
                raise ComplexError("not a subdivision hyperplane", f"edge {e} is not oriented upwards")
        return frozenset(up), frozenset(down)


def cubical_subdivision(X: CubeComplex) -> Subdivision:
    cubes = []
    for t in range(len(X.cells)):
        n = int(X.dims[t])
        for pat, _ in face_patterns(n):
            fixed = [j for j, p in enumerate(pat) if p is not None]
            corners = []
            for m in range(1 << len(fixed)):
                q = list(pat)
                for i, j in enumerate(fixed):
                    if m >> i & 1:
                        q[j] = None
                corners.append(X.face_by_pattern(t, q))
            cubes.append(corners)
    Xb = CubeComplex([f"[{n}]" for n in X.names], cubes)
    pair_of = []
    for c in Xb.cells:
        lo = min(c, key=lambda s: X.dims[s])
        hi = max(c, key=lambda s: X.dims[s])
        pair_of.append((lo, hi))
    cell_of_pair = {p: i for i, p in enumerate(pair_of)}
    vertex_of_cell = [Xb.vertex_cell[s] for s in range(len(X.cells))]
    return Subdivision(X, Xb, pair_of, cell_of_pair, vertex_of_cell)


def hyperplane_cut_check(X: CubeComplex, W: Hyperplane) -> int:
    """Number of components after deleting the dual edges of W."""
    g = X.skeleton()
    for e in W.edges:
        a, b = X.cells[e]
        g.remove_edge(a, b)
    return nx.number_connected_components(g)
