"""The category CG(Y), its concrete covers, path lifting, base paths and
the link-edge and corner data built from them."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .cube_core import Verdict
from .errors import InputError, InvariantViolation
from .grp_action import ComplexOfGroups, FiniteGroup
from .scwol_cat import (FiniteCategory, Functor, Path, check_functor, elementary_homotopy,
                        is_covering, path_objects)

# A CG(Y) arrow is a pair (g, a) with a an arrow id of Y (units included).
Arrow = tuple


class CGY:
    """CG(Y) with composition (g,a)(h,b) = (g psi_a(h) z(a,b), ab)."""

    def __init__(self, C: ComplexOfGroups):
        self.C = C
        self.G = C.G
        self.Y = C.Y

    def src(self, x: Arrow) -> int:
        return self.Y.src(x[1])

    def dst(self, x: Arrow) -> int:
        return self.Y.dst(x[1])

    def unit(self, v: int) -> Arrow:
        return (0, v)

    def is_unit(self, x: Arrow) -> bool:
        return x[0] == 0 and self.Y.is_unit(x[1])

    def is_group_arrow(self, x: Arrow) -> bool:
        return self.Y.is_unit(x[1])

    def compose(self, x: Arrow, y: Arrow) -> Arrow | None:
        (g, a), (h, b) = x, y
        ab = self.Y.compose(a, b)
        if ab is None:
            return None
        G = self.G
        return (int(G.mul[G.mul[g, self.C.psi(a, h)], self.C.z(a, b)]), ab)

    def arrows_from(self, v: int) -> list[Arrow]:
        out = []
        for a in self.Y.out_arrows[v]:
            out += [(g, a) for g in sorted(self.C.local[self.Y.dst(a)])]
        return out

    def arrow_count(self) -> int:
        return sum(len(self.C.local[self.Y.dst(a)]) for a in range(self.Y.n_arrows))

    @cached_property
    def explicit(self) -> FiniteCategory:
        nY = self.Y.n_objects
        labels, src, dst = [], [], []
        index: dict[Arrow, int] = {(0, v): v for v in range(nY)}
        for v in range(nY):
            for x in self.arrows_from(v):
                if self.is_unit(x):
                    continue
                index[x] = nY + len(labels)
                labels.append(x)
                src.append(self.src(x))
                dst.append(self.dst(x))
        compose = {}
        for y in labels:
            for x in self.arrows_from(self.dst(y)):
                if self.is_unit(x):
                    continue
                compose[(index[x], index[y])] = index[self.compose(x, y)]
        cat = FiniteCategory(list(range(nY)), src, dst, compose, labels=labels)
        cat.index = index
        return cat

    def check_associativity(self, cap: int = 200_000) -> Verdict:
        """Exhaustive over composable triples while the count stays under cap."""
        Y, n = self.Y, 0
        for c in range(Y.n_arrows):
            for b in Y.out_arrows[Y.dst(c)]:
                for a in Y.out_arrows[Y.dst(b)]:
                    for g, h, k in itertools.product(self.C.local[Y.dst(a)], self.C.local[Y.dst(b)],
                                                     self.C.local[Y.dst(c)]):
                        n += 1
                        if n > cap:
                            return Verdict(True, "cap reached", {"checked": n - 1})
                        x, y, w = (g, a), (h, b), (k, c)
                        if self.compose(self.compose(x, y), w) != self.compose(x, self.compose(y, w)):
                            return Verdict(False, "composition not associative", {"triple": [x, y, w]})
        return Verdict(True, "", {"checked": n})


def build_cgy(C: ComplexOfGroups) -> CGY:
    return CGY(C)


# ------------------------------------------------------------------ covers
class Cover:
    """The cover C_K realised concretely: objects (yK, v) with Theta = y.lift(v).

    An arrow labelled (k, a) leaves (y, i(a)) and ends at (y h_a^-1 k^-1, t(a)).
    """

    def __init__(self, C: ComplexOfGroups, K: Iterable[int] | None = None):
        self.C = C
        self.cgy = CGY(C)
        G = self.G = C.G
        self.K = frozenset(K) if K is not None else frozenset({0})
        if not G.is_normal(self.K):
            raise InputError("not normal", "K is not normal in G")
        cos = sorted(G.cosets(self.K), key=min)
        self.coset_of = np.empty(len(G), dtype=np.int64)
        for i, c in enumerate(cos):
            self.coset_of[list(c)] = i
        self.coset_rep = np.array([min(c) for c in cos], dtype=np.int64)
        self.n_cosets = len(cos)

    # objects are encoded as (coset rep element, v)
    @property
    def n_objects(self) -> int:
        return self.n_cosets * self.C.n_objects

    def obj_id(self, o: tuple[int, int]) -> int:
        return int(self.coset_of[o[0]]) * self.C.n_objects + o[1]

    def obj(self, i: int) -> tuple[int, int]:
        nY = self.C.n_objects
        return int(self.coset_rep[i // nY]), i % nY

    def norm(self, y: int) -> int:
        return int(self.coset_rep[self.coset_of[y]])

    def step(self, o: tuple[int, int], tok) -> tuple[int, int]:
        (k, a), s = tok
        y, v = o
        Y, G, h = self.C.Y, self.G, int(self.C.h[a])
        if s < 0:
            if Y.src(a) != v:
                raise InputError("bad path", f"token {tok} does not start at object {v}")
            y2 = int(G.mul[G.mul[y, G.inv[h]], G.inv[k]])
            return self.norm(y2), Y.dst(a)
        if Y.dst(a) != v:
            raise InputError("bad path", f"token {tok} does not start at object {v}")
        y2 = int(G.mul[G.mul[y, k], h])
        return self.norm(y2), Y.src(a)

    def lift(self, p: Path, start: tuple[int, int]) -> list[tuple[int, int]]:
        if start[1] != p.base:
            raise InputError("bad path", "start object does not project to i(p)")
        objs = [(self.norm(start[0]), start[1])]
        for tok in p.tokens:
            objs.append(self.step(objs[-1], tok))
        return objs

    def theta(self, o: tuple[int, int]) -> int:
        """Chain object of idealize(X) for a K = {1} cover object."""
        y, v = o
        return int(self.C.objperm[y, self.C.lift[v]])

    def theta_arrow(self, o: tuple[int, int], x: Arrow) -> tuple[int, int] | None:
        """X-arrow (as a pair of chain objects) under an arrow leaving o, or
        None for group arrows."""
        k, a = x
        if self.C.Y.is_unit(a):
            return None
        y, u = o
        _, pos = self.C.Y.labels[a]
        top = self.C.lift_chain[u]
        sub = self.C.ideal.chain_index[tuple(top[p] for p in pos)]
        return int(self.C.objperm[y, self.C.lift[u]]), int(self.C.objperm[y, sub])

    # ---------------------------------------------------------- explicit
    @cached_property
    def explicit(self) -> FiniteCategory:
        C, cgy = self.C, self.cgy
        n = self.n_objects
        labels, src, dst = [], [], []
        index: dict[tuple[int, Arrow], int] = {}
        for i in range(n):
            o = self.obj(i)
            for x in cgy.arrows_from(o[1]):
                if cgy.is_unit(x):
                    index[(i, x)] = i
                    continue
                index[(i, x)] = n + len(labels)
                labels.append((i, x))
                src.append(i)
                dst.append(self.obj_id(self.step(o, (x, -1))))
        compose = {}
        for j, (i, y) in enumerate(labels):
            mid = dst[j]
            for x in cgy.arrows_from(self.obj(mid)[1]):
                if cgy.is_unit(x):
                    continue
                xy = cgy.compose(x, y)
                ab = index[(i, xy)]
                if ab >= n and dst[ab - n] != dst[index[(mid, x)] - n]:
                    raise InvariantViolation("composite in the cover has the wrong target")
                compose[(index[(mid, x)], n + j)] = ab
        cat = FiniteCategory([self.obj(i) for i in range(n)], src, dst, compose, labels=labels)
        cat.index = index
        return cat

    def projection(self) -> Functor:
        S = self.explicit
        T = self.cgy.explicit
        obj = [i % self.C.n_objects for i in range(S.n_objects)]
        arr = list(obj)
        for i, x in S.labels[S.n_objects:]:
            arr.append(T.index[x])
        return Functor(S, T, obj, arr)

    def check_covering(self) -> Verdict:
        F = self.projection()
        fv = check_functor(F)
        if not fv:
            return fv
        return is_covering(F, check=False)

    def check_deck_action(self) -> Verdict:
        """Left multiplication commutes with lifting and is free."""
        C, G = self.C, self.G
        toks = []
        for v in range(C.n_objects):
            toks += [(v, (x, -1)) for x in self.cgy.arrows_from(v)]
        for g in G.elements:
            for i in range(self.n_objects):
                y, v = self.obj(i)
                gy = self.norm(int(G.mul[g, y]))
                if self.coset_of[g] != 0 and gy == y:
                    return Verdict(False, "deck action not free", {"element": g, "object": [y, v]})
            for v, tok in toks:
                for y in map(int, self.coset_rep):
                    a = self.step((y, v), tok)
                    b = self.step((int(G.mul[g, y]), v), tok)
                    if self.norm(int(G.mul[g, a[0]])) != b[0] or a[1] != b[1]:
                        return Verdict(False, "deck action does not commute with arrows", {"element": g})
        return Verdict(True)

    def fiber_sizes(self) -> dict[int, int]:
        return {v: self.n_cosets for v in range(self.C.n_objects)}


def build_cover(C: ComplexOfGroups, K: Iterable[int] | None = None) -> Cover:
    if K is not None:
        from .grp_action import co_cubical

        cv = co_cubical(C.A, K)
        if not cv:
            raise InputError("not co-cubical", cv.reason)
    return Cover(C, K)


def lift_path(cover: Cover, p: Path, start: tuple[int, int]) -> list[tuple[int, int]]:
    return cover.lift(p, start)


# ------------------------------------------------- quotient by invertibles
def k_orbit_scwol(C: ComplexOfGroups, K: Iterable[int]) -> tuple[FiniteCategory, np.ndarray, list[int]]:
    """The quotient scwol idealize(X)/K with the orbit map on chain objects."""
    rows = C.objperm[sorted(K)]
    ideal = C.ideal
    n = len(ideal.chains)
    orbit = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for c in range(n):
        if orbit[c] < 0:
            orbit[np.unique(rows[:, c])] = len(reps)
            reps.append(c)
    src, dst, labels = [], [], []
    index: dict[tuple[int, tuple], int] = {}
    nZ = len(reps)
    for o, r in enumerate(reps):
        L = len(ideal.chains[r])
        for k in range(1, L):
            for pos in itertools.combinations(range(L), k):
                sub = ideal.chain_index[tuple(ideal.chains[r][p] for p in pos)]
                index[(o, pos)] = nZ + len(src)
                src.append(o)
                dst.append(int(orbit[sub]))
                labels.append((o, pos))
    # orbit representative transport for composition
    trK = {}
    Kl = sorted(K)
    for o, r in enumerate(reps):
        for g in reversed(Kl):
            trK[int(C.objperm[g, r])] = g
    compose = {}
    for (o, pb), b in index.items():
        r = reps[o]
        sub = ideal.chain_index[tuple(ideal.chains[r][p] for p in pb)]
        x = int(orbit[sub])
        g = trK[sub]
        # g . reps[x] = sub, and g preserves chain order
        Lx = len(ideal.chains[reps[x]])
        for k in range(1, Lx):
            for pa in itertools.combinations(range(Lx), k):
                compose[(index[(x, pa)], b)] = index[(o, tuple(pb[i] for i in pa))]
        del g
    cat = FiniteCategory(list(range(nZ)), src, dst, compose, labels=labels)
    cat.index = index
    cat.reps = reps
    return cat, orbit, reps


def invertible_quotient_check(cover: Cover) -> dict:
    """Quotient the cover by its group arrows and compare with idealize(X)/K.

    Returns counts and a verdict; raises nothing.
    """
    C, G = cover.C, cover.G
    cat = cover.explicit
    n = cat.n_objects
    Z, zorb, _ = k_orbit_scwol(C, cover.K)
    parent = list(range(cat.n_arrows))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    group = [a < n or C.Y.is_unit(cat.labels[a][1][1]) for a in range(cat.n_arrows)]
    # object classes from group arrows
    for a in range(n, cat.n_arrows):
        if group[a]:
            union(cat.src(a), cat.dst(a))
    obj_class = {i: find(i) for i in range(n)}
    parent = list(range(cat.n_arrows))
    for a in range(n, cat.n_arrows):
        if group[a]:
            continue
        for r in cat.out_arrows[cat.dst(a)]:
            if group[r] and r >= n:
                union(a, cat.compose(r, a))
        for r in cat.in_arrows[cat.src(a)]:
            if group[r] and r >= n:
                union(a, cat.compose(a, r))
    arrow_class = {a: find(a) for a in range(n, cat.n_arrows) if not group[a]}

    def theta_obj(i):
        return int(zorb[cover.theta(cat.objects[i])])

    def theta_arr(a):
        i, x = cat.labels[a]
        c1, c2 = cover.theta_arrow(cat.objects[i], x)
        o1 = int(zorb[c1])
        rep_chain = C.ideal.chains[Z.reps[o1]]
        # move c1 onto its K-representative to read positions
        ch1 = C.ideal.chains[c1]
        ch2 = set(C.ideal.chains[c2])
        pos = tuple(k for k, c in enumerate(ch1) if c in ch2)
        assert len(rep_chain) == len(ch1)
        return Z.index[(o1, pos)]

    ok = True
    reason = ""
    img_obj: dict[int, int] = {}
    for i, cl in obj_class.items():
        t = theta_obj(i)
        if img_obj.setdefault(cl, t) != t:
            ok, reason = False, "Theta not constant on an object class"
    img_arr: dict[int, int] = {}
    for a, cl in arrow_class.items():
        t = theta_arr(a)
        if img_arr.setdefault(cl, t) != t:
            ok, reason = False, "Theta not constant on an arrow class"
    if ok and sorted(img_obj.values()) != list(range(Z.n_objects)):
        ok, reason = False, "object classes are not in bijection with the quotient scwol"
    if ok and sorted(img_arr.values()) != list(Z.nontrivial()):
        ok, reason = False, "arrow classes are not in bijection with the quotient scwol"
    if ok:
        for (x, y), xy in cat._compose.items():
            if group[x] or group[y]:
                continue
            if Z.compose(theta_arr(x), theta_arr(y)) != theta_arr(xy):
                ok, reason = False, "Theta does not preserve composition"
                break
    fibers = {}
    for i, cl in obj_class.items():
        fibers.setdefault(cat.objects[i][1], set()).add(cl)
    return {
        "ok": ok,
        "reason": reason,
        "object_classes": len(set(obj_class.values())),
        "arrow_classes": len(set(arrow_class.values())),
        "quotient_objects": Z.n_objects,
        "quotient_arrows": len(Z.nontrivial()),
        "fibers": {v: len(s) for v, s in fibers.items()},
    }


# ----------------------------------------------------------- base paths
class BasePaths:
    """Maximal tree in Y, base paths c_v and the elements x_v, Q_v."""

    def __init__(self, C: ComplexOfGroups, cover: Cover | None = None, v0: int = 0):
        self.C = C
        self.cover = cover if cover is not None else Cover(C)
        if len(self.cover.K) != 1:
            raise InputError("bad cover", "base paths need the K = {1} cover")
        Y = C.Y
        if len(C.lift_chain[v0]) != 1 or C.X.dims[C.lift_chain[v0][0]] != 0:
            raise InputError("bad base", "v0 must be a vertex object")
        self.v0 = v0
        g = nx.Graph()
        g.add_nodes_from(range(Y.n_objects))
        for a in Y.nontrivial():
            u, w = Y.src(a), Y.dst(a)
            if not g.has_edge(u, w):
                g.add_edge(u, w, arrow=a)
        self.tree_parent: dict[int, tuple[int, int]] = {}
        for u, w in nx.bfs_edges(g, v0):
            self.tree_parent[w] = (u, g[u][w]["arrow"])
        if len(self.tree_parent) != Y.n_objects - 1:
            raise InvariantViolation("Y is not connected")
        self.paths: dict[int, Path] = {}
        for v in range(Y.n_objects):
            self.paths[v] = self._c(v)
        self.x = {}
        for v, p in self.paths.items():
            end = self.cover.lift(p, (0, v0))[-1]
            assert end[1] == v
            self.x[v] = end[0]

    def _tree_path(self, v: int) -> Path:
        toks = []
        w = v
        while w != self.v0:
            u, a = self.tree_parent[w]
            # step from u to w along arrow a
            sign = -1 if self.C.Y.src(a) == u else 1
            toks.append(((0, a), sign))
            w = u
        return Path(self.v0, tuple(reversed(toks)))

    def _c(self, v: int) -> Path:
        C = self.C
        chain = C.lift_chain[v]
        if len(chain) == 1:
            return self._tree_path(v)
        first = C.object_of_chain(chain[:1])
        toks = list(self._tree_path(first).tokens)
        for k in range(2, len(chain) + 1):
            u = C.object_of_chain(chain[:k])
            toks.append(((0, C.drop(u, -1)), 1))
        return Path(self.v0, tuple(toks))

    def c(self, v: int) -> Path:
        return self.paths[v]

    def Q(self, v: int) -> frozenset:
        return self.C.G.conj_set(self.x[v], self.C.local[v])

    def ell(self, p: Path) -> int:
        """Group element represented by c_{i(p)} . p . reverse(c_{t(p)})."""
        G = self.C.G
        objs = self.cover.lift(p, (self.x[p.base], p.base))
        y, w = objs[-1]
        return int(G.mul[y, G.inv[self.x[w]]])

    def eval_loop(self, p: Path) -> int:
        return eval_loop(self.cover, p, self.v0)


def eval_loop(cover: Cover, p: Path, v0: int = 0) -> int:
    if len(cover.K) != 1:
        raise InputError("bad cover", "eval_loop needs the K = {1} cover")
    if p.base != v0:
        raise InputError("not a loop", "path does not start at v0")
    end = cover.lift(p, (0, v0))[-1]
    if end[1] != v0:
        raise InputError("not a loop", "path does not end at v0")
    return end[0]


def random_loop(bp: BasePaths, rng: random.Random, length: int = 6) -> Path:
    """Random CG(Y)-path from v0 closed up by a base path."""
    cgy = CGY(bp.C)
    Y = bp.C.Y
    v = bp.v0
    toks = []
    for _ in range(length):
        opts = [(x, -1) for x in cgy.arrows_from(v)]
        for a in Y.in_arrows[v]:
            opts += [((g, a), 1) for g in sorted(bp.C.local[v])]
        tok = rng.choice(opts)
        toks.append(tok)
        (k, a), s = tok
        v = Y.dst(a) if s < 0 else Y.src(a)
    back = [(x, -s) for x, s in reversed(bp.c(v).tokens)]
    return Path(bp.v0, tuple(toks + back))


# ---------------------------------------------------- path normal forms
def normalize(cgy: CGY, p: Path) -> Path:
    """Rewrite into group and scwol arrows only, by elementary homotopies."""
    G = cgy.G
    i = 0
    while i < len(p.tokens):
        (g, a), s = p.tokens[i]
        Y = cgy.Y
        if not Y.is_unit(a) and g != 0:
            t = Y.dst(a)
            p = elementary_homotopy(cgy, p, "split", i, arrows=((g, t), (0, a)))
            continue
        if Y.is_unit(a) and g == 0:
            p = elementary_homotopy(cgy, p, "unit_delete", i)
            continue
        if Y.is_unit(a) and s < 0:
            v = Y.src(a)
            gi = int(G.inv[g])
            p = elementary_homotopy(cgy, p, "uncancel", i, arrows=(gi, v), sign=1)
            # now (gi,1)^+ (gi,1)^- (g,1)^- ; merge the last two into (1,1)^-
            p = elementary_homotopy(cgy, p, "merge", i + 1)
            p = elementary_homotopy(cgy, p, "unit_delete", i + 1)
            i += 1
            continue
        i += 1
    return p


def scwolify(cover: Cover, p: Path, start: tuple[int, int]) -> list[tuple[tuple[int, int], int]]:
    """X-path (tokens of chain-object arrows with signs) under Theta."""
    objs = cover.lift(p, start)
    out = []
    for o, (x, s) in zip(objs, p.tokens):
        if s < 0:
            arr = cover.theta_arrow(o, x)
        else:
            # the arrow leaves the object reached after the token
            nxt = cover.step(o, (x, s))
            arr = cover.theta_arrow(nxt, x)
        if arr is not None:
            out.append((arr, s))
    return out


def unscwolify(cover: Cover, xpath: Sequence[tuple[tuple[int, int], int]], start_chain: int) -> tuple[Path, tuple[int, int]]:
    """Canonical CG(Y)-path whose lift scwolifies to the given X-path.

    ``xpath`` lists ((c1, c2), sign) with c2 a proper subchain of c1; sign -1
    goes from c1 to c2.  Group arrows are inserted only where forced.
    """
    C, G = cover.C, cover.G
    v = int(C.orbit_of[start_chain])
    y = int(C.tr[start_chain])
    start = (y, v)
    toks = []
    cur = start
    for (c1, c2), s in xpath:
        u = int(C.orbit_of[c1])
        ch1 = C.ideal.chains[c1]
        sub = set(C.ideal.chains[c2])
        pos = tuple(k for k, c in enumerate(ch1) if c in sub)
        a = C.arrow(u, pos)
        if s < 0:
            if cover.theta(cur) != c1:
                raise InputError("bad path", "X-path is not connected")
            tok = ((0, a), -1)
        else:
            if cover.theta(cur) != c2:
                raise InputError("bad path", "X-path is not connected")
            want = int(G.mul[C.tr[c1], G.inv[C.h[a]]])
            k = int(G.mul[G.inv[cur[0]], want])
            if k != 0:
                toks.append(((k, cur[1]), 1))
                cur = cover.step(cur, toks[-1])
            tok = ((0, a), 1)
        toks.append(tok)
        cur = cover.step(cur, tok)
    return Path(v, tuple(toks)), start


# ------------------------------------------------------- link-edge data
@dataclass
class LinkEdge:
    mu1: int
    mu2: int
    nu: int
    a1: int
    a2: int
    a3: int
    a4: int
    index: int
    g_nu: int
    G_nu_plus: frozenset
    E: frozenset
    E_bar: frozenset
    path: Path

    @property
    def xi1(self) -> int:
        return self.path.base

    @property
    def length(self) -> int:
        return len(self.path.tokens)


def _other_face(C: ComplexOfGroups, chain: tuple[int, ...]) -> int:
    """For a lift chain (..., top, e1, phi), the other face of phi of
    dimension dim(top)+1 containing top."""
    X = C.X
    top, e1, phi = chain[-3], chain[-2], chain[-1]
    cands = [f for f in X.faces[phi] if X.dims[f] == X.dims[e1] and top in X.faces[f] and f != e1]
    if len(cands) != 1:
        raise InvariantViolation("codimension-2 face does not have exactly two cofaces in phi")
    return cands[0]


def is_link_edge_object(C: ComplexOfGroups, mu: int) -> bool:
    ch = C.lift_chain[mu]
    if len(ch) < 3:
        return False
    d = C.X.dims
    return d[ch[-2]] == d[ch[-3]] + 1 and d[ch[-1]] == d[ch[-3]] + 2


def link_edge(C: ComplexOfGroups, mu1: int) -> LinkEdge:
    G = C.G
    ch = C.lift_chain[mu1]
    e2 = _other_face(C, ch)
    mu2 = C.object_of_chain(ch[:-2] + (e2, ch[-1]))
    a1, a2 = C.drop(mu1, -1), C.drop(mu1, -2)
    a3, a4 = C.drop(mu2, -2), C.drop(mu2, -1)
    nu = C.Y.dst(a2)
    if C.Y.dst(a3) != nu:
        raise InvariantViolation("a2 and a3 have different targets")
    plus = C.psi_set(a2, C.local[mu1])
    if plus != C.psi_set(a3, C.local[mu2]):
        raise InvariantViolation("images of psi_a2 and psi_a3 differ")
    Gnu = C.local[nu]
    index = len(Gnu) // len(plus)
    if index not in (1, 2) or len(Gnu) != index * len(plus):
        raise InvariantViolation("index of G_nu^+ is not 1 or 2")
    if (index == 2) != (mu1 == mu2):
        raise InvariantViolation("index 2 does not match mu1 == mu2")
    g_nu = min(Gnu - plus) if index == 2 else 0
    toks = [((0, a1), 1), ((0, a2), -1)]
    if index == 2:
        toks.append(((g_nu, nu), 1))
    toks += [((0, a3), 1), ((0, a4), -1)]
    path = Path(C.Y.dst(a1), tuple(toks))
    E = C.psi_set(a4, C.local[mu2])
    E_bar = C.psi_set(a1, C.local[mu1])
    return LinkEdge(mu1, mu2, nu, a1, a2, a3, a4, index, g_nu, plus, E, E_bar, path)


def link_edge_paths(C: ComplexOfGroups, chain_length: int | None = None) -> dict[int, LinkEdge]:
    """Table over Y-objects <gamma < e1 < phi>, keyed by mu1.

    ``chain_length`` restricts to chains gamma of the given length (1 for
    links of single cubes)."""
    out = {}
    for mu in range(C.n_objects):
        if not is_link_edge_object(C, mu):
            continue
        if chain_length is not None and len(C.lift_chain[mu]) != chain_length + 2:
            continue
        out[mu] = link_edge(C, mu)
    return out


def check_link_edge(C: ComplexOfGroups, e: LinkEdge, cover: Cover | None = None) -> Verdict:
    """psi_alpha = psi_a4 o psi_a3^-1 on G_nu^+, reverse-edge consistency and
    a non-backtracking scwolified lift."""
    G = C.G
    for g in e.G_nu_plus:
        # psi_a3^-1(g) = h3^-1 g h3
        pre = G.conj(int(G.inv[C.h[e.a3]]), g)
        if pre not in C.local[e.mu2] or C.psi(e.a4, pre) not in e.E:
            return Verdict(False, "edge inclusion is not psi_a4 psi_a3^-1", {"mu1": e.mu1})
    rev = link_edge(C, e.mu2)
    if rev.a1 != e.a4 or rev.a2 != e.a3:
        return Verdict(False, "reverse edge data inconsistent", {"mu1": e.mu1})
    cover = cover or Cover(C)
    x = scwolify(cover, e.path, (0, e.xi1))
    ch = [C.ideal.chains[c] for (pair, s) in x for c in pair]
    # the five objects visited: (g e1) <- (g e1 phi) -> (g phi) <- (g e2 phi) -> (g e2)
    objs = [x[0][0][1], x[0][0][0], x[1][0][1], x[2][0][0], x[3][0][1]]
    chains = [C.ideal.chains[o] for o in objs]
    if chains[1][-1] != chains[3][-1] or chains[1][-2] == chains[3][-2] or chains[0][:-1] != chains[4][:-1]:
        return Verdict(False, "scwolified lift is not an edge of the link", {"mu1": e.mu1, "chains": chains})
    del ch
    return Verdict(True)


# --------------------------------------------------------- corner data
@dataclass
class Corner:
    zeta: int            # Y-object <sigma < eps < phi_alpha < psi>
    a_alpha: int
    a_beta: int
    b2: int
    edge: LinkEdge
    formula: int
    by_eval: int

    @property
    def base(self) -> int:
        return self.edge.path.base


def corner_element(C: ComplexOfGroups, zeta: int, cover: Cover | None = None) -> Corner:
    G = C.G
    Y = C.Y
    ch = C.lift_chain[zeta]
    if len(ch) < 4 or not is_link_edge_object(C, zeta):
        raise InputError("no corner", "object is not of the form <sigma < eps < phi < psi>")
    e = link_edge(C, zeta)
    xi1 = Y.dst(e.a1)
    xi2 = Y.dst(e.a4)
    a_alpha = C.drop(xi1, -1)
    a_beta = C.drop(xi2, -1)
    b2 = C.drop(e.nu, -1)
    if Y.compose(a_alpha, e.a1) != Y.compose(b2, e.a2) or Y.compose(a_beta, e.a4) != Y.compose(b2, e.a3):
        raise InvariantViolation("corner diagram does not commute in Y")
    mul, inv = G.mul, G.inv
    h1 = int(mul[C.z(a_alpha, e.a1), inv[C.z(b2, e.a2)]])
    h2 = int(mul[h1, C.psi(b2, e.g_nu)]) if e.index == 2 else h1
    h3 = int(mul[mul[h2, C.z(b2, e.a3)], inv[C.z(a_beta, e.a4)]])
    base = Y.dst(a_alpha)
    loop = Path(base, (((0, a_alpha), 1),) + e.path.tokens + (((0, a_beta), -1),))
    cover = cover or Cover(C)
    end = cover.lift(loop, (0, base))[-1]
    if end[1] != base:
        raise InvariantViolation("corner loop does not close up in Y")
    return Corner(zeta, a_alpha, a_beta, b2, e, h3, end[0])


def corner_loop(c: Corner) -> Path:
    return Path(c.base, (((0, c.a_alpha), 1),) + c.edge.path.tokens + (((0, c.a_beta), -1),))


def corner_table(C: ComplexOfGroups, cover: Cover | None = None, chain_length: int = 2) -> dict[int, Corner]:
    """All corner elements keyed by the Y-object zeta; chain_length 2 means
    zeta = <sigma < eps < phi < psi> (corners in links of single cubes)."""
    cover = cover or Cover(C)
    out = {}
    for mu in range(C.n_objects):
        ch = C.lift_chain[mu]
        if len(ch) != chain_length + 2 or not is_link_edge_object(C, mu):
            continue
        if C.X.dims[ch[-3]] != C.X.dims[ch[0]] + chain_length - 1:
            continue
        out[mu] = corner_element(C, mu, cover)
    return out


# --------------------------------------------------------- cubicalization
def cubicalize(cover: Cover, p: Path, gamma=None) -> Path:
    """Homotopic path whose scwol arrows come in opposable pairs.

    The endpoints of p must be cubical.  The lift of p to the K = {1}
    cover is replaced by a path in the graph Gamma(U) between the same
    endpoints; the cover is simply connected so the two are homotopic.
    """
    from .stab_graphs import build_gamma

    C = cover.C
    for v in (p.base, path_objects(CGY(C), p)[-1]):
        if len(C.lift_chain[v]) != 1:
            raise InputError("not cubical", "endpoints must be cubical objects")
    gamma = gamma or build_gamma(cover)
    objs = cover.lift(p, (0, p.base))
    route = nx.shortest_path(gamma.graph, objs[0], objs[-1])
    toks = []
    for u, w in zip(route, route[1:]):
        data = gamma.graph[u][w]
        x = data["label"]
        if data["src"] == u:
            toks.append((x, -1))
        else:
            toks.append((x, 1))
    return Path(p.base, tuple(toks))


def is_cubical_path(C: ComplexOfGroups, p: Path) -> bool:
    Y = C.Y
    objs = path_objects(CGY(C), p)
    if len(C.lift_chain[objs[0]]) != 1 or len(C.lift_chain[objs[-1]]) != 1:
        return False
    toks = list(p.tokens)
    i = 0
    while i < len(toks):
        (g, a), s = toks[i]
        if Y.is_unit(a):
            if len(C.lift_chain[Y.src(a)]) != 1:
                return False
            i += 1
            continue
        if g != 0 or i + 1 >= len(toks):
            return False
        (g2, b), s2 = toks[i + 1]
        if g2 != 0 or Y.is_unit(b) or s != 1 or s2 != -1:
            return False
        centre = Y.src(a)
        ch = C.lift_chain[centre]
        if Y.src(b) != centre or len(ch) != 2 or C.X.dims[ch[1]] != C.X.dims[ch[0]] + 1:
            return False
        if {a, b} != {C.drop(centre, 0), C.drop(centre, 1)}:
            return False
        i += 2
    return True
