"""Finite permutation groups acting on cube complexes, the quotient scwol and
the complex-of-groups data (local groups, psi_a, z(a, b))."""
from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .cube_core import CubeComplex, Verdict
from .errors import GroupError, InvariantViolation
from .scwol_cat import FiniteCategory, Functor, Idealization, idealize

Subgroup = frozenset


class FiniteGroup:
    """Group given by a multiplication table; element 0 is the identity.

    ``mul[g, h]`` is the product gh, where for permutation groups
    (gh)(x) = g(h(x)).
    """

    def __init__(self, mul: np.ndarray, perms: np.ndarray | None = None, gens: Sequence[int] = (),
                 gen_names: Sequence[str] = ()):
        self.mul = np.asarray(mul, dtype=np.int32)
        n = self.mul.shape[0]
        self.order = n
        inv = np.empty(n, dtype=np.int32)
        rows, cols = np.nonzero(self.mul == 0)
        inv[rows] = cols
        self.inv = inv
        self.perms = perms
        self.gens = list(gens)
        self.gen_names = list(gen_names)

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def m(self, *gs: int) -> int:
        out = 0
        for g in gs:
            out = int(self.mul[out, g])
        return out

    def conj(self, h: int, g: int) -> int:
        """h g h^-1."""
        return int(self.mul[self.mul[h, g], self.inv[h]])

    def conj_set(self, h: int, H: Iterable[int]) -> frozenset:
        H = np.fromiter(H, dtype=np.int64)
        return frozenset(self.mul[self.mul[h, H], self.inv[h]].tolist())

    def prod_set(self, A: Iterable[int], B: Iterable[int]) -> frozenset:
        A = np.fromiter(A, dtype=np.int64)
        B = np.fromiter(B, dtype=np.int64)
        if not len(A) or not len(B):
            return frozenset()
        return frozenset(np.unique(self.mul[np.ix_(A, B)]).tolist())

    def left(self, g: int, H: Iterable[int]) -> frozenset:
        H = np.fromiter(H, dtype=np.int64)
        return frozenset(self.mul[g, H].tolist())

    def right(self, H: Iterable[int], g: int) -> frozenset:
        H = np.fromiter(H, dtype=np.int64)
        return frozenset(self.mul[H, g].tolist())

    def generated(self, S: Iterable[int]) -> frozenset:
        S = [int(s) for s in S]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in S:
                y = int(self.mul[x, s])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = frozenset(H)
        if 0 not in H:
            return False
        arr = np.fromiter(H, dtype=np.int64)
        return set(self.mul[np.ix_(arr, arr)].ravel().tolist()) <= H

    def is_normal(self, K: Iterable[int]) -> bool:
        K = frozenset(K)
        return self.is_subgroup(K) and all(self.conj_set(g, K) == K for g in self.elements)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = int(self.mul[x, g])
            k += 1
        return k

    def cosets(self, H: Iterable[int]) -> list[frozenset]:
        """Left cosets gH, sorted by minimal element."""
        H = frozenset(H)
        seen = np.full(self.order, False)
        out = []
        for g in self.elements:
            if not seen[g]:
                c = self.left(g, H)
                seen[list(c)] = True
                out.append(c)
        return out

    def normalizer(self, H: Iterable[int]) -> frozenset:
        H = frozenset(H)
        return frozenset(g for g in self.elements if self.conj_set(g, H) == H)

    def quotient(self, K: Iterable[int]) -> tuple["FiniteGroup", np.ndarray]:
        """G/K as a table group plus the projection array."""
        K = frozenset(K)
        cos = sorted(self.cosets(K), key=min)
        proj = np.empty(self.order, dtype=np.int32)
        for i, c in enumerate(cos):
            proj[list(c)] = i
        reps = np.array([min(c) for c in cos])
        table = proj[self.mul[np.ix_(reps, reps)]]
        return FiniteGroup(table), proj

    def to_dict(self) -> dict:
        return {"order": self.order, "generators": self.gen_names}


def enumerate_group(generators: Sequence[Sequence[int]], cap: int = 10_000,
                    names: Sequence[str] | None = None) -> FiniteGroup:
    """Close a list of permutations (as arrays over a common carrier)."""
    gens = [np.asarray(g, dtype=np.int64) for g in generators]
    m = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != m or sorted(g.tolist()) != list(range(m)):
            raise GroupError("malformed", "generator is not a permutation of the carrier")
    ident = np.arange(m, dtype=np.int64)
    elems = [ident]
    index = {ident.tobytes(): 0}
    queue = deque([0])
    while queue:
        x = elems[queue.popleft()]
        for g in gens:
            y = g[x]
            key = y.tobytes()
            if key not in index:
                if len(elems) >= cap:
                    raise GroupError("cap exceeded", f"group order exceeds {cap}")
                index[key] = len(elems)
                elems.append(y)
                queue.append(len(elems) - 1)
    P = np.array(elems, dtype=np.int64).reshape(len(elems), m)
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int32)
    for g in range(n):
        prod = P[g][P]
        for h in range(n):
            mul[g, h] = index[prod[h].tobytes()]
    gen_ids = [index[g.tobytes()] for g in gens]
    return FiniteGroup(mul, P, gen_ids, list(names or [f"g{i}" for i in range(len(gens))]))


def normal_closure(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    """Smallest normal subgroup containing S (conjugate-then-generate loop)."""
    K = G.generated(S)
    while True:
        conj = set()
        for g in G.elements:
            conj |= G.conj_set(g, K)
        nxt = G.generated(conj)
        if nxt == K:
            return K
        K = nxt


def normal_closure_saturate(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    """Independent implementation: saturate under products and conjugation."""
    K = {0} | {int(s) for s in S}
    changed = True
    while changed:
        changed = False
        arr = np.fromiter(K, dtype=np.int64)
        new = set(G.mul[np.ix_(arr, arr)].ravel().tolist())
        for g in G.elements:
            new |= set(G.mul[G.mul[g, arr], G.inv[g]].tolist())
        if not new <= K:
            K |= new
            changed = True
    return frozenset(K)


# ----------------------------------------------------------------- actions
class GroupAction:
    """A finite group acting on a cube complex by cellular automorphisms."""

    def __init__(self, G: FiniteGroup, X: CubeComplex, cellperm: np.ndarray):
        self.G = G
        self.X = X
        self.cellperm = np.asarray(cellperm, dtype=np.int64)
        self._verify()

    def _verify(self) -> None:
        X, P = self.X, self.cellperm
        for g in self.G.gens or range(len(self.G)):
            p = P[g]
            if sorted(p.tolist()) != list(range(len(X.cells))):
                raise GroupError("not an automorphism", "cell map is not a bijection")
            if not np.array_equal(X.dims[p], X.dims):
                raise GroupError("not an automorphism", "dimension not preserved")
            vmap = {X.cell_vertex[c]: X.cell_vertex[int(p[c])] for c in X.vertex_cell}
            for c, corners in enumerate(X.cells):
                if frozenset(vmap[v] for v in corners) != X.corner_set(int(p[c])):
                    raise GroupError("not an automorphism", f"cell {X.names[c]} not mapped onto a cell")

    def check_homomorphism(self) -> Verdict:
        P, mul = self.cellperm, self.G.mul
        for s in self.G.gens:
            for g in self.G.elements:
                if not np.array_equal(P[mul[s, g]], P[s][P[g]]):
                    return Verdict(False, "cell action is not a homomorphism", {"pair": [int(s), int(g)]})
        return Verdict(True)

    @cached_property
    def cell_orbit(self) -> np.ndarray:
        orb = np.full(len(self.X.cells), -1, dtype=np.int64)
        k = 0
        for c in range(len(self.X.cells)):
            if orb[c] < 0:
                orb[np.unique(self.cellperm[:, c])] = k
                k += 1
        return orb

    def orbit_reps(self) -> list[int]:
        orb = self.cell_orbit
        return [int(np.nonzero(orb == k)[0][0]) for k in range(int(orb.max()) + 1)]

    def stabilizer(self, c: int) -> frozenset:
        return frozenset(np.nonzero(self.cellperm[:, c] == c)[0].tolist())

    def pointwise_stabilizer(self, c: int) -> frozenset:
        X = self.X
        mask = np.ones(len(self.G), dtype=bool)
        for v in X.cells[c]:
            vc = X.vertex_cell[v]
            mask &= self.cellperm[:, vc] == vc
        return frozenset(np.nonzero(mask)[0].tolist())

    def stabilizers(self) -> list[tuple[frozenset, frozenset]]:
        return [(self.stabilizer(c), self.pointwise_stabilizer(c)) for c in range(len(self.X.cells))]

    def orbits_and_stabilizers(self) -> dict:
        X = self.X
        out = []
        for c in range(len(X.cells)):
            Gs, Qs = self.stabilizer(c), self.pointwise_stabilizer(c)
            out.append({"cell": X.names[c], "orbit": int(self.cell_orbit[c]),
                        "setwise": len(Gs), "pointwise": len(Qs)})
        return {"orbits": int(self.cell_orbit.max()) + 1, "cells": out}

    def subgroup_action(self, H: Iterable[int]) -> np.ndarray:
        return self.cellperm[sorted(H)]


def action_from_spec(X: CubeComplex, spec: dict, cap: int = 10_000) -> GroupAction:
    """Parse the JSON group/action format."""
    carrier = spec.get("carrier", "cells")
    gens_raw = spec.get("generators", [])
    if carrier == "cells":
        ids = X.names
    elif isinstance(carrier, list):
        ids = [str(x) for x in carrier]
    else:
        raise GroupError("malformed", "carrier must be 'cells' or a list of vertex ids", "carrier")
    pos = {x: i for i, x in enumerate(ids)}
    perms, names = [], []
    for k, gen in enumerate(gens_raw):
        where = f"generators[{k}].perm"
        p = list(range(len(ids)))
        for s, d in (gen.get("perm") or {}).items():
            if str(s) not in pos or str(d) not in pos:
                raise GroupError("malformed", f"unknown carrier element {s!r} or {d!r}", where)
            p[pos[str(s)]] = pos[str(d)]
        if sorted(p) != list(range(len(ids))):
            raise GroupError("malformed", "map is not a bijection", where)
        perms.append(p)
        names.append(gen.get("name", f"g{k}"))
    if carrier == "cells":
        cellperms = perms
    else:
        vindex = {n: i for i, n in enumerate(X.vertex_names)}
        missing = [x for x in ids if x not in vindex]
        if missing:
            raise GroupError("malformed", f"carrier ids are not vertices: {missing[:3]}", "carrier")
        cellperms = []
        for p in perms:
            vp = list(range(len(X.vertex_names)))
            for i, x in enumerate(ids):
                vp[vindex[x]] = vindex[ids[p[i]]]
            cellperms.append(_induced_cellperm(X, vp))
    if not perms:
        cellperms = []
    G = enumerate_group(cellperms or [list(range(len(X.cells)))], cap=cap, names=names or ["id"])
    if not perms:
        G.gens, G.gen_names = [], []
    A = GroupAction(G, X, G.perms)
    if spec.get("relations_check", True):
        hv = A.check_homomorphism()
        if not hv:
            raise GroupError("not a homomorphism", hv.reason)
    return A


def _induced_cellperm(X: CubeComplex, vp: Sequence[int]) -> list[int]:
    out = []
    for c, corners in enumerate(X.cells):
        key = frozenset(vp[v] for v in corners)
        if key not in X.index:
            raise GroupError("not an automorphism", f"image of cell {X.names[c]} is not a cell")
        out.append(X.index[key])
    return out


def action_from_vertex_perms(X: CubeComplex, vperms: Sequence[dict], names: Sequence[str] | None = None,
                             cap: int = 10_000) -> GroupAction:
    """Action generated by vertex maps given as {name: name} dicts."""
    spec = {
        "carrier": list(X.vertex_names),
        "generators": [{"name": (names[i] if names else f"g{i}"), "perm": p} for i, p in enumerate(vperms)],
    }
    return action_from_spec(X, spec, cap=cap)


def trivial_action(X: CubeComplex) -> GroupAction:
    return action_from_spec(X, {"carrier": "cells", "generators": []})


def action_to_spec(A: GroupAction) -> dict:
    X = A.X
    gens = []
    for k, g in enumerate(A.G.gens):
        p = A.cellperm[g]
        perm = {X.vertex_names[X.cell_vertex[c]]: X.vertex_names[X.cell_vertex[int(p[c])]]
                for c in X.vertex_cell if int(p[c]) != c}
        gens.append({"name": A.G.gen_names[k] if k < len(A.G.gen_names) else f"g{k}", "perm": perm})
    return {"carrier": list(X.vertex_names), "generators": gens, "relations_check": True}


# ----------------------------------------------------------- chain action
def _chain_keys(chains: Sequence[tuple[int, ...]], base: int) -> np.ndarray:
    keys = np.zeros(len(chains), dtype=np.int64)
    for i, ch in enumerate(chains):
        k = 0
        for c in ch:
            k = k * base + c + 1
        keys[i] = k
    return keys


def chain_permutations(A: GroupAction, ideal: Idealization) -> np.ndarray:
    """objperm[g, c] = index of the chain g.c."""
    chains = ideal.chains
    base = len(A.X.cells) + 1
    keys = _chain_keys(chains, base)
    order = np.argsort(keys)
    skeys = keys[order]
    out = np.empty((len(A.G), len(chains)), dtype=np.int64)
    by_len: dict[int, list[int]] = {}
    for i, ch in enumerate(chains):
        by_len.setdefault(len(ch), []).append(i)
    for L, idx in by_len.items():
        arr = np.array([chains[i] for i in idx], dtype=np.int64)
        for g in range(len(A.G)):
            img = A.cellperm[g][arr]
            k = np.zeros(len(idx), dtype=np.int64)
            for j in range(L):
                k = k * base + img[:, j] + 1
            out[g, idx] = order[np.searchsorted(skeys, k)]
    return out


def _pick(cands: Sequence[int], choice) -> int:
    cands = sorted(int(c) for c in cands)
    if choice == "min":
        return cands[0]
    if choice == "max":
        return cands[-1]
    if isinstance(choice, random.Random):
        return choice.choice(cands)
    raise ValueError(f"unknown choice {choice!r}")


class ComplexOfGroups:
    """Quotient scwol Y = idealize(X)/G with local groups, psi_a and z(a, b).

    ``choice`` selects lifts and elements h_a: "min" (default), "max" or an
    integer seed for a random choice.
    """

    def __init__(self, A: GroupAction, choice="min", ideal: Idealization | None = None, verify: bool = True):
        self.A = A
        self.G = A.G
        self.X = A.X
        self.ideal = ideal or idealize(A.X)
        self.choice = choice
        rng = random.Random(choice) if isinstance(choice, int) and not isinstance(choice, bool) else None
        pick = (lambda c: _pick(c, rng)) if rng is not None else (lambda c: _pick(c, choice))
        G = self.G
        self.objperm = chain_permutations(A, self.ideal)
        nchains = len(self.ideal.chains)
        orbit = np.full(nchains, -1, dtype=np.int64)
        members: list[list[int]] = []
        for c in range(nchains):
            if orbit[c] < 0:
                orb = np.unique(self.objperm[:, c])
                orbit[orb] = len(members)
                members.append(orb.tolist())
        self.orbit_of = orbit
        self.lift = [pick(m) for m in members]
        self.lift_chain = [self.ideal.chains[c] for c in self.lift]
        nY = len(self.lift)
        # transversal: tr[c] maps the lift of c's orbit to c
        self.tr = np.empty(nchains, dtype=np.int64)
        for v in range(nY):
            row = self.objperm[:, self.lift[v]]
            for g in range(len(G) - 1, -1, -1):
                self.tr[row[g]] = g
        self.local = [frozenset(np.nonzero(self.objperm[:, self.lift[v]] == self.lift[v])[0].tolist())
                      for v in range(nY)]
        # arrows of Y
        src, dst, labels = [], [], []
        self.arrow_of: dict[tuple[int, tuple[int, ...]], int] = {}
        for u in range(nY):
            L = len(self.lift_chain[u])
            for r in range(1, L):
                for pos in itertools.combinations(range(L), r):
                    sub = self.ideal.chain_index[tuple(self.lift_chain[u][p] for p in pos)]
                    self.arrow_of[(u, pos)] = nY + len(src)
                    src.append(u)
                    dst.append(int(orbit[sub]))
                    labels.append((u, pos))
        compose = {}
        for (u, pb), b in self.arrow_of.items():
            x = dst[b - nY]
            Lx = len(self.lift_chain[x])
            for r in range(1, Lx):
                for pa in itertools.combinations(range(Lx), r):
                    a = self.arrow_of[(x, pa)]
                    compose[(a, b)] = self.arrow_of[(u, tuple(pb[i] for i in pa))]
        self.Y = FiniteCategory(list(range(nY)), src, dst, compose, labels=labels)
        # h_a
        self.h = np.zeros(self.Y.n_arrows, dtype=np.int64)
        for (u, pos), a in self.arrow_of.items():
            c = self.ideal.chain_index[tuple(self.lift_chain[u][p] for p in pos)]
            t = dst[a - nY]
            cands = np.nonzero(self.objperm[:, c] == self.lift[t])[0]
            self.h[a] = pick(cands)
        if verify:
            self.verify()

    # ------------------------------------------------------------- data
    @property
    def n_objects(self) -> int:
        return self.Y.n_objects

    def psi(self, a: int, g: int) -> int:
        return self.G.conj(int(self.h[a]), g)

    def psi_set(self, a: int, H: Iterable[int]) -> frozenset:
        return self.G.conj_set(int(self.h[a]), H)

    def z(self, a: int, b: int) -> int:
        if self.Y.is_unit(a) or self.Y.is_unit(b):
            return 0
        ab = self.Y.compose(a, b)
        G = self.G
        return int(G.mul[G.mul[self.h[a], self.h[b]], G.inv[self.h[ab]]])

    def arrow(self, u: int, pos: Sequence[int]) -> int:
        return self.arrow_of[(u, tuple(pos))]

    def drop(self, u: int, k: int) -> int:
        """Arrow from u obtained by deleting position k of the lift chain."""
        L = len(self.lift_chain[u])
        k %= L
        return self.arrow(u, tuple(i for i in range(L) if i != k))

    def object_of_chain(self, chain: Sequence[int]) -> int:
        return int(self.orbit_of[self.ideal.chain_index[tuple(chain)]])

    def projection(self) -> Functor:
        S = self.ideal.scwol
        obj = [int(self.orbit_of[c]) for c in range(S.n_objects)]
        arr = list(obj)
        for (i, j), a in sorted(self.ideal.arrow_index.items(), key=lambda kv: kv[1]):
            g = int(self.G.inv[self.tr[i]])
            ci = self.ideal.chains[i]
            u = obj[i]
            lifted = self.ideal.chains[int(self.objperm[g, i])]
            assert lifted == self.lift_chain[u]
            sub = set(self.ideal.chains[j])
            pos = tuple(k for k, c in enumerate(ci) if c in sub)
            arr.append(self.arrow(u, pos))
        return Functor(S, self.Y, obj, arr)

    # ---------------------------------------------------------- checks
    def verify(self) -> dict:
        G, Y = self.G, self.Y
        mul = G.mul
        pairs = triples = 0
        for a in Y.nontrivial():
            Gi = self.local[Y.src(a)]
            img = self.psi_set(a, Gi)
            if not img <= self.local[Y.dst(a)]:
                raise InvariantViolation(f"psi_{a} does not land in the target local group")
        for (a, b), ab in Y._compose.items():
            pairs += 1
            z = self.z(a, b)
            if z not in self.local[Y.dst(a)]:
                raise InvariantViolation(f"z({a},{b}) not in G_t(a)")
            Gi = np.fromiter(self.local[Y.src(b)], dtype=np.int64)
            lhs = mul[mul[z, mul[mul[self.h[ab], Gi], G.inv[self.h[ab]]]], G.inv[z]]
            inner = mul[mul[self.h[b], Gi], G.inv[self.h[b]]]
            rhs = mul[mul[self.h[a], inner], G.inv[self.h[a]]]
            if not np.array_equal(lhs, rhs):
                raise InvariantViolation(f"compatibility fails for ({a},{b})")
        for (a, b), ab in Y._compose.items():
            for c in Y.nontrivial():
                if Y.dst(c) != Y.src(b):
                    continue
                bc = Y.compose(b, c)
                triples += 1
                lhs = mul[self.psi(a, self.z(b, c)), self.z(a, bc)]
                rhs = mul[self.z(a, b), self.z(ab, c)]
                if lhs != rhs:
                    raise InvariantViolation(f"cocycle fails for ({a},{b},{c})")
        return {"pairs": pairs, "triples": triples}

    def summary(self) -> dict:
        Y = self.Y
        X = self.X
        objs = []
        for v in range(Y.n_objects):
            objs.append({"object": v, "lift": [X.names[c] for c in self.lift_chain[v]],
                         "local_group_order": len(self.local[v])})
        arrows = []
        for a in Y.nontrivial():
            arrows.append({"arrow": a - Y.n_objects, "src": Y.src(a), "dst": Y.dst(a), "h": int(self.h[a])})
        z = [[a - Y.n_objects, b - Y.n_objects, self.z(a, b)] for (a, b) in sorted(Y._compose)]
        return {"objects": objs, "arrows": arrows, "z": z}


def extract_complex_of_groups(A: GroupAction, choice="min") -> ComplexOfGroups:
    return ComplexOfGroups(A, choice=choice)


def quotient_scwol(A: GroupAction) -> tuple[FiniteCategory, Functor]:
    C = ComplexOfGroups(A, verify=False)
    return C.Y, C.projection()


# -------------------------------------------------------------- quotients
def co_cubical(A: GroupAction, K: Iterable[int]) -> Verdict:
    K = frozenset(K)
    if not A.G.is_normal(K):
        raise GroupError("not normal", "K is not a normal subgroup")
    for c in A.orbit_reps():
        bad = (A.stabilizer(c) & K) - A.pointwise_stabilizer(c)
        if bad:
            return Verdict(False, "an element of K stabilizes a cell without fixing it pointwise",
                           {"cell": A.X.names[c], "element": min(bad)})
    return Verdict(True)


@dataclass
class QuotientComplex:
    """Z = X/K as K-orbits of cells, plus the induced G/K action."""

    A: GroupAction
    K: frozenset
    orbit: np.ndarray
    reps: list[int]
    dims: np.ndarray
    quotient_group: FiniteGroup
    projection: np.ndarray
    cellperm: np.ndarray
    complex: CubeComplex | None = None
    names: list[str] = field(default_factory=list)

    @property
    def n_cells(self) -> int:
        return len(self.reps)

    def counts(self) -> list[int]:
        return [int((self.dims == d).sum()) for d in range(int(self.dims.max()) + 1)]

    def euler(self) -> int:
        return int(sum((-1) ** int(d) for d in self.dims))


def quotient_complex(A: GroupAction, K: Iterable[int]) -> QuotientComplex:
    K = frozenset(K)
    cv = co_cubical(A, K)
    if not cv:
        raise GroupError("not co-cubical", cv.reason)
    X = A.X
    Kl = sorted(K)
    sub = A.cellperm[Kl]
    orbit = np.full(len(X.cells), -1, dtype=np.int64)
    reps = []
    for c in range(len(X.cells)):
        if orbit[c] < 0:
            orbit[np.unique(sub[:, c])] = len(reps)
            reps.append(c)
    dims = X.dims[reps]
    Q, proj = A.G.quotient(K)
    cos_rep = [int(np.nonzero(proj == i)[0].min()) for i in range(len(Q))]
    cellperm = np.array([orbit[A.cellperm[g][reps]] for g in cos_rep], dtype=np.int64)
    names = []
    for r in reps:
        members = np.nonzero(orbit == orbit[r])[0]
        names.append(min(X.names[m] for m in members))
    Z = QuotientComplex(A, K, orbit, reps, dims, Q, proj, cellperm, None, names)
    Z.complex = _export(Z)
    return Z


def _export(Z: QuotientComplex) -> CubeComplex | None:
    """The quotient as an embedded CubeComplex, or None when it is not
    embedded (cubes with repeated corners or shared corner sets)."""
    from .errors import ComplexError

    X = Z.A.X
    vorb = [int(Z.orbit[X.vertex_cell[v]]) for v in range(len(X.vertex_names))]
    vreps = sorted({o for o in vorb})
    vname = {o: Z.names[o] for o in vreps}
    vid = {o: i for i, o in enumerate(vreps)}
    cubes = [[vid[vorb[v]] for v in X.cells[r]] for r in Z.reps]
    try:
        C = CubeComplex([vname[o] for o in vreps], cubes)
    except ComplexError:
        return None
    if len(C.cells) != len(Z.reps):
        return None
    return C


# ------------------------------------------------------------------ words
def parse_word(G: FiniteGroup, word: str | int) -> int:
    """Element named by a word such as ``"r s^-1 r"`` or ``"r*r*s"`` in the
    generator names; an integer is taken as an element id."""
    if isinstance(word, int):
        if not 0 <= word < len(G):
            raise GroupError("bad element", f"element id {word} out of range")
        return word
    names = {n: g for n, g in zip(G.gen_names, G.gens)}
    out = 0
    for tok in word.replace("*", " ").split():
        base, _, exp = tok.partition("^")
        if base in ("1", "e", "id"):
            continue
        if base not in names:
            raise GroupError("bad word", f"unknown generator {base!r} in {word!r}")
        try:
            k = int(exp) if exp else 1
        except ValueError:
            raise GroupError("bad word", f"bad exponent in {tok!r}") from None
        g = names[base] if k >= 0 else int(G.inv[names[base]])
        for _ in range(abs(k)):
            out = int(G.mul[out, g])
    return out


def subgroup_from_words(G: FiniteGroup, words: Sequence[str | int], normal: bool = False) -> frozenset:
    S = [parse_word(G, w) for w in words]
    return normal_closure(G, S) if normal else G.generated(S)
