"""Dehn-filling bookkeeping for finite groups.

Finite groups have no infinite subgroups, so every place where a subgroup
would be required to be infinite uses an explicit predicate instead
(default: nontrivial).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import GroupError, InputError
from .grp_action import (ComplexOfGroups, FiniteGroup, GroupAction, co_cubical, normal_closure,
                         normal_closure_saturate, quotient_complex, subgroup_from_words)
from .npc_quotient import elliptic_generation, find_in_product, npc_quotient_verdict


# ------------------------------------------------------------ predicates
@dataclass(frozen=True)
class Predicate:
    """Which subgroups count as essential.  ``min_order`` N means |H| > N."""

    min_order: int = 1

    def __call__(self, H: Iterable[int]) -> bool:
        return len(frozenset(H)) > self.min_order

    @property
    def name(self) -> str:
        return "nontrivial" if self.min_order == 1 else f"order>{self.min_order}"


def parse_predicate(spec: str | None) -> Predicate:
    if spec is None or spec == "nontrivial":
        return Predicate(1)
    m = re.fullmatch(r"order>(\d+)", spec.strip())
    if not m:
        raise InputError("bad predicate", f"expected 'nontrivial' or 'order>N', got {spec!r}")
    return Predicate(int(m.group(1)))


# ---------------------------------------------------------- subgroups
def all_subgroups(G: FiniteGroup, cap: int = 5000) -> list[frozenset]:
    """Every subgroup, as the join-closure of the cyclic subgroups."""
    cyc = {G.generated([g]) for g in G.elements}
    subs = set(cyc)
    frontier = set(cyc)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyc:
                if C <= H:
                    continue
                J = G.generated(H | C)
                if J not in subs:
                    new.add(J)
        subs |= new
        frontier = new
        if len(subs) > cap:
            raise GroupError("cap exceeded", f"more than {cap} subgroups")
    return sorted(subs, key=lambda H: (len(H), sorted(H)))


def conj(G: FiniteGroup, g: int, H: Iterable[int]) -> frozenset:
    """H^g = g H g^-1."""
    return G.conj_set(g, H)


def _coset_reps(G: FiniteGroup, H: frozenset) -> list[int]:
    return [min(c) for c in G.cosets(H)]


# --------------------------------------------------------------- height
def height(G: FiniteGroup, family: Sequence[Iterable[int]], predicate: Predicate = Predicate()) -> int:
    """Largest number of distinct cosets g_i H_i whose conjugates
    g_i H_i g_i^-1 meet in an essential subgroup (0 if there are none).

    A common essential intersection L is contained in every member, so it
    suffices to count, for each candidate L, the cosets gH with
    g^-1 L g <= H; candidates are all intersections of conjugates.
    """
    fam = [frozenset(H) for H in family]
    conjs = set()
    for H in fam:
        for g in _coset_reps(G, H):
            conjs.add(conj(G, g, H))
    lattice = set(conjs)
    frontier = set(conjs)
    while frontier:
        new = set()
        for A in frontier:
            for B in conjs:
                C = A & B
                if C not in lattice and predicate(C):
                    new.add(C)
        lattice |= new
        frontier = new
    best = 0
    for L in lattice:
        if not predicate(L):
            continue
        count = 0
        for H in fam:
            for g in _coset_reps(G, H):
                if L <= conj(G, g, H):
                    count += 1
        best = max(best, count)
    return best


def height_bruteforce(G: FiniteGroup, family: Sequence[Iterable[int]], predicate: Predicate = Predicate(),
                      cap: int = 2_000_000) -> int:
    """Direct search over sets of distinct cosets.  A branch is cut as soon
    as its running intersection stops being essential, since intersections
    only shrink."""
    fam = [frozenset(H) for H in family]
    cosets = [(i, g) for i, H in enumerate(fam) for g in _coset_reps(G, H)]
    conjugate = [conj(G, g, fam[i]) for i, g in cosets]
    best = 0
    seen = 0
    stack = [(-1, 0, frozenset(G.elements))]
    while stack:
        last, size, inter = stack.pop()
        best = max(best, size)
        for j in range(last + 1, len(cosets)):
            seen += 1
            if seen > cap:
                raise GroupError("cap exceeded", "too many coset tuples")
            nxt = inter & conjugate[j]
            if predicate(nxt):
                stack.append((j, size + 1, nxt))
    return best


# --------------------------------------------------- peripheral structures
def induced_peripheral(G: FiniteGroup, family: Sequence[Iterable[int]], predicate: Predicate = Predicate()) -> list[frozenset]:
    fam = [frozenset(H) for H in family]
    cands = set()
    for i, H in enumerate(fam):
        # intersections H cap (conjugates by distinct cosets), growing
        others = [(j, g) for j, K in enumerate(fam) for g in _coset_reps(G, K) if not (j == i and g in H)]
        level = {H} if predicate(H) else set()
        cands |= level
        frontier = level
        while frontier:
            new = set()
            for A in frontier:
                for j, g in others:
                    C = A & conj(G, g, fam[j])
                    if C != A and predicate(C) and C not in cands:
                        new.add(C)
            cands |= new
            frontier = new
    minimal = [A for A in cands if not any(B < A for B in cands)]
    out: list[frozenset] = []
    for A in sorted(minimal, key=lambda H: (len(H), sorted(H))):
        P = A
        while True:
            N = G.normalizer(P)
            if N == P:
                break
            P = N
        if not any(P == conj(G, g, Q) for Q in out for g in G.elements):
            out.append(P)
    return out


@dataclass
class FillingSpec:
    peripherals: list[frozenset]
    kernels: list[frozenset]
    names: list[str] = field(default_factory=list)

    def K(self, G: FiniteGroup) -> frozenset:
        return normal_closure(G, set().union(*self.kernels) if self.kernels else [0])


def check_spec(G: FiniteGroup, spec: FillingSpec) -> None:
    if len(spec.peripherals) != len(spec.kernels):
        raise InputError("bad filling", "one kernel per peripheral subgroup is required")
    for k, (P, N) in enumerate(zip(spec.peripherals, spec.kernels)):
        if not G.is_subgroup(P):
            raise GroupError("bad peripheral", "not a subgroup", where=f"peripherals[{k}]")
        if not N <= P or not G.is_subgroup(N):
            raise GroupError("bad kernel", "not a subgroup of its peripheral", where=f"kernels[{k}]")
        if any(conj(G, p, N) != N for p in P):
            raise GroupError("bad kernel", "not normal in its peripheral", where=f"kernels[{k}]")


def spec_from_dicts(G: FiniteGroup, peripherals: dict, kernels: dict) -> FillingSpec:
    try:
        plist = peripherals["peripherals"]
        kmap = {k["peripheral"]: k.get("generators", []) for k in kernels["kernels"]}
    except (KeyError, TypeError) as e:
        raise InputError("bad filling files", f"missing field {e}") from None
    P, N, names = [], [], []
    for k, p in enumerate(plist):
        name = p.get("name", f"P{k}")
        H = subgroup_from_words(G, p.get("generators", []))
        P.append(H)
        N.append(subgroup_from_words(G, kmap.get(name, [])))
        names.append(name)
    unknown = set(kmap) - set(names)
    if unknown:
        raise InputError("bad filling files", f"kernels for unknown peripherals {sorted(unknown)}")
    spec = FillingSpec(P, N, names)
    check_spec(G, spec)
    return spec


def q_filling_check(G: FiniteGroup, spec: FillingSpec, family: Sequence[Iterable[int]],
                    predicate: Predicate = Predicate()) -> dict:
    for h, H in enumerate(family):
        H = frozenset(H)
        for k, (P, N) in enumerate(zip(spec.peripherals, spec.kernels)):
            for g in G.elements:
                if predicate(H & conj(G, g, P)) and not conj(G, g, N) <= H:
                    return {"ok": False, "witness": {"member": h, "peripheral": k, "g": g}}
    return {"ok": True}


# ---------------------------------------------------------- meta checker
@dataclass
class MetaTuple:
    p: int
    Q: frozenset
    S: frozenset = frozenset()


def meta_hypothesis(G: FiniteGroup, tuples: Sequence[MetaTuple]) -> list[int] | None:
    """A decomposition of 1 in p_1 (Q_1 - S_1) ... p_n (Q_n - S_n), or None."""
    fac = []
    for t in tuples:
        fac += [[t.p], t.Q - t.S]
    return find_in_product(G, fac, [0])


def meta_checker(G: FiniteGroup, tuples: Sequence[MetaTuple], K: Iterable[int]) -> dict:
    K = frozenset(K)
    bad = meta_hypothesis(G, tuples)
    if bad is not None:
        raise InputError("hypothesis fails", f"1 = product of {bad}")
    fac = []
    for t in tuples:
        KQ = K & t.Q
        fac += [[t.p], t.Q - G.prod_set(KQ, t.S)]
    w = find_in_product(G, fac, K)
    if w is None:
        return {"ok": True}
    return {"ok": False, "witness": {"factors": w, "product": G.m(*w)}}


def meta_slow(G: FiniteGroup, tuples: Sequence[MetaTuple], K: Iterable[int]) -> bool:
    """Independent enumeration of all forbidden products."""
    K = frozenset(K)
    allowed = []
    for t in tuples:
        ok = []
        for q in sorted(t.Q):
            if not any(G.mul[k, s] == q for k in K & t.Q for s in t.S):
                ok.append(q)
        allowed.append(ok)
    for ts in itertools.product(*allowed):
        x = 0
        for t, q in zip(tuples, ts):
            x = int(G.mul[G.mul[x, t.p], q])
        if x in K:
            return False
    return True


def coset_special_case(G: FiniteGroup, p: int, Q: Iterable[int], K: Iterable[int]) -> bool:
    """p not in Q.K, read off as: the coset pK misses Q."""
    return not (G.left(p, K) & frozenset(Q))


# ----------------------------------------------------------- acylindricity
def acylindricity_condition_G(A: GroupAction, predicate: Predicate = Predicate()) -> dict:
    X = A.X
    D = X.distance_matrix()
    verts = X.cells_of_dim(0)
    stab = {v: A.stabilizer(v) for v in verts}
    diam = int(D.max()) if len(verts) > 1 else 0
    rows = []
    for L in range(diam + 1):
        best = 0
        for i, x in enumerate(verts):
            for y in verts[i:]:
                if D[X.cell_vertex[x], X.cell_vertex[y]] >= L:
                    best = max(best, len(stab[x] & stab[y]))
        rows.append({"L": L, "R": best})
    stabs = [A.stabilizer(c) for c in range(len(X.cells))]
    k, worst = 0, None
    for H in all_subgroups(A.G):
        if not predicate(H):
            continue
        cells = [c for c in range(len(X.cells)) if H <= stabs[c]]
        if len(cells) > k:
            k, worst = len(cells), {"order": len(H), "cells": [X.names[c] for c in cells]}
    return {"table": rows, "k": k, "witness": worst}


# --------------------------------------------------------------- pipeline
def filling_pipeline(A: GroupAction, spec: FillingSpec, predicate: Predicate = Predicate(), choice="min") -> dict:
    G = A.G
    check_spec(G, spec)
    K = spec.K(G)
    if K != normal_closure_saturate(G, set().union(*spec.kernels) if spec.kernels else [0]):
        raise GroupError("normal closure mismatch", "two normal-closure computations disagree")
    reps = A.orbit_reps()
    Qs = [A.pointwise_stabilizer(c) for c in reps]
    stages: dict = {}
    stages["a_elliptic"] = elliptic_generation(A, K)
    cv = co_cubical(A, K)
    stages["b_co_cubical"] = cv.to_dict()
    bad = [A.X.names[c] for c, Q in zip(reps, Qs) if not (K & A.stabilizer(c)) <= Q]
    stages["c_stabilizers"] = {"ok": not bad, "cells": bad}
    Z = None
    if cv:
        C = ComplexOfGroups(A, choice)
        r = npc_quotient_verdict(C, K)
        stages["d_npc"] = {"ok": r["ok"], "cat0": r["cat0"], "staged": r["staged"],
                           "failures": r["conditions"]["failures"][:3], "oracle": r["oracle"]}
        if r["cat0"]:
            Z = quotient_complex(A, K)
    else:
        stages["d_npc"] = {"ok": False, "skipped": "K is not co-cubical"}
    Gbar, proj = G.quotient(K)
    images = [frozenset(int(proj[q]) for q in Q) for Q in Qs]
    h0 = height(G, Qs, predicate)
    h1 = height(Gbar, images, predicate)
    stages["e_height"] = {"ok": h1 < h0, "before": h0, "after": h1,
                          "note": "" if h1 < h0 else "no essential filling"}
    ok = all(stages[s]["ok"] for s in ("a_elliptic", "b_co_cubical", "c_stabilizers", "d_npc"))
    out = {"ok": ok, "K": sorted(K), "order_K": len(K), "predicate": predicate.name, "stages": stages}
    if Z is not None:
        out["Z"] = Z.complex.to_dict() if Z.complex is not None else {"cells": Z.n_cells, "names": Z.names}
    return out
