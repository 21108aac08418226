"""The acceptance suite: ten end-to-end checks with time limits.

Each check returns a Result; nothing here raises on a failed check.
"""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable

import networkx as nx
import numpy as np

from .cgy_dev import BasePaths, Cover, corner_table, invertible_quotient_check, random_loop
from .cube_core import from_cubes, is_cat0
from .dehn_fill import MetaTuple, Predicate, all_subgroups, coset_special_case, height, height_bruteforce, meta_checker, meta_hypothesis, meta_slow
from .errors import InputError, InvariantViolation
from .grp_action import ComplexOfGroups, co_cubical
from .hyp_geo import MetricGraph, delta_slim, interval_chain, log_union_bound, plateau, qc_constant
from .npc_quotient import build_condition_sets, npc_quotient_verdict
from .sageev_gen import corpus, crossing_walls, dual_complex, nested_walls, star
from .scwol_cat import Path, idealize
from .stab_graphs import StabGraphs


@dataclass
class Result:
    number: int
    title: str
    ok: bool
    elapsed: float
    limit: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.ok and self.elapsed < self.limit

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = "" if self.elapsed < self.limit else " (over time limit)"
        return f"[{tag}] {self.number:>2}. {self.title}  {self.elapsed:.2f}s / {self.limit:.0f}s{extra}"

    def to_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "ok": self.passed, "checks_ok": self.ok,
                "elapsed": round(self.elapsed, 3), "limit": self.limit, "detail": self.detail}


def _timed(number: int, title: str, limit: float, fn: Callable[[], tuple[bool, dict]]) -> Result:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except (InvariantViolation, InputError) as e:
        ok, detail = False, {"error": f"{type(e).__name__}: {e}"}
    return Result(number, title, ok, time.perf_counter() - t, limit, detail)


# ----------------------------------------------------------------- 1
def brute_chain_count(X) -> int:
    """Chains of faces counted from corner sets alone."""
    sets = [frozenset(c) for c in X.cells]
    n = len(sets)
    below = [[j for j in range(n) if sets[j] < sets[i]] for i in range(n)]
    # chains ending at i = 1 + sum over proper faces j of chains ending at j
    memo: dict[int, int] = {}

    def ending(i: int) -> int:
        if i not in memo:
            memo[i] = 1 + sum(ending(j) for j in below[i])
        return memo[i]

    return sum(ending(i) for i in range(n))


def check_idealization_counts() -> tuple[bool, dict]:
    edge = idealize(from_cubes([["a", "b"]])).scwol
    square = idealize(from_cubes([["a", "b", "c", "d"]])).scwol
    sq_oracle = brute_chain_count(from_cubes([["a", "b", "c", "d"]]))
    d = {"edge_objects": edge.n_objects, "edge_arrows": len(edge.nontrivial()),
         "square_objects": square.n_objects, "square_oracle": sq_oracle}
    ok = d["edge_objects"] == 5 and d["edge_arrows"] == 4 and square.n_objects == sq_oracle == 33
    return ok, d


# ----------------------------------------------------------------- 2
CHOICES = ("min", "max", 7)


def check_cog_axioms(items) -> tuple[bool, dict]:
    pairs = triples = n = 0
    for it in items:
        if len(it.X.cells) > 500 or len(it.G) > 120:
            continue
        n += 1
        for ch in CHOICES:
            r = ComplexOfGroups(it.action, choice=ch).verify()
            pairs += r["pairs"]
            triples += r["triples"]
    return n >= 20, {"actions": n, "choices": list(map(str, CHOICES)), "pairs": pairs, "triples": triples}


# ----------------------------------------------------------------- 3
def check_development(items, loops: int = 1000, seed: int = 0) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = []
    for it in items:
        C = ComplexOfGroups(it.action)
        cover = Cover(C)
        iq = invertible_quotient_check(cover)
        fib_ok = all(iq["fibers"][v] == len(C.G) // len(C.local[v]) for v in range(C.n_objects))
        cov = cover.check_covering()
        bp = BasePaths(C, cover, v0=_vertex_object(C))
        hom = True
        for _ in range(loops):
            p = random_loop(bp, rng, rng.randint(1, 6))
            q = random_loop(bp, rng, rng.randint(1, 6))
            pq = Path(p.base, p.tokens + q.tokens)
            if bp.eval_loop(pq) != C.G.m(bp.eval_loop(p), bp.eval_loop(q)):
                hom = False
                break
        if not (fib_ok and cov and iq["ok"] and hom):
            bad.append({"item": it.name, "fibers": fib_ok, "covering": bool(cov), "quotient": iq["ok"], "hom": hom})
    return not bad, {"instances": len(items), "loop_pairs": loops, "failures": bad}


def _vertex_object(C: ComplexOfGroups) -> int:
    for v in range(C.n_objects):
        ch = C.lift_chain[v]
        if len(ch) == 1 and C.X.dims[ch[0]] == 0:
            return v
    raise InvariantViolation("no vertex object")


# ----------------------------------------------------------------- 4
def npc_triples(items):
    for it in items:
        C = ComplexOfGroups(it.action)
        S = None
        for K in it.kernels:
            if not co_cubical(it.action, K):
                continue
            if S is None:
                S = build_condition_sets(C)
            yield it, K, C, S


def check_npc_equivalence(items) -> tuple[bool, dict]:
    n = passed = 0
    disagree, named = [], {}
    for it, K, C, S in npc_triples(items):
        r = npc_quotient_verdict(C, K, sets=S)
        n += 1
        passed += r["ok"]
        if r["ok"] != r["oracle"]["ok"] or not r["agree"]:
            disagree.append({"item": it.name, "K": sorted(K)})
        if it.name == "grid-rotation" and len(K) == len(C.G):
            f2 = any(f["set"] == "F2" for f in r["conditions"]["failures"])
            named["grid-rotation K=G"] = (not r["ok"]) and f2 and not r["oracle"]["ok"]
        if it.name == "s3-star" and len(K) == 3:
            named["s3-star K=A3"] = r["ok"] and r["oracle"]["ok"]
    ok = n >= 20 and not disagree and len(named) == 2 and all(named.values())
    return ok, {"triples": n, "passing": passed, "failing": n - passed, "disagreements": disagree, "named": named}


# ----------------------------------------------------------------- 5
def check_corners(items) -> tuple[bool, dict]:
    n, bad = 0, []
    for it in items:
        C = ComplexOfGroups(it.action)
        cover = Cover(C)
        for L in range(2, C.X.dim + 1):
            for zeta, c in corner_table(C, cover, chain_length=L).items():
                n += 1
                if c.formula != c.by_eval:
                    bad.append({"item": it.name, "zeta": zeta})
    return n > 0 and not bad, {"corners": n, "mismatches": bad}


# ----------------------------------------------------------------- 6
def random_meta_tuples(G, subgroups, rng: random.Random, n: int) -> list[MetaTuple]:
    out = []
    for _ in range(n):
        Q = rng.choice(subgroups)
        S = frozenset(x for x in Q if rng.random() < 0.3 and x != 0)
        out.append(MetaTuple(rng.randrange(len(G)), Q, S))
    return out


def meta_agree(G, tuples, K) -> bool:
    """True when the fast checker and the enumeration agree (including on
    whether the hypothesis holds)."""
    hyp = meta_hypothesis(G, tuples) is None
    if hyp != meta_slow(G, tuples, [0]):
        return False
    if not hyp:
        try:
            meta_checker(G, tuples, K)
        except InputError:
            return True
        return False
    return meta_checker(G, tuples, K)["ok"] == meta_slow(G, tuples, K)


def check_meta(items, seed: int = 0, per_instance: int = 40) -> tuple[bool, dict]:
    rng = random.Random(seed)
    runs = special = 0
    bad = []
    for it in items:
        G = it.G
        subs = all_subgroups(G)
        for K in it.kernels:
            for n in (1, 1, 2, 3):
                for _ in range(per_instance // 4):
                    tup = random_meta_tuples(G, subs, rng, n)
                    if n == 1:
                        tup = [MetaTuple(tup[0].p, tup[0].Q)]
                    runs += 1
                    if not meta_agree(G, tup, K):
                        bad.append({"item": it.name, "n": n})
                    if n == 1 and meta_hypothesis(G, tup) is None:
                        special += 1
                        want = coset_special_case(G, tup[0].p, tup[0].Q, K)
                        if meta_checker(G, tup, K)["ok"] != want:
                            bad.append({"item": it.name, "coset_case": True})
    return not bad and special > 0, {"runs": runs, "coset_cases": special, "mismatches": bad[:5]}


# ----------------------------------------------------------------- 7
def random_chain_sets(M: MetricGraph, rng: np.random.Generator, k: int) -> list[list]:
    """k consecutively intersecting sets: intervals between random points,
    each optionally thickened by a neighbour."""
    pts = [M.nodes[int(i)] for i in rng.integers(0, M.n, size=k + 1)]
    return interval_chain(M, pts)


def check_log_union(seed: int = 0) -> tuple[bool, dict]:
    rng = np.random.default_rng(seed)
    graphs = []
    for n in (20, 40, 80):
        graphs.append(("tree", nx.random_labeled_tree(n, seed=int(rng.integers(1 << 30)))))
    for a, b in ((3, 3), (4, 6), (6, 6)):
        graphs.append(("grid", nx.convert_node_labels_to_integers(nx.grid_2d_graph(a, b))))
    rows, worst = [], None
    for kind, g in graphs:
        M = MetricGraph(g)
        delta = delta_slim(M)
        for k in (1, 2, 3, 5, 8, 16, 33, 64):
            sets = random_chain_sets(M, rng, k)
            eps = max(qc_constant(M, s) for s in sets)
            union = set().union(*map(set, sets))
            q = qc_constant(M, union)
            bound = log_union_bound(k, delta, eps)
            rows.append((kind, M.n, k, q, bound))
            if q > bound:
                worst = {"graph": kind, "n": M.n, "k": k, "qc": q, "bound": bound}
    pl = plateau()
    ok = worst is None and pl["deviation"] == 0
    return ok, {"chains": len(rows), "violation": worst, "plateau": pl}


# ----------------------------------------------------------------- 8
def check_stab_graphs(items) -> tuple[bool, dict]:
    fails = []
    lists = 0
    for it in items:
        C = ComplexOfGroups(it.action)
        sg = StabGraphs(C)
        conn = nx.is_connected(sg.gamma_U.graph)
        if not conn:
            fails.append({"item": it.name, "check": "gamma_U_connected"})
        for cl in sg.lists:
            lists += 1
            checks = {
                "stabC": sg.stab_invariance(cl),
                "alpha": sg.alpha_bijection(cl),
                "nesting": sg.nesting(cl),
            }
            mv = sg.mutated_vertices(cl)
            if mv is not None and sg.stab_invariance(cl, mv):
                checks["mutation"] = False
            for name, v in checks.items():
                if not v:
                    fails.append({"item": it.name, "list": list(cl), "check": name,
                                  "reason": getattr(v, "reason", "mutation not detected")})
    by_check: dict[str, int] = {}
    for f in fails:
        by_check[f["check"]] = by_check.get(f["check"], 0) + 1
    return not fails, {"lists": lists, "failures": len(fails), "by_check": by_check,
                       "items": sorted({f["item"] for f in fails}), "first": fails[:3]}


# ----------------------------------------------------------------- 9
def check_sageev(max_n: int = 5) -> tuple[bool, dict]:
    out = {}
    ok = True
    for n in range(1, max_n + 1):
        X = dual_complex(crossing_walls(n)).X
        want = [math.comb(n, k) * 2 ** (n - k) for k in range(n + 1)]
        cube = X.counts() == want and nx.is_isomorphic(X.skeleton(), nx.hypercube_graph(n)) and bool(is_cat0(X))
        P = dual_complex(nested_walls(n)).X
        path = P.counts() == [n + 1, n] and nx.is_isomorphic(P.skeleton(), nx.path_graph(n + 1)) and bool(is_cat0(P))
        out[n] = {"cube": cube, "path": path}
        ok = ok and cube and path
    return ok, out


# ---------------------------------------------------------------- 10
def check_height(items) -> tuple[bool, dict]:
    A = star(3)
    G = A.G
    t = next(H for H in all_subgroups(G) if len(H) == 2)
    h, hb = height(G, [t]), height_bruteforce(G, [t])
    ok = h == hb == 1
    fams = []
    for it in items:
        if len(fams) == 10:
            break
        if len(it.G) == 1:
            continue
        fam = [it.action.pointwise_stabilizer(c) for c in it.action.orbit_reps()]
        top = max(len(H) for H in fam)
        hs = [height(it.G, fam, Predicate(N)) for N in range(top, 0, -1)]
        mono = all(a <= b for a, b in zip(hs, hs[1:]))
        brute = hs == [height_bruteforce(it.G, fam, Predicate(N)) for N in range(top, 0, -1)]
        fams.append({"item": it.name, "heights": hs, "monotone": mono, "bruteforce": brute})
        ok = ok and mono and brute
    return ok and len(fams) == 10, {"s3_height": h, "s3_bruteforce": hb, "families": fams}


# -------------------------------------------------------------- driver
TITLES = {
    1: "idealization counts",
    2: "complex-of-groups axioms",
    3: "development correctness",
    4: "algebra-geometry equivalence",
    5: "corner elements, formula vs evaluation",
    6: "meta checker vs enumeration",
    7: "log-union bound and qc plateau",
    8: "stabilizer graphs",
    9: "dual complexes of crossing and nested walls",
    10: "height and predicate monotonicity",
}
LIMITS = {1: 1, 2: 30, 3: 60, 4: 120, 5: 30, 6: 30, 7: 60, 8: 60, 9: 10, 10: 10}


def run_criterion(k: int, seed: int = 0, items=None) -> Result:
    if items is None and k in (2, 3, 4, 5, 6, 8, 10):
        items = corpus(seed)
    fns: dict[int, Callable[[], tuple[bool, dict]]] = {
        1: check_idealization_counts,
        2: lambda: check_cog_axioms(items),
        3: lambda: check_development(items, seed=seed),
        4: lambda: check_npc_equivalence(items),
        5: lambda: check_corners(items),
        6: lambda: check_meta(items, seed=seed),
        7: lambda: check_log_union(seed=seed),
        8: lambda: check_stab_graphs(items),
        9: check_sageev,
        10: lambda: check_height(items),
    }
    if k not in fns:
        raise InputError("unknown criterion", f"expected 1..10, got {k}")
    return _timed(k, TITLES[k], LIMITS[k], fns[k])


def run_all(seed: int = 0, only=None, parallel: int = 1) -> list[Result]:
    items = corpus(seed)
    ks = list(only or range(1, 11))
    if parallel > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(parallel) as ex:
            return list(ex.map(run_criterion, ks, [seed] * len(ks)))
    return [run_criterion(k, seed, items) for k in ks]
