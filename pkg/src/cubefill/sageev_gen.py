"""Dual cube complexes of finite wallspaces, and the test corpus built from them
and from a few hand-made complexes."""
from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cube_core import CubeComplex, from_cubes, is_cat0, validate
from .errors import InputError, InvariantViolation
from .grp_action import GroupAction, action_from_vertex_perms, action_to_spec, trivial_action


# -------------------------------------------------------------- wallspaces
@dataclass
class Wallspace:
    """Points plus walls.  Each wall is stored by the side that misses the
    first point, so the first point has the all-zero orientation."""

    points: list[str]
    walls: list[frozenset]
    symmetries: list[dict] = field(default_factory=list)

    def __post_init__(self):
        pts = [str(p) for p in self.points]
        if len(set(pts)) != len(pts):
            raise InputError("malformed wallspace", "repeated point")
        self.points = pts
        allp = frozenset(pts)
        norm, seen = [], set()
        for k, h in enumerate(self.walls):
            h = frozenset(str(x) for x in h)
            if not h <= allp:
                raise InputError("malformed wallspace", f"unknown points {sorted(h - allp)}", f"walls[{k}]")
            if not h or h == allp:
                raise InputError("malformed wallspace", "a wall side is empty", f"walls[{k}]")
            if pts[0] in h:
                h = allp - h
            if h in seen:
                raise InputError("malformed wallspace", "duplicate wall", f"walls[{k}]")
            seen.add(h)
            norm.append(h)
        self.walls = norm
        self.wall_index = {h: i for i, h in enumerate(norm)}
        for k, s in enumerate(self.symmetries):
            perm = {p: str(s.get(p, p)) for p in pts}
            if sorted(perm.values()) != sorted(pts):
                raise InputError("malformed wallspace", "symmetry is not a bijection", f"symmetries[{k}]")
            self.symmetries[k] = perm
            for h in norm:
                img = frozenset(perm[x] for x in h)
                if img not in seen and allp - img not in seen:
                    raise InputError("malformed wallspace", "symmetry does not preserve the walls", f"symmetries[{k}]")

    def principal(self, p: str) -> tuple[int, ...]:
        return tuple(int(p in h) for h in self.walls)

    def halfspace(self, w: int, bit: int) -> frozenset:
        h = self.walls[w]
        return h if bit else frozenset(self.points) - h

    def consistent(self, o: Sequence[int]) -> bool:
        hs = [self.halfspace(w, b) for w, b in enumerate(o)]
        return all(hs[i] & hs[j] for i in range(len(hs)) for j in range(i + 1, len(hs)))

    def wall_image(self, s: dict, w: int) -> tuple[int, bool]:
        """Image of wall w under s, and whether the stored side is swapped."""
        img = frozenset(s[x] for x in self.walls[w])
        if img in self.wall_index:
            return self.wall_index[img], False
        return self.wall_index[frozenset(self.points) - img], True

    def to_dict(self) -> dict:
        return {"points": self.points, "walls": [sorted(h) for h in self.walls],
                "symmetries": [{k: v for k, v in s.items() if k != v} for s in self.symmetries]}


def wallspace_from_dict(raw: dict) -> Wallspace:
    try:
        return Wallspace(list(raw["points"]), [frozenset(h) for h in raw["walls"]],
                         [dict(s) for s in raw.get("symmetries", [])])
    except (KeyError, TypeError) as e:
        raise InputError("malformed wallspace", f"missing or bad field {e}") from None


@dataclass
class DualComplex:
    W: Wallspace
    X: CubeComplex
    action: GroupAction
    orientations: list[tuple[int, ...]]
    point_vertex: dict[str, str]


def _name(o: Sequence[int]) -> str:
    return "o" + "".join(map(str, o)) if o else "o"


def dual_complex(W: Wallspace) -> DualComplex:
    n = len(W.walls)
    start = sorted({W.principal(p) for p in W.points})
    seen = set(start)
    queue = deque(start)
    while queue:
        o = queue.popleft()
        for w in range(n):
            f = o[:w] + (1 - o[w],) + o[w + 1:]
            if f not in seen and W.consistent(f):
                seen.add(f)
                queue.append(f)
    verts = sorted(seen)
    vset = set(verts)

    def flip(o, ws):
        o = list(o)
        for w in ws:
            o[w] ^= 1
        return tuple(o)

    cubes = []
    for o in verts:
        up = [w for w in range(n) if o[w] == 0 and flip(o, [w]) in vset]
        for w in up:
            cubes.append([_name(o), _name(flip(o, [w]))])
        # grow cubes with o as the all-zero corner, walls in increasing order
        stack = [[w] for w in up]
        while stack:
            S = stack.pop()
            for w in up:
                if w <= S[-1]:
                    continue
                T = S + [w]
                corners = [flip(o, [T[j] for j in range(len(T)) if m >> j & 1]) for m in range(1 << len(T))]
                if all(c in vset for c in corners):
                    cubes.append([_name(c) for c in corners])
                    stack.append(T)
    names = [_name(o) for o in verts]
    if cubes:
        X = from_cubes(cubes, vertices=names)
    else:
        X = validate({"vertices": names, "cubes": [{"dim": 0, "corners": {"": names[0]}}]})
    v = is_cat0(X)
    if not v:
        raise InvariantViolation("dual complex is not CAT(0): " + v.reason)
    realized = {w for o in verts for w in range(n) if flip(o, [w]) in vset}
    if len(X.hyperplanes()) != len(realized):
        raise InvariantViolation("hyperplane count differs from the number of realized walls")
    if W.symmetries:
        vperms = []
        for s in W.symmetries:
            img = [W.wall_image(s, w) for w in range(n)]
            vp = {}
            for o in verts:
                t = [0] * n
                for w, (w2, swap) in enumerate(img):
                    t[w2] = o[w] ^ int(swap)
                t = tuple(t)
                if t not in vset:
                    raise InvariantViolation("symmetry does not preserve the principal component")
                vp[_name(o)] = _name(t)
            vperms.append(vp)
        A = action_from_vertex_perms(X, vperms)
    else:
        A = trivial_action(X)
    pv = {p: _name(W.principal(p)) for p in W.points}
    return DualComplex(W, X, A, verts, pv)


def crossing_walls(n: int) -> Wallspace:
    """Coordinate cuts of {0,1}^n; all pairs cross."""
    pts = ["".join(str(m >> j & 1) for j in range(n)) for m in range(1 << n)]
    walls = [frozenset(p for p in pts if p[j] == "1") for j in range(n)]
    return Wallspace(pts, walls)


def nested_walls(n: int) -> Wallspace:
    """Points 0..n on a line, cut between consecutive points."""
    pts = [str(i) for i in range(n + 1)]
    walls = [frozenset(str(i) for i in range(k, n + 1)) for k in range(1, n + 1)]
    return Wallspace(pts, walls, [{str(i): str(n - i) for i in range(n + 1)}])


def polygon_walls(m: int) -> Wallspace:
    """2m points on a circle cut by m diameters, with the dihedral symmetry."""
    N = 2 * m
    pts = [f"q{i}" for i in range(N)]
    walls = [frozenset(f"q{(k + i) % N}" for i in range(m)) for k in range(m)]
    rot = {f"q{i}": f"q{(i + 1) % N}" for i in range(N)}
    ref = {f"q{i}": f"q{(-i) % N}" for i in range(N)}
    return Wallspace(pts, walls, [rot, ref])


def grid_walls(a: int, b: int, symmetric: bool = True) -> Wallspace:
    pts = [f"{i},{j}" for i in range(a + 1) for j in range(b + 1)]
    walls = [frozenset(f"{i},{j}" for i in range(k, a + 1) for j in range(b + 1)) for k in range(1, a + 1)]
    walls += [frozenset(f"{i},{j}" for i in range(a + 1) for j in range(k, b + 1)) for k in range(1, b + 1)]
    sym = [{f"{i},{j}": f"{a - i},{b - j}" for i in range(a + 1) for j in range(b + 1)}] if symmetric else []
    return Wallspace(pts, walls, sym)


# ------------------------------------------------------------ named items
def _grid_2x2(vperms_for) -> GroupAction:
    v = lambda i, j: f"v{i}{j}"
    sq = [[v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)] for i in range(2) for j in range(2)]
    X = from_cubes(sq)
    return action_from_vertex_perms(X, vperms_for(v))


def grid_rotation() -> GroupAction:
    """2x2 grid of squares with the half-turn about the centre."""
    return _grid_2x2(lambda v: [{v(i, j): v(2 - i, 2 - j) for i in range(3) for j in range(3)}])


def grid_d4() -> GroupAction:
    """2x2 grid with its full dihedral symmetry."""
    return _grid_2x2(lambda v: [{v(i, j): v(j, 2 - i) for i in range(3) for j in range(3)},
                                {v(i, j): v(2 - i, j) for i in range(3) for j in range(3)}])


def grid_v4() -> GroupAction:
    """2x2 grid with the two axis reflections."""
    return _grid_2x2(lambda v: [{v(i, j): v(2 - i, j) for i in range(3) for j in range(3)},
                                {v(i, j): v(i, 2 - j) for i in range(3) for j in range(3)}])


def star(n: int = 3) -> GroupAction:
    """n edges at a centre with the full symmetric group on the leaves."""
    leaves = [chr(ord("a") + i) for i in range(n)]
    X = from_cubes([["o", x] for x in leaves])
    gens = [{leaves[0]: leaves[1], leaves[1]: leaves[0]}]
    if n > 2:
        gens.append({leaves[i]: leaves[(i + 1) % n] for i in range(n)})
    return action_from_vertex_perms(X, gens)


def diagonal_square() -> GroupAction:
    """One square with the reflection in a diagonal."""
    X = from_cubes([["a", "b", "c", "d"]])
    return action_from_vertex_perms(X, [{"b": "c", "c": "b"}])


def open_corner() -> CubeComplex:
    """Three squares around a vertex, pairwise sharing an edge: the vertex
    link is an empty triangle, so this is not non-positively curved."""
    return from_cubes([["o", "a", "b", "ab"], ["o", "b", "c", "bc"], ["o", "c", "a", "ca"]])


def cube_perm_action(n: int = 3, full: bool = True) -> GroupAction:
    """The n-cube with coordinate permutations (S_n) or just the trivial group."""
    names = [f"p{m}" for m in range(1 << n)]
    X = from_cubes([names])
    if not full:
        return trivial_action(X)

    def perm(sig):
        out = {}
        for m in range(1 << n):
            bits = [(m >> j) & 1 for j in range(n)]
            out[names[m]] = names[sum(bits[sig[j]] << j for j in range(n))]
        return out

    gens = [perm([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(perm(list(range(1, n)) + [0]))
    return action_from_vertex_perms(X, gens)


def fan(n: int, step: int = 1) -> GroupAction:
    """n squares around a centre (a disc), rotated by ``step`` squares."""
    sq = [["o", f"a{i}", f"a{(i + 1) % n}", f"b{i}"] for i in range(n)]
    X = from_cubes(sq)
    rot = {}
    for i in range(n):
        rot[f"a{i}"] = f"a{(i + step) % n}"
        rot[f"b{i}"] = f"b{(i + step) % n}"
    return action_from_vertex_perms(X, [rot])


def path_reflection(n: int) -> GroupAction:
    X = from_cubes([[str(i), str(i + 1)] for i in range(n)])
    return action_from_vertex_perms(X, [{str(i): str(n - i) for i in range(n + 1)}])


# ----------------------------------------------------------------- corpus
@dataclass
class CorpusItem:
    name: str
    action: GroupAction
    kernels: list[frozenset]
    tags: tuple[str, ...] = ()

    @property
    def X(self) -> CubeComplex:
        return self.action.X

    @property
    def G(self):
        return self.action.G

    def to_dict(self) -> dict:
        return {"name": self.name, "tags": list(self.tags), "complex": self.X.to_dict(),
                "action": action_to_spec(self.action),
                "kernels": [sorted(int(k) for k in K) for K in self.kernels]}


def normal_subgroups(G) -> list[frozenset]:
    from .dehn_fill import all_subgroups
    return [H for H in all_subgroups(G) if G.is_normal(H)]


def _random_wallspace(rng: np.random.Generator, k: int) -> Wallspace:
    """Axis cuts of a small grid of points, a random subset kept."""
    a, b = int(rng.integers(1, 4)), int(rng.integers(1, 3))
    full = grid_walls(a, b, symmetric=False)
    keep = sorted(int(i) for i in rng.choice(len(full.walls), size=min(k, len(full.walls)), replace=False))
    sym = [{f"{i},{j}": f"{a - i},{b - j}" for i in range(a + 1) for j in range(b + 1)}] if rng.random() < 0.5 else []
    walls = [full.walls[i] for i in keep]
    if sym:
        # close the kept walls under the symmetry
        W0 = Wallspace(full.points, full.walls, sym)
        ids = set(keep)
        for i in list(ids):
            ids.add(W0.wall_image(W0.symmetries[0], i)[0])
        walls = [full.walls[i] for i in sorted(ids)]
    return Wallspace(full.points, walls, sym)


PROFILES = {"small": 4, "medium": 10}


def corpus(seed: int = 0, profile: str = "small") -> list[CorpusItem]:
    """Deterministic corpus: named instances, small families and random
    dual complexes.  Every complex in it is CAT(0)."""
    if profile not in PROFILES:
        raise InputError("bad profile", f"expected one of {sorted(PROFILES)}")
    items: list[tuple[str, GroupAction, tuple]] = [
        ("grid-rotation", grid_rotation(), ("named",)),
        ("s3-star", star(3), ("named", "tree")),
        ("diagonal-square", diagonal_square(), ("named", "index2")),
        ("grid-d4", grid_d4(), ("grid",)),
        ("grid-v4", grid_v4(), ("grid",)),
        ("s4-star", star(4), ("tree",)),
        ("path-reflection-4", path_reflection(4), ("tree",)),
        ("s3-cube", cube_perm_action(3), ("cube",)),
        ("cube3", cube_perm_action(3, full=False), ("cube",)),
        ("square-s2", cube_perm_action(2), ("cube", "index2")),
    ]
    for n, step in ((4, 1), (6, 1), (6, 2), (8, 1), (5, 1)):
        items.append((f"fan-{n}-{step}", fan(n, step), ("fan",)))
    for m in (2, 3):
        items.append((f"polygon-{m}", dual_complex(polygon_walls(m)).action, ("dual",)))
    items.append(("nested-3", dual_complex(nested_walls(3)).action, ("dual", "tree")))
    items.append(("grid-walls-2x1", dual_complex(grid_walls(2, 1)).action, ("dual", "grid")))
    rng = np.random.default_rng(seed)
    for r in range(PROFILES[profile]):
        W = _random_wallspace(rng, int(rng.integers(1, 4)))
        items.append((f"random-{seed}-{r}", dual_complex(W).action, ("dual", "random")))
    out = []
    for name, A, tags in items:
        v = is_cat0(A.X)
        if not v:
            raise InvariantViolation(f"corpus item {name} is not CAT(0): {v.reason}")
        out.append(CorpusItem(name, A, normal_subgroups(A.G), tags))
    return out


def manifest(items: Sequence[CorpusItem]) -> str:
    return json.dumps([it.to_dict() for it in items], sort_keys=True, separators=(",", ":"))


def manifest_digest(items: Sequence[CorpusItem]) -> str:
    return hashlib.sha256(manifest(items).encode()).hexdigest()
