"""Finite categories, scwols, the idealization of a cube complex, paths and
their elementary homotopies, and the covering predicate."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Protocol, Sequence

import networkx as nx

from .cube_core import CubeComplex, Verdict
from .errors import InputError


class Category(Protocol):
    def src(self, a) -> int: ...

    def dst(self, a) -> int: ...

    def compose(self, a, b): ...

    def unit(self, v: int): ...

    def is_unit(self, a) -> bool: ...


class FiniteCategory:
    """Category with explicitly enumerated arrows.

    Arrow ids ``0..n_objects-1`` are the units; ``compose[(a, b)]`` is the
    composite "a after b", defined when dst(b) == src(a).
    """

    def __init__(self, objects: Sequence[Hashable], src: Sequence[int], dst: Sequence[int],
                 compose: dict[tuple[int, int], int], labels: Sequence[Hashable] | None = None):
        self.objects = list(objects)
        n = len(self.objects)
        self._src = list(range(n)) + list(src)
        self._dst = list(range(n)) + list(dst)
        self.labels = [("unit", v) for v in range(n)] + list(labels if labels is not None else range(n, n + len(src)))
        self._compose = dict(compose)
        self.out_arrows: list[list[int]] = [[] for _ in range(n)]
        self.in_arrows: list[list[int]] = [[] for _ in range(n)]
        for a in range(len(self._src)):
            self.out_arrows[self._src[a]].append(a)
            self.in_arrows[self._dst[a]].append(a)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self._src)

    def nontrivial(self) -> range:
        return range(self.n_objects, self.n_arrows)

    def src(self, a: int) -> int:
        return self._src[a]

    def dst(self, a: int) -> int:
        return self._dst[a]

    def unit(self, v: int) -> int:
        return v

    def is_unit(self, a: int) -> bool:
        return a < self.n_objects

    def compose(self, a: int, b: int) -> int | None:
        if self._dst[b] != self._src[a]:
            return None
        if self.is_unit(a):
            return b
        if self.is_unit(b):
            return a
        return self._compose.get((a, b))

    def composable_pairs(self):
        for (a, b), ab in self._compose.items():
            yield a, b, ab

    def check_scwol(self) -> Verdict:
        for a in self.nontrivial():
            if self._src[a] == self._dst[a]:
                return Verdict(False, "nontrivial arrow from an object to itself", {"arrow": a})
        for b in self.nontrivial():
            for a in self.out_arrows[self._dst[b]]:
                if self.is_unit(a):
                    continue
                if (a, b) not in self._compose:
                    return Verdict(False, "missing composite", {"pair": [a, b]})
        for (a, b), ab in self._compose.items():
            for c in self.nontrivial():
                if self._dst[c] != self._src[b]:
                    continue
                bc = self.compose(b, c)
                if self.compose(ab, c) != self.compose(a, bc):
                    return Verdict(False, "composition not associative", {"triple": [a, b, c]})
        return Verdict(True)

    def to_dict(self) -> dict:
        n = self.n_objects
        return {
            "objects": [_jsonable(o) for o in self.objects],
            "arrows": [{"id": a - n, "src": self._src[a], "dst": self._dst[a]} for a in self.nontrivial()],
            "compose": sorted([a - n, b - n, ab - n] for (a, b), ab in self._compose.items()),
        }


def _jsonable(o):
    if isinstance(o, tuple):
        return [_jsonable(x) for x in o]
    return o


class Scwol(FiniteCategory):
    pass


@dataclass
class Idealization:
    scwol: Scwol
    chains: list[tuple[int, ...]]
    chain_index: dict[tuple[int, ...], int]
    arrow_index: dict[tuple[int, int], int]
    complex: CubeComplex

    def arrow(self, c1: tuple[int, ...], c2: tuple[int, ...]) -> int:
        return self.arrow_index[(self.chain_index[c1], self.chain_index[c2])]

    def chain_names(self, k: int) -> list[str]:
        return [self.complex.names[c] for c in self.chains[k]]


def chains_of(X: CubeComplex) -> list[tuple[int, ...]]:
    """All nonempty chains of cells under strict face inclusion, in
    lexicographic order of cell ids."""
    out = []

    def grow(ch):
        out.append(ch)
        for t in X.cofaces[ch[-1]]:
            grow(ch + (t,))

    for c in range(len(X.cells)):
        grow((c,))
    out.sort()
    return out


def idealize(X: CubeComplex) -> Idealization:
    chains = chains_of(X)
    index = {c: i for i, c in enumerate(chains)}
    n = len(chains)
    src, dst, pairs = [], [], []
    arrow_index: dict[tuple[int, int], int] = {}
    for i, ch in enumerate(chains):
        L = len(ch)
        for r in range(1, L):
            for pos in itertools.combinations(range(L), r):
                sub = tuple(ch[p] for p in pos)
                j = index[sub]
                arrow_index[(i, j)] = n + len(src)
                src.append(i)
                dst.append(j)
                pairs.append((i, j))
    compose = {}
    for (i, j), b in arrow_index.items():
        for r in range(1, len(chains[j])):
            for pos in itertools.combinations(range(len(chains[j])), r):
                k = index[tuple(chains[j][p] for p in pos)]
                compose[(arrow_index[(j, k)], b)] = arrow_index[(i, k)]
    S = Scwol(chains, src, dst, compose, labels=pairs)
    return Idealization(S, chains, index, arrow_index, X)


def realization_1skeleton(S: FiniteCategory) -> nx.MultiGraph:
    g = nx.MultiGraph()
    g.add_nodes_from(range(S.n_objects))
    for a in S.nontrivial():
        g.add_edge(S.src(a), S.dst(a), arrow=a)
    return g


# ------------------------------------------------------------------- paths
@dataclass(frozen=True)
class Path:
    """A C-path: tokens ``(arrow, sign)`` with sign +1 for a^+ (from t(a) to
    i(a)) and -1 for a^- (from i(a) to t(a)).  ``base`` is the start."""

    base: int
    tokens: tuple = ()

    def __len__(self) -> int:
        return len(self.tokens)


class MoveError(InputError):
    def __init__(self, message: str):
        super().__init__("move not applicable", message)


def token_ends(cat: Category, tok) -> tuple[int, int]:
    a, s = tok
    return (cat.dst(a), cat.src(a)) if s > 0 else (cat.src(a), cat.dst(a))


def path_objects(cat: Category, p: Path) -> list[int]:
    objs = [p.base]
    for tok in p.tokens:
        i, t = token_ends(cat, tok)
        if i != objs[-1]:
            raise InputError("bad path", f"token {tok} does not start at {objs[-1]}")
        objs.append(t)
    return objs


def endpoints(cat: Category, p: Path) -> tuple[int, int]:
    objs = path_objects(cat, p)
    return objs[0], objs[-1]


def concat(cat: Category, p: Path, q: Path) -> Path:
    if endpoints(cat, p)[1] != q.base:
        raise InputError("bad path", "paths do not match up")
    return Path(p.base, p.tokens + q.tokens)


def reverse(cat: Category, p: Path) -> Path:
    end = endpoints(cat, p)[1]
    return Path(end, tuple((a, -s) for a, s in reversed(p.tokens)))


def elementary_homotopy(cat: Category, p: Path, move: str, position: int, arrows=None, sign: int = 1) -> Path:
    """Apply one elementary homotopy.

    moves: cancel, uncancel (arrows=a, sign), merge, split (arrows=(a, b)),
    unit_delete, unit_insert (sign).
    """
    toks = list(p.tokens)
    objs = path_objects(cat, p)
    if move == "cancel":
        if position + 1 >= len(toks):
            raise MoveError("cancel needs two tokens")
        (a, s), (b, t) = toks[position], toks[position + 1]
        if a != b or s != -t:
            raise MoveError("tokens are not a backtrack")
        new = toks[:position] + toks[position + 2:]
    elif move == "uncancel":
        a = arrows
        tok = (a, sign)
        if token_ends(cat, tok)[0] != objs[position]:
            raise MoveError("arrow does not start here")
        new = toks[:position] + [tok, (a, -sign)] + toks[position:]
    elif move == "merge":
        if position + 1 >= len(toks):
            raise MoveError("merge needs two tokens")
        (x, s), (y, t) = toks[position], toks[position + 1]
        if s != t:
            raise MoveError("merge needs equal signs")
        ab = cat.compose(x, y) if s > 0 else cat.compose(y, x)
        if ab is None:
            raise MoveError("arrows are not composable")
        new = toks[:position] + [(ab, s)] + toks[position + 2:]
    elif move == "split":
        if position >= len(toks):
            raise MoveError("no token")
        c, s = toks[position]
        a, b = arrows
        if cat.compose(a, b) != c:
            raise MoveError("split does not compose to the token")
        pair = [(a, 1), (b, 1)] if s > 0 else [(b, -1), (a, -1)]
        new = toks[:position] + pair + toks[position + 1:]
    elif move == "unit_delete":
        if position >= len(toks) or not cat.is_unit(toks[position][0]):
            raise MoveError("token is not a unit")
        new = toks[:position] + toks[position + 1:]
    elif move == "unit_insert":
        new = toks[:position] + [(cat.unit(objs[position]), sign)] + toks[position:]
    else:
        raise MoveError(f"unknown move {move!r}")
    out = Path(p.base, tuple(new))
    if endpoints(cat, out) != (objs[0], objs[-1]):
        raise MoveError("endpoints changed")
    return out


def non_backtracking(p: Path) -> bool:
    for (a, s), (b, t) in zip(p.tokens, p.tokens[1:]):
        if a == b and s == -t:
            return False
    return True


# ------------------------------------------------------------------ functors
@dataclass
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    obj_map: list[int]
    arrow_map: list[int]


def check_functor(F: Functor) -> Verdict:
    S, T = F.source, F.target
    for a in range(S.n_arrows):
        fa = F.arrow_map[a]
        if T.src(fa) != F.obj_map[S.src(a)] or T.dst(fa) != F.obj_map[S.dst(a)]:
            return Verdict(False, "arrow map does not respect endpoints", {"arrow": a})
    for v in range(S.n_objects):
        if F.arrow_map[S.unit(v)] != T.unit(F.obj_map[v]):
            return Verdict(False, "unit not sent to unit", {"object": v})
    for a, b, ab in S.composable_pairs():
        if T.compose(F.arrow_map[a], F.arrow_map[b]) != F.arrow_map[ab]:
            return Verdict(False, "composition not preserved", {"pair": [a, b]})
    return Verdict(True)


def is_nondegenerate(F: Functor) -> Verdict:
    """Arrows out of each object map bijectively onto arrows out of its image."""
    S, T = F.source, F.target
    for x in range(S.n_objects):
        img = [F.arrow_map[a] for a in S.out_arrows[x]]
        if len(set(img)) != len(img) or set(img) != set(T.out_arrows[F.obj_map[x]]):
            return Verdict(False, "not a bijection on outgoing arrows", {"object": x})
    return Verdict(True)


def is_covering(F: Functor, check: bool = True) -> Verdict:
    if check:
        fv = check_functor(F)
        if not fv:
            raise InputError("not a functor", fv.reason)
    S, T = F.source, F.target
    for x in range(S.n_objects):
        fx = F.obj_map[x]
        for side, up, down in (("initial", S.out_arrows[x], T.out_arrows[fx]),
                               ("terminal", S.in_arrows[x], T.in_arrows[fx])):
            img = [F.arrow_map[a] for a in up]
            if len(set(img)) != len(img) or set(img) != set(down):
                return Verdict(False, f"not a bijection on arrows with {side} object",
                               {"object": x, "image": fx, "upstairs": len(up), "downstairs": len(down)})
    return Verdict(True)
