"""Properads as computable data, decorations of level graphs, and test families.

A properad is given by its colors, its operations per profile, the
bisymmetric action, identities and a composition oracle for connected
decorated graphs of height 2.  Decorating a level graph means coloring every
edge and putting an operation of matching profile on every vertex.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Hashable, Sequence

from . import finset, levelgraph
from .finset import FinMap
from .levelgraph import Embedding, LevelGraph

Color = Hashable
Profile = tuple[tuple, tuple]


class Properad(ABC):
    @abstractmethod
    def colors(self) -> list: ...

    @abstractmethod
    def ops(self, inputs: Sequence, outputs: Sequence, bound: int) -> list: ...

    @abstractmethod
    def profile(self, op) -> Profile: ...

    @abstractmethod
    def identity(self, color): ...

    @abstractmethod
    def act(self, gamma: FinMap, chi: FinMap, op): ...

    @abstractmethod
    def compose2(self, d: "Decoration"): ...

    # text syntax for operations; subclasses with a printable surface override
    def format_op(self, op) -> str:
        raise NotImplementedError

    def parse_op(self, token: str, inputs: Sequence, outputs: Sequence):
        raise NotImplementedError

    def format_color(self, color) -> str:
        return str(color)

    def parse_color(self, token: str):
        for c in self.colors():
            if self.format_color(c) == token:
                return c
        raise ValueError(f"unknown color '{token}'")


@dataclass(frozen=True, order=True)
class Op:
    """Operation of a built-in properad: its profile plus a label."""
    inputs: tuple
    outputs: tuple
    label: Any


def permute_profile(gamma: FinMap, chi: FinMap, inputs: Sequence, outputs: Sequence) -> Profile:
    """Profile after acting: input i of the result is input gamma(i) of the original."""
    if gamma.dom_size != len(inputs) or chi.dom_size != len(outputs):
        raise ValueError("permutation sizes do not match the profile")
    if not (finset.is_bijection(gamma) and finset.is_bijection(chi)):
        raise ValueError("action needs bijections")
    return tuple(inputs[g - 1] for g in gamma.targets), tuple(outputs[c - 1] for c in chi.targets)


class _BuiltIn(Properad):
    def profile(self, op: Op) -> Profile:
        return op.inputs, op.outputs

    def act(self, gamma, chi, op: Op) -> Op:
        ins, outs = permute_profile(gamma, chi, op.inputs, op.outputs)
        return Op(ins, outs, op.label)


class Terminal(_BuiltIn):
    """k colors and exactly one operation of every profile."""

    def __init__(self, k: int = 1):
        if k < 1:
            raise ValueError("need at least one color")
        self.k = k

    def __repr__(self):
        return f"terminal(k={self.k})"

    def colors(self):
        return list(range(self.k))

    def ops(self, inputs, outputs, bound):
        return [Op(tuple(inputs), tuple(outputs), "*")]

    def identity(self, color):
        return Op((color,), (color,), "*")

    def compose2(self, d):
        return Op(d.level_colors[0], d.level_colors[-1], "*")

    def format_op(self, op):
        return "*"

    def parse_op(self, token, inputs, outputs):
        if token != "*":
            raise ValueError(f"terminal operations are written '*', got '{token}'")
        return Op(tuple(inputs), tuple(outputs), "*")


class Discrete(_BuiltIn):
    """k colors and nothing but identities."""

    def __init__(self, k: int = 1):
        if k < 1:
            raise ValueError("need at least one color")
        self.k = k

    def __repr__(self):
        return f"discrete(k={self.k})"

    def colors(self):
        return list(range(self.k))

    def ops(self, inputs, outputs, bound):
        if len(inputs) == len(outputs) == 1 and inputs[0] == outputs[0]:
            return [self.identity(inputs[0])]
        return []

    def identity(self, color):
        return Op((color,), (color,), "id")

    def compose2(self, d):
        ins, outs = d.level_colors[0], d.level_colors[-1]
        if len(ins) != 1 or ins != outs:
            raise ValueError("a connected graph of identities is a single line")
        return self.identity(ins[0])

    def format_op(self, op):
        return "id"

    def parse_op(self, token, inputs, outputs):
        if token != "id" or not self.ops(inputs, outputs, 0):
            raise ValueError(f"no operation '{token}' with this profile")
        return self.identity(inputs[0])


class CayleyMonoid:
    """A finite commutative monoid given by its addition table."""

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[int]]):
        m = len(names)
        if m == 0 or len(table) != m or any(len(row) != m for row in table):
            raise ValueError("table must be a non-empty m x m grid")
        if any(not 0 <= x < m for row in table for x in row):
            raise ValueError("table entries must be elements")
        self.names = list(names)
        self.table = [list(row) for row in table]
        rng = range(m)
        units = [e for e in rng if all(table[e][x] == x == table[x][e] for x in rng)]
        if not units:
            raise ValueError("table has no unit")
        if any(table[x][y] != table[y][x] for x in rng for y in rng):
            raise ValueError("table is not commutative")
        if any(table[table[x][y]][z] != table[x][table[y][z]] for x in rng for y in rng for z in rng):
            raise ValueError("table is not associative")
        self.zero = units[0]

    def __repr__(self):
        return f"CayleyMonoid({self.names})"

    def add(self, x: int, y: int) -> int:
        return self.table[x][y]

    def elements(self, bound: int) -> list[int]:
        return list(range(len(self.names)))

    def format(self, x: int) -> str:
        return self.names[x]

    def parse(self, token: str) -> int:
        try:
            return self.names.index(token)
        except ValueError:
            raise ValueError(f"unknown monoid element '{token}'") from None

    @classmethod
    def cyclic(cls, n: int) -> "CayleyMonoid":
        return cls([str(i) for i in range(n)], [[(i + j) % n for j in range(n)] for i in range(n)])

    @classmethod
    def from_text(cls, text: str) -> "CayleyMonoid":
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
        if not rows:
            raise ValueError("empty table file")
        names = rows[0]
        index = {name: i for i, name in enumerate(names)}
        try:
            table = [[index[x] for x in row] for row in rows[1:]]
        except KeyError as e:
            raise ValueError(f"unknown element {e} in table") from None
        return cls(names, table)


class Naturals:
    """The additive monoid of natural numbers; enumeration stops at the bound."""
    zero = 0

    def __repr__(self):
        return "Naturals()"

    def add(self, x: int, y: int) -> int:
        return x + y

    def elements(self, bound: int) -> list[int]:
        return list(range(bound + 1))

    def format(self, x: int) -> str:
        return str(x)

    def parse(self, token: str) -> int:
        if not token.isdigit():
            raise ValueError(f"expected a natural number, got '{token}'")
        return int(token)


class MonoidWeighted(_BuiltIn):
    """One color; every profile has one operation per monoid element and
    composition adds up the weights of all vertices."""

    def __init__(self, monoid):
        self.monoid = monoid

    def __repr__(self):
        return f"weighted({self.monoid!r})"

    def colors(self):
        return [0]

    def ops(self, inputs, outputs, bound):
        return [Op(tuple(inputs), tuple(outputs), x) for x in self.monoid.elements(bound)]

    def identity(self, color):
        return Op((color,), (color,), self.monoid.zero)

    def compose2(self, d):
        total = self.monoid.zero
        for row in d.vertex_ops:
            for op in row:
                total = self.monoid.add(total, op.label)
        return Op(d.level_colors[0], d.level_colors[-1], total)

    def format_op(self, op):
        return self.monoid.format(op.label)

    def parse_op(self, token, inputs, outputs):
        return Op(tuple(inputs), tuple(outputs), self.monoid.parse(token))


def terminal(k: int = 1) -> Terminal:
    return Terminal(k)


def discrete(k: int = 1) -> Discrete:
    return Discrete(k)


def monoid_weighted(monoid) -> MonoidWeighted:
    return MonoidWeighted(monoid)


# graph-level work is shared by every decoration of a graph
_components = lru_cache(maxsize=4096)(lambda g: tuple(levelgraph.components(g)))
_simplicial_map = lru_cache(maxsize=4096)(levelgraph.simplicial_map)
_face = lru_cache(maxsize=4096)(levelgraph.face)
_degeneracy = lru_cache(maxsize=4096)(levelgraph.degeneracy)


@dataclass(frozen=True)
class Decoration:
    graph: LevelGraph
    level_colors: tuple[tuple, ...]
    vertex_ops: tuple[tuple, ...]


def _check_shape(d: Decoration) -> None:
    g = d.graph
    if len(d.level_colors) != len(g.level_sizes) or len(d.vertex_ops) != g.height:
        raise ValueError("decoration does not match the graph's height")
    for size, cols in zip(g.level_sizes, d.level_colors):
        if len(cols) != size:
            raise ValueError("level colors do not match level sizes")
    for i, ops in enumerate(d.vertex_ops, 1):
        if len(ops) != g.middle(i):
            raise ValueError("vertex operations do not match middle sizes")


def vertex_profile(g: LevelGraph, colors: Sequence[tuple], i: int, v: int) -> Profile:
    left, right = g.adjacents[i - 1]
    ins = tuple(colors[i - 1][e - 1] for e in finset.preimage(left, v))
    outs = tuple(colors[i][e - 1] for e in finset.preimage(right, v))
    return ins, outs


def validate_decoration(d: Decoration, P: Properad) -> bool:
    _check_shape(d)
    colors = set(P.colors())
    if any(c not in colors for row in d.level_colors for c in row):
        return False
    for i, ops in enumerate(d.vertex_ops, 1):
        for v, op in enumerate(ops, 1):
            if P.profile(op) != vertex_profile(d.graph, d.level_colors, i, v):
                return False
    return True


def decorations_enum(g: LevelGraph, P: Properad, bound: int) -> list[Decoration]:
    out = []
    palette = P.colors()
    for coloring in product(*[product(palette, repeat=n) for n in g.level_sizes]):
        choices = []
        for i in range(1, g.height + 1):
            for v in range(1, g.middle(i) + 1):
                choices.append(P.ops(*vertex_profile(g, coloring, i, v), bound))
        for picked in product(*choices):
            it = iter(picked)
            ops = tuple(tuple(next(it) for _ in range(g.middle(i))) for i in range(1, g.height + 1))
            out.append(Decoration(g, tuple(coloring), ops))
    return out


def restrict(d: Decoration, emb: Embedding, sub: LevelGraph) -> Decoration:
    cols = tuple(tuple(row[e - 1] for e in pos) for row, pos in zip(d.level_colors, emb.levels))
    ops = tuple(tuple(row[v - 1] for v in pos) for row, pos in zip(d.vertex_ops, emb.middles))
    return Decoration(sub, cols, ops)


def components(d: Decoration) -> list[Decoration]:
    return [restrict(d, emb, sub) for sub, emb in _components(d.graph)]


def simplicial_restrict(d: Decoration, alpha: Sequence[int]) -> Decoration:
    """alpha^* for an injective alpha hitting consecutive levels only."""
    g = _simplicial_map(d.graph, tuple(alpha))
    cols = tuple(d.level_colors[a] for a in alpha)
    ops = tuple(d.vertex_ops[a] for a in alpha[:-1])
    return Decoration(g, cols, ops)


def face(d: Decoration, k: int, P: Properad) -> Decoration:
    """d_k of a decorated graph; inner faces compose through P.compose2."""
    g = d.graph
    n = g.height
    if n == 0 or not 0 <= k <= n:
        raise ValueError(f"no face {k} at height {n}")
    if k == 0 or k == n:
        alpha = levelgraph.coface(n, k)
        return simplicial_restrict(d, alpha)
    local = simplicial_restrict(d, (k - 1, k, k + 1))
    merged = tuple(P.compose2(c) for c in components(local))
    h = _face(g, k)
    cols = d.level_colors[:k] + d.level_colors[k + 1:]
    ops = d.vertex_ops[:k - 1] + (merged,) + d.vertex_ops[k + 1:]
    return Decoration(h, cols, ops)


def degeneracy(d: Decoration, j: int, P: Properad) -> Decoration:
    """s_j: insert a level of identities on the colors of level j."""
    g = _degeneracy(d.graph, j)
    cols = d.level_colors[:j + 1] + d.level_colors[j:]
    ids = tuple(P.identity(c) for c in d.level_colors[j])
    ops = d.vertex_ops[:j] + (ids,) + d.vertex_ops[j:]
    return Decoration(g, cols, ops)


def tensor_decorations(d: Decoration, e: Decoration) -> Decoration:
    g = levelgraph.tensor_graphs(d.graph, e.graph)
    cols = tuple(a + b for a, b in zip(d.level_colors, e.level_colors))
    ops = tuple(a + b for a, b in zip(d.vertex_ops, e.vertex_ops))
    return Decoration(g, cols, ops)


@dataclass(frozen=True)
class PropMap:
    """A map of properads, given on colors and on operations."""
    source: Properad
    target: Properad
    on_colors: Callable
    on_ops: Callable


def identity_map(P: Properad) -> PropMap:
    return PropMap(P, P, lambda c: c, lambda op: op)


def profiles(colors: Sequence, max_inputs: int, max_outputs: int):
    for n in range(max_inputs + 1):
        for m in range(max_outputs + 1):
            for ins in product(colors, repeat=n):
                for outs in product(colors, repeat=m):
                    yield ins, outs
