"""Finite ordinals {1..n} and the maps between them.

Everything is skeletal and 1-based: a map n -> m is the tuple of its values.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, NamedTuple, Sequence


class FinMap(NamedTuple):
    """A map {1..dom_size} -> {1..cod_size}; use FinMap.of for checked construction."""
    dom_size: int
    cod_size: int
    targets: tuple[int, ...]

    @classmethod
    def of(cls, dom_size: int, cod_size: int, targets) -> "FinMap":
        targets = tuple(targets)
        if len(targets) != dom_size:
            raise ValueError(f"map has {len(targets)} values, expected {dom_size}")
        for t in targets:
            if not 1 <= t <= cod_size:
                raise ValueError(f"value {t} outside 1..{cod_size}")
        return cls(dom_size, cod_size, targets)

    def __call__(self, i: int) -> int:
        return self.targets[i - 1]

    def __repr__(self):
        return f"FinMap({self.dom_size}->{self.cod_size}, {self.targets})"


def finmap(cod_size: int, targets: Sequence[int]) -> FinMap:
    return FinMap.of(len(targets), cod_size, targets)


@lru_cache(maxsize=None)
def identity(n: int) -> FinMap:
    return FinMap(n, n, tuple(range(1, n + 1)))


def compose_map(f: FinMap, g: FinMap) -> FinMap:
    """g after f."""
    if f.cod_size != g.dom_size:
        raise ValueError(f"cannot compose {f} with {g}")
    gt = g.targets
    return FinMap(f.dom_size, g.cod_size, tuple(gt[t - 1] for t in f.targets))


def sum_map(f: FinMap, g: FinMap) -> FinMap:
    shift = f.cod_size
    return FinMap(f.dom_size + g.dom_size, f.cod_size + g.cod_size,
                  f.targets + tuple(t + shift for t in g.targets))


def block_swap(n: int, m: int) -> FinMap:
    """The bijection n+m -> m+n moving the first block behind the second."""
    return FinMap(n + m, n + m, tuple(range(m + 1, m + n + 1)) + tuple(range(1, m + 1)))


def preimage(f: FinMap, j: int) -> list[int]:
    if not 1 <= j <= f.cod_size:
        raise ValueError(f"{j} outside 1..{f.cod_size}")
    return [i for i, t in enumerate(f.targets, 1) if t == j]


def image(f: FinMap) -> set[int]:
    return set(f.targets)


def is_bijection(f: FinMap) -> bool:
    return f.dom_size == f.cod_size and len(set(f.targets)) == f.dom_size


def inverse(f: FinMap) -> FinMap:
    if not is_bijection(f):
        raise ValueError(f"{f} is not a bijection")
    inv = [0] * f.dom_size
    for i, t in enumerate(f.targets, 1):
        inv[t - 1] = i
    return FinMap(f.dom_size, f.dom_size, tuple(inv))


class UnionFind:
    """Union-find whose roots are always the smallest member of a class."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra < rb:
            self.parent[rb] = ra
        elif rb < ra:
            self.parent[ra] = rb

    def numbering(self) -> tuple[int, list[int]]:
        """Number classes 1.. by smallest member; return (count, class of each element)."""
        labels: dict[int, int] = {}
        out = []
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in labels:
                labels[r] = len(labels) + 1
            out.append(labels[r])
        return len(labels), out


def pushout_span(f: FinMap, g: FinMap) -> tuple[FinMap, FinMap]:
    """Legs D -> Q <- E of the pushout of D <-f- B -g-> E."""
    if f.dom_size != g.dom_size:
        raise ValueError("span legs have different domains")
    d, e = f.cod_size, g.cod_size
    uf = UnionFind(d + e)
    for a, b in zip(f.targets, g.targets):
        uf.union(a - 1, d + b - 1)
    q, cls = uf.numbering()
    return FinMap(d, q, tuple(cls[:d])), FinMap(e, q, tuple(cls[d:]))


def all_maps(n: int, m: int) -> Iterator[FinMap]:
    for t in product(range(1, m + 1), repeat=n):
        yield FinMap(n, m, t)


def all_permutations(n: int) -> Iterator[FinMap]:
    for t in permutations(range(1, n + 1)):
        yield FinMap(n, n, t)


def transposition_word(sigma: FinMap) -> list[int]:
    """Adjacent swaps (as positions i, swapping i and i+1) that move the
    entry at position k to position sigma(k), in order of application."""
    keys = list(sigma.targets)
    swaps = []
    for end in range(len(keys) - 1, 0, -1):
        for i in range(end):
            if keys[i] > keys[i + 1]:
                keys[i], keys[i + 1] = keys[i + 1], keys[i]
                swaps.append(i + 1)
    return swaps
