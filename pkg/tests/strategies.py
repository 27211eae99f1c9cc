"""Hypothesis strategies and small oracles shared by the tests."""

from itertools import permutations, product

from hypothesis import strategies as st

from lcospan import cospan, finset, levelgraph
from lcospan.finset import FinMap
from lcospan.levelgraph import LevelGraph


@st.composite
def finmaps(draw, dom=None, cod=None, max_size=4):
    n = draw(st.integers(0, max_size)) if dom is None else dom
    if cod is None:
        cod = draw(st.integers(1 if n else 0, max_size))
    targets = draw(st.lists(st.integers(1, cod), min_size=n, max_size=n)) if cod else []
    return FinMap(n, cod, tuple(targets))


@st.composite
def perms(draw, n):
    return FinMap(n, n, tuple(draw(st.permutations(range(1, n + 1)))))


@st.composite
def raw_legs(draw, n, m, max_middle=3):
    k = draw(st.integers(1 if n + m else 0, max_middle))
    return draw(finmaps(n, k)), draw(finmaps(m, k))


@st.composite
def cospans(draw, n=None, m=None, max_size=3):
    n = draw(st.integers(0, max_size)) if n is None else n
    m = draw(st.integers(0, max_size)) if m is None else m
    return cospan.normalize(*draw(raw_legs(n, m, max_size)))


@st.composite
def graphs(draw, height=None, max_level=2, max_middle=3, levels=None):
    height = draw(st.integers(0, 3)) if height is None else height
    if levels is None:
        levels = tuple(draw(st.lists(st.integers(0, max_level), min_size=height + 1, max_size=height + 1)))
    adj = tuple(draw(raw_legs(a, b, max_middle)) for a, b in zip(levels, levels[1:]))
    return LevelGraph(tuple(levels), adj)


def relabel_middles(g: LevelGraph, phis) -> LevelGraph:
    """Move middle i along the bijection phis[i]."""
    adj = tuple((finset.compose_map(l, p), finset.compose_map(r, p)) for (l, r), p in zip(g.adjacents, phis))
    return LevelGraph(g.level_sizes, adj)


def brute_congruences(g: LevelGraph, h: LevelGraph):
    """Every tuple of middle bijections carrying g to h."""
    if g.level_sizes != h.level_sizes:
        return []
    per_middle = []
    for (gl, gr), (hl, hr) in zip(g.adjacents, h.adjacents):
        k = gl.cod_size
        if hl.cod_size != k:
            return []
        per_middle.append([FinMap(k, k, p) for p in permutations(range(1, k + 1))
                           if (finset.compose_map(gl, FinMap(k, k, p)), finset.compose_map(gr, FinMap(k, k, p)))
                           == (hl, hr)])
    return list(product(*per_middle))


def naive_classes(f: FinMap, g: FinMap) -> list[int]:
    """Class number of each element of D+E, by fixed-point closure of the
    generating relation; classes numbered by smallest member."""
    d, e = f.cod_size, g.cod_size
    size = d + e
    related = [{x} for x in range(size)]
    for a, b in zip(f.targets, g.targets):
        related[a - 1].add(d + b - 1)
        related[d + b - 1].add(a - 1)
    changed = True
    while changed:
        changed = False
        for x in range(size):
            grown = set().union(*(related[y] for y in related[x]))
            if grown != related[x]:
                related[x] = grown
                changed = True
    labels, out = {}, []
    for x in range(size):
        rep = min(related[x])
        labels.setdefault(rep, len(labels) + 1)
        out.append(labels[rep])
    return out


def monotone_maps(m: int, n: int):
    """Weakly monotone maps [m] -> [n] as value tuples."""
    def rec(prefix, lo):
        if len(prefix) == m + 1:
            yield tuple(prefix)
            return
        for v in range(lo, n + 1):
            yield from rec(prefix + [v], v)
    return list(rec([], 0))


def stacked_example() -> LevelGraph:
    """Levels 6, 6, 7 with middles 4 and 3 and two components."""
    return LevelGraph.of((6, 6, 7), (
        (FinMap(6, 4, (1, 1, 2, 3, 4, 4)), FinMap(6, 4, (1, 2, 2, 3, 4, 4))),
        (FinMap(6, 3, (1, 1, 2, 3, 3, 3)), FinMap(7, 3, (1, 1, 2, 2, 3, 3, 3))),
    ))


def closed_graph(k: int) -> LevelGraph:
    return levelgraph.from_cospans([cospan.closed_only(k)])


def hom_pool(env, max_len: int, bound: int) -> dict:
    """All morphisms between words of length <= max_len, grouped by source."""
    words = [w for n in range(max_len + 1) for w in product(env.P.colors(), repeat=n)]
    pool = {}
    for a in words:
        pool[a] = [f for b in words for f in env.hom_enum(a, b, bound)]
    return pool


def random_chain(rng, pool: dict, start, length: int) -> list:
    """A composable chain of random morphisms starting at `start`, or None
    when some target falls outside the pool."""
    out = []
    for _ in range(length):
        if start not in pool:
            return None
        f = rng.choice(pool[start])
        out.append(f)
        start = f.tgt
    return out
