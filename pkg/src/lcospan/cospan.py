"""Normalized cospans n -> k <- m of finite ordinals.

A cospan is stored in its normal form: middle elements reached by a leg are
numbered by first occurrence scanning the left leg and then the right leg;
the remaining (closed) elements come last.  Two cospans are isomorphic over
their endpoints exactly when their normal forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import finset
from ._text import Cursor
from .finset import FinMap


@dataclass(frozen=True, order=True)
class Cospan:
    src: int
    tgt: int
    touched: int
    closed: int
    left: FinMap
    right: FinMap

    def __post_init__(self):
        k = self.touched + self.closed
        if (self.left.dom_size, self.right.dom_size) != (self.src, self.tgt):
            raise ValueError("leg domains do not match endpoints")
        if self.left.cod_size != k or self.right.cod_size != k:
            raise ValueError("leg codomains do not match middle size")
        seen = 0
        for t in self.left.targets + self.right.targets:
            if t > seen + 1:
                raise ValueError("cospan is not in normal form")
            seen = max(seen, t)
        if seen != self.touched:
            raise ValueError("touched count does not match legs")

    @property
    def middle(self) -> int:
        return self.touched + self.closed

    def __str__(self):
        return emit(self)


def normalize_relabel(left: FinMap, right: FinMap) -> tuple[Cospan, FinMap]:
    """Normal form together with the bijection old middle -> new middle."""
    if left.cod_size != right.cod_size:
        raise ValueError("legs have different middles")
    k = left.cod_size
    new = [0] * k
    count = 0
    for t in left.targets + right.targets:
        if not new[t - 1]:
            count += 1
            new[t - 1] = count
    touched = count
    for i in range(k):
        if not new[i]:
            count += 1
            new[i] = count
    relabel = FinMap(k, k, tuple(new))
    c = Cospan(left.dom_size, right.dom_size, touched, k - touched,
               finset.compose_map(left, relabel), finset.compose_map(right, relabel))
    return c, relabel


def normalize(left: FinMap, right: FinMap) -> Cospan:
    return normalize_relabel(left, right)[0]


def make(src: int, middle: int, tgt: int, left: Sequence[int], right: Sequence[int]) -> Cospan:
    return normalize(FinMap.of(src, middle, left), FinMap.of(tgt, middle, right))


def identity(n: int) -> Cospan:
    i = finset.identity(n)
    return Cospan(n, n, n, 0, i, i)


def closed_only(c: int) -> Cospan:
    empty = FinMap(0, c, ())
    return Cospan(0, 0, 0, c, empty, empty)


def compose(a: Cospan, b: Cospan) -> Cospan:
    if a.tgt != b.src:
        raise ValueError(f"cannot compose {a} with {b}")
    u, v = finset.pushout_span(a.right, b.left)
    return normalize(finset.compose_map(a.left, u), finset.compose_map(b.right, v))


def tensor(a: Cospan, b: Cospan) -> Cospan:
    return normalize(finset.sum_map(a.left, b.left), finset.sum_map(a.right, b.right))


def symmetry(n: int, m: int) -> Cospan:
    """The cospan n+m -> m+n exchanging the two blocks."""
    return normalize(finset.identity(n + m), finset.block_swap(m, n))


def is_connected(a: Cospan) -> bool:
    return a.middle == 1


def is_reduced(a: Cospan) -> bool:
    return a.closed == 0


def split_reduced_closed(a: Cospan) -> tuple[Cospan, int]:
    t = a.touched
    reduced = Cospan(a.src, a.tgt, t, 0, FinMap(a.src, t, a.left.targets),
                     FinMap(a.tgt, t, a.right.targets))
    return reduced, a.closed


def corolla(p: int, q: int) -> Cospan:
    """The connected cospan with p inputs and q outputs."""
    return make(p, 1, q, [1] * p, [1] * q)


def components(a: Cospan) -> list[tuple[Cospan, list[int], list[int]]]:
    """One connected piece per middle element, with its input and output positions."""
    ins: list[list[int]] = [[] for _ in range(a.middle)]
    outs: list[list[int]] = [[] for _ in range(a.middle)]
    for i, t in enumerate(a.left.targets, 1):
        ins[t - 1].append(i)
    for i, t in enumerate(a.right.targets, 1):
        outs[t - 1].append(i)
    return [(corolla(len(x), len(y)), x, y) for x, y in zip(ins, outs)]


def assemble(n: int, m: int, parts: Sequence[tuple[Cospan, Sequence[int], Sequence[int]]]) -> Cospan:
    """Inverse of components: glue connected pieces placed at the given positions."""
    left = [0] * n
    right = [0] * m
    for x, (_, ins, outs) in enumerate(parts, 1):
        for i in ins:
            left[i - 1] = x
        for j in outs:
            right[j - 1] = x
    k = len(parts)
    return normalize(FinMap(n, k, tuple(left)), FinMap(m, k, tuple(right)))


def _growth_strings(length: int, max_blocks: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: list[int], top: int):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for v in range(1, min(top + 1, max_blocks) + 1):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()
    yield from rec([], 0)


def all_cospans(n: int, m: int, max_middle: int, reduced_only: bool = False) -> Iterator[Cospan]:
    """Every normalized cospan n -> k <- m with k <= max_middle."""
    for s in _growth_strings(n + m, max_middle):
        t = max(s, default=0)
        for c in range(0, 1 if reduced_only else max_middle - t + 1):
            k = t + c
            yield Cospan(n, m, t, c, FinMap(n, k, s[:n]), FinMap(m, k, s[n:]))


def emit(a: Cospan) -> str:
    parts = ["cospan", str(a.src), str(a.middle), str(a.tgt), ":"]
    parts += [str(t) for t in a.left.targets] + ["|"] + [str(t) for t in a.right.targets]
    return " ".join(parts)


def parse_cursor(cur: Cursor) -> tuple[FinMap, FinMap]:
    """Read raw legs; callers decide whether to normalize."""
    cur.expect("cospan")
    n = cur.natural("source size")
    k = cur.natural("middle size")
    m = cur.natural("target size")
    cur.expect(":")

    def leg(size: int, stop: set[str], name: str) -> FinMap:
        vals = []
        for tok in cur.until(stop):
            if not tok.text.isdigit() or not 1 <= int(tok.text) <= k:
                cur.fail(f"{name} leg value must be in 1..{k}", tok)
            vals.append(int(tok.text))
        if len(vals) != size:
            cur.fail(f"{name} leg has {len(vals)} values, expected {size}")
        return FinMap.of(size, k, vals)

    left = leg(n, {"|"}, "left")
    cur.expect("|")
    right = leg(m, {";"}, "right")
    return left, right


def parse(text: str, line: int = 1) -> Cospan:
    cur = Cursor(text, line)
    left, right = parse_cursor(cur)
    cur.done()
    return normalize(left, right)
