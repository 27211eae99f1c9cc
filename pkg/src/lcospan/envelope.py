"""The symmetric monoidal envelope of a properad.

Objects are color words (tuples).  A morphism is a decorated height 1 graph
up to congruence; the stored representative has its shape normalized and its
closed vertices sorted by operation, so equality is plain field equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Sequence

from . import cospan, finset, levelgraph, properad
from ._text import Cursor
from .cospan import Cospan
from .finset import FinMap
from .levelgraph import LevelGraph
from .properad import Decoration, Properad

Word = tuple


@dataclass(frozen=True, order=True)
class EnvMorphism:
    src: Word
    tgt: Word
    shape: Cospan
    vertex_ops: tuple

    def graph(self) -> LevelGraph:
        return LevelGraph((self.shape.src, self.shape.tgt), ((self.shape.left, self.shape.right),))

    def decoration(self) -> Decoration:
        return Decoration(self.graph(), (self.src, self.tgt), (self.vertex_ops,))


def normal_form(src: Word, tgt: Word, left: FinMap, right: FinMap, ops: Sequence) -> EnvMorphism:
    shape, relabel = cospan.normalize_relabel(left, right)
    new = [None] * shape.middle
    for v, op in enumerate(ops, 1):
        new[relabel(v) - 1] = op
    t = shape.touched
    new[t:] = sorted(new[t:])
    return EnvMorphism(tuple(src), tuple(tgt), shape, tuple(new))


def from_decoration(d: Decoration) -> EnvMorphism:
    (left, right), = d.graph.adjacents
    return normal_form(d.level_colors[0], d.level_colors[1], left, right, d.vertex_ops[0])


class Envelope:
    def __init__(self, P: Properad):
        self.P = P

    def __repr__(self):
        return f"Envelope({self.P!r})"

    def check(self, f: EnvMorphism) -> None:
        if not properad.validate_decoration(f.decoration(), self.P):
            raise ValueError(f"vertex profiles do not match in {f}")

    def identity(self, a: Word) -> EnvMorphism:
        a = tuple(a)
        return EnvMorphism(a, a, cospan.identity(len(a)), tuple(self.P.identity(c) for c in a))

    def compose(self, f: EnvMorphism, g: EnvMorphism) -> EnvMorphism:
        """f then g."""
        if f.tgt != g.src:
            raise ValueError(f"cannot compose: {f.tgt} != {g.src}")
        if f == self.identity(f.src):
            return g
        if g == self.identity(g.src):
            return f
        stacked = Decoration(
            LevelGraph((len(f.src), len(f.tgt), len(g.tgt)),
                       ((f.shape.left, f.shape.right), (g.shape.left, g.shape.right))),
            (f.src, f.tgt, g.tgt), (f.vertex_ops, g.vertex_ops))
        return from_decoration(properad.face(stacked, 1, self.P))

    def tensor(self, f: EnvMorphism, g: EnvMorphism) -> EnvMorphism:
        left = finset.sum_map(f.shape.left, g.shape.left)
        right = finset.sum_map(f.shape.right, g.shape.right)
        return normal_form(f.src + g.src, f.tgt + g.tgt, left, right, f.vertex_ops + g.vertex_ops)

    def twisted_tensor(self, f: EnvMorphism, g: EnvMorphism) -> EnvMorphism:
        """f and g side by side, with the outputs of g placed before those of f."""
        tw, _ = levelgraph.twisted_sum(f.graph(), g.graph(), 1)
        (left, right), = tw.adjacents
        return normal_form(f.src + g.src, g.tgt + f.tgt, left, right, f.vertex_ops + g.vertex_ops)

    def symmetry(self, a: Word, b: Word) -> EnvMorphism:
        a, b = tuple(a), tuple(b)
        return EnvMorphism(a + b, b + a, cospan.symmetry(len(a), len(b)),
                           tuple(self.P.identity(c) for c in a + b))

    def project(self, f: EnvMorphism) -> Cospan:
        return f.shape

    def hom_enum(self, a: Word, b: Word, bound: int) -> list[EnvMorphism]:
        """Every morphism a -> b whose shape has at most `bound` vertices."""
        a, b = tuple(a), tuple(b)
        out = []
        closed_ops = self.P.ops((), (), bound)
        for shape in cospan.all_cospans(len(a), len(b), bound, reduced_only=True):
            g = LevelGraph((len(a), len(b)), ((shape.left, shape.right),))
            choices = [self.P.ops(*properad.vertex_profile(g, (a, b), 1, v), bound)
                       for v in range(1, shape.middle + 1)]
            for touched_ops in product(*choices):
                for c in range(bound - shape.middle + 1):
                    full = cospan.normalize(finset.FinMap(len(a), shape.middle + c, shape.left.targets),
                                            finset.FinMap(len(b), shape.middle + c, shape.right.targets))
                    for closed in combinations_with_replacement(sorted(closed_ops), c):
                        out.append(EnvMorphism(a, b, full, tuple(touched_ops) + closed))
        return out

    def connected_hom_enum(self, a: Word, b: Word, bound: int) -> list[EnvMorphism]:
        a, b = tuple(a), tuple(b)
        shape = cospan.corolla(len(a), len(b))
        return [EnvMorphism(a, b, shape, (p,)) for p in self.P.ops(a, b, bound)]

    def corolla(self, op) -> EnvMorphism:
        ins, outs = self.P.profile(op)
        return EnvMorphism(tuple(ins), tuple(outs), cospan.corolla(len(ins), len(outs)), (op,))

    # text syntax

    def emit(self, f: EnvMorphism) -> str:
        P = self.P
        src = " ".join(P.format_color(c) for c in f.src)
        tgt = " ".join(P.format_color(c) for c in f.tgt)
        ops = " ".join(P.format_op(op) for op in f.vertex_ops)
        parts = ["mor", src, "->", tgt, ";", "shape", cospan.emit(f.shape), ";", "ops", ops]
        return " ".join(p for p in parts if p)

    def parse(self, text: str, line: int = 1) -> EnvMorphism:
        cur = Cursor(text, line)
        cur.expect("mor")

        def word(stop: set[str]) -> Word:
            out = []
            for tok in cur.until(stop):
                try:
                    out.append(self.P.parse_color(tok.text))
                except ValueError as e:
                    cur.fail(str(e), tok)
            return tuple(out)

        src = word({"->"})
        cur.expect("->")
        tgt = word({";"})
        cur.expect(";")
        cur.expect("shape")
        start = cur.peek()
        left, right = cospan.parse_cursor(cur)
        if (left.dom_size, right.dom_size) != (len(src), len(tgt)):
            cur.fail("shape endpoints do not match the words", start)
        cur.expect(";")
        cur.expect("ops")
        g = LevelGraph((len(src), len(tgt)), ((left, right),))
        toks = cur.until(set())
        if len(toks) != left.cod_size:
            cur.fail(f"expected {left.cod_size} operations, got {len(toks)}")
        ops = []
        for v, tok in enumerate(toks, 1):
            try:
                ops.append(self.P.parse_op(tok.text, *properad.vertex_profile(g, (src, tgt), 1, v)))
            except ValueError as e:
                cur.fail(str(e), tok)
        return normal_form(src, tgt, left, right, ops)

    def parse_word(self, text: str, line: int = 1) -> Word:
        cur = Cursor(text, line)
        out = []
        for tok in cur.until(set()):
            try:
                out.append(self.P.parse_color(tok.text))
            except ValueError as e:
                cur.fail(str(e), tok)
        return tuple(out)
