"""Strict labelled cospan categories: the contract, axiom checks, extraction
of a properad, the comparison with the envelope, and natural transformations.

Morphisms compose left to right: compose(f, g) is f followed by g.  All
checks are bounded enumerations and return a Report of PASS/FAIL/SKIP lines.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Iterable, Sequence

from . import cospan, finset, levelgraph, properad
from .cospan import Cospan
from .envelope import Envelope, EnvMorphism
from .finset import FinMap
from .levelgraph import LevelGraph
from .properad import Decoration, Op, Properad, PropMap


class SLCC(ABC):
    """A strict permutative category over cospans with free objects.

    Objects are opaque; decompose_object and object_tensor translate between
    an object and its word of connected objects.  Morphisms must be hashable
    and compare equal exactly when they are equal in the category.
    """

    @abstractmethod
    def connected_objects(self) -> list: ...

    @abstractmethod
    def object_tensor(self, word: Sequence): ...

    @abstractmethod
    def decompose_object(self, x) -> tuple: ...

    @abstractmethod
    def source(self, f): ...

    @abstractmethod
    def target(self, f): ...

    @abstractmethod
    def id(self, x): ...

    @abstractmethod
    def compose(self, f, g): ...

    @abstractmethod
    def tensor(self, f, g): ...

    @abstractmethod
    def symmetry(self, a, b): ...

    @abstractmethod
    def project(self, f) -> Cospan: ...

    @abstractmethod
    def connected_hom_enum(self, inputs: Sequence, outputs: Sequence, bound: int) -> list:
        """Connected morphisms between the tensors of two words of connected objects."""

    def hom_enum(self, a, b, bound: int) -> list:
        """Every morphism a -> b projecting to a cospan with at most `bound` vertices.

        Contracts that cannot enumerate whole hom-sets leave this unimplemented;
        checks that need it are then reported as not evaluated.
        """
        raise NotImplementedError


class EnvelopeSLCC(SLCC):
    """The envelope of a properad seen through the contract; objects are color words."""

    def __init__(self, P: Properad):
        self.P = P
        self.env = Envelope(P)

    def __repr__(self):
        return f"EnvelopeSLCC({self.P!r})"

    def connected_objects(self):
        return [(c,) for c in self.P.colors()]

    def object_tensor(self, word):
        return tuple(c for x in word for c in x)

    def decompose_object(self, x):
        return tuple((c,) for c in x)

    def source(self, f):
        return f.src

    def target(self, f):
        return f.tgt

    def id(self, x):
        return self.env.identity(x)

    def compose(self, f, g):
        return self.env.compose(f, g)

    def tensor(self, f, g):
        return self.env.tensor(f, g)

    def symmetry(self, a, b):
        return self.env.symmetry(a, b)

    def project(self, f):
        return f.shape

    def connected_hom_enum(self, inputs, outputs, bound):
        return self.env.connected_hom_enum(self.object_tensor(inputs), self.object_tensor(outputs), bound)

    def hom_enum(self, a, b, bound):
        return self.env.hom_enum(a, b, bound)


def envelope_as_slcc(P: Properad) -> EnvelopeSLCC:
    return EnvelopeSLCC(P)


# reports

@dataclass
class Record:
    status: str
    law: str
    detail: str = ""

    def __str__(self):
        return f"{self.status} {self.law}" + (f" {self.detail}" if self.detail else "")


@dataclass
class Report:
    records: list[Record] = field(default_factory=list)

    def record(self, law: str, witness=None, cases: int | None = None) -> None:
        if witness is not None:
            self.records.append(Record("FAIL", law, str(witness)))
        else:
            self.records.append(Record("PASS", law, f"({cases} cases)" if cases is not None else ""))

    def skip(self, law: str, reason: str) -> None:
        self.records.append(Record("SKIP", law, reason))

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)

    @property
    def ok(self) -> bool:
        return all(r.status != "FAIL" for r in self.records)

    def status(self, law: str) -> str:
        for r in self.records:
            if r.law == law:
                return r.status
        raise KeyError(law)

    def lines(self) -> list[str]:
        return [str(r) for r in self.records]

    def __str__(self):
        return "\n".join(self.lines())


class _Check:
    """Counts cases and keeps the first witness."""

    def __init__(self):
        self.cases = 0
        self.witness = None

    def __call__(self, ok: bool, witness) -> None:
        self.cases += 1
        if not ok and self.witness is None:
            self.witness = witness() if callable(witness) else witness

    def into(self, report: Report, law: str) -> None:
        report.record(law, self.witness, self.cases)


def words(C: SLCC, length: int) -> Iterable[tuple]:
    return product(C.connected_objects(), repeat=length)


def word_pairs(C: SLCC, total: int) -> Iterable[tuple[tuple, tuple]]:
    """All pairs of words of connected objects with combined length <= total."""
    for n in range(total + 1):
        for m in range(total - n + 1):
            for a in words(C, n):
                for b in words(C, m):
                    yield a, b


# symmetries

_components = lru_cache(maxsize=4096)(lambda g: tuple(levelgraph.components(g)))


def hat(C: SLCC, word: Sequence, sigma: FinMap):
    """The symmetry moving the factor at position i of the word to position sigma(i)."""
    word = list(word)
    if sigma.dom_size != len(word) or not finset.is_bijection(sigma):
        raise ValueError("hat needs a permutation of the word's positions")
    f = C.id(C.object_tensor(word))
    for i in finset.transposition_word(sigma):
        before, after = word[:i - 1], word[i + 1:]
        step = C.tensor(C.tensor(C.id(C.object_tensor(before)), C.symmetry(word[i - 1], word[i])),
                        C.id(C.object_tensor(after)))
        f = C.compose(f, step)
        word[i - 1], word[i] = word[i], word[i - 1]
    return f


def mu(C: SLCC, d: Decoration, Q: Properad | None = None):
    """The morphism of C presented by a decorated height 1 graph.

    Vertex operations are connected morphisms of C and edge colors are
    connected objects.  Components are tensored in their canonical order and
    conjugated back into place by symmetries.
    """
    g = d.graph
    if g.height != 1:
        raise ValueError("mu takes height 1 decorations")
    if Q is not None and not properad.validate_decoration(d, Q):
        raise ValueError("decoration does not match the connected morphisms of C")
    cols_in, cols_out = d.level_colors
    body = C.id(C.object_tensor(()))
    ins, outs = [], []
    for sub, emb in _components(g):
        body = C.tensor(body, d.vertex_ops[0][emb.middles[0][0] - 1])
        ins += emb.levels[0]
        outs += emb.levels[1]
    iota1 = FinMap(len(ins), len(ins), tuple(ins))
    iota0 = FinMap(len(outs), len(outs), tuple(outs))
    if iota1 != finset.identity(len(ins)):
        body = C.compose(hat(C, cols_in, finset.inverse(iota1)), body)
    if iota0 != finset.identity(len(outs)):
        body = C.compose(body, hat(C, [cols_out[e - 1] for e in outs], iota0))
    return body


class Extracted(Properad):
    """The properad of connected morphisms of a strict labelled cospan category."""

    def __init__(self, C: SLCC):
        self.C = C
        self._composites: dict = {}

    def __repr__(self):
        return f"extract({self.C!r})"

    def colors(self):
        return self.C.connected_objects()

    def ops(self, inputs, outputs, bound):
        return self.C.connected_hom_enum(tuple(inputs), tuple(outputs), bound)

    def profile(self, op):
        C = self.C
        return C.decompose_object(C.source(op)), C.decompose_object(C.target(op))

    def identity(self, color):
        return self.C.id(color)

    def act(self, gamma, chi, op):
        ins, outs = self.profile(op)
        moved_ins, _ = properad.permute_profile(gamma, chi, ins, outs)
        pre = hat(self.C, moved_ins, gamma)
        post = hat(self.C, outs, finset.inverse(chi))
        return self.C.compose(self.C.compose(pre, op), post)

    def compose2(self, d):
        if d not in self._composites:
            self._composites[d] = self._compose2(d)
        return self._composites[d]

    def _compose2(self, d):
        top = properad.simplicial_restrict(d, (0, 1))
        bottom = properad.simplicial_restrict(d, (1, 2))
        out = self.C.compose(mu(self.C, top), mu(self.C, bottom))
        if self.C.project(out).middle != 1:
            raise ValueError("composite of a connected graph is not connected")
        return out

    def format_op(self, op):
        return str(op)

    def format_color(self, color):
        return str(color)


def extract_properad(C: SLCC) -> Extracted:
    return Extracted(C)


# axioms

def _restricted_shape(c: Cospan, n: int, m: int) -> tuple[Cospan, Cospan] | None:
    """Split a reduced cospan as u (x) v with u: n -> m, if possible."""
    first = set(c.left.targets[:n]) | set(c.right.targets[:m])
    second = set(c.left.targets[n:]) | set(c.right.targets[m:])
    if first & second:
        return None
    u = cospan.normalize(FinMap(n, c.middle, c.left.targets[:n]), FinMap(m, c.middle, c.right.targets[:m]))
    v = cospan.normalize(FinMap(c.src - n, c.middle, c.left.targets[n:]),
                         FinMap(c.tgt - m, c.middle, c.right.targets[m:]))
    return cospan.split_reduced_closed(u)[0], cospan.split_reduced_closed(v)[0]


def check_axioms(C: SLCC, bound: int = 3) -> Report:
    """Labelled cospan axioms over words of total length <= bound and
    morphisms with at most `bound` vertices; composites and tensors are
    taken of pairs with at most `bound` vertices between them."""
    report = Report()
    unit = C.object_tensor(())

    chk = _Check()
    for n in range(bound + 1):
        for w in words(C, n):
            x = C.object_tensor(w)
            chk(C.decompose_object(x) == tuple(w) and C.project(C.id(x)) == cospan.identity(n),
                lambda: f"word {w}")
    for c in C.connected_objects():
        chk(C.decompose_object(c) == (c,), lambda: f"connected object {c} decomposes")
    chk.into(report, "objects-free-monoid")

    homs: dict[tuple, list] = {}
    for a, b in word_pairs(C, bound):
        homs[a, b] = C.hom_enum(C.object_tensor(a), C.object_tensor(b), bound)

    chk = _Check()
    for (a, b), fs in homs.items():
        for f in fs:
            chk(C.source(f) == C.object_tensor(a) and C.target(f) == C.object_tensor(b)
                and C.project(f).middle <= bound, lambda: f"enumerated {f} outside {a} -> {b}")
    for a, b in word_pairs(C, bound):
        sym = C.project(C.symmetry(C.object_tensor(a), C.object_tensor(b)))
        chk(sym == cospan.symmetry(len(a), len(b)), lambda: f"symmetry {a} {b}")
    for (a, b), fs in homs.items():
        for (b2, c), gs in homs.items():
            if b2 != b or len(a) + len(b) + len(c) > bound:
                continue
            for f in fs:
                for g in gs:
                    if C.project(f).middle + C.project(g).middle > bound:
                        continue
                    chk(C.project(C.compose(f, g)) == cospan.compose(C.project(f), C.project(g)),
                        lambda: f"compose {f} ; {g}")
    for (a, b), fs in homs.items():
        for (c, d), gs in homs.items():
            if len(a) + len(b) + len(c) + len(d) > bound:
                continue
            for f in fs:
                for g in gs:
                    if C.project(f).middle + C.project(g).middle > bound:
                        continue
                    chk(C.project(C.tensor(f, g)) == cospan.tensor(C.project(f), C.project(g)),
                        lambda: f"tensor {f} , {g}")
    chk.into(report, "project-strict-functor")

    closed = C.connected_hom_enum((), (), bound)
    chk = _Check()
    seen: dict = {}
    for size in range(bound + 1):
        for ms in combinations_with_replacement(range(len(closed)), size):
            f = C.id(unit)
            for i in ms:
                f = C.tensor(f, closed[i])
            if f in seen:
                chk(False, lambda: f"multisets {seen[f]} and {ms} of closed generators give {f}")
            else:
                chk(C.project(f).middle == size, lambda: f"multiset {ms} has the wrong shape")
                seen[f] = ms
    for i, f in enumerate(closed):
        for g in closed[i + 1:]:
            chk(C.tensor(f, g) == C.tensor(g, f), lambda: f"{f} and {g} do not commute")
    for f in homs[(), ()]:
        chk(f in seen, lambda: f"closed endomorphism {f} is not a tensor of generators")
    chk.into(report, "closed-endos-free-abelian")

    chk = _Check()
    for (a, b), fs in homs.items():
        split: dict = {}
        for r in fs:
            if C.project(r).closed:
                continue
            for z in homs[(), ()]:
                if C.project(r).middle + C.project(z).middle > bound:
                    continue
                h = C.tensor(r, z)
                if h in split:
                    chk(False, lambda: f"{h} splits as both {split[h]} and {(r, z)}")
                else:
                    chk(True, None)
                    split[h] = (r, z)
        for f in fs:
            chk(f in split, lambda: f"{f} is not reduced (x) closed")
    chk.into(report, "reduced-closed-split")

    chk = _Check()
    reduced = {k: [f for f in fs if not C.project(f).closed] for k, fs in homs.items()}
    for a, b in word_pairs(C, bound):
        for c, d in word_pairs(C, bound - len(a) - len(b)):
            if (a + c, b + d) not in reduced:
                continue
            keys: dict = {}
            for f in reduced[a, b]:
                for g in reduced[c, d]:
                    if C.project(f).middle + C.project(g).middle > bound:
                        continue
                    key = (C.tensor(f, g), C.project(f), C.project(g))
                    if key in keys:
                        chk(False, lambda: f"pairs {keys[key]} and {(f, g)} both give {key[0]}")
                    keys[key] = (f, g)
            for h in reduced[a + c, b + d]:
                split = _restricted_shape(C.project(h), len(a), len(b))
                if split is None:
                    continue
                chk((h,) + split in keys, lambda: f"{h} over a tensor of cospans has no lift")
    chk.into(report, "reduced-tensor-pullback")
    return report


# round trip

def _corolla_decoration(d: Decoration, C: EnvelopeSLCC) -> Decoration:
    """A decoration over P rewritten over the extracted properad of its envelope."""
    cols = tuple(tuple((c,) for c in row) for row in d.level_colors)
    ops = tuple(tuple(C.env.corolla(op) for op in row) for row in d.vertex_ops)
    return Decoration(d.graph, cols, ops)


def representatives(height: int, max_level: int, max_middle: int, max_vertices: int | None = None) -> list[LevelGraph]:
    """One graph per congruence class: every adjacent cospan in normal form."""
    out = []
    for levels in product(range(max_level + 1), repeat=height + 1):
        choices = [list(cospan.all_cospans(a, b, max_middle)) for a, b in zip(levels, levels[1:])]
        for cs in product(*choices):
            if max_vertices is None or sum(c.middle for c in cs) <= max_vertices:
                out.append(LevelGraph(levels, tuple((c.left, c.right) for c in cs)))
    return out


def connected_graphs(height: int, max_level: int, max_middle: int) -> list[LevelGraph]:
    """Connected graphs with normalized adjacent cospans, one per congruence class."""
    return [g for g in representatives(height, max_level, max_middle) if levelgraph.is_connected(g)]


def mu_bar_check(C: SLCC, bound: int = 3) -> Report:
    """The comparison from the envelope of the extracted properad back to C:
    bijective on bounded hom-sets and strictly monoidal."""
    report = Report()
    Q = extract_properad(C)
    CQ = Envelope(Q)
    law = "mu-bar-bijective"
    homs: dict[tuple, list] = {}
    image: dict = {}

    def mu_bar(f):
        if f not in image:
            image[f] = mu(C, f.decoration())
        return image[f]

    chk = _Check()
    try:
        for a, b in word_pairs(C, bound):
            fs = CQ.hom_enum(a, b, bound)
            homs[a, b] = fs
            images = {}
            for f in fs:
                x = mu_bar(f)
                if x in images:
                    chk(False, lambda: f"{images[x]} and {f} both map to {x}")
                else:
                    chk(True, None)
                    images[x] = f
            target = C.hom_enum(C.object_tensor(a), C.object_tensor(b), bound)
            missing = [x for x in target if x not in images]
            chk(not missing and len(target) == len(images),
                lambda: f"{a} -> {b}: {len(missing)} morphisms not reached, e.g. {missing[:1]}")
    except NotImplementedError:
        report.skip(law, "not evaluated: hom-sets of this category are not enumerable")
        return report
    chk.into(report, law)

    chk = _Check()
    for a, b in word_pairs(C, bound):
        chk(mu_bar(CQ.symmetry(a, b)) == C.symmetry(C.object_tensor(a), C.object_tensor(b)),
            lambda: f"symmetry {a} {b}")
        chk(mu_bar(CQ.identity(a)) == C.id(C.object_tensor(a)), lambda: f"identity {a}")
    for (a, b), fs in homs.items():
        for (b2, c), gs in homs.items():
            if b2 != b or len(a) + len(b) + len(c) > bound:
                continue
            for f in fs:
                for g in gs:
                    if f.shape.middle + g.shape.middle > bound:
                        continue
                    chk(mu_bar(CQ.compose(f, g)) == C.compose(mu_bar(f), mu_bar(g)),
                        lambda: f"compose {f} ; {g}")
    for (a, b), fs in homs.items():
        for (c, d), gs in homs.items():
            if len(a) + len(b) + len(c) + len(d) > bound:
                continue
            for f in fs:
                for g in gs:
                    if f.shape.middle + g.shape.middle > bound:
                        continue
                    chk(mu_bar(CQ.tensor(f, g)) == C.tensor(mu_bar(f), mu_bar(g)),
                        lambda: f"tensor {f} , {g}")
    chk.into(report, "mu-bar-monoidal")
    return report


def roundtrip_check(P: Properad, bound: int = 3) -> Report:
    report = Report()
    C = envelope_as_slcc(P)
    Q = extract_properad(C)

    chk = _Check()
    qcolors = Q.colors()
    chk(len(set(qcolors)) == len(P.colors()) and sorted(qcolors) == sorted((c,) for c in P.colors()),
        lambda: f"colors {P.colors()} vs {qcolors}")
    for c in P.colors():
        chk(Q.identity((c,)) == C.env.corolla(P.identity(c)), lambda: f"identity on {c}")
    chk.into(report, "colors")

    chk = _Check()
    for n in range(bound + 1):
        for m in range(bound + 1):
            for ins in product(P.colors(), repeat=n):
                for outs in product(P.colors(), repeat=m):
                    ops = P.ops(ins, outs, bound)
                    images = [C.env.corolla(p) for p in ops]
                    got = Q.ops(tuple((c,) for c in ins), tuple((c,) for c in outs), bound)
                    chk(len(set(images)) == len(ops) and set(images) == set(got),
                        lambda: f"profile {ins} -> {outs}")
    chk.into(report, "operations")

    chk = _Check()
    for n in range(bound + 1):
        for m in range(bound + 1 - n):
            for ins in product(P.colors(), repeat=n):
                for outs in product(P.colors(), repeat=m):
                    for p in P.ops(ins, outs, bound):
                        for gamma in finset.all_permutations(n):
                            for chi in finset.all_permutations(m):
                                chk(Q.act(gamma, chi, C.env.corolla(p)) ==
                                    C.env.corolla(P.act(gamma, chi, p)),
                                    lambda: f"act {gamma.targets} {chi.targets} on {p}")
    chk.into(report, "action")

    chk = _Check()
    for g in connected_graphs(2, 2, bound):
        for d in properad.decorations_enum(g, P, bound):
            want = C.env.corolla(P.compose2(d))
            chk(Q.compose2(_corolla_decoration(d, C)) == want, lambda: f"compose2 on {g!r}")
    chk.into(report, "compose2")

    report.extend(mu_bar_check(C, bound))
    return report


# natural transformations

def check_nat_trans(F: PropMap, G: PropMap, gamma: dict, bound: int = 3) -> tuple[bool, list[str]]:
    """Does gamma (color -> unary op of the target) form a natural
    transformation F => G?  Returns the verdict and every failing operation."""
    P, Q = F.source, F.target
    env = Envelope(Q)
    for c in P.colors():
        if c not in gamma:
            raise ValueError(f"no component for color {c}")
        if Q.profile(gamma[c]) != ((F.on_colors(c),), (G.on_colors(c),)):
            raise ValueError(f"component at {c} has profile {Q.profile(gamma[c])}")

    def tensor_gamma(cols):
        f = env.identity(())
        for c in cols:
            f = env.tensor(f, env.corolla(gamma[c]))
        return f

    failures = []
    for n in range(bound + 1):
        for m in range(bound + 1):
            for ins in product(P.colors(), repeat=n):
                for outs in product(P.colors(), repeat=m):
                    for p in P.ops(ins, outs, bound):
                        lhs = env.compose(tensor_gamma(ins), env.corolla(G.on_ops(p)))
                        rhs = env.compose(env.corolla(F.on_ops(p)), tensor_gamma(outs))
                        if lhs != rhs:
                            failures.append(f"({n};{m}) op {P.format_op(p)} on {ins} -> {outs}: "
                                            f"{env.emit(lhs)} != {env.emit(rhs)}")
    return not failures, failures


# presheaf relations

def _same_up_to_middles(x: Decoration, y: Decoration) -> bool:
    return x.level_colors == y.level_colors and \
        levelgraph.congruent(x.graph, y.graph, x.vertex_ops, y.vertex_ops)[0]


def relation_failures(d: Decoration, Q: Properad) -> list[str]:
    """Simplicial relations of the decorated presheaf that fail on d.

    d_{j+1} s_j = id holds up to the canonical middle bijection and is
    compared up to congruence; all other relations are literal.
    """
    n = d.graph.height
    face = lambda x, k: properad.face(x, k, Q)
    degen = lambda x, j: properad.degeneracy(x, j, Q)
    bad = []
    if n >= 2:
        for j in range(1, n + 1):
            for i in range(j):
                if face(face(d, j), i) != face(face(d, i), j - 1):
                    bad.append(f"d{i} d{j} = d{j - 1} d{i}")
    for j in range(n + 1):
        sj = degen(d, j)
        for i in range(j + 1):
            if degen(sj, i) != degen(degen(d, i), j + 1):
                bad.append(f"s{i} s{j} = s{j + 1} s{i}")
        for i in range(n + 2):
            if i == j:
                ok = face(sj, i) == d
            elif i == j + 1:
                ok = _same_up_to_middles(face(sj, i), d)
            elif n == 0:
                continue
            elif i < j:
                ok = face(sj, i) == degen(face(d, i), j - 1)
            else:
                ok = face(sj, i) == degen(face(d, i - 1), j)
            if not ok:
                bad.append(f"d{i} s{j}")
    return bad


def presheaf_graphs(bound: int) -> list[LevelGraph]:
    """Graphs of height 1 to 3 with levels <= 2 and at most `bound` vertices in total."""
    return [g for h in range(1, 4) for g in representatives(h, 2, bound, bound)]


def presheaf_relations_check(C: SLCC, bound: int = 3, graphs: Sequence[LevelGraph] | None = None) -> Report:
    report = Report()
    Q = extract_properad(C)
    chk = _Check()
    for g in graphs if graphs is not None else presheaf_graphs(bound):
        for d in properad.decorations_enum(g, Q, bound):
            bad = relation_failures(d, Q)
            chk(not bad, lambda: f"{', '.join(bad)} on {g!r}")
    chk.into(report, "presheaf-relations")
    return report
