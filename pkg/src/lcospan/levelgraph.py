"""Level graphs, stored as level sizes plus the raw cospans between adjacent levels.

Level i has |G_ii| edges; the i-th adjacent cospan G_{i-1,i-1} -> M_i <- G_ii
carries the vertices between levels i-1 and i.  The sets G_ij for i < j are
recomputed as iterated pushouts, numbered by smallest representative in the
concatenation M_{i+1} + ... + M_j.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, NamedTuple, Sequence

from . import cospan, finset
from ._text import Cursor
from .finset import FinMap, UnionFind

Adjacent = tuple[FinMap, FinMap]


class LevelGraph(NamedTuple):
    """Use LevelGraph.of for checked construction."""
    level_sizes: tuple[int, ...]
    adjacents: tuple[Adjacent, ...]

    @classmethod
    def of(cls, level_sizes, adjacents) -> "LevelGraph":
        level_sizes, adjacents = tuple(level_sizes), tuple(adjacents)
        if len(adjacents) != len(level_sizes) - 1:
            raise ValueError("need exactly one adjacent cospan between consecutive levels")
        for i, (left, right) in enumerate(adjacents, 1):
            FinMap.of(*left)
            FinMap.of(*right)
            if left.dom_size != level_sizes[i - 1] or right.dom_size != level_sizes[i]:
                raise ValueError(f"adjacent {i} does not match its levels")
            if left.cod_size != right.cod_size:
                raise ValueError(f"adjacent {i} legs have different middles")
        return cls(level_sizes, tuple((FinMap(*l), FinMap(*r)) for l, r in adjacents))

    @property
    def height(self) -> int:
        return len(self.adjacents)

    def middle(self, i: int) -> int:
        return self.adjacents[i - 1][0].cod_size

    def __str__(self):
        return emit(self)


def from_cospans(cs: Sequence[cospan.Cospan]) -> LevelGraph:
    if not cs:
        raise ValueError("use edges() for height 0")
    levels = (cs[0].src,) + tuple(c.tgt for c in cs)
    return LevelGraph(levels, tuple((c.left, c.right) for c in cs))


def edges(n: int) -> LevelGraph:
    return LevelGraph((n,), ())


def as_cospan(g: LevelGraph) -> cospan.Cospan:
    """The normalized shape of a height 1 graph."""
    if g.height != 1:
        raise ValueError("only height 1 graphs are cospans")
    return cospan.normalize(*g.adjacents[0])


def derived_chain(g: LevelGraph, i: int, j: int) -> tuple[int, FinMap, FinMap, list[FinMap]]:
    """G_ij together with the maps from G_ii, G_jj and from each M_{i+1}..M_j."""
    n = g.height
    if not 0 <= i <= j <= n:
        raise ValueError(f"levels {i}, {j} out of range for height {n}")
    if i == j:
        ident = finset.identity(g.level_sizes[i])
        return g.level_sizes[i], ident, ident, []
    if j == i + 1:
        left, right = g.adjacents[i]
        return left.cod_size, left, right, [finset.identity(left.cod_size)]
    mids = g.adjacents[i:j]
    offsets = [0]
    for left, _ in mids:
        offsets.append(offsets[-1] + left.cod_size)
    uf = UnionFind(offsets[-1])
    for a in range(len(mids) - 1):
        r, l = mids[a][1].targets, mids[a + 1][0].targets
        for x, y in zip(r, l):
            uf.union(offsets[a] + x - 1, offsets[a + 1] + y - 1)
    q, cls = uf.numbering()
    maps = [FinMap(offsets[a + 1] - offsets[a], q, tuple(cls[offsets[a]:offsets[a + 1]]))
            for a in range(len(mids))]
    return (q, finset.compose_map(mids[0][0], maps[0]),
            finset.compose_map(mids[-1][1], maps[-1]), maps)


def derived_set(g: LevelGraph, i: int, j: int) -> tuple[int, FinMap, FinMap]:
    return derived_chain(g, i, j)[:3]


def simplicial_map(g: LevelGraph, alpha: Sequence[int]) -> LevelGraph:
    """alpha^*G for a weakly monotone alpha: [m] -> [n], given by its values."""
    alpha = tuple(alpha)
    if not alpha or any(a > b for a, b in zip(alpha, alpha[1:])):
        raise ValueError(f"{alpha} is not weakly monotone")
    if alpha[0] < 0 or alpha[-1] > g.height:
        raise ValueError(f"{alpha} out of range for height {g.height}")
    sizes, stored = g.level_sizes, g.adjacents
    adj = []
    for a, b in zip(alpha, alpha[1:]):
        if a == b:
            ident = finset.identity(sizes[a])
            adj.append((ident, ident))
        elif b == a + 1:
            adj.append(stored[a])
        else:
            adj.append(derived_chain(g, a, b)[1:3])
    return LevelGraph(tuple(sizes[a] for a in alpha), tuple(adj))


def coface(n: int, k: int) -> tuple[int, ...]:
    """d^k: [n-1] -> [n] skipping k."""
    return tuple(i for i in range(n + 1) if i != k)


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """s^j: [n+1] -> [n] hitting j twice."""
    return tuple(range(j + 1)) + tuple(range(j, n + 1))


def face(g: LevelGraph, k: int) -> LevelGraph:
    if not 0 <= k <= g.height or g.height == 0:
        raise ValueError(f"no face {k} at height {g.height}")
    return simplicial_map(g, coface(g.height, k))


def degeneracy(g: LevelGraph, j: int) -> LevelGraph:
    if not 0 <= j <= g.height:
        raise ValueError(f"no degeneracy {j} at height {g.height}")
    return simplicial_map(g, codegeneracy(g.height, j))


def face_middle_maps(g: LevelGraph, k: int) -> list[list[tuple[int, FinMap]]]:
    """For each middle b of d_k G, the middles a of G feeding it with their quotient maps."""
    n = g.height
    out = []
    alpha = coface(n, k)
    for b in range(1, n):
        lo, hi = alpha[b - 1], alpha[b]
        maps = derived_chain(g, lo, hi)[3]
        out.append([(lo + 1 + a, m) for a, m in enumerate(maps)])
    return out


def _middle_congruence(g: Adjacent, h: Adjacent, labels_g=None, labels_h=None) -> FinMap | None:
    (gl, gr), (hl, hr) = g, h
    if gl.cod_size != hl.cod_size or gl.dom_size != hl.dom_size or gr.dom_size != hr.dom_size:
        return None
    k = gl.cod_size
    phi = [0] * k
    used = [False] * k
    for a, b in zip(gl.targets + gr.targets, hl.targets + hr.targets):
        if phi[a - 1] == 0:
            if used[b - 1]:
                return None
            phi[a - 1] = b
            used[b - 1] = True
        elif phi[a - 1] != b:
            return None
    free_g = [x for x in range(1, k + 1) if phi[x - 1] == 0]
    free_h = [y for y in range(1, k + 1) if not used[y - 1]]
    if labels_g is not None:
        for x in range(1, k + 1):
            if phi[x - 1] and labels_g[x - 1] != labels_h[phi[x - 1] - 1]:
                return None
        free_g.sort(key=lambda x: labels_g[x - 1])
        free_h.sort(key=lambda y: labels_h[y - 1])
        if [labels_g[x - 1] for x in free_g] != [labels_h[y - 1] for y in free_h]:
            return None
    for x, y in zip(free_g, free_h):
        phi[x - 1] = y
    return FinMap(k, k, tuple(phi))


def congruent(g: LevelGraph, h: LevelGraph, labels_g=None, labels_h=None) -> tuple[bool, tuple[FinMap, ...] | None]:
    """Is there an isomorphism g -> h that is the identity on every level?

    The witness lists the bijection on each adjacent middle.  With labels
    (one sequence per middle), the bijection must also preserve them.
    """
    if g.level_sizes != h.level_sizes:
        return False, None
    witness = []
    for i in range(g.height):
        lg = labels_g[i] if labels_g is not None else None
        lh = labels_h[i] if labels_h is not None else None
        phi = _middle_congruence(g.adjacents[i], h.adjacents[i], lg, lh)
        if phi is None:
            return False, None
        witness.append(phi)
    return True, tuple(witness)


@dataclass(frozen=True)
class Embedding:
    """Order-preserving positions of a component inside each level and middle."""
    levels: tuple[tuple[int, ...], ...]
    middles: tuple[tuple[int, ...], ...]


def _restrict(g: LevelGraph, emb: Embedding) -> LevelGraph:
    adj = []
    for i, (left, right) in enumerate(g.adjacents, 1):
        pos = {x: p for p, x in enumerate(emb.middles[i - 1], 1)}
        k = len(pos)
        adj.append((FinMap(len(emb.levels[i - 1]), k, tuple(pos[left(e)] for e in emb.levels[i - 1])),
                    FinMap(len(emb.levels[i]), k, tuple(pos[right(e)] for e in emb.levels[i]))))
    return LevelGraph(tuple(len(lv) for lv in emb.levels), tuple(adj))


def components(g: LevelGraph) -> list[tuple[LevelGraph, Embedding]]:
    """One connected component per element of G_0n, in that order."""
    n = g.height
    q, _, _, mid_maps = derived_chain(g, 0, n)
    if n == 0:
        level_maps = [finset.identity(q)]
    else:
        level_maps = [finset.compose_map(g.adjacents[l][0], mid_maps[l]) for l in range(n)]
        level_maps.append(finset.compose_map(g.adjacents[-1][1], mid_maps[-1]))
    out = []
    for x in range(1, q + 1):
        emb = Embedding(tuple(tuple(finset.preimage(f, x)) for f in level_maps),
                        tuple(tuple(finset.preimage(f, x)) for f in mid_maps))
        out.append((_restrict(g, emb), emb))
    return out


def is_connected(g: LevelGraph) -> bool:
    return derived_chain(g, 0, g.height)[0] == 1


def tensor_graphs(g: LevelGraph, h: LevelGraph) -> LevelGraph:
    if g.height != h.height:
        raise ValueError("heights differ")
    levels = tuple(a + b for a, b in zip(g.level_sizes, h.level_sizes))
    adj = tuple((finset.sum_map(gl, hl), finset.sum_map(gr, hr))
                for (gl, gr), (hl, hr) in zip(g.adjacents, h.adjacents))
    return LevelGraph(levels, adj)


@dataclass(frozen=True)
class Sigma:
    """Bijections from each level and each adjacent middle to those of g+h."""
    levels: tuple[FinMap, ...]
    middles: tuple[FinMap, ...]


def twisted_sum(g: LevelGraph, h: LevelGraph, t: int) -> tuple[LevelGraph, Sigma]:
    """G (+)_t H: blocks in g,h order on G_ij with i < t and flipped for i >= t."""
    n = g.height
    if h.height != n:
        raise ValueError("heights differ")
    if not 0 <= t <= n + 1:
        raise ValueError(f"twist index {t} out of range")

    def flip(x: int, y: int, first: int) -> FinMap:
        # x, y are the g and h sizes; first index of the component decides
        return finset.block_swap(y, x) if first >= t else finset.identity(x + y)

    levels, level_sigma = [], []
    for i, (a, b) in enumerate(zip(g.level_sizes, h.level_sizes)):
        levels.append(a + b)
        level_sigma.append(flip(a, b, i))
    adj, mid_sigma = [], []
    for i in range(1, n + 1):
        (gl, gr), (hl, hr) = g.adjacents[i - 1], h.adjacents[i - 1]
        ms = flip(gl.cod_size, hl.cod_size, i - 1)
        inv = finset.inverse(ms)
        # legs of g+h transported along the sigmas
        left = finset.compose_map(level_sigma[i - 1],
                                  finset.compose_map(finset.sum_map(gl, hl), inv))
        right = finset.compose_map(level_sigma[i],
                                   finset.compose_map(finset.sum_map(gr, hr), inv))
        adj.append((left, right))
        mid_sigma.append(ms)
    return LevelGraph(tuple(levels), tuple(adj)), Sigma(tuple(level_sigma), tuple(mid_sigma))


def segal_decompose(g: LevelGraph) -> tuple[list[LevelGraph], list[LevelGraph]]:
    n = g.height
    rho = [simplicial_map(g, (i - 1, i)) for i in range(1, n + 1)]
    kappa = [simplicial_map(g, (i,)) for i in range(n + 1)]
    return rho, kappa


def all_graphs(height: int, max_level: int, max_middle: int) -> Iterator[LevelGraph]:
    """Every level graph with the given height and size bounds."""
    def adjacents(a: int, b: int) -> list[Adjacent]:
        out = []
        for k in range(max_middle + 1):
            if k == 0 and a + b > 0:
                continue
            for left in finset.all_maps(a, k):
                for right in finset.all_maps(b, k):
                    out.append((left, right))
        return out

    cache: dict[tuple[int, int], list[Adjacent]] = {}
    for levels in product(range(max_level + 1), repeat=height + 1):
        choices = []
        for a, b in zip(levels, levels[1:]):
            if (a, b) not in cache:
                cache[a, b] = adjacents(a, b)
            choices.append(cache[a, b])
        for adj in product(*choices):
            yield LevelGraph(levels, adj)


def emit(g: LevelGraph) -> str:
    lines = [f"graph h={g.height} ; levels " + " ".join(map(str, g.level_sizes))]
    for i, (left, right) in enumerate(g.adjacents, 1):
        row = [f"adj{i}", f"k={left.cod_size}", ":"] + [str(t) for t in left.targets]
        row += ["|"] + [str(t) for t in right.targets]
        lines.append(" ".join(row))
    return "\n".join(lines)


def parse(text: str, line: int = 1) -> LevelGraph:
    cur = Cursor(text, line)
    cur.expect("graph")
    tok = cur.next("height")
    if not tok.text.startswith("h=") or not tok.text[2:].isdigit():
        cur.fail("expected h=<height>", tok)
    n = int(tok.text[2:])
    cur.expect(";")
    cur.expect("levels")
    levels = []
    while cur.peek() is not None and cur.peek().text.isdigit():
        levels.append(cur.natural())
    if len(levels) != n + 1:
        cur.fail(f"expected {n + 1} level sizes, got {len(levels)}")
    adj = []
    for i in range(1, n + 1):
        if cur.peek() is not None and cur.peek().text == ";":
            cur.next()
        cur.expect(f"adj{i}")
        k = None
        if cur.peek() is not None and cur.peek().text.startswith("k="):
            tok = cur.next()
            if not tok.text[2:].isdigit():
                cur.fail("expected k=<middle size>", tok)
            k = int(tok.text[2:])
        cur.expect(":")
        left_toks = cur.until({"|"})
        cur.expect("|")
        right_toks = cur.until({";"} | {f"adj{i + 1}"})
        vals = []
        for t in left_toks + right_toks:
            if not t.text.isdigit() or int(t.text) < 1:
                cur.fail("leg values are positive integers", t)
            vals.append(int(t.text))
        if k is None:
            k = max(vals, default=0)
        for t, v in zip(left_toks + right_toks, vals):
            if v > k:
                cur.fail(f"leg value exceeds middle size {k}", t)
        a, b = levels[i - 1], levels[i]
        if len(left_toks) != a or len(right_toks) != b:
            cur.fail(f"adj{i} legs have sizes {len(left_toks)}, {len(right_toks)}; expected {a}, {b}")
        adj.append((FinMap.of(a, k, vals[:a]), FinMap.of(b, k, vals[a:])))
    cur.done()
    return LevelGraph(tuple(levels), tuple(adj))


def unit_transport(g: LevelGraph, j: int) -> bool:
    """d_{j+1} s_j G equals G after relabelling middle j+1 along the
    canonical bijection M_{j+1} -> (s_j G)_{j,j+2}."""
    s = degeneracy(g, j)
    x = face(s, j + 1)
    if j == g.height:
        return x == g
    phi = derived_chain(s, j, j + 2)[3][1]
    if not finset.is_bijection(phi):
        return False
    left, right = g.adjacents[j]
    moved = (finset.compose_map(left, phi), finset.compose_map(right, phi))
    expected = LevelGraph(g.level_sizes, g.adjacents[:j] + (moved,) + g.adjacents[j + 1:])
    return x == expected and congruent(x, g)[0]


def simplicial_identity_failures(g: LevelGraph) -> list[str]:
    """Names of the simplicial identities that fail on g (empty when all hold).

    d_{j+1} s_j = id is checked up to the canonical middle bijection; every
    other identity is checked as literal equality of stored data.
    """
    n = g.height
    bad = []
    for j in range(1, n + 1):
        for i in range(j):
            if n >= 2 and face(face(g, j), i) != face(face(g, i), j - 1):
                bad.append(f"d{i} d{j} = d{j - 1} d{i}")
    for j in range(n + 1):
        sj = degeneracy(g, j)
        for i in range(j + 1):
            if degeneracy(sj, i) != degeneracy(degeneracy(g, i), j + 1):
                bad.append(f"s{i} s{j} = s{j + 1} s{i}")
        for i in range(n + 2):
            if i == j + 1:
                ok = unit_transport(g, j)
            elif i == j:
                ok = face(sj, i) == g
            elif n == 0:
                continue
            elif i < j:
                ok = face(sj, i) == degeneracy(face(g, i), j - 1)
            else:
                ok = face(sj, i) == degeneracy(face(g, i - 1), j)
            if not ok:
                bad.append(f"d{i} s{j}")
    return bad


def segal_failures(max_level: int, max_middle: int) -> list[str]:
    """Height 2: congruence classes are determined by their two outer faces,
    and every composable pair of cospans lifts by stacking."""
    bad = []
    groups: dict[tuple, LevelGraph] = {}
    for g in all_graphs(2, max_level, max_middle):
        key = (as_cospan(face(g, 2)), as_cospan(face(g, 0)))
        first = groups.setdefault(key, g)
        if first is not g and not congruent(first, g)[0]:
            bad.append(f"injectivity: {first!r} vs {g!r}")
    for a in range(max_level + 1):
        for b in range(max_level + 1):
            for c in range(max_level + 1):
                for u in cospan.all_cospans(a, b, max_middle):
                    for v in cospan.all_cospans(b, c, max_middle):
                        g = from_cospans([u, v])
                        if (as_cospan(face(g, 2)), as_cospan(face(g, 0))) != (u, v):
                            bad.append(f"lift: {u} ; {v}")
    return bad


def _induced_on_face(sigma: Sigma, k: int, feeds_src, feeds_dst, sizes) -> Sigma | None:
    """d_k of a level-and-middle bijection, given both graphs' face feeds; None if ill defined."""
    n = len(sigma.middles)
    levels = tuple(sigma.levels[a] for a in coface(n, k))
    mids = []
    for feed_s, feed_d, size in zip(feeds_src, feeds_dst, sizes):
        out = [0] * size
        for (a, qs), (_, qd) in zip(feed_s, feed_d):
            sm = sigma.middles[a - 1].targets
            qdt = qd.targets
            for e, x in enumerate(qs.targets):
                y = qdt[sm[e] - 1]
                if out[x - 1] not in (0, y):
                    return None
                out[x - 1] = y
        mids.append(FinMap(size, size, tuple(out)))
    return Sigma(levels, tuple(mids))


def twisted_interchange_failures(g: LevelGraph, h: LevelGraph, t: int) -> list[str]:
    """sigma_t d^k = d^k sigma_{t-1} (k < t) and d^k sigma_t (k >= t).

    Checked as: the face of the twisted sum is congruent to the twisted sum
    of the faces by exactly the congruence that makes the square commute.
    """
    n = g.height
    bad = []
    if n == 0:
        return bad
    tw, sigma = twisted_sum(g, h, t)
    plain = tensor_graphs(g, h)
    for k in range(n + 1):
        x = face(tw, k)
        dg, dh = face(g, k), face(h, k)
        y, sigma2 = twisted_sum(dg, dh, t - 1 if k < t else t)
        feeds_plain = face_middle_maps(plain, k)
        sizes = [x.middle(b) for b in range(1, n)]
        ds = _induced_on_face(sigma, k, face_middle_maps(tw, k), feeds_plain, sizes)
        if ds is None:
            bad.append(f"k={k}: induced map ill defined")
            continue
        if ds.levels != sigma2.levels:
            bad.append(f"k={k}: level bijections differ")
            continue
        # identify d_k(G+H) with d_kG + d_kH through the quotient maps
        gfeeds, hfeeds = face_middle_maps(g, k), face_middle_maps(h, k)
        for b in range(n - 1):
            size = sizes[b]
            out = [0] * size
            shift = dg.middle(b + 1)
            for (a, q), (_, qg), (_, qh) in zip(feeds_plain[b], gfeeds[b], hfeeds[b]):
                split = g.middle(a)
                for e, v in enumerate(q.targets, 1):
                    out[v - 1] = qg(e) if e <= split else shift + qh(e - split)
            psi = FinMap(size, size, tuple(out))
            c = finset.compose_map(finset.compose_map(ds.middles[b], psi),
                                   finset.inverse(sigma2.middles[b]))
            (xl, xr), (yl, yr) = x.adjacents[b], y.adjacents[b]
            if (finset.compose_map(xl, c), finset.compose_map(xr, c)) != (yl, yr):
                bad.append(f"k={k}: middle {b + 1} square does not commute")
    return bad


def graph_pairs(height: int, max_level: int, max_middle: int) -> Iterator[tuple[LevelGraph, LevelGraph]]:
    """Pairs whose sum stays within the bounds."""
    by_shape: dict[tuple, list[LevelGraph]] = {}
    for g in all_graphs(height, max_level, max_middle):
        shape = g.level_sizes + tuple(g.middle(i) for i in range(1, height + 1))
        by_shape.setdefault(shape, []).append(g)
    shapes = list(by_shape)
    levels = height + 1
    for sg in shapes:
        for sh in shapes:
            if all(a + b <= max_level for a, b in zip(sg[:levels], sh[:levels])) and \
                    all(a + b <= max_middle for a, b in zip(sg[levels:], sh[levels:])):
                for g in by_shape[sg]:
                    for h in by_shape[sh]:
                        yield g, h
