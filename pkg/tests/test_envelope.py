import random
from collections import Counter
from itertools import product
from math import factorial, prod

import pytest

from lcospan import cospan, finset, properad
from lcospan._text import ParseError
from lcospan.envelope import Envelope, normal_form
from lcospan.properad import CayleyMonoid, Naturals, Op
from strategies import hom_pool, random_chain

ENVS = [Envelope(properad.terminal(1)), Envelope(properad.terminal(2)), Envelope(properad.discrete(3)),
        Envelope(properad.monoid_weighted(CayleyMonoid.cyclic(2)))]


@pytest.fixture(scope="module", params=ENVS, ids=repr)
def env_pool(request):
    env = request.param
    return env, hom_pool(env, 2, 2)


def test_identity():
    env = Envelope(properad.terminal(2))
    i = env.identity((0, 1))
    assert i.shape == cospan.identity(2)
    assert i.vertex_ops == (Op((0,), (0,), "*"), Op((1,), (1,), "*"))
    assert env.identity(()).shape == cospan.identity(0)


def test_compose_cup_cap_closes_a_vertex():
    env = Envelope(properad.terminal(1))
    cup = env.corolla(Op((), (0,), "*"))
    cap = env.corolla(Op((0,), (), "*"))
    loop = env.compose(cup, cap)
    assert loop.shape == cospan.closed_only(1)
    assert loop.vertex_ops == (Op((), (), "*"),)


def test_compose_adds_weights():
    env = Envelope(properad.monoid_weighted(Naturals()))
    f = env.corolla(Op((0,), (0,), 2))
    g = env.corolla(Op((0,), (0,), 3))
    assert env.compose(f, g) == env.corolla(Op((0,), (0,), 5))
    with pytest.raises(ValueError):
        env.compose(f, env.identity((0, 0)))


def test_compose_keeps_separate_components_apart():
    env = Envelope(properad.monoid_weighted(Naturals()))
    f = env.tensor(env.corolla(Op((0,), (0,), 1)), env.corolla(Op((0,), (0,), 2)))
    g = env.symmetry((0,), (0,))
    h = env.compose(f, g)
    assert h.shape == cospan.symmetry(1, 1)
    assert [op.label for op in h.vertex_ops] == [1, 2]


def test_closed_vertices_are_sorted():
    env = Envelope(properad.monoid_weighted(Naturals()))
    a = env.corolla(Op((), (), 3))
    b = env.corolla(Op((), (), 1))
    assert env.tensor(a, b) == env.tensor(b, a)
    assert [op.label for op in env.tensor(a, b).vertex_ops] == [1, 3]


def test_category_laws(env_pool):
    env, pool = env_pool
    rng = random.Random(11)
    done = 0
    while done < 500:
        chain = random_chain(rng, pool, rng.choice(list(pool)), 3)
        if chain is None:
            continue
        f, g, h = chain
        assert env.compose(env.compose(f, g), h) == env.compose(f, env.compose(g, h))
        assert env.compose(env.identity(f.src), f) == f == env.compose(f, env.identity(f.tgt))
        done += 1


def test_tensor_laws(env_pool):
    env, pool = env_pool
    rng = random.Random(12)
    flat = [f for fs in pool.values() for f in fs]
    e = env.identity(())
    for _ in range(300):
        f, g, h = rng.choice(flat), rng.choice(flat), rng.choice(flat)
        assert env.tensor(env.tensor(f, g), h) == env.tensor(f, env.tensor(g, h))
        assert env.tensor(f, e) == f == env.tensor(e, f)
        assert env.project(env.tensor(f, g)) == cospan.tensor(env.project(f), env.project(g))


def test_symmetry_laws(env_pool):
    env, pool = env_pool
    rng = random.Random(13)
    flat = [f for fs in pool.values() for f in fs]
    words = list(pool)
    for _ in range(300):
        a, b = rng.choice(words), rng.choice(words)
        assert env.compose(env.symmetry(a, b), env.symmetry(b, a)) == env.identity(a + b)
        assert env.twisted_tensor(env.identity(a), env.identity(b)) == env.symmetry(a, b)
        assert env.project(env.symmetry(a, b)) == cospan.symmetry(len(a), len(b))
        f, g = rng.choice(flat), rng.choice(flat)
        lhs = env.compose(env.tensor(f, g), env.symmetry(f.tgt, g.tgt))
        assert lhs == env.compose(env.symmetry(f.src, g.src), env.tensor(g, f))


def test_twisted_tensor(env_pool):
    env, pool = env_pool
    rng = random.Random(14)
    flat = [f for fs in pool.values() for f in fs]
    e = env.identity(())
    for _ in range(300):
        f, g = rng.choice(flat), rng.choice(flat)
        tw = env.twisted_tensor(f, g)
        assert (tw.src, tw.tgt) == (f.src + g.src, g.tgt + f.tgt)
        assert tw == env.compose(env.tensor(f, g), env.symmetry(f.tgt, g.tgt))
        assert env.project(tw) == cospan.compose(cospan.tensor(env.project(f), env.project(g)),
                                                 cospan.symmetry(len(f.tgt), len(g.tgt)))
        assert env.twisted_tensor(f, e) == f and env.twisted_tensor(e, f) == f


def test_hom_enum_terminal_empty():
    env = Envelope(properad.terminal(1))
    homs = env.hom_enum((), (), 2)
    assert [f.shape.closed for f in homs] == [0, 1, 2]


def test_hom_enum_discrete_is_permutations():
    env = Envelope(properad.discrete(3))
    for n in range(4):
        for a in product(range(3), repeat=n):
            for b in product(range(3), repeat=n):
                homs = env.hom_enum(a, b, 3)
                if sorted(a) != sorted(b):
                    assert homs == []
                    continue
                assert len(homs) == prod(factorial(c) for c in Counter(a).values())
                for f in homs:
                    assert f.shape.middle == n and f.shape.closed == 0
                    assert finset.is_bijection(f.shape.left) and finset.is_bijection(f.shape.right)
                    env.check(f)
    assert env.hom_enum((0,), (0, 0), 3) == []


def test_hom_enum_sound_and_distinct(env_pool):
    env, pool = env_pool
    for fs in pool.values():
        assert len(set(fs)) == len(fs)
        for f in fs:
            env.check(f)
            assert normal_form(f.src, f.tgt, f.shape.left, f.shape.right, f.vertex_ops) == f
            assert f.shape.middle <= 2


def test_hom_enum_closed_under_composition():
    env = Envelope(properad.terminal(1))
    within = set(env.hom_enum((0,), (0,), 4))
    small = env.hom_enum((0,), (0,), 2)
    for f in small:
        for g in small:
            assert env.compose(f, g) in within


def test_text_round_trip(env_pool):
    env, pool = env_pool
    for fs in pool.values():
        for f in fs[::3]:
            assert env.parse(env.emit(f)) == f


def test_text_format():
    env = Envelope(properad.monoid_weighted(Naturals()))
    f = env.corolla(Op((0, 0), (0,), 4))
    assert env.emit(f) == "mor 0 0 -> 0 ; shape cospan 2 1 1 : 1 1 | 1 ; ops 4"
    g = env.parse("mor -> ; shape cospan 0 2 0 : | ; ops 3 1")
    assert [op.label for op in g.vertex_ops] == [1, 3]


@pytest.mark.parametrize("text, col", [
    ("mor 0 -> 0 ; shape cospan 1 1 1 : 1 | 1 ; ops x", 47),
    ("mor 0 -> 0 0 ; shape cospan 1 1 1 : 1 | 1 ; ops 0", 22),
    ("mor 3 -> 0 ; shape cospan 1 1 1 : 1 | 1 ; ops 0", 5),
    ("mor 0 -> 0 ; shape cospan 1 1 1 : 1 | 1 ; ops", 46),
])
def test_parse_errors(text, col):
    env = Envelope(properad.monoid_weighted(Naturals()))
    with pytest.raises(ParseError) as e:
        env.parse(text, line=2)
    assert (e.value.line, e.value.column) == (2, col)
