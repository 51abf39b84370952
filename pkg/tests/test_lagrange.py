import random
import warnings

import pytest

from oracles import CORPUS, group, symmetric
from wreathcoord import (NotInGroupError, Permutation, PermutationGroup, build_decomposition,
                         parse_cycles, validate_chain)
from wreathcoord.lagrange import ChainError, parse_coordinates, point_stabilizer_chain


def s4_chain():
    s4 = symmetric(4)
    a4 = s4.subgroup([parse_cycles("(1,2,3)", 4), parse_cycles("(2,3,4)", 4)])
    v4 = s4.subgroup([parse_cycles("(1,2)(3,4)", 4), parse_cycles("(1,3)(2,4)", 4)])
    return [s4, a4, v4, PermutationGroup((), 4)]


def random_state(d, rng):
    return d.coordinates(rng.randint(1, k) for k in d.index_counts())


def test_s4_chain_bijection():
    d = build_decomposition(s4_chain())
    assert d.index_counts() == (2, 3, 4)
    elems = list(d.group.iter_elements())
    coords = [d.encode(g) for g in elems]
    assert len({c.indices for c in coords}) == 24
    assert all(d.decode(c) == g for c, g in zip(coords, elems))
    tuples = {(a, b, c) for a in (1, 2) for b in (1, 2, 3) for c in (1, 2, 3, 4)}
    assert len({d.decode(t) for t in tuples}) == 24


def test_validate_chain():
    s4, a4, v4, triv = s4_chain()
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        ch = validate_chain([s4, s4])
    assert len(ch) == 1 and w
    with pytest.warns(UserWarning):
        assert len(build_decomposition([s4, s4])) == 0
    c3 = s4.subgroup([parse_cycles("(1,2,3)", 4)])
    bad = s4.subgroup([parse_cycles("(1,2,3)", 4), parse_cycles("(1,2)", 4)])
    with pytest.raises(ChainError):
        validate_chain([s4, c3, bad])
    with pytest.raises(ChainError):
        validate_chain([s4, symmetric(3)])
    with pytest.raises(ChainError):
        validate_chain([])


def test_lagrange_counting(pocket_decomps):
    for d in pocket_decomps.values():
        orders = d.chain.orders()
        for lev, big, small in zip(d.levels, orders, orders[1:]):
            assert lev.index_count * small == big
        assert d.tuple_count() == 88179840


def test_two_level_examples(two_level):
    assert two_level.index_counts() == (40320, 2187)
    assert two_level.component_orders() == (40320, 2187)


def test_cornerwise_examples(cornerwise):
    assert cornerwise.index_counts() == (8, 3, 7, 3, 6, 3, 5, 3, 4, 3, 3, 3, 2, 3)


def test_encode_basics(pocket_decomps, pocket):
    for d in pocket_decomps.values():
        assert d.encode(Permutation.identity(24)).indices == (1,) * len(d)
        assert d.decode(d.base_state()).is_identity()
        with pytest.raises(NotInGroupError):
            d.encode(parse_cycles("(1,2)", 24))
        # an element of the bottom-but-one group has only its last coordinate moved
        G_n = d.chain.groups[-2]
        for seed in range(10):
            c = d.encode(G_n.random_element(seed))
            assert c.indices[:-1] == (1,) * (len(d) - 1)


def test_coordinates_range(two_level):
    with pytest.raises(ChainError):
        two_level.coordinates((0, 1))
    with pytest.raises(ChainError):
        two_level.coordinates((1, 2188))
    with pytest.raises(ChainError):
        two_level.coordinates((1,))


def test_parse_coordinates():
    assert parse_coordinates("( 3, 1, 2 )") == (3, 1, 2)
    assert parse_coordinates("3,1,2") == (3, 1, 2)
    assert parse_coordinates("()") == ()
    with pytest.raises(ChainError):
        parse_coordinates("1,x")


def test_component_actions_properties(pocket, pocket_decomps):
    G = pocket.group
    rng = random.Random(3)
    for d in pocket_decomps.values():
        base = d.base_state()
        acts, same = d.component_actions(base, Permutation.identity(24))
        assert all(a.is_identity() for a in acts.actions) and same == base
        # an element of G_n on the base state: upper levels stay put, g_n = g
        G_n = d.chain.groups[-2]
        g = G_n.random_element(4)
        acts, c = d.component_actions(base, g)
        assert c.indices[:-1] == (1,) * (len(d) - 1) and acts[len(d) - 1] == g
        for _ in range(100):
            c = random_state(d, rng)
            g = G.random_element(rng.randrange(10**9))
            h = G.random_element(rng.randrange(10**9))
            acts, new = d.component_actions(c, g)
            assert new == d.encode(d.decode(c) * g)
            assert d.act(d.act(c, g), g.inverse()) == c
            assert d.act(d.act(c, g), h) == d.act(c, g * h)
            assert d.act(base, g) == d.encode(g)
            # each level moves its index by the coset action of its own g_i
            for i, (lev, gi) in enumerate(zip(d.levels, acts.actions), 1):
                assert lev.table.parent.contains(gi)
                if lev.index_count <= 1000:
                    assert (d.level_index_action(i, gi).image(c.indices[i - 1])
                            == new.indices[i - 1])


def test_hierarchical_dependence(pocket, pocket_decomps):
    G = pocket.group
    rng = random.Random(5)
    for d in pocket_decomps.values():
        for _ in range(100):
            c = random_state(d, rng)
            i = rng.randint(1, len(d))
            other = d.coordinates(c.indices[:i - 1] + random_state(d, rng).indices[i - 1:])
            g = G.random_element(rng.randrange(10**9))
            a, _ = d.component_actions(c, g)
            b, _ = d.component_actions(other, g)
            assert a.actions[:i] == b.actions[:i]


def test_killers_and_builders(pocket, pocket_decomps):
    rng = random.Random(9)
    for d in pocket_decomps.values():
        assert all(k.is_identity() for k in d.level_killers(d.base_state()))
        assert all(b.is_identity() for b in d.level_builders(d.base_state()))
        for _ in range(50):
            c = random_state(d, rng)
            g = d.decode(c)
            state = g
            for i, k in enumerate(d.level_killers(c), 1):
                state = state * k
                e = d.encode(state)
                assert e.indices[:i] == (1,) * i
                assert e.reps[i:] == c.reps[i:]
            assert state.is_identity()
            built = Permutation.identity(24)
            for b in d.level_builders(c):
                built = built * b
            assert built == g
            for k in d.level_killers(c):
                built = built * k
            assert built.is_identity()


def test_navigate(pocket_decomps):
    rng = random.Random(11)
    for d in pocket_decomps.values():
        base = d.base_state()
        for _ in range(30):
            c, t = random_state(d, rng), random_state(d, rng)
            assert d.navigate(c, c).is_identity()
            assert d.navigate(base, c) == d.decode(c)
            killers = Permutation.identity(24)
            for k in d.level_killers(c):
                killers = killers * k
            assert d.navigate(c, base) == killers
            assert d.act(c, d.navigate(c, t)) == t


def test_solve_word(pocket, two_level):
    G = pocket.group
    assert len(two_level.solve_word(Permutation.identity(24))) == 0
    u = pocket.move("U")
    assert G.evaluate_word(two_level.solve_word(u)) == u.inverse()
    g = G.random_element(2024)
    words = two_level.solve_words(g)
    killers = two_level.level_killers(two_level.encode(g))
    assert [G.evaluate_word(w) for w in words] == killers
    assert (g * G.evaluate_word(two_level.solve_word(g))).is_identity()


@pytest.mark.parametrize("name", ["S4", "S5", "PSL27", "A6"])
def test_point_stabilizer_chain_bijection(name):
    gens, n = CORPUS[name]
    G = group(gens, n)
    d = build_decomposition(point_stabilizer_chain(G))
    assert d.tuple_count() == G.order()
    seen = set()
    for g in G.iter_elements():
        c = d.encode(g)
        seen.add(c.indices)
        assert d.decode(c) == g
    assert len(seen) == G.order()


def test_point_coordinates_experimental():
    s4 = symmetric(4)
    d = build_decomposition([s4, s4.pointwise_stabilizer([1])])
    for x in range(1, 5):
        assert d.decode_point(1, d.encode_point(1, x)) == x
    assert len({d.encode_point(1, x).indices for x in range(1, 5)}) == 4
