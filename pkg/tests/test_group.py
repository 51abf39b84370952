from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SP, PermutationGroup as SG

from oracles import CORPUS, closure, cyc, group, invariant_partitions, symmetric
from wreathcoord import (GroupError, NamedGenerator, NotInGroupError, Permutation, PermutationGroup,
                         build_group, induced_action, minimal_blocks, parse_cycles,
                         pointwise_stabilizer)
from wreathcoord.group import set_orbit
from wreathcoord.puzzles import builtin_rubiks_cube

SMALL = [k for k, (g, n) in CORPUS.items() if len(closure(g, n)) <= 720]


def sympy_order(gens, n):
    return SG([SP(list(g)) for g in gens]).order() if n > 1 else 1


@pytest.mark.parametrize("name", list(CORPUS))
def test_orders_against_sympy(name):
    gens, n = CORPUS[name]
    assert group(gens, n).order() == sympy_order(gens, n)


@pytest.mark.parametrize("name", SMALL)
def test_orders_and_elements_against_closure(name):
    gens, n = CORPUS[name]
    G = group(gens, n)
    elems = closure(gens, n)
    assert G.order() == len(elems)
    assert {p._img for p in G.iter_elements()} == elems


def test_basic_orders(pocket, rubik):
    assert pocket.group.order() == 88179840
    assert rubik.group.order() == 43252003274489856000
    assert build_group([NamedGenerator("a", parse_cycles("(1,2,3)", 3))], 3).order() == 3
    assert build_group([NamedGenerator("e", Permutation.identity(5))], 5).order() == 1
    s4 = build_group([NamedGenerator("a", parse_cycles("(1,2)", 4)),
                      NamedGenerator("b", parse_cycles("(1,2,3,4)", 4))], 4)
    assert s4.order() == 24


def test_rubik_order_against_sympy(rubik):
    gens = [SP([x - 1 for x in m.perm.images]) for m in rubik.moves]
    assert SG(gens).order() == rubik.group.order()


def test_build_errors():
    with pytest.raises(GroupError):
        build_group([], 3)
    with pytest.raises(GroupError):
        build_group([NamedGenerator("a", parse_cycles("(1,2)", 3)),
                     NamedGenerator("b", parse_cycles("(1,2)", 4))], 3)
    with pytest.raises(GroupError):
        build_group([NamedGenerator("a", parse_cycles("(1,2)", 3)),
                     NamedGenerator("a", parse_cycles("(2,3)", 3))], 3)


def test_membership(pocket):
    G = pocket.group
    assert G.contains(pocket.move("U"))
    assert G.contains(Permutation.identity(24))
    swap = parse_cycles("(1,2)", 24)
    assert not G.contains(swap)
    # (1,2) does not preserve the corner triples, so it cannot be a move sequence
    blocks = minimal_blocks(G, (1, 5))
    assert frozenset(swap.image(x) for x in blocks.block_of(1)) not in {frozenset(b) for b in blocks.blocks}


@pytest.mark.parametrize("name", SMALL)
def test_membership_against_closure(name):
    gens, n = CORPUS[name]
    G = group(gens, n)
    elems = closure(gens, n)
    for p in symmetric(n).iter_elements():
        assert G.contains(p) == (p._img in elems)


def test_factorize_examples(pocket):
    G = pocket.group
    assert str(G.factorize(pocket.move("U"))) == "U"
    assert str(G.factorize(pocket.move("U").inverse())) == "U'"
    assert len(G.factorize(Permutation.identity(24))) == 0
    with pytest.raises(NotInGroupError):
        G.factorize(parse_cycles("(1,2)", 24))


def test_factorize_round_trip_1000(pocket):
    G = pocket.group
    for seed in range(1000):
        g = G.random_element(seed)
        w = G.factorize(g)
        assert w.is_reduced()
        assert G.evaluate_word(w) == g


def test_evaluate_word(pocket):
    G = pocket.group
    assert G.evaluate_word("").is_identity()
    assert G.evaluate_word("U U U U").is_identity()
    assert G.evaluate_word("F F'").is_identity()
    assert G.evaluate_word("U*B^2") == pocket.move("U") * pocket.move("B") ** 2


def test_pointwise_stabilizers(pocket):
    s4 = symmetric(4)
    assert pointwise_stabilizer(s4, []) is s4
    assert pointwise_stabilizer(s4, [1, 2, 3]).order() == 1
    G = pocket.group
    H = G.pointwise_stabilizer([1, 5, 18])
    assert G.order() // H.order() == 24
    assert H.order() == G.pointwise_stabilizer([1]).order()


@pytest.mark.parametrize("name", SMALL)
def test_stabilizers_against_brute_force(name):
    gens, n = CORPUS[name]
    G = group(gens, n)
    elems = closure(gens, n)
    for pts in ([1], [1, 2], [2, n]):
        H = G.pointwise_stabilizer(pts)
        fixed = {g for g in elems if all(g[x - 1] == x - 1 for x in pts)}
        assert {p._img for p in H.iter_elements()} == fixed
        # orbit-stabilizer
        if len(pts) == 1:
            assert len(G.orbit(pts[0])) * H.order() == G.order()


def test_blocks_pocket(pocket):
    bs = minimal_blocks(pocket.group, (1, 5))
    assert len(bs) == 8 and bs.block_size == 3
    assert sorted(x for b in bs.blocks for x in b) == list(range(1, 25))
    family = {frozenset(b) for b in bs.blocks}
    for m in pocket.moves:
        assert all(frozenset(m.perm.image(x) for x in b) in family for b in bs.blocks)


def test_blocks_small():
    c4 = group([cyc(4, (1, 2, 3, 4))], 4)
    assert minimal_blocks(c4, (1, 3)).blocks == ((1, 3), (2, 4))
    s4 = symmetric(4)
    for a in range(1, 5):
        for b in range(1, 5):
            if a != b:
                assert minimal_blocks(s4, (a, b)).blocks == ((1, 2, 3, 4),)
    with pytest.raises(GroupError):
        minimal_blocks(group([cyc(4, (1, 2))], 4), (1, 3))


@pytest.mark.parametrize("name", [k for k in SMALL if CORPUS[k][1] <= 7])
def test_blocks_against_partitions(name):
    gens, n = CORPUS[name]
    G = group(gens, n)
    if not G.is_transitive():
        return
    parts = invariant_partitions(gens, n)
    for a in range(n):
        for b in range(a + 1, n):
            want = min((p for p in parts if any({a, b} <= blk for blk in p)),
                       key=lambda p: max(len(blk) for blk in p))
            got = {frozenset(x - 1 for x in blk) for blk in minimal_blocks(G, (a + 1, b + 1)).blocks}
            assert got == set(want)
            # the finest system containing {a, b} is contained in every other one
            for p in parts:
                if any({a, b} <= blk for blk in p):
                    assert all(any(blk <= big for big in p) for blk in got)


def test_induced_action(pocket):
    ia = induced_action(pocket.group, minimal_blocks(pocket.group, (1, 5)))
    assert ia.image_group.order() == 40320
    assert ia.kernel.order() == 2187
    assert ia.kernel.is_abelian()
    c4 = group([cyc(4, (1, 2, 3, 4))], 4)
    ia = induced_action(c4, [{1, 3}, {2, 4}])
    assert ia.image_group.order() == 2 and ia.kernel.order() == 2
    triv = PermutationGroup([NamedGenerator("e", Permutation.identity(4))], 4)
    ia = induced_action(triv, [{1, 2}, {3, 4}])
    assert ia.image_group.order() == 1 and ia.kernel.order() == 1
    with pytest.raises(GroupError):
        induced_action(c4, [{1, 2}, {3, 4}])


@pytest.mark.parametrize("name", ["D4", "S4", "D6", "S3wrC2"])
def test_kernel_and_setwise_against_brute_force(name):
    gens, n = CORPUS[name]
    G = group(gens, n)
    elems = closure(gens, n)
    for blocks in invariant_partitions(gens, n):
        sets = sorted((sorted(x + 1 for x in b) for b in blocks))
        ia = induced_action(G, sets)
        ker = {g for g in elems if all(frozenset(g[x] for x in b) == b for b in blocks)}
        assert {p._img for p in ia.kernel.iter_elements()} == ker
        first = frozenset(x - 1 for x in sets[0])
        stab = {g for g in elems if frozenset(g[x] for x in first) == first}
        assert {p._img for p in ia.preimage_stabilizer(1).iter_elements()} == stab


def test_set_orbit(pocket):
    orb = set_orbit(pocket.group, [1, 5, 18])
    assert len(orb) == 8


def test_random_element(pocket):
    G = pocket.group
    assert G.random_element(7) == G.random_element(7)
    assert G.random_element(7) != G.random_element(8)
    assert all(G.contains(G.random_element(s)) for s in range(50))
    triv = PermutationGroup([NamedGenerator("e", Permutation.identity(3))], 3)
    assert triv.random_element(5).is_identity()


def test_random_element_is_uniform_on_s3():
    from collections import Counter
    G = symmetric(3)
    counts = Counter(G.random_element(s) for s in range(6000))
    assert len(counts) == 6
    assert all(800 < c < 1200 for c in counts.values())


@lru_cache(maxsize=None)
def rubik_group():
    return builtin_rubiks_cube().group


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_factorize_rubik(seed):
    G = rubik_group()
    g = G.random_element(seed)
    assert G.evaluate_word(G.factorize(g)) == g


def test_subgroup_and_normality():
    s4 = symmetric(4)
    a4 = s4.subgroup([parse_cycles("(1,2,3)", 4), parse_cycles("(2,3,4)", 4)])
    assert a4.order() == 12 and a4.is_normal_in(s4)
    c3 = s4.subgroup([parse_cycles("(1,2,3)", 4)])
    assert not c3.is_normal_in(s4)
    with pytest.raises(NotInGroupError):
        a4.subgroup([parse_cycles("(1,2)", 4)])
