"""Permutation groups with a base and strong generating set.

Construction is a deterministic incremental Schreier-Sims.  Base points are
taken as the smallest point moved by the generators that fix the current
base; Schreier trees are grown breadth first with generators tried in
declaration order.  Orders are exact Python integers.

Factorization into the named generators uses a table of short words, one per
transversal entry of the stabilizer chain, filled by sifting pseudo-random
words from a fixed seed (Minkwitz's method).  The table is built on first use.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, _ident, _inv, _mul
from .words import Word, WordError, check_generator_name, free_reduce

__all__ = [
    "GroupError",
    "NotInGroupError",
    "NamedGenerator",
    "PermutationGroup",
    "BlockSystem",
    "InducedAction",
    "build_group",
    "order",
    "contains",
    "factorize",
    "evaluate_word",
    "pointwise_stabilizer",
    "minimal_blocks",
    "induced_action",
    "random_element",
    "set_orbit",
]

# cache explicit transversal elements only below this degree
_CACHE_DEGREE = 4096
_WORD_TABLE_SEED = 0x5EED


class GroupError(ValueError):
    pass


class NotInGroupError(GroupError):
    pass


@dataclass(frozen=True)
class NamedGenerator:
    name: str
    perm: Permutation

    def __post_init__(self):
        check_generator_name(self.name)


def _first_moved(g: tuple) -> int:
    for i, v in enumerate(g):
        if i != v:
            return i
    raise AssertionError("identity has no moved point")


class _Level:
    """One level of a stabilizer chain: base point, generators, Schreier tree."""

    __slots__ = ("base", "gens", "tree", "orbit", "_trans", "_n")

    def __init__(self, base: int, gens: list, n: int):
        self.base = base
        self.gens = list(gens)
        self._n = n
        self._reset()

    def _reset(self):
        self.tree = {self.base: None}
        self.orbit = [self.base]
        ident = _ident(self._n)
        self._trans = {self.base: (ident, ident)}

    def extend(self) -> None:
        """Grow the orbit under the current generators, keeping existing edges."""
        tree, orbit, gens = self.tree, self.orbit, self.gens
        i = 0
        while i < len(orbit):
            p = orbit[i]
            for gi, g in enumerate(gens):
                q = g[p]
                if q not in tree:
                    tree[q] = (p, gi)
                    orbit.append(q)
            i += 1

    def rebuild(self) -> None:
        self._reset()
        self.extend()

    def trans(self, p: int) -> tuple[tuple, tuple]:
        """Transversal element mapping the base point to ``p`` and its inverse."""
        hit = self._trans.get(p)
        if hit is not None:
            return hit
        path = []
        q = p
        while q not in self._trans:
            parent, gi = self.tree[q]
            path.append(gi)
            q = parent
        u = self._trans[q][0]
        for gi in reversed(path):
            u = _mul(u, self.gens[gi])
        out = (u, _inv(u))
        if self._n <= _CACHE_DEGREE:
            self._trans[p] = out
        return out

    def restricted(self, n: int) -> "_Level":
        lev = _Level.__new__(_Level)
        lev.base = self.base
        lev.gens = [g[:n] for g in self.gens]
        lev._n = n
        lev.tree = dict(self.tree)
        lev.orbit = list(self.orbit)
        ident = _ident(n)
        lev._trans = {self.base: (ident, ident)}
        return lev


def _strip(levels: Sequence[_Level], g: tuple, start: int = 0) -> tuple[tuple, int]:
    for l in range(start, len(levels)):
        lev = levels[l]
        p = g[lev.base]
        if p not in lev.tree:
            return g, l
        if p != lev.base:
            g = _mul(g, lev.trans(p)[1])
    return g, len(levels)


def _chain_order(levels: Sequence[_Level]) -> int:
    return prod(len(lev.orbit) for lev in levels)


def _schreier_sims(gens: Sequence[tuple], n: int, prefix: Sequence[int] = (),
                   known_order: int | None = None) -> list[_Level]:
    ident = _ident(n)
    seen = set()
    uniq = []
    for g in gens:
        if g != ident and g not in seen:
            seen.add(g)
            uniq.append(g)

    base = list(prefix)
    while True:
        loose = [g for g in uniq if all(g[b] == b for b in base)]
        if not loose:
            break
        base.append(min(_first_moved(g) for g in loose))

    levels = []
    for i, b in enumerate(base):
        lg = [g for g in uniq if all(g[c] == c for c in base[:i])]
        lev = _Level(b, lg, n)
        lev.extend()
        levels.append(lev)

    def done() -> bool:
        return known_order is not None and _chain_order(levels) == known_order

    checked: list[set] = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0 and not done():
        lev = levels[i]
        found = None
        for p in lev.orbit:
            u = lev.trans(p)[0]
            for si, s in enumerate(lev.gens):
                if (p, si) in checked[i]:
                    continue
                checked[i].add((p, si))
                sg = _mul(_mul(u, s), lev.trans(s[p])[1])
                if sg == ident:
                    continue
                h, j = _strip(levels, sg, i + 1)
                if j < len(levels) or h != ident:
                    found = (h, j)
                    break
            if found:
                break
        if found is None:
            i -= 1
            continue
        h, j = found
        if j == len(levels):
            levels.append(_Level(_first_moved(h), [], n))
            checked.append(set())
        for l in range(i + 1, j + 1):
            levels[l].gens.append(h)
            levels[l].extend()
        i = j

    for lev in levels:
        lev.rebuild()
    return levels


def _auto_names(k: int, prefix: str = "s") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(k)]


class PermutationGroup:
    """A permutation group given by named generators, with its BSGS.

    Instances are immutable once constructed; build them with
    :func:`build_group` or through the subgroup constructors below.
    """

    def __init__(self, generators: Sequence[NamedGenerator], degree: int, *,
                 base_prefix: Sequence[int] = (), known_order: int | None = None,
                 _levels: list[_Level] | None = None):
        if degree < 1:
            raise GroupError("degree must be positive")
        gens = list(generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise GroupError(f"duplicate generator names in {names}")
        for g in gens:
            if g.perm.degree != degree:
                raise GroupError(
                    f"generator {g.name} has degree {g.perm.degree}, expected {degree}")
        self._gens = tuple(gens)
        self._degree = degree
        self._name_index = {g.name: i for i, g in enumerate(gens)}
        raw = [g.perm._img for g in gens]
        if _levels is None:
            prefix = [p - 1 for p in base_prefix]
            _levels = _schreier_sims(raw, degree, prefix, known_order)
        self._levels = _levels
        self._order = _chain_order(_levels)
        self._word_table = None

    # -- basic data -----------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[NamedGenerator, ...]:
        return self._gens

    @property
    def generator_names(self) -> list[str]:
        return [g.name for g in self._gens]

    def generator(self, name: str) -> Permutation:
        try:
            return self._gens[self._name_index[name]].perm
        except KeyError:
            raise WordError(f"unknown generator name {name!r}") from None

    @property
    def base(self) -> list[int]:
        return [lev.base + 1 for lev in self._levels]

    @property
    def strong_generators(self) -> list[Permutation]:
        if not self._levels:
            return []
        return [Permutation._raw(g) for g in self._levels[0].gens]

    def basic_orbits(self) -> list[list[int]]:
        return [[p + 1 for p in lev.orbit] for lev in self._levels]

    def schreier_tree(self, level: int) -> dict[int, tuple[int, int] | None]:
        """Level ``level`` (0-based) tree: point -> (parent point, strong generator index)."""
        tree = self._levels[level].tree
        return {p + 1: (None if e is None else (e[0] + 1, e[1])) for p, e in tree.items()}

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def is_trivial(self) -> bool:
        return self._order == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self._degree)

    def __repr__(self) -> str:
        return (f"<PermutationGroup degree={self._degree} order={self._order} "
                f"generators={len(self._gens)}>")

    # -- membership and factorization ------------------------------------

    def _check_degree(self, p: Permutation) -> None:
        if p.degree != self._degree:
            raise GroupError(f"permutation of degree {p.degree} tested against a "
                             f"group of degree {self._degree}")

    def _contains_raw(self, g: tuple) -> bool:
        h, j = _strip(self._levels, g)
        return j == len(self._levels) and h == tuple(range(self._degree))

    def contains(self, p: Permutation) -> bool:
        self._check_degree(p)
        return self._contains_raw(p._img)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermutationGroup") -> bool:
        if other.degree != self._degree:
            return False
        return all(other._contains_raw(g.perm._img) for g in self._gens)

    def is_normal_in(self, other: "PermutationGroup") -> bool:
        """True when self is a normal subgroup of ``other``."""
        if not self.is_subgroup_of(other):
            return False
        for s in other._gens:
            si = _inv(s.perm._img)
            for h in self._gens:
                if not self._contains_raw(_mul(_mul(si, h.perm._img), s.perm._img)):
                    return False
        return True

    def _words(self) -> "_WordTable":
        if self._word_table is None:
            self._word_table = _WordTable(self)
        return self._word_table

    def factorize(self, p: Permutation) -> Word:
        self._check_degree(p)
        img = p._img
        if img == tuple(range(self._degree)):
            return Word()
        for g in self._gens:
            if g.perm._img == img:
                return Word(((g.name, 1),))
        for g in self._gens:
            if _inv(g.perm._img) == img:
                return Word(((g.name, -1),))
        ints = self._words().factor(img)
        if ints is None:
            raise NotInGroupError(f"{p} is not in the group")
        return Word.from_names(self.generator_names, ints)

    def evaluate_word(self, w: Word | str) -> Permutation:
        if isinstance(w, str):
            w = Word.parse(w)
        return Permutation._raw(self._eval_ints(w.to_ints(self._name_index)))

    def _eval_ints(self, ints: Iterable[int]) -> tuple:
        out = tuple(range(self._degree))
        gens = [g.perm._img for g in self._gens]
        invs: dict[int, tuple] = {}
        for k in ints:
            if k > 0:
                out = _mul(out, gens[k - 1])
            else:
                gi = invs.get(k)
                if gi is None:
                    gi = invs[k] = _inv(gens[-k - 1])
                out = _mul(out, gi)
        return out

    # -- elements -----------------------------------------------------------

    def random_element(self, seed: int) -> Permutation:
        """Uniform element drawn through the stabilizer chain with ``random.Random(seed)``."""
        rng = random.Random(seed)
        out = tuple(range(self._degree))
        for lev in reversed(self._levels):
            p = rng.choice(sorted(lev.orbit))
            out = _mul(out, lev.trans(p)[0])
        return Permutation._raw(out)

    def iter_elements(self) -> Iterator[Permutation]:
        """Every element exactly once, as products of transversal elements."""
        def rec(i: int, acc: tuple):
            if i < 0:
                yield Permutation._raw(acc)
                return
            lev = self._levels[i]
            for p in lev.orbit:
                yield from rec(i - 1, _mul(acc, lev.trans(p)[0]))
        yield from rec(len(self._levels) - 1, tuple(range(self._degree)))

    # -- orbits, blocks, subgroups ---------------------------------------------

    def orbit(self, x: int) -> list[int]:
        if not 1 <= x <= self._degree:
            raise GroupError(f"point {x} outside 1..{self._degree}")
        seen = {x - 1}
        out = [x - 1]
        gens = [g.perm._img for g in self._gens]
        for p in out:
            for g in gens:
                q = g[p]
                if q not in seen:
                    seen.add(q)
                    out.append(q)
        return [p + 1 for p in out]

    def orbits(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for x in range(1, self._degree + 1):
            if x not in seen:
                orb = self.orbit(x)
                seen.update(orb)
                out.append(sorted(orb))
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self._degree

    def is_abelian(self) -> bool:
        gens = [g.perm._img for g in self._gens]
        return all(_mul(a, b) == _mul(b, a) for i, a in enumerate(gens) for b in gens[i + 1:])

    def subgroup(self, perms: Sequence[Permutation], names: Sequence[str] | None = None,
                 known_order: int | None = None) -> "PermutationGroup":
        """The subgroup generated by ``perms``; raises if any lies outside self."""
        for p in perms:
            if not self.contains(p):
                raise NotInGroupError(f"{p} is not in the group")
        names = list(names) if names is not None else _auto_names(len(perms))
        gens = [NamedGenerator(n, p) for n, p in zip(names, perms)]
        return PermutationGroup(gens, self._degree, known_order=known_order)

    def _tail_group(self, levels: list[_Level], start: int, n: int) -> "PermutationGroup":
        tail = [lev.restricted(n) if lev._n != n else lev for lev in levels[start:]]
        seen = set()
        gens = []
        if tail:
            for g in tail[0].gens:
                if g not in seen:
                    seen.add(g)
                    gens.append(g)
        named = [NamedGenerator(nm, Permutation._raw(g))
                 for nm, g in zip(_auto_names(len(gens)), gens)]
        return PermutationGroup(named, n, _levels=tail)

    def pointwise_stabilizer(self, pts: Sequence[int]) -> "PermutationGroup":
        pts = list(pts)
        if not pts:
            return self
        for x in pts:
            if not 1 <= x <= self._degree:
                raise GroupError(f"point {x} outside 1..{self._degree}")
        raw = [g.perm._img for g in self._gens]
        levels = _schreier_sims(raw, self._degree, [x - 1 for x in pts], self._order)
        return self._tail_group(levels, len(pts), self._degree)

    def minimal_blocks(self, seed: tuple[int, int]) -> "BlockSystem":
        return minimal_blocks(self, seed)

    def induced_action(self, blocks) -> "InducedAction":
        return InducedAction(self, blocks)

    # -- coset helpers -----------------------------------------------------------

    def _coset_key(self, x: tuple) -> tuple:
        """The lexicographically least element of the right coset ``self * x``.

        Greedy over the chain: at each level pick the orbit point whose image
        under the running element is smallest.  Two elements share a key
        exactly when they lie in the same right coset.
        """
        y = x
        for lev in self._levels:
            o = min(lev.orbit, key=y.__getitem__)
            if o != lev.base:
                y = _mul(lev.trans(o)[0], y)
        return y


class _WordTable:
    """Per-level words for transversal entries, kept short by Minkwitz sifting."""

    def __init__(self, group: PermutationGroup, max_len: int = 400,
                 improve_rounds: int = 2):
        self.levels = group._levels
        self.n = group.degree
        self.max_len = max_len
        gens = [g.perm._img for g in group._gens]
        self.letters = []
        for i, g in enumerate(gens):
            self.letters.append((i + 1, g))
            if _inv(g) != g:
                self.letters.append((-(i + 1), _inv(g)))
            else:
                self.letters.append((-(i + 1), g))
        ident = _ident(self.n)
        self.table: list[dict[int, tuple[tuple, tuple]]] = [
            {lev.base: (ident, ())} for lev in self.levels]
        self.missing = sum(len(lev.orbit) - 1 for lev in self.levels)
        if self.missing:
            self._fill(improve_rounds)

    def _sift(self, t: tuple, w: tuple) -> None:
        for i, lev in enumerate(self.levels):
            p = t[lev.base]
            entry = self.table[i].get(p)
            if entry is None:
                self.table[i][p] = (t, w)
                self.missing -= 1
                return
            if len(w) < len(entry[1]):
                self.table[i][p] = (t, w)
                t, w, entry = entry[0], entry[1], (t, w)
            if p != lev.base:
                t = _mul(t, _inv(entry[0]))
                w = free_reduce(w + tuple(-k for k in reversed(entry[1])))
            if not w or len(w) > self.max_len:
                return

    def _step(self, t: tuple, w: tuple) -> None:
        self._sift(t, w)
        self._sift(_inv(t), tuple(-k for k in reversed(w)))

    def _fill(self, improve_rounds: int) -> None:
        rng = random.Random(_WORD_TABLE_SEED)
        walk = max(12, 3 * len(self.levels))
        ident = _ident(self.n)
        stall = 0
        while self.missing:
            before = self.missing
            t, w = ident, ()
            for _ in range(walk):
                k, g = rng.choice(self.letters)
                t = _mul(t, g)
                w = free_reduce(w + (k,))
                self._step(t, w)
            stall = stall + 1 if self.missing == before else 0
            if stall > 10000:
                raise RuntimeError("word table did not fill")
        for _ in range(improve_rounds):
            self._improve()

    def _improve(self) -> None:
        for i in range(len(self.levels)):
            entries = list(self.table[i].values())
            for t1, w1 in entries:
                if not w1:
                    continue
                for t2, w2 in entries:
                    if not w2:
                        continue
                    w = free_reduce(w1 + w2)
                    if w:
                        self._step(_mul(t1, t2), w)

    def factor(self, g: tuple) -> tuple[int, ...] | None:
        parts = []
        for i, lev in enumerate(self.levels):
            p = g[lev.base]
            entry = self.table[i].get(p)
            if entry is None:
                return None
            if p != lev.base:
                g = _mul(g, _inv(entry[0]))
                parts.append(entry[1])
        if g != _ident(self.n):
            return None
        out: tuple = ()
        for w in reversed(parts):
            out = free_reduce(out + w)
        return out


# -- block systems and induced actions --------------------------------------------


@dataclass(frozen=True)
class BlockSystem:
    """A partition of one orbit into blocks permuted by the group.

    Blocks are sorted tuples ordered by their smallest point; ids are
    1-based positions in :attr:`blocks`.
    """

    blocks: tuple[tuple[int, ...], ...]
    block_index: dict[int, int] = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)
        index = {}
        for bid, b in enumerate(blocks, 1):
            for x in b:
                if x in index:
                    raise GroupError(f"point {x} appears in two blocks")
                index[x] = bid
        object.__setattr__(self, "block_index", index)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return len(self.blocks[0]) if self.blocks else 0

    def block_of(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.block_index[x] - 1]


def minimal_blocks(G: PermutationGroup, seed: tuple[int, int]) -> BlockSystem:
    """Finest G-invariant partition of the seed's orbit with both seed points in one block."""
    a, b = seed
    orb = G.orbit(a)
    if b not in orb:
        raise GroupError(f"points {a} and {b} lie in different orbits")
    parent = {x - 1: x - 1 for x in orb}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    gens = [g.perm._img for g in G.generators]
    queue = []
    ra, rb = find(a - 1), find(b - 1)
    if ra != rb:
        parent[max(ra, rb)] = min(ra, rb)
        queue.append((a - 1, b - 1))
    while queue:
        x, y = queue.pop()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[max(u, v)] = min(u, v)
                queue.append((u, v))
    classes: dict[int, list[int]] = {}
    for x in parent:
        classes.setdefault(find(x), []).append(x + 1)
    return BlockSystem(tuple(tuple(c) for c in classes.values()))


def set_orbit(G: PermutationGroup, points: Iterable[int]) -> list[frozenset[int]]:
    """Orbit of a point set under G, in BFS discovery order."""
    start = frozenset(points)
    for x in start:
        if not 1 <= x <= G.degree:
            raise GroupError(f"point {x} outside 1..{G.degree}")
    out = [start]
    seen = {start}
    gens = [g.perm for g in G.generators]
    for s in out:
        for g in gens:
            t = frozenset(g.image(x) for x in s)
            if t not in seen:
                seen.add(t)
                out.append(t)
    return out


class InducedAction:
    """G acting on an invariant family of point sets.

    The kernel and the set-wise stabilizers are computed exactly by adjoining
    one extra point per set, so that G acts faithfully on points plus sets,
    and stabilizing the extra points with a prescribed base.
    """

    def __init__(self, G: PermutationGroup, blocks):
        if isinstance(blocks, BlockSystem):
            sets = [frozenset(b) for b in blocks.blocks]
        else:
            sets = [frozenset(b) for b in blocks]
        if len(set(sets)) != len(sets):
            raise GroupError("repeated set in block family")
        self.group = G
        self.sets = sets
        index = {s: i for i, s in enumerate(sets)}
        n, m = G.degree, len(sets)
        ext = []
        images = []
        for g in G.generators:
            img = []
            for s in sets:
                t = frozenset(g.perm.image(x) for x in s)
                if t not in index:
                    raise GroupError(f"sets are not invariant under generator {g.name}")
                img.append(index[t])
            images.append(tuple(img))
            ext.append(g.perm._img + tuple(n + k for k in img))
        self._raw_images = images
        self._ext = ext
        self._n, self._m = n, m

    @property
    def images(self) -> list[Permutation]:
        """Each generator as a permutation of set ids ``1..len(sets)``."""
        return [Permutation._raw(img) for img in self._raw_images]

    def set_id(self, points: Iterable[int]) -> int:
        return self.sets.index(frozenset(points)) + 1

    @cached_property
    def image_group(self) -> PermutationGroup:
        gens = [NamedGenerator(g.name, p) for g, p in zip(self.group.generators, self.images)]
        return PermutationGroup(gens, self._m)

    def _extended_tail(self, prefix: list[int]) -> PermutationGroup:
        levels = _schreier_sims(self._ext, self._n + self._m, [self._n + k for k in prefix],
                                self.group.order())
        return self.group._tail_group(levels, len(prefix), self._n)

    @cached_property
    def kernel(self) -> PermutationGroup:
        """Elements fixing every set of the family."""
        return self._extended_tail(list(range(self._m)))

    def preimage_stabilizer(self, block_id: int) -> PermutationGroup:
        """Set-wise stabilizer in G of set ``block_id`` (1-based)."""
        if not 1 <= block_id <= self._m:
            raise GroupError(f"block id {block_id} outside 1..{self._m}")
        return self._extended_tail([block_id - 1])

    def image_of(self, p: Permutation) -> Permutation:
        img = []
        index = {s: i for i, s in enumerate(self.sets)}
        for s in self.sets:
            img.append(index[frozenset(p.image(x) for x in s)])
        return Permutation._raw(tuple(img))


# -- functional API -------------------------------------------------------------------


def build_group(gens: Sequence[NamedGenerator], degree: int) -> PermutationGroup:
    if not gens:
        raise GroupError("at least one generator is required")
    return PermutationGroup(gens, degree)


def order(G: PermutationGroup) -> int:
    return G.order()


def contains(G: PermutationGroup, p: Permutation) -> bool:
    return G.contains(p)


def factorize(G: PermutationGroup, p: Permutation) -> Word:
    return G.factorize(p)


def evaluate_word(w: Word | str, G: PermutationGroup) -> Permutation:
    return G.evaluate_word(w)


def pointwise_stabilizer(G: PermutationGroup, pts: Sequence[int]) -> PermutationGroup:
    return G.pointwise_stabilizer(pts)


def induced_action(G: PermutationGroup, blocks) -> InducedAction:
    return InducedAction(G, blocks)


def random_element(G: PermutationGroup, seed: int) -> Permutation:
    return G.random_element(seed)
