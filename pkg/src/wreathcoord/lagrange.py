"""Hierarchical coordinates on a group from a descending subgroup chain.

For ``G = G_1 >= G_2 >= ... >= G_{n+1}`` every element factors uniquely as
``h * x_n * ... * x_1`` with ``h`` in ``G_{n+1}`` and ``x_i`` the fixed
representative of the coset ``G_{i+1} x_i`` inside ``G_i``.  The tuple of
coset indices is the element's coordinate vector; with a trivial bottom
group it determines the element.

Moves act level by level.  For a state ``(x_1, ..., x_n)`` and element
``g`` the level actions are ``g_1 = g`` and
``g_{i+1} = x_i g_i (rep(x_i g_i))^-1``, and level ``i`` moves to
``rep(x_i g_i)``.  ``g_i`` depends only on ``g`` and the coordinates above
level ``i``, which is the wreath-product dependency evaluated along the state.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cosets import CosetActionImage, RightCosetTable
from .group import GroupError, NotInGroupError, PermutationGroup
from .perm import Permutation, _ident, _inv, _mul
from .words import Word

__all__ = [
    "ChainError",
    "SubgroupChain",
    "Level",
    "Decomposition",
    "Coordinates",
    "LevelActions",
    "validate_chain",
    "point_stabilizer_chain",
    "build_decomposition",
    "encode",
    "decode",
    "component_actions",
    "act",
    "level_killers",
    "level_builders",
    "navigate",
    "solve_word",
    "parse_coordinates",
]


class ChainError(GroupError):
    pass


@dataclass(frozen=True)
class SubgroupChain:
    groups: tuple[PermutationGroup, ...]

    def __len__(self) -> int:
        return len(self.groups)

    @property
    def top(self) -> PermutationGroup:
        return self.groups[0]

    @property
    def bottom(self) -> PermutationGroup:
        return self.groups[-1]

    def orders(self) -> list[int]:
        return [g.order() for g in self.groups]


def validate_chain(groups: Sequence[PermutationGroup] | SubgroupChain) -> SubgroupChain:
    """Check each group contains the next; drop repeated groups with a warning."""
    if isinstance(groups, SubgroupChain):
        groups = groups.groups
    groups = list(groups)
    if not groups:
        raise ChainError("empty subgroup chain")
    degree = groups[0].degree
    kept = [groups[0]]
    for i, h in enumerate(groups[1:], 2):
        if h.degree != degree:
            raise ChainError(f"group {i} has degree {h.degree}, expected {degree}")
        g = kept[-1]
        if not h.is_subgroup_of(g):
            raise ChainError(f"group {i} is not contained in group {i - 1}")
        if h.order() == g.order():
            warnings.warn(f"group {i} equals group {i - 1}; dropping the index-1 level",
                          stacklevel=2)
            continue
        kept.append(h)
    return SubgroupChain(tuple(kept))


def point_stabilizer_chain(G: PermutationGroup, points: Sequence[int] | None = None) -> SubgroupChain:
    """``G`` followed by the pointwise stabilizers of growing prefixes of ``points`` (default: the base)."""
    points = G.base if points is None else list(points)
    groups = [G] + [G.pointwise_stabilizer(points[:i]) for i in range(1, len(points) + 1)]
    if not groups[-1].is_trivial():
        groups.append(PermutationGroup((), G.degree))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return validate_chain(groups)


class Level:
    """One step ``G_i >= G_{i+1}``: its transversal and coset action."""

    def __init__(self, group: PermutationGroup, sub: PermutationGroup, cap: int | None = None):
        self.table = RightCosetTable(group, sub, cap)
        self.action = CosetActionImage(self.table)

    @property
    def group(self) -> PermutationGroup:
        return self.table.parent

    @property
    def sub(self) -> PermutationGroup:
        return self.table.sub

    @property
    def index_count(self) -> int:
        return self.table.index_count

    def component_order(self) -> int:
        return self.action.order()


@dataclass(frozen=True)
class Coordinates:
    """Per-level coset indices (1-based) and the matching representatives."""

    indices: tuple[int, ...]
    reps: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.indices)

    def __str__(self) -> str:
        return "( " + ", ".join(map(str, self.indices)) + " )"


def parse_coordinates(text: str) -> tuple[int, ...]:
    """Accept ``"3,1,2"`` or the printed ``"( 3, 1, 2 )"`` form."""
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    body = body.strip()
    if not body:
        return ()
    try:
        return tuple(int(p) for p in body.split(","))
    except ValueError:
        raise ChainError(f"cannot parse coordinates {text!r}") from None


@dataclass(frozen=True)
class LevelActions:
    """The level elements ``(g_1, ..., g_n)`` of one move on one state."""

    actions: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.actions)

    def __getitem__(self, i: int) -> Permutation:
        return self.actions[i]


class Decomposition:
    def __init__(self, chain: SubgroupChain, cap: int | None = None):
        chain = validate_chain(chain)
        self.chain = chain
        gs = chain.groups
        self.levels = [Level(gs[i], gs[i + 1], cap) for i in range(len(gs) - 1)]
        self.degree = gs[0].degree

    @property
    def group(self) -> PermutationGroup:
        return self.chain.top

    def __len__(self) -> int:
        return len(self.levels)

    def index_counts(self) -> tuple[int, ...]:
        return tuple(lev.index_count for lev in self.levels)

    def tuple_count(self) -> int:
        out = 1
        for k in self.index_counts():
            out *= k
        return out

    def component_orders(self) -> tuple[int, ...]:
        return tuple(lev.component_order() for lev in self.levels)

    # -- coordinates ------------------------------------------------------------

    def coordinates(self, indices: Iterable[int]) -> Coordinates:
        indices = tuple(int(i) for i in indices)
        if len(indices) != len(self.levels):
            raise ChainError(f"expected {len(self.levels)} coordinates, got {len(indices)}")
        reps = []
        for lev, i in zip(self.levels, indices):
            if not 1 <= i <= lev.index_count:
                raise ChainError(f"coordinate {i} outside 1..{lev.index_count}")
            reps.append(Permutation._raw(lev.table._reps[i - 1]))
        return Coordinates(indices, tuple(reps))

    def base_state(self) -> Coordinates:
        return self.coordinates((1,) * len(self.levels))

    def _coords(self, c) -> Coordinates:
        if isinstance(c, Coordinates):
            if len(c) != len(self.levels):
                raise ChainError(f"expected {len(self.levels)} coordinates, got {len(c)}")
            return c
        return self.coordinates(c)

    def _check_member(self, g: Permutation) -> None:
        if g.degree != self.degree or not self.group.contains(g):
            raise NotInGroupError(f"{g} is not in the top group")

    def encode(self, g: Permutation) -> Coordinates:
        self._check_member(g)
        return self._encode_raw(g._img)

    def _encode_raw(self, g: tuple) -> Coordinates:
        indices, reps = [], []
        for lev in self.levels:
            idx = lev.table._index_raw(g)
            x = lev.table._reps[idx]
            g = _mul(g, _inv(x))
            indices.append(idx + 1)
            reps.append(Permutation._raw(x))
        return Coordinates(tuple(indices), tuple(reps))

    def decode(self, c) -> Permutation:
        """``x_n * ... * x_1``: with a trivial bottom group, the encoded element."""
        c = self._coords(c)
        out = _ident(self.degree)
        for x in reversed(c.reps):
            out = _mul(out, x._img)
        return Permutation._raw(out)

    # -- dynamics -----------------------------------------------------------------

    def component_actions(self, c, g: Permutation) -> tuple[LevelActions, Coordinates]:
        c = self._coords(c)
        self._check_member(g)
        gi = g._img
        actions, indices, reps = [], [], []
        for lev, x in zip(self.levels, c.reps):
            actions.append(Permutation._raw(gi))
            y = _mul(x._img, gi)
            idx = lev.table._index_raw(y)
            ybar = lev.table._reps[idx]
            gi = _mul(y, _inv(ybar))
            indices.append(idx + 1)
            reps.append(Permutation._raw(ybar))
        return LevelActions(tuple(actions)), Coordinates(tuple(indices), tuple(reps))

    def act(self, c, g: Permutation) -> Coordinates:
        return self.component_actions(c, g)[1]

    def level_index_action(self, level: int, g: Permutation) -> Permutation:
        """How ``g`` (an element of ``G_level``, 1-based) permutes that level's coset indices."""
        return self.levels[level - 1].action.action_of(g)

    def level_killers(self, c) -> list[Permutation]:
        """``x_1^-1, ..., x_n^-1``; applied in order they clear the levels top-down."""
        c = self._coords(c)
        return [x.inverse() for x in c.reps]

    def level_builders(self, c) -> list[Permutation]:
        """``x_n, ..., x_1``; applied in order to the identity they build ``decode(c)``."""
        c = self._coords(c)
        return list(reversed(c.reps))

    def navigate(self, start, target) -> Permutation:
        """An element taking state ``start`` to state ``target``."""
        out = _ident(self.degree)
        for k in self.level_killers(start):
            out = _mul(out, k._img)
        for b in self.level_builders(target):
            out = _mul(out, b._img)
        return Permutation._raw(out)

    def solve_words(self, g: Permutation) -> list[Word]:
        """One word per level killer of ``g``, top level first."""
        self._check_member(g)
        return [self.group.factorize(k) for k in self.level_killers(self._encode_raw(g._img))]

    def solve_word(self, g: Permutation) -> Word:
        out = Word()
        for w in self.solve_words(g):
            out = out + w
        return out

    # -- points (experimental) ----------------------------------------------------------

    def encode_point(self, a: int, x: int) -> Coordinates:
        """Coordinates of point ``x`` seen as the coset ``G_a g`` with ``a . g = x``.

        Experimental: meaningful when the chain bottom is the stabilizer of ``a``.
        """
        g = _element_mapping(self.group, a, x)
        return self._encode_raw(g._img)

    def decode_point(self, a: int, c) -> int:
        return self.decode(c).image(a)


def _element_mapping(G: PermutationGroup, a: int, x: int) -> Permutation:
    gens = [g.perm._img for g in G.generators]
    seen = {a - 1: _ident(G.degree)}
    queue = [a - 1]
    for p in queue:
        if p == x - 1:
            break
        for s in gens:
            q = s[p]
            if q not in seen:
                seen[q] = _mul(seen[p], s)
                queue.append(q)
    if x - 1 not in seen:
        raise GroupError(f"point {x} is not in the orbit of {a}")
    return Permutation._raw(seen[x - 1])


def build_decomposition(chain: SubgroupChain | Sequence[PermutationGroup],
                        cap: int | None = None) -> Decomposition:
    return Decomposition(chain if isinstance(chain, SubgroupChain) else SubgroupChain(tuple(chain)),
                         cap)


def encode(d: Decomposition, g: Permutation) -> Coordinates:
    return d.encode(g)


def decode(d: Decomposition, c) -> Permutation:
    return d.decode(c)


def component_actions(d: Decomposition, c, g: Permutation) -> tuple[LevelActions, Coordinates]:
    return d.component_actions(c, g)


def act(d: Decomposition, c, g: Permutation) -> Coordinates:
    return d.act(c, g)


def level_killers(d: Decomposition, c) -> list[Permutation]:
    return d.level_killers(c)


def level_builders(d: Decomposition, c) -> list[Permutation]:
    return d.level_builders(c)


def navigate(d: Decomposition, start, target) -> Permutation:
    return d.navigate(start, target)


def solve_word(d: Decomposition, g: Permutation) -> Word:
    return d.solve_word(g)
