"""Right-coset transversals and the action of a group on its cosets."""

from __future__ import annotations

import os
from functools import cached_property

from .group import GroupError, NamedGenerator, NotInGroupError, PermutationGroup
from .perm import Permutation, _ident, _inv, _mul

__all__ = [
    "DEFAULT_INDEX_CAP",
    "IndexCapError",
    "RightCosetTable",
    "CosetActionImage",
    "build_transversal",
    "canonical_rep",
    "coset_action_image",
    "index_cap",
]

DEFAULT_INDEX_CAP = 10**6


class IndexCapError(GroupError):
    pass


def index_cap() -> int:
    """Cap on coset counts; ``WREATHCOORD_INDEX_CAP`` overrides the default."""
    raw = os.environ.get("WREATHCOORD_INDEX_CAP")
    if raw is None:
        return DEFAULT_INDEX_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise GroupError(f"WREATHCOORD_INDEX_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise GroupError("WREATHCOORD_INDEX_CAP must be positive")
    return cap


class RightCosetTable:
    """Ordered transversal of ``sub`` in ``parent`` with its coset automaton.

    Cosets are discovered breadth first from ``sub`` itself, multiplying on
    the right by the parent's generators in declaration order; a new coset's
    representative is its discoverer's representative times the generator.
    Indices are 1-based in discovery order, so ``reps[0]`` is the identity
    and has index 1.
    """

    def __init__(self, parent: PermutationGroup, sub: PermutationGroup, cap: int | None = None):
        if sub.degree != parent.degree:
            raise GroupError("subgroup and group have different degrees")
        if not sub.is_subgroup_of(parent):
            raise GroupError("not a subgroup of the parent group")
        count, rem = divmod(parent.order(), sub.order())
        if rem:
            raise GroupError("subgroup order does not divide group order")
        cap = index_cap() if cap is None else cap
        if count > cap:
            raise IndexCapError(f"index {count} exceeds the coset cap {cap}")
        self.parent = parent
        self.sub = sub
        self.index_count = count

        gens = [g.perm._img for g in parent.generators]
        key = sub._coset_key
        reps = [_ident(parent.degree)]
        keys = {key(reps[0]): 0}
        rows: list[list[int]] = []
        i = 0
        while i < len(reps):
            r = reps[i]
            row = []
            for s in gens:
                x = _mul(r, s)
                k = key(x)
                j = keys.get(k)
                if j is None:
                    j = len(reps)
                    keys[k] = j
                    reps.append(x)
                row.append(j)
            rows.append(row)
            i += 1
        if len(reps) != count:
            raise AssertionError(f"found {len(reps)} cosets, expected {count}")
        self._reps = reps
        self._keys = keys
        self._rows = rows
        self._cols = [tuple(row[c] for row in rows) for c in range(len(gens))]
        self._inv_cols: list[tuple] | None = None

    @property
    def reps(self) -> list[Permutation]:
        return [Permutation._raw(r) for r in self._reps]

    def rep(self, index: int) -> Permutation:
        self._check_index(index)
        return Permutation._raw(self._reps[index - 1])

    @property
    def automaton(self) -> list[tuple[int, ...]]:
        """Row ``i - 1`` lists the coset index reached from coset ``i`` by each parent generator."""
        return [tuple(j + 1 for j in row) for row in self._rows]

    def step(self, index: int, generator: str, sign: int = 1) -> int:
        self._check_index(index)
        gi = self.parent.generator_names.index(generator)
        col = self._cols[gi] if sign > 0 else self._inverse_cols()[gi]
        return col[index - 1] + 1

    def _check_index(self, index: int) -> None:
        if not 1 <= index <= self.index_count:
            raise GroupError(f"coset index {index} outside 1..{self.index_count}")

    def _inverse_cols(self) -> list[tuple]:
        if self._inv_cols is None:
            self._inv_cols = [_inv(c) for c in self._cols]
        return self._inv_cols

    def _index_raw(self, g: tuple) -> int:
        return self._keys[self.sub._coset_key(g)]

    def index_of(self, g: Permutation) -> int:
        if not self.parent.contains(g):
            raise NotInGroupError(f"{g} is not in the parent group")
        return self._index_raw(g._img) + 1

    def trace(self, word, start: int = 1) -> int:
        """Follow a word over the parent's generators through the automaton."""
        idx = start - 1
        names = {n: i for i, n in enumerate(self.parent.generator_names)}
        inv = self._inverse_cols()
        for name, sign in word:
            gi = names[name]
            idx = (self._cols[gi] if sign > 0 else inv[gi])[idx]
        return idx + 1

    def canonical_rep(self, g: Permutation, method: str = "key") -> tuple[int, Permutation]:
        """Index and representative of the coset ``sub * g``.

        ``method="key"`` looks the coset up by its least element;
        ``method="trace"`` factorizes ``g`` and runs the word through the
        automaton.  Both give the same answer.
        """
        if method == "key":
            idx = self.index_of(g)
        elif method == "trace":
            idx = self.trace(self.parent.factorize(g))
        else:
            raise ValueError(f"unknown method {method!r}")
        return idx, Permutation._raw(self._reps[idx - 1])

    def __len__(self) -> int:
        return self.index_count

    def __repr__(self) -> str:
        return f"<RightCosetTable index={self.index_count}>"


class CosetActionImage:
    """The parent group acting on the cosets of ``table.sub`` by right translation.

    Its kernel is the core of the subgroup: the largest normal subgroup of
    the parent contained in it.
    """

    def __init__(self, table: RightCosetTable):
        self.table = table
        self._gen_images = [Permutation._raw(c) for c in table._cols]

    @property
    def images(self) -> dict[str, Permutation]:
        return dict(zip(self.table.parent.generator_names, self._gen_images))

    @property
    def degree(self) -> int:
        return self.table.index_count

    @cached_property
    def image_group(self) -> PermutationGroup:
        t = self.table
        gens = [NamedGenerator(n, p) for n, p in zip(t.parent.generator_names, self._gen_images)]
        known = t.index_count if t.sub.is_normal_in(t.parent) else None
        return PermutationGroup(gens, t.index_count, known_order=known)

    def order(self) -> int:
        return self.image_group.order()

    def core_order(self) -> int:
        return self.table.parent.order() // self.order()

    def action_of(self, g: Permutation) -> Permutation:
        """Permutation of coset indices induced by any element of the parent."""
        t = self.table
        if not t.parent.contains(g):
            raise NotInGroupError(f"{g} is not in the parent group")
        x = g._img
        return Permutation._raw(tuple(t._index_raw(_mul(r, x)) for r in t._reps))

    def in_kernel(self, g: Permutation) -> bool:
        return self.action_of(g).is_identity()


def build_transversal(G: PermutationGroup, H: PermutationGroup, cap: int | None = None) -> RightCosetTable:
    return RightCosetTable(G, H, cap)


def canonical_rep(t: RightCosetTable, g: Permutation, method: str = "key") -> tuple[int, Permutation]:
    return t.canonical_rep(g, method)


def coset_action_image(t: RightCosetTable) -> CosetActionImage:
    return CosetActionImage(t)
