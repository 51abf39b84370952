"""Permutations of {1..n} stored as image tables.

Points are 1-based at every interface; the image table is kept 0-based
internally.  Products read left to right, ``x * (p * q) == (x * p) * q``,
matching right actions ``x . g``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "PermutationError",
    "parse_cycles",
    "format_cycles",
    "compose",
    "inverse",
    "act_point",
    "identity",
]


class PermutationError(ValueError):
    """Malformed permutation data or mismatched degrees."""


# Raw tuple kernels.  Everything performance-sensitive in the package works
# on these directly and wraps results in Permutation only at the boundary.

def _mul(p: tuple, q: tuple) -> tuple:
    return tuple(map(q.__getitem__, p))


def _inv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def _ident(n: int) -> tuple:
    return tuple(range(n))


class Permutation:
    """An immutable bijection of ``1..degree``.

    >>> p = parse_cycles("(1,3)(2,4,5)", 5)
    >>> p.image(2), p.image(5)
    (4, 2)
    >>> str(p * p.inverse())
    '()'
    """

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int]):
        img = tuple(int(v) - 1 for v in images)
        if sorted(img) != list(range(len(img))):
            raise PermutationError(f"not a bijection on 1..{len(img)}: {list(images)!r}")
        if not img:
            raise PermutationError("degree must be positive")
        self._img = img
        self._hash = None

    @classmethod
    def _raw(cls, img: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._img = img
        p._hash = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        if degree < 1:
            raise PermutationError("degree must be positive")
        return cls._raw(_ident(degree))

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image table: ``images[i - 1] == i . p``."""
        return tuple(v + 1 for v in self._img)

    def image(self, x: int) -> int:
        if not 1 <= x <= len(self._img):
            raise PermutationError(f"point {x} outside 1..{len(self._img)}")
        return self._img[x - 1] + 1

    def is_identity(self) -> bool:
        return self._img == tuple(range(len(self._img)))

    def support(self) -> list[int]:
        return [i + 1 for i, j in enumerate(self._img) if i != j]

    def order(self) -> int:
        from math import lcm

        out = 1
        for c in self.cycles():
            out = lcm(out, len(c))
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point, ordered by it."""
        img = self._img
        seen = [False] * len(img)
        out = []
        for i in range(len(img)):
            if seen[i] or img[i] == i:
                continue
            cyc = [i + 1]
            seen[i] = True
            j = img[i]
            while j != i:
                seen[j] = True
                cyc.append(j + 1)
                j = img[j]
            out.append(tuple(cyc))
        return out

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self._img))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if len(other._img) != len(self._img):
            raise PermutationError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation._raw(_mul(self._img, other._img))

    def __pow__(self, k: int) -> "Permutation":
        base = self._img if k >= 0 else _inv(self._img)
        k = abs(k)
        out = _ident(len(base))
        while k:
            if k & 1:
                out = _mul(out, base)
            base = _mul(base, base)
            k >>= 1
        return Permutation._raw(out)

    def __rxor__(self, x: int) -> int:
        # ``x ^ p`` reads as the point x acted on by p, as in GAP
        return self.image(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._img)
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation.from_cycles({format_cycles(self)!r}, {self.degree})"

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Permutation":
        return parse_cycles(text, degree)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(0|[1-9][0-9]*)|(\S))")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace can remain
            break
        pos = m.end()
        if m.group(5) is not None:
            raise PermutationError(f"unexpected character {m.group(5)!r} at offset {m.start(5)}")
        kind = m.lastindex
        yield kind, m.group(kind), m.start(kind)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse disjoint-cycle notation such as ``"(1,2,3,4)(5,17,13,9)"``.

    ``"()"`` is the identity.  Cycles must be disjoint, have at least two
    points, and stay within ``1..degree``.
    """
    if degree < 1:
        raise PermutationError("degree must be positive")
    toks = list(_tokens(text))
    if not toks:
        raise PermutationError("empty permutation text")
    if [t[0] for t in toks] == [1, 2]:
        return Permutation.identity(degree)

    img = list(range(degree))
    used: set[int] = set()
    i = 0
    while i < len(toks):
        kind, val, off = toks[i]
        if kind != 1:
            raise PermutationError(f"expected '(' at offset {off}")
        i += 1
        cycle = []
        while True:
            if i >= len(toks) or toks[i][0] != 4:
                where = toks[i][2] if i < len(toks) else len(text)
                raise PermutationError(f"expected a point at offset {where}")
            kind, val, off = toks[i]
            pt = int(val)
            if not 1 <= pt <= degree:
                raise PermutationError(f"point {pt} outside 1..{degree}")
            if pt in used:
                raise PermutationError(f"point {pt} repeated")
            used.add(pt)
            cycle.append(pt - 1)
            i += 1
            if i < len(toks) and toks[i][0] == 3:
                i += 1
                continue
            if i < len(toks) and toks[i][0] == 2:
                i += 1
                break
            where = toks[i][2] if i < len(toks) else len(text)
            raise PermutationError(f"expected ',' or ')' at offset {where}")
        if len(cycle) < 2:
            raise PermutationError("a cycle needs at least two points")
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            img[a] = b
    return Permutation._raw(tuple(img))


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` then ``q``."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def act_point(x: int, p: Permutation) -> int:
    return p.image(x)


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def product(perms: Iterable[Permutation], degree: int) -> Permutation:
    out = _ident(degree)
    for p in perms:
        out = _mul(out, p._img)
    return Permutation._raw(out)
