"""Words over named generators.

A :class:`Word` is a free-reduced sequence of ``(name, ±1)`` letters.  Text
output writes inverses with a trailing apostrophe and spells repeats out
(``"U B B R'"``); text input additionally accepts GAP style
``"U*B^2*R^-1"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = ["Word", "WordError", "free_reduce", "check_generator_name"]

_FORBIDDEN = set("(),'^*")


class WordError(ValueError):
    pass


def check_generator_name(name: str) -> str:
    if not name or any(c.isspace() or c in _FORBIDDEN for c in name):
        raise WordError(f"invalid generator name {name!r}")
    return name


def free_reduce(letters: Iterable) -> tuple:
    """Cancel adjacent inverse pairs.

    Works on ``(name, sign)`` pairs and on the signed-int letters used
    internally (``k`` is generator ``k - 1``, ``-k`` its inverse).
    """
    out: list = []
    for a in letters:
        if out and _cancels(out[-1], a):
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def _cancels(a, b) -> bool:
    if isinstance(a, int):
        return a == -b
    return a[0] == b[0] and a[1] == -b[1]


_LETTER = re.compile(r"^([^\s()',^*]+)(?:(')|\^(-?[0-9]+))?$")


@dataclass(frozen=True)
class Word:
    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        letters = tuple((check_generator_name(n), int(s)) for n, s in self.letters)
        for _, s in letters:
            if s not in (1, -1):
                raise WordError(f"letter exponent must be +1 or -1, got {s}")
        object.__setattr__(self, "letters", free_reduce(letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"U B B R'"``, ``"U*B^2*R^-1"``, or the empty string.

        ``<identity>`` (the compressed form of the empty word) is also accepted.
        """
        letters: list[tuple[str, int]] = []
        text = text.strip()
        if text == "<identity>":
            text = ""
        toks = [t for chunk in text.split() for t in chunk.split("*")]
        for tok in toks:
            m = _LETTER.match(tok)
            if m is None:
                raise WordError(f"cannot parse word token {tok!r}")
            name, prime, power = m.groups()
            k = -1 if prime else (int(power) if power is not None else 1)
            sign = 1 if k > 0 else -1
            letters.extend([(name, sign)] * abs(k))
        return cls(tuple(letters))

    @classmethod
    def from_names(cls, names: Sequence[str], ints: Iterable[int]) -> "Word":
        return cls(tuple((names[abs(k) - 1], 1 if k > 0 else -1) for k in ints))

    def to_ints(self, index: dict[str, int]) -> tuple[int, ...]:
        try:
            return tuple((index[n] + 1) * s for n, s in self.letters)
        except KeyError as exc:
            raise WordError(f"unknown generator name {exc.args[0]!r}") from None

    def inverse(self) -> "Word":
        return Word(tuple((n, -s) for n, s in reversed(self.letters)))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def is_reduced(self) -> bool:
        return all(not _cancels(a, b) for a, b in zip(self.letters, self.letters[1:]))

    def __str__(self) -> str:
        return " ".join(n if s > 0 else n + "'" for n, s in self.letters)

    def gap_str(self) -> str:
        """Compressed ``U*B^2*R^-1`` form."""
        if not self.letters:
            return "<identity>"
        parts = []
        i = 0
        lt = self.letters
        while i < len(lt):
            j = i
            while j < len(lt) and lt[j] == lt[i]:
                j += 1
            k = (j - i) * lt[i][1]
            parts.append(lt[i][0] if k == 1 else f"{lt[i][0]}^{k}")
            i = j
        return "*".join(parts)
