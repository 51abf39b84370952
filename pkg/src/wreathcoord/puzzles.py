"""Puzzle definitions, the ``.puzzle`` text format, and subgroup-chain recipes.

A puzzle file is line oriented; ``#`` starts a comment::

    puzzle pocket
    degree 24
    move U = (1,2,3,4)(5,17,13,9)(6,18,14,10)
    ...
    chain kernel-of-blocks seed 1,5

Chain directives, applied in order starting from the puzzle group, each
produce the next (smaller) group of the chain:

    fix-points p1,p2,...            pointwise stabilizer of the points
    fix-block-setwise p1,p2,...     set-wise stabilizer of the point set
    fix-block-pointwise p1,p2,...   pointwise stabilizer of the point set
    kernel-of-blocks seed p1,p2     kernel of the action on the finest block
                                    system putting p1 and p2 together
    explicit w1;w2;...              subgroup generated by the words (over moves)

If the last group is not trivial, the trivial group is appended.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Sequence

from .group import (GroupError, InducedAction, NamedGenerator, PermutationGroup,
                    minimal_blocks, set_orbit, BlockSystem)
from .lagrange import SubgroupChain, point_stabilizer_chain, validate_chain
from .perm import Permutation, PermutationError, parse_cycles
from .words import Word, WordError

__all__ = [
    "PuzzleError",
    "PuzzleDefinition",
    "ChainRecipe",
    "Directive",
    "builtin_pocket_cube",
    "builtin_rubiks_cube",
    "cornerwise_chain",
    "two_level_chain",
    "corners_edges_chain",
    "base_chain",
    "blockwise_chain",
    "finest_blocks",
    "load_puzzle",
    "parse_puzzle",
    "load_chain_file",
    "get_puzzle",
    "resolve_chain",
    "BUILTIN_CHAINS",
]


class PuzzleError(ValueError):
    """Bad puzzle text or recipe; ``line`` is the 1-based source line when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line


@dataclass(eq=False)
class PuzzleDefinition:
    """Named moves on ``1..degree``; the solved state is the identity."""

    name: str
    degree: int
    moves: tuple[NamedGenerator, ...]

    @cached_property
    def group(self) -> PermutationGroup:
        return PermutationGroup(self.moves, self.degree)

    def move(self, name: str) -> Permutation:
        for m in self.moves:
            if m.name == name:
                return m.perm
        raise KeyError(name)


# -- chain recipes -------------------------------------------------------------------


@dataclass(frozen=True)
class Directive:
    kind: str
    points: tuple[int, ...] = ()
    words: tuple[Word, ...] = ()
    line: int | None = None

    KINDS = ("fix-points", "fix-block-setwise", "fix-block-pointwise",
             "kernel-of-blocks", "explicit")

    def apply(self, current: PermutationGroup, top: PermutationGroup) -> PermutationGroup:
        kind = self.kind
        if kind in ("fix-points", "fix-block-pointwise"):
            return current.pointwise_stabilizer(sorted(self.points) if kind != "fix-points"
                                                else self.points)
        if kind == "fix-block-setwise":
            family = set_orbit(current, self.points)
            return InducedAction(current, family).preimage_stabilizer(1)
        if kind == "kernel-of-blocks":
            blocks = minimal_blocks(current, self.points)
            return InducedAction(current, blocks).kernel
        if kind == "explicit":
            perms = [top.evaluate_word(w) for w in self.words]
            return current.subgroup(perms)
        raise AssertionError(kind)

    def __str__(self) -> str:
        if self.kind == "explicit":
            return "explicit " + ";".join(str(w) for w in self.words)
        pts = ",".join(map(str, self.points))
        if self.kind == "kernel-of-blocks":
            return f"kernel-of-blocks seed {pts}"
        return f"{self.kind} {pts}"


@dataclass(frozen=True)
class ChainRecipe:
    steps: tuple[Directive, ...]
    source: str | None = None

    def apply(self, G: PermutationGroup) -> SubgroupChain:
        groups = [G]
        for d in self.steps:
            try:
                groups.append(d.apply(groups[-1], G))
            except (GroupError, WordError) as exc:
                raise PuzzleError(f"chain directive '{d}': {exc}", d.line, self.source) from exc
        if not groups[-1].is_trivial():
            groups.append(PermutationGroup((), G.degree))
        try:
            return validate_chain(groups)
        except GroupError as exc:
            raise PuzzleError(str(exc), None, self.source) from exc


def _parse_points(text: str, degree: int, line: int, source) -> tuple[int, ...]:
    pts = []
    for tok in text.split(","):
        tok = tok.strip()
        if not re.fullmatch(r"[1-9][0-9]*", tok):
            raise PuzzleError(f"bad point {tok!r}", line, source)
        p = int(tok)
        if p > degree:
            raise PuzzleError(f"point {p} outside 1..{degree}", line, source)
        pts.append(p)
    if len(set(pts)) != len(pts):
        raise PuzzleError("repeated point", line, source)
    return tuple(pts)


def _parse_directive(body: str, degree: int, line: int, source) -> Directive:
    parts = body.split(None, 1)
    if not parts:
        raise PuzzleError("empty chain directive", line, source)
    kind = parts[0]
    rest = parts[1].strip() if len(parts) > 1 else ""
    if kind not in Directive.KINDS:
        raise PuzzleError(f"unknown directive {kind!r}", line, source)
    if kind == "explicit":
        try:
            words = tuple(Word.parse(w) for w in rest.split(";") if w.strip())
        except WordError as exc:
            raise PuzzleError(str(exc), line, source) from exc
        if not words:
            raise PuzzleError("explicit needs at least one word", line, source)
        return Directive(kind, words=words, line=line)
    if kind == "kernel-of-blocks":
        m = re.fullmatch(r"seed\s+(.+)", rest)
        if m is None:
            raise PuzzleError("expected 'kernel-of-blocks seed p1,p2'", line, source)
        pts = _parse_points(m.group(1), degree, line, source)
        if len(pts) != 2:
            raise PuzzleError("a block seed is exactly two points", line, source)
        return Directive(kind, points=pts, line=line)
    if not rest:
        raise PuzzleError(f"{kind} needs a point list", line, source)
    return Directive(kind, points=_parse_points(rest, degree, line, source), line=line)


def parse_puzzle(text: str, source: str | None = None) -> tuple[PuzzleDefinition, ChainRecipe | None]:
    name = None
    degree = None
    moves: list[tuple[str, str, int]] = []
    chain_lines: list[tuple[str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "puzzle":
            if not rest or len(rest.split()) != 1:
                raise PuzzleError("expected 'puzzle <name>'", lineno, source)
            name = rest
        elif key == "degree":
            if not re.fullmatch(r"[1-9][0-9]*", rest):
                raise PuzzleError("expected 'degree <n>'", lineno, source)
            degree = int(rest)
        elif key == "move":
            m = re.fullmatch(r"(\S+)\s*=\s*(.+)", rest)
            if m is None:
                raise PuzzleError("expected 'move <NAME> = <cycles>'", lineno, source)
            moves.append((m.group(1), m.group(2), lineno))
        elif key == "chain":
            chain_lines.append((rest, lineno))
        else:
            raise PuzzleError(f"unknown keyword {key!r}", lineno, source)
    if name is None:
        raise PuzzleError("missing 'puzzle <name>' line", None, source)
    if degree is None:
        raise PuzzleError("missing 'degree <n>' line", None, source)
    if not moves:
        raise PuzzleError("no moves defined", None, source)
    gens = []
    seen = set()
    for mname, cyc, lineno in moves:
        if mname in seen:
            raise PuzzleError(f"move {mname!r} defined twice", lineno, source)
        seen.add(mname)
        try:
            gens.append(NamedGenerator(mname, parse_cycles(cyc, degree)))
        except (PermutationError, WordError) as exc:
            raise PuzzleError(str(exc), lineno, source) from exc
    puzzle = PuzzleDefinition(name, degree, tuple(gens))
    recipe = None
    if chain_lines:
        recipe = ChainRecipe(tuple(_parse_directive(b, degree, ln, source) for b, ln in chain_lines),
                             source)
    return puzzle, recipe


def load_puzzle(path: str | Path) -> tuple[PuzzleDefinition, ChainRecipe | None]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PuzzleError(f"cannot read puzzle file: {exc}") from exc
    return parse_puzzle(text, str(path))


def load_chain_file(path: str | Path, puzzle: PuzzleDefinition) -> ChainRecipe:
    """A file of ``chain ...`` lines (or a whole puzzle file) applied to ``puzzle``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PuzzleError(f"cannot read chain file: {exc}") from exc
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key == "chain":
            steps.append(_parse_directive(rest.strip(), puzzle.degree, lineno, str(path)))
        elif key not in ("puzzle", "degree", "move"):
            raise PuzzleError(f"unknown keyword {key!r}", lineno, str(path))
    if not steps:
        raise PuzzleError("no chain directives", None, str(path))
    return ChainRecipe(tuple(steps), str(path))


def _data_text(name: str) -> str:
    return resources.files("wreathcoord").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def builtin_pocket_cube() -> PuzzleDefinition:
    """The 2x2x2 cube on 24 facets with moves U, L, F, R, B, D."""
    return parse_puzzle(_data_text("pocket_cube.puzzle"), "pocket_cube.puzzle")[0]


def builtin_rubiks_cube() -> PuzzleDefinition:
    """The 3x3x3 cube on 48 non-centre facets (layout in ``data/rubik3.puzzle``)."""
    return parse_puzzle(_data_text("rubik3.puzzle"), "rubik3.puzzle")[0]


# -- chain builders ---------------------------------------------------------------------


def finest_blocks(G: PermutationGroup, point: int) -> BlockSystem:
    """The block system on ``point``'s orbit with the smallest nontrivial blocks.

    Tries every seed pair ``(point, q)``; ties go to the smallest ``q``.
    """
    best = None
    for q in G.orbit(point):
        if q == point:
            continue
        bs = minimal_blocks(G, (point, q))
        if best is None or bs.block_size < best.block_size:
            best = bs
    if best is None:
        raise GroupError(f"point {point} is fixed by the group")
    return best


def blockwise_chain(G: PermutationGroup, systems: Sequence[BlockSystem]) -> SubgroupChain:
    """Fix blocks one at a time: first set-wise, then pointwise.

    Blocks are taken system by system, each system in block order.  Steps
    that would not shrink the current group are skipped, and the chain stops
    once the group is trivial.
    """
    groups = [G]
    for bs in systems:
        for block in bs.blocks:
            cur = groups[-1]
            if cur.is_trivial():
                break
            setwise = InducedAction(cur, bs).preimage_stabilizer(bs.block_index[block[0]])
            if setwise.order() < cur.order():
                groups.append(setwise)
            cur = groups[-1]
            pointwise = cur.pointwise_stabilizer(block)
            if pointwise.order() < cur.order():
                groups.append(pointwise)
    if not groups[-1].is_trivial():
        groups.append(PermutationGroup((), G.degree))
    return validate_chain(groups)


def _corner_blocks(p: PuzzleDefinition) -> BlockSystem:
    first_moved = min(x for g in p.moves for x in g.perm.support())
    bs = finest_blocks(p.group, first_moved)
    if bs.block_size != 3:
        raise GroupError(f"expected corner blocks of size 3, found size {bs.block_size}")
    return bs


def cornerwise_chain(p: PuzzleDefinition) -> SubgroupChain:
    """Position then orientation of each corner in turn."""
    chain = blockwise_chain(p.group, [_corner_blocks(p)])
    if not chain.bottom.is_trivial():
        raise GroupError("cornerwise chain does not reach the trivial group")
    return chain


def two_level_chain(p: PuzzleDefinition) -> SubgroupChain:
    """Corner permutations over the orientation kernel, then the kernel itself."""
    G = p.group
    kernel = InducedAction(G, _corner_blocks(p)).kernel
    if p.degree == 24 and G.order() == 88179840 and kernel.order() != 2187:
        raise GroupError(f"orientation kernel has order {kernel.order()}, expected 2187")
    return validate_chain([G, kernel, PermutationGroup((), p.degree)])


def corners_edges_chain(p: PuzzleDefinition) -> SubgroupChain:
    """For the 3x3x3: corner cubies one by one, then edge cubies."""
    G = p.group
    systems = [finest_blocks(G, orb[0]) for orb in G.orbits() if len(orb) > 1]
    systems.sort(key=lambda bs: (-bs.block_size, bs.blocks[0][0]))
    return blockwise_chain(G, systems)


def base_chain(p: PuzzleDefinition) -> SubgroupChain:
    """Point stabilizers along the group's base."""
    return point_stabilizer_chain(p.group)


BUILTIN_CHAINS = {
    "two-level": two_level_chain,
    "cornerwise": cornerwise_chain,
    "corners-edges": corners_edges_chain,
    "base": base_chain,
}

BUILTIN_PUZZLES = {"pocket": builtin_pocket_cube, "rubik3": builtin_rubiks_cube}
_DEFAULT_CHAIN = {"pocket": "two-level", "rubik3": "corners-edges"}


def get_puzzle(name: str) -> tuple[PuzzleDefinition, ChainRecipe | None, str | None]:
    """Resolve an alias or a file path to (puzzle, recipe from the file, default chain name)."""
    if name in BUILTIN_PUZZLES:
        return BUILTIN_PUZZLES[name](), None, _DEFAULT_CHAIN[name]
    puzzle, recipe = load_puzzle(name)
    return puzzle, recipe, None


def resolve_chain(puzzle: PuzzleDefinition, chain: str | None,
                  recipe: ChainRecipe | None = None, default: str | None = None) -> SubgroupChain:
    """Chain by built-in name or recipe file; falls back to the puzzle's own recipe."""
    if chain is None:
        if recipe is not None:
            return recipe.apply(puzzle.group)
        chain = default or "base"
    if chain in BUILTIN_CHAINS:
        return BUILTIN_CHAINS[chain](puzzle)
    return load_chain_file(chain, puzzle).apply(puzzle.group)
