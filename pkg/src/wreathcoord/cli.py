"""Command line front end.

Puzzles are ``pocket``, ``rubik3`` or a path to a ``.puzzle`` file.  Chains
are ``two-level``, ``cornerwise``, ``corners-edges``, ``base`` or a path to
a file of ``chain`` directives; without ``--chain`` the puzzle file's own
recipe is used, else the puzzle's default.

Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .group import GroupError
from .lagrange import build_decomposition, parse_coordinates
from .perm import PermutationError, parse_cycles
from .puzzles import BUILTIN_CHAINS, BUILTIN_PUZZLES, PuzzleError, get_puzzle, resolve_chain
from .words import Word, WordError

__all__ = ["CommandResult", "run", "main"]


@dataclass
class CommandResult:
    status: int
    stdout: str
    stderr: str


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wreathcoord",
                                description="Hierarchical coordinates on permutation puzzles.")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help, chain=True):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("puzzle", help="pocket, rubik3, or a .puzzle file")
        if chain:
            sp.add_argument("--chain", help="chain name or chain file")
        return sp

    cmd("order", "print the group order", chain=False)
    cmd("decompose", "print index, component order and degree per level")
    sp = cmd("scramble", "print a random group element", chain=False)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--count", type=int, default=1, help="elements for seeds seed..seed+count-1")
    sp = cmd("encode", "print the coordinate tuple of an element")
    sp.add_argument("--element", required=True)
    sp = cmd("decode", "print the element with the given coordinates")
    sp.add_argument("--coords", required=True)
    sp = cmd("solve", "print a word taking the element to the identity")
    sp.add_argument("--element", required=True)
    sp.add_argument("--per-level", action="store_true", help="one word per level killer")
    sp = cmd("verify", "check that element * word is the identity")
    sp.add_argument("--element", required=True)
    sp.add_argument("--word", required=True)
    return p


@lru_cache(maxsize=None)
def _builtin(name: str):
    return get_puzzle(name)


@lru_cache(maxsize=None)
def _builtin_decomposition(name: str, chain: str | None):
    puzzle, recipe, default = _builtin(name)
    return build_decomposition(resolve_chain(puzzle, chain, recipe, default))


def _load(name: str):
    # built-in puzzles are immutable, so their groups and tables are shared across calls
    return _builtin(name) if name in BUILTIN_PUZZLES else get_puzzle(name)


def _decomposition(args, puzzle, recipe, default):
    if args.puzzle in BUILTIN_PUZZLES and (args.chain is None or args.chain in BUILTIN_CHAINS):
        return _builtin_decomposition(args.puzzle, args.chain)
    return build_decomposition(resolve_chain(puzzle, args.chain, recipe, default))


def _execute(args, out) -> None:
    puzzle, recipe, default = _load(args.puzzle)
    G = puzzle.group
    if args.command == "order":
        print(G.order(), file=out)
        return
    if args.command == "scramble":
        if args.count < 1:
            raise GroupError("--count must be positive")
        for s in range(args.seed, args.seed + args.count):
            print(G.random_element(s), file=out)
        return

    def decomposition():
        return _decomposition(args, puzzle, recipe, default)

    if args.command == "decompose":
        print("level\tindex\torder\tdegree", file=out)
        for i, lev in enumerate(decomposition().levels, 1):
            print(f"{i}\t{lev.index_count}\t{lev.component_order()}\t{lev.action.degree}",
                  file=out)
        return
    if args.command == "decode":
        print(decomposition().decode(parse_coordinates(args.coords)), file=out)
        return

    g = parse_cycles(args.element, puzzle.degree)
    if args.command == "encode":
        print(decomposition().encode(g), file=out)
    elif args.command == "solve":
        if args.per_level:
            for w in decomposition().solve_words(g):
                print(w, file=out)
        else:
            print(decomposition().solve_word(g), file=out)
    elif args.command == "verify":
        if not G.contains(g):
            raise GroupError(f"{g} is not in the puzzle group")
        residual = g * G.evaluate_word(Word.parse(args.word))
        if residual.is_identity():
            print("SOLVED", file=out)
        else:
            print(decomposition().encode(residual), file=out)


def run(argv: Sequence[str]) -> CommandResult:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stderr(err):
        try:
            args = _parser().parse_args(list(argv))
        except SystemExit as exc:
            return CommandResult(int(exc.code or 0), out.getvalue(), err.getvalue())
        try:
            _execute(args, out)
        except (GroupError, PuzzleError, PermutationError, WordError) as exc:
            print(f"error: {exc}", file=err)
            return CommandResult(1, "", err.getvalue())
    return CommandResult(0, out.getvalue(), err.getvalue())


def main(argv: Sequence[str] | None = None) -> int:
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.status


if __name__ == "__main__":
    sys.exit(main())
