"""Hierarchical coset coordinates on permutation groups and puzzles."""

from .cosets import CosetActionImage, RightCosetTable, build_transversal, canonical_rep, coset_action_image
from .group import (BlockSystem, GroupError, InducedAction, NamedGenerator, NotInGroupError,
                    PermutationGroup, build_group, contains, evaluate_word, factorize,
                    induced_action, minimal_blocks, order, pointwise_stabilizer, random_element)
from .lagrange import (Coordinates, Decomposition, LevelActions, SubgroupChain, act,
                       build_decomposition, component_actions, decode, encode, level_builders,
                       level_killers, navigate, solve_word, validate_chain)
from .perm import Permutation, PermutationError, act_point, compose, format_cycles, inverse, parse_cycles
from .puzzles import (ChainRecipe, PuzzleDefinition, builtin_pocket_cube, builtin_rubiks_cube,
                      cornerwise_chain, load_puzzle, two_level_chain)
from .words import Word

__all__ = [
    "act",
    "act_point",
    "BlockSystem",
    "build_decomposition",
    "build_group",
    "build_transversal",
    "builtin_pocket_cube",
    "builtin_rubiks_cube",
    "canonical_rep",
    "ChainRecipe",
    "component_actions",
    "compose",
    "contains",
    "Coordinates",
    "cornerwise_chain",
    "coset_action_image",
    "CosetActionImage",
    "decode",
    "Decomposition",
    "encode",
    "evaluate_word",
    "factorize",
    "format_cycles",
    "GroupError",
    "induced_action",
    "InducedAction",
    "inverse",
    "level_builders",
    "level_killers",
    "LevelActions",
    "load_puzzle",
    "minimal_blocks",
    "NamedGenerator",
    "navigate",
    "NotInGroupError",
    "order",
    "parse_cycles",
    "Permutation",
    "PermutationError",
    "PermutationGroup",
    "pointwise_stabilizer",
    "PuzzleDefinition",
    "random_element",
    "RightCosetTable",
    "solve_word",
    "SubgroupChain",
    "two_level_chain",
    "validate_chain",
    "Word",
]

__version__ = "0.1.0"
