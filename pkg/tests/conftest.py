import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wreathcoord import build_decomposition  # noqa: E402
from wreathcoord.puzzles import (builtin_pocket_cube, builtin_rubiks_cube,  # noqa: E402
                                 cornerwise_chain, corners_edges_chain, two_level_chain)

# A Pocket Cube scramble, its two level killers under the two-level chain,
# the state after the first killer, and words evaluating to the killers.
SCRAMBLE = "(1,21,17,22,6,3,20,8)(2,16,9,10,15,19,18,12)(4,13,23,24,5,7,14,11)"
KILLER_1 = "(1,24,15,3,4,11,2,12)(5,19,20,13,9,16,17,21)(6,22,14,7,18,8,23,10)"
KILLER_2 = "(1,18,5)(2,14,17)(3,10,13)(4,6,9)(8,19,24)(15,23,20)"
HALFSOLVED = "(1,5,18)(2,17,14)(3,13,10)(4,9,6)(8,24,19)(15,20,23)"
WORD_1 = ("U*B^2*R^-1*F*L*D*L^-1*F^-2*U^2*F*L*F*L^-1*U^-1*F^-1"
          "*U*F*U^-1*L*F^-1*D*L^-1*F^-1*U*R^-1*U")
WORD_2 = ("F^-1*U*F*U^-1*L*F^-1*D*L^-1*F^-1*U*R^-1*U*F^-1*L^-1*U*L"
          "*U*F*U^-1*F*L*F*U*L^-1*U^-1*L^-1*U^-1*R^-1*F^-1*L*D*L^-1*B^-1*L^-1")


@pytest.fixture(scope="session")
def pocket():
    return builtin_pocket_cube()


@pytest.fixture(scope="session")
def rubik():
    return builtin_rubiks_cube()


@pytest.fixture(scope="session")
def two_level(pocket):
    return build_decomposition(two_level_chain(pocket))


@pytest.fixture(scope="session")
def cornerwise(pocket):
    return build_decomposition(cornerwise_chain(pocket))


@pytest.fixture(scope="session")
def pocket_decomps(two_level, cornerwise):
    return {"two-level": two_level, "cornerwise": cornerwise}


@pytest.fixture(scope="session")
def rubik_decomp(rubik):
    return build_decomposition(corners_edges_chain(rubik))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
