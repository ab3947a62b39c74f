import pytest

from crepant import fixtures, orbifold, toric


@pytest.fixture(scope="session")
def quintic_group():
    return fixtures.quintic_group()


@pytest.fixture(scope="session")
def ci_group():
    return fixtures.complete_intersection_group()


@pytest.fixture(scope="session")
def tetra_group():
    return fixtures.binary_tetrahedral()


@pytest.fixture(scope="session")
def quintic_swap_sheet():
    return orbifold.quintic_sheet("swap")


@pytest.fixture(scope="session")
def quintic_double_sheet():
    return orbifold.quintic_sheet("swap-two-pairs")


@pytest.fixture(scope="session")
def z5sq():
    lp = toric.build_lattice_pair(3, [((1, 2, 2), 5), ((1, 1, 3), 5)])
    sym = toric.PermSymmetry.from_cycles(3, [(0, 1, 2)])
    return lp, sym
