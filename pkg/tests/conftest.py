import pytest

from coprolong.cohomology import Cochain, GModule
from coprolong.coprolongation import validate_system
from coprolong.extensions import Extension, crossed_product
from coprolong.groups import GroupHom, abelian, cyclic
from coprolong.zlattice import FiniteAbelianGroup

Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))


def gamma_z4_z2():
    return GroupHom(cyclic(4), cyclic(2), [0, 1, 0, 1])


def split_z4_extension():
    """Z/2 x Z/4 over Z/4 with kernel Z/2 x 0 (index a*4 + x)."""
    B = abelian((2, 4))
    i = GroupHom(cyclic(2), B, [0, 4])
    p = GroupHom(B, cyclic(4), [b % 4 for b in range(8)])
    return Extension.from_maps(i, p)


def z8_extension():
    B = cyclic(8)
    i = GroupHom(cyclic(2), B, [0, 4])
    p = GroupHom(B, cyclic(4), [b % 4 for b in range(8)])
    return Extension.from_maps(i, p)


def semidirect_z3_z4():
    """Z/3 x| Z/4 with the generator of Z/4 acting by inversion."""
    m0 = GModule(cyclic(4), Z3, [[[1]], [[2]], [[1]], [[2]]])
    return crossed_product(m0, Cochain.zero(m0, 2))[0]


@pytest.fixture
def split_system():
    return validate_system(split_z4_extension(), gamma_z4_z2())


@pytest.fixture
def z8_system():
    return validate_system(z8_extension(), gamma_z4_z2())


@pytest.fixture
def semidirect_system():
    return validate_system(semidirect_z3_z4(), gamma_z4_z2())


# one PASS/FAIL line per acceptance criterion, repeated after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
