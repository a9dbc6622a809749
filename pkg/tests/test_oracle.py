import pytest

from conftest import Z2, Z3
from coprolong.cohomology import Cochain, GModule, is_cocycle
from coprolong.coprolongation import validate_system
from coprolong.errors import GuardExceeded
from coprolong.extensions import factor_set, h2_cached
from coprolong.groups import abelian, cyclic, identity_hom, structure_tag
from coprolong.oracle import (
    EnumGuard,
    brute_force_coprolongations,
    brute_force_h2,
    enumerate_cocycles,
    extension_census,
    find_equivalence,
)
from coprolong.zlattice import FiniteAbelianGroup


def trivial(n, fac):
    return GModule(cyclic(n), FiniteAbelianGroup(fac))


def test_cocycles_trivial_group():
    assert len(enumerate_cocycles(trivial(1, (5,)))) == 1


def test_cocycles_z2_z2():
    fs = enumerate_cocycles(trivial(2, (2,)))
    assert [f.values for f in fs] == [((0,),), ((1,),)]


def test_cocycles_are_cocycles():
    for f in enumerate_cocycles(GModule(abelian((2, 2)), Z2)):
        assert is_cocycle(f)


def test_guard_raises_instead_of_truncating():
    m = trivial(4, (4,))
    with pytest.raises(GuardExceeded) as err:
        enumerate_cocycles(m, EnumGuard(1000))
    assert err.value.witness["required"] == 4**9


def test_h2_z3_z2():
    assert brute_force_h2(trivial(3, (2,)))[0] == 1


def test_h2_z4_z2():
    assert brute_force_h2(trivial(4, (2,)))[0] == 2


def test_h2_klein_z2():
    order, reps = brute_force_h2(GModule(abelian((2, 2)), Z2))
    assert order == 8 and len(reps) == 8


def test_coprolongations_split(split_system):
    found = brute_force_coprolongations(split_system)
    H = h2_cached(split_system.phi)
    assert sorted(H.class_of(f) for f in found) == [(0,), (1,)]


def test_coprolongations_z8(z8_system):
    assert brute_force_coprolongations(z8_system) == []


def test_coprolongations_identity_gamma(z8_system):
    E0 = z8_system.E0
    sys_ = validate_system(E0, identity_hom(E0.G))
    found = brute_force_coprolongations(sys_)
    H = h2_cached(sys_.phi)
    assert [H.class_of(f) for f in found] == [H.class_of(factor_set(E0))]


def test_census_z2_z2():
    census = extension_census(trivial(2, (2,)))
    assert sorted(structure_tag(E.B) for E, _ in census) == ["Z2xZ2", "Z4"]


def test_census_z3_z2():
    census = extension_census(trivial(3, (2,)))
    assert [structure_tag(E.B) for E, _ in census] == ["Z6"]


def test_census_inversion_gives_s3():
    m = GModule(cyclic(2), Z3, [[[1]], [[2]]])
    census = extension_census(m)
    assert [structure_tag(E.B) for E, _ in census] == ["S3"]


def test_census_size_guard():
    with pytest.raises(GuardExceeded):
        extension_census(trivial(6, (3,)))


def test_find_equivalence_rejects_mismatched_groups():
    E1 = extension_census(trivial(2, (2,)))[0][0]
    E2 = extension_census(trivial(2, (4,)))[0][0]
    assert find_equivalence(E1, E2) is None
