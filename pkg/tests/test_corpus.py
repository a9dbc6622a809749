import random

import pytest

from conftest import gamma_z4_z2, z8_extension
from coprolong.corpus import (
    CHECKS,
    automorphism_group,
    corpus,
    distinct_sections,
    find_splitting,
    module_structures,
    sweep,
)
from coprolong.cohomology import Cochain, GModule
from coprolong.coprolongation import validate_system
from coprolong.errors import ActionDoesNotFactor
from coprolong.extensions import crossed_product
from coprolong.groups import GroupHom, abelian, cyclic, dihedral, structure_tag
from coprolong.zlattice import FiniteAbelianGroup


@pytest.mark.parametrize("factors,order,tag", [
    ((), 1, "1"),
    ((2,), 1, "1"),
    ((3,), 2, "Z2"),
    ((4,), 2, "Z2"),
    ((2, 2), 6, "S3"),
    ((5,), 4, "Z4"),
])
def test_automorphism_groups(factors, order, tag):
    Aut, mats = automorphism_group(FiniteAbelianGroup(factors))
    assert Aut.order == order == len(mats) and structure_tag(Aut) == tag


def test_module_structures_start_trivial():
    mods = module_structures(cyclic(2), FiniteAbelianGroup((3,)))
    assert len(mods) == 2 and mods[0].is_trivial and not mods[1].is_trivial


def test_module_structures_s3_on_klein():
    # homomorphisms S3 -> GL2(F2) = S3: trivial, three of order-2 image, six automorphisms
    assert len(module_structures(dihedral(3), FiniteAbelianGroup((2, 2)))) == 10


def test_corpus_labels_unique_and_systems_valid():
    cases = list(corpus(4, 2))
    labels = [c.label for c in cases]
    assert len(labels) == len(set(labels))
    valid = 0
    for c in cases:
        try:
            validate_system(c.E0, c.gamma)
            valid += 1
        except ActionDoesNotFactor:
            pass
    assert valid > 0


def test_distinct_sections_caps_at_available():
    case = next(c for c in corpus(2, 2) if c.E0.G.order == 2 and c.E0.A.order == 2)
    secs = distinct_sections(case.E0, 5, random.Random(0))
    assert len(secs) == 2 and len({tuple(s(x) for x in case.E0.G) for s in secs}) == 2


def test_find_splitting_klein_projection():
    G0 = abelian((2, 2))
    m0 = GModule(G0, FiniteAbelianGroup((2,)))
    E0, _ = crossed_product(m0, Cochain.zero(m0, 2))
    sys_ = validate_system(E0, GroupHom(G0, cyclic(2), [0, 1, 0, 1]))
    v = find_splitting(sys_)
    assert v is not None and sys_.gamma.compose(v).map == (0, 1)


def test_find_splitting_none_for_z4_onto_z2():
    # gamma: Z4 -> Z2 has no section, whatever E0 is
    sys_ = validate_system(z8_extension(), gamma_z4_z2())
    assert find_splitting(sys_) is None


def test_sweep_order_4():
    report = sweep(4)
    assert report.theorems_pass and report.all_pass and not report.failures
    assert set(report.counts) == set(CHECKS)
    assert report.systems > 500 and not report.skipped
    assert all(sum(report.counts[c]) > 0 for c in CHECKS)


def test_sweep_is_deterministic():
    assert sweep(3, seed=5).to_dict() == sweep(3, seed=5).to_dict()
