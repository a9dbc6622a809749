import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import Z2, Z3, split_z4_extension, z8_extension
from coprolong.cohomology import Cochain, GModule, coboundary, is_cocycle
from coprolong.corpus import distinct_sections, module_structures
from coprolong.errors import InvalidExtension, NotACocycle, NotAssociative
from coprolong.extensions import (
    CrossedModule,
    Extension,
    are_equivalent,
    canonical_section,
    crossed_product,
    crossed_product_table,
    factor_set,
    h2_cached,
    induced_action,
    is_central,
    shifted_section,
    verify_crossed_module,
)
from coprolong.groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    abelian,
    cyclic,
    dihedral,
    identity_hom,
    inner_automorphism,
    quotient,
    small_groups,
)
from coprolong.oracle import enumerate_cocycles, find_equivalence
from coprolong.zlattice import FiniteAbelianGroup


def extension_from_normal(G, members):
    """0 -> N -> G -> G/N -> 1 for an abelian normal subgroup N."""
    N = Subgroup(G, members)
    Q, proj = quotient(G, N)
    sub = [[N.members.index(G.mul(a, b)) for b in N.members] for a in N.members]
    i = GroupHom(FiniteGroup(sub), G, list(N.members))
    return Extension.from_maps(i, proj)


SMALL_MODULES = [
    m
    for _, G in small_groups(4)
    for fac in [(2,), (3,), (4,), (2, 2)]
    for m in module_structures(G, FiniteAbelianGroup(fac))
]


@st.composite
def module_class_and_t(draw):
    m = draw(st.sampled_from(SMALL_MODULES))
    H = h2_cached(m)
    c = tuple(draw(st.integers(0, d - 1)) for d in H.factors)
    t = Cochain(m, 1, [tuple(draw(st.integers(0, d - 1)) for d in m.A.factors) for _ in range(m.G.order - 1)])
    return m, H.cocycle(c), t


def test_exactness_enforced():
    B = cyclic(4)
    i = GroupHom(cyclic(2), B, [0, 2])
    p = GroupHom(B, cyclic(4), [0, 1, 2, 3])
    with pytest.raises(InvalidExtension):
        Extension.from_maps(i, p)


# --- factor sets -------------------------------------------------------------

def test_split_with_homomorphic_section():
    E = split_z4_extension()
    f = factor_set(E, canonical_section(E))
    assert f.is_zero()


def test_z4_over_z2_factor_set():
    E = extension_from_normal(cyclic(4), [0, 2])
    f = factor_set(E, canonical_section(E))
    assert E.embed(f(1, 1)) == 2


def test_z8_over_z4_carry():
    E = z8_extension()
    f = factor_set(E)
    for x in range(1, 4):
        for y in range(1, 4):
            assert E.embed(f(x, y)) == (4 if x + y >= 4 else 0)


# --- induced action ----------------------------------------------------------

def test_abelian_middle_gives_trivial_action():
    assert induced_action(z8_extension()).is_trivial


def test_s3_inversion():
    E = extension_from_normal(dihedral(3), [0, 1, 2])
    m = induced_action(E)
    assert m.act(1, (1,)) == (2,)


def test_d4_inversion():
    E = extension_from_normal(dihedral(4), [0, 1, 2, 3])
    m = induced_action(E)
    assert m.A.factors == (4,) and m.act(1, (1,)) == (3,)


# --- crossed products --------------------------------------------------------

def test_zero_cocycle_gives_direct_product():
    m = GModule(cyclic(2), Z3)
    E, _ = crossed_product(m, Cochain.zero(m, 2))
    assert E.B.is_abelian and is_central(E)


def test_z2_cocycle_gives_z4():
    m = GModule(cyclic(2), Z2)
    E, s = crossed_product(m, Cochain(m, 2, [(1,)]))
    assert E.B.element_order(s(1)) == 4


def test_inversion_gives_s3():
    m = GModule(cyclic(2), Z3, [[[1]], [[2]]])
    E, s = crossed_product(m, Cochain.zero(m, 2))
    B = E.B
    assert not B.is_abelian
    # (0,1)(1,0)(0,1)^-1 = (-1,0)
    assert B.conj(s(1), E.embed((1,))) == E.embed((2,))


def test_non_cocycle_rejected_and_table_not_associative():
    m = GModule(abelian((2, 2)), Z2)
    f = Cochain.from_dict(m, 2, {(1, 2): (1,)})
    with pytest.raises(NotACocycle):
        crossed_product(m, f)
    with pytest.raises(NotAssociative):
        FiniteGroup(crossed_product_table(m, f))


@pytest.mark.parametrize("m", [m for m in SMALL_MODULES if m.A.order <= 3], ids=repr)
def test_round_trip_all_cocycles(m):
    for f in enumerate_cocycles(m):
        E, s = crossed_product(m, f)
        assert factor_set(E, s) == f


@settings(max_examples=60, deadline=None)
@given(module_class_and_t(), st.data())
def test_single_value_mutation_breaks_cocycle_iff_table(mft, data):
    m, f, _ = mft
    if m.G.order == 1:
        return
    k = data.draw(st.integers(0, len(f.values) - 1))
    delta = tuple(data.draw(st.integers(0, d - 1)) for d in m.A.factors)
    vals = list(f.values)
    vals[k] = m.A.add(vals[k], delta)
    g = Cochain(m, 2, vals)
    try:
        FiniteGroup(crossed_product_table(m, g))
        table_ok = True
    except NotAssociative:
        table_ok = False
    assert table_ok == is_cocycle(g)


@settings(max_examples=60, deadline=None)
@given(module_class_and_t())
def test_section_shift_adds_coboundary(mft):
    m, f, t = mft
    E, s = crossed_product(m, f)
    assert factor_set(E, shifted_section(s, t)) == f + coboundary(t)


def test_sections_give_same_class():
    rng = random.Random(1)
    for m in SMALL_MODULES[::3]:
        H = h2_cached(m)
        for c in H.elements():
            E, _ = crossed_product(m, H.cocycle(c))
            for s in distinct_sections(E, 3, rng):
                assert H.class_of(factor_set(E, s)) == c


# --- equivalence -------------------------------------------------------------

def test_self_equivalence():
    E = z8_extension()
    ok, w = are_equivalent(E, E)
    assert ok and w.map == tuple(range(8))


def test_z4_not_equivalent_to_klein():
    m = GModule(cyclic(2), Z2)
    E1, _ = crossed_product(m, Cochain(m, 2, [(1,)]))
    E2, _ = crossed_product(m, Cochain.zero(m, 2))
    assert are_equivalent(E1, E2) == (False, None)


@settings(max_examples=40, deadline=None)
@given(module_class_and_t())
def test_coboundary_shift_is_equivalent(mft):
    m, f, t = mft
    E1, _ = crossed_product(m, f)
    E2, _ = crossed_product(m, f + coboundary(t))
    ok, w = are_equivalent(E1, E2)
    assert ok and w.compose(E1.i).map == E2.i.map


@pytest.mark.parametrize("m", [m for m in SMALL_MODULES if m.A.order * m.G.order <= 12], ids=repr)
def test_equivalence_matches_isomorphism_search(m):
    H = h2_cached(m)
    exts = [crossed_product(m, H.cocycle(c))[0] for c in H.elements()]
    for a, E1 in enumerate(exts):
        for b, E2 in enumerate(exts):
            ok, _ = are_equivalent(E1, E2)
            assert ok == (a == b) == (find_equivalence(E1, E2) is not None)


def test_equivalence_is_transitive_on_shifts():
    m = GModule(abelian((2, 2)), Z2)
    H = h2_cached(m)
    rng = random.Random(3)
    f = H.cocycle((1, 0, 1))
    ts = [Cochain(m, 1, [(rng.randrange(2),) for _ in range(3)]) for _ in range(3)]
    E = [crossed_product(m, f + coboundary(t))[0] for t in ts]
    assert all(are_equivalent(E[a], E[b])[0] for a in range(3) for b in range(3))


# --- centrality ----------------------------------------------------------------

def test_central_cases():
    m = GModule(cyclic(3), Z2)
    assert is_central(crossed_product(m, Cochain.zero(m, 2))[0])
    assert is_central(extension_from_normal(cyclic(4), [0, 2]))
    assert not is_central(extension_from_normal(dihedral(3), [0, 1, 2]))


# --- crossed modules -----------------------------------------------------------

def test_conjugation_crossed_module():
    G = dihedral(3)
    theta = tuple(inner_automorphism(G, x) for x in G)
    assert verify_crossed_module(CrossedModule(G, G, identity_hom(G), theta)).ok


def test_abelian_into_trivial_group():
    A = cyclic(3)
    T = cyclic(1)
    cm = CrossedModule(A, T, GroupHom(A, T, [0, 0, 0]), (identity_hom(A),))
    assert verify_crossed_module(cm).ok


def test_a3_in_s3_with_trivial_theta_fails_c2():
    S3 = dihedral(3)
    A3 = FiniteGroup([[(a + b) % 3 for b in range(3)] for a in range(3)])
    d = GroupHom(A3, S3, [0, 1, 2])
    cm = CrossedModule(A3, S3, d, tuple(identity_hom(A3) for _ in S3))
    rep = verify_crossed_module(cm)
    assert not rep.ok and rep.axiom == "C2" and rep.instance[0] >= 3
