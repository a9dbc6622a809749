import itertools

import pytest
from hypothesis import given, settings, strategies as st

from coprolong.errors import (
    IdentityNotPreserved,
    NoIdentityAtZero,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    NotNormal,
)
from coprolong.groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    build_group,
    build_hom,
    center,
    cyclic,
    dihedral,
    find_isomorphism,
    identity_hom,
    inner_automorphism,
    normal_subgroups,
    quotient,
    reindex_identity,
    small_groups,
    structure_tag,
    symmetric,
)

LIBRARY = small_groups(8)


def test_z2_from_table():
    G = build_group([[0, 1], [1, 0]])
    assert G.order == 2 and G.is_abelian and G.inv(1) == 1


def test_row_not_permutation_rejected():
    with pytest.raises(NoInverse, match="row 1 is not a permutation"):
        build_group([[0, 1], [1, 1]])


def test_s3_table_is_nonabelian_group():
    # e, r, r2, s, sr, sr2 with s r = r2 s
    def mul(a, b):
        (fa, ka), (fb, kb) = a, b
        return ((fa + fb) % 2, ((-ka if fb else ka) + kb) % 3)

    elems = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    table = [[elems.index(mul(a, b)) for b in elems] for a in elems]
    G = build_group(table)
    assert not G.is_abelian
    for i, j, k in itertools.product(range(6), repeat=3):
        assert G.mul(G.mul(i, j), k) == G.mul(i, G.mul(j, k))


def test_identity_must_be_index_zero():
    with pytest.raises(NoIdentityAtZero):
        build_group([[1, 0], [0, 1]])


def test_out_of_range_entry():
    with pytest.raises(NotClosed):
        build_group([[0, 1], [1, 2]])


def test_nonassociative_latin_square():
    # a loop of order 5 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAssociative):
        build_group(table)


def test_reindex_moves_identity():
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    new, perm = reindex_identity(table)
    G = build_group(new)
    assert perm[2] == 0 and G.order == 3
    for a in range(3):
        for b in range(3):
            assert G.mul(perm[a], perm[b]) == perm[table[a][b]]


def test_identity_hom_on_z4():
    h = identity_hom(cyclic(4))
    assert h.is_injective and h.is_surjective and h.kernel.members == (0,)


def test_z4_onto_z2():
    h = build_hom(cyclic(4), cyclic(2), [0, 1, 0, 1])
    assert h.is_surjective and h.kernel.members == (0, 2)


def test_z4_to_z2_bad_map_names_pair():
    with pytest.raises(NotHomomorphism) as err:
        build_hom(cyclic(4), cyclic(2), [0, 1, 1, 0])
    assert err.value.witness["pair"] == (1, 1)


def test_identity_not_preserved():
    with pytest.raises(IdentityNotPreserved):
        build_hom(cyclic(2), cyclic(2), [1, 0])


def test_inner_automorphisms():
    Z4 = cyclic(4)
    assert inner_automorphism(Z4, 3).map == tuple(range(4))
    S3 = dihedral(3)
    assert inner_automorphism(S3, 0).map == tuple(range(6))
    mu = inner_automorphism(S3, 3)  # a reflection
    assert mu(1) == 2 and mu(2) == 1


def test_centers():
    assert center(cyclic(5)).members == tuple(range(5))
    assert center(dihedral(3)).members == (0,)
    assert len(center(dihedral(4))) == 2


def test_quotient_map():
    G = dihedral(4)
    Z = center(G)
    Q, proj = quotient(G, Z)
    assert Q.order == 4 and proj.kernel.members == Z.members
    assert structure_tag(Q) == "Z2xZ2"


def test_nonnormal_subgroup_rejected():
    S3 = dihedral(3)
    H = Subgroup(S3, [0, 3])
    assert not H.is_normal
    with pytest.raises(NotNormal):
        H.require_normal("reflection subgroup")


@pytest.mark.parametrize("name,G", LIBRARY, ids=[n for n, _ in LIBRARY])
def test_first_isomorphism_counting(name, G):
    for N in normal_subgroups(G):
        Q, proj = quotient(G, N)
        assert len(proj.kernel) * len(proj.image) == G.order


@pytest.mark.parametrize("name,G", LIBRARY, ids=[n for n, _ in LIBRARY])
def test_inner_automorphism_inverse(name, G):
    for x in G:
        both = inner_automorphism(G, x).compose(inner_automorphism(G, G.inv(x)))
        assert both.map == tuple(range(G.order))


@pytest.mark.parametrize("name,G", LIBRARY, ids=[n for n, _ in LIBRARY])
def test_center_is_normal(name, G):
    Z = set(center(G).members)
    for g in G:
        assert {G.conj(g, z) for z in Z} == Z


@pytest.mark.parametrize("name,G", [x for x in LIBRARY if x[1].order <= 6], ids=lambda v: v if isinstance(v, str) else "")
def test_every_single_entry_corruption_rejected(name, G):
    table = [list(r) for r in G.table]
    n = G.order
    for i, j in itertools.product(range(n), repeat=2):
        for v in range(n):
            if v == table[i][j]:
                continue
            bad = [r[:] for r in table]
            bad[i][j] = v
            with pytest.raises((NoIdentityAtZero, NoInverse, NotAssociative)):
                FiniteGroup(bad)


@pytest.mark.parametrize("name,G", LIBRARY, ids=[n for n, _ in LIBRARY])
def test_library_tags(name, G):
    assert structure_tag(G) == name


def test_s3_library_matches_permutations():
    assert find_isomorphism(symmetric(3), dihedral(3)) is not None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(LIBRARY), st.data())
def test_hom_law_on_compositions(entry, data):
    _, G = entry
    x = data.draw(st.integers(0, G.order - 1))
    mu = inner_automorphism(G, x)
    h = GroupHom(G, G, [mu(mu(g)) for g in G])
    assert h.is_injective
