import itertools

import pytest
from hypothesis import given, settings, strategies as st

from coprolong.errors import DimensionMismatch, NotAbelian
from coprolong.groups import abelian, cyclic, dihedral
from coprolong.zlattice import (
    FiniteAbelianGroup,
    abelian_structure,
    det,
    hnf_mod,
    identity,
    kernel_mod,
    lcm,
    matmul,
    smith_normal_form,
    solve_mod,
)

matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-10, 10), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def check_snf(M):
    res = smith_normal_form(M)
    assert matmul(matmul(res.U, M), res.V) == res.S
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    assert matmul(res.U, res.Uinv) == identity(len(M))
    assert matmul(res.V, res.Vinv) == identity(len(M[0]))
    S = res.S
    for i, row in enumerate(S):
        for j, v in enumerate(row):
            assert i == j or v == 0
    d = res.diagonal
    r = res.rank
    assert all(x > 0 for x in d[:r]) and all(x == 0 for x in d[r:])
    for a, b in zip(d[: r - 1], d[1:r]):
        assert b % a == 0
    return res


def test_snf_identity():
    assert check_snf(identity(2)).S == identity(2)


def test_snf_zero():
    assert check_snf([[0]]).S == [[0]]


def test_snf_2468():
    assert check_snf([[2, 4], [6, 8]]).diagonal == [2, 4]


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_snf_random(M):
    check_snf(M)


def test_snf_deterministic():
    M = [[3, -7, 2], [0, 5, 9], [4, 4, -1]]
    assert smith_normal_form(M) == smith_normal_form([r[:] for r in M])


def test_solve_unit():
    assert solve_mod([[1]], [5], [3]).solution == [3]


def test_solve_unsolvable():
    assert solve_mod([[2]], [4], [1]).solution is None


def test_solve_with_kernel():
    res = solve_mod([[2]], [4], [0], unknown_moduli=[4])
    assert res.solution == [0]
    assert {tuple(k) for k in res.kernel} <= {(0,), (2,)} and [2] in res.kernel


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_mod([[1, 2]], [3, 3], [0])


systems = st.integers(1, 2).flatmap(
    lambda r: st.integers(1, 3).flatmap(
        lambda c: st.tuples(
            st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r),
            st.lists(st.integers(2, 6), min_size=r, max_size=r),
            st.lists(st.integers(0, 5), min_size=r, max_size=r),
        )
    )
)


@settings(max_examples=80, deadline=None)
@given(systems)
def test_solve_mod_matches_exhaustive_search(sys_):
    M, moduli, b = sys_
    b = [x % q for x, q in zip(b, moduli)]
    n = len(M[0])
    e = lcm(*moduli)
    # unknowns range over Z/e, which M respects
    ranges = [range(e)] * n

    def ok(x):
        return all(sum(M[i][j] * x[j] for j in range(n)) % moduli[i] == b[i] for i in range(len(M)))

    exists = any(ok(x) for x in itertools.product(*ranges))
    res = solve_mod(M, moduli, b, unknown_moduli=[e] * n)
    assert (res.solution is not None) == exists
    if exists:
        assert ok(res.solution)
        # the kernel generators span every homogeneous solution
        span = {tuple([0] * n)}
        frontier = list(span)
        while frontier:
            v = frontier.pop()
            for k in res.kernel:
                w = tuple((a + c) % e for a, c in zip(v, k))
                if w not in span:
                    span.add(w)
                    frontier.append(w)
        homog = {
            x for x in itertools.product(*ranges)
            if all(sum(M[i][j] * x[j] for j in range(n)) % moduli[i] == 0 for i in range(len(M)))
        }
        assert span == homog


@settings(max_examples=60, deadline=None)
@given(systems)
def test_kernel_mod_and_hnf(sys_):
    M, moduli, _ = sys_
    n = len(M[0])
    e = lcm(*moduli)
    gens = kernel_mod(M, moduli, n, e)
    basis = hnf_mod(gens, n, e)
    for v in basis:
        assert all(sum(M[i][j] * v[j] for j in range(n)) % moduli[i] == 0 for i in range(len(M)))
    homog = {
        x for x in itertools.product(range(e), repeat=n)
        if all(sum(M[i][j] * x[j] for j in range(n)) % moduli[i] == 0 for i in range(len(M)))
    }
    span = {tuple([0] * n)}
    frontier = list(span)
    while frontier:
        v = frontier.pop()
        for k in basis:
            w = tuple((a + c) % e for a, c in zip(v, k))
            if w not in span:
                span.add(w)
                frontier.append(w)
    assert span == homog


def check_structure(G, expected):
    A, to_c, from_c = abelian_structure(G)
    assert A.factors == expected
    assert A.order == G.order
    assert from_c.compose(to_c).map == tuple(range(G.order))
    assert to_c.compose(from_c).map == tuple(range(A.order))


def test_structure_trivial():
    check_structure(cyclic(1), ())


def test_structure_z6():
    check_structure(cyclic(6), (6,))


def test_structure_klein():
    check_structure(abelian((2, 2)), (2, 2))


@pytest.mark.parametrize("factors,expected", [((2, 3), (6,)), ((4, 2), (2, 4)), ((2, 2, 3), (2, 6)), ((6, 4), (2, 12))])
def test_structure_products(factors, expected):
    check_structure(abelian(factors), expected)


def test_structure_rejects_nonabelian():
    with pytest.raises(NotAbelian):
        abelian_structure(dihedral(3))


def test_finite_abelian_group_arithmetic():
    A = FiniteAbelianGroup((2, 4))
    assert A.order == 8 and A.exponent == 4 and str(A) == "Z2xZ4"
    assert A.add((1, 3), (1, 2)) == (0, 1)
    assert [A.index(a) for a in A.elements()] == list(range(8))
    assert str(FiniteAbelianGroup(())) == "0"


def test_invalid_factor_chain():
    with pytest.raises(ValueError):
        FiniteAbelianGroup((4, 2))
