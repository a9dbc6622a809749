"""Exact integer linear algebra.

Matrices are lists of rows of Python ints.  Nothing here uses floating point;
intermediate values are arbitrary precision.

The pieces:

* :func:`smith_normal_form` with unimodular transforms,
* :func:`solve_mod` for linear congruences over mixed moduli,
* :func:`kernel_mod` and :func:`hnf_mod`, the fast path for large congruence
  kernels whose lattices contain ``e * Z^n`` (all cochain lattices do),
* :class:`Subquotient`, an explicit presentation ``L / N`` of a finite abelian
  group with a coordinate map,
* :class:`FiniteAbelianGroup` and :func:`abelian_structure`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence

from .errors import DimensionMismatch, NotAbelian

Matrix = list  # list[list[int]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    if any(len(row) != inner for row in A):
        raise DimensionMismatch("inner dimensions differ")
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [() for _ in range(cols)]
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def det(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# --- Smith normal form ---------------------------------------------------------

@dataclass(frozen=True)
class SNFResult:
    """``U @ M @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    ``Uinv`` and ``Vinv`` are the exact inverses, tracked during elimination.
    """

    U: Matrix
    S: Matrix
    V: Matrix
    Uinv: Matrix
    Vinv: Matrix

    @property
    def diagonal(self) -> list[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(M: Matrix, ncols: int | None = None) -> SNFResult:
    """Smith normal form by unimodular row and column operations.

    Pivot rule: the nonzero entry of least absolute value in the remaining
    block, ties broken row-major.  Output is deterministic and the diagonal
    is non-negative with ``s1 | s2 | ...``.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    if any(len(r) != n for r in M):
        raise DimensionMismatch("ragged matrix")
    A = [list(map(int, r)) for r in M]
    U, Uinv = identity(m), identity(m)
    V, Vinv = identity(n), identity(n)

    # row op: R_i += q R_j  ->  U gets the same; Uinv gets C_j -= q C_i
    def row_add(i, j, q):
        if q == 0:
            return
        Ai, Aj = A[i], A[j]
        for c in range(n):
            if Aj[c]:
                Ai[c] += q * Aj[c]
        Ui, Uj = U[i], U[j]
        for c in range(m):
            if Uj[c]:
                Ui[c] += q * Uj[c]
        for row in Uinv:
            if row[i]:
                row[j] -= q * row[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def row_neg(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]
        for row in Uinv:
            row[i] = -row[i]

    # col op: C_i += q C_j  ->  V gets the same; Vinv gets R_j -= q R_i
    def col_add(i, j, q):
        if q == 0:
            return
        for row in A:
            if row[j]:
                row[i] += q * row[j]
        for row in V:
            if row[j]:
                row[i] += q * row[j]
        Vi, Vj = Vinv[i], Vinv[j]
        for c in range(n):
            if Vi[c]:
                Vj[c] -= q * Vi[c]

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    t = 0
    while t < min(m, n):
        # choose pivot
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    row_add(i, t, -q)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    col_add(j, t, -q)
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: pivot must divide the whole remaining block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_add(t, bad, 1)
                continue
            # move smallest remaining nonzero in row/col t to the pivot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, bi, bj = best
            if bi != t:
                row_swap(bi, t)
            if bj != t:
                col_swap(bj, t)
        if A[t][t] < 0:
            row_neg(t)
        t += 1
    return SNFResult(U, A, V, Uinv, Vinv)


# --- congruences ----------------------------------------------------------------

@dataclass(frozen=True)
class SolveResult:
    """A particular solution (or None) and generators of the homogeneous solutions."""

    solution: list[int] | None
    kernel: list[list[int]]


def solve_mod(
    M: Matrix,
    moduli: Sequence[int],
    b: Sequence[int],
    unknown_moduli: Sequence[int] | None = None,
) -> SolveResult:
    """Solve ``M x = b`` with row ``i`` read modulo ``moduli[i]``.

    The system is stacked as ``[M | diag(moduli)] (x, y) = b`` over the
    integers and solved through its Smith normal form.  When
    ``unknown_moduli`` is given the unknowns live in ``Z/unknown_moduli[j]``
    (``M`` must respect them); the particular solution and the kernel
    generators are then reduced into that range.
    """
    rows = len(M)
    if len(moduli) != rows or len(b) != rows:
        raise DimensionMismatch(f"{rows} rows, {len(moduli)} moduli, {len(b)} right-hand sides")
    nx = len(M[0]) if rows else (len(unknown_moduli) if unknown_moduli is not None else 0)
    if any(len(r) != nx for r in M):
        raise DimensionMismatch("ragged matrix")
    if unknown_moduli is not None and len(unknown_moduli) != nx:
        raise DimensionMismatch("unknown_moduli length differs from the number of unknowns")
    stacked = [list(M[i]) + [moduli[i] if k == i else 0 for k in range(rows)] for i in range(rows)]
    ncols = nx + rows
    snf = smith_normal_form(stacked, ncols=ncols)
    c = matvec(snf.U, b)
    r = snf.rank
    d = snf.diagonal
    z = [0] * ncols
    for i in range(rows):
        if i < r:
            if c[i] % d[i]:
                sol = None
                break
            z[i] = c[i] // d[i]
        elif c[i]:
            sol = None
            break
    else:
        full = matvec(snf.V, z)
        sol = full[:nx]
    kernel = [[snf.V[k][j] for k in range(nx)] for j in range(r, ncols)]
    if unknown_moduli is not None:
        um = list(unknown_moduli)
        if sol is not None:
            sol = [v % q for v, q in zip(sol, um)]
        kernel = [[v % q for v, q in zip(vec, um)] for vec in kernel]
    kernel = [vec for vec in kernel if any(vec)]
    return SolveResult(sol, kernel)


def kernel_mod(M: Matrix, moduli: Sequence[int], ncols: int, exponent: int) -> list[list[int]]:
    """Generators of ``{x in Z^ncols : M x = 0 (mod moduli)}`` modulo ``exponent``.

    Requires every modulus to divide ``exponent``; the kernel then contains
    ``exponent * Z^ncols`` and the returned vectors together with
    ``exponent * e_k`` generate it.  Rows are absorbed one at a time with
    entries kept reduced mod ``exponent``, so this scales to the large sparse
    coboundary systems where a full SNF of the stacked matrix is slow.
    """
    e = exponent
    if any(e % q for q in moduli):
        raise DimensionMismatch("every modulus must divide the exponent")
    work = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    for row, d in zip(M, moduli):
        if d == 1:
            continue
        nz = [(k, v % d) for k, v in enumerate(row) if v % d]
        if not nz:
            continue
        vals = []
        for w in work:
            s = 0
            for k, v in nz:
                if w[k]:
                    s += v * w[k]
            vals.append(s % d)
        idx = [i for i, v in enumerate(vals) if v]
        if not idx:
            continue
        # gather the gcd of the values onto one working vector
        p = idx[0]
        for i in idx[1:]:
            a, b = vals[p], vals[i]
            g, x, y = xgcd(a, b)
            wp, wi = work[p], work[i]
            new_p = [(x * u + y * v) % e for u, v in zip(wp, wi)]
            new_i = [((a // g) * v - (b // g) * u) % e for u, v in zip(wp, wi)]
            work[p], work[i] = new_p, new_i
            vals[p], vals[i] = g % d, 0
        g = gcd(vals[p], d)
        factor = d // g
        work[p] = [(factor * u) % e for u in work[p]]
        work = [w for w in work if any(w)]
    return work


def hnf_mod(gens: Sequence[Sequence[int]], n: int, exponent: int) -> Matrix:
    """Lower-triangular basis (as a list of column vectors) of ``span(gens) + exponent*Z^n``.

    Column ``k`` has zeros above row ``k`` and a positive diagonal entry
    dividing ``exponent``.
    """
    e = exponent
    work = [[v % e for v in g] for g in gens if any(v % e for v in g)]
    basis = []
    for k in range(n):
        pivot = [0] * n
        pivot[k] = e
        rest = []
        for w in work:
            if w[k] == 0:
                rest.append(w)
                continue
            a, b = pivot[k], w[k]
            g, x, y = xgcd(a, b)
            new_p = [x * u + y * v for u, v in zip(pivot, w)]
            new_w = [((a // g) * v - (b // g) * u) for u, v in zip(pivot, w)]
            pivot = new_p
            if any(new_w[k + 1:]):
                new_w = [0] * (k + 1) + [v % e for v in new_w[k + 1:]]
                if any(new_w):
                    rest.append(new_w)
        pivot = [0] * k + [pivot[k]] + [v % e for v in pivot[k + 1:]]
        # the element (e/g) * pivot lies in the lattice and has zero in row k
        g = pivot[k]
        extra = [0] * (k + 1) + [((e // g) * v) % e for v in pivot[k + 1:]]
        if any(extra):
            rest.append(extra)
        basis.append(pivot)
        work = rest
    return basis


def solve_lower(basis: Sequence[Sequence[int]], x: Sequence[int]) -> list[int] | None:
    """Integer ``c`` with ``sum c_k basis[k] == x`` for a lower-triangular column basis."""
    n = len(basis)
    r = list(x)
    c = [0] * n
    for k in range(n):
        if r[k] % basis[k][k]:
            return None
        q = r[k] // basis[k][k]
        c[k] = q
        if q:
            col = basis[k]
            for i in range(k, n):
                if col[i]:
                    r[i] -= q * col[i]
    return c


class Subquotient:
    """The finite abelian group ``L / N`` for full-rank lattices ``N <= L <= Z^n``.

    ``basis`` is a lower-triangular column basis of ``L`` (as produced by
    :func:`hnf_mod`), ``sub_gens`` generate ``N``.  Exposes the invariant
    factors, one integer representative in ``L`` per factor, and
    :meth:`coords` sending a vector of ``L`` to its coordinates.
    """

    def __init__(self, basis: Sequence[Sequence[int]], sub_gens: Sequence[Sequence[int]]):
        self.basis = [list(b) for b in basis]
        n = len(self.basis)
        rel_cols = []
        for g in sub_gens:
            c = solve_lower(self.basis, g)
            if c is None:
                raise DimensionMismatch("sub-lattice generator is not in the lattice")
            rel_cols.append(c)
        R = transpose(rel_cols, n) if rel_cols else zeros(n, 0)
        if not rel_cols:
            raise DimensionMismatch("sub-lattice must have full rank")
        snf = smith_normal_form(R, ncols=len(rel_cols))
        diag = snf.diagonal
        if len(diag) < n or any(d == 0 for d in diag[:n]):
            raise DimensionMismatch("sub-lattice must have full rank")
        keep = [i for i in range(n) if diag[i] != 1]
        self.factors = tuple(diag[i] for i in keep)
        self._U = [snf.U[i] for i in keep]
        # generator i is basis @ Uinv[:, keep[i]]
        self.generators = []
        for i in keep:
            col = [snf.Uinv[r][i] for r in range(n)]
            vec = [0] * n
            for k, ck in enumerate(col):
                if ck:
                    for r in range(k, n):
                        if self.basis[k][r]:
                            vec[r] += ck * self.basis[k][r]
            self.generators.append(vec)

    @property
    def order(self) -> int:
        return prod(self.factors)

    def coords(self, x: Sequence[int]) -> tuple[int, ...] | None:
        """Coordinates of ``x`` in ``L/N``, or None when ``x`` is not in ``L``."""
        c = solve_lower(self.basis, x)
        if c is None:
            return None
        return tuple(sum(u * v for u, v in zip(row, c)) % d for row, d in zip(self._U, self.factors))

    def element(self, coords: Sequence[int]) -> list[int]:
        n = len(self.basis)
        out = [0] * n
        for c, g in zip(coords, self.generators):
            if c:
                for r in range(n):
                    out[r] += c * g[r]
        return out


# --- finite abelian groups ------------------------------------------------------

@dataclass(frozen=True)
class FiniteAbelianGroup:
    """``Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk`` and every ``di >= 2``.

    Elements are tuples reduced coordinatewise; their flat index is the
    mixed-radix value with the last coordinate fastest.
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for d in self.factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"factors {self.factors} break the divisibility chain")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def reduce(self, a: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) % d for x, d in zip(a, self.factors))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def sub(self, a, b) -> tuple[int, ...]:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a) -> tuple[int, ...]:
        return tuple((-x) % d for x, d in zip(a, self.factors))

    def elements(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*[range(d) for d in self.factors]))

    def index(self, a: Sequence[int]) -> int:
        k = 0
        for x, d in zip(a, self.factors):
            k = k * d + x % d
        return k

    def element(self, k: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.factors):
            k, r = divmod(k, d)
            out.append(r)
        return tuple(reversed(out))

    def as_group(self):
        """Cayley-table carrier with index order matching :meth:`index`."""
        from .groups import abelian

        return abelian(self.factors)

    def __str__(self):
        return "x".join(f"Z{d}" for d in self.factors) if self.factors else "0"


def invariant_factors(relations: Matrix, ngens: int) -> tuple[int, ...]:
    """Invariant factors (those > 1) of ``Z^ngens / span(columns of relations)``."""
    if ngens == 0:
        return ()
    snf = smith_normal_form(relations, ncols=len(relations[0]) if relations else 0)
    diag = snf.diagonal + [0] * (ngens - len(snf.diagonal))
    if any(d == 0 for d in diag):
        raise DimensionMismatch("group is infinite")
    return tuple(d for d in diag if d != 1)


def abelian_structure(G):
    """Invariant factors of an abelian Cayley-table group with explicit isomorphisms.

    Returns ``(A, to_coords, from_coords)`` where ``to_coords`` is a
    :class:`~coprolong.groups.GroupHom` ``G -> A.as_group()`` and
    ``from_coords`` its inverse.
    """
    from .groups import GroupHom

    if not G.is_abelian:
        raise NotAbelian("group is not abelian")
    if G.order == 1:
        A = FiniteAbelianGroup(())
        C = A.as_group()
        return A, GroupHom(G, C, [0]), GroupHom(C, G, [0])
    gens = list(G.generators())
    orders = [G.element_order(g) for g in gens]
    # relation lattice of Z^k -> G: all integer vectors c with prod g_i^c_i = 1,
    # found by enumerating the box of exponents (|box| = prod(orders), small)
    def evaluate(c):
        x = 0
        for g, k in zip(gens, c):
            x = G.mul(x, G.power(g, k))
        return x

    k = len(gens)
    rels = [[orders[i] if j == i else 0 for j in range(k)] for i in range(k)]
    seen = {}
    for c in itertools.product(*[range(o) for o in orders]):
        x = evaluate(c)
        if x in seen:
            prev = seen[x]
            rels.append([a - b for a, b in zip(c, prev)])
        else:
            seen[x] = c
    R = transpose(rels, k)
    snf = smith_normal_form(R, ncols=len(rels))
    diag = snf.diagonal
    keep = [i for i in range(k) if diag[i] != 1]
    A = FiniteAbelianGroup(tuple(diag[i] for i in keep))
    # coordinates: exponent vector c -> (U c)_keep mod factors; generator j of A is
    # the image of Uinv[:, keep[j]]
    C = A.as_group()
    to_map = [0] * G.order
    for x, c in seen.items():
        uc = matvec(snf.U, c)
        to_map[x] = A.index([uc[i] for i in keep])
    from_map = [0] * C.order
    for idx in range(C.order):
        coords = A.element(idx)
        expo = [0] * k
        for j, i in enumerate(keep):
            for r in range(k):
                expo[r] += coords[j] * snf.Uinv[r][i]
        from_map[idx] = evaluate([e % o for e, o in zip(expo, orders)])
    return A, GroupHom(G, C, to_map), GroupHom(C, G, from_map)
