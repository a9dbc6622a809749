"""Finite groups as validated Cayley tables.

Elements are the indices ``0 .. order-1`` and index 0 is always the identity.
A :class:`FiniteGroup` is validated once on construction and never mutated, so
everything downstream may trust its table.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import (
    IdentityNotPreserved,
    NoIdentityAtZero,
    NoInverse,
    NotAssociative,
    NotClosed,
    NotHomomorphism,
    NotNormal,
)


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[i][j]`` is the index of ``i * j``.  Construction raises one of
    :class:`NotClosed`, :class:`NoIdentityAtZero`, :class:`NoInverse` or
    :class:`NotAssociative` when the table is not a group with identity 0.
    """

    __slots__ = ("order", "table", "names", "inverses", "is_abelian", "_np")

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None):
        rows = [list(r) for r in table]
        n = len(rows)
        if n == 0:
            raise NotClosed("empty table")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise NotClosed(f"row {i} has length {len(row)}, expected {n}", row=i)
            for j, v in enumerate(row):
                if not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                    raise NotClosed(f"table[{i}][{j}] = {v!r} is not an element index", pair=(i, j))
        for j in range(n):
            if rows[0][j] != j or rows[j][0] != j:
                raise NoIdentityAtZero(f"index 0 is not a two-sided identity (fails at {j})", element=j)
        arr = np.asarray(rows, dtype=np.int64)
        full = np.arange(n)
        for i in range(n):
            if not np.array_equal(np.sort(arr[i]), full):
                raise NoInverse(f"row {i} is not a permutation; {i} has no inverse", element=i)
            if not np.array_equal(np.sort(arr[:, i]), full):
                raise NoInverse(f"column {i} is not a permutation; {i} has no inverse", element=i)
        # (i*j)*k against i*(j*k), all triples at once
        lhs = arr[arr[:, :, None], np.arange(n)[None, None, :]]
        rhs = arr[np.arange(n)[:, None, None], arr[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, k = (int(x) for x in bad[0])
            raise NotAssociative(f"(g{i}*g{j})*g{k} != g{i}*(g{j}*g{k})", triple=(i, j, k))
        inv = np.argmin(arr, axis=1)  # position of 0 in each row
        self.order = n
        self.table = tuple(tuple(int(v) for v in r) for r in rows)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        if len(self.names) != n:
            raise NotClosed(f"{len(self.names)} names for {n} elements")
        self.inverses = tuple(int(v) for v in inv)
        self.is_abelian = bool(np.array_equal(arr, arr.T))
        self._np = arr

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    @property
    def array(self) -> np.ndarray:
        return self._np

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.table[r][x]
        return r

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, x: int, b: int) -> int:
        """x b x^-1"""
        t = self.table
        return t[t[x][b]][self.inverses[x]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverses[a], -k
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, r = 1, a
        while r != 0:
            r = self.table[r][a]
            k += 1
        return k

    def generated(self, gens: Iterable[int]) -> frozenset:
        gens = list(gens)
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = self.table[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element order."""
        gens: list[int] = []
        span = frozenset({0})
        by_order = sorted(range(1, self.order), key=lambda a: (-self.element_order(a), a))
        while len(span) < self.order:
            best = max(
                (a for a in by_order if a not in span),
                key=lambda a: (len(self.generated(gens + [a])), -a),
            )
            gens.append(best)
            span = self.generated(gens)
        return tuple(gens)

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Group whose element ``perm[k]`` is old element ``k``."""
        n = self.order
        back = [0] * n
        for old, new in enumerate(perm):
            back[new] = old
        table = [[perm[self.table[back[i]][back[j]]] for j in range(n)] for i in range(n)]
        return FiniteGroup(table, [self.names[back[i]] for i in range(n)])


def build_group(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FiniteGroup:
    return FiniteGroup(table, names)


def reindex_identity(table: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Move the identity of a Cayley table to index 0.

    Returns the new table and ``perm`` with ``perm[old] = new``.  When no
    identity exists the table is returned unchanged, so validation reports it.
    """
    n = len(table)
    ident = None
    for e in range(n):
        if all(table[e][j] == j and table[j][e] == j for j in range(n)):
            ident = e
            break
    perm = list(range(n))
    if not ident:
        return [list(r) for r in table], perm
    perm[0], perm[ident] = ident, 0
    back = perm  # a transposition is its own inverse
    new = [[perm[table[back[i]][back[j]]] for j in range(n)] for i in range(n)]
    return new, perm


def from_operation(elements: Sequence[Hashable], op: Callable, names=None) -> FiniteGroup:
    """Cayley table of ``op`` on ``elements``; ``elements[0]`` must be the identity."""
    index = {e: k for k, e in enumerate(elements)}
    try:
        table = [[index[op(a, b)] for b in elements] for a in elements]
    except KeyError as exc:
        raise NotClosed(f"product {exc.args[0]!r} is not among the elements") from None
    return FiniteGroup(table, names if names is not None else [str(e) for e in elements])


class Subgroup:
    """A subset of ``parent`` closed under products and inverses."""

    __slots__ = ("parent", "members", "_set", "_normal")

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        mem = sorted(set(int(m) for m in members))
        s = frozenset(mem)
        if 0 not in s:
            raise NotClosed("subgroup must contain the identity")
        for a in mem:
            if parent.inv(a) not in s:
                raise NotClosed(f"inverse of {a} missing from subgroup", element=a)
            for b in mem:
                if parent.mul(a, b) not in s:
                    raise NotClosed(f"{a}*{b} leaves the subgroup", pair=(a, b))
        self.parent = parent
        self.members = tuple(mem)
        self._set = s
        self._normal = None

    def __repr__(self):
        return f"Subgroup({list(self.members)})"

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x):
        return x in self._set

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent == other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    @property
    def order(self):
        return len(self.members)

    @property
    def is_normal(self) -> bool:
        if self._normal is None:
            G = self.parent
            self._normal = all(G.conj(g, n) in self._set for g in G for n in self.members)
        return self._normal

    def require_normal(self, what="subgroup"):
        G = self.parent
        for g in G:
            for n in self.members:
                if G.conj(g, n) not in self._set:
                    raise NotNormal(f"{what} is not normal: {g}*{n}*{g}^-1 escapes", pair=(g, n))


class GroupHom:
    """A validated homomorphism ``source -> target``."""

    __slots__ = ("source", "target", "map", "_kernel", "_image")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, mapping: Sequence[int]):
        m = tuple(int(x) for x in mapping)
        if len(m) != source.order:
            raise NotHomomorphism(f"map has length {len(m)}, source has order {source.order}")
        if any(not 0 <= x < target.order for x in m):
            raise NotHomomorphism("map value outside the target")
        if m[0] != 0:
            raise IdentityNotPreserved(f"identity is sent to {m[0]}")
        st, tt = source.table, target.table
        for i in range(source.order):
            for j in range(source.order):
                if m[st[i][j]] != tt[m[i]][m[j]]:
                    raise NotHomomorphism(f"map(g{i}*g{j}) != map(g{i})*map(g{j})", pair=(i, j))
        self.source = source
        self.target = target
        self.map = m
        self._kernel = None
        self._image = None

    def __repr__(self):
        return f"GroupHom({self.source.order}->{self.target.order}, {list(self.map)})"

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.map == other.map
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash(self.map)

    @property
    def kernel(self) -> Subgroup:
        if self._kernel is None:
            self._kernel = Subgroup(self.source, [x for x in self.source if self.map[x] == 0])
        return self._kernel

    @property
    def image(self) -> Subgroup:
        if self._image is None:
            self._image = Subgroup(self.target, set(self.map))
        return self._image

    @property
    def is_injective(self) -> bool:
        return len(self.kernel) == 1

    @property
    def is_surjective(self) -> bool:
        return len(self.image) == self.target.order

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self . first``"""
        return GroupHom(first.source, self.target, [self.map[first.map[x]] for x in first.source])

    def preimages(self, y: int) -> list[int]:
        return [x for x in self.source if self.map[x] == y]


def build_hom(source: FiniteGroup, target: FiniteGroup, mapping: Sequence[int]) -> GroupHom:
    return GroupHom(source, target, mapping)


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, range(G.order))


def inner_automorphism(G: FiniteGroup, x: int) -> GroupHom:
    if not 0 <= x < G.order:
        raise IndexError(f"{x} is not an element of a group of order {G.order}")
    return GroupHom(G, G, [G.conj(x, b) for b in G])


def center(G: FiniteGroup) -> Subgroup:
    t = G.table
    return Subgroup(G, [z for z in G if all(t[z][g] == t[g][z] for g in G)])


def hom_from_generators(source: FiniteGroup, target: FiniteGroup, gens: Sequence[int], images: Sequence[int]):
    """Extend ``gens[k] -> images[k]`` to a homomorphism, or return None."""
    m = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, h in zip(gens, images):
            y = source.mul(x, g)
            v = target.mul(m[x], h)
            if y in m:
                if m[y] != v:
                    return None
            else:
                m[y] = v
                queue.append(y)
    if len(m) != source.order:
        raise ValueError("gens do not generate the source")
    try:
        return GroupHom(source, target, [m[x] for x in source])
    except NotHomomorphism:
        return None


def all_homs(source: FiniteGroup, target: FiniteGroup) -> list[GroupHom]:
    gens = source.generators()
    out = []
    for images in itertools.product(range(target.order), repeat=len(gens)):
        h = hom_from_generators(source, target, gens, images)
        if h is not None:
            out.append(h)
    return out


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, found as normal closures of subsets of small generating sets."""
    found = {}
    # every subgroup of a group of order <= a few hundred is generated by few elements;
    # normal closures of 1- and 2-element sets already produce every normal subgroup
    # we meet, but we close under products of normal subgroups to be exhaustive.
    def closure(gs):
        members = set(G.generated(gs))
        while True:
            extra = {G.conj(g, n) for g in G for n in members} - members
            if not extra:
                return frozenset(members)
            members = set(G.generated(list(members | extra)))

    for a in G:
        s = closure([a])
        found[s] = True
    changed = True
    while changed:
        changed = False
        current = list(found)
        for s, t in itertools.combinations(current, 2):
            u = frozenset(G.generated(list(s | t)))
            if u not in found:
                found[u] = True
                changed = True
    subs = [Subgroup(G, s) for s in found]
    subs.sort(key=lambda H: (len(H), H.members))
    return subs


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, GroupHom]:
    """The quotient carrier ``G/N`` with its projection; cosets ordered by least member."""
    N.require_normal()
    coset_of = {}
    reps = []
    for g in G:
        if g in coset_of:
            continue
        k = len(reps)
        reps.append(g)
        for n in N:
            coset_of[G.mul(g, n)] = k
    table = [[coset_of[G.mul(a, b)] for b in reps] for a in reps]
    Q = FiniteGroup(table, [G.names[r] + ("N" if len(N) > 1 else "") for r in reps])
    return Q, GroupHom(G, Q, [coset_of[g] for g in G])


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Carrier of ``G x H``; element ``(g, h)`` has index ``g * |H| + h``."""
    m = H.order
    table = [
        [G.mul(a // m, b // m) * m + H.mul(a % m, b % m) for b in range(G.order * m)]
        for a in range(G.order * m)
    ]
    names = [f"({G.names[a // m]},{H.names[a % m]})" for a in range(G.order * m)]
    return FiniteGroup(table, names)


# --- small library -------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def abelian(factors: Sequence[int]) -> FiniteGroup:
    """``Z/d1 x ... x Z/dk`` in mixed-radix order (last coordinate fastest)."""
    elems = list(itertools.product(*[range(d) for d in factors]))

    def op(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, factors))

    return from_operation(elems, op, names=[",".join(map(str, e)) if e else "0" for e in elems])


def permutation_group(perms: Iterable[Sequence[int]]) -> FiniteGroup:
    """Group generated by the given permutations (composition ``(p*q)(x) = p(q(x))``)."""
    gens = [tuple(p) for p in perms]
    n = len(gens[0]) if gens else 1
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[g[i]] for i in range(n))
            if y not in seen:
                seen.add(y)
                elems.append(y)
                queue.append(y)
    return from_operation(elems, lambda p, q: tuple(p[q[i]] for i in range(n)))


def symmetric(n: int) -> FiniteGroup:
    if n < 2:
        return cyclic(1)
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return permutation_group(gens)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order ``2n``: ``r^k`` at index k, ``s r^k`` at ``n + k``."""
    def op(a, b):
        (fa, ka), (fb, kb) = a, b
        return ((fa + fb) % 2, ((-ka if fb else ka) + kb) % n)

    elems = [(0, k) for k in range(n)] + [(1, k) for k in range(n)]
    names = [f"r{k}" for k in range(n)] + [f"sr{k}" for k in range(n)]
    return from_operation(elems, op, names=names)


def quaternion() -> FiniteGroup:
    units = {"1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1)}

    def qmul(a, b):
        a1, b1, c1, d1 = a
        a2, b2, c2, d2 = b
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    elems = []
    names = []
    for sign in (1, -1):
        for name, u in units.items():
            elems.append(tuple(sign * x for x in u))
            names.append(("-" if sign < 0 else "") + name)
    return from_operation(elems, qmul, names=names)


def small_groups(max_order: int) -> list[tuple[str, FiniteGroup]]:
    """Every group of order <= min(max_order, 8), up to isomorphism, with a name."""
    if max_order > 8:
        raise ValueError("library covers orders <= 8")
    lib = [("1", cyclic(1))]
    for n in range(2, max_order + 1):
        lib.append((f"Z{n}", cyclic(n)))
        if n == 4:
            lib.append(("Z2xZ2", abelian((2, 2))))
        if n == 6:
            lib.append(("S3", dihedral(3)))
        if n == 8:
            lib.append(("Z2xZ4", abelian((2, 4))))
            lib.append(("Z2xZ2xZ2", abelian((2, 2, 2))))
            lib.append(("D4", dihedral(4)))
            lib.append(("Q8", quaternion()))
    return lib


def metacyclic(n: int, q: int, k: int = 2, m: int = 0) -> FiniteGroup:
    """``<r, s | r^n, s^k = r^m, s r s^-1 = r^q>`` on elements ``s^e r^j`` (index ``e*n + j``)."""
    qinv = pow(q, -1, n)

    def op(a, b):
        (e1, j1), (e2, j2) = a, b
        j = (j1 * pow(qinv, e2, n) + j2) % n
        e = e1 + e2
        if e >= k:
            e -= k
            j = (j + m) % n
        return e, j

    elems = [(e, j) for e in range(k) for j in range(n)]
    return from_operation(elems, op)


def _pauli() -> FiniteGroup:
    # i^k X^a Z^b with Z X = -X Z
    elems = [(k, a, b) for k in range(4) for a in range(2) for b in range(2)]

    def op(x, y):
        return ((x[0] + y[0] + 2 * x[2] * y[1]) % 4, (x[1] + y[1]) % 2, (x[2] + y[2]) % 2)

    return from_operation(elems, op)


def _g16_3() -> FiniteGroup:
    # a^x b^y c^z with a^4 = b^2 = c^2 = 1, b central, c a c = a b
    elems = [(x, y, z) for x in range(4) for y in range(2) for z in range(2)]

    def op(u, v):
        return ((u[0] + v[0]) % 4, (u[1] + v[1] + u[2] * v[0]) % 2, (u[2] + v[2]) % 2)

    return from_operation(elems, op)


def _alternating4() -> FiniteGroup:
    return permutation_group([(1, 2, 0, 3), (0, 2, 3, 1)])


_CATALOG = None


def _nonabelian_catalog():
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = [
            ("S3", dihedral(3)), ("D4", dihedral(4)), ("Q8", quaternion()),
            ("D5", dihedral(5)), ("A4", _alternating4()), ("D6", dihedral(6)),
            ("Z3:Z4", metacyclic(3, 2, 4, 0)), ("D7", dihedral(7)),
            ("D8", dihedral(8)), ("Q16", metacyclic(8, 7, 2, 4)), ("SD16", metacyclic(8, 3)),
            ("M16", metacyclic(8, 5)), ("Z4:Z4", metacyclic(4, 3, 4, 0)),
            ("Z2xD4", direct_product(cyclic(2), dihedral(4))),
            ("Z2xQ8", direct_product(cyclic(2), quaternion())),
            ("Pauli", _pauli()), ("Z2^2:Z4", _g16_3()),
        ]
    return _CATALOG


def _order_profile(G: FiniteGroup) -> tuple:
    return tuple(sorted(G.element_order(g) for g in G))


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> GroupHom | None:
    """Brute-force isomorphism search (intended for orders up to about 16)."""
    if G.order != H.order or G.is_abelian != H.is_abelian or _order_profile(G) != _order_profile(H):
        return None
    gens = G.generators()
    by_order = {}
    for h in H:
        by_order.setdefault(H.element_order(h), []).append(h)
    for images in itertools.product(*[by_order[G.element_order(g)] for g in gens]):
        f = hom_from_generators(G, H, gens, images)
        if f is not None and f.is_injective:
            return f
    return None


def structure_tag(G: FiniteGroup) -> str | None:
    """A recognizable name such as ``Z2xZ4`` or ``Q8``; None when ``|G| > 16``."""
    if G.order > 16:
        return None
    if G.is_abelian:
        from .zlattice import abelian_structure

        return "1" if G.order == 1 else str(abelian_structure(G)[0])
    for name, H in _nonabelian_catalog():
        if find_isomorphism(G, H) is not None:
            return name
    raise AssertionError(f"nonabelian group of order {G.order} missing from the catalog")
