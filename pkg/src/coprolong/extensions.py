"""Group extensions ``0 -> A -> B -> G -> 1`` with abelian kernel.

Factor sets follow ``u(x) u(y) = i(f(x, y)) u(xy)``, i.e.
``f(x, y) = i^-1(u(x) u(y) u(xy)^-1)``, and the crossed product multiplies
``(a, x)(b, y) = (a + x.b + f(x, y), xy)``.  With these choices
``factor_set(crossed_product(m, f)) == f`` exactly and changing the section
to ``i(t(x)) u(x)`` adds ``d1 t`` to the factor set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .cohomology import Cochain, GModule, H2Map, H2Presentation, induced_map_h2, is_cocycle
from .errors import IllDefinedAction, InvalidExtension, NotACocycle, ValueOutsideKernel
from .groups import FiniteGroup, GroupHom, center
from .zlattice import FiniteAbelianGroup, abelian_structure


@lru_cache(maxsize=512)
def h2_cached(module: GModule) -> H2Presentation:
    return H2Presentation(module)


@lru_cache(maxsize=512)
def h2map_cached(gamma: GroupHom, source: GModule, target: GModule) -> H2Map:
    """``gamma-bar`` between the cached presentations of ``source`` and ``target``."""
    return induced_map_h2(gamma, h2_cached(source), h2_cached(target))


class Extension:
    """``0 -> A -> B -> G -> 1`` with ``A`` in invariant-factor coordinates.

    ``i`` maps the coordinate carrier ``A.as_group()`` into ``B``.
    """

    def __init__(self, A: FiniteAbelianGroup, B: FiniteGroup, G: FiniteGroup, i: GroupHom, p: GroupHom):
        if i.target != B or p.source != B or p.target != G:
            raise InvalidExtension("maps do not fit together")
        if i.source.order != A.order:
            raise InvalidExtension("i is not defined on A")
        if not i.is_injective:
            raise InvalidExtension("i is not injective")
        if not p.is_surjective:
            raise InvalidExtension("p is not surjective")
        if set(i.map) != set(p.kernel.members):
            raise InvalidExtension("image of i differs from the kernel of p (not exact)")
        self.A = A
        self.B = B
        self.G = G
        self.i = i
        self.p = p
        self._coords = {b: A.element(k) for k, b in enumerate(i.map)}
        self._module = None

    def __repr__(self):
        return f"Extension(A={self.A}, |B|={self.B.order}, |G|={self.G.order})"

    @classmethod
    def from_maps(cls, i: GroupHom, p: GroupHom) -> "Extension":
        """Build from an embedding of any abelian Cayley-table group."""
        A, _, from_coords = abelian_structure(i.source)
        return cls(A, i.target, p.target, i.compose(from_coords), p)

    def embed(self, a: Sequence[int]) -> int:
        return self.i(self.A.index(a))

    def kernel_coords(self, b: int) -> tuple[int, ...]:
        try:
            return self._coords[b]
        except KeyError:
            raise ValueOutsideKernel(f"element {b} of B is not in i(A)", element=b) from None

    def in_kernel(self, b: int) -> bool:
        return b in self._coords

    @property
    def module(self) -> GModule:
        if self._module is None:
            self._module = induced_action(self)
        return self._module


@dataclass(frozen=True)
class Section:
    """A normalized set-theoretic section ``u`` of ``p``."""

    extension: Extension
    u: tuple[int, ...]

    def __post_init__(self):
        E = self.extension
        u = tuple(int(b) for b in self.u)
        object.__setattr__(self, "u", u)
        if len(u) != E.G.order:
            raise InvalidExtension("section must have one value per element of G")
        if u[0] != 0:
            raise InvalidExtension("section must send the identity to the identity")
        for x, b in enumerate(u):
            if E.p(b) != x:
                raise InvalidExtension(f"p(u({x})) != {x}", element=x)

    def __call__(self, x: int) -> int:
        return self.u[x]


def canonical_section(E: Extension) -> Section:
    """Least preimage of every element."""
    u = [None] * E.G.order
    for b in E.B:
        x = E.p(b)
        if u[x] is None:
            u[x] = b
    return Section(E, u)


def shifted_section(s: Section, t: Cochain) -> Section:
    """The section ``x -> i(t(x)) u(x)``; its factor set is ``f + d1 t``."""
    E = s.extension
    return Section(E, [E.B.mul(E.embed(t(x)), s(x)) for x in E.G])


def induced_action(E: Extension) -> GModule:
    """The module structure ``x.a = i^-1(b i(a) b^-1)`` for any ``b`` over ``x``."""
    A, B = E.A, E.B
    k = A.rank
    units = [tuple(int(r == j) for r in range(k)) for j in range(k)]
    pre = {}
    for b in B:
        pre.setdefault(E.p(b), []).append(b)
    mats = []
    for x in E.G:
        images = None
        for b in pre[x]:
            img = [E.kernel_coords(B.conj(b, E.embed(e))) for e in units]
            if images is None:
                images = img
            elif img != images:
                raise IllDefinedAction(f"preimages of {x} act differently on A", element=x)
        mats.append([[images[j][r] for j in range(k)] for r in range(k)])
    return GModule(E.G, A, mats)


def factor_set(E: Extension, s: Section | None = None) -> Cochain:
    if s is None:
        s = canonical_section(E)
    B = E.B
    m = E.module

    def fn(x, y):
        b = B.mul(B.mul(s(x), s(y)), B.inv(s(E.G.mul(x, y))))
        return E.kernel_coords(b)

    return Cochain.from_function(m, 2, fn)


def crossed_product_table(m: GModule, f: Cochain) -> list[list[int]]:
    """Raw multiplication table of ``[A, phi, f, G]`` on index ``A.index(a) * |G| + x``."""
    A, G = m.A, m.G
    n = G.order
    elems = A.elements()
    table = []
    for ia, a in enumerate(elems):
        for x in G:
            row = []
            for b in elems:
                for y in G:
                    c = A.add(A.add(a, m.act(x, b)), f(x, y))
                    row.append(A.index(c) * n + G.mul(x, y))
            table.append(row)
    return table


def crossed_product(m: GModule, f: Cochain) -> tuple[Extension, Section]:
    if f.module != m or f.degree != 2:
        raise ValueError("f is not a 2-cochain over m")
    if not is_cocycle(f):
        raise NotACocycle("crossed product needs a 2-cocycle")
    A, G = m.A, m.G
    n = G.order
    names = [f"({','.join(map(str, a))};{G.names[x]})" for a in A.elements() for x in G]
    B = FiniteGroup(crossed_product_table(m, f), names)
    i = GroupHom(A.as_group(), B, [k * n for k in range(A.order)])
    p = GroupHom(B, G, [b % n for b in range(B.order)])
    E = Extension(A, B, G, i, p)
    E._module = m
    return E, Section(E, list(range(n)))


def _check_same_module(E1: Extension, E2: Extension) -> bool:
    return E1.A == E2.A and E1.G == E2.G and E1.module == E2.module


def are_equivalent(E1: Extension, E2: Extension) -> tuple[bool, GroupHom | None]:
    """Cohomological equivalence test with a verified witness ``B1 -> B2``."""
    if not _check_same_module(E1, E2):
        return False, None
    s1, s2 = canonical_section(E1), canonical_section(E2)
    f1, f2 = factor_set(E1, s1), factor_set(E2, s2)
    H = h2_cached(E1.module)
    coords, t = H.class_of(f2 - f1, witness=True)
    if any(coords):
        return False, None
    # u2'(x) = i(-t(x)) u2(x) has factor set f2 - d1 t = f1
    s2p = shifted_section(s2, -t)
    B1 = E1.B
    psi = [0] * B1.order
    for b in B1:
        x = E1.p(b)
        a = E1.kernel_coords(B1.mul(b, B1.inv(s1(x))))
        psi[b] = E2.B.mul(E2.embed(a), s2p(x))
    w = GroupHom(B1, E2.B, psi)
    assert w.is_injective and w.compose(E1.i).map == E2.i.map and E2.p.compose(w).map == E1.p.map
    return True, w


def is_central(E: Extension) -> bool:
    Z = center(E.B)
    by_center = all(b in Z for b in E.i.map)
    assert by_center == E.module.is_trivial, "centrality and trivial action disagree"
    return by_center


@dataclass(frozen=True)
class CrossedModule:
    """``(B, D, d, theta)`` with ``theta[x]`` an automorphism of ``B`` for each ``x`` in ``D``."""

    B: FiniteGroup
    D: FiniteGroup
    d: GroupHom
    theta: tuple


@dataclass(frozen=True)
class CrossedModuleReport:
    ok: bool
    axiom: str | None = None
    instance: tuple | None = None

    def __bool__(self):
        return self.ok


def verify_crossed_module(cm: CrossedModule) -> CrossedModuleReport:
    """Check that theta is a homomorphism, C1 ``theta_{d(b)} = mu_b`` and
    C2 ``d(theta_x(b)) = x d(b) x^-1``; report the first failure."""
    B, D, d, theta = cm.B, cm.D, cm.d, cm.theta
    for x in D:
        for y in D:
            xy = D.mul(x, y)
            for b in B:
                if theta[x](theta[y](b)) != theta[xy](b):
                    return CrossedModuleReport(False, "theta-hom", (x, y, b))
    for b in B:
        tb = theta[d(b)]
        for c in B:
            if tb(c) != B.conj(b, c):
                return CrossedModuleReport(False, "C1", (b, c))
    for x in D:
        for b in B:
            if d(theta[x](b)) != D.conj(x, d(b)):
                return CrossedModuleReport(False, "C2", (x, b))
    return CrossedModuleReport(True)
