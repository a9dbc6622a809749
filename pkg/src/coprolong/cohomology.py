"""Normalized cochains of a finite group with coefficients in a module.

Conventions (left action, additive notation in ``A``)::

    (d1 t)(x, y)    = x.t(y) - t(xy) + t(x)
    (d2 f)(x, y, z) = x.f(y, z) - f(xy, z) + f(x, yz) - f(x, y)

A normalized n-cochain is stored only on tuples of non-identity elements;
any tuple containing the identity evaluates to zero.  Flattened, the
coordinate of ``(tuple, c)`` is ``pos(tuple) * rank(A) + c`` where ``pos`` is
the row-major position among non-identity tuples.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import ActionMismatch, DegreeUnsupported, InvalidModule, NotACocycle
from .groups import FiniteGroup, GroupHom
from .zlattice import (
    FiniteAbelianGroup,
    Subquotient,
    hnf_mod,
    identity,
    kernel_mod,
    lcm,
    solve_mod,
)


class GModule:
    """A finite abelian group ``A`` with a left action of ``G`` by integer matrices.

    ``action[g]`` is a ``k x k`` matrix acting on coordinate column vectors;
    entries of row ``r`` are stored reduced mod ``A.factors[r]``.  Omitting
    ``action`` gives the trivial module.
    """

    def __init__(self, G: FiniteGroup, A: FiniteAbelianGroup, action=None):
        k = A.rank
        d = A.factors
        if action is None:
            action = [identity(k) for _ in G]
        if len(action) != G.order:
            raise InvalidModule(f"{len(action)} action matrices for a group of order {G.order}")
        mats = []
        for g, M in enumerate(action):
            if len(M) != k or any(len(row) != k for row in M):
                raise InvalidModule(f"action[{g}] is not {k}x{k}", element=g)
            for r in range(k):
                for j in range(k):
                    if (M[r][j] * d[j]) % d[r]:
                        raise InvalidModule(f"action[{g}] does not respect moduli", element=g)
            mats.append(tuple(tuple(int(M[r][j]) % d[r] for j in range(k)) for r in range(k)))
        self.G = G
        self.A = A
        self.action = tuple(mats)
        ident = tuple(tuple(int(r == j) % d[r] for j in range(k)) for r in range(k))
        if self.action[0] != ident:
            raise InvalidModule("action[0] is not the identity", element=0)
        # each M_g is invertible on A because M_g^|g| = M_e; checking the
        # homomorphism law is therefore enough
        for g in G:
            for h in G:
                if self._compose(g, h) != self.action[G.mul(g, h)]:
                    raise InvalidModule(
                        f"action[{g}] action[{h}] != action[{G.mul(g, h)}]", pair=(g, h)
                    )

    def _compose(self, g, h):
        Mg, Mh = self.action[g], self.action[h]
        k, d = self.A.rank, self.A.factors
        return tuple(
            tuple(sum(Mg[r][s] * Mh[s][j] for s in range(k)) % d[r] for j in range(k))
            for r in range(k)
        )

    def __repr__(self):
        return f"GModule(|G|={self.G.order}, A={self.A}, trivial={self.is_trivial})"

    def __eq__(self, other):
        return (
            isinstance(other, GModule)
            and self.G == other.G
            and self.A == other.A
            and self.action == other.action
        )

    def __hash__(self):
        return hash((self.G, self.A, self.action))

    @property
    def is_trivial(self) -> bool:
        return all(M == self.action[0] for M in self.action)

    def act(self, g: int, a: Sequence[int]) -> tuple[int, ...]:
        M = self.action[g]
        return tuple(
            sum(M[r][j] * a[j] for j in range(len(a))) % dr for r, dr in enumerate(self.A.factors)
        )

    @cached_property
    def act_table(self) -> tuple[tuple[int, ...], ...]:
        """``act_table[g][i]`` is the index of ``g . A.element(i)``."""
        A = self.A
        elems = A.elements()
        return tuple(tuple(A.index(self.act(g, a)) for a in elems) for g in self.G)

    def restrict(self, hom: GroupHom) -> "GModule":
        """The module over ``hom.source`` acting through ``hom``."""
        return GModule(hom.source, self.A, [self.action[hom(x)] for x in hom.source])

    # --- cochain coordinates -------------------------------------------------

    def num_coords(self, degree: int) -> int:
        return (self.G.order - 1) ** degree * self.A.rank

    def moduli(self, degree: int) -> list[int]:
        return list(self.A.factors) * (self.G.order - 1) ** degree

    def pos(self, xs: Sequence[int]) -> int:
        m = self.G.order - 1
        p = 0
        for x in xs:
            p = p * m + (x - 1)
        return p

    def tuples(self, degree: int):
        return itertools.product(range(1, self.G.order), repeat=degree)

    @cached_property
    def d1_matrix(self) -> list[list[int]]:
        return self._coboundary_matrix(1)

    @cached_property
    def d2_matrix(self) -> list[list[int]]:
        return self._coboundary_matrix(2)

    @cached_property
    def d2_array(self) -> np.ndarray:
        return np.asarray(self.d2_matrix, dtype=np.int64).reshape(self.num_coords(3), self.num_coords(2))

    def moduli_array(self, degree: int) -> np.ndarray:
        return np.asarray(self.moduli(degree), dtype=np.int64)

    def _coboundary_matrix(self, degree: int) -> list[list[int]]:
        G, k = self.G, self.A.rank
        ncols = self.num_coords(degree)
        rows = []
        for xs in self.tuples(degree + 1):
            block = [[0] * ncols for _ in range(k)]
            x = xs[0]
            # x . c(rest)
            base = self.pos(xs[1:]) * k
            M = self.action[x]
            for r in range(k):
                for j in range(k):
                    block[r][base + j] += M[r][j]
            # alternating faces merging neighbours
            for i in range(degree):
                merged = xs[:i] + (G.mul(xs[i], xs[i + 1]),) + xs[i + 2:]
                if 0 in merged:
                    continue
                sign = -1 if i % 2 == 0 else 1
                b = self.pos(merged) * k
                for r in range(k):
                    block[r][b + r] += sign
            # last face drops the final argument
            sign = 1 if degree % 2 == 1 else -1
            b = self.pos(xs[:-1]) * k
            for r in range(k):
                block[r][b + r] += sign
            rows.extend(block)
        return rows


class Cochain:
    """A normalized cochain of degree 1, 2 or 3.

    ``values`` holds one reduced ``A``-coordinate tuple per tuple of
    non-identity group elements, in row-major order.
    """

    __slots__ = ("module", "degree", "values")

    def __init__(self, module: GModule, degree: int, values: Sequence[Sequence[int]]):
        n = (module.G.order - 1) ** degree
        if len(values) != n:
            raise ValueError(f"degree-{degree} cochain needs {n} values, got {len(values)}")
        self.module = module
        self.degree = degree
        self.values = tuple(module.A.reduce(v) for v in values)

    @classmethod
    def zero(cls, module: GModule, degree: int) -> "Cochain":
        return cls(module, degree, [module.A.zero] * (module.G.order - 1) ** degree)

    @classmethod
    def from_function(cls, module: GModule, degree: int, fn: Callable) -> "Cochain":
        return cls(module, degree, [fn(*xs) for xs in module.tuples(degree)])

    @classmethod
    def from_vector(cls, module: GModule, degree: int, vec: Sequence[int]) -> "Cochain":
        k = module.A.rank
        n = (module.G.order - 1) ** degree
        return cls(module, degree, [tuple(vec[p * k:(p + 1) * k]) for p in range(n)])

    @classmethod
    def from_dict(cls, module: GModule, degree: int, entries: dict) -> "Cochain":
        """Build from ``{(x, y): coords}``; missing tuples are zero."""
        zero = module.A.zero
        for xs in entries:
            if len(xs) != degree:
                raise ValueError(f"key {xs} has the wrong arity")
            if 0 in xs and any(entries[xs]):
                raise ValueError(f"normalized cochain must vanish at {xs}")
        return cls.from_function(module, degree, lambda *xs: entries.get(tuple(xs), zero))

    def __call__(self, *xs: int) -> tuple[int, ...]:
        if 0 in xs:
            return self.module.A.zero
        return self.values[self.module.pos(xs)]

    def vector(self) -> list[int]:
        return [c for v in self.values for c in v]

    def items(self):
        """Non-zero entries as ``(tuple, coords)`` pairs."""
        zero = self.module.A.zero
        for xs, v in zip(self.module.tuples(self.degree), self.values):
            if v != zero:
                yield xs, v

    def _check(self, other):
        if not isinstance(other, Cochain) or other.degree != self.degree or other.module != self.module:
            raise ValueError("cochains live over different modules or degrees")

    def __add__(self, other):
        self._check(other)
        A = self.module.A
        return Cochain(self.module, self.degree, [A.add(a, b) for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        A = self.module.A
        return Cochain(self.module, self.degree, [A.sub(a, b) for a, b in zip(self.values, other.values)])

    def __neg__(self):
        A = self.module.A
        return Cochain(self.module, self.degree, [A.neg(a) for a in self.values])

    def scale(self, k: int) -> "Cochain":
        A = self.module.A
        return Cochain(self.module, self.degree, [A.reduce([k * c for c in a]) for a in self.values])

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and self.values == other.values
            and self.module == other.module
        )

    def __hash__(self):
        return hash((self.degree, self.values))

    def __repr__(self):
        body = ", ".join(f"{xs}: {list(v)}" for xs, v in self.items())
        return f"Cochain(deg={self.degree}, {{{body}}})"

    def is_zero(self) -> bool:
        zero = self.module.A.zero
        return all(v == zero for v in self.values)


def coboundary(c: Cochain) -> Cochain:
    """``d1`` or ``d2`` of a normalized cochain."""
    m = c.module
    G, A = m.G, m.A
    if c.degree == 1:
        def fn(x, y):
            return A.add(A.sub(m.act(x, c(y)), c(G.mul(x, y))), c(x))
    elif c.degree == 2:
        def fn(x, y, z):
            left = A.add(m.act(x, c(y, z)), c(x, G.mul(y, z)))
            right = A.add(c(G.mul(x, y), z), c(x, y))
            return A.sub(left, right)
    else:
        raise DegreeUnsupported(f"coboundary of degree {c.degree} is not supported")
    return Cochain.from_function(m, c.degree + 1, fn)


def is_cocycle(f: Cochain) -> bool:
    if f.degree != 2:
        raise DegreeUnsupported("is_cocycle expects a 2-cochain")
    m = f.module
    if m.num_coords(2) == 0:
        return True
    return not np.any((m.d2_array @ np.asarray(f.vector(), dtype=np.int64)) % m.moduli_array(3))


class H2Presentation:
    """``H^2(G, A)`` as ``Z^2 / B^2`` with invariant factors and generator cocycles.

    The cocycle lattice is the kernel of ``d2`` over the mixed moduli of
    ``C^3``; the quotient by ``d1(C^1) + moduli`` is put in Smith form once,
    and :meth:`class_of` reuses that data.
    """

    def __init__(self, module: GModule):
        self.module = module
        n2 = module.num_coords(2)
        e = module.A.exponent
        self._e = e
        if n2 == 0:
            self._sq = None
            self.factors: tuple[int, ...] = ()
            self.generators: list[Cochain] = []
            return
        gens = kernel_mod(module.d2_matrix, module.moduli(3), n2, e)
        basis = hnf_mod(gens, n2, e)
        d1 = module.d1_matrix
        n1 = module.num_coords(1)
        sub = [[d1[r][c] for r in range(n2)] for c in range(n1)]
        for r, q in enumerate(module.moduli(2)):
            col = [0] * n2
            col[r] = q
            sub.append(col)
        self._sq = Subquotient(basis, sub)
        self.factors = self._sq.factors
        self.generators = [Cochain.from_vector(module, 2, v) for v in self._sq.generators]

    def __repr__(self):
        return f"H2Presentation(factors={self.factors})"

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    def class_of(self, f: Cochain, witness: bool = False):
        """Coordinates of ``[f]``; with ``witness=True`` also a 1-cochain ``t``
        with ``d1 t = f`` when the class is zero (else None)."""
        if f.module != self.module or f.degree != 2:
            raise ValueError("cochain is not a 2-cochain over this module")
        if self._sq is None:
            coords: tuple[int, ...] = ()
        else:
            coords = self._sq.coords(f.vector())
            if coords is None or not is_cocycle(f):
                raise NotACocycle("class_of expects a 2-cocycle")
        if not witness:
            return coords
        t = None
        if not any(coords):
            t = self.coboundary_witness(f)
        return coords, t

    def coboundary_witness(self, f: Cochain) -> Cochain | None:
        m = self.module
        n1 = m.num_coords(1)
        if m.num_coords(2) == 0:
            return Cochain.zero(m, 1)
        res = solve_mod(m.d1_matrix, m.moduli(2), f.vector(), unknown_moduli=m.moduli(1))
        if res.solution is None:
            return None
        return Cochain.from_vector(m, 1, res.solution[:n1])

    def cocycle(self, coords: Sequence[int]) -> Cochain:
        """A representative cocycle of the class with the given coordinates."""
        if len(coords) != len(self.factors):
            raise ValueError("wrong number of coordinates")
        if self._sq is None:
            return Cochain.zero(self.module, 2)
        return Cochain.from_vector(self.module, 2, self._sq.element(coords))

    def elements(self):
        return list(itertools.product(*[range(d) for d in self.factors]))


def h2(module: GModule) -> H2Presentation:
    return H2Presentation(module)


def pullback(gamma: GroupHom, f: Cochain, target_module: GModule | None = None) -> Cochain:
    """``(gamma^* f)(x0, y0) = f(gamma x0, gamma y0)`` over the source of ``gamma``."""
    m = f.module
    if gamma.target != m.G:
        raise ActionMismatch("gamma does not land in the cochain's group")
    expected = m.restrict(gamma)
    if target_module is None:
        target_module = expected
    elif target_module != expected:
        raise ActionMismatch("module action does not factor as phi . gamma")
    return Cochain.from_function(target_module, f.degree, lambda *xs: f(*(gamma(x) for x in xs)))


class H2Map:
    """The map ``H^2(G, A) -> H^2(G0, A)`` induced by ``gamma: G0 -> G``.

    ``matrix[j][i]`` is coordinate ``j`` of the pullback of source generator
    ``i``.  Kernel and cokernel are finite abelian groups with explicit
    coordinates: the kernel's generators are source coordinate vectors.
    """

    def __init__(self, gamma: GroupHom, source: H2Presentation, target: H2Presentation):
        self.gamma = gamma
        self.source = source
        self.target = target
        cols = [target.class_of(pullback(gamma, g, target.module)) for g in source.generators]
        s, t = source.factors, target.factors
        self.matrix = [[cols[i][j] for i in range(len(s))] for j in range(len(t))]
        # kernel: {c mod s : matrix c = 0 mod t}
        es = lcm(*s) if s else 1
        if s:
            ker = solve_mod(self.matrix, t, [0] * len(t), unknown_moduli=s).kernel
            diag = [[d if r == i else 0 for r in range(len(s))] for i, d in enumerate(s)]
            basis = hnf_mod(ker + diag, len(s), es)
            sq = Subquotient(basis, diag)
            self.kernel_factors = sq.factors
            self.kernel_generators = [tuple(v % d for v, d in zip(g, s)) for g in sq.generators]
        else:
            self.kernel_factors = ()
            self.kernel_generators = []
        # cokernel: Z^t / (image + moduli)
        if t:
            rel = [[self.matrix[j][i] for j in range(len(t))] for i in range(len(s))]
            rel += [[d if r == i else 0 for r in range(len(t))] for i, d in enumerate(t)]
            self._coker = Subquotient(identity(len(t)), rel)
            self.cokernel_factors = self._coker.factors
        else:
            self._coker = None
            self.cokernel_factors = ()

    def __repr__(self):
        return (
            f"H2Map({self.source.factors} -> {self.target.factors}, "
            f"ker={self.kernel_factors}, coker={self.cokernel_factors})"
        )

    def apply(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(a * c for a, c in zip(row, coords)) % d for row, d in zip(self.matrix, self.target.factors)
        )

    @property
    def kernel_order(self) -> int:
        out = 1
        for d in self.kernel_factors:
            out *= d
        return out

    def kernel_elements(self) -> list[tuple[int, ...]]:
        """Every element of ``Ker``, as sorted source coordinate tuples."""
        s = self.source.factors
        out = set()
        ranges = [range(d) for d in self.kernel_factors]
        for mult in itertools.product(*ranges):
            v = [0] * len(s)
            for k, g in zip(mult, self.kernel_generators):
                for i in range(len(s)):
                    v[i] += k * g[i]
            out.add(tuple(x % d for x, d in zip(v, s)))
        return sorted(out)

    def cokernel_coords(self, coords: Sequence[int]) -> tuple[int, ...]:
        if self._coker is None:
            return ()
        return self._coker.coords(list(coords))

    def preimage(self, coords: Sequence[int]) -> tuple[int, ...] | None:
        """Lexicographically least source coordinates mapping to ``coords``, or None."""
        s, t = self.source.factors, self.target.factors
        res = solve_mod(self.matrix, t, list(coords), unknown_moduli=s) if t else None
        if t and res.solution is None:
            return None
        base = tuple(res.solution) if t else (0,) * len(s)
        return min(tuple((b + k) % d for b, k, d in zip(base, h, s)) for h in self.kernel_elements())


def induced_map_h2(gamma: GroupHom, source: H2Presentation, target: H2Presentation) -> H2Map:
    if source.module.G != gamma.target or target.module.G != gamma.source:
        raise ActionMismatch("presentations do not match the ends of gamma")
    if source.module.A != target.module.A or source.module.restrict(gamma) != target.module:
        raise ActionMismatch("target action is not the source action composed with gamma")
    return H2Map(gamma, source, target)
