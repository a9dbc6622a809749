"""Brute-force reference computations for tiny instances.

Nothing here touches the Smith-form machinery.  Cochains are handled as
arrays of ``A``-element indices, module actions are recomputed by conjugation
inside the middle group, and coboundaries are enumerated exhaustively.  Every
enumeration checks its size against an :class:`EnumGuard` first and raises
:class:`GuardExceeded` instead of truncating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cohomology import Cochain, GModule
from .coprolongation import System
from .errors import GuardExceeded, NotHomomorphism
from .extensions import Extension, canonical_section, crossed_product
from .groups import GroupHom


@dataclass(frozen=True)
class EnumGuard:
    max_points: int = 2**20

    def check(self, required: int, what: str):
        if required > self.max_points:
            raise GuardExceeded(
                f"{what} needs {required} points, guard allows {self.max_points}",
                required=required,
                allowed=self.max_points,
            )


DEFAULT_GUARD = EnumGuard()


class _Arith:
    """Index-level arithmetic in ``A`` plus a left action of a group on it."""

    def __init__(self, Agroup, act):
        self.n = Agroup.order
        self.add = np.asarray(Agroup.table, dtype=np.int64)
        self.neg = np.asarray(Agroup.inverses, dtype=np.int64)
        self.act = np.asarray(act, dtype=np.int64)  # act[g, a]

    def sub(self, a, b):
        return self.add[a, self.neg[b]]


def _module_arith(m: GModule) -> _Arith:
    return _Arith(m.A.as_group(), m.act_table)


def _coboundaries(ar: _Arith, G, guard: EnumGuard) -> np.ndarray:
    """All ``d1 t`` as an array ``(count, |G|, |G|)`` of element indices."""
    n = G.order
    guard.check(ar.n ** (n - 1), "1-cochain enumeration")
    T = np.array(list(itertools.product(range(ar.n), repeat=n - 1)), dtype=np.int64).reshape(ar.n ** (n - 1), n - 1)
    T = np.concatenate([np.zeros((len(T), 1), dtype=np.int64), T], axis=1)
    tab = np.asarray(G.table, dtype=np.int64)
    out = np.empty((len(T), n, n), dtype=np.int64)
    for x in range(n):
        # x.t(y) - t(xy) + t(x)
        xt = ar.act[x][T]  # (count, n) indexed by y
        out[:, x, :] = ar.add[ar.sub(xt, T[:, tab[x]]), T[:, [x]]]
    return out


_COB_CACHE: dict = {}


def _neg_coboundaries(ar: _Arith, G, guard: EnumGuard) -> np.ndarray:
    """``-d1 t`` for every ``t``, memoized on the group table and the action."""
    guard.check(ar.n ** (G.order - 1), "1-cochain enumeration")
    key = (G.table, ar.add.tobytes(), ar.act.tobytes())
    if key not in _COB_CACHE:
        if len(_COB_CACHE) >= 64:
            _COB_CACHE.clear()
        _COB_CACHE[key] = ar.neg[_coboundaries(ar, G, guard)]
    return _COB_CACHE[key]


def _unique_rows(arr: np.ndarray) -> np.ndarray:
    """Distinct entries along axis 0, in lexicographic order of their bytes."""
    if len(arr) == 0:
        return arr
    flat = np.ascontiguousarray(arr.reshape(len(arr), -1))
    view = flat.view(np.dtype((np.void, flat.shape[1] * flat.itemsize))).ravel()
    _, idx = np.unique(view, return_index=True)
    return arr[np.sort(idx)]


def _to_cochain(m: GModule, arr: np.ndarray) -> Cochain:
    A = m.A
    n = m.G.order
    return Cochain(m, 2, [A.element(int(arr[x, y])) for x in range(1, n) for y in range(1, n)])


def _cocycle_mask(ar: _Arith, tab: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Which of the full cochains ``F[:, x, y]`` satisfy the cocycle identity."""
    n = tab.shape[0]
    ok = np.ones(len(F), dtype=bool)
    for x in range(1, n):
        for y in range(1, n):
            xy = tab[x, y]
            lhs = ar.add[ar.act[x][F[:, y, 1:]], F[:, x, tab[y, 1:]]]
            rhs = ar.add[F[:, xy, 1:], F[:, x, y][:, None]]
            ok &= np.all(lhs == rhs, axis=1)
    return ok


def _enumerate_cocycle_arrays(m: GModule, guard: EnumGuard) -> np.ndarray:
    n = m.G.order
    na = m.A.order
    npairs = (n - 1) ** 2
    guard.check(na ** npairs, "2-cochain enumeration")
    ar = _module_arith(m)
    tab = np.asarray(m.G.table, dtype=np.int64)
    total = na ** npairs
    chunk = 1 << 15
    found = []
    weights = na ** np.arange(npairs - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % na
        F = np.zeros((len(idx), n, n), dtype=np.int64)
        F[:, 1:, 1:] = digits.reshape(len(idx), n - 1, n - 1)
        found.append(F[_cocycle_mask(ar, tab, F)])
    return np.concatenate(found) if found else np.zeros((0, n, n), dtype=np.int64)


def enumerate_cocycles(m: GModule, guard: EnumGuard = DEFAULT_GUARD) -> list[Cochain]:
    """Every normalized 2-cocycle, in row-major lexicographic order of values."""
    return [_to_cochain(m, F) for F in _enumerate_cocycle_arrays(m, guard)]


def _partition(arrays: np.ndarray, cob: np.ndarray, ar: _Arith) -> list[int]:
    """Indices of the first member of every coset ``f + B`` among ``arrays``."""
    keys = {a.tobytes(): k for k, a in enumerate(arrays)}
    seen = set()
    reps = []
    for k, f in enumerate(arrays):
        if k in seen:
            continue
        reps.append(k)
        for b in cob:
            other = keys.get(ar.add[f, b].tobytes())
            if other is not None:
                seen.add(other)
    return reps


def brute_force_h2(m: GModule, guard: EnumGuard = DEFAULT_GUARD) -> tuple[int, list[Cochain]]:
    """``|Z^2| / |B^2|`` with one explicit representative per class."""
    Z = _enumerate_cocycle_arrays(m, guard)
    ar = _module_arith(m)
    B = _unique_rows(_coboundaries(ar, m.G, guard))
    if len(Z) % len(B):
        raise AssertionError("coboundaries do not partition the cocycles")
    reps = _partition(Z, B, ar)
    if len(reps) * len(B) != len(Z):
        raise AssertionError("coset sizes are inconsistent")
    return len(reps), [_to_cochain(m, Z[k]) for k in reps]


def _conjugation_action(E: Extension, u) -> np.ndarray:
    """``act[x, a]`` computed by conjugating ``i(a)`` with ``u(x)`` in ``B``."""
    B = E.B
    inv_i = {b: a for a, b in enumerate(E.i.map)}
    return np.array(
        [[inv_i[B.conj(u[x], E.i(a))] for a in range(E.A.order)] for x in E.G], dtype=np.int64
    )


def brute_force_coprolongations(sys: System, guard: EnumGuard = DEFAULT_GUARD) -> list[Cochain]:
    """Classes ``[f]`` in ``H^2(G, A)`` whose pullback is cohomologous to ``f0``.

    Runs over every normalized 1-cochain ``t`` on ``G0``; whenever
    ``f0 - d1 t`` is constant on the fibres of ``gamma x gamma`` it defines
    a cocycle ``f`` on ``G`` with ``gamma^* f = f0 - d1 t``.  The collected
    cocycles are then grouped into classes by brute-force coboundaries on
    ``G``.  Returns one representative per class.
    """
    E0, gamma = sys.E0, sys.gamma
    G0, G = sys.G0, sys.G
    n0, n = G0.order, G.order
    na = E0.A.order
    guard.check(na ** max(n0 - 1, 0), "1-cochain enumeration on G0")
    guard.check(na ** max(n - 1, 0), "1-cochain enumeration on G")
    u = [None] * n0
    for b in E0.B:
        if u[E0.p(b)] is None:
            u[E0.p(b)] = b
    inv_i = {b: a for a, b in enumerate(E0.i.map)}
    B0 = E0.B
    f0 = np.zeros((n0, n0), dtype=np.int64)
    for x in range(n0):
        for y in range(n0):
            f0[x, y] = inv_i[B0.mul(B0.mul(u[x], u[y]), B0.inv(u[G0.mul(x, y)]))]
    act0 = _conjugation_action(E0, u)
    ar0 = _Arith(E0.A.as_group(), act0)
    cand = ar0.add[f0[None, :, :], _neg_coboundaries(ar0, G0, guard)]  # (count, n0, n0)
    gmap = np.asarray(gamma.map, dtype=np.int64)
    # pick one preimage per element of G, then demand constancy on fibres
    lift = np.array([gamma.preimages(x)[0] for x in range(n)], dtype=np.int64)
    F = cand[:, lift][:, :, lift]  # (count, n, n)
    pulled = F[:, gmap][:, :, gmap]
    ok = np.all(pulled.reshape(len(F), -1) == cand.reshape(len(F), -1), axis=1)
    ok &= np.all(F[:, 0, :] == 0, axis=1) & np.all(F[:, :, 0] == 0, axis=1)
    found = _unique_rows(F[ok])
    if len(found) == 0:
        return []
    act = act0[lift]
    ar = _Arith(E0.A.as_group(), act)
    tab = np.asarray(G.table, dtype=np.int64)
    if not np.all(_cocycle_mask(ar, tab, found)):
        raise AssertionError("a descended cochain is not a cocycle")
    B = _unique_rows(_coboundaries(ar, G, guard))
    reps = _partition(found, B, ar)
    if len(reps) * len(B) != len(found):
        raise AssertionError("descended cocycles are not a union of cosets")
    return [_to_cochain(sys.phi, found[k]) for k in reps]


def find_equivalence(E1: Extension, E2: Extension) -> GroupHom | None:
    """Exhaustive search for ``psi: B1 -> B2`` with ``psi i1 = i2`` and ``p2 psi = p1``.

    Such maps are exactly ``i1(a) u1(x) -> i2(a + tau(x)) u2(x)`` for normalized
    ``tau: G -> A``; every ``tau`` is tried.
    """
    if E1.A != E2.A or E1.G != E2.G:
        return None
    G, A = E1.G, E1.A
    u1, u2 = canonical_section(E1), canonical_section(E2)
    B1, B2 = E1.B, E2.B
    decomp = []
    for b in B1:
        x = E1.p(b)
        decomp.append((E1.kernel_coords(B1.mul(b, B1.inv(u1(x)))), x))
    for tau in itertools.product(range(A.order), repeat=G.order - 1):
        tau = (0,) + tau
        psi = [B2.mul(E2.embed(A.add(a, A.element(tau[x]))), u2(x)) for a, x in decomp]
        try:
            h = GroupHom(B1, B2, psi)
        except NotHomomorphism:
            continue
        return h
    return None


def extension_census(m: GModule, guard: EnumGuard = DEFAULT_GUARD) -> list[tuple[Extension, Cochain]]:
    """All extensions of ``A`` by ``G`` inducing ``m``, one per equivalence class.

    Cocycles are enumerated exhaustively and split into coboundary cosets;
    the representatives are then certified pairwise inequivalent by
    :func:`find_equivalence`, and when the cocycle count is small every
    cocycle is matched to its representative by an explicit isomorphism.
    """
    if m.A.order * m.G.order > 16:
        raise GuardExceeded("census isomorphism search is limited to |A||G| <= 16",
                            required=m.A.order * m.G.order, allowed=16)
    Z = _enumerate_cocycle_arrays(m, guard)
    ar = _module_arith(m)
    B = _unique_rows(_coboundaries(ar, m.G, guard))
    reps = _partition(Z, B, ar)
    out = [crossed_product(m, _to_cochain(m, Z[k])) for k in reps]
    exts = [E for E, _ in out]
    for a, b in itertools.combinations(range(len(exts)), 2):
        if find_equivalence(exts[a], exts[b]) is not None:
            raise AssertionError("distinct coboundary cosets gave equivalent extensions")
    if len(Z) <= 64:
        for F in Z:
            E, _ = crossed_product(m, _to_cochain(m, F))
            if sum(find_equivalence(E, R) is not None for R in exts) != 1:
                raise AssertionError("cocycle is not equivalent to exactly one representative")
    return [(E, _to_cochain(m, Z[k])) for E, k in zip(exts, reps)]
