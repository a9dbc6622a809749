"""Co-prolongations of an extension along a surjection.

Given ``E0: 0 -> A -> B0 -> G0 -> 1`` and a surjection ``gamma: G0 -> G``, a
co-prolongation is an extension ``E: 0 -> A -> B -> G -> 1`` together with
``beta: B0 -> B`` fixing ``A`` pointwise and satisfying ``p beta = gamma p0``.

They exist exactly when ``[f0]`` lies in the image of the pullback map
``H^2(G, A) -> H^2(G0, A)``; the obstruction is the image of ``[f0]`` in its
cokernel.  When they exist, their classes form a coset of the kernel of that
map inside ``H^2(G, A)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cohomology import Cochain, GModule, H2Map, is_cocycle, pullback
from .errors import (
    ActionDoesNotFactor,
    GammaNotSurjective,
    NotDirectProduct,
    NotHomomorphism,
    NotNormal,
    NotSplit,
    PreconditionFailed,
    RestrictionNotBijective,
    ThetaIllDefined,
    WitnessInvalid,
)
from .extensions import (
    CrossedModule,
    CrossedModuleReport,
    Extension,
    Section,
    canonical_section,
    crossed_product,
    factor_set,
    h2_cached,
    h2map_cached,
    verify_crossed_module,
)
from .groups import FiniteGroup, GroupHom, Subgroup


@dataclass(frozen=True)
class System:
    """A validated pair ``(E0, gamma)`` with the actions ``phi0`` on G0 and ``phi`` on G."""

    E0: Extension
    gamma: GroupHom
    phi: GModule
    phi0: GModule

    @property
    def A(self):
        return self.E0.A

    @property
    def G(self) -> FiniteGroup:
        return self.gamma.target

    @property
    def G0(self) -> FiniteGroup:
        return self.gamma.source


def validate_system(E0: Extension, gamma: GroupHom) -> System:
    if gamma.source != E0.G:
        raise GammaNotSurjective("gamma is not defined on the quotient group of E0")
    if not gamma.is_surjective:
        raise GammaNotSurjective("gamma not surjective")
    phi0 = E0.module
    ident = phi0.action[0]
    for c in gamma.kernel:
        if phi0.action[c] != ident:
            raise ActionDoesNotFactor(
                f"element {c} of Ker gamma acts nontrivially on A; no compatible action on G",
                element=c,
            )
    mats = [None] * gamma.target.order
    for x0 in gamma.source:
        x = gamma(x0)
        if mats[x] is None:
            mats[x] = phi0.action[x0]
        elif mats[x] != phi0.action[x0]:
            raise ActionDoesNotFactor(f"preimages of {x} act differently", element=x)
    phi = GModule(gamma.target, E0.A, mats)
    return System(E0, gamma, phi, phi0)


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    beta_surjective: bool = False
    failure: str | None = None

    def __bool__(self):
        return self.ok


def check_morphism(E0: Extension, E: Extension, beta, gamma: GroupHom) -> MorphismReport:
    """Does ``(id_A, beta, gamma)`` make the morphism diagram commute?

    ``beta`` may be a :class:`GroupHom` or a raw list of images.
    """
    if not isinstance(beta, GroupHom):
        try:
            beta = GroupHom(E0.B, E.B, beta)
        except NotHomomorphism as exc:
            return MorphismReport(False, failure=f"beta is not a homomorphism: {exc}")
    if E0.A != E.A or beta.source != E0.B or beta.target != E.B:
        return MorphismReport(False, failure="objects do not match")
    if gamma.source != E0.G or gamma.target != E.G:
        return MorphismReport(False, failure="gamma does not match the quotient groups")
    for a in range(E0.A.order):
        if beta(E0.i(a)) != E.i(a):
            return MorphismReport(False, failure=f"beta moves A-element {E0.A.element(a)}")
    for b in E0.B:
        if E.p(beta(b)) != gamma(E0.p(b)):
            return MorphismReport(False, failure=f"p(beta({b})) != gamma(p0({b}))")
    return MorphismReport(True, beta_surjective=beta.is_surjective)


@dataclass(frozen=True)
class KernelSplitting:
    """A homomorphism ``j: Ker gamma -> B0``, stored on the members of the kernel."""

    kernel: Subgroup
    target: FiniteGroup
    images: tuple  # (c, j(c)) pairs, sorted by c

    def __post_init__(self):
        d = dict(self.images)
        K = self.kernel.parent
        for c in self.kernel:
            for c2 in self.kernel:
                if d[K.mul(c, c2)] != self.target.mul(d[c], d[c2]):
                    raise NotHomomorphism(f"j({c}*{c2}) != j({c})*j({c2})", pair=(c, c2))

    def __call__(self, c: int) -> int:
        return dict(self.images)[c]

    @property
    def image(self) -> Subgroup:
        return Subgroup(self.target, [b for _, b in self.images])

    @classmethod
    def from_dict(cls, kernel: Subgroup, target: FiniteGroup, mapping: dict) -> "KernelSplitting":
        return cls(kernel, target, tuple(sorted((int(c), int(mapping[c])) for c in kernel)))


def kernel_splitting(E0: Extension, E: Extension, beta: GroupHom, gamma: GroupHom) -> KernelSplitting:
    rep = check_morphism(E0, E, beta, gamma)
    if not rep:
        raise PreconditionFailed(f"not a co-prolongation morphism: {rep.failure}")
    ker_beta = beta.kernel
    ker_gamma = gamma.kernel
    restricted = {b: E0.p(b) for b in ker_beta}
    images = set(restricted.values())
    if not images <= set(ker_gamma) or len(images) != len(ker_beta) or len(images) != len(ker_gamma):
        raise RestrictionNotBijective("p0 does not map Ker beta bijectively onto Ker gamma")
    return KernelSplitting.from_dict(ker_gamma, E0.B, {c: b for b, c in restricted.items()})


def _check_splitting(sys: System, j: KernelSplitting):
    for c in sys.gamma.kernel:
        if sys.E0.p(j(c)) != c:
            raise PreconditionFailed(f"p0(j({c})) != {c}", element=c)


@dataclass(frozen=True)
class Decomposition:
    """``eps: A x Ker gamma -> p0^-1(Ker gamma)``, ``(a, c) -> i0(a) j(c)``.

    ``product`` is the direct-product carrier; its element ``(a, c)`` has index
    ``a_index * |Ker gamma| + kernel_position(c)``.
    """

    product: FiniteGroup
    kernel: Subgroup
    eps: GroupHom
    report: dict

    def pair(self, x: int) -> tuple[int, int]:
        k = len(self.kernel)
        return x // k, self.kernel.members[x % k]

    def index(self, a: int, c: int) -> int:
        return a * len(self.kernel) + self.kernel.members.index(c)


def preimage_decomposition(sys: System, j: KernelSplitting) -> Decomposition:
    E0 = sys.E0
    B0 = E0.B
    _check_splitting(sys, j)
    image = j.image
    image.require_normal("j(Ker gamma)")
    A_members = set(E0.i.map)
    meet = A_members & set(image.members)
    if meet != {0}:
        w = min(meet - {0})
        raise NotDirectProduct(f"A meets j(Ker gamma) in {w}", element=w)
    K = sys.gamma.kernel
    preimage = {b for b in B0 if E0.p(b) in K}
    nA, nK = E0.A.order, len(K)
    members = K.members
    pos = {c: k for k, c in enumerate(members)}
    G0 = sys.G0
    A = E0.A
    table = [
        [A.index(A.add(A.element(x // nK), A.element(y // nK))) * nK + pos[G0.mul(members[x % nK], members[y % nK])]
         for y in range(nA * nK)]
        for x in range(nA * nK)
    ]
    P = FiniteGroup(table, [f"({A.element(x // nK)},{members[x % nK]})" for x in range(nA * nK)])
    eps_map = [B0.mul(E0.i(x // nK), j(members[x % nK])) for x in range(nA * nK)]
    try:
        eps = GroupHom(P, B0, eps_map)
    except NotHomomorphism as exc:
        raise NotDirectProduct(f"A and j(Ker gamma) do not commute: {exc}", **exc.witness) from None
    if set(eps_map) != preimage or not eps.is_injective:
        missing = min(preimage - set(eps_map)) if preimage - set(eps_map) else None
        raise NotDirectProduct("A j(Ker gamma) is not p0^-1(Ker gamma)", element=missing)
    # diagram (cr): i' : a -> (a, 0), p' : (a, c) -> c, nu : inclusion
    eps_i = all(eps(a * nK) == E0.i(a) for a in range(nA))
    p_eps = all(E0.p(eps(x)) == members[x % nK] for x in range(nA * nK))
    report = {"A_meets_jK_trivially": True, "covers_preimage": True, "eps_i_prime": eps_i, "p0_eps": p_eps}
    return Decomposition(P, K, eps, report)


@dataclass
class ObstructionResult:
    h2map: H2Map
    f0: Cochain
    f0_class: tuple
    coker_coords: tuple
    vanishes: bool
    witness: Cochain | None = None
    witness_coords: tuple | None = None


def obstruction(sys: System, section: Section | None = None) -> ObstructionResult:
    f0 = factor_set(sys.E0, section)
    H0 = h2_cached(sys.phi0)
    H = h2_cached(sys.phi)
    gbar = h2map_cached(sys.gamma, sys.phi, sys.phi0)
    cls0 = H0.class_of(f0)
    coker = gbar.cokernel_coords(cls0)
    vanishes = not any(coker)
    res = ObstructionResult(gbar, f0, cls0, coker, vanishes)
    if vanishes:
        c = gbar.preimage(cls0)
        if c is None:
            raise AssertionError("cokernel class vanishes but no preimage found")
        f = H.cocycle(c)
        if H0.class_of(pullback(sys.gamma, f, sys.phi0)) != cls0:
            raise AssertionError("lifted witness does not pull back to [f0]")
        res.witness = f
        res.witness_coords = c
    return res


def construct_coprolongation(sys: System, f: Cochain) -> tuple[Extension, GroupHom]:
    """The crossed product ``[A, phi, f, G]`` with ``beta(i0(a) u'(x0)) = (a, gamma x0)``."""
    if f.module != sys.phi or not is_cocycle(f):
        raise WitnessInvalid("witness is not a cocycle over phi")
    E0 = sys.E0
    H0 = h2_cached(sys.phi0)
    u = canonical_section(E0)
    f0 = factor_set(E0, u)
    coords, t = H0.class_of(f0 - pullback(sys.gamma, f, sys.phi0), witness=True)
    if any(coords):
        raise WitnessInvalid("gamma^* f is not cohomologous to f0")
    # gamma^* f = f0 - d1 t is the factor set of u'(x0) = i0(-t(x0)) u(x0)
    B0 = E0.B
    u_prime = [B0.mul(E0.embed(E0.A.neg(t(x0))), u(x0)) for x0 in E0.G]
    E, _ = crossed_product(sys.phi, f)
    n = sys.G.order
    beta_map = []
    for b in B0:
        x0 = E0.p(b)
        a = E0.kernel_coords(B0.mul(b, B0.inv(u_prime[x0])))
        beta_map.append(E0.A.index(a) * n + sys.gamma(x0))
    beta = GroupHom(B0, E.B, beta_map)
    rep = check_morphism(E0, E, beta, sys.gamma)
    if not rep or not rep.beta_surjective:
        raise AssertionError(f"constructed beta fails the morphism diagram: {rep.failure}")
    return E, beta


@dataclass
class CoprolongationClassList:
    system: System
    obstruction: ObstructionResult
    kernel_generators: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    extensions: list = field(default_factory=list)

    @property
    def status(self) -> str:
        return "ok" if self.obstruction.vanishes else "NoCoprolongation"

    def __len__(self):
        return len(self.classes)


def classify(sys: System, build_extensions: bool = True) -> CoprolongationClassList:
    """All co-prolongation classes, as the coset ``witness + Ker`` in ``H^2(G, A)``."""
    ob = obstruction(sys)
    out = CoprolongationClassList(sys, ob)
    if not ob.vanishes:
        return out
    gbar = ob.h2map
    H = gbar.source
    s = H.factors
    out.kernel_generators = list(gbar.kernel_generators)
    classes = set()
    for h in gbar.kernel_elements():
        classes.add(tuple((a + b) % d for a, b, d in zip(ob.witness_coords, h, s)))
    out.classes = sorted(classes)
    if build_extensions:
        for c in out.classes:
            f = H.cocycle(c)
            if gbar.apply(c) != ob.f0_class:
                raise AssertionError(f"class {c} does not pull back to [f0]")
            E, _ = crossed_product(sys.phi, f)
            out.extensions.append(E)
    return out


def split_case_construct(sys: System, v: GroupHom, j: KernelSplitting) -> Cochain:
    """Witness ``f(x, y) = f0(v x, v y)`` for a split ``gamma`` with normal image of ``v``."""
    gamma, E0 = sys.gamma, sys.E0
    if v.source != sys.G or v.target != sys.G0:
        raise NotSplit("v is not a map G -> G0")
    if gamma.compose(v).map != tuple(range(sys.G.order)):
        raise NotSplit("gamma . v is not the identity")
    v.image.require_normal("image of v")
    _check_splitting(sys, j)
    j.image.require_normal("j(Ker gamma)")
    B0, G0 = E0.B, sys.G0
    base = canonical_section(E0)
    u_x = [base(v(x)) for x in sys.G]
    u = [0] * G0.order
    for x0 in G0:
        x = gamma(x0)
        c = G0.mul(x0, G0.inv(v(x)))
        u[x0] = B0.mul(j(c), u_x[x])
    f0 = factor_set(E0, Section(E0, u))
    f = Cochain.from_function(sys.phi, 2, lambda x, y: f0(v(x), v(y)))
    for x0, y0 in sys.phi0.tuples(2):
        if f0(x0, y0) != f0(v(gamma(x0)), v(gamma(y0))):
            raise WitnessInvalid(f"f0 does not factor through v at {(x0, y0)}", pair=(x0, y0))
    if not is_cocycle(f):
        raise WitnessInvalid("f is not a cocycle over phi")
    H0 = h2_cached(sys.phi0)
    if H0.class_of(pullback(gamma, f, sys.phi0)) != H0.class_of(f0):
        raise WitnessInvalid("gamma^* f is not cohomologous to f0")
    return f


@dataclass(frozen=True)
class RepresentativesReport:
    ok: bool
    failure: tuple | None
    conjugation_trivial: bool
    f0: Cochain

    def __bool__(self):
        return self.ok


def representatives_check(sys: System, j: KernelSplitting, v: Sequence[int]) -> RepresentativesReport:
    """Build ``u(c v(x)) = j(c) u_x`` and check the factor-set decomposition pointwise.

    ``v`` is any normalized set-section of ``gamma`` (a list indexed by G).
    """
    E0, gamma = sys.E0, sys.gamma
    B0, G0 = E0.B, sys.G0
    for c in gamma.kernel:
        if E0.p(j(c)) != c:
            raise PreconditionFailed(f"p0(j({c})) != {c}", element=c)
    v = list(v)
    if v[0] != 0 or any(gamma(v[x]) != x for x in sys.G):
        raise PreconditionFailed("v is not a normalized section of gamma")
    G = sys.G
    base = canonical_section(E0)
    u_x = [base(v[x]) for x in G]

    def split(x0):
        x = gamma(x0)
        return G0.mul(x0, G0.inv(v[x])), x

    u = [0] * G0.order
    for x0 in G0:
        c, x = split(x0)
        u[x0] = B0.mul(j(c), u_x[x])
    f0 = factor_set(E0, Section(E0, u))
    failure = None
    trivial_conj = True
    for x0, y0 in sys.phi0.tuples(2):
        c, x = split(x0)
        d, y = split(y0)
        xy = G.mul(x, y)
        s_xy = G0.prod(v[x], v[y], G0.inv(v[xy]))
        c0 = G0.prod(c, G0.conj(v[x], d), s_xy)
        if G0.mul(c0, v[xy]) != G0.mul(x0, y0) or gamma(c0) != 0:
            failure = (x0, y0, "c0")
            break
        mu = B0.conj(u_x[x], j(d))
        if mu != j(d):
            trivial_conj = False
        rhs = B0.prod(j(c), mu, B0.mul(B0.mul(u_x[x], u_x[y]), B0.inv(u_x[xy])), B0.inv(j(c0)))
        if not E0.in_kernel(rhs) or E0.kernel_coords(rhs) != f0(x0, y0):
            failure = (x0, y0, "hnt")
            break
    return RepresentativesReport(failure is None, failure, trivial_conj, f0)


def induced_crossed_module(sys: System, j: KernelSplitting) -> tuple[CrossedModule, CrossedModuleReport]:
    """``(A x Ker gamma, G0, nu p', theta)`` with ``theta_g = eps^-1 mu_b eps`` for ``p0(b) = g``."""
    dec = preimage_decomposition(sys, j)
    E0, G0 = sys.E0, sys.G0
    B0, P, eps = E0.B, dec.product, dec.eps
    back = {b: x for x, b in enumerate(eps.map)}
    nK = len(dec.kernel)
    d = GroupHom(P, G0, [dec.kernel.members[x % nK] for x in P])
    pre = {}
    for b in B0:
        pre.setdefault(E0.p(b), []).append(b)
    theta = []
    for g in G0:
        chosen = None
        for b in pre[g]:
            images = [back[B0.conj(b, eps(x))] for x in P]
            if chosen is None:
                chosen = images
            elif images != chosen:
                x = next(k for k in P if images[k] != chosen[k])
                raise ThetaIllDefined(
                    f"preimages {pre[g][0]} and {b} of {g} induce different automorphisms",
                    element=g, preimages=(pre[g][0], b), at=x,
                )
        theta.append(GroupHom(P, P, chosen))
    cm = CrossedModule(P, G0, d, tuple(theta))
    return cm, verify_crossed_module(cm)
