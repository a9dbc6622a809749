"""Generated corpora of systems and the main-path-versus-oracle sweep."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .cohomology import GModule
from .coprolongation import (
    System,
    check_morphism,
    classify,
    construct_coprolongation,
    induced_crossed_module,
    kernel_splitting,
    obstruction,
    representatives_check,
    split_case_construct,
    validate_system,
)
from .errors import ActionDoesNotFactor, GuardExceeded, NotNormal, ThetaIllDefined
from .extensions import Extension, Section, crossed_product, h2_cached, is_central
from .groups import FiniteGroup, all_homs, from_operation, hom_from_generators, normal_subgroups, quotient, small_groups
from .oracle import EnumGuard, brute_force_coprolongations
from .zlattice import FiniteAbelianGroup

COEFFICIENTS = [(), (2,), (3,), (4,), (2, 2)]


def automorphism_group(A: FiniteAbelianGroup) -> tuple[FiniteGroup, list]:
    """``Aut(A)`` as a Cayley table over coordinate matrices (identity first)."""
    k, d = A.rank, A.factors
    ident = tuple(tuple(int(r == j) for j in range(k)) for r in range(k))
    entries = [[range(d[r]) for j in range(k)] for r in range(k)]
    elems = A.elements()
    mats = []
    for flat in itertools.product(*[rng for row in entries for rng in row]):
        M = tuple(tuple(flat[r * k:(r + 1) * k]) for r in range(k))
        if any((M[r][j] * d[j]) % d[r] for r in range(k) for j in range(k)):
            continue
        images = {tuple(sum(M[r][j] * a[j] for j in range(k)) % d[r] for r in range(k)) for a in elems}
        if len(images) == len(elems):
            mats.append(M)
    mats.sort(key=lambda M: M != ident)

    def op(M, N):
        return tuple(
            tuple(sum(M[r][s] * N[s][j] for s in range(k)) % d[r] for j in range(k)) for r in range(k)
        )

    return from_operation(mats, op), mats


def module_structures(G: FiniteGroup, A: FiniteAbelianGroup) -> list[GModule]:
    """Every action of ``G`` on ``A``, trivial action first."""
    aut, mats = automorphism_group(A)
    out = []
    for h in all_homs(G, aut):
        out.append(GModule(G, A, [mats[h(g)] for g in G]))
    out.sort(key=lambda m: not m.is_trivial)
    return out


@dataclass
class Case:
    label: str
    E0: Extension
    gamma: object
    G0_name: str


def corpus(max_order: int, max_a: int = 4, groups=None):
    """Every extension class ``E0`` of ``A`` (|A| <= max_a) by ``G0`` (|G0| <= max_order),
    paired with every quotient map ``G0 -> G0/N``."""
    lib = groups if groups is not None else small_groups(max_order)
    for name, G0 in lib:
        if G0.order > max_order:
            continue
        quotients = [(N, *quotient(G0, N)) for N in normal_subgroups(G0)]
        for fac in COEFFICIENTS:
            A = FiniteAbelianGroup(fac)
            if A.order > max_a:
                continue
            for ai, m0 in enumerate(module_structures(G0, A)):
                H0 = h2_cached(m0)
                for coords in H0.elements():
                    E0, _ = crossed_product(m0, H0.cocycle(coords))
                    for N, Q, gamma in quotients:
                        label = f"G0={name} A={A} action#{ai} [f0]={list(coords)} Ker(gamma)={list(N.members)}"
                        yield Case(label, E0, gamma, name)


def random_section(E: Extension, rng: random.Random) -> Section:
    pre = {}
    for b in E.B:
        pre.setdefault(E.p(b), []).append(b)
    return Section(E, [0] + [rng.choice(pre[x]) for x in range(1, E.G.order)])


def distinct_sections(E: Extension, count: int, rng: random.Random) -> list[Section]:
    """``count`` distinct random sections, or all of them when fewer exist."""
    total = E.A.order ** (E.G.order - 1)
    want = min(count, total)
    seen = {}
    while len(seen) < want:
        s = random_section(E, rng)
        seen.setdefault(s.u, s)
    return list(seen.values())


def find_splitting(sys: System):
    """A homomorphism ``v: G -> G0`` with ``gamma v = id`` and normal image, if any."""
    G, G0, gamma = sys.G, sys.G0, sys.gamma
    gens = G.generators()
    for images in itertools.product(*[gamma.preimages(g) for g in gens]):
        v = hom_from_generators(G, G0, gens, images)
        if v is not None and gamma.compose(v).map == tuple(range(G.order)) and v.image.is_normal:
            return v
    return None


CHECKS = (
    "existence",
    "classification",
    "morphism",
    "kernel_splitting",
    "crossed_module",
    "section_independence",
    "representatives",
    "split_case",
)


@dataclass
class SweepReport:
    max_order: int
    max_a: int
    guard: int
    systems: int = 0
    excluded: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    counts: dict = field(default_factory=lambda: {c: [0, 0] for c in CHECKS})
    failures: list = field(default_factory=list)
    noncentral_coprolongable: list = field(default_factory=list)
    noncentral_identity_gamma: int = 0
    theta_ill_defined: list = field(default_factory=list)

    def record(self, check: str, ok: bool, label: str, detail: str = ""):
        self.counts[check][0 if ok else 1] += 1
        if not ok:
            self.failures.append(f"{check}: {label} {detail}".rstrip())

    @property
    def theorems_pass(self) -> bool:
        return self.counts["existence"][1] == 0 and self.counts["classification"][1] == 0

    @property
    def all_pass(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "max_order": self.max_order,
            "max_a": self.max_a,
            "guard": self.guard,
            "systems": self.systems,
            "excluded_action_does_not_factor": len(self.excluded),
            "skipped": self.skipped,
            "checks": {k: {"passed": v[0], "failed": v[1]} for k, v in self.counts.items()},
            "failures": self.failures,
            "centrality": {
                "noncentral_coprolongable_E0": self.noncentral_coprolongable,
                "noncentral_with_gamma_injective": self.noncentral_identity_gamma,
            },
            "theta_ill_defined": self.theta_ill_defined,
        }


def check_case(case: Case, report: SweepReport, guard: EnumGuard, rng: random.Random, sections: int = 3):
    label = case.label
    try:
        sys = validate_system(case.E0, case.gamma)
    except ActionDoesNotFactor:
        report.excluded.append(label)
        return
    report.systems += 1
    cl = classify(sys)
    ob = cl.obstruction
    # existence and classification against exhaustive search
    try:
        found = brute_force_coprolongations(sys, guard)
    except GuardExceeded as exc:
        report.skipped.append(f"{label}: {exc}")
        found = None
    if found is not None:
        report.record("existence", ob.vanishes == bool(found), label,
                      f"vanishes={ob.vanishes} oracle={len(found)}")
        if ob.vanishes:
            H = ob.h2map.source
            oracle_set = {H.class_of(f) for f in found}
            ok = (
                len(cl.classes) == ob.h2map.kernel_order
                and len(set(cl.classes)) == len(cl.classes)
                and set(cl.classes) == oracle_set
            )
            report.record("classification", ok, label, f"classify={cl.classes} oracle={sorted(oracle_set)}")
    # the obstruction does not depend on the section of E0
    cokers = {obstruction(sys, s).coker_coords for s in distinct_sections(sys.E0, sections, rng)}
    report.record("section_independence", len(cokers) == 1, label, f"{cokers}")
    if not ob.vanishes:
        return
    if not is_central(sys.E0):
        if len(sys.gamma.kernel) > 1:
            report.noncentral_coprolongable.append(label)
        else:
            report.noncentral_identity_gamma += 1
    H = ob.h2map.source
    j = None
    for c in cl.classes:
        E, beta = construct_coprolongation(sys, H.cocycle(c))
        mrep = check_morphism(sys.E0, E, beta, sys.gamma)
        report.record("morphism", mrep.ok and mrep.beta_surjective, label, f"{mrep.failure}")
        j = kernel_splitting(sys.E0, E, beta, sys.gamma)
        ok = all(sys.E0.p(j(k)) == k for k in sys.gamma.kernel) and set(j.image) == set(beta.kernel)
        report.record("kernel_splitting", ok, label)
        try:
            _, rep = induced_crossed_module(sys, j)
            report.record("crossed_module", rep.ok, label, f"{rep.axiom} at {rep.instance}")
        except ThetaIllDefined as exc:
            report.theta_ill_defined.append(f"{label}: {exc} {exc.witness}")
            report.record("crossed_module", True, label)
    v_any = [0] + [rng.choice(sys.gamma.preimages(x)) for x in range(1, sys.G.order)]
    report.record("representatives", representatives_check(sys, j, v_any).ok, label)
    v = find_splitting(sys)
    if v is not None:
        try:
            f = split_case_construct(sys, v, j)
        except NotNormal:
            return
        ok = ob.h2map.apply(H.class_of(f)) == ob.f0_class
        report.record("split_case", ok, label)


@dataclass(frozen=True)
class SweepConfig:
    """Bounds and seeds for one corpus sweep."""

    max_order: int = 4
    max_a: int = 4
    guard: int = 2**20
    seed: int = 0
    sections: int = 3

    def run(self, progress=None) -> SweepReport:
        report = SweepReport(self.max_order, self.max_a, self.guard)
        g = EnumGuard(self.guard)
        rng = random.Random(self.seed)
        for case in corpus(self.max_order, self.max_a):
            check_case(case, report, g, rng, self.sections)
            if progress is not None:
                progress(case)
        return report


def sweep(max_order: int = 4, guard: int = 2**20, max_a: int = 4, seed: int = 0,
          sections: int = 3, progress=None) -> SweepReport:
    return SweepConfig(max_order, max_a, guard, seed, sections).run(progress)
