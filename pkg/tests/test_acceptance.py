"""Acceptance criteria 1-9.

Each test prints one ``criterion N: PASS|FAIL`` line, and the same lines are
repeated in the terminal summary.  All comparisons are exact; the sweep
criteria require 100% agreement with exhaustive search.
"""

import contextlib
import math
import random

import pytest

from conftest import ACCEPTANCE, gamma_z4_z2, split_z4_extension, z8_extension
from coprolong.cli import main
from coprolong.cohomology import GModule, h2
from coprolong.coprolongation import classify, validate_system
from coprolong.corpus import distinct_sections, module_structures, sweep
from coprolong.extensions import crossed_product, factor_set
from coprolong.groups import abelian, cyclic, small_groups, structure_tag
from coprolong.oracle import brute_force_h2, enumerate_cocycles, extension_census
from coprolong.zlattice import FiniteAbelianGroup

SWEEP_ORDER = 6
Z3_Z4_LABEL = "G0=Z4 A=Z3 action#1 [f0]=[] Ker(gamma)=[0, 2]"


@contextlib.contextmanager
def criterion(n, summary):
    try:
        yield
    except BaseException as exc:
        line = f"criterion {n}: FAIL  {summary} ({type(exc).__name__}: {exc})".splitlines()[0]
        ACCEPTANCE[n] = line
        print(line)
        raise
    line = f"criterion {n}: PASS  {summary}"
    ACCEPTANCE[n] = line
    print(line)


@pytest.fixture(scope="module")
def report():
    return sweep(SWEEP_ORDER)


def test_criterion_1_h2_orders():
    with criterion(1, "H2(Z/n, Z/m) has order gcd(n, m) for n, m in 2..6; oracle agrees for n, m <= 4"):
        for n in range(2, 7):
            for m in range(2, 7):
                mod = GModule(cyclic(n), FiniteAbelianGroup((m,)))
                H = h2(mod)
                assert H.order == math.gcd(n, m), (n, m, H.factors)
                if n <= 4 and m <= 4:
                    order, reps = brute_force_h2(mod)
                    assert order == H.order
                    assert sorted(H.class_of(f) for f in reps) == sorted(H.elements())


def test_criterion_2_census():
    with criterion(2, "Z/2 by Z/2 gives exactly Z2xZ2 and Z4; H2(Z2xZ2, Z/2) has order 8"):
        census = extension_census(GModule(cyclic(2), FiniteAbelianGroup((2,))))
        assert sorted(structure_tag(E.B) for E, _ in census) == ["Z2xZ2", "Z4"]
        klein = GModule(abelian((2, 2)), FiniteAbelianGroup((2,)))
        assert h2(klein).order == 8 == brute_force_h2(klein)[0]


def test_criterion_3_round_trip():
    with criterion(3, "factor_set(crossed_product(m, f)) == f for every cocycle, |G| <= 4, |A| <= 3"):
        total = 0
        for _, G in small_groups(4):
            for fac in [(), (2,), (3,)]:
                for m in module_structures(G, FiniteAbelianGroup(fac)):
                    for f in enumerate_cocycles(m):
                        E, s = crossed_product(m, f)
                        assert factor_set(E, s) == f, (m, f)
                        total += 1
        assert total > 0


def test_criterion_4_obstruction_vs_search(report):
    passed, failed = report.counts["existence"]
    with criterion(4, f"obstruction vanishing matches exhaustive search in {passed}/{passed + failed} "
                      f"systems (|G0| <= {SWEEP_ORDER}, |A| <= 4), {len(report.skipped)} skipped by guard"):
        assert failed == 0 and passed == report.systems - len(report.skipped) > 0
        for s in report.skipped:
            print(f"  skipped: {s}")


def test_criterion_5_torsor(report):
    passed, failed = report.counts["classification"]
    with criterion(5, f"classify returns |Ker| distinct classes equal to the oracle set in "
                      f"{passed}/{passed + failed} vanishing systems; flagship 2 and 0 classes"):
        assert failed == 0 and passed > 0
        assert len(classify(validate_system(split_z4_extension(), gamma_z4_z2()))) == 2
        cl = classify(validate_system(z8_extension(), gamma_z4_z2()))
        assert len(cl) == 0 and cl.status == "NoCoprolongation"


def test_criterion_6_morphisms(report):
    mp, mf = report.counts["morphism"]
    kp, kf = report.counts["kernel_splitting"]
    with criterion(6, f"{mp}/{mp + mf} constructed morphisms valid with surjective beta; "
                      f"{kp}/{kp + kf} kernel splittings with p0 j = id and Im j = Ker beta"):
        assert mf == 0 and kf == 0 and mp == kp > 0


def test_criterion_7_crossed_modules(report):
    passed, failed = report.counts["crossed_module"]
    with criterion(7, f"{passed}/{passed + failed} induced crossed modules pass or report theta "
                      f"ill-defined with a witness ({len(report.theta_ill_defined)} reported)"):
        assert failed == 0 and passed > 0
        for s in report.theta_ill_defined:
            assert "{" in s and "}" in s, s


def test_criterion_8_section_independence(report):
    passed, failed = report.counts["section_independence"]
    with criterion(8, f"coker_coords identical across 3 distinct random sections (all, when fewer exist) in "
                      f"{passed}/{passed + failed} systems"):
        assert failed == 0 and passed == report.systems


def test_criterion_9_centrality_report(capsys):
    code = main(["verify", "--max-order", str(SWEEP_ORDER)])
    out = capsys.readouterr().out
    with criterion(9, "verify at max order 6 emits the centrality diagnostic, lists the "
                      "Z/3 x| Z/4 instance, and exits 0"):
        assert code == 0
        assert "centrality diagnostic" in out
        assert Z3_Z4_LABEL in out
        assert "theorem checks: PASS" in out


def test_sections_are_distinct():
    # criterion 8 needs genuinely different sections whenever they exist
    us = [s.u for s in distinct_sections(split_z4_extension(), 3, random.Random(0))]
    assert len(set(us)) == 3
