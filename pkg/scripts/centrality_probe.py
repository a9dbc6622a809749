"""List co-prolongable E0 that are not central, with the evidence.

For each hit: the middle group of E0, the action of G0 on A, Ker(gamma), and
the co-prolongations found (their middle groups and whether the induced
crossed module checks out).  Cases where gamma is injective are skipped since
there E itself is a co-prolongation and centrality plays no role.

    python scripts/centrality_probe.py --max-order 6
"""

import argparse

from coprolong.coprolongation import classify, construct_coprolongation, induced_crossed_module, kernel_splitting, validate_system
from coprolong.corpus import corpus
from coprolong.errors import ActionDoesNotFactor, ThetaIllDefined
from coprolong.extensions import is_central
from coprolong.groups import structure_tag


def probe(max_order, max_a):
    for case in corpus(max_order, max_a):
        try:
            sys_ = validate_system(case.E0, case.gamma)
        except ActionDoesNotFactor:
            continue
        if is_central(sys_.E0) or len(sys_.gamma.kernel) == 1:
            continue
        cl = classify(sys_)
        if not cl.obstruction.vanishes:
            continue
        found = []
        H = cl.obstruction.h2map.source
        for c in cl.classes:
            E, beta = construct_coprolongation(sys_, H.cocycle(c))
            try:
                _, rep = induced_crossed_module(sys_, kernel_splitting(sys_.E0, E, beta, sys_.gamma))
                cm = "ok" if rep.ok else f"fails {rep.axiom}"
            except ThetaIllDefined:
                cm = "theta ill-defined"
            found.append((c, structure_tag(E.B), cm))
        yield case, sys_, found


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--max-a", type=int, default=4)
    args = ap.parse_args(argv)
    hits = 0
    for case, sys_, found in probe(args.max_order, args.max_a):
        hits += 1
        phi0 = sys_.phi0
        moving = [x for x in sys_.G0 if phi0.action[x] != phi0.action[0]]
        print(case.label)
        print(f"  B0 = {structure_tag(sys_.E0.B)}; G0 elements acting nontrivially on A: {moving}")
        print(f"  Ker(gamma) = {list(sys_.gamma.kernel.members)}; classes: "
              + "; ".join(f"{c} -> B = {tag}, crossed module {cm}" for c, tag, cm in found))
    print(f"{hits} non-central co-prolongable E0 with nontrivial Ker(gamma)")


if __name__ == "__main__":
    main()
