"""Command-line front end.

Exit codes: 0 success, 1 a theorem check disagreed with the oracle (``verify``
only), 2 invalid input.
"""

from __future__ import annotations

import argparse
import sys
import time

from .cohomology import Cochain
from .coprolongation import classify, construct_coprolongation, induced_crossed_module, kernel_splitting
from .corpus import SweepConfig
from .errors import AlgebraError, ThetaIllDefined
from .extensions import crossed_product, h2_cached, is_central
from .groups import structure_tag
from .workspace import cochain_to_json, dumps, extension_to_json, load_workspace


def cyclic_sum(factors) -> str:
    return " x ".join(f"Z/{d}" for d in factors) if factors else "0"


def format_value(v) -> str:
    return str(v[0]) if len(v) == 1 else "(" + ",".join(map(str, v)) + ")"


def format_cochain(c: Cochain, symbol: str = "f") -> str:
    parts = [
        f"{symbol}({','.join(map(str, xs))})={format_value(v)}"
        for xs, v in zip(c.module.tuples(c.degree), c.values)
        if any(v)
    ]
    return ", ".join(parts) if parts else "0"


def coords_str(c) -> str:
    return "(" + ",".join(map(str, c)) + ")"


def tag(G) -> str:
    t = structure_tag(G)
    return t if t is not None else f"order {G.order}"


# --- commands -----------------------------------------------------------------

def cmd_group_validate(args):
    ws = load_workspace(args.files)
    name, G = ws.pick("groups", args.name)
    perm = ws.perms[name]
    data = {
        "name": name,
        "order": G.order,
        "abelian": G.is_abelian,
        "tag": structure_tag(G),
        "reindex": perm,
        "generators": G.generators(),
    }
    lines = [f"group {name}: valid, order {G.order}, {tag(G)}"]
    if perm != list(range(G.order)):
        lines.append(f"identity moved to index 0; new index of each input element: {perm}")
    return data, lines


def cmd_hom_validate(args):
    ws = load_workspace(args.files)
    name, h = ws.pick("homs", args.name)
    data = {
        "name": name,
        "kernel": list(h.kernel.members),
        "image": list(h.image.members),
        "injective": h.is_injective,
        "surjective": h.is_surjective,
    }
    kind = "isomorphism" if h.is_injective and h.is_surjective else (
        "surjective" if h.is_surjective else "injective" if h.is_injective else "neither injective nor surjective")
    lines = [
        f"hom {name}: valid, {tag(h.source)} -> {tag(h.target)}, {kind}",
        f"kernel {list(h.kernel.members)}; image {list(h.image.members)}",
    ]
    return data, lines


def cmd_h2(args):
    ws = load_workspace(args.files)
    name, m = ws.pick("modules", args.name)
    H = h2_cached(m)
    data = {
        "module": name,
        "factors": list(H.factors),
        "order": H.order,
        "generators": [cochain_to_json(g) for g in H.generators],
    }
    line = f"H2 = {cyclic_sum(H.factors)}"
    if H.factors:
        line += "; generators: " + "; ".join(format_cochain(g) for g in H.generators)
    return data, [line]


def cmd_extension_classes(args):
    ws = load_workspace(args.files)
    name, m = ws.pick("modules", args.name)
    H = h2_cached(m)
    classes = []
    lines = [f"H2 = {cyclic_sum(H.factors)}; {H.order} extension class(es) of {m.A} by {tag(m.G)}"]
    for c in H.elements():
        f = H.cocycle(c)
        E, _ = crossed_product(m, f)
        classes.append({"coords": list(c), "cocycle": cochain_to_json(f), "extension": extension_to_json(E)})
        lines.append(f"  class {coords_str(c)}: B = {tag(E.B)}; f: {format_cochain(f)}")
    return {"module": name, "factors": list(H.factors), "classes": classes}, lines


def _obstruction_data(name, cl):
    ob = cl.obstruction
    gbar = ob.h2map
    return {
        "system": name,
        "vanishes": ob.vanishes,
        "status": cl.status,
        "h2_G": list(gbar.source.factors),
        "h2_G0": list(gbar.target.factors),
        "f0_class": list(ob.f0_class),
        "kernel_factors": list(gbar.kernel_factors),
        "coker_factors": list(gbar.cokernel_factors),
        "coker_coords": list(ob.coker_coords),
        "witness": cochain_to_json(ob.witness) if ob.vanishes else None,
        "witness_coords": list(ob.witness_coords) if ob.vanishes else None,
    }


def _obstruction_line(cl) -> str:
    ob = cl.obstruction
    coker = cyclic_sum(ob.h2map.cokernel_factors)
    if ob.vanishes:
        return (f"vanishes: true; witness [f] = {coords_str(ob.witness_coords)} in H2 = "
                f"{cyclic_sum(ob.h2map.source.factors)}; Coker ≅ {coker}")
    return f"vanishes: false; obstruction = {coords_str(ob.coker_coords)} in Coker ≅ {coker}"


def cmd_obstruction(args):
    ws = load_workspace(args.files)
    name, sys_ = ws.pick("systems", args.name)
    cl = classify(sys_, build_extensions=False)
    lines = [_obstruction_line(cl)]
    if cl.obstruction.vanishes:
        lines.append(f"witness cocycle: {format_cochain(cl.obstruction.witness)}")
    return _obstruction_data(name, cl), lines


def cmd_classify(args):
    ws = load_workspace(args.files)
    name, sys_ = ws.pick("systems", args.name)
    cl = classify(sys_)
    data = _obstruction_data(name, cl)
    central = is_central(sys_.E0)
    cm_ok = None
    theta = None
    classes = []
    lines = [f"vanishes: {str(cl.obstruction.vanishes).lower()}; classes: {len(cl.classes)}"]
    if not cl.obstruction.vanishes:
        lines[0] += " (no co-prolongation)"
        lines.append(_obstruction_line(cl))
    H = cl.obstruction.h2map.source
    for c, E in zip(cl.classes, cl.extensions):
        classes.append({"coords": list(c), "extension": extension_to_json(E)})
        lines.append(f"  [f] = {coords_str(c)}: B = {tag(E.B)}; f: {format_cochain(H.cocycle(c))}")
    if cl.classes:
        E, beta = construct_coprolongation(sys_, H.cocycle(cl.classes[0]))
        j = kernel_splitting(sys_.E0, E, beta, sys_.gamma)
        try:
            _, rep = induced_crossed_module(sys_, j)
            cm_ok = rep.ok
            if not rep.ok:
                theta = f"{rep.axiom} fails at {rep.instance}"
        except ThetaIllDefined as exc:
            cm_ok = False
            theta = f"{exc} {exc.witness}"
    data["classes"] = classes
    data["diagnostics"] = {"E0_central": central, "crossed_module_ok": cm_ok}
    if theta is not None:
        data["diagnostics"]["crossed_module_failure"] = theta
    lines.append(f"E0 central: {str(central).lower()}; induced crossed module: "
                 + ("n/a" if cm_ok is None else "ok" if cm_ok else f"fails ({theta})"))
    return data, lines


def cmd_verify(args):
    t0 = time.perf_counter()
    config = SweepConfig(args.max_order, args.max_a, args.guard, args.seed)
    report = config.run()
    elapsed = time.perf_counter() - t0
    data = report.to_dict()
    lines = [
        f"verify: |G0| <= {report.max_order}, |A| <= {report.max_a}, guard {report.guard}",
        f"systems checked: {report.systems}; excluded (action does not factor through gamma): "
        f"{len(report.excluded)}; skipped by guard: {len(report.skipped)}",
    ]
    for check, (ok, bad) in report.counts.items():
        lines.append(f"  {check:<22} pass {ok:>5}  fail {bad:>3}")
    for s in report.skipped:
        lines.append(f"  skipped: {s}")
    for f in report.failures:
        lines.append(f"  FAIL {f}")
    lines.append("centrality diagnostic (E0 co-prolongable but not central, Ker gamma nontrivial): "
                 f"{len(report.noncentral_coprolongable)} found")
    lines.extend(f"  {s}" for s in report.noncentral_coprolongable)
    lines.append(f"  (plus {report.noncentral_identity_gamma} non-central E0 with injective gamma)")
    lines.append(f"theta ill-defined: {len(report.theta_ill_defined)}")
    lines.extend(f"  {s}" for s in report.theta_ill_defined)
    lines.append(f"theorem checks: {'PASS' if report.theorems_pass else 'FAIL'}")
    print(f"elapsed {elapsed:.1f}s", file=sys.stderr)
    return data, lines, (0 if report.theorems_pass else 1)


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--output", metavar="PATH", help="write the report to PATH instead of stdout")

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("files", nargs="+", help="JSON workspace files (merged in order)")
    files.add_argument("--name", help="object to use when a file defines several")

    parser = argparse.ArgumentParser(prog="coprolong", description="Co-prolongations of group extensions.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group").add_subparsers(dest="action", required=True)
    g.add_parser("validate", parents=[common, files]).set_defaults(func=cmd_group_validate)
    h = sub.add_parser("hom").add_subparsers(dest="action", required=True)
    h.add_parser("validate", parents=[common, files]).set_defaults(func=cmd_hom_validate)
    sub.add_parser("h2", parents=[common, files]).set_defaults(func=cmd_h2)
    e = sub.add_parser("extension").add_subparsers(dest="action", required=True)
    e.add_parser("classes", parents=[common, files]).set_defaults(func=cmd_extension_classes)
    c = sub.add_parser("coprolong").add_subparsers(dest="action", required=True)
    c.add_parser("obstruction", parents=[common, files]).set_defaults(func=cmd_obstruction)
    c.add_parser("classify", parents=[common, files]).set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", parents=[common])
    v.add_argument("--max-order", type=int, default=4, help="largest |G0| in the corpus (<= 8)")
    v.add_argument("--guard", type=int, default=2**20, help="oracle enumeration cap")
    v.add_argument("--max-a", type=int, default=4, help="largest |A| in the corpus")
    v.add_argument("--seed", type=int, default=0, help="seed for the random sections")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not (1 <= args.max_order <= 8 and args.guard > 0 and args.max_a >= 1):
        parser.error("--max-order must be in 1..8, --guard and --max-a positive")
    try:
        result = args.func(args)
    except (AlgebraError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    data, lines, code = result if len(result) == 3 else (*result, 0)
    text = dumps(data) if args.json else "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
