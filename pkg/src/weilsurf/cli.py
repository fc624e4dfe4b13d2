"""weilsurf command line.

Exit codes: 0 success, 2 usage error, 3 domain rejection (not a Weil number,
unsupported center), 4 table mismatch against the golden fixture.

Output grammar: rationals as "a/b"; fields as "Q", "Q(sqrt D)",
"Q(sqrt M, sqrt -N)", "Q(zeta N)"; quaternion algebras as "(a,b / F)".
"""

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import amitsur, classify, quat
from .arith import fraction_str
from .fields import field_from_label
from .groups import identify, parse_id, reference_fingerprint
from .weil import NotWeilError, PrimePower, UnsupportedCenterError, local_invariants, parse_pi

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_MISMATCH = 0, 2, 3, 4

PI_GRAMMAR = "sqrt | -sqrt | beta:<int> | surd:<u>,<v> | zeta:<n> | poly:<c_n,...,c_0>"


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class MismatchError(Exception):
    pass


@dataclass(frozen=True)
class OutputConfig:
    json: bool = False
    indent: int = 2


def canonical(x):
    """JSON-ready copy: Fractions as "a/b", tuples as lists, keys as strings."""
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, dict):
        return {str(k): canonical(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [canonical(v) for v in x]
    return x


def document(command, inputs, results, witnesses=()):
    return canonical(
        {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "inputs": inputs,
            "results": results,
            "witnesses": list(witnesses),
        }
    )


def dumps(doc, indent=2):
    return json.dumps(doc, sort_keys=True, indent=indent)


def render_text(doc):
    lines = [f"# {doc['command']} " + " ".join(f"{k}={v}" for k, v in sorted(doc["inputs"].items()))]
    res = doc["results"]
    rows = res.get("rows") if isinstance(res, dict) else None
    for k in sorted(res):
        if k != "rows":
            lines.append(f"{k}: {_flat(res[k])}")
    for row in rows or ():
        lines.append("  ".join(f"{k}={_flat(row[k])}" for k in sorted(row)))
    for w in doc["witnesses"]:
        lines.append(f"witness row {w['row']}: " + "; ".join(w["checks"]))
    return "\n".join(lines)


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(v[k])}" for k in sorted(v)) + "}"
    return str(v)


# ------------------------------------------------------------------ commands


def _prime_power(text):
    try:
        return PrimePower.of(int(text))
    except ValueError as exc:
        raise UsageError(f"q must be a prime power: {text}") from exc


def cmd_elliptic(args):
    q = _prime_power(args.q)
    if q.q > classify.MAX_ELLIPTIC_Q:
        raise UsageError(f"q={q.q} exceeds 2^31")
    rows = []
    for c in classify.elliptic_isogeny_classes(q):
        g, _ = classify.class_aut_group(c)
        rows.append(
            {
                "beta": c.beta,
                "kind": c.kind,
                "end_algebra": c.end_label(),
                "aut_group": g.name(),
                "condition": c.condition,
            }
        )
    groups = sorted({r["aut_group"] for r in rows})
    return document("elliptic", {"q": q.q}, {"rows": rows, "groups": groups})


def cmd_weil(args):
    q = _prime_power(args.q)
    try:
        spec = parse_pi(args.pi, q)
    except ValueError as exc:
        raise UsageError(f"bad --pi {args.pi!r}; expected {PI_GRAMMAR}") from exc
    try:
        desc = local_invariants(spec)
    except (NotWeilError, UnsupportedCenterError) as exc:
        raise DomainError(str(exc)) from exc
    h = desc.minimal_polynomial
    res = {
        "pi": spec.describe(),
        "h": list(h.coeffs),
        "center": desc.center.label(),
        "invariants": {t: x for t, x in desc.invariants},
        "d": desc.d,
        "e": desc.e,
        "g": desc.g,
        "albert_type": desc.albert_type,
        "commutative": desc.commutative,
    }
    return document("weil", {"q": q.q, "pi": args.pi}, res)


def _witness_dict(w):
    return {
        "row": w.row,
        "group": w.group.name(),
        "q": w.q,
        "weil": w.weil,
        "algebra": w.algebra,
        "order": w.order,
        "constructive": w.constructive,
        "maximal_order": w.maximal_order,
        "source": w.source,
        "checks": list(w.checks),
    }


def cmd_tables(args):
    fn = classify.PIPELINES[args.table]
    try:
        report = fn(verify=args.verify_witnesses)
    except classify.WitnessError as exc:
        raise MismatchError(str(exc)) from exc
    rows = [{"row": i, "group": g.name(), "pretty": g.pretty()} for i, g in enumerate(report.groups, 1)]
    res = {"case": report.case, "count": len(rows), "rows": rows}
    notes = report.notes
    if args.table == 13:
        res["identity"] = notes["identity"]
        res["real_dihedral_embeds"] = notes["real_dihedral_embeds"]
    if args.table == 11:
        res["excluded"] = [list(p) for p in notes["dropped"]]
    if args.table == 2:
        res["p_constraint"] = {k: ("-" if v is None else v) for k, v in notes["p_constraint"].items()}
    try:
        golden = classify.load_golden_tables()
    except FileNotFoundError as exc:
        raise MismatchError(f"golden tables not found: {exc.filename}") from exc
    res["golden_match"] = classify.matches_golden(args.table, report, golden)
    witnesses = [_witness_dict(w) for w in report.witnesses] if args.verify_witnesses else []
    doc = document("tables", {"table": args.table, "verify_witnesses": args.verify_witnesses}, res, witnesses)
    if not res["golden_match"]:
        raise MismatchError(f"table {args.table} does not match the golden fixture", doc)
    return doc


def cmd_embed(args):
    try:
        gid = parse_id(args.group)
        center = field_from_label(args.center)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    if gid.name() not in amitsur.PROPER_SUPERGROUPS:
        raise UsageError(f"{args.group} is not a quaternion-case candidate")
    try:
        cands = amitsur.quaternion_finite_subgroups(center)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    trace = []
    for k, _ in sorted(reference_fingerprint(gid).histogram):
        ok = amitsur.admits_element_of_order(k, center)
        trace.append(f"element order {k}: {'ok' if ok else 'needs a larger real subfield'}")
    admissible = amitsur.admissible_in_quaternion(gid, center)
    res = {
        "group": gid.name(),
        "center": center.label(),
        "verdict": "admissible" if admissible else "not admissible",
        "maximal": amitsur.maximal_in_quaternion(gid, center),
        "in_candidate_list": gid in cands,
        "trace": trace,
    }
    return document("embed", {"group": args.group, "center": args.center}, res)


def cmd_units(args):
    try:
        order = quat.builtin_order(args.order)
    except KeyError as exc:
        raise UsageError(f"unknown order {args.order!r}; known: {', '.join(quat.BUILTIN_KEYS)}") from exc
    G = quat.unit_group(order)
    res = {
        "order": args.order,
        "algebra": order.algebra.label(),
        "count": G.order,
        "group": identify(G).name(),
        "reduced_discriminant": quat.reduced_discriminant(order),
        "maximal": quat.is_maximal_order(order),
    }
    return document("units", {"order": args.order}, res)


# ------------------------------------------------------------------- parsing


def build_parser():
    ap = argparse.ArgumentParser(
        prog="weilsurf",
        description="Automorphism groups of abelian surfaces over finite fields.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("elliptic", help="isogeny classes of elliptic curves over F_q")
    p.add_argument("--q", required=True)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_elliptic)

    p = sub.add_parser("weil", help="endomorphism algebra of a Weil number")
    p.add_argument("--q", required=True)
    p.add_argument("--pi", required=True, help=PI_GRAMMAR)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("tables", help="regenerate a classification table")
    p.add_argument("--table", type=int, required=True, choices=sorted(classify.PIPELINES))
    p.add_argument("--verify-witnesses", action="store_true")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("embed", help="is a finite group admissible in a quaternion algebra over a center")
    p.add_argument("--group", required=True)
    p.add_argument("--center", required=True, help="Q, Qsqrt2, Q(sqrt 5), ...")
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("units", help="torsion unit group of a builtin order")
    p.add_argument("--order", required=True, help=", ".join(quat.BUILTIN_KEYS))
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    p.set_defaults(func=cmd_units)
    return ap


def emit(doc, cfg, out):
    out.write((dumps(doc, cfg.indent) if cfg.json else render_text(doc)) + "\n")


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = OutputConfig(json=args.json)
    try:
        doc = args.func(args)
    except UsageError as exc:
        err.write(f"weilsurf: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        err.write(f"weilsurf: rejected: {exc}\n")
        return EXIT_DOMAIN
    except MismatchError as exc:
        if len(exc.args) > 1:
            emit(exc.args[1], cfg, out)
        err.write(f"weilsurf: {exc.args[0]}\n")
        return EXIT_MISMATCH
    emit(doc, cfg, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
