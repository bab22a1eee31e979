"""Command-line interface: ``fusionkit {validate,construct,analyze,classify,factor,grade,enumerate}``.

Exit codes: 0 success, 1 semantic failure (axiom or theorem violation),
2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .constructors import fibonacci_ring, group_ring, is_generalized_TY, ising_ring, tambara_yamagami_ring, zq_extension_witness
from .groups import parse_group
from .modular import (
    MetricGroup,
    ising_modular_data,
    modular_product,
    muger_center,
    pointed_modular_from_metric_group,
    validate_modular,
)
from .ring import (
    TypeSignature,
    classify_integrality,
    fpdim_ring,
    fpdims,
    is_commutative,
    is_pointed,
    type_signature,
    validate,
)
from .structure import (
    GradingError,
    adjoint_subring,
    deligne_product,
    factorizations,
    gradings_by_group,
    nilpotency_series,
    pointed_part,
    universal_grading,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
ANALYZE_PRIMES = (2, 3, 5, 7)


class InputError(Exception):
    pass


def _load(path: str) -> io.RingFile:
    try:
        return io.load(path)
    except io.FormatError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(text: str, out: str | None):
    if out:
        io.write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _fmt_set(labels) -> str:
    return "{" + ", ".join(labels) + "}"


# -- validate -------------------------------------------------------------------


def cmd_validate(args) -> int:
    rf = _load(args.path)
    violations = list(validate(rf.ring))
    if rf.modular is not None and not violations:
        violations = validate_modular(rf.modular, order_bound=args.order_bound)
    name = rf.name or args.path
    if args.json:
        payload = {"name": name, "valid": not violations, "violations": [vars(v) | {"witness": list(v.witness)} for v in violations]}
        print(json.dumps(payload, ensure_ascii=False))
    elif violations:
        print(f"{name}: {len(violations)} violation(s)")
        for v in violations[: args.limit]:
            print(f"  {v}")
    else:
        kind = "modular data" if rf.modular is not None else "fusion ring"
        print(f"{name}: valid {kind}")
    return EXIT_FAIL if violations else EXIT_OK


# -- construct ------------------------------------------------------------------


def _parse_turns(values) -> list[Fraction]:
    try:
        return [Fraction(v) for v in values]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad fraction in {values}") from exc


def _parse_pairs(values) -> dict:
    out = {}
    for item in values or []:
        try:
            i, j, v = item.split(":")
            out[(int(i), int(j))] = Fraction(v)
        except ValueError as exc:
            raise InputError(f"pairing {item!r} should look like i:j:turns") from exc
    return out


def _construct(args) -> io.RingFile:
    kind = args.kind
    try:
        if kind == "group":
            ring = group_ring(parse_group(args.group))
            return io.RingFile(ring, None, {"name": ring.name})
        if kind == "ty":
            ring = tambara_yamagami_ring(parse_group(args.group))
            return io.RingFile(ring, None, {"name": ring.name})
        if kind == "fibonacci":
            ring = fibonacci_ring()
            return io.RingFile(ring, None, {"name": ring.name})
        if kind == "ising":
            if args.zeta is None:
                ring = ising_ring()
                return io.RingFile(ring, None, {"name": "Ising"})
            md = ising_modular_data(args.zeta)
            return io.RingFile(md.ring, md, {"name": md.name})
        if kind == "metric":
            if not args.factors:
                raise InputError("metric needs --factors")
            mg = MetricGroup.from_generators(args.factors, _parse_turns(args.q or []), _parse_pairs(args.b))
            md = pointed_modular_from_metric_group(mg)
            name = f"metric {mg.group.describe()}"
            return io.RingFile(md.ring, md, {"name": name, "provenance": repr(mg)})
        if kind == "product":
            if len(args.inputs) != 2:
                raise InputError("product needs exactly two input files")
            a, b = (_load(p) for p in args.inputs)
            name = f"{a.name}⊠{b.name}"
            if a.modular is not None and b.modular is not None:
                md = modular_product(a.modular, b.modular)
                return io.RingFile(md.ring, md, {"name": name})
            return io.RingFile(deligne_product(a.ring, b.ring), None, {"name": name})
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"unknown construction {kind!r}")


def cmd_construct(args) -> int:
    rf = _construct(args)
    _emit(io.dumps(rf), args.out)
    if args.out:
        print(f"wrote {rf.name} (rank {rf.ring.rank}) to {args.out}", file=sys.stderr)
    return EXIT_OK


# -- analyze --------------------------------------------------------------------


def analyze_ring(rf: io.RingFile) -> dict:
    ring = rf.ring
    dims = fpdims(ring)
    info: dict = {
        "name": rf.name,
        "rank": ring.rank,
        "type": str(type_signature(ring)),
        "fpdims": {ring.labels[i]: str(d) for i, d in enumerate(dims)},
        "fpdim": str(fpdim_ring(ring)),
        "integrality": classify_integrality(ring).value,
        "commutative": is_commutative(ring),
        "pointed": is_pointed(ring),
        "pointed_part": list(pointed_part(ring).labels),
        "adjoint_subring": list(adjoint_subring(ring).labels),
    }
    try:
        U = universal_grading(ring)
        info["universal_grading"] = {
            "group": U.group.describe(),
            "order": U.group.order,
            "components": [[ring.labels[i] for i in comp] for comp in U.components],
        }
    except GradingError as exc:
        info["universal_grading"] = {"error": str(exc)}
    nil = nilpotency_series(ring)
    info["nilpotency"] = {
        "series": [list(s.labels) for s in nil.series],
        "nilpotent": nil.nilpotent,
        "class": nil.nilpotency_class,
        "cyclically_nilpotent": nil.cyclically_nilpotent,
    }
    w = is_generalized_TY(ring)
    info["generalized_TY"] = None if w is None else {
        "stabilizer": [ring.labels[i] for i in w.stabilizer],
        "invertibles": w.invertibles,
        "index": w.index,
    }
    ext = {}
    for q in ANALYZE_PRIMES:
        hit = zq_extension_witness(ring, q)
        if hit is not None:
            ext[str(q)] = list(hit[1].labels)
    info["pointed_extensions"] = ext
    if rf.modular is not None:
        bad = validate_modular(rf.modular)
        info["modular"] = {"valid": not bad, "muger_center": list(muger_center(rf.modular).labels) if not bad else None}
    return info


def _analysis_text(info: dict) -> str:
    lines = [f"{info['name'] or 'ring'}: rank {info['rank']}, type {info['type']}, fpdim {info['fpdim']}"]
    lines.append("  dimensions: " + ", ".join(f"{k}={v}" for k, v in info["fpdims"].items()))
    lines.append(f"  integrality: {info['integrality']}; commutative: {info['commutative']}; pointed: {info['pointed']}")
    lines.append(f"  pointed part: {_fmt_set(info['pointed_part'])}")
    lines.append(f"  adjoint subring: {_fmt_set(info['adjoint_subring'])}")
    U = info["universal_grading"]
    if "error" in U:
        lines.append(f"  universal grading: {U['error']}")
    else:
        comps = "; ".join(_fmt_set(c) for c in U["components"])
        lines.append(f"  universal grading: U = {U['group']} (order {U['order']}), components {comps}")
    nil = info["nilpotency"]
    series = " > ".join(_fmt_set(s) for s in nil["series"])
    if nil["nilpotent"]:
        cyc = ", cyclically nilpotent" if nil["cyclically_nilpotent"] else ""
        lines.append(f"  nilpotent, class {nil['class']}{cyc}: {series}")
    else:
        lines.append(f"  not nilpotent: {series}")
    g = info["generalized_TY"]
    if g is None:
        lines.append("  generalized TY: no")
    else:
        lines.append(f"  generalized TY: yes, stabilizer {_fmt_set(g['stabilizer'])}, [G:N] = {g['index']}")
    ext = info["pointed_extensions"]
    if ext:
        parts = [f"Z{q} over {_fmt_set(c0)}" for q, c0 in ext.items()]
        lines.append("  Z_q-extensions of pointed rings: " + "; ".join(parts))
    else:
        lines.append(f"  Z_q-extensions of pointed rings (q <= {ANALYZE_PRIMES[-1]}): none")
    if "modular" in info:
        m = info["modular"]
        center = _fmt_set(m["muger_center"]) if m["muger_center"] is not None else "n/a"
        lines.append(f"  modular data: {'valid' if m['valid'] else 'invalid'}; Muger center {center}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    rf = _load(args.path)
    bad = validate(rf.ring)
    if bad:
        print(f"{rf.name or args.path}: not a valid fusion ring ({bad[0]})")
        return EXIT_FAIL
    info = analyze_ring(rf)
    text = json.dumps(info, indent=2, ensure_ascii=False) + "\n" if args.json else _analysis_text(info)
    _emit(text, args.out)
    return EXIT_OK


# -- factor / grade -------------------------------------------------------------


def cmd_factor(args) -> int:
    rf = _load(args.path)
    if validate(rf.ring):
        print(f"{rf.name or args.path}: not a valid fusion ring")
        return EXIT_FAIL
    facts = factorizations(rf.ring)
    print(f"{rf.name or args.path}: {len(facts)} factorization(s)")
    for A, B in facts:
        ta, tb = type_signature(A.as_ring()), type_signature(B.as_ring())
        print(f"  {_fmt_set(A.labels)} {ta}  x  {_fmt_set(B.labels)} {tb}")
    return EXIT_OK


def cmd_grade(args) -> int:
    rf = _load(args.path)
    ring = rf.ring
    if validate(ring):
        print(f"{rf.name or args.path}: not a valid fusion ring")
        return EXIT_FAIL
    if args.group:
        try:
            H = parse_group(args.group)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        gradings = gradings_by_group(ring, H)
        print(f"{len(gradings)} faithful grading(s) by {H.describe()}")
        for g in gradings:
            comps = "; ".join(f"{H.labels[h]}: {_fmt_set(ring.labels[i] for i in g.component(h))}" for h in range(H.order))
            print(f"  {comps}")
        return EXIT_OK
    U = universal_grading(ring)
    print(f"universal grading group {U.group.describe()} (order {U.group.order})")
    for h in range(U.group.order):
        comp = U.component(h)
        print(f"  {U.group.labels[h]}: {_fmt_set(ring.labels[i] for i in comp)}  fpdim {U.component_fpdim(h)}")
    return EXIT_OK


# -- enumerate ------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    from .classify.enumerate import MAX_RANK, enumerate_rings

    try:
        sig = TypeSignature.parse(args.type)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if sig.rank > MAX_RANK:
        raise InputError(f"rank {sig.rank} exceeds the enumeration cutoff {MAX_RANK}")
    rings = enumerate_rings(sig, commutative=not args.noncommutative, jobs=args.jobs)
    print(f"{sig}: {len(rings)} ring(s)")
    for ring in rings:
        prods = [
            f"{ring.labels[i]}{ring.labels[j]}={ring.describe_product(i, j)}"
            for i in range(1, ring.rank) for j in range(i, ring.rank)
            if not (ring.is_invertible(i) and ring.is_invertible(j))
        ]
        print(f"  {ring.name}: dual {list(ring.dual)}; " + ", ".join(prods))
    if args.out_dir:
        for n, ring in enumerate(rings):
            io.save(io.RingFile(ring, None, {"name": ring.name}), Path(args.out_dir) / f"ring{n}.ring.json")
    return EXIT_OK


# -- classify -------------------------------------------------------------------


def cmd_classify(args) -> int:
    from .classify import (
        SUPPORTED_Q,
        classify_modular_q3,
        full_corpus,
        verify_braided_extension_structure,
        verify_gty_criterion,
        verify_pointed_extension,
    )
    from .classify.q3 import golden_counts

    if args.q not in SUPPORTED_Q:
        raise InputError(f"q = {args.q} is beyond the desk-scale cutoff; supported values are {', '.join(map(str, SUPPORTED_Q))}")
    corpus = full_corpus(args.jobs)
    desc = f"built-in corpus ({len(corpus)} rings)"
    reports = {
        f"modular_q{args.q}": classify_modular_q3(args.q),
        "pointed_extension": verify_pointed_extension(corpus, desc),
        "gty_criterion": verify_gty_criterion(corpus, desc),
        "braided_extension_structure": verify_braided_extension_structure(corpus, desc),
    }
    out_dir = Path(args.out) if args.out else None
    for key, report in reports.items():
        sys.stdout.write(report.to_text(verbose=args.verbose))
        if out_dir is not None:
            io.write_atomic(out_dir / f"{key}.txt", report.to_text(verbose=True))
            io.write_atomic(out_dir / f"{key}.json", report.to_json())
    if out_dir is not None:
        golden = json.dumps(golden_counts(reports[f"modular_q{args.q}"]), indent=2, ensure_ascii=False) + "\n"
        io.write_atomic(out_dir / f"modular_q{args.q}.counts.json", golden)
    return EXIT_OK if all(r.ok for r in reports.values()) else EXIT_FAIL


# -- entry point ----------------------------------------------------------------


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("FUSIONKIT_JOBS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fusionkit", description="Fusion rings, gradings and modular data.")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $FUSIONKIT_JOBS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check ring (and modular) axioms")
    v.add_argument("path")
    v.add_argument("--json", action="store_true")
    v.add_argument("--limit", type=int, default=20, help="violations to print")
    v.add_argument("--order-bound", type=int, default=64, help="largest allowed twist order")
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("construct", help="write a standard ring or modular datum")
    c.add_argument("kind", choices=["group", "ty", "ising", "fibonacci", "metric", "product"])
    c.add_argument("inputs", nargs="*", help="factor files for 'product'")
    c.add_argument("--group", default="Z2", help="group preset, e.g. Z3, Z2xZ4, S3")
    c.add_argument("--zeta", type=int, help="Ising twist exponent e in zeta_16^e (odd)")
    c.add_argument("--factors", type=int, nargs="+", help="cyclic factors of the metric group")
    c.add_argument("--q", nargs="+", help="q(e_i) in turns, e.g. 1/8")
    c.add_argument("--b", nargs="+", help="b(e_i, e_j) in turns as i:j:turns")
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="structural invariants of a ring")
    a.add_argument("path")
    a.add_argument("--json", action="store_true")
    a.add_argument("-o", "--out")
    a.set_defaults(func=cmd_analyze)

    k = sub.add_parser("classify", help="dimension q^3 classification and corpus reports")
    k.add_argument("--q", type=int, required=True)
    k.add_argument("--out", help="directory for report files")
    k.add_argument("--verbose", action="store_true")
    k.set_defaults(func=cmd_classify)

    f = sub.add_parser("factor", help="Deligne factorizations")
    f.add_argument("path")
    f.set_defaults(func=cmd_factor)

    g = sub.add_parser("grade", help="universal grading, or gradings by a given group")
    g.add_argument("path")
    g.add_argument("--group")
    g.set_defaults(func=cmd_grade)

    e = sub.add_parser("enumerate", help="all rings of a type, e.g. '1,2; √2,1'")
    e.add_argument("type")
    e.add_argument("--noncommutative", action="store_true", help="include non-commutative rings")
    e.add_argument("--out-dir")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.jobs is None:
        args.jobs = _default_jobs()
    elif args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
