"""Command-line front end.

Labels are written ``kind:N-or-family[:part][:perm][:realform]``:

  nilpotent:21:id               nilpotent class N=21 on permutation line id
  nilpotent:9:(12):twisted      the twisted real form on that line
  semisimple:2, semisimple:3:twisted
  mixed:3:4:(12), mixed:2:2:id:twisted-s+c

Exit status: 0 on success, 1 when a real form cannot be decided, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import catalog, semisimple
from .catalog import LabelError, parse_label
from .exactfield import parse_scalar
from .nilpotent import MODES, UnknownLabel
from .tensorspace import FieldMismatch, Tensor, TensorError, load_tensor

EXIT_OK, EXIT_FALLBACK, EXIT_INPUT = 0, 1, 2


def _emit(records, structured: bool, out=None):
    out = out or sys.stdout
    if structured:
        for r in records:
            out.write(json.dumps(r, sort_keys=True) + "\n")
        return
    for r in records:
        out.write(_human(r) + "\n")


def _human(r: dict) -> str:
    if "error" in r:
        return f"{r.get('file', '')}: error: {r['error']}"
    head = f"{r['file']}: " if "file" in r else ""
    label = r.get("label", "")
    anchor = r.get("anchor")
    extra = []
    if "characteristic" in r:
        extra.append("characteristic " + " ".join(map(str, r["characteristic"])))
    if "params" in r:
        p = r["params"]
        extra.append("params " + (", ".join(p["exact"]) if p.get("exact") else
                                  ", ".join(f"{a:.8g}{b:+.8g}i" for a, b in p["approx"])))
    text = head + label
    if anchor:
        text += f"  [{anchor}]"
    return text + ("  (" + "; ".join(extra) + ")" if extra else "")


def _anchor(label: str) -> str | None:
    try:
        return catalog.lookup(label).anchor
    except (UnknownLabel, LabelError):
        return None


def _read(path: str, field: str | None):
    v, file_field = load_tensor(path)
    field = field or file_field
    if field == "real" and not v.is_real():
        raise FieldMismatch("real field requested for a tensor with non-real entries")
    return v, field


def _classify_one(args):
    path, field, mode, tol = args
    if tol is not None:
        semisimple.RECOVERY_TOL = tol
    from .classify import classify, classify_real_record
    from .real import DiscriminatorInconclusive
    try:
        v, field = _read(path, field)
        rec = classify_real_record(v, mode) if field == "real" else dict(classify(v, mode).record)
        rec["field"] = field
    except DiscriminatorInconclusive as exc:
        return {"file": path, "error": str(exc), "complexLabel": exc.complex_label,
                "candidates": [str(c) for c in exc.candidates], "status": EXIT_FALLBACK}
    except (OSError, ValueError, KeyError, TensorError, FieldMismatch) as exc:
        return {"file": path, "error": f"{type(exc).__name__}: {exc}", "status": EXIT_INPUT}
    rec["file"] = path
    anchor = _anchor(rec["label"])
    if anchor:
        rec["anchor"] = anchor
    return rec


def cmd_classify(ns) -> int:
    jobs = [(p, ns.field, ns.mode, ns.tolerance) for p in ns.files]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            records = list(pool.map(_classify_one, jobs))
    else:
        records = [_classify_one(j) for j in jobs]
    status = max((r.pop("status", EXIT_OK) for r in records), default=EXIT_OK)
    _emit(records, ns.structured)
    return status


def cmd_invariants(ns) -> int:
    from .jordan import invariants
    v, _ = _read(ns.file, None)
    t = invariants(v).as_tuple()
    rec = {"t6": str(t[0]), "t9": str(t[1]), "t12": str(t[2])}
    if ns.structured:
        _emit([rec], True)
    else:
        print("\n".join(f"{k} = {x}" for k, x in rec.items()))
    return EXIT_OK


def cmd_jordan(ns) -> int:
    from .classify import split_record
    v, field = _read(ns.file, None)
    rec = split_record(v)
    for part in rec.values():
        part["field"] = field if all(parse_scalar(e["value"]).is_real() for e in part["entries"]) else "complex"
    if ns.structured:
        _emit([rec], True)
    else:
        s, e = (Tensor.from_record(rec[k])[0] for k in ("semisimple", "nilpotent"))
        print(f"semisimple: {s}\nnilpotent:  {e}")
    return EXIT_OK


def cmd_rep(ns) -> int:
    parsed = parse_label(ns.label)
    entry = catalog.lookup(parsed)
    field = "complex" if parsed.real_form is None else "real"
    rec = entry.representative.to_record(field)
    print(json.dumps(rec, sort_keys=True, indent=None if ns.structured else 1))
    return EXIT_OK


def cmd_tables(ns) -> int:
    kind = "real" if ns.which == "real" else "complex"
    entries = [e for e in catalog.enumerate_entries(kind) if ns.which == "real" or e.kind == ns.which]
    if ns.structured:
        _emit([{"label": e.label, "anchor": e.anchor, "representative": str(e.representative),
                "characteristic": list(e.characteristic) if e.characteristic else None,
                "identity_component": e.identity_component, "component_group": e.component_group}
               for e in entries], True)
        return EXIT_OK
    for e in entries:
        extra = ""
        if e.characteristic:
            extra += "  char " + " ".join(map(str, e.characteristic))
        if e.identity_component or e.component_group:
            extra += f"  Z° {e.identity_component or '-'}  K {e.component_group or '-'}"
        print(f"{e.label:<32} {str(e.representative):<60} [{e.anchor}]{extra}")
    return EXIT_OK


def _group_from_file(path):
    from .galois import FiniteGroup, MatrixElt
    with open(path) as fh:
        rec = json.load(fh)
    gens = []
    for g in rec["generators"]:
        if isinstance(g, list):
            gens.append(catalog.group_element(g))
        else:
            gens.append(MatrixElt(catalog.parse_matrix(g) if g.count(";") == 2 else _square(g)))
    return FiniteGroup(gens, cap=int(rec.get("cap", 100_000)))


def _square(text):
    return [[parse_scalar(x) for x in row.split(",")] for row in text.split(";")]


def cmd_h1(ns) -> int:
    from .galois import criterion, h1
    G = _group_from_file(ns.groupfile)
    classes = h1(G)
    crit = criterion(G)
    rec = {"order": G.order, "classes": [repr(c.representative) for c in classes],
           "sizes": [c.size for c in classes], "criterion": None if crit is None else crit[0]}
    if ns.structured:
        _emit([rec], True)
    else:
        print(f"|G| = {G.order}, |H^1| = {len(classes)}" + (f" (criterion: {crit[0]})" if crit else ""))
        for c in classes:
            print(f"  {c!r}")
    return EXIT_OK


def cmd_weyl(ns) -> int:
    from .semisimple import gamma_group, reflection_classes, reflections, weyl_group
    W = weyl_group()
    rec = {"order": W.order, "reflections": len(reflections(W)),
           "reflection_classes": sorted(len(c) for c in reflection_classes(W)),
           "gamma_orders": {str(f): gamma_group(f).order for f in (1, 2, 3, 4)}}
    if ns.structured:
        _emit([rec], True)
    else:
        print(f"W_C: order {rec['order']}, {rec['reflections']} reflections in classes "
              f"{rec['reflection_classes']}")
        print("Gamma_p orders: " + ", ".join(f"family {k}: {v}" for k, v in rec["gamma_orders"].items()))
    return EXIT_OK


def cmd_selfcheck(ns) -> int:
    from .selfcheck import run
    results = run(ns.level)
    if ns.structured:
        _emit([{"check": r.name, "anchor": r.anchor, "ok": r.ok, "detail": r.detail} for r in results], True)
    else:
        for r in results:
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<16} {r.seconds:6.1f}s  {r.detail}  [{r.anchor}]")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FALLBACK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qutrit-orbits", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--output", choices=("human", "structured"), default="human")
    p.add_argument("--tolerance", type=float, default=None,
                   help="numeric tolerance for parameter recovery (never affects exact-path labels)")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("classify", help="classify tensor files")
    c.add_argument("files", nargs="+")
    c.add_argument("--field", choices=("complex", "real"), default=None)
    c.add_argument("--mode", choices=MODES, default="exact")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_classify)

    for verb, fn, text in (("invariants", cmd_invariants, "degree 6, 9, 12 invariants"),
                           ("jordan", cmd_jordan, "semisimple and nilpotent parts")):
        q = sub.add_parser(verb, help=text)
        q.add_argument("file")
        q.set_defaults(func=fn)

    r = sub.add_parser("rep", help="representative of a label, as a tensor file")
    r.add_argument("label")
    r.set_defaults(func=cmd_rep)

    t = sub.add_parser("tables", help="print catalog tables")
    t.add_argument("--which", choices=("nilpotent", "semisimple", "mixed", "real"), default="nilpotent")
    t.set_defaults(func=cmd_tables)

    h = sub.add_parser("h1", help="Galois cohomology of a finite group")
    h.add_argument("groupfile")
    h.set_defaults(func=cmd_h1)

    w = sub.add_parser("weyl", help="little Weyl group and family groups")
    w.set_defaults(func=cmd_weyl)

    s = sub.add_parser("selfcheck", help="re-derive the catalog")
    s.add_argument("--level", choices=("quick", "full"), default="quick")
    s.set_defaults(func=cmd_selfcheck)
    return p


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    ns.structured = ns.output == "structured"
    if ns.tolerance is not None:
        if not 0 < ns.tolerance < 1:
            print("error: --tolerance must lie in (0, 1)", file=sys.stderr)
            return EXIT_INPUT
        semisimple.RECOVERY_TOL = ns.tolerance
    try:
        return ns.func(ns)
    except (UnknownLabel, LabelError, TensorError, FieldMismatch, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
