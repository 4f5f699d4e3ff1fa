"""Command-line interface.

Input files are JSON objects:

    {
      "components": ["t1", "t2"],          optional, default t1..tm
      "linking_matrix": [[0, 1], [1, 0]],  framings on the diagonal
      "conway": {
        "1":   {"type": "knot", "delta": [[0, 1]]},
        "2":   {"type": "knot", "delta": [[0, 1]]},
        "1,2": {"type": "poly", "terms": [[[0, 0], 1]]}
      },
      "charge": [0, 0]                     optional
    }

Conway keys are comma-joined 1-based component subsets; exponents live
on the ordinary lattice of the named variables.  Alternatively
"conway": {"pd": "X(...) ..."} builds the whole table from a planar
diagram of the link in the 3-sphere.

Exit codes: 0 success, 2 invalid input, 3 violated internal guarantee
(a theorem-backed identity failed, meaning a bug or an inconsistent
Conway table that slipped past validation).
"""

import argparse
import json
import os
import sys
from collections import Counter
from fractions import Fraction

from .abgroup import GroupElement
from .diagram import diagram_table, parse_pd
from .errors import (InternalAssertionError, NeedsDirection,
                     ValidationError)
from .groupring import LaurentPoly, element_str
from .linkdata import (ConwayTable, FramedLink, canonical_charge,
                       conway_table_validate, validate_charge)
from .surgery import (cross_check, delta, duality_check, euler_classes,
                      orientation_sign, surgered_homology, tau)
from .sw import (_resolve_direction, sw_all, sw_split_table, sw_value,
                 torsion_duality_check)

__all__ = ["main", "load_input"]


# -------------------------------------------------------------------------
# Input loading
# -------------------------------------------------------------------------

def _parse_subset(key, m):
    try:
        parts = [int(p) for p in key.split(",")]
    except ValueError:
        raise ValidationError(f"conway key {key!r} is not a component list")
    if len(set(parts)) != len(parts) or any(p < 1 or p > m for p in parts):
        raise ValidationError(f"conway key {key!r} out of range 1..{m}")
    return sorted(p - 1 for p in parts)


def _parse_poly(key, val, subset, L):
    names = tuple(L.names[i] for i in subset)
    if not isinstance(val, dict):
        raise ValidationError(f"conway entry {key}: not an object")
    kind = val.get("type")
    terms = {}
    if kind == "knot":
        if len(subset) != 1:
            raise ValidationError(f"conway entry {key}: knot type needs "
                                  "a single component")
        pairs = val.get("delta", [])
        rows = [((e,), c) for e, c in pairs]
    elif kind == "poly":
        rows = [(tuple(e), c) for e, c in val.get("terms", [])]
    else:
        raise ValidationError(f"conway entry {key}: unknown type {kind!r}")
    for exps, c in rows:
        if len(exps) != len(names):
            raise ValidationError(f"conway entry {key}: exponent vector "
                                  f"of length {len(exps)}, need {len(names)}")
        doubled = tuple(2 * int(e) for e in exps)
        terms[doubled] = terms.get(doubled, 0) + Fraction(c)
    return LaurentPoly(names, terms)


def load_input(path):
    """Read one input file into (FramedLink, ConwayTable or None, charge)."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})")
    if not isinstance(data, dict):
        raise ValidationError(f"{path}: input must be a JSON object")
    if "linking_matrix" not in data:
        raise ValidationError(f"{path}: missing linking_matrix")
    names = data.get("components")
    L = FramedLink(data["linking_matrix"], names and tuple(names))
    table = None
    conway = data.get("conway")
    if conway is not None:
        if not isinstance(conway, dict):
            raise ValidationError(f"{path}: conway must be an object")
        if "pd" in conway:
            if names is not None:
                raise ValidationError(
                    f"{path}: pd input fixes component names to t1..tm")
            d = parse_pd(conway["pd"])
            framings = [L.framing(i) for i in range(L.m)]
            Lpd, table = diagram_table(d, framings)
            if Lpd.matrix != L.matrix:
                raise ValidationError(
                    f"{path}: pd linking numbers disagree with "
                    "linking_matrix")
            L = Lpd
        else:
            entries = {}
            for key in sorted(conway):
                subset = _parse_subset(key, L.m)
                entries[frozenset(subset)] = _parse_poly(
                    key, conway[key], subset, L)
            table = ConwayTable(L.m, entries)
    charge = data.get("charge")
    if charge is not None:
        charge = validate_charge(L, charge)
    return L, table, charge


def _need_table(table):
    if table is None:
        raise ValidationError("input has no conway data")
    return table


def _parse_ints(text, what):
    try:
        return tuple(int(p) for p in text.replace(" ", "").split(","))
    except ValueError:
        raise ValidationError(f"{what} must be comma-separated integers")


def _pick_charge(args, L, file_charge):
    if getattr(args, "charge", None) is not None:
        return validate_charge(L, _parse_ints(args.charge, "--charge"))
    if file_charge is not None:
        return file_charge
    raise ValidationError("no charge: pass --charge or put one in the input")


# -------------------------------------------------------------------------
# Rendering
# -------------------------------------------------------------------------

def _num_json(v: Fraction):
    return int(v) if v.denominator == 1 else str(v)


def _fraction_json(x):
    H = x.group
    num = [[element_str(H, g), _num_json(x.num.coefficient(g))]
           for g in x.num.support()]
    counts = Counter(x.dens)
    dens = [[element_str(H, h), counts[h]]
            for h in sorted(counts, key=GroupElement.sort_key)]
    return {"num": num, "dens": dens, "repr": repr(x)}


def _emit(args, obj, human_lines):
    if args.json:
        print(json.dumps(obj, sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


def _group_desc(H):
    bits = ["Z"] * H.free_rank + [f"Z/{d}" for d in H.invariant_factors]
    return " x ".join(bits) if bits else "1"


# -------------------------------------------------------------------------
# Commands
# -------------------------------------------------------------------------

def cmd_validate(args):
    L, table, charge = load_input(args.input)
    rep = conway_table_validate(L, _need_table(table))
    obj = {"ok": rep.ok,
           "failures": list(rep.failures),
           "ambiguous_sign": [[i + 1 for i in s] for s in rep.ambiguous_sign],
           "charge": list(charge) if charge is not None else None}
    lines = [f"table: {'ok' if rep.ok else 'INVALID'}"]
    lines += [f"  {f}" for f in rep.failures]
    for s in rep.ambiguous_sign:
        lines.append(f"  sign ambiguous for sublink {[i + 1 for i in s]}")
    if charge is not None:
        lines.append(f"charge {list(charge)}: ok")
    _emit(args, obj, lines)
    return 0 if rep.ok else 2


def cmd_homology(args):
    L, _, _ = load_input(args.input)
    pres = surgered_homology(L)
    H = pres.H
    tors = 1
    for d in H.invariant_factors:
        tors *= d
    obj = {"group": _group_desc(H),
           "b1": pres.b1,
           "invariant_factors": list(H.invariant_factors),
           "torsion_order": tors,
           "I0": sorted(i + 1 for i in pres.I0),
           "orientation_sign": orientation_sign(L)}
    lines = [f"H1 = {obj['group']}",
             f"b1 = {pres.b1}",
             f"torsion order = {tors}",
             f"torsion meridians I0 = {obj['I0']}",
             f"orientation sign = {obj['orientation_sign']}"]
    _emit(args, obj, lines)
    return 0


def cmd_euler(args):
    L, _, charge = load_input(args.input)
    pres = surgered_homology(L)
    classes = euler_classes(L)
    H = pres.H
    if args.charge is not None:
        k = _pick_charge(args, L, charge)
        obj = {"charge": list(classes.canonicalize(k)),
               "inverse": list(classes.canonicalize(classes.inverse(k))),
               "chern": element_str(H, classes.chern(k)),
               "torsion": H.is_torsion(classes.element(k))}
        lines = [f"class of k={list(k)}:",
                 f"  canonical = {obj['charge']}",
                 f"  inverse   = {obj['inverse']}",
                 f"  chern     = {obj['chern']}"]
        _emit(args, obj, lines)
        return 0
    window = args.window if pres.b1 else None
    reps = sorted(classes.enumerate(window))
    rows = [{"charge": list(k),
             "inverse": list(classes.canonicalize(classes.inverse(k))),
             "chern": element_str(H, classes.chern(k))} for k in reps]
    obj = {"b1": pres.b1, "window": window, "classes": rows}
    lines = [f"{len(rows)} classes"
             + (f" within window {window}" if window else "")]
    lines += [f"  k={r['charge']}  inverse={r['inverse']}  "
              f"chern={r['chern']}" for r in rows]
    _emit(args, obj, lines)
    return 0


def cmd_tau(args):
    L, table, charge = load_input(args.input)
    k = _pick_charge(args, L, charge)
    t = tau(L, k, _need_table(table))
    factor = 1
    if args.orientation == "canonical":
        factor = orientation_sign(L)
        if factor == -1:
            t = -t
    obj = _fraction_json(t)
    obj.update({"charge": list(k), "orientation": args.orientation,
                "orientation_factor": factor,
                "group": _group_desc(t.group)})
    lines = [f"tau(e_{list(k)}) over H = {obj['group']}"
             + (" (canonical orientation)"
                if args.orientation == "canonical" else ""),
             f"  {t!r}"]
    _emit(args, obj, lines)
    return 0


def cmd_delta(args):
    L, table, charge = load_input(args.input)
    k = _pick_charge(args, L, charge)
    d = delta(L, k, _need_table(table))
    obj = _fraction_json(d)
    obj.update({"charge": list(k), "group": _group_desc(d.group)})
    lines = [f"Delta(e_{list(k)}) over H/Tors = {obj['group']}",
             f"  {d!r}"]
    _emit(args, obj, lines)
    return 0


def cmd_sw(args):
    L, table, charge = load_input(args.input)
    table = _need_table(table)
    pres = surgered_homology(L)
    direction = None
    if args.direction is not None:
        direction = _parse_ints(args.direction, "--direction")
    if not args.all:
        k = _pick_charge(args, L, charge)
        value = sw_value(L, k, table, direction=direction)
        dirvec = None
        if pres.b1 == 1:
            _, dirvec = _resolve_direction(L, pres, direction)
        obj = {"charge": list(euler_classes(L).canonicalize(k)),
               "value": value,
               "direction": list(dirvec) if dirvec else None,
               "sign_undetermined": True}
        lines = [f"sw(e_{list(k)}) = {value}   (up to one global sign)"]
        if dirvec:
            lines.append(f"  direction = {list(dirvec)}")
        _emit(args, obj, lines)
        return 0
    if L.is_algebraically_split() and direction is None:
        tbl = sw_split_table(L, table, window=args.window)
        route = "split closed form, cross-checked against torsion"
    else:
        tbl = sw_all(L, table, window=args.window, direction=direction)
        route = "torsion coefficients"
    rows = [{"charge": list(k), "value": tbl.values[k]}
            for k in sorted(tbl.values)]
    obj = {"values": rows, "window": tbl.window,
           "boundary_zero": tbl.boundary_zero,
           "direction": list(tbl.direction) if tbl.direction else None,
           "sign_undetermined": True, "route": route}
    lines = [f"sw table, window {tbl.window} ({route}); "
             "values up to one global sign"]
    lines += [f"  k={r['charge']}  sw={r['value']}" for r in rows]
    if tbl.direction:
        lines.append(f"direction = {list(tbl.direction)}")
    lines.append(f"boundary ring zero: {tbl.boundary_zero}")
    _emit(args, obj, lines)
    return 0


def cmd_selftest(args):
    records = []
    failed = 0
    for path in args.input:
        L, table, charge = load_input(path)
        k = charge if charge is not None else canonical_charge(L)

        def run(name, fn):
            nonlocal failed
            try:
                rep = fn()
            except NeedsDirection:
                records.append({"file": path, "check": name,
                                "status": "skip", "failures":
                                ["needs an explicit direction"]})
                return
            ok = rep is None or rep.ok
            fails = [] if rep is None else list(rep.failures)
            records.append({"file": path, "check": name,
                            "status": "pass" if ok else "FAIL",
                            "failures": fails})
            failed += 0 if ok else 1

        if table is None:
            records.append({"file": path, "check": "table",
                            "status": "FAIL",
                            "failures": ["no conway data"]})
            failed += 1
            continue
        run("table", lambda: conway_table_validate(L, table))
        run("tau-duality", lambda: duality_check(L, k, table))
        run("tau-cross", lambda: cross_check(L, k, table))
        run("T-duality", lambda: torsion_duality_check(L, k, table))
    obj = {"ok": failed == 0, "checks": records}
    lines = [f"{r['file']}: {r['check']}: {r['status']}"
             + ("" if not r["failures"] else f"  {'; '.join(r['failures'])}")
             for r in records]
    lines.append("all checks passed" if failed == 0
                 else f"{failed} checks FAILED")
    _emit(args, obj, lines)
    return 0 if failed == 0 else 2


# -------------------------------------------------------------------------
# Wiring
# -------------------------------------------------------------------------

def _parser():
    p = argparse.ArgumentParser(
        prog="tsw",
        description="Exact torsion and Seiberg-Witten invariants of "
                    "surgered 3-manifolds.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, charge=False):
        sp.add_argument("input", help="JSON input file")
        sp.add_argument("--json", action="store_true",
                        help="machine-readable output")
        if charge:
            sp.add_argument("--charge", help="comma-separated charge, "
                            "overrides the input file")

    sp = sub.add_parser("validate", help="check the Conway table and charge")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("homology", help="H1 of the surgered manifold")
    common(sp)
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("euler", help="Euler classes: enumeration or one "
                        "class's data")
    common(sp, charge=True)
    sp.add_argument("--window", type=int, default=3,
                    help="enumeration box for the free part (default 3)")
    sp.set_defaults(func=cmd_euler)

    sp = sub.add_parser("tau", help="refined torsion of the surgered "
                        "manifold")
    common(sp, charge=True)
    sp.add_argument("--orientation", choices=["link", "canonical"],
                    default="link", help="homology orientation convention")
    sp.set_defaults(func=cmd_tau)

    sp = sub.add_parser("delta", help="refined Alexander polynomial (b1 "
                        ">= 1)")
    common(sp, charge=True)
    sp.set_defaults(func=cmd_delta)

    sp = sub.add_parser("sw", help="Seiberg-Witten values (up to one "
                        "global sign)")
    common(sp, charge=True)
    sp.add_argument("--all", action="store_true",
                    help="table over all classes in the window")
    sp.add_argument("--window", type=int, default=3,
                    help="enumeration box for the free part (default 3)")
    sp.add_argument("--direction", help="meridian exponents of the b1=1 "
                    "expansion direction")
    sp.set_defaults(func=cmd_sw)

    sp = sub.add_parser("selftest", help="run the identity suite on inputs")
    sp.add_argument("input", nargs="+", help="JSON input files")
    sp.add_argument("--json", action="store_true",
                    help="machine-readable output")
    sp.set_defaults(func=cmd_selftest)

    return p


def main(argv=None):
    threads = os.environ.get("TSW_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            print("error: TSW_THREADS must be a positive integer",
                  file=sys.stderr)
            return 2
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        if args.json:
            print(json.dumps({"error": type(exc).__name__,
                              "message": str(exc)}, sort_keys=True))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except InternalAssertionError as exc:
        if args.json:
            print(json.dumps({"error": type(exc).__name__,
                              "message": str(exc)}, sort_keys=True))
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
