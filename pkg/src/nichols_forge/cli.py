"""Command line front end: JSON documents in, JSON reports out.

Exit codes: 0 success, 1 validation failure, 2 resource bound refusal,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import os
import sys
from dataclasses import is_dataclass
from fractions import Fraction
from typing import Any, Optional

from .abgroup import ENV_BOUND, Bicharacter, GroupSpec, GroupTooLarge, Subgroup
from .double import build, central_grouplikes, kernel_conditions_report, center_split_report
from .ideals import (
    COORDINATE,
    SKINNY,
    ThinIdealDatum,
    dichotomy_report,
    enumerate_thin,
    grading_check,
    ideal_generators_vanish,
    quotient_build,
    outside_family_fixture,
    thinness_check,
    validate,
)
from .pairing import DegreeOverflow, PairingBoundExceeded, nichols_dims
from .scalars import CyclotomicNumber, parse_scalar, scalar_to_json
from .triangular import (
    Carrier,
    GelakiDatum,
    TauDegenerate,
    build_HD,
    canonical_rmatrix,
    enumerate_structures,
    inherited_rmatrix,
    is_triangular_by_product,
    minimality_check,
    zeta_skew_criterion,
    validate_gelaki,
    verify_quasitriangular,
    verify_triangular,
)
from .yd import DoubleDatum

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BOUND = 2
EXIT_INTERNAL = 3


class SchemaError(ValueError):
    def __init__(self, errors: list):
        super().__init__("; ".join(f"{p}: {m}" for p, m in errors))
        self.errors = errors


# --- parsing -------------------------------------------------------------------


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _int_list(doc, key: str, errors: list, length: Optional[int] = None, positive=False):
    ptr = f"/{key}"
    if key not in doc:
        errors.append((ptr, f"missing required field {key!r}"))
        return None
    val = doc[key]
    if not isinstance(val, list) or not all(_is_int(x) for x in val):
        errors.append((ptr, "expected a list of integers"))
        return None
    if positive and not all(x >= 1 for x in val):
        errors.append((ptr, "group orders must be positive"))
        return None
    if length is not None and len(val) != length:
        errors.append((ptr, f"expected length {length}, got {len(val)}"))
        return None
    return val


def _matrix(val, ptr: str, rows: int, cols: int, errors: list):
    if not isinstance(val, list) or not all(isinstance(r, list) for r in val):
        errors.append((ptr, "expected a list of lists"))
        return None
    shape = (len(val), len(val[0]) if val else 0)
    if len(val) != rows or any(len(r) != cols for r in val):
        errors.append((ptr, f"expected shape {rows}x{cols}, got {shape[0]}x{shape[1]}"))
        return None
    return val


def _element(val, ptr: str, rank: int, errors: list):
    if not isinstance(val, list) or not all(_is_int(x) for x in val) or len(val) != rank:
        errors.append((ptr, f"expected a list of {rank} integers"))
        return None
    return tuple(val)


def _order(doc, errors: list, default: int) -> int:
    N = doc.get("cyclotomic_order", default)
    if not _is_int(N) or N < 1:
        errors.append(("/cyclotomic_order", "expected a positive integer"))
        return 1
    return N


def _default_order(orders) -> int:
    return math.lcm(2, *orders) if orders else 2


def parse_double(doc: Any) -> DoubleDatum:
    errors: list = []
    if not isinstance(doc, dict):
        raise SchemaError([("", "expected a JSON object")])
    F = _int_list(doc, "F", errors, positive=True)
    G = _int_list(doc, "G", errors, positive=True)
    if "cyclotomic_order" not in doc:
        errors.append(("/cyclotomic_order", "missing required field 'cyclotomic_order'"))
    N = _order(doc, errors, 1)
    md = doc.get("max_degree", 12)
    if not _is_int(md) or md < 1:
        errors.append(("/max_degree", "expected a positive integer"))
    E = None
    if "tau0_exponents" not in doc:
        errors.append(("/tau0_exponents", "missing required field 'tau0_exponents'"))
    elif F is not None and G is not None:
        E = _matrix(doc["tau0_exponents"], "/tau0_exponents", len(F), len(G), errors)
        if E is not None and not all(_is_int(x) for r in E for x in r):
            errors.append(("/tau0_exponents", "entries must be integers"))
            E = None
    index = []
    if "index" not in doc:
        errors.append(("/index", "missing required field 'index'"))
    elif not isinstance(doc["index"], list) or not doc["index"]:
        errors.append(("/index", "expected a nonempty list"))
    elif F is not None and G is not None:
        for k, item in enumerate(doc["index"]):
            if not isinstance(item, dict):
                errors.append((f"/index/{k}", "expected an object with 'f' and 'g'"))
                continue
            for key in ("f", "g"):
                if key not in item:
                    errors.append((f"/index/{k}/{key}", f"missing required field {key!r}"))
            if "f" in item and "g" in item:
                f = _element(item["f"], f"/index/{k}/f", len(F), errors)
                g = _element(item["g"], f"/index/{k}/g", len(G), errors)
                index.append((f, g))
    if errors:
        raise SchemaError(errors)
    Fs, Gs = GroupSpec(tuple(F)), GroupSpec(tuple(G))
    try:
        tau0 = Bicharacter(Fs, Gs, N, E)
    except ValueError as exc:
        raise SchemaError([("/tau0_exponents", str(exc))]) from None
    return DoubleDatum(Fs, Gs, tau0, tuple(index), md)


def serialize_double(D: DoubleDatum) -> dict:
    return {
        "cyclotomic_order": D.n,
        "F": list(D.F.orders),
        "G": list(D.G.orders),
        "tau0_exponents": [list(r) for r in D.tau0.exponents],
        "index": [{"f": list(f), "g": list(g)} for f, g in D.index],
        "max_degree": D.max_degree,
    }


def _scalar(n: int, spec, ptr: str, errors: list) -> Optional[CyclotomicNumber]:
    try:
        return parse_scalar(n, spec)
    except ValueError as exc:
        errors.append((ptr, str(exc)))
        return None


def parse_gelaki(doc: Any, require_matrices: bool = True) -> GelakiDatum:
    errors: list = []
    if not isinstance(doc, dict):
        raise SchemaError([("", "expected a JSON object")])
    G = _int_list(doc, "G", errors, positive=True)
    N = _order(doc, errors, _default_order(G or []))
    E = None
    if "tau0_exponents" not in doc:
        errors.append(("/tau0_exponents", "missing required field 'tau0_exponents'"))
    elif G is not None:
        E = _matrix(doc["tau0_exponents"], "/tau0_exponents", len(G), len(G), errors)
    carriers = []
    if "carriers" not in doc:
        errors.append(("/carriers", "missing required field 'carriers'"))
    elif not isinstance(doc["carriers"], list):
        errors.append(("/carriers", "expected a list"))
    elif G is not None:
        for k, item in enumerate(doc["carriers"]):
            ptr = f"/carriers/{k}"
            if not isinstance(item, dict):
                errors.append((ptr, "expected an object"))
                continue
            for key in ("g", "n"):
                if key not in item:
                    errors.append((f"{ptr}/{key}", f"missing required field {key!r}"))
            if "g" not in item or "n" not in item:
                continue
            g = _element(item["g"], f"{ptr}/g", len(G), errors)
            n = item["n"]
            if not _is_int(n) or n < 0:
                errors.append((f"{ptr}/n", "expected a nonnegative integer"))
                continue
            M = []
            if "M_exponents" in item:
                raw = _matrix(item["M_exponents"], f"{ptr}/M_exponents", n, n, errors)
                if raw is not None:
                    M = [
                        [_scalar(N, x, f"{ptr}/M_exponents/{a}/{b}", errors) for b, x in enumerate(r)]
                        for a, r in enumerate(raw)
                    ]
            elif require_matrices and n:
                errors.append((f"{ptr}/M_exponents", "missing required field 'M_exponents'"))
            carriers.append(Carrier(g, n, M))
    if errors:
        raise SchemaError(errors)
    Gs = GroupSpec(tuple(G))
    try:
        tau0 = Bicharacter(Gs, Gs, N, E)
    except ValueError as exc:
        raise SchemaError([("/tau0_exponents", str(exc))]) from None
    return GelakiDatum(Gs, tau0, carriers)


def serialize_gelaki(datum: GelakiDatum) -> dict:
    return {
        "cyclotomic_order": datum.n,
        "G": list(datum.G.orders),
        "tau0_exponents": [list(r) for r in datum.tau0.exponents],
        "carriers": [
            {
                "g": list(c.g),
                "n": c.n,
                "M_exponents": [[scalar_to_json(x) for x in r] for r in c.M],
            }
            for c in datum.carriers
        ],
    }


def parse_ideal(doc: Any, D: DoubleDatum) -> ThinIdealDatum:
    """``{"T_generators": [[...]] or "C", "pairs": [{"z": [[i, s]], "zeta": [[j, s]]}]}``."""
    errors: list = []
    if not isinstance(doc, dict):
        raise SchemaError([("/ideal", "expected a JSON object")])
    rank = D.gamma.rank
    gens = doc.get("T_generators")
    if gens == "C":
        T = central_grouplikes(D).C
    elif isinstance(gens, list):
        elems = [_element(x, f"/ideal/T_generators/{k}", rank, errors) for k, x in enumerate(gens)]
        T = None if errors else Subgroup(D.gamma, elems)
    else:
        errors.append(("/ideal/T_generators", "expected a list of elements of F x G or \"C\""))
        T = None
    pairs = []
    for k, item in enumerate(doc.get("pairs", [])):
        ptr = f"/ideal/pairs/{k}"
        if not isinstance(item, dict) or "z" not in item or "zeta" not in item:
            errors.append((ptr, "expected an object with 'z' and 'zeta'"))
            continue
        vecs = []
        for key in ("z", "zeta"):
            vec = {}
            for m, entry in enumerate(item[key]):
                p = f"{ptr}/{key}/{m}"
                if not isinstance(entry, list) or len(entry) != 2 or not _is_int(entry[0]):
                    errors.append((p, "expected [index, scalar]"))
                    continue
                if not 0 <= entry[0] < D.size:
                    errors.append((p, f"index {entry[0]} out of range"))
                    continue
                c = _scalar(D.n, entry[1], f"{p}/1", errors)
                if c is not None and not c.is_zero():
                    vec[entry[0]] = c
            vecs.append(vec)
        pairs.append(tuple(vecs))
    if errors:
        raise SchemaError(errors)
    return ThinIdealDatum(T, pairs)


def parse_input(doc: Any):
    """Dispatch on the shape of the document."""
    if isinstance(doc, dict) and "carriers" in doc:
        return parse_gelaki(doc)
    D = parse_double(doc)
    if isinstance(doc, dict) and "ideal" in doc:
        return D, parse_ideal(doc["ideal"], D)
    return D


# --- output --------------------------------------------------------------------


def jsonable(x):
    if isinstance(x, CyclotomicNumber):
        return scalar_to_json(x)
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Subgroup):
        return {"order": x.order, "generators": [list(g) for g in x.generators]}
    if hasattr(x, "as_dict"):
        return jsonable(x.as_dict())
    if is_dataclass(x):
        return jsonable(dict(x.__dict__))
    if x is None or isinstance(x, (bool, int, str, float)):
        return x
    return repr(x)


def _text(obj, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        out = []
        for k in sorted(obj):
            out.extend(_text(obj[k], f"{prefix}.{k}" if prefix else str(k)))
        return out
    if isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        out = []
        for k, v in enumerate(obj):
            out.extend(_text(v, f"{prefix}[{k}]"))
        return out or [f"{prefix}\t[]"]
    return [f"{prefix}\t{json.dumps(obj, sort_keys=True)}"]


def render(report: dict, fmt: str) -> str:
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# --- commands ------------------------------------------------------------------


class Failed(Exception):
    """The computation produced a report that records a validation failure."""

    def __init__(self, result):
        super().__init__("validation failure")
        self.result = result


def _scalars(args, n: int):
    if args.scalars is None:
        return None
    try:
        raw = json.loads(args.scalars)
        if not isinstance(raw, list):
            raise ValueError("expected a JSON list")
        return [parse_scalar(n, s) for s in raw]
    except ValueError as exc:
        raise SchemaError([("--scalars", str(exc))]) from None


def _with_degree(D: DoubleDatum, args) -> DoubleDatum:
    if getattr(args, "max_degree", None):
        return DoubleDatum(D.F, D.G, D.tau0, D.index, args.max_degree)
    return D


def cmd_nichols_dims(doc, args):
    D = _with_degree(parse_double(doc), args)
    nd = nichols_dims(D)
    return {"dims": nd.dims, "finite": nd.finite, "total": nd.total, "top_degree": nd.top_degree}


def cmd_double_build(doc, args):
    D = _with_degree(parse_double(doc), args)
    e = build(D)
    return {
        "finite": e.finite,
        "dimension": e.dimension,
        "group_order": D.gamma.order,
        "nichols_dims": e.v_basis.dims,
        "grading_dims": e.grading_dims(),
        "warnings": e.warnings,
    }


def cmd_double_center(doc, args):
    D = parse_double(doc)
    cd = central_grouplikes(D)
    return {"C": cd.C, "P": cd.P, "orthogonal_matches": cd.orthogonal_matches}


def cmd_double_center_split(doc, args):
    return center_split_report(parse_double(doc)).as_dict()


def cmd_double_kernel_conditions(doc, args):
    rep = kernel_conditions_report(args.type, args.l)
    out = rep.as_dict()
    out["agree"] = rep.agree
    return out


def cmd_ideals_enumerate(doc, args):
    D = parse_double(doc)
    fam = enumerate_thin(D, args.family, _scalars(args, D.n))
    items = []
    for d in fam:
        rep = validate(D, d)
        items.append({"ideal": d.describe(), "valid": rep.ok})
    return {
        "family": args.family,
        "count": len(fam),
        "skinny": sum(1 for d in fam if d.skinny),
        "ideals": items,
    }


def cmd_ideals_quotient(doc, args):
    if not isinstance(doc, dict) or "ideal" not in doc:
        raise SchemaError([("/ideal", "missing required field 'ideal'")])
    D = _with_degree(parse_double(doc), args)
    ideal = parse_ideal(doc["ideal"], D)
    rep = validate(D, ideal)
    if not rep.ok:
        raise Failed({"validation": rep.as_dict()})
    A = quotient_build(D, ideal)
    gc = grading_check(A)
    return {
        "validation": rep.as_dict(),
        "dimension": A.dimension,
        "finite": A.finite,
        "grading": gc,
        "generators_vanish": ideal_generators_vanish(D, A) if A.finite else None,
        "thin": thinness_check(D, A),
    }


def cmd_ideals_dichotomy(doc, args):
    D = parse_double(doc)
    return dichotomy_report(D, _scalars(args, D.n)).as_dict()


def cmd_rmatrix_verify(doc, args):
    D = _with_degree(parse_double(doc), args)
    e = build(D)
    if not e.finite:
        raise DegreeOverflow("the double is not finite-dimensional within max_degree")
    R = canonical_rmatrix(e)
    q = verify_quasitriangular(e, R, qybe=not args.skip_qybe)
    tri, _ = is_triangular_by_product(e, R)
    minimal, closure = minimality_check(e, R)
    result = {
        "dimension": e.dimension,
        "terms": len(R.terms),
        "quasitriangular": q.as_dict(),
        "triangular": tri,
        "minimal": minimal,
        "closure_dimension": closure,
    }
    if not q.ok:
        raise Failed(result)
    return result


def cmd_triangular_validate(doc, args):
    datum = parse_gelaki(doc)
    rep = validate_gelaki(datum)
    result: dict = {"validation": rep.as_dict()}
    if not rep.valid:
        raise Failed(result)
    D, ideal, A = build_HD(datum)
    expected = datum.G.order * 2 ** sum(c.n for c in datum.carriers)
    result["dimension"] = A.dimension
    result["expected_dimension"] = expected
    crit, wit = zeta_skew_criterion(D, ideal)
    result["criterion"] = {"holds": crit, "witness": wit}
    if args.verify:
        e = build(D)
        RA = inherited_rmatrix(D, A, canonical_rmatrix(e))
        result["triangular"] = verify_triangular(A, RA, D, e).as_dict()
        result["minimal"] = minimality_check(A, RA)[0]
    return result


def cmd_triangular_enumerate(doc, args):
    datum = parse_gelaki(doc, require_matrices=False)
    structs = enumerate_structures(datum, _scalars(args, datum.n), verify=not args.no_verify)
    return {"count": len(structs), "structures": [s.as_dict() for s in structs]}


def cmd_fixtures_outside_family(doc, args):
    _, _, rep = outside_family_fixture(args.max_degree or 4)
    return rep.as_dict()


COMMANDS = {
    ("nichols", "dims"): (cmd_nichols_dims, True),
    ("double", "build"): (cmd_double_build, True),
    ("double", "center"): (cmd_double_center, True),
    ("double", "thm42"): (cmd_double_center_split, True),
    ("double", "cor43"): (cmd_double_kernel_conditions, False),
    ("ideals", "enumerate"): (cmd_ideals_enumerate, True),
    ("ideals", "quotient"): (cmd_ideals_quotient, True),
    ("ideals", "dichotomy"): (cmd_ideals_dichotomy, True),
    ("rmatrix", "verify"): (cmd_rmatrix_verify, True),
    ("triangular", "validate"): (cmd_triangular_validate, True),
    ("triangular", "enumerate"): (cmd_triangular_enumerate, True),
    ("fixtures", "remark55"): (cmd_fixtures_outside_family, False),
}


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nichols-forge", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    subs: dict = {}
    for (group, name), (_, needs_input) in COMMANDS.items():
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="command", required=True)
        p = subs[group].add_parser(name)
        p.add_argument("--input", required=needs_input, help="JSON input document")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--max-degree", type=int, default=None)
        p.add_argument("--max-group-order", type=int, default=None, help=f"overrides {ENV_BOUND}")
        if group == "double" and name == "cor43":
            p.add_argument("--type", required=True, help="Cartan type such as A2 or A1xA1")
            p.add_argument("--l", type=int, required=True)
        if (group, name) in {("ideals", "enumerate"), ("ideals", "dichotomy"), ("triangular", "enumerate")}:
            p.add_argument("--scalars", help="JSON list of scalars (zeta exponents or [p, q])")
        if (group, name) == ("ideals", "enumerate"):
            p.add_argument("--family", choices=(SKINNY, COORDINATE), default=SKINNY)
        if (group, name) == ("rmatrix", "verify"):
            p.add_argument("--skip-qybe", action="store_true")
        if (group, name) == ("triangular", "validate"):
            p.add_argument("--verify", action="store_true", help="also verify triangularity")
        if (group, name) == ("triangular", "enumerate"):
            p.add_argument("--no-verify", action="store_true")
    return parser


def _options(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("group", "command", "output")}


def run(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    previous = os.environ.get(ENV_BOUND)
    if args.max_group_order is not None:
        os.environ[ENV_BOUND] = str(args.max_group_order)
    try:
        return _dispatch(args)
    finally:
        if previous is None:
            os.environ.pop(ENV_BOUND, None)
        else:
            os.environ[ENV_BOUND] = previous


def _dispatch(args) -> int:
    func, _ = COMMANDS[(args.group, args.command)]
    raw = b""
    doc = None
    if args.input:
        try:
            with open(args.input, "rb") as fh:
                raw = fh.read()
            doc = json.loads(raw)
        except OSError as exc:
            print(json.dumps({"error": str(exc)}), file=sys.stderr)
            return EXIT_INVALID
        except json.JSONDecodeError as exc:
            print(json.dumps({"errors": [{"pointer": "", "message": str(exc)}]}), file=sys.stderr)
            return EXIT_INVALID
    report = {
        "command": f"{args.group} {args.command}",
        "input_sha256": hashlib.sha256(raw).hexdigest() if args.input else None,
        "options": _options(args),
    }
    code = EXIT_OK
    try:
        report["result"] = jsonable(func(doc, args))
        report["status"] = "ok"
    except SchemaError as exc:
        errs = [{"pointer": p, "message": m} for p, m in exc.errors]
        print(json.dumps({"errors": errs}, sort_keys=True), file=sys.stderr)
        return EXIT_INVALID
    except Failed as exc:
        report["result"] = jsonable(exc.result)
        report["status"] = "invalid"
        code = EXIT_INVALID
    except (GroupTooLarge, PairingBoundExceeded, DegreeOverflow) as exc:
        print(json.dumps({"refused": str(exc)}), file=sys.stderr)
        return EXIT_BOUND
    except (TauDegenerate, ArithmeticError) as exc:
        print(json.dumps({"internal_inconsistency": str(exc)}), file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_INVALID
    text = render(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
