"""Command-line front end: parsing, dispatch, deterministic JSON output.

Subcommands mirror the package's objects: dj, dj-conic, geiser, bertini,
verify, fixed-curve, invariant, classify, lattice (make | reflect |
exceptionals | minimal | classify), elmt. With --json the output is a
single JSON document that is byte-identical across runs with equal inputs
and seed (keys sorted, fixed separators, no timestamps or timing). Exit
codes: 0 success, 2 validation failure (machine-readable reason), 1
internal error.

Input grammars:
  polynomials   signed terms  c x^i*y^j*z^k  with rational c like 3/4; the
                '*' between coefficient and variables and between variables
                is optional; all terms must have the same total degree
  points        (a:b:c) with rational entries, not all zero
  point files   one point per line, '#' comments allowed
  matrix files  whitespace-separated integers, row-major, first line = rank
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from .errors import IndeterminacyError, ValidationError
from .exactpoly import HPoly, format_hpoly, rat
from . import configs, fixedcurve, involutions, picard
from .projmaps import ProjPoint, RationalMap, is_involution


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise ValidationError("syntax error", f"{message} at position {self.pos}: {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take_number(self) -> Fraction:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a number")
        num = int(self.text[start:self.pos])
        if self.peek() == "/":
            self.pos += 1
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if self.pos == dstart:
                self.error("expected a denominator")
            den = int(self.text[dstart:self.pos])
            if den == 0:
                self.error("zero denominator")
            return Fraction(num, den)
        return Fraction(num)


def parse_poly(text: str) -> HPoly:
    """Parse the polynomial grammar into a canonical homogeneous polynomial."""
    sc = _Scanner(text)
    var_index = {"x": 0, "y": 1, "z": 2}
    terms = []
    first = True
    while True:
        ch = sc.peek()
        if ch == "":
            break
        sign = 1
        if ch in "+-":
            sign = -1 if ch == "-" else 1
            sc.pos += 1
            ch = sc.peek()
        elif not first:
            sc.error("expected '+' or '-' between terms")
        if ch == "":
            sc.error("dangling sign")
        coeff = Fraction(1)
        if ch.isdigit():
            coeff = sc.take_number()
            if sc.peek() == "*":
                sc.pos += 1
        exps = [0, 0, 0]
        saw_var = False
        while True:
            ch = sc.peek()
            if ch in var_index:
                saw_var = True
                v = var_index[ch]
                sc.pos += 1
                e = 1
                if sc.peek() == "^":
                    sc.pos += 1
                    e = int(sc.take_number())
                exps[v] += e
                if sc.peek() == "*":
                    sc.pos += 1
                    if sc.peek() not in var_index and not sc.peek().isdigit():
                        sc.error("dangling '*'")
                continue
            break
        if not saw_var and coeff == 1 and ch != "":
            sc.error("expected a term")
        terms.append((sign * coeff, tuple(exps)))
        first = False
    if not terms:
        raise ValidationError("syntax error", "empty polynomial")
    if len(terms) == 1 and terms[0][0] == 0:
        return HPoly.zero(0)
    degrees = {sum(e) for c, e in terms if c != 0}
    if len(degrees) > 1:
        raise ValidationError(
            "inhomogeneous", f"terms of different total degrees {sorted(degrees)}"
        )
    acc: dict = {}
    for c, e in terms:
        acc[e] = acc.get(e, Fraction(0)) + c
    degree = degrees.pop() if degrees else 0
    return HPoly(degree, {e: c for e, c in acc.items() if c != 0}).canonical()


def parse_point(text: str) -> ProjPoint:
    """Parse '(a:b:c)' with rational entries into a canonical point."""
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValidationError("syntax error", f"point must look like (a:b:c): {text!r}")
    parts = s[1:-1].split(":")
    if len(parts) != 3:
        raise ValidationError("syntax error", f"point needs three coordinates: {text!r}")
    try:
        vals = [rat(p) for p in parts]
    except ValueError as exc:
        raise ValidationError("syntax error", f"bad coordinate in {text!r}: {exc}") from None
    return ProjPoint(*vals)


def parse_map(text: str) -> RationalMap:
    parts = text.split(";")
    if len(parts) != 3:
        raise ValidationError("syntax error", "a map needs three ';'-separated components")
    return RationalMap(*(parse_poly(p) for p in parts))


def parse_points_file(path: str):
    pts = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                pts.append(parse_point(line))
    return pts


def parse_matrix_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if not tokens:
        raise ValidationError("syntax error", "empty matrix file")
    rank = int(tokens[0])
    vals = [int(t) for t in tokens[1:]]
    if len(vals) != rank * rank:
        raise ValidationError(
            "syntax error", f"expected {rank * rank} entries after the rank, got {len(vals)}"
        )
    return tuple(tuple(vals[i * rank + j] for j in range(rank)) for i in range(rank))


# ---------------------------------------------------------------------------
# output assembly
# ---------------------------------------------------------------------------

def _map_json(m: RationalMap):
    return {
        "degree": m.degree,
        "components": [format_hpoly(c) for c in m.components],
    }


def _point_str(p: ProjPoint) -> str:
    return str(p)


def _record_json(record, seed: int):
    out = {
        "kind": record.label,
        "label": record.label,
        "degree": record.degree,
        "invariant": record.invariant.as_dict(),
        "seed": seed,
    }
    if record.map is not None:
        out.update(_map_json(record.map))
    if record.fixed_curve is not None:
        out["fixed_curve"] = format_hpoly(record.fixed_curve)
    if record.center is not None:
        out["center"] = _point_str(record.center)
    if record.validation is not None:
        out["validation"] = record.validation.as_dict()
    return out


def emit(payload: dict, as_json: bool, human_lines=None) -> None:
    if as_json:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": ")))
        sys.stdout.write("\n")
    else:
        for line in human_lines or _default_human(payload):
            print(line)


def _default_human(payload, prefix=""):
    lines = []
    for key in sorted(payload):
        val = payload[key]
        if isinstance(val, dict):
            lines.append(f"{prefix}{key}:")
            lines.extend(_default_human(val, prefix + "  "))
        elif isinstance(val, list):
            lines.append(f"{prefix}{key}: {val}")
        else:
            lines.append(f"{prefix}{key}: {val}")
    return lines


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_dj(args) -> int:
    curve = parse_poly(args.curve)
    p = parse_point(args.p)
    record = involutions.dj_involution(curve, p, trusted=args.trusted)
    payload = _record_json(record, args.seed)
    base = fixedcurve.rational_base_points(record.map)
    payload["rational_base_points"] = [_point_str(b) for b in base]
    emit(payload, args.json)
    return 0


def _cmd_dj_conic(args) -> int:
    q = parse_poly(args.q)
    p = parse_point(args.p)
    record = involutions.dj_from_conic(q, p)
    payload = _record_json(record, args.seed)
    base = fixedcurve.rational_base_points(record.map)
    payload["rational_base_points"] = [_point_str(b) for b in base]
    emit(payload, args.json)
    return 0


def _load_config(args, kind: str):
    if args.builtin:
        return configs.reference_seven_points() if kind == "geiser" else configs.reference_eight_points()
    if not args.points:
        raise ValidationError("bad request", "supply --points FILE or --builtin")
    pts = parse_points_file(args.points)
    return involutions.make_point_config(pts, kind)


def _cmd_geiser(args) -> int:
    config = _load_config(args, "geiser")
    inv = involutions.GeiserInvolution(config, seed=args.seed)
    payload = {
        "kind": "Geiser",
        "label": "Geiser",
        "seed": args.seed,
        "points": [_point_str(p) for p in config.points],
        "invariant": fixedcurve.invariant_for_kind("geiser").as_dict(),
        "fixed_curve": format_hpoly(inv.fixed_sextic),
    }
    if args.x:
        x = parse_point(args.x)
        image, trace = inv.eval_detail(x)
        payload["x"] = _point_str(x)
        payload["image"] = _point_str(image)
        payload["trace"] = {
            "attempts": trace.attempts,
            "resultant_degree": trace.resultant_degree,
            "known_linear_factors": trace.known_linear_factors,
            "residual_degree": trace.residual_degree,
        }
    if args.interpolate:
        payload["map"] = _map_json(inv.interpolated_map)
    emit(payload, args.json)
    return 0


def _cmd_bertini(args) -> int:
    config = _load_config(args, "bertini")
    inv = involutions.BertiniInvolution(config, seed=args.seed)
    payload = {
        "kind": "Bertini",
        "label": "Bertini",
        "seed": args.seed,
        "points": [_point_str(p) for p in config.points],
        "invariant": fixedcurve.invariant_for_kind("bertini").as_dict(),
        "sextic_system_dimension": len(inv.space),
    }
    if args.x:
        x = parse_point(args.x)
        image, trace = inv.eval_detail(x)
        payload["x"] = _point_str(x)
        payload["image"] = _point_str(image)
        payload["trace"] = {
            "attempts": trace.attempts,
            "resultant_degree": trace.resultant_degree,
            "config_factor_degree": trace.config_factor_degree,
            "x_factor_degree": trace.x_factor_degree,
            "residual_degree": trace.residual_degree,
        }
    emit(payload, args.json)
    return 0


def _load_map(args) -> RationalMap:
    if getattr(args, "map", None):
        return parse_map(args.map)
    if getattr(args, "map_file", None):
        with open(args.map_file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        comps = data["components"]
        return RationalMap(*(parse_poly(c) for c in comps))
    raise ValidationError("bad request", "supply --map or --map-file")


def _cmd_verify(args) -> int:
    sigma = _load_map(args)
    if sigma.degree <= 6:
        ok = is_involution(sigma)
        method = "symbolic"
    else:
        ok = fixedcurve._involutive_pointwise(sigma, seed=args.seed)
        method = "pointwise"
    payload = {"involutive": ok, "method": method, "degree": sigma.degree, "seed": args.seed}
    if not ok:
        payload["reason"] = "not involutive"
        emit(payload, args.json)
        return 2
    emit(payload, args.json)
    return 0


def _cmd_fixed_curve(args) -> int:
    sigma = _load_map(args)
    locus = fixedcurve.fixed_locus(sigma)
    payload = {
        "degree": sigma.degree,
        "fixed_curve": format_hpoly(locus),
        "fixed_curve_degree": locus.degree,
        "seed": args.seed,
    }
    emit(payload, args.json)
    return 0


def _build_record(args):
    if args.curve and args.p:
        return involutions.dj_involution(parse_poly(args.curve), parse_point(args.p), trusted=args.trusted)
    if args.points or args.builtin:
        kind = args.kind
        if kind not in ("geiser", "bertini"):
            raise ValidationError("bad request", "--kind must be geiser or bertini with --points")
        config = _load_config(args, kind)
        if kind == "geiser":
            return involutions.GeiserInvolution(config, seed=args.seed).record()
        return involutions.BertiniInvolution(config, seed=args.seed).record()
    return None


def _cmd_invariant(args) -> int:
    record = _build_record(args)
    if record is not None:
        inv = fixedcurve.invariant_of(record)
        payload = {"label": record.label, "invariant": inv.as_dict(), "seed": args.seed}
        emit(payload, args.json)
        return 0
    sigma = _load_map(args)
    result = fixedcurve.classify_involution(sigma, seed=args.seed)
    payload = {
        "label": result.label,
        "invariant": result.invariant.as_dict() if result.invariant else None,
        "note": result.note,
        "seed": args.seed,
    }
    emit(payload, args.json)
    return 0


def _cmd_classify(args) -> int:
    record = _build_record(args)
    if record is not None:
        result = fixedcurve.classify_involution(record)
    else:
        result = fixedcurve.classify_involution(_load_map(args), seed=args.seed)
    payload = {
        "label": result.label,
        "invariant": result.invariant.as_dict() if result.invariant else None,
        "note": result.note,
        "seed": args.seed,
    }
    emit(payload, args.json)
    return 0


def _lattice_of(args) -> picard.PicLattice:
    if getattr(args, "quadric", False):
        return picard.quadric_lattice()
    if args.n is None:
        raise ValidationError("bad request", "supply --n or --quadric")
    return picard.make_lattice(args.n)


def _cmd_lattice(args) -> int:
    sub = args.lattice_cmd
    lat = _lattice_of(args)
    if sub == "make":
        payload = {
            "kind": lat.kind,
            "rank": lat.rank,
            "K": list(lat.k),
            "K_square": lat.k_square(),
            "seed": args.seed,
        }
        emit(payload, args.json)
        return 0
    if sub == "reflect":
        if args.alpha:
            alpha = tuple(int(v) for v in args.alpha.split(","))
            matrix = picard.reflection_through(lat, alpha)
            payload = {"matrix": [list(r) for r in matrix], "alpha": list(alpha), "seed": args.seed}
        else:
            inv = picard.anti_reflection_in_k(lat)
            payload = {
                "matrix": [list(r) for r in inv.matrix],
                "anti_reflection_in_K": True,
                "fixed_rank": picard.fixed_rank(inv),
                "seed": args.seed,
            }
        emit(payload, args.json)
        return 0
    if sub == "exceptionals":
        classes = picard.exceptional_classes(lat)
        payload = {"n": lat.n, "count": len(classes),
                   "classes": [list(c) for c in classes], "seed": args.seed}
        if args.oracle:
            oracle = picard.exceptional_classes_bruteforce(lat)
            payload["oracle_count"] = len(oracle)
            payload["oracle_agrees"] = oracle == classes
        emit(payload, args.json)
        return 0
    if sub in ("minimal", "classify"):
        matrix = parse_matrix_file(args.matrix_file)
        inv = picard.LatticeInvolution(lat, matrix)
        if sub == "minimal":
            res = picard.is_minimal(lat, inv)
            payload = {"minimal": res.minimal, "seed": args.seed}
            if res.witness is not None:
                payload["witness"] = list(res.witness)
                payload["witness_image"] = list(res.image)
                payload["failure"] = res.failure
            emit(payload, args.json)
            return 0
        cls = picard.classify_pair(lat, inv)
        payload = cls.as_dict()
        payload["seed"] = args.seed
        emit(payload, args.json)
        return 0
    raise ValidationError("bad request", f"unknown lattice subcommand {sub!r}")


def _cmd_elmt(args) -> int:
    contacts = tuple(int(v) for v in args.contacts.split(",")) if args.contacts else ()
    model = picard.ConicBundleModel(args.n, args.s, contacts)
    moved = picard.elementary_transformation(
        model, on_negative_section=args.on, contact_index=args.contact_index
    )
    payload = {
        "before": {"n": model.n, "singular_fibres": model.singular_fibres,
                   "contact_orders": list(model.contact_orders)},
        "after": {"n": moved.n, "singular_fibres": moved.singular_fibres,
                  "contact_orders": list(moved.contact_orders)},
        "seed": args.seed,
    }
    emit(payload, args.json)
    return 0


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="planecremona",
        description="Exact constructions and classification of plane birational involutions.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="seed of the deterministic stream")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("dj", help="de Jonquieres involution from a curve and center")
    p.add_argument("--curve", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--trusted", action="store_true", help="skip the singular-locus solve")
    common(p)
    p.set_defaults(func=_cmd_dj)

    p = sub.add_parser("dj-conic", help="quadratic de Jonquieres involution from a conic")
    p.add_argument("--q", required=True)
    p.add_argument("--p", required=True)
    common(p)
    p.set_defaults(func=_cmd_dj_conic)

    for name, handler in (("geiser", _cmd_geiser), ("bertini", _cmd_bertini)):
        p = sub.add_parser(name, help=f"{name} involution on a point configuration")
        p.add_argument("--points", help="point file, one (a:b:c) per line")
        p.add_argument("--builtin", action="store_true", help="use the committed configuration")
        p.add_argument("--x", help="point to evaluate at")
        if name == "geiser":
            p.add_argument("--interpolate", action="store_true",
                           help="also fit the closed-form degree-8 map")
        common(p)
        p.set_defaults(func=handler)

    p = sub.add_parser("verify", help="check that a map is an involution")
    p.add_argument("--map", help="three ';'-separated components")
    p.add_argument("--map-file", help="JSON file with a 'components' list")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("fixed-curve", help="divisorial fixed locus of a map")
    p.add_argument("--map", help="three ';'-separated components")
    p.add_argument("--map-file")
    common(p)
    p.set_defaults(func=_cmd_fixed_curve)

    for name, handler in (("invariant", _cmd_invariant), ("classify", _cmd_classify)):
        p = sub.add_parser(name, help=f"{name} of an involution (construction or raw map)")
        p.add_argument("--curve")
        p.add_argument("--p")
        p.add_argument("--trusted", action="store_true")
        p.add_argument("--points")
        p.add_argument("--builtin", action="store_true")
        p.add_argument("--kind", choices=("geiser", "bertini"))
        p.add_argument("--map")
        p.add_argument("--map-file")
        common(p)
        p.set_defaults(func=handler)

    p = sub.add_parser("lattice", help="Picard-lattice computations")
    p.add_argument("lattice_cmd", choices=("make", "reflect", "exceptionals", "minimal", "classify"))
    p.add_argument("--n", type=int, help="number of blown-up points")
    p.add_argument("--quadric", action="store_true", help="use the rank-2 quadric model")
    p.add_argument("--alpha", help="comma-separated class for 'reflect'")
    p.add_argument("--oracle", action="store_true", help="cross-check with the widened brute force")
    p.add_argument("--matrix-file", help="involution matrix file")
    common(p)
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("elmt", help="elementary transformation bookkeeping")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=0, help="singular fibre count")
    p.add_argument("--contacts", help="comma-separated contact orders")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--on", action="store_true", help="center on the negative section")
    group.add_argument("--off", dest="on", action="store_false", help="center off the negative section")
    p.add_argument("--contact-index", type=int)
    common(p)
    p.set_defaults(func=_cmd_elmt)

    return top


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.monotonic()
    try:
        code = args.func(args)
    except (ValidationError, IndeterminacyError) as exc:
        payload = {"error": str(exc), "reason": getattr(exc, "reason", "validation failure")}
        if args.json:
            sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": ")) + "\n")
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001  internal error path
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    if not args.json:
        print(f"elapsed: {time.monotonic() - start:.3f}s", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
