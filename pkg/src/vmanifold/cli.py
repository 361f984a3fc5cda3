"""Command line front end.

Every subcommand prints a short text report, or with ``--json`` exactly one
JSON document ``{"status", "payload", "message"}``.  Exit codes: 0 on
success, 1 on usage errors, 2 on domain, unsupported, resource and
integrity errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import quotient as qs
from .arith import format_rational
from .blowup import (blowup_charts_quotient, blowup_charts_smooth, blowup_dim2_normalized,
                     blowup_dim3_report, brieskorn_qresolution)
from .divisors import (WeilQDivisor, associated_weil, blowup_dim2_atlas, intersect_at_vertex,
                       projective_plane_atlas, weil_to_cartier)
from .errors import UsageError, VManifoldError
from .grammar import parse_int_list, parse_type_expr, parse_weights
from .wps import chart_type, reduce_weights, singular_vertices_P2

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _q(x) -> str:
    """JSON form of a rational: always ``num/den``."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _map_text(m: qs.MonomialMap) -> str:
    names = [f"x{i}" for i in range(len(m.exponents))]
    image = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, m.exponents)]
    return f"({', '.join(names)}) -> ({', '.join(image)})"


# -- subcommands: each returns (payload, text) -------------------------------

def cmd_normalize(args):
    t = parse_type_expr(args.type)
    res = qs.normalize_cyclic(t)
    payload = {"input": str(t), "normalized": str(res.normalized),
               "map": list(res.map.exponents)}
    return payload, f"{t} ~ {res.normalized} via {_map_text(res.map)}"


def cmd_canonical(args):
    t = parse_type_expr(args.type)
    if not (t.is_cyclic and t.dim == 2):
        raise UsageError("canonical forms are defined for cyclic surface types (d;a,b)")
    norm = qs.normalize_cyclic(t)
    canon = qs.canonical_cyclic_surface(norm.normalized)
    payload = {"input": str(t), "normalized": str(norm.normalized),
               "map": list(norm.map.exponents), "canonical": str(canon)}
    return payload, f"{t} ~ {norm.normalized}, canonical form {canon}"


_MOVE_ARITY = {
    "permute-columns": None, "permute-rows": None, "scale-row": 2,
    "multiply-row": 2, "shift": 3, "push": (2, 3), "drop-row": 1,
}


def parse_move(token: str) -> qs.Move:
    """``kind:ints``, e.g. ``push:2,2`` (exponent, column[, row]) or ``permute-columns:1,0``."""
    kind, _, rest = token.partition(":")
    if kind not in _MOVE_ARITY:
        raise UsageError(f"unknown move {kind!r}; choose from {', '.join(_MOVE_ARITY)}")
    values = parse_int_list(rest) if rest else []
    arity = _MOVE_ARITY[kind]
    if isinstance(arity, int) and len(values) != arity or \
            isinstance(arity, tuple) and len(values) not in arity:
        raise UsageError(f"move {kind} takes {arity} integers, got {len(values)}")
    if kind == "permute-columns":
        return qs.Move.permute_columns(values)
    if kind == "permute-rows":
        return qs.Move.permute_rows(values)
    if kind == "scale-row":
        return qs.Move.scale_row(*values)
    if kind == "multiply-row":
        return qs.Move.multiply_row(*values)
    if kind == "shift":
        return qs.Move.shift_entry(*values)
    if kind == "push":
        return qs.Move.push_exponent(*values)
    return qs.Move.drop_trivial_row(*values)


def cmd_moves(args):
    t = parse_type_expr(args.type)
    moves = [parse_move(m) for m in args.move]
    before = qs.reduced_small_image_order(t, args.cap)
    steps, cur = [], t
    for arg, m in zip(args.move, moves):
        cur = qs.apply_move(cur, m)
        steps.append({"move": arg, "type": str(cur)})
    after = qs.reduced_small_image_order(cur, args.cap)
    payload = {"input": str(t), "steps": steps, "result": str(cur),
               "reduced_small_image_order": [before, after]}
    lines = [str(t)] + [f"  {s['move']:<24} {s['type']}" for s in steps]
    lines.append(f"reduced small-image order {before} -> {after}")
    return payload, "\n".join(lines)


def cmd_group(args):
    t = parse_type_expr(args.type)
    elements = sorted(qs.enumerate_image_group(t, args.cap))
    payload = {
        "type": str(t),
        "order": len(elements),
        "elements": [[_q(x) for x in g] for g in elements],
        "free": qs.is_free_on_torus(t, args.cap),
        "small": qs.is_small(t, args.cap),
        "normalized": qs.is_normalized(t, args.cap),
        "reduced_small_image_order": qs.reduced_small_image_order(t, args.cap),
    }
    text = "\n".join([
        f"image of {t}: order {payload['order']}",
        *("  (" + ", ".join(format_rational(x) for x in g) + ")" for g in elements),
        f"free: {payload['free']}  small: {payload['small']}  normalized: {payload['normalized']}",
    ])
    return payload, text


def cmd_wps(args):
    w = parse_weights(args.weights)
    if args.action == "reduce":
        red = reduce_weights(w)
        payload = {"weights": list(w), "d": list(red.d), "e": list(red.e),
                   "reduced": list(red.reduced), "map": list(red.map.exponents)}
        return payload, f"P({w}) ~ P({red.reduced}) via {_map_text(red.map)}"
    if args.action == "charts":
        charts = []
        for i in range(len(w)):
            t = chart_type(w, i)
            entry = {"index": i, "type": str(t)}
            if t.dim <= 3:
                entry["normalized"] = str(qs.normalize_cyclic(t).normalized)
            charts.append(entry)
        text = "\n".join(f"U{c['index']}: {c['type']}"
                         + (f" ~ {c['normalized']}" if "normalized" in c else "") for c in charts)
        return {"weights": list(w), "charts": charts}, text
    verts = singular_vertices_P2(w)
    payload = {"weights": list(w),
               "vertices": [{"vertex": i, "type": str(t)} for i, t in verts]}
    text = "\n".join(f"P{i}: {t}" for i, t in verts) or "smooth"
    return payload, text


def cmd_blowup(args):
    w = parse_weights(args.weights)
    if args.space == "smooth":
        charts = blowup_charts_smooth(w)
        payload = {"space": "smooth", "weights": list(w), "charts": [
            {"index": c.index, "type": str(c.space),
             "substitution": [list(r) for r in c.substitution]} for c in charts]}
        lines = [f"U{c.index}: {c.space}" for c in charts]
        if len(w) == 3:
            rep = blowup_dim3_report(w)
            payload["origin_types"] = [str(t) for t in rep.origin_types]
            payload["axis_types"] = [str(t) for t in rep.axis_raw]
            payload["axis_normalized"] = [str(t) for t in rep.axis_types]
            payload["exceptional_reduced"] = list(rep.exceptional_reduction.reduced)
            lines += [f"axis {i}: {raw} ~ {t}" for i, (raw, t)
                      in enumerate(zip(rep.axis_raw, rep.axis_types))]
            lines.append(f"E ~ P({rep.exceptional_reduction.reduced})")
        return payload, "\n".join(lines)
    t = parse_type_expr(args.space)
    b = blowup_dim2_normalized(t, w)
    raw = blowup_charts_quotient(t, w)
    payload = {
        "space": str(t), "weights": list(w), "e": b.e, "beta": b.beta, "mu": b.mu,
        "charts": [str(c) for c in b.charts],
        "raw_charts": [str(c.space) for c in raw],
        "exceptional_reduction": list(b.exceptional_reduction),
    }
    lines = [f"e = {b.e}, beta = {b.beta}, mu = {b.mu}"]
    lines += [f"chart {i + 1}: {c} (raw {r.space})" for i, (c, r) in enumerate(zip(b.charts, raw))]
    lines.append("E -> P^1: [x:y] -> [x^{}:y^{}]".format(*b.exceptional_reduction))
    return payload, "\n".join(lines)


def cmd_brieskorn(args):
    rep = brieskorn_qresolution(args.a, args.b, args.c)
    payload = {
        "exponents": list(rep.exponents), "weights": list(rep.weights),
        "origin_types": [str(t) for t in rep.origin_types],
        "axis_types": [str(t) for t in rep.axis_types],
        "exceptional_reduced": list(rep.exceptional.reduced),
        "strict_transform": rep.strict_transform,
    }
    text = "\n".join([
        f"weights {tuple(rep.weights)}",
        "origin points: " + ", ".join(payload["origin_types"]),
        "transversal types: " + ", ".join(payload["axis_types"]),
        f"E ~ P({rep.exceptional.reduced})",
    ])
    return payload, text


def _component_arg(token: str):
    name, _, coeff = token.partition("=")
    try:
        return name, Fraction(coeff) if coeff else Fraction(1)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coefficient in {token!r}") from exc


def cmd_weil2cartier(args):
    if (args.wps is None) == (args.blowup is None):
        raise UsageError("give exactly one of --wps or --blowup")
    if args.wps is not None:
        atlas = projective_plane_atlas(parse_weights(args.wps))
    else:
        if args.weights is None:
            raise UsageError("--blowup needs --weights")
        atlas = blowup_dim2_atlas(
            blowup_dim2_normalized(parse_type_expr(args.blowup), parse_weights(args.weights)))
    coeffs = {}
    for token in args.component:
        name, c = _component_arg(token)
        if name.isdigit() and args.wps is not None:
            name = f"D{name}"
        coeffs[name] = coeffs.get(name, 0) + c
    D = WeilQDivisor(coeffs)
    C = weil_to_cartier(atlas, D)
    pieces = []
    for piece in C.pieces:
        for chart_id, eq in piece.equations.items():
            names = atlas.chart(chart_id).variables
            pieces.append({"coeff": _q(piece.coefficient), "chart": chart_id,
                           "equation": eq.numerator.format(names)})
    back = associated_weil(atlas, C)
    payload = {"weil": str(D), "pieces": pieces, "associated_weil": str(back)}
    lines = [f"{format_rational(Fraction(p['coeff']))} * {{({p['chart']}, {p['equation']})}}"
             for p in pieces]
    lines.append(f"associated Weil divisor: {back}")
    return payload, "\n".join(lines)


def cmd_intersect(args):
    w = parse_weights(args.wps)
    r = intersect_at_vertex(w, args.i, args.j, detail=True)
    payload = {"weights": list(w), "i": args.i, "j": args.j, "vertex": r.vertex,
               "chart": r.chart, "cartier_coefficient": _q(r.cartier_coefficient),
               "equation": r.equation, "restricted_order": r.restricted_order,
               "value": _q(r.value)}
    text = (f"D{args.j} = {format_rational(r.cartier_coefficient)} * {{({r.chart}, {r.equation})}} "
            f"near P{r.vertex}; order on D{args.i}: {r.restricted_order}\n"
            f"(D{args.i} . D{args.j})_P{r.vertex} = {format_rational(r.value)}")
    return payload, text


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit one JSON document")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS,
                        help="enumeration cap on group orders (default 10^6)")

    parser = _Parser(prog="vmanifold", parents=[common],
                     description="Quotient singularities, weighted blow-ups and Q-divisors.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    add("normalize", cmd_normalize, "normalize a cyclic type").add_argument("type")
    add("canonical", cmd_canonical, "canonical form of a cyclic surface type").add_argument("type")
    p = add("moves", cmd_moves, "apply isomorphism-preserving moves")
    p.add_argument("type")
    p.add_argument("move", nargs="+", help="e.g. push:2,2  shift:0,1,1  permute-columns:1,0")
    add("group", cmd_group, "enumerate the image of the group").add_argument("type")

    p = add("wps", cmd_wps, "weighted projective spaces")
    p.add_argument("action", choices=["reduce", "charts", "singular"])
    p.add_argument("weights")

    for action in ("reduce", "charts", "singular"):
        p = add(f"wps-{action}", cmd_wps, f"same as 'wps {action}'")
        p.set_defaults(action=action)
        p.add_argument("weights")

    p = add("blowup", cmd_blowup, "weighted blow-up charts")
    p.add_argument("--space", required=True, help='"smooth" or a type "(d;a,b)"')
    p.add_argument("--weights", required=True)

    p = add("brieskorn", cmd_brieskorn, "Q-resolution of x^a + y^b + z^c")
    for name in "abc":
        p.add_argument(name, type=int)

    p = add("weil2cartier", cmd_weil2cartier, "write a Weil Q-divisor as Q-Cartier")
    p.add_argument("--wps")
    p.add_argument("--blowup")
    p.add_argument("--weights")
    p.add_argument("--component", action="append", required=True,
                   help="component name or axis index, optionally NAME=COEFF")

    p = add("intersect", cmd_intersect, "local intersection of two axes of P^2_w")
    p.add_argument("--wps", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    return parser


def run(argv=None):
    """Execute one command; returns ``(document, text, exit_code)``."""
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        args.cap = getattr(args, "cap", qs.DEFAULT_CAP)
        payload, text = args.func(args)
    except VManifoldError as exc:
        code = EXIT_USAGE if isinstance(exc, UsageError) else EXIT_FAILURE
        doc = {"status": "error", "kind": exc.kind, "message": str(exc), "payload": None}
        return doc, f"error ({exc.kind}): {exc}", code, as_json
    doc = {"status": "ok", "payload": payload, "message": text}
    return doc, text, EXIT_OK, as_json


def main(argv=None) -> int:
    if argv is None and len(sys.argv) == 1 or argv == []:
        build_parser().print_help()
        return EXIT_USAGE
    doc, text, code, as_json = run(argv)
    if as_json:
        print(json.dumps(doc, sort_keys=True))
    else:
        print(text, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
