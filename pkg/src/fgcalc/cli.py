"""``fgcalc``: command-line front end.

Every command prints one canonical text result, or with ``--format json`` a
single object ``{command, inputs, result, order, ring}``.  Exit status is 0
on success, 2 for unparsable input, 3 for a violated precondition, 4 when a
verification fails and 5 for an unsupported ring.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import divisor, fgl, hopf, residue, rings, weierstrass
from .errors import EXIT_PRECONDITION, FgcalcError
from .syntax import (format_poly, parse_elem, parse_elem_list, parse_laurent,
                     parse_poly, parse_ring, parse_series)

DEFAULT_ORDER = 8


class _Result:
    """Text rendering plus a JSON-friendly value."""

    def __init__(self, text, data=None, ring=None):
        self.text = text
        self.data = text if data is None else data
        self.ring = ring


def _vars(args, default):
    names = tuple(v.strip() for v in (args.vars or default).split(","))
    return tuple(v for v in names if v)


def _ring(args):
    return parse_ring(args.ring)


def _load_fgl(args, flag="fgl"):
    if getattr(args, "universal", False) and flag == "fgl":
        return fgl.universal_fgl(args.order).fgl
    text = getattr(args, flag)
    if text is None:
        raise _Usage(f"--{flag.replace('_', '-')} is required")
    series = parse_series(text, _ring(args), fgl.XY, args.order)
    return fgl.fgl_validate(series)


def _series(args, text=None):
    return parse_series(args.series if text is None else text, _ring(args),
                        _vars(args, "x"), args.order)


def _elems(xs):
    return [str(x) for x in xs]


def _hopf(args):
    return hopf.load_hopf(args.file)


class _Usage(Exception):
    pass


# -- commands ---------------------------------------------------------------------

def cmd_fgl_check(args):
    F = _load_fgl(args)
    return _Result(f"valid formal group law to order {F.order}", True, F.ring)


def cmd_fgl_universal(args):
    U = fgl.universal_fgl(args.order)
    return _Result(str(U.F), str(U.F), U.ring)


def _xyz(e):
    parts = []
    for v, k in zip("xyz", e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts) or "1"


def cmd_fgl_relations(args):
    U = fgl.universal_fgl(args.order)
    rows = [(_xyz(e), str(p)) for e, p in U.relations]
    text = "\n".join(f"[{m}] {p}" for m, p in rows) or "no relations"
    return _Result(text, [{"monomial": m, "relation": p} for m, p in rows], U.ring)


def cmd_fgl_nseries(args):
    F = _load_fgl(args)
    s = fgl.n_series(F, args.n)
    return _Result(str(s), ring=F.ring)


def cmd_fgl_conjugate(args):
    F = _load_fgl(args)
    f = parse_series(args.coord, F.ring, ("x",), args.order)
    G = fgl.fgl_conjugate(F, f)
    return _Result(str(G), ring=F.ring)


def cmd_fgl_hom_check(args):
    F = _load_fgl(args)
    G = _load_fgl(args, "fgl2")
    phi = parse_series(args.phi, F.ring, ("x",), args.order)
    ok = fgl.hom_check(F, G, phi)
    return _Result("true" if ok else "false", ok, F.ring)


def cmd_fgl_invdiff(args):
    F = _load_fgl(args)
    return _Result(str(fgl.invariant_differential(F)), ring=F.ring)


def cmd_fgl_log(args):
    F = _load_fgl(args)
    return _Result(str(fgl.fgl_log(F)), ring=F.ring)


def cmd_fgl_height(args):
    F = _load_fgl(args)
    h = fgl.height(F, args.prime)
    data = {"height": h.value, "unit": h.unit, "infinite": h.infinite}
    return _Result(str(h), data, F.ring)


def cmd_fgl_landweber(args):
    F = _load_fgl(args)
    terms = fgl.landweber_sequence(F, args.prime, args.nmax)
    data = [{"n": t.n, "value": None if t.value is None else str(t.value),
             "quotient": None if t.ring is None else str(t.ring),
             "regular": t.regular} for t in terms]
    return _Result("\n".join(str(t) for t in terms), data, F.ring)


def cmd_fgl_frobenius_decompose(args):
    f = _series(args)
    v = fgl.frobenius_decompose(f, args.prime)
    return _Result(str(v), ring=f.ring)


def cmd_fgl_additive_decompose(args):
    f = _series(args)
    coeffs = fgl.additive_decompose(f, args.prime)
    return _Result(", ".join(_elems(coeffs)) or "0", _elems(coeffs), f.ring)


def cmd_ws_degree(args):
    g = _series(args)
    rep = weierstrass.weierstrass_degree(g)
    data = {"degree": rep.degree,
            "nilpotent_witnesses": [list(w) for w in rep.nilpotent_witnesses]}
    return _Result(str(rep.degree), data, g.ring)


def cmd_ws_factor(args):
    g = _series(args)
    h, u = weierstrass.weierstrass_factor(g)
    hs = format_poly(h, g.vars[0])
    return _Result(f"h = {hs}\nu = {u}", {"h": hs, "u": str(u)}, g.ring)


def cmd_ws_reduce(args):
    g = _series(args)
    f = _series(args, args.f)
    r = weierstrass.weierstrass_reduce(f, g)
    return _Result(format_poly(r, g.vars[0]), ring=g.ring)


def _divisor(args, flag="divisor"):
    return divisor.Divisor.from_poly(parse_poly(getattr(args, flag), _ring(args)))


def cmd_div_frompoints(args):
    ring = _ring(args)
    D = divisor.divisor_from_points(parse_elem_list(args.points, ring), ring)
    return _Result(str(D), ring=ring)


def cmd_div_sum(args):
    D = divisor.divisor_sum(_divisor(args), _divisor(args, "divisor2"))
    return _Result(str(D), ring=D.ring)


def cmd_div_star(args):
    F = _load_fgl(args)
    D = divisor.divisor_star(F, _divisor(args), _divisor(args, "divisor2"))
    return _Result(str(D), ring=D.ring)


def cmd_div_lambda(args):
    F = _load_fgl(args)
    roots = parse_elem_list(args.points, F.ring)
    D = divisor.divisor_lambda(F, roots, args.k)
    return _Result(str(D), ring=F.ring)


def cmd_div_chern(args):
    cs = divisor.chern_coefficients(_divisor(args))
    return _Result(", ".join(_elems(cs)) or "()", _elems(cs), args.ring)


def _laurent(args):
    return parse_laurent(args.series, _ring(args), _vars(args, "x")[0], args.order)


def cmd_mero_deg(args):
    f = _laurent(args)
    d = residue.mero_degree(f)
    if isinstance(d, residue.SplitDegree):
        data = [{"idempotent": str(e), "component": str(r), "degree": k}
                for e, r, k in d.parts]
        return _Result(str(d), data, f.ring)
    return _Result(str(d), d, f.ring)


def cmd_mero_factor(args):
    f = _laurent(args)
    fac = residue.mero_factor(f)
    data = {"degree": fac.degree, "unit": str(fac.unit), "tail": str(fac.tail)}
    text = f"k = {fac.degree}\nu = {fac.unit}\ng = {fac.tail}"
    return _Result(text, data, f.ring)


def cmd_res(args):
    f = _laurent(args)
    return _Result(str(residue.residue(f)), ring=f.ring)


def cmd_ring_nilpotent(args):
    ring = _ring(args)
    a = parse_elem(args.elem, ring)
    if rings.is_nilpotent(a):
        m = rings.nilpotency_index(a)
        return _Result(f"true (index {m})", {"nilpotent": True, "index": m}, ring)
    return _Result("false", {"nilpotent": False}, ring)


def cmd_ring_unit(args):
    ring = _ring(args)
    a = parse_elem(args.elem, ring)
    if rings.is_unit(a):
        inv = str(rings.invert_unit(a))
        return _Result(f"true (inverse {inv})", {"unit": True, "inverse": inv}, ring)
    return _Result("false", {"unit": False}, ring)


def cmd_ring_lift_idempotent(args):
    ring = _ring(args)
    e = rings.lift_idempotent(parse_elem(args.elem, ring))
    return _Result(str(e), ring=ring)


def cmd_ring_split(args):
    ring = _ring(args)
    parts = rings.split_ring(ring)
    data = [{"idempotent": str(e), "component": str(r)} for e, r in parts]
    text = "\n".join(f"{e} -> {r}" for e, r in parts)
    return _Result(text, data, ring)


def cmd_hopf_check(args):
    H = _hopf(args)
    bad = hopf.hopf_check(H)
    text = "valid" if not bad else "\n".join(str(v) for v in bad)
    data = [{"identity": v.identity, "indices": list(v.indices), "detail": v.detail}
            for v in bad]
    return _Result(text, data, H.ring)


def cmd_hopf_antipode(args):
    H = _hopf(args)
    chi = hopf.hopf_antipode(H)
    rows = [format_basis_vector(row) for row in chi]
    text = "\n".join(f"chi(e{i}) = {r}" for i, r in enumerate(rows))
    return _Result(text, rows, H.ring)


def format_basis_vector(v):
    from .rings import join_terms
    from .series import _coeff_times
    parts = [_coeff_times(c, f"e{k}") for k, c in enumerate(v) if c]
    return join_terms(parts) if parts else "0"


def cmd_hopf_dual(args):
    H = _hopf(args)
    D = hopf.cartier_dual(H)
    return _Result(hopf.dumps_hopf(D).rstrip("\n"), hopf.to_json(D), H.ring)


def cmd_hopf_grouplike(args):
    H = _hopf(args)
    v = parse_elem_list(args.vector, H.ring)
    if len(v) != H.rank:
        raise _Usage(f"--vector needs {H.rank} entries, got {len(v)}")
    ok = hopf.grouplike_check(H, v)
    return _Result("true" if ok else "false", ok, H.ring)


# -- argument parsing -----------------------------------------------------------------

def _order(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("order must be >= 2")
    return n


# (name, handler, help, extra arguments)
COMMANDS = [
    ("fgl-check", cmd_fgl_check, "check the formal group law axioms", ["fgl"]),
    ("fgl-universal", cmd_fgl_universal, "symmetric universal series", []),
    ("fgl-relations", cmd_fgl_relations, "associativity relations of the universal series", []),
    ("fgl-nseries", cmd_fgl_nseries, "the n-series [n](x)", ["fgl", "n"]),
    ("fgl-conjugate", cmd_fgl_conjugate, "conjugate by a coordinate f", ["fgl", "coord"]),
    ("fgl-hom-check", cmd_fgl_hom_check, "is phi a homomorphism F -> G", ["fgl", "fgl2", "phi"]),
    ("fgl-invdiff", cmd_fgl_invdiff, "H(s) for the invariant differential", ["fgl"]),
    ("fgl-log", cmd_fgl_log, "logarithm over Q", ["fgl"]),
    ("fgl-height", cmd_fgl_height, "height in characteristic p", ["fgl", "prime"]),
    ("fgl-landweber", cmd_fgl_landweber, "Landweber sequence u0, u1, ...", ["fgl", "prime", "nmax"]),
    ("fgl-frobenius-decompose", cmd_fgl_frobenius_decompose, "write f = v(x^p)", ["series", "prime"]),
    ("fgl-additive-decompose", cmd_fgl_additive_decompose, "coefficients of an additive series", ["series", "prime"]),
    ("ws-degree", cmd_ws_degree, "Weierstrass degree", ["series"]),
    ("ws-factor", cmd_ws_factor, "Weierstrass factorization g = h*u", ["series"]),
    ("ws-reduce", cmd_ws_reduce, "reduce f modulo g", ["series", "f"]),
    ("div-frompoints", cmd_div_frompoints, "divisor of a list of points", ["points"]),
    ("div-sum", cmd_div_sum, "sum of two divisors", ["divisor", "divisor2"]),
    ("div-star", cmd_div_star, "translation product of two divisors", ["fgl", "divisor", "divisor2"]),
    ("div-lambda", cmd_div_lambda, "lambda^k of a split divisor", ["fgl", "points", "k"]),
    ("div-chern", cmd_div_chern, "Chern coefficients", ["divisor"]),
    ("mero-deg", cmd_mero_deg, "degree of a Laurent series", ["series"]),
    ("mero-factor", cmd_mero_factor, "factor f = x^k u g", ["series"]),
    ("res", cmd_res, "residue (coefficient of x^-1)", ["series"]),
    ("ring-nilpotent", cmd_ring_nilpotent, "nilpotence test", ["elem"]),
    ("ring-unit", cmd_ring_unit, "unit test", ["elem"]),
    ("ring-lift-idempotent", cmd_ring_lift_idempotent, "lift an almost-idempotent", ["elem"]),
    ("ring-split", cmd_ring_split, "split Z/n into local pieces", []),
    ("hopf-check", cmd_hopf_check, "check the Hopf algebra axioms", ["file"]),
    ("hopf-antipode", cmd_hopf_antipode, "antipode by recursion", ["file"]),
    ("hopf-dual", cmd_hopf_dual, "Cartier dual", ["file"]),
    ("hopf-grouplike", cmd_hopf_grouplike, "grouplike test", ["file", "vector"]),
]

_ARGS = {
    "fgl": (("--fgl",), dict(help="F(x, y) as an expression in x, y")),
    "fgl2": (("--fgl2",), dict(required=True, help="second law G(x, y)")),
    "coord": (("--coord",), dict(required=True, help="coordinate f(x)")),
    "phi": (("--phi",), dict(required=True, help="series phi(x)")),
    "n": (("--n",), dict(type=int, required=True)),
    "k": (("--k",), dict(type=int, required=True)),
    "prime": (("--prime", "-p"), dict(type=int, required=True)),
    "nmax": (("--nmax",), dict(type=int, default=2)),
    "series": (("--series",), dict(required=True, help="series expression")),
    "f": (("--f",), dict(required=True, help="series to reduce")),
    "points": (("--points",), dict(required=True, help="comma-separated ring elements")),
    "divisor": (("--divisor",), dict(required=True, help="monic polynomial in t")),
    "divisor2": (("--divisor2",), dict(required=True, help="monic polynomial in t")),
    "elem": (("--elem",), dict(required=True)),
    "file": (("--file",), dict(required=True, help="Hopf algebra JSON file")),
    "vector": (("--vector",), dict(required=True, help="comma-separated coordinates")),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="Z", help="ring, e.g. 'Z/4[e;e^2]'")
    common.add_argument("--order", type=_order, default=DEFAULT_ORDER,
                        help="truncation order (default 8)")
    common.add_argument("--vars", default=None, help="series variables, e.g. 'x,y'")
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="fgcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, handler, help_text, extra in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=help_text)
        for key in extra:
            flags, kw = _ARGS[key]
            p.add_argument(*flags, **kw)
        if "fgl" in extra:
            p.add_argument("--universal", action="store_true",
                           help="use the universal law at the given order")
        p.set_defaults(handler=handler)
    return parser


def _inputs(args):
    skip = {"handler", "format", "command", "order", "ring"}
    return {k: v for k, v in vars(args).items() if k not in skip and v not in (None, False)}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = args.format == "json"
    try:
        res = args.handler(args)
    except (FgcalcError, _Usage, ValueError) as exc:
        if isinstance(exc, FgcalcError):
            code, status = exc.code, exc.exit_status
        elif isinstance(exc, _Usage):
            code, status = "UsageError", 2
        else:
            code, status = "InvalidArgument", EXIT_PRECONDITION
        if as_json:
            print(json.dumps({"command": args.command, "inputs": _inputs(args),
                              "error": {"code": code, "message": str(exc)},
                              "order": args.order, "ring": args.ring}))
        else:
            print(f"error [{code}]: {exc}", file=sys.stderr)
        return status
    if as_json:
        ring = res.ring if res.ring is not None else args.ring
        print(json.dumps({"command": args.command, "inputs": _inputs(args),
                          "result": res.data, "order": args.order,
                          "ring": str(ring)}))
    else:
        print(res.text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
