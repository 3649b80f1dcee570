"""mckatz command line.

Roots of unity are written as exponent rationals, so "1/2" means -1.
Exit codes: 0 success, 1 failed pipeline or unexpected error, 2 violated
precondition, 3 unparsable input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import golden
from .cyclo import DEFAULT_CONDUCTOR, RootOfUnity, format_rational, parse_rational
from .errors import PreconditionError
from .linalg import (
    Matrix,
    definiteness,
    form_symmetry,
    hermitian_scaling,
    invariant_form,
    is_hermitian,
)
from .pipeline import cmd_reproduce
from .poly import Poly
from .random_tuples import random_irreducible_triple
from .rigidity import LocalData, katz_reduce, mc_numerology, scott_and_indices
from .tuples import (
    MonodromyTuple,
    algebra_span_dim,
    equivalent,
    is_irreducible,
    levelt_hypergeometric,
    middle_convolution,
    mt_twist,
    wedge_square_tuple,
)
from .weyl import (
    CATALOG,
    ThetaOperator,
    adjoint,
    build_remark_family,
    convolution_ca,
    divide_left_theta,
    is_formally_self_adjoint,
    op_mul,
    remark_invariants,
    riemann_scheme,
    shift_theta,
)

EXIT_OK, EXIT_FAIL, EXIT_PRECONDITION, EXIT_PARSE = 0, 1, 2, 3


class ParseError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers (everything that can fail on bad input raises ParseError)
# ---------------------------------------------------------------------------


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse(fn, *args, what="input"):
    try:
        return fn(*args)
    except PreconditionError:
        raise
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad {what}: {exc}") from exc


def _rational(s: str) -> Fraction:
    return _parse(parse_rational, s, what=f"rational {s!r}")


def _rational_list(s: str) -> list:
    return [_rational(x) for x in s.split(",") if x.strip()]


def load_tuple(path: str) -> MonodromyTuple:
    return _parse(MonodromyTuple.from_json, _read_json(path), what="tuple JSON")


def load_operator(path: str) -> ThetaOperator:
    if path.startswith("catalog:"):
        name = path.split(":", 1)[1]
        if name not in CATALOG:
            raise ParseError(f"unknown catalog operator {name!r}; known: {', '.join(CATALOG)}")
        return CATALOG[name]()
    return _parse(ThetaOperator.from_json, _read_json(path), what="operator JSON")


def load_local_data(path: str) -> LocalData:
    obj = _read_json(path)
    if isinstance(obj, dict) and "matrices" in obj:
        return load_tuple(path).local_data()
    return _parse(LocalData.from_json, obj, what="local data JSON")


def load_matrix(path: str) -> Matrix:
    return _parse(Matrix.from_json, _read_json(path), what="matrix JSON")


# ---------------------------------------------------------------------------
# subcommands; each returns (json payload, pretty text or None, exit code)
# ---------------------------------------------------------------------------


def do_reproduce(args):
    rep = _parse(cmd_reproduce, args.stage, what="stage")
    code = EXIT_OK if rep.verdict == "pass" else EXIT_FAIL
    return rep.to_json(timing=args.timing), rep.pretty(), code


def do_mc(args):
    t = load_tuple(args.file)
    out = middle_convolution(t, RootOfUnity(_rational(args.lam)), check_irreducible=not args.no_check)
    return out.to_json(), None, EXIT_OK


def do_mt(args):
    t = load_tuple(args.file)
    return mt_twist(t, _rational_list(args.lambdas)).to_json(), None, EXIT_OK


def do_wedge(args):
    return wedge_square_tuple(load_tuple(args.file)).to_json(), None, EXIT_OK


def do_levelt(args):
    t = levelt_hypergeometric(_rational_list(args.exp0), _rational_list(args.expinf), args.conductor)
    return t.to_json(), None, EXIT_OK


def do_irreducible(args):
    t = load_tuple(args.file)
    dim = algebra_span_dim(t)
    return {"irreducible": is_irreducible(t), "span_dim": dim, "rank": t.rank}, None, EXIT_OK


def do_equivalent(args):
    a, b = load_tuple(args.a), load_tuple(args.b)
    eq = equivalent(a, b)
    payload = {"equivalent": eq.equivalent,
               "witness": eq.witness.to_json() if eq.witness is not None else None}
    return payload, None, EXIT_OK


def do_forms(args):
    t = load_tuple(args.file)
    gens = list(t.matrices[: t.r])
    forms = invariant_form(gens, args.kind)
    payload = {"kind": args.kind, "dimension": len(forms), "forms": []}
    for g in forms:
        entry = {"matrix": g.to_json(), "symmetry": form_symmetry(g),
                 "nondegenerate": g.rank() == g.rows}
        if args.kind == "sesquilinear":
            c = hermitian_scaling(g)
            entry["hermitian_scaling"] = c.to_json() if c is not None else None
            if c is not None:
                h = g.scale(c)
                entry["hermitian"] = is_hermitian(h)
                entry["definiteness"] = definiteness(h)
        payload["forms"].append(entry)
    return payload, None, EXIT_OK


def do_numerology(args):
    d = load_local_data(args.file)
    out = mc_numerology(d, RootOfUnity(_rational(args.lam)))
    return out.to_json(), str(out), EXIT_OK


def do_katz(args):
    tr = katz_reduce(load_local_data(args.file))
    text = "\n".join(f"{s.rank_before} -> {s.rank_after}  λ={format_rational(s.lam.exponent)}"
                     for s in tr.steps) + f"\nstatus: {tr.status}"
    return tr.to_json(), text, EXIT_OK


def do_scott(args):
    if args.form:
        t = load_tuple(args.file)
        rep = scott_and_indices(t.local_data(), t.matrices, load_matrix(args.form))
    else:
        rep = scott_and_indices(load_local_data(args.file))
    return rep.to_json(), None, EXIT_OK


def _op_out(op: ThetaOperator):
    return op.to_json(), op.pretty(), EXIT_OK


def do_conv_ca(args):
    return _op_out(convolution_ca(load_operator(args.file), _rational(args.a)))


def do_shift(args):
    return _op_out(shift_theta(load_operator(args.file), _rational(args.a)))


def do_adjoint(args):
    return _op_out(adjoint(load_operator(args.file)))


def do_mul(args):
    return _op_out(op_mul(load_operator(args.a), load_operator(args.b)))


def do_divide(args):
    coeffs = _parse(json.loads, args.q, what="theta polynomial")
    q = _parse(lambda c: Poly(parse_rational(x) for x in c), coeffs, what="theta polynomial")
    return _op_out(divide_left_theta(load_operator(args.file), q))


def do_scheme(args):
    op = load_operator(args.file)
    points = None
    if args.points:
        points = [p if p.strip().lower() in ("inf", "infinity") else _rational(p)
                  for p in args.points.split(",")]
    rs = riemann_scheme(op, points)
    payload = rs.to_json()
    payload["fuchs_ok"] = rs.fuchs_ok()
    payload["self_adjoint"] = is_formally_self_adjoint(op) or is_formally_self_adjoint(op, "none")
    return payload, rs.table(), EXIT_OK


def do_remark(args):
    params = [_rational(v) for v in (args.a1, args.c1, args.c2, args.c3)]
    l4, big = build_remark_family(*params)
    v1, v2 = remark_invariants(*params)
    payload = {"L4": l4.to_json(), "L": big.to_json(),
               "v1": format_rational(v1), "v2": format_rational(v2)}
    text = f"v1 = {format_rational(v1)}, v2 = {format_rational(v2)}\nL4 =\n{l4.pretty()}\nL =\n{big.pretty()}"
    return payload, text, EXIT_OK


def do_random_triple(args):
    rng = random.Random(args.seed)
    return random_irreducible_triple(rng, args.rank).to_json(), None, EXIT_OK


def do_golden(args):
    bad = golden.verify_manifest()
    return {"directory": str(golden.golden_dir()), "mismatched": bad}, None, (EXIT_OK if not bad else EXIT_FAIL)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--conductor", type=int, default=DEFAULT_CONDUCTOR,
                        help="cyclotomic conductor for constructed matrices (default 60)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="emit JSON (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="emit human readable text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized subcommands")
    common.set_defaults(pretty=False)

    p = argparse.ArgumentParser(prog="mckatz", description="Exact middle convolution toolkit.")
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    sp = add("reproduce", do_reproduce, "replay the full construction with checkpoints")
    sp.add_argument("--stage", type=int, default=None, help="run stages 1..N only")
    sp.add_argument("--timing", action="store_true", help="include per-stage timings")

    sp = add("mc", do_mc, "middle convolution of a tuple")
    sp.add_argument("file")
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--no-check", action="store_true", help="skip the irreducibility check")

    sp = add("mt", do_mt, "MT twist of a tuple")
    sp.add_argument("file")
    sp.add_argument("--lambdas", required=True, help="comma separated exponents, product 1")

    add("wedge", do_wedge, "exterior square tuple").add_argument("file")

    sp = add("levelt", do_levelt, "Levelt hypergeometric triple")
    sp.add_argument("--exp0", required=True)
    sp.add_argument("--expinf", required=True)

    add("irreducible", do_irreducible, "Burnside irreducibility test").add_argument("file")

    sp = add("equivalent", do_equivalent, "simultaneous conjugacy test")
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("forms", do_forms, "invariant bilinear or sesquilinear forms")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=("bilinear", "sesquilinear"), default="bilinear")

    sp = add("numerology", do_numerology, "predicted local data of MC_lambda")
    sp.add_argument("file")
    sp.add_argument("--lambda", dest="lam", required=True)

    add("katz-reduce", do_katz, "greedy Katz reduction of local data").add_argument("file")

    sp = add("scott", do_scott, "Scott inequalities and rigidity indices")
    sp.add_argument("file")
    sp.add_argument("--form", help="antisymmetric form (matrix JSON) for Sp centralizers")

    sp = add("conv-ca", do_conv_ca, "operator convolution C_a")
    sp.add_argument("file")
    sp.add_argument("--a", required=True)

    sp = add("shift", do_shift, "theta shift p(θ) -> p(θ - a)")
    sp.add_argument("file")
    sp.add_argument("--a", required=True)

    add("adjoint", do_adjoint, "formal adjoint").add_argument("file")

    sp = add("mul", do_mul, "operator product A*B")
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("divide", do_divide, "exact left division by a theta polynomial")
    sp.add_argument("file")
    sp.add_argument("--q", required=True, help='coefficients low to high, e.g. \'["-17", "30"]\'')

    sp = add("scheme", do_scheme, "Riemann scheme")
    sp.add_argument("file")
    sp.add_argument("--points", help="comma separated points, default: all singular points")

    sp = add("remark-family", do_remark, "parametric order-6 family")
    for name in ("a1", "c1", "c2", "c3"):
        sp.add_argument(f"--{name}", required=True)

    sp = add("random-triple", do_random_triple, "seeded random irreducible triple")
    sp.add_argument("--rank", type=int, default=None, choices=(2, 3))

    add("golden", do_golden, "verify golden-file checksums")
    return p


def _emit(payload, text, pretty: bool):
    if pretty and text is not None:
        print(text)
    else:
        print(json.dumps(payload, indent=2, ensure_ascii=False))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        payload, text, code = args.fn(args)
    except ParseError as exc:
        _emit({"error": str(exc), "kind": "parse"}, None, False)
        return EXIT_PARSE
    except PreconditionError as exc:
        _emit({"error": str(exc), "kind": type(exc).__name__}, None, False)
        return EXIT_PRECONDITION
    _emit(payload, text, args.pretty)
    return code


if __name__ == "__main__":
    sys.exit(main())
