"""``ncq`` command line: one subcommand per computation, JSON or flat text reports.

Exit codes: 0 when every check in the command passes, 1 when a check fails,
2 on an input or computation error (reported as a JSON error object).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import BadParameter, NcqError
from .scalar import INFINITE, FieldMode


def _str(v):
    return "infinite" if v == INFINITE else v


# -- session -----------------------------------------------------------------

PRESETS = ("type-s-prime-cy", "type-s-prime", "quantum-plane")


def build_presentation(args):
    from .dsl import parse_presentation
    from .ncalg import quantum_plane, type_s_prime, type_s_prime_cy

    mode = FieldMode.parse(args.field)
    if args.dsl:
        with open(args.dsl) as fh:
            text = fh.read()
        return parse_presentation(text, mode=mode, beta=mode(args.beta) if args.beta else None)
    if args.preset == "type-s-prime-cy":
        return type_s_prime_cy(mode)
    if args.preset == "type-s-prime":
        if args.beta is None:
            raise BadParameter("preset type-s-prime needs --beta")
        return type_s_prime(mode, mode(args.beta))
    return quantum_plane(mode)


def _is_cy(p):
    return p.name == "type-s-prime-cy"


def _check(label, ok, **extra):
    return {"check": label, "ok": bool(ok), **extra}


# -- commands ----------------------------------------------------------------

def cmd_hilbert(args, p):
    from .ncalg import build_rewrite_system

    s = build_rewrite_system(p)
    dims = [s.hilbert_dimension(d) for d in range(args.max_degree + 1)]
    expected = [s.expected_hilbert_dimension(d) for d in range(args.max_degree + 1)]
    checks = [_check("dimensions match (1-t)^-n", dims == expected),
              _check("overlaps resolve", all(r["resolved"] for r in s.overlap_report))]
    return {"dims": dims, "expected": expected, "overlaps": s.overlap_report}, checks


def cmd_center(args, p):
    from .center import (center_generators, central_basis, generators_by_degree,
                         expected_center_generators, subalgebra_dimension)
    from .ncalg import build_rewrite_system

    s = build_rewrite_system(p)
    gens = generators_by_degree(s, center_generators(s, args.max_degree))
    ref = expected_center_generators(s) if _is_cy(p) else None
    degrees = []
    for d in range(args.max_degree + 1):
        dim = central_basis(s, d).dimension
        degrees.append({
            "degree": d, "center_dim": dim,
            "new_generators": [str(g) for g in gens.get(d, [])],
            "matches_paper": None if ref is None else dim == subalgebra_dimension(s, ref, d),
        })
    checks = [] if ref is None else [
        _check("center dims equal the generated subalgebra", all(r["matches_paper"] for r in degrees))]
    return {"degrees": degrees, "reference_generators": [str(g) for g in ref or []]}, checks


def cmd_kappa(args, p):
    from .center import (central_element_g, g_power_expansion, kappa_closed_forms_hold,
                         kappa_recursion_holds)
    from .ncalg import build_rewrite_system

    mode = p.mode
    k = g_power_expansion(mode, args.n)
    result = {"n": args.n, "coefficients": {str(j): str(v) for j, v in sorted(k.coefficients.items())},
              "monomials": {str(j): list(k.monomial(j)) for j in k.coefficients}}
    checks = [_check("closed forms", kappa_closed_forms_hold(mode, k)),
              _check("recursion", all(kappa_recursion_holds(mode, k).values()))]
    if _is_cy(p):
        s = build_rewrite_system(p)
        checks.append(_check("equals direct powering",
                             k.as_polynomial(s) == s.power(central_element_g(s), args.n)))
    return result, checks


def cmd_point_scheme(args, p):
    from .geometry import expected_lambda, point_scheme

    data = point_scheme(p)
    result = {"components": data.component_strings(), "whole_space": data.whole_space,
              "lambda": None if data.lam is None else str(data.lam),
              "cubic": None if data.cubic is None else data.cubic.to_string(p.generators)}
    checks = []
    if _is_cy(p):
        checks.append(_check("lambda = (a^3-1)/a", data.lam == expected_lambda(p.mode)))
    return result, checks


def cmd_sigma(args, p):
    from .geometry import geometry_report

    rep = geometry_report(p, args.samples)
    if not (args.order or args.norm):
        args.order = args.norm = True
    if not args.order:
        rep.pop("sigma_order", None)
    if not args.norm:
        rep.pop("sigma_norm", None)
    checks = []
    if _is_cy(p):
        m = p.mode
        if args.order:
            checks.append(_check("order = |a|", rep["sigma_order"] == _str(m.order_of_alpha())))
        if args.norm:
            checks.append(_check("norm = |a^3|", rep["sigma_norm"] == _str(m.order_of_alpha_cubed())))
        checks.append(_check("sigma is linear on generic component points", rep["symbolic_check"]))
        checks.append(_check("formulas agree at (0:1:0), (0:0:1)", rep["intersections_agree"]))
    return rep, checks


def cmd_veronese(args, p):
    from .ncalg import build_rewrite_system
    from .veronese import veronese_report

    rep = veronese_report(build_rewrite_system(p), args.r, args.max_degree)
    checks = [_check("Z(A^[r])_d = sum of twisted centers of A_rd",
                     all(d["matches_twisted_sum"] for d in rep["degrees"]))]
    return rep, checks


def _read_sample(path, mode):
    from .weyl import SimpleModuleParam, default_sample

    if not path:
        return default_sample(mode)
    with open(path) as fh:
        raw = json.load(fh)
    try:
        return [SimpleModuleParam(mode(str(lam)), mode(str(eta))) for lam, eta in raw]
    except (TypeError, ValueError):
        raise BadParameter("sample file must be a JSON list of [lambda, eta] pairs") from None


def cmd_weyl(args, p):
    from .weyl import build_pair, classify_sample

    sample = _read_sample(args.sample, p.mode)
    if args.classify:
        rep = classify_sample(p.mode, sample, reading=args.reading)
        checks = [_check("relation holds", all(e["relation_ok"] for e in rep["entries"])),
                  _check("irreducible", all(e["irreducible"] for e in rep["entries"])),
                  _check("pairwise inequivalent", rep.get("pairwise_inequivalent", True)),
                  _check("one orientation set for all pairs", len(rep["relation_orientation"]) <= 1)]
        return rep, checks
    pairs = [build_pair(p.mode, s, reading=args.reading) for s in sample]
    return {"pairs": [{"family": q.family, "params": q.params, "l": q.l,
                       "U": [[str(v) for v in r] for r in q.U],
                       "W": [[str(v) for v in r] for r in q.W]} for q in pairs]}, []


def cmd_localize(args, p):
    from .ncalg import build_rewrite_system
    from .weyl import weyl_report

    rep = weyl_report(build_rewrite_system(p))
    checks = [_check("(q, c) = (a^3, -a)", rep["expected_q_c"])] if _is_cy(p) else []
    return rep, checks


def cmd_quotient_x(args, p):
    from .geometry import geometry_report
    from .ncalg import build_rewrite_system, quantum_plane
    from .weyl import quotient_by_x

    q = quotient_by_x(build_rewrite_system(p))
    qs = build_rewrite_system(q)
    geo = geometry_report(q)
    rep = {"presentation": q.to_text(), "hilbert": [qs.hilbert_dimension(d) for d in range(6)],
           "point_scheme": geo["components"], "sigma": geo["sigma"]}
    checks = [_check("quotient is k<y,z>/(yz - a zy)", q == quantum_plane(p.mode))] if _is_cy(p) else []
    return rep, checks


def cmd_check_paper(args, p):
    from . import acceptance

    crits = acceptance.run_for_mode(args.alpha) if args.alpha else acceptance.run_all()
    out = []
    for c in crits:
        d = c.as_dict()
        if not args.timings:
            d.pop("seconds")
        out.append(d)
    checks = [_check(f"criterion {c.number}: {c.title}", c.ok, anchor=c.anchor) for c in crits]
    return {"criteria": out}, checks


COMMANDS = {
    "hilbert": cmd_hilbert, "center": cmd_center, "kappa": cmd_kappa,
    "point-scheme": cmd_point_scheme, "sigma": cmd_sigma, "veronese": cmd_veronese,
    "weyl": cmd_weyl, "localize": cmd_localize, "quotient-x": cmd_quotient_x,
    "check-paper": cmd_check_paper,
}


# -- argument parsing ----------------------------------------------------------

def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="generic", help="generic | cyclotomic(n,e)")
    common.add_argument("--preset", choices=PRESETS, default="type-s-prime-cy")
    common.add_argument("--beta", help="second parameter for the type-s-prime preset")
    common.add_argument("--dsl", metavar="FILE", help="presentation file (overrides --preset)")
    common.add_argument("--json", action="store_true", help="emit JSON")

    parser = argparse.ArgumentParser(prog="ncq", description="Exact computations for Type S' quantum planes.")
    parser.add_argument("--version", action="version", version=f"ncq {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("hilbert", parents=[common])
    sp.add_argument("--max-degree", type=int, default=12)
    sp = sub.add_parser("center", parents=[common])
    sp.add_argument("--max-degree", type=int, default=12)
    sp = sub.add_parser("kappa", parents=[common])
    sp.add_argument("--n", type=int, default=5)
    sub.add_parser("point-scheme", parents=[common])
    sp = sub.add_parser("sigma", parents=[common])
    sp.add_argument("--order", action="store_true")
    sp.add_argument("--norm", action="store_true")
    sp.add_argument("--samples", type=int, default=20)
    sp = sub.add_parser("veronese", parents=[common])
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--max-degree", type=int, default=4)
    sp = sub.add_parser("weyl", parents=[common])
    sp.add_argument("--classify", action="store_true")
    sp.add_argument("--sample", metavar="FILE")
    sp.add_argument("--reading", choices=("derived", "display"), default="derived",
                    help="Weyl parameter a^3 (derived) or a (as displayed)")
    sub.add_parser("localize", parents=[common])
    sub.add_parser("quotient-x", parents=[common])
    sp = sub.add_parser("check-paper", parents=[common])
    sp.add_argument("--alpha", help="restrict to one field mode, e.g. cyclotomic(6,1)")
    sp.add_argument("--timings", action="store_true", help="include per-criterion seconds")
    return parser


def flatten(obj, prefix=""):
    """Text rendering: one ``path: value`` line per leaf."""
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            yield from flatten(v, f"{prefix}[{i}]")
    else:
        yield f"{prefix}: {json.dumps(obj) if not isinstance(obj, str) else obj}"


def run(argv=None):
    """Returns (report dict, exit code)."""
    parser = make_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command, "field": args.field}
    try:
        p = build_presentation(args)
        report["presentation"] = p.to_text()
        result, checks = COMMANDS[args.command](args, p)
    except NcqError as exc:
        report.update(ok=False, error=exc.to_json())
        return report, 2
    except OSError as exc:
        report.update(ok=False, error={"type": "IOError", "message": str(exc)})
        return report, 2
    ok = all(c["ok"] for c in checks)
    report.update(ok=ok, checks=checks, result=result)
    return report, 0 if ok else 1


def main(argv=None):
    report, code = run(argv)
    as_json = "--json" in (argv if argv is not None else sys.argv[1:])
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in flatten(report):
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
