"""Command-line interface: ``etaq <command> ...``.

Machine output is JSON on stdout, diagnostics go to stderr.  Exit codes:
0 success, 1 verification-negative result, 2 usage or input error.
"""

import argparse
import json
import os
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .arith import divisors
from .basis_search import SearchBounds, enumerate_eta_quotients, prune_to_rank_basis
from .errors import EtaqError, HalfIntegralWeight, NoSolution, Underdetermined
from .etacore import (
    EtaQuotient,
    cusp_order,
    eq_character,
    eq_weight,
    eta_quotient_expand,
    is_holomorphic_form,
    ligozat_check,
    partition_numbers,
)
from .identity_lab import (
    EtaSum,
    FEASIBLE,
    certify_identity,
    decompose_in_basis,
    j_from_eta_route,
    j_invariant_series,
    prime_level_feasibility,
)
from .qseries import QSeries
from .spaces import (
    SpaceSpec,
    dim_cusp_gamma0p,
    dim_eisenstein_gamma0p,
    eisenstein_target,
    genus_X0p,
    index_gamma0,
    sturm_bound,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _emit(payload):
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _read_json(source):
    try:
        if source in (None, "-"):
            text = sys.stdin.read()
        else:
            text = _fixture_or_path(source).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {source or 'stdin'}: {exc}") from exc


def _fixture_or_path(source):
    path = Path(source)
    if path.exists():
        return path
    fixture = resources.files("etaq") / "fixtures" / f"{source}.json"
    if fixture.is_file():
        return fixture
    raise InputError(f"no such file or fixture: {source}")


def _parse_quotient(data):
    try:
        if not isinstance(data, dict) or "level" not in data:
            raise InputError("eta-quotient JSON needs a 'level' field")
        exps = data.get("exponents", {})
        if not isinstance(exps, dict):
            raise InputError("'exponents' must be an object keyed by divisor")
        return EtaQuotient.make(data["level"], exps)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc


def _default_precision(level, weight):
    env = os.environ.get("ETAQ_PRECISION")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(f"ETAQ_PRECISION must be an integer, got {env!r}") from exc
    k = max(int(weight), 1)
    return sturm_bound(level, k) + 10


def _load_target(spec, precision):
    """A named Eisenstein series, an inline series object, or a series JSON file."""
    if isinstance(spec, dict):
        return QSeries.from_dict(spec)
    try:
        return eisenstein_target(spec, precision)
    except ValueError:
        pass
    data = _read_json(spec)
    try:
        return QSeries.from_dict(data)
    except (KeyError, ValueError, TypeError) as exc:
        raise InputError(f"{spec} is not a series JSON document: {exc}") from exc


def cmd_expand(args):
    f = _parse_quotient(_read_json(args.input))
    k = eq_weight(f)
    precision = args.precision or _default_precision(f.level, k if k.denominator == 1 and k > 0 else 1)
    _emit(eta_quotient_expand(f, precision).to_dict())
    return EXIT_OK


def cmd_check(args):
    f = _parse_quotient(_read_json(args.input))
    level = args.level or f.level
    report = ligozat_check(f, level)
    k = eq_weight(f)
    payload = {
        "quotient": f.to_dict(),
        "level": level,
        "weight": str(k),
        "cond_delta": report.cond_delta,
        "cond_N_over_delta": report.cond_N_over_delta,
        "integral_weight": report.integral_weight,
    }
    try:
        desc = eq_character(f, level)
        payload["s"] = str(desc.s_value)
        payload["character"] = {"discriminant": desc.discriminant, "certified": desc.certified, "trivial": desc.is_trivial}
    except HalfIntegralWeight:
        payload["character"] = None
    payload["cusp_orders"] = {str(d): str(cusp_order(f, d, level)) for d in divisors(level)}
    payload["holomorphic"] = is_holomorphic_form(f, level)
    payload["pass"] = report.passed
    _emit(payload)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_basis(args):
    found = enumerate_eta_quotients(
        args.level, args.weight, SearchBounds(r_max=args.rmax, max_results=args.max_results), args.character
    )
    basis = prune_to_rank_basis(found.quotients)
    _emit({
        "level": args.level,
        "weight": args.weight,
        "character": args.character,
        "r_max": args.rmax,
        "complete": found.complete,
        "candidates": len(found.quotients),
        "rank": len(basis),
        "basis": [f.to_dict() for f in basis],
    })
    return EXIT_OK


def cmd_decompose(args):
    if args.basis:
        data = _read_json(args.basis)
        if isinstance(data, dict):
            data = data.get("basis", [])
        basis = [_parse_quotient(item) for item in data]
    elif args.level and args.weight:
        found = enumerate_eta_quotients(args.level, args.weight, SearchBounds(r_max=args.rmax), args.character)
        basis = prune_to_rank_basis(found.quotients)
    else:
        raise InputError("decompose needs --basis FILE or --level and --weight")
    if not basis:
        raise InputError("empty basis")
    level = max(f.level for f in basis)
    k = eq_weight(basis[0])
    precision = args.precision or _default_precision(level, k)
    target = _load_target(args.target, precision)
    try:
        result = decompose_in_basis(target, basis, precision)
    except (NoSolution, Underdetermined) as exc:
        payload = {"status": "no-solution" if isinstance(exc, NoSolution) else "underdetermined", "detail": str(exc)}
        if isinstance(exc, Underdetermined):
            payload["kernel_dim"] = exc.kernel_dim
        _emit(payload)
        return EXIT_NEGATIVE
    _emit({"status": "ok", "target": args.target, "precision": precision, "terms": result.to_list()})
    return EXIT_OK


def cmd_certify(args):
    data = _read_json(args.input)
    try:
        space = SpaceSpec.from_dict(data["space"])
        etasum = EtaSum.from_list(data["terms"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed identity document: {exc}") from exc
    target_spec = args.target or data.get("target")
    if target_spec is None:
        raise InputError("no target given")
    n = args.coefficients or 0
    need = max(sturm_bound(space.level, space.weight) + 1, n)
    target = _load_target(target_spec, need)
    name = target_spec if isinstance(target_spec, str) else "inline"
    cert = certify_identity(space, target, etasum, n, target_name=name)
    _emit(cert.to_dict())
    return EXIT_OK if cert.valid else EXIT_NEGATIVE


def cmd_dims(args):
    p, k = args.prime, args.weight
    cusp = dim_cusp_gamma0p(p, k)
    eis = dim_eisenstein_gamma0p(p, k)
    _emit({"prime": p, "weight": k, "genus": genus_X0p(p), "cusp": cusp, "eisenstein": eis, "modular": cusp + eis})
    return EXIT_OK


def cmd_sturm(args):
    bound = sturm_bound(args.level, args.weight)
    _emit({
        "level": args.level,
        "weight": args.weight,
        "index": index_gamma0(args.level),
        "sturm_bound": bound,
        "certificate_coefficients": bound + 1,
        "note": "bound = floor(k * index / 12); certificates compare q^0 .. q^bound, one past the bound",
    })
    return EXIT_OK


def cmd_partition(args):
    if args.n < 0:
        raise InputError("n must be non-negative")
    _emit({"n": args.n, "p": partition_numbers(args.n)[args.n]})
    return EXIT_OK


def cmd_j(args):
    precision = args.precision or int(os.environ.get("ETAQ_PRECISION", 20))
    if args.route == "eta":
        if args.m != 1:
            raise InputError("the eta route computes j(q) only (m = 1)")
        series = j_from_eta_route(precision)
    else:
        series = j_invariant_series(args.m, precision)
    _emit(series.to_dict())
    return EXIT_OK


def cmd_feasible(args):
    verdict = prime_level_feasibility(args.prime, args.power, args.weight)
    _emit(verdict.to_dict())
    return EXIT_OK if verdict.status == FEASIBLE else EXIT_NEGATIVE


def _add_input(p, text):
    p.add_argument("input", nargs="?", default=None, help=text)
    p.add_argument("--json", dest="json_input", metavar="PATH", help="same as the positional input")


def build_parser():
    parser = argparse.ArgumentParser(prog="etaq", description="Exact eta-quotient toolkit for modular forms on Gamma0(N).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="q-expansion of an eta-quotient")
    _add_input(p, "eta-quotient JSON file, or - for stdin")
    p.add_argument("--precision", type=int)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("check", help="Ligozat conditions, weight, character and cusp orders")
    _add_input(p, "eta-quotient JSON file, or - for stdin")
    p.add_argument("--level", type=int, help="check at this multiple of the quotient's level")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("basis", help="enumerate holomorphic eta-quotients and prune to a basis")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--rmax", type=int, default=24)
    p.add_argument("--character", type=int, default=1)
    p.add_argument("--max-results", type=int, default=100_000)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("decompose", help="write a target as a combination of eta-quotients")
    p.add_argument("--target", required=True, help="E2, E4, E6, Ep2:<p>, or a series JSON file")
    p.add_argument("--basis", "--json", dest="basis", help="JSON list of eta-quotients (or a 'basis' output document)")
    p.add_argument("--level", type=int)
    p.add_argument("--weight", type=int)
    p.add_argument("--rmax", type=int, default=24)
    p.add_argument("--character", type=int, default=1)
    p.add_argument("--precision", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("certify", help="certify an identity through the Sturm bound")
    _add_input(p, "identity JSON file, packaged fixture name, or -")
    p.add_argument("--target", help="overrides the document's target: E4, E6, Ep2:<p>, or a series file")
    p.add_argument("--coefficients", type=int, help="compare at least this many coefficients")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("dims", help="dimensions of S_k, Eisenstein and M_k for Gamma0(p)")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("sturm", help="Sturm bound for M_k(Gamma0(N))")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.set_defaults(func=cmd_sturm)

    p = sub.add_parser("partition", help="the partition number p(n)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("j", help="q-expansion of j(q^m)")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--precision", type=int)
    p.add_argument("--route", choices=("eisenstein", "eta"), default="eisenstein")
    p.set_defaults(func=cmd_j)

    p = sub.add_parser("feasible", help="prime-power level feasibility of weight-k Eisenstein series")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--weight", type=int, default=2)
    p.set_defaults(func=cmd_feasible)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "json_input", None) is not None:
        if args.input is not None:
            parser.error("give the input either positionally or with --json, not both")
        args.input = args.json_input
    try:
        return args.func(args)
    except (InputError, EtaqError, ValueError, KeyError, TypeError) as exc:
        print(f"etaq {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
