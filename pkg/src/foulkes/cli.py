"""Command-line interface; every command prints one JSON envelope (or CSV for matrices)."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .characters import eps_coeff_matrix
from .carries import DEFAULT_TUPLE_CAP, ChainFlavor, carries_enumerate, carries_simulate, chain_spectral
from .errors import CapExceededError, ConsistencyError
from .groups import DEFAULT_GROUP_CAP, check_cap
from .idempotents import eulerian_idempotents, projector_rank, verify_transition
from .inner import ClassSequence, bracket, canonical_kernel, kernel_for_sequence, sequence_a
from .numerics import as_rational, rational_to_str
from .products import c_closed_form, product_coefficients
from .tables import LengthClassFunction, decompose_length_function, phi_table, top_index
from .verify import LEVELS, run_suite
from .zagier import p_distribution, verify_zagier_identity

SCHEMA = "foulkes/1"


class UsageError(Exception):
    """Bad parameter combination detected after argument parsing."""


class VerificationFailed(Exception):
    def __init__(self, payload):
        self.payload = payload


def _strs(row) -> list[str]:
    return [rational_to_str(v) for v in row]


def _check_group(r: int, n: int) -> None:
    if r < 1:
        raise UsageError(f"--r must be at least 1, got {r}")
    if n < 1:
        raise UsageError(f"--n must be at least 1, got {n}")


def _csv(rows) -> str:
    return "\n".join(",".join(str(v) for v in row) for row in rows) + "\n"


def cmd_table(args):
    _check_group(args.r, args.n)
    table = phi_table(args.r, args.n)
    if args.format == "csv":
        return table.to_csv()
    return table.to_json()


def cmd_decompose(args):
    _check_group(args.r, args.n)
    if (args.values is None) == (args.power is None):
        raise UsageError("give exactly one of --values or --power")
    if args.power is not None:
        theta = LengthClassFunction.power(args.r, args.n, as_rational(args.power))
    else:
        try:
            vals = [as_rational(v) for v in args.values.split(",")]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad --values: {exc}") from None
        expected = len(phi_table(args.r, args.n).column_lengths)
        if len(vals) != expected:
            raise UsageError(f"--values needs {expected} entries (ell = {args.n} down to {1 if args.r == 1 else 0})")
        theta = LengthClassFunction.from_columns(args.r, args.n, vals)
    return {
        "column_lengths": phi_table(args.r, args.n).column_lengths,
        "values": _strs(theta.columns()),
        "coefficients": _strs(decompose_length_function(theta)),
    }


def _index(name: str, v: int, r: int, n: int) -> None:
    top = top_index(r, n)
    if not 0 <= v <= top:
        raise UsageError(f"--{name} must lie in 0..{top}, got {v}")


def cmd_product(args):
    _check_group(args.r, args.n)
    _index("i", args.i, args.r, args.n)
    _index("j", args.j, args.r, args.n)
    coeffs = product_coefficients(args.r, args.n, args.i, args.j)
    closed = [c_closed_form(args.r, args.n, args.i, args.j, k) for k in range(len(coeffs))]
    if closed != coeffs:
        raise ConsistencyError("closed-form product constants disagree with the decomposition")
    return {"i": args.i, "j": args.j, "coefficients": coeffs, "terms": [f"{c}*phi_{k}" for k, c in enumerate(coeffs) if c]}


def _parse_seq(text: str, r: int, n: int) -> ClassSequence:
    t = text.strip()
    if t.lower() in {f"a{k}" for k in range(1, 6)}:
        return sequence_a(int(t[1:]), r, n)
    return ClassSequence.parse(t, r, n)


def cmd_bracket(args):
    _check_group(args.r, args.n)
    check_cap(args.r, args.n, args.max_group_size)
    if args.seq is None:
        kernel = canonical_kernel(args.r, args.n, args.max_group_size)
    else:
        try:
            seq = _parse_seq(args.seq, args.r, args.n)
        except ValueError as exc:
            raise UsageError(f"bad --seq: {exc}") from None
        kernel = kernel_for_sequence(seq, args.max_group_size, name=args.seq)
    rows = phi_table(args.r, args.n).rows()
    gram = [[bracket(a, b, kernel) for b in rows] for a in rows]
    out = {"kernel": kernel.to_json(), "gram": [_strs(row) for row in gram]}
    if args.i is not None or args.j is not None:
        if args.i is None or args.j is None:
            raise UsageError("--i and --j go together")
        _index("i", args.i, args.r, args.n)
        _index("j", args.j, args.r, args.n)
        out["value"] = rational_to_str(gram[args.i][args.j])
    return out


def cmd_idempotents(args):
    _check_group(args.r, args.n)
    cap = args.max_group_size
    if args.verify:
        checks = verify_transition(args.r, args.n, cap)
        payload = {"checks": [c.to_json() for c in checks], "passed": all(c.passed for c in checks)}
        if not payload["passed"]:
            raise VerificationFailed(payload)
        return payload
    E = eulerian_idempotents(args.r, args.n, cap)
    lam = eps_coeff_matrix(args.r, args.n)
    shift = 1 if args.r == 1 else 0
    return {
        "descent_basis": {
            f"E_{t}": _strs(lam[i][args.n - shift - t] for i in range(len(E))) for t in range(len(E))
        },
        "ranks": [rational_to_str(projector_rank(e)) for e in E],
    }


def cmd_carries(args):
    try:
        flavor = ChainFlavor.balanced(args.n, args.base) if args.balanced else ChainFlavor.ordinary(args.n, args.base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    chain = chain_spectral(flavor)
    if args.simulate is not None:
        if args.seed is None:
            raise UsageError("--simulate needs --seed")
        if args.simulate < 1:
            raise UsageError("--simulate must be positive")
        sim = carries_simulate(flavor, args.simulate, args.seed)
        if args.format == "csv":
            return _csv(sim.empirical())
        return {"chain": chain.to_json(), "simulation": sim.to_json()}
    if args.format == "csv":
        return chain.to_csv()
    out = chain.to_json()
    if flavor.base**flavor.n <= args.max_tuples:
        out["enumeration_agrees"] = carries_enumerate(flavor, args.max_tuples).M == chain.M
    return out


def cmd_zagier(args):
    try:
        K = tuple(int(p) for p in args.cls.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"bad --class {args.cls!r}") from None
    if not K or any(p <= 0 for p in K):
        raise UsageError(f"bad --class {args.cls!r}")
    if args.n is not None and sum(K) != args.n:
        raise UsageError(f"--class sums to {sum(K)}, not --n {args.n}")
    out = p_distribution(K).to_json()
    if args.verify_order is not None:
        if args.verify_order < sum(K) + 2:
            raise UsageError(f"--verify-order must be at least n + 2 = {sum(K) + 2}")
        checks = verify_zagier_identity(K, args.verify_order)
        out["checks"] = [c.to_json() for c in checks]
        if not all(c.passed for c in checks):
            raise VerificationFailed(out)
    return out


def cmd_verify(args):
    checks = run_suite(args.level)
    payload = {"level": args.level, "checks": [c.to_json() for c in checks], "passed": all(c.passed for c in checks)}
    if not payload["passed"]:
        raise VerificationFailed(payload)
    return payload


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-group-size", type=int, default=DEFAULT_GROUP_CAP, help="enumeration limit on |G|")
    common.add_argument("--max-tuples", type=int, default=DEFAULT_TUPLE_CAP, help="limit on enumerated digit tuples")
    common.add_argument("--format", choices=["json", "csv"], default="json")

    parser = argparse.ArgumentParser(prog="foulkes", description="Foulkes characters of S_n and G(r,1,n).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_args(p, r_default=1):
        p.add_argument("--r", type=int, default=r_default, help="number of colors (1 gives S_n)")
        p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("table", parents=[common], help="Foulkes character table")
    group_args(p)
    p.set_defaults(func=cmd_table, matrix=True)

    p = sub.add_parser("decompose", parents=[common], help="Foulkes coefficients of a length function")
    group_args(p)
    p.add_argument("--values", help="comma-separated values on ell = n, n-1, ... (rationals allowed)")
    p.add_argument("--power", help="decompose ell -> POWER**ell")
    p.set_defaults(func=cmd_decompose, matrix=False)

    p = sub.add_parser("product", parents=[common], help="decompose phi_i phi_j")
    group_args(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_product, matrix=False)

    p = sub.add_parser("bracket", parents=[common], help="expectation kernel and Foulkes Gram matrix")
    group_args(p)
    p.add_argument("--seq", help="a1..a5, or classes like '3|;2|1' (';' between classes, '|' between colors)")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_bracket, matrix=False)

    p = sub.add_parser("idempotents", parents=[common], help="Eulerian idempotents")
    group_args(p)
    p.add_argument("--verify", action="store_true", help="check the idempotent and transition identities")
    p.set_defaults(func=cmd_idempotents, matrix=False)

    p = sub.add_parser("carries", parents=[common], help="carries transition matrix")
    p.add_argument("--n", type=int, required=True, help="number of addends")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--balanced", action="store_true", help="balanced digits, odd base, even n")
    p.add_argument("--simulate", type=int, metavar="STEPS")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_carries, matrix=True)

    p = sub.add_parser("zagier", parents=[common], help="cycle-count distribution of tau sigma")
    p.add_argument("--n", type=int)
    p.add_argument("--class", dest="cls", required=True, help="cycle type, e.g. 2,1")
    p.add_argument("--verify-order", type=int)
    p.set_defaults(func=cmd_zagier, matrix=False)

    p = sub.add_parser("verify", parents=[common], help="run the cross-check suite")
    p.add_argument("--level", choices=sorted(LEVELS), default="quick")
    p.set_defaults(func=cmd_verify, matrix=False)
    return parser


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "matrix", "command")}


def _envelope(args, result) -> str:
    doc = {"command": args.command, "params": _params(args), "result": result, "version": SCHEMA}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def run(argv: Sequence[str] | None = None) -> tuple[int, str, str]:
    """Returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    if args.format == "csv" and not args.matrix:
        return 2, "", f"foulkes {args.command}: csv output is only available for table and carries\n"
    if args.max_group_size < 1 or args.max_tuples < 1:
        return 2, "", "foulkes: limits must be positive\n"
    try:
        result = args.func(args)
    except UsageError as exc:
        return 2, "", f"foulkes {args.command}: {exc}\n"
    except CapExceededError as exc:
        return 2, "", f"foulkes {args.command}: {exc}\n"
    except VerificationFailed as exc:
        return 1, _envelope(args, exc.payload), f"foulkes {args.command}: verification failed\n"
    except ConsistencyError as exc:
        return 1, "", f"foulkes {args.command}: consistency check failed: {exc}\n"
    except ValueError as exc:
        return 2, "", f"foulkes {args.command}: {exc}\n"
    if isinstance(result, str):
        return 0, result, ""
    return 0, _envelope(args, result), ""


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
