"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io
from .bases import MAX_DIM, Family, format_label, get_basis
from .bloch import (
    InvalidStateError,
    check_density_matrix,
    decompose,
    decompose_bipartite,
    radius_bound,
    reconstruct,
)
from .linalg import DEFAULT_TOL, ConvergenceError
from .spin1 import witness_expectation_terms
from .states import bell_state, isotropic, maximally_mixed, random_density_matrix
from .witness import (
    AlphaRangeError,
    eval_witness,
    guess_witness,
    hs_measure_iso,
    max_violation_iso,
    nearest_separable_iso,
    optimal_witness_iso,
    verify_witness,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class NumericFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class Output:
    """Human-readable ``key: value`` lines or one JSON object per line."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def record(self, kind: str, /, **fields):
        if self.fmt == "json-lines":
            print(json.dumps({"record": kind, **fields}), file=self.stream)
            return
        if len(fields) == 1 and "value" in fields:
            print(f"{kind}: {_fmt(fields['value'])}", file=self.stream)
        else:
            body = "  ".join(f"{k}={_fmt(v)}" for k, v in fields.items())
            print(f"{kind}: {body}", file=self.stream)


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _check_dim(d: int) -> int:
    if not 2 <= d <= MAX_DIM:
        raise UsageError(f"--dim must lie in [2, {MAX_DIM}], got {d}")
    return d


# -- commands ----------------------------------------------------------------


def cmd_basis(args, out: Output) -> int:
    d = _check_dim(args.dim)
    basis = get_basis(args.family, d)
    gram = basis.gram()
    deviation = float(np.max(np.abs(gram - basis.norm * np.eye(len(basis)))))
    if deviation > args.tol:
        raise NumericFailure(f"Gram matrix deviates from N*1 by {deviation:.3g}")
    if args.out:
        io.write_json(args.out, io.basis_to_dict(basis))
    out.record("basis", family=basis.family.value, dim=d, elements=len(basis), norm=basis.norm,
               gram_deviation=deviation)
    if args.out:
        out.record("written", value=args.out)
    return EXIT_OK


def cmd_state(args, out: Output) -> int:
    kind = args.kind
    if kind == "bell":
        m = bell_state(_check_dim(args.dim))
    elif kind == "isotropic":
        if args.alpha is None:
            raise UsageError("isotropic state needs --alpha")
        m = isotropic(_check_dim(args.dim), args.alpha)
    elif kind == "mixed":
        if args.dim < 2:
            raise UsageError("--dim must be at least 2")
        m = maximally_mixed(args.dim)
    else:
        if args.dim < 2:
            raise UsageError("--dim must be at least 2")
        m = random_density_matrix(args.dim, args.seed)
    meta = {"kind": kind, "dim": args.dim}
    if args.alpha is not None:
        meta["alpha"] = args.alpha
    io.write_matrix(args.out, m, meta)
    out.record("state", kind=kind, size=m.shape[0], out=args.out)
    return EXIT_OK


def cmd_decompose(args, out: Output) -> int:
    rho = check_density_matrix(io.read_matrix(args.input), args.tol)
    family = Family.parse(args.family)
    if args.bipartite:
        dec = decompose_bipartite(rho, family, args.tol, validate=False)
        if args.out:
            io.write_json(args.out, io.bipartite_to_dict(dec))
        out.record("bipartite", family=family.value, dim=dec.dim,
                   max_local=float(max(np.abs(dec.n_coeffs).max(), np.abs(dec.m_coeffs).max())))
        for row, col, value in dec.nonzero_correlations(args.tol):
            out.record("c", row=row, col=col, re=value.real, im=value.imag)
        return EXIT_OK
    b = decompose(rho, family, args.tol, validate=False)
    if args.out:
        io.write_bloch(args.out, b)
    out.record("bloch", family=family.value, dim=b.dim, radius=b.radius, bound=radius_bound(family, b.dim))
    if not args.out:
        for lab, c in b.items():
            out.record("component", label=format_label(family, lab), re=c.real, im=c.imag)
    return EXIT_OK


def cmd_reconstruct(args, out: Output) -> int:
    b = io.read_bloch(args.input)
    rec = reconstruct(b, args.tol)
    if args.out:
        io.write_matrix(args.out, rec.matrix, {"is_state": rec.is_state})
    out.record("reconstruct", family=b.family.value, dim=b.dim, radius=b.radius,
               bound=radius_bound(b.family, b.dim), is_state=rec.is_state, min_eigenvalue=rec.min_eigenvalue)
    return EXIT_OK


def _spin_rows(rho, out: Output) -> None:
    report = witness_expectation_terms(rho)
    for name, coeff, value in report.rows():
        out.record("spin1", observable=name, coefficient=coeff, value=value)


def cmd_witness_iso(args, out: Output) -> int:
    d = _check_dim(args.dim)
    D = hs_measure_iso(d, args.alpha)
    B = max_violation_iso(d, args.alpha)
    w = optimal_witness_iso(d, args.family)
    target = isotropic(d, args.alpha)
    verdict = verify_witness(w, d, args.samples, args.seed, target=target)
    out.record("D", value=D)
    out.record("B", value=B)
    out.record("witness_on_target", value=eval_witness(w, target))
    out.record("witness_on_nearest_separable", value=eval_witness(w, nearest_separable_iso(d)))
    out.record("verdict", min_sep_expectation=verdict.min_sep_expectation, samples=verdict.n_samples,
               detected=verdict.detected, value_on_target=verdict.value_on_target)
    if d == 3:
        _spin_rows(target, out)
    return EXIT_OK


def cmd_witness_guess(args, out: Output) -> int:
    guess = check_density_matrix(io.read_matrix(args.guess), args.tol)
    target = check_density_matrix(io.read_matrix(args.target), args.tol)
    w = guess_witness(guess, target, args.tol)
    verdict = verify_witness(w, w.dim, args.samples, args.seed)
    accepted = verdict.min_sep_expectation >= -1e-9
    out.record("distance", value=w.direction_norm)
    out.record("witness_on_target", value=verdict.value_on_target)
    out.record("verdict", min_sep_expectation=verdict.min_sep_expectation, samples=verdict.n_samples,
               detected=verdict.detected, value_on_target=verdict.value_on_target)
    out.record("result", value="guess accepted" if accepted else "guess rejected")
    if w.dim == 3:
        _spin_rows(target, out)
    return EXIT_OK


def cmd_spin1_report(args, out: Output) -> int:
    if args.input:
        rho = check_density_matrix(io.read_matrix(args.input), args.tol)
    else:
        rho = isotropic(3, args.alpha)
    if rho.shape != (9, 9):
        raise InvalidStateError(["shape"], f"spin-1 report needs a 9x9 two-qutrit state, got {rho.shape}")
    report = witness_expectation_terms(rho)
    for name, coeff, value in report.rows():
        out.record("spin1", observable=name, coefficient=coeff, value=value)
    out.record("lambda_direct", value=report.lambda_direct)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numerical tolerance (default 1e-9)")
    common.add_argument("--format", choices=["table", "json-lines"], default="table")

    p = _Parser(prog="qudit-bloch", description="Qudit operator bases, Bloch vectors and entanglement witnesses.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    families = [f.value for f in Family]

    b = sub.add_parser("basis", parents=[common], help="generate an operator basis")
    b.add_argument("--family", choices=families, required=True)
    b.add_argument("--dim", type=int, required=True)
    b.add_argument("--out", help="write the basis archive here")
    b.set_defaults(func=cmd_basis)

    s = sub.add_parser("state", parents=[common], help="write a reference state as a matrix file")
    s.add_argument("kind", choices=["bell", "isotropic", "mixed", "random"])
    s.add_argument("--dim", type=int, required=True,
                   help="local dimension for bell/isotropic, full matrix size for mixed/random")
    s.add_argument("--alpha", type=float)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_state)

    dc = sub.add_parser("decompose", parents=[common], help="density matrix -> Bloch vector")
    dc.add_argument("--input", required=True)
    dc.add_argument("--family", choices=families, required=True)
    dc.add_argument("--bipartite", action="store_true", help="treat input as a two-qudit state")
    dc.add_argument("--out")
    dc.set_defaults(func=cmd_decompose)

    rc = sub.add_parser("reconstruct", parents=[common], help="Bloch vector -> matrix")
    rc.add_argument("--input", required=True)
    rc.add_argument("--out")
    rc.set_defaults(func=cmd_reconstruct)

    w = sub.add_parser("witness", help="entanglement measure and witnesses")
    wsub = w.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    wi = wsub.add_parser("iso", parents=[common], help="isotropic state closed forms")
    wi.add_argument("--dim", type=int, required=True)
    wi.add_argument("--alpha", type=float, required=True)
    wi.add_argument("--family", choices=families, default="ggm")
    wg = wsub.add_parser("guess", parents=[common], help="test a guessed nearest separable state")
    wg.add_argument("--guess", required=True)
    wg.add_argument("--target", required=True)
    for sp in (wi, wg):
        sp.add_argument("--samples", type=int, default=10_000)
        sp.add_argument("--seed", type=int, default=0)
    wi.set_defaults(func=cmd_witness_iso)
    wg.set_defaults(func=cmd_witness_guess)

    r = sub.add_parser("spin1-report", parents=[common], help="spin-1 terms of the qutrit witness")
    src = r.add_mutually_exclusive_group(required=True)
    src.add_argument("--input")
    src.add_argument("--alpha", type=float, help="use the isotropic two-qutrit state")
    r.set_defaults(func=cmd_spin1_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(getattr(args, "format", "table"))
    if getattr(args, "samples", 1) < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidStateError, AlphaRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ConvergenceError, NumericFailure) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
