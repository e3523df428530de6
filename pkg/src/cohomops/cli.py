"""Command-line front end.

Exit codes: 0 success, 1 unreadable or malformed complex file, 2 invalid
arguments, 3 failed internal consistency check.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .cochain_ops import p1_cochain, sq_cochain
from .cohomology_ops import ConsistencyError, adem_secondary, cup_table, operation_matrix
from .complexes import Cochain, check_contraction, compose_contractions
from .minimal_model import (
    GroupPresentation,
    build_minimal_model,
    cohomology_basis,
    homology_presentations,
    integral_cohomology,
    minimal_model,
)
from .simplicial import ComplexParseError, SimplicialComplex, collapse_thin, format_complex, parse_complex
from .validation import check_coefficients, check_operation, format_coefficients

EXIT_PARSE, EXIT_ARGS, EXIT_CONSISTENCY = 1, 2, 3


class UsageError(ValueError):
    pass


def render_presentation(g: GroupPresentation) -> str:
    """``Z^2 + Z/2 + Z/4`` style text; over Z/p the free part reads ``(Z/p)^r``."""
    parts = []
    base = "Z" if not g.modulus else f"Z/{g.modulus}"
    if g.free_rank == 1:
        parts.append(base)
    elif g.free_rank > 1:
        parts.append(f"{base}^{g.free_rank}" if not g.modulus else f"({base})^{g.free_rank}")
    parts += [f"Z/{t}" for t in sorted(g.torsion)]
    return " + ".join(parts) if parts else "0"


def render_matrix(rows: Sequence[Sequence[int]], ncols: int) -> list[str]:
    return [f"matrix {len(rows)}x{ncols}:"] + [" ".join(str(v) for v in row) for row in rows]


# --------------------------------------------------------------------------
# verbs


class _Context:
    """The complex to compute on, and how cochains on it pull back to the input complex."""

    def __init__(self, K: SimplicialComplex, thin: bool):
        self.original = K
        if thin:
            self.complex, self.collapse = collapse_thin(K, 0)
        else:
            self.complex, self.collapse = K, None

    def pull_back(self, c: Cochain) -> Cochain:
        """c o f for the collapse projection f, as a cochain on the input complex."""
        if self.collapse is None:
            return c
        f = self.collapse.F(c.degree)
        vec = f.T.dot(c.to_vector())
        return Cochain.from_vector(self.original, c.degree, vec, c.modulus)


def _homology(ctx: _Context, args, out):
    p = check_coefficients(args.coefficients)
    model, _ = minimal_model(ctx.complex, p)
    groups = homology_presentations(model)
    # a thinned complex may have lost its top dimensions; those groups are 0
    groups += [GroupPresentation(0, (), p)] * (ctx.original.dimension + 1 - len(groups))
    for q, g in enumerate(groups):
        out.append(f"H_{q} = {render_presentation(g)}")


def _render_cochain(c: Cochain) -> str:
    terms = [f"{v}*[{','.join(map(str, s))}]" for s, v in sorted(c.values.items())]
    return " + ".join(terms) if terms else "0"


def _cohomology(ctx: _Context, args, out):
    p = check_coefficients(args.coefficients)
    K = ctx.complex
    for q in range(ctx.original.dimension + 1):
        if p:
            basis = cohomology_basis(K, p, q)
            line = render_presentation(GroupPresentation(len(basis), (), p))
            reps = basis.representatives
        else:
            H = integral_cohomology(K, q)
            line = render_presentation(H.presentation)
            reps = H.representatives
        out.append(f"H^{q} = {line}")
        if args.representatives:
            for k, rep in enumerate(reps):
                out.append(f"  e{k}: {_render_cochain(ctx.pull_back(rep))}")


def _operation(ctx: _Context, args, out):
    kind, k = check_operation(args.op)
    if args.dim is None:
        raise UsageError("operation needs --dim")
    given = None if args.coefficients is None else check_coefficients(args.coefficients)
    p = {"sq": 2, "p1": k, "cup": 2}[kind] if given is None else given
    if kind == "sq" and p != 2:
        raise UsageError("sq:<i> needs --coefficients zp:2")
    if kind == "p1" and p != k:
        raise UsageError(f"p1:{k} needs --coefficients zp:{k}")
    if p == 0:
        raise UsageError(f"{args.op} needs prime-field coefficients")
    K, q = ctx.complex, args.dim
    if kind == "cup":
        table = cup_table(K, p, q, q)
        n = len(cohomology_basis(K, p, q))
        n_target = len(cohomology_basis(K, p, 2 * q))
        pairs = [(i, j) for i in range(n) for j in range(n)]
        rows = [[table[ij][r] for ij in pairs] for r in range(n_target)]
        out.extend(render_matrix(rows, len(pairs)))
        return
    fn = (lambda c: sq_cochain(c, k)) if kind == "sq" else (lambda c: p1_cochain(c, k))
    m = operation_matrix(K, fn, q, p, name=args.op)
    out.extend(render_matrix(m.matrix, m.n_source))


def _secondary(ctx: _Context, args, out):
    if args.class_ is None:
        raise UsageError("secondary needs --class")
    try:
        coords = [int(x) for x in args.class_.split(",")] if args.class_.strip() else []
    except ValueError:
        raise UsageError(f"--class must be comma-separated integers, got {args.class_!r}") from None
    value = adem_secondary(ctx.complex, coords)
    out.append("Psi_2 in H^5(K; Z/2) / Sq^2 H^3(K; Z/2)")
    if not value.representative:
        out.append("representative: H^5 = 0")
    else:
        out.append("representative: " + " ".join(map(str, value.representative)))
    for v in value.indeterminacy:
        out.append("indeterminacy: " + " ".join(map(str, v)))
    out.append(f"zero coset: {'yes' if value.is_zero() else 'no'}")


def _validate(ctx: _Context, args, out) -> int:
    verdicts, details = [], []
    for p in (0, 2):
        _, r = build_minimal_model(ctx.complex, p)
        if ctx.collapse is not None:
            collapse = ctx.collapse if p == 0 else collapse_thin(ctx.original, p)[1]
            r = compose_contractions(collapse, r)
        problems = check_contraction(r)
        name = format_coefficients(p).replace("/", "")
        verdicts.append(f"{'OK' if not problems else 'FAIL'} ({name})")
        details += [f"  {name}: {msg}" for msg in problems]
    out.append("contraction: " + ", ".join(verdicts))
    out.extend(details)
    return EXIT_CONSISTENCY if details else 0


def _thin(ctx: _Context, args, out):
    K = ctx.original
    thin, _ = collapse_thin(K, 0)
    out.append(f"# thinned from f-vector {list(K.f_vector)} to {list(thin.f_vector)}")
    text = format_complex(thin)
    out.extend(text.splitlines())


_VERBS = {
    "homology": _homology,
    "cohomology": _cohomology,
    "operation": _operation,
    "secondary": _secondary,
    "validate": _validate,
    "thin": _thin,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cohomops",
                                     description="Homology and cohomology operations of simplicial complexes.")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def add(name, help_text, coefficients="z"):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("path", help="complex file: one maximal simplex per line")
        sp.add_argument("--thin", action="store_true", help="collapse free pairs first")
        if coefficients is not False:
            sp.add_argument("--coefficients", default=coefficients, metavar="z|zp:P")
        return sp

    add("homology", "homology groups H_q")
    sp = add("cohomology", "cohomology groups H^q")
    sp.add_argument("--representatives", action="store_true", help="print a cocycle per generator")
    sp = add("operation", "matrix of sq:<i>, p1:<p> or the cup product on H^dim", coefficients=None)
    sp.add_argument("--op", required=True, metavar="sq:I|p1:P|cup")
    sp.add_argument("--dim", type=int, metavar="Q")
    sp = add("secondary", "Adem secondary operation on a class of H^2(K; Z)", coefficients=False)
    sp.add_argument("--class", dest="class_", metavar="C0,C1,...",
                    help="coefficients of the class on the generators of H^2(K; Z)")
    add("validate", "check the minimal-model contraction over Z and Z/2", coefficients=False)
    add("thin", "print the complex left after collapsing free pairs", coefficients=False)
    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with open(args.path, encoding="utf-8") as fh:
            text = fh.read()
        K = parse_complex(text)
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.path}: {exc}", file=stderr)
        return EXIT_PARSE
    except ComplexParseError as exc:
        print(f"error: {args.path}: {exc}", file=stderr)
        return EXIT_PARSE

    out: list[str] = []
    try:
        ctx = _Context(K, args.thin)
        code = _VERBS[args.verb](ctx, args, out) or 0
    except ConsistencyError as exc:
        print(f"error: consistency check failed: {exc}", file=stderr)
        return EXIT_CONSISTENCY
    except (UsageError, ValueError, NotImplementedError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_ARGS
    stdout.write("".join(line + "\n" for line in out))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
