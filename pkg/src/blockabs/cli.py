"""Command-line front end.

Matrices travel as JSON documents ``{"rows": m, "cols": n, "entries":
[[re, im], ...]}`` in row-major order.  Results go to stdout (or ``--out``)
followed by one summary line of ``key=value`` fields on stdout.

Exit codes: 0 success, 1 unreadable or malformed input file, 2 precondition
failure (the error class name is printed on stderr).
"""

import argparse
import json
import os
import sys

import numpy as np

from .absval import BlockSymm, abs_qlm
from .densela import (
    DEFAULT_TOL,
    abs_oracle,
    adjoint,
    neg_part_oracle,
    pos_part_oracle,
    range_basis,
    support_projection_oracle,
)
from .errors import PreconditionError
from .krein import (
    decompose_pos_neg,
    is_j_positive,
    is_j_projection,
    min_symmetry,
    positivity_via_min_symmetry,
    positivity_via_sandwich,
    projection_from_subspace,
)
from .support import (
    SLambda,
    neg_part_slambda,
    pos_part_slambda,
    supp_neg_part,
    supp_pos_part,
    supp_slambda,
)
from .testgen import GenConfig, MatrixGenerator

__all__ = ["MatrixFileError", "read_matrix", "write_matrix", "matrix_to_doc", "doc_to_matrix", "main"]

SEED_ENV = "BLOCKABS_SEED"


class MatrixFileError(ValueError):
    """A matrix file could not be read or does not follow the format."""


def _fmt(x):
    text = format(float(x), ".17g")
    # keep a float literal so -0.0 survives a JSON round trip
    return text if any(ch in text for ch in ".en") else text + ".0"


def matrix_to_doc(a):
    """JSON text of a matrix, every number with 17 significant digits."""
    a = np.asarray(a, dtype=complex)
    rows, cols = a.shape
    pairs = ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in a.ravel())
    return f'{{"rows": {rows}, "cols": {cols}, "entries": [{pairs}]}}'


def doc_to_matrix(doc, source="<input>"):
    """Parse a decoded JSON object into a complex array."""
    if not isinstance(doc, dict):
        raise MatrixFileError(f"{source}: top level must be an object")
    missing = {"rows", "cols", "entries"} - set(doc)
    if missing:
        raise MatrixFileError(f"{source}: missing field(s) {sorted(missing)}")
    rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    for key, val in (("rows", rows), ("cols", cols)):
        if isinstance(val, bool) or not isinstance(val, int) or val < 0:
            raise MatrixFileError(f"{source}: {key} must be a non-negative integer")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        got = len(entries) if isinstance(entries, list) else type(entries).__name__
        raise MatrixFileError(f"{source}: expected {rows * cols} entries, got {got}")
    out = np.empty(rows * cols, dtype=complex)
    for k, pair in enumerate(entries):
        ok = isinstance(pair, list) and len(pair) == 2
        ok = ok and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        if not ok:
            raise MatrixFileError(f"{source}: entry {k} is not an [re, im] pair of numbers")
        re, im = float(pair[0]), float(pair[1])
        if not (np.isfinite(re) and np.isfinite(im)):
            raise MatrixFileError(f"{source}: entry {k} is not finite")
        out[k] = complex(re, im)
    return out.reshape(rows, cols)


def read_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"{path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno} column {exc.colno})") from exc
    return doc_to_matrix(doc, str(path))


def write_matrix(path, a):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(matrix_to_doc(a) + "\n")


def _max_abs_dev(x, y):
    return float(np.max(np.abs(x - y))) if np.size(x) else 0.0


# Each handler returns (document text, summary fields).


def _cmd_abs(args, tol):
    q = BlockSymm(args.lam, args.mu, read_matrix(args.b))
    result, tag = abs_qlm(q, tol)
    fields = {"case": str(tag)}
    if args.verify:
        fields["max_abs_dev"] = _max_abs_dev(result, abs_oracle(q.matrix(), tol))
    return matrix_to_doc(result), fields


def _cmd_pospart(args, tol):
    s = SLambda(args.lam, read_matrix(args.b))
    result = pos_part_slambda(s, tol)
    fields = {}
    if args.verify:
        fields["max_abs_dev"] = _max_abs_dev(result, pos_part_oracle(s.matrix(), tol))
    return matrix_to_doc(result), fields


def _cmd_negpart(args, tol):
    s = SLambda(args.lam, read_matrix(args.b))
    result = neg_part_slambda(s, tol)
    fields = {}
    if args.verify:
        fields["max_abs_dev"] = _max_abs_dev(result, neg_part_oracle(s.matrix(), tol))
    return matrix_to_doc(result), fields


def _cmd_support(args, tol):
    s = SLambda(args.lam, read_matrix(args.b))
    fn, target = {
        "s": (supp_slambda, lambda m: m),
        "s-plus": (supp_pos_part, lambda m: pos_part_oracle(m, tol)),
        "s-minus": (supp_neg_part, lambda m: neg_part_oracle(m, tol)),
    }[args.of]
    result = fn(s, tol)
    fields = {"of": args.of}
    if args.verify:
        oracle = support_projection_oracle(target(s.matrix()), tol)
        fields["max_abs_dev"] = _max_abs_dev(result, oracle)
    return matrix_to_doc(result), fields


def _cmd_minsym(args, tol):
    e = read_matrix(args.e)
    result = min_symmetry(e, tol)
    fields = {}
    if args.verify:
        n = e.shape[0]
        oracle = 2 * support_projection_oracle(pos_part_oracle(e + adjoint(e), tol), tol) - np.eye(n)
        fields["max_abs_dev"] = _max_abs_dev(result, oracle)
    return matrix_to_doc(result), fields


def _cmd_jcheck(args, tol):
    e, j = read_matrix(args.e), read_matrix(args.j)
    report = {"is_j_projection": bool(is_j_projection(e, j, tol)), "is_j_positive": bool(is_j_positive(e, j, tol))}
    if report["is_j_projection"]:
        a = positivity_via_min_symmetry(e, j, tol)
        b = positivity_via_sandwich(e, j, tol)
        report["min_symmetry_test"] = [bool(a[0]), bool(a[1])]
        report["sandwich_test"] = [bool(b[0]), bool(b[1])]
        report["equivalences_hold"] = a[0] == a[1] and b[0] == b[1]
    fields = {k: v for k, v in report.items() if isinstance(v, bool)}
    return json.dumps(report), fields


def _cmd_jdecompose(args, tol):
    e, j = read_matrix(args.e), read_matrix(args.j)
    q, r = decompose_pos_neg(e, j, tol)
    fields = {}
    if args.verify:
        je = j @ e
        fields["max_abs_dev"] = max(
            _max_abs_dev(j @ q, pos_part_oracle(je, tol)),
            _max_abs_dev(j @ r, -neg_part_oracle(je, tol)),
        )
    return f'{{"Q": {matrix_to_doc(q)}, "R": {matrix_to_doc(r)}}}', fields


def _cmd_fromsubspace(args, tol):
    m = read_matrix(args.m)
    j = read_matrix(args.j)
    # any spanning set is accepted; the formula wants orthonormal columns
    mb = range_basis(m, tol)
    result = projection_from_subspace(mb, j, tol)
    fields = {"rank": mb.shape[1]}
    if args.verify:
        oracle = mb @ np.linalg.solve(adjoint(mb) @ j @ mb, adjoint(mb) @ j)
        fields["max_abs_dev"] = _max_abs_dev(result, oracle)
    return matrix_to_doc(result), fields


def _cmd_gen(args, tol):
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    cfg = GenConfig(seed=seed, magnitude=args.magnitude, complex_enabled=not args.real)
    g = MatrixGenerator(cfg, tol)
    dim = args.dim if args.dim is not None else g.dim()
    fields = {"seed": seed, "kind": args.kind}
    if args.kind == "matrix":
        rows = dim if args.rows is None else args.rows
        cols = dim if args.cols is None else args.cols
        return matrix_to_doc(g.gen_matrix(rows, cols)), fields
    if args.kind == "symmetry":
        return matrix_to_doc(g.gen_symmetry(dim)), fields
    rank = int(g.rng.integers(0, dim + 1)) if args.rank is None else args.rank
    fields["rank"] = rank
    if args.kind == "idempotent":
        return matrix_to_doc(g.gen_idempotent(dim, rank)), fields
    e, j = g.gen_j_projection_pair(dim, rank, positive=args.positive)
    return f'{{"E": {matrix_to_doc(e)}, "J": {matrix_to_doc(j)}}}', fields


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="comparison tolerance (compare_tol)")
    common.add_argument("--verify", action="store_true", help="also run the dense oracle and report max_abs_dev")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="blockabs",
        description="Absolute values, positive parts and support projections of block matrices; J-projections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("abs", parents=[common], help="|Q| for Q = [[lam I, B], [B*, mu I]]")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--b", required=True, help="matrix file for B")
    p.set_defaults(handler=_cmd_abs)

    for name, handler, text in (
        ("pospart", _cmd_pospart, "positive part of S = [[lam I, B], [B*, 0]]"),
        ("negpart", _cmd_negpart, "negative part of S"),
        ("support", _cmd_support, "support projection of S, S+ or S-"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--lambda", dest="lam", type=float, required=True)
        p.add_argument("--b", required=True, help="matrix file for B")
        if name == "support":
            p.add_argument("--of", choices=["s", "s-plus", "s-minus"], default="s")
        p.set_defaults(handler=handler)

    p = sub.add_parser("minsym", parents=[common], help="smallest symmetry J with JE >= 0")
    p.add_argument("--e", required=True)
    p.set_defaults(handler=_cmd_minsym)

    for name, handler, text in (
        ("jcheck", _cmd_jcheck, "test E = J E* J, JE >= 0 and the positivity criteria"),
        ("jdecompose", _cmd_jdecompose, "split E = Q + R into J-positive and J-negative parts"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--e", required=True)
        p.add_argument("--j", required=True)
        p.set_defaults(handler=handler)

    p = sub.add_parser("fromsubspace", parents=[common], help="J-projection onto span(M)")
    p.add_argument("--m", required=True, help="matrix file whose columns span M")
    p.add_argument("--j", required=True)
    p.set_defaults(handler=_cmd_fromsubspace)

    p = sub.add_parser("gen", parents=[common], help="seeded random test input")
    p.add_argument("--kind", choices=["matrix", "symmetry", "idempotent", "jpair"], default="matrix")
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV}, then 0")
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--rows", type=int, default=None)
    p.add_argument("--cols", type=int, default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--magnitude", type=float, default=1.0)
    p.add_argument("--real", action="store_true")
    p.add_argument("--positive", action="store_true", help="jpair: make E J-positive")
    p.set_defaults(handler=_cmd_gen)
    return parser


def _summary(command, fields):
    parts = [command]
    for key, val in fields.items():
        if isinstance(val, bool):
            val = str(val).lower()
        elif isinstance(val, float):
            val = _fmt(val)
        parts.append(f"{key}={val}")
    return " ".join(parts)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    tol = DEFAULT_TOL if args.tol is None else DEFAULT_TOL.with_(compare_tol=args.tol)
    try:
        doc, fields = args.handler(args, tol)
    except MatrixFileError as exc:
        print(f"MatrixFileError: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, np.linalg.LinAlgError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)
    print(_summary(args.command, fields))
    return 0


if __name__ == "__main__":
    sys.exit(main())
