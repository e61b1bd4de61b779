"""Command-line interface: ``nilaffine <command> [options]``.

Exit codes: 0 success, 1 mismatch with the closed-form predictions or a
failed axiom, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from .algebra import DEFAULT_SEED, RestrictedStructure, verify_restricted
from .cochain import basis, d_matrix, label
from .cohomology import graded_kernel2, ordinary_h1, ordinary_h2, raw_rank_dimensions
from .extensions import build_extension, cocycle_from_name, render_extension_table, verify_extension
from .fplinalg import check_prime
from .restricted import DEFAULT_BRUTEFORCE_CAP, expected_restricted_h2_dim, restricted_h1, restricted_h2

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def parse_prime(text) -> int:
    try:
        p = check_prime(int(text))
    except ValueError:
        raise UsageError(f"p must be a prime, got {text!r}") from None
    if p < 5:
        raise UsageError("p must be at least 5")
    return p


def parse_primes(text: str) -> list[int]:
    """``5..31`` (all primes in range) or a comma list."""
    from .fplinalg import is_prime

    if ".." in text:
        lo, hi = (int(x) for x in text.split("..", 1))
        primes = [n for n in range(max(lo, 5), hi + 1) if is_prime(n)]
    else:
        primes = [parse_prime(x) for x in text.split(",") if x.strip()]
    if not primes:
        raise UsageError(f"no primes >= 5 in {text!r}")
    return primes


def _parse_vector(text: str, p: int, rng: random.Random, name: str) -> tuple[int, ...]:
    if text == "zero":
        return (0,) * p
    if text == "random":
        return tuple(rng.randrange(p) for _ in range(p))
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--{name} must be a comma list, 'zero' or 'random'") from None
    if len(vals) != p:
        raise UsageError(f"--{name} needs {p} entries, got {len(vals)}")
    return tuple(v % p for v in vals)


def parse_structure(p: int, lam: str, mu: str, seed: int) -> RestrictedStructure:
    """Build the p-map data; ``random`` draws lambda first, then mu, from one seeded stream."""
    rng = random.Random(seed)
    lam_v = _parse_vector(lam, p, rng, "lambda")
    mu_v = _parse_vector(mu, p, rng, "mu")
    try:
        return RestrictedStructure(p, mu_v, lam_v)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# matrix export
# ---------------------------------------------------------------------------


def matrix_table(p: int, k: int | None, q: int = 2, rows: str | None = None):
    """``(matrix, row labels, column labels)`` for ``d^q`` (graded if ``k`` is given)."""
    m = d_matrix(q, p, k).array
    row_labs = [label(r) for r in basis(q + 1, p, k)]
    col_labs = [label(c) for c in basis(q, p, k)]
    if rows == "u1u2":
        keep = [i for i, r in enumerate(basis(q + 1, p, k)) if r[0] in (1, 2)]
        m = m[keep]
        row_labs = [row_labs[i] for i in keep]
    elif rows is not None:
        raise UsageError(f"unknown row selector {rows!r}")
    return m, row_labs, col_labs


def matrix_to_csv(m, row_labels: Sequence[str], col_labels: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([""] + list(col_labels))
    for lab, row in zip(row_labels, np.asarray(m)):
        w.writerow([lab] + [int(x) for x in row])
    return buf.getvalue()


def parse_matrix_csv(text: str):
    rows = list(csv.reader(io.StringIO(text)))
    cols = rows[0][1:]
    labels = [r[0] for r in rows[1:]]
    m = np.array([[int(x) for x in r[1:]] for r in rows[1:]], dtype=np.int64).reshape(len(labels), len(cols))
    return m, labels, cols


def matrix_to_text(m, row_labels: Sequence[str], col_labels: Sequence[str]) -> str:
    width = max([len(c) for c in col_labels] + [3])
    lw = max([len(r) for r in row_labels] + [1])
    lines = [" " * lw + " " + " ".join(c.rjust(width) for c in col_labels)]
    for lab, row in zip(row_labels, np.asarray(m)):
        lines.append(lab.ljust(lw) + " " + " ".join(str(int(x)).rjust(width) for x in row))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _envelope(command: str, p, structure: RestrictedStructure | None, seed, results, expectations=None,
              mismatches=None) -> dict:
    params = {"seed": seed, "mu": None, "lambda": None}
    if structure is not None:
        params["mu"] = list(structure.mu)
        params["lambda"] = list(structure.lam)
    return {
        "command": command,
        "p": p,
        "parameters": params,
        "results": results,
        "expectations": expectations or {},
        "mismatches": mismatches or [],
    }


def cmd_verify(args) -> tuple[int, dict]:
    p = parse_prime(args.p)
    s = parse_structure(p, args.lam, args.mu, args.seed)
    report = verify_restricted(s, samples=args.samples, seed=args.seed)
    out = _envelope("verify", p, s, args.seed, report.to_dict())
    return (EXIT_OK if report.passed else EXIT_MISMATCH), out


def cmd_cohomology(args) -> tuple[int, dict]:
    p = parse_prime(args.p)
    if args.degree == 1:
        rep = ordinary_h1(p)
    elif args.degree == 2:
        rep = ordinary_h2(p)
    else:
        raise UsageError("--degree must be 1 or 2")
    results = rep.to_dict()
    results["raw_ranks"] = raw_rank_dimensions(p)
    if args.k is not None:
        if args.degree != 2:
            raise UsageError("--k applies to --degree 2")
        try:
            ker = graded_kernel2(p, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        results["graded_kernel"] = {"k": args.k, "basis": [c.to_sparse() for c in ker]}
    out = _envelope("cohomology", p, None, None, results, rep.expected, rep.mismatches)
    code = EXIT_MISMATCH if args.expect_theorems and rep.mismatches else EXIT_OK
    return code, out


def cmd_restricted(args) -> tuple[int, dict]:
    p = parse_prime(args.p)
    s = parse_structure(p, args.lam, args.mu, args.seed)
    h1, h2 = restricted_h1(s), restricted_h2(s)
    results = {"regime": s.regime, "p_mod_3": p % 3, "h1": h1.to_dict(), "h2": h2.to_dict()}
    out = _envelope("restricted", p, s, args.seed, results, {**h1.expected, **h2.expected},
                    h1.mismatches + h2.mismatches)
    code = EXIT_MISMATCH if args.expect_theorems and out["mismatches"] else EXIT_OK
    return code, out


def cmd_matrix(args) -> tuple[int, str]:
    p = parse_prime(args.p)
    q = args.degree
    if q not in (1, 2):
        raise UsageError("--degree must be 1 or 2")
    try:
        m, rl, cl = matrix_table(p, args.k, q, args.rows)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "text":
        return EXIT_OK, matrix_to_text(m, rl, cl)
    if args.format == "json":
        return EXIT_OK, json.dumps({"p": p, "k": args.k, "degree": q, "rows": rl, "cols": cl,
                                    "entries": np.asarray(m).tolist()}, indent=2) + "\n"
    return EXIT_OK, matrix_to_csv(m, rl, cl)


def cmd_extensions(args) -> tuple[int, dict]:
    p = parse_prime(args.p)
    s = parse_structure(p, args.lam, args.mu, args.seed)
    table = render_extension_table(s, args.reading)
    if args.cocycle:
        try:
            names = [n.strip() for n in args.cocycle.split(",")]
            for n in names:
                cocycle_from_name(n, p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        known = {row["cocycle"]: row for row in table}
        rows = [known.get(n, {"cocycle": n, "in_basis": False}) for n in names]
    else:
        rows = table
    failed = False
    if args.verify:
        method = "reference" if args.reading == "reference" else "auto"
        for row in rows:
            e = build_extension(s, cocycle_from_name(row["cocycle"], p), method, args.bruteforce_cap)
            rep = verify_extension(e, samples=args.samples, seed=args.seed)
            row["verification"] = rep.to_dict()
            failed |= not rep.passed
    out = _envelope("extensions", p, s, args.seed, {"regime": s.regime, "rows": rows})
    return (EXIT_MISMATCH if failed else EXIT_OK), out


def sweep_prime(p: int, seed: int) -> list[dict]:
    """Every cohomology dimension at ``p`` for a fixed family of p-map structures."""
    h1 = ordinary_h1(p)
    h2 = ordinary_h2(p)
    rng = random.Random(seed * 1000 + p)
    lam = tuple(rng.randrange(1, p) for _ in range(p))
    structures = [("zero", RestrictedStructure.zero(p)), ("random lambda", RestrictedStructure.from_lambda(p, lam))]
    if p % 3 == 2:
        mu = tuple(rng.randrange(p) for _ in range(p))
        structures.append(("random mu,lambda", RestrictedStructure(p, mu, lam)))
        structures.append(("mu=-lambda", RestrictedStructure(p, tuple(-x for x in lam), lam)))
    rows = []
    for name, s in structures:
        r1, r2 = restricted_h1(s), restricted_h2(s)
        expected = {"h1": 2, "ker_d2": p + 1, "h2": 3, "h1_star": 2, "h2_star": expected_restricted_h2_dim(s)}
        got = {"h1": h1.dimension, "ker_d2": h2.kernel_dim, "h2": h2.dimension,
               "h1_star": r1.dimension, "h2_star": r2.dimension}
        rows.append({
            "p": p,
            "p_mod_3": p % 3,
            "structure": name,
            "regime": s.regime,
            **{f"dim_{k}": v for k, v in got.items()},
            "expected": ";".join(f"{k}={v}" for k, v in expected.items()),
            "match": got == expected and not (h1.mismatches or h2.mismatches),
        })
    return rows


def cmd_sweep(args) -> tuple[int, list[dict]]:
    primes = parse_primes(args.primes)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            chunks = list(pool.map(sweep_prime, primes, [args.seed] * len(primes)))
    else:
        chunks = [sweep_prime(p, args.seed) for p in primes]
    rows = [r for chunk in chunks for r in chunk]
    failed = args.expect_theorems and not all(r["match"] for r in rows)
    return (EXIT_MISMATCH if failed else EXIT_OK), rows


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _to_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_to_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if all(not isinstance(x, (dict, list)) for x in obj):
            return pad + ", ".join(str(x) for x in obj)
        return "\n".join(_to_text(x, indent) if isinstance(x, dict) else pad + str(x) for x in obj)
    return pad + str(obj)


def _rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def render(command: str, payload, fmt: str) -> str:
    if isinstance(payload, str):
        return payload
    if command == "sweep":
        if fmt == "json":
            return json.dumps({"command": "sweep", "rows": payload}, indent=2) + "\n"
        if fmt == "text":
            return "\n".join(" ".join(f"{k}={v}" for k, v in r.items()) for r in payload) + "\n"
        return _rows_to_csv(payload)
    if fmt == "text":
        return _to_text(payload) + "\n"
    if fmt == "csv":
        raise UsageError("--format csv is only available for matrix and sweep")
    return json.dumps(payload, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilaffine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, structure=False, fmt="json"):
        sp.add_argument("--p", required=True)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--format", choices=["json", "csv", "text"], default=fmt)
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--expect-theorems", action="store_true",
                        help="exit 1 when results disagree with the closed-form predictions")
        if structure:
            sp.add_argument("--lambda", dest="lam", default="zero", help="comma list, 'zero' or 'random'")
            sp.add_argument("--mu", default="zero", help="comma list, 'zero' or 'random'")
            sp.add_argument("--samples", type=int, default=20)
            sp.add_argument("--bruteforce-cap", type=int, default=DEFAULT_BRUTEFORCE_CAP)

    common(sub.add_parser("verify", help="check the restricted Lie algebra axioms"), structure=True)

    sp = sub.add_parser("cohomology", help="ordinary H^1 or H^2")
    common(sp)
    sp.add_argument("--degree", type=int, default=2)
    sp.add_argument("--k", type=int)

    common(sub.add_parser("restricted", help="restricted H^1 and H^2"), structure=True)

    sp = sub.add_parser("matrix", help="export a differential matrix")
    common(sp, fmt="csv")
    sp.add_argument("--degree", type=int, default=2, help="cochain degree q of d^q")
    sp.add_argument("--k", type=int)
    sp.add_argument("--rows", choices=["u1u2"])

    sp = sub.add_parser("extensions", help="central extensions table and verification")
    common(sp, structure=True)
    sp.add_argument("--cocycle", help="e14, e25, phi_p1 or bar:k (comma separated)")
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--reading", choices=["derived", "reference"], default="derived",
                    help="which tilde closed forms to use for the p-map column")

    sp = sub.add_parser("sweep", help="all dimensions across several primes")
    sp.add_argument("--primes", default="5..31")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--format", choices=["json", "csv", "text"], default="csv")
    sp.add_argument("--out")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--expect-theorems", action="store_true")
    return parser


COMMANDS = {
    "verify": cmd_verify,
    "cohomology": cmd_cohomology,
    "restricted": cmd_restricted,
    "matrix": cmd_matrix,
    "extensions": cmd_extensions,
    "sweep": cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        code, payload = COMMANDS[args.command](args)
        text = render(args.command, payload, args.format)
    except UsageError as exc:
        print(f"nilaffine: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
