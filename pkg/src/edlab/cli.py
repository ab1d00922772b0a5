"""edlab: command-line front end.

Every JSON report carries tool_version, inputs_digest (sha256 of the
canonical parsed inputs) and seed.  Output is sorted-key JSON, so re-running
a command with the same flags prints the same bytes.

Matrix arguments are JSON files, or inline JSON when the argument starts
with '[' or '{'.  Entries may be numbers or "p/q" strings; the exact
commands (rnc, edpoly) refuse floats.
"""

import argparse
import hashlib
import json
import sys
from fractions import Fraction

import numpy as np

from . import __version__, critpoints, edpoly, formulas, pencils, rnc, suite
from .exactmath import DomainError, SymMat, UsageError, format_rational, to_rational

EXAMPLES = {
    "gedeg": "edlab gedeg --d 1,1 --n 1,1",
    "tables": "edlab tables --format markdown",
    "quadric": "edlab quadric --f '[[0,0,\"1/2\"],[0,-1,0],[\"1/2\",0,0]]' --q '[[1,0,0],[0,2,0],[0,0,1]]'",
    "rnc": "edlab rnc --d 2 --q '[[1,0,0],[0,2,0],[0,0,1]]'",
    "critpoints": "edlab critpoints matrix --u '[[3,0],[0,1]]' --q frobenius",
    "edpoly": "edlab edpoly --d 2 --u '[1,2,3]' --q '[[1,0,0],[0,2,0],[0,0,1]]'",
    "verify": "edlab verify formulas",
}


# ---------------------------------------------------------------------------
# input handling


def _load_json(arg, key=None):
    text = arg if arg.lstrip()[:1] in "[{" else _read_file(arg)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse JSON from {arg!r}: {exc}") from exc
    if isinstance(data, dict):
        if key is None or key not in data:
            raise UsageError(f"expected a JSON array or an object with key {key!r}")
        data = data[key]
    return data


def _read_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _matrix_rows(data, what):
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise UsageError(f"{what} must be a nonempty JSON array of rows")
    if len({len(r) for r in data}) != 1:
        raise UsageError(f"{what}: all rows must have the same length")
    return data


def _numeric(v):
    if isinstance(v, bool):
        raise UsageError("booleans are not numbers")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        return float(to_rational(v))
    raise UsageError(f"cannot interpret {v!r} as a number")


def _exact_rows(data, what):
    return [[to_rational(v) for v in r] for r in _matrix_rows(data, what)]


def _canonical(value):
    """JSON-ready form with exact values as strings, for digests and output."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return _canonical(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _digest(inputs):
    blob = json.dumps(_canonical(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _emit(command, inputs, body, seed=None):
    report = {"tool_version": __version__, "command": command, "inputs_digest": _digest(inputs), "seed": seed}
    report.update(_canonical(body))
    print(json.dumps(report, sort_keys=True, indent=2))


def _parse_tuple(text, flag):
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from exc
    return vals


def _tolerances(pairs, allowed):
    out = {}
    for item in pairs or []:
        name, sep, val = item.partition("=")
        if not sep or name not in allowed:
            raise UsageError(f"--tol expects NAME=VALUE with NAME in {sorted(allowed)}, got {item!r}")
        try:
            out[name] = float(val)
        except ValueError as exc:
            raise UsageError(f"--tol {name}: not a number: {val!r}") from exc
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_gedeg(args):
    d = _parse_tuple(args.d, "--d")
    n = _parse_tuple(args.n, "--n")
    fmt = formulas.TensorFormat(d, n)
    report = formulas.degree_report(fmt, e=args.e).as_dict()
    _emit("gedeg", {"d": d, "n": n, "e": args.e}, report)


def cmd_tables(args):
    doc = formulas.emit_tables(args.max_k, args.max_n)
    if args.format == "csv":
        sys.stdout.write(doc.csv())
    elif args.format == "markdown":
        sys.stdout.write(doc.markdown())
    else:
        body = {
            "table1": [{"k": k, "generic_ed_degree": str(g), "frobenius_ed_degree": str(f)} for k, g, f in doc.table1],
            "table2": [
                {"n1": a, "n2": b, "generic_ed_degree": str(g), "frobenius_ed_degree": str(f)} for a, b, g, f in doc.table2
            ],
        }
        _emit("tables", {"max_k": args.max_k, "max_n": args.max_n}, body)


def _symmat_from(data, what):
    rows = _matrix_rows(data, what)
    exact = not any(isinstance(v, float) for r in rows for v in r)
    if exact:
        return SymMat.from_rows([[to_rational(v) for v in r] for r in rows], exact=True)
    return SymMat.from_rows([[_numeric(v) for v in r] for r in rows], exact=False)


def cmd_quadric(args):
    tol = _tolerances(args.tol, {"cluster"})
    m_f = _symmat_from(_load_json(args.f, "F"), "F")
    m_q = _symmat_from(_load_json(args.q, "Q"), "Q")
    rep = pencils.quadric_ed_degree(m_f, m_q, tol.get("cluster", pencils.DEFAULT_CLUSTER_TOL))
    _emit("quadric", {"F": m_f.rows(), "Q": m_q.rows(), "tol": tol}, rep.as_dict())


def cmd_rnc(args):
    rows = _exact_rows(_load_json(args.q, "Q"), "Q")
    m_q = SymMat.from_rows(rows, exact=True)
    rep = rnc.rnc_report(m_q, args.d)
    _emit("rnc", {"d": args.d, "Q": rows}, rep.as_dict())


def _critpoint_config(args):
    tol = _tolerances(args.tol, {"residual_tol", "dedup_tol", "zero_eig_tol", "value_tol"})
    if args.starts is not None and args.starts < 1:
        raise UsageError("--starts must be positive")
    return critpoints.CritConfig(seed=args.seed, starts=args.starts, **tol), tol


def cmd_critpoints(args):
    cfg, tol = _critpoint_config(args)
    u = np.array([[_numeric(v) for v in r] for r in _matrix_rows(_load_json(args.u, "u"), "u")])
    symmetric = args.kind == "symmetric"
    if args.q == "frobenius":
        if symmetric:
            gram = critpoints.frobenius_gram_symmetric(u.shape[0])
        else:
            gram = critpoints.frobenius_gram_matrices(*u.shape)
    else:
        gram = np.array([[_numeric(v) for v in r] for r in _matrix_rows(_load_json(args.q, "Q"), "Q")])
    run = critpoints.critical_symmetric if symmetric else critpoints.critical_matrices
    pts, census = run(u, gram, cfg)
    check = critpoints.verify_morse_inequalities(census)
    body = {
        "kind": args.kind,
        "points": [p.as_dict(symmetric=symmetric) for p in pts.points],
        "count": len(pts),
        "census": {"m": census.m, "betti": census.betti, "distinct_rank_one_points": census.distinct_rank_one_points},
        "checks": [{"check": name, "passed": ok} for name, ok in check.checks],
        "non_generic": pts.non_generic,
        "warnings": pts.warnings,
        "starts": pts.starts,
        "converged_starts": pts.converged,
    }
    inputs = {"kind": args.kind, "u": u.tolist(), "Q": gram.tolist(), "starts": args.starts, "tol": tol}
    _emit("critpoints", inputs, body, seed=args.seed)


def cmd_edpoly(args):
    u = _load_json(args.u, "u")
    if not isinstance(u, list) or any(isinstance(v, list) for v in u):
        raise UsageError("u must be a flat JSON array of length d+1")
    u = tuple(to_rational(v) for v in u)
    rows = _exact_rows(_load_json(args.q, "Q"), "Q")
    poly = edpoly.ed_polynomial_rnc(u, SymMat.from_rows(rows, exact=True), args.d)
    body = poly.as_dict()
    body["real_roots"] = poly.real_roots()
    _emit("edpoly", {"d": args.d, "u": u, "Q": rows}, body)


def cmd_verify(args):
    results = []
    for res in suite.run_scope(args.scope):
        print(res.line(), flush=True)
        results.append(res)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print(f"first failure: [{failed[0].number}] {failed[0].anchor}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="edlab", description="ED degrees of rank-one tensor varieties under arbitrary inner products.")
    p.add_argument("--version", action="version", version=f"edlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gedeg", help="generic and Frobenius ED degrees of a Segre-Veronese format")
    g.add_argument("--d", required=True, help="degrees, e.g. 1,1")
    g.add_argument("--n", required=True, help="projective dimensions, e.g. 1,1")
    g.add_argument("--e", type=int, default=None, help="also report the dual degree of the e-th re-embedding")
    g.set_defaults(func=cmd_gedeg)

    t = sub.add_parser("tables", help="binary Segre and rank-one matrix degree tables")
    t.add_argument("--format", choices=("csv", "markdown", "json"), default="csv")
    t.add_argument("--max-k", type=int, default=10)
    t.add_argument("--max-n", type=int, default=10)
    t.set_defaults(func=cmd_tables)

    q = sub.add_parser("quadric", help="ED degree of a smooth quadric {z M_F z^T = 0}")
    q.add_argument("--f", required=True, help="Gram matrix of F (file or inline JSON)")
    q.add_argument("--q", required=True, help="Gram matrix of the inner product")
    q.add_argument("--tol", action="append", metavar="NAME=VALUE", help="cluster=<relative gap>")
    q.set_defaults(func=cmd_quadric)

    r = sub.add_parser("rnc", help="exact ED degree and defect of the degree-d rational normal curve")
    r.add_argument("--d", type=int, required=True)
    r.add_argument("--q", required=True, help="(d+1)x(d+1) Gram matrix, exact entries")
    r.set_defaults(func=cmd_rnc)

    c = sub.add_parser("critpoints", help="real critical rank-one approximations and Morse census")
    c.add_argument("kind", choices=("matrix", "symmetric"))
    c.add_argument("--u", required=True, help="data matrix, row-major")
    c.add_argument("--q", required=True, help="Gram matrix on the tensor space, or 'frobenius'")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--starts", type=int, default=None)
    c.add_argument("--tol", action="append", metavar="NAME=VALUE", help="residual_tol, dedup_tol, zero_eig_tol, value_tol")
    c.set_defaults(func=cmd_critpoints)

    e = sub.add_parser("edpoly", help="exact ED polynomial of the degree-d rational normal curve")
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--u", required=True, help="data point, d+1 exact entries")
    e.add_argument("--q", required=True, help="(d+1)x(d+1) Gram matrix, exact entries")
    e.set_defaults(func=cmd_edpoly)

    v = sub.add_parser("verify", help="run the reproduction checks")
    v.add_argument("scope", nargs="?", default="all", choices=suite.SCOPES)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"edlab {args.command}: error: {exc}", file=sys.stderr)
        print(f"example: {EXAMPLES[args.command]}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"edlab {args.command}: domain error: {exc}", file=sys.stderr)
        return 3
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
