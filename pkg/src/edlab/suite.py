"""Reproduction checks behind `edlab verify` and the acceptance tests.

Each check returns a CheckResult; `run_scope` runs every check of a scope in
order.  All randomness is seeded, so the results are reproducible.
"""

import csv
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations_with_replacement

import numpy as np

from . import critpoints, edpoly, formulas, pencils, rnc
from .exactmath import SymMat, mat_mul


@dataclass
class CheckResult:
    number: int
    anchor: str
    passed: bool
    detail: str
    seconds: float
    limit: float = None

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        budget = f" (limit {self.limit:g}s)" if self.limit else ""
        return f"{status} [{self.number:2d}] {self.anchor}: {self.detail} [{self.seconds:.1f}s{budget}]"


def _read_fixture_csv(name):
    text = resources.files("edlab").joinpath("fixtures", name).read_text()
    rows = [line for line in text.splitlines() if line and not line.startswith("#")]
    return list(csv.DictReader(rows))


def golden_table_segre_binary():
    return [(int(r["k"]), int(r["generic_ed_degree"]), int(r["frobenius_ed_degree"])) for r in _read_fixture_csv("table_segre_binary.csv")]


def golden_table_matrices():
    return [(int(r["n1"]), int(r["n2"]), int(r["generic_ed_degree"])) for r in _read_fixture_csv("table_matrices.csv")]


# ---------------------------------------------------------------------------
# formulas


def check_table_segre_binary():
    doc = formulas.emit_tables()
    want = golden_table_segre_binary()
    bad = [(row, exp) for row, exp in zip(doc.table1, want) if tuple(row) != exp]
    bad += [("frobenius != k!", row) for row in doc.table1 if row[2] != _factorial(row[0])]
    ok = not bad and len(doc.table1) == len(want) == 10
    return ok, f"{len(want)} rows match" if ok else f"mismatches: {bad[:3]}"


def _factorial(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def check_table_matrices():
    doc = formulas.emit_tables()
    got = {(a, b): g for a, b, g, _ in doc.table2}
    frob = {(a, b): f for a, b, _, f in doc.table2}
    want = golden_table_matrices()
    bad = [(a, b, g, got.get((a, b))) for a, b, g in want if got.get((a, b)) != g]
    bad += [(a, b, "frobenius", frob[a, b]) for a, b, _ in want if frob[a, b] != a + 1]
    ok = not bad and len(want) == 55 and len(got) == 55
    return ok, "55 entries match, Frobenius = n1+1" if ok else f"mismatches: {bad[:3]}"


def triangle_formats(max_k=4, max_n=4, max_d=4):
    """Formats up to reordering of factors, 1 <= n_i <= max_n, 1 <= d_i <= max_d."""
    kinds = [(d, n) for d in range(1, max_d + 1) for n in range(1, max_n + 1)]
    for k in range(1, max_k + 1):
        for combo in combinations_with_replacement(kinds, k):
            yield formulas.TensorFormat(tuple(c[0] for c in combo), tuple(c[1] for c in combo))


def check_formula_triangle():
    count = 0
    bad = []
    for fmt in triangle_formats():
        count += 1
        ged = formulas.generic_ed_degree(fmt)
        if formulas.frobenius_ed_degree_fo(fmt) != formulas.frobenius_ed_degree_ah(fmt):
            bad.append((str(fmt), "FO != AH"))
        if sum(formulas.polar_degrees(fmt)) != ged:
            bad.append((str(fmt), "sum of polar degrees"))
        if formulas.generic_ed_degree_from_chern(fmt) != ged:
            bad.append((str(fmt), "Chern sum"))
    return not bad, f"{count} formats agree" if not bad else f"{len(bad)} failures, e.g. {bad[:3]}"


def check_closed_forms():
    bad = []
    for n2 in range(1, 21):
        if formulas.generic_ed_degree(formulas.matrix_format(1, n2)) != 4 * n2 + 2:
            bad.append(("(1,n2)", n2))
    for n2 in range(2, 21):
        if formulas.generic_ed_degree(formulas.matrix_format(2, n2)) != 8 * n2 * n2 + 4 * n2 - 1:
            bad.append(("(2,n2)", n2))
    for d in range(1, 21):
        if formulas.generic_ed_degree(formulas.TensorFormat((d,), (1,))) != 3 * d - 2:
            bad.append(("V_{d,1}", d))
        if formulas.generic_ed_degree(formulas.TensorFormat((d,), (2,))) != 7 * d * d - 9 * d + 3:
            bad.append(("V_{d,2}", d))
    for k in range(1, 13):
        if formulas.segre_binary_ged(k) != formulas.generic_ed_degree(formulas.segre_format(k)):
            bad.append(("binary Segre", k))
    return not bad, "n2<=20, d<=20, k<=12 agree" if not bad else f"failures: {bad[:5]}"


def check_quartic_surface():
    cm = formulas.chern_mather_from_polar([0, 3, 4], 2)
    dual = formulas.dual_degree_from_chern_mather(cm, 2, 2)
    ok = list(cm) == [4, 9, 6] and dual == 18
    return ok, f"Chern-Mather {list(cm)}, dual degree {dual}"


def check_dual_degrees():
    bad = []
    for e in range(2, 7):
        for d in range(1, 7):
            got = formulas.dual_degree_veronese_re_embedding(formulas.TensorFormat((d,), (1,)), e)
            if got != 2 * (e * d - 1):
                bad.append(("V_{d,1}", d, e, got))
        got = formulas.dual_degree_veronese_re_embedding(formulas.matrix_format(1, 1), e)
        if got != 6 * e * e - 8 * e + 4:
            bad.append(("Sigma_2", e, got))
    return not bad, "d, e <= 6 agree" if not bad else f"failures: {bad[:4]}"


# ---------------------------------------------------------------------------
# pencils


def _w_coordinates():
    """P with w = P z: w = (z0+z3, z0-z3, z1+z2, z1-z2); x0x3 - x1x2 = (w0^2 - w1^2 - w2^2 + w3^2)/4."""
    return [[1, 0, 0, 1], [1, 0, 0, -1], [0, 1, 1, 0], [0, 1, -1, 0]]


def _gram_in_w(weights):
    p = _w_coordinates()
    pt = [list(r) for r in zip(*p)]
    d = [[Fraction(weights[i]) if i == j else Fraction(0) for j in range(4)] for i in range(4)]
    return SymMat.from_rows(mat_mul(mat_mul(pt, d), p), exact=True)


def sigma2_configurations():
    """(label, M_Q, expected ED degree, expected Segre symbol)."""
    return [
        ("four distinct eigenvalues", _gram_in_w([1, 2, 3, 5]), 6, "[1,1,1,1]"),
        ("one double eigenvalue", _gram_in_w([1, 1, 1, 2]), 4, "[(1,1),1,1]"),
        ("Frobenius", SymMat.identity(4), 2, "[(1,1),(1,1)]"),
    ]


def check_quadric_pencils():
    f = pencils.segre_2x2_quadric()
    bad = []
    for label, m_q, deg, sym in sigma2_configurations():
        rep = pencils.quadric_ed_degree(f, m_q)
        if (rep.ed_degree, rep.segre_symbol) != (deg, sym):
            bad.append((label, rep.ed_degree, rep.segre_symbol))
    # a random exact SPD form is generic
    rng = random.Random(11)
    rep = pencils.quadric_ed_degree(f, rnc.random_spd_gram(4, rng))
    if rep.ed_degree != 6:
        bad.append(("random SPD", rep.ed_degree))
    conic = pencils.veronese_conic_quadric()
    for m_q, deg in ((SymMat.identity(3), 4), (SymMat.diagonal([1, 2, 1]), 2)):
        rep = pencils.quadric_ed_degree(conic, m_q)
        if rep.ed_degree != deg:
            bad.append(("conic", m_q.rows(), rep.ed_degree))
    for n in range(1, 7):
        image = pencils.ed_degree_image_quadric(n)
        if image.values != set(range(2, 2 * n + 1, 2)):
            bad.append(("image", n, sorted(image.values)))
        for val, w in image.witnesses.items():
            if not w.exact or pencils.quadric_ed_degree(image.quadric, w).ed_degree != val:
                bad.append(("witness", n, val))
    return not bad, "6/4/2, conic 4/2, images N<=6" if not bad else f"failures: {bad[:4]}"


# ---------------------------------------------------------------------------
# rnc


def _rnc_degree(job):
    m_q, d = job
    rep = rnc.rnc_report(m_q, d)
    return d, rep.defect, rep.ed_degree


def check_rnc_suite(samples=500):
    from ._parallel import pmap

    bad = []
    for d in range(1, 9):
        defect, _ = rnc.rnc_ed_defect(rnc.make_frobenius_rnc(d), d)
        if defect != 2 * (d - 1) or rnc.rnc_ed_degree(rnc.make_frobenius_rnc(d), d) != d:
            bad.append(("Frobenius", d, defect))
        defect, _ = rnc.rnc_ed_defect(rnc.make_special_qd(d), d)
        if defect != 2 * d - 1:
            bad.append(("Q_d", d, defect))
    rng = random.Random(2024)
    jobs = []
    for d in range(1, 7):
        jobs += [(rnc.random_spd_gram(d + 1, rng), d) for _ in range(samples)]
    for d, defect, deg in pmap(_rnc_degree, jobs):
        if defect % 2 or defect > 2 * d - 2 or deg not in range(d, 3 * d - 1, 2):
            bad.append(("SPD", d, defect, deg))
    return not bad, f"d<=8 special forms, {samples} SPD samples per d<=6" if not bad else f"failures: {bad[:4]}"


def check_local_minimality():
    rep = rnc.semicontinuity_probe(3, Fraction(1, 100), 200, seed=0)
    return rep.minimum >= 3, f"min ED degree {rep.minimum}, histogram {rep.histogram}"


# ---------------------------------------------------------------------------
# critpoints


FROBENIUS_MATRIX_FORMATS = [(m, n) for m in range(2, 5) for n in range(m, 6)]
FROBENIUS_SYMMETRIC_SIZES = [2, 3, 4, 5]
GENERAL_MATRIX_FORMATS = [(2, 2), (2, 3), (3, 3)]
GENERAL_SYMMETRIC_SIZES = [2, 3]


def _values_match(found, oracle, tol=1e-6):
    a, b = sorted(found), sorted(oracle)
    return len(a) == len(b) and all(abs(x - y) <= tol * max(1.0, abs(y)) for x, y in zip(a, b))


def check_morse_frobenius(instances=20):
    import warnings

    rng = np.random.default_rng(9)
    bad = []
    runs = 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for m, n in FROBENIUS_MATRIX_FORMATS:
            gram = critpoints.frobenius_gram_matrices(m, n)
            for t in range(instances):
                u = rng.standard_normal((m, n))
                pts, census = critpoints.critical_matrices(u, gram, critpoints.CritConfig(seed=t))
                oracle = critpoints.frobenius_oracle_matrices(u)
                runs += 1
                if len(pts) != min(m, n) or not _values_match(pts.values(), oracle.values()):
                    bad.append((f"{m}x{n}", t, len(pts)))
                check = critpoints.verify_morse_inequalities(census)
                if not check.passed or pts.non_generic:
                    bad.append((f"{m}x{n}", t, check.failed()))
        for p in FROBENIUS_SYMMETRIC_SIZES:
            gram = critpoints.frobenius_gram_symmetric(p)
            for t in range(instances):
                a = rng.standard_normal((p, p))
                u = a + a.T
                pts, census = critpoints.critical_symmetric(u, gram, critpoints.CritConfig(seed=t))
                oracle = critpoints.frobenius_oracle_symmetric(u)
                runs += 1
                if len(pts) != p or not _values_match(pts.values(), oracle.values()):
                    bad.append((f"sym{p}", t, len(pts)))
                check = critpoints.verify_morse_inequalities(census)
                if not check.passed or pts.non_generic:
                    bad.append((f"sym{p}", t, check.failed()))
    return not bad, f"{runs} instances match the oracles" if not bad else f"{len(bad)} failures, e.g. {bad[:3]}"


def check_morse_general_q(instances=20):
    import warnings

    rng = np.random.default_rng(10)
    bad = []
    counts = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        for m, n in GENERAL_MATRIX_FORMATS:
            top = formulas.generic_ed_degree(formulas.matrix_format(m - 1, n - 1))
            for t in range(instances):
                u = rng.standard_normal((m, n))
                gram = critpoints.random_spd(m * n, rng)
                pts, census = critpoints.critical_matrices(u, gram, critpoints.CritConfig(seed=t))
                c = len(pts)
                counts.setdefault(f"{m}x{n}", set()).add(c)
                if not min(m, n) <= c <= top or pts.non_generic:
                    bad.append((f"{m}x{n}", t, c))
                if (m, n) == (2, 2) and c not in (2, 4, 6):
                    bad.append(("2x2 count", t, c))
                if not critpoints.verify_morse_inequalities(census).passed:
                    bad.append((f"{m}x{n}", t, "Morse"))
        for p in GENERAL_SYMMETRIC_SIZES:
            top = formulas.generic_ed_degree(formulas.TensorFormat((2,), (p - 1,)))
            for t in range(instances):
                a = rng.standard_normal((p, p))
                gram = critpoints.random_spd(p * (p + 1) // 2, rng)
                pts, census = critpoints.critical_symmetric(a + a.T, gram, critpoints.CritConfig(seed=t))
                c = len(pts)
                counts.setdefault(f"sym{p}", set()).add(c)
                if not p <= c <= top or pts.non_generic:
                    bad.append((f"sym{p}", t, c))
                if not critpoints.verify_morse_inequalities(census).passed:
                    bad.append((f"sym{p}", t, "Morse"))
    seen = ", ".join(f"{k}: {sorted(v)}" for k, v in counts.items())
    return not bad, f"observed counts {seen}" if not bad else f"failures: {bad[:4]}"


# ---------------------------------------------------------------------------
# edpoly


def edpoly_gram_family(d, rng, random_count=5):
    out = [("Frobenius", rnc.make_frobenius_rnc(d))]
    if d >= 3:
        out.append(("Q_d", rnc.make_special_qd(d)))
    out += [(f"SPD{i}", rnc.random_spd_gram(d + 1, rng)) for i in range(random_count)]
    return out


def check_edpoly_crosscheck(points=5):
    rng = random.Random(77)
    bad = []
    compared = 0
    for d in range(1, 6):
        for label, m_q in edpoly_gram_family(d, rng):
            expected = rnc.rnc_ed_degree(m_q, d)
            for _ in range(points):
                poly = edpoly.generic_ed_polynomial(m_q, d, rng)
                if poly.declared_degree != expected:
                    bad.append((d, label, poly.declared_degree, expected))
                if d == 2:
                    u = poly.u
                    mat = np.array([[float(u[0]), float(u[1])], [float(u[1]), float(u[2])]])
                    pts, _ = critpoints.critical_symmetric(mat, m_q.to_numpy(), critpoints.CritConfig(seed=0))
                    compared += 1
                    if not _values_match(pts.values(), poly.real_roots()):
                        bad.append((d, label, "real roots", pts.values(), poly.real_roots()))
    # data on the real cone: u = v(t0) has eps^2 = 0 as a root
    for d in (2, 3, 4):
        for label, m_q in edpoly_gram_family(d, rng, random_count=2):
            for t0 in (Fraction(1), Fraction(-2, 3), Fraction(5, 2)):
                u = tuple(t0 ** i for i in range(d + 1))
                poly = edpoly.ed_polynomial_rnc(u, m_q, d)
                if poly.coefficient(0) != 0:
                    bad.append((d, label, "cone", t0))
    return not bad, f"degrees agree for d<=5, {compared} root comparisons at d=2" if not bad else f"failures: {bad[:3]}"


def check_conic_sextic(samples=500):
    rep = edpoly.confirm_sextic_convention(samples=samples, seed=0)
    terms = edpoly.load_sextic_fixture()
    homogeneous = all(sum(exps) == 6 for exps, _ in terms)
    rng = random.Random(5)
    for _ in range(20):
        m = edpoly.sample_conic(rng)
        c = Fraction(rng.randint(2, 9), rng.randint(1, 9))
        if edpoly.conic_sextic_fixture_eval(m.scaled(c), rep.convention or "halved") != c ** 6 * edpoly.conic_sextic_fixture_eval(m, rep.convention or "halved"):
            homogeneous = False
    ok = rep.confirmed and rep.convention == "halved" and homogeneous
    tried = rep.tried.get(rep.convention or "halved")
    return ok, f"convention {rep.convention}: {tried}, degree-6 homogeneous {homogeneous}"


def check_bidegree_scaling():
    rep = edpoly.coefficient_scaling_check(2, 50, seed=0)
    return rep.passed, f"50 samples, {len(rep.failures)} failures, {rep.resampled} resampled"


# ---------------------------------------------------------------------------

CRITERIA = [
    (1, "table-segre-binary", "formulas", check_table_segre_binary, 10),
    (2, "table-matrices", "formulas", check_table_matrices, None),
    (3, "formula-triangle", "formulas", check_formula_triangle, 60),
    (4, "closed-forms", "formulas", check_closed_forms, None),
    (5, "quadric-pencils", "pencils", check_quadric_pencils, None),
    (6, "rnc-suite", "rnc", check_rnc_suite, 120),
    (7, "quartic-surface", "formulas", check_quartic_surface, None),
    (8, "dual-degrees", "formulas", check_dual_degrees, None),
    (9, "morse-frobenius", "critpoints", check_morse_frobenius, 300),
    (10, "morse-general-q", "critpoints", check_morse_general_q, None),
    (11, "edpoly-crosscheck", "edpoly", check_edpoly_crosscheck, 180),
    (12, "conic-sextic", "edpoly", check_conic_sextic, None),
    (13, "bidegree-scaling", "edpoly", check_bidegree_scaling, None),
    (14, "local-minimality", "rnc", check_local_minimality, None),
]

SCOPES = ("all", "formulas", "pencils", "rnc", "critpoints", "edpoly")


def run_criterion(number):
    for num, anchor, _, func, limit in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                ok, detail = func()
            except Exception as exc:  # a crash is a failed check, reported with its message
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            seconds = time.perf_counter() - start
            if limit is not None and seconds > limit:
                ok = False
                detail += f"; exceeded the {limit}s budget"
            return CheckResult(num, anchor, bool(ok), detail, seconds, limit)
    raise KeyError(number)


def run_scope(scope="all"):
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
    return [run_criterion(num) for num, _, s, _, _ in CRITERIA if scope in ("all", s)]
