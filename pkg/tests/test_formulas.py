from fractions import Fraction
from math import comb, factorial
from pathlib import Path

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from edlab.exactmath import UsageError
from edlab.formulas import (
    TensorFormat,
    chern_degrees,
    chern_mather_from_polar,
    degree_report,
    dual_degree_from_chern_mather,
    dual_degree_veronese_re_embedding,
    emit_tables,
    frobenius_ed_degree_ah,
    frobenius_ed_degree_fo,
    gamma_alpha,
    generic_ed_degree,
    generic_ed_degree_from_chern,
    matrix_format,
    polar_degrees,
    segre_binary_ged,
    segre_format,
)

GOLDEN = Path(__file__).parent / "golden"

formats = st.integers(1, 3).flatmap(
    lambda k: st.tuples(st.tuples(*[st.integers(1, 4)] * k), st.tuples(*[st.integers(0, 3)] * k))
).map(lambda dn: TensorFormat(*dn))


def chow_chern_degrees(fmt):
    """deg(c_i . h^(n-i)) from c(T) = prod (1 + H_j)^(n_j + 1), h = sum d_j H_j, via sympy."""
    hs = sympy.symbols(f"H0:{fmt.k}")
    t = sympy.Symbol("t")
    total = sympy.Integer(1)
    for h, nj in zip(hs, fmt.n):
        total *= (1 + t * h) ** (nj + 1)
    hyper = sum(dj * h for dj, h in zip(fmt.d, hs))
    poly = sympy.Poly(sympy.expand(total), t)
    top = sympy.Mul(*[h ** nj for h, nj in zip(hs, fmt.n)])
    out = []
    for i in range(fmt.dim + 1):
        ci = poly.coeff_monomial(t ** i)
        expr = sympy.Poly(sympy.expand(ci * hyper ** (fmt.dim - i)), *hs)
        out.append(int(expr.coeff_monomial(top)))
    return out


# gamma and Chern degrees ---------------------------------------------------------


def test_gamma_examples():
    assert gamma_alpha((1, 1), (0, 0)) == 1
    assert gamma_alpha((1, 1), (1, 0)) == gamma_alpha((1, 1), (0, 1)) == 2
    assert gamma_alpha((1, 1), (1, 1)) == 4
    assert gamma_alpha((1,), (0,)) == 1 and gamma_alpha((1,), (1,)) == 2
    assert gamma_alpha((1,), (2,)) == 0
    with pytest.raises(UsageError):
        gamma_alpha((1, 1), (1,))


def test_chern_degree_examples():
    assert chern_degrees(matrix_format(1, 1)) == [2, 4, 4]
    assert chern_degrees(TensorFormat((2,), (1,)))[0] == 2


@settings(max_examples=60, deadline=None)
@given(formats)
def test_chern_degrees_match_chow_ring(fmt):
    assert chern_degrees(fmt) == chow_chern_degrees(fmt)


# generic ED degree -----------------------------------------------------------


@pytest.mark.parametrize(
    "d, n, want",
    [((1, 1), (1, 1), 6), ((1, 1, 1), (1, 1, 1), 34), ((2,), (2,), 13), ((1, 1), (2, 3), 83)],
)
def test_generic_ed_degree_examples(d, n, want):
    assert generic_ed_degree(TensorFormat(d, n)) == want


@settings(max_examples=200, deadline=None)
@given(formats)
def test_degree_identities(fmt):
    ged = generic_ed_degree(fmt)
    polar = polar_degrees(fmt)
    assert sum(polar) == ged == generic_ed_degree_from_chern(fmt)
    assert all(p >= 0 for p in polar)
    assert frobenius_ed_degree_fo(fmt) == frobenius_ed_degree_ah(fmt)
    # smooth case: polar -> Chern-Mather round trip gives the Chern degrees
    assert chern_mather_from_polar(polar, fmt.dim) == chern_degrees(fmt)
    assert dual_degree_from_chern_mather(chern_degrees(fmt), 1, fmt.dim) == polar[0]


def test_rational_normal_curve_polar_degrees():
    for d in range(1, 12):
        assert polar_degrees(TensorFormat((d,), (1,))) == [2 * (d - 1), d]


# Frobenius ED degree ---------------------------------------------------------


def test_frobenius_examples():
    assert frobenius_ed_degree_fo(segre_format(3)) == 6
    assert frobenius_ed_degree_fo(matrix_format(2, 3)) == 3
    assert frobenius_ed_degree_fo(TensorFormat((2,), (4,))) == 5
    assert frobenius_ed_degree_ah(segre_format(4)) == 24
    assert frobenius_ed_degree_ah(TensorFormat((3,), (1,))) == 3


@pytest.mark.parametrize("d", range(1, 7))
@pytest.mark.parametrize("n", range(0, 5))
def test_frobenius_veronese_eigenvector_count(d, n):
    # number of eigenvectors of a generic symmetric tensor
    want = n + 1 if d == 2 else ((d - 1) ** (n + 1) - 1) // (d - 2) if d != 1 else 1
    fmt = TensorFormat((d,), (n,))
    assert frobenius_ed_degree_fo(fmt) == frobenius_ed_degree_ah(fmt) == want


def test_frobenius_matrices_are_eckart_young():
    for a in range(0, 11):
        for b in range(0, 11):
            assert frobenius_ed_degree_fo(matrix_format(a, b)) == min(a, b) + 1


# closed forms ----------------------------------------------------------------


def test_row_formulas():
    for n2 in range(1, 11):
        assert generic_ed_degree(matrix_format(1, n2)) == 4 * n2 + 2
    for n2 in range(2, 11):
        assert generic_ed_degree(matrix_format(2, n2)) == 8 * n2 ** 2 + 4 * n2 - 1
    for d in range(1, 21):
        assert generic_ed_degree(TensorFormat((d,), (1,))) == 3 * d - 2
    for d in range(1, 11):
        assert generic_ed_degree(TensorFormat((d,), (2,))) == 7 * d * d - 9 * d + 3


def test_segre_binary():
    assert segre_binary_ged(1) == 1 and segre_binary_ged(2) == 6 and segre_binary_ged(5) == 2808
    for k in range(1, 11):
        assert segre_binary_ged(k) == generic_ed_degree(segre_format(k))
    # the incomplete-gamma form: k! sum (-1)^i / i! (2^(k+1) - 2^i)
    for k in range(1, 11):
        assert segre_binary_ged(k) == factorial(k) * sum(Fraction((-1) ** i, factorial(i)) * (2 ** (k + 1) - 2 ** i) for i in range(k + 1))


# dual degrees ----------------------------------------------------------------


def test_dual_degree_examples():
    assert dual_degree_veronese_re_embedding(TensorFormat((3,), (1,)), 2) == 10
    assert dual_degree_veronese_re_embedding(matrix_format(1, 1), 2) == 12
    assert dual_degree_veronese_re_embedding(TensorFormat((2,), (1,)), 2) == 6
    with pytest.raises(UsageError):
        dual_degree_veronese_re_embedding(matrix_format(1, 1), 1)


def test_quartic_surface():
    cm = chern_mather_from_polar([0, 3, 4], 2)
    assert cm == [4, 9, 6]
    assert dual_degree_from_chern_mather(cm, 2, 2) == 3 * 4 * 4 - 2 * 9 * 2 + 6 == 18
    assert chern_mather_from_polar([0, 0, 0], 2) == [0, 0, 0]
    assert dual_degree_from_chern_mather([0, 0, 0], 3, 2) == 0
    with pytest.raises(UsageError):
        chern_mather_from_polar([1, 2], 2)


def test_dual_degree_matches_discriminant_degree():
    # binary forms of degree m have a discriminant of degree 2(m - 1)
    for d in range(1, 7):
        for e in range(2, 7):
            assert dual_degree_veronese_re_embedding(TensorFormat((d,), (1,)), e) == 2 * (e * d - 1)
    for e in range(2, 7):
        assert dual_degree_veronese_re_embedding(matrix_format(1, 1), e) == 6 * e * e - 8 * e + 4


# tables ----------------------------------------------------------------------


def test_tables_match_golden_csv():
    doc = emit_tables()
    assert doc.csv() == (GOLDEN / "tables.csv").read_text()


def test_table_spot_values():
    doc = emit_tables()
    assert doc.table1[-1] == (10, 2733508864, 3628800)
    cells = {(a, b): g for a, b, g, _ in doc.table2}
    assert cells[4, 4] == 2205 and cells[10, 10] == 740526303
    assert all(cells[1, b] == 4 * b + 2 for b in range(1, 11))


def test_markdown_tables_list_every_cell():
    md = emit_tables(3, 3).markdown()
    assert "| 2 | " in md and "39 (3)" in md and "284 (4)" in md


def test_degree_report_and_format_validation():
    rep = degree_report(matrix_format(1, 1), e=2).as_dict()
    assert rep["generic_ed_degree"] == "6" and rep["frobenius_ed_degree"] == "2" and rep["dual_degree"] == "12"
    for bad in [((), ()), ((1,), (1, 1)), ((0,), (1,)), ((1,), (-1,))]:
        with pytest.raises(UsageError):
            TensorFormat(*bad)


def test_chern_degree_zero_counts_the_degree():
    for d in range(1, 5):
        for n in range(1, 4):
            fmt = TensorFormat((d, 1), (n, 1))
            assert chern_degrees(fmt)[0] == comb(n + 1, 1) * d ** n
