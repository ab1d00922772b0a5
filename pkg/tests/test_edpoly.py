import random
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from edlab.exactmath import DomainError, SymMat, UsageError
from edlab.edpoly import (
    NonGenericData,
    coefficient_scaling_check,
    confirm_sextic_convention,
    conic_coordinates,
    conic_p0_structure_check,
    conic_sextic_fixture_eval,
    conic_tangency_test,
    critical_equation,
    degree_drop_probe,
    ed_polynomial_rnc,
    generic_ed_polynomial,
    load_sextic_fixture,
    sample_conic,
    squared_distance_grid,
)
from edlab.rnc import CurveInQuadric, make_frobenius_rnc, make_special_qd, random_spd_gram, rnc_ed_degree

T, E = sympy.symbols("t E")


def rat(x):
    return sympy.Rational(x.numerator, x.denominator)


def sympy_ed_polynomial(u, m_q, d):
    """Eliminate t from g = 0 and E q(v) = q(u) q(v) - Q(u,v)^2 directly in sympy."""
    m = sympy.Matrix(d + 1, d + 1, lambda i, j: rat(m_q[i, j]))
    v = sympy.Matrix([T ** i for i in range(d + 1)])
    uu = sympy.Matrix([rat(x) for x in u])
    a = sympy.expand((uu.T * m * v)[0])
    b = sympy.expand((v.T * m * v)[0])
    g = sympy.expand(sympy.diff(a, T) * b - a * sympy.diff(b, T) / 2)
    h = sympy.expand(E * b - (uu.T * m * uu)[0] * b + a ** 2)
    res = sympy.Poly(sympy.resultant(g, h, T), E)
    return res


def primitive_coeffs(poly):
    c = [sympy.Rational(x) for x in reversed(poly.all_coeffs())]
    lead = c[-1]
    return [x / lead for x in c]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2 ** 31))
def test_matches_sympy_elimination(d, seed):
    rng = random.Random(seed)
    m_q = random_spd_gram(d + 1, rng)
    poly = generic_ed_polynomial(m_q, d, rng)
    want = sympy_ed_polynomial(poly.u, m_q, d)
    # sympy works at the true degree of g; only a critical point at infinity makes that differ
    if poly.critical_point_at_infinity:
        return
    got = [Fraction(c) / poly.coefficients.lc() for c in poly.coefficients.coeffs]
    assert want.degree() == poly.declared_degree
    assert [rat(x) for x in got] == primitive_coeffs(want)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 2 ** 31))
def test_roots_are_critical_values(d, seed):
    rng = random.Random(seed)
    m_q = random_spd_gram(d + 1, rng)
    poly = generic_ed_polynomial(m_q, d, rng)
    g, a, b = critical_equation(poly.u, m_q, d)
    # high-precision roots: clustered critical values defeat double-precision companion matrices
    ts = sympy.Poly([rat(c) for c in reversed(g)], T).nroots(n=30)
    av = [sum(rat(c) * t ** i for i, c in enumerate(a)) for t in ts]
    bv = [sum(rat(c) * t ** i for i, c in enumerate(b)) for t in ts]
    qu = sum(rat(poly.u[i] * m_q[i, j] * poly.u[j]) for i in range(d + 1) for j in range(d + 1))
    values = [complex(qu - x ** 2 / y) for x, y in zip(av, bv)]
    roots = np.array([complex(r) for r in sympy.Poly([int(c) for c in reversed(poly.coefficients.coeffs)], E).nroots(n=30)])
    scale = max(1.0, np.max(np.abs(roots)))
    for val in values:
        assert np.min(np.abs(roots - val)) <= 1e-9 * scale


def test_degree_agrees_with_multiplicity_count():
    rng = random.Random(0)
    for d in range(1, 6):
        for m_q in (make_frobenius_rnc(d), random_spd_gram(d + 1, rng)):
            assert degree_drop_probe(m_q, d, 3, seed=d) == rnc_ed_degree(m_q, d)
    for d in (3, 4):
        assert degree_drop_probe(make_special_qd(d), d, 3, seed=d) == d - 1


def test_cone_points_have_zero_root():
    m_q = random_spd_gram(4, random.Random(3))
    for t0 in (Fraction(2), Fraction(-1, 3)):
        u = tuple(t0 ** i for i in range(4))
        assert ed_polynomial_rnc(u, m_q, 3).coefficient(0) == 0


def test_minimum_distance_is_a_root():
    rng = random.Random(8)
    m_q = random_spd_gram(3, rng)
    poly = generic_ed_polynomial(m_q, 2, rng)
    best = squared_distance_grid(poly.u, m_q, 2)
    assert min(abs(r - best) for r in poly.real_roots()) <= 1e-4 * max(1.0, abs(best))


def test_tangency_examples():
    assert not conic_tangency_test(SymMat.identity(3))
    assert conic_tangency_test(make_frobenius_rnc(2))
    # b(t) = t^2: double roots at zero and infinity
    assert conic_tangency_test(SymMat.diagonal([0, 1, 0]))


def test_sextic_fixture_is_the_discriminant():
    q = sympy.symbols("q200 q110 q101 q020 q011 q002")
    x = sympy.Symbol("x")
    quartic = q[0] + q[1] * x + (q[2] + q[3]) * x ** 2 + q[4] * x ** 3 + q[5] * x ** 4
    disc = sympy.Poly(sympy.discriminant(quartic, x), *q)
    fixture = {exps: c for exps, c in load_sextic_fixture()}
    want = {m: int(c) for m, c in disc.terms()}
    # proportional with a single nonzero ratio
    assert set(fixture) == set(want)
    ratios = {Fraction(fixture[k], want[k]) for k in fixture}
    assert len(ratios) == 1


def test_fixture_under_both_conventions():
    rep = confirm_sextic_convention(samples=30, seed=1)
    assert rep.confirmed and rep.convention == "halved" and rep.discrepancy == ""
    assert rep.tried["halved"]["zero_on_tangent"] == 30


def test_fixture_homogeneous_of_degree_six():
    rng = random.Random(2)
    for _ in range(10):
        m = sample_conic(rng)
        c = Fraction(rng.randint(2, 9), rng.randint(1, 9))
        assert conic_sextic_fixture_eval(m.scaled(c)) == c ** 6 * conic_sextic_fixture_eval(m)


def test_conic_coordinates():
    m = SymMat.from_rows([[1, 2, 3], [2, 4, 5], [3, 5, 6]], exact=True)
    assert conic_coordinates(m) == (1, 4, 6, 4, 10, 6)
    assert conic_coordinates(m, "unhalved") == (1, 2, 3, 4, 5, 6)
    with pytest.raises(UsageError):
        conic_coordinates(m, "other")
    with pytest.raises(UsageError):
        conic_coordinates(SymMat.identity(4))


def test_scaling_laws():
    for d in (1, 2, 3):
        rep = coefficient_scaling_check(d, 5, seed=d)
        assert rep.passed, rep.failures


def test_constant_coefficient_structure():
    rep = conic_p0_structure_check(4, seed=0)
    assert rep.passed, rep.failures


def test_errors():
    with pytest.raises(DomainError, match="degenerate"):
        ed_polynomial_rnc((1, 2, 3), SymMat.diagonal([1, 0, 1]), 2)
    with pytest.raises(CurveInQuadric):
        contained = SymMat.from_rows([[0, 0, Fraction(1, 2)], [0, -1, 0], [Fraction(1, 2), 0, 0]], exact=True)
        ed_polynomial_rnc((1, 2, 3), contained, 2)
    with pytest.raises(NonGenericData):
        ed_polynomial_rnc((0, 0, 0), SymMat.identity(3), 2)
    with pytest.raises(UsageError):
        ed_polynomial_rnc((1, 2), SymMat.identity(3), 2)
    with pytest.raises(UsageError):
        ed_polynomial_rnc((0.5, 1, 2), SymMat.identity(3), 2)


def test_serialisation():
    poly = ed_polynomial_rnc((1, 2, -1), SymMat.identity(3), 2)
    out = poly.as_dict()
    assert out["degree"] == 4 and len(out["coefficients"]) == 5
    assert all(isinstance(c, str) for c in out["coefficients"])
