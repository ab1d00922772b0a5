from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from edlab.exactmath import DomainError, SymMat, UsageError, mat_mul
from edlab.pencils import (
    eigenvalue_cluster,
    ed_degree_image_quadric,
    inertia,
    jacobi_eigh,
    quadric_ed_degree,
    segre_2x2_quadric,
    segre_symbol,
    simultaneous_diagonalize,
    veronese_conic_quadric,
)
from edlab.rnc import random_spd_gram
from edlab.suite import sigma2_configurations


def random_sym(rng, n):
    a = rng.standard_normal((n, n))
    return (a + a.T) / 2


def random_spd(rng, n):
    a = rng.standard_normal((n, n))
    return a @ a.T + n * np.eye(n)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2 ** 31))
def test_jacobi_matches_numpy(n, seed):
    rng = np.random.default_rng(seed)
    a = random_sym(rng, n)
    w, v = jacobi_eigh(a)
    assert np.allclose(w, np.linalg.eigvalsh(a), atol=1e-10)
    assert np.allclose(v @ np.diag(w) @ v.T, a, atol=1e-10)
    assert np.allclose(v.T @ v, np.eye(n), atol=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2 ** 31))
def test_simultaneous_diagonalization_round_trip(n, seed):
    rng = np.random.default_rng(seed)
    a, b = random_sym(rng, n), random_spd(rng, n)
    form = simultaneous_diagonalize(SymMat.from_rows(a.tolist()), SymMat.from_rows(b.tolist()))
    s = form.transform
    lam = np.diag(form.eigenvalues)
    for t in (0.0, 1.0, -1.0):
        err = np.linalg.norm(s @ (a - t * b) @ s.T - (lam - t * np.eye(n)))
        assert err <= 1e-8 * max(1.0, np.linalg.norm(a))


def test_diagonalization_examples():
    form = simultaneous_diagonalize(SymMat.diagonal([3, 1, 2]), SymMat.identity(3))
    assert form.eigenvalues == [1.0, 2.0, 3.0]
    assert np.allclose(np.abs(form.transform), np.abs(form.transform).round())
    b = SymMat.from_rows([[2, 1], [1, 2]])
    assert np.allclose(simultaneous_diagonalize(b, b).eigenvalues, [1, 1])
    form = simultaneous_diagonalize(segre_2x2_quadric(), SymMat.identity(4))
    assert np.allclose(form.eigenvalues, [-0.5, -0.5, 0.5, 0.5])
    assert [m for _, m in form.multiplicity_partition] == [2, 2]
    assert [v for v, _ in form.multiplicity_partition] == pytest.approx([-0.5, 0.5], abs=1e-12)


def test_non_pd_pencil_names_the_minor():
    with pytest.raises(DomainError, match="minor of order 2"):
        simultaneous_diagonalize(SymMat.identity(2), SymMat.diagonal([1, -1]))
    with pytest.raises(DomainError, match="pivot"):
        simultaneous_diagonalize(SymMat.identity(2), SymMat.from_rows([[1.0, 0.0], [0.0, -1.0]]))


def test_cluster_examples():
    assert eigenvalue_cluster([-0.5, -0.5, 0.5, 0.5], 1e-8) == [(-0.5, 2), (0.5, 2)]
    assert len(eigenvalue_cluster([1.0, 2.0, 3.0, 4.0])) == 4
    assert eigenvalue_cluster([Fraction(1, 3), Fraction(1, 3), Fraction(1, 2)]) == [(Fraction(1, 3), 2), (Fraction(1, 2), 1)]
    assert eigenvalue_cluster([1.0, 1.0 + 1e-12, 1.1], 1e-8) == [(1.0 + 5e-13, 2), (1.1, 1)]


def test_segre_symbol_format():
    assert segre_symbol([1, 1, 1, 1]) == "[1,1,1,1]"
    assert segre_symbol([1, 2, 1]) == "[(1,1),1,1]"
    assert segre_symbol([2, 2]) == "[(1,1),(1,1)]"


@pytest.mark.parametrize("label, m_q, degree, symbol", sigma2_configurations())
def test_sigma2_cases(label, m_q, degree, symbol):
    rep = quadric_ed_degree(segre_2x2_quadric(), m_q)
    assert (rep.ed_degree, rep.segre_symbol) == (degree, symbol)
    assert rep.ed_degree + rep.ed_defect == 6
    assert rep.signature == (2, 2, 0)


def test_conic_cases():
    conic = veronese_conic_quadric()
    assert quadric_ed_degree(conic, SymMat.identity(3)).ed_degree == 4
    rep = quadric_ed_degree(conic, SymMat.diagonal([1, 2, 1]))
    assert rep.ed_degree == 2 and rep.segre_symbol == "[(1,1),1]"


def test_quadric_errors():
    f = segre_2x2_quadric()
    with pytest.raises(DomainError, match="pencil degenerate"):
        quadric_ed_degree(SymMat.diagonal([2, 2, 2]), SymMat.identity(3))
    with pytest.raises(DomainError, match="quadric singular"):
        quadric_ed_degree(SymMat.diagonal([1, -1, 0]), SymMat.identity(3))
    with pytest.raises(DomainError, match="quadric singular"):
        quadric_ed_degree(SymMat.from_rows([[1.0, 0, 0], [0, -1.0, 0], [0, 0, 0.0]]), SymMat.identity(3))
    with pytest.raises(DomainError, match="not positive definite"):
        quadric_ed_degree(f, SymMat.diagonal([1, 1, 1, -1]))
    with pytest.raises(UsageError):
        quadric_ed_degree(f, SymMat.identity(3))


def _random_invertible(rng, n):
    while True:
        p = [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        if SymMat.from_rows(mat_mul(p, [list(r) for r in zip(*p)])).det() != 0:
            return p


def _congruent(m, p):
    pt = [list(r) for r in zip(*p)]
    return SymMat.from_rows(mat_mul(mat_mul(p, m.rows()), pt), exact=True)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2 ** 31), st.sampled_from([Fraction(1, 3), Fraction(2), Fraction(7, 5)]))
def test_congruence_and_scaling_invariance(n, seed, c):
    import random

    rng = random.Random(seed)
    # symmetric A with a repeated eigenvalue pattern to exercise multiplicities
    diag = [rng.choice([-2, -1, 1, 3]) for _ in range(n)]
    if len(set(diag)) == 1:
        diag[0] = 5
    a = SymMat.diagonal(diag)
    b = random_spd_gram(n, rng)
    base = quadric_ed_degree(a, SymMat.diagonal([1] * n))
    p = _random_invertible(rng, n)
    same = quadric_ed_degree(_congruent(a, p), _congruent(SymMat.identity(n), p))
    assert same.ed_degree == base.ed_degree and same.segre_symbol == base.segre_symbol
    rep = quadric_ed_degree(a, b)
    assert quadric_ed_degree(a, b.scaled(c)).ed_degree == rep.ed_degree
    assert quadric_ed_degree(_congruent(a, p), _congruent(b, p)).ed_degree == rep.ed_degree


def test_exact_and_numeric_paths_agree():
    import random

    rng = random.Random(3)
    for _ in range(30):
        b = random_spd_gram(4, rng)
        exact = quadric_ed_degree(segre_2x2_quadric(), b)
        numeric = quadric_ed_degree(segre_2x2_quadric().to_numeric(), b.to_numeric())
        assert exact.ed_degree == numeric.ed_degree


@pytest.mark.parametrize("n", range(1, 7))
def test_image_of_the_ed_degree_map(n):
    image = ed_degree_image_quadric(n)
    assert image.values == set(range(2, 2 * n + 1, 2))
    assert inertia(image.quadric) == (n, 1, 0)
    for value, w in image.witnesses.items():
        assert quadric_ed_degree(image.quadric, w).ed_degree == value
        assert all(m > 0 for m in w.leading_minors())


def test_inertia_exact_and_numeric():
    m = SymMat.diagonal([3, 0, -1, 2])
    assert inertia(m) == (2, 1, 1)
    assert inertia(m.to_numeric()) == (2, 1, 1)
