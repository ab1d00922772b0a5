"""Symmetric pencils A - tB with B positive definite, and ED degrees of quadrics.

A smooth quadric F with Gram matrix A has ED degree 2(r - 1) with respect to
a positive definite form with Gram matrix B, where r is the number of
distinct eigenvalues of B^-1 A.  Numeric inputs go through Cholesky plus a
cyclic Jacobi eigensolver and a relative gap clustering; exact rational
inputs get their multiplicities from a square-free split of the exact
characteristic polynomial instead.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactmath import (
    DomainError,
    SymMat,
    UsageError,
    charpoly_exact,
    cholesky,
    count_real_roots,
    inverse_exact,
    mat_mul,
    positive_definite_failure,
    sign_changes_of_coefficients,
    squarefree_decompose,
    UniPoly,
)

DEFAULT_CLUSTER_TOL = 1e-8


def jacobi_eigh(a, tol=1e-14, max_sweeps=100):
    """Cyclic Jacobi eigendecomposition of a real symmetric matrix.

    Returns (eigenvalues ascending, orthogonal U with a = U diag(w) U^T).
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = np.linalg.norm(a)
    if scale == 0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # rotate rows/columns p and q
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigenvalue_cluster(values, tol=DEFAULT_CLUSTER_TOL):
    """Group sorted values; [(representative, multiplicity), ...].

    Fractions are grouped by exact equality.  Floats start a new cluster when
    the gap to the previous value exceeds tol * (1 + |value|).
    """
    values = list(values)
    if not values:
        return []
    exact = all(isinstance(v, (Fraction, int)) for v in values)
    clusters = [[values[0]]]
    for prev, cur in zip(values, values[1:]):
        if exact:
            same = cur == prev
        else:
            same = abs(cur - prev) <= tol * (1 + abs(cur))
        if same:
            clusters[-1].append(cur)
        else:
            clusters.append([cur])
    if exact:
        return [(c[0], len(c)) for c in clusters]
    return [(float(np.mean(c)), len(c)) for c in clusters]


def segre_symbol(multiplicities):
    """Segre symbol string, groups ordered by decreasing size, e.g. '[(1,1),1,1]'."""
    parts = []
    for m in sorted(multiplicities, reverse=True):
        parts.append("1" if m == 1 else "(" + ",".join(["1"] * m) + ")")
    return "[" + ",".join(parts) + "]"


@dataclass
class PencilNormalForm:
    transform: np.ndarray
    eigenvalues: list
    multiplicity_partition: list
    segre_symbol: str
    exact: bool = False

    @property
    def distinct(self):
        return len(self.multiplicity_partition)


def _as_symmat(m):
    return m if isinstance(m, SymMat) else SymMat.from_rows(m)


def _exact_partition(a, b):
    """Multiplicities of the eigenvalues of B^-1 A from the exact characteristic polynomial."""
    c = mat_mul(inverse_exact(b.rows()), a.rows())
    chi = charpoly_exact(c)
    parts = []
    for factor, mult in squarefree_decompose(chi):
        if count_real_roots(factor) != factor.degree:
            raise ArithmeticError("definite pencil produced non-real eigenvalues")
        if factor.degree == 1:
            parts.append((-factor.coeff(0) / factor.coeff(1), mult))
        elif factor.degree:
            roots = np.sort(np.roots(factor.to_floats()[::-1]).real)
            parts.extend((float(r), mult) for r in roots)
    parts.sort()
    return parts, chi


def simultaneous_diagonalize(a, b, tol=DEFAULT_CLUSTER_TOL):
    """S with S (A - tB) S^T = diag(eigenvalues) - t I.

    Cholesky B = L L^T, then a Jacobi eigendecomposition U of L^-1 A L^-T,
    S = U^T L^-1.
    """
    a = _as_symmat(a)
    b = _as_symmat(b)
    if a.dim != b.dim:
        raise UsageError("pencil matrices must have the same dimension")
    reason = positive_definite_failure(b)
    if reason is not None:
        raise DomainError(f"second pencil matrix is not positive definite: {reason}")
    low = cholesky(b)
    linv = np.linalg.solve(low, np.eye(b.dim))
    c = linv @ a.to_numpy() @ linv.T
    c = (c + c.T) / 2
    w, u = jacobi_eigh(c)
    s = u.T @ linv
    if a.exact and b.exact:
        parts, _ = _exact_partition(a, b)
        mults = [m for _, m in parts]
        exact = True
    else:
        parts = eigenvalue_cluster(list(w), tol)
        mults = [m for _, m in parts]
        exact = False
    return PencilNormalForm(
        transform=s,
        eigenvalues=[float(x) for x in w],
        multiplicity_partition=parts,
        segre_symbol=segre_symbol(mults),
        exact=exact,
    )


def inertia(m):
    """(positive, negative, zero) eigenvalue counts; exact via Descartes on the charpoly."""
    m = _as_symmat(m)
    if m.exact:
        chi = m.charpoly()
        zero = 0
        while chi.coeff(0) == 0 and not chi.is_zero():
            chi = UniPoly(chi.coeffs[1:])
            zero += 1
        pos = sign_changes_of_coefficients(chi)
        return pos, m.dim - zero - pos, zero
    w, _ = jacobi_eigh(m.to_numpy())
    scale = max(1.0, float(np.max(np.abs(w))))
    zero = int(np.sum(np.abs(w) <= 1e-12 * scale))
    pos = int(np.sum(w > 1e-12 * scale))
    return pos, m.dim - zero - pos, zero


@dataclass
class QuadricReport:
    ed_degree: int
    ed_defect: int
    segre_symbol: str
    eigenvalues: list
    multiplicities: list
    signature: tuple

    def as_dict(self):
        return {
            "ed_degree": self.ed_degree,
            "ed_defect": self.ed_defect,
            "segre_symbol": self.segre_symbol,
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "multiplicities": list(self.multiplicities),
            "signature": list(self.signature),
        }


def quadric_ed_degree(m_f, m_q, tol=DEFAULT_CLUSTER_TOL):
    """ED degree and defect of the smooth quadric {z M_F z^T = 0} w.r.t. the PD form M_Q."""
    m_f = _as_symmat(m_f)
    m_q = _as_symmat(m_q)
    if m_f.dim != m_q.dim:
        raise UsageError("F and Q must have the same dimension")
    if m_f.dim < 2:
        raise UsageError("a quadric needs at least two homogeneous coordinates")
    reason = positive_definite_failure(m_q)
    if reason is not None:
        raise DomainError(f"Q is not positive definite: {reason}")
    sig = inertia(m_f)
    exact = m_f.exact and m_q.exact
    if exact:
        if m_f.det() == 0:
            raise DomainError("quadric singular: det(M_F) = 0")
    form = simultaneous_diagonalize(m_f, m_q, tol)
    w = np.array(form.eigenvalues)
    if not exact:
        if np.min(np.abs(w)) <= tol * max(1.0, float(np.max(np.abs(w)))):
            raise DomainError("quadric singular: M_F has a (numerically) zero eigenvalue")
        # proportionality: A - lambda B with lambda = tr(B^-1 A)/(N+1)
        lam = float(np.mean(w))
        a = m_f.to_numpy()
        b = m_q.to_numpy()
        if np.linalg.norm(a - lam * b) <= tol * max(1.0, np.linalg.norm(a)):
            raise DomainError("pencil degenerate: M_F is proportional to M_Q")
    r = form.distinct
    if r == 1:
        raise DomainError("pencil degenerate: M_F is proportional to M_Q")
    dim = m_f.dim
    mults = [m for _, m in form.multiplicity_partition]
    return QuadricReport(
        ed_degree=2 * (r - 1),
        ed_defect=2 * (dim - r),
        segre_symbol=form.segre_symbol,
        eigenvalues=[v for v, _ in form.multiplicity_partition],
        multiplicities=mults,
        signature=sig,
    )


def reference_quadric(n):
    """x_0^2 + ... + x_{N-1}^2 - x_N^2: smooth with a nonempty real locus."""
    return SymMat.diagonal([1] * n + [-1])


@dataclass
class QuadricImage:
    values: set
    witnesses: dict
    quadric: SymMat


def ed_degree_image_quadric(n):
    """All ED degrees {2, 4, ..., 2N} of a quadric in P^N, each with a PD witness.

    Against F = diag(1, ..., 1, -1) a diagonal Q = diag(q_i) gives eigenvalues
    f_i/q_i; taking q_0..q_{N-1} in {1, ..., r-1} and q_N = 1 yields r - 1
    distinct positive eigenvalues plus -1, i.e. exactly r distinct values.
    """
    if int(n) != n or n < 1:
        raise UsageError("N must be a positive integer")
    f = reference_quadric(n)
    witnesses = {}
    for r in range(2, n + 2):
        q = [min(i + 1, r - 1) for i in range(n)] + [1]
        m_q = SymMat.diagonal(q)
        report = quadric_ed_degree(f, m_q)
        if report.ed_degree != 2 * (r - 1):
            raise ArithmeticError(f"witness for r={r} failed: got {report.ed_degree}")
        witnesses[2 * (r - 1)] = m_q
    return QuadricImage(values=set(witnesses), witnesses=witnesses, quadric=f)


# the two worked families --------------------------------------------------


def segre_2x2_quadric():
    """Gram matrix of x0*x3 - x1*x2 (determinant of a 2x2 matrix)."""
    h = Fraction(1, 2)
    return SymMat.from_rows([[0, 0, 0, h], [0, 0, -h, 0], [0, -h, 0, 0], [h, 0, 0, 0]])


def veronese_conic_quadric():
    """Gram matrix of x0*x2 - x1^2."""
    h = Fraction(1, 2)
    return SymMat.from_rows([[0, 0, h], [0, -1, 0], [h, 0, 0]])
