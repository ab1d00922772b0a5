"""ED defects of rational normal curves, exactly over the rationals.

The isotropic quadric of Q cuts the degree-d rational normal curve in the
2d roots of the binary form b(x0, x1) = v M_Q v^T, v = (x0^d, ..., x1^d).
The defect is the sum of (multiplicity - 1) over those points, so
everything reduces to a square-free decomposition of b.  Floating point is
never used in this module: multiplicity structure is discontinuous.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .exactmath import (
    DomainError,
    SymMat,
    UniPoly,
    UsageError,
    count_real_roots,
    format_rational,
    is_positive_definite,
    squarefree_decompose,
)


class CurveInQuadric(DomainError):
    """b vanishes identically: the curve lies on the isotropic quadric."""


class ParityViolation(AssertionError):
    """A positive definite form produced an impossible ED degree."""


@dataclass
class BinaryFormFactorization:
    degree: int
    content: Fraction
    factors: list  # (monic square-free UniPoly, multiplicity, number of real roots)
    infinity_multiplicity: int
    form: UniPoly = None  # dehomogenized b(1, t)

    @property
    def point_multiset(self):
        """One entry per distinct point of P^1: {multiplicity, real, factor}."""
        pts = []
        for f, m, rho in self.factors:
            for _ in range(rho):
                pts.append({"multiplicity": m, "real": True, "factor": str(f)})
            for _ in range(f.degree - rho):
                pts.append({"multiplicity": m, "real": False, "factor": str(f)})
        if self.infinity_multiplicity:
            pts.append({"multiplicity": self.infinity_multiplicity, "real": True, "factor": "x0"})
        return pts

    @property
    def conjugate_pairs(self):
        return sum((f.degree - rho) // 2 for f, _, rho in self.factors)

    def check_bezout(self):
        return sum(m * f.degree for f, m, _ in self.factors) + self.infinity_multiplicity == self.degree


def _check_gram(m_q, d):
    if not isinstance(m_q, SymMat):
        m_q = SymMat.from_rows(m_q, exact=True)
    if not m_q.exact:
        raise UsageError("the rational normal curve analysis needs exact rational entries")
    if int(d) != d or d < 1:
        raise UsageError("d must be a positive integer")
    if m_q.dim != d + 1:
        raise UsageError(f"Gram matrix must be {d + 1}x{d + 1} for d={d}, got {m_q.dim}x{m_q.dim}")
    return m_q


def restricted_form(m_q, d):
    """Coefficients of b(1, t) = sum_k (sum_{i+j=k} M_ij) t^k, nominal degree 2d."""
    m_q = _check_gram(m_q, d)
    coeffs = [Fraction(0)] * (2 * d + 1)
    for i in range(d + 1):
        for j in range(d + 1):
            coeffs[i + j] += m_q[i, j]
    return coeffs


def restrict_to_curve(m_q, d):
    coeffs = restricted_form(m_q, d)
    b = UniPoly(coeffs)
    if b.is_zero():
        raise CurveInQuadric("b is identically zero: the curve lies on the isotropic quadric (ED degree 0)")
    inf_mult = 2 * d - b.degree
    factors = []
    for f, m in squarefree_decompose(b):
        factors.append((f, m, count_real_roots(f)))
    out = BinaryFormFactorization(
        degree=2 * d, content=b.lc(), factors=factors, infinity_multiplicity=inf_mult, form=b
    )
    assert out.check_bezout()
    return out


def rnc_ed_defect(m_q, d):
    """(defect, breakdown): defect = sum over intersection points of (m - 1)."""
    fac = restrict_to_curve(m_q, d)
    breakdown = []
    for p in fac.point_multiset:
        breakdown.append(dict(p, contribution=p["multiplicity"] - 1))
    return sum(p["contribution"] for p in breakdown), breakdown


@dataclass
class RncReport:
    d: int
    ed_degree: int
    defect: int
    points: list = field(default_factory=list)
    positive_definite: bool = False
    contained: bool = False

    def as_dict(self):
        return {
            "d": self.d,
            "ed_degree": self.ed_degree,
            "defect": self.defect,
            "generic_ed_degree": 3 * self.d - 2,
            "positive_definite": self.positive_definite,
            "curve_in_quadric": self.contained,
            "points": [{"multiplicity": p["multiplicity"], "real": p["real"], "factor": p["factor"]} for p in self.points],
        }


def rnc_report(m_q, d):
    m_q = _check_gram(m_q, d)
    pd = is_positive_definite(m_q)
    try:
        defect, points = rnc_ed_defect(m_q, d)
    except CurveInQuadric:
        return RncReport(d=d, ed_degree=0, defect=3 * d - 2, positive_definite=pd, contained=True)
    degree = 3 * d - 2 - defect
    if pd:
        if defect % 2 or not d <= degree <= 3 * d - 2:
            raise ParityViolation(f"positive definite Q gave defect {defect}, ED degree {degree} for d={d}")
    return RncReport(d=d, ed_degree=degree, defect=defect, points=points, positive_definite=pd)


def rnc_ed_degree(m_q, d):
    """3d - 2 - defect (0 if the curve lies on the isotropic quadric)."""
    return rnc_report(m_q, d).ed_degree


def make_special_qd(d):
    """Gram matrix of z0^2 - sum_{i=1}^{f} z_i z_{d+1-i} + f z_a z_b, f = (d-1)//2.

    Here a = (d+1)//2 and b = ceil((d+1)/2).  Off-diagonal Gram entries are
    half the coefficient.  Its restriction to the curve is x0^(2d).
    """
    if int(d) != d or d < 1:
        raise UsageError("d must be a positive integer")
    f = (d - 1) // 2
    rows = [[Fraction(0)] * (d + 1) for _ in range(d + 1)]
    rows[0][0] += 1

    def add(i, j, c):
        if i == j:
            rows[i][i] += c
        else:
            rows[i][j] += c / 2
            rows[j][i] += c / 2

    for i in range(1, f + 1):
        add(i, d + 1 - i, Fraction(-1))
    add((d + 1) // 2, -(-(d + 1) // 2), Fraction(f))
    return SymMat.from_rows(rows, exact=True)


def make_frobenius_rnc(d):
    if int(d) != d or d < 1:
        raise UsageError("d must be a positive integer")
    return SymMat.diagonal([comb(d, i) for i in range(d + 1)])


def random_spd_gram(dim, rng, bound=3):
    """A^T A + I for a random integer matrix A with entries in [-bound, bound]."""
    a = [[rng.randint(-bound, bound) for _ in range(dim)] for _ in range(dim)]
    rows = [[sum(a[k][i] * a[k][j] for k in range(dim)) + (1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    return SymMat.from_rows(rows, exact=True)


def witness_for_degree(d, target):
    """A diagonal PD Gram matrix with ED degree `target` on the degree-d curve.

    With t distinct conjugate pairs the ED degree is d - 2 + 2t.  Take
    b(t) = (t^2 + 1)^(d - t + 1) * prod_{c=2}^{t} (t^2 + c); it has only even powers
    with positive coefficients, so b = sum_l w_l t^(2l) and diag(w) is a Gram
    matrix of b that is positive definite.
    """
    if target < d or target > 3 * d - 2 or (target - d) % 2:
        raise UsageError(f"no positive definite form has ED degree {target} for d={d}")
    pairs = (target - d + 2) // 2
    poly = UniPoly((1, 0, 1)) ** (d - pairs + 1)
    for c in range(2, pairs + 1):
        poly = poly * UniPoly((c, 0, 1))
    weights = [poly.coeff(2 * l) for l in range(d + 1)]
    return SymMat.diagonal(weights)


def ed_degree_image_rnc(d):
    """{d, d+2, ..., 3d-2} with a verified witness for each value."""
    witnesses = {}
    for target in range(d, 3 * d - 1, 2):
        m = witness_for_degree(d, target)
        got = rnc_ed_degree(m, d)
        if got != target:
            raise ArithmeticError(f"witness for ED degree {target} (d={d}) gives {got}")
        witnesses[target] = m
    return witnesses


# ---------------------------------------------------------------------------
# semicontinuity probe


def _perturbation(d, radius, rng, grid=1000):
    """Symmetric rational E with Frobenius norm <= radius.

    Entries are radius * s * r_ij / (d+1) with |r_ij| <= 1 and a random
    overall scale s in (0, 1], so every |E|_F <= radius.
    """
    n = d + 1
    scale = radius * Fraction(rng.randint(1, grid), grid)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = scale * Fraction(rng.randint(-grid, grid), grid * n)
            rows[i][j] = rows[j][i] = v
    return SymMat.from_rows(rows, exact=True)


def _probe_one(args):
    m_q, d = args
    return rnc_ed_degree(m_q, d)


@dataclass
class ProbeReport:
    d: int
    radius: Fraction
    samples: int
    rejected: int
    degrees: list
    seed: int

    @property
    def minimum(self):
        return min(self.degrees)

    @property
    def histogram(self):
        out = {}
        for v in self.degrees:
            out[v] = out.get(v, 0) + 1
        return dict(sorted(out.items()))

    @property
    def passed(self):
        return self.minimum >= self.d

    def as_dict(self):
        return {
            "d": self.d,
            "radius": format_rational(self.radius),
            "samples": self.samples,
            "rejected": self.rejected,
            "min": self.minimum,
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "passed": self.passed,
        }


def semicontinuity_probe(d, radius, samples, seed=0, max_attempts=10000):
    """ED degrees of Q_F + E for random small symmetric E keeping Q positive definite."""
    from ._parallel import pmap

    if d < 2:
        raise UsageError("d must be at least 2")
    radius = Fraction(radius)
    if radius < 0:
        raise UsageError("radius must be nonnegative")
    rng = random.Random(seed)
    base = make_frobenius_rnc(d)
    jobs = []
    rejected = 0
    while len(jobs) < samples:
        for _ in range(max_attempts):
            m = base + _perturbation(d, radius, rng)
            if is_positive_definite(m):
                break
            rejected += 1
        else:
            raise DomainError("could not sample a positive definite perturbation; shrink the radius")
        jobs.append((m, d))
    degrees = pmap(_probe_one, jobs)
    return ProbeReport(d=d, radius=radius, samples=samples, rejected=rejected, degrees=list(degrees), seed=seed)
