"""Closed-form degrees of Segre-Veronese varieties.

Everything here is exact integer/rational arithmetic.  Three independent
routes to the Frobenius ED degree and the generic ED degree are provided so
they can be checked against each other:

* generic ED degree from Chern degrees, from polar degrees, and from the
  direct alternating sum;
* Frobenius ED degree from the product-of-geometric-sums expansion and from
  the rational-function expansion, both in a truncated Chow ring.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from functools import lru_cache
from math import comb, factorial, prod

from .exactmath import TruncPoly, UsageError, coefficient_of


@dataclass(frozen=True)
class TensorFormat:
    """Degrees d_i and projective dimensions n_i of the factors."""

    d: tuple
    n: tuple

    def __post_init__(self):
        d = tuple(int(v) for v in self.d)
        n = tuple(int(v) for v in self.n)
        if len(d) == 0 or len(d) != len(n):
            raise UsageError("d and n must be nonempty tuples of equal length")
        if any(v < 1 for v in d):
            raise UsageError("degrees d_i must be positive")
        if any(v < 0 for v in n):
            raise UsageError("dimensions n_i must be nonnegative")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "n", n)

    @property
    def k(self):
        return len(self.d)

    @property
    def dim(self):
        return sum(self.n)

    @property
    def ambient_dim(self):
        return prod(comb(ni + di, di) for di, ni in zip(self.d, self.n)) - 1

    def __str__(self):
        return f"d={','.join(map(str, self.d))} n={','.join(map(str, self.n))}"


def matrix_format(n1, n2):
    return TensorFormat((1, 1), (n1, n2))


def segre_format(k):
    return TensorFormat((1,) * k, (1,) * k)


@dataclass
class DegreeReport:
    fmt: TensorFormat
    generic_ed_degree: int
    frobenius_ed_degree: int
    frobenius_ed_degree_ah: int
    chern_degrees: list = field(default_factory=list)
    polar_degrees: list = field(default_factory=list)
    dual_degree: int = None

    def as_dict(self):
        return {
            "d": list(self.fmt.d),
            "n": list(self.fmt.n),
            "generic_ed_degree": str(self.generic_ed_degree),
            "frobenius_ed_degree": str(self.frobenius_ed_degree),
            "frobenius_ed_degree_ah": str(self.frobenius_ed_degree_ah),
            "chern_degrees": [str(c) for c in self.chern_degrees],
            "polar_degrees": [str(c) for c in self.polar_degrees],
            "dual_degree": None if self.dual_degree is None else str(self.dual_degree),
        }


def gamma_alpha(n, alpha):
    n, alpha = tuple(n), tuple(alpha)
    if len(n) != len(alpha):
        raise UsageError("alpha and n must have the same length")
    if any(a < 0 for a in alpha):
        raise UsageError("alpha entries must be nonnegative")
    if any(a > ni for a, ni in zip(alpha, n)):
        return Fraction(0)
    return prod((Fraction(comb(ni + 1, a), factorial(ni - a)) for ni, a in zip(n, alpha)), start=Fraction(1))


@lru_cache(maxsize=4096)
def _gamma_sums(fmt):
    """S_i = sum over |alpha| = i of gamma_alpha * d^(n - alpha), i = 0..|n|."""
    out = [Fraction(0)] * (fmt.dim + 1)
    for alpha in product(*(range(ni + 1) for ni in fmt.n)):
        out[sum(alpha)] += gamma_alpha(fmt.n, alpha) * prod(di ** (ni - a) for di, ni, a in zip(fmt.d, fmt.n, alpha))
    return tuple(out)


def chern_degrees(fmt):
    """deg c_i of the tangent bundle, i = 0..|n|."""
    m = fmt.dim
    out = []
    for i, s in enumerate(_gamma_sums(fmt)):
        v = factorial(m - i) * s
        if v.denominator != 1 or v < 0:
            raise ArithmeticError(f"Chern degree {i} of {fmt} is not a nonnegative integer: {v}")
        out.append(int(v))
    return out


def generic_ed_degree(fmt):
    m = fmt.dim
    total = 0
    for i, s in enumerate(_gamma_sums(fmt)):
        total += (-1) ** i * (2 ** (m + 1 - i) - 1) * factorial(m - i) * s
    assert total.denominator == 1
    return int(total)


def generic_ed_degree_from_chern(fmt):
    m = fmt.dim
    return sum((-1) ** i * (2 ** (m + 1 - i) - 1) * c for i, c in enumerate(chern_degrees(fmt)))


def polar_degrees(fmt):
    m = fmt.dim
    sums = _gamma_sums(fmt)
    out = []
    for j in range(m + 1):
        v = sum((-1) ** i * comb(m + 1 - i, j + 1) * factorial(m - i) * s for i, s in enumerate(sums))
        assert v.denominator == 1
        out.append(int(v))
    return out


def _linear(coeffs, caps):
    terms = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * len(caps)
            e[i] = 1
            terms[tuple(e)] = c
    return TruncPoly(caps, terms)


def _monomial(i, power, caps):
    e = [0] * len(caps)
    e[i] = power
    return TruncPoly(caps, {tuple(e): 1})


def frobenius_ed_degree_fo(fmt):
    """Coefficient of h^n in prod_i sum_{a+b=n_i} hhat_i^a h_i^b."""
    caps = fmt.n
    k = fmt.k
    running = TruncPoly.constant(1, caps)
    for i in range(k):
        hat = _linear([dj - (1 if j == i else 0) for j, dj in enumerate(fmt.d)], caps)
        # Horner in hhat: T <- T*hhat + P*h_i^step gives P * sum_a hhat^a h_i^(n_i - a)
        acc = running
        for step in range(1, fmt.n[i] + 1):
            acc = acc * hat + running * _monomial(i, step, caps)
        running = acc
    return coefficient_of(running, caps)


def frobenius_ed_degree_ah(fmt):
    """Coefficient of h^n in (1 - sum d_i h_i)^-1 prod (1-h_i)^(n_i+1) / (1-2 h_i)."""
    caps = fmt.n
    # geometric series: the coefficient of h^e is multinomial(|e|; e) * d^e
    terms = {}
    for e in product(*(range(c + 1) for c in caps)):
        coeff = factorial(sum(e))
        for ei, di in zip(e, fmt.d):
            coeff = coeff // factorial(ei) * di ** ei
        terms[e] = coeff
    series = TruncPoly(caps, terms)
    for i, ni in enumerate(fmt.n):
        # univariate factor in h_i, expanded up to h_i^(n_i)
        uni = [sum(comb(ni + 1, a) * (-1) ** a * 2 ** (j - a) for a in range(j + 1)) for j in range(ni + 1)]
        out = {}
        for e, c in series.terms.items():
            for j, u in enumerate(uni):
                if e[i] + j <= ni and u:
                    e2 = e[:i] + (e[i] + j,) + e[i + 1:]
                    out[e2] = out.get(e2, 0) + c * u
        series = TruncPoly(caps, out)
    return coefficient_of(series, caps)


def frobenius_ed_degree(fmt):
    return frobenius_ed_degree_fo(fmt)


def dual_degree_veronese_re_embedding(fmt, e):
    """Degree of the dual of the e-th Veronese re-embedding of V_{d,n}."""
    if int(e) != e or e < 2:
        raise UsageError("e must be an integer >= 2 (for e = 1 the dual need not be a hypersurface)")
    m = fmt.dim
    total = sum((-1) ** i * e ** (m - i) * factorial(m + 1 - i) * s for i, s in enumerate(_gamma_sums(fmt)))
    assert total.denominator == 1
    return int(total)


def chern_mather_from_polar(polar, n):
    """Chern-Mather degrees c^M_0..c^M_n from polar degrees delta_0..delta_n."""
    polar = [int(v) for v in polar]
    if len(polar) != n + 1:
        raise UsageError(f"expected {n + 1} polar degrees (delta_0..delta_{n}), got {len(polar)}")
    return [sum((-1) ** j * comb(n + 1 - j, i - j) * polar[n - j] for j in range(i + 1)) for i in range(n + 1)]


def dual_degree_from_chern_mather(cm, e, n):
    """sum_j (-1)^j (n+1-j) c^M_j e^(n-j).

    e = 1 is accepted: on a smooth variety it returns delta_0.
    """
    cm = [int(v) for v in cm]
    if len(cm) != n + 1:
        raise UsageError(f"expected {n + 1} Chern-Mather degrees, got {len(cm)}")
    if int(e) != e or e < 1:
        raise UsageError("e must be a positive integer")
    return sum((-1) ** j * (n + 1 - j) * c * e ** (n - j) for j, c in enumerate(cm))


def segre_binary_ged(k):
    """Generic ED degree of P^1 x ... x P^1 (k factors) in closed form."""
    if int(k) != k or k < 1:
        raise UsageError("k must be a positive integer")
    return sum((-1) ** i * (factorial(k) // factorial(i)) * (2 ** (k + 1) - 2 ** i) for i in range(k + 1))


def degree_report(fmt, e=None):
    return DegreeReport(
        fmt=fmt,
        generic_ed_degree=generic_ed_degree(fmt),
        frobenius_ed_degree=frobenius_ed_degree_fo(fmt),
        frobenius_ed_degree_ah=frobenius_ed_degree_ah(fmt),
        chern_degrees=chern_degrees(fmt),
        polar_degrees=polar_degrees(fmt),
        dual_degree=None if e is None else dual_degree_veronese_re_embedding(fmt, e),
    )


# ---------------------------------------------------------------------------
# tables


@dataclass
class TableDocument:
    table1: list  # rows (k, generic, frobenius)
    table2: list  # rows (n1, n2, generic, frobenius)

    def table1_csv(self):
        lines = ["k,generic_ed_degree,frobenius_ed_degree"]
        lines += [f"{k},{g},{f}" for k, g, f in self.table1]
        return "\n".join(lines) + "\n"

    def table2_csv(self):
        lines = ["n1,n2,generic_ed_degree,frobenius_ed_degree"]
        lines += [f"{a},{b},{g},{f}" for a, b, g, f in self.table2]
        return "\n".join(lines) + "\n"

    def table1_markdown(self):
        ks = [row[0] for row in self.table1]
        lines = [
            "| k | " + " | ".join(map(str, ks)) + " |",
            "|---|" + "---|" * len(ks),
            "| generic ED degree | " + " | ".join(str(r[1]) for r in self.table1) + " |",
            "| Frobenius ED degree | " + " | ".join(str(r[2]) for r in self.table1) + " |",
        ]
        return "\n".join(lines) + "\n"

    def table2_markdown(self):
        n2s = sorted({r[1] for r in self.table2})
        cells = {(a, b): (g, f) for a, b, g, f in self.table2}
        lines = [
            "| n1 \\ n2 | " + " | ".join(map(str, n2s)) + " |",
            "|---|" + "---|" * len(n2s),
        ]
        for a in sorted({r[0] for r in self.table2}):
            row = [f"{cells[a, b][0]} ({cells[a, b][1]})" if (a, b) in cells else "" for b in n2s]
            lines.append(f"| {a} | " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"

    def csv(self):
        return self.table1_csv() + "\n" + self.table2_csv()

    def markdown(self):
        return (
            "Generic and Frobenius ED degrees of P^1 x ... x P^1 (k factors)\n\n"
            + self.table1_markdown()
            + "\nGeneric ED degree (Frobenius ED degree in parentheses) of n1 x n2 projective matrices\n\n"
            + self.table2_markdown()
        )


def _table2_cell(pair):
    a, b = pair
    fmt = matrix_format(a, b)
    return a, b, generic_ed_degree(fmt), frobenius_ed_degree_fo(fmt)


def emit_tables(max_k=10, max_n=10):
    from ._parallel import pmap

    t1 = [(k, generic_ed_degree(segre_format(k)), frobenius_ed_degree_fo(segre_format(k))) for k in range(1, max_k + 1)]
    pairs = [(a, b) for a in range(1, max_n + 1) for b in range(a, max_n + 1)]
    t2 = pmap(_table2_cell, pairs)
    return TableDocument(table1=t1, table2=list(t2))
