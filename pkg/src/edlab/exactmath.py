"""Exact arithmetic substrate.

Rationals are ``fractions.Fraction`` (always in lowest terms with a positive
denominator).  On top of that this module provides dense univariate
polynomials, truncated multivariate polynomials over the integers, Yun
square-free decomposition, Sturm root counting, Sylvester resultants with
coefficients depending on one parameter, and exact/numeric utilities for
symmetric matrices.
"""

from fractions import Fraction
from math import gcd as _gcd

import numpy as np


class UsageError(ValueError):
    """Bad call: wrong shapes, out-of-range arguments, malformed input."""


class DomainError(ValueError):
    """Mathematically invalid input, e.g. a form that is not positive definite."""


def to_rational(value):
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: silently converting a binary float would change the
    multiplicity structure that exact callers rely on.
    """
    if isinstance(value, bool):
        raise UsageError("booleans are not numbers")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, (float, np.floating)):
        raise UsageError(f"float {value!r} given where an exact rational is required; use a 'p/q' string")
    if isinstance(value, np.integer):
        return Fraction(int(value))
    raise UsageError(f"cannot interpret {value!r} as a rational")


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense polynomial with Fraction coefficients, index = degree."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else to_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def from_roots(cls, roots):
        p = cls((1,))
        for r in roots:
            p = p * cls((-to_rational(r), 1))
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            try:
                other = UniPoly((other,))
            except UsageError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = format_rational(abs(c)) + ("*" + mono if mono else "")
            parts.append(("-" if c < 0 else "+") + s)
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out

    def _coerce(self, other):
        return other if isinstance(other, UniPoly) else UniPoly((other,))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = to_rational(other)
            return UniPoly(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = UniPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv_lc = 1 / other.lc()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lc
            if c == 0:
                continue
            quot[k - dq] = c
            for j, b in enumerate(other.coeffs):
                rem[k - dq + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else ())

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self):
        if self.is_zero():
            return self
        return self * (1 / self.lc())

    def primitive(self):
        """Split into (content, primitive integer polynomial with positive lc)."""
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = _gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly(Fraction(v // g) for v in ints)

    def to_floats(self):
        return [float(c) for c in self.coeffs]


def poly_gcd(a, b):
    """Monic gcd over the rationals (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decompose(p):
    """Yun's algorithm.

    Returns [(f_i, m_i), ...] with monic, square-free, pairwise coprime f_i of
    positive degree so that p = lc(p) * prod f_i**m_i.  Constants give [].
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    if p.is_zero():
        raise UsageError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    f = p.monic()
    fp = f.derivative()
    a0 = poly_gcd(f, fp)
    b = f.exact_div(a0)
    c = fp.exact_div(a0)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def is_squarefree(p):
    if p.is_zero():
        return False
    return poly_gcd(p, p.derivative()).degree == 0


def sturm_sequence(p):
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        seq.append(-r)
    return seq[:-1]


def _sign_changes(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p):
    """Number of distinct real roots of a square-free polynomial (Sturm)."""
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    if p.is_zero():
        raise UsageError("zero polynomial has infinitely many roots")
    if not is_squarefree(p):
        raise UsageError("count_real_roots needs a square-free input; decompose first")
    if p.degree == 0:
        return 0
    seq = sturm_sequence(p)

    def sgn(x):
        return (x > 0) - (x < 0)

    at_pos = [sgn(q.lc()) for q in seq]
    at_neg = [sgn(q.lc()) * (-1) ** q.degree for q in seq]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def sign_changes_of_coefficients(p):
    """Descartes count; exact for polynomials with only real roots."""
    return _sign_changes([(c > 0) - (c < 0) for c in p.coeffs])


def interpolate(xs, ys):
    """Exact Lagrange interpolation through the points (xs[i], ys[i])."""
    xs = [to_rational(x) for x in xs]
    result = UniPoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UniPoly((to_rational(yi),))
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UniPoly((-xj, 1)) * (1 / (xi - xj))
        result = result + term
    return result


# ---------------------------------------------------------------------------
# resultants
#
# Inner loops run on integer coefficient lists (polynomials in the parameter);
# rows are cleared of denominators first and the scaling undone at the end.


def _ip_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _ip_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return out


def _ip_exact_div(a, b):
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    quot = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        q, r = divmod(c, lb)
        if r:
            raise ArithmeticError("inexact division in Bareiss elimination")
        quot[k - db] = q
        for j, y in enumerate(b):
            a[k - db + j] -= q * y
    if any(a[:db]):
        raise ArithmeticError("inexact division in Bareiss elimination")
    while quot and quot[-1] == 0:
        quot.pop()
    return quot


def bareiss_det(rows):
    """Fraction-free determinant of a square matrix of integer polynomials.

    Entries are integer coefficient lists in the parameter.  Returns a list.
    """
    m = [[list(e) for e in row] for row in rows]
    n = len(m)
    if n == 0:
        return [1]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return []
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                t = _ip_sub(_ip_mul(pivot, row_i[j]), _ip_mul(mik, row_k[j]))
                row_i[j] = _ip_exact_div(t, prev) if t else []
            row_i[k] = []
        prev = pivot
    det = m[n - 1][n - 1]
    return [sign * c for c in det]


def _as_param_coeffs(p):
    """list of UniPoly-in-parameter coefficients (nominal degree kept)."""
    if isinstance(p, UniPoly):
        return [UniPoly((c,)) for c in p.coeffs]
    return [c if isinstance(c, UniPoly) else UniPoly((c,)) for c in p]


def resultant(p, q):
    """Sylvester resultant Res_x(p, q) as a polynomial in the parameter.

    ``p`` and ``q`` are either UniPoly (constant coefficients) or sequences
    whose k-th entry is the coefficient of x**k, itself a UniPoly in the
    parameter (or a number).  Sequences keep their length as the nominal
    degree even when trailing entries vanish, so the result is the resultant
    of the corresponding binary forms.
    """
    pc = _as_param_coeffs(p)
    qc = _as_param_coeffs(q)
    if all(c.is_zero() for c in pc) or all(c.is_zero() for c in qc):
        raise UsageError("resultant with a zero polynomial")
    m = len(pc) - 1
    n = len(qc) - 1
    if m == 0 and n == 0:
        return UniPoly((1,))
    if m == 0:
        return pc[0] ** n
    if n == 0:
        return qc[0] ** m

    def integer_rows(coeffs):
        den = 1
        for c in coeffs:
            for v in c.coeffs:
                den = den * v.denominator // _gcd(den, v.denominator)
        return den, [[int(v * den) for v in c.coeffs] for c in coeffs]

    dp, pi = integer_rows(pc)
    dq, qi = integer_rows(qc)
    size = m + n
    rows = []
    for r in range(n):
        row = [[] for _ in range(size)]
        for k in range(m + 1):
            row[r + k] = pi[m - k]
        rows.append(row)
    for r in range(m):
        row = [[] for _ in range(size)]
        for k in range(n + 1):
            row[r + k] = qi[n - k]
        rows.append(row)
    det = bareiss_det(rows)
    scale = Fraction(1, dp ** n * dq ** m)
    return UniPoly(Fraction(c) * scale for c in det)


# ---------------------------------------------------------------------------
# truncated polynomials (Chow ring model)


class TruncPoly:
    """Integer polynomial in k variables modulo x_i**(cap_i + 1)."""

    __slots__ = ("caps", "names", "terms")

    def __init__(self, caps, terms=None, names=None):
        self.caps = tuple(int(c) for c in caps)
        if any(c < 0 for c in self.caps):
            raise UsageError("caps must be nonnegative")
        self.names = tuple(names) if names is not None else tuple(f"h{i + 1}" for i in range(len(self.caps)))
        if len(self.names) != len(self.caps):
            raise UsageError("one name per variable")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.caps):
                raise UsageError("exponent length does not match the number of variables")
            if c and all(a <= b for a, b in zip(e, self.caps)):
                clean[e] = clean.get(e, 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, c, caps, names=None):
        return cls(caps, {(0,) * len(caps): c}, names)

    @classmethod
    def variable(cls, i, caps, names=None):
        e = [0] * len(caps)
        e[i] = 1
        return cls(caps, {tuple(e): 1}, names)

    def _check(self, other):
        if not isinstance(other, TruncPoly) or other.caps != self.caps or other.names != self.names:
            raise UsageError("truncated polynomials live in different rings (variables or caps differ)")

    def __add__(self, other):
        if isinstance(other, int):
            other = TruncPoly.constant(other, self.caps, self.names)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TruncPoly(self.caps, out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.caps, {e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TruncPoly(self.caps, {e: c * other for e, c in self.terms.items()}, self.names)
        return trunc_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = TruncPoly.constant(other, self.caps, self.names)
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.caps == other.caps and self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.caps, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            mono = "*".join(f"{n}^{a}" if a > 1 else n for n, a in zip(self.names, e) if a)
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def trunc_mul(a, b):
    a._check(b)
    caps = a.caps
    out = {}
    for ea, ca in a.terms.items():
        for eb, cb in b.terms.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            if all(x <= c for x, c in zip(e, caps)):
                out[e] = out.get(e, 0) + ca * cb
    return TruncPoly(caps, out, a.names)


def coefficient_of(p, exponent):
    exponent = tuple(exponent)
    if len(exponent) != len(p.caps) or any(x < 0 or x > c for x, c in zip(exponent, p.caps)):
        raise UsageError(f"exponent {exponent} lies outside the caps {p.caps}")
    return p.terms.get(exponent, 0)


# ---------------------------------------------------------------------------
# symmetric matrices


DEFAULT_CHOLESKY_TOL = 1e-10


class SymMat:
    """Symmetric matrix, exact (Fraction) or numeric (float).

    Only the upper triangle is stored, row by row.
    """

    __slots__ = ("dim", "upper", "exact")

    def __init__(self, dim, upper, exact):
        self.dim = int(dim)
        self.exact = bool(exact)
        self.upper = tuple(upper)
        if len(self.upper) != self.dim * (self.dim + 1) // 2:
            raise UsageError("wrong number of upper-triangle entries")

    @classmethod
    def from_rows(cls, rows, exact=None, check_symmetry=True):
        rows = [list(r) for r in (rows.tolist() if isinstance(rows, np.ndarray) else rows)]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise UsageError("matrix must be square and nonempty")
        if exact is None:
            exact = not any(isinstance(v, (float, np.floating)) for r in rows for v in r)
        conv = to_rational if exact else float
        vals = [[conv(v) for v in r] for r in rows]
        if check_symmetry:
            for i in range(n):
                for j in range(i + 1, n):
                    a, b = vals[i][j], vals[j][i]
                    if (a != b) if exact else (abs(a - b) > 1e-12 * max(1.0, abs(a), abs(b))):
                        raise UsageError(f"matrix is not symmetric at ({i},{j})")
        upper = [vals[i][j] for i in range(n) for j in range(i, n)]
        return cls(n, upper, exact)

    @classmethod
    def diagonal(cls, values, exact=True):
        n = len(values)
        conv = to_rational if exact else float
        upper = [conv(values[i]) if i == j else conv(0) for i in range(n) for j in range(i, n)]
        return cls(n, upper, exact)

    @classmethod
    def identity(cls, n, exact=True):
        return cls.diagonal([1] * n, exact)

    def _index(self, i, j):
        if i > j:
            i, j = j, i
        return i * self.dim - i * (i - 1) // 2 + (j - i)

    def __getitem__(self, ij):
        i, j = ij
        return self.upper[self._index(i, j)]

    def rows(self):
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def to_numpy(self):
        return np.array([[float(v) for v in r] for r in self.rows()])

    def to_numeric(self):
        return SymMat(self.dim, [float(v) for v in self.upper], False)

    def scaled(self, c):
        c = to_rational(c) if self.exact else float(c)
        return SymMat(self.dim, [c * v for v in self.upper], self.exact)

    def __add__(self, other):
        if other.dim != self.dim:
            raise UsageError("dimension mismatch")
        exact = self.exact and other.exact
        if not exact:
            return SymMat(self.dim, [float(a) + float(b) for a, b in zip(self.upper, other.upper)], False)
        return SymMat(self.dim, [a + b for a, b in zip(self.upper, other.upper)], True)

    def __eq__(self, other):
        return isinstance(other, SymMat) and self.dim == other.dim and self.upper == other.upper

    def __hash__(self):
        return hash((self.dim, self.upper))

    def __repr__(self):
        if self.exact:
            return f"SymMat({[[format_rational(v) for v in r] for r in self.rows()]})"
        return f"SymMat({self.to_numpy().tolist()})"

    def congruent(self, p):
        """P M P^T for a square matrix P (rational list of lists or array)."""
        if self.exact:
            pr = [[to_rational(v) for v in r] for r in p]
            m = self.rows()
            pm = mat_mul(pr, m)
            out = mat_mul(pm, [list(c) for c in zip(*pr)])
            return SymMat.from_rows(out, exact=True)
        pn = np.asarray(p, dtype=float)
        out = pn @ self.to_numpy() @ pn.T
        return SymMat.from_rows((out + out.T) / 2, exact=False)

    # exact invariants -----------------------------------------------------

    def leading_minors(self):
        self._need_exact()
        return [det_exact([r[:k] for r in self.rows()[:k]]) for k in range(1, self.dim + 1)]

    def det(self):
        if self.exact:
            return det_exact(self.rows())
        return float(np.linalg.det(self.to_numpy()))

    def charpoly(self):
        self._need_exact()
        return charpoly_exact(self.rows())

    def _need_exact(self):
        if not self.exact:
            raise UsageError("operation requires exact rational entries")


def mat_mul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def det_exact(rows):
    """Determinant over the rationals by Gaussian elimination."""
    m = [[to_rational(v) for v in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] * inv
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def inverse_exact(rows):
    m = [[to_rational(v) for v in r] for r in rows]
    n = len(m)
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise DomainError("matrix is singular")
        aug[k], aug[piv] = aug[piv], aug[k]
        inv = 1 / aug[k][k]
        aug[k] = [v * inv for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[k])]
    return [r[n:] for r in aug]


def charpoly_exact(rows):
    """det(t I - A) for a square rational matrix (Faddeev-LeVerrier)."""
    a = [[to_rational(v) for v in r] for r in rows]
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        mk = mat_mul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[n - k + 1]
        am = mat_mul(a, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return UniPoly(coeffs)


def _numeric_cholesky(a, tol):
    """(L, None) on success, (None, reason) when a pivot is too small."""
    if not np.all(np.isfinite(a)):
        return None, "matrix has non-finite entries"
    scale = float(np.max(np.abs(np.diag(a)))) if a.size else 0.0
    n = a.shape[0]
    low = np.zeros_like(a)
    for j in range(n):
        pivot = a[j, j] - low[j, :j] @ low[j, :j]
        if scale <= 0 or not pivot > tol * scale:
            return None, f"Cholesky pivot {j} is {pivot:.3e} (needs > {tol:.0e} x max diagonal {scale:.3e})"
        low[j, j] = np.sqrt(pivot)
        low[j + 1:, j] = (a[j + 1:, j] - low[j + 1:, :j] @ low[j, :j]) / low[j, j]
    return low, None


def positive_definite_failure(m, tol=DEFAULT_CHOLESKY_TOL):
    """None if m is positive definite, else a description of the failing test."""
    if m.exact:
        for k, minor in enumerate(m.leading_minors(), start=1):
            if minor <= 0:
                return f"leading principal minor of order {k} is {format_rational(minor)} (not > 0)"
        return None
    return _numeric_cholesky(m.to_numpy(), tol)[1]


def is_positive_definite(m, tol=DEFAULT_CHOLESKY_TOL):
    """Sylvester's criterion in exact mode, tolerant Cholesky in numeric mode."""
    if not isinstance(m, SymMat):
        m = SymMat.from_rows(m)
    return positive_definite_failure(m, tol) is None


def cholesky(a, tol=DEFAULT_CHOLESKY_TOL):
    """Lower-triangular L with L L^T = a; DomainError if a is not PD."""
    if isinstance(a, SymMat):
        if a.exact:
            reason = positive_definite_failure(a)
            if reason is not None:
                raise DomainError(f"matrix is not positive definite: {reason}")
        a = a.to_numpy()
    low, reason = _numeric_cholesky(np.asarray(a, dtype=float), tol)
    if reason is not None:
        raise DomainError(f"matrix is not positive definite: {reason}")
    return low
