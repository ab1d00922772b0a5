"""Real critical rank-one approximations under a positive definite inner product.

Matrices: critical points of F(x, y) = Q(u, x (x) y) on

    E_Q = {x^T x = 1, q(x (x) y) = 1},

a trivial sphere bundle over the unit sphere.  Symmetric matrices: critical
points of F(x) = Q(u, x (x) x) on the sphere {q(x (x) x) = 1}.  Each ED
critical point of u is lambda * x (x) y with lambda = F, and its squared
distance is q(u) - lambda^2.

The solver is a batched multi-start Newton iteration on the Lagrange system
with a backtracking merit test; stalled starts get a gradient phase on the
squared residual before a second Newton pass.  Morse indices come from the
Lagrangian Hessian restricted to the tangent space.

Gram matrices on the tensor space use the lexicographic basis e_i (x) e_j
(flattened index i*n + j).  On symmetric matrices the basis is e_i e_j with
i <= j in lexicographic order, i.e. the coordinates z_ij = x_i x_j (i <= j)
of x (x) x; the Frobenius form there is diag(1 for i = j, 2 for i < j).
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .exactmath import DomainError, SymMat, UsageError, positive_definite_failure
from .formulas import TensorFormat, generic_ed_degree, matrix_format


@dataclass
class CritConfig:
    seed: int = 0
    starts: int = None  # default: 50 x generic ED degree
    newton_iters: int = 60
    fallback_steps: int = 200
    residual_tol: float = 1e-10
    dedup_tol: float = 1e-6
    zero_eig_tol: float = 1e-7
    value_tol: float = 1e-8
    batch: int = 20000


@dataclass
class CriticalPoint:
    x: np.ndarray
    y: np.ndarray  # equals x in the symmetric case
    scale: float  # lambda = Q(u, x (x) y)
    value: float  # eps^2 = q(u) - lambda^2
    morse_index: int
    residual: float
    basin_count: int = 0
    partner_index: int = None  # matrices: index of (x, -y)

    def as_dict(self, symmetric=False):
        out = {"x": [float(v) for v in self.x]}
        if not symmetric:
            out["y"] = [float(v) for v in self.y]
        out.update(
            {
                "lambda": float(self.scale),
                "eps2": float(self.value),
                "index": int(self.morse_index),
                "residual": float(self.residual),
                "basin_count": int(self.basin_count),
            }
        )
        if not symmetric:
            out["index_of_negated"] = int(self.partner_index)
        return out


@dataclass
class MorseCensus:
    m: list
    betti: list
    distinct_rank_one_points: int
    kind: str  # "matrix" or "symmetric"
    n1: int = 0
    n2: int = 0


@dataclass
class CriticalPointSet:
    points: list
    non_generic: bool = False
    starts: int = 0
    converged: int = 0
    warnings: list = field(default_factory=list)

    def __len__(self):
        return len(self.points)

    def values(self):
        return sorted(p.value for p in self.points)


# ---------------------------------------------------------------------------
# Betti numbers and Morse inequalities


def betti_sphere_bundle(n1, n2):
    """Betti numbers of E_Q ~ S^n1 x S^n2: coefficients of (1 + t^n1)(1 + t^n2)."""
    b = [0] * (n1 + n2 + 1)
    for a in (0, n1):
        for c in (0, n2):
            b[a + c] += 1
    return b


def betti_sphere(n):
    b = [0] * (n + 1)
    b[0] += 1
    b[n] += 1
    return b


@dataclass
class MorseCheck:
    checks: list  # (name, passed)

    @property
    def passed(self):
        return all(ok for _, ok in self.checks)

    def failed(self):
        return [name for name, ok in self.checks if not ok]


def verify_morse_inequalities(census):
    m, b = list(census.m), list(census.betti)
    if len(m) != len(b):
        raise UsageError("census and Betti vectors have different lengths")
    top = len(m) - 1
    checks = []
    for i in range(top + 1):
        lhs = sum((-1) ** (i - k) * m[k] for k in range(i + 1))
        rhs = sum((-1) ** (i - k) * b[k] for k in range(i + 1))
        if i == top:
            checks.append((f"euler characteristic (i={i}): {lhs} == {rhs}", lhs == rhs))
        else:
            checks.append((f"strong Morse i={i}: {lhs} >= {rhs}", lhs >= rhs))
    if census.kind == "matrix":
        checks.append(("all m_k even", all(v % 2 == 0 for v in m)))
        checks.append(("m_k palindromic", m == m[::-1]))
        low = min(census.n1, census.n2)
        checks.append((f"m_k >= 2 for k < {low}", all(m[k] >= 2 for k in range(low))))
    else:
        checks.append(("m_k >= 2 for every k", all(v >= 2 for v in m)))
    return MorseCheck(checks=checks)


# ---------------------------------------------------------------------------
# helpers


def _numeric_gram(m_q, dim):
    if isinstance(m_q, SymMat):
        reason = positive_definite_failure(m_q)
        mat = m_q.to_numpy()
    else:
        mat = np.asarray(m_q, dtype=float)
        if mat.shape != (dim, dim) or not np.allclose(mat, mat.T, rtol=0, atol=1e-12 * max(1.0, np.abs(mat).max())):
            raise UsageError(f"Q must be a symmetric {dim}x{dim} matrix")
        reason = positive_definite_failure(SymMat.from_rows((mat + mat.T) / 2, exact=False))
    if mat.shape != (dim, dim):
        raise UsageError(f"Q must be {dim}x{dim}, got {mat.shape[0]}x{mat.shape[1]}")
    if reason is not None:
        raise DomainError(f"Q is not positive definite: {reason}")
    return (mat + mat.T) / 2


def _sign_canonical(x, tol=1e-6):
    """+1/-1 making the first significant coordinate of each row positive."""
    mags = np.abs(x)
    first = np.argmax(mags > tol * np.max(mags, axis=1, keepdims=True), axis=1)
    return np.where(x[np.arange(len(x)), first] < 0, -1.0, 1.0)


def _dedup(vectors, tol):
    """Greedy clustering; returns (representative indices, label per row)."""
    reps = []
    labels = np.empty(len(vectors), dtype=int)
    rep_arr = np.empty((0, vectors.shape[1]))
    for i, v in enumerate(vectors):
        if len(reps):
            dist = np.max(np.abs(rep_arr - v), axis=1)
            j = int(np.argmin(dist))
            if dist[j] < tol:
                labels[i] = j
                continue
        reps.append(i)
        rep_arr = np.vstack([rep_arr, v])
        labels[i] = len(reps) - 1
    return reps, labels


def _backtracking_newton(sys, z, iters, tol):
    """Damped Newton on a batch; z has shape (S, K)."""
    r = sys.residual(z)
    nr = np.linalg.norm(r, axis=1)
    active = nr > tol
    for _ in range(iters):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        zi = z[idx]
        jac = sys.jacobian(zi)
        try:
            step = np.linalg.solve(jac, -r[idx][..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = np.stack([np.linalg.lstsq(j, -ri, rcond=None)[0] for j, ri in zip(jac, r[idx])])
        bad = ~np.all(np.isfinite(step), axis=1)
        step[bad] = 0.0
        alpha = np.ones(len(idx))
        accepted = np.zeros(len(idx), dtype=bool)
        znew = zi.copy()
        rnew = r[idx].copy()
        for _ in range(10):
            cand = zi + alpha[:, None] * step
            rc = sys.residual(cand)
            nc = np.linalg.norm(rc, axis=1)
            ok = (~accepted) & (nc < nr[idx]) & np.isfinite(nc)
            znew[ok] = cand[ok]
            rnew[ok] = rc[ok]
            accepted |= ok
            if accepted.all():
                break
            alpha = np.where(accepted, alpha, alpha / 2)
        z[idx] = znew
        r[idx] = rnew
        nr[idx] = np.linalg.norm(rnew, axis=1)
        # stalled starts stop iterating; they go to the gradient phase
        active[idx] = accepted & (nr[idx] > tol)
    return z, nr


def _gradient_phase(sys, z, steps, handoff=1e-4):
    """Armijo gradient descent on 0.5 |r|^2 (the projected-gradient fallback).

    A start leaves the phase once 0.5 |r|^2 < handoff; Newton takes it from there.
    """
    r = sys.residual(z)
    phi = 0.5 * np.sum(r * r, axis=1)
    t = np.ones(len(z))
    for _ in range(steps):
        idx = np.nonzero(phi >= handoff)[0]
        if len(idx) == 0:
            break
        zi, ri, pi, ti = z[idx], r[idx], phi[idx], t[idx]
        grad = np.einsum("ski,sk->si", sys.jacobian(zi), ri)
        g2 = np.sum(grad * grad, axis=1)
        ok = g2 < 1e-30
        znew, rnew, pnew = zi.copy(), ri.copy(), pi.copy()
        for _ in range(30):
            cand = zi - ti[:, None] * grad
            rc = sys.residual(cand)
            pc = 0.5 * np.sum(rc * rc, axis=1)
            good = (~ok) & (pc <= pi - 1e-4 * ti * g2)
            znew[good], rnew[good], pnew[good] = cand[good], rc[good], pc[good]
            ok |= good
            if ok.all():
                break
            ti = np.where(ok, ti, ti / 2)
        z[idx], r[idx], phi[idx] = znew, rnew, pnew
        t[idx] = np.minimum(ti * 2, 1.0)
    return z


def _solve_batch(sys, z0, cfg, scale):
    # divergent starts may overflow; they are dropped by the residual test
    with np.errstate(all="ignore"):
        return _solve_batch_inner(sys, z0, cfg, scale)


def _solve_batch_inner(sys, z0, cfg, scale):
    tol = cfg.residual_tol * scale
    z, nr = _backtracking_newton(sys, z0, cfg.newton_iters, tol)
    stalled = np.nonzero(~(nr <= tol))[0]
    if len(stalled):
        zs = _gradient_phase(sys, z[stalled].copy(), cfg.fallback_steps)
        zs, ns = _backtracking_newton(sys, zs, cfg.newton_iters, tol)
        z[stalled] = zs
        nr[stalled] = ns
    ok = nr <= tol
    return z[ok], nr[ok]


def _tangent_index(hess, grads, zero_tol):
    """(index, near-singular flag) of hess restricted to the null space of grads."""
    _, s, vt = np.linalg.svd(grads)
    rank = int(np.sum(s > 1e-12 * max(1.0, s[0])))
    basis = vt[rank:].T
    h = basis.T @ hess @ basis
    w = np.linalg.eigvalsh((h + h.T) / 2)
    scale = max(1.0, float(np.max(np.abs(w)))) if len(w) else 1.0
    singular = bool(np.any(np.abs(w) < zero_tol * scale))
    return int(np.sum(w < 0)), singular


# ---------------------------------------------------------------------------
# matrix case


class _MatrixSystem:
    """Unknowns (x, y, mu1, mu2); Lagrangian F - mu1 (x.x - 1) - mu2 (q(x(x)y) - 1)."""

    def __init__(self, u, gram):
        self.m, self.n = u.shape
        self.gram = gram
        self.gram4 = gram.reshape(self.m, self.n, self.m, self.n)
        self.w = (gram @ u.reshape(-1)).reshape(self.m, self.n)

    def split(self, z):
        m, n = self.m, self.n
        return z[:, :m], z[:, m:m + n], z[:, m + n], z[:, m + n + 1]

    def pieces(self, x, y):
        zt = np.einsum("si,sj->sij", x, y).reshape(len(x), -1)
        mzf = zt @ self.gram
        g2 = np.sum(zt * mzf, axis=1) - 1.0
        mz = mzf.reshape(len(x), self.m, self.n)
        gx = 2 * (mz @ y[..., None])[..., 0]
        gy = 2 * (x[:, None, :] @ mz)[:, 0]
        return mz, g2, gx, gy

    def residual(self, z):
        x, y, mu1, mu2 = self.split(z)
        _, g2, gx, gy = self.pieces(x, y)
        rx = y @ self.w.T - 2 * mu1[:, None] * x - mu2[:, None] * gx
        ry = x @ self.w - mu2[:, None] * gy
        g1 = np.sum(x * x, axis=1) - 1.0
        return np.concatenate([rx, ry, g1[:, None], g2[:, None]], axis=1)

    def _contract_x(self, x):
        """sum_i x_i M[i, j, k, l] -> (S, n, m, n)"""
        return (x @ self.gram4.reshape(self.m, -1)).reshape(len(x), self.n, self.m, self.n)

    def hessians(self, x, y, mz):
        m, n = self.m, self.n
        # t[s, i, k, l] = sum_j y_j M[i, j, k, l]
        t = (y @ self.gram4.transpose(1, 0, 2, 3).reshape(n, -1)).reshape(len(y), m, m, n)
        hxx = 2 * np.einsum("sikl,sl->sik", t, y)
        hxy = 2 * mz + 2 * np.einsum("sikl,sk->sil", t, x)
        hyy = 2 * np.einsum("sjkl,sk->sjl", self._contract_x(x), x)
        return hxx, hxy, hyy

    def lagrangian_hessian(self, x, y, mu1, mu2):
        m, n = self.m, self.n
        mz, _, gx, gy = self.pieces(x, y)
        hxx, hxy, hyy = self.hessians(x, y, mz)
        s = len(x)
        h = np.zeros((s, m + n, m + n))
        h[:, :m, :m] = -2 * mu1[:, None, None] * np.eye(m) - mu2[:, None, None] * hxx
        h[:, :m, m:] = self.w - mu2[:, None, None] * hxy
        h[:, m:, :m] = np.transpose(h[:, :m, m:], (0, 2, 1))
        h[:, m:, m:] = -mu2[:, None, None] * hyy
        grads = np.zeros((s, 2, m + n))
        grads[:, 0, :m] = 2 * x
        grads[:, 1, :m] = gx
        grads[:, 1, m:] = gy
        return h, grads

    def jacobian(self, z):
        m, n = self.m, self.n
        x, y, mu1, mu2 = self.split(z)
        h, grads = self.lagrangian_hessian(x, y, mu1, mu2)
        s = len(z)
        k = m + n + 2
        jac = np.zeros((s, k, k))
        jac[:, : m + n, : m + n] = h
        jac[:, : m + n, m + n:] = -np.transpose(grads, (0, 2, 1))
        jac[:, m + n:, : m + n] = grads
        return jac

    def multipliers(self, x, y):
        """Least-squares multipliers for given (x, y) on E_Q."""
        _, _, gx, gy = self.pieces(x, y)
        s = len(x)
        a = np.zeros((s, self.m + self.n, 2))
        a[:, : self.m, 0] = 2 * x
        a[:, : self.m, 1] = gx
        a[:, self.m:, 1] = gy
        rhs = np.concatenate([y @ self.w.T, x @ self.w], axis=1)
        ata = np.einsum("ski,skj->sij", a, a)
        atb = np.einsum("ski,sk->si", a, rhs)
        return np.linalg.solve(ata, atb[..., None])[..., 0]

    def fiber_cholesky(self, x):
        """Lower Cholesky factors of P(x) = J_y^T M J_y, the Gram matrix of y -> x (x) y."""
        p = np.einsum("sjkl,sk->sjl", self._contract_x(x), x)
        return np.linalg.cholesky(p)

    def starts(self, count, rng):
        x = rng.standard_normal((count, self.m))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        w = rng.standard_normal((count, self.n))
        w /= np.linalg.norm(w, axis=1, keepdims=True)
        low = self.fiber_cholesky(x)
        # y = L^-T w so that y^T P(x) y = w^T w = 1
        y = np.linalg.solve(np.transpose(low, (0, 2, 1)), w[..., None])[..., 0]
        mu = self.multipliers(x, y)
        return np.concatenate([x, y, mu], axis=1)

    def value_f(self, x, y):
        return np.einsum("si,ij,sj->s", x, self.w, y)


def _default_starts(fmt, cfg):
    return cfg.starts if cfg.starts is not None else 50 * generic_ed_degree(fmt)


def critical_matrices(u, m_q, cfg=None):
    """Real ED critical points of the rank-one matrices, with Morse census on E_Q."""
    cfg = cfg or CritConfig()
    u = np.asarray(u, dtype=float)
    if u.ndim != 2 or min(u.shape) < 1:
        raise UsageError("u must be a matrix")
    m, n = u.shape
    gram = _numeric_gram(m_q, m * n)
    fmt = matrix_format(m - 1, n - 1)
    total = _default_starts(fmt, cfg)
    sys = _MatrixSystem(u, gram)
    rng = np.random.default_rng(cfg.seed)
    scale = max(1.0, float(np.linalg.norm(sys.w)))
    found, resid = [], []
    for lo in range(0, total, cfg.batch):
        z0 = sys.starts(min(cfg.batch, total - lo), rng)
        z, r = _solve_batch(sys, z0, cfg, scale)
        found.append(z)
        resid.append(r)
    z = np.concatenate(found) if found else np.zeros((0, m + n + 2))
    resid = np.concatenate(resid) if resid else np.zeros(0)
    x, y = z[:, :m], z[:, m:m + n]
    sgn = _sign_canonical(x)
    x, y = x * sgn[:, None], y * sgn[:, None]
    reps, labels = _dedup(np.concatenate([x, y], axis=1), cfg.dedup_tol)
    counts = np.bincount(labels, minlength=len(reps)) if len(reps) else np.zeros(0, dtype=int)

    # pair (x, y) with (x, -y): same rank-one point, opposite F
    qu = float(u.reshape(-1) @ gram @ u.reshape(-1))
    fv = sys.value_f(x[reps], y[reps]) if reps else np.zeros(0)
    points = []
    used = set()
    non_generic = False
    rep_xy = np.concatenate([x[reps], y[reps]], axis=1) if reps else np.zeros((0, m + n))
    for a, ia in enumerate(reps):
        if a in used:
            continue
        partner = None
        target = np.concatenate([x[ia], -y[ia]])
        dist = np.max(np.abs(rep_xy - target), axis=1)
        b = int(np.argmin(dist))
        if dist[b] < cfg.dedup_tol and b != a:
            partner = b
        used.add(a)
        basin = int(counts[a])
        if partner is not None:
            used.add(partner)
            basin += int(counts[partner])
        xa, ya = x[ia], y[ia]
        if fv[a] < 0:
            ya = -ya
        lam = float(sys.value_f(xa[None], ya[None])[0])
        if abs(lam) < cfg.value_tol * scale:
            non_generic = True
        idx_pos, sing_pos = _matrix_index(sys, xa, ya, cfg)
        idx_neg, sing_neg = _matrix_index(sys, xa, -ya, cfg)
        non_generic |= sing_pos or sing_neg
        res = float(np.max(np.abs(sys.residual(np.concatenate([xa, ya, sys.multipliers(xa[None], ya[None])[0]])[None]))))
        points.append(
            CriticalPoint(
                x=xa, y=ya, scale=lam, value=qu - lam * lam, morse_index=idx_pos,
                residual=res, basin_count=basin, partner_index=idx_neg,
            )
        )
    points.sort(key=lambda p: (p.value, tuple(np.round(p.x, 9))))
    n1, n2 = m - 1, n - 1
    census_m = [0] * (n1 + n2 + 1)
    for p in points:
        census_m[p.morse_index] += 2
        census_m[p.partner_index] += 2
    out = CriticalPointSet(points=points, non_generic=non_generic, starts=total, converged=len(z))
    _value_collision_check(out, cfg)
    _basin_warning(out)
    census = MorseCensus(
        m=census_m, betti=betti_sphere_bundle(n1, n2), distinct_rank_one_points=len(points),
        kind="matrix", n1=n1, n2=n2,
    )
    return out, census


def _matrix_index(sys, x, y, cfg):
    mu = sys.multipliers(x[None], y[None])
    h, grads = sys.lagrangian_hessian(x[None], y[None], mu[:, 0], mu[:, 1])
    return _tangent_index(h[0], grads[0], cfg.zero_eig_tol)


def _value_collision_check(points, cfg):
    vals = sorted(p.value for p in points.points)
    for a, b in zip(vals, vals[1:]):
        if abs(b - a) <= cfg.value_tol * (1 + abs(b)):
            points.non_generic = True
            points.warnings.append("two critical points share a critical value")
            break


def _basin_warning(points):
    weak = [p for p in points.points if p.basin_count < 3]
    if weak:
        msg = f"{len(weak)} critical point(s) attracted fewer than 3 starts; coverage may be incomplete"
        points.warnings.append(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=3)


def frobenius_oracle_matrices(u):
    """Singular triplets: critical points sigma_i u_i (x) v_i with values |u|^2 - sigma_i^2."""
    u = np.asarray(u, dtype=float)
    left, sig, right = np.linalg.svd(u, full_matrices=False)
    scale = max(1.0, float(sig[0])) if len(sig) else 1.0
    non_generic = bool(np.any(np.diff(sig) > -1e-9 * scale) if len(sig) > 1 else False) or bool(
        np.any(sig < 1e-9 * scale)
    )
    total = float(np.sum(u * u))
    points = [
        CriticalPoint(x=left[:, i], y=right[i], scale=float(s), value=total - float(s) ** 2, morse_index=-1, residual=0.0)
        for i, s in enumerate(sig)
    ]
    points.sort(key=lambda p: p.value)
    return CriticalPointSet(points=points, non_generic=non_generic)


# ---------------------------------------------------------------------------
# symmetric case


def sym_pairs(p):
    return [(i, j) for i in range(p) for j in range(i, p)]


def sym_vec(u):
    u = np.asarray(u, dtype=float)
    return np.array([u[i, j] for i, j in sym_pairs(u.shape[0])])


def frobenius_gram_symmetric(p):
    return np.diag([1.0 if i == j else 2.0 for i, j in sym_pairs(p)])


def frobenius_gram_matrices(m, n):
    return np.eye(m * n)


def _half_offdiag(c, pairs, p):
    """Symmetric matrix C with x^T C x = sum_{i<=j} c_ij x_i x_j (batched)."""
    s = c.shape[0]
    out = np.zeros((s, p, p))
    for k, (i, j) in enumerate(pairs):
        if i == j:
            out[:, i, i] += c[:, k]
        else:
            out[:, i, j] += c[:, k] / 2
            out[:, j, i] += c[:, k] / 2
    return out


class _SymmetricSystem:
    """Unknowns (x, mu); Lagrangian F - mu (q(x (x) x) - 1)."""

    def __init__(self, u, gram):
        self.p = u.shape[0]
        self.pairs = sym_pairs(self.p)
        self.gram = gram
        self.rows_i = np.array([i for i, _ in self.pairs])
        self.rows_j = np.array([j for _, j in self.pairs])
        w = gram @ sym_vec(u)
        self.w = _half_offdiag(w[None], self.pairs, self.p)[0]

    def jac_z(self, x):
        s, r = len(x), len(self.pairs)
        jz = np.zeros((s, r, self.p))
        ar = np.arange(r)
        np.add.at(jz, (slice(None), ar, self.rows_i), x[:, self.rows_j])
        np.add.at(jz, (slice(None), ar, self.rows_j), x[:, self.rows_i])
        return jz

    def pieces(self, x):
        zt = x[:, self.rows_i] * x[:, self.rows_j]
        mz = zt @ self.gram
        g = np.sum(zt * mz, axis=1) - 1.0
        cm = _half_offdiag(mz, self.pairs, self.p)
        grad = 4 * np.einsum("sij,sj->si", cm, x)
        return zt, mz, g, grad, cm

    def residual(self, z):
        x, mu = z[:, :-1], z[:, -1]
        _, _, g, grad, _ = self.pieces(x)
        r = 2 * x @ self.w - mu[:, None] * grad
        return np.concatenate([r, g[:, None]], axis=1)

    def lagrangian_hessian(self, x, mu):
        _, _, _, grad, cm = self.pieces(x)
        jz = self.jac_z(x)
        hg = 2 * np.einsum("srk,rq,sql->skl", jz, self.gram, jz, optimize=True) + 4 * cm
        h = 2 * self.w[None] - mu[:, None, None] * hg
        return h, grad[:, None, :]

    def jacobian(self, z):
        x, mu = z[:, :-1], z[:, -1]
        h, grads = self.lagrangian_hessian(x, mu)
        s, p = x.shape
        jac = np.zeros((s, p + 1, p + 1))
        jac[:, :p, :p] = h
        jac[:, :p, p] = -grads[:, 0, :]
        jac[:, p, :p] = grads[:, 0, :]
        return jac

    def multipliers(self, x):
        _, _, _, grad, _ = self.pieces(x)
        rhs = 2 * x @ self.w
        return np.sum(grad * rhs, axis=1) / np.sum(grad * grad, axis=1)

    def starts(self, count, rng):
        x = rng.standard_normal((count, self.p))
        x /= np.linalg.norm(x, axis=1, keepdims=True)
        zt = x[:, self.rows_i] * x[:, self.rows_j]
        qx = np.sum(zt * (zt @ self.gram), axis=1)
        x /= qx[:, None] ** 0.25
        return np.concatenate([x, self.multipliers(x)[:, None]], axis=1)

    def value_f(self, x):
        return np.einsum("si,ij,sj->s", x, self.w, x)


def critical_symmetric(u, m_q, cfg=None):
    """Real ED critical points on the rank-one symmetric matrices, census on the sphere."""
    cfg = cfg or CritConfig()
    u = np.asarray(u, dtype=float)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise UsageError("u must be a square matrix")
    if not np.allclose(u, u.T, rtol=0, atol=1e-12 * max(1.0, np.abs(u).max())):
        raise UsageError("u must be symmetric")
    p = u.shape[0]
    r = p * (p + 1) // 2
    gram = _numeric_gram(m_q, r)
    fmt = TensorFormat((2,), (p - 1,))
    total = _default_starts(fmt, cfg)
    sys = _SymmetricSystem((u + u.T) / 2, gram)
    rng = np.random.default_rng(cfg.seed)
    scale = max(1.0, float(np.linalg.norm(sys.w)))
    found, resid = [], []
    for lo in range(0, total, cfg.batch):
        z0 = sys.starts(min(cfg.batch, total - lo), rng)
        z, rr = _solve_batch(sys, z0, cfg, scale)
        found.append(z)
        resid.append(rr)
    z = np.concatenate(found) if found else np.zeros((0, p + 1))
    x = z[:, :p]
    x = x * _sign_canonical(x)[:, None]
    reps, labels = _dedup(x, cfg.dedup_tol)
    counts = np.bincount(labels, minlength=len(reps)) if len(reps) else np.zeros(0, dtype=int)
    uv = sym_vec((u + u.T) / 2)
    qu = float(uv @ gram @ uv)
    points = []
    non_generic = False
    for a, ia in enumerate(reps):
        xa = x[ia]
        lam = float(sys.value_f(xa[None])[0])
        if abs(lam) < cfg.value_tol * scale:
            non_generic = True
        mu = sys.multipliers(xa[None])
        h, grads = sys.lagrangian_hessian(xa[None], mu)
        idx, sing = _tangent_index(h[0], grads[0], cfg.zero_eig_tol)
        non_generic |= sing
        res = float(np.max(np.abs(sys.residual(np.concatenate([xa, mu])[None]))))
        points.append(
            CriticalPoint(x=xa, y=xa, scale=lam, value=qu - lam * lam, morse_index=idx, residual=res, basin_count=int(counts[a]))
        )
    points.sort(key=lambda pt: (pt.value, tuple(np.round(pt.x, 9))))
    census_m = [0] * p
    for pt in points:
        census_m[pt.morse_index] += 2
    out = CriticalPointSet(points=points, non_generic=non_generic, starts=total, converged=len(z))
    _value_collision_check(out, cfg)
    _basin_warning(out)
    census = MorseCensus(m=census_m, betti=betti_sphere(p - 1), distinct_rank_one_points=len(points), kind="symmetric", n1=p - 1)
    return out, census


def frobenius_oracle_symmetric(u):
    """Eigenpairs: critical points lambda_i v_i v_i^T with values |u|_F^2 - lambda_i^2."""
    u = np.asarray(u, dtype=float)
    w, v = np.linalg.eigh((u + u.T) / 2)
    scale = max(1.0, float(np.max(np.abs(w))))
    non_generic = bool(np.any(np.diff(w) < 1e-9 * scale)) or bool(np.any(np.abs(w) < 1e-9 * scale))
    total = float(np.sum(u * u))
    points = [
        CriticalPoint(x=v[:, i], y=v[:, i], scale=float(lam), value=total - float(lam) ** 2, morse_index=-1, residual=0.0)
        for i, lam in enumerate(w)
    ]
    points.sort(key=lambda pt: pt.value)
    return CriticalPointSet(points=points, non_generic=non_generic)


def random_spd(dim, rng, spread=1.0):
    """Random SPD matrix A^T A / dim + spread * I (numeric)."""
    a = rng.standard_normal((dim, dim))
    return a.T @ a / dim + spread * np.eye(dim)
