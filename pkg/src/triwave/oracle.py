"""Independent verification machinery.

Two unrelated work horses live here:

* a direct three-point finite-difference discretization of the 1D
  Schrodinger equation on the real line (the grid oracle), used to
  arbitrate closed-form spectra, and
* Gauss quadrature rule generation (Golub-Welsch) from monic recurrence
  coefficients, plus adaptive Simpson integration for non-classical weights.

Both are built on a dependency-free symmetric-tridiagonal eigensolver:
eigenvalues by bisection on Sturm sequence counts (vectorized over shifts),
eigenvectors by inverse iteration with a pivoted tridiagonal solve.  Output
is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import (
    AccuracyError,
    DomainError,
    ParameterDomainError,
)
from . import orthopoly

__all__ = [
    "GridSolution",
    "QuadratureRule",
    "tridiagonal_eigenvalues",
    "tridiagonal_eigenvector",
    "grid_solve",
    "gauss_rule",
    "overlap_integral",
    "adaptive_quad",
    "node_count",
]


# ---------------------------------------------------------------------------
# Symmetric tridiagonal eigensolver (Sturm bisection + inverse iteration)
# ---------------------------------------------------------------------------

def _sturm_counts(diag, off2, shifts, pivmin):
    """Number of eigenvalues below each shift, via the LDL^T Sturm sequence.

    off2 holds the squared off-diagonal entries.  Vectorized over shifts so a
    whole bisection front advances in one sweep over the matrix.
    """
    q = diag[0] - shifts
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0.0).astype(np.int64)
    for i in range(1, diag.size):
        q = diag[i] - shifts - off2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0.0
    return count


def tridiagonal_eigenvalues(diag, off, k=None, rel_tol=1e-14):
    """Lowest k eigenvalues (ascending) of the symmetric tridiagonal matrix
    with the given diagonal and off-diagonal."""
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off, dtype=float)
    n = d.size
    if e.size != max(n - 1, 0):
        raise ParameterDomainError("off-diagonal must have length n-1")
    if k is None:
        k = n
    if not 1 <= k <= n:
        raise ParameterDomainError("need 1 <= k <= n")
    if n == 1:
        return d.copy()[:k]
    radius = np.zeros(n)
    radius[:-1] += np.abs(e)
    radius[1:] += np.abs(e)
    lo_glob = float(np.min(d - radius))
    hi_glob = float(np.max(d + radius))
    span = max(hi_glob - lo_glob, 1e-30)
    pivmin = max(1e-290, float(np.max(e * e)) * 1e-28)
    off2 = e * e
    lo = np.full(k, lo_glob - 1e-3 * span)
    hi = np.full(k, hi_glob + 1e-3 * span)
    idx = np.arange(k)
    n_iter = 54 + max(0, int(math.ceil(-math.log2(rel_tol))) - 40)
    for _ in range(n_iter):
        mid = 0.5 * (lo + hi)
        cnt = _sturm_counts(d, off2, mid, pivmin)
        above = cnt > idx
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
        if np.all(hi - lo <= rel_tol * np.maximum(1.0, np.abs(mid))):
            break
    return 0.5 * (lo + hi)


def _tridiag_solve_shifted(d, e, lam, rhs):
    """Solve (T - lam*I) x = rhs by Gaussian elimination with partial
    pivoting on the three bands.  Near-zero pivots are nudged, which is
    exactly what inverse iteration wants.  The inner loop runs on plain
    lists, noticeably faster than ndarray scalar indexing."""
    n = len(d)
    a = [float(v) - lam for v in d]   # diagonal
    b = [float(v) for v in e] + [0.0]  # superdiagonal, b[i] = A[i, i+1]
    c = [float(v) for v in e] + [0.0]  # subdiagonal,   c[i] = A[i+1, i]
    f = [0.0] * n                      # fill-in second superdiagonal
    x = [float(v) for v in rhs]
    tiny = 1e-300
    for i in range(n - 1):
        if abs(c[i]) > abs(a[i]):
            a[i], c[i] = c[i], a[i]
            b[i], a[i + 1] = a[i + 1], b[i]
            if i < n - 2:
                f[i], b[i + 1] = b[i + 1], f[i]
            x[i], x[i + 1] = x[i + 1], x[i]
        piv = a[i]
        if abs(piv) < tiny:
            piv = tiny if piv >= 0.0 else -tiny
            a[i] = piv
        m = c[i] / piv
        a[i + 1] -= m * b[i]
        if i < n - 2:
            b[i + 1] -= m * f[i]
        x[i + 1] -= m * x[i]
    # back substitution with on-the-fly rescaling: eigenvectors of matrices
    # with widely spread spectra span hundreds of orders of magnitude, so the
    # growing solution (and the untouched part of the rhs) is shrunk whenever
    # it approaches overflow; only the direction matters to the caller.
    big, shrink = 1e250, 1e-250
    out = [0.0] * n

    def _piv(v):
        return v if abs(v) >= tiny else (tiny if v >= 0.0 else -tiny)

    out[n - 1] = x[n - 1] / _piv(a[n - 1])
    if n >= 2:
        out[n - 2] = (x[n - 2] - b[n - 2] * out[n - 1]) / _piv(a[n - 2])
    for i in range(n - 3, -1, -1):
        out[i] = (x[i] - b[i] * out[i + 1] - f[i] * out[i + 2]) / _piv(a[i])
        if abs(out[i]) > big:
            for j in range(i, n):
                out[j] *= shrink
            for j in range(0, i):
                x[j] *= shrink
    return np.array(out)


def tridiagonal_eigenvector(diag, off, eigenvalue, n_iter=3, orthogonalize=()):
    """Inverse-iteration eigenvector for a known eigenvalue; deterministic
    start vector, unit 2-norm result, positive leading significant entry."""
    d = np.asarray(diag, dtype=float)
    e = np.asarray(off, dtype=float)
    n = d.size
    if n == 1:
        return np.ones(1)
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    for _ in range(n_iter):
        v = _tridiag_solve_shifted(d, e, eigenvalue, v)
        for u in orthogonalize:
            v -= np.dot(u, v) * u
        nrm = np.linalg.norm(v)
        if not np.isfinite(nrm) or nrm == 0.0:
            raise AccuracyError("inverse iteration failed to converge")
        v /= nrm
    lead = int(np.argmax(np.abs(v) > 1e-3 * np.max(np.abs(v))))
    if v[lead] < 0.0:
        v = -v
    return v


# ---------------------------------------------------------------------------
# Grid oracle
# ---------------------------------------------------------------------------

@dataclass
class GridSolution:
    """Eigenpairs of the discretized Hamiltonian -d^2/dx^2 + U(x) in E0 units.

    Eigenvectors are sampled on the interior grid points and unit-normalized
    under the trapezoid measure; boundary values are pinned to zero."""

    x: np.ndarray
    h: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # shape (k, npoints)
    x_min: float = 0.0
    x_max: float = 0.0


def _resolve_potential(model_or_potential):
    if callable(model_or_potential):
        return model_or_potential
    from . import models  # local import avoids a module cycle
    return lambda x: models.potential_eval(model_or_potential, x)


def grid_solve(model, x_min, x_max, h, k, check_boundaries="both",
               boundary_rel=1e-6):
    """Lowest k eigenpairs of the three-point discretization on [x_min, x_max]
    with Dirichlet ends.

    The step must satisfy h^2 * max|U| < 0.1, and converged eigenvectors must
    have decayed at the checked boundaries (relative amplitude below
    boundary_rel), otherwise a DomainError suggests how to fix the run.
    check_boundaries is one of "both", "left", "right", "none"; pass "right"
    when the left edge is a singular cutoff (e.g. an inverse-square wall)
    whose convergence is instead controlled by cutoff halving.
    """
    if x_max <= x_min:
        raise DomainError("x_max must exceed x_min")
    u = _resolve_potential(model)
    n_int = int(round((x_max - x_min) / h)) - 1
    if n_int < 3:
        raise DomainError("grid too coarse for the requested domain")
    if not 1 <= k <= n_int:
        raise ParameterDomainError("need 1 <= k <= number of interior points")
    x = x_min + h * np.arange(1, n_int + 1)
    ux = np.asarray(u(x), dtype=float)
    umax = float(np.max(np.abs(ux)))
    if h * h * umax >= 0.1:
        raise DomainError(
            "h^2 max|U| = %.3g >= 0.1; reduce h below %.3g"
            % (h * h * umax, math.sqrt(0.1 / umax)))
    inv_h2 = 1.0 / (h * h)
    diag = 2.0 * inv_h2 + ux
    off = np.full(n_int - 1, -inv_h2)
    vals = tridiagonal_eigenvalues(diag, off, k=k)
    vecs = []
    for i in range(k):
        prev = [vecs[j] for j in range(i)
                if abs(vals[i] - vals[j]) < 1e-6 * max(1.0, abs(vals[i]))]
        vecs.append(tridiagonal_eigenvector(diag, off, vals[i], orthogonalize=prev))
    vecs = np.array(vecs)
    for i in range(k):
        v = np.abs(vecs[i])
        vmax = v.max()
        bad_left = check_boundaries in ("both", "left") and v[0] > boundary_rel * vmax
        bad_right = check_boundaries in ("both", "right") and v[-1] > boundary_rel * vmax
        if bad_left or bad_right:
            side = "left" if bad_left else "right"
            raise DomainError(
                "eigenvector %d has boundary amplitude above %.1e of its max at the "
                "%s edge; extend the domain on that side" % (i, boundary_rel, side))
    norms = np.sqrt(h * np.sum(vecs * vecs, axis=1))
    vecs = vecs / norms[:, None]
    return GridSolution(x=x, h=h, eigenvalues=vals, eigenvectors=vecs,
                        x_min=x_min, x_max=x_max)


def node_count(vector, rel_floor=1e-9):
    """Strict sign changes of a sampled eigenvector, ignoring entries below
    rel_floor of the maximum amplitude."""
    v = np.asarray(vector, dtype=float)
    keep = np.abs(v) > rel_floor * np.max(np.abs(v))
    signs = np.sign(v[keep])
    return int(np.sum(signs[1:] * signs[:-1] < 0))


# ---------------------------------------------------------------------------
# Gauss rules (Golub-Welsch)
# ---------------------------------------------------------------------------

@dataclass
class QuadratureRule:
    """Nodes and positive weights integrating the identified weight exactly
    for polynomial integrands up to exactness_degree."""

    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int
    weight_id: tuple

    def integrate(self, f):
        """Integral of f against the rule's weight (f given relative to it)."""
        return float(np.dot(self.weights, f(self.nodes)))

    def weight_density(self, x):
        kind = self.weight_id[0]
        if kind == "laguerre":
            return orthopoly.weight_eval(orthopoly.LaguerreFamily(self.weight_id[1]), x)
        if kind == "jacobi":
            return orthopoly.weight_eval(
                orthopoly.JacobiFamily(self.weight_id[1], self.weight_id[2]), x)
        raise ParameterDomainError("unknown weight id %r" % (self.weight_id,))


def _monic_coefficients(weight_id, n):
    """(alpha_k, beta_k, moment0) of the monic recurrence
    p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1} for the classical weights."""
    kind = weight_id[0]
    if kind == "laguerre":
        nu = weight_id[1]
        if not nu > -1.0:
            raise ParameterDomainError("Laguerre weight exponent must exceed -1")
        ks = np.arange(n, dtype=float)
        alpha = 2.0 * ks + nu + 1.0
        beta = ks * (ks + nu)
        m0 = math.exp(math.lgamma(nu + 1.0))
        return alpha, beta, m0
    if kind == "jacobi":
        a, b = weight_id[1], weight_id[2]  # weight (1-x)^a (1+x)^b
        if not (a > -1.0 and b > -1.0):
            raise ParameterDomainError("Jacobi weight exponents must exceed -1")
        alpha = np.empty(n)
        beta = np.empty(n)
        s = a + b
        for kk in range(n):
            k = float(kk)
            if kk == 0:
                alpha[kk] = (b - a) / (s + 2.0)
                beta[kk] = 0.0
            else:
                alpha[kk] = (b * b - a * a) / ((2 * k + s) * (2 * k + s + 2.0))
                if kk == 1:
                    beta[kk] = 4.0 * (1.0 + a) * (1.0 + b) / ((s + 2.0) ** 2 * (s + 3.0))
                else:
                    beta[kk] = (4.0 * k * (k + a) * (k + b) * (k + s)
                                / ((2 * k + s) ** 2 * (2 * k + s + 1.0) * (2 * k + s - 1.0)))
        m0 = math.exp((s + 1.0) * math.log(2.0) + math.lgamma(a + 1.0)
                      + math.lgamma(b + 1.0) - math.lgamma(s + 2.0))
        return alpha, beta, m0
    raise ParameterDomainError("unknown weight id %r" % (weight_id,))


@lru_cache(maxsize=256)
def _gauss_rule_cached(weight_id, n):
    alpha, beta, m0 = _monic_coefficients(weight_id, n)
    if n == 1:
        return QuadratureRule(nodes=np.array([alpha[0]]), weights=np.array([m0]),
                              exactness_degree=1, weight_id=weight_id)
    off = np.sqrt(beta[1:])
    nodes = tridiagonal_eigenvalues(alpha, off, k=n)
    weights = np.empty(n)
    vecs = []
    for i in range(n):
        prev = [vecs[j] for j in range(i)
                if abs(nodes[i] - nodes[j]) < 1e-10 * max(1.0, abs(nodes[i]))]
        v = tridiagonal_eigenvector(alpha, off, nodes[i], orthogonalize=prev)
        vecs.append(v)
        weights[i] = m0 * v[0] * v[0]
    order = np.argsort(nodes)
    return QuadratureRule(nodes=nodes[order], weights=weights[order],
                          exactness_degree=2 * n - 1, weight_id=weight_id)


def gauss_rule(weight_id, n):
    """Gauss rule with n nodes for weight_id ("laguerre", nu) or
    ("jacobi", a, b); exact through polynomial degree 2n-1."""
    if n < 1:
        raise ParameterDomainError("a Gauss rule needs at least one node")
    key = (weight_id[0],) + tuple(float(v) for v in weight_id[1:])
    return _gauss_rule_cached(key, int(n))


# ---------------------------------------------------------------------------
# Adaptive Simpson integration (vectorized integrand)
# ---------------------------------------------------------------------------

def _simpson(f0, fm, f1, width):
    return width * (f0 + 4.0 * fm + f1) / 6.0


def adaptive_quad(f, a, b, tol=1e-10, max_depth=48, max_eval=400_000):
    """Global adaptive Simpson on (a, b) for a vectorized integrand.

    The per-interval error budget is proportional to the interval width, with
    tol interpreted as an absolute target on the whole integral (suits the
    near-zero integrals of orthogonality checks).  Returns (value,
    error_estimate); raises AccuracyError when the budget runs out.
    """
    a, b = float(a), float(b)
    min_h = (b - a) * 2.0 ** (-max_depth)
    xs = np.array([a, 0.5 * (a + b), b])
    f0, fm, f1 = np.asarray(f(xs), dtype=float)
    stack = [(a, b, f0, fm, f1, _simpson(f0, fm, f1, b - a))]
    total = 0.0
    err_total = 0.0
    n_eval = 3
    while stack:
        x0, x1, f0, fm, f1, coarse = stack.pop()
        xm = 0.5 * (x0 + x1)
        xl = 0.5 * (x0 + xm)
        xr = 0.5 * (xm + x1)
        fl, fr = np.asarray(f(np.array([xl, xr])), dtype=float)
        n_eval += 2
        left = _simpson(f0, fl, fm, xm - x0)
        right = _simpson(fm, fr, f1, x1 - xm)
        fine = left + right
        err = (fine - coarse) / 15.0
        width = x1 - x0
        allowed = tol * (width / (b - a)) * max(1.0, abs(fine))
        if abs(err) <= allowed or width <= min_h:
            if width <= min_h and abs(err) > 1e3 * tol:
                raise AccuracyError(
                    "adaptive quadrature stalled on (%g, %g)" % (x0, x1),
                    estimates=(coarse, fine))
            total += fine + err
            err_total += abs(err)
        else:
            stack.append((x0, xm, f0, fl, fm, left))
            stack.append((xm, x1, fm, fr, f1, right))
        if n_eval > max_eval:
            raise AccuracyError("adaptive quadrature exceeded its evaluation budget",
                                estimates=(total, err_total))
    return total, err_total


# ---------------------------------------------------------------------------
# Overlap integrals
# ---------------------------------------------------------------------------

def overlap_integral(f, g, measure, support, rule=None, tol=1e-10):
    """Integral of f*g*measure over the support, with an error estimate.

    With a QuadratureRule the integrand is divided by the rule's weight
    density pointwise and the rule is applied at its own order and at doubled
    order; the difference is the error estimate.  Without a rule, adaptive
    Simpson runs on the (finite) support.
    """
    if rule is not None:
        def rel(x):
            w = rule.weight_density(x)
            val = (np.asarray(f(x), dtype=float) * np.asarray(g(x), dtype=float)
                   * np.asarray(measure(x), dtype=float))
            out = val / w
            if not np.all(np.isfinite(out)):
                raise AccuracyError("integrand/weight ratio is not finite at the nodes")
            return out

        coarse = rule.integrate(rel)
        fine_rule = gauss_rule(rule.weight_id, rule.exactness_degree + 1)
        fine = fine_rule.integrate(rel)
        err = abs(fine - coarse)
        if err > 10.0 * tol * max(1.0, abs(fine)):
            raise AccuracyError("quadrature did not converge under rule doubling",
                                estimates=(coarse, fine))
        return fine, err
    a, b = support
    if not (np.isfinite(a) and np.isfinite(b)):
        raise DomainError("adaptive overlap integration needs a finite support")

    def integrand(x):
        return (np.asarray(f(x), dtype=float) * np.asarray(g(x), dtype=float)
                * np.asarray(measure(x), dtype=float))

    return adaptive_quad(integrand, a, b, tol=tol)
