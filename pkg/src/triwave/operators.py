"""Energy-dependent tridiagonal wave-operator machinery.

For each solvable family the wave operator H - E acting on the basis reduces
to a three-term recursion for polynomial-normalized coefficients d_n,

    A_n(eps) d_n + B_n(eps) d_{n-1} + C_n(eps) d_{n+1} = 0,

with d_0 = 1.  Builders return the coefficient generators; a generic engine
solves the recursion (including the diagonal and terminating limits used by
bound states); diagonalization conditions produce the discrete spectra; and
an independent quadrature route integrates <phi_m | (H - eps) | phi_n>
directly to verify tridiagonality without using any of the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import basis as basis_mod
from . import oracle
from .basis import BasisSpec, CoordinateMap
from .exceptions import (
    ParameterDomainError,
    RecursionBreakdownError,
    SingularParameterError,
    UnsupportedStructureError,
)

__all__ = [
    "RecursionCoefficients",
    "EnergyDependentTridiagonal",
    "CoefficientSeries",
    "DiagonalLevel",
    "build_oscillator_pollaczek",
    "build_oscillator_dual_hahn",
    "build_morse",
    "build_rosen_morse",
    "symmetric_form",
    "solve_recursion",
    "diagonalization_scan",
    "numeric_jmatrix",
    "truncated_eigenvalues",
]


# ---------------------------------------------------------------------------
# Coefficient containers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RecursionCoefficients:
    """Generators for A_n d_n + B_n d_{n-1} + C_n d_{n+1} = 0.

    B(0) is pinned to zero in every builder: it multiplies d_{-1} = 0 and the
    wave-operator row 0 has no such entry.

    Closure-style generators (functions of n and eps) rather than matrix
    snapshots: eps can sit inside off-diagonals or inside basis parameters
    depending on the case, so a plain "matrix minus eps*I" view would
    misrepresent the structure.
    """

    A: Callable[[int, float], float]
    B: Callable[[int, float], float]
    C: Callable[[int, float], float]
    case: str
    params: dict
    spec: Optional[BasisSpec] = None
    epsilon_constraint: Optional[str] = None
    constrained_epsilon: Optional[Callable[[], float]] = None
    epsilon_on_diagonal: bool = False
    # scaling t_n with f_n = t_n d_n that makes sum f_n phi_n solve the wave
    # equation, fixed per case by testing the d-solutions against the
    # quadrature wave-operator rows: "standard" t_n = A_n/lam, "inverse"
    # t_n = 1/A_n, "alternating" t_n = (-1)^n A_n/lam.
    f_transform: str = "standard"
    # the literal <phi_m|(H-eps)|phi_n> rows equal jmatrix_scale times the
    # symmetrized recursion rows (a constant per case, measured and pinned)
    jmatrix_scale: float = 1.0

    def f_scaling(self, n: int) -> float:
        if self.spec is None:
            raise UnsupportedStructureError("no basis attached to this recursion")
        a_n = basis_mod.normalization(self.spec, n)
        if self.f_transform == "standard":
            return a_n / self.spec.lam
        if self.f_transform == "inverse":
            return 1.0 / a_n
        if self.f_transform == "alternating":
            return (-1.0) ** n * a_n / self.spec.lam
        raise UnsupportedStructureError("unknown f transform %r" % self.f_transform)


@dataclass(frozen=True)
class EnergyDependentTridiagonal:
    """Symmetric view (a_n, b_n) acting on f_n: (a_n - eps) f_n
    + b_{n-1} f_{n-1} + b_n f_{n+1} = 0, with b_n coupling n and n+1."""

    diag: Callable[[int, float], float]
    offdiag: Callable[[int, float], float]
    representation: str
    epsilon_constraint: Optional[str] = None


@dataclass
class CoefficientSeries:
    """Recursion output: raw d-sequence, its f-image when a basis is known,
    and the size of the last retained term relative to the running maximum."""

    d: np.ndarray
    f: Optional[np.ndarray]
    truncation: int
    tail_estimate: float


@dataclass(frozen=True)
class DiagonalLevel:
    n: int
    epsilon: float
    basis_params: dict


# ---------------------------------------------------------------------------
# Builders (one per developed case)
# ---------------------------------------------------------------------------

def build_oscillator_pollaczek(nu, a):
    """Oscillator map, basis exponent 2*alpha = nu + 1/2, potential
    U(y) = a*y + (nu^2 - 1/4)/y:

        [(a+1)(2n+nu+1) - eps] d_n - (a-1)[(n+nu) d_{n-1} + (n+1) d_{n+1}] = 0.

    At a = 1 every off-diagonal coefficient vanishes identically.
    """
    if not nu > -1.0:
        raise ParameterDomainError("requires nu > -1")
    nu, a = float(nu), float(a)
    return RecursionCoefficients(
        A=lambda n, eps: (a + 1.0) * (2 * n + nu + 1.0) - eps,
        B=lambda n, eps: 0.0 if n == 0 else -(a - 1.0) * (n + nu),
        C=lambda n, eps: -(a - 1.0) * (n + 1.0),
        case="oscillator_pollaczek",
        params={"nu": nu, "a": a},
        spec=basis_mod.oscillator_pollaczek_basis(nu) if nu >= -0.5 else None,
        epsilon_on_diagonal=True,
    )


def build_oscillator_dual_hahn(nu, b):
    """Oscillator map, basis exponent 2*alpha = nu + 3/2, potential
    U(y) = y + b/y.  eps enters all three coefficient functions; a real
    dual-Hahn representation needs b <= -1/4."""
    if not nu > -1.0:
        raise ParameterDomainError("requires nu > -1")
    nu, b = float(nu), float(b)

    def a_fn(n, eps):
        return ((n + nu + 1.0) * (n + nu / 2.0 + 1.0 - eps / 4.0)
                + n * (n + nu / 2.0 - eps / 4.0)
                - ((nu + 1.0) / 2.0) ** 2 + b / 4.0 + 1.0 / 16.0)

    return RecursionCoefficients(
        A=a_fn,
        B=lambda n, eps: -n * (n + nu / 2.0 - eps / 4.0),
        C=lambda n, eps: -(n + nu + 1.0) * (n + nu / 2.0 + 1.0 - eps / 4.0),
        case="oscillator_dual_hahn",
        params={"nu": nu, "b": b},
        spec=basis_mod.oscillator_dual_hahn_basis(nu),
        f_transform="inverse",
        jmatrix_scale=4.0,
    )


def build_morse(a, b, nu):
    """Morse map, basis constraint nu = 2*alpha, potential U(y) = a*y + b*y^2:

        2[(b + 1/4)(n + (nu+1)/2) + a/2] d_n
            = (b - 1/4)[(n + nu) d_{n-1} + (n + 1) d_{n+1}].

    The basis is energy dependent: tridiagonality requires eps = -nu^2/4.
    b = 1/4 is the diagonal (bound-state) limit.
    """
    if not nu > -1.0:
        raise ParameterDomainError("requires nu > -1")
    a, b, nu = float(a), float(b), float(nu)
    return RecursionCoefficients(
        A=lambda n, eps: 2.0 * ((b + 0.25) * (n + (nu + 1.0) / 2.0) + a / 2.0),
        B=lambda n, eps: 0.0 if n == 0 else -(b - 0.25) * (n + nu),
        C=lambda n, eps: -(b - 0.25) * (n + 1.0),
        case="morse",
        params={"a": a, "b": b, "nu": nu},
        spec=basis_mod.morse_basis(nu) if nu >= 0.0 else None,
        epsilon_constraint="eps = -nu^2/4",
        constrained_epsilon=lambda: -nu * nu / 4.0,
    )


def build_rosen_morse(A, B, mu, nu):
    """Rosen-Morse map, basis exponents (alpha, beta) = ((nu+1)/2, mu/2),
    potential U(y) = A(1-y) + B(1-y^2); eps = -mu^2 is forced.

    Guards every 2n+mu+nu (and shifted) denominator; a zero raises."""
    if not (mu > -1.0 and nu > -1.0):
        raise ParameterDomainError("requires mu, nu > -1")
    A, B, mu, nu = float(A), float(B), float(mu), float(nu)
    s = mu + nu

    def _guard(val, n):
        if abs(val) < 1e-13:
            raise SingularParameterError(
                "rosen-morse coefficient denominator vanished at n=%d" % n)
        return val

    def bracket(t):
        # B - 1/4 + (1/4) t^2 with t = 2n+mu+nu (+2 for the upper coupling)
        return B - 0.25 + 0.25 * t * t

    def a_fn(n, eps):
        t = _guard(2 * n + s, n)
        t2 = _guard(2 * n + s + 2.0, n)
        diag = (0.5 * (nu + mu + 1.0) * (nu - mu + 1.0)
                + 2.0 * n * (n + mu) / t
                + ((mu * mu - nu * nu) / (t * t2) - 1.0) * bracket(t2))
        return diag - A

    def b_fn(n, eps):
        if n == 0:
            return 0.0
        t = _guard(2 * n + s, n)
        t1 = _guard(2 * n + s + 1.0, n)
        return 2.0 * (n + mu) * (n + nu) / (t * t1) * bracket(t)

    def c_fn(n, eps):
        t1 = _guard(2 * n + s + 1.0, n)
        t2 = _guard(2 * n + s + 2.0, n)
        return 2.0 * (n + 1.0) * (n + s + 1.0) / (t1 * t2) * bracket(t2)

    spec = None
    if mu >= 0.0:
        spec = basis_mod.rosen_morse_basis(mu, nu)
    return RecursionCoefficients(
        A=a_fn, B=b_fn, C=c_fn,
        case="rosen_morse",
        params={"A": A, "B": B, "mu": mu, "nu": nu},
        spec=spec,
        epsilon_constraint="eps = -mu^2",
        constrained_epsilon=lambda: -mu * mu,
        f_transform="alternating",
        jmatrix_scale=-1.0,
    )


# ---------------------------------------------------------------------------
# Symmetric view
# ---------------------------------------------------------------------------

def _t_ratio(rc: RecursionCoefficients, n: int) -> float:
    """t_n / t_{n+1} for the case's f_n = t_n d_n scaling."""
    ratio = (basis_mod.normalization(rc.spec, n)
             / basis_mod.normalization(rc.spec, n + 1))
    if rc.f_transform == "inverse":
        return 1.0 / ratio
    if rc.f_transform == "alternating":
        return -ratio
    return ratio


def symmetric_form(rc: RecursionCoefficients) -> EnergyDependentTridiagonal:
    """Symmetric f-representation of the recursion.

    diag(n, eps) returns a_n such that the homogeneous row reads
    (a_n - eps) f_n + b_{n-1} f_{n-1} + b_n f_{n+1} = 0, i.e. a_n =
    A_n(eps) + eps; offdiag(n) = C_n t_n/t_{n+1} couples n and n+1.  Both
    representations share their zero structure, so diagonalization
    conditions agree between them.
    """
    if rc.spec is None:
        raise UnsupportedStructureError(
            "no basis attached; the symmetric scaling is undefined")

    def diag(n, eps):
        return rc.A(n, eps) + eps

    def off(n, eps):
        return rc.C(n, eps) * _t_ratio(rc, n)

    return EnergyDependentTridiagonal(
        diag=diag, offdiag=off, representation="symmetric_f",
        epsilon_constraint=rc.epsilon_constraint)


# ---------------------------------------------------------------------------
# Recursion engine
# ---------------------------------------------------------------------------

def _coeff_scale(rc, n, eps):
    return max(abs(rc.A(n, eps)), abs(rc.B(n, eps)), abs(rc.C(n, eps)), 1.0)


def solve_recursion(rc: RecursionCoefficients, epsilon: float, N: int,
                    zero_tol=1e-9) -> CoefficientSeries:
    """Run the three-term recursion with seed d_0 = 1, d_{-1} = 0 up to
    truncation order N.

    Diagonal-limit recursions (all couplings identically zero) return the
    delta sequence at the level n0 where the diagonal coefficient vanishes.
    A vanishing C_n with vanishing running combination terminates the series
    (zero continuation); a vanishing C_n with a nonzero combination is a
    breakdown and raises, naming n.
    """
    if N < 1:
        raise ParameterDomainError("truncation order must be >= 1")
    eps = float(epsilon)
    scales = [_coeff_scale(rc, n, eps) for n in range(N)]
    diagonal_limit = all(
        abs(rc.B(n, eps)) <= zero_tol * 1e-3 * scales[n]
        and abs(rc.C(n, eps)) <= zero_tol * 1e-3 * scales[n]
        for n in range(N))
    d = np.zeros(N)
    if diagonal_limit:
        avals = np.array([abs(rc.A(n, eps)) / scales[n] for n in range(N)])
        n0 = int(np.argmin(avals))
        if avals[n0] > zero_tol:
            raise RecursionBreakdownError(
                0, "diagonal-limit recursion admits no solution at eps=%g" % eps)
        d[n0] = 1.0
    else:
        d[0] = 1.0
        for n in range(N - 1):
            num = rc.A(n, eps) * d[n] + (rc.B(n, eps) * d[n - 1] if n >= 1 else 0.0)
            c = rc.C(n, eps)
            scale = scales[n] * max(1.0, float(np.max(np.abs(d[: n + 1]))))
            if abs(c) <= zero_tol * scales[n]:
                if abs(num) <= zero_tol * scale:
                    d[n + 1] = 0.0  # the series terminates here
                else:
                    raise RecursionBreakdownError(n)
            else:
                d[n + 1] = -num / c
    f = None
    if rc.spec is not None:
        f = d * np.array([rc.f_scaling(n) for n in range(N)])
    ref = f if f is not None else d
    running_max = float(np.max(np.abs(ref))) or 1.0
    tail = abs(float(ref[-1])) / running_max
    return CoefficientSeries(d=d, f=f, truncation=N, tail_estimate=tail)


# ---------------------------------------------------------------------------
# Diagonalization conditions
# ---------------------------------------------------------------------------

def diagonalization_scan(rc: RecursionCoefficients, n_levels=8, param_solver=None):
    """Discrete levels produced by the case's diagonalization conditions
    (all couplings zero and the diagonal zero at the level index).

    Returns a list of DiagonalLevel; an empty list means the parameter point
    admits no such levels (not an error).  param_solver may override the
    per-level parameter solve with a callable n -> basis-parameter dict or
    None.
    """
    out = []
    if param_solver is not None:
        for n in range(n_levels):
            params = param_solver(n)
            if params is None:
                continue
            out.append(DiagonalLevel(n=n, epsilon=params.pop("epsilon"),
                                     basis_params=params))
        return out

    if rc.case == "oscillator_pollaczek":
        a, nu = rc.params["a"], rc.params["nu"]
        if a != 1.0:
            return []
        for n in range(n_levels):
            out.append(DiagonalLevel(n=n, epsilon=2.0 * (2 * n + nu + 1.0),
                                     basis_params={"nu": nu}))
        return out

    if rc.case == "morse":
        a, b = rc.params["a"], rc.params["b"]
        if b != 0.25:
            return []
        n = 0
        while n < n_levels:
            nu_n = -2.0 * (n + a + 0.5)
            if nu_n <= 0.0:  # normalizability of y^(nu/2) under dy/y
                break
            out.append(DiagonalLevel(n=n, epsilon=-(n + a + 0.5) ** 2,
                                     basis_params={"nu": nu_n}))
            n += 1
        return out

    if rc.case == "rosen_morse":
        A, B = rc.params["A"], rc.params["B"]
        for n in range(n_levels):
            sol = rosen_morse_level(A, B, n)
            if sol is None:
                break
            mu_n, nu_n = sol
            out.append(DiagonalLevel(n=n, epsilon=-mu_n * mu_n,
                                     basis_params={"mu": mu_n, "nu": nu_n}))
        return out

    # the dual-Hahn case has no parameter choice killing every coupling
    return []


def rosen_morse_level(A, B, n, mu_floor=1e-12):
    """Solve the two diagonal conditions for (mu, nu) at level n.

    The coupling condition fixes mu + nu = 2*gamma - 2(n+1) with
    gamma = sqrt(1/4 - B); the diagonal condition then is one equation in mu,
    solved by safeguarded bisection on (mu_floor, mu_upper) with mu_upper set
    by eps > U_min.  Roots are accepted only with mu > 0 and nu > -1.
    Returns (mu, nu) or None.
    """
    if B > 0.25:
        raise ParameterDomainError("bound levels need B <= 1/4")
    gamma = math.sqrt(0.25 - B)
    s = 2.0 * gamma - 2.0 * (n + 1.0)  # mu + nu

    def residual(mu):
        nu = s - mu
        t = 2 * n + s
        if abs(t) < 1e-12:
            return None
        return (0.5 * (nu + mu + 1.0) * (nu - mu + 1.0)
                + 2.0 * n * (n + mu) / t - A)

    u_min = rosen_morse_potential_min(A, B)
    if u_min >= 0.0:
        return None
    mu_upper = math.sqrt(-u_min)
    lo, hi = mu_floor, mu_upper
    r_lo, r_hi = residual(lo), residual(hi)
    if r_lo is None or r_hi is None:
        raise SingularParameterError("level condition singular (2n+mu+nu = 0)")
    if r_lo == 0.0:
        root = lo
    elif r_hi == 0.0:
        root = hi
    elif r_lo * r_hi > 0.0:
        return None
    else:
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            r_mid = residual(mid)
            if r_mid == 0.0 or hi - lo < 1e-15 * max(1.0, abs(mid)):
                break
            if r_lo * r_mid < 0.0:
                hi, r_hi = mid, r_mid
            else:
                lo, r_lo = mid, r_mid
        root = 0.5 * (lo + hi)
    mu = root
    nu = s - mu
    if mu <= 0.0 or nu <= -1.0:
        return None
    return mu, nu


def rosen_morse_potential_min(A, B):
    """Minimum of U(y) = A(1-y) + B(1-y^2) over y in [-1, 1]."""
    cands = [0.0, 2.0 * A]  # ends y=+1, y=-1
    if B != 0.0:
        y_star = -A / (2.0 * B)
        if -1.0 < y_star < 1.0:
            cands.append(A * (1.0 - y_star) + B * (1.0 - y_star * y_star))
    return min(cands)


# ---------------------------------------------------------------------------
# Quadrature J-matrix (independent of the closed forms)
# ---------------------------------------------------------------------------

def _u_oscillator(model):
    """(linear, inverse) coefficients of U(y) = u1*y + um1/y on the half line."""
    from . import models  # late import: models depends on this module
    if isinstance(model, models.HarmonicOscillator):
        return model.a, 0.0
    if isinstance(model, models.OscillatorInverseSquare):
        return model.a, model.b
    if isinstance(model, models.SupercriticalInverseSquare):
        return 1.0, model.b
    raise UnsupportedStructureError("model does not map to the oscillator form")


def numeric_jmatrix(model, spec: BasisSpec, cmap: CoordinateMap, epsilon: float,
                    m: int, n: int, n_nodes=64):
    """<phi_m | (H - eps) | phi_n> by direct Gauss quadrature in y.

    Basis derivatives come from the polynomial differential equations, never
    from finite differences, and the envelope factors are cancelled against
    the quadrature weight analytically so no exp(+y) ratios are formed.  For
    the constrained exponent choices the integrand is weight * polynomial and
    the result is exact to roundoff; for perturbed exponents (negative
    controls) the rule still converges well enough to expose the broken
    structure.
    """
    from . import models  # late import
    if 2 * n_nodes - 1 < m + n + 4:
        raise ParameterDomainError("n_nodes too small for these indices")
    eps = float(epsilon)
    if cmap.kind == "oscillator":
        u1, um1 = _u_oscillator(model)
        return _jmatrix_laguerre_oscillator(spec, u1, um1, eps, m, n, n_nodes,
                                            cmap.lam)
    if cmap.kind == "morse":
        if not isinstance(model, models.GeneralizedMorse):
            raise UnsupportedStructureError("model does not map to the morse form")
        u1 = model.A / cmap.mu_scale
        u2 = model.B / cmap.mu_scale ** 2
        return _jmatrix_laguerre_morse(spec, u1, u2, eps, m, n, n_nodes, cmap.lam)
    if cmap.kind == "rosen_morse":
        if not isinstance(model, models.RosenMorse):
            raise UnsupportedStructureError("model does not map to the rosen_morse form")
        return _jmatrix_jacobi(spec, model.A, model.B, eps, m, n, n_nodes, cmap.lam)
    raise UnsupportedStructureError("unknown coordinate map %r" % cmap.kind)


def _laguerre_blocks(spec, m, n, n_nodes, base_expo):
    """Rule, nodes, polynomial values and yL' values shared by the two
    laguerre-map assemblies.  base_expo is the exponent of y in
    phi_m phi_n d(mu); the rule weight drops one power when integrable so
    residual 1/y pieces stay polynomial."""
    shift = 1 if base_expo - 1.0 > -1.0 else 0
    rule = oracle.gauss_rule(("laguerre", base_expo - shift), n_nodes)
    y = rule.nodes
    nmax = max(m, n)
    vals = basis_mod.scaled_polynomials(spec, nmax, y)
    fam = spec.family()
    seq = vals  # A_k L_k rows
    # y * d/dy (A_n L_n) = n (A_n L_n) - (n+nu) (A_n / A_{n-1})^-1 ... computed
    # directly from the unscaled relation y L_n' = n L_n - (n+nu) L_{n-1}
    a_n = basis_mod.normalization(spec, n)
    a_prev = basis_mod.normalization(spec, n - 1) if n >= 1 else 1.0
    prev = seq[n - 1] * (a_n / a_prev) if n >= 1 else np.zeros_like(y)
    y_dln = n * seq[n] - (n + fam.nu) * prev  # A_n * y L_n'
    return rule, y, seq, y_dln, shift


def _jmatrix_laguerre_oscillator(spec, u1, um1, eps, m, n, n_nodes, lam):
    """Oscillator map: operator -4y d^2/dy^2 - 2 d/dy + U(y) - eps.

    With phi = y^alpha u, u = e^{-y/2} L, the action collapses to

      [um1 - 2a(2a-1)] L/y + (4a+1+4n-eps) L + [4(nu+1)-(8a+2)] L'
                                              + (u1-1) y L

    times the envelope (a = alpha); both bracketed coefficients vanish
    identically when 2*alpha = nu + 1/2 and um1 = nu^2 - 1/4.
    """
    al = spec.alpha
    base = 2.0 * al - 0.5
    rule, y, seq, y_dln, shift = _laguerre_blocks(spec, m, n, n_nodes, base)
    c_inv = um1 - 2.0 * al * (2.0 * al - 1.0)
    c_l = 4.0 * al + 1.0 + 4.0 * n - eps
    c_lp = 4.0 * (spec.nu + 1.0) - (8.0 * al + 2.0)
    action = (c_inv * seq[n] / y + c_l * seq[n] + c_lp * y_dln / y
              + (u1 - 1.0) * y * seq[n])
    integrand = seq[m] * action / lam
    if shift:
        integrand = integrand * y
    return float(np.dot(rule.weights, integrand))


def _jmatrix_laguerre_morse(spec, u1, u2, eps, m, n, n_nodes, lam):
    """Morse map: operator -y^2 d^2/dy^2 - y d/dy + U(y) - eps.

    Collapses to -(alpha^2+eps) L + [u1 + alpha + 1/2 + n] y L
    + (u2 - 1/4) y^2 L + (nu - 2 alpha) yL'; the first and last pieces die
    on the constrained case nu = 2*alpha, eps = -nu^2/4.
    """
    al = spec.alpha
    base = 2.0 * al - 1.0
    if not base > -1.0:
        raise ParameterDomainError("morse overlap needs 2*alpha - 1 > -1 (nu > 0)")
    rule, y, seq, y_dln, shift = _laguerre_blocks(spec, m, n, n_nodes, base)
    action = (-(al * al + eps) * seq[n]
              + (u1 + al + 0.5 + n) * y * seq[n]
              + (u2 - 0.25) * y * y * seq[n]
              + (spec.nu - 2.0 * al) * y_dln)
    integrand = seq[m] * action / lam
    if shift:
        integrand = integrand * y
    return float(np.dot(rule.weights, integrand))


def _jmatrix_jacobi(spec, A, B, eps, m, n, n_nodes, lam):
    """Rosen-Morse map: operator -(1-y^2) d/dy (1-y^2) d/dy + U(y) - eps,
    U = A(1-y) + B(1-y^2), envelope W = (1+y)^alpha (1-y)^beta.

    All derivative content is reduced through the Jacobi structure relations
    so only P_n and P_{n-1} values appear; the integrand is the Jacobi weight
    (1-y)^(2 beta - 1) (1+y)^(2 alpha - 1) times a polynomial.
    """
    al, be = spec.alpha, spec.beta
    mu, nu = spec.mu, spec.nu
    a_w = 2.0 * be - 1.0
    b_w = 2.0 * al - 1.0
    if not (a_w > -1.0 and b_w > -1.0):
        raise ParameterDomainError("rosen-morse overlap needs alpha, beta > 0")
    rule = oracle.gauss_rule(("jacobi", a_w, b_w), n_nodes)
    y = rule.nodes
    vals = basis_mod.scaled_polynomials(spec, max(m, n), y)
    p = vals[n]
    a_n = basis_mod.normalization(spec, n)
    a_prev = basis_mod.normalization(spec, n - 1) if n >= 1 else 1.0
    p_prev = vals[n - 1] * (a_n / a_prev) if n >= 1 else np.zeros_like(y)
    s_ab = al + be
    d_ab = al - be
    if n >= 1:
        d1 = (-n * (y + (nu - mu) / (2 * n + mu + nu)) * p
              + 2.0 * (n + mu) * (n + nu) / (2 * n + mu + nu) * p_prev)
    else:
        d1 = np.zeros_like(y)
    one_m_y2 = 1.0 - y * y
    g = (d_ab - s_ab * y) * p + d1
    # (1-y^2)^2 P'' through the Jacobi differential equation
    p2 = ((mu + nu + 2.0) * y + mu - nu) * d1 - n * (n + mu + nu + 1.0) * one_m_y2 * p
    g1 = -s_ab * one_m_y2 * p + (d_ab - s_ab * y - 2.0 * y) * d1 + p2
    u_val = A * (1.0 - y) + B * one_m_y2
    action = -(d_ab - s_ab * y) * g - g1 + (u_val - eps) * p
    integrand = vals[m] * action / lam
    return float(np.dot(rule.weights, integrand))


# ---------------------------------------------------------------------------
# Finite symmetric truncation
# ---------------------------------------------------------------------------

def truncated_eigenvalues(rc: RecursionCoefficients, N: int,
                          embedding="linear-diagonal"):
    """Eigenvalues of the N x N symmetric truncation, ascending.

    Only structures where eps enters linearly on the diagonal (the oscillator
    Pollaczek case) are supported; anywhere else eps sits inside couplings or
    basis parameters and a finite snapshot would misrepresent the operator.
    """
    if embedding != "linear-diagonal":
        raise UnsupportedStructureError("unknown epsilon embedding %r" % embedding)
    if not rc.epsilon_on_diagonal:
        raise UnsupportedStructureError(
            "case %r does not embed eps linearly on the diagonal" % rc.case)
    sym = symmetric_form(rc)
    diag = np.array([sym.diag(k, 0.0) for k in range(N)])
    off = np.array([sym.offdiag(k, 0.0) for k in range(N - 1)])
    return oracle.tridiagonal_eigenvalues(diag, off, k=N)
