"""Square-integrable basis functions, coordinate maps, and integration measures.

The Laguerre basis  phi_n(y) = A_n y^alpha e^{-y/2} L_n^nu(y)  lives on the
half line; the Jacobi basis  phi_n(y) = A_n (1+y)^alpha (1-y)^beta
P_n^(mu,nu)(y)  lives on (-1, 1).  Three coordinate maps carry the real line
onto those intervals: y = (lam*x)^2 (folding), y = mu_scale*e^{-lam*x}, and
y = tanh(lam*x).  Energies are dimensionless throughout, measured in units of
E0 = hbar^2 lam^2 / (2 m); all default computations use lam = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import oracle, orthopoly
from .exceptions import DomainError, ParameterDomainError, QuadratureOrderError

__all__ = [
    "BasisSpec",
    "CoordinateMap",
    "oscillator_map",
    "morse_map",
    "rosen_morse_map",
    "oscillator_pollaczek_basis",
    "oscillator_dual_hahn_basis",
    "morse_basis",
    "rosen_morse_basis",
    "normalization",
    "basis_eval",
    "measure_factor",
    "overlap",
    "overlap_matrix",
    "coeff_transform",
]


# ---------------------------------------------------------------------------
# Specs and maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisSpec:
    """A weighted orthogonal-polynomial basis family.

    kind "laguerre": phi_n(y) = A_n y^alpha e^{-y/2} L_n^nu(y) on (0, inf).
    kind "jacobi":   phi_n(y) = A_n (1+y)^alpha (1-y)^beta P_n^(mu,nu)(y)
    on (-1, 1).  lam is the inverse-length scale of the coordinate map the
    basis is paired with; it enters only the normalization constant.
    """

    kind: str
    alpha: float
    nu: float
    beta: float = None
    mu: float = None
    lam: float = 1.0

    def __post_init__(self):
        if self.lam <= 0.0:
            raise ParameterDomainError("lam must be positive")
        if self.kind == "laguerre":
            if not self.nu > -1.0:
                raise ParameterDomainError("laguerre basis requires nu > -1")
            if self.alpha < 0.0:
                raise ParameterDomainError("laguerre basis requires alpha >= 0")
        elif self.kind == "jacobi":
            if self.mu is None or self.beta is None:
                raise ParameterDomainError("jacobi basis needs mu and beta")
            if not (self.mu > -1.0 and self.nu > -1.0):
                raise ParameterDomainError("jacobi basis requires mu, nu > -1")
            if self.alpha < 0.0 or self.beta < 0.0:
                raise ParameterDomainError("jacobi basis requires alpha, beta >= 0")
        else:
            raise ParameterDomainError("unknown basis kind %r" % self.kind)

    @property
    def support(self):
        return (0.0, math.inf) if self.kind == "laguerre" else (-1.0, 1.0)

    def family(self):
        if self.kind == "laguerre":
            return orthopoly.LaguerreFamily(self.nu)
        return orthopoly.JacobiFamily(self.mu, self.nu)

    def perturbed(self, dalpha):
        """Copy with alpha shifted; breaks the tridiagonal exponent constraint
        on purpose (negative-control hook)."""
        return replace(self, alpha=self.alpha + dalpha)


def oscillator_pollaczek_basis(nu, lam=1.0):
    """Laguerre basis with 2*alpha = nu + 1/2 (oscillator map, Pollaczek
    coefficient route).  Needs nu >= -1/2 so that alpha >= 0."""
    if nu < -0.5:
        raise ParameterDomainError("this case requires nu >= -1/2")
    return BasisSpec(kind="laguerre", alpha=0.5 * (nu + 0.5), nu=nu, lam=lam)


def oscillator_dual_hahn_basis(nu, lam=1.0):
    """Laguerre basis with 2*alpha = nu + 3/2 (oscillator map, dual-Hahn
    coefficient route)."""
    return BasisSpec(kind="laguerre", alpha=0.5 * (nu + 1.5), nu=nu, lam=lam)


def morse_basis(nu, lam=1.0):
    """Laguerre basis with nu = 2*alpha (Morse map)."""
    return BasisSpec(kind="laguerre", alpha=0.5 * nu, nu=nu, lam=lam)


def rosen_morse_basis(mu, nu, lam=1.0):
    """Jacobi basis with (alpha, beta) = ((nu+1)/2, mu/2) (Rosen-Morse map)."""
    return BasisSpec(kind="jacobi", alpha=0.5 * (nu + 1.0), beta=0.5 * mu,
                     nu=nu, mu=mu, lam=lam)


@dataclass(frozen=True)
class CoordinateMap:
    """Coordinate transformation y(lam*x) from the real line onto the basis
    interval: oscillator y = (lam x)^2, morse y = mu_scale e^{-lam x},
    rosen_morse y = tanh(lam x)."""

    kind: str
    lam: float = 1.0
    mu_scale: float = None

    def __post_init__(self):
        if self.kind not in ("oscillator", "morse", "rosen_morse"):
            raise ParameterDomainError("unknown coordinate map %r" % self.kind)
        if self.lam <= 0.0:
            raise ParameterDomainError("lam must be positive")
        if self.kind == "morse" and not (self.mu_scale and self.mu_scale > 0.0):
            raise ParameterDomainError("morse map needs mu_scale > 0")

    @property
    def y_interval(self):
        return (-1.0, 1.0) if self.kind == "rosen_morse" else (0.0, math.inf)

    def to_y(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "oscillator":
            out = (self.lam * x) ** 2
        elif self.kind == "morse":
            out = self.mu_scale * np.exp(-self.lam * x)
        else:
            out = np.tanh(self.lam * x)
        return out if out.ndim else float(out)


def oscillator_map(lam=1.0):
    return CoordinateMap(kind="oscillator", lam=lam)


def morse_map(mu_scale, lam=1.0):
    return CoordinateMap(kind="morse", lam=lam, mu_scale=mu_scale)


def rosen_morse_map(lam=1.0):
    return CoordinateMap(kind="rosen_morse", lam=lam)


def measure_factor(cmap: CoordinateMap, y):
    """d(mu)/dy such that integrals over x reduce to integrals over y.

    Oscillator: 1/(lam sqrt(y)) for integrands even in x (the folded map
    covers the full line only for that parity; odd integrands are rejected
    by the callers).  Morse: 1/(lam y).  Rosen-Morse: 1/(lam (1-y^2)).
    """
    y_arr = np.asarray(y, dtype=float)
    lo, hi = cmap.y_interval
    if np.any(y_arr <= lo) or (np.isfinite(hi) and np.any(y_arr >= hi)):
        raise DomainError("measure is singular at or outside the interval ends")
    if cmap.kind == "oscillator":
        out = 1.0 / (cmap.lam * np.sqrt(y_arr))
    elif cmap.kind == "morse":
        out = 1.0 / (cmap.lam * y_arr)
    else:
        out = 1.0 / (cmap.lam * (1.0 - y_arr * y_arr))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _log_norm(spec: BasisSpec, n: int) -> float:
    if spec.kind == "laguerre":
        return 0.5 * (math.log(spec.lam) + math.lgamma(n + 1.0)
                      - math.lgamma(n + spec.nu + 1.0))
    s = spec.mu + spec.nu
    # (2n+s+1) Gamma(n+s+1) stays finite down to s -> -1; fold the prefactor
    # into the gamma at n = 0 where Gamma(s+1) alone would blow up.
    if n == 0:
        log_head = math.lgamma(s + 2.0)
    else:
        log_head = math.log(2 * n + s + 1.0) + math.lgamma(n + s + 1.0)
    return 0.5 * (math.log(spec.lam) + log_head + math.lgamma(n + 1.0)
                  - (s + 1.0) * math.log(2.0)
                  - math.lgamma(n + spec.nu + 1.0) - math.lgamma(n + spec.mu + 1.0))


def normalization(spec: BasisSpec, n: int) -> float:
    """The constant A_n of the basis, computed through log-gamma sums so
    large n survives."""
    return math.exp(_log_norm(spec, n))


def _envelope(spec: BasisSpec, y):
    """Envelope factor of phi_n (independent of n), with continuous extension
    at the interval ends when the exponents allow it."""
    y = np.asarray(y, dtype=float)
    if spec.kind == "laguerre":
        if np.any(y < 0.0):
            raise DomainError("laguerre basis support is [0, inf)")
        if spec.alpha == 0.0:
            power = np.ones_like(y)
        else:
            if np.any(y == 0.0) and spec.alpha < 0.0:
                raise DomainError("negative exponent at the y=0 endpoint")
            power = np.power(y, spec.alpha)
        return power * np.exp(-0.5 * y)
    if np.any(np.abs(y) > 1.0):
        raise DomainError("jacobi basis support is [-1, 1]")
    for expo, factor in ((spec.alpha, 1.0 + y), (spec.beta, 1.0 - y)):
        if expo < 0.0 and np.any(factor == 0.0):
            raise DomainError("negative exponent at an interval endpoint")
    up = np.ones_like(y) if spec.alpha == 0.0 else np.power(1.0 + y, spec.alpha)
    down = np.ones_like(y) if spec.beta == 0.0 else np.power(1.0 - y, spec.beta)
    return up * down


def basis_eval(spec: BasisSpec, n: int, y):
    """phi_n(y), normalized per the family's A_n."""
    y_arr = np.asarray(y, dtype=float)
    env = _envelope(spec, y_arr)
    if spec.kind == "laguerre":
        poly = orthopoly.laguerre_sequence(spec.family(), n, y_arr)[n]
    else:
        poly = orthopoly.jacobi_sequence(spec.family(), n, y_arr)[n]
    val = normalization(spec, n) * env * poly
    if not np.all(np.isfinite(val)):
        raise OverflowError("basis value overflowed; reduce n or move y inward")
    return val if val.ndim else float(val)


def scaled_polynomials(spec: BasisSpec, nmax: int, y):
    """A_n * (polynomial part of phi_n) for n = 0..nmax, envelope stripped.
    Shared by the quadrature-based overlap and wave-operator integrals."""
    y_arr = np.asarray(y, dtype=float)
    if spec.kind == "laguerre":
        seq = orthopoly.laguerre_sequence(spec.family(), nmax, y_arr)
    else:
        seq = orthopoly.jacobi_sequence(spec.family(), nmax, y_arr)
    norms = np.array([normalization(spec, n) for n in range(nmax + 1)])
    return norms[:, None] * seq.reshape(nmax + 1, -1)


# ---------------------------------------------------------------------------
# Overlaps by Gauss quadrature
# ---------------------------------------------------------------------------

_EXTRA_SHIFTS = {
    None: 0.0,
    "y": 1.0,
    "1/y": -1.0,
    "1-y": 1.0,
    "1+y": 1.0,
}


def _pair_weight(spec: BasisSpec, cmap: CoordinateMap, extra=None):
    """Weight id under which phi_m phi_n (x extra) d(mu) is weight * polynomial."""
    if extra not in _EXTRA_SHIFTS:
        raise ParameterDomainError("extra factor must be one of %s" % list(_EXTRA_SHIFTS))
    if spec.kind == "laguerre":
        if cmap.kind == "oscillator":
            expo = 2.0 * spec.alpha - 0.5
        elif cmap.kind == "morse":
            expo = 2.0 * spec.alpha - 1.0
        else:
            raise ParameterDomainError("laguerre basis pairs with oscillator or morse maps")
        if extra in ("1-y", "1+y"):
            raise ParameterDomainError("extra factor %r applies to the jacobi basis" % extra)
        expo += _EXTRA_SHIFTS[extra]
        if not expo > -1.0:
            raise DomainError(
                "overlap weight exponent %.3g <= -1; the integral diverges" % expo)
        return ("laguerre", expo)
    if cmap.kind != "rosen_morse":
        raise ParameterDomainError("jacobi basis pairs with the rosen_morse map")
    if extra in ("y", "1/y"):
        raise ParameterDomainError("extra factor %r applies to the laguerre basis" % extra)
    a_w = 2.0 * spec.beta - 1.0 + (1.0 if extra == "1-y" else 0.0)
    b_w = 2.0 * spec.alpha - 1.0 + (1.0 if extra == "1+y" else 0.0)
    if not (a_w > -1.0 and b_w > -1.0):
        raise DomainError("overlap weight exponents (%.3g, %.3g) leave the integrable "
                          "range" % (a_w, b_w))
    return ("jacobi", a_w, b_w)


def overlap_matrix(spec: BasisSpec, cmap: CoordinateMap, nmax: int, extra=None,
                   n_nodes=None):
    """Gram matrix <phi_m | extra | phi_n> for m, n <= nmax under the map's
    measure, by a Gauss rule of the matching weight (exact up to roundoff)."""
    min_nodes = nmax + 2
    if n_nodes is None:
        n_nodes = min_nodes
    if 2 * n_nodes - 1 < 2 * nmax + 1:
        raise QuadratureOrderError(
            "rule with %d nodes cannot integrate degree %d exactly"
            % (n_nodes, 2 * nmax + 1))
    rule = oracle.gauss_rule(_pair_weight(spec, cmap, extra), n_nodes)
    vals = scaled_polynomials(spec, nmax, rule.nodes)
    weighted = vals * rule.weights[None, :]
    return (weighted @ vals.T) / cmap.lam


def overlap(spec: BasisSpec, cmap: CoordinateMap, m: int, n: int, extra=None,
            n_nodes=None):
    """<phi_m | extra | phi_n> under the map's measure; extra is one of
    None, "y", "1/y" (laguerre) or "1-y", "1+y" (jacobi).

    With the exponent constraint of the corresponding tridiagonal case, the
    appropriate choice of extra reproduces delta_{mn}: no extra factor for
    2*alpha = nu + 1/2 on the oscillator map, "1/y" for 2*alpha = nu + 3/2,
    "y" for nu = 2*alpha on the morse map, "1-y" on the rosen_morse map.
    """
    nmax = max(m, n)
    return float(overlap_matrix(spec, cmap, nmax, extra=extra, n_nodes=n_nodes)[m, n])


# ---------------------------------------------------------------------------
# Coefficient rescaling between the symmetric and polynomial representations
# ---------------------------------------------------------------------------

def coeff_transform(seq, spec: BasisSpec, direction: str):
    """Elementwise rescaling between wavefunction coefficients f_n and the
    polynomial-normalized coefficients d_n:

        f_n = sqrt(Gamma(n+1) / (lam Gamma(n+nu+1))) * d_n      (laguerre)

    i.e. f_n = (A_n / lam) d_n, and the same A_n/lam rule for the jacobi
    basis.  direction is "d_to_f" or "f_to_d"; the round trip is exact
    scaling by construction.
    """
    seq = np.asarray(seq, dtype=float)
    scale = np.array([normalization(spec, n) / spec.lam for n in range(seq.size)])
    if direction == "d_to_f":
        return seq * scale
    if direction == "f_to_d":
        return seq / scale
    raise ParameterDomainError("direction must be 'd_to_f' or 'f_to_d'")
