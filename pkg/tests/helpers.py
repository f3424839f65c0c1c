"""Independent mini-implementations used as test oracles.

Everything here is deliberately written from scratch against the textbook
definitions (series, products, Hermite recurrence) so the package's
recurrence-based evaluators are checked by a genuinely different route.
"""

import math

import numpy as np


def laguerre_series(nu, n, x):
    """L_n^nu(x) from the confluent-hypergeometric series
    Gamma(n+nu+1)/(n! Gamma(nu+1)) * 1F1(-n; nu+1; x)."""
    pref = math.exp(math.lgamma(n + nu + 1.0) - math.lgamma(n + 1.0)
                    - math.lgamma(nu + 1.0))
    total = 0.0
    term = 1.0
    for k in range(n + 1):
        if k > 0:
            term *= (-n + k - 1.0) / ((nu + k) * k) * x
        total += term
    return pref * total


def jacobi_series(mu, nu, n, x):
    """P_n^(mu,nu)(x) from the terminating 2F1 at argument (1-x)/2."""
    pref = math.exp(math.lgamma(n + mu + 1.0) - math.lgamma(n + 1.0)
                    - math.lgamma(mu + 1.0))
    z = 0.5 * (1.0 - x)
    total = 0.0
    term = 1.0
    for k in range(n + 1):
        if k > 0:
            term *= (-n + k - 1.0) * (n + mu + nu + k) / ((mu + k) * k) * z
        total += term
    return pref * total


def pollaczek_hyperbolic_series(mu, a, b, n, x):
    """Direct terminating-sum definition of the hyperbolic variant
    (prefactor * e^{-n theta} 2F1(-n, mu+z; 2mu; 1-e^{2 theta}))."""
    theta = math.acosh(x)
    z = (b + a * x) / math.sinh(theta)
    w = 1.0 - math.exp(2.0 * theta)
    pref = 1.0
    for j in range(n):
        pref *= (2.0 * mu + j) / (1.0 + j)
    total = 0.0
    term = 1.0
    for k in range(n + 1):
        if k > 0:
            term *= (-n + k - 1.0) * (mu + z + k - 1.0) / ((2.0 * mu + k - 1.0) * k) * w
        total += term
    return pref * math.exp(-n * theta) * total


def hermite_sequence(kmax, x):
    """Physicists' Hermite polynomials H_0..H_kmax by their recurrence."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = 2.0 * x
    for k in range(1, kmax):
        out[k + 1] = 2.0 * x * out[k] - 2.0 * k * out[k - 1]
    return out


def hermite_wavefunction(k, x, lam=1.0):
    """Unit-normalized oscillator eigenfunction built from H_k:
    sqrt(lam / (2^k k! sqrt(pi))) H_k(lam x) exp(-(lam x)^2 / 2)."""
    x = np.asarray(x, dtype=float)
    z = lam * x
    norm = math.exp(0.5 * (math.log(lam) - k * math.log(2.0) - math.lgamma(k + 1.0)
                           - 0.5 * math.log(math.pi)))
    return norm * hermite_sequence(k, z)[k] * np.exp(-0.5 * z * z)


def gamma_abs_squared_product(mu, y, terms=20000):
    """|Gamma(mu+iy)|^2 from the Euler-style product
    Gamma(mu)^2 prod_k (1 + y^2/(mu+k)^2)^(-1), truncated with an
    Euler-Maclaurin integral tail so the oracle itself is ~1e-13 accurate."""
    if y == 0.0:
        return math.gamma(mu) ** 2
    ks = np.arange(terms)
    head = float(np.sum(np.log1p(y * y / (mu + ks) ** 2)))
    u0 = mu + terms

    def antider(u):
        return u * math.log1p(y * y / (u * u)) + 2.0 * y * math.atan(u / y)

    integral = math.pi * abs(y) - antider(u0)
    f0 = math.log1p(y * y / (u0 * u0))
    fp = -2.0 * y * y / (u0 * (u0 * u0 + y * y))
    tail = integral + 0.5 * f0 - fp / 12.0
    return math.exp(2.0 * math.lgamma(mu) - head - tail)


def relative_deviation(computed, reference):
    """max |computed - reference| along the sequence, relative to the largest
    reference magnitude (avoids blowups at incidental zeros)."""
    computed = np.asarray(computed, dtype=float)
    reference = np.asarray(reference, dtype=float)
    scale = np.max(np.abs(reference))
    if scale == 0.0:
        return float(np.max(np.abs(computed)))
    return float(np.max(np.abs(computed - reference)) / scale)


def local_relative_deviation(computed, reference):
    """Per-element deviation relative to the neighborhood scale
    max(|ref_{n-1}|, |ref_n|, |ref_{n+1}|): strict for growing or decaying
    sequences yet safe at isolated zero crossings."""
    computed = np.asarray(computed, dtype=float)
    reference = np.asarray(reference, dtype=float)
    mags = np.abs(reference)
    local = mags.copy()
    local[:-1] = np.maximum(local[:-1], mags[1:])
    local[1:] = np.maximum(local[1:], mags[:-1])
    local = np.maximum(local, 1e-300)
    return float(np.max(np.abs(computed - reference) / local))
