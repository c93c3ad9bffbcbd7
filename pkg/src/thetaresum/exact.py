"""Exact rational layer: Bernoulli polynomials, L-values, series coefficients.

For an even mean-zero period-M function f the asymptotic expansion of the
normalised theta sum around q = 1 has coefficients

    C_n = (-1)^n L(-2n-1, f),
    L(-2n-1, f) = -(M^{2n+1} / (2n+2)) * sum_{m=1}^{M} f(m) B_{2n+2}(m/M),

all computed here as exact Fractions (times the scale c).  The constant
C_M = -(M/2) sum f(m) B_2(m/M) coincides with C_0 and is cross-checked.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .periodic import PeriodicFunction, tilde_transform
from .precision import DEFAULT_CTX, PrecisionContext, richardson_limit


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not bad input."""


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials, exact and cached.

_BERNOULLI: list = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli_number(n: int) -> Fraction:
    """B_n (convention B_1 = -1/2), via the binomial recurrence, cached.

    Cache growth is idempotent and guarded by a lock so concurrent readers
    never observe a partially built table.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if n < len(_BERNOULLI):
        return _BERNOULLI[n]
    with _BERNOULLI_LOCK:
        while len(_BERNOULLI) <= n:
            m = len(_BERNOULLI)
            # sum_{j=0}^{m} C(m+1, j) B_j = 0  for m >= 1
            s = Fraction(0)
            for j in range(m):
                s += math.comb(m + 1, j) * _BERNOULLI[j]
            _BERNOULLI.append(-s / (m + 1))
    return _BERNOULLI[n]


def bernoulli_polynomial(k: int, x) -> Fraction:
    """B_k(x) for exact rational x, via the binomial sum over B_j."""
    if k < 0:
        raise ValueError("Bernoulli degree must be >= 0")
    x = Fraction(x)
    acc = Fraction(0)
    xpow = Fraction(1)
    # B_k(x) = sum_j C(k,j) B_{k-j} x^j, accumulated from j = 0 upward
    for j in range(k + 1):
        acc += math.comb(k, j) * bernoulli_number(k - j) * xpow
        xpow *= x
    return acc


# ---------------------------------------------------------------------------
# L-values and series coefficients.

def _pattern_bernoulli_sum(f: PeriodicFunction, degree: int) -> Fraction:
    """sum_{m=1}^{M} pattern(m) B_degree(m/M), exact (scale c factored out)."""
    M = f.M
    total = Fraction(0)
    for m in range(1, M + 1):
        s = f.sign(m)
        if s:
            total += s * bernoulli_polynomial(degree, Fraction(m, M))
    return total


def l_value(f: PeriodicFunction, n: int):
    """L(-2n-1, f) = -(M^{2n+1}/(2n+2)) sum_m f(m) B_{2n+2}(m/M).

    Exact Fraction when f carries a rational scale, otherwise an mpf multiple
    of the exact pattern sum.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    M = f.M
    kernel = -Fraction(M ** (2 * n + 1), 2 * n + 2) * _pattern_bernoulli_sum(f, 2 * n + 2)
    if f.is_exact:
        return f.c * kernel
    return f.c * mpf(kernel.numerator) / kernel.denominator


def constant_cm(f: PeriodicFunction):
    """C_M = -(M/2) sum_m f(m) B_2(m/M); equals the n = 0 coefficient."""
    kernel = -Fraction(f.M, 2) * _pattern_bernoulli_sum(f, 2)
    if f.is_exact:
        return f.c * kernel
    return f.c * mpf(kernel.numerator) / kernel.denominator


@dataclass(frozen=True)
class FormalSeries:
    """The divergent expansion sum_n (C_n / n!) (1/(b x))^n attached to f.

    C are exact Fractions (scale c rational) or mpf.  a(n) = C_n/(n! b^n)
    gives the coefficients of the 1/x power series handed to the Borel layer.
    """

    f: PeriodicFunction
    b: int
    a_shift: int  # the exponent shift a of the theta series; inert here
    C: tuple
    c_m: object

    @property
    def count(self) -> int:
        return len(self.C)

    def a(self, n: int):
        if n >= len(self.C):
            raise IndexError(f"coefficient {n} beyond computed range {len(self.C)}")
        return self.C[n] / (Fraction(math.factorial(n)) * Fraction(self.b) ** n)

    @property
    def tilde(self):
        return tilde_transform(self.f)


def series_coefficients(spec, count: int) -> FormalSeries:
    """Exact C_0..C_{count-1} for a theta spec (needs .f, .b, .a attributes).

    C_M is recomputed from the degree-2 Bernoulli sum and must equal C_0;
    a mismatch is an internal consistency failure.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    f = spec.f
    if not isinstance(f, PeriodicFunction):
        raise TypeError("series coefficients require the plain periodic f")
    C = tuple((-1) ** n * l_value(f, n) for n in range(count))
    cm = constant_cm(f)
    if C[0] != cm:
        raise ConsistencyError(f"C_M={cm} disagrees with C_0={C[0]}")
    return FormalSeries(f=f, b=spec.b, a_shift=spec.a, C=C, c_m=cm)


# ---------------------------------------------------------------------------
# Empirical Gevrey-1 growth fit.

@dataclass(frozen=True)
class GevreyFit:
    A: mpf
    B: mpf
    B_lsq: mpf           # slope fit of log(|a_n|/n!) against n
    radius: mpf          # extrapolated 1/B = Borel radius of convergence
    radius_expected: mpf  # b pi^2 l*^2 / M^2 from the f~ support


def gevrey_estimate(series: FormalSeries, count: int = None,
                    ctx: PrecisionContext = DEFAULT_CTX) -> GevreyFit:
    """Fit |a_n| <= A B^n n! empirically.

    B_lsq is the least-squares slope of log(|a_n|/n!) against n over the
    tail half of the coefficients; B refines it through Richardson-
    extrapolated ratios of the Borel coefficients g_n = a_{n+1}/n! (the
    subexponential n^{3/2} factor cancels in the ratios).  A caps
    |a_n| / (B^n n!) over the computed range.
    """
    n_max = series.count if count is None else min(count, series.count)
    if n_max < 10:
        raise ValueError("need at least 10 coefficients for a stable fit")
    with ctx.working():
        g = []
        for n in range(n_max - 1):
            an1 = series.a(n + 1)
            if isinstance(an1, Fraction):
                val = mpf(an1.numerator) / an1.denominator
            else:
                val = mpf(an1)
            g.append(val / mp.factorial(n))
        # ratio g_{n+1}/g_n -> 1/radius with O(1/n) corrections
        take = min(8, n_max - 3)
        idx = list(range(n_max - 1 - take, n_max - 2))
        xs = [mpf(1) / (k + 1) for k in idx]
        ys = [abs(g[k + 1] / g[k]) for k in idx]
        B, _ = richardson_limit(xs, ys)
        if not (B > 0 and mp.isfinite(B)):
            raise ConsistencyError(
                f"coefficient ratios do not stabilise (B fit = {B}); "
                "growth is not Gevrey-1, which indicates a bug upstream")
        radius = 1 / B
        # straight least-squares on the tail half: log|g_{n-1}| ~ logA + n logB
        lo = n_max // 2
        pts = [(mpf(n + 1), mp.log(abs(g[n]))) for n in range(lo, n_max - 1) if g[n]]
        nn = len(pts)
        sx = mp.fsum(p[0] for p in pts)
        sy = mp.fsum(p[1] for p in pts)
        sxx = mp.fsum(p[0] ** 2 for p in pts)
        sxy = mp.fsum(p[0] * p[1] for p in pts)
        slope = (nn * sxy - sx * sy) / (nn * sxx - sx ** 2)
        B_lsq = mp.exp(slope)
        ell0 = series.tilde.first_support
        expected = (mpf(series.b) * mp.pi ** 2 * ell0 ** 2) / series.f.M ** 2
        A = mpf(0)
        for n in range(n_max):
            an = series.a(n)
            aval = abs(mpf(an.numerator) / an.denominator) if isinstance(an, Fraction) else abs(mpf(an))
            A = max(A, aval / (B ** n * mp.factorial(n)))
        return GevreyFit(A=A, B=B, B_lsq=B_lsq, radius=radius,
                         radius_expected=expected)
