"""Working-precision context and error-carrying numeric results.

Every numeric operation in this package takes a PrecisionContext and returns
values together with an error estimate (truncation bounds plus a roundoff
allowance).  All internal arithmetic uses mpmath at ``prec + guard`` bits so
results rounded back to ``prec`` bits are dominated by the reported
truncation error, never by accumulated roundoff.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction

from mpmath import mp, mpf, mpc, workprec

DEFAULT_PREC_ENV = "THETARESUM_PREC"

# extra bits carried by every operation on top of ctx.prec
GUARD_BITS = 20


def default_prec() -> int:
    """Default precision in bits; overridable via the environment."""
    raw = os.environ.get(DEFAULT_PREC_ENV)
    if raw is None:
        return 128
    prec = int(raw)
    if prec < 24:
        raise ValueError(f"{DEFAULT_PREC_ENV} must be at least 24 bits, got {prec}")
    return prec


@dataclass(frozen=True)
class PrecisionContext:
    """Numeric policy: working precision, target tolerance and budgets.

    prec          working precision in bits
    tol           target absolute tolerance for truncated sums/integrals
    quad_maxdegree  degree limit handed to mpmath's adaptive quadrature
    theta         Laplace ray angle as a fraction of pi, in (0, 1/2)
    ell_cap       hard cap on the number of ell-terms in any f-tilde sum
    """

    prec: int = field(default_factory=default_prec)
    tol: float = 1e-8
    quad_maxdegree: int = 8
    theta: Fraction = Fraction(1, 4)
    ell_cap: int = 200_000

    def __post_init__(self):
        if self.prec < 24:
            raise ValueError("prec must be at least 24 bits")
        if not (0 < self.theta < Fraction(1, 2)):
            raise ValueError("ray angle must lie strictly between 0 and pi/2")
        if self.ell_cap < 16:
            raise ValueError("ell_cap too small to be useful")

    def with_tol(self, tol) -> "PrecisionContext":
        return replace(self, tol=tol)

    def with_prec(self, prec: int) -> "PrecisionContext":
        return replace(self, prec=prec)

    def working(self, extra: int = 0):
        """mpmath context manager at prec + guard (+ extra) bits."""
        return workprec(self.prec + GUARD_BITS + extra)

    @property
    def eps(self) -> mpf:
        """Unit roundoff at the context precision."""
        with workprec(self.prec + GUARD_BITS):
            return mpf(2) ** (-self.prec)

    def tolerance(self) -> mpf:
        with workprec(self.prec + GUARD_BITS):
            return mpf(self.tol)


DEFAULT_CTX = PrecisionContext()


@dataclass(frozen=True)
class Estimate:
    """A numeric value with an absolute error estimate."""

    value: mpc
    error: mpf

    def __iter__(self):
        return iter((self.value, self.error))

    def within(self, other, slack=0) -> bool:
        gap = abs(self.value - (other.value if isinstance(other, Estimate) else other))
        budget = self.error + (other.error if isinstance(other, Estimate) else 0) + slack
        return gap <= budget


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and exact decimal strings like '-1/2'."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def frac_to_mp(x: Fraction) -> mpf:
    return mpf(x.numerator) / x.denominator


def richardson_limit(xs, ys):
    """Neville extrapolation of samples (x_j, y_j) to x = 0.

    Assumes y(x) = y0 + c1*x + c2*x^2 + ...; xs should decrease geometrically.
    Returns (limit, error_estimate) where the estimate is the last tableau
    correction (standard heuristic for sequence transforms).
    """
    n = len(xs)
    if n != len(ys) or n < 2:
        raise ValueError("need matching xs/ys with at least two samples")
    tab = list(ys)
    corner = tab[0]
    err = abs(tab[0] - tab[1])
    for k in range(1, n):
        # ascending j so tab[j+1] still holds the previous-order value P_{j+1,k-1}
        for j in range(n - k):
            xa, xb = xs[j], xs[j + k]
            # Neville at 0: P_{j,k} = (xa P_{j+1,k-1} - xb P_{j,k-1})/(xa - xb)
            tab[j] = (xa * tab[j + 1] - xb * tab[j]) / (xa - xb)
        prev, corner = corner, tab[0]
        err = abs(corner - prev)
    return corner, err


def poly_fit_origin(xs, ys, ncoeff=None):
    """Exact polynomial interpolation coefficients c0, c1, ... at x = 0.

    Solves the Vandermonde system at the current mpmath precision.  Used to
    read off the first asymptotic-series coefficients from samples of a
    function along a geometric grid shrinking to 0.
    """
    n = len(xs)
    if ncoeff is None:
        ncoeff = n
    if ncoeff > n:
        raise ValueError("cannot extract more coefficients than samples")
    A = mp.matrix(n, n)
    rhs = mp.matrix(n, 1)
    for i, (x, y) in enumerate(zip(xs, ys)):
        p = mpf(1)
        for j in range(n):
            A[i, j] = p
            p = p * x
        rhs[i] = y
    sol = mp.lu_solve(A, rhs)
    return [sol[j] for j in range(ncoeff)]
