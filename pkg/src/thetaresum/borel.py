"""Borel transform of the formal series: Taylor data, closed form, singularities.

The transform of sum a_n x^{-n} is a_0 delta + G(p), G(p) = sum_{n>=1} a_n
p^{n-1}/(n-1)!.  For the periodic-function series G has the closed form

    G(p) = (3 pi c / (M^2 b)) sum_{l>=1} l f~(l) / (l^2 pi^2/M^2 - p/b)^{5/2}

with singularities on the ray {b l^2 pi^2 / M^2 : f~(l) != 0}.  The Taylor
coefficients are also reproduced through the Hadamard factorisation
G = g1 (*) g2 with g2(p) = (1/b) 6 (1 - 4p/b)^{-5/2}, which serves as the
exact oracle for the transform machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, mpc

from .exact import ConsistencyError, FormalSeries, bernoulli_polynomial
from .periodic import TildeFunction
from .precision import DEFAULT_CTX, Estimate, PrecisionContext, frac_to_mp


class SingularProximityError(ValueError):
    """p fell within the guard distance of a Borel singularity."""


class BranchCutError(ValueError):
    """p lies on the cut ray beyond the first singularity and no side given."""


def borel_coefficients(series: FormalSeries, count: int):
    """Taylor coefficients of G: coefficient of p^n is a_{n+1}/n!, exact."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if count + 1 > series.count:
        raise ValueError("series holds too few coefficients; recompute with more")
    out = []
    for n in range(count):
        out.append(series.a(n + 1) / Fraction(math.factorial(n)))
    return out


def gfp_coefficients(series: FormalSeries, count: int):
    """Same coefficients from the rearranged double-sum formula.

    coeff(p^n) = M sum_m (-1)^n f(m) B_{2n+4}(m/M) (2n+3)!/((2n+4)! n!(n+1)!)
                 * (M^2/b)^{n+1}
    Kept as an independent code path; must agree with borel_coefficients.
    """
    f = series.f
    M = f.M
    out = []
    for n in range(count):
        kernel = Fraction(0)
        for m in range(1, M + 1):
            s = f.sign(m)
            if s:
                kernel += s * bernoulli_polynomial(2 * n + 4, Fraction(m, M))
        coeff = (Fraction(M) * (-1) ** n * kernel
                 * Fraction(math.factorial(2 * n + 3), math.factorial(2 * n + 4))
                 / (Fraction(math.factorial(n)) * math.factorial(n + 1))
                 * Fraction(M * M, series.b) ** (n + 1))
        out.append(f.c * coeff if f.is_exact else f.c * frac_to_mp(coeff))
    return out


def hadamard_g1_coefficients(series: FormalSeries, count: int):
    """g1 Taylor data: M^3 sum_m f(m) B_{2n+4}(m/M)/(2n+4)! * (-M^2)^n."""
    f = series.f
    M = f.M
    out = []
    for n in range(count):
        kernel = Fraction(0)
        for m in range(1, M + 1):
            s = f.sign(m)
            if s:
                kernel += s * bernoulli_polynomial(2 * n + 4, Fraction(m, M))
        coeff = (Fraction(M) ** 3 * kernel / math.factorial(2 * n + 4)
                 * Fraction(-M * M) ** n)
        out.append(f.c * coeff if f.is_exact else f.c * frac_to_mp(coeff))
    return out


def hadamard_g2_coefficients(b: int, count: int):
    """g2 Taylor data: (2n+3)!/(n!(n+1)!) b^{-(n+1)}, exact."""
    return [Fraction(math.factorial(2 * n + 3),
                     math.factorial(n) * math.factorial(n + 1)) * Fraction(1, b) ** (n + 1)
            for n in range(count)]


def hadamard_oracle(series: FormalSeries, count: int):
    """Coefficientwise product g1 (*) g2; equals borel_coefficients exactly."""
    if count > 40:
        raise ValueError("hadamard oracle capped at 40 coefficients (cost guard)")
    g1 = hadamard_g1_coefficients(series, count)
    g2 = hadamard_g2_coefficients(series.b, count)
    return [u * v for u, v in zip(g1, g2)]


@dataclass(frozen=True)
class SingularitySet:
    """The ray {b l^2 pi^2/M^2 : f~(l) != 0}, enumerated in increasing order.

    Membership uses the support of f~: a term with f~(l) = 0 vanishes
    identically in the closed form, so no singularity can sit there.
    """

    series: FormalSeries

    @property
    def tilde(self) -> TildeFunction:
        return self.series.tilde

    def indices(self, count: int):
        out = []
        ell = 1
        while len(out) < count:
            if not self.tilde.is_zero(ell):
                out.append(ell)
            ell += 1
        return out

    def positions(self, count: int, ctx: PrecisionContext = DEFAULT_CTX):
        with ctx.working():
            base = mpf(self.series.b) * mp.pi ** 2 / self.series.f.M ** 2
            return [base * ell * ell for ell in self.indices(count)]

    def first(self, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
        return self.positions(1, ctx)[0]

    def nearest_distance(self, p, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
        """Distance from p to the singularity set (exact minimisation)."""
        with ctx.working():
            p = mpc(p)
            base = mpf(self.series.b) * mp.pi ** 2 / self.series.f.M ** 2
            # singular ell nearest to sqrt(Re p / base), clamped to support
            guess = max(1, int(mp.sqrt(max(p.real, mpf(0)) / base)))
            best = mpf("inf")
            for ell in range(max(1, guess - self.series.f.M), guess + self.series.f.M + 2):
                if not self.tilde.is_zero(ell):
                    best = min(best, abs(p - base * ell * ell))
            return best


def singularity_set(series: FormalSeries) -> SingularitySet:
    return SingularitySet(series)


@dataclass(frozen=True)
class BorelClosedForm:
    """Closed-form evaluator data: prefactor 3 pi c/(M^2 b) and the term map
    l -> l f~(l) (l^2 pi^2/M^2 - p/b)^{-5/2} under the principal branch."""

    series: FormalSeries

    def prefactor(self) -> mpf:
        f = self.series.f
        c = frac_to_mp(f.c) if f.is_exact else mpf(f.c)
        return 3 * mp.pi * c / (f.M ** 2 * self.series.b)


def _tilde_dirichlet(tilde: TildeFunction, s: int, start_excluded: int = 0) -> mpc:
    """sum_{l > start} f~(l) l^{-s} via Hurwitz zeta over residues mod M."""
    M = tilde.M
    total = mpf(0)
    for r in range(1, M + 1):
        v = tilde(r)
        if v:
            total += v * mp.zeta(s, mpf(r) / M)
    total = total / mpf(M) ** s
    for ell in range(1, start_excluded + 1):
        v = tilde(ell)
        if v:
            total -= v * mpf(ell) ** (-s)
    return total


def borel_eval(series: FormalSeries, p, ctx: PrecisionContext = DEFAULT_CTX,
               side: str = None, guard_factor=mpf("1e-6")) -> Estimate:
    """Evaluate G(p) away from the singular set.

    The head of the l-sum is evaluated term by term (with the branch side
    applied on the cut); the tail, where |p| is small against the branch
    points, is resummed through the binomial expansion whose l-sums collapse
    to Hurwitz zeta values.  An explicit geometric remainder is returned.

    side: '+' or '-' selects the limit from Im p > 0 or Im p < 0 when p lies
    exactly on the cut ray beyond the first singularity.
    """
    with ctx.working(20):
        p = mpc(p)
        f = series.f
        tilde = series.tilde
        sing = singularity_set(series)
        gap = sing.nearest_distance(p, ctx)
        first = sing.first(ctx)
        if gap < guard_factor * first:
            raise SingularProximityError(
                f"p={p} is within guard distance {guard_factor * first} of a singularity")
        on_cut = (p.imag == 0 and p.real > first)
        if on_cut and side not in ("+", "-"):
            raise BranchCutError("p sits on the cut ray; pass side='+' or side='-'")

        base = mpf(series.b) * mp.pi ** 2 / f.M ** 2  # positions base * l^2
        # head must reach beyond the cut region and keep the tail ratio <= 1/2
        L = 1
        while base * (L + 1) ** 2 <= 2 * abs(p) or L < 2 * f.M:
            L += 1

        c = frac_to_mp(f.c) if f.is_exact else mpf(f.c)
        pref = 3 * mp.pi * c / (f.M ** 2 * series.b)
        A = mp.pi ** 2 / f.M ** 2

        head = mpc(0)
        for ell in range(1, L + 1):
            tv = tilde(ell)
            if not tv:
                continue
            w = A * ell * ell - p / series.b
            if w.imag == 0 and w.real < 0:
                # on the cut: apply the requested side (limit from Im p -> +-0
                # means Im w -> -+0)
                ang = -mp.pi if side == "+" else mp.pi
                wpow = mp.exp(mpf("2.5") * (mp.log(abs(w)) + 1j * ang))
            else:
                wpow = w ** mpf("2.5")
            head += ell * tv / wpow

        # tail: (A l^2 - p/b)^{-5/2} = (A l^2)^{-5/2} (1 - p/(b A l^2))^{-5/2}
        # expanded binomially; each power collapses to a Dirichlet sum of f~.
        # |term_j| <= binom_j ratio^j K with K = A^{-5/2} max|f~| / (3(L+1)^3)
        # and ratio = |p| / (b A (L+1)^2) <= 1/2 by the choice of L, so the
        # remainder after k terms is geometric with factor <= 1.75 ratio.
        tail = mpc(0)
        ratio = abs(p) / (series.b * A * (L + 1) ** 2)
        K = A ** mpf("-2.5") * tilde.max_abs() / (3 * mpf(L + 1) ** 3)
        target = ctx.tolerance() * mpf("0.01") + mpf(2) ** (-ctx.prec - 8)
        k = 0
        binom = mpf(1)  # (5/2)_k / k!
        while True:
            srv = _tilde_dirichlet(tilde, 4 + 2 * k, L)
            tail += binom * (p / series.b) ** k * srv * A ** (-mpf("2.5") - k)
            next_binom = binom * (mpf("2.5") + k) / (k + 1)
            bound = next_binom * ratio ** (k + 1) * K
            if k >= 2 and abs(pref) * bound / (1 - mpf("1.75") * ratio) < target:
                rem = bound / (1 - mpf("1.75") * ratio)
                break
            binom = next_binom
            k += 1
            if k > ctx.prec:
                raise ConsistencyError("borel tail expansion failed to converge")
        value = pref * (head + tail)
        err = abs(pref) * rem + abs(value) * mpf(2) ** (-ctx.prec)
        return Estimate(value, err)


def trefoil_explicit_borel(p, ctx: PrecisionContext = DEFAULT_CTX,
                           terms: int = None) -> Estimate:
    """The explicit trefoil transform (3 pi/(2 sqrt 2)) sum n (12|n) (n^2 pi^2/6 - p)^{-5/2}.

    Independent of the general machinery: the conductor-12 character table is
    inlined and the sum is truncated with its own zeta-accelerated tail.
    """
    chi12 = (0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1)
    with ctx.working(20):
        p = mpc(p)
        pref = 3 * mp.pi / (2 * mp.sqrt(2))
        L = 24
        while (mp.pi ** 2 / 6) * (L + 1) ** 2 <= 2 * abs(p):
            L += 12
        head = mpc(0)
        for n in range(1, L + 1):
            ch = chi12[n % 12]
            if ch:
                head += ch * n / (mpc(n * n) * mp.pi ** 2 / 6 - p) ** mpf("2.5")
        # tail via binomial expansion in p/(n^2 pi^2/6), summed with Hurwitz zeta
        tail = mpc(0)
        A = mp.pi ** 2 / 6
        ratio = abs(p) / (A * (L + 1) ** 2)
        K = A ** mpf("-2.5") / (3 * mpf(L + 1) ** 3)
        target = ctx.tolerance() * mpf("0.01") + mpf(2) ** (-ctx.prec - 8)
        binom = mpf(1)
        k = 0
        while True:
            zs = mpf(0)
            s = 4 + 2 * k
            for r in range(1, 13):
                if chi12[r % 12]:
                    zs += chi12[r % 12] * mp.zeta(s, mpf(r) / 12)
            zs = zs / mpf(12) ** s
            for n in range(1, L + 1):
                if chi12[n % 12]:
                    zs -= chi12[n % 12] * mpf(n) ** (-s)
            tail += binom * p ** k * zs * A ** (-mpf("2.5") - k)
            next_binom = binom * (mpf("2.5") + k) / (k + 1)
            bound = next_binom * ratio ** (k + 1) * K
            if k >= 2 and abs(pref) * bound / (1 - mpf("1.75") * ratio) < target:
                rem = bound / (1 - mpf("1.75") * ratio)
                break
            binom = next_binom
            k += 1
        value = pref * (head + tail)
        return Estimate(value, abs(pref) * rem + abs(value) * mpf(2) ** (-ctx.prec))
