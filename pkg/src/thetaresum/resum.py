"""Lateral and median Borel-Laplace resummation, and its boundary values.

The lateral sums integrate e^{-px} against the closed-form Borel transform
along rays at angle +-theta.  Each ray integral is split into the first three
Taylor moments of (1 - p/(b A_l))^{-5/2} (evaluated exactly; their l-sums are
Hurwitz zeta values) plus an adaptive quadrature of the remainder, whose
l-tail decays like l^{-10}.  The median admits the convergent special-function
form

    S_med(x) = (4 M c / pi^{3/2}) sum_l (f~(l)/l^2) E((l pi/M) sqrt(b x)),

with E(y) = (2 y^3 D(y) - y^2)/sqrt(pi) built on the Dawson integral D, and
the jump S+ - S- across the positive axis is an explicit theta series.  At the
natural-boundary points x = -1/(2 pi i alpha) the median takes the closed form
combining a vertical theta integral with a theta radial limit; all fractional
powers are principal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf, mpc, workprec

from .exact import FormalSeries
from .periodic import TildeFunction
from .precision import (DEFAULT_CTX, Estimate, PrecisionContext, as_fraction,
                        frac_to_mp, richardson_limit)
from .qseries import DomainError, ThetaSpec, VerticalTheta, theta_radial_limit


# ---------------------------------------------------------------------------
# Dawson integral and the E-function, valid on the whole complex plane.

def _dawson_maclaurin(y):
    """D(y) = sum_k (-2)^k y^{2k+1} / (2k+1)!! with cancellation guard bits.

    Terms peak near e^{|y|^2}, so |y|^2 log2(e) guard bits keep the rounded
    result correct at the ambient precision.
    """
    y = mpc(y)
    y2abs = abs(y) ** 2
    guard = int(y2abs * 1.4427) + 15
    with workprec(mp.prec + guard):
        y = mpc(y)
        term = y
        acc = y
        m2y2 = -2 * y * y
        k = 0
        floor = mpf(2) ** (-mp.prec + 5)
        while True:
            k += 1
            term = term * m2y2 / (2 * k + 1)
            acc += term
            if abs(term) < floor and k > y2abs:
                break
    return +acc if isinstance(acc, mpf) else mpc(acc)


def _dawson_asymptotic(y, eps):
    """Exact-recessive form for large |y|:

        D(y) = sigma i (sqrt(pi)/2) e^{-y^2} + sum_k (2k-1)!!/(2^{k+1} y^{2k+1})

    with sigma = sign(Im y); the series error carries a 2^k sector factor, so
    this is certified only when e^{-|y|^2/2} is below the target eps.
    Returns (value, error_bound).
    """
    y = mpc(y)
    sigma = 0 if y.imag == 0 else (1 if y.imag > 0 else -1)
    acc = mpc(0)
    t = 1 / (2 * y)
    inv2y2 = 1 / (2 * y * y)
    k = 0
    err = abs(t)
    while True:
        acc += t
        nxt = t * (2 * k + 1) * inv2y2
        bound = abs(nxt) * mpf(2) ** (k + 1)
        if bound < eps or abs(nxt) >= abs(t):
            err = bound
            break
        t = nxt
        k += 1
    rec = mpc(0)
    if sigma:
        rec = sigma * 1j * mp.sqrt(mp.pi) / 2 * mp.exp(-y * y)
    else:
        err += mp.sqrt(mp.pi) / 2 * abs(mp.exp(-y * y))
    return acc + rec, err


def dawson(y, ctx: PrecisionContext = DEFAULT_CTX):
    """Dawson integral D(y) = e^{-y^2} int_0^y e^{t^2} dt for complex y."""
    with ctx.working():
        y = mpc(y)
        cross = mpf(2) * mp.log(2) * (mp.prec + 30)
        if abs(y) ** 2 <= cross:
            val = _dawson_maclaurin(y)
        else:
            val, _ = _dawson_asymptotic(y, mpf(2) ** (-mp.prec - 10))
        return val if y.imag != 0 or isinstance(val, mpf) else val.real


def special_e(y, ctx: PrecisionContext = DEFAULT_CTX):
    """E(y) = (2 y^3 D(y) - y^2)/sqrt(pi).

    Small-to-moderate |y|: evaluated from the guarded Maclaurin Dawson value
    inside the same guarded precision (the y^2 cancellation costs the same
    number of bits the guard provides).  Large |y|: the rearranged series

        E(y) = sigma i y^3 e^{-y^2} + (1/sqrt(pi)) sum_{k>=1} (2k-1)!!/(2^k y^{2k-2})

    which is cancellation-free.
    """
    with ctx.working():
        y = mpc(y)
        if y == 0:
            return mpc(0)
        cross = mpf(2) * mp.log(2) * (mp.prec + 30)
        if abs(y) ** 2 <= cross:
            guard = int((abs(y) ** 2) * 1.4427) + 15
            with workprec(mp.prec + guard):
                y = mpc(y)
                d = _dawson_maclaurin(y)
                val = (2 * y ** 3 * d - y * y) / mp.sqrt(mp.pi)
            return mpc(val)
        return _special_e_large(y)


def _special_e_large(y):
    y = mpc(y)
    sigma = 0 if y.imag == 0 else (1 if y.imag > 0 else -1)
    acc = mpc(0)
    inv2y2 = 1 / (2 * y * y)
    t = mpf("0.5")  # k = 1 term: 1/2
    k = 1
    eps = mpf(2) ** (-mp.prec - 10)
    while True:
        acc += t
        nxt = t * (2 * k + 1) * inv2y2
        if abs(nxt) * mpf(2) ** k < eps or abs(nxt) >= abs(t):
            break
        t = nxt
        k += 1
    val = acc / mp.sqrt(mp.pi)
    if sigma:
        val += sigma * 1j * y ** 3 * mp.exp(-y * y)
    return val


def e_limit():
    """lim E(y) = 1/(2 sqrt(pi)) along directions |arg y| < pi/4."""
    return 1 / (2 * mp.sqrt(mp.pi))


# ---------------------------------------------------------------------------
# Shared l-sum helpers.

def tilde_dirichlet(tilde: TildeFunction, s: int) -> mpf:
    """sum_{l>=1} f~(l) l^{-s} as Hurwitz zeta values over one period."""
    M = tilde.M
    total = mpf(0)
    for r in range(1, M + 1):
        v = tilde(r)
        if v:
            total += v * mp.zeta(s, mpf(r) / M)
    return total / mpf(M) ** s


def tilde_dirichlet_blocks(tilde: TildeFunction, s: int, target,
                           ell_cap: int = 10_000_000) -> Estimate:
    """Direct period-grouped summation of sum f~(l) l^{-s} with an Abel bound.

    Partial sums of the mean-zero f~ are periodic, so the tail after a whole
    number of periods is bounded by 2 max_n |F(n)| (L+1)^{-s}.
    """
    peak = tilde.partial_sum_peak()
    P = tilde.period
    L = int((2 * peak / mpf(target)) ** (mpf(1) / s)) + 1
    L = P * (L // P + 1)
    if L > ell_cap:
        raise DomainError(f"block summation needs {L} terms, beyond the cap")
    table = tilde.table(P)
    acc = mpf(0)
    for ell in range(1, L + 1):
        v = table[ell % P]
        if v:
            acc += v / mpf(ell) ** s
    return Estimate(acc, 2 * peak / mpf(L + 1) ** s)


def _scale_mpf(c) -> mpf:
    return frac_to_mp(c) if isinstance(c, Fraction) else mpf(c)


# ---------------------------------------------------------------------------
# Lateral Borel sums.

@dataclass(frozen=True)
class LateralResult:
    value: mpc
    error: mpf
    side: str
    x: mpc
    budget_exhausted: bool = False


_BETA = (Fraction(1), Fraction(5, 2), Fraction(35, 8))  # (5/2)_k / k!, k = 0..2


def _remainder_r3(w):
    """R3(w) = (1-w)^{-5/2} - 1 - (5/2)w - (35/8)w^2, stable for small w."""
    if abs(w) > mpf("0.5"):
        return (1 - w) ** mpf("-2.5") - 1 - mpf("2.5") * w - mpf("4.375") * w * w
    # series sum_{k>=3} (5/2)_k/k! w^k, ratio < 3/4 on |w| <= 1/2
    coef = mpf("6.5625")  # (5/2)_3/3! = 105/16
    term = coef * w ** 3
    acc = term
    k = 3
    eps = mpf(2) ** (-mp.prec - 4)
    while abs(term) > eps * (1 + abs(acc)):
        term = term * w * (mpf("2.5") + k) / (k + 1)
        acc += term
        k += 1
    return acc


def lateral_sum(series: FormalSeries, x, side: str,
                ctx: PrecisionContext = DEFAULT_CTX) -> LateralResult:
    """S^side(x): ray Laplace integral of the Borel transform at angle +-theta.

    Decomposition per l-term (A_l = l^2 pi^2/M^2):

      int e^{-px} (A_l - p/b)^{-5/2} dp
        = A_l^{-5/2} [ sum_{j<3} beta_j (A_l b)^{-j} j!/x^{j+1}
                       + int e^{-px} R3(p/(A_l b)) dp ].

    The j-sums over l are Hurwitz zeta values (exact rearrangement); the R3
    integrals are adaptive quadratures for l <= L with an explicit l^{-10}
    tail bound, using |R3(w)| <= 44 |w|^3 on rays at angle pi/4.
    """
    if side not in ("plus", "minus", "+", "-"):
        raise ValueError("side must be 'plus' or 'minus'")
    sgn = 1 if side in ("plus", "+") else -1
    sname = "plus" if sgn == 1 else "minus"
    with ctx.working(20):
        x = mpc(x)
        if x.real == 0:
            raise DomainError("x must not lie on the imaginary axis")
        theta = mp.pi * frac_to_mp(Fraction(ctx.theta))
        ray = mp.exp(1j * sgn * theta)
        sig = (ray * x).real
        if sig <= 0:
            raise DomainError(
                f"Re(e^{{{sgn:+d}i theta}} x) = {sig} <= 0; ray integral diverges")

        f = series.f
        tilde = series.tilde
        M = f.M
        b = series.b
        c = _scale_mpf(f.c)
        pref = 3 * mp.pi * c / (M ** 2 * b)
        Apref = mp.pi ** 2 / M ** 2
        m2pi2 = mpf(M * M) / mp.pi ** 2

        cm = _scale_mpf(series.c_m) if isinstance(series.c_m, Fraction) else mpf(series.c_m)

        # exact moment part
        poly = mpc(0)
        for j, beta in enumerate(_BETA):
            w_s = tilde_dirichlet(tilde, 4 + 2 * j)
            poly += (frac_to_mp(beta) * mpf(b) ** (-j) * mp.factorial(j)
                     / x ** (j + 1) * m2pi2 ** (mpf("2.5") + j) * w_s)

        # adaptive head length from the l^{-10} tail bound
        target = ctx.tolerance() * mpf("0.1") + mpf(2) ** (-ctx.prec)
        fmax = tilde.max_abs()
        tail_const = abs(pref) * fmax * 264 / (sig ** 4 * mpf(b) ** 3) \
            * Apref ** mpf("-5.5") / 9
        L = max(6, tilde.first_support)
        while tail_const / mpf(L) ** 9 > target and L < ctx.ell_cap:
            L += 1
        budget_hit = tail_const / mpf(L) ** 9 > target
        tail_bound = tail_const / mpf(L) ** 9

        # the remainder quadratures only need the tolerance, not the full
        # context precision; run them at a tolerance-driven precision and
        # carry the corresponding roundoff allowance in the error estimate
        quad_prec = min(mp.prec, max(64, int(-3.33 * mp.log10(target)) + 36))
        quad_err = mpf(0)
        qsum = mpc(0)
        with workprec(quad_prec):
            U = (mp.log(10) * (-mp.log10(target) + 8)) / sig
            for ell in range(1, L + 1):
                tv = tilde(ell)
                if not tv:
                    continue
                Ab = Apref * ell * ell * b

                def g(u, _Ab=Ab):
                    p = ray * u
                    return ray * mp.exp(-p * x) * _remainder_r3(p / _Ab)

                val, qe = mp.quad(g, [0, 1 / sig, 8 / sig, U], error=True,
                                  maxdegree=ctx.quad_maxdegree)
                # analytic bound for the cut-off piece beyond U
                cut = 44 / Ab ** 3 * mp.exp(-sig * U) * (
                    U ** 3 / sig + 3 * U ** 2 / sig ** 2 + 6 * U / sig ** 3 + 6 / sig ** 4)
                coeff = ell * tv * (Apref * ell * ell) ** mpf("-2.5")
                qsum += coeff * val
                quad_err += abs(coeff) * (qe + cut + abs(val) * mpf(2) ** (-quad_prec + 8))

        value = cm + pref * (poly + qsum)
        err = abs(pref) * quad_err + tail_bound + abs(value) * mpf(2) ** (-ctx.prec)
        return LateralResult(value, err, sname, x, budget_hit)


# ---------------------------------------------------------------------------
# Median resummation (convergent special-function series).

def median_sum(series: FormalSeries, x, ctx: PrecisionContext = DEFAULT_CTX) -> LateralResult:
    """S_med(x) on Re x > 0 via the E-function series.

    The absolutely convergent rearrangement used here subtracts the limit
    E_inf = 1/(2 sqrt(pi)) termwise; the constant part reproduces C_M through
    the l^{-2} Dirichlet sum of f~ (summed exactly by Hurwitz zeta values,
    independently of the Bernoulli route).
    """
    with ctx.working(20):
        x = mpc(x)
        if x.real <= 0:
            raise DomainError("median sum defined on Re x > 0")
        f = series.f
        tilde = series.tilde
        M, b = f.M, series.b
        c = _scale_mpf(f.c)
        sq = mp.sqrt(b * x)
        rho = mp.pi * sq / M          # y_l = rho * l
        tau = (mp.pi ** 2 * b / M ** 2) * x.real   # Re y_l^2 = tau l^2
        pref = 4 * M * c / mp.pi ** mpf("1.5")
        einf = e_limit()

        cm_num = (2 * M * c / mp.pi ** 2) * tilde_dirichlet(tilde, 2)

        fmax = tilde.max_abs()
        target = ctx.tolerance() * mpf("0.1") + mpf(2) ** (-ctx.prec)

        def tail_bound(L):
            # algebraic part: |E - E_inf - i sigma y^3 e^{-y^2}| <= 3 kappa/(4 sqrt(pi) |y|^2)
            alg = (mpf(3) * 2 / (4 * mp.sqrt(mp.pi))) * fmax \
                * (M ** 2 / (mp.pi ** 2 * b * abs(x))) / (3 * mpf(L) ** 3)
            # oscillatory part: sum_{l>L} fmax rho^3 l e^{-tau l^2}
            gauss = fmax * abs(rho) ** 3 * (
                mp.exp(-tau * L * L) / (2 * tau)
                + mp.sqrt(mp.pi / tau) / 2 * mp.erfc(mp.sqrt(tau) * L))
            return abs(pref) * (alg + gauss)

        L = max(8, int(2 / abs(rho)) + 1, tilde.first_support + 1)
        while tail_bound(L) > target and L < ctx.ell_cap:
            L = min(2 * L, ctx.ell_cap)
        budget_hit = tail_bound(L) > target

        acc = mpc(0)
        for ell in range(1, L + 1):
            tv = tilde(ell)
            if not tv:
                continue
            ee = special_e(rho * ell, ctx)
            acc += tv / mpf(ell) ** 2 * (ee - einf)
        value = cm_num + pref * acc
        err = tail_bound(L) + abs(value) * mpf(2) ** (-ctx.prec)
        return LateralResult(mpc(value), err, "median", x, budget_hit)


def optimal_truncation(series: FormalSeries, x):
    """Partial sum of sum a_n x^{-n} truncated at the smallest term.

    Returns (value, first_omitted_magnitude, index); Watson's-lemma oracle.
    """
    x = mpc(x)
    acc = mpc(0)
    best = None
    for n in range(series.count):
        an = series.a(n)
        av = frac_to_mp(an) if isinstance(an, Fraction) else mpf(an)
        term = av * x ** (-n)
        if best is not None and abs(term) > best[1]:
            return acc, abs(term), n
        acc += term
        best = (acc, abs(term), n)
    raise ValueError("series too short to reach its optimal truncation")


# ---------------------------------------------------------------------------
# Stokes discontinuity.

@dataclass(frozen=True)
class DiscontinuityResult:
    numeric: Estimate
    closed_form: Estimate
    x: mpc

    @property
    def difference(self) -> mpf:
        return abs(self.numeric.value - self.closed_form.value)


def disc_closed_form(series: FormalSeries, x, ctx: PrecisionContext = DEFAULT_CTX) -> Estimate:
    """2i (2 b pi x)^{3/2} (sqrt2 c/M^2) sum_l l f~(l) e^{-l^2 pi^2 b x / M^2}.

    The sum is the nu = 1 partial theta of f~ with modulus 4M^2 evaluated at
    2 pi i b x; here it is summed directly with a Gaussian tail bound.
    """
    with ctx.working(20):
        x = mpc(x)
        if x.real <= 0:
            raise DomainError("closed-form jump needs Re x > 0")
        f = series.f
        tilde = series.tilde
        M, b = f.M, series.b
        c = _scale_mpf(f.c)
        pref = 2j * (2 * b * mp.pi * x) ** mpf("1.5") * mp.sqrt(2) * c / M ** 2
        tau = mp.pi ** 2 * b / M ** 2 * x
        fmax = tilde.max_abs()
        target = ctx.tolerance() * mpf("0.01") + mpf(2) ** (-ctx.prec - 8)
        acc = mpc(0)
        ell = 1
        while True:
            tv = tilde(ell)
            if tv:
                acc += ell * tv * mp.exp(-tau * ell * ell)
            if ell % tilde.period == 0:
                rest = fmax * ((ell + 1) * mp.exp(-tau.real * (ell + 1) ** 2)
                               + mp.exp(-tau.real * ell ** 2) / (2 * tau.real))
                if abs(pref) * rest < target:
                    break
            ell += 1
        value = pref * acc
        return Estimate(value, abs(pref) * rest + abs(value) * mpf(2) ** (-ctx.prec))


def discontinuity(series: FormalSeries, x,
                  ctx: PrecisionContext = DEFAULT_CTX) -> DiscontinuityResult:
    """S+ - S- by quadrature vs. the explicit theta closed form."""
    with ctx.working(20):
        x = mpc(x)
        plus = lateral_sum(series, x, "plus", ctx)
        minus = lateral_sum(series, x, "minus", ctx)
        numeric = Estimate(plus.value - minus.value, plus.error + minus.error)
        closed = disc_closed_form(series, x, ctx)
        return DiscontinuityResult(numeric, closed, x)


# ---------------------------------------------------------------------------
# Boundary median values.

def boundary_median(series: FormalSeries, alpha,
                    ctx: PrecisionContext = DEFAULT_CTX) -> Estimate:
    """S_med at the boundary point x = -1/(2 pi i alpha), nonzero rational alpha.

        S_med = (c b e^{i pi/4} / (M pi (i alpha)^{3/2}))
                  * int_0^{+i inf} theta0_{0,4M^2,f~}(b p) (1/alpha + p)^{-3/2} dp
              + (b/(i alpha))^{3/2} (sqrt2 c / M^2) theta1_{0,4M^2,f~}(-b/alpha),

    all powers principal.  The integrand vanishes to all orders at p = 0
    (handled by the Poisson-side theta evaluator) and decays exponentially.
    """
    alpha = as_fraction(alpha)
    if alpha == 0:
        raise DomainError("alpha must be a nonzero rational")
    with ctx.working(20):
        f = series.f
        tilde = series.tilde
        M, b = f.M, series.b
        c = _scale_mpf(f.c)
        B = 4 * M * M
        vert = VerticalTheta(tilde, B, Fraction(0))
        inv_alpha = frac_to_mp(alpha) ** -1

        ell0 = tilde.first_support
        rate = mp.pi * b * ell0 ** 2 / (2 * M ** 2)
        V = (mp.log(2) * (mp.prec + 10)) / rate

        def integrand(v):
            th = vert.value(b * v)
            return 1j * th * (inv_alpha + 1j * v) ** mpf("-1.5")

        small = mpf(B) / (2 * tilde.period * b)
        pts = [mpf(0)]
        for sc in (mpf("0.01"), mpf("0.1"), mpf(1), mpf(10)):
            if small * sc < V:
                pts.append(small * sc)
        pts.append(V)
        kval, kerr = mp.quad(integrand, sorted(set(pts)), error=True,
                             maxdegree=ctx.quad_maxdegree)
        fmax = tilde.max_abs()
        tail = fmax * tilde.period * mp.exp(-rate * V) / rate * abs(inv_alpha) ** mpf("-1.5")
        t1_pref = c * b * mp.expjpi(mpf("0.25")) / (M * mp.pi * mpc(0, frac_to_mp(alpha)) ** mpf("1.5"))
        term1 = t1_pref * kval

        spec1 = ThetaSpec(a=0, b=B, nu=1, f=tilde)
        theta1 = theta_radial_limit(spec1, Fraction(-b, 1) / alpha, ctx)
        t2_pref = (mpf(b) / mpc(0, frac_to_mp(alpha))) ** mpf("1.5") * mp.sqrt(2) * c / M ** 2
        term2 = t2_pref * theta1.value

        value = term1 + term2
        err = abs(t1_pref) * (kerr + tail) + abs(t2_pref) * theta1.error \
            + abs(value) * mpf(2) ** (-ctx.prec)
        return Estimate(value, err)


def boundary_point(alpha) -> mpc:
    """The boundary point x = -1/(2 pi i alpha) = i/(2 pi alpha)."""
    alpha = as_fraction(alpha)
    return mpc(0, 1) / (2 * mp.pi * frac_to_mp(alpha))


def boundary_median_extrapolated(series: FormalSeries, alpha,
                                 ctx: PrecisionContext = DEFAULT_CTX,
                                 eps_values=(mpf("1e-2"), mpf("1e-3"), mpf("1e-4"))) -> Estimate:
    """Interior oracle: Richardson of median_sum at x = boundary + eps."""
    alpha = as_fraction(alpha)
    with ctx.working(20):
        x0 = boundary_point(alpha)
        xs = [mpf(e) for e in eps_values]
        ys = [median_sum(series, x0 + e, ctx).value for e in xs]
        val, err = richardson_limit(xs, ys)
        return Estimate(val, err)
