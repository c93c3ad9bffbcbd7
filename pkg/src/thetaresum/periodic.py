"""Even mean-zero periodic functions supported on four residue classes.

The family handled here assigns +c on the residues {k1, M-k1} mod M, -c on
{k2, M-k2}, and 0 elsewhere.  It covers the sign characters chi_{2st}^{(n,m)}
attached to coprime (s,t) and everything the resummation pipeline consumes.
Also houses the sine-product transform f~, the index sets D(s,t), the finite
S-matrix, and exact verification of the combinatorial facts about them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, mpf, workprec

from .precision import DEFAULT_CTX, PrecisionContext, as_fraction, frac_to_mp


class ConfigError(ValueError):
    """Raised for structurally invalid periodic-function parameters."""


def _min_residue(k: int, M: int) -> int:
    """Representative of the class {k, -k} mod M inside 0..M//2."""
    r = k % M
    return min(r, M - r)


@dataclass(frozen=True)
class PeriodicFunction:
    """Even, mean-zero, period-M function with values in {+c, -c, 0}.

    ``c`` is kept as an exact Fraction whenever the input scale is rational;
    the residue table is stored as an integer sign pattern so that all exact
    arithmetic (Bernoulli sums, L-values) factors through ``c`` symbolically.
    """

    c: object  # Fraction (exact) or mpf scale
    M: int
    k1: int
    k2: int

    @property
    def is_exact(self) -> bool:
        return isinstance(self.c, Fraction)

    @property
    def pattern(self) -> tuple:
        return _pattern(self.M, self.k1, self.k2)

    @property
    def values(self) -> list:
        """Residue-indexed table over 0..M-1 (Fractions when c is exact)."""
        return [self.c * s for s in self.pattern]

    def sign(self, n: int) -> int:
        return self.pattern[n % self.M]

    def __call__(self, n: int):
        return self.c * self.pattern[n % self.M]

    @property
    def period(self) -> int:
        return self.M

    def value_at(self, n: int):
        # alias used by theta-series code paths that accept f or f~
        return self(n)

    def scale(self, factor) -> "PeriodicFunction":
        """Same sign pattern with c multiplied by an exact rational factor."""
        factor = as_fraction(factor)
        if factor == 0:
            raise ConfigError("scale factor must be nonzero")
        return PeriodicFunction(self.c * factor, self.M, self.k1, self.k2)


@lru_cache(maxsize=None)
def _pattern(M: int, k1: int, k2: int) -> tuple:
    row = [0] * M
    for r in (k1 % M, (-k1) % M):
        row[r] = 1
    for r in (k2 % M, (-k2) % M):
        row[r] = -1
    return tuple(row)


def make_periodic(c, M: int, k1: int, k2: int) -> PeriodicFunction:
    """Construct the four-residue function of (c, M, k1, k2).

    k1, k2 are normalised mod M to the minimal representatives of their
    +/- classes.  The four residue classes must be pairwise distinct; merged
    classes (e.g. k1 = -k1 mod M, or overlap between the +c and -c classes)
    are rejected as ambiguous configurations.
    """
    if M < 2:
        raise ConfigError(f"period M must be >= 2, got {M}")
    if not isinstance(c, (int, Fraction, str)):
        cval = mpf(c)
        if cval == 0:
            raise ConfigError("scale c must be nonzero")
    else:
        cval = as_fraction(c)
        if cval == 0:
            raise ConfigError("scale c must be nonzero")
    a = _min_residue(k1, M)
    b = _min_residue(k2, M)
    residues = {k1 % M, (-k1) % M, k2 % M, (-k2) % M}
    if len(residues) != 4:
        raise ConfigError(
            f"residue classes of k1={k1}, k2={k2} mod {M} collide; "
            "the piecewise definition would be ambiguous"
        )
    if a > b:
        # keep the stored pair ordered; swapping the classes flips the sign
        a, b = b, a
        cval = -cval
    return PeriodicFunction(cval, M, a, b)


@dataclass(frozen=True)
class ChiParams:
    """Index data (s, t, n, m) of the character chi_{2st}^{(n,m)}."""

    s: int
    t: int
    n: int
    m: int

    def __post_init__(self):
        if self.s < 1 or self.t < 1:
            raise ConfigError("s, t must be positive")
        if math.gcd(self.s, self.t) != 1:
            raise ConfigError(f"s={self.s} and t={self.t} must be coprime")
        if not (1 <= self.n <= self.s - 1):
            raise ConfigError(f"n must lie in 1..s-1, got n={self.n}")
        if not (1 <= self.m <= self.t - 1):
            raise ConfigError(f"m must lie in 1..t-1, got m={self.m}")


def chi_function(p: ChiParams) -> PeriodicFunction:
    """chi_{2st}^{(n,m)}: +1 on k = +-(nt-ms), -1 on k = +-(nt+ms) mod 2st."""
    M = 2 * p.s * p.t
    k1 = p.n * p.t - p.m * p.s
    k2 = p.n * p.t + p.m * p.s
    f = make_periodic(Fraction(1), M, k1, k2)
    # coprimality forces the four classes apart, so the sign never flips here
    assert f.c == 1
    return f


@dataclass(frozen=True)
class TildeFunction:
    """The transform f~(l) = (-1)^l sin((k2-k1) l pi/M) sin((M-k1-k2) l pi/M).

    Values are evaluated on demand at the current mpmath precision from exact
    rational multiples of pi.  Only periodicity with period dividing 2M is
    promised; the minimal period is detected and reported.
    """

    base: PeriodicFunction

    @property
    def M(self) -> int:
        return self.base.M

    def _angles(self, ell: int):
        M = self.M
        r1 = Fraction((self.base.k2 - self.base.k1) * ell, M) % 2
        r2 = Fraction((M - self.base.k1 - self.base.k2) * ell, M) % 2
        return r1, r2

    def __call__(self, ell: int) -> mpf:
        r1, r2 = self._angles(ell)
        sign = -1 if ell % 2 else 1
        return sign * mp.sinpi(frac_to_mp(r1)) * mp.sinpi(frac_to_mp(r2))

    def is_zero(self, ell: int) -> bool:
        """Exact zero test: f~(l) = 0 iff either sine argument is an integer."""
        M = self.M
        d1 = M // math.gcd(M, self.base.k2 - self.base.k1)
        d2 = M // math.gcd(M, M - self.base.k1 - self.base.k2)
        return ell % d1 == 0 or ell % d2 == 0

    @property
    def first_support(self) -> int:
        ell = 1
        while self.is_zero(ell):
            ell += 1
            if ell > 2 * self.M:
                raise ConfigError("f~ vanishes identically on a full period")
        return ell

    @property
    def period(self) -> int:
        """Minimal period dividing 2M.

        Detected numerically over one full 2M window; the candidate values are
        fixed low-degree algebraic numbers, so an 80-bit comparison is decisive.
        """
        with workprec(80):
            window = [self(ell) for ell in range(4 * self.M + 1)]
            thresh = mpf(2) ** -60
            for d in _divisors(2 * self.M):
                if all(abs(window[ell + d] - window[ell]) < thresh
                       for ell in range(2 * self.M)):
                    return d
        return 2 * self.M

    def table(self, length: int = None) -> list:
        n = length if length is not None else self.period
        return [self(ell) for ell in range(n)]

    def partial_sum_peak(self) -> mpf:
        """max_n |sum_{l<=n} f~(l)| over one period (mean zero makes the
        partial sums periodic); used in Abel-summation tail bounds."""
        with workprec(max(mp.prec, 80)):
            acc = mpf(0)
            peak = mpf(0)
            for ell in range(1, self.period + 1):
                acc += self(ell)
                peak = max(peak, abs(acc))
            return peak

    def max_abs(self) -> mpf:
        return max(abs(v) for v in self.table(self.period + 1))

    @property
    def c(self):
        # the scale of the underlying f; f~ itself is scale-free
        return self.base.c


def _divisors(n: int):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def tilde_transform(f: PeriodicFunction) -> TildeFunction:
    return TildeFunction(f)


@dataclass(frozen=True)
class PairSet:
    """The index set D(s,t) of size (s-1)(t-1)/2."""

    s: int
    t: int
    pairs: tuple

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)


def pair_set(s: int, t: int) -> PairSet:
    """D(s,t) per the parity cases; odd-odd (s,t) returns the D1 convention."""
    if math.gcd(s, t) != 1:
        raise ConfigError(f"s={s}, t={t} must be coprime")
    if s < 2 or t < 2:
        raise ConfigError("need s, t >= 2 for a nonempty pair set")
    if s % 2 == 1 and t % 2 == 1:
        pairs = [(n, m) for n in range(1, (s - 1) // 2 + 1) for m in range(1, t)]
    elif s % 2 == 1:
        pairs = [(n, m) for n in range(1, (s - 1) // 2 + 1) for m in range(1, t)]
    else:
        pairs = [(n, m) for n in range(1, s) for m in range(1, (t - 1) // 2 + 1)]
    ps = PairSet(s, t, tuple(pairs))
    expected = (s - 1) * (t - 1) // 2
    if len(ps.pairs) != expected or len(set(ps.pairs)) != expected:
        raise AssertionError("pair set cardinality violates (s-1)(t-1)/2")
    return ps


def pair_set_alternative(s: int, t: int) -> PairSet:
    """For odd-odd (s,t): the D2 variant, target of the folding bijection."""
    if s % 2 == 0 or t % 2 == 0:
        raise ConfigError("alternative set only defined for odd-odd (s,t)")
    pairs = [(n, m) for n in range(1, s) for m in range(1, (t - 1) // 2 + 1)]
    return PairSet(s, t, tuple(pairs))


def fold_pair(s: int, t: int, n: int, m: int) -> tuple:
    """The bijection D1 -> D2: keep (n,m) in the shared corner, else reflect."""
    if 1 <= n <= (s - 1) // 2 and 1 <= m <= (t - 1) // 2:
        return (n, m)
    return (s - n, t - m)


def support_set(s: int, t: int) -> list:
    """The integers {+-(nt +- ms) : (n,m) in D(s,t)}; distinct by construction.

    A duplicate would contradict the distinctness lemma, so it is reported as
    an internal consistency failure rather than a user error.
    """
    ps = pair_set(s, t)
    out = []
    for (n, m) in ps:
        base = (n * t - m * s, n * t + m * s)
        for v in base:
            out.append(v)
            out.append(-v)
    if len(set(out)) != 2 * (s - 1) * (t - 1):
        raise AssertionError(
            f"support set of ({s},{t}) has duplicates; expected "
            f"{2 * (s - 1) * (t - 1)} distinct integers, got {len(set(out))}"
        )
    return sorted(out)


def s_matrix_entry(s: int, t: int, nm: tuple, nm2: tuple,
                   ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """sqrt(8/st) (-1)^{nm'+mn'+1} sin(nn't pi/s) sin(mm's pi/t)."""
    n, m = nm
    np_, mp_ = nm2
    with ctx.working():
        sign = -1 if (n * mp_ + m * np_ + 1) % 2 else 1
        a1 = Fraction(n * np_ * t, s) % 2
        a2 = Fraction(m * mp_ * s, t) % 2
        return (mp.sqrt(mpf(8) / (s * t)) * sign
                * mp.sinpi(frac_to_mp(a1)) * mp.sinpi(frac_to_mp(a2)))


def s_matrix(s: int, t: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Full matrix over D(s,t) x D(s,t), in pair_set order."""
    ps = pair_set(s, t)
    return [[s_matrix_entry(s, t, a, b, ctx) for b in ps] for a in ps]


@dataclass(frozen=True)
class DecompositionReport:
    s: int
    t: int
    nm: tuple
    max_residual: mpf
    tolerance: mpf
    failures: tuple  # (k, lhs, rhs) triples beyond tolerance
    support_ok: bool

    @property
    def passed(self) -> bool:
        return not self.failures and self.support_ok


def verify_decomposition(s: int, t: int, nm: tuple,
                         ctx: PrecisionContext = DEFAULT_CTX,
                         tol=None) -> DecompositionReport:
    """Check chi~^{(n,m)}(k) = -sqrt(st/8) sum_{(n',m')} S chi^{(n',m')}(k)
    over every residue k mod 2st, plus the vanishing on multiples of s or t.
    """
    ps = pair_set(s, t)
    if tuple(nm) not in ps.pairs:
        raise ConfigError(f"{nm} is not in D({s},{t})")
    n, m = nm
    with ctx.working():
        tolv = ctx.tolerance() if tol is None else mpf(tol)
        tilde = tilde_transform(chi_function(ChiParams(s, t, n, m)))
        chis = [chi_function(ChiParams(s, t, a, b)) for (a, b) in ps]
        row = [s_matrix_entry(s, t, nm, other, ctx) for other in ps]
        pref = -mp.sqrt(mpf(s * t) / 8)
        M = 2 * s * t
        failures = []
        worst = mpf(0)
        support_ok = True
        for k in range(M):
            lhs = tilde(k)
            rhs = pref * mp.fsum(row[i] * chis[i].sign(k) for i in range(len(row)))
            gap = abs(lhs - rhs)
            worst = max(worst, gap)
            if gap > tolv:
                failures.append((k, lhs, rhs))
            if k % s == 0 or k % t == 0:
                if abs(lhs) > tolv or abs(rhs) > tolv:
                    support_ok = False
        return DecompositionReport(s, t, tuple(nm), worst, tolv,
                                   tuple(failures), support_ok)
