"""Borel-transform layer: Taylor data, Hadamard oracle, singularities, evaluation."""

import math
from fractions import Fraction

import pytest
from mpmath import mp, mpf, mpc, workprec

from thetaresum.borel import (BranchCutError, SingularProximityError,
                              borel_coefficients, borel_eval, gfp_coefficients,
                              hadamard_g2_coefficients, hadamard_oracle,
                              singularity_set, trefoil_explicit_borel)
from thetaresum.config import config_chi, trefoil_strange
from thetaresum.precision import PrecisionContext

CTX = PrecisionContext(prec=128, tol=1e-12)
SER = trefoil_strange().series(40)


class TestCoefficients:
    def test_constant_term(self):
        assert borel_coefficients(SER, 1)[0] == Fraction(23, 24)

    def test_delta_part(self):
        assert SER.c_m == 1

    def test_gfp_rearrangement_agrees_exactly(self):
        a = borel_coefficients(SER, 30)
        b = gfp_coefficients(SER, 30)
        assert a == b

    def test_hadamard_product_exact(self):
        assert hadamard_oracle(SER, 31) == borel_coefficients(SER, 31)

    def test_hadamard_chi34_exact(self):
        ser = config_chi(3, 4, 1, 1).series(40)
        assert hadamard_oracle(ser, 31) == borel_coefficients(ser, 31)

    def test_g2_closed_form(self):
        # (1/b) 6 (1 - 4p/b)^{-5/2} has Taylor coefficients (2n+3)!/(n!(n+1)!) b^{-n-1}
        b = 24
        coeffs = hadamard_g2_coefficients(b, 21)
        assert coeffs[0] == Fraction(6, b)
        binom = Fraction(1)
        for n in range(21):
            expect = 6 * binom * Fraction(4, b) ** n * Fraction(1, b)
            assert coeffs[n] == expect
            assert coeffs[n] == Fraction(math.factorial(2 * n + 3),
                                         math.factorial(n) * math.factorial(n + 1) * b ** (n + 1))
            binom *= Fraction(5 + 2 * n, 2 * (n + 1))  # (5/2+n)/(n+1)

    def test_cost_guard(self):
        with pytest.raises(ValueError):
            hadamard_oracle(SER, 41)


class TestSingularities:
    def test_trefoil_positions(self):
        ss = singularity_set(SER)
        assert ss.indices(4) == [1, 5, 7, 11]
        with CTX.working():
            pos = ss.positions(3, CTX)
            for ell, p in zip([1, 5, 7], pos):
                assert abs(p - ell ** 2 * mp.pi ** 2 / 6) < mpf("1e-30")

    def test_excluded_multiples(self):
        ss = singularity_set(SER)
        td = ss.tilde
        for ell in (2, 3, 4, 6, 9, 12):
            assert td.is_zero(ell)

    def test_chi34_first(self):
        ser = config_chi(3, 4, 1, 1).series(4)
        with CTX.working():
            first = singularity_set(ser).first(CTX)
            assert abs(first - mp.pi ** 2 / 12) < mpf("1e-30")


class TestEval:
    def test_matches_taylor_at_zero(self):
        got = borel_eval(SER, mpc(0), CTX)
        with CTX.working():
            assert abs(got.value - mpf(23) / 24) < mpf("1e-30")

    def test_matches_explicit_trefoil_form(self):
        with CTX.working():
            for p in (mpc(0), mpc(-1), mpc(1, 1), mp.pi ** 2 / 12):
                a = borel_eval(SER, p, CTX)
                b = trefoil_explicit_borel(p, CTX)
                assert abs(a.value - b.value) < mpf("1e-12")

    def test_proximity_guard(self):
        with CTX.working():
            first = singularity_set(SER).first(CTX)
            with pytest.raises(SingularProximityError):
                borel_eval(SER, first, CTX)

    def test_cut_requires_side(self):
        with CTX.working():
            p = mp.pi ** 2 / 6 * mpf(2)  # between first and second singularity
            with pytest.raises(BranchCutError):
                borel_eval(SER, p, CTX)
            up = borel_eval(SER, p, CTX, side="+")
            dn = borel_eval(SER, p, CTX, side="-")
            # the two lateral branches are conjugate and genuinely differ
            assert abs(up.value - mp.conj(dn.value)) < mpf("1e-25")
            assert abs(up.value - dn.value) > mpf("0.1")

    def test_conjugation_symmetry(self):
        with CTX.working():
            for p in (mpc(1, 1), mpc(-2, "0.7"), mpc("0.3", "-0.4")):
                a = borel_eval(SER, p, CTX).value
                b = borel_eval(SER, mp.conj(p), CTX).value
                assert abs(a - mp.conj(b)) < mpf("1e-30")

    def test_jump_across_cut_is_single_term(self):
        # between the first two singularities only the l=1 term carries a
        # branch jump: G(p+i0) - G(p-i0) = 2i pref f~(1) |A - p/b|^{-5/2}
        with CTX.working():
            p = mp.pi ** 2 / 6 * mpf(2)
            up = borel_eval(SER, p, CTX, side="+").value
            dn = borel_eval(SER, p, CTX, side="-").value
            f = SER.f
            pref = 3 * mp.pi * mpf(-0.5) / (f.M ** 2 * SER.b)
            w = mp.pi ** 2 / f.M ** 2 - p / SER.b
            td = SER.tilde
            expect = 2j * pref * td(1) * abs(w) ** mpf("-2.5")
            assert abs((up - dn) - expect) < mpf("1e-25")

    def test_side_limits_match_offaxis_approach(self):
        # continuation around the first singularity: the +i0 evaluation agrees
        # with p + i eps as eps -> 0
        with CTX.working():
            p = mp.pi ** 2 / 6 * mpf(2)
            up = borel_eval(SER, p, CTX, side="+").value
            seq = [borel_eval(SER, mpc(p, eps), CTX).value
                   for eps in (mpf("1e-6"), mpf("1e-8"))]
            assert abs(seq[1] - up) < abs(seq[0] - up)
            assert abs(seq[1] - up) < mpf("1e-6")


class TestNearestDistance:
    def test_distance_respects_support_gaps(self):
        ss = singularity_set(SER)
        with CTX.working():
            base = mp.pi ** 2 / 6
            # p at the l=2 position: nearest true singularity is l=1
            p = 4 * base
            assert abs(ss.nearest_distance(p, CTX) - 3 * base) < mpf("1e-20")


class TestTaylorDiscAgreement:
    def test_eval_matches_taylor_inside_disc(self):
        # |p| below the first singularity: the truncated Taylor series (ratio
        # <= 1/2 with 88 terms) must agree with the closed-form evaluation
        from thetaresum.config import trefoil_strange
        tight = PrecisionContext(prec=128, tol=1e-24)
        deep = trefoil_strange().series(90)
        with tight.working():
            g = borel_coefficients(deep, 89)
            gv = [mpf(c.numerator) / c.denominator for c in g]
            for p in (mpc("0.4"), mpc(0, "0.6"), mp.pi ** 2 / 12):
                taylor = mp.fsum(gv[n] * mpc(p) ** n for n in range(89))
                got = borel_eval(deep, p, tight).value
                assert abs(got - taylor) < mpf("1e-18"), p
