"""Four-residue periodic functions, the sine transform, index sets, S-matrix."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, workprec

from thetaresum.periodic import (ChiParams, ConfigError, chi_function, fold_pair,
                                 make_periodic, pair_set, pair_set_alternative,
                                 s_matrix, s_matrix_entry, support_set,
                                 tilde_transform, verify_decomposition)
from thetaresum.precision import PrecisionContext

CTX = PrecisionContext(prec=80, tol=1e-12)


def coprime_pairs(bound):
    return [(s, t) for s in range(2, bound + 1) for t in range(2, bound + 1)
            if math.gcd(s, t) == 1]


class TestMakePeriodic:
    def test_trefoil_character_table(self):
        f = make_periodic(1, 12, 1, 5)
        assert f.values == [0, 1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1]

    def test_scale_absorbed(self):
        f = make_periodic(Fraction(-1, 2), 12, 1, 5)
        assert f(1) == Fraction(-1, 2)
        assert f(5) == Fraction(1, 2)
        assert f(3) == 0

    def test_normalisation_mod_m(self):
        # residues outside 0..M fold onto the same classes
        assert make_periodic(1, 12, 13, 5) == make_periodic(1, 12, 1, 5)
        assert make_periodic(1, 12, 1, 7) == make_periodic(1, 12, 1, 5)

    def test_swapped_classes_flip_scale(self):
        f = make_periodic(1, 12, 5, 11)
        assert f(1) == -1 and f(5) == 1

    def test_rejects_overlap(self):
        with pytest.raises(ConfigError):
            make_periodic(1, 12, 1, 11)  # k2 = -k1 mod 12
        with pytest.raises(ConfigError):
            make_periodic(1, 12, 6, 8)  # k1 = -k1 mod 12
        with pytest.raises(ConfigError):
            make_periodic(1, 1, 0, 1)

    def test_rejects_zero_scale(self):
        with pytest.raises(ConfigError):
            make_periodic(0, 12, 1, 5)

    @given(st.integers(4, 60), st.data())
    @settings(max_examples=120, deadline=None)
    def test_invariants_hold(self, M, data):
        k1 = data.draw(st.integers(1, M - 1))
        k2 = data.draw(st.integers(1, M - 1))
        classes = {k1 % M, (-k1) % M, k2 % M, (-k2) % M}
        if len(classes) != 4:
            with pytest.raises(ConfigError):
                make_periodic(1, M, k1, k2)
            return
        f = make_periodic(Fraction(3, 7), M, k1, k2)
        vals = f.values
        assert sum(vals) == 0
        assert all(vals[n] == vals[(M - n) % M] for n in range(M))
        assert sorted(v for v in vals if v) == \
            [-f.c if f.c > 0 else f.c] * 0 + sorted([f.c, f.c, -f.c, -f.c])


class TestChi:
    def test_chi_2_3(self):
        chi = chi_function(ChiParams(2, 3, 1, 1))
        assert chi == make_periodic(1, 12, 1, 5)

    def test_symmetry_example(self):
        assert chi_function(ChiParams(2, 3, 1, 2)) == chi_function(ChiParams(2, 3, 1, 1))

    def test_chi_3_4(self):
        chi = chi_function(ChiParams(3, 4, 2, 1))
        # nt - ms = 8 - 3 = 5, nt + ms = 11
        assert chi(5) == 1 and chi(11) == -1 and chi(13) == -1

    def test_symmetry_exhaustive_small(self):
        for s, t in coprime_pairs(9):
            for n in range(1, s):
                for m in range(1, t):
                    assert chi_function(ChiParams(s, t, n, m)) == \
                        chi_function(ChiParams(s, t, s - n, t - m))

    def test_rejects_noncoprime(self):
        with pytest.raises(ConfigError):
            ChiParams(4, 6, 1, 1)


class TestTilde:
    def test_trefoil_values(self):
        td = tilde_transform(make_periodic(1, 12, 1, 5))
        with workprec(80):
            assert abs(td(1) + mp.sqrt(3) / 2) < mpf(2) ** -70
            assert td(6) == 0
            # support: odd l not divisible by 3
            for ell in range(1, 25):
                vanishes = (ell % 2 == 0) or (ell % 3 == 0)
                assert td.is_zero(ell) == vanishes
                assert (abs(td(ell)) < mpf(2) ** -70) == vanishes

    def test_period_divides_2m(self):
        for f in (make_periodic(1, 12, 1, 5), make_periodic(1, 24, 1, 7),
                  make_periodic(1, 10, 1, 3)):
            td = tilde_transform(f)
            assert (2 * f.M) % td.period == 0
            with workprec(80):
                for ell in range(0, 4 * f.M):
                    assert abs(td(ell + td.period) - td(ell)) < mpf(2) ** -70

    def test_mean_zero_over_period(self):
        with workprec(90):
            for f in (make_periodic(1, 12, 1, 5), make_periodic(1, 40, 3, 7)):
                td = tilde_transform(f)
                total = sum(td(ell) for ell in range(1, 2 * f.M + 1))
                assert abs(total) < mpf(2) ** -70


class TestPairSets:
    def test_examples(self):
        assert pair_set(2, 3).pairs == ((1, 1),)
        assert pair_set(3, 4).pairs == ((1, 1), (1, 2), (1, 3))
        assert len(pair_set(3, 5)) == 4

    def test_cardinality(self):
        for s, t in coprime_pairs(9):
            assert len(pair_set(s, t)) == (s - 1) * (t - 1) // 2

    def test_fold_bijection_odd_odd(self):
        for s, t in [(3, 5), (5, 7), (3, 7), (5, 9)]:
            image = {fold_pair(s, t, n, m) for (n, m) in pair_set(s, t)}
            assert image == set(pair_set_alternative(s, t).pairs)

    def test_support_set(self):
        assert support_set(2, 3) == [-5, -1, 1, 5]
        for s, t in [(2, 3), (3, 4), (3, 5), (2, 5), (4, 5), (3, 8)]:
            vals = support_set(s, t)
            assert len(vals) == 2 * (s - 1) * (t - 1)
            assert len(set(vals)) == len(vals)


class TestSMatrix:
    def test_trefoil_entry_is_one(self):
        with workprec(90):
            assert abs(s_matrix_entry(2, 3, (1, 1), (1, 1), CTX) - 1) < mpf(2) ** -70

    def test_symmetric(self):
        with workprec(90):
            for s, t in [(3, 4), (3, 5), (4, 5)]:
                for a in pair_set(s, t):
                    for b in pair_set(s, t):
                        d = s_matrix_entry(s, t, a, b, CTX) - s_matrix_entry(s, t, b, a, CTX)
                        assert abs(d) < mpf(2) ** -70

    def test_involution_3_4(self):
        with workprec(90):
            S = s_matrix(3, 4, CTX)
            n = len(S)
            for i in range(n):
                for j in range(n):
                    acc = mp.fsum(S[i][k] * S[k][j] for k in range(n))
                    assert abs(acc - (1 if i == j else 0)) < mpf("1e-18")


class TestDecomposition:
    def test_trefoil_all_residues(self):
        rep = verify_decomposition(2, 3, (1, 1), CTX, tol=mpf("1e-12"))
        assert rep.passed
        # spot value at k=1: both sides -sqrt(3)/2
        with workprec(80):
            td = tilde_transform(chi_function(ChiParams(2, 3, 1, 1)))
            assert abs(td(1) + mp.sqrt(3) / 2) < mpf(2) ** -70

    def test_3_4_pairs(self):
        for nm in pair_set(3, 4):
            assert verify_decomposition(3, 4, nm, CTX, tol=mpf("1e-12")).passed

    def test_invariant_small_products(self):
        # all (s,t) with s*t <= 40 at 64-bit precision
        ctx64 = PrecisionContext(prec=64, tol=1e-12)
        for s, t in coprime_pairs(20):
            if s * t > 40:
                continue
            for nm in pair_set(s, t):
                rep = verify_decomposition(s, t, nm, ctx64, tol=mpf("1e-12"))
                assert rep.passed, (s, t, nm, rep.max_residual)

    def test_rejects_outside_pairs(self):
        with pytest.raises(ConfigError):
            verify_decomposition(3, 4, (2, 1), CTX)


class TestPartialSumPeak:
    def test_peak_bounds_all_prefixes(self):
        with workprec(90):
            for f in (make_periodic(1, 12, 1, 5), make_periodic(1, 24, 1, 7)):
                td = tilde_transform(f)
                peak = td.partial_sum_peak()
                acc = mpf(0)
                worst = mpf(0)
                for ell in range(1, 6 * td.period + 1):
                    acc += td(ell)
                    worst = max(worst, abs(acc))
                assert worst <= peak + mpf(2) ** -60
