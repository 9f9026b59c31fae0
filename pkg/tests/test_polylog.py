import random

import mpmath as mp
import pytest

from archow.polylog import PrecisionPolicy, bloch_wigner, li, trilog_sv

POLICY = PrecisionPolicy(bits=256)
TOL = mp.mpf(10) ** -62  # well inside 256 bits


def catalan_series_oracle(prec=300):
    """G = sum (-1)^k/(2k+1)^2, accelerated by pairing terms."""
    with mp.workprec(prec):
        return mp.nsum(lambda k: (-1) ** k / (2 * k + 1) ** 2, [0, mp.inf])


def zeta3_series_oracle(prec=300):
    with mp.workprec(prec):
        return mp.nsum(lambda k: 1 / k**3, [1, mp.inf])


def li2_series_oracle(z, prec=300):
    with mp.workprec(prec):
        return mp.nsum(lambda k: mp.mpc(z) ** k / k**2, [1, mp.inf])


class TestLi:
    def test_li2_at_one(self):
        with mp.workprec(256):
            assert abs(li(2, 1, POLICY) - mp.pi**2 / 6) < TOL

    def test_li2_at_zero(self):
        assert li(2, 0, POLICY) == 0

    def test_li3_at_one_vs_series(self):
        with mp.workprec(256):
            assert abs(li(3, 1, POLICY) - zeta3_series_oracle()) < TOL
            assert abs(li(3, 1, POLICY) - mp.mpf("1.2020569031595942854")) < mp.mpf("1e-18")

    def test_li2_vs_series_random(self):
        rng = random.Random(41)
        with mp.workprec(256):
            for _ in range(20):
                z = mp.mpc(rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6))
                assert abs(li(2, z, POLICY) - li2_series_oracle(z)) < TOL

    def test_li1(self):
        with mp.workprec(256):
            assert abs(li(1, mp.mpf("0.5"), POLICY) - mp.log(2)) < TOL
        with pytest.raises(ValueError):
            li(1, 1, POLICY)

    def test_weight_range(self):
        with pytest.raises(ValueError):
            li(4, 0.5, POLICY)


class TestBlochWigner:
    def test_catalan(self):
        with mp.workprec(300):
            got = bloch_wigner(mp.mpc(0, 1), POLICY)
            assert abs(got - catalan_series_oracle()) < TOL
            assert abs(got - mp.mpf("0.9159655941772190")) < mp.mpf("1e-15")

    def test_vanishes_on_reals(self):
        rng = random.Random(42)
        for _ in range(50):
            x = rng.uniform(-5, 5)
            assert bloch_wigner(x, POLICY) == 0
        assert bloch_wigner(0, POLICY) == 0
        assert bloch_wigner(1, POLICY) == 0

    def test_inversion(self):
        rng = random.Random(43)
        with mp.workprec(256):
            for _ in range(100):
                u = mp.mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
                if abs(u) < 1e-3:
                    continue
                assert abs(bloch_wigner(1 / u, POLICY) + bloch_wigner(u, POLICY)) < TOL

    def test_conjugation_antisymmetry(self):
        rng = random.Random(44)
        with mp.workprec(256):
            for _ in range(50):
                z = mp.mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
                assert abs(bloch_wigner(mp.conj(z), POLICY) + bloch_wigner(z, POLICY)) < TOL

    def test_five_term(self):
        rng = random.Random(45)
        with mp.workprec(256):
            for _ in range(100):
                x = mp.mpc(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
                y = mp.mpc(rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9))
                if abs(1 - x * y) < 1e-3:
                    continue
                s = (
                    bloch_wigner(x, POLICY)
                    + bloch_wigner(y, POLICY)
                    + bloch_wigner((1 - x) / (1 - x * y), POLICY)
                    + bloch_wigner(1 - x * y, POLICY)
                    + bloch_wigner((1 - y) / (1 - x * y), POLICY)
                )
                assert abs(s) < TOL


class TestTrilog:
    def test_at_one(self):
        with mp.workprec(256):
            assert abs(trilog_sv(1, POLICY) - mp.zeta(3)) < TOL

    def test_at_i(self):
        # Re sum i^k/k^3 = sum_m (-1)^m/(2m)^3 = -(3/32) zeta(3)
        with mp.workprec(300):
            oracle = mp.nsum(lambda m: (-1) ** m / (2 * m) ** 3, [1, mp.inf])
            got = trilog_sv(mp.mpc(0, 1), POLICY)
            assert abs(got - oracle) < TOL
            assert abs(got - (-mp.mpf(3) / 32 * mp.zeta(3))) < TOL
            assert abs(got - mp.mpf("-0.11269283467")) < mp.mpf("1e-11")

    def test_inversion_symmetry(self):
        rng = random.Random(46)
        with mp.workprec(256):
            for _ in range(60):
                z = mp.mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
                if abs(z) < 1e-3 or abs(z - 1) < 1e-3:
                    continue
                assert abs(trilog_sv(1 / z, POLICY) - trilog_sv(z, POLICY)) < TOL

    def test_conjugation_symmetry(self):
        rng = random.Random(47)
        with mp.workprec(256):
            for _ in range(50):
                z = mp.mpc(rng.uniform(-3, 3), rng.uniform(-3, 3))
                if abs(z) < 1e-3:
                    continue
                assert abs(trilog_sv(mp.conj(z), POLICY) - trilog_sv(z, POLICY)) < TOL

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            trilog_sv(0, POLICY)


class TestPolicy:
    def test_monotone_refinement(self):
        # doubling the precision never changes digits already claimed
        rng = random.Random(48)
        for _ in range(10):
            z = mp.mpc(rng.uniform(-2, 2), rng.uniform(0.1, 2))
            lo = PrecisionPolicy(bits=128)
            hi = PrecisionPolicy(bits=256)
            a = bloch_wigner(z, lo)
            b = bloch_wigner(z, hi)
            assert abs(a - b) < mp.mpf(2) ** -(128 - 8) * (1 + abs(b))
            a3 = trilog_sv(z, lo)
            b3 = trilog_sv(z, hi)
            assert abs(a3 - b3) < mp.mpf(2) ** -(128 - 8) * (1 + abs(b3))

    def test_validation(self):
        with pytest.raises(ValueError):
            PrecisionPolicy(bits=10)
        with pytest.raises(ValueError):
            PrecisionPolicy(guard_radius=0)
