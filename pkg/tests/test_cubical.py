import random

import pytest

from archow.field import Fe
from archow.cubical import (
    INF,
    AdmissibilityError,
    BoxPoint,
    Const,
    FormalCycle,
    Precycle,
    Rat,
    boundary,
    box_point,
    coface,
    codegeneracy,
    commutativity_homotopy,
    conj_cycle,
    curve,
    face,
    h_coord,
    h_pullback,
    is_degenerate,
    is_normalized,
    is_refined_normalized,
    multilinearity_curve,
    product,
    quartic_curve,
    rat1,
    totaro_curve,
    weight3_surfaces,
    z_generator,
)


def rand_fe(rng, lo=-9, hi=9, forbid=()):
    while True:
        x = Fe(rng.randint(lo, hi), rng.randint(lo, hi))
        if not any(x == f for f in forbid):
            return x


def rand_box_value(rng):
    # any box value: finite != 1, occasionally 0 or infinity
    r = rng.random()
    if r < 0.08:
        return INF
    if r < 0.16:
        return Fe(0)
    return rand_fe(rng, forbid=(Fe(1),))


def rand_box_point(rng, n):
    return BoxPoint(tuple(rand_box_value(rng) for _ in range(n)))


def rand_generic_point(rng, n):
    # off all faces (coordinates avoid 0, 1, infinity)
    return BoxPoint(tuple(rand_fe(rng, forbid=(Fe(0), Fe(1))) for _ in range(n)))


class TestTotaroBoundary:
    def test_paper_boundary(self):
        rng = random.Random(21)
        for _ in range(25):
            a = rand_fe(rng, forbid=(Fe(0), Fe(1)))
            ca = FormalCycle.of(totaro_curve(a))
            want = FormalCycle.of(BoxPoint((a, Fe(1) - a)))
            assert boundary(ca) == want

    def test_face_2_0(self):
        a = Fe(2, 3)
        ca = FormalCycle.of(totaro_curve(a))
        assert face(ca, 2, 0) == FormalCycle.of(BoxPoint((a, Fe(1) - a)))

    def test_face_3_0_discarded(self):
        # the fiber point at z = 1 has first coordinate 1, hence escapes box
        ca = FormalCycle.of(totaro_curve(Fe(2, 3)))
        assert face(ca, 3, 0).is_zero()

    def test_generic_point_misses_faces(self):
        pt = FormalCycle.of(box_point(Fe(2, 3), Fe(5)))
        for i in (1, 2):
            for j in (0, 1):
                assert face(pt, i, j).is_zero()

    def test_point_on_face_is_improper(self):
        pt = FormalCycle.of(box_point(Fe(0), Fe(5)))
        with pytest.raises(AdmissibilityError):
            face(pt, 1, 0)

    def test_normalized(self):
        ca = FormalCycle.of(totaro_curve(Fe(2, 3)))
        assert is_normalized(ca)
        assert not is_refined_normalized(ca)  # d_2^0 is the Steinberg point

    def test_const_infinity_coordinate_not_normalized(self):
        c = FormalCycle.of(curve(rat1(1, (Fe(0), 1)), Const(INF)))
        assert not is_normalized(c)


class TestMultilinearityCurve:
    def test_boundary(self):
        a, b = Fe(2, 3), Fe(-1, 1)
        c = FormalCycle.of(multilinearity_curve(a, b))
        want = (
            FormalCycle.of(BoxPoint((a,)))
            + FormalCycle.of(BoxPoint((b,)))
            - FormalCycle.of(BoxPoint((a * b,)))
        )
        assert boundary(c) == want

    def test_quartic_curve_boundary(self):
        # (z, (z-i)^4/(z-1)^4, 1-z): only face 4*{(i, 1-i)}
        i = Fe(0, 1)
        c = FormalCycle.of(quartic_curve(i))
        assert boundary(c) == 4 * FormalCycle.of(BoxPoint((i, Fe(1, -1))))

    def test_z_generator_is_cycle(self):
        assert boundary(z_generator(Fe(0, 1))).is_zero()


class TestSurfaces:
    def test_weight3_boundaries(self):
        # machine check of the hand-computed face structure of C', C'', Xi
        i = Fe(0, 1)
        cp, cpp, xi = weight3_surfaces(i)
        assert cp.arity == 2 and cp.codim == 3
        assert is_normalized(FormalCycle.of(cp))
        assert is_normalized(FormalCycle.of(cpp))
        assert is_normalized(FormalCycle.of(xi))

        i_ci = product(FormalCycle.of(box_point(i)), FormalCycle.of(totaro_curve(i)))
        e_i = FormalCycle.of(
            curve(rat1(1, (Fe(0), 1)), i, rat1(1, (i, 1), (Fe(0), -1)), rat1(-1, (Fe(1), 1)))
        )
        d_i = FormalCycle.of(
            curve(
                rat1(1, (Fe(0), 1)),
                rat1(1, (i, 1), (Fe(0), -1)),
                rat1(1, (Fe(0), 1)),
                rat1(-1, (Fe(1), 1)),
            )
        )
        assert boundary(FormalCycle.of(cp)) == i_ci + d_i
        assert boundary(FormalCycle.of(cpp)) == e_i + d_i
        assert boundary(FormalCycle.of(cp) - FormalCycle.of(cpp)) == i_ci - e_i

        f1 = FormalCycle.of(
            curve(i, rat1(1, (Fe(0), 1)), rat1(1, (i, 4), (Fe(1), -4)), Fe(1, -1))
        )
        f3 = FormalCycle.of(
            curve(rat1(1, (Fe(0), 1)), rat1(1, (i, 1), (Fe(0), -1)), i, rat1(-1, (Fe(1), 1)))
        )
        assert boundary(FormalCycle.of(xi)) == f1 + 4 * f3

    def test_dd_zero_on_surfaces(self):
        i = Fe(0, 1)
        for s in weight3_surfaces(i):
            assert boundary(boundary(FormalCycle.of(s))).is_zero()
        # also on a random formal combination
        cp, cpp, xi = weight3_surfaces(i)
        mix = 3 * FormalCycle.of(cp) - 5 * FormalCycle.of(cpp) + 2 * FormalCycle.of(xi)
        assert boundary(boundary(mix)).is_zero()

    def test_dd_zero_on_product_surfaces(self):
        rng = random.Random(22)
        for _ in range(10):
            a = rand_fe(rng, forbid=(Fe(0), Fe(1)))
            b = rand_fe(rng, forbid=(Fe(0), Fe(1)))
            s = product(
                FormalCycle.of(totaro_curve(a)), FormalCycle.of(totaro_curve(b))
            )
            assert boundary(boundary(s)).is_zero()


class TestEq3Identities:
    """The five identity families of the h^j coordinate maps."""

    def test_identities_random(self):
        rng = random.Random(23)
        checked = 0
        while checked < 1000:
            n = rng.randint(1, 5)
            pt = rand_box_point(rng, n)
            j = rng.randint(1, n)
            # d_j^0 h_j = d_{j+1}^0 h_j = Id
            assert h_coord(coface(pt, j, 0), j) == pt
            assert h_coord(coface(pt, j + 1, 0), j) == pt
            # d_j^1 h_j = d_{j+1}^1 h_j = s_j d_j^1
            lhs1 = h_coord(coface(pt, j, 1), j)
            lhs2 = h_coord(coface(pt, j + 1, 1), j)
            rhs = coface(codegeneracy(pt, j), j, 1)
            assert lhs1 == rhs and lhs2 == rhs
            # d_i^l h_j = h_{j-1} d_i^l (i < j), h_j d_{i-1}^l (i > j + 1);
            # in coordinates: h^j o d^i_l = d^i_l o h^(j-1) resp. d^(i-1)_l o h^j
            for ell in (0, 1):
                for i in range(1, j):
                    assert h_coord(coface(pt, i, ell), j) == coface(
                        h_coord(pt, j - 1), i, ell
                    )
                for i in range(j + 2, n + 2):
                    assert h_coord(coface(pt, i, ell), j) == coface(
                        h_coord(pt, j), i - 1, ell
                    )
            checked += 1


class TestHPullback:
    def test_shape(self):
        a = Fe(2, 3)
        hp = h_pullback(FormalCycle.of(BoxPoint((a,))), 1)
        want = FormalCycle.of(curve(rat1(1, (Fe(0), 1)), rat1(1, (a, 1), (Fe(1), -1))))
        assert hp == want

    def test_retraction_faces(self):
        rng = random.Random(24)
        for _ in range(30):
            n = rng.randint(1, 4)
            pt = rand_generic_point(rng, n)
            j = rng.randint(1, n)
            z = FormalCycle.of(pt)
            hp = h_pullback(z, j)
            assert face(hp, j, 0) == z
            assert face(hp, j + 1, 0) == z
            # infinity faces vanish for points off the faces (s_j d_j^1 = 0)
            assert face(hp, j, 1).is_zero()
            assert face(hp, j + 1, 1).is_zero()


class TestProduct:
    def test_point_concatenation(self):
        a, b = Fe(2, 3), Fe(1, -2)
        z = product(FormalCycle.of(BoxPoint((a,))), FormalCycle.of(BoxPoint((b,))))
        assert z == FormalCycle.of(BoxPoint((a, b)))

    def test_i_times_zi_is_five_dim(self):
        i = Fe(0, 1)
        z = product(FormalCycle.of(BoxPoint((i,))), z_generator(i))
        assert z.n == 4 and z.p == 3
        assert len(z.terms) == 2
        assert boundary(z).is_zero()

    def test_empty(self):
        z = FormalCycle.of(BoxPoint((Fe(2, 3),)))
        assert product(z, FormalCycle.zero(1, 1)).is_zero()

    def test_bilinear_associative(self):
        rng = random.Random(25)
        for _ in range(20):
            x = FormalCycle.of(rand_generic_point(rng, 1), rng.randint(-3, 3))
            y = FormalCycle.of(rand_generic_point(rng, 1), rng.randint(-3, 3))
            w = FormalCycle.of(rand_generic_point(rng, 2), rng.randint(-3, 3))
            assert product(x + y, w) == product(x, w) + product(y, w)
            assert product(product(x, y), w) == product(x, product(y, w))


class TestCommutativityHomotopy:
    def test_h0m_vanishes(self):
        z = FormalCycle.of(box_point(Fe(2, 3), Fe(5, 1)))
        assert commutativity_homotopy(z, 0, 2).is_zero()

    def test_zero_cycle(self):
        assert commutativity_homotopy(FormalCycle.zero(2, 2), 1, 1).is_zero()

    def test_eq44_h11(self):
        rng = random.Random(26)
        for _ in range(25):
            a = rand_fe(rng, forbid=(Fe(0), Fe(1)))
            b = rand_fe(rng, forbid=(Fe(0), Fe(1)))
            zw = product(
                FormalCycle.of(BoxPoint((a,))), FormalCycle.of(BoxPoint((b,)))
            )
            wz = product(
                FormalCycle.of(BoxPoint((b,))), FormalCycle.of(BoxPoint((a,)))
            )
            h = commutativity_homotopy(zw, 1, 1)
            # delta H_{1,1}(Z.W) = Z.W - (-1)^{1*1} W.Z
            assert boundary(h) == zw + wz


class TestDegeneracy:
    def test_constant_slot_line(self):
        g = curve(Fe(5, 1), rat1(1, (Fe(2), 1)))
        assert is_degenerate(g)

    def test_totaro_not_degenerate(self):
        assert not is_degenerate(totaro_curve(Fe(2, 3)))

    def test_zero_cycle_degenerate(self):
        assert is_degenerate(FormalCycle.zero(2, 1))

    def test_degenerate_surface(self):
        # (f(z1), z2, g(z1)): independent of the second box factor
        s = Precycle(
            (
                rat1(1, (Fe(2), 1)),
                Rat(Fe(1), ((2, Fe(0), 1),)),
                rat1(1, (Fe(3), 1)),
            )
        )
        assert is_degenerate(s)


class TestConjugation:
    def test_boundary_commutes_with_conjugation(self):
        rng = random.Random(27)
        for _ in range(20):
            a = rand_fe(rng, forbid=(Fe(0), Fe(1)))
            c = FormalCycle.of(totaro_curve(a))
            assert boundary(conj_cycle(c)) == conj_cycle(boundary(c))
        i = Fe(0, 1)
        for s in weight3_surfaces(i):
            fc = FormalCycle.of(s)
            assert boundary(conj_cycle(fc)) == conj_cycle(boundary(fc))
