import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourcover.errors import (
    NeedsExtension, NegativeValuation,
    DivisionByIndistinguishableZero, InvalidInput,
)
from fourcover.tower import make_tower, Tower, Poly, refine_root, hensel_root, INF


def T(p=5, e=4, f=1, prec=50):
    return make_tower(p, e, f, prec)


class TestMakeTower:
    def test_examples(self):
        t = T(5, 4, 1, 50)
        assert t.tau().valuation() == Fraction(5, 4)
        assert t.tau() == t.pi_power(5)
        t2 = make_tower(7, 18, 1, 50)
        # tau^(1/3) = pi^7 since p/(3(p-1)) = 7/18
        assert t2.pi_power(7) ** 3 == t2.tau()
        with pytest.raises(InvalidInput):
            make_tower(2, 0, 1, 50)
        with pytest.raises(InvalidInput):
            make_tower(4, 1, 1, 50)

    def test_tau_needs_extension(self):
        t = make_tower(5, 3, 1, 30)
        with pytest.raises(NeedsExtension):
            t.tau()


class TestFromRational:
    def test_half_in_p5(self):
        t = T()
        x = t.from_rational(Fraction(1, 2))
        assert x.residue() == 3  # 2*3 = 1 mod 5

    def test_zero_marker(self):
        t = T()
        assert t.from_rational(0).valuation() == INF

    def test_p_squared(self):
        t = T()
        assert t.from_rational(25).valuation() == 2

    def test_roundtrip_reexpansion(self):
        lo = T(prec=20)
        hi = T(prec=40)
        rng = random.Random(3)
        for _ in range(25):
            q = Fraction(rng.randrange(-400, 400), rng.randrange(1, 120))
            if q == 0:
                continue
            a = lo.from_rational(q)
            b = hi.from_rational(q)
            assert a.digits() == b.digits(count=a.ap - a.s)


class TestValuation:
    def test_v_p(self):
        assert T().from_int(5).valuation() == 1

    def test_v_tau(self):
        t = T()
        assert t.tau().valuation() == Fraction(t.p, t.p - 1)

    def test_ultrametric_pi_plus_pi2(self):
        t = T()
        assert (t.pi() + t.pi_power(2)).valuation() == Fraction(1, 4)

    def test_insufficient(self):
        t = T(prec=8)
        x = t.pi_power(3) - t.pi_power(3)
        assert x.is_true_zero()
        y = t.one() + t.pi_power(20)  # beyond window once subtracted
        z = y - t.one() - t.pi_power(20)
        assert z.is_zeroish()

    def test_exact_cancellation_reexpands(self):
        # digit cancellation below the window, exact value survives
        t = T(prec=8)
        x = t.from_int(1) + t.from_int(624)  # 625 = 5^4
        assert x.valuation() == 4
        assert not x.is_zeroish()


class TestResidue:
    def test_basic(self):
        t = T()
        assert (t.one() + t.pi()).residue() == 1
        assert t.pi().residue() == 0
        with pytest.raises(NegativeValuation):
            t.from_rational(Fraction(1, 5)).residue()


class TestRingOps:
    def test_defining_relation(self):
        t = T()
        assert t.pi() * t.pi_power(t.e - 1) == t.from_int(-5)

    def test_sub_of_units(self):
        t = T()
        assert (t.one() + t.pi()) - t.one() == t.pi()

    def test_div_unit(self):
        t = T()
        for x in [t.from_int(7), t.one() + t.pi_power(3), t.from_rational(Fraction(2, 3))]:
            assert (x / x) == t.one()

    def test_div_by_zero(self):
        t = T()
        with pytest.raises(DivisionByIndistinguishableZero):
            t.one() / t.zero()

    def test_inverse_full_width_high_ramification(self):
        # Newton inversion starts one pi-digit deep; on a heavily
        # ramified tower it must still converge across the whole window
        t = make_tower(7, 24, 2, 24 * 24)
        x = t.one() + t.pi_power(3) * t.lift_ff(5) + t.pi_power(17)
        prod = x * x.inverse()
        assert (prod - t.one()).is_zeroish()
        y = t.sqrt(t.from_int(2) + t.pi())  # 2 = 3^2 mod 7
        assert (y * y - (t.from_int(2) + t.pi())).is_zeroish()

    @given(st.integers(-200, 200), st.integers(-200, 200), st.integers(-3, 8))
    @settings(max_examples=60, deadline=None)
    def test_valuation_laws(self, a, b, k):
        t = T(prec=40)
        if a == 0 or b == 0:
            return
        x = t.from_rational(Fraction(a)) * t.pi_power(k)
        y = t.from_int(b)
        assert (x * y).valuation() == x.valuation() + y.valuation()
        s = x + y
        if x.valuation() != y.valuation():
            assert s.valuation() == min(x.valuation(), y.valuation())
        elif not s.is_zeroish():
            assert s.valuation() >= x.valuation()

    def test_residue_is_homomorphism(self):
        t = T(5, 4, 2, 40)
        rng = random.Random(9)
        for _ in range(20):
            x = t.lift_ff(rng.randrange(t.ff.q)) + t.pi() * rng.randrange(5)
            y = t.lift_ff(rng.randrange(t.ff.q)) + t.pi_power(2) * rng.randrange(5)
            assert (x * y).residue() == t.ff.mul(x.residue(), y.residue())
            assert (x + y).residue() == t.ff.add(x.residue(), y.residue())


class TestSqrt:
    def test_sqrt9(self):
        t = T()
        r = t.sqrt(t.from_int(9))
        # exact rational squares keep the positive rational root (and the
        # exactness flag); inexact arguments use the least-residue branch
        assert r == t.from_int(3)
        assert r.exact is not None
        assert r * r == t.from_int(9)
        assert t.sqrt(t.from_int(4) + t.pi()).residue() == 2  # roots 2, 3

    def test_sqrt_needs_ramified(self):
        t = make_tower(5, 1, 1, 30)
        with pytest.raises(NeedsExtension) as ei:
            t.sqrt(t.from_int(5))
        assert ei.value.e == 2

    def test_sqrt_defining(self):
        t = make_tower(5, 2, 1, 30)
        r = t.sqrt(t.from_int(-5))
        assert r == t.pi() or r == -t.pi()

    def test_sqrt_unramified_extension(self):
        t = T()
        with pytest.raises(NeedsExtension) as ei:
            t.sqrt(t.from_int(2))  # 2 is not a square mod 5
        assert ei.value.f == 2

    def test_sqrt_precision_property(self):
        t = T(prec=40)
        rng = random.Random(5)
        for _ in range(10):
            n = rng.randrange(1, 200)
            x = t.from_int(n * n)
            y = t.sqrt(x)
            assert (y * y - x).is_zeroish()


class TestTeichmullerZeta:
    def test_teichmuller(self):
        t = T()
        for enc in range(1, 5):
            w = t.teichmuller(enc)
            assert w ** (t.ff.q - 1) == t.one()
            assert w.residue() == enc

    def test_unit_root_lift(self):
        t = T()
        # 2 generates F_5^*, so it is a primitive 4th root of unity
        w = t.unit_root_lift(4, 2)
        assert w ** 4 == t.one()
        assert not (w ** 2).same(t.one())
        assert w.residue() == 2
        with pytest.raises(InvalidInput):
            t.unit_root_lift(4, 0)

    def test_zeta(self):
        t = make_tower(3, 2, 1, 24)
        z = t.zeta()
        assert not z.same(t.one())
        assert z ** 3 == t.one()
        t5 = make_tower(5, 4, 1, 28)
        z5 = t5.zeta()
        assert z5 ** 5 == t5.one()
        assert not z5.same(t5.one())


class TestTokens:
    def test_parse(self):
        t = T()
        assert t.parse("tau^2") == t.tau() ** 2
        assert t.parse("5^3") == t.from_int(125)
        assert t.parse("3/7*pi^2") == t.from_rational(Fraction(3, 7)) * t.pi_power(2)
        assert t.parse("-2") == t.from_int(-2)
        assert t.parse("tau^2*pi^-1") == t.tau() ** 2 / t.pi()
        with pytest.raises(InvalidInput):
            t.parse("spam")

    def test_e_requirement(self):
        assert Tower.token_e_requirement(5, "tau^2") == 2
        assert Tower.token_e_requirement(5, "tau") == 4
        assert Tower.token_e_requirement(5, "7/3") == 1
        assert Tower.token_e_requirement(7, "tau^3") == 2


class TestEmbed:
    def test_exact_embed(self):
        small = T(5, 4, 1, 30)
        big = make_tower(5, 8, 1, 60)
        x = small.parse("tau^2*3/7")
        y = small.embed(x, big)
        assert y.valuation() == x.valuation()
        assert y == big.parse("tau^2*3/7")

    def test_digit_embed(self):
        small = T(5, 4, 1, 30)
        big = make_tower(5, 8, 2, 60)
        x = small.one() + small.pi() + small.pi_power(3) * 4
        y = small.embed(x, big)
        # strip exactness to force the digit path
        from fourcover.tower import El
        xx = El(small, x.s, x.U, x.ap, None)
        y2 = small.embed(xx, big)
        assert y2 == big.one() + big.pi_power(2) + big.pi_power(6) * 4
        assert y == y2

    def test_f_embed_roundtrip(self):
        small = make_tower(5, 2, 2, 30)
        big = make_tower(5, 4, 4, 60)
        a_small = small.lift_ff(small.ff.encode([0, 1]))  # the generator of F_25
        img = small.embed(a_small + small.pi(), big)
        # the image must satisfy the same minimal polynomial mod pi
        mod = small.modulus  # full monic coefficient list
        acc = big.zero()
        ai = img - big.pi_power(2)  # subtract the embedded pi
        for i, c in enumerate(mod):
            acc = acc + big.from_int(c) * ai ** i
        assert acc.residue() == 0


class TestPoly:
    def test_taylor_known_values(self):
        t = T()
        f = Poly.from_ints(t, [0, 0, 1])  # x^2
        sh = f.taylor(t.from_int(1), t.from_int(3))
        assert [c.exact[0] for c in sh.c] == [1, 6, 9]
        g = Poly.from_ints(t, [2, 0, 5, 1])
        assert g.taylor(t.from_int(4), t.zero()).degree == 0
        assert g.taylor(t.from_int(4), t.zero()).coeff(0) == g.eval(t.from_int(4))
        h = Poly.x_power(t, 5)  # x^p, p = 5
        sh = h.taylor(t.zero(), t.pi())
        assert sh.coeff(5) == t.pi_power(5)
        assert all(sh.coeff(i).is_true_zero() for i in range(5))

    def test_taylor_inverse(self):
        t = T(prec=40)
        rng = random.Random(1)
        f = Poly.from_ints(t, [rng.randrange(-9, 9) for _ in range(6)] + [1])
        d = t.from_int(3)
        b = t.from_int(2)
        sh = f.taylor(d, b)
        # invert: shift by -d/b after unscaling
        back = sh.taylor(t.zero(), b.inverse()).taylor(-d, t.one())
        for i in range(f.degree + 1):
            assert back.coeff(i) == f.coeff(i)

    def test_gauss_valuation(self):
        t = T()
        f = Poly(t, [t.from_int(25), t.pi(), t.from_int(75)])
        assert f.gauss_valuation() == Fraction(1, 4)
        assert Poly(t, []).gauss_valuation() == INF

    @given(st.lists(st.integers(-20, 20), min_size=1, max_size=5),
           st.lists(st.integers(-20, 20), min_size=1, max_size=5))
    @settings(max_examples=40, deadline=None)
    def test_gauss_multiplicative(self, ac, bc):
        t = T(prec=30)
        f = Poly.from_ints(t, ac)
        g = Poly.from_ints(t, bc)
        if not f.c or not g.c:
            return
        vf, vg = f.gauss_valuation(), g.gauss_valuation()
        assert (f * g).gauss_valuation() == vf + vg


class TestRoots:
    def test_hensel_simple(self):
        t = T()
        f = Poly.from_ints(t, [-2, 0, 1])  # x^2 - 2 has no root mod 5... use x^2 - 4
        f = Poly.from_ints(t, [-4, 0, 1])
        r = hensel_root(f, 2)
        assert r == t.from_int(2)

    def test_refine_quadratic(self):
        t = T(prec=40)
        lam = t.from_int(6)
        f = Poly(t, [lam, t.from_int(-7), t.one()])  # (x-1)(x-6)
        r = refine_root(f, t.from_int(1))
        assert f.eval(r).is_zeroish()
        assert r == t.one()
