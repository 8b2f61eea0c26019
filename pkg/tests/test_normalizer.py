import random
from fractions import Fraction

import pytest

from fourcover.errors import (
    CoalescingBranchPoints, NonCyclicExponent, InvalidInput,
)
from fourcover.tower import make_tower, INF
from fourcover.normalizer import (
    INFPT, CoverDatum, FactoredCover, Moebius, parse_point,
    cross_ratio, cross_ratio_orbit, normalize, j_invariant, j_numerator,
)


def T(p=5, prec=48):
    return make_tower(p, p - 1, 1, prec)


def datum(tw, pts, exps, const=None):
    return CoverDatum(tw, pts, exps, const)


class TestParsePoint:
    def test_tokens(self):
        tw = T()
        assert parse_point(tw, "inf") is INFPT
        assert parse_point(tw, "3/7") == tw.from_rational(Fraction(3, 7))
        assert parse_point(tw, "tau^2") == tw.tau() ** 2


class TestCrossRatio:
    def test_standard(self):
        tw = T()
        lam = tw.from_int(3)
        assert cross_ratio(tw, tw.zero(), tw.one(), INFPT, lam) == lam

    def test_orbit_degenerate_two(self):
        tw = T(7)
        orb = cross_ratio_orbit(tw.from_int(2))
        vals = sorted(x.exact[0] for x in orb)
        assert vals == [Fraction(-1), Fraction(1, 2), Fraction(2)]

    def test_orbit_minus_one(self):
        tw = T(7)
        orb = cross_ratio_orbit(tw.from_int(-1))
        vals = sorted(x.exact[0] for x in orb)
        assert vals == [Fraction(-1), Fraction(1, 2), Fraction(2)]

    def test_orbit_generic(self):
        tw = T(7)
        orb = cross_ratio_orbit(tw.from_int(3))
        assert len(orb) == 6


class TestNormalize:
    def test_identity_witness(self):
        tw = T()
        lam = tw.from_int(3)
        d = datum(tw, [tw.zero(), tw.one(), INFPT, lam], [1, 2, 1, 1])
        n = normalize(d)
        assert n.lam == lam
        assert n.beta == 2 and n.gamma == 1
        assert n.u == 1
        assert n.witness.is_one()
        assert n.const.same(tw.one())

    def test_inversion_move(self):
        tw = T()
        d = datum(tw, [tw.zero(), tw.one(), INFPT, tw.from_rational(Fraction(1, 5))],
                  [1, 1, 2, 1])
        n = normalize(d)
        assert n.lam == tw.from_int(5)
        assert n.lam.valuation() == 1

    def test_one_minus_move(self):
        tw = T()
        lam = tw.one() + tw.from_int(5)  # residue 1
        d = datum(tw, [tw.zero(), tw.one(), INFPT, lam], [1, 1, 2, 1])
        n = normalize(d)
        assert n.lam == tw.from_int(-5)
        assert n.lam.valuation() == 1

    def test_qwerty_shape(self):
        tw = T()
        c1 = tw.one()
        c2 = tw.tau() ** 2
        p = tw.p
        d = datum(tw, [c1, -c1, c2, -c2], [p - 1, 1, p - 1, 1])
        n = normalize(d)
        # the admissible representative has v(lam) = v(tau^2) and gamma+1 = p
        assert n.lam.valuation() == Fraction(2 * p, p - 1)
        assert n.gamma == p - 1

    def test_errors(self):
        tw = T()
        with pytest.raises(NonCyclicExponent):
            datum(tw, [tw.zero(), tw.one(), INFPT, tw.from_int(3)], [5, 1, 2, 2])
        with pytest.raises(CoalescingBranchPoints):
            datum(tw, [tw.zero(), tw.zero(), INFPT, tw.from_int(3)], [1, 1, 2, 1])
        with pytest.raises(InvalidInput):
            datum(tw, [tw.zero(), tw.one(), INFPT, tw.from_int(3)], [1, 1, 2, 2])

    def test_random_covers_satisfy_invariants(self):
        tw = T()
        rng = random.Random(33)
        done = 0
        while done < 25:
            vals = rng.sample(range(-9, 12), 3)
            pts = [tw.from_int(v) for v in vals] + [INFPT]
            rng.shuffle(pts)
            exps = [rng.randrange(1, 5) for _ in range(3)]
            last = (-sum(exps)) % 5
            if last == 0:
                continue
            exps.append(last)
            try:
                d = datum(tw, pts, exps)
            except (CoalescingBranchPoints, InvalidInput):
                continue
            n = normalize(d)
            v = n.lam.valuation()
            assert v >= 0
            if v == 0:
                assert n.lam.residue() != 1
            assert 0 < n.beta < 5 and 0 < n.gamma < 5
            done += 1


class TestJInvariant:
    def test_closed_form_beta_gamma_one(self):
        # beta = gamma = 1: j = 4 p^(-2p/(3(p-1))) (lam^2 - lam + 1)
        tw = T(7)
        lam = tw.from_int(3)
        d = datum(tw, [tw.zero(), tw.one(), INFPT, lam], [1, 1, 4, 1])
        n = normalize(d)
        assert n.beta == 1 and n.gamma == 1
        num = j_numerator(n)
        assert num == tw.from_int(4 * (9 - 3 + 1))

    def test_valuation_2_9(self):
        tw = T(7)
        lam = tw.from_int(3)
        d = datum(tw, [tw.zero(), tw.one(), INFPT, lam], [1, 1, 4, 1])
        n = normalize(d)
        val, v = j_invariant(n)
        assert v == Fraction(2, 9)  # v_7(28) - 7/9
        assert val.valuation() == Fraction(2, 9)

    def test_negative_valuation_unit(self):
        tw = T(5)
        lam = tw.from_int(3)
        d = datum(tw, [tw.zero(), tw.one(), INFPT, lam], [1, 1, 2, 1])
        n = normalize(d)
        num = j_numerator(n)
        if num.valuation() == 0:
            _, v = j_invariant(n)
            assert v == -Fraction(2 * 5, 3 * 4)


class TestFactoredCover:
    def test_pullback_identity_sampling(self):
        tw = T()
        rng = random.Random(5)
        cover = FactoredCover(tw, tw.from_int(2),
                              [(tw.from_int(1), 2), (tw.from_int(3), 1),
                               (tw.from_int(-2), 2)])
        m = Moebius(tw.from_int(2), tw.from_int(3), tw.one(), tw.from_int(7))
        new, wit = cover.moebius_pullback(m)
        for _ in range(5):
            x = tw.from_int(rng.randrange(20, 200))
            lhs = cover.eval_rhs(m.apply(x))
            rhs = new.eval_rhs(x) * wit.eval(x) ** tw.p
            assert lhs.same(rhs)

    def test_rescale_identity(self):
        tw = T()
        cover = FactoredCover(tw, tw.from_int(3),
                              [(tw.from_int(1), 3), (tw.from_int(4), 4),
                               (tw.from_int(6), 3)])
        new, wit = cover.z_rescale(3)
        x = tw.from_int(11)
        assert (cover.eval_rhs(x) ** 3).same(new.eval_rhs(x) * wit.eval(x) ** tw.p)
