import random

from fourcover.ffield import (
    FF, padd, pmul, pdivmod, pgcd, pfactor, proots,
    p_is_pth_power, p_pth_root, ppow, prender, pnormalize,
)


def test_field_axioms_f1():
    ff = FF(5, 1)
    assert ff.q == 5
    for x in ff.elements():
        assert ff.add(x, ff.neg(x)) == 0
        if x:
            assert ff.mul(x, ff.inv(x)) == 1


def test_field_axioms_f2():
    ff = FF(5, 2)
    assert ff.q == 25
    rng = random.Random(7)
    xs = [rng.randrange(ff.q) for _ in range(12)]
    for x in xs:
        for y in xs:
            assert ff.mul(x, y) == ff.mul(y, x)
            if y:
                assert ff.mul(ff.div(x, y), y) == x
    # distributivity spot check
    a, b, c = xs[0], xs[1], xs[2]
    assert ff.mul(a, ff.add(b, c)) == ff.add(ff.mul(a, b), ff.mul(a, c))


def test_modulus_deterministic():
    assert FF(3, 2).modulus == FF(3, 2).modulus
    # x^2 + 1 is the least irreducible over F_3
    assert FF(3, 2).modulus == (1, 0, 1)


def test_frobenius_and_sqrt():
    for (p, f) in [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 3)]:
        ff = FF(p, f)
        rng = random.Random(p * 10 + f)
        for _ in range(10):
            x = rng.randrange(ff.q)
            r = ff.pth_root(x)
            assert ff.pow(r, p) == x
            s = ff.sqrt(ff.mul(x, x))
            assert s is not None and ff.mul(s, s) == ff.mul(x, x)
        # non-squares have no root
        ns = [x for x in ff.elements() if x and not ff.is_square(x)]
        assert len(ns) == (ff.q - 1) // 2
        assert ff.sqrt(ns[0]) is None


def test_embedding():
    small, big = FF(5, 1), FF(5, 2)
    emb = small.embedding_into(big)
    for x in small.elements():
        for y in small.elements():
            assert emb(small.mul(x, y)) == big.mul(emb(x), emb(y))
            assert emb(small.add(x, y)) == big.add(emb(x), emb(y))
    m2, m4 = FF(3, 2), FF(3, 4)
    emb = m2.embedding_into(m4)
    for x in range(m2.q):
        for y in range(m2.q):
            assert emb(m2.mul(x, y)) == m4.mul(emb(x), emb(y))


def test_poly_divmod_and_gcd():
    ff = FF(7, 1)
    rng = random.Random(42)
    for _ in range(20):
        a = pnormalize([rng.randrange(7) for _ in range(rng.randrange(1, 8))])
        b = pnormalize([rng.randrange(7) for _ in range(rng.randrange(1, 5))])
        if not b:
            continue
        q, r = pdivmod(ff, a, b)
        assert padd(ff, pmul(ff, q, b), r) == a
        assert len(r) < len(b)
    g = pgcd(ff, pmul(ff, [1, 1], [3, 1]), pmul(ff, [1, 1], [5, 1]))
    assert g == [1, 1]


def test_factor_small():
    ff = FF(3, 1)
    # x^2 + 1 irreducible over F_3
    assert pfactor(ff, [1, 0, 1]) == [([1, 0, 1], 1)]
    # x^3 - x = x(x-1)(x+1)
    fac = pfactor(ff, [0, 2, 0, 1])
    assert sorted(f for f, _ in fac) == sorted([[0, 1], [2, 1], [1, 1]])
    # p-th powers factor with multiplicity p
    cube = ppow(ff, [1, 1], 3)
    assert pfactor(ff, cube) == [([1, 1], 3)]


def test_factor_random_roundtrip():
    ff = FF(5, 1)
    rng = random.Random(11)
    for _ in range(15):
        a = pnormalize([rng.randrange(5) for _ in range(rng.randrange(2, 9))])
        if len(a) < 2:
            continue
        prod = [ff.inv(a[-1])] if a[-1] != 1 else [1]
        prod = pmul(ff, [a[-1]], [1])
        acc = [a[-1]]
        for g, m in pfactor(ff, a):
            acc = pmul(ff, acc, ppow(ff, g, m))
        assert acc == a


def test_pth_power_detection():
    ff = FF(5, 1)
    assert p_is_pth_power(ff, [1] + [0] * 9 + [1])  # x^10 + 1
    assert not p_is_pth_power(ff, [0, 0, 0, 1])     # x^3
    t = ppow(ff, [2, 0, 1], 5)
    assert p_is_pth_power(ff, t)
    assert p_pth_root(ff, t) == [2, 0, 1]


def test_roots_and_render():
    ff = FF(7, 1)
    poly = pmul(ff, [6, 1], [3, 1])  # (x+6)(x+3) = (x-1)(x-4)
    assert proots(ff, poly) == [1, 4]
    assert prender(ff, [3, 0, 1]) == "x^2 + 3"
    f2 = FF(5, 2)
    g = f2.generator()
    assert f2.render(g) == "g"
