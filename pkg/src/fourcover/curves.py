"""Function-field algebra over the residue field in characteristic p.

Covers T^p - T + u = 0 are handled through the reduced representative of
u modulo p-th-power-minus-itself adjustments: every pole order of the
reduced form is prime to p and additive constants are declared trivial
(the residue field emulates its algebraic closure; constants always lie
in the image of w -> w^p - w over the closure).

Purely inseparable covers T^p = t(x) of the line are rational curves:
k(x, t^(1/p)) embeds in k(x^(1/p)) which is rational, and the degrees
match, so their geometric genus is 0.
"""

from .errors import NotReduced, InvalidInput
from .ffield import (
    padd, psub, pneg, pmul, pdivmod, pmod, pgcd, peval, ppow, ppow_mod,
    pfactor, pnormalize, pdeg, p_is_pth_power, prender, pscale,
)


class RatFunc:
    """Rational function over F_q in lowest terms with monic denominator."""

    __slots__ = ("ff", "num", "den")

    def __init__(self, ff, num, den=None):
        if den is None:
            den = [1]
        num = pnormalize(list(num))
        den = pnormalize(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            den = [1]
        g = pgcd(ff, num, den) if num else [1]
        if pdeg(g) > 0:
            num = pdivmod(ff, num, g)[0]
            den = pdivmod(ff, den, g)[0]
        if den[-1] != 1:
            c = ff.inv(den[-1])
            num = pscale(ff, c, num)
            den = pscale(ff, c, den)
        self.ff = ff
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, ff, poly):
        return cls(ff, poly)

    def is_zero(self):
        return not self.num

    def is_poly(self):
        return pdeg(self.den) == 0

    def __eq__(self, other):
        return (isinstance(other, RatFunc) and self.ff is other.ff
                and self.num == other.num and self.den == other.den)

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        num = padd(self.ff, pmul(self.ff, self.num, other.den),
                   pmul(self.ff, other.num, self.den))
        return RatFunc(self.ff, num, pmul(self.ff, self.den, other.den))

    def __neg__(self):
        return RatFunc(self.ff, pneg(self.ff, self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.ff, pmul(self.ff, self.num, other.num),
                       pmul(self.ff, self.den, other.den))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.ff, pmul(self.ff, self.num, other.den),
                       pmul(self.ff, self.den, other.num))

    def __pow__(self, n):
        if n < 0:
            return (RatFunc(self.ff, self.den, self.num)) ** (-n)
        return RatFunc(self.ff, ppow(self.ff, self.num, n),
                       ppow(self.ff, self.den, n))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, list):
            return RatFunc(self.ff, other)
        if isinstance(other, int):
            return RatFunc(self.ff, [other % self.ff.q] if other % self.ff.q else [])
        raise InvalidInput("cannot coerce %r" % (other,))

    def frobenius_shift(self):
        """self^p - self."""
        return self ** self.ff.p - self

    def eval(self, x):
        d = peval(self.ff, self.den, x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return self.ff.div(peval(self.ff, self.num, x), d)

    def render(self):
        n = prender(self.ff, self.num)
        if self.is_poly():
            return n
        return "(%s)/(%s)" % (n, prender(self.ff, self.den))

    def __repr__(self):
        return self.render()


INF_PLACE = "inf"


def pole_profile(u):
    """Poles of u as a sorted list of (place, order, degree).

    Places are monic irreducible polynomials (coefficient tuples) or the
    marker "inf"; degree is the residue degree of the place.
    """
    ff = u.ff
    out = []
    for (poly, mult) in pfactor(ff, u.den):
        out.append((tuple(poly), mult, pdeg(poly)))
    deg_inf = pdeg(u.num) - pdeg(u.den)
    if deg_inf > 0:
        out.append((INF_PLACE, deg_inf, 1))
    return out


class ASReduction:
    """Result of as_reduce: u = reduced + (witness^p - witness) + constant."""

    __slots__ = ("reduced", "witness", "constant")

    def __init__(self, reduced, witness, constant):
        self.reduced = reduced
        self.witness = witness
        self.constant = constant


def as_reduce(u):
    """Artin-Schreier reduction of u in k(x).

    Returns an ASReduction whose ``reduced`` part has every pole order
    prime to p and no constant term.  The dropped constant is separately
    reported; over the algebraic closure it is always of the form
    w^p - w, so the reduced class of u is u - ℘(witness) - constant.
    """
    ff = u.ff
    p = ff.p
    witness = RatFunc(ff, [])
    cur = u
    # kill p-divisible pole orders at finite places
    changed = True
    while changed:
        changed = False
        for place, order, _deg in pole_profile(cur):
            if place == INF_PLACE or order % p:
                continue
            P = list(place)
            k = order // p
            # leading coefficient of the pole: A = (num * (den/P^order)^-1) mod P
            den_rest = pdivmod(ff, cur.den, ppow(ff, P, order))[0]
            modP = lambda a: pmod(ff, a, P)
            inv_rest = _inv_mod(ff, den_rest, P)
            A = modP(pmul(ff, cur.num, inv_rest))
            B = _pth_root_mod(ff, A, P)
            w = RatFunc(ff, B, ppow(ff, P, k))
            cur = cur - w.frobenius_shift()
            witness = witness + w
            changed = True
            break
    # polynomial part: reduce exponents divisible by p, drop the constant
    poly_part, rem_num = pdivmod(ff, cur.num, cur.den)
    frac = RatFunc(ff, rem_num, cur.den)
    while True:
        top = pdeg(poly_part)
        if top < 1:
            break
        if top % p == 0 and poly_part[top] != 0:
            c = ff.pth_root(poly_part[top])
            w = RatFunc(ff, [0] * (top // p) + [c])
            poly_part = psub(ff, poly_part,
                             psub(ff, ppow(ff, [0] * (top // p) + [c], p),
                                  [0] * (top // p) + [c]))
            witness = witness + w
        else:
            break
    constant = poly_part[0] if poly_part else 0
    if poly_part:
        poly_part = pnormalize(poly_part[:0] + [0] + poly_part[1:])
    reduced = frac + RatFunc(ff, poly_part)
    return ASReduction(reduced, witness, constant)


def _inv_mod(ff, a, P):
    """Inverse of a modulo the irreducible P (extended Euclid)."""
    a = pmod(ff, a, P)
    r0, r1 = list(P), a
    s0, s1 = [], [1]
    while pnormalize(r1):
        q, r = pdivmod(ff, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(ff, s0, pmul(ff, q, s1))
    # r0 = gcd (a unit since P irreducible and a != 0 mod P)
    c = ff.inv(r0[0])
    return pmod(ff, pscale(ff, c, s0), P)


def _pth_root_mod(ff, a, P):
    """p-th root in the residue field F_q[x]/(P) (Frobenius inverse)."""
    m = ff.f * pdeg(P)
    n = ff.p ** (m - 1)
    return ppow_mod(ff, a, n, P)


def as_irreducible(u):
    """Is T^p - T + u = 0 irreducible over k(x)?  True iff u reduces to
    something nonzero (constants count as trivial over the closure)."""
    return not as_reduce(u).reduced.is_zero()


class ASCurve:
    """The curve T^p - T + u = 0 for a reduced, nonzero u."""

    __slots__ = ("ff", "u", "profile")

    def __init__(self, ff, u, *, already_reduced=False):
        if not already_reduced:
            red = as_reduce(u)
            u = red.reduced
        self.ff = ff
        self.u = u
        if u.is_zero():
            raise NotReduced("u reduces to zero; the cover is split")
        self.profile = pole_profile(u)
        for place, order, _ in self.profile:
            if order % ff.p == 0:
                raise NotReduced("pole order divisible by p at %r" % (place,))

    @property
    def p(self):
        return self.ff.p

    def genus(self):
        return as_genus(self)

    def branch_count(self):
        """Number of geometric branch points (poles, counted with degree)."""
        return sum(deg for _, _, deg in self.profile)

    def p_rank(self):
        return p_rank_DS(self.ff.p, self.branch_count())

    def render(self):
        return "T^%d - T + %s = 0" % (self.ff.p, self.u.render())

    def __repr__(self):
        return self.render()


class InsepCurve:
    """The purely inseparable cover T^p = t(x), t not a p-th power."""

    __slots__ = ("ff", "t")

    def __init__(self, ff, t):
        t = pnormalize(list(t))
        if p_is_pth_power(ff, t):
            raise InvalidInput("t is a p-th power; the cover is not reduced")
        self.ff = ff
        self.t = t

    def genus(self):
        return 0

    def p_rank(self):
        return 0

    def render(self):
        return "T^%d = %s" % (self.ff.p, prender(self.ff, self.t))

    def __repr__(self):
        return self.render()


def as_genus(c):
    """Genus of an Artin-Schreier cover of the line.

    Conductor formula over the poles P of the reduced u with orders d_P:
    g = (p-1)/2 * (sum deg(P) (d_P + 1) - 2).  When u is a polynomial of
    degree m prime to p the (m-1)(p-1)/2 shortcut applies and the two
    must agree.
    """
    if isinstance(c, RatFunc):
        c = ASCurve(c.ff, c)
    p = c.ff.p
    total = sum(deg * (order + 1) for _, order, deg in c.profile)
    g = (p - 1) * (total - 2) // 2
    if c.u.is_poly():
        m = pdeg(c.u.num)
        if m % p:
            shortcut = (m - 1) * (p - 1) // 2
            assert shortcut == g, "conductor oracle disagrees with the degree formula"
    return g


def p_rank_DS(p, branch_count):
    """p-rank of a Z/p-cover of the line, all branch points wild:
    (p-1)(branch_count - 1), from the Deuring-Shafarevich formula."""
    if branch_count < 1:
        raise InvalidInput("branch_count must be >= 1")
    return (p - 1) * (branch_count - 1)


def is_pth_power(ff, t):
    """Membership of a polynomial in k[x]^p over the perfect field k."""
    return p_is_pth_power(ff, pnormalize(list(t)))
