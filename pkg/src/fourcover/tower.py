"""Exact finite-precision arithmetic in ramified towers of the p-adics.

A tower is K = W[pi] where W is the unramified extension of Q_p of
degree f and pi satisfies pi^e = -p.  Valuations are normalized by
v(p) = 1, so v(pi) = 1/e and every valuation is an exact Fraction with
denominator dividing e.

Elements are stored as pi^s * U where U = sum_{j<e} U[j] pi^j is a unit
(its j = 0 coefficient is a unit of W) and each U[j] is an element of
W/p^N, represented as an integer (f = 1) or an f-tuple of integers
(f > 1) with respect to the power basis of a fixed monic lift of the
residue-field modulus.  Reduction uses pi^e = -p, which keeps every
symbolic token (powers of pi, tau, rationals) an exact pure pi-power
times a rational unit.

Elements constructed from rational tokens additionally carry the exact
pair (q, m) with value q * pi^m; arithmetic propagates exactness when
the result is again of that shape, so valuations of token-built data are
decided exactly even when they exceed the digit window.
"""

import math
import re
from fractions import Fraction

from .errors import (
    InsufficientPrecision, NeedsExtension, NegativeValuation,
    DivisionByIndistinguishableZero, InvalidInput, ConstructionMismatch,
)
from .ffield import FF, is_prime

INF = math.inf


def make_tower(p, e, f, precision):
    """Build the tower with v(pi) = 1/e and pi^e = -p.

    ``precision`` counts pi-digits carried by elements.  Rejects p that
    is not prime and nonpositive e, f, precision.
    """
    return Tower(p, e, f, precision)


class Tower:

    def __init__(self, p, e, f=1, prec=None):
        if not is_prime(p):
            raise InvalidInput("p must be a prime >= 2, got %r" % (p,))
        if not isinstance(e, int) or e < 1:
            raise InvalidInput("ramification index e must be >= 1, got %r" % (e,))
        if not isinstance(f, int) or f < 1:
            raise InvalidInput("residue degree f must be >= 1, got %r" % (f,))
        if prec is None:
            prec = 50 * e
        if not isinstance(prec, int) or prec < 1:
            raise InvalidInput("precision must be a positive integer")
        self.p = p
        self.e = e
        self.f = f
        self.prec = prec
        self.nl = -(-prec // e) + 2          # p-digit levels per W coefficient
        self.pmod = p ** self.nl
        self.ff = FF(p, f)
        # monic integer lift of the residue modulus, coefficients in [0, p)
        self.modulus = list(self.ff.modulus) if f > 1 else None
        self._embed_roots = {}

    def __repr__(self):
        return "Tower(p=%d, e=%d, f=%d, prec=%d)" % (self.p, self.e, self.f, self.prec)

    # ------------------------------------------------------------------
    # W = (unramified part)/p^nl arithmetic; ints for f = 1, tuples else
    # ------------------------------------------------------------------

    def wzero(self):
        return 0 if self.f == 1 else (0,) * self.f

    def wone(self):
        return 1 if self.f == 1 else (1,) + (0,) * (self.f - 1)

    def w_is_zero(self, u):
        return u == 0 if self.f == 1 else all(c == 0 for c in u)

    def wadd(self, u, v):
        if self.f == 1:
            return (u + v) % self.pmod
        return tuple((a + b) % self.pmod for a, b in zip(u, v))

    def wneg(self, u):
        if self.f == 1:
            return (-u) % self.pmod
        return tuple((-a) % self.pmod for a in u)

    def wsmul(self, c, u):
        if self.f == 1:
            return (c * u) % self.pmod
        return tuple((c * a) % self.pmod for a in u)

    def wmul(self, u, v):
        if self.f == 1:
            return (u * v) % self.pmod
        f = self.f
        conv = [0] * (2 * f - 1)
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        conv[i + j] += a * b
        # reduce powers a^k, k >= f, by the monic modulus lift
        for k in range(2 * f - 2, f - 1, -1):
            c = conv[k] % self.pmod
            if c:
                for i in range(f):
                    conv[k - f + i] -= c * self.modulus[i]
            conv[k] = 0
        return tuple(c % self.pmod for c in conv[:f])

    def wvp(self, u):
        """p-adic valuation of a W element (INF for 0)."""
        if self.f == 1:
            vals = [u]
        else:
            vals = [c for c in u]
        best = INF
        for c in vals:
            if c:
                v = 0
                while c % self.p == 0:
                    c //= self.p
                    v += 1
                best = min(best, v)
                if best == 0:
                    return 0
        return best

    def wdivp(self, u, k):
        pk = self.p ** k
        if self.f == 1:
            return (u // pk) % self.pmod
        return tuple((c // pk) % self.pmod for c in u)

    def wmask(self, u, levels):
        """Keep only p-digits below ``levels``."""
        if levels <= 0:
            return self.wzero()
        if levels >= self.nl:
            return u
        m = self.p ** levels
        if self.f == 1:
            return u % m
        return tuple(c % m for c in u)

    def wresidue(self, u):
        if self.f == 1:
            return u % self.p
        return self.ff.encode([c % self.p for c in u])

    def wlift(self, enc):
        if self.f == 1:
            return enc % self.p
        return tuple(self.ff.coords(enc))

    def winv(self, u):
        r = self.wresidue(u)
        if r == 0:
            raise ZeroDivisionError("inverting a non-unit of W")
        z = self.wlift(self.ff.inv(r))
        # Newton: z <- z(2 - uz), doubles p-adic accuracy each round
        two = self.wadd(self.wone(), self.wone())
        rounds = max(1, (self.nl - 1).bit_length() + 1)
        for _ in range(rounds):
            z = self.wmul(z, self.wadd(two, self.wneg(self.wmul(u, z))))
        return z

    # ------------------------------------------------------------------
    # element constructors
    # ------------------------------------------------------------------

    def _canon(self, s, U, ap, exact):
        """Canonicalize a raw pi^s * sum U[j] pi^j with digit window ap."""
        ap = min(ap, s + self.prec)
        window = ap - s
        U = list(U)
        # mask digits at or above the precision window
        for j in range(self.e):
            lev = -(-(window - j) // self.e)
            U[j] = self.wmask(U[j], lev)
        vpi = INF
        for j in range(self.e):
            w = self.wvp(U[j])
            if w is not INF and w != INF:
                vpi = min(vpi, j + self.e * w)
        if vpi == INF or vpi >= window:
            if exact is not None:
                if exact[0] == 0:
                    return El(self, None, None, None, (Fraction(0), 0))
                # the value is known exactly but lies below the digit
                # window: re-expand from the exact form instead of
                # degrading to an indistinguishable zero
                return self.from_exact_pair(*exact)
            return El(self, None, None, ap, None)
        if vpi:
            U = self._shift_down(U, vpi)
            s += vpi
            window = ap - s
            for j in range(self.e):
                lev = -(-(window - j) // self.e)
                U[j] = self.wmask(U[j], lev)
        return El(self, s, tuple(U), ap, exact)

    def _shift_down(self, U, m):
        """Divide sum U[j] pi^j by pi^m (exact; requires v_pi >= m)."""
        e = self.e
        q, r = divmod(m, self.e)
        if q:
            U = [self.wdivp(self.wsmul((-1) ** q, u), q) for u in U]
        if r == 0:
            return U
        out = [self.wzero()] * e
        for j in range(e):
            if self.w_is_zero(U[j]):
                continue
            if j >= r:
                out[j - r] = self.wadd(out[j - r], U[j])
            else:
                # pi^(j-r) = -pi^(j-r+e)/p
                out[j - r + e] = self.wadd(out[j - r + e],
                                           self.wneg(self.wdivp(U[j], 1)))
        return out

    def zero(self):
        return El(self, None, None, None, (Fraction(0), 0))

    def one(self):
        return self.from_exact_pair(Fraction(1), 0)

    def from_int(self, n):
        return self.from_rational(Fraction(n))

    def from_rational(self, q):
        """Embed a rational; exactness flag set for lossless re-expansion."""
        q = Fraction(q)
        return self.from_exact_pair(q, 0)

    def from_exact_pair(self, q, m):
        """The element q * pi^m for a rational q."""
        q = Fraction(q)
        if q == 0:
            return self.zero()
        t = 0
        num, den = q.numerator, q.denominator
        while num % self.p == 0:
            num //= self.p
            t += 1
        while den % self.p == 0:
            den //= self.p
            t -= 1
        # q*pi^m = (-1)^t * (num/den) * pi^(m + t e)
        s = m + t * self.e
        sign = -1 if t % 2 else 1
        unit = sign * num * pow(den, -1, self.pmod) % self.pmod
        U = [self.wzero()] * self.e
        U[0] = unit if self.f == 1 else (unit,) + (0,) * (self.f - 1)
        return self._canon(s, U, s + self.prec, (q, m))

    def pi_power(self, m):
        return self.from_exact_pair(Fraction(1), m)

    def pi(self):
        return self.pi_power(1)

    def tau(self, k=1):
        """tau^k = (-p)^(kp/(p-1)), a pure pi-power when (p-1) | e."""
        p, e = self.p, self.e
        if (k * e * p) % (p - 1):
            need = (p - 1) // math.gcd(k * p, p - 1)
            raise NeedsExtension(
                "tau^%d needs (p-1) | %d*e; enlarge e by a factor of %d"
                % (k, k, need), e=self.e * need)
        return self.pi_power(k * e * p // (p - 1))

    def tau_valuation(self):
        return Fraction(self.p, self.p - 1)

    def lift_ff(self, enc):
        """Lift a residue-field element to a unit digit (level 0)."""
        if enc == 0:
            return self.zero()
        U = [self.wzero()] * self.e
        U[0] = self.wlift(enc)
        return self._canon(0, U, self.prec, None)

    def teichmuller(self, enc):
        """The Teichmuller representative of a residue-field element."""
        if enc == 0:
            return self.zero()
        x = self.lift_ff(enc)
        for _ in range(self.nl + 1):
            x = x ** self.ff.q
        return x

    def unit_root_lift(self, n, enc):
        """Lift of an n-th root of unity with residue ``enc`` (n | q-1)."""
        if (self.ff.q - 1) % n:
            raise NeedsExtension("no primitive %d-th roots of unity here" % n)
        if self.ff.pow(enc, n) != 1:
            raise InvalidInput("residue is not an n-th root of unity")
        return self.teichmuller(enc)

    def zeta(self):
        """A primitive p-th root of unity (needs (p-1) | e).

        Constructible but consumed by no operation; zeta = 1 + O(pi^{e/(p-1)}).
        """
        p = self.p
        if (p - 1) == 1:
            return self.from_int(-1) if p == 2 else self.one()
        if self.e % (p - 1):
            raise NeedsExtension("zeta_p needs (p-1) | e", e=self.e * (p - 1))
        phi = Poly(self, [self.one()] * p)      # 1 + x + ... + x^(p-1)
        x0 = self.one() + self.pi_power(self.e // (p - 1))
        return refine_root(phi, x0)

    def sqrt(self, x):
        """Square root; NeedsExtension when the value group or residue
        field is too small.

        Branch: the least-residue root, except that an exact rational
        square keeps its positive rational root (and its exactness flag).
        Downstream constructions are branch-independent.
        """
        if self.p == 2:
            raise NeedsExtension("square roots at p=2 are outside this tower's scope")
        if x.is_zeroish():
            if x.is_true_zero():
                return self.zero()
            raise InsufficientPrecision("sqrt of an indistinguishable zero")
        s = x.pival()
        if s % 2:
            raise NeedsExtension("sqrt needs even pi-valuation; double e",
                                 e=2 * self.e, token="sqrt")
        exact = None
        if x.exact is not None:
            q, m = x.exact
            if m % 2 == 0 and q > 0:
                rn = _isqrt_exact(q.numerator)
                rd = _isqrt_exact(q.denominator)
                if rn is not None and rd is not None:
                    exact = (Fraction(rn, rd), m // 2)
        u = x * self.pi_power(-s)
        r = u.residue()
        rr = self.ff.sqrt(r)
        if rr is None:
            raise NeedsExtension("sqrt needs a quadratic residue extension",
                                 f=2 * self.f, token="sqrt")
        y = self.lift_ff(rr)
        inv2 = self.from_rational(Fraction(1, 2))
        # the residue start is correct to one pi-digit only; each round
        # doubles that, so size the loop by the full pi-digit width
        for _ in range(self.prec.bit_length() + 2):
            y = (y + u / y) * inv2
        diff = y * y - u
        if not diff.is_zeroish():
            raise InsufficientPrecision("sqrt iteration did not close")
        # least-residue branch
        if min(rr, self.ff.neg(rr)) != rr:
            y = -y
        y = y * self.pi_power(s // 2)
        if exact is not None:
            chk = y - self.from_exact_pair(*exact)
            if chk.is_zeroish():
                y = El(self, y.s, y.U, y.ap, exact)
            else:
                y = -y
                y = El(self, y.s, y.U, y.ap, exact)
        return y

    # ------------------------------------------------------------------
    # tokens
    # ------------------------------------------------------------------

    _FACT_RE = re.compile(
        r"^\s*(?P<neg>-)?\s*(?:(?P<num>\d+)(?:/(?P<den>\d+))?|(?P<name>pi|tau))"
        r"(?:\^(?P<exp>-?\d+))?\s*$")

    def parse(self, text):
        """Parse a symbolic token: products of a/b, n^k, pi^k, tau^k."""
        if not isinstance(text, str) or not text.strip():
            raise InvalidInput("empty token")
        out = self.one()
        for part in text.split("*"):
            m = self._FACT_RE.match(part)
            if not m:
                raise InvalidInput("bad token factor %r" % part)
            exp = int(m.group("exp")) if m.group("exp") else 1
            if m.group("name") == "pi":
                fac = self.pi_power(exp)
            elif m.group("name") == "tau":
                fac = self.tau(exp)
            else:
                num = int(m.group("num"))
                den = int(m.group("den") or 1)
                if den == 0:
                    raise InvalidInput("zero denominator in %r" % part)
                base = Fraction(num, den)
                if base == 0 and exp < 0:
                    raise InvalidInput("zero to a negative power")
                fac = self.from_rational(base ** exp)
            if m.group("neg"):
                fac = -fac
            out = out * fac
        return out

    @staticmethod
    def token_e_requirement(p, text):
        """Minimal multiple of e needed so every tau^k factor is integral."""
        need = 1
        for part in str(text).split("*"):
            m = Tower._FACT_RE.match(part)
            if m and m.group("name") == "tau":
                k = int(m.group("exp")) if m.group("exp") else 1
                need = _lcm(need, (p - 1) // math.gcd(abs(k) * p, p - 1))
        return need

    # ------------------------------------------------------------------
    # embedding into a bigger tower
    # ------------------------------------------------------------------

    def embed(self, x, big):
        """Map an element into a tower with e | e', f | f'."""
        if big is self:
            return x
        if big.p != self.p or big.e % self.e or big.f % self.f:
            raise InvalidInput("no embedding %r -> %r" % (self, big))
        r = big.e // self.e
        if x.exact is not None:
            q, m = x.exact
            return big.from_exact_pair(q, m * r)
        if x.is_zeroish():
            return El(big, None, None, x.ap * r, None)
        ahat = self._embedded_generator(big)
        out = big.zero()
        for j in range(self.e):
            w = x.U[j]
            coords = [w] if self.f == 1 else list(w)
            term = big.zero()
            for i, c in enumerate(coords):
                if c:
                    piece = big.from_int(c)
                    if i:
                        piece = piece * ahat ** i
                    term = term + piece
            if not term.is_zeroish():
                out = out + term * big.pi_power(r * (x.s + j))
        return El(big, out.s, out.U, min(out.ap, r * x.ap), None)

    def _embedded_generator(self, big):
        key = id(big)
        if key in self._embed_roots:
            return self._embed_roots[key]
        if self.f == 1:
            gen = big.one()
        else:
            emb = self.ff.embedding_into(big.ff)
            root0 = emb(self.ff.encode([0, 1] + [0] * (self.f - 2)))
            mpoly = Poly(big, [big.from_int(c) for c in self.modulus])
            gen = refine_root(mpoly, big.lift_ff(root0))
        self._embed_roots[key] = gen
        return gen

    def extended(self, e_mult=1, f_mult=1):
        """A tower with e, f multiplied, carrying equivalent precision."""
        e2 = self.e * e_mult
        return Tower(self.p, e2, self.f * f_mult, prec=self.nl * e2 - 2 * e2 + e2)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


def _isqrt_exact(n):
    r = math.isqrt(n)
    return r if r * r == n else None


class El:
    """One element of a tower.  Immutable."""

    __slots__ = ("tw", "s", "U", "ap", "exact")

    def __init__(self, tw, s, U, ap, exact):
        self.tw = tw
        self.s = s          # pi-shift; None for (fuzzy or true) zero
        self.U = U          # tuple of e W-coefficients, canonical; None if zero
        self.ap = ap        # absolute precision in pi-units; None = infinite
        self.exact = exact  # optional (Fraction q, int m): value q*pi^m

    # -- state predicates ----------------------------------------------

    def is_true_zero(self):
        return self.exact is not None and self.exact[0] == 0

    def is_zeroish(self):
        """True zero, or indistinguishable from zero at current precision."""
        return self.s is None

    def is_unit(self):
        return self.s == 0

    # -- valuation and residue -------------------------------------------

    def valuation(self):
        """Exact rational valuation; INF marker for true zero."""
        if self.is_true_zero():
            return INF
        if self.exact is not None:
            q, m = self.exact
            t = 0
            num, den = q.numerator, q.denominator
            while num % self.tw.p == 0:
                num //= self.tw.p
                t += 1
            while den % self.tw.p == 0:
                den //= self.tw.p
                t -= 1
            return Fraction(m + t * self.tw.e, self.tw.e)
        if self.s is None:
            raise InsufficientPrecision(
                "element is O(pi^%d); valuation undecidable" % self.ap)
        return Fraction(self.s, self.tw.e)

    def pival(self):
        """Valuation in pi-units (integer)."""
        v = self.valuation()
        if v is INF:
            return INF
        return int(v * self.tw.e)

    def residue(self):
        """Image in the residue field (encoding); requires v >= 0."""
        if self.is_true_zero():
            return 0
        if self.s is None:
            if self.ap >= 1:
                return 0
            raise InsufficientPrecision("residue of an O(pi^%d) element" % self.ap)
        if self.s > 0:
            return 0
        if self.s < 0:
            raise NegativeValuation("residue of an element with v < 0")
        return self.tw.wresidue(self.U[0])

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, El):
            if other.tw is not self.tw:
                raise InvalidInput("elements of different towers")
            return other
        if isinstance(other, (int, Fraction)):
            return self.tw.from_rational(Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        tw = self.tw
        if self.is_true_zero():
            return other
        if other.is_true_zero():
            return self
        exact = None
        if self.exact is not None and other.exact is not None:
            q1, m1 = self.exact
            q2, m2 = other.exact
            d = m2 - m1
            if d % tw.e == 0:
                exact = (q1 + q2 * Fraction(-tw.p) ** (d // tw.e), m1)
            elif (-d) % tw.e == 0:
                exact = (q2 + q1 * Fraction(-tw.p) ** ((-d) // tw.e), m2)
        if self.s is None or other.s is None:
            if self.s is None and other.s is None:
                ap = min(self.ap, other.ap)
                if exact is not None and exact[0] == 0:
                    return tw.zero()
                return El(tw, None, None, ap, exact)
            known = self if self.s is not None else other
            fuzzy = other if self.s is not None else self
            ap = min(known.ap, fuzzy.ap)
            if known.s >= fuzzy.ap:
                return El(tw, None, None, ap, exact)
            return tw._canon(known.s, known.U, ap, exact)
        s = min(self.s, other.s)
        ap = min(self.ap, other.ap)
        U1 = tw._shift_up(self.U, self.s - s)
        U2 = tw._shift_up(other.U, other.s - s)
        U = [tw.wadd(a, b) for a, b in zip(U1, U2)]
        return tw._canon(s, U, ap, exact)

    __radd__ = __add__

    def __neg__(self):
        tw = self.tw
        exact = (-self.exact[0], self.exact[1]) if self.exact is not None else None
        if self.s is None:
            if self.is_true_zero():
                return self
            return El(tw, None, None, self.ap, exact)
        return El(tw, self.s, tuple(tw.wneg(u) for u in self.U), self.ap, exact)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        tw = self.tw
        if self.is_true_zero() or other.is_true_zero():
            return tw.zero()
        exact = None
        if self.exact is not None and other.exact is not None:
            exact = (self.exact[0] * other.exact[0], self.exact[1] + other.exact[1])
        if self.s is None or other.s is None:
            a1 = self.ap if self.s is None else self.s
            a2 = other.ap if other.s is None else other.s
            return El(tw, None, None, a1 + a2, exact)
        e = tw.e
        conv = [tw.wzero()] * (2 * e - 1)
        for j, a in enumerate(self.U):
            if tw.w_is_zero(a):
                continue
            for k, b in enumerate(other.U):
                if not tw.w_is_zero(b):
                    conv[j + k] = tw.wadd(conv[j + k], tw.wmul(a, b))
        for t in range(2 * e - 2, e - 1, -1):
            c = conv[t]
            if not tw.w_is_zero(c):
                conv[t - e] = tw.wadd(conv[t - e], tw.wsmul(-tw.p, c))
        ap = min(self.ap + other.s, other.ap + self.s)
        return tw._canon(self.s + other.s, conv[:e], ap, exact)

    __rmul__ = __mul__

    def inverse(self):
        tw = self.tw
        if self.is_zeroish():
            raise DivisionByIndistinguishableZero(
                "inverse of zero or O(pi^%s)" % (self.ap,))
        exact = None
        if self.exact is not None:
            exact = (1 / self.exact[0], -self.exact[1])
        u = tw._canon(0, self.U, self.ap - self.s, None)  # the unit part
        z = tw.lift_ff(tw.ff.inv(u.residue()))
        two = tw.from_int(2)
        # accuracy starts at one pi-digit and doubles per round
        for _ in range(tw.prec.bit_length() + 2):
            z = z * (two - u * z)
        out = z * tw.pi_power(-self.s)
        ap = self.ap - 2 * self.s
        return El(tw, out.s, out.U, min(out.ap, ap), exact)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = self.tw.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparisons -------------------------------------------------------

    def same(self, other):
        """Indistinguishable at the shared precision."""
        other = self._coerce(other)
        return (self - other).is_zeroish()

    def __eq__(self, other):
        try:
            return self.same(other)
        except (InvalidInput, TypeError):
            return NotImplemented

    __hash__ = None

    # -- rendering ----------------------------------------------------------

    def digits(self, count=None):
        """Nonzero digits as (pi-level, residue encoding), lowest first."""
        if self.s is None:
            return []
        tw = self.tw
        count = count if count is not None else self.ap - self.s
        out = []
        U = list(self.U)
        for lev in range(min(count, self.ap - self.s)):
            j = lev % tw.e
            i = lev // tw.e
            if tw.f == 1:
                d = (U[j] // tw.p ** i) % tw.p
            else:
                d = tw.ff.encode([(c // tw.p ** i) % tw.p for c in U[j]])
            if d:
                out.append((self.s + lev, d))
        return out

    def __repr__(self):
        return self.str(max_terms=6)

    def str(self, max_terms=8):
        if self.is_true_zero():
            return "0"
        if self.s is None:
            return "O(pi^%d)" % self.ap
        tw = self.tw
        parts = []
        for lev, d in self.digits():
            if len(parts) >= max_terms:
                parts.append("...")
                break
            ds = tw.ff.render(d) if tw.f > 1 else str(d)
            if lev == 0:
                parts.append(ds)
            else:
                head = "" if ds == "1" else ds + "*"
                parts.append("%spi^%d" % (head, lev) if lev != 1 else "%spi" % head)
        return " + ".join(parts) + " + O(pi^%d)" % self.ap


def _tower_shift_up(tw, U, m):
    """Multiply sum U[j] pi^j by pi^m (m >= 0)."""
    if m == 0:
        return list(U)
    e = tw.e
    q, r = divmod(m, e)
    out = [tw.wzero()] * e
    for j in range(e):
        if tw.w_is_zero(U[j]):
            continue
        t = j + r
        c = U[j]
        qq = q
        if t >= e:
            t -= e
            qq += 1
        if qq:
            c = tw.wsmul((-tw.p) ** qq, c)
        out[t] = tw.wadd(out[t], c)
    return out


Tower._shift_up = _tower_shift_up


# ---------------------------------------------------------------------------
# polynomials over a tower
# ---------------------------------------------------------------------------

class Poly:
    """Polynomial with tower coefficients, index = degree."""

    __slots__ = ("tw", "c")

    def __init__(self, tw, coeffs):
        self.tw = tw
        c = list(coeffs)
        while c and isinstance(c[-1], El) and c[-1].is_true_zero():
            c.pop()
        self.c = [x if isinstance(x, El) else tw.from_rational(Fraction(x))
                  for x in c]
        while self.c and self.c[-1].is_true_zero():
            self.c.pop()

    @classmethod
    def from_ints(cls, tw, ints):
        return cls(tw, [tw.from_int(n) for n in ints])

    @classmethod
    def x_power(cls, tw, n, coeff=None):
        c = [tw.zero()] * n + [coeff if coeff is not None else tw.one()]
        return cls(tw, c)

    @property
    def degree(self):
        return len(self.c) - 1

    def coeff(self, i):
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.tw.zero()

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        return Poly(self.tw, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.c), len(other.c))
        return Poly(self.tw, [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self):
        return Poly(self.tw, [-x for x in self.c])

    def __mul__(self, other):
        if isinstance(other, El):
            return self.scale(other)
        if not self.c or not other.c:
            return Poly(self.tw, [])
        out = [self.tw.zero()] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a.is_true_zero():
                continue
            for j, b in enumerate(other.c):
                if not b.is_true_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(self.tw, out)

    def __pow__(self, n):
        out = Poly(self.tw, [self.tw.one()])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, el):
        return Poly(self.tw, [x * el for x in self.c])

    def divexact_el(self, el):
        inv = el.inverse()
        return Poly(self.tw, [x * inv for x in self.c])

    def eval(self, x):
        out = self.tw.zero()
        for a in reversed(self.c):
            out = out * x + a
        return out

    def deriv(self):
        return Poly(self.tw, [self.c[i] * i for i in range(1, len(self.c))])

    def taylor(self, d, b=None):
        """Coefficients of f(d + b t) in t, by synthetic shift.

        The i-th output equals b^i f^(i)(d)/i! with no factorial division,
        so it is exact even when p divides i!.
        """
        n = len(self.c)
        a = list(self.c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] = a[j] + d * a[j + 1]
        if b is not None:
            bp = self.tw.one()
            for i in range(1, n):
                bp = bp * b
                a[i] = a[i] * bp
        return Poly(self.tw, a)

    def reverse(self, n=None):
        """x^n f(1/x); defaults to n = deg f."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise InvalidInput("reverse length below degree")
        out = [self.tw.zero()] * (n + 1)
        for i, a in enumerate(self.c):
            out[n - i] = a
        return Poly(self.tw, out)

    def gauss_valuation(self):
        """min over coefficient valuations (exact Fraction), INF for 0.

        Raises InsufficientPrecision when a fuzzy coefficient could lie
        below the smallest known valuation.
        """
        best = INF
        bound = INF
        for a in self.c:
            if a.is_true_zero():
                continue
            if a.s is None:
                bound = min(bound, Fraction(a.ap, self.tw.e))
            else:
                best = min(best, a.valuation())
        if best is INF and bound is INF:
            return INF
        if best <= bound:
            return best
        raise InsufficientPrecision(
            "Gauss valuation undecidable: known %s vs O-bound %s" % (best, bound))

    def is_zeroish(self):
        return all(a.is_zeroish() for a in self.c)

    def residue_poly(self):
        """Coefficient residues as an ffield polynomial (list of encodings)."""
        out = [a.residue() for a in self.c]
        while out and out[-1] == 0:
            out.pop()
        return out

    def map_to(self, big):
        return Poly(big, [self.tw.embed(a, big) for a in self.c])

    def monic_leading(self):
        return self.c and self.c[-1].same(self.tw.one())

    def __repr__(self):
        terms = []
        for i in reversed(range(len(self.c))):
            if not self.c[i].is_true_zero():
                terms.append("(%s)*x^%d" % (self.c[i].str(3), i))
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# root refinement
# ---------------------------------------------------------------------------

def refine_root(P, x0, max_steps=400):
    """Refine x0 to a root of P, digit-by-digit below the Newton basin and
    by Newton steps inside it.  Raises ConstructionMismatch if stuck."""
    tw = P.tw
    Pd = P.deriv()
    x = x0
    for _ in range(max_steps):
        fx = P.eval(x)
        if fx.is_zeroish():
            return x
        fpx = Pd.eval(x)
        if fpx.is_zeroish():
            raise ConstructionMismatch("derivative vanishes during root refinement")
        vf, vfp = fx.pival(), fpx.pival()
        if vf > 2 * vfp:
            x = x - fx / fpx
            continue
        k = vf - vfp
        if k < 0:
            raise ConstructionMismatch("no root near the given start")
        # linear digit correction: c = -res(fx pi^-vf)/res(fpx pi^-vfp)
        cres = tw.ff.div(
            tw.ff.neg((fx * tw.pi_power(-vf)).residue()),
            (fpx * tw.pi_power(-vfp)).residue())
        cand = x + tw.lift_ff(cres) * tw.pi_power(k)
        fc = P.eval(cand)
        if fc.is_zeroish() or fc.pival() > vf:
            x = cand
            continue
        improved = False
        for enc in range(1, tw.ff.q):
            cand = x + tw.lift_ff(enc) * tw.pi_power(k)
            fc = P.eval(cand)
            if fc.is_zeroish() or fc.pival() > vf:
                x = cand
                improved = True
                break
        if not improved:
            raise ConstructionMismatch("root refinement stalled at level %d" % vf)
    raise ConstructionMismatch("root refinement did not converge")


def hensel_root(P, residue_enc):
    """Lift a simple residue root (P' unit there) to the tower."""
    tw = P.tw
    x0 = tw.lift_ff(residue_enc)
    d = Poly(tw, P.deriv().c).eval(x0)
    if d.is_zeroish() or d.pival() != 0:
        raise ConstructionMismatch("residue root is not simple; Hensel fails")
    return refine_root(P, x0)
