"""Stable reduction of the normalized cover z0^p = x0(x0-1)^beta(x0-lam)^gamma.

The decision tree (p > 3):

  v(lam) = 0:  v(j(lam)) >= 0        -> type 1a (good, p-rank 0)
               v(j(lam)) <  0        -> type 3 via the two critical disks
  v(lam) > 0:  gamma+1 != p          -> type 3 via the separated disks
               gamma+1  = p and
                 v(lam) = v(tau^2)   -> type 1b (good, p-rank p-1)
                 v(lam) > v(tau^2)   -> type 2 (Mumford)
                 v(lam) < v(tau^2)   -> type 3 via the symmetrized model

For p = 3 the v(lam) = 0 branch is always type 3 and the v(lam) > 0
branch is identical.  Every constructed chart is certified through the
torsor trichotomy and re-measured by the conductor genus oracle; a chart
that fails certification raises ConstructionMismatch rather than being
trusted.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InsufficientPrecision, UnsupportedPrime, InvalidInput,
    ConstructionMismatch,
)
from .tower import Tower, Poly, INF, hensel_root
from .normalizer import (
    CoverDatum, FactoredCover, Moebius, normalize, j_numerator,
)
from .torsor import (
    TorsorOutcome, torsor_case, _torsor_outcome, blowup_chart, BlowupChart,
    lemma_hh_check,
)
from .curves import as_genus, p_rank_DS, is_pth_power
from .ffield import proots, pnormalize, peval, pderiv


TYPE_1A = "1a"
TYPE_1B = "1b"
TYPE_2 = "2"
TYPE_3 = "3"

VIA_1B = "via-1b"
VIA_2A = "via-2a"
VIA_2B3_I = "via-2b3-i"
VIA_2B3_II = "via-2b3-ii"


@dataclass(frozen=True)
class Classification:
    rtype: str
    subroute: str = None

    def __str__(self):
        if self.subroute:
            return "%s (%s)" % (self.rtype, self.subroute)
        return self.rtype


@dataclass
class ExtensionSpec:
    e: int
    f: int
    tokens: list

    def as_dict(self):
        return {"e": self.e, "f": self.f, "tokens": list(self.tokens)}


@dataclass
class Component:
    kind: str                 # "artin_schreier" | "inseparable" | "line"
    equation: str
    genus: int
    p_rank: int
    branch_points: int
    chart: object = None
    payload: object = None

    def as_dict(self):
        chart = None
        if isinstance(self.chart, BlowupChart):
            chart = {
                "coord": self.chart.coord,
                "center": self.chart.center.str(4) if self.chart.center is not None else None,
                "radius_valuation": str(self.chart.radius.valuation())
                if self.chart.radius is not None else None,
                "degree": self.chart.N,
                "notes": dict(self.chart.notes),
            }
        elif isinstance(self.chart, dict):
            chart = dict(self.chart)
        return {
            "kind": self.kind,
            "equation": self.equation,
            "genus": self.genus,
            "p_rank": self.p_rank,
            "branch_points": self.branch_points,
            "chart": chart,
        }


@dataclass
class StableModel:
    classification: Classification
    components: list
    edges: list              # (i, j, multiplicity)
    extension: ExtensionSpec
    checks: list = field(default_factory=list)
    normalized: object = None

    def betti(self):
        verts = len(self.components)
        edge_count = sum(m for _, _, m in self.edges)
        return edge_count - verts + 1 if verts else 0

    def genus_total(self):
        return sum(c.genus for c in self.components) + self.betti()


def genus_generic(p):
    """Genus of the smooth cover: four branch points, tame-prime-to-p
    multiplicities, Riemann-Hurwitz gives p - 1."""
    return p - 1


def classify(n):
    """The reduction type of a normalized cover (p > 2)."""
    p = n.p
    if p == 2:
        raise UnsupportedPrime("use deuring_good_reduction for p = 2")
    v = n.lam.valuation()
    if v == 0:
        if p == 3:
            return Classification(TYPE_3, VIA_1B)
        vnum = j_numerator(n).valuation()
        if vnum is INF or vnum >= Fraction(2 * p, 3 * (p - 1)):
            return Classification(TYPE_1A)
        return Classification(TYPE_3, VIA_1B)
    if n.gamma + 1 != p:
        return Classification(TYPE_3, VIA_2A)
    vt2 = Fraction(2 * p, p - 1)
    if v == vt2:
        return Classification(TYPE_1B)
    if v > vt2:
        return Classification(TYPE_2)
    half = v / 2
    if half <= Fraction(p - 2, p - 1):
        return Classification(TYPE_3, VIA_2B3_I)
    return Classification(TYPE_3, VIA_2B3_II)


# ---------------------------------------------------------------------------
# required extension
# ---------------------------------------------------------------------------

def _lcm(*vals):
    out = 1
    for v in vals:
        out = out * v // math.gcd(out, v)
    return out


def _even_pi_level(v, e):
    """Least multiple of e over which v becomes an even pi-level."""
    pl = v * e
    if pl.denominator != 1:
        e *= pl.denominator
        pl = v * e
    if int(pl) % 2:
        e *= 2
    return e


def _sqrt_unit_residue_square(el, tower):
    vpi = el.pival()
    u = el * tower.pi_power(-vpi)
    return tower.ff.is_square(u.residue())


def required_extension(n, cls):
    """Tokens and the least (e, f) over which the model charts exist."""
    tw = n.tower
    p = n.p
    e0, f0 = tw.e, tw.f
    tokens = []
    e_need = e0
    f_need = f0
    vt = Fraction(p, p - 1)
    for label, vc in n.constant_tokens:
        tokens.append("%s, v(c) = %s" % (label, vc))
        e_need = _lcm(e_need, (Fraction(vc) / p).denominator)

    if cls.rtype == TYPE_1A:
        tokens.append("tau^(1/3)")
        e_need = _lcm(e_need, Fraction(p, 3 * (p - 1)).denominator)

    elif cls.rtype == TYPE_1B:
        tokens.append("tau")
        e_need = _lcm(e_need, p - 1)

    elif cls.rtype == TYPE_2:
        tokens.append("lambda^(1/2)")
        e_need = _even_pi_level(n.lam.valuation(), e_need)
        if not _sqrt_unit_residue_square(n.lam, tw):
            f_need *= 2

    elif cls.subroute == VIA_2A:
        tokens.append("tau^(1/2)")
        e_need = _lcm(e_need, Fraction(p, 2 * (p - 1)).denominator)

    elif cls.subroute == VIA_1B:
        num = j_numerator(n)
        vnum = num.valuation()
        # centers: roots of the critical quadratic; need sqrt(disc), disc ~ jnum
        tokens.append("disc^(1/2) (disc = j-numerator)")
        vb = (vt - vnum / 2) / 2
        tokens.append("b with v(b^2 g''(d)) = v(tau), v(b) = %s" % vb)
        e_need = _lcm(e_need, vb.denominator, (vnum / 2).denominator)
        e_need = _even_pi_level(vnum, e_need)
        if not _sqrt_unit_residue_square(num, tw):
            f_need *= 2

    elif cls.subroute in (VIA_2B3_I, VIA_2B3_II):
        vlam = n.lam.valuation()
        tokens.append("lambda^(1/2)")
        vb = (vt - vlam / 2) / 2
        tokens.append("b with v(b^2 lambda^(1/2)) = v(tau), v(b) = %s" % vb)
        e_need = _lcm(e_need, vb.denominator, (vlam / 2).denominator)
        e_need = _even_pi_level(vlam, e_need)
        if not _sqrt_unit_residue_square(n.lam, tw):
            f_need *= 2
        # centers: roots of -(beta+1)x^2 + 2x - 1, discriminant -4*beta
        if (n.beta + 1) % p:
            ff2 = _ff_for(p, f_need)
            disc = ff2.smul(-4, n.beta % p)
            if not ff2.is_square(disc):
                f_need *= 2

    return ExtensionSpec(e=e_need, f=f_need, tokens=tokens)


def _ff_for(p, f):
    from .ffield import FF
    return FF(p, f)


# ---------------------------------------------------------------------------
# builder helpers
# ---------------------------------------------------------------------------

def _big_tower(n, spec):
    tw = n.tower
    levels = max(tw.nl - 2, 12)
    return Tower(tw.p, spec.e, spec.f, prec=levels * spec.e)


def _cover_to_poly(cover):
    """(C, const) with rhs = const * C(x), C integral of unit content."""
    tw = cover.tower
    C = Poly(tw, [tw.one()])
    const = cover.const
    for q, a in cover.factors:
        v = q.valuation()
        if v is INF or v >= 0:
            C = C * Poly(tw, [-q, tw.one()]) ** a
        else:
            C = C * Poly(tw, [tw.one(), -q.inverse()]) ** a
            const = const * (-q) ** a
    return C, const


def _fold_constant(C, const, notes):
    """Push the constant of z^p = const*C into the equation.

    The pi-power part of the constant must be a p-th power (it is, in
    every construction here); the unit part is folded into C, and its
    p-th root over the perfect residue field is left implicit.
    """
    tw = C.tw
    if const.same(tw.one()):
        return C
    m = const.pival()
    if m % tw.p:
        notes["constant"] = ("pi-power %d of the chart constant is not a "
                             "p-th power; root adjoined implicitly" % m)
    unit = const * tw.pi_power(-m)
    return C.scale(unit)


def _integral_branch_residues(cover):
    out = set()
    for q, _ in cover.factors:
        v = q.valuation()
        if v is INF or v >= 0:
            out.add(q.residue())
    if cover.infinity_exponent():
        pass  # infinity never collides with a finite residue root
    return out


def _residue_center_roots(S, exclude):
    """Simple residue roots of the integral polynomial S, off ``exclude``."""
    ff = S.tw.ff
    rbar = S.residue_poly()
    if not pnormalize(rbar):
        raise ConstructionMismatch("critical polynomial reduces to zero")
    roots = [r for r in proots(ff, rbar) if r not in exclude]
    der = pderiv(ff, rbar)
    return [r for r in roots if peval(ff, der, r) != 0]


def _component_from_AS(outcome, chart, expect_genus, label):
    curve = outcome.payload
    g = as_genus(curve)
    if g != expect_genus:
        raise ConstructionMismatch(
            "%s: genus %d from the conductor oracle, expected %d"
            % (label, g, expect_genus))
    bc = curve.branch_count()
    return Component(
        kind="artin_schreier",
        equation=curve.render(),
        genus=g,
        p_rank=p_rank_DS(curve.ff.p, bc),
        branch_points=bc,
        chart=chart,
        payload=curve,
    )


def _certified_AS_chart(C, d, b, h_poly, expect_genus, label, N=None):
    """Blow up, certify through the trichotomy, and package a component."""
    tw = C.tw
    chart = blowup_chart(C, d, b, N=N)
    if h_poly is None:
        s = chart.N // tw.p
        h_poly = Poly.x_power(tw, s)
    chart.h = h_poly
    out = torsor_case(chart.poly, h_poly)
    if out.case != TorsorOutcome.ARTIN_SCHREIER:
        raise ConstructionMismatch(
            "%s: expected an Artin-Schreier fiber, got %s (w = %s)"
            % (label, out.case, out.w))
    chart.notes["w"] = str(out.w)
    chart.notes["label"] = label
    return _component_from_AS(out, chart, expect_genus, label)


# ---------------------------------------------------------------------------
# the per-case builders
# ---------------------------------------------------------------------------

def _build_good_1a(n, big, checks):
    tw = big
    p = tw.p
    lam = n.tower.embed(n.lam, big)
    beta, gamma = n.beta, n.gamma
    nn = beta + gamma + 1
    cover = FactoredCover(tw, tw.one(), [
        (tw.zero(), 1), (tw.one(), beta), (lam, gamma)])
    C, const = _cover_to_poly(cover)
    d = (lam * (beta + 1) + tw.from_int(gamma + 1)) / tw.from_int(2 * nn)
    b = tw.pi_power(tw.e * p // (3 * (p - 1)))
    # sufficiency bookkeeping: v(f'(d)) >= v(b^2), v(f''(d)) >= v(b^2)
    vd1 = C.deriv().eval(d)
    vd2 = C.deriv().deriv().eval(d)
    vb2 = (b * b).valuation()
    checks.append(_check("good-1a-derivative-depths",
                         (vd1.is_zeroish() or vd1.valuation() >= vb2)
                         and (vd2.is_zeroish() or vd2.valuation() >= vb2),
                         "v(f'(d))=%s, v(f''(d))=%s, v(b^2)=%s"
                         % (_vstr(vd1), _vstr(vd2), vb2)))
    chart0 = blowup_chart(C, d, b)
    checks.append(_check("good-1a-lemma-hh", lemma_hh_check(chart0.poly),
                         "v(x^N - chart) = v(tau)"))
    comp = _certified_AS_chart(C, d, b, None, p - 1, "good-1a chart")
    if comp.p_rank != 0:
        raise ConstructionMismatch("type 1a must have p-rank 0")
    # loop closure: one wild branch point of conductor-order 3
    orders = [(order, deg) for _, order, deg in comp.payload.profile]
    checks.append(_check("good-1a-pole-profile",
                         max(o for o, _ in orders) == 3
                         and sum(d for _, d in orders) == 1,
                         "single pole of order 3 gives genus p-1"))
    return [comp], []


def _build_via_1b(n, big, checks):
    tw = big
    p = tw.p
    lam = n.tower.embed(n.lam, big)
    beta, gamma = n.beta, n.gamma
    nn = beta + gamma + 1
    cover = FactoredCover(tw, tw.one(), [
        (tw.zero(), 1), (tw.one(), beta), (lam, gamma)])
    C, _ = _cover_to_poly(cover)
    # critical quadratic g = x^2 - x (lam(beta+1)+gamma+1)/nn + lam/nn
    Bc = -(lam * (beta + 1) + tw.from_int(gamma + 1)) / tw.from_int(nn)
    Cc = lam / tw.from_int(nn)
    disc = Bc * Bc - Cc * 4
    if disc.is_zeroish():
        raise InsufficientPrecision("critical discriminant indistinguishable from 0")
    sq = tw.sqrt(disc)
    inv2 = tw.from_rational(Fraction(1, 2))
    centers = [(-Bc + sq) * inv2, (-Bc - sq) * inv2]
    vt = tw.tau_valuation()
    comps = []
    for i, d in enumerate(centers):
        c2 = C.deriv().deriv().eval(d)
        if c2.is_zeroish():
            raise ConstructionMismatch("degenerate second derivative at a center")
        vb = (vt - c2.valuation() + C.eval(d).valuation()) / 2
        if (vb * tw.e).denominator != 1:
            raise ConstructionMismatch("radius valuation %s not in the value group" % vb)
        b = tw.pi_power(int(vb * tw.e))
        sep = centers[0] - centers[1]
        if not sep.valuation() < vb:
            raise ConstructionMismatch("critical disks are not separated")
        comps.append(_certified_AS_chart(
            C, d, b, None, (p - 1) // 2, "type-3 chart %d (v(lam)=0)" % i))
    checks.append(_check("via-1b-distinct-disks", True,
                         "two separated critical disks"))
    return comps, [(0, 1, 1)]


def _build_via_2a(n, big, checks):
    tw = big
    p = tw.p
    lam = n.tower.embed(n.lam, big)
    beta, gamma = n.beta, n.gamma
    cover = FactoredCover(tw, tw.one(), [
        (tw.zero(), 1), (tw.one(), beta), (lam, gamma)])
    b = tw.pi_power(tw.e * p // (2 * (p - 1)))
    comps = []
    for idx, (cvr, tag) in enumerate([
            (cover, "unit disk"),
            (cover.moebius_pullback(Moebius(lam, tw.zero(), tw.zero(), tw.one()))[0],
             "disk of radius lam")]):
        C, const = _cover_to_poly(cvr)
        notes = {}
        C = _fold_constant(C, const, notes)
        roots = _residue_center_roots(C.deriv(), _integral_branch_residues(cvr))
        if len(roots) != 1:
            raise ConstructionMismatch(
                "expected one critical residue root on the %s, found %d"
                % (tag, len(roots)))
        d = hensel_root(C.deriv(), roots[0])
        comp = _certified_AS_chart(C, d, b, None, (p - 1) // 2,
                                   "type-3 chart on the %s" % tag)
        comp.chart.notes.update(notes)
        comps.append(comp)
    checks.append(_check("via-2a-centers", True,
                         "one critical point per separated disk"))
    return comps, [(0, 1, 1)]


def _build_good_1b(n, big, checks):
    tw = big
    p = tw.p
    lam = n.tower.embed(n.lam, big)
    beta, gamma = n.beta, n.gamma
    cover = FactoredCover(tw, tw.one(), [
        (tw.zero(), 1), (tw.one(), beta), (lam, gamma)])
    tau = tw.tau()
    moved, _ = cover.moebius_pullback(Moebius(tau, tw.zero(), tw.zero(), tw.one()))
    C, const = _cover_to_poly(moved)
    notes = {}
    C = _fold_constant(C, const, notes)
    # residue is (unit) x^p; h = (p-th root of the unit) * x
    red = pnormalize(C.residue_poly())
    if len(red) - 1 != p or any(red[:-1]):
        raise ConstructionMismatch("smooth 1b model does not reduce to c*x^p")
    rho = tw.lift_ff(tw.ff.pth_root(red[p]))
    h = Poly(tw, [tw.zero(), rho])
    out = _torsor_outcome(C, h)
    if out.case != TorsorOutcome.ARTIN_SCHREIER:
        raise ConstructionMismatch("1b smooth model: expected Artin-Schreier, got %s"
                                   % out.case)
    chart = BlowupChart(None, None, C.degree, C, coord="x0/tau", h=h,
                        notes=dict(notes, w=str(out.w), label="smooth model at x0/tau"))
    comp = _component_from_AS(out, chart, p - 1, "1b smooth model")
    if comp.branch_points != 2 or comp.p_rank != p - 1:
        raise ConstructionMismatch(
            "type 1b must have 2 branch points and p-rank p-1, got %d/%d"
            % (comp.branch_points, comp.p_rank))
    checks.append(_check("good-1b-two-branch-points", True,
                         "special fiber branched at exactly two points"))
    return [comp], []


def _inseparable_line_component(C, label, branch_points, chart_notes):
    tw = C.tw
    out = _torsor_outcome(C, Poly(tw, []))
    if out.case != TorsorOutcome.INSEPARABLE:
        raise ConstructionMismatch("%s: expected an inseparable fiber, got %s"
                                   % (label, out.case))
    curve = out.payload
    chart_notes = dict(chart_notes, w=str(out.w), label=label)
    return Component(
        kind="inseparable",
        equation=curve.render(),
        genus=0,
        p_rank=0,
        branch_points=branch_points,
        chart=chart_notes,
        payload=curve,
    )


def _build_mumford_2(n, big, checks):
    tw = big
    p = tw.p
    lam = n.tower.embed(n.lam, big)
    beta, gamma = n.beta, n.gamma
    cover = FactoredCover(tw, tw.one(), [
        (tw.zero(), 1), (tw.one(), beta), (lam, gamma)])
    # outer component: the standard model itself
    C0, const0 = _cover_to_poly(cover)
    notes0 = {}
    C0 = _fold_constant(C0, const0, notes0)
    comp0 = _inseparable_line_component(
        C0, "outer line (unit disk)", 2, dict(notes0, coord="x0"))
    # inner component: x0 = lam / x1
    moved, _ = cover.moebius_pullback(Moebius(tw.zero(), lam, tw.one(), tw.zero()))
    C1, const1 = _cover_to_poly(moved)
    notes1 = {}
    C1 = _fold_constant(C1, const1, notes1)
    comp1 = _inseparable_line_component(
        C1, "inner line (disk around the cluster {0, lam})", 2,
        dict(notes1, coord="lam/x0"))
    # the annulus between them splits into p sheets: certify w > v(tau)
    mu = tw.sqrt(lam)
    mid, _ = cover.moebius_pullback(Moebius(mu, tw.zero(), tw.zero(), tw.one()))
    Cm, constm = _cover_to_poly(mid)
    notesm = {}
    Cm = _fold_constant(Cm, constm, notesm)
    rbar = pnormalize(Cm.residue_poly())
    if len(rbar) - 1 != p or any(rbar[:-1]):
        raise ConstructionMismatch("annulus model does not reduce to c*x^p")
    rho = tw.lift_ff(tw.ff.pth_root(rbar[p]))
    h = Poly(tw, [tw.zero(), rho])
    r = (h ** p) - Cm
    w = r.gauss_valuation()
    ok = w > tw.tau_valuation()
    checks.append(_check("mumford-annulus-splits", ok,
                         "v(h^p - annulus equation) = %s > v(tau) = %s"
                         % (w, tw.tau_valuation())))
    if not ok:
        raise ConstructionMismatch("annulus torsor does not split; not Mumford")
    return [comp0, comp1], [(0, 1, p)]


def _build_via_2b3(n, big, checks, subcase):
    tw = big
    p = tw.p
    lam = n.tower.embed(n.lam, big)
    beta, gamma = n.beta, n.gamma
    mu = tw.sqrt(lam)
    eps = mu / (tw.one() + mu)
    cover = FactoredCover(tw, tw.one(), [
        (tw.zero(), 1), (tw.one(), beta), (lam, gamma)])
    # symmetrized coordinate x0 = mu x1 / (1 - x1); the constant of the
    # pulled-back equation cancels in every chart and is only recorded
    moved, _ = cover.moebius_pullback(Moebius(mu, tw.zero(), -tw.one(), tw.one()))
    F, constF = _cover_to_poly(moved)
    notesF = {"dropped_constant_valuation": str(constF.valuation())}
    if F.degree != 2 * p or not F.c[-1].same(tw.one()):
        raise ConstructionMismatch("symmetrized equation is not monic of degree 2p")
    h_glob = Poly(tw, [tw.zero(), -tw.one(), tw.one()])  # x(x-1)
    T = (h_glob ** p) - F
    vT = T.gauss_valuation()
    if vT != mu.valuation():
        raise ConstructionMismatch(
            "v(h^p - F) = %s, expected v(lambda^(1/2)) = %s" % (vT, mu.valuation()))
    T0 = T.divexact_el(mu)
    tbar = [tw.ff.neg(c) for c in T0.residue_poly()]
    checks.append(_check("2b3-inseparable-intermediate",
                         not is_pth_power(tw.ff, tbar),
                         "t(x1) = -((h^p-F)/lambda^(1/2))~ not a p-th power"))
    vt = tw.tau_valuation()
    vb = (vt - mu.valuation()) / 2
    if (vb * tw.e).denominator != 1:
        raise ConstructionMismatch("v(b) = %s not in the value group" % vb)
    b = tw.pi_power(int(vb * tw.e))
    branch_res = _integral_branch_residues(moved)

    charts = []       # (C_used, h_used, d, coord_label)
    if (beta + 1) % p:
        centers = _centers_2b3(tw, F, h_glob, T0, mu, subcase, branch_res,
                               expect=2)
        for i, d in enumerate(centers):
            charts.append((F, h_glob, d, "x1 chart %d" % i))
    else:
        centers = _centers_2b3(tw, F, h_glob, T0, mu, subcase, branch_res,
                               expect=1)
        charts.append((F, h_glob, centers[0], "x1 finite chart"))
        # second singular point at infinity: flip y = 1/x1
        Fs = F.reverse(2 * p)
        hs = h_glob.reverse(2)
        Ts = (hs ** p) - Fs
        if Ts.gauss_valuation() != mu.valuation():
            raise ConstructionMismatch("flipped model loses the lambda^(1/2) level")
        T0s = Ts.divexact_el(mu)
        flip_branch = set()
        for x in branch_res:
            if x:
                flip_branch.add(tw.ff.inv(x))
        centers_flip = _centers_2b3(tw, Fs, hs, T0s, mu, subcase, flip_branch,
                                    expect=None)
        centers_flip = [d for d in centers_flip if d.residue() == 0]
        if len(centers_flip) != 1:
            raise ConstructionMismatch(
                "expected exactly one flipped center with residue 0")
        charts.append((Fs, hs, centers_flip[0], "1/x1 chart"))

    comps = []
    for C_used, h_used, d, label in charts:
        if subcase == VIA_2B3_I:
            h2 = None  # defaults to x2^2
        else:
            # transport h through the blow-up: x2^2 h(d + b/x2)/h(d);
            # for the quadratic h this is x2^2 + b h'(d)/h(d) x2 + b^2/h(d),
            # while the flipped (degree-1) h correctly loses the constant
            h2 = _transported_h(h_used, d, b, 2)
        comps.append(_certified_AS_chart(
            C_used, d, b, h2, (p - 1) // 2, "2b3 %s chart at %s" % (subcase, label),
            N=2 * p))
        comps[-1].chart.notes["coord"] = label
    return comps, [(0, 1, 1)]


def _transported_h(h_used, d, b, s):
    tw = h_used.tw
    A = h_used.taylor(d, b)
    inv = A.coeff(0).inverse()
    coeffs = [tw.zero()] * (s + 1)
    for i in range(min(A.degree, s) + 1):
        coeffs[s - i] = A.coeff(i) * inv
    return Poly(tw, coeffs)


def _centers_2b3(tw, F, h, T0, mu, subcase, branch_res, expect):
    """Centers: roots of F'/mu (sub-case i) or of T0' (sub-case ii)."""
    if subcase == VIA_2B3_I:
        S = F.deriv()
        vS = S.gauss_valuation()
        if vS != mu.valuation():
            raise ConstructionMismatch(
                "content of F' is %s, expected v(lambda^(1/2)) = %s"
                % (vS, mu.valuation()))
        S = S.divexact_el(mu)
    else:
        S = T0.deriv()
    roots = _residue_center_roots(S, branch_res)
    if not roots:
        raise ConstructionMismatch("no valid critical residue roots")
    if expect is not None and len(roots) != expect:
        raise ConstructionMismatch(
            "expected %d critical residue roots, found %d" % (expect, len(roots)))
    return [hensel_root(S, r) for r in sorted(roots)]


# ---------------------------------------------------------------------------
# assembly, verification, applications
# ---------------------------------------------------------------------------

def _vstr(el):
    v = el.valuation() if not el.is_zeroish() else INF
    return "inf" if v is INF else str(v)


def _check(name, passed, detail):
    return {"name": name, "passed": bool(passed), "detail": detail}


_BUILDERS = {
    (TYPE_1A, None): _build_good_1a,
    (TYPE_1B, None): _build_good_1b,
    (TYPE_2, None): _build_mumford_2,
    (TYPE_3, VIA_1B): _build_via_1b,
    (TYPE_3, VIA_2A): _build_via_2a,
}


def build_stable_model(n, cls=None):
    """Construct and certify the stable model of a normalized cover."""
    if cls is None:
        cls = classify(n)
    spec = required_extension(n, cls)
    big = _big_tower(n, spec)
    checks = []
    if cls.subroute in (VIA_2B3_I, VIA_2B3_II):
        comps, edges = _build_via_2b3(n, big, checks, cls.subroute)
    else:
        builder = _BUILDERS[(cls.rtype, cls.subroute)]
        comps, edges = builder(n, big, checks)
    model = StableModel(cls, comps, edges, spec, checks, normalized=n)
    model.checks.extend(verify_model(model))
    for c in model.checks:
        if not c["passed"]:
            raise ConstructionMismatch("model check failed: %s (%s)"
                                       % (c["name"], c["detail"]))
    return model


def verify_model(m):
    """Re-check every structural invariant; returns check records."""
    p = m.normalized.p if m.normalized else None
    checks = []
    total = m.genus_total()
    checks.append(_check(
        "genus-conservation", total == p - 1,
        "sum of genera + Betti = %d, expected p-1 = %d" % (total, p - 1)))
    for i, c in enumerate(m.components):
        if c.kind == "artin_schreier":
            g = as_genus(c.payload)
            checks.append(_check(
                "component-%d-genus-oracle" % i, g == c.genus,
                "conductor oracle gives %d, stored %d" % (g, c.genus)))
            checks.append(_check(
                "component-%d-p-rank" % i,
                c.p_rank == p_rank_DS(p, c.branch_points),
                "Deuring-Shafarevich from %d branch points" % c.branch_points))
            checks.append(_check(
                "component-%d-genus-multiple" % i,
                c.genus % ((p - 1) // 2) == 0,
                "positive genus is a multiple of (p-1)/2"))
        else:
            checks.append(_check(
                "component-%d-genus-zero" % i, c.genus == 0,
                "line / inseparable components are rational"))
    t = m.classification.rtype
    if t in (TYPE_1A, TYPE_1B):
        ok = len(m.components) == 1 and not m.edges
        checks.append(_check("shape-good", ok, "single smooth component"))
        want_rank = 0 if t == TYPE_1A else p - 1
        checks.append(_check("good-p-rank",
                             m.components[0].p_rank == want_rank,
                             "p-rank %d expected" % want_rank))
    elif t == TYPE_2:
        ok = (len(m.components) == 2
              and all(c.genus == 0 for c in m.components)
              and len(m.edges) == 1 and m.edges[0][2] == p)
        checks.append(_check("shape-mumford", ok,
                             "two rational components meeting in p points"))
        checks.append(_check("mumford-stability", p >= 3,
                             "rational components meet in p >= 3 points"))
        checks.append(_check("mumford-betti", m.betti() == p - 1,
                             "Betti number %d" % m.betti()))
    elif t == TYPE_3:
        ok = (len(m.components) == 2
              and all(c.genus == (p - 1) // 2 for c in m.components)
              and len(m.edges) == 1 and m.edges[0][2] == 1)
        checks.append(_check("shape-two-components", ok,
                             "two genus-(p-1)/2 components, one node"))
    return checks


def check_qwerty(tower, c1, c2):
    """The application cover z^p = (x-c1)^(p-1)(x+c1)(x-c2)^(p-1)(x+c2).

    Classifies it and asserts the type is never 1a.  Returns
    (classification, normalized cover, report)."""
    p = tower.p
    if p <= 3:
        raise UnsupportedPrime("the application requires p > 3")
    datum = CoverDatum(tower, [c1, -c1, c2, -c2], [p - 1, 1, p - 1, 1])
    n = normalize(datum)
    cls = classify(n)
    report = [_check("not-good-1a", cls.rtype != TYPE_1A,
                     "classified as %s" % cls)]
    if cls.rtype == TYPE_1A:
        raise ConstructionMismatch(
            "the application cover classified as 1a; this contradicts "
            "the impossibility argument")
    return cls, n, report


def deuring_good_reduction(lam):
    """Potentially good reduction of y^2 = x(x-1)(x-lam) at p = 2:
    true iff v(j(E)) >= 0 for j = 2^8 (lam^2-lam+1)^3 / (lam^2 (lam-1)^2)."""
    tw = lam.tw
    if tw.p != 2:
        raise UnsupportedPrime("the Deuring criterion lives at p = 2")
    one = tw.one()
    if lam.is_zeroish() or lam.same(one):
        raise InvalidInput("lambda must avoid {0, 1}")
    num = (lam * lam - lam + one)
    vnum = num.valuation() if not num.is_zeroish() else INF
    if vnum is INF:
        return True
    v = 8 + 3 * vnum - 2 * lam.valuation() - 2 * (lam - one).valuation()
    return v >= 0


def deuring_j_valuation(lam):
    tw = lam.tw
    one = tw.one()
    num = lam * lam - lam + one
    if num.is_zeroish():
        return INF
    return 8 + 3 * num.valuation() - 2 * lam.valuation() - 2 * (lam - one).valuation()
