"""Quartic hyperelliptic curves y^2 = f(x) over odd-characteristic fields.

Implements the normalization chain quartic -> reduced quartic
y^2 = (x^2+c)^2 + bx - a, the mutually inverse maps to and from the cubic
v^2 = u^3 - 4c u^2 + 4a u + b^2, exact point counting, the affine-count
correspondence |C(F)| = |E(F)| - 1, and the exact-integer Hasse-type bound
checks.  Everything brute-force and exact; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .exactnum import MPoly, UPoly, mpoly_ring, sylvester_resultant
from .ffield import Field, FieldElement, is_square, sqrt


class CurveError(ValueError):
    pass


def _require_odd(ctx: Field) -> None:
    if ctx.p == 2:
        raise CurveError("curve machinery requires odd characteristic")


# ----------------------------------------------------------------------
# polynomials over a field, as ascending FieldElement lists
# ----------------------------------------------------------------------


def poly_trim(f: list[FieldElement]) -> list[FieldElement]:
    while f and not f[-1]:
        f.pop()
    return f


def poly_degree(f: list[FieldElement]) -> int:
    return len(poly_trim(list(f))) - 1


def poly_eval_enc(f: list[FieldElement], ctx: Field, x_enc: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = ctx.add_enc(ctx.mul_enc(acc, x_enc), c.n)
    return acc


def poly_derivative(f: list[FieldElement], ctx: Field) -> list[FieldElement]:
    return poly_trim([ctx.from_int(i) * c for i, c in enumerate(f)][1:])


def poly_rem(f: list[FieldElement], g: list[FieldElement], ctx: Field) -> list[FieldElement]:
    f = poly_trim(list(f))
    g = poly_trim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = g[-1].inverse()
    while len(f) >= len(g):
        factor = f[-1] * inv_lead
        shift = len(f) - len(g)
        for i, c in enumerate(g):
            f[shift + i] = f[shift + i] - factor * c
        f.pop()
        poly_trim(f)
    return f


def poly_gcd(f: list[FieldElement], g: list[FieldElement], ctx: Field) -> list[FieldElement]:
    f = poly_trim(list(f))
    g = poly_trim(list(g))
    while g:
        f, g = g, poly_rem(f, g, ctx)
    if f:
        lead_inv = f[-1].inverse()
        f = [c * lead_inv for c in f]
    return f


def is_separable(f: list[FieldElement], ctx: Field) -> bool:
    """True iff gcd(f, f') = 1, i.e. f has no repeated roots."""
    _require_odd(ctx)
    f = poly_trim(list(f))
    if not f:
        raise CurveError("zero polynomial has no separability")
    g = poly_gcd(f, poly_derivative(f, ctx), ctx)
    return len(g) == 1


def count_affine_points(f: list[FieldElement], ctx: Field) -> int:
    """|{(x,y) in GF(q)^2 : y^2 = f(x)}| by direct enumeration."""
    _require_odd(ctx)
    ctx._ensure_square_tables()
    sq = ctx._sq_count
    total = 0
    for x in range(ctx.q):
        total += sq[poly_eval_enc(f, ctx, x)]
    return total


# ----------------------------------------------------------------------
# curve shapes
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class QuarticCurve:
    """y^2 = a0 + a1 x + a2 x^2 + a3 x^3 + a4 x^4 over an odd-q field."""

    ctx: Field
    coeffs: tuple[FieldElement, ...]  # (a0, .., a4)

    def __post_init__(self):
        _require_odd(self.ctx)
        if len(self.coeffs) != 5:
            raise CurveError("need exactly 5 coefficients a0..a4")

    def poly(self) -> list[FieldElement]:
        return list(self.coeffs)


@dataclass(frozen=True)
class ReducedQuartic:
    """y^2 = (x^2 + c)^2 + b x - a."""

    ctx: Field
    a: FieldElement
    b: FieldElement
    c: FieldElement

    def poly(self) -> list[FieldElement]:
        ctx = self.ctx
        # (x^2+c)^2 + bx - a = x^4 + 2c x^2 + b x + (c^2 - a)
        return poly_trim([
            self.c * self.c - self.a,
            self.b,
            self.c + self.c,
            ctx.zero,
            ctx.one,
        ])

    def is_separable(self) -> bool:
        return is_separable(self.poly(), self.ctx)

    def cubic(self) -> "WeierstrassCubic":
        return WeierstrassCubic(self.ctx, self.a, self.b, self.c)

    def count_points(self) -> int:
        return count_affine_points(self.poly(), self.ctx)


@dataclass(frozen=True)
class WeierstrassCubic:
    """v^2 = u^3 - 4c u^2 + 4a u + b^2, sharing (a, b, c) with the quartic."""

    ctx: Field
    a: FieldElement
    b: FieldElement
    c: FieldElement

    def poly(self) -> list[FieldElement]:
        ctx = self.ctx
        four = ctx.from_int(4)
        return poly_trim([
            self.b * self.b,
            four * self.a,
            -(four * self.c),
            ctx.one,
        ])

    def is_separable(self) -> bool:
        return is_separable(self.poly(), self.ctx)

    def count_points(self) -> int:
        return count_affine_points(self.poly(), self.ctx)


@dataclass
class TransformLog:
    """Normalization steps with their affine-point-count deltas."""

    steps: list = dc_field(default_factory=list)

    def record(self, name: str, param, delta: int = 0) -> None:
        self.steps.append({"step": name, "param": param, "delta": delta})

    def total_delta(self) -> int:
        return sum(s["delta"] for s in self.steps)

    def to_json(self) -> list:
        out = []
        for s in self.steps:
            p = s["param"]
            out.append({"step": s["step"],
                        "param": p.to_json() if hasattr(p, "to_json") else p,
                        "delta": s["delta"]})
        return out


# ----------------------------------------------------------------------
# the normalization chain
# ----------------------------------------------------------------------


def _shift_poly(f: list[FieldElement], ctx: Field, t: FieldElement) -> list[FieldElement]:
    """Coefficients of f(x + t)."""
    out = [ctx.zero] * len(f)
    for coeff in reversed(f):
        # out(x) = out(x) * (x + t) + coeff
        carry = ctx.zero
        new = [ctx.zero] * len(out)
        for i in range(len(out) - 1, 0, -1):
            new[i] = out[i - 1]
        for i in range(len(out)):
            new[i] = new[i] + out[i] * t
        new[0] = new[0] + coeff
        out = new
    return out


def find_rational_point(f: list[FieldElement], ctx: Field,
                        prefer_nonzero_y: bool = True) -> Optional[tuple[FieldElement, FieldElement]]:
    """First (x, y) with y^2 = f(x) in encoding order on x, smallest y.

    With prefer_nonzero_y, points with y != 0 win over y = 0 points.
    """
    fallback = None
    for xn in range(ctx.q):
        val = ctx.elem(poly_eval_enc(f, ctx, xn))
        y = sqrt(val)
        if y is None:
            continue
        if y.n != 0 or not prefer_nonzero_y:
            return ctx.elem(xn), y
        if fallback is None:
            fallback = (ctx.elem(xn), y)
    return fallback


def reduce_quartic(curve: QuarticCurve,
                   rational_point: Optional[tuple[FieldElement, FieldElement]] = None
                   ) -> Optional[tuple[ReducedQuartic, TransformLog]]:
    """Normalize a separable quartic to (x^2+c)^2 + bx - a form.

    Chain: shift a known rational point to x = 0, invert (x,y) -> (1/x, y/x^2)
    to make the leading coefficient a square, rescale y to make it 1, shift x
    to kill the cubic term.  Only the inversion changes the affine count and
    its delta is recorded.  Returns None when the curve has no rational point
    and a4 is not a square (not birationally handled), or when the only
    rational points have y = 0 and a4 is not a square (the inversion then
    lands on a cubic, outside this reduced shape).
    """
    ctx = curve.ctx
    f = curve.poly()
    if poly_degree(f) != 4:
        raise CurveError("quartic reduction needs degree exactly 4")
    if not is_separable(f, ctx):
        raise CurveError("inseparable quartic")
    log = TransformLog()

    pt = rational_point
    if pt is not None:
        x0, y0 = pt
        if ctx.elem(poly_eval_enc(f, ctx, x0.n)) != y0 * y0:
            raise CurveError("supplied point is not on the curve")
    elif not is_square(f[4]):
        pt = find_rational_point(f, ctx)
        if pt is None:
            return None

    if pt is None:
        # a4 already a square; the shift/invert steps are not needed
        log.record("shift-x", ctx.zero)
        log.record("invert", None, delta=0)
    else:
        x0, y0 = pt
        if y0.n == 0:
            # inversion would produce a cubic (already a Weierstrass model)
            return None
        if x0.n != 0:
            f = poly_trim(_shift_poly(f, ctx, x0))
            log.record("shift-x", x0)
        else:
            log.record("shift-x", ctx.zero)
        # now a0 = y0^2 is a nonzero square; invert to move it to the top
        lost = ctx.square_count_enc(f[0].n)
        f = f + [ctx.zero] * (5 - len(f))
        gained = ctx.square_count_enc(f[4].n)
        f = list(reversed(f))
        log.record("invert", None, delta=gained - lost)
        f = poly_trim(f)
        if poly_degree(f) != 4:
            raise CurveError("inversion dropped the degree (bug)")

    alpha = sqrt(f[4])
    if alpha is None or alpha.n == 0:
        raise CurveError("leading coefficient not a nonzero square (bug)")
    inv_a4 = (alpha * alpha).inverse()
    f = [c * inv_a4 for c in f]
    log.record("scale-y", alpha)

    shift = -(f[3] / ctx.from_int(4))
    if shift.n != 0:
        f = poly_trim(_shift_poly(f, ctx, shift))
        f = f + [ctx.zero] * (5 - len(f))
    log.record("shift-x-2", shift)
    if f[3].n != 0:
        raise CurveError("cubic term survived the final shift (bug)")

    a2, a1, a0 = f[2], f[1], f[0]
    c = a2 / ctx.from_int(2)
    b = a1
    a = c * c - a0
    rq = ReducedQuartic(ctx, a, b, c)
    if rq.poly() != poly_trim(f):
        raise CurveError("reduced form does not reproduce the polynomial (bug)")
    return rq, log


# ----------------------------------------------------------------------
# the point maps between C and E
# ----------------------------------------------------------------------


def on_reduced(rq: ReducedQuartic, x: FieldElement, y: FieldElement) -> bool:
    t = x * x + rq.c
    return y * y == t * t + rq.b * x - rq.a


def on_cubic(e: WeierstrassCubic, u: FieldElement, v: FieldElement) -> bool:
    four = e.ctx.from_int(4)
    return v * v == u * u * u - four * e.c * u * u + four * e.a * u + e.b * e.b


def phi(rq: ReducedQuartic, x: FieldElement, y: FieldElement) -> tuple[FieldElement, FieldElement]:
    """(x, y) -> (u, v) = (2(x^2 + y + c), 2xu + b)."""
    if not on_reduced(rq, x, y):
        raise CurveError("point not on the quartic")
    two = rq.ctx.from_int(2)
    u = two * (x * x + y + rq.c)
    v = two * x * u + rq.b
    return u, v


def psi(rq: ReducedQuartic, u: FieldElement, v: FieldElement) -> tuple[FieldElement, FieldElement]:
    """(u, v) -> (x, y) = ((v - b)/(2u), -x^2 + (u - 2c)/2); needs u != 0."""
    if u.n == 0:
        raise CurveError("psi undefined at u = 0")
    if not on_cubic(rq.cubic(), u, v):
        raise CurveError("point not on the cubic")
    ctx = rq.ctx
    two = ctx.from_int(2)
    x = (v - rq.b) / (two * u)
    y = -(x * x) + (u - two * rq.c) / two
    return x, y


def curve_points(f: list[FieldElement], ctx: Field) -> list[tuple[int, int]]:
    """All (x, y) encodings with y^2 = f(x), ordered."""
    pts = []
    for xn in range(ctx.q):
        val = poly_eval_enc(f, ctx, xn)
        r = ctx.sqrt_enc(val)
        if r is None:
            continue
        if r == 0:
            pts.append((xn, 0))
        else:
            other = ctx.neg_enc(r)
            pts.append((xn, min(r, other)))
            pts.append((xn, max(r, other)))
    return pts


def verify_correspondence(rq: ReducedQuartic) -> dict:
    """Check |C(F)| = |E(F)| - 1 and the explicit bijection with exclusions.

    Counting is the oracle; the phi/psi matching is the claim under test.
    Both run, and any disagreement fails the report.
    """
    ctx = rq.ctx
    if not rq.is_separable():
        raise CurveError("reduced quartic is inseparable")
    e = rq.cubic()
    g_separable = e.is_separable()

    c_pts = curve_points(rq.poly(), ctx)
    e_pts = curve_points(e.poly(), ctx)
    count_c, count_e = len(c_pts), len(e_pts)

    problems = []
    if not g_separable:
        problems.append("cubic inseparable despite separable quartic")
    if count_c != count_e - 1:
        problems.append(f"count mismatch: |C|={count_c}, |E|={count_e}")

    e_set = set(e_pts)
    if rq.b.n == 0:
        excluded_c: set[tuple[int, int]] = set()
        excluded_e = {(0, 0)}
        if (0, 0) not in e_set:
            problems.append("(0,0) missing from E although b = 0")
    else:
        x0 = rq.a / rq.b
        y0 = rq.c + x0 * x0
        bn = rq.b.n
        excluded_c = {(x0.n, (-y0).n)}
        excluded_e = {(0, bn), (0, ctx.neg_enc(bn))}
        for pt in ((x0.n, y0.n), (x0.n, (-y0).n)):
            if pt not in set(c_pts):
                problems.append(f"expected quartic point {pt} missing")
        for pt in excluded_e:
            if pt not in e_set:
                problems.append(f"expected cubic point {pt} missing")

    image = {}
    for xn, yn in c_pts:
        if (xn, yn) in excluded_c:
            continue
        u, v = phi(rq, ctx.elem(xn), ctx.elem(yn))
        tgt = (u.n, v.n)
        if tgt not in e_set:
            problems.append(f"phi({xn},{yn}) off the cubic")
            continue
        if tgt in excluded_e:
            problems.append(f"phi({xn},{yn}) hit excluded {tgt}")
            continue
        if tgt in image:
            problems.append(f"phi not injective at {tgt}")
        image[tgt] = (xn, yn)
        x2, y2 = psi(rq, u, v)
        if (x2.n, y2.n) != (xn, yn):
            problems.append(f"psi(phi({xn},{yn})) != id")
    expected_targets = e_set - excluded_e
    if set(image) != expected_targets:
        problems.append("phi not onto E minus exclusions")

    return {
        "q": ctx.q,
        "a": rq.a.to_json(),
        "b": rq.b.to_json(),
        "c": rq.c.to_json(),
        "countC": count_c,
        "countE": count_e,
        "pass": not problems,
        "problems": sorted(problems),
    }


# ----------------------------------------------------------------------
# exact Hasse-type bound
# ----------------------------------------------------------------------


def _leq_q_plus_2sqrt(count: int, q: int, offset: int) -> bool:
    """count <= q + offset + 2*sqrt(q), compared in exact integers."""
    base = q + offset
    if count <= base:
        return True
    return (count - base) ** 2 <= 4 * q


def hasse_check(f: list[FieldElement], ctx: Field) -> dict:
    """Affine-count bound for y^2 = f(x), deg f in 1..4, f separable.

    deg <= 2: count <= q + 1 (elementary); deg 3: count <= q + 2*sqrt(q);
    deg 4: count <= q + 1 + 2*sqrt(q).  All comparisons exact.
    """
    d = poly_degree(f)
    if d < 1 or d > 4:
        raise CurveError("bound applies to degrees 1..4 only")
    if not is_separable(f, ctx):
        raise CurveError("inseparable polynomial")
    count = count_affine_points(f, ctx)
    q = ctx.q
    if d <= 2:
        ok = count <= q + 1
        bound = "q+1"
    elif d == 3:
        ok = _leq_q_plus_2sqrt(count, q, 0)
        bound = "q+2*sqrt(q)"
    else:
        ok = _leq_q_plus_2sqrt(count, q, 1)
        bound = "q+1+2*sqrt(q)"
    return {"q": q, "degree": d, "count": count, "bound": bound, "pass": ok}


# ----------------------------------------------------------------------
# the shared-discriminant identity, symbolically over Q
# ----------------------------------------------------------------------


def discriminant_identity() -> dict:
    """disc((X^2+c)^2 + bX - a) == disc(X^3 - 4cX^2 + 4aX + b^2) over Q[a,b,c]."""
    frame = ("a", "b", "c")
    const, var = mpoly_ring(frame)
    a, b, c = var("a"), var("b"), var("c")
    zero = MPoly.zero(frame)
    one = const(1)

    f = UPoly([c * c - a, b, c + c, zero, one])
    fp = UPoly([b, c + c + c + c, zero, const(4)])
    # disc(f) = (-1)^(4*3/2) Res(f, f') / lc(f) = Res(f, f')
    disc_f = sylvester_resultant(f, fp, zero)

    g = UPoly([b * b, const(4) * a, const(-4) * c, one])
    gp = UPoly([const(4) * a, const(-8) * c, const(3)])
    # disc(g) = (-1)^(3*2/2) Res(g, g') / lc(g) = -Res(g, g')
    disc_g = -sylvester_resultant(g, gp, zero)

    equal = disc_f == disc_g
    return {"equal": equal, "terms": disc_f.term_count(),
            "degree": disc_f.degree(), "nonzero": bool(disc_f)}


# ----------------------------------------------------------------------
# sweeps
# ----------------------------------------------------------------------


def curve_triples(ctx: Field):
    """All (a, b, c) with both polynomials separable."""
    for an in range(ctx.q):
        for bn in range(ctx.q):
            for cn in range(ctx.q):
                rq = ReducedQuartic(ctx, ctx.elem(an), ctx.elem(bn), ctx.elem(cn))
                if rq.is_separable():
                    yield rq


def sweep_correspondence(ctx: Field) -> dict:
    """verify_correspondence over every separable (a, b, c) in GF(q)^3."""
    _require_odd(ctx)
    checked = 0
    failures = []
    for rq in curve_triples(ctx):
        rep = verify_correspondence(rq)
        checked += 1
        if not rep["pass"]:
            failures.append(rep)
    return {"q": ctx.q, "curves": checked, "pass": not failures,
            "failures": failures[:20]}


def sweep_hasse(ctx: Field) -> dict:
    """hasse_check over every separable quartic (a4 != 0) in GF(q)."""
    _require_odd(ctx)
    q = ctx.q
    checked = 0
    worst = None
    failures = 0
    for a4 in range(1, q):
        for a3 in range(q):
            for a2 in range(q):
                for a1 in range(q):
                    for a0 in range(q):
                        f = [ctx.elem(a0), ctx.elem(a1), ctx.elem(a2),
                             ctx.elem(a3), ctx.elem(a4)]
                        if not is_separable(f, ctx):
                            continue
                        rep = hasse_check(f, ctx)
                        checked += 1
                        if not rep["pass"]:
                            failures += 1
                        if worst is None or rep["count"] > worst:
                            worst = rep["count"]
    return {"q": q, "checked": checked, "worst_count": worst,
            "pass": failures == 0, "failures": failures}


def sweep_reduction_accounting(ctx: Field) -> dict:
    """For every separable quartic: reduce, and confirm the count change
    matches the recorded inversion delta (|C'| <= |C| + 2 overall)."""
    _require_odd(ctx)
    q = ctx.q
    checked = 0
    reduced = 0
    failures = []
    for a4 in range(1, q):
        for a3 in range(q):
            for a2 in range(q):
                for a1 in range(q):
                    for a0 in range(q):
                        f = [ctx.elem(a0), ctx.elem(a1), ctx.elem(a2),
                             ctx.elem(a3), ctx.elem(a4)]
                        if not is_separable(f, ctx):
                            continue
                        checked += 1
                        curve = QuarticCurve(ctx, tuple(f))
                        out = reduce_quartic(curve)
                        if out is None:
                            continue
                        reduced += 1
                        rq, log = out
                        before = count_affine_points(f, ctx)
                        after = rq.count_points()
                        delta = log.total_delta()
                        if after != before + delta:
                            failures.append({"coeffs": [c.n for c in f],
                                             "before": before, "after": after,
                                             "delta": delta})
                        if not (before <= after + 2):
                            failures.append({"coeffs": [c.n for c in f],
                                             "bound": "before <= after + 2 failed"})
    return {"q": q, "checked": checked, "reduced": reduced,
            "pass": not failures, "failures": failures[:10]}
