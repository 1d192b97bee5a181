"""Symbolic verification of the binary-polyhedral trace identities.

For H one of 2A4, 2S4, 2A5 (preimages in SL2 of A4, S4, A5) and generic
2x2 matrices x, y with algebraically independent entries, the module
expands, exactly over the matching number field:

    sum_h trace(h y) * trace(h x)^(2m+1)
        ==  |image| * c_m * (trace(x) trace(y) - trace(x y)) * det(x)^m

with c_m the Catalan numbers 1, 2, 5, 14, 42, m ranging over {0,1},
{0,1,2}, {0,..,4} respectively; the identity is expected to fail one step
past each range.  Also: the product polynomial over the trace set, and the
coset-sum identity that specializes y = (0 0; c d).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactnum import (
    MATRIX_ENTRY_VARS,
    MPoly,
    NFElem,
    UPoly,
    catalan,
    mpoly_ring,
)
from .mat2 import (
    GroupSet,
    Mat2,
    POLYHEDRAL_KINDS,
    PROJECTIVE_ORDER,
    binary_polyhedral,
    nf_context_for,
)

# valid exponent indices m per kind
M_RANGE = {"2A4": (0, 1), "2S4": (0, 1, 2), "2A5": (0, 1, 2, 3, 4)}

EXPECTED_PRODUCT_POLY = {
    "2A4": [0, -1, 0, 1],                    # Z^3 - Z
    "2S4": [0, 2, 0, -3, 0, 1],              # Z^5 - 3Z^3 + 2Z
    "2A5": [0, -1, 0, 4, 0, -4, 0, 1],       # Z^7 - 4Z^5 + 4Z^3 - Z
}


@dataclass(frozen=True)
class TraceIdentityCase:
    kind: str
    m: int

    @property
    def catalan_coefficient(self) -> int:
        return catalan(self.m + 1)

    @property
    def projective_order(self) -> int:
        return PROJECTIVE_ORDER[self.kind]

    @property
    def in_stated_range(self) -> bool:
        return self.m in M_RANGE[self.kind]


def generic_matrices(kind: str) -> tuple[Mat2, Mat2]:
    """x, y with the 8 frame variables as entries, over the kind's field."""
    ctx = nf_context_for(kind)
    _, var = mpoly_ring(MATRIX_ENTRY_VARS, ctx)
    x = Mat2(var("x11"), var("x12"), var("x21"), var("x22"))
    y = Mat2(var("y11"), var("y12"), var("y21"), var("y22"))
    return x, y


def _mat_scalar_times_poly(h: Mat2, x: Mat2) -> MPoly:
    """trace(h*x) where h has NFElem entries and x has MPoly entries."""
    # trace(hx) = h.a*x.a + h.b*x.c + h.c*x.b + h.d*x.d
    return (
        x.a.scale(h.a) + x.c.scale(h.b) + x.b.scale(h.c) + x.d.scale(h.d)
    )


def trace_identity_sums(kind: str, m_max: int,
                        group: Optional[GroupSet] = None,
                        x: Optional[Mat2] = None,
                        y: Optional[Mat2] = None) -> list[MPoly]:
    """[sum_h trace(hy) trace(hx)^(2m+1) for m in 0..m_max], shared work."""
    if group is None:
        group = binary_polyhedral(kind)
    if x is None or y is None:
        x, y = generic_matrices(kind)
    frame = x.a.frame
    sums = [MPoly.zero(frame) for _ in range(m_max + 1)]
    for h in group:
        t = _mat_scalar_times_poly(h, x)
        ty = _mat_scalar_times_poly(h, y)
        t_sq = t * t
        power = t  # trace(hx)^(2m+1), starting at m = 0
        for m in range(m_max + 1):
            sums[m] = sums[m] + ty * power
            if m < m_max:
                power = power * t_sq
    return sums


def identity_rhs(kind: str, m: int, x: Optional[Mat2] = None,
                 y: Optional[Mat2] = None) -> MPoly:
    """|image| * c_m * (tr x tr y - tr xy) * det(x)^m."""
    if x is None or y is None:
        x, y = generic_matrices(kind)
    ctx = nf_context_for(kind)
    base = x.trace() * y.trace() - (x * y).trace()
    detx = x.det()
    out = base
    for _ in range(m):
        out = out * detx
    scalar = ctx.from_rational(PROJECTIVE_ORDER[kind] * catalan(m + 1))
    return out.scale(scalar)


def trace_identity_check(case: TraceIdentityCase) -> dict:
    """Exact-equality verdict for one (kind, m) pair."""
    lhs = trace_identity_sums(case.kind, case.m)[case.m]
    rhs = identity_rhs(case.kind, case.m)
    diff = lhs - rhs
    return {
        "kind": case.kind,
        "m": case.m,
        "expected_coefficient": case.projective_order * case.catalan_coefficient,
        "equal": not diff,
        "lhs_minus_rhs_terms": diff.term_count(),
        "expected_equal": case.in_stated_range,
    }


def trace_identity_report(kind: str) -> list[dict]:
    """All stated m plus the first out-of-range m, sharing the group sweep."""
    m_stated = M_RANGE[kind]
    m_max = m_stated[-1] + 1
    x, y = generic_matrices(kind)
    sums = trace_identity_sums(kind, m_max, x=x, y=y)
    out = []
    for m in range(m_max + 1):
        case = TraceIdentityCase(kind, m)
        diff = sums[m] - identity_rhs(kind, m, x=x, y=y)
        out.append({
            "kind": kind,
            "m": m,
            "expected_coefficient": case.projective_order * case.catalan_coefficient,
            "equal": not diff,
            "lhs_minus_rhs_terms": diff.term_count(),
            "expected_equal": case.in_stated_range,
        })
    return out


# ----------------------------------------------------------------------
# the trace-set product polynomial
# ----------------------------------------------------------------------


def trace_set(group: GroupSet) -> list[NFElem]:
    """{trace(h) : h in H} minus {-2, 2}, canonically ordered."""
    ctx = next(iter(group)).a.ctx
    two = ctx.from_rational(2)
    seen = {}
    for h in group:
        t = h.trace()
        if t != two and t != -two:
            seen[(t.den,) + t.c] = t
    return [seen[k] for k in sorted(seen)]


def product_trace_poly(kind: str) -> UPoly:
    """prod_{t in T} (Z - t) over the kind's number field."""
    group = binary_polyhedral(kind)
    ctx = nf_context_for(kind)
    return UPoly.from_roots(trace_set(group), ctx.one())


def product_trace_poly_check(kind: str) -> dict:
    ctx = nf_context_for(kind)
    got = product_trace_poly(kind)
    want = UPoly([ctx.from_rational(c) for c in EXPECTED_PRODUCT_POLY[kind]])
    return {
        "kind": kind,
        "equal": got == want,
        "degree": got.degree(),
        "coefficients": got.to_json(),
    }


# ----------------------------------------------------------------------
# the specialized coset sum:  sum_h trace(hy) prod_{t}(trace(hx) - t) = |image|
# ----------------------------------------------------------------------

SL2_VARS = ("a", "b", "c", "d")


def _reduce_mod_det1(poly: MPoly, one) -> MPoly:
    """Canonical form of poly modulo the ideal (a*d - b*c - 1).

    Repeatedly rewrites any monomial divisible by a*d via a*d -> b*c + 1;
    terminates because each rewrite lowers the (deg_a + deg_d) weight of the
    rewritten monomial.  On SL2_VARS frames only.
    """
    frame = poly.frame
    ia, ib, ic, idd = (frame.index(v) for v in SL2_VARS)
    bc_plus_1 = (MPoly.variable(frame, "b", one) * MPoly.variable(frame, "c", one)
                 + MPoly.constant(frame, one))
    work = poly
    while True:
        target = None
        for e, coeff in work.terms.items():
            if e[ia] >= 1 and e[idd] >= 1:
                target = (e, coeff)
                break
        if target is None:
            return work
        e, coeff = target
        rest = list(e)
        rest[ia] -= 1
        rest[idd] -= 1
        mono = MPoly(frame, {tuple(rest): coeff})
        # coeff * mono * (ad - bc - 1) cancellation: replace ad by bc + 1
        work = work - MPoly(frame, {e: coeff}) + mono * bc_plus_1


def polyhedral_sum_check(kind: str) -> dict:
    """Verify sum_h (trace(hy) prod_{t in T}(trace(hx) - t)) == |image|,
    for x = (a b; c d) generic in SL2 (det relation imposed by rewriting)
    and y = (0 0; c d)."""
    group = binary_polyhedral(kind)
    ctx = nf_context_for(kind)
    one = ctx.one()
    const, var = mpoly_ring(SL2_VARS, ctx)
    zero = MPoly.zero(SL2_VARS)
    x = Mat2(var("a"), var("b"), var("c"), var("d"))
    y = Mat2(zero, zero, var("c"), var("d"))
    ts = trace_set(group)
    total = zero
    for h in group:
        thx = _mat_scalar_times_poly(h, x)
        thy = _mat_scalar_times_poly(h, y)
        prod = thy
        for t in ts:
            prod = prod * (thx - MPoly.constant(SL2_VARS, t))
        total = total + prod
    expected = const(PROJECTIVE_ORDER[kind])
    reduced = _reduce_mod_det1(total - expected, one)
    return {
        "kind": kind,
        "expected": PROJECTIVE_ORDER[kind],
        "equal": not reduced,
        "residual_terms": reduced.term_count(),
    }


# ----------------------------------------------------------------------
# auxiliary checks used by the test-suite
# ----------------------------------------------------------------------


def adjugate_trace_identity() -> bool:
    """tr(x) tr(y) - tr(xy) == tr(adj(y) x) with fully generic entries."""
    x, y = generic_matrices("2A4")
    lhs = x.trace() * y.trace() - (x * y).trace()
    rhs = (y.adjugate() * x).trace()
    return lhs == rhs


def conjugated_group(kind: str, g: Mat2) -> GroupSet:
    """g^-1 H g for H = binary_polyhedral(kind)."""
    ginv = g.inverse()
    return GroupSet([ginv * h * g for h in binary_polyhedral(kind)])


def denominators_are_powers_of_two(group: GroupSet) -> bool:
    return all(
        entry.denominator_is_power_of_two()
        for m in group
        for entry in m.entries()
    )
