"""2x2 matrices over an exact coefficient ring, and finite matrix groups.

Mat2 is coefficient-agnostic: entries may be FieldElement, NFElem, or
MPoly values, anything with ring operator support.  GroupSet keeps a
deduplicated, canonically ordered set of matrices; with the projective
flag set, M and -M are identified through the representative with the
smaller canonical key.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .exactnum import GAUSSIAN_I, GAUSSIAN_RHO, GAUSSIAN_SIGMA, NFContext, NFElem
from .ffield import Field, FieldElement, QuadExt, is_square, norm_one_subgroup, quadratic_extension, sqrt


class GroupError(ValueError):
    pass


DEFAULT_CLOSURE_CAP = 10 ** 6


def _entry_key(x):
    if isinstance(x, FieldElement):
        return x.n
    if isinstance(x, NFElem):
        return (x.den,) + x.c
    raise TypeError(f"no canonical key for entries of type {type(x)!r}")


class Mat2:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = a
        self.b = b
        self.c = c
        self.d = d

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Mat2":
        dt = self.det()
        if not dt:
            raise ZeroDivisionError("singular matrix")
        adj = self.adjugate()
        return Mat2(adj.a / dt, adj.b / dt, adj.c / dt, adj.d / dt)

    def scale(self, s) -> "Mat2":
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def key(self) -> tuple:
        return tuple(_entry_key(x) for x in self.entries())

    def __eq__(self, other) -> bool:
        if isinstance(other, Mat2):
            return self.entries() == other.entries()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"[{self.a!r} {self.b!r}; {self.c!r} {self.d!r}]"

    def to_json(self):
        def ser(x):
            return x.to_json() if hasattr(x, "to_json") else str(x)

        return [[ser(self.a), ser(self.b)], [ser(self.c), ser(self.d)]]


def identity_like(m: Mat2) -> Mat2:
    """The identity matrix in the same ring as m (m must be invertible)."""
    return m * m.inverse()


def proj_canonical(m: Mat2) -> Mat2:
    """The lexicographically smaller of {m, -m} under the canonical key."""
    neg = -m
    return m if m.key() <= neg.key() else neg


class GroupSet:
    """Finite multiplicatively closed set of Mat2, deduplicated and sorted."""

    def __init__(self, mats: Iterable[Mat2], projective: bool = False):
        self.projective = projective
        elems: dict = {}
        for m in mats:
            r = proj_canonical(m) if projective else m
            elems[r.key()] = r
        self._elems = elems
        self._sorted_keys = sorted(elems)

    def __len__(self) -> int:
        return len(self._elems)

    def __iter__(self) -> Iterator[Mat2]:
        for k in self._sorted_keys:
            yield self._elems[k]

    def __contains__(self, m: Mat2) -> bool:
        r = proj_canonical(m) if self.projective else m
        return r.key() in self._elems

    def keys(self) -> list:
        return self._sorted_keys

    def key_set(self) -> frozenset:
        return frozenset(self._elems)

    def canonical(self, m: Mat2) -> Mat2:
        return proj_canonical(m) if self.projective else m

    def is_closed(self) -> bool:
        """Exhaustive closure check; intended for tests on small groups."""
        for g in self:
            for h in self:
                if (g * h) not in self:
                    return False
        return True

    def projectivize(self) -> "GroupSet":
        return GroupSet(self._elems.values(), projective=True)

    def trace_multiset(self) -> list:
        return sorted((m.trace() for m in self), key=_entry_key)

    def trace_set_keys(self) -> frozenset:
        return frozenset(_entry_key(m.trace()) for m in self)

    def to_json(self):
        return {"size": len(self), "projective": self.projective,
                "elements": [m.to_json() for m in self]}


def group_closure(gens: list[Mat2], cap: int = DEFAULT_CLOSURE_CAP,
                  projective: bool = False) -> GroupSet:
    """Smallest multiplicatively closed set containing gens and the identity.

    Worklist algorithm; raises GroupError when the closure would exceed cap
    (non-finite or unexpectedly large input).
    """
    if not gens:
        raise GroupError("need at least one generator")
    ident = identity_like(gens[0])
    canon = proj_canonical if projective else (lambda m: m)
    gen_list = [canon(g) for g in gens]
    elems: dict = {}
    e0 = canon(ident)
    elems[e0.key()] = e0
    frontier = []
    for g in gen_list:
        if g.key() not in elems:
            elems[g.key()] = g
            frontier.append(g)
    while frontier:
        cur = frontier.pop()
        for g in gen_list:
            nxt = canon(cur * g)
            k = nxt.key()
            if k not in elems:
                if len(elems) >= cap:
                    raise GroupError(f"closure exceeded cap {cap}")
                elems[k] = nxt
                frontier.append(nxt)
    return GroupSet(elems.values(), projective=projective)


# ----------------------------------------------------------------------
# the binary polyhedral groups over their number fields
# ----------------------------------------------------------------------

POLYHEDRAL_KINDS = ("2A4", "2S4", "2A5")

_KIND_CTX = {"2A4": GAUSSIAN_I, "2S4": GAUSSIAN_RHO, "2A5": GAUSSIAN_SIGMA}
_KIND_ORDER = {"2A4": 24, "2S4": 48, "2A5": 120}

# order of the projective image (A4, S4, A5)
PROJECTIVE_ORDER = {"2A4": 12, "2S4": 24, "2A5": 60}


def nf_context_for(kind: str) -> NFContext:
    return _KIND_CTX[kind]


def quaternion_units(ctx: NFContext) -> tuple[Mat2, Mat2, Mat2, Mat2]:
    """(E, I, J, K) with I = diag(i, -i), J = (0 1; -1 0), K = I*J."""
    one, zero, i = ctx.one(), ctx.zero(), ctx.i()
    E = Mat2(one, zero, zero, one)
    I = Mat2(i, zero, zero, -i)
    J = Mat2(zero, one, -one, zero)
    K = I * J
    return E, I, J, K


def _combine(coeff_mats: list[tuple], scale) -> Mat2:
    """scale * sum of coeff*matrix pairs, entrywise."""
    entries = []
    for n in range(4):
        acc = None
        for coeff, mat in coeff_mats:
            term = coeff * mat.entries()[n]
            acc = term if acc is None else acc + term
        entries.append(acc * scale)
    return Mat2(*entries)


def polyhedral_generators(kind: str) -> list[Mat2]:
    ctx = _KIND_CTX[kind]
    E, I, J, K = quaternion_units(ctx)
    one = ctx.one()
    half = one / 2
    W = _combine([(-one, E), (one, I), (one, J), (one, K)], half)
    if kind == "2A4":
        return [I, W]
    if kind == "2S4":
        rho = ctx.generator()
        return [_combine([(one, J), (one, K)], rho.inverse()), W]
    if kind == "2A5":
        sigma = ctx.generator()
        return [_combine([(one, I), (sigma, J), (sigma + 1, K)], half), W]
    raise GroupError(f"unknown kind {kind!r}")


@lru_cache(maxsize=None)
def binary_polyhedral(kind: str) -> GroupSet:
    """2A4 = <I, W>, 2S4 = <(J+K)/rho, W>, 2A5 = <(I + sJ + (s+1)K)/2, W>."""
    g = group_closure(polyhedral_generators(kind), cap=1024)
    if len(g) != _KIND_ORDER[kind]:
        raise GroupError(f"{kind} closure has size {len(g)}, expected {_KIND_ORDER[kind]}")
    return g


# ----------------------------------------------------------------------
# torus normalizers
# ----------------------------------------------------------------------


def split_torus_normalizer(ctx: Field) -> GroupSet:
    """{(r 0; 0 1/r)} u {(0 -r; 1/r 0)} for r in GF(q)^x; 2(q-1) matrices."""
    zero = ctx.zero
    mats = []
    for r in ctx.units():
        rinv = r.inverse()
        mats.append(Mat2(r, zero, zero, rinv))
        mats.append(Mat2(zero, -r, rinv, zero))
    return GroupSet(mats)


def nonsplit_torus_normalizer(base: Field) -> GroupSet:
    """{(r 0; 0 1/r)} u {(0 -1/r; r 0)} for r in the norm-one group N of
    GF(q^2); 2(q+1) matrices inside the unitary model."""
    qe = quadratic_extension(base)
    zero = qe.ext.zero
    mats = []
    for r in norm_one_subgroup(qe):
        rinv = r.inverse()
        mats.append(Mat2(r, zero, zero, rinv))
        mats.append(Mat2(zero, -rinv, r, zero))
    return GroupSet(mats)


def su2_shape_ok(m: Mat2, base_q: int) -> bool:
    """Check the (a b; -b^q a^q) unitary shape with a^(q+1)+b^(q+1) = 1."""
    a, b = m.a, m.b
    if m.c != -(b ** base_q) or m.d != a ** base_q:
        return False
    return a ** (base_q + 1) + b ** (base_q + 1) == 1


# ----------------------------------------------------------------------
# specialization of the number-field groups into GF(q)
# ----------------------------------------------------------------------


def _nf_scalar_images(ctx: NFContext, field: Field) -> Optional[list[FieldElement]]:
    """Images of the basis elements (1, i[, t, i*t]) in GF(q), or None."""
    minus_one = -field.one
    i_img = sqrt(minus_one)
    if i_img is None:
        return None
    if ctx is GAUSSIAN_I:
        return [field.one, i_img]
    if ctx is GAUSSIAN_RHO:
        t = sqrt(field.from_int(2))
        if t is None:
            return None
    elif ctx is GAUSSIAN_SIGMA:
        # root of X^2 + X - 1: (-1 + sqrt(5)) / 2
        s5 = sqrt(field.from_int(5))
        if s5 is None:
            return None
        t = (s5 - 1) / field.from_int(2)
    else:
        raise GroupError(f"unknown number field {ctx}")
    return [field.one, i_img, t, i_img * t]


def nf_elem_to_field(x: NFElem, field: Field, basis_images: list[FieldElement]) -> FieldElement:
    if x.den % field.p == 0:
        raise GroupError(f"denominator {x.den} not invertible mod {field.p}")
    acc = field.zero
    for coord, img in zip(x.c, basis_images):
        if coord:
            acc = acc + field.from_int(coord) * img
    return acc / field.from_int(x.den)


def reduce_mod_p(group: GroupSet, field: Field) -> Optional[GroupSet]:
    """Specialize a number-field matrix group into SL2(q) entrywise.

    Returns None when a required scalar (i, rho, or sigma) has no image in
    GF(q), or when the specialization is not faithful.  gcd(q, |group|) = 1
    guarantees faithfulness, but it is cheap to verify directly, which also
    admits the faithful boundary cases (2A5 into GF(9)).
    """
    first = next(iter(group))
    ctx = first.a.ctx
    if field.p == 2:
        # group entries carry denominators 2; no specialization exists
        return None
    images = _nf_scalar_images(ctx, field)
    if images is None:
        return None
    mats = [Mat2(*(nf_elem_to_field(x, field, images) for x in m.entries())) for m in group]
    out = GroupSet(mats)
    if len(out) != len(group):
        if len(group) % field.p != 0:
            raise GroupError("specialization collapsed despite gcd(q,|G|)=1 (bug)")
        return None
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


# ----------------------------------------------------------------------
# polyhedral groups inside SL2(q): specialization plus quaternion fallback
# ----------------------------------------------------------------------


def _quaternion_pair(field: Field) -> tuple[Mat2, Mat2]:
    """u, v in SL2(q) with u^2 = v^2 = -E and uv = -vu (odd q).

    u is the standard symplectic J; v = (x y; y -x) for the first solution
    of x^2 + y^2 = -1 in encoding order.
    """
    if field.p == 2:
        raise GroupError("quaternion pair needs odd characteristic")
    zero, one = field.zero, field.one
    u = Mat2(zero, one, -one, zero)
    target = -one
    for xn in range(field.q):
        x = field.elem(xn)
        rest = target - x * x
        y = sqrt(rest)
        if y is not None:
            v = Mat2(x, y, y, -x)
            return u, v
    raise GroupError("no solution of x^2 + y^2 = -1 (impossible for odd q)")


def polyhedral_in_field(kind: str, field: Field) -> GroupSet:
    """A copy of 2A4/2S4/2A5 inside SL2(q).

    First tries entrywise specialization of the characteristic-0 group;
    when a needed scalar is missing from GF(q) (e.g. no i for q = 3 mod 4)
    falls back to a deterministic quaternion-pair construction.
    """
    char0 = binary_polyhedral(kind)
    direct = reduce_mod_p(char0, field)
    if direct is not None:
        return direct
    u, v = _quaternion_pair(field)
    # align with the characteristic-0 units: I <-> v, J <-> u, K <-> v*u
    iq, jq = v, u
    kq = v * u
    E = identity_like(u)
    one = field.one
    half = field.from_int(2).inverse()
    w = _combine([(-one, E), (one, iq), (one, jq), (one, kq)], half)
    if kind == "2A4":
        gens = [iq, w]
    elif kind == "2S4":
        rho = sqrt(field.from_int(2))
        if rho is None:
            raise GroupError(f"2 is not a square in {field}; 2S4 does not embed")
        gens = [_combine([(one, jq), (one, kq)], rho.inverse()), w]
    elif kind == "2A5":
        s5 = sqrt(field.from_int(5))
        if s5 is None:
            raise GroupError(f"5 is not a square in {field}; 2A5 does not embed")
        sig = (s5 - 1) * half
        gens = [_combine([(one, iq), (sig, jq), (sig + 1, kq)], half), w]
    else:
        raise GroupError(f"unknown kind {kind!r}")
    out = group_closure(gens, cap=1024)
    if len(out) != _KIND_ORDER[kind]:
        raise GroupError(f"{kind} in {field}: closure size {len(out)}")
    return out
