"""Exact arithmetic in finite fields GF(p^k).

Elements are stored as a single integer encoding: the coefficient vector
(c0, ..., c_{k-1}) of the polynomial-basis representation, read as base-p
digits with c0 least significant.  This encoding doubles as the canonical
element ordering used for deterministic square roots and set dedup.

Small extension fields cache full multiplication/addition tables; prime
fields always use direct modular arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional

# All verifications run at desk scale; 2^16 keeps every encoding product
# comfortably inside machine-word range on any runtime.
MAX_Q = 1 << 16

# Extension fields up to this order get dense add/mul tables.
TABLE_LIMIT = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ----------------------------------------------------------------------
# polynomial arithmetic over GF(p) on plain coefficient lists (ascending)
# ----------------------------------------------------------------------

def _ptrim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _pmulmod(f: list[int], g: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                prod[i + j] = (prod[i + j] + a * b) % p
    return _prem(prod, mod, p)


def _prem(f: list[int], mod: list[int], p: int) -> list[int]:
    f = _ptrim(list(f))
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(f) > dm:
        shift = len(f) - 1 - dm
        factor = (f[-1] * inv_lead) % p
        if factor:
            for i, c in enumerate(mod):
                f[shift + i] = (f[shift + i] - factor * c) % p
        f.pop()
        _ptrim(f)
    return f


def _pgcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _ptrim(list(f)), _ptrim(list(g))
    while g:
        f, g = g, _prem(f, g, p)
        g = _ptrim(g)
    return f


def _ppowmod(base: list[int], e: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    acc = _prem(list(base), mod, p)
    while e:
        if e & 1:
            result = _pmulmod(result, acc, mod, p)
        acc = _pmulmod(acc, acc, mod, p)
        e >>= 1
    return result


def _psub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)]
    return _ptrim(out)


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin test: t^(p^k) == t mod f, and t^(p^(k/d)) - t coprime to f."""
    k = len(f) - 1
    if k < 1:
        return False
    t = [0, 1]
    frob = _ppowmod(t, p ** k, f, p)
    if _psub(frob, t, p):
        return False
    for d in {d for d in range(2, k + 1) if k % d == 0 and is_prime(d)}:
        sub = _ppowmod(t, p ** (k // d), f, p)
        g = _pgcd(f, _psub(sub, t, p), p)
        if len(g) != 1:
            return False
    return True


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """First monic irreducible of degree k over GF(p) in encoding order."""
    if k == 1:
        return (0, 1)
    for m in range(p ** k):
        coeffs = []
        mm = m
        for _ in range(k):
            coeffs.append(mm % p)
            mm //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


# ----------------------------------------------------------------------


class Field:
    """Context for GF(p^k) with a fixed monic irreducible modulus."""

    def __init__(self, p: int, k: int, modulus: Optional[tuple[int, ...]] = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        q = p ** k
        if q > MAX_Q:
            raise FieldError(f"q = {p}^{k} exceeds supported width {MAX_Q}")
        if modulus is None:
            modulus = canonical_modulus(p, k)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if k > 1 and not _is_irreducible(list(modulus), p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._mul_table: Optional[list[int]] = None
        self._add_table: Optional[list[int]] = None
        self._inv_table: Optional[list[int]] = None
        self._neg_table: Optional[list[int]] = None
        self._sq_count: Optional[list[int]] = None
        self._sqrt_min: Optional[list[int]] = None
        if k > 1 and q <= TABLE_LIMIT:
            self._build_tables()

    # -- encoding helpers ------------------------------------------------

    def coeffs_of(self, n: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            out.append(n % self.p)
            n //= self.p
        return tuple(out)

    def _enc_of(self, coeffs: list[int]) -> int:
        n = 0
        for c in reversed(coeffs):
            n = n * self.p + (c % self.p)
        return n

    def _reduce_list(self, coeffs: list[int]) -> list[int]:
        return _prem(list(coeffs), list(self.modulus), self.p) + [0] * self.k

    # -- raw encoded arithmetic ------------------------------------------

    def add_enc(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x + y) % self.p
        if self._add_table is not None:
            return self._add_table[x * self.q + y]
        return self._add_slow(x, y)

    def _add_slow(self, x: int, y: int) -> int:
        p = self.p
        n, mul = 0, 1
        for _ in range(self.k):
            n += ((x % p + y % p) % p) * mul
            x //= p
            y //= p
            mul *= p
        return n

    def neg_enc(self, x: int) -> int:
        if self.k == 1:
            return (-x) % self.p
        if self._neg_table is not None:
            return self._neg_table[x]
        return self._neg_slow(x)

    def _neg_slow(self, x: int) -> int:
        p = self.p
        n, mul = 0, 1
        for _ in range(self.k):
            n += ((-x) % p % p) * mul
            x //= p
            mul *= p
        return n

    def sub_enc(self, x: int, y: int) -> int:
        return self.add_enc(x, self.neg_enc(y))

    def mul_enc(self, x: int, y: int) -> int:
        if self.k == 1:
            return (x * y) % self.p
        if self._mul_table is not None:
            return self._mul_table[x * self.q + y]
        return self._mul_slow(x, y)

    def _mul_slow(self, x: int, y: int) -> int:
        fx = list(self.coeffs_of(x))
        fy = list(self.coeffs_of(y))
        prod = [0] * (2 * self.k - 1)
        for i, a in enumerate(fx):
            if a:
                for j, b in enumerate(fy):
                    prod[i + j] = (prod[i + j] + a * b) % self.p
        red = self._reduce_list(prod)
        return self._enc_of(red[: self.k])

    def inv_enc(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.k == 1:
            return pow(x, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[x]
        return self.pow_enc(x, self.q - 2)

    def pow_enc(self, x: int, e: int) -> int:
        if e < 0:
            x = self.inv_enc(x)
            e = -e
        result = 1
        acc = x
        while e:
            if e & 1:
                result = self.mul_enc(result, acc)
            acc = self.mul_enc(acc, acc)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        mul = [0] * (q * q)
        add = [0] * (q * q)
        for x in range(q):
            base = x * q
            for y in range(x, q):
                m = self._mul_slow(x, y)
                a = self._add_slow(x, y)
                mul[base + y] = m
                mul[y * q + x] = m
                add[base + y] = a
                add[y * q + x] = a
        self._mul_table = mul
        self._add_table = add
        self._neg_table = [self._neg_slow(x) for x in range(q)]

    def _ensure_square_tables(self) -> None:
        if self._sq_count is None:
            cnt = [0] * self.q
            root = [0] * self.q
            for y in range(self.q):
                s = self.mul_enc(y, y)
                if cnt[s] == 0:
                    root[s] = y
                cnt[s] += 1
            self._sq_count = cnt
            self._sqrt_min = root

    def square_count_enc(self, x: int) -> int:
        """Number of y with y*y == x (0, 1, or 2 for odd q; 1 for even q)."""
        self._ensure_square_tables()
        return self._sq_count[x]

    def sqrt_enc(self, x: int) -> Optional[int]:
        self._ensure_square_tables()
        if self._sq_count[x] == 0:
            return None
        return self._sqrt_min[x]

    # -- element construction ---------------------------------------------

    def elem(self, n: int) -> "FieldElement":
        return FieldElement(self, n % self.q if self.k == 1 else n)

    def from_int(self, n: int) -> "FieldElement":
        """Image of the rational integer n under the ring map Z -> GF(q)."""
        return FieldElement(self, n % self.p)

    def from_coeffs(self, coeffs) -> "FieldElement":
        cs = list(coeffs) + [0] * self.k
        return FieldElement(self, self._enc_of([c % self.p for c in cs[: self.k]]))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The class of t in GF(p)[t]/(modulus); equals 1*p for k > 1."""
        if self.k == 1:
            return FieldElement(self, 1)
        return FieldElement(self, self.p)

    def elements(self) -> Iterator["FieldElement"]:
        for n in range(self.q):
            yield FieldElement(self, n)

    def units(self) -> Iterator["FieldElement"]:
        for n in range(1, self.q):
            yield FieldElement(self, n)

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def describe(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def make_field(p: int, k: int = 1) -> Field:
    """GF(p^k) with the canonical (first in encoding order) modulus."""
    return Field(p, k)


@lru_cache(maxsize=None)
def field_with_modulus(p: int, k: int, modulus: tuple[int, ...]) -> Field:
    return Field(p, k, modulus)


class FieldElement:
    __slots__ = ("ctx", "n")

    def __init__(self, ctx: Field, n: int):
        self.ctx = ctx
        self.n = n

    def coeffs(self) -> tuple[int, ...]:
        return self.ctx.coeffs_of(self.n)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldError("mixed field contexts")
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add_enc(self.n, o.n))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub_enc(self.n, o.n))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub_enc(o.n, self.n))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul_enc(self.n, o.n))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul_enc(self.n, self.ctx.inv_enc(o.n)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul_enc(o.n, self.ctx.inv_enc(self.n)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg_enc(self.n))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow_enc(self.n, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv_enc(self.n))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.n == other.n
        if isinstance(other, int):
            return self.n == other % self.ctx.p if self.ctx.k == 1 else self.n == self.ctx.from_int(other).n
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.ctx.p, self.ctx.k))

    def __bool__(self) -> bool:
        return self.n != 0

    def __repr__(self) -> str:
        if self.ctx.k == 1:
            return str(self.n)
        return f"{self.ctx}[{self.n}]"

    def to_json(self) -> list[int]:
        return list(self.coeffs())


def is_square(x: FieldElement) -> bool:
    """True iff x has a square root; in characteristic 2 always true."""
    ctx = x.ctx
    if ctx.p == 2:
        return True
    if x.n == 0:
        return True
    return ctx.pow_enc(x.n, (ctx.q - 1) // 2) == 1


def sqrt(x: FieldElement) -> Optional[FieldElement]:
    """Smallest y (encoding order) with y*y == x, or None."""
    r = x.ctx.sqrt_enc(x.n)
    return None if r is None else FieldElement(x.ctx, r)


class QuadExt:
    """GF(q^2) together with the embedding of GF(q) and the odd-q twist
    element omega with omega^q == -omega (gamma = omega^2 sits in GF(q))."""

    def __init__(self, base: Field, ext: Field, embed_table: tuple[int, ...],
                 omega: Optional[FieldElement], gamma: Optional[FieldElement]):
        self.base = base
        self.ext = ext
        self._embed_table = embed_table
        self.omega = omega
        self.gamma = gamma
        self._image = frozenset(embed_table)
        self._retract = {e: i for i, e in enumerate(embed_table)}

    def embed(self, x: FieldElement) -> FieldElement:
        if x.ctx != self.base:
            raise FieldError("element not in the base field")
        return FieldElement(self.ext, self._embed_table[x.n])

    def embed_enc(self, n: int) -> int:
        return self._embed_table[n]

    def in_base_image(self, y: FieldElement) -> bool:
        return y.n in self._image

    def image_encodings(self) -> frozenset:
        return self._image

    def retract(self, y: FieldElement) -> FieldElement:
        """Inverse of embed on the image."""
        n = self._retract.get(y.n)
        if n is None:
            raise FieldError("element not in the embedded base field")
        return FieldElement(self.base, n)

    def retract_enc(self, n: int) -> int:
        return self._retract[n]


def subfield_embedding(base: Field, ext: Field) -> tuple[int, ...]:
    """Encoding table of the canonical ring embedding base -> ext.

    Maps the class of t (base generator) to the first root of base.modulus
    found in ext, then extends multiplicatively/additively.
    """
    if base.p != ext.p or ext.k % base.k != 0:
        raise FieldError(f"no embedding {base} -> {ext}")
    p = base.p
    if base.k == 1:
        return tuple((ext.from_int(n)).n for n in range(p))
    root = None
    for cand in range(ext.q):
        acc = 0
        # Horner evaluation of base.modulus at cand inside ext
        for c in reversed(base.modulus):
            acc = ext.add_enc(ext.mul_enc(acc, cand), c % p)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise FieldError("modulus has no root in the extension (bug)")
    powers = [1]
    for _ in range(base.k - 1):
        powers.append(ext.mul_enc(powers[-1], root))
    table = []
    for n in range(base.q):
        cs = base.coeffs_of(n)
        acc = 0
        for c, pw in zip(cs, powers):
            acc = ext.add_enc(acc, ext.mul_enc(c % p, pw))
        table.append(acc)
    return tuple(table)


@lru_cache(maxsize=None)
def quadratic_extension(base: Field) -> QuadExt:
    """GF(q^2) over GF(q), with omega (omega^q = -omega) for odd q."""
    ext = make_field(base.p, 2 * base.k)
    table = subfield_embedding(base, ext)
    omega = None
    gamma = None
    if base.p != 2:
        image = set(table)
        for n in range(1, ext.q):
            if ext.pow_enc(n, base.q) == ext.neg_enc(n):
                omega = FieldElement(ext, n)
                g = ext.mul_enc(n, n)
                if g not in image:
                    raise FieldError("omega^2 escaped the base field (bug)")
                gamma = FieldElement(base, table.index(g))
                break
        if omega is None:
            raise FieldError("no omega with omega^q = -omega (bug)")
    return QuadExt(base, ext, table, omega, gamma)


def norm_one_subgroup(qe: QuadExt) -> list[FieldElement]:
    """The q+1 solutions of r^(q+1) = 1 in GF(q^2), in encoding order."""
    q = qe.base.q
    ext = qe.ext
    out = [FieldElement(ext, n) for n in range(1, ext.q) if ext.pow_enc(n, q + 1) == 1]
    if len(out) != q + 1:
        raise FieldError("norm-one subgroup has wrong size (bug)")
    return out
