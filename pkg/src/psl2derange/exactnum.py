"""Exact scalars and polynomials for the symbolic identity checks.

Three fixed number fields are supported, each as a Q-algebra with a
hard-wired basis:

  GAUSSIAN_I     basis (1, i)            with i^2 = -1
  GAUSSIAN_RHO   basis (1, i, r, ir)     with r^2 = 2
  GAUSSIAN_SIGMA basis (1, i, s, is)     with s^2 = 1 - s

Elements keep integer coordinates over a single positive integer
denominator, normalized so gcd(den, coords) = 1.  This keeps the hot
polynomial expansions in pure integer arithmetic; `coords()` exposes the
coordinates as Fractions.

MPoly is a sparse multivariate polynomial over one of these fields (or
over plain Fractions), with graded-lex canonical ordering for reports.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Union


class NumberFieldError(ValueError):
    pass


class NFContext:
    """One of the three fixed number fields."""

    def __init__(self, name: str, dim: int, relation: str):
        self.name = name
        self.dim = dim
        self.relation = relation

    def __repr__(self) -> str:
        return f"NFContext({self.name})"

    # construction helpers

    def zero(self) -> "NFElem":
        return NFElem(self, (0,) * self.dim, 1)

    def one(self) -> "NFElem":
        c = [0] * self.dim
        c[0] = 1
        return NFElem(self, tuple(c), 1)

    def from_rational(self, r: Union[int, Fraction]) -> "NFElem":
        r = Fraction(r)
        c = [0] * self.dim
        c[0] = r.numerator
        return NFElem(self, tuple(c), r.denominator)

    def from_coords(self, coords: Sequence[Union[int, Fraction]]) -> "NFElem":
        fr = [Fraction(c) for c in coords]
        if len(fr) != self.dim:
            raise NumberFieldError(f"expected {self.dim} coordinates")
        den = 1
        for f in fr:
            den = den * f.denominator // gcd(den, f.denominator)
        ints = tuple(int(f * den) for f in fr)
        return NFElem(self, ints, den)

    def i(self) -> "NFElem":
        c = [0] * self.dim
        c[1] = 1
        return NFElem(self, tuple(c), 1)

    def generator(self) -> "NFElem":
        """rho or sigma; raises for the plain Gaussian field."""
        if self.dim != 4:
            raise NumberFieldError(f"{self.name} has no quartic generator")
        c = [0, 0, 1, 0]
        return NFElem(self, tuple(c), 1)


GAUSSIAN_I = NFContext("Q(i)", 2, "i^2=-1")
GAUSSIAN_RHO = NFContext("Q(i,rho)", 4, "rho^2=2")
GAUSSIAN_SIGMA = NFContext("Q(i,sigma)", 4, "sigma^2=1-sigma")


def _normalize(coords: tuple[int, ...], den: int) -> tuple[tuple[int, ...], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        den = -den
        coords = tuple(-c for c in coords)
    g = den
    for c in coords:
        g = gcd(g, c)
        if g == 1:
            return coords, den
    if g > 1:
        coords = tuple(c // g for c in coords)
        den //= g
    return coords, den


class NFElem:
    __slots__ = ("ctx", "c", "den")

    def __init__(self, ctx: NFContext, coords: tuple[int, ...], den: int = 1, _norm: bool = True):
        if _norm:
            coords, den = _normalize(coords, den)
        self.ctx = ctx
        self.c = coords
        self.den = den

    # -- basic protocol ----------------------------------------------------

    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, NFElem):
            return self.ctx is other.ctx and self.c == other.c and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == self.ctx.from_rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ctx.name, self.c, self.den))

    def __repr__(self) -> str:
        names = {2: ("", "*i"), 4: ("", "*i", "*g", "*i*g")}[self.ctx.dim]
        parts = []
        for x, suf in zip(self.c, names):
            if x:
                term = f"{x}{suf}" if self.den == 1 else f"{x}/{self.den}{suf}"
                parts.append(term)
        return " + ".join(parts) if parts else "0"

    def _coerce(self, other) -> "NFElem":
        if isinstance(other, NFElem):
            if other.ctx is not self.ctx:
                raise NumberFieldError("mixed number-field contexts")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self.den, o.den
        g = gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        coords = tuple(a * m1 + b * m2 for a, b in zip(self.c, o.c))
        return NFElem(self.ctx, coords, d1 * m1)

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.ctx, tuple(-x for x in self.c), self.den, _norm=False)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.c, o.c
        if self.ctx.dim == 2:
            coords = (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
        else:
            # (u1 + v1*t)(u2 + v2*t) with u, v Gaussian pairs and t = rho|sigma
            u1, v1 = (a[0], a[1]), (a[2], a[3])
            u2, v2 = (b[0], b[1]), (b[2], b[3])
            uu = (u1[0] * u2[0] - u1[1] * u2[1], u1[0] * u2[1] + u1[1] * u2[0])
            vv = (v1[0] * v2[0] - v1[1] * v2[1], v1[0] * v2[1] + v1[1] * v2[0])
            uv = (
                u1[0] * v2[0] - u1[1] * v2[1] + v1[0] * u2[0] - v1[1] * u2[1],
                u1[0] * v2[1] + u1[1] * v2[0] + v1[0] * u2[1] + v1[1] * u2[0],
            )
            if self.ctx is GAUSSIAN_RHO:
                coords = (uu[0] + 2 * vv[0], uu[1] + 2 * vv[1], uv[0], uv[1])
            elif self.ctx is GAUSSIAN_SIGMA:
                # t^2 = 1 - t
                coords = (uu[0] + vv[0], uu[1] + vv[1], uv[0] - vv[0], uv[1] - vv[1])
            else:
                raise NumberFieldError(f"unknown quartic context {self.ctx}")
        return NFElem(self.ctx, coords, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if not self:
            raise ZeroDivisionError("inversion of zero")
        a = self.c
        if self.ctx.dim == 2:
            n = a[0] * a[0] + a[1] * a[1]
            return NFElem(self.ctx, (self.den * a[0], -self.den * a[1]), n)
        u, v = (a[0], a[1]), (a[2], a[3])
        if self.ctx is GAUSSIAN_RHO:
            # (u + v t)(u - v t) = u^2 - 2 v^2  (a Gaussian number)
            g0 = u[0] * u[0] - u[1] * u[1] - 2 * (v[0] * v[0] - v[1] * v[1])
            g1 = 2 * u[0] * u[1] - 4 * v[0] * v[1]
            num = (u[0], u[1], -v[0], -v[1])
        else:
            # conj root sigma' = -1 - sigma; (u+vs)(u-v-vs) = u^2 - uv - v^2
            g0 = (
                u[0] * u[0] - u[1] * u[1]
                - (u[0] * v[0] - u[1] * v[1])
                - (v[0] * v[0] - v[1] * v[1])
            )
            g1 = (
                2 * u[0] * u[1]
                - (u[0] * v[1] + u[1] * v[0])
                - 2 * v[0] * v[1]
            )
            num = (u[0] - v[0], u[1] - v[1], -v[0], -v[1])
        # divide num (coords over den) by the Gaussian g0 + g1*i
        nn = g0 * g0 + g1 * g1
        u_, v_ = (num[0], num[1]), (num[2], num[3])
        top = (
            u_[0] * g0 + u_[1] * g1,
            -u_[0] * g1 + u_[1] * g0,
            v_[0] * g0 + v_[1] * g1,
            -v_[0] * g1 + v_[1] * g0,
        )
        return NFElem(self.ctx, tuple(self.den * t for t in top), nn)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        acc = self
        while e:
            if e & 1:
                result = result * acc
            acc = acc * acc
            e >>= 1
        return result

    def denominator_is_power_of_two(self) -> bool:
        d = self.den
        while d % 2 == 0:
            d //= 2
        return d == 1

    def to_json(self) -> list[str]:
        return [str(f) for f in self.coords()]


# ----------------------------------------------------------------------
# sparse multivariate polynomials
# ----------------------------------------------------------------------

# the canonical frame for the two-generic-matrix identities
MATRIX_ENTRY_VARS = ("x11", "x12", "x21", "x22", "y11", "y12", "y21", "y22")


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class MPoly:
    """Sparse polynomial over NFElem or Fraction coefficients.

    Terms map exponent tuples (one slot per frame variable) to nonzero
    coefficients.  The zero polynomial has no terms.
    """

    __slots__ = ("frame", "terms")

    def __init__(self, frame: tuple[str, ...], terms: Optional[dict] = None):
        self.frame = frame
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls, frame: tuple[str, ...]) -> "MPoly":
        return cls(frame)

    @classmethod
    def constant(cls, frame: tuple[str, ...], coeff) -> "MPoly":
        t = {}
        if coeff:
            t[(0,) * len(frame)] = coeff
        return cls(frame, t)

    @classmethod
    def variable(cls, frame: tuple[str, ...], name: str, one) -> "MPoly":
        exps = [0] * len(frame)
        exps[frame.index(name)] = 1
        return cls(frame, {tuple(exps): one})

    def _check(self, other: "MPoly") -> None:
        if self.frame != other.frame:
            raise NumberFieldError("mixed polynomial frames")

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.frame == other.frame and self.terms == other.terms
        return NotImplemented

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return MPoly(self.frame, out)

    def __neg__(self) -> "MPoly":
        return MPoly(self.frame, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MPoly") -> "MPoly":
        return self + (-other)

    def __mul__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        out: dict = {}
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        for e2, c2 in small.items():
            for e1, c1 in big.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                if e in out:
                    s = out[e] + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
                elif c:
                    out[e] = c
        return MPoly(self.frame, out)

    def scale(self, scalar) -> "MPoly":
        if not scalar:
            return MPoly(self.frame)
        return MPoly(self.frame, {e: c * scalar for e, c in self.terms.items()})

    def __pow__(self, e: int) -> "MPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        if not self.terms and e == 0:
            raise ValueError("0^0 needs an explicit unit; use constant()")
        result = None
        acc = self
        while e:
            if e & 1:
                result = acc if result is None else result * acc
            e >>= 1
            if e:
                acc = acc * acc
        if result is None:
            raise ValueError("use constant() for the empty product")
        return result

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def term_count(self) -> int:
        return len(self.terms)

    def substitute(self, values: dict):
        """Full evaluation; every frame variable must get a value."""
        total = None
        for e, c in self.sorted_terms():
            v = c
            for name, exp in zip(self.frame, e):
                if exp:
                    v = v * values[name] ** exp
            total = v if total is None else total + v
        return total

    def to_json(self) -> list:
        out = []
        for e, c in self.sorted_terms():
            coeff = c.to_json() if isinstance(c, NFElem) else str(Fraction(c))
            out.append([list(e), coeff])
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.sorted_terms()[:12]:
            mono = "*".join(
                f"{n}^{x}" if x > 1 else n for n, x in zip(self.frame, e) if x
            )
            bits.append(f"({c!r})" + ("*" + mono if mono else ""))
        suffix = " + ..." if len(self.terms) > 12 else ""
        return " + ".join(bits) + suffix


def mpoly_ring(frame: tuple[str, ...], ctx: Optional[NFContext] = None):
    """(zero, one, var) constructors for a frame over ctx or plain Fractions."""
    one = ctx.one() if ctx else Fraction(1)

    def var(name: str) -> MPoly:
        return MPoly.variable(frame, name, one)

    def const(c) -> MPoly:
        coeff = ctx.from_rational(c) if ctx and isinstance(c, (int, Fraction)) else c
        return MPoly.constant(frame, coeff)

    return const, var


# ----------------------------------------------------------------------
# univariate polynomials (dense), over NFElem / Fraction / MPoly
# ----------------------------------------------------------------------


class UPoly:
    """Dense univariate polynomial; coefficient list ascending in Z."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def from_roots(cls, roots: Sequence, one) -> "UPoly":
        poly = cls([one])
        for r in roots:
            poly = poly * cls([-r, one])
        return poly

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            if len(self.coeffs) != len(other.coeffs):
                return False
            return all(a == b for a, b in zip(self.coeffs, other.coeffs))
        return NotImplemented

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for idx in range(n):
            if idx < len(self.coeffs) and idx < len(other.coeffs):
                out.append(self.coeffs[idx] + other.coeffs[idx])
            elif idx < len(self.coeffs):
                out.append(self.coeffs[idx])
            else:
                out.append(other.coeffs[idx])
        return UPoly(out)

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other: "UPoly") -> "UPoly":
        if not self.coeffs or not other.coeffs:
            return UPoly([])
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                prod = a * b
                out[i + j] = prod if out[i + j] is None else out[i + j] + prod
        return UPoly([c for c in out])

    def eval(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def to_json(self) -> list:
        return [c.to_json() if isinstance(c, (NFElem, MPoly)) else str(Fraction(c)) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"UPoly({self.coeffs!r})"


def det(rows: list[list], zero) -> object:
    """Exact determinant by Laplace expansion with minor memoization.

    Entries may be any ring elements supporting +, -, *; zero is the ring
    zero, returned for vanishing minors.  Suited to the small Sylvester
    matrices used here (n <= 7).
    """
    n = len(rows)
    if n == 0:
        raise ValueError("empty determinant")
    memo: dict = {}

    def minor(cols: tuple[int, ...]):
        row = n - len(cols)
        if len(cols) == 1:
            return rows[row][cols[0]]
        if cols in memo:
            return memo[cols]
        acc = None
        sign = 1
        for idx, col in enumerate(cols):
            entry = rows[row][col]
            if entry:
                sub = minor(cols[:idx] + cols[idx + 1 :])
                if sub:
                    term = entry * sub
                    if sign < 0:
                        term = -term
                    acc = term if acc is None else acc + term
            sign = -sign
        if acc is None:
            acc = zero
        memo[cols] = acc
        return acc

    return minor(tuple(range(n)))


def sylvester_resultant(f: UPoly, g: UPoly, zero):
    """det of the Sylvester matrix of f and g (degrees from coefficient lists)."""
    m, n = f.degree(), g.degree()
    if m < 0 or n < 0:
        raise ValueError("resultant of the zero polynomial")
    size = m + n
    rows = []
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    for i in range(n):
        row = [zero] * size
        for j, c in enumerate(fc):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for j, c in enumerate(gc):
            row[i + j] = c
        rows.append(row)
    if size == 0:
        raise ValueError("resultant of two constants")
    return det(rows, zero)


def quadratic_discriminant(p: UPoly):
    """b^2 - 4ac for p = a X^2 + b X + c (a may be a polynomial)."""
    cs = p.coeffs + [p.coeffs[0] - p.coeffs[0]] * (3 - len(p.coeffs))
    c0, c1, c2 = cs[0], cs[1], cs[2]
    four = c2 + c2 + c2 + c2
    return c1 * c1 - four * c0


def catalan(n: int) -> int:
    """Catalan number C_n = binom(2n, n)/(n+1)."""
    from math import comb

    return comb(2 * n, n) // (n + 1)
