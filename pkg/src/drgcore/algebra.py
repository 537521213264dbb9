"""Exact arithmetic over the rationals and real algebraic numbers.

Everything downstream (spectra, cosines, triple searches) relies on this module
for certified equality and ordering.  Values are either `fractions.Fraction`,
an `AlgebraicReal` (minimal polynomial plus an isolating interval, refined by
Sturm-certified bisection), or a `FieldElement` of the quotient field
Q[x]/(minpoly).  No floating point is consulted for any decision; floats only
appear as a final rendering convenience.

Only minimal polynomials of degree <= 4 are factored/validated, which covers
diameter <= 3 intersection arrays (and diameter 4 with a quartic factor).
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = Fraction

LESS, EQUAL, GREATER = -1, 0, 1
_ORDER_NAMES = {LESS: "Less", EQUAL: "Equal", GREATER: "Greater"}


class AlgebraError(Exception):
    """Base class for exact-arithmetic failures."""


class UnsupportedDegreeError(AlgebraError):
    """Polynomial degree exceeds what the factoring routines certify."""


class ContextMismatchError(AlgebraError):
    """FieldElement operands live in different quotient fields."""


def order_name(cmp: int) -> str:
    """Map a comparison result (-1, 0, 1) to 'Less' / 'Equal' / 'Greater'."""
    return _ORDER_NAMES[cmp]


def precision_bits() -> int:
    """Working precision (bits) for interval refinement.

    Controlled by the DRG_PRECISION_BITS environment variable; defaults to 256.
    """
    raw = os.environ.get("DRG_PRECISION_BITS", "256")
    try:
        return max(32, int(raw))
    except ValueError:
        return 256


# ---------------------------------------------------------------------------
# Univariate polynomials over Q, lowest-degree coefficient first.
# ---------------------------------------------------------------------------

class UniPoly:
    """Univariate polynomial over Q; coefficients stored lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational | int]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly([Fraction(c)])

    @staticmethod
    def x() -> "UniPoly":
        return UniPoly([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        lead = dv[-1]
        if len(rem) - 1 < dd:
            return UniPoly([]), UniPoly(rem)
        quo = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                q = c / lead
                quo[i - dd] = q
                for j in range(dd + 1):
                    rem[i - dd + j] -= q * dv[j]
        return UniPoly(quo), UniPoly(rem)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def evaluate(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_interval(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        """Interval Horner evaluation: encloses {p(t) : lo <= t <= hi}."""
        alo = ahi = Fraction(0)
        for c in reversed(self.coeffs):
            alo, ahi = iv_mul(alo, ahi, lo, hi)
            alo, ahi = alo + c, ahi + c
        return alo, ahi

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        lead = self.leading
        if lead == 1:
            return self
        return UniPoly([c / lead for c in self.coeffs])

    def primitive_integer(self) -> "UniPoly":
        """Scale to coprime integer coefficients with positive leading one."""
        if self.is_zero:
            return self
        from math import gcd, lcm
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return UniPoly([Fraction(v // g) for v in ints])

    def shift(self, s: Fraction) -> "UniPoly":
        """Return p(x + s)."""
        out = UniPoly([])
        xs = UniPoly([s, 1])
        for c in reversed(self.coeffs):
            out = out * xs + UniPoly.constant(c)
        return out

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = abs(c)
                coef = "" if mag == 1 else f"{mag}*"
                term = f"{coef}x" if i == 1 else f"{coef}x^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def squarefree_part(p: UniPoly) -> UniPoly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.monic()
    return (p // g).monic()


# ---------------------------------------------------------------------------
# Rational interval helpers (used for certified sign determination).
# ---------------------------------------------------------------------------

def iv_mul(alo, ahi, blo, bhi) -> tuple[Fraction, Fraction]:
    p1, p2, p3, p4 = alo * blo, alo * bhi, ahi * blo, ahi * bhi
    return min(p1, p2, p3, p4), max(p1, p2, p3, p4)


def iv_add(alo, ahi, blo, bhi) -> tuple[Fraction, Fraction]:
    return alo + blo, ahi + bhi


def iv_sub(alo, ahi, blo, bhi) -> tuple[Fraction, Fraction]:
    return alo - bhi, ahi - blo


def iv_scale(alo, ahi, s) -> tuple[Fraction, Fraction]:
    return (alo * s, ahi * s) if s >= 0 else (ahi * s, alo * s)


def iv_sign(lo, hi) -> int | None:
    """Certified sign of the enclosed value, or None if the interval straddles 0."""
    if lo > 0:
        return 1
    if hi < 0:
        return -1
    if lo == 0 and hi == 0:
        return 0
    return None


# ---------------------------------------------------------------------------
# Sturm sequences and root isolation.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _sturm_chain(coeffs: tuple) -> tuple[UniPoly, ...]:
    p = UniPoly(coeffs)
    chain = [p, p.derivative()]
    while chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
        if chain[-1].is_zero:
            chain.pop()
            break
    return tuple(chain)


def sturm_chain(p: UniPoly) -> tuple[UniPoly, ...]:
    """Sturm chain of a squarefree polynomial."""
    return _sturm_chain(p.coeffs)


def _variations(values: Sequence[Fraction]) -> int:
    count, prev = 0, 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def sturm_count(chain: Sequence[UniPoly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots in (lo, hi]; endpoints must not be roots
    of the leading chain polynomial for the usual open-interval reading."""
    va = _variations([q.evaluate(lo) for q in chain])
    vb = _variations([q.evaluate(hi) for q in chain])
    return va - vb


def cauchy_bound(p: UniPoly) -> Fraction:
    lead = abs(p.leading)
    m = max((abs(c) for c in p.coeffs[:-1]), default=Fraction(0))
    return 1 + m / lead


def _isolate_real_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for all real roots of a squarefree p with no
    rational roots (so bisection midpoints are never roots)."""
    chain = sturm_chain(p)
    bound = cauchy_bound(p) + 1
    total = sturm_count(chain, -bound, bound)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, cnt = stack.pop()
        if cnt == 0:
            continue
        if cnt == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = sturm_count(chain, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, cnt - left))
    out.sort(key=lambda iv: iv[0])
    return out


# ---------------------------------------------------------------------------
# Factorization over Q for degree <= 4 (after squarefree reduction).
# ---------------------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots of p (each listed once), via the rational-root theorem."""
    if p.is_zero:
        raise ValueError("zero polynomial")
    q = p.primitive_integer()
    roots = []
    if q.coeffs[0] == 0:
        roots.append(Fraction(0))
        while q.coeffs[0] == 0:
            q = UniPoly(q.coeffs[1:])
    if q.degree >= 1:
        a0 = int(q.coeffs[0])
        an = int(q.coeffs[-1])
        seen = set()
        for num in _divisors(a0):
            for den in _divisors(an):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand in seen:
                        continue
                    seen.add(cand)
                    if q.evaluate(cand) == 0:
                        roots.append(cand)
    return sorted(roots)


def _is_rational_square(q: Fraction) -> Fraction | None:
    """Return sqrt(q) when q is a square of a rational, else None."""
    if q < 0:
        return None
    from math import isqrt
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def _split_quartic(p: UniPoly) -> list[UniPoly] | None:
    """Factor a monic quartic with no rational roots into two rational
    quadratics, or return None when it is irreducible over Q."""
    p = p.monic()
    b3 = p.coeffs[3]
    dep = p.shift(-b3 / 4)  # depressed: y^4 + P y^2 + Q y + R
    P = dep.coeffs[2]
    Qc = dep.coeffs[1]
    R = dep.coeffs[0]

    def recompose(f: UniPoly) -> UniPoly:
        return f.shift(b3 / 4)

    if Qc == 0:
        # biquadratic: (y^2 + u)(y^2 + v) with u + v = P, u v = R
        s = _is_rational_square(P * P - 4 * R)
        if s is not None:
            u = (P + s) / 2
            v = (P - s) / 2
            return [recompose(UniPoly([u, 0, 1])), recompose(UniPoly([v, 0, 1]))]
        # or (y^2 + a y + b)(y^2 - a y + b) with b^2 = R, a^2 = 2b - P
        rb = _is_rational_square(R)
        if rb is not None:
            for b in (rb, -rb):
                a = _is_rational_square(2 * b - P)
                if a is not None and a != 0:
                    return [recompose(UniPoly([b, a, 1])),
                            recompose(UniPoly([b, -a, 1]))]
        return None
    # resolvent cubic for (y^2 + a y + b)(y^2 - a y + c): z = a^2 satisfies
    # z^3 + 2P z^2 + (P^2 - 4R) z - Q^2 = 0 with b+c = P + z, c-b = Q/a.
    resolvent = UniPoly([-Qc * Qc, P * P - 4 * R, 2 * P, 1])
    for z in rational_roots(resolvent):
        if z <= 0:
            continue
        a = _is_rational_square(z)
        if a is None:
            continue
        c = (P + z + Qc / a) / 2
        b = (P + z - Qc / a) / 2
        f1 = UniPoly([b, a, 1])
        f2 = UniPoly([c, -a, 1])
        if (f1 * f2).coeffs == dep.coeffs:
            return [recompose(f1), recompose(f2)]
    return None


def irreducible_factors(p: UniPoly) -> list[tuple[UniPoly, Fraction | None]]:
    """Split a squarefree p into irreducible factors over Q.

    Returns (factor, root) pairs: linear factors carry their rational root,
    higher-degree irreducible factors carry None.  Degrees above 4 that do not
    fully split via rational roots and quadratic trial are rejected.
    """
    p = p.monic()
    factors: list[tuple[UniPoly, Fraction | None]] = []
    for r in rational_roots(p):
        lin = UniPoly([-r, 1])
        p = p // lin
        factors.append((lin, r))
    if p.degree <= 0:
        return factors
    if p.degree in (2, 3):
        factors.append((p, None))  # no rational roots => irreducible
        return factors
    if p.degree == 4:
        split = _split_quartic(p)
        if split is None:
            factors.append((p, None))
        else:
            factors.extend((f.monic(), None) for f in split)
        return factors
    raise UnsupportedDegreeError(
        f"cannot certify irreducibility at degree {p.degree} (supported: <= 4)")


# ---------------------------------------------------------------------------
# Real algebraic numbers.
# ---------------------------------------------------------------------------

class AlgebraicReal:
    """A real algebraic number: irreducible minimal polynomial (primitive
    integer coefficients, positive leading) plus an isolating interval.

    Rational numbers are stored with a linear minpoly and a point interval.
    Values are immutable; the isolating interval only ever shrinks (the cached
    refinement is replaced atomically, so concurrent readers stay safe).
    """

    __slots__ = ("minpoly", "_iv")

    def __init__(self, minpoly: UniPoly, lo: Fraction, hi: Fraction,
                 trusted: bool = False):
        minpoly = minpoly.primitive_integer()
        self.minpoly = minpoly
        self._iv = (Fraction(lo), Fraction(hi))
        if not trusted:
            self._validate()

    def _validate(self) -> None:
        p = self.minpoly
        lo, hi = self._iv
        if p.degree < 1:
            raise ValueError("minimal polynomial must be nonconstant")
        if p.degree == 1:
            r = -p.coeffs[0] / p.coeffs[1]
            if not (lo <= r <= hi):
                raise ValueError("interval does not contain the rational root")
            self._iv = (r, r)
            return
        if rational_roots(p):
            raise ValueError("minimal polynomial of degree >= 2 has a rational root")
        if p.degree > 4:
            raise UnsupportedDegreeError(
                f"cannot certify irreducibility at degree {p.degree}")
        facs = irreducible_factors(p)
        if len(facs) != 1:
            raise ValueError("minimal polynomial is reducible over Q")
        if lo >= hi:
            raise ValueError("empty isolating interval for an irrational value")
        if sturm_count(sturm_chain(p), lo, hi) != 1:
            raise ValueError("interval does not isolate exactly one root")

    @staticmethod
    def from_rational(r) -> "AlgebraicReal":
        r = Fraction(r)
        mp = UniPoly([-r.numerator, r.denominator])
        return AlgebraicReal(mp, r, r, trusted=True)

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    @property
    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational value")
        return -self.minpoly.coeffs[0] / self.minpoly.coeffs[1]

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self._iv

    def refine(self, width) -> tuple[Fraction, Fraction]:
        """Shrink the isolating interval to at most `width` by bisection."""
        width = Fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        lo, hi = self._iv
        if hi - lo <= width:
            return lo, hi
        p = self.minpoly
        slo = 1 if p.evaluate(lo) > 0 else -1
        while hi - lo > width:
            mid = (lo + hi) / 2
            v = p.evaluate(mid)
            # irreducible of degree >= 2 has no rational roots, so v != 0
            if (1 if v > 0 else -1) == slo:
                lo = mid
            else:
                hi = mid
        self._iv = (lo, hi)
        return lo, hi

    def to_float(self) -> float:
        if self.is_rational:
            return float(self.as_fraction())
        lo, hi = self.refine(Fraction(1, 10**18))
        return float((lo + hi) / 2)

    def compare(self, other) -> int:
        return compare(self, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, AlgebraicReal)):
            return compare(self, other) == EQUAL
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.as_fraction())
        return hash(self.minpoly.coeffs)

    def __lt__(self, other):
        return compare(self, other) == LESS

    def __le__(self, other):
        return compare(self, other) != GREATER

    def __gt__(self, other):
        return compare(self, other) == GREATER

    def __ge__(self, other):
        return compare(self, other) != LESS

    def __repr__(self) -> str:
        if self.is_rational:
            return f"AlgebraicReal({self.as_fraction()})"
        lo, hi = self._iv
        return (f"AlgebraicReal({self.minpoly} in "
                f"[{float(lo):.6f}, {float(hi):.6f}])")


def _as_algebraic(v) -> AlgebraicReal:
    if isinstance(v, AlgebraicReal):
        return v
    return AlgebraicReal.from_rational(v)


def compare(a, b) -> int:
    """Exact total-order comparison of AlgebraicReal / Fraction / int values.

    Returns LESS (-1), EQUAL (0) or GREATER (1).
    """
    if not isinstance(a, AlgebraicReal) and not isinstance(b, AlgebraicReal):
        fa, fb = Fraction(a), Fraction(b)
        return (fa > fb) - (fa < fb)
    a = _as_algebraic(a)
    b = _as_algebraic(b)
    if a.is_rational and b.is_rational:
        fa, fb = a.as_fraction(), b.as_fraction()
        return (fa > fb) - (fa < fb)
    if a.is_rational:
        return -compare(b, a.as_fraction())
    if b.is_rational:
        r = b.as_fraction()
        # a irrational: refine until r falls outside the isolating interval
        lo, hi = a.interval
        while lo < r < hi:
            lo, hi = a.refine((hi - lo) / 4)
        if r <= lo:
            return GREATER
        return LESS
    if a.minpoly == b.minpoly:
        chain = sturm_chain(a.minpoly)
        while True:
            alo, ahi = a.interval
            blo, bhi = b.interval
            if ahi < blo:
                return LESS
            if bhi < alo:
                return GREATER
            ilo, ihi = max(alo, blo), min(ahi, bhi)
            if ilo < ihi and sturm_count(chain, ilo, ihi) >= 1:
                return EQUAL
            a.refine((ahi - alo) / 4)
            b.refine((bhi - blo) / 4)
    # distinct irreducible minimal polynomials: the values are distinct
    while True:
        alo, ahi = a.interval
        blo, bhi = b.interval
        if ahi < blo:
            return LESS
        if bhi < alo:
            return GREATER
        a.refine((ahi - alo) / 4)
        b.refine((bhi - blo) / 4)


def real_roots(p: UniPoly) -> list[AlgebraicReal]:
    """All distinct real roots of p, sorted strictly decreasing.

    The input need not be squarefree; multiplicities are discarded.  Rational
    roots come back with linear minimal polynomials, irrational ones with
    their irreducible factor of the squarefree part.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no well-defined root set")
    if p.degree == 0:
        return []
    sf = squarefree_part(p)
    roots: list[AlgebraicReal] = []
    for factor, rat in irreducible_factors(sf):
        if rat is not None:
            roots.append(AlgebraicReal.from_rational(rat))
        else:
            mp = factor.primitive_integer()
            for lo, hi in _isolate_real_roots(factor):
                roots.append(AlgebraicReal(mp, lo, hi, trusted=True))
    # separate intervals pairwise so plain interval comparison sorts them
    changed = True
    while changed:
        changed = False
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                ri, rj = roots[i], roots[j]
                if ri.is_rational and rj.is_rational:
                    continue
                ilo, ihi = ri.interval
                jlo, jhi = rj.interval
                if ihi >= jlo and jhi >= ilo and compare(ri, rj) != EQUAL:
                    ri.refine((ihi - ilo) / 4 if ihi > ilo else Fraction(1))
                    rj.refine((jhi - jlo) / 4 if jhi > jlo else Fraction(1))
                    changed = True
    roots.sort(key=lambda r: r.interval[0], reverse=True)
    return roots


# ---------------------------------------------------------------------------
# Elements of Q[x]/(minpoly).
# ---------------------------------------------------------------------------

class FieldElement:
    """An element of Q(theta) for an AlgebraicReal theta, stored as its
    reduced polynomial representative (degree < deg minpoly)."""

    __slots__ = ("context", "rep")

    def __init__(self, context: AlgebraicReal, rep: UniPoly):
        if rep.degree >= context.minpoly.degree:
            rep = rep % context.minpoly
        if context.minpoly.degree == 1 and rep.degree > 0:
            rep = UniPoly.constant(rep.evaluate(context.as_fraction()))
        self.context = context
        self.rep = rep

    @staticmethod
    def constant(context: AlgebraicReal, value) -> "FieldElement":
        return FieldElement(context, UniPoly.constant(value))

    @staticmethod
    def generator(context: AlgebraicReal) -> "FieldElement":
        """The element theta itself."""
        if context.is_rational:
            return FieldElement.constant(context, context.as_fraction())
        return FieldElement(context, UniPoly.x())

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.context is not self.context and \
                    other.context.minpoly != self.context.minpoly:
                raise ContextMismatchError("operands live in different fields")
            if other.context is not self.context and \
                    compare(other.context, self.context) != EQUAL:
                raise ContextMismatchError("operands live in different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement.constant(self.context, other)
        return NotImplemented

    @property
    def is_zero(self) -> bool:
        return self.rep.is_zero

    def as_rational(self) -> Fraction | None:
        """The rational value when the representative is constant, else None."""
        if self.rep.is_zero:
            return Fraction(0)
        if self.rep.degree == 0:
            return self.rep.coeffs[0]
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.context, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.context, -self.rep)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.context, self.rep - o.rep)

    def __rsub__(self, other):
        return -(self - other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.context, self.rep * o.rep)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid: s*rep + t*minpoly = gcd (a nonzero constant)
        r0, r1 = self.context.minpoly, self.rep
        s0, s1 = UniPoly([]), UniPoly.constant(1)
        while not r1.is_zero:
            q, r = r0.divmod(r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree != 0:
            raise AlgebraError("minimal polynomial is not irreducible")
        return FieldElement(self.context, s0 * (1 / r0.coeffs[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.as_rational() == Fraction(other)
        if isinstance(other, FieldElement):
            return self.context.minpoly == other.context.minpoly and \
                self.rep == other.rep and compare(self.context, other.context) == EQUAL
        return NotImplemented

    def __hash__(self):
        return hash((self.context, self.rep))

    def interval(self, width) -> tuple[Fraction, Fraction]:
        """Rational interval containing the value, of width at most `width`."""
        width = Fraction(width)
        r = self.as_rational()
        if r is not None:
            return r, r
        theta_w = width / (1 + sum(abs(c) for c in self.rep.coeffs)) / 8
        while True:
            lo, hi = self.context.refine(theta_w)
            vlo, vhi = self.rep.eval_interval(lo, hi)
            if vhi - vlo <= width:
                return vlo, vhi
            theta_w /= 16

    def sign(self) -> int:
        """Exact sign: -1, 0, or 1."""
        r = self.as_rational()
        if r is not None:
            return (r > 0) - (r < 0)
        lo, hi = self.context.interval
        width = (hi - lo) / 2 if hi > lo else Fraction(1, 2)
        while True:
            lo, hi = self.context.refine(width)
            vlo, vhi = self.rep.eval_interval(lo, hi)
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            # rep(theta) != 0 because deg(rep) < deg(minpoly), so this ends
            width /= 16

    def to_float(self) -> float:
        lo, hi = self.interval(Fraction(1, 10**18))
        return float((lo + hi) / 2)

    def __repr__(self):
        if self.context.is_rational or self.rep.degree <= 0:
            r = self.as_rational()
            return f"FieldElement({r})"
        return f"FieldElement({self.rep} where {self.context.minpoly} = 0)"


def field_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Named arithmetic entry point: op in {'add','sub','mul','div'}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def decimal_str(value, places: int = 3) -> str:
    """Round-half-to-even decimal rendering of an exact value.

    Integers render without a decimal point (matching table conventions);
    non-integral values render with exactly `places` digits.
    """
    scale = 10 ** places
    if isinstance(value, AlgebraicReal) and value.is_rational:
        value = value.as_fraction()
    elif isinstance(value, FieldElement):
        r = value.as_rational()
        if r is not None:
            value = r
    if isinstance(value, (int, Fraction)):
        f = Fraction(value)
        if f.denominator == 1:
            return str(f.numerator)
        q = round(f * scale)
    else:
        width = Fraction(1, 10 ** (places + 9))
        while True:
            if isinstance(value, FieldElement):
                lo, hi = value.interval(width)
            else:
                lo, hi = value.refine(width)
            qlo, qhi = round(lo * scale), round(hi * scale)
            if qlo == qhi:
                q = qlo
                break
            width /= 10**6
    sign = "-" if q < 0 else ""
    q = abs(q)
    if places == 0:
        return f"{sign}{q}"
    return f"{sign}{q // scale}.{q % scale:0{places}d}"
