"""Parameter engine for intersection arrays.

From an array {b_0,...,b_{d-1}; c_1,...,c_d} this module derives everything the
analysis needs: valencies and intersection numbers, the exact spectrum of the
tridiagonal intersection matrix, cosine sequences as elements of Q(theta_j),
multiplicities, eigenmatrices, Krein parameters with certified sign verdicts,
and the bipartite/antipodal/primitive classification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    EQUAL,
    GREATER,
    AlgebraicReal,
    FieldElement,
    UniPoly,
    UnsupportedDegreeError,
    compare,
    iv_add,
    iv_mul,
    iv_scale,
    precision_bits,
    real_roots,
)


class DrgError(Exception):
    """Base class for engine errors."""


class InvalidArrayError(DrgError):
    """The candidate array violates the shape invariants."""


class InfeasibleArrayError(DrgError):
    """A derived quantity rules the array out (verdict, not a crash)."""


class SpectrumInfeasibleError(InfeasibleArrayError):
    """Fewer than d+1 distinct real eigenvalues."""


class MultiplicityInfeasibleError(InfeasibleArrayError):
    """An eigenvalue multiplicity is irrational or not a positive integer."""


class UnsupportedArrayError(DrgError):
    """The array is outside the engine's certified range."""


class InternalConsistencyError(DrgError):
    """A mathematical identity that must hold failed; indicates a bug."""


# ---------------------------------------------------------------------------
# Intersection arrays.
# ---------------------------------------------------------------------------

def check_shape(b: Sequence[int], c: Sequence[int]) -> list[str]:
    """Shape-invariant violations of a candidate {b; c} array (empty = valid)."""
    problems = []
    if len(b) != len(c) or len(b) < 2:
        problems.append("need b_0..b_{d-1} and c_1..c_d with d >= 2")
        return problems
    if any(not isinstance(v, int) or v < 1 for v in list(b) + list(c)):
        problems.append("all entries must be positive integers")
        return problems
    d = len(b)
    if c[0] != 1:
        problems.append(f"c_1 = {c[0]} != 1")
    for i in range(d - 1):
        if b[i] < b[i + 1]:
            problems.append(f"b_{i} = {b[i]} < b_{i + 1} = {b[i + 1]}")
        if c[i] > c[i + 1]:
            problems.append(f"c_{i + 1} = {c[i]} > c_{i + 2} = {c[i + 1]}")
    for i, ci in enumerate(c, start=1):
        if ci > b[0]:
            problems.append(f"c_{i} = {ci} > b_0 = {b[0]}")
    for i in range(d + 1):
        bi = b[i] if i < d else 0
        ci = c[i - 1] if i >= 1 else 0
        if b[0] - bi - ci < 0:
            problems.append(f"a_{i} = {b[0] - bi - ci} < 0")
    return problems


@dataclass(frozen=True)
class IntersectionArray:
    """The parameters {b_0,...,b_{d-1}; c_1,...,c_d} of a candidate graph."""

    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        problems = check_shape(self.b, self.c)
        if problems:
            raise InvalidArrayError("; ".join(problems))

    @property
    def d(self) -> int:
        return len(self.b)

    @property
    def b0(self) -> int:
        return self.b[0]

    def a(self, i: int) -> int:
        bi = self.b[i] if i < self.d else 0
        ci = self.c[i - 1] if i >= 1 else 0
        return self.b[0] - bi - ci

    @property
    def a_list(self) -> tuple[int, ...]:
        return tuple(self.a(i) for i in range(self.d + 1))

    def as_tuple(self) -> tuple[int, ...]:
        return self.b + self.c

    def __str__(self) -> str:
        return "{%s;%s}" % (",".join(map(str, self.b)), ",".join(map(str, self.c)))


_ARRAY_RE = re.compile(r"^\{([0-9,\s]+);([0-9,\s]+)\}$")


def parse_array(text: str) -> IntersectionArray:
    """Parse the `{b0,b1,...;c1,c2,...}` syntax (whitespace tolerated)."""
    m = _ARRAY_RE.match(text.strip())
    if not m:
        raise InvalidArrayError(f"cannot parse intersection array: {text!r}")
    try:
        b = tuple(int(t) for t in m.group(1).split(","))
        c = tuple(int(t) for t in m.group(2).split(","))
    except ValueError as exc:
        raise InvalidArrayError(f"cannot parse intersection array: {text!r}") from exc
    return IntersectionArray(b, c)


def as_array(arr) -> IntersectionArray:
    if isinstance(arr, IntersectionArray):
        return arr
    if isinstance(arr, str):
        return parse_array(arr)
    raise TypeError(f"expected IntersectionArray or text, got {type(arr)!r}")


# ---------------------------------------------------------------------------
# Valencies and intersection numbers.
# ---------------------------------------------------------------------------

def valencies(arr: IntersectionArray) -> tuple[int, ...]:
    """k_0..k_d via k_{i+1} = k_i b_i / c_{i+1}; must all be integers."""
    k = [1]
    for i in range(arr.d):
        num = k[-1] * arr.b[i]
        ci = arr.c[i]
        if num % ci:
            raise InfeasibleArrayError(
                f"valency k_{i + 1} = {num}/{ci} is not an integer")
        k.append(num // ci)
    return tuple(k)


def p_tensor(arr: IntersectionArray,
             k: tuple[int, ...] | None = None) -> tuple:
    """All intersection numbers p_{ij}^h as a (d+1)^3 nested tuple.

    Built from the three-term product A_1 A_i and the iteration
    c_{i+1} p_{i+1,j} = (A_1 - a_i) p_{i,j} - b_{i-1} p_{i-1,j}; every entry
    must come out a non-negative integer.
    """
    d = arr.d
    a = arr.a_list
    b = list(arr.b) + [0]          # b_0..b_d with b_d = 0
    c = [0] + list(arr.c)          # c_0..c_d with c_0 = 0
    if k is None:
        k = valencies(arr)

    # p[i][j][h]; base rows i = 0 and i = 1
    p = [[[0] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for j in range(d + 1):
        p[0][j][j] = 1
    for j in range(d + 1):
        if j - 1 >= 0:
            p[1][j][j - 1] = b[j - 1]
        p[1][j][j] = a[j]
        if j + 1 <= d:
            p[1][j][j + 1] = c[j + 1]
    for i in range(1, d):
        ci1 = c[i + 1]
        for j in range(d + 1):
            row_i = p[i][j]
            row_im1 = p[i - 1][j]
            new = [0] * (d + 1)
            for h in range(d + 1):
                val = a[h] * row_i[h] - a[i] * row_i[h] - b[i - 1] * row_im1[h]
                if h - 1 >= 0:
                    val += c[h] * row_i[h - 1]
                if h + 1 <= d:
                    val += b[h] * row_i[h + 1]
                if val % ci1:
                    raise InfeasibleArrayError(
                        f"p_({i + 1},{j})^{h} = {val}/{ci1} is not an integer")
                q = val // ci1
                if q < 0:
                    raise InfeasibleArrayError(
                        f"p_({i + 1},{j})^{h} = {q} is negative")
                new[h] = q
            p[i + 1][j] = new
    return tuple(tuple(tuple(row) for row in plane) for plane in p)


@dataclass(frozen=True)
class ParameterSet:
    """Array plus everything derived combinatorially from it."""

    array: IntersectionArray
    a: tuple[int, ...]
    k: tuple[int, ...]
    n: int
    p: tuple

    @property
    def d(self) -> int:
        return self.array.d


def derive_parameters(arr) -> ParameterSet:
    """Valencies, vertex count and the full p-tensor, with the standard
    identities re-verified exactly."""
    arr = as_array(arr)
    k = valencies(arr)
    p = p_tensor(arr, k)
    n = sum(k)
    d = arr.d
    for i in range(d + 1):
        for j in range(d + 1):
            for h in range(d + 1):
                if k[h] * p[i][j][h] != k[i] * p[h][j][i]:
                    raise InternalConsistencyError(
                        f"k_h p_ij^h != k_i p_hj^i at (i,j,h)=({i},{j},{h})")
    for i in range(d + 1):
        for h in range(d + 1):
            if sum(p[i][j][h] for j in range(d + 1)) != k[i]:
                raise InternalConsistencyError(
                    f"sum_j p_({i},j)^{h} != k_{i}")
    return ParameterSet(array=arr, a=arr.a_list, k=k, n=n, p=p)


# ---------------------------------------------------------------------------
# Spectrum of the tridiagonal intersection matrix.
# ---------------------------------------------------------------------------

def intersection_char_poly(arr: IntersectionArray) -> UniPoly:
    """Characteristic polynomial of the (d+1)x(d+1) tridiagonal matrix with
    diagonal a_i, superdiagonal b_i, subdiagonal c_i (monic, degree d+1)."""
    a = arr.a_list
    b = arr.b
    c = arr.c
    prev = UniPoly.constant(1)                    # chi_{-1}
    cur = UniPoly([-a[0], 1])                     # chi_0 = x - a_0
    for i in range(1, arr.d + 1):
        nxt = UniPoly([-a[i], 1]) * cur - (b[i - 1] * c[i - 1]) * prev
        prev, cur = cur, nxt
    return cur


def spectrum(ps: ParameterSet) -> list[AlgebraicReal]:
    """The d+1 distinct eigenvalues, strictly decreasing; theta_0 = b_0.

    Raises InfeasibleArrayError when the characteristic polynomial has fewer
    than d+1 distinct real roots, and UnsupportedArrayError when an
    irreducible factor of degree > 4 appears (only possible for d >= 4).
    """
    poly = intersection_char_poly(ps.array)
    try:
        roots = real_roots(poly)
    except UnsupportedDegreeError as exc:
        raise UnsupportedArrayError(
            f"spectrum of {ps.array} needs an irreducible factor of degree > 4 "
            f"({exc}); not certified") from exc
    if len(roots) != ps.d + 1:
        raise SpectrumInfeasibleError(
            f"{ps.array} has {len(roots)} distinct real eigenvalues, "
            f"needs {ps.d + 1}")
    if compare(roots[0], ps.array.b0) != EQUAL:
        raise InternalConsistencyError("largest eigenvalue is not b_0")
    return roots


# ---------------------------------------------------------------------------
# Cosine sequences and multiplicities.
# ---------------------------------------------------------------------------

def cosine_sequence(ps: ParameterSet, theta: AlgebraicReal) -> list[FieldElement]:
    """Cosines w(0..d, j) in Q(theta), plus the sentinel w(d+1, j) = 0.

    The three-term recurrence is run exactly; the terminal identity
    (theta - a_d) w(d) = c_d w(d-1) is then checked, which certifies that
    theta really is an eigenvalue of the array.
    """
    d = ps.d
    a = ps.a
    b = ps.array.b
    c = ps.array.c
    t = FieldElement.generator(theta)
    w = [FieldElement.constant(theta, 1), t * Fraction(1, b[0])]
    for r in range(1, d):
        w.append(((t - a[r]) * w[r] - c[r - 1] * w[r - 1]) * Fraction(1, b[r]))
    terminal = (t - a[d]) * w[d] - c[d - 1] * w[d - 1]
    if not terminal.is_zero:
        raise InternalConsistencyError(
            f"terminal cosine identity failed for {ps.array}: "
            f"{theta!r} is not an eigenvalue")
    w.append(FieldElement.constant(theta, 0))
    return w


def multiplicities(ps: ParameterSet, thetas: Sequence[AlgebraicReal],
                   wrows: Sequence[Sequence[FieldElement]]) -> tuple[int, ...]:
    """m_j = n / sum_i k_i w(i,j)^2, demanded to be positive integers.

    A value that stays irrational or non-integral is an infeasibility signal.
    The exact identities sum m_j = n and m_0 = 1 are re-checked and raise
    InternalConsistencyError on failure (they hold for any true spectrum).
    """
    d = ps.d
    ms = []
    for j, theta in enumerate(thetas):
        s = FieldElement.constant(theta, 0)
        for i in range(d + 1):
            s = s + ps.k[i] * wrows[j][i] * wrows[j][i]
        val = s.as_rational()
        if val is None:
            raise MultiplicityInfeasibleError(
                f"multiplicity of eigenvalue #{j} of {ps.array} is irrational")
        m = Fraction(ps.n) / val
        if m.denominator != 1 or m <= 0:
            raise MultiplicityInfeasibleError(
                f"multiplicity of eigenvalue #{j} of {ps.array} is {m}, "
                f"not a positive integer")
        ms.append(int(m))
    if ms[0] != 1:
        raise InternalConsistencyError("m_0 != 1")
    if sum(ms) != ps.n:
        raise InternalConsistencyError("multiplicities do not sum to n")
    return tuple(ms)


@dataclass(frozen=True)
class SpectralData:
    """Exact spectral side of an array: eigenvalues, multiplicities, cosine
    table (rows include the w(d+1, j) = 0 sentinel), and eigenmatrices
    P(j,i) = k_i w(i,j), Q(i,j) = m_j w(i,j)."""

    theta: tuple[AlgebraicReal, ...]
    m: tuple[int, ...]
    w: tuple[tuple[FieldElement, ...], ...]
    P: tuple[tuple[FieldElement, ...], ...]
    Q: tuple[tuple[FieldElement, ...], ...]

    @property
    def d(self) -> int:
        return len(self.theta) - 1

    def cosines(self, j: int) -> tuple[FieldElement, ...]:
        """Row j without the sentinel (length d+1)."""
        return self.w[j][: self.d + 1]

    def cosine_floats(self, j: int) -> list[float]:
        """Numeric rendering of row j including the sentinel zero."""
        return [x.to_float() for x in self.w[j]]


def spectral_data(ps: ParameterSet) -> SpectralData:
    thetas = spectrum(ps)
    wrows = tuple(tuple(cosine_sequence(ps, t)) for t in thetas)
    ms = multiplicities(ps, thetas, wrows)
    d = ps.d
    P = tuple(tuple(ps.k[i] * wrows[j][i] for i in range(d + 1))
              for j in range(d + 1))
    Q = tuple(tuple(ms[j] * wrows[j][i] for j in range(d + 1))
              for i in range(d + 1))
    return SpectralData(theta=tuple(thetas), m=ms, w=wrows, P=P, Q=Q)


def sign_change_count(row: Sequence[FieldElement]) -> int:
    """Sign changes of a cosine row: zero entries are skipped, then adjacent
    strictly-opposite-sign pairs are counted."""
    signs = [x.sign() for x in row]
    signs = [s for s in signs if s != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s * t < 0)


# ---------------------------------------------------------------------------
# Krein parameters.
# ---------------------------------------------------------------------------

HEURISTIC_ZERO_WIDTH = Fraction(1, 10**30)


@dataclass(frozen=True)
class KreinEntry:
    """Certified sign verdict for one q_{ij}^h, with its enclosing interval.

    `heuristic` marks a Zero verdict that was not proved exactly: the interval
    still straddled 0 after shrinking below 10^-30.
    """

    verdict: str  # "Negative" | "Zero" | "Positive"
    lo: Fraction
    hi: Fraction
    heuristic: bool = False


def krein_parameters(sd: SpectralData, ps: ParameterSet) -> tuple:
    """q_{ij}^h = (m_i m_j / n) sum_r k_r w(r,i) w(r,j) w(r,h) as sign verdicts.

    All-rational spectra are evaluated exactly.  Otherwise the sums are
    enclosed by interval arithmetic at adaptive precision; an interval that
    still straddles zero below width 10^-30 is reported as heuristic Zero.
    """
    d = ps.d
    n = ps.n
    if all(t.is_rational for t in sd.theta):
        wq = [[x.as_rational() for x in sd.cosines(j)] for j in range(d + 1)]
        out = [[[None] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
        for i in range(d + 1):
            for j in range(i, d + 1):
                scale = Fraction(sd.m[i] * sd.m[j], n)
                for h in range(d + 1):
                    q = scale * sum(ps.k[r] * wq[i][r] * wq[j][r] * wq[h][r]
                                    for r in range(d + 1))
                    verdict = "Positive" if q > 0 else ("Negative" if q < 0 else "Zero")
                    out[i][j][h] = out[j][i][h] = KreinEntry(verdict, q, q)
        return tuple(tuple(tuple(row) for row in plane) for plane in out)

    start_bits = max(16, precision_bits() // 4)
    width = Fraction(1, 2**start_bits)
    pending = {(i, j, h) for i in range(d + 1) for j in range(i, d + 1)
               for h in range(d + 1)}
    results: dict[tuple[int, int, int], KreinEntry] = {}
    while pending:
        rows = []
        for j in range(d + 1):
            t = sd.theta[j]
            if t.is_rational:
                rows.append([(x.as_rational(),) * 2 for x in sd.cosines(j)])
            else:
                lo, hi = t.refine(width)
                rows.append([x.rep.eval_interval(lo, hi) for x in sd.cosines(j)])
        decided = set()
        for (i, j, h) in pending:
            slo, shi = Fraction(0), Fraction(0)
            for r in range(d + 1):
                tlo, thi = iv_mul(*rows[i][r], *rows[j][r])
                tlo, thi = iv_mul(tlo, thi, *rows[h][r])
                slo, shi = iv_add(slo, shi, *iv_scale(tlo, thi, ps.k[r]))
            qlo, qhi = iv_scale(slo, shi, Fraction(sd.m[i] * sd.m[j], n))
            entry = None
            if qlo > 0:
                entry = KreinEntry("Positive", qlo, qhi)
            elif qhi < 0:
                entry = KreinEntry("Negative", qlo, qhi)
            elif qlo == qhi == 0:
                entry = KreinEntry("Zero", qlo, qhi)
            elif qhi - qlo < HEURISTIC_ZERO_WIDTH:
                entry = KreinEntry("Zero", qlo, qhi, heuristic=True)
            if entry is not None:
                results[(i, j, h)] = entry
                decided.add((i, j, h))
        pending -= decided
        width = width * width if width < Fraction(1, 2**64) else width / 2**64
    out = [[[None] * (d + 1) for _ in range(d + 1)] for _ in range(d + 1)]
    for (i, j, h), entry in results.items():
        out[i][j][h] = out[j][i][h] = entry
    return tuple(tuple(tuple(row) for row in plane) for plane in out)


# ---------------------------------------------------------------------------
# Family classification.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyClass:
    bipartite: bool
    antipodal: bool
    primitive: bool


def classify_family(ps: ParameterSet, sd: SpectralData) -> FamilyClass:
    """Bipartite (all a_i = 0), antipodal (p_dd^i = 0 for 0 < i < d),
    primitive (neither), for valency >= 3."""
    if ps.array.b0 <= 2:
        raise UnsupportedArrayError(
            "family classification needs valency >= 3 (cycles/paths excluded)")
    d = ps.d
    bip = all(ps.a[i] == 0 for i in range(1, d + 1))
    theta_min_is_minus_k = compare(sd.theta[d], -ps.array.b0) == EQUAL
    if bip != theta_min_is_minus_k:
        raise InternalConsistencyError(
            "bipartite test disagrees with theta_d = -b_0 criterion")
    antip = all(ps.p[d][d][i] == 0 for i in range(1, d))
    return FamilyClass(bipartite=bip, antipodal=antip,
                       primitive=not bip and not antip)
