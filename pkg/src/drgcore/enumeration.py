"""Survey enumeration of feasible intersection arrays.

For diameter 3 the grid over (b_0, b_1, b_2, c_2, c_3) is walked with
divisor-driven loops (c_2 must divide b_0 b_1 and c_3 must divide k_2 b_2 for
integral valencies) and cheap integer parity screens before the full battery
runs.  Output is deterministic: records stream in lexicographic order of the
array tuple regardless of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Iterator

from .algebra import decimal_str
from .feasibility import FeasibilityReport, battery_with_artifacts
from .homtheory import CoreVerdict, classify
from .params import (
    FamilyClass,
    IntersectionArray,
    UnsupportedArrayError,
    classify_family,
)

FAMILY_NAMES = ("primitive", "antipodal", "bipartite")


@dataclass(frozen=True)
class EigenvalueSummary:
    """One eigenvalue for survey output: 3-decimal rendering, multiplicity,
    and the primitive integer minimal polynomial (lowest degree first)."""

    value: str
    multiplicity: int
    minpoly: tuple[int, ...]


@dataclass(frozen=True)
class EnumerationRecord:
    array: str
    n: int
    k: tuple[int, ...]
    report: FeasibilityReport
    family: FamilyClass
    spectrum: tuple[EigenvalueSummary, ...]
    verdict: CoreVerdict

    @property
    def witnesses(self) -> tuple:
        return self.verdict.witnesses

    @property
    def k_tuple_sort_key(self) -> tuple[int, ...]:
        inner = self.array.strip("{}").replace(";", ",")
        return tuple(int(v) for v in inner.split(","))


def _family_matches(fc: FamilyClass, families: frozenset[str] | None) -> bool:
    if families is None:
        return True
    return ("primitive" in families and fc.primitive) or \
        ("antipodal" in families and fc.antipodal) or \
        ("bipartite" in families and fc.bipartite)


def _record_for(arr: IntersectionArray,
                families: frozenset[str] | None) -> EnumerationRecord | None:
    report, ps, sd = battery_with_artifacts(arr)
    if not report.feasible or ps is None or sd is None:
        return None
    try:
        fc = classify_family(ps, sd)
    except UnsupportedArrayError:
        return None  # valency <= 2 never enters the survey grid anyway
    if not _family_matches(fc, families):
        return None
    verdict = classify(ps, sd, fc)
    spectrum = tuple(
        EigenvalueSummary(decimal_str(t), m,
                          tuple(int(c) for c in t.minpoly.coeffs))
        for t, m in zip(sd.theta, sd.m))
    return EnumerationRecord(array=str(arr), n=ps.n, k=ps.k, report=report,
                             family=fc, spectrum=spectrum, verdict=verdict)


def _char_cubic(b0: int, b1: int, b2: int, c2: int, c3: int) -> list[int]:
    """Integer coefficients (lowest first) of chi(x)/(x - b_0) for the
    diameter-3 tridiagonal intersection matrix."""
    a = (0, b0 - b1 - 1, b0 - b2 - c2, b0 - c3)
    b = (b0, b1, b2)
    c = (1, c2, c3)
    prev = [1]
    cur = [-a[0], 1]
    for i in range(1, 4):
        s = b[i - 1] * c[i - 1]
        nxt = [0] * (len(cur) + 1)
        for j, v in enumerate(cur):
            nxt[j] += -a[i] * v
            nxt[j + 1] += v
        for j, v in enumerate(prev):
            nxt[j] -= s * v
        prev, cur = cur, nxt
    # synthetic division by (x - b0); the remainder vanishes identically
    out = [0, 0, 0, cur[4]]
    for i in range(2, -1, -1):
        out[i] = cur[i + 1] + b0 * out[i + 1]
    assert cur[0] + b0 * out[0] == 0
    return out  # monic cubic [g0, g1, g2, 1]


def _rational_multiplicity_ok(n: int, k: tuple, aa: tuple, bb: tuple,
                              cc: tuple, theta: int, L: int) -> bool:
    """Integer multiplicity test for an integer eigenvalue: cosines are
    scaled by L = b_0 b_1 b_2 so every value stays integral."""
    W0 = L
    W1 = theta * (L // bb[0])
    num = (theta - aa[1]) * W1 - cc[0] * W0
    W2, rem = divmod(num, bb[1])
    if rem:
        return True  # cannot happen; defer to the battery
    num = (theta - aa[2]) * W2 - cc[1] * W1
    W3, rem = divmod(num, bb[2])
    if rem:
        return True
    s = k[0] * W0 * W0 + k[1] * W1 * W1 + k[2] * W2 * W2 + k[3] * W3 * W3
    return s > 0 and (n * L * L) % s == 0


def _quadratic_multiplicity_ok(n: int, k: tuple, aa: tuple, bb: tuple,
                               cc: tuple, p: int, q: int, L: int) -> bool:
    """Multiplicity test for the conjugate pair of roots of x^2 + p x + q,
    on L-scaled integer representatives U + V*theta (theta^2 = -p theta - q)."""
    U = [L, 0, 0, 0]
    V = [0, L // bb[0], 0, 0]
    for r in (1, 2):
        tu = -aa[r] * U[r] - q * V[r]
        tv = U[r] + (-p - aa[r]) * V[r]
        u2, ru = divmod(tu - cc[r - 1] * U[r - 1], bb[r])
        v2, rv = divmod(tv - cc[r - 1] * V[r - 1], bb[r])
        if ru or rv:
            return True  # cannot happen; defer to the battery
        U[r + 1], V[r + 1] = u2, v2
    s_real = k[0] * L * L
    s_theta = 0
    for i in (1, 2, 3):
        s_real += k[i] * (U[i] * U[i] - q * V[i] * V[i])
        s_theta += k[i] * (2 * U[i] * V[i] - p * V[i] * V[i])
    if s_theta != 0:
        return False  # irrational multiplicity
    return s_real > 0 and (n * L * L) % s_real == 0


def _cubic_multiplicity_ok(n: int, k: tuple, aa: tuple, bb: tuple, cc: tuple,
                           g: list[int], L: int) -> bool:
    """Multiplicity test for the three conjugate roots of an irreducible
    monic integer cubic g, on L-scaled representatives (U, V, W)."""
    g0, g1, g2 = g[0], g[1], g[2]

    def theta_times(u, v, w):
        # theta^3 = -g2 theta^2 - g1 theta - g0
        return -g0 * w, u - g1 * w, v - g2 * w

    def square(u, v, w):
        c0 = u * u
        c1 = 2 * u * v
        c2 = v * v + 2 * u * w
        c3 = 2 * v * w
        c4 = w * w
        c3 -= g2 * c4
        c2 -= g1 * c4
        c1 -= g0 * c4
        c2 -= g2 * c3
        c1 -= g1 * c3
        c0 -= g0 * c3
        return c0, c1, c2

    reps = [(L, 0, 0), (0, L // bb[0], 0)]
    for r in (1, 2):
        tu, tv, tw = theta_times(*reps[r])
        tu -= aa[r] * reps[r][0]
        tv -= aa[r] * reps[r][1]
        tw -= aa[r] * reps[r][2]
        pu, pv, pw = reps[r - 1]
        u2, ru = divmod(tu - cc[r - 1] * pu, bb[r])
        v2, rv = divmod(tv - cc[r - 1] * pv, bb[r])
        w2, rw = divmod(tw - cc[r - 1] * pw, bb[r])
        if ru or rv or rw:
            return True  # cannot happen; defer to the battery
        reps.append((u2, v2, w2))
    s0, s1, s2 = k[0] * L * L, 0, 0
    for i in (1, 2, 3):
        c0, c1, c2 = square(*reps[i])
        s0 += k[i] * c0
        s1 += k[i] * c1
        s2 += k[i] * c2
    if s1 or s2:
        return False
    return s0 > 0 and (n * L * L) % s0 == 0


def _multiplicity_screen(b0: int, b1: int, b2: int, c2: int, c3: int,
                         k2: int, k3: int) -> bool:
    """Fast exact F5/F6 screen for diameter 3: True when every eigenvalue
    multiplicity is a positive integer (same arithmetic as the battery, in
    plain Fractions).  Ambiguous corner cases return True and fall through to
    the authoritative battery."""
    n = 1 + b0 + k2 + k3
    k = (1, b0, k2, k3)
    aa = (0, b0 - b1 - 1, b0 - b2 - c2, b0 - c3)
    bb = (b0, b1, b2)
    cc = (1, c2, c3)
    L = b0 * b1 * b2
    g = _char_cubic(b0, b1, b2, c2, c3)
    # integer roots lie in [-b0, b0]; divide each out of g (all arithmetic
    # stays in plain integers: the cubic is monic with integer coefficients)
    roots: list[int] = []
    cur = list(g)
    for r in range(-b0, b0 + 1):
        while len(cur) > 1:
            acc = 0
            for coef in reversed(cur):
                acc = acc * r + coef
            if acc != 0:
                break
            nxt = [0] * (len(cur) - 1)
            carry = cur[-1]
            for i in range(len(cur) - 2, -1, -1):
                nxt[i] = carry
                carry = cur[i] + r * carry
            cur = nxt
            roots.append(r)
    if b0 in roots or len(set(roots)) != len(roots):
        return True  # repeated eigenvalue: impossible here, but be safe
    for r in roots:
        if not _rational_multiplicity_ok(n, k, aa, bb, cc, r, L):
            return False
    deg = len(cur) - 1
    if deg == 0:
        return True
    if deg == 2:
        return _quadratic_multiplicity_ok(n, k, aa, bb, cc, cur[1], cur[0], L)
    if deg == 3:
        return _cubic_multiplicity_ok(n, k, aa, bb, cc, g, L)
    return True  # degree-1 residue cannot occur for integer polynomials


def _smallest_prime_factors(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    i = 2
    while i * i <= limit:
        if spf[i] == i:
            for j in range(i * i, limit + 1, i):
                if spf[j] == j:
                    spf[j] = i
        i += 1
    return spf


def _divisors(n: int, spf: list[int]) -> list[int]:
    divs = [1]
    while n > 1:
        p = spf[n]
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _diameter3_slice(b0: int, families: frozenset[str] | None
                     ) -> list[EnumerationRecord]:
    """All feasible records with this b_0, ordered by (b_1, b_2, c_2, c_3)."""
    spf = _smallest_prime_factors(b0 * b0 * b0 + 1)
    out: list[EnumerationRecord] = []
    for b1 in range(1, b0):
        a1 = b0 - b1 - 1
        kb = b0 * b1
        for c2 in _divisors(kb, spf):
            if c2 > b0 - 1:
                break
            k2 = kb // c2
            for b2 in range(1, min(b1, b0 - c2) + 1):
                a2 = b0 - b2 - c2
                t = k2 * b2
                for c3 in _divisors(t, spf):
                    if c3 < c2:
                        continue
                    if c3 > b0:
                        break
                    k3 = t // c3
                    n = 1 + b0 + k2 + k3
                    a3 = b0 - c3
                    if (n * b0) % 2 or (b0 * a1) % 2 or (n * k2) % 2 or \
                            (k2 * a2) % 2 or (n * k3) % 2 or (k3 * a3) % 2:
                        continue
                    if not _multiplicity_screen(b0, b1, b2, c2, c3, k2, k3):
                        continue
                    rec = _record_for(
                        IntersectionArray((b0, b1, b2), (1, c2, c3)), families)
                    if rec is not None:
                        out.append(rec)
    out.sort(key=lambda r: r.k_tuple_sort_key)
    return out


def _generic_slice(d: int, b0: int, families: frozenset[str] | None
                   ) -> list[EnumerationRecord]:
    out: list[EnumerationRecord] = []
    b_tails = [bs for bs in combinations_with_replacement(range(1, b0), d - 1)]
    c_tails = [cs for cs in combinations_with_replacement(range(1, b0 + 1), d - 1)]
    for bt in b_tails:
        b = (b0,) + tuple(sorted(bt, reverse=True))
        for ct in c_tails:
            c = (1,) + tuple(sorted(ct))
            ok = all(b0 - (b[i] if i < d else 0) - (c[i - 1] if i >= 1 else 0) >= 0
                     for i in range(d + 1))
            if not ok:
                continue
            rec = _record_for(IntersectionArray(b, c), families)
            if rec is not None:
                out.append(rec)
    out.sort(key=lambda r: r.k_tuple_sort_key)
    return out


def _slice(args: tuple[int, int, frozenset[str] | None]
           ) -> list[EnumerationRecord]:
    d, b0, families = args
    if d == 3:
        return _diameter3_slice(b0, families)
    return _generic_slice(d, b0, families)


def enumerate_arrays(d: int, k_max: int,
                     families: Iterable[str] | None = None,
                     jobs: int | None = None) -> Iterator[EnumerationRecord]:
    """Stream every feasible intersection array of diameter d with
    3 <= b_0 <= k_max, filtered by family, in lexicographic array order.

    `families` is a subset of {"primitive", "antipodal", "bipartite"} (None
    keeps everything).  `jobs` sizes the worker pool over b_0 slices; output
    order does not depend on it.
    """
    if k_max < 3:
        raise ValueError("k_max must be at least 3")
    if d < 2:
        raise ValueError("diameter must be at least 2")
    fam: frozenset[str] | None
    if families is None:
        fam = None
    else:
        fam = frozenset(families)
        if not fam:
            fam = None
        bad = fam - set(FAMILY_NAMES) if fam else set()
        if bad:
            raise ValueError(f"unknown families: {sorted(bad)}")
    work = [(d, b0, fam) for b0 in range(3, k_max + 1)]
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(work) <= 1:
        for item in work:
            yield from _slice(item)
        return
    with ProcessPoolExecutor(max_workers=min(jobs, len(work))) as pool:
        for records in pool.map(_slice, work):
            yield from records
