"""Core classification of intersection arrays via cosine conditions.

Three tools: an exhaustive search for non-negative integer triples
(alpha, beta, gamma) certifying that an endomorphism onto a smaller-diameter
subgraph is not yet excluded; the least-eigenvalue test for complete cores
(theta_d vs -2, with the per-colour distance-2 cap b_0/c_2 at equality); and a
decision procedure combining both with the family classification.

All inequalities and the zero-sum identity are decided exactly in Q(theta_d).
An independent interval-arithmetic recheck at configurable decimal precision
is provided for cross-validation of the search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    EQUAL,
    GREATER,
    FieldElement,
    compare,
    iv_mul,
    iv_scale,
    iv_sub,
    order_name,
)
from .feasibility import FeasibilityReport, battery_with_artifacts
from .params import (
    FamilyClass,
    InternalConsistencyError,
    ParameterSet,
    SpectralData,
    UnsupportedArrayError,
    as_array,
    classify_family,
)

TAG_BIPARTITE = "BipartiteCoreK2"
TAG_PROVEN_CORE = "ProvenCore"
TAG_CORE_COMPLETE = "ProvenCoreComplete"
TAG_SMALLER_DIAMETER = "SmallerDiameterCandidate"
TAG_NO_SMALL_ENDO = "NoSmallDiameterEndomorphism"
TAG_INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class TripleWitness:
    """A triple (alpha, beta, gamma) meeting every smaller-diameter condition
    for image diameter e."""

    e: int
    alpha: int
    beta: int
    gamma: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class CompleteCoreReport:
    """Outcome of the least-eigenvalue test against -2.

    `bound` is the per-colour cap b_0/c_2 on distance-2 preimages, present
    exactly when theta_d = -2.
    """

    theta_d_vs_minus2: str  # "Greater" | "Equal" | "Less"
    bound: Fraction | None = None


@dataclass(frozen=True)
class CoreVerdict:
    tag: str
    witnesses: tuple[TripleWitness, ...] = ()
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "tag": self.tag,
            "witnesses": [list(w.as_tuple()) for w in self.witnesses],
            "notes": list(self.notes),
        }


def search_triples(ps: ParameterSet, sd: SpectralData, e: int) -> list[TripleWitness]:
    """All triples with alpha in [0, a_e - 1], beta + gamma = b_e,
    gamma - alpha > theta_d + a_e, alpha != gamma, and the exact zero-sum
    0 = alpha (w(e-1,d)-w(e,d)) + beta (w(e-1,d)-w(e+1,d))
      + gamma (w(e,d)-w(e+1,d)),
    ordered lexicographically by (alpha, beta).

    The bound on alpha is strict: a geodetic pair must keep at least one
    distance-e neighbour whose image also stays at distance e, i.e.
    |C_{e,e}| = a_e - alpha >= 1.  (The solution set of the zero-sum is closed
    under (alpha,beta,gamma) -> (alpha+1,beta-1,gamma+1), so without this cut
    every chain would continue one step past the published witness lists.)
    """
    d = ps.d
    if not 2 <= e <= d - 1:
        raise ValueError(f"image diameter e={e} out of range 2..{d - 1}")
    w = sd.w[d]  # theta_d row, sentinel included
    if w[e - 1].sign() * w[e].sign() >= 0:
        raise InternalConsistencyError(
            "cosine row of theta_d fails the alternating-sign structure")
    diff_10 = w[e - 1] - w[e]
    diff_20 = w[e - 1] - w[e + 1]
    diff_21 = w[e] - w[e + 1]
    a_e = ps.a[e]
    b_e = ps.array.b[e]
    theta_d = sd.theta[d]
    out = []
    for alpha in range(a_e):
        for beta in range(b_e + 1):
            gamma = b_e - beta
            if alpha == gamma:
                continue
            if compare(Fraction(gamma - alpha - a_e), theta_d) != GREATER:
                continue
            s = alpha * diff_10 + beta * diff_20 + gamma * diff_21
            if s.is_zero:
                out.append(TripleWitness(e, alpha, beta, gamma))
    return out


def regrouped_identity_holds(ps: ParameterSet, sd: SpectralData,
                             witness: TripleWitness) -> bool:
    """Exact check of the equivalent regrouped form
    0 = (alpha + beta + c_e) w(e-1,d) + (gamma - alpha - (theta_d - a_e)) w(e,d),
    which eliminates w(e+1,d) through the cosine recurrence."""
    d, e = ps.d, witness.e
    w = sd.w[d]
    theta = FieldElement.generator(sd.theta[d])
    c_e = ps.array.c[e - 1]
    lhs = (witness.alpha + witness.beta + c_e) * w[e - 1] + \
        (Fraction(witness.gamma - witness.alpha + ps.a[e]) - theta) * w[e]
    return lhs.is_zero


def interval_triple_search(ps: ParameterSet, sd: SpectralData, e: int,
                           digits: int = 60) -> list[tuple[int, int, int]]:
    """Independent recheck of the triple search by plain interval arithmetic.

    The cosine row of theta_d is recomputed through the recurrence on rational
    intervals of width 10^-digits; a triple is flagged when the zero-sum
    interval contains 0 and the strict inequality is certified.  Interval
    ambiguity triggers further refinement rather than a wrong answer.
    """
    d = ps.d
    if not 2 <= e <= d - 1:
        raise ValueError(f"image diameter e={e} out of range 2..{d - 1}")
    a = ps.a
    b = ps.array.b
    c = ps.array.c
    theta = sd.theta[d]
    width = Fraction(1, 10 ** (digits + 6))
    while True:
        tlo, thi = theta.refine(width)
        rows: list[tuple[Fraction, Fraction]] = [(Fraction(1), Fraction(1))]
        rows.append((tlo / b[0], thi / b[0]))
        for r in range(1, d):
            tml, tmh = tlo - a[r], thi - a[r]
            plo, phi = iv_mul(tml, tmh, *rows[r])
            qlo, qhi = iv_scale(*rows[r - 1], Fraction(c[r - 1]))
            rows.append(iv_scale(*iv_sub(plo, phi, qlo, qhi), Fraction(1, b[r])))
        rows.append((Fraction(0), Fraction(0)))  # sentinel w(d+1)

        d10 = iv_sub(*rows[e - 1], *rows[e])
        d20 = iv_sub(*rows[e - 1], *rows[e + 1])
        d21 = iv_sub(*rows[e], *rows[e + 1])
        a_e, b_e = a[e], b[e]
        flagged = []
        ambiguous = False
        for alpha in range(a_e):
            for beta in range(b_e + 1):
                gamma = b_e - beta
                if alpha == gamma:
                    continue
                m = Fraction(gamma - alpha - a_e)
                if m <= tlo:
                    continue  # certainly not greater
                if tlo < m <= thi:
                    ambiguous = True  # cannot certify the strict inequality
                    continue
                slo = alpha * d10[0] + beta * d20[0] + gamma * d21[0]
                shi = alpha * d10[1] + beta * d20[1] + gamma * d21[1]
                if slo <= 0 <= shi:
                    flagged.append((alpha, beta, gamma))
        if not ambiguous:
            return flagged
        width /= 10 ** 12


def complete_core_test(ps: ParameterSet, sd: SpectralData) -> CompleteCoreReport:
    """Exact comparison of theta_d with -2; at equality, report the cap
    b_0/c_2 on same-colour vertices at distance two."""
    rel = compare(sd.theta[ps.d], -2)
    if rel == EQUAL:
        return CompleteCoreReport("Equal", Fraction(ps.array.b0, ps.array.c[1]))
    return CompleteCoreReport(order_name(rel))


def classify(ps: ParameterSet, sd: SpectralData, fc: FamilyClass) -> CoreVerdict:
    """Decision procedure over the triple search, the far-layer connectivity
    criterion a_d > theta_1, and the complete-core bound."""
    d = ps.d
    if fc.bipartite:
        return CoreVerdict(TAG_BIPARTITE,
                           notes=("a_i = 0 for all i: bipartite, core is K2",))
    witnesses: list[TripleWitness] = []
    for e in range(2, d):
        witnesses.extend(search_triples(ps, sd, e))
    ccr = complete_core_test(ps, sd)
    notes: list[str] = []
    if witnesses:
        return CoreVerdict(TAG_SMALLER_DIAMETER, tuple(witnesses),
                           notes=(f"{len(witnesses)} feasible triple(s); "
                                  "a smaller-diameter core is not excluded",))
    if d > 2:
        notes.append(f"no feasible (alpha,beta,gamma) for e in 2..{d - 1}")
    if fc.primitive:
        a_d = ps.a[d]
        if compare(Fraction(a_d), sd.theta[1]) == GREATER:
            notes.append(f"a_{d} = {a_d} > theta_1 (exact): far subgraph connected")
            if ccr.theta_d_vs_minus2 == "Greater":
                notes.append("theta_d > -2 (exact): complete core impossible")
                return CoreVerdict(TAG_PROVEN_CORE, notes=tuple(notes))
            return CoreVerdict(TAG_CORE_COMPLETE, notes=tuple(notes))
        notes.append(
            f"far subgraph connectivity not established: a_{d} = {a_d} <= theta_1")
        return CoreVerdict(TAG_INCONCLUSIVE, notes=tuple(notes))
    # antipodal (and not bipartite) from here on
    if d % 2 == 1:
        notes.append("antipodal with odd diameter: the equal-cell escape "
                     "needs even diameter, so the triple conditions bind")
        return CoreVerdict(TAG_NO_SMALL_ENDO, notes=tuple(notes))
    notes.append("antipodal with even diameter: equal-cell case unresolved")
    return CoreVerdict(TAG_INCONCLUSIVE, notes=tuple(notes))


# ---------------------------------------------------------------------------
# One-stop analysis bundle.
# ---------------------------------------------------------------------------

@dataclass
class Analysis:
    """Everything the battery and the classification produce for one array."""

    array_text: str
    report: FeasibilityReport
    ps: ParameterSet | None = None
    sd: SpectralData | None = None
    family: FamilyClass | None = None
    complete_core: CompleteCoreReport | None = None
    verdict: CoreVerdict | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)


def analyze_array(arr) -> Analysis:
    """Battery plus, when it passes, family classification, the complete-core
    test and the core verdict.  Valency-2 arrays analyze (spectrum, cosines,
    feasibility) but carry no family/verdict."""
    report, ps, sd = battery_with_artifacts(arr)
    text = report.array
    out = Analysis(array_text=text, report=report, ps=ps, sd=sd)
    if not report.feasible or ps is None or sd is None:
        return out
    out.complete_core = complete_core_test(ps, sd)
    try:
        out.family = classify_family(ps, sd)
    except UnsupportedArrayError as exc:
        out.notes = (str(exc),)
        return out
    out.verdict = classify(ps, sd, out.family)
    return out
