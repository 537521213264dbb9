"""Feasibility battery for intersection arrays.

Eight checks run in a fixed order (F1..F8); the first failure stops the run
and the remaining checks are reported as skipped.  Identifiers F9+ stay
reserved for conditions not implemented here, so survey output is a
documented superset of the strictest published screens.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .params import (
    InfeasibleArrayError,
    IntersectionArray,
    InvalidArrayError,
    MultiplicityInfeasibleError,
    ParameterSet,
    SpectralData,
    UnsupportedArrayError,
    as_array,
    check_shape,
    derive_parameters,
    krein_parameters,
    spectral_data,
    valencies,
)

CHECK_IDS = ("F1", "F2", "F3", "F4", "F5", "F6", "F7", "F8")

_CHECK_TITLES = {
    "F1": "array shape invariants",
    "F2": "integral valencies",
    "F3": "handshake parity (n k_i and k_i a_i even)",
    "F4": "intersection numbers non-negative integers",
    "F5": "d+1 distinct real eigenvalues",
    "F6": "integral positive multiplicities",
    "F7": "Krein parameters non-negative",
    "F8": "absolute bound",
}


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    verdict: str  # "pass" | "fail" | "skipped"
    detail: str = ""


@dataclass(frozen=True)
class FeasibilityReport:
    array: str
    checks: tuple[CheckResult, ...]
    feasible: bool

    def failed_check(self) -> str | None:
        for c in self.checks:
            if c.verdict == "fail":
                return c.check_id
        return None

    def to_json_dict(self) -> dict:
        return {
            "array": self.array,
            "checks": [{"id": c.check_id, "verdict": c.verdict, "detail": c.detail}
                       for c in self.checks],
            "feasible": self.feasible,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(", ", ": "))

    @staticmethod
    def from_json_dict(obj: dict) -> "FeasibilityReport":
        checks = tuple(CheckResult(c["id"], c["verdict"], c.get("detail", ""))
                       for c in obj["checks"])
        return FeasibilityReport(obj["array"], checks, obj["feasible"])


def _finish(array_text: str, done: list[CheckResult]) -> FeasibilityReport:
    seen = {c.check_id for c in done}
    for cid in CHECK_IDS:
        if cid not in seen:
            done.append(CheckResult(cid, "skipped"))
    done.sort(key=lambda c: CHECK_IDS.index(c.check_id))
    feasible = all(c.verdict != "fail" for c in done)
    return FeasibilityReport(array_text, tuple(done), feasible)


def battery_with_artifacts(arr) -> tuple[FeasibilityReport, ParameterSet | None,
                                         SpectralData | None]:
    """Run F1..F8 and hand back the parameter/spectral artifacts built along
    the way (None for stages never reached)."""
    checks: list[CheckResult] = []
    # F1: shape
    if isinstance(arr, IntersectionArray):
        array = arr
        text = str(arr)
        checks.append(CheckResult("F1", "pass"))
    else:
        if isinstance(arr, str):
            text = arr.strip()
            try:
                array = as_array(arr)
            except InvalidArrayError as exc:
                checks.append(CheckResult("F1", "fail", str(exc)))
                return _finish(text, checks), None, None
        else:
            b, c = arr
            text = "{%s;%s}" % (",".join(map(str, b)), ",".join(map(str, c)))
            problems = check_shape(tuple(b), tuple(c))
            if problems:
                checks.append(CheckResult("F1", "fail", "; ".join(problems)))
                return _finish(text, checks), None, None
            array = IntersectionArray(tuple(b), tuple(c))
        text = str(array)
        checks.append(CheckResult("F1", "pass"))

    # F2: integral valencies
    try:
        k = valencies(array)
        checks.append(CheckResult("F2", "pass"))
    except InfeasibleArrayError as exc:
        checks.append(CheckResult("F2", "fail", str(exc)))
        return _finish(text, checks), None, None

    # F3: parity
    n = sum(k)
    a = array.a_list
    parity_problems = []
    for i in range(1, array.d + 1):
        if (n * k[i]) % 2:
            parity_problems.append(f"n*k_{i} = {n * k[i]} is odd")
        if (k[i] * a[i]) % 2:
            parity_problems.append(f"k_{i}*a_{i} = {k[i] * a[i]} is odd")
    if parity_problems:
        checks.append(CheckResult("F3", "fail", "; ".join(parity_problems)))
        return _finish(text, checks), None, None
    checks.append(CheckResult("F3", "pass"))

    # F4: p-tensor
    try:
        ps = derive_parameters(array)
        checks.append(CheckResult("F4", "pass"))
    except InfeasibleArrayError as exc:
        checks.append(CheckResult("F4", "fail", str(exc)))
        return _finish(text, checks), None, None

    # F5 + F6: spectrum and multiplicities
    try:
        sd = spectral_data(ps)
    except MultiplicityInfeasibleError as exc:
        checks.append(CheckResult("F5", "pass"))
        checks.append(CheckResult("F6", "fail", str(exc)))
        return _finish(text, checks), ps, None
    except (InfeasibleArrayError, UnsupportedArrayError) as exc:
        checks.append(CheckResult("F5", "fail", str(exc)))
        return _finish(text, checks), ps, None
    checks.append(CheckResult("F5", "pass"))
    checks.append(CheckResult("F6", "pass"))

    # F7: Krein non-negativity
    q = krein_parameters(sd, ps)
    d = ps.d
    negatives = [(i, j, h) for i in range(d + 1) for j in range(d + 1)
                 for h in range(d + 1) if q[i][j][h].verdict == "Negative"]
    if negatives:
        i, j, h = negatives[0]
        entry = q[i][j][h]
        checks.append(CheckResult(
            "F7", "fail",
            f"q_({i},{j})^{h} is negative "
            f"(in [{float(entry.lo):.3g}, {float(entry.hi):.3g}])"))
        return _finish(text, checks), ps, sd
    heuristic = sorted({(i, j, h) for i in range(d + 1) for j in range(d + 1)
                        for h in range(d + 1) if q[i][j][h].heuristic})
    detail = ""
    if heuristic:
        detail = "heuristic zeros at " + ", ".join(
            f"q_({i},{j})^{h}" for i, j, h in heuristic)
    checks.append(CheckResult("F7", "pass", detail))

    # F8: absolute bound, with q != 0 read off the verdicts
    violations = []
    for i in range(d + 1):
        for j in range(i, d + 1):
            s = sum(sd.m[h] for h in range(d + 1)
                    if q[i][j][h].verdict != "Zero")
            bound = sd.m[i] * (sd.m[i] + 1) // 2 if i == j else sd.m[i] * sd.m[j]
            if s > bound:
                violations.append(f"sum m_h = {s} > {bound} at (i,j)=({i},{j})")
    if violations:
        checks.append(CheckResult("F8", "fail", "; ".join(violations)))
        return _finish(text, checks), ps, sd
    checks.append(CheckResult("F8", "pass"))
    return _finish(text, checks), ps, sd


def run_battery(arr) -> FeasibilityReport:
    """Run the battery on an array, array text, or raw (b, c) pair."""
    report, _, _ = battery_with_artifacts(arr)
    return report
