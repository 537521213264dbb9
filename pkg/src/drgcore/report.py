"""Rendering of survey records: pipe-table Markdown, RFC-4180 CSV, and a
lossless JSON-lines form.

Rows follow the survey-table conventions: the vertex count written as the sum
over the distance partition, eigenvalues with multiplicities in superscripts
(irrational values rounded half-to-even to 3 decimals), the array text, and a
witness column that appears only when some record carries witnesses.  Rows
sort lexicographically by the intersection-array tuple.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .enumeration import EigenvalueSummary, EnumerationRecord
from .feasibility import FeasibilityReport
from .homtheory import CoreVerdict, TripleWitness
from .params import FamilyClass


@dataclass(frozen=True)
class TableRow:
    vertices: str
    eigenvalues: str
    array: str
    witnesses: str


def render_vertex_sum(k: Sequence[int]) -> str:
    n = sum(k)
    return f"v = {n} = " + " + ".join(str(v) for v in k)


def render_eigenvalues(spectrum: Sequence[EigenvalueSummary]) -> str:
    return " ".join(f"{s.value}^{{{s.multiplicity}}}" for s in spectrum)


def render_witnesses(verdict: CoreVerdict) -> str:
    return "; ".join(f"({w.alpha}, {w.beta}, {w.gamma})"
                     for w in verdict.witnesses)


def record_to_row(rec: EnumerationRecord) -> TableRow:
    return TableRow(
        vertices=render_vertex_sum(rec.k),
        eigenvalues=render_eigenvalues(rec.spectrum),
        array=rec.array,
        witnesses=render_witnesses(rec.verdict),
    )


def _sorted_rows(records: Iterable[EnumerationRecord]
                 ) -> tuple[list[TableRow], bool]:
    recs = sorted(records, key=lambda r: r.k_tuple_sort_key)
    rows = [record_to_row(r) for r in recs]
    with_witnesses = any(row.witnesses for row in rows)
    return rows, with_witnesses


def emit_table(records: Iterable[EnumerationRecord], fmt: str = "markdown") -> str:
    """Render records as `markdown`, `csv`, or `json-lines` text."""
    if fmt == "json-lines":
        recs = sorted(records, key=lambda r: r.k_tuple_sort_key)
        return "".join(record_to_json(r) + "\n" for r in recs)
    rows, with_w = _sorted_rows(records)
    headers = ["Number of vertices", "Eigenvalues", "Intersection array"]
    if with_w:
        headers.append("alpha, beta, gamma")
    if fmt == "markdown":
        lines = ["| " + " | ".join(headers) + " |",
                 "|" + "|".join(" --- " for _ in headers) + "|"]
        for row in rows:
            cells = [row.vertices, row.eigenvalues, row.array]
            if with_w:
                cells.append(row.witnesses)
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(headers)
        for row in rows:
            cells = [row.vertices, row.eigenvalues, row.array]
            if with_w:
                cells.append(row.witnesses)
            writer.writerow(cells)
        return buf.getvalue()
    raise ValueError(f"unknown table format {fmt!r}")


# ---------------------------------------------------------------------------
# Lossless JSON-lines serialization.
# ---------------------------------------------------------------------------

def record_to_json_dict(rec: EnumerationRecord) -> dict:
    return {
        "array": rec.array,
        "n": rec.n,
        "k": list(rec.k),
        "report": rec.report.to_json_dict(),
        "family": {
            "bipartite": rec.family.bipartite,
            "antipodal": rec.family.antipodal,
            "primitive": rec.family.primitive,
        },
        "spectrum": [
            {"value": s.value, "multiplicity": s.multiplicity,
             "minpoly": list(s.minpoly)}
            for s in rec.spectrum
        ],
        "verdict": {
            "tag": rec.verdict.tag,
            "witnesses": [[w.alpha, w.beta, w.gamma] for w in rec.verdict.witnesses],
            "witness_image_diameters": [w.e for w in rec.verdict.witnesses],
            "notes": list(rec.verdict.notes),
        },
    }


def record_to_json(rec: EnumerationRecord) -> str:
    return json.dumps(record_to_json_dict(rec), separators=(", ", ": "))


def record_from_json_dict(obj: dict) -> EnumerationRecord:
    report = FeasibilityReport.from_json_dict(obj["report"])
    fam = obj["family"]
    family = FamilyClass(bipartite=fam["bipartite"], antipodal=fam["antipodal"],
                         primitive=fam["primitive"])
    spectrum = tuple(
        EigenvalueSummary(s["value"], s["multiplicity"], tuple(s["minpoly"]))
        for s in obj["spectrum"])
    v = obj["verdict"]
    witnesses = tuple(
        TripleWitness(e, a, b, g)
        for (a, b, g), e in zip(v["witnesses"], v["witness_image_diameters"]))
    verdict = CoreVerdict(v["tag"], witnesses, tuple(v["notes"]))
    return EnumerationRecord(array=obj["array"], n=obj["n"], k=tuple(obj["k"]),
                             report=report, family=family, spectrum=spectrum,
                             verdict=verdict)


def parse_records(text: str) -> list[EnumerationRecord]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line:
            out.append(record_from_json_dict(json.loads(line)))
    return out
