"""QTER / success-probability estimates, threshold flags and table emission."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .classical import CLASSICAL_BOUND
from .protocols import qter_from_counts

SECURITY_THRESHOLD = 0.1595
QTER_CLAIM = 0.10
CCP_SUCCESS_CLAIM = 0.90

INPUT_COLUMNS = {
    "ss": ["a0", "a1", "b0", "b1", "c0", "c1"],
    "dba": ["a0", "a1", "b0", "b1", "c0", "c1"],
    "ccp": ["sa", "sb", "sc"],
}


@dataclass(frozen=True)
class SettingReport:
    protocol: str
    inputs: tuple[int, ...]
    expected: int | None
    counts: tuple[int, int, int]
    dominant: int
    value: float
    uncertainty: float
    below_security_threshold: bool
    beats_classical: bool

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def metric(self) -> str:
        return "success" if self.protocol == "ccp" else "qter"


def binomial_stderr(p: float, n: int) -> float:
    return math.sqrt(max(p * (1 - p), 0.0) / n)


def report_setting(counts: Sequence[int], expected: int | None, protocol: str = "ss",
                   inputs: Sequence[int] = ()) -> SettingReport:
    """Summarise one setting's detector counts.

    For secret sharing / DBA the value is the QTER against ``expected``; when
    ``expected`` is ``None`` (round fails the sift) the error rate is
    ``1 - max(counts)/total``. For the CCP the value is the success rate.

    Raises:
        ValueError: if no detections were recorded.
    """
    counts = tuple(int(c) for c in counts)
    total = sum(counts)
    if total == 0:
        raise ValueError("cannot report a setting with zero detections")
    dominant = max(range(3), key=lambda k: counts[k])
    if expected is None:
        if protocol == "ccp":
            raise ValueError("CCP settings always have an expected outcome")
        error = 1 - counts[dominant] / total
    else:
        error = qter_from_counts(counts, expected)
    value = 1 - error if protocol == "ccp" else error
    return SettingReport(
        protocol=protocol,
        inputs=tuple(inputs),
        expected=expected,
        counts=counts,
        dominant=dominant,
        value=value,
        uncertainty=binomial_stderr(value, total),
        below_security_threshold=error < SECURITY_THRESHOLD,
        beats_classical=protocol == "ccp" and value > CLASSICAL_BOUND,
    )


def campaign_summary(reports: Sequence[SettingReport]) -> dict:
    """Aggregate statistics per protocol; sift-failing rows are counted but excluded."""
    if not reports:
        raise ValueError("campaign_summary needs at least one report")
    summary = {}
    for protocol in sorted({r.protocol for r in reports}):
        rows = [r for r in reports if r.protocol == protocol]
        scored = [r for r in rows if r.expected is not None]
        entry = {
            "metric": rows[0].metric,
            "settings": len(rows),
            "scored": len(scored),
            "sift_failures": len(rows) - len(scored),
        }
        if scored:
            values = [r.value for r in scored]
            entry.update(
                mean=sum(values) / len(values),
                min=min(values),
                max=max(values),
                detections_min=min(r.total for r in scored),
                detections_max=max(r.total for r in scored),
            )
            if protocol == "ccp":
                entry["beats_classical"] = sum(r.beats_classical for r in scored)
                entry["quantum_advantage"] = all(r.beats_classical for r in scored)
                entry["all_above_90pct"] = all(v > CCP_SUCCESS_CLAIM for v in values)
            else:
                entry["below_security_threshold"] = sum(r.below_security_threshold for r in scored)
                entry["all_secure"] = all(r.below_security_threshold for r in scored)
                entry["all_below_10pct"] = max(values) < QTER_CLAIM
        summary[protocol] = entry
    return summary


def pct(x: float) -> str:
    return f"{100 * x:.2f}"


def csv_header(protocol: str) -> list[str]:
    metric = "success_pct" if protocol == "ccp" else "qter_pct"
    outcome = "T" if protocol == "ccp" else "m"
    return [*INPUT_COLUMNS[protocol], outcome, "d0", "d1", "d2", "total", metric, "stderr_pct"]


def csv_row(report: SettingReport) -> list[str]:
    expected = "random" if report.expected is None else str(report.expected)
    return [
        *(str(v) for v in report.inputs),
        expected,
        *(str(c) for c in report.counts),
        str(report.total),
        pct(report.value),
        pct(report.uncertainty),
    ]


def to_csv(reports: Sequence[SettingReport]) -> str:
    protocols = {r.protocol for r in reports}
    if len(protocols) != 1:
        raise ValueError("a CSV table holds one protocol")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(csv_header(reports[0].protocol))
    for r in reports:
        writer.writerow(csv_row(r))
    return buf.getvalue()


def parse_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def report_to_dict(report: SettingReport) -> dict:
    return {
        "protocol": report.protocol,
        "inputs": list(report.inputs),
        "expected": report.expected,
        "counts": list(report.counts),
        "total": report.total,
        "dominant": report.dominant,
        "metric": report.metric,
        "value": report.value,
        "value_pct": float(pct(report.value)),
        "stderr": report.uncertainty,
        "below_security_threshold": report.below_security_threshold,
        "beats_classical": report.beats_classical,
    }


def reports_from_table(rows: Iterable, protocol: str) -> list[SettingReport]:
    """Reports for published table rows (see ``paper_data``)."""
    out = []
    for row in rows:
        if protocol == "ccp":
            inputs, expected, counts = row
        else:
            *pairs, expected, counts = row
            inputs = tuple(v for p in pairs for v in p)
        out.append(report_setting(counts, expected, protocol, inputs))
    return out
