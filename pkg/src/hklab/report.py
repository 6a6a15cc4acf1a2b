"""Check results and deterministic report serialization.

All floating output is fixed at %.12e so that artifacts written with the
same seed are byte-identical across runs.  Wall-clock timings are therefore
not stored in artifacts; the runtime_ms field is pinned to 0 and live
timings go to stderr.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

FLOAT_FMT = "%.12e"


@dataclass
class CheckResult:
    """Outcome of one named identity or theorem check."""

    check_id: str
    citation: str
    residual: float
    tolerance: float
    params: dict = field(default_factory=dict)
    runtime_ms: int = 0

    @property
    def verdict(self) -> bool:
        return self.residual <= self.tolerance

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "citation": self.citation,
            "params": dict(sorted(self.params.items())),
            "residual": FLOAT_FMT % self.residual,
            "tolerance": FLOAT_FMT % self.tolerance,
            "verdict": "pass" if self.verdict else "fail",
            "runtime_ms": self.runtime_ms,
        }

    def summary_line(self) -> str:
        word = "pass" if self.verdict else "FAIL"
        return (f"[{word}] {self.check_id}: residual {self.residual:.3e} "
                f"(tol {self.tolerance:.1e})")


def report_json(results: list[CheckResult]) -> str:
    return json.dumps([r.to_json_dict() for r in results], indent=2) + "\n"


def write_report(results: list[CheckResult], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report_json(results))


def spectrum_csv_rows(zeta, slice_label: str, eigenvalues) -> list[str]:
    """Rows of the spectrum CSV: zeta_i,zeta_j,zeta_k,slice,rank,eigenvalue."""
    if "," in slice_label:
        raise ValueError("slice label must not contain commas")
    zi, zj, zk = (FLOAT_FMT % c for c in zeta.as_array())
    return [
        f"{zi},{zj},{zk},{slice_label},{rank},{FLOAT_FMT % float(ev)}"
        for rank, ev in enumerate(np.asarray(eigenvalues))
    ]


SPECTRUM_CSV_HEADER = "zeta_i,zeta_j,zeta_k,slice,rank,eigenvalue"


def write_spectrum_csv(rows: list[str], path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(SPECTRUM_CSV_HEADER + "\n")
        for row in rows:
            fh.write(row + "\n")
