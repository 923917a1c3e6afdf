"""Parameter sweeps over ``(two_nu, branch, two_N)`` and their flat-file formats."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .chern import ChargeReport, charge_report
from .su2 import Branch

CSV_HEADER = ("two_N", "two_nu", "branch", "inv_N", "q", "c1", "k_limit", "max_residual")


@dataclass(frozen=True)
class SweepConfig:
    two_nu_list: tuple[int, ...]
    branches: tuple[Branch, ...] = (Branch.PLUS, Branch.MINUS)
    two_N_max: int = 100
    output_path: str = "charges.csv"
    format: str = "csv"
    half_integer_n: bool = False
    tol: float = 1e-9

    def __post_init__(self):
        if not self.two_nu_list or not self.branches:
            raise ValueError("two_nu_list and branches must be non-empty")
        if any(int(t) != t or t < 1 for t in self.two_nu_list):
            raise ValueError("two_nu values must be positive integers")
        if self.two_N_max < max(self.two_nu_list) + 1:
            raise ValueError(
                f"two_N_max={self.two_N_max} must be at least max(two_nu_list) + 1 = "
                f"{max(self.two_nu_list) + 1}"
            )
        if self.format not in ("csv", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    def points(self) -> list[tuple[int, Branch, int]]:
        """Sweep points sorted by ``(two_nu, branch, two_N)``."""
        step = 1 if self.half_integer_n else 2
        start = 1 if self.half_integer_n else 2
        pts = []
        for two_nu in sorted(set(self.two_nu_list)):
            for branch in sorted(set(self.branches), key=lambda b: b.value):
                for two_N in range(start, self.two_N_max + 1, step):
                    if branch is Branch.MINUS and two_N <= two_nu:
                        continue
                    pts.append((two_nu, branch, two_N))
        return pts


@dataclass(frozen=True)
class ChargeRecord:
    two_N: int
    two_nu: int
    branch: Branch
    inv_N: float
    q: float
    c1: float
    k_limit: int
    max_residual: float

    @classmethod
    def from_report(cls, report: ChargeReport) -> "ChargeRecord":
        return cls(
            two_N=report.two_N,
            two_nu=report.two_nu,
            branch=report.branch,
            inv_N=2 / report.two_N,
            q=report.q,
            c1=report.c1,
            k_limit=report.k_limit,
            max_residual=report.max_residual,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["branch"] = self.branch.value
        return d


def run_sweep(config: SweepConfig, workers: int = 1) -> list[ChargeRecord]:
    """Evaluate every sweep point; output order does not depend on ``workers``."""
    pts = config.points()

    def evaluate(pt):
        two_nu, branch, two_N = pt
        return ChargeRecord.from_report(charge_report(two_N, two_nu, branch))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(evaluate, pts))
    else:
        records = [evaluate(pt) for pt in pts]
    return sorted(records, key=lambda r: (r.two_nu, r.branch.value, r.two_N))


def _fmt(x: float) -> str:
    return format(x, ".17g")


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([
            r.two_N, r.two_nu, r.branch.value, _fmt(r.inv_N), _fmt(r.q), _fmt(r.c1),
            r.k_limit, _fmt(r.max_residual),
        ])
    return buf.getvalue()


def dumps_json(payload) -> str:
    """Canonical JSON text used for every emitted document."""
    return json.dumps(payload, indent=2) + "\n"


def records_to_json(records) -> str:
    return dumps_json([r.to_dict() for r in records])
