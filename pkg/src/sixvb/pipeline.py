"""Cross-method computation reports.

One report runs the requested methods over the requested configurations,
compares them exactly, and carries per-method wall times.  Rationals
serialize as "p/q" strings so a parsed report reproduces the exact values.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .aba import z_aba_table
from .cba import z_cba_table
from .concurrency import parallel_map
from .contraction import z_direct_table
from .exact import format_rational, parse_rational
from .lattice import ExternalConfig, LatticeSpec, config_to_dict, spec_to_dict

METHODS = ("direct", "aba", "cba")

_TABLES = {
    "direct": z_direct_table,
    "aba": z_aba_table,
    "cba": z_cba_table,
}


def spec_digest(spec: LatticeSpec) -> str:
    canonical = json.dumps(spec_to_dict(spec), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    spec_digest: str
    methods: tuple
    configs: List[ExternalConfig]
    values: Dict[str, List[Fraction]]
    timings: Dict[str, float]
    agreement: bool
    identity_results: Optional[list] = field(default=None)


def compute_report(
    spec: LatticeSpec, configs: Sequence[ExternalConfig], methods: Sequence[str] = METHODS
) -> RunReport:
    for m in methods:
        if m not in _TABLES:
            raise ValueError(f"unknown method {m!r}; choose from {METHODS}")
    configs = list(configs)

    def run(method: str):
        start = time.perf_counter()
        values = _TABLES[method](spec, configs)
        return method, values, time.perf_counter() - start

    values: Dict[str, List[Fraction]] = {}
    timings: Dict[str, float] = {}
    for method, vals, seconds in parallel_map(run, list(methods)):
        values[method] = vals
        timings[method] = seconds

    first = values[methods[0]]
    agreement = all(values[m] == first for m in methods)
    return RunReport(
        spec_digest=spec_digest(spec),
        methods=tuple(methods),
        configs=configs,
        values=values,
        timings=timings,
        agreement=agreement,
    )


def report_to_dict(report: RunReport) -> dict:
    rows = []
    for i, config in enumerate(report.configs):
        row = config_to_dict(config)
        row["z"] = {m: format_rational(report.values[m][i]) for m in report.methods}
        rows.append(row)
    out = {
        "spec_digest": report.spec_digest,
        "methods": list(report.methods),
        "configs": rows,
        "agreement": report.agreement,
        "timings_s": {m: report.timings[m] for m in report.methods},
    }
    if report.identity_results is not None:
        out["identity_suites"] = [
            {
                "name": r.name,
                "total": r.total,
                "failed": len(r.failures),
                "failures": list(r.failures),
            }
            for r in report.identity_results
        ]
    return out


def values_from_report_dict(data: dict) -> Dict[str, List[Fraction]]:
    """Exact values parsed back out of a serialized report."""
    out: Dict[str, List[Fraction]] = {m: [] for m in data["methods"]}
    for row in data["configs"]:
        for m in data["methods"]:
            out[m].append(parse_rational(row["z"][m]))
    return out
