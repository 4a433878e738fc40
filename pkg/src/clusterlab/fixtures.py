"""Bundled reference cases and their replay."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Mapping

from .arithmetic.characters import frobenius_rank1
from .arithmetic.counting import PointCountSample, count_louise
from .arithmetic.quasipoly import grothendieck_consistency
from .cluster import ExtendedExchangeMatrix
from .exactlinalg import is_really_full_rank
from .hodge import HodgeTable, PoincareSeries, curious_palindrome
from .isolated import isotypic_table
from .quivers import LouiseCertificate, louise_certificate
from .standard import poincare_closed, standard_dims

__all__ = ["FixtureCase", "CheckResult", "load_fixtures", "verify_fixture", "verify_fixtures"]

PROVENANCES = {"PAPER", "DERIVED", "TRIVIAL"}


@dataclass(frozen=True)
class FixtureCase:
    name: str
    provenance: str
    source: str
    matrix: ExtendedExchangeMatrix
    table: HodgeTable | None = None
    samples: tuple[PointCountSample, ...] = ()
    series: PoincareSeries | None = None
    frobenius: Mapping | None = None

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.provenance == "PAPER" and not self.source:
            raise ValueError("reference fixtures must cite their table or section")

    @classmethod
    def from_json(cls, data: Mapping) -> FixtureCase:
        return cls(
            name=data["name"],
            provenance=data["provenance"],
            source=data.get("source", ""),
            matrix=ExtendedExchangeMatrix.from_json(data["matrix"]),
            table=HodgeTable.from_json(data["table"]) if "table" in data else None,
            samples=tuple(PointCountSample.from_json(s) for s in data.get("samples", ())),
            series=PoincareSeries(tuple(data["series"])) if "series" in data else None,
            frobenius=data.get("frobenius"),
        )


@dataclass(frozen=True)
class CheckResult:
    case: str
    check: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        line = f"{'PASS' if self.ok else 'FAIL'}  {self.case}: {self.check}"
        return f"{line} ({self.detail})" if self.detail else line


def load_fixtures() -> list[FixtureCase]:
    text = resources.files("clusterlab").joinpath("data/fixtures.json").read_text()
    return [FixtureCase.from_json(c) for c in json.loads(text)["cases"]]


def _certificate(b: ExtendedExchangeMatrix) -> LouiseCertificate | None:
    cert = louise_certificate(b)
    return cert if isinstance(cert, LouiseCertificate) else None


def verify_fixture(case: FixtureCase) -> list[CheckResult]:
    b = case.matrix
    out: list[CheckResult] = []

    def record(check, ok, detail=""):
        out.append(CheckResult(case.name, check, bool(ok), detail))

    if case.table is not None:
        t = case.table
        record("curious palindrome", curious_palindrome(t))
        dims = [d for _, d in standard_dims(b)]
        record("standard row", dims == t.standard_row(), f"computed {dims}")
        if b.n and not any(b.principal.row(i)[j] for i in range(b.n) for j in range(b.n)):
            _, iso = isotypic_table(b.frozen_part)
            record("isotypic table", iso == t)
    if case.series is not None:
        got = poincare_closed(b)
        record("closed-form Poincare series", got == case.series, str(got))
    if case.samples or (case.table is not None and is_really_full_rank(b.mat)):
        cert = _certificate(b)
        record("Louise certificate found", cert is not None)
        if cert is not None:
            counted = case.samples or tuple(
                PointCountSample(q, count_louise(b, cert, q).count) for q in (3, 5, 7)
            )
            for s in case.samples:
                got = count_louise(b, cert, s.q).count
                record(f"point count at q={s.q}", got == s.count, f"got {got}, expected {s.count}")
            if case.table is not None and is_really_full_rank(b.mat):
                report = grothendieck_consistency(case.table, counted)
                record("signed Hodge sum matches counts", report.ok, report.describe())
    if case.frobenius is not None:
        d = int(case.frobenius["d"])
        for p, expected in case.frobenius["eigenvalues"].items():
            eig = frobenius_rank1(d, int(p))
            got = {str(k): sorted(int(e.value(int(p))) for e in v) for k, v in eig.items()}
            record(f"Frobenius eigenvalues at p={p}", got == expected, str(got))
    return out


def verify_fixtures(cases: list[FixtureCase] | None = None) -> list[CheckResult]:
    results = []
    for case in cases if cases is not None else load_fixtures():
        results.extend(verify_fixture(case))
    return results
