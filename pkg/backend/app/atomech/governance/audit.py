"""atomech - Reference Audit

Recomputes published rate-table values from the shipped configs and reports
PASS/FAIL per case. Also tabulates the atomic rate under every (beam area,
Rabi) convention pair and lists the running-text figures next to the table
values they correspond to.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Mapping, Optional

import yaml
from pydantic import BaseModel, Field

from atomech.constants import TWO_PI, two_pi_hz
from atomech.governance.gate import Check, GateResult, VerificationGate
from atomech.params.models import AreaConvention, Conventions, PhysicalParams
from atomech.rates.merit import cooperativity
from atomech.rates.rateset import RateSet, compute_rates

logger = logging.getLogger(__name__)

DEFAULT_REFERENCE_PATH = Path(__file__).parent / "reference" / "published.yaml"
ENV_REFERENCE_PATH = "ATOMECH_REFERENCE_PATH"

FREQUENCY_QUANTITIES = ("g_eff", "gamma_m_diff", "gamma_at_diff", "gamma_m_th")


class TabulatedRates(BaseModel):
    g_eff: float
    gamma_m_tot: float
    gamma_at: float


class ReferenceCase(BaseModel):
    """One published value"""
    id: str
    quantity: str
    expected: float
    tolerance: float = Field(..., gt=0)
    config: Optional[str] = None
    tabulated: Optional[TabulatedRates] = None
    note: Optional[str] = None


class TextFigure(BaseModel):
    quantity: str
    text_value: float
    table_2pi_hz: float


class ConventionTarget(BaseModel):
    config: str
    quantity: str
    expected: float
    tolerance: float


class ReferenceDataset(BaseModel):
    version: str = "1.0"
    description: str = ""
    cases: list[ReferenceCase] = Field(default_factory=list)
    text_figures: list[TextFigure] = Field(default_factory=list)
    convention_target: Optional[ConventionTarget] = None

    @classmethod
    def load(cls, path: Path) -> "ReferenceDataset":
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
        return cls.model_validate(data or {})


def load_reference_dataset(path: Optional[Path] = None) -> ReferenceDataset:
    """Explicit path, then $ATOMECH_REFERENCE_PATH, then the packaged dataset."""
    if path is None:
        env_path = os.environ.get(ENV_REFERENCE_PATH)
        path = Path(env_path) if env_path else DEFAULT_REFERENCE_PATH
    logger.debug("reference dataset from %s", path)
    return ReferenceDataset.load(path)


class CaseResult(BaseModel):
    case_id: str
    quantity: str
    expected: float
    actual: Optional[float]
    tolerance: float
    passed: bool
    note: Optional[str] = None
    error_message: Optional[str] = None

    @property
    def relative_error(self) -> Optional[float]:
        if self.actual is None or self.expected == 0:
            return None
        return abs(self.actual - self.expected) / abs(self.expected)


class ConventionRow(BaseModel):
    area_convention: AreaConvention
    rabi_halving: bool
    gamma_at_diff_2pi_hz: float
    g_eff_2pi_hz: float
    matches_target: bool


class TextFigureRow(BaseModel):
    quantity: str
    text_value: float
    table_2pi_hz: float
    table_rad_per_s: float

    @property
    def ratio_to_rad_per_s(self) -> float:
        return self.text_value / self.table_rad_per_s


class AuditReport(BaseModel):
    dataset_version: str
    results: list[CaseResult] = Field(default_factory=list)
    conventions: list[ConventionRow] = Field(default_factory=list)
    text_figures: list[TextFigureRow] = Field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def failed(self) -> int:
        return len(self.results) - self.passed

    def matching_conventions(self) -> list[ConventionRow]:
        return [row for row in self.conventions if row.matches_target]

    def gate(self) -> GateResult:
        gate = VerificationGate("reference-audit")
        for r in self.results:
            gate.add(
                Check(
                    name=r.case_id,
                    value=r.actual if r.actual is not None else float("nan"),
                    target=r.expected,
                    tolerance=r.tolerance,
                )
            )
        return gate.evaluate()

    def to_markdown(self) -> str:
        lines = [
            "# Reference Audit",
            "",
            "## Summary",
            f"- **Dataset**: `{self.dataset_version}`",
            f"- **Cases**: {len(self.results)}",
            f"- **Passed**: {self.passed}",
            f"- **Failed**: {self.failed}",
            "",
            "## Cases",
            "",
            "| Case ID | Quantity | Expected | Actual | Rel. error | Tolerance | Status |",
            "|---------|----------|----------|--------|------------|-----------|--------|",
        ]
        for r in self.results:
            actual = f"{r.actual:.6g}" if r.actual is not None else "-"
            rel = f"{r.relative_error:.2%}" if r.relative_error is not None else "-"
            status = "PASS" if r.passed else "FAIL"
            lines.append(
                f"| {r.case_id} | {r.quantity} | {r.expected:.6g} | {actual} | {rel} | "
                f"{r.tolerance:.0%} | {status} |"
            )
        notes = [r for r in self.results if r.note or r.error_message]
        if notes:
            lines += ["", "Notes:", ""]
            lines += [f"- `{r.case_id}`: {r.error_message or r.note}" for r in notes]

        if self.conventions:
            lines += [
                "",
                "## Conventions",
                "",
                "| Beam area | Rabi halving | gamma_at_diff (2pi Hz) | g_eff (2pi Hz) | Matches |",
                "|-----------|--------------|------------------------|----------------|---------|",
            ]
            for row in self.conventions:
                lines.append(
                    f"| {row.area_convention.value} | {row.rabi_halving} | "
                    f"{row.gamma_at_diff_2pi_hz:.6g} | {row.g_eff_2pi_hz:.6g} | "
                    f"{'yes' if row.matches_target else 'no'} |"
                )

        if self.text_figures:
            lines += [
                "",
                "## Text Figures",
                "",
                "The running text quotes these values as 2pi*Hz; they coincide with the "
                "tabulated values expressed in 1/s.",
                "",
                "| Quantity | Text value | Table (2pi Hz) | Table (1/s) | Ratio |",
                "|----------|------------|----------------|-------------|-------|",
            ]
            for row in self.text_figures:
                lines.append(
                    f"| {row.quantity} | {row.text_value:.4g} | {row.table_2pi_hz:.4g} | "
                    f"{row.table_rad_per_s:.4g} | {row.ratio_to_rad_per_s:.3f} |"
                )
        return "\n".join(lines)


def _rate_value(rates: RateSet, quantity: str) -> float:
    value = getattr(rates, quantity)
    return two_pi_hz(value) if quantity in FREQUENCY_QUANTITIES else value


def _with_conventions(params: PhysicalParams, area: AreaConvention, halving: bool) -> PhysicalParams:
    geometry = params.geometry.model_copy(update={"area_convention": area})
    conventions = Conventions(rabi_halving=halving, marginal_band=params.conventions.marginal_band)
    return params.model_copy(update={"geometry": geometry, "conventions": conventions})


def convention_table(params: PhysicalParams, target: ConventionTarget) -> list[ConventionRow]:
    rows = []
    for area in AreaConvention:
        for halving in (False, True):
            rates = compute_rates(_with_conventions(params, area, halving))
            value = _rate_value(rates, target.quantity)
            rows.append(
                ConventionRow(
                    area_convention=area,
                    rabi_halving=halving,
                    gamma_at_diff_2pi_hz=two_pi_hz(rates.gamma_at_diff),
                    g_eff_2pi_hz=two_pi_hz(rates.g_eff),
                    matches_target=abs(value - target.expected) <= target.tolerance * target.expected,
                )
            )
    return rows


def _evaluate_case(case: ReferenceCase, params_by_name: Mapping[str, PhysicalParams]) -> CaseResult:
    base = dict(
        case_id=case.id,
        quantity=case.quantity,
        expected=case.expected,
        tolerance=case.tolerance,
        note=case.note,
    )
    try:
        if case.tabulated is not None:
            t = case.tabulated
            actual = cooperativity(t.g_eff, t.gamma_m_tot, t.gamma_at)
        else:
            if case.config not in params_by_name:
                raise KeyError(f"no parameters loaded for config {case.config!r}")
            actual = _rate_value(compute_rates(params_by_name[case.config]), case.quantity)
    except (KeyError, ValueError, AttributeError) as e:
        logger.warning("reference case %s failed: %s", case.id, e)
        return CaseResult(actual=None, passed=False, error_message=str(e), **base)
    passed = abs(actual - case.expected) <= case.tolerance * abs(case.expected)
    return CaseResult(actual=actual, passed=passed, **base)


def run_reference_audit(
    params_by_name: Mapping[str, PhysicalParams],
    dataset: ReferenceDataset | None = None,
) -> AuditReport:
    """Evaluate every reference case against ``params_by_name`` (config name -> params)."""
    dataset = dataset or load_reference_dataset()
    report = AuditReport(
        dataset_version=dataset.version,
        results=[_evaluate_case(c, params_by_name) for c in dataset.cases],
        text_figures=[
            TextFigureRow(
                quantity=f.quantity,
                text_value=f.text_value,
                table_2pi_hz=f.table_2pi_hz,
                table_rad_per_s=TWO_PI * f.table_2pi_hz,
            )
            for f in dataset.text_figures
        ],
    )
    target = dataset.convention_target
    if target is not None and target.config in params_by_name:
        report.conventions = convention_table(params_by_name[target.config], target)
    logger.info("reference audit: %d passed, %d failed", report.passed, report.failed)
    return report
