"""Three-valued check results.

Exact checks come back Verified or Failed.  Checks that cannot be decided
globally (positivity of a non-constant polynomial) or that run on numeric
data (polarization outputs) degrade honestly to SampleVerified, recording how
many sample points were inspected.  Every Failed verdict carries a
reproducible witness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import RatFun


class Status(str, enum.Enum):
    VERIFIED = "Verified"
    SAMPLE_VERIFIED = "SampleVerified"
    FAILED = "Failed"


@dataclass(frozen=True)
class Verdict:
    status: Status
    detail: str = ""
    witness: str | None = None
    points_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAILED

    @classmethod
    def verified(cls, detail: str = "") -> "Verdict":
        return cls(Status.VERIFIED, detail)

    @classmethod
    def sample_verified(cls, points: int, detail: str = "") -> "Verdict":
        return cls(Status.SAMPLE_VERIFIED, detail, points_checked=points)

    @classmethod
    def failed(cls, witness: str, detail: str = "") -> "Verdict":
        return cls(Status.FAILED, detail, witness=witness)

    def to_json_dict(self) -> dict:
        out: dict = {"status": self.status.value}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        if self.points_checked:
            out["points_checked"] = self.points_checked
        return out


def combine_status(verdicts: Iterable[Verdict]) -> Status:
    worst = Status.VERIFIED
    for v in verdicts:
        if v.status is Status.FAILED:
            return Status.FAILED
        if v.status is Status.SAMPLE_VERIFIED:
            worst = Status.SAMPLE_VERIFIED
    return worst


def residual_verdict(
    residuals: Sequence[tuple[str, RatFun]],
    sample_points: Sequence[Sequence],
    tol: float = 0.0,
    detail: str = "",
) -> Verdict:
    """Verified when every labelled residual is identically zero; otherwise,
    with a positive tolerance, SampleVerified when all residuals evaluate
    within tol at every sample point; otherwise Failed with the first
    offending residual (and point, for the numeric path) as witness."""
    nonzero = [(label, r) for label, r in residuals if not r.is_zero()]
    if not nonzero:
        return Verdict.verified(detail)
    if tol > 0.0:
        worst = 0.0
        for label, r in nonzero:
            for point in sample_points:
                try:
                    value = abs(float(r.eval(point)))
                except ZeroDivisionError as exc:
                    return Verdict.failed(
                        f"{label} at {_fmt_point(point)}", f"undefined residual: {exc}"
                    )
                if value > tol:
                    return Verdict.failed(
                        f"{label} at {_fmt_point(point)}",
                        f"residual {value:.3e} exceeds tol {tol:.1e}",
                    )
                worst = max(worst, value)
        return Verdict.sample_verified(
            len(sample_points),
            detail or f"max residual {worst:.3e} within tol {tol:.1e}",
        )
    label, r = nonzero[0]
    return Verdict.failed(f"{label} = {r}", detail or "nonzero symbolic residual")


def nonvanishing_verdict(
    value: RatFun,
    sample_points: Sequence[Sequence],
    label: str,
    constant_detail: str = "",
) -> Verdict:
    """Verified when the value is a nonzero constant; SampleVerified when it
    is non-constant but nonzero at all sample points; Failed otherwise."""
    if value.is_zero():
        return Verdict.failed(f"{label} = 0", "identically zero")
    if value.is_constant():
        return Verdict.verified(constant_detail or f"{label} = {value.constant_value()}")
    for point in sample_points:
        try:
            v = value.eval(point)
        except ZeroDivisionError as exc:
            return Verdict.failed(f"{label} at {_fmt_point(point)}", f"undefined: {exc}")
        if v == 0:
            return Verdict.failed(
                f"{label} at {_fmt_point(point)}", "vanishes at a sample point"
            )
    return Verdict.sample_verified(
        len(sample_points), f"{label} non-constant; nonzero at all sample points"
    )


def matrix_residual_entries(matrix) -> list[tuple[str, RatFun]]:
    """Label every entry of a residual matrix for use with residual_verdict."""
    return [
        (f"entry ({i},{j})", matrix.at(i, j))
        for i in range(matrix.rows)
        for j in range(matrix.cols)
    ]


def _fmt_point(point: Sequence) -> str:
    return "(" + ", ".join(str(x) for x in point) + ")"
