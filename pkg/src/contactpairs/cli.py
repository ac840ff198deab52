"""Command-line verbs over fixture files.

    contactpairs <verb> <fixture.json> [--out report.json] [--tol 1e-9]
                 [--samples N] [--seed S]

``theorems`` runs every applicable check in dependency order; ``report``
does the same and emits the JSON document to stdout.  Exit codes: 0 all
Verified, 2 at least one SampleVerified and none Failed, 1 any Failed,
3 parse/schema/usage errors.

Fixture data is checked exactly (tolerance plays no role for it); the
--tol value applies to the numeric, polarization-produced instances.
--samples appends N extra random rational sample points (seeded by --seed)
to the fixture's declared ones.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from .algebra import RatFun
from .connection import christoffel, numeric_geodesic_residual, reeb_geodesy
from .exterior import MetricField, bracket
from .fixtures import FixtureDoc, FixtureError, load_fixture
from .metric import (
    LeafContactMetric,
    LeafMCP,
    MetricContactPair,
    MetricValidationError,
    PolarizationError,
    are_foliations_orthogonal,
    build_associated_by_polarization,
    build_compatible,
    compatible_corollaries,
    decomposability_orthogonality_agreement,
    is_associated,
    is_compatible,
    killing_agreement,
    killing_check,
    polarization_precondition_violation,
    verify_restricted_contact_metric,
)
from .pair import (
    ContactPair,
    FrameRankError,
    PairValidationError,
    ReebSolveError,
    kernel_frame,
    verified_pair,
    verify_contact_pair,
    verify_splittings,
)
from .report import Report, render_report
from .structure import (
    ContactPairStructure,
    PreconditionError,
    StructureValidationError,
    is_decomposable,
    verify_induced_almost_contact,
    verify_structure,
)
from .verdicts import Verdict, residual_verdict

__all__ = ["VERBS", "run", "main", "VerbUsageError"]

RK4_TOLERANCE = 1e-8
RK4_DT = 1e-3
RK4_T_END = 1.0

VERBS = (
    "verify-pair",
    "reeb",
    "verify-structure",
    "decomposable",
    "compatible",
    "associated",
    "orthogonal",
    "build-compatible",
    "polarize",
    "geodesy",
    "killing",
    "leaves",
    "theorems",
    "report",
)

_PHI_VERBS = {
    "verify-structure",
    "decomposable",
    "compatible",
    "associated",
    "killing",
    "leaves",
    "build-compatible",
}
_METRIC_VERBS = {"compatible", "associated", "orthogonal", "geodesy", "killing", "leaves"}

_VERB_FILTER = {
    "verify-pair": ("volume_form", "dalpha1_power_zero", "dalpha2_power_zero"),
    "reeb": ("reeb_", "splittings"),
    "verify-structure": ("structure_",),
    "decomposable": ("decomposable", "induced_almost_contact_"),
    "compatible": ("compatible",),
    "associated": ("compatible", "associated"),
    "orthogonal": ("orthogonal",),
    "build-compatible": ("built_",),
    "polarize": ("polarized",),
    "geodesy": ("geodesic", "totally_geodesic", "geodesy_rk4"),
    "killing": ("killing_",),
    "leaves": ("leaf_",),
}


class VerbUsageError(ValueError):
    """The fixture lacks a field the requested verb needs."""


class _Runner:
    def __init__(self, doc: FixtureDoc, verb: str, tol: float):
        self.doc = doc
        self.verb = verb
        self.tol = tol
        self.report = Report(doc.fixture_id, verb)
        self.pair_ok = False
        self.vp = None
        self.cps = None
        self.decomposable_ok = False

    # -- stages ---------------------------------------------------------------

    def pair_stage(self) -> None:
        verdicts = verify_contact_pair(self.doc.pair)
        self.report.verdicts.update(verdicts)
        self.pair_ok = all(v.ok for v in verdicts.values())
        if not self.pair_ok:
            self.report.skipped["reeb"] = "contact pair conditions failed"

    def reeb_stage(self) -> None:
        try:
            self.vp = verified_pair(self.doc.pair)
        except (ReebSolveError, FrameRankError, PairValidationError) as exc:
            self.report.verdicts["reeb_solve"] = Verdict.failed(str(exc))
            return
        vp = self.vp
        names = vp.space.names
        normalization = []
        contraction = []
        for i in (1, 2):
            alpha = vp.alpha(i)
            dalpha = vp.pair.dalpha(i)
            for j in (1, 2):
                z = vp.z(j)
                expected = vp.space.one() if i == j else vp.space.zero()
                normalization.append(
                    (f"alpha{i}(Z{j}) - {int(i == j)}", alpha(z) - expected)
                )
                contracted = dalpha.contract(z)
                contraction.extend(
                    (f"(i_Z{j} d alpha{i})[{names[b]}]", c)
                    for (b,), c in contracted.coeffs.items()
                )
        points = vp.sample_points
        self.report.verdicts["reeb_normalization"] = residual_verdict(
            normalization, points, detail="alpha_i(Z_j) = delta_ij"
        )
        self.report.verdicts["reeb_contraction"] = residual_verdict(
            contraction, points, detail="i_{Z_j} d alpha_i = 0"
        )
        commutator = bracket(vp.z1, vp.z2)
        self.report.verdicts["reeb_commutation"] = residual_verdict(
            [(f"[Z1, Z2][{names[a]}]", c) for a, c in enumerate(commutator.components)],
            points,
            detail="[Z1, Z2] = 0",
        )
        self.report.outputs["reeb_fields"] = {
            f"Z{i}": [c.format(names) for c in vp.z(i).components] for i in (1, 2)
        }
        self.report.verdicts["splittings"] = verify_splittings(vp)

    def structure_stage(self) -> None:
        verdicts = verify_structure(self.vp, self.doc.phi)
        self.report.verdicts.update({f"structure_{k}": v for k, v in verdicts.items()})
        if verdicts["phi_squared"].ok and verdicts["phi_reeb"].ok:
            self.cps = ContactPairStructure(self.vp, self.doc.phi)
        else:
            self.report.skipped["decomposable"] = "structure identities failed"

    def decomposable_stage(self) -> None:
        verdict = is_decomposable(self.cps)
        self.report.verdicts["decomposable"] = verdict
        self.decomposable_ok = verdict.ok
        if verdict.ok:
            for i in (1, 2):
                leaf = self.vp.tf(2 if i == 1 else 1)
                self.report.verdicts[f"induced_almost_contact_{i}"] = (
                    verify_induced_almost_contact(self.cps, leaf, i)
                )
        else:
            self.report.skipped["induced_almost_contact"] = "requires decomposable phi"

    def metric_stage(self) -> None:
        g = self.doc.metric
        compatible_ok = False
        associated_ok = False
        if self.cps is not None:
            compatible = is_compatible(self.cps, g)
            self.report.verdicts["compatible"] = compatible
            compatible_ok = compatible.ok
            if compatible_ok:
                for key, verdict in compatible_corollaries(self.cps, g).items():
                    self.report.verdicts[f"compatible_{key}"] = verdict
            assoc = is_associated(self.cps, g)
            self.report.verdicts["associated"] = assoc.verdict
            self.report.verdicts["associated_skew"] = assoc.verdicts["skew"]
            associated_ok = assoc.ok
        else:
            self.report.skipped["compatible"] = "fixture has no phi"
            self.report.skipped["associated"] = "fixture has no phi"

        self.report.verdicts["orthogonal"] = are_foliations_orthogonal(self.vp, g)

        if associated_ok:
            self.report.verdicts["decomposable_orthogonal_agreement"] = (
                decomposability_orthogonality_agreement(self.cps, g)
            )
            for i in (1, 2):
                results = killing_check(self.cps, g, i)
                agreement = killing_agreement(results)
                self.report.verdicts[f"killing_{i}"] = agreement
        else:
            reason = (
                "requires an associated metric"
                if self.cps is not None
                else "fixture has no phi"
            )
            self.report.skipped["killing"] = reason
            self.report.skipped["decomposable_orthogonal_agreement"] = reason

        if associated_ok and self.decomposable_ok:
            mcp = MetricContactPair(self.cps, g)
            vp = self.vp
            self.report.verdicts["leaf_contact_metric_1"] = (
                verify_restricted_contact_metric(mcp, vp.tf2, LeafContactMetric(1))
            )
            self.report.verdicts["leaf_contact_metric_2"] = (
                verify_restricted_contact_metric(mcp, vp.tf1, LeafContactMetric(2))
            )
            for i in (1, 2):
                frame = kernel_frame(vp.pair, i)
                self.report.verdicts[f"leaf_mcp_{i}"] = verify_restricted_contact_metric(
                    mcp, frame, LeafMCP(i)
                )
        else:
            self.report.skipped["leaves"] = (
                "requires an associated metric and decomposable phi"
            )

        if compatible_ok or (self.cps is None and self.verb == "geodesy"):
            self.geodesy_stage(g, prefix="")
        else:
            self.report.skipped["geodesy"] = "requires a compatible metric"

    def geodesy_stage(self, g: MetricField, prefix: str) -> None:
        try:
            geo = reeb_geodesy(self.vp, g)
        except PreconditionError as exc:
            self.report.verdicts[f"{prefix}geodesic"] = Verdict.failed(str(exc))
            return
        self.report.verdicts[f"{prefix}geodesic"] = geo.verdicts["geodesic"]
        self.report.verdicts[f"{prefix}totally_geodesic"] = geo.verdicts["totally_geodesic"]
        data = christoffel(g, validate=False)
        worst = 0.0
        start = self.vp.sample_points[0]
        for i in (1, 2):
            residual = numeric_geodesic_residual(
                g, self.vp.z(i), start, t_end=RK4_T_END, dt=RK4_DT, data=data
            )
            self.report.residuals[f"{prefix}geodesy_rk4_z{i}"] = residual
            worst = max(worst, residual)
        if worst < RK4_TOLERANCE:
            self.report.verdicts[f"{prefix}geodesy_rk4"] = Verdict.verified(
                f"max residual {worst:.3e} < {RK4_TOLERANCE:.0e} "
                f"(RK4, dt={RK4_DT:g}, t in [0, {RK4_T_END:g}])"
            )
        else:
            self.report.verdicts[f"{prefix}geodesy_rk4"] = Verdict.failed(
                f"max residual {worst:.3e}", f"exceeds the {RK4_TOLERANCE:.0e} budget"
            )

    def built_stage(self) -> None:
        aux = self.doc.aux_metric or MetricField.euclidean(self.vp.space)
        try:
            built = build_compatible(self.cps, aux)
        except (MetricValidationError, PreconditionError) as exc:
            self.report.verdicts["built_compatible"] = Verdict.failed(str(exc))
            return
        self.report.verdicts["built_compatible"] = is_compatible(self.cps, built)
        names = self.vp.space.names
        self.report.outputs["built_metric"] = [
            [built.matrix.at(i, j).format(names) for j in range(self.vp.dim)]
            for i in range(self.vp.dim)
        ]
        self.geodesy_stage(built, prefix="built_")

    def polarize_stage(self) -> None:
        aux = self.doc.aux_metric or MetricField.euclidean(self.vp.space)
        reason = polarization_precondition_violation(self.vp, aux)
        if reason:
            self.report.skipped["polarized"] = f"polarization not applicable: {reason}"
            return
        for flag, prefix in ((False, "polarized"), (True, "polarized_decomposable")):
            try:
                phi, g = build_associated_by_polarization(self.vp, aux, decomposable=flag)
                cps_new = ContactPairStructure(self.vp, phi, tol=self.tol)
            except (PolarizationError, StructureValidationError) as exc:
                self.report.verdicts[f"{prefix}_associated"] = Verdict.failed(str(exc))
                continue
            assoc = is_associated(cps_new, g, self.tol)
            self.report.verdicts[f"{prefix}_associated"] = assoc.verdict
            entries = [
                e
                for _, e in _associated_entries(assoc)
            ]
            self.report.residuals[f"{prefix}_associated_max"] = _max_abs_at_samples(
                entries, self.vp.sample_points
            )
            spd_failures = [
                tuple(p)
                for p in self.vp.sample_points
                if not g.is_positive_definite_at(p)
            ]
            if spd_failures:
                self.report.verdicts[f"{prefix}_spd"] = Verdict.failed(
                    f"not positive definite at {spd_failures[0]}"
                )
            else:
                self.report.verdicts[f"{prefix}_spd"] = Verdict.verified(
                    "positive definite at all sample points"
                )
            if flag:
                self.report.verdicts["polarized_decomposable_check"] = is_decomposable(
                    cps_new, self.tol
                )
                self.report.verdicts["polarized_decomposable_orthogonal"] = (
                    are_foliations_orthogonal(self.vp, g, self.tol)
                )
            self.report.verdicts[f"{prefix}_agreement"] = (
                decomposability_orthogonality_agreement(cps_new, g, self.tol)
            )
            # the numeric products, evaluated at the base sample point
            base = self.vp.sample_points[0]
            self.report.outputs[f"{prefix}_phi_at_base"] = _float_grid(phi.matrix, base)
            self.report.outputs[f"{prefix}_metric_at_base"] = _float_grid(g.matrix, base)


def _float_grid(matrix, point) -> list[list[str]]:
    from .report import format_float

    return [
        [format_float(float(matrix.at(i, j).eval(point))) for j in range(matrix.cols)]
        for i in range(matrix.rows)
    ]


def _associated_entries(report) -> list[tuple[str, RatFun]]:
    entries = [("pairing", e) for row in report.pairing_residual.entries for e in row]
    entries += [("skew", e) for row in report.skew_residual.entries for e in row]
    for i, res in report.reeb_residuals.items():
        entries += [(f"reeb{i}", e) for e in res]
    return entries


def _max_abs_at_samples(entries, points) -> float:
    worst = 0.0
    for e in entries:
        if e.is_zero():
            continue
        for p in points:
            worst = max(worst, abs(float(e.eval(p))))
    return worst


def _execute(doc: FixtureDoc, verb: str, tol: float) -> Report:
    runner = _Runner(doc, verb, tol)
    runner.pair_stage()
    if verb == "verify-pair":
        return runner.report

    if verb in _PHI_VERBS and not doc.has_phi:
        raise VerbUsageError(f"verb {verb!r} needs a phi entry in the fixture")
    if verb in _METRIC_VERBS and not doc.has_metric:
        raise VerbUsageError(f"verb {verb!r} needs a metric entry in the fixture")

    if runner.pair_ok:
        runner.reeb_stage()
    if runner.vp is None:
        return runner.report
    if verb == "reeb":
        return runner.report

    if doc.has_phi and (verb in _PHI_VERBS or verb in ("theorems", "report")):
        runner.structure_stage()
        if runner.cps is not None:
            runner.decomposable_stage()
    elif verb in ("theorems", "report"):
        runner.report.skipped["structure"] = "fixture has no phi"

    if verb in ("verify-structure", "decomposable"):
        return runner.report

    if doc.has_metric and (verb in _METRIC_VERBS or verb in ("theorems", "report")):
        runner.metric_stage()
    elif verb in ("theorems", "report"):
        runner.report.skipped["metric"] = "fixture has no metric"

    if verb == "polarize":
        aux = doc.aux_metric or MetricField.euclidean(runner.vp.space)
        reason = polarization_precondition_violation(runner.vp, aux)
        if reason:
            raise VerbUsageError(f"polarize is not applicable: {reason}")

    run_constructions = verb in ("build-compatible", "polarize") or (
        verb in ("theorems", "report") and not doc.has_metric
    )
    if run_constructions:
        if verb != "polarize":
            if runner.cps is not None:
                runner.built_stage()
            elif verb == "build-compatible":
                raise VerbUsageError("build-compatible needs a valid phi")
            else:
                runner.report.skipped["built_compatible"] = "fixture has no phi"
        if verb != "build-compatible":
            runner.polarize_stage()
    return runner.report


_BASE_PREREQS = (
    "volume_form",
    "dalpha1_power_zero",
    "dalpha2_power_zero",
    "reeb_solve",
    "reeb_normalization",
    "reeb_contraction",
    "reeb_commutation",
    "splittings",
)
_EXTRA_PREREQS = {
    "verify-structure": ("structure_",),
    "decomposable": ("structure_",),
    "compatible": ("structure_",),
    "associated": ("structure_",),
    "build-compatible": ("structure_",),
    "killing": ("structure_", "associated", "compatible"),
    "leaves": ("structure_", "associated", "compatible", "decomposable"),
}


def _filter_report(report: Report, verb: str) -> Report:
    """Keep the verdicts the verb asked about, plus failed prerequisites
    (a verb cannot exit 0 when the checks it builds on are broken)."""
    prefixes = _VERB_FILTER.get(verb)
    if prefixes is None:
        return report
    prereqs = _BASE_PREREQS + _EXTRA_PREREQS.get(verb, ())

    def matches(name: str, patterns) -> bool:
        return any(name == p or name.startswith(p) for p in patterns)

    report.verdicts = {
        name: v
        for name, v in report.verdicts.items()
        if matches(name, prefixes) or (not v.ok and matches(name, prereqs))
    }
    report.residuals = {
        name: value for name, value in report.residuals.items() if matches(name, prefixes)
    }
    report.skipped = {
        name: why for name, why in report.skipped.items() if matches(name, prefixes)
    }
    report.outputs = {
        name: value for name, value in report.outputs.items() if matches(name, prefixes)
    }
    return report


def _augment_samples(doc: FixtureDoc, count: int, seed: int) -> None:
    rng = random.Random(seed)
    extra = tuple(
        tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(doc.space.dim))
        for _ in range(count)
    )
    pair = doc.pair
    doc.pair = ContactPair(
        pair.space, pair.alpha1, pair.alpha2, pair.h, pair.k, pair.sample_points + extra
    )


def run(
    verb: str,
    fixture,
    tol: float = 1e-9,
    samples: int = 0,
    seed: int = 0,
) -> Report:
    """Programmatic entry point: load a fixture, run a verb, return the Report."""
    if verb not in VERBS:
        raise VerbUsageError(f"unknown verb {verb!r}; choose from {', '.join(VERBS)}")
    doc = load_fixture(fixture)
    if samples:
        _augment_samples(doc, samples, seed)
    started = time.perf_counter()
    report = _execute(doc, verb, tol)
    report = _filter_report(report, verb)
    report.timings["total_s"] = time.perf_counter() - started
    return report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactpairs",
        description="Verify contact pairs, contact pair structures, and their "
        "compatible/associated metrics on chart or Lie-frame fixtures.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    for verb in VERBS:
        sp = sub.add_parser(verb)
        sp.add_argument("fixture", type=Path, help="fixture JSON file")
        sp.add_argument("--out", type=Path, default=None, help="write the JSON report here")
        sp.add_argument(
            "--tol",
            type=float,
            default=1e-9,
            help="tolerance for numeric (polarization) residuals; exact data ignores it",
        )
        sp.add_argument(
            "--samples", type=int, default=0, help="extra random sample points to append"
        )
        sp.add_argument("--seed", type=int, default=0, help="seed for --samples")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        report = run(args.verb, args.fixture, tol=args.tol, samples=args.samples, seed=args.seed)
    except (FixtureError, VerbUsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = render_report(report)
    if args.out is not None:
        args.out.write_text(text + "\n", encoding="utf-8")
    if args.verb == "report":
        print(text)
    else:
        for line in report.summary_lines():
            print(line)
        print(f"overall: {report.status().value}")
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
