"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import random
import time
from pathlib import Path

import pytest

from contactpairs.cli import run
from contactpairs.connection import christoffel, numeric_geodesic_residual, reeb_geodesy
from contactpairs.exterior import (
    MetricField,
    Space,
    bracket,
    ext_d,
    interior,
    lie_derivative,
    wedge,
)
from contactpairs.fixtures import bundled_fixture_path, load_fixture
from contactpairs.metric import (
    LeafContactMetric,
    LeafMCP,
    MetricContactPair,
    build_associated_by_polarization,
    build_compatible,
    compatible_corollaries,
    decomposability_orthogonality_agreement,
    is_associated,
    is_compatible,
    verify_restricted_contact_metric,
)
from contactpairs.pair import Status, kernel_frame, reeb_fields, verified_pair
from contactpairs.structure import ContactPairStructure, is_decomposable

from conftest import random_form, random_poly, random_spd_matrix, random_vector_field

FIXTURE_DIR = Path(__file__).parent / "fixtures"
RK4_TOL = 1e-8
NUM_TOL = 1e-9


def _report(criterion: str, passed: bool, detail: str = ""):
    marker = "PASS" if passed else "FAIL"
    print(f"[criterion {criterion}] {marker}" + (f": {detail}" if detail else ""))
    assert passed, f"criterion {criterion} failed: {detail}"


@pytest.fixture(scope="module")
def docs():
    return {
        name: load_fixture(bundled_fixture_path(name))
        for name in ("local_model_1_1", "r6_example", "nilpotent_g6")
    }


@pytest.fixture(scope="module")
def structures(docs):
    out = {}
    for name, doc in docs.items():
        vp = verified_pair(doc.pair)
        cps = ContactPairStructure(vp, doc.phi)
        out[name] = (cps, doc.metric)
    flat = load_fixture(FIXTURE_DIR / "flat2_mcp.json")
    out["flat2_mcp"] = (
        ContactPairStructure(verified_pair(flat.pair), flat.phi),
        flat.metric,
    )
    return out


def test_criterion_1_paper_fixture_suite(docs):
    started = time.perf_counter()
    reports = {
        name: run("theorems", bundled_fixture_path(name))
        for name in ("local_model_1_1", "r6_example", "nilpotent_g6")
    }
    elapsed = time.perf_counter() - started

    nil = reports["nilpotent_g6"]
    ok = nil.exit_code() == 0 and all(
        v.status is Status.VERIFIED for v in nil.verdicts.values()
    )

    local = reports["local_model_1_1"]
    ok = ok and local.exit_code() <= 2 and all(v.ok for v in local.verdicts.values())

    r6 = reports["r6_example"]
    failed = {k for k, v in r6.verdicts.items() if not v.ok}
    ok = ok and failed == {"associated", "decomposable"} and r6.exit_code() == 1
    ok = ok and all(
        v.status is Status.VERIFIED
        for k, v in r6.verdicts.items()
        if k not in failed
    )
    ok = ok and elapsed < 10.0
    _report(
        "1",
        ok,
        f"nilpotent exit {nil.exit_code()}, local model exit {local.exit_code()}, "
        f"r6 exit {r6.exit_code()} failing exactly {sorted(failed)}; {elapsed:.2f}s total",
    )


def test_criterion_2_reeb_exactness(docs):
    pairs = [doc.pair for doc in docs.values()]
    for extra in ("twisted.json", "flat2_mcp.json"):
        pairs.append(load_fixture(FIXTURE_DIR / extra).pair)
    checked = 0
    for pair in pairs:
        z1, z2 = reeb_fields(pair)
        for i in (1, 2):
            alpha, dalpha = pair.alpha(i), pair.dalpha(i)
            for j, z in ((1, z1), (2, z2)):
                expected = pair.space.one() if i == j else pair.space.zero()
                assert alpha(z) == expected
                assert dalpha.contract(z).is_zero()
        assert bracket(z1, z2).is_zero()
        checked += 1
    _report("2", True, f"alpha_i(Z_j) = delta_ij, i_Z dalpha = 0, [Z1,Z2] = 0 "
                       f"identically on {checked} fixtures")


def test_criterion_3_geodesy_theorem(structures):
    cases = []
    for name in ("r6_example", "nilpotent_g6", "flat2_mcp"):
        cps, g = structures[name]
        cases.append((name, cps, g))
    # a chart fixture with no bundled metric: use the compatible construction
    cps_local, _ = structures["local_model_1_1"]
    cases.append(
        ("local_model_1_1+built", cps_local,
         build_compatible(cps_local, MetricField.euclidean(cps_local.space)))
    )

    worst_rk4 = 0.0
    for name, cps, g in cases:
        assert is_compatible(cps, g).status is Status.VERIFIED, name
        report = reeb_geodesy(cps.vp, g)
        for key, verdict in report.verdicts.items():
            assert verdict.status is Status.VERIFIED, (name, key, verdict)
        for ij, field in report.derivatives.items():
            assert field.is_zero(), (name, ij)
        for ij, field in report.second_fundamental.items():
            assert field.is_zero(), (name, ij)
        data = christoffel(g, validate=False)
        for i in (1, 2):
            residual = numeric_geodesic_residual(
                g, cps.vp.z(i), cps.vp.sample_points[0], t_end=1.0, dt=1e-3, data=data
            )
            assert residual < RK4_TOL, (name, i, residual)
            worst_rk4 = max(worst_rk4, residual)
    _report(
        "3",
        True,
        f"∇_Z Z = 0 and B = 0 symbolically on {len(cases)} compatible metrics; "
        f"worst RK4 residual {worst_rk4:.2e} < {RK4_TOL:.0e}",
    )


def test_criterion_4_equivalence_theorem(structures):
    # exact MCP fixtures
    for name in ("nilpotent_g6", "flat2_mcp"):
        cps, g = structures[name]
        verdict = decomposability_orthogonality_agreement(cps, g)
        assert verdict.status is Status.VERIFIED, (name, verdict)

    # randomized polarization trials (both block modes, two base geometries)
    rng = random.Random(20240914)
    trials = 0
    mixed = 0
    for name in ("nilpotent_g6", "local_model_1_1"):
        cps, _ = structures[name]
        vp = cps.vp
        for _ in range(3):
            for flag in (False, True):
                k_aux = MetricField(vp.space, random_spd_matrix(rng, 6, 6))
                phi, g = build_associated_by_polarization(vp, k_aux, decomposable=flag)
                cps_new = ContactPairStructure(vp, phi, tol=NUM_TOL)
                assert is_associated(cps_new, g, tol=NUM_TOL).ok, name
                agreement = decomposability_orthogonality_agreement(
                    cps_new, g, tol=NUM_TOL
                )
                assert agreement.status is Status.VERIFIED, (name, flag, agreement)
                if not is_decomposable(cps_new, tol=NUM_TOL).ok:
                    mixed += 1
                trials += 1
    assert trials >= 10
    assert mixed >= 1  # the negative branch of the equivalence is exercised
    _report(
        "4",
        True,
        f"decomposability ⟺ orthogonality on 2 exact MCPs and {trials} polarization "
        f"trials ({mixed} with non-decomposable phi)",
    )


def test_criterion_5_constructors(structures):
    rng = random.Random(20240915)
    built = 0
    for name in ("r6_example", "nilpotent_g6", "local_model_1_1"):
        cps, _ = structures[name]
        for _ in range(20):
            h_aux = MetricField(cps.space, random_spd_matrix(rng, 6, 6))
            g = build_compatible(cps, h_aux)
            assert is_compatible(cps, g).status is Status.VERIFIED, name
            built += 1

    polarized = 0
    for name in ("nilpotent_g6", "local_model_1_1"):
        cps, _ = structures[name]
        vp = cps.vp
        aux = MetricField.euclidean(vp.space)
        for flag in (False, True):
            phi, g = build_associated_by_polarization(vp, aux, decomposable=flag)
            cps_new = ContactPairStructure(vp, phi, tol=NUM_TOL)
            report = is_associated(cps_new, g, tol=NUM_TOL)
            assert report.ok, (name, flag, report.verdict)
            for point in vp.sample_points:
                assert g.is_positive_definite_at(point), (name, flag, point)
            if flag:
                assert is_decomposable(cps_new, tol=NUM_TOL).ok, name
            polarized += 1
    _report(
        "5",
        True,
        f"build_compatible exact on {built} random SPD auxiliaries; "
        f"polarization associated within {NUM_TOL:.0e} on {polarized} runs",
    )


def test_criterion_6_leafwise_structures(structures):
    cps, g = structures["nilpotent_g6"]
    mcp = MetricContactPair(cps, g)
    vp = cps.vp
    results = {
        "TF2 contact metric": verify_restricted_contact_metric(
            mcp, vp.tf2, LeafContactMetric(1)
        ),
        "TF1 contact metric": verify_restricted_contact_metric(
            mcp, vp.tf1, LeafContactMetric(2)
        ),
        "ker dalpha1 pair": verify_restricted_contact_metric(
            mcp, kernel_frame(vp.pair, 1), LeafMCP(1)
        ),
        "ker dalpha2 pair": verify_restricted_contact_metric(
            mcp, kernel_frame(vp.pair, 2), LeafMCP(2)
        ),
    }
    for label, verdict in results.items():
        assert verdict.status is Status.VERIFIED, (label, verdict)
    _report("6", True, "restricted structures exact on both TF frames and both "
                       "ker d alpha frames of the nilpotent fixture")


def test_criterion_7_calculus_engine():
    rng = random.Random(20240916)

    for _ in range(100):  # d∘d = 0
        dim = rng.choice([2, 3, 4])
        space = Space.chart([f"c{i}" for i in range(dim)])
        form = random_form(rng, space, rng.randrange(dim))
        assert ext_d(ext_d(form)).is_zero()

    for _ in range(100):  # Cartan formula
        dim = rng.choice([2, 3])
        space = Space.chart([f"c{i}" for i in range(dim)])
        form = random_form(rng, space, rng.randrange(1, dim))
        field = random_vector_field(rng, space)
        assert lie_derivative(field, form) == interior(field, ext_d(form)) + ext_d(
            interior(field, form)
        )

    for _ in range(100):  # Leibniz rule
        space = Space.chart(["u", "v", "w"])
        p = rng.choice([0, 1])
        a = random_form(rng, space, p)
        b = random_form(rng, space, 1)
        signed = wedge(a, ext_d(b))
        rhs = wedge(ext_d(a), b) + (signed if p % 2 == 0 else -signed)
        assert ext_d(wedge(a, b)) == rhs

    for trial in range(100):  # torsion-freeness and metric compatibility, exact
        space = Space.chart(["u", "v"])
        p = random_poly(rng, 2, max_degree=1, max_terms=2)
        g = MetricField(
            space,
            [[(p * p) + 1, p], [p, (p * p) + 2]],
        )
        data = christoffel(g)  # validate=True re-checks both properties exactly
        x = random_vector_field(rng, space)
        y = random_vector_field(rng, space)
        from contactpairs.connection import covariant_derivative

        torsion = (
            covariant_derivative(data, x, y)
            - covariant_derivative(data, y, x)
            - bracket(x, y)
        )
        assert torsion.is_zero(), trial

    _report("7", True, "d∘d, Cartan, Leibniz, torsion/metric-compatibility: "
                       "100 exact randomized checks each")


def test_criterion_8_compatible_corollaries(structures):
    rng = random.Random(20240917)
    count = 0
    for name, (cps, g) in structures.items():
        metrics = []
        if g is not None and is_compatible(cps, g).ok:
            metrics.append(g)
        metrics.append(build_compatible(cps, MetricField.euclidean(cps.space)))
        metrics.append(
            build_compatible(cps, MetricField(cps.space, random_spd_matrix(rng, cps.space.dim, cps.space.dim)))
        )
        for metric in metrics:
            assert is_compatible(cps, metric).ok
            for key, verdict in compatible_corollaries(cps, metric).items():
                assert verdict.status is Status.VERIFIED, (name, key, verdict)
            count += 1
    _report(
        "8",
        True,
        f"g(Z_i, X) = alpha_i(X) and g(Z_i, Z_j) = delta_ij derived exactly for "
        f"{count} compatible metrics",
    )
