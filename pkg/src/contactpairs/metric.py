"""Compatible and associated metrics for contact pair structures.

A metric g is *compatible* with (alpha1, alpha2, phi) when

    g(phi X, phi Y) = g(X, Y) - alpha1(X) alpha1(Y) - alpha2(X) alpha2(Y)

and *associated* when additionally g(X, phi Y) = (d alpha1 + d alpha2)(X, Y)
and g(X, Z_i) = alpha_i(X).  Both predicates are exact matrix identities in
basis coordinates; a positive tolerance grades nonzero residuals at the
sample points instead (for numeric, polarization-produced data).

The polarization construction represents the restriction of
d alpha1 + d alpha2 to a characteristic subbundle frame as a k-skew operator
A (k(u, A v) = d alpha(u, v)), polar-decomposes it numerically, and extends
by zero on the Reeb fields.  Note that d alpha_i vanishes identically on
TG_i, so the per-block (decomposable) variant effectively polarizes
d alpha_j on TG_i for j != i; using the sum keeps one formula for both
variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import RatFun, RfMatrix, solve_linear_exact
from .exterior import EndoField, FrameForm, MetricField, VectorField, lie_derivative
from .pair import DistributionFrame, VerifiedPair, two_form_matrix
from .structure import ContactPairStructure, PreconditionError, is_decomposable
from .verdicts import (
    Status,
    Verdict,
    combine_status,
    matrix_residual_entries,
    nonvanishing_verdict,
    residual_verdict,
)

__all__ = [
    "MetricContactPair",
    "AssociatedCheckReport",
    "MetricValidationError",
    "PolarizationError",
    "LeafContactMetric",
    "LeafMCP",
    "is_compatible",
    "compatible_corollaries",
    "is_associated",
    "build_compatible",
    "build_associated_by_polarization",
    "are_foliations_orthogonal",
    "killing_check",
    "killing_agreement",
    "decomposability_orthogonality_agreement",
    "verify_restricted_contact_metric",
]


class MetricValidationError(ValueError):
    """A metric fails a requirement it was declared to satisfy."""


class PolarizationError(RuntimeError):
    """The numeric polarization could not be carried out."""


def _outer(column: Sequence[RatFun], row: Sequence[RatFun], nvars: int) -> RfMatrix:
    return RfMatrix(nvars, [[c * r for r in row] for c in column])


def is_compatible(cps: ContactPairStructure, g: MetricField, tol: float = 0.0) -> Verdict:
    """Exact check of  phi^T G phi = G - a1 a1^T - a2 a2^T."""
    vp = cps.vp
    if g.space != vp.space:
        raise ValueError("metric lives on a different space")
    n = vp.dim
    a1 = vp.alpha_row(1)
    a2 = vp.alpha_row(2)
    phi_t = cps.phi.matrix.transpose()
    residual = (
        phi_t @ g.matrix @ cps.phi.matrix
        - g.matrix
        + _outer(a1, a1, n)
        + _outer(a2, a2, n)
    )
    return residual_verdict(
        matrix_residual_entries(residual),
        vp.sample_points,
        tol,
        detail="g(phi X, phi Y) = g(X, Y) - alpha1(X)alpha1(Y) - alpha2(X)alpha2(Y)",
    )


def compatible_corollaries(
    cps: ContactPairStructure, g: MetricField, tol: float = 0.0
) -> dict[str, Verdict]:
    """Consequences every compatible metric must satisfy: g(Z_i, ·) = alpha_i
    and g(Z_i, Z_j) = delta_ij."""
    vp = cps.vp
    duality = []
    for i in (1, 2):
        image = g.matrix.apply(vp.z(i).components)
        row = vp.alpha_row(i)
        duality.extend(
            (f"g(Z{i}, e_{vp.space.names[b]}) - alpha{i}[{b}]", image[b] - row[b])
            for b in range(vp.dim)
        )
    gram = []
    for i in (1, 2):
        for j in (1, 2):
            value = g.value(vp.z(i), vp.z(j))
            expected = vp.space.one() if i == j else vp.space.zero()
            gram.append((f"g(Z{i}, Z{j}) - {int(i == j)}", value - expected))
    return {
        "reeb_duality": residual_verdict(
            duality, vp.sample_points, tol, detail="g(Z_i, X) = alpha_i(X)"
        ),
        "reeb_orthonormality": residual_verdict(
            gram, vp.sample_points, tol, detail="g(Z_i, Z_j) = delta_ij"
        ),
    }


@dataclass(frozen=True)
class AssociatedCheckReport:
    """Residuals of the associated-metric identities.

    ``pairing_residual`` is G·Phi - A with A[a][b] = (d alpha1 + d alpha2)
    applied to the basis pair (a, b); ``skew_residual`` is Phi^T G + G Phi
    (implied by the pairing identity, asserted separately as a sanity check).
    """

    pairing_residual: RfMatrix
    skew_residual: RfMatrix
    reeb_residuals: dict[int, tuple[RatFun, ...]]
    verdicts: dict[str, Verdict]

    @property
    def verdict(self) -> Verdict:
        status = combine_status(self.verdicts.values())
        if status is Status.FAILED:
            first = next(v for v in self.verdicts.values() if not v.ok)
            return Verdict(status, first.detail, witness=first.witness)
        details = "; ".join(v.detail for v in self.verdicts.values() if v.detail)
        points = max((v.points_checked for v in self.verdicts.values()), default=0)
        return Verdict(status, details, points_checked=points)

    @property
    def ok(self) -> bool:
        return self.verdict.ok


def is_associated(
    cps: ContactPairStructure, g: MetricField, tol: float = 0.0
) -> AssociatedCheckReport:
    """Exact checks of G·Phi = A and g(·, Z_i) = alpha_i."""
    vp = cps.vp
    if g.space != vp.space:
        raise ValueError("metric lives on a different space")
    n = vp.dim
    a_matrix = two_form_matrix(vp.pair.dalpha(1)) + two_form_matrix(vp.pair.dalpha(2))
    pairing = g.matrix @ cps.phi.matrix - a_matrix
    skew = cps.phi.matrix.transpose() @ g.matrix + g.matrix @ cps.phi.matrix

    reeb: dict[int, tuple[RatFun, ...]] = {}
    reeb_labelled = []
    for i in (1, 2):
        image = g.matrix.apply(vp.z(i).components)
        row = vp.alpha_row(i)
        res = tuple(image[b] - row[b] for b in range(n))
        reeb[i] = res
        reeb_labelled.extend(
            (f"g(Z{i}, e_{vp.space.names[b]}) - alpha{i}[{b}]", res[b]) for b in range(n)
        )

    points = vp.sample_points
    verdicts = {
        "pairing": residual_verdict(
            matrix_residual_entries(pairing),
            points,
            tol,
            detail="g(X, phi Y) = (d alpha1 + d alpha2)(X, Y)",
        ),
        "reeb": residual_verdict(
            reeb_labelled, points, tol, detail="g(X, Z_i) = alpha_i(X)"
        ),
        "skew": residual_verdict(
            matrix_residual_entries(skew),
            points,
            tol,
            detail="g(phi X, Y) = -g(X, phi Y)",
        ),
    }
    return AssociatedCheckReport(pairing, skew, reeb, verdicts)


@dataclass(frozen=True)
class MetricContactPair:
    """Contact pair structure plus an associated metric (enforced within
    ``tol`` at construction)."""

    cps: ContactPairStructure
    g: MetricField
    tol: float = 0.0

    def __post_init__(self):
        report = is_associated(self.cps, self.g, self.tol)
        if not report.ok:
            raise MetricValidationError(
                f"metric is not associated: {report.verdict.witness}"
            )

    @property
    def vp(self) -> VerifiedPair:
        return self.cps.vp

    @property
    def phi(self) -> EndoField:
        return self.cps.phi


def build_compatible(cps: ContactPairStructure, h_aux: MetricField) -> MetricField:
    """Average an arbitrary metric into a compatible one:

        k(X, Y) = h(phi^2 X, phi^2 Y) + alpha1(X)alpha1(Y) + alpha2(X)alpha2(Y)
        g(X, Y) = (k(X, Y) + k(phi X, phi Y)
                   + alpha1(X)alpha1(Y) + alpha2(X)alpha2(Y)) / 2

    The output is post-checked exactly against :func:`is_compatible` and for
    positive definiteness at every sample point."""
    vp = cps.vp
    if h_aux.space != vp.space:
        raise ValueError("auxiliary metric lives on a different space")
    for point in vp.sample_points:
        if not h_aux.is_positive_definite_at(point):
            raise MetricValidationError(
                f"auxiliary metric is not positive definite at {tuple(point)}"
            )
    n = vp.dim
    a1 = vp.alpha_row(1)
    a2 = vp.alpha_row(2)
    alpha_term = _outer(a1, a1, n) + _outer(a2, a2, n)
    phi = cps.phi.matrix
    phi2 = phi @ phi
    k_matrix = phi2.transpose() @ h_aux.matrix @ phi2 + alpha_term
    g_matrix = (k_matrix + phi.transpose() @ k_matrix @ phi + alpha_term).scaled(
        Fraction(1, 2)
    )
    g = MetricField(vp.space, g_matrix)

    check = is_compatible(cps, g)
    if check.status is not Status.VERIFIED:
        raise MetricValidationError(f"construction failed compatibility: {check.witness}")
    for point in vp.sample_points:
        if not g.is_positive_definite_at(point):
            raise MetricValidationError(
                f"constructed metric is not positive definite at {tuple(point)}"
            )
    return g


# --- polarization ---------------------------------------------------------------


def polarization_precondition_violation(vp: VerifiedPair, k_aux: MetricField) -> str | None:
    """Polarization is numeric and restricted to constant-coefficient data:
    both d alpha_i and the auxiliary metric must have constant coefficients
    (always true on Lie frames; true on Darboux-type charts)."""
    for i in (1, 2):
        if any(not c.is_constant() for c in vp.pair.dalpha(i).coeffs.values()):
            return f"d alpha{i} has non-constant coefficients"
    if any(
        not e.is_constant() for row in k_aux.matrix.entries for e in row
    ):
        return "the auxiliary metric has non-constant coefficients"
    return None


def _float_matrix(entries: Sequence[Sequence[RatFun]], point) -> np.ndarray:
    return np.array([[float(e.eval(point)) for e in row] for row in entries], dtype=float)


def _fix_eigenvector_signs(vectors: np.ndarray) -> np.ndarray:
    out = vectors.copy()
    for col in range(out.shape[1]):
        column = out[:, col]
        nonzero = np.nonzero(np.abs(column) > 1e-10)[0]
        if nonzero.size and column[nonzero[0]] < 0:
            out[:, col] = -column
    return out


def _polarize_block(s_values: np.ndarray, k_values: np.ndarray, eig_tol: float):
    """Polar-decompose the k-skew operator representing the restricted 2-form.

    Returns (phi_block, g_block) in the frame coordinates of the block."""
    try:
        chol = np.linalg.cholesky(k_values)
    except np.linalg.LinAlgError as exc:
        raise PolarizationError(
            "auxiliary metric is not positive definite on the subbundle"
        ) from exc
    # skew representative in k-orthonormal coordinates
    a_hat = np.linalg.solve(chol, np.linalg.solve(chol, s_values).T).T
    sym = a_hat.T @ a_hat
    sym = (sym + sym.T) / 2.0
    eigenvalues, eigenvectors = np.linalg.eigh(sym)  # ascending order
    if np.min(eigenvalues) <= eig_tol:
        raise PolarizationError(
            f"restricted 2-form is singular on the subbundle "
            f"(eigenvalue {np.min(eigenvalues):.3e}); pair conditions violated"
        )
    eigenvectors = _fix_eigenvector_signs(eigenvectors)
    sqrt_p = eigenvectors @ np.diag(np.sqrt(eigenvalues)) @ eigenvectors.T
    inv_sqrt_p = eigenvectors @ np.diag(1.0 / np.sqrt(eigenvalues)) @ eigenvectors.T
    phi_hat = a_hat @ inv_sqrt_p
    phi_block = np.linalg.solve(chol.T, phi_hat @ chol.T)
    g_block = chol @ sqrt_p @ chol.T
    g_block = (g_block + g_block.T) / 2.0  # bitwise symmetry for exact ingestion
    return phi_block, g_block


def build_associated_by_polarization(
    vp: VerifiedPair,
    k_aux: MetricField,
    decomposable: bool,
    base_point: Sequence | None = None,
    eig_tol: float = 1e-12,
) -> tuple[EndoField, MetricField]:
    """Produce (phi, g) with g associated to (alpha1, alpha2, phi).

    The restriction of d alpha1 + d alpha2 to the characteristic subbundles
    is polarized numerically at ``base_point`` (default: the first sample
    point): jointly on TG1 ⊕ TG2, or per block when ``decomposable`` is set,
    which forces phi to preserve the characteristic subbundles.  The result is
    extended by g(·, Z_i) = alpha_i and phi(Z_i) = 0."""
    if k_aux.space != vp.space:
        raise ValueError("auxiliary metric lives on a different space")
    reason = polarization_precondition_violation(vp, k_aux)
    if reason:
        raise PolarizationError(reason)
    point = tuple(vp.sample_points[0] if base_point is None else base_point)
    n = vp.dim

    dsum = vp.pair.dalpha(1) + vp.pair.dalpha(2)
    blocks = [(vp.tg1, vp.tg2)] if not decomposable else [(vp.tg1,), (vp.tg2,)]
    block_frames: list[tuple[VectorField, ...]] = []
    for group in blocks:
        vectors: tuple[VectorField, ...] = ()
        for frame in group:
            vectors = vectors + frame.vectors
        block_frames.append(vectors)

    phi_blocks = []
    g_blocks = []
    for vectors in block_frames:
        m = len(vectors)
        if m == 0:  # a TG block is empty for types with h = 0 or k = 0
            phi_blocks.append(np.zeros((0, 0)))
            g_blocks.append(np.zeros((0, 0)))
            continue
        s_exact = [[dsum(u, v) for v in vectors] for u in vectors]
        k_exact = [[k_aux.value(u, v) for v in vectors] for u in vectors]
        phi_block, g_block = _polarize_block(
            _float_matrix(s_exact, point), _float_matrix(k_exact, point), eig_tol
        )
        phi_blocks.append(phi_block)
        g_blocks.append(g_block)

    ordered = [v for vectors in block_frames for v in vectors]
    basis_cols = [v.components for v in ordered] + [vp.z1.components, vp.z2.components]
    basis = RfMatrix(n, [[basis_cols[j][i] for j in range(n)] for i in range(n)])
    basis_inv = basis.inverse()

    zero = RatFun.zero(n)
    phi_b = [[zero for _ in range(n)] for _ in range(n)]
    g_b = [[zero for _ in range(n)] for _ in range(n)]
    offset = 0
    for phi_block, g_block in zip(phi_blocks, g_blocks):
        m = phi_block.shape[0]
        for p in range(m):
            for q in range(m):
                phi_b[offset + p][offset + q] = RatFun.const(
                    n, Fraction(float(phi_block[p, q]))
                )
                g_b[offset + p][offset + q] = RatFun.const(
                    n, Fraction(float(g_block[p, q]))
                )
        offset += m
    g_b[offset][offset] = RatFun.one(n)
    g_b[offset + 1][offset + 1] = RatFun.one(n)

    phi_matrix = basis @ RfMatrix(n, phi_b) @ basis_inv
    g_matrix = basis_inv.transpose() @ RfMatrix(n, g_b) @ basis_inv
    return EndoField(vp.space, phi_matrix), MetricField(vp.space, g_matrix)


# --- orthogonality and Killing fields -----------------------------------------------


def are_foliations_orthogonal(vp: VerifiedPair, g: MetricField, tol: float = 0.0) -> Verdict:
    """g(u, v) = 0 for every u in the TF1 frame and v in the TF2 frame."""
    residuals = [
        (f"g(TF1[{p}], TF2[{q}])", g.value(u, v))
        for p, u in enumerate(vp.tf1.vectors)
        for q, v in enumerate(vp.tf2.vectors)
    ]
    return residual_verdict(
        residuals,
        vp.sample_points,
        tol,
        detail="the characteristic foliations are g-orthogonal",
    )


def killing_check(
    cps: ContactPairStructure, g: MetricField, i: int, tol: float = 0.0
) -> dict[str, Verdict]:
    """Zero-ness of L_{Z_i} g and L_{Z_i} phi.  Defined for associated
    metrics, where the two vanishing statements are equivalent: phi is
    Z_i-invariant exactly when Z_i is a Killing field."""
    report = is_associated(cps, g, tol)
    if not report.ok:
        raise PreconditionError(
            f"killing_check requires an associated metric: {report.verdict.witness}"
        )
    vp = cps.vp
    z = vp.z(i)
    lie_g = lie_derivative(z, g)
    lie_phi = lie_derivative(z, cps.phi)
    return {
        "lie_g_zero": residual_verdict(
            matrix_residual_entries(lie_g.matrix),
            vp.sample_points,
            tol,
            detail=f"L_Z{i} g = 0 (Z{i} is Killing)",
        ),
        "lie_phi_zero": residual_verdict(
            matrix_residual_entries(lie_phi.matrix),
            vp.sample_points,
            tol,
            detail=f"L_Z{i} phi = 0",
        ),
    }


def killing_agreement(results: dict[str, Verdict]) -> Verdict:
    """The two verdicts of :func:`killing_check` must agree (the theorem is an
    equivalence, whatever the common truth value)."""
    a, b = results["lie_g_zero"], results["lie_phi_zero"]
    if a.ok == b.ok:
        value = "both vanish" if a.ok else "both nonzero"
        return Verdict.verified(f"L_Z g and L_Z phi agree ({value})")
    return Verdict.failed(
        f"lie_g_zero={a.status.value}, lie_phi_zero={b.status.value}",
        "the Killing equivalence is violated",
    )


def decomposability_orthogonality_agreement(
    cps: ContactPairStructure, g: MetricField, tol: float = 0.0
) -> Verdict:
    """For an associated metric, phi is decomposable iff the characteristic
    foliations are orthogonal; the two verdicts must match."""
    dec = is_decomposable(cps, tol)
    orth = are_foliations_orthogonal(cps.vp, g, tol)
    if dec.ok == orth.ok:
        value = "both hold" if dec.ok else "both fail"
        return Verdict.verified(f"decomposability ⟺ orthogonality ({value})")
    return Verdict.failed(
        f"decomposable={dec.status.value}, orthogonal={orth.status.value}",
        "the equivalence theorem is violated",
    )


# --- leafwise (restricted) verification ----------------------------------------------


@dataclass(frozen=True)
class LeafContactMetric:
    """Check the contact metric structure induced by (alpha_i, Z_i, phi, g)
    on the leaves tangent to the characteristic frame of alpha_j, j != i."""

    i: int


@dataclass(frozen=True)
class LeafMCP:
    """Check the metric contact pair induced on the leaves of ker d alpha_i
    (type (h, 0) for i = 2, type (0, k) for i = 1)."""

    i: int


def _phi_in_frame_coordinates(
    mcp: MetricContactPair, frame: DistributionFrame, tol: float
) -> list[list[RatFun]]:
    """Solve for the matrix of phi restricted to the frame.  Exact solve for
    tol == 0; least squares at the base sample point otherwise."""
    vp = mcp.vp
    n = vp.dim
    m = frame.size
    matrix = frame.matrix()
    columns = []
    if tol == 0.0:
        for q, v in enumerate(frame.vectors):
            image = mcp.phi.apply(v)
            try:
                sol = solve_linear_exact(matrix, list(image.components))
            except Exception as exc:
                raise PreconditionError(
                    f"frame {frame.label} is not phi-invariant: phi({frame.label}[{q}]) "
                    f"leaves the span ({exc})"
                ) from exc
            columns.append(sol.particular)
        return [[columns[q][p] for q in range(m)] for p in range(m)]
    point = vp.sample_points[0]
    frame_values = _float_matrix(matrix.entries, point)
    cols = []
    for q, v in enumerate(frame.vectors):
        image = mcp.phi.apply(v)
        rhs = np.array([float(c.eval(point)) for c in image.components])
        coeffs, *_ = np.linalg.lstsq(frame_values, rhs, rcond=None)
        reconstruction = frame_values @ coeffs
        if np.max(np.abs(reconstruction - rhs)) > tol:
            raise PreconditionError(
                f"frame {frame.label} is not phi-invariant within {tol:g}"
            )
        cols.append([RatFun.const(n, Fraction(float(c))) for c in coeffs])
    return [[cols[q][p] for q in range(m)] for p in range(m)]


def verify_restricted_contact_metric(
    mcp: MetricContactPair, frame: DistributionFrame, mode, tol: float = 0.0
) -> Verdict:
    """Bundle-level verification of the structures induced on leaves.

    ``LeafContactMetric(i)`` expects the characteristic frame of alpha_j
    (j != i) and checks g(u, phi v) = d alpha_i(u, v), g(u, Z_i) = alpha_i(u)
    and phi^2 u = -u + alpha_i(u) Z_i on frame vectors.  ``LeafMCP(i)``
    expects a frame of ker d alpha_i and checks that the restricted pair is a
    contact pair of the induced type with the restricted metric associated."""
    decomposable = is_decomposable(mcp.cps, tol)
    if not decomposable.ok:
        raise PreconditionError(
            "restriction to the characteristic leaves needs decomposable phi"
        )
    vp = mcp.vp
    g = mcp.g
    points = vp.sample_points

    if isinstance(mode, LeafContactMetric):
        i = mode.i
        alpha = vp.alpha(i)
        dalpha = vp.pair.dalpha(i)
        z = vp.z(i)
        if not frame.contains(z):
            return Verdict.failed(
                f"Z{i} not in span({frame.label})",
                "the Reeb field must be tangent to the leaves",
            )
        _phi_in_frame_coordinates(mcp, frame, tol)  # raises if not invariant
        residuals = []
        for p, u in enumerate(frame.vectors):
            for q, v in enumerate(frame.vectors):
                residuals.append(
                    (
                        f"g({frame.label}[{p}], phi {frame.label}[{q}]) - d alpha{i}",
                        g.value(u, mcp.phi.apply(v)) - dalpha(u, v),
                    )
                )
            residuals.append(
                (f"g({frame.label}[{p}], Z{i}) - alpha{i}", g.value(u, z) - alpha(u))
            )
            square = mcp.phi.apply(mcp.phi.apply(u)) - ((-1) * u + alpha(u) * z)
            residuals.extend(
                (f"(phi^2 + Id - alpha{i}⊗Z{i})({frame.label}[{p}])[{a}]", c)
                for a, c in enumerate(square.components)
            )
        return residual_verdict(
            residuals,
            points,
            tol,
            detail=f"contact metric structure induced by (alpha{i}, Z{i}, phi, g) on {frame.label}",
        )

    if isinstance(mode, LeafMCP):
        i = mode.i
        h_ind, k_ind = (vp.pair.h, 0) if i == 2 else (0, vp.pair.k)
        expected = 2 * h_ind + 2 * k_ind + 2
        if frame.size != expected:
            return Verdict.failed(
                f"frame rank {frame.size} != {expected}",
                f"leaves of ker d alpha{i} have dimension {expected}",
            )
        for l, z in ((1, vp.z1), (2, vp.z2)):
            if not frame.contains(z):
                return Verdict.failed(
                    f"Z{l} not in span({frame.label})",
                    "both Reeb fields are tangent to the leaves of ker d alpha_i",
                )
        phi_rest = _phi_in_frame_coordinates(mcp, frame, tol)

        nvars = vp.dim
        vectors = frame.vectors
        beta = {
            l: FrameForm.one_form([vp.alpha(l)(u) for u in vectors]) for l in (1, 2)
        }
        dpair = {
            l: FrameForm.two_form(
                [[vp.pair.dalpha(l)(u, v) for v in vectors] for u in vectors]
            )
            for l in (1, 2)
        }

        volume = (
            beta[1]
            .wedge(dpair[1].wedge_power(h_ind))
            .wedge(beta[2].wedge(dpair[2].wedge_power(k_ind)))
        )
        verdicts = [
            nonvanishing_verdict(
                volume.top_coefficient(),
                points,
                f"restricted volume coefficient on {frame.label}",
            )
        ]
        for l, power in ((1, h_ind + 1), (2, k_ind + 1)):
            excess = dpair[l].wedge_power(power)
            residuals = [
                (f"(d alpha{l}|{frame.label})^{power} [{idx}]", c)
                for idx, c in excess.coeffs.items()
            ]
            verdicts.append(residual_verdict(residuals, points, tol))

        m = frame.size
        associated_residuals = []
        for p in range(m):
            for q in range(m):
                lhs = vp.space.zero()
                for r in range(m):
                    lhs = lhs + g.value(vectors[p], vectors[r]) * phi_rest[r][q]
                rhs = (vp.pair.dalpha(1) + vp.pair.dalpha(2))(vectors[p], vectors[q])
                associated_residuals.append(
                    (f"(G phi - d alpha)|{frame.label} ({p},{q})", lhs - rhs)
                )
        for l, z in ((1, vp.z1), (2, vp.z2)):
            associated_residuals.extend(
                (
                    f"g({frame.label}[{p}], Z{l}) - alpha{l}",
                    g.value(u, z) - vp.alpha(l)(u),
                )
                for p, u in enumerate(vectors)
            )
        verdicts.append(
            residual_verdict(
                associated_residuals,
                points,
                tol,
                detail="restricted metric is associated to the restricted pair",
            )
        )

        status = combine_status(verdicts)
        if status is Status.FAILED:
            first = next(v for v in verdicts if not v.ok)
            return Verdict(status, first.detail, witness=first.witness)
        detail = f"metric contact pair of type ({h_ind}, {k_ind}) induced on {frame.label}"
        pts = max(v.points_checked for v in verdicts)
        return Verdict(status, detail, points_checked=pts)

    raise TypeError(f"unknown restriction mode {mode!r}")
