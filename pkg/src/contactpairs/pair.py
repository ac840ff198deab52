"""Contact pairs: defining conditions, Reeb fields, distribution frames,
and the tangent-bundle splittings they induce.

A pair of one-forms (alpha1, alpha2) of type (h, k) on an n-manifold with
n = 2h + 2k + 2 must satisfy: alpha1 ∧ (d alpha1)^h ∧ alpha2 ∧ (d alpha2)^k
is a volume form, and the (h+1)-st and (k+1)-st wedge powers of d alpha1 and
d alpha2 vanish.  The Reeb fields are the unique pair (Z1, Z2) with
alpha_i(Z_j) = delta_ij and i_{Z_j} d alpha_i = 0; they commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import (
    InconsistentSystemError,
    RatFun,
    RfMatrix,
    generic_rank,
    kernel_basis,
    solve_linear_exact,
)
from .exterior import Form, Space, VectorField, bracket, ext_d
from .verdicts import Status, Verdict, nonvanishing_verdict

__all__ = [
    "ContactPair",
    "VerifiedPair",
    "DistributionFrame",
    "Verdict",
    "Status",
    "PairValidationError",
    "ReebSolveError",
    "FrameRankError",
    "verify_contact_pair",
    "reeb_fields",
    "characteristic_frame",
    "g_frame",
    "kernel_frame",
    "verified_pair",
    "verify_splittings",
]


class PairValidationError(ValueError):
    """The defining conditions of a contact pair do not hold."""


class ReebSolveError(RuntimeError):
    """The Reeb system is inconsistent or has a non-unique solution."""


class FrameRankError(RuntimeError):
    """A distribution frame does not have the rank the pair type dictates."""


def one_form_row(form: Form) -> tuple[RatFun, ...]:
    """Coefficient row a_b = alpha(e_b)."""
    return tuple(form.coefficient((b,)) for b in range(form.space.dim))


def two_form_matrix(form: Form) -> RfMatrix:
    """Antisymmetric value table M[a][b] = omega(e_a, e_b)."""
    space = form.space
    n = space.dim
    zero = space.zero()
    mat = [[zero for _ in range(n)] for _ in range(n)]
    for (a, b), c in form.coeffs.items():
        mat[a][b] = c
        mat[b][a] = -c
    return RfMatrix(n, mat)


@dataclass(frozen=True)
class ContactPair:
    """Candidate contact pair of type (h, k) with mandatory sample points."""

    space: Space
    alpha1: Form
    alpha2: Form
    h: int
    k: int
    sample_points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = self.space.dim
        if 2 * self.h + 2 * self.k + 2 != n:
            raise PairValidationError(
                f"type ({self.h}, {self.k}) requires dimension {2*self.h + 2*self.k + 2}, "
                f"space has {n}"
            )
        for name, form in (("alpha1", self.alpha1), ("alpha2", self.alpha2)):
            if form.space != self.space:
                raise PairValidationError(f"{name} lives on a different space")
            if form.degree != 1:
                raise PairValidationError(f"{name} must be a 1-form, got degree {form.degree}")
        if not self.sample_points:
            raise PairValidationError("at least one sample point is required")
        object.__setattr__(
            self,
            "sample_points",
            tuple(tuple(Fraction(x) for x in p) for p in self.sample_points),
        )
        for p in self.sample_points:
            if len(p) != n:
                raise PairValidationError(f"sample point {p} has length {len(p)}, expected {n}")

    @property
    def dim(self) -> int:
        return self.space.dim

    def alpha(self, i: int) -> Form:
        return self.alpha1 if i == 1 else self.alpha2

    def dalpha(self, i: int) -> Form:
        return ext_d(self.alpha(i))

    def degree_of(self, i: int) -> int:
        """The wedge exponent attached to d alpha_i by the pair type."""
        return self.h if i == 1 else self.k


def verify_contact_pair(pair: ContactPair) -> dict[str, Verdict]:
    """Check the three defining conditions.

    The two vanishing conditions are exact.  The volume condition is graded:
    a nonzero constant top coefficient is Verified, a non-constant coefficient
    that survives all sample points is only SampleVerified (global positivity
    of a non-constant polynomial is not decidable here), anything else Failed.
    """
    da1, da2 = pair.dalpha(1), pair.dalpha(2)

    vol = pair.alpha1.wedge(da1.wedge_power(pair.h)).wedge(
        pair.alpha2.wedge(da2.wedge_power(pair.k))
    )
    coeff = vol.coefficient(tuple(range(pair.dim)))
    volume = nonvanishing_verdict(
        coeff,
        pair.sample_points,
        "volume coefficient",
        constant_detail=f"constant volume coefficient {coeff.num}",
    )

    out = {"volume_form": volume}
    for i, da in ((1, da1), (2, da2)):
        power = pair.degree_of(i) + 1
        excess = da.wedge_power(power)
        if excess.is_zero():
            out[f"dalpha{i}_power_zero"] = Verdict.verified(
                f"(d alpha{i})^{power} = 0"
            )
        else:
            idx, c = next(iter(excess.coeffs.items()))
            out[f"dalpha{i}_power_zero"] = Verdict.failed(
                f"(d alpha{i})^{power} has coefficient {c} on {idx}"
            )
    return out


def _reeb_system(pair: ContactPair) -> RfMatrix:
    rows = [list(one_form_row(pair.alpha1)), list(one_form_row(pair.alpha2))]
    for i in (1, 2):
        m = two_form_matrix(pair.dalpha(i))
        # (i_Z d alpha)(e_b) = sum_a d alpha(e_a, e_b) Z^a : row b is column b of m
        for b in range(pair.dim):
            rows.append([m.at(a, b) for a in range(pair.dim)])
    return RfMatrix(pair.dim, rows)


def reeb_fields(pair: ContactPair) -> tuple[VectorField, VectorField]:
    """Solve the Reeb equations exactly and post-verify every identity.

    Raises :class:`ReebSolveError` when the linear system is inconsistent or
    has a non-trivial kernel over the function field, or when the solved
    fields fail any defining identity (which signals the pair conditions fail
    away from the sample set).
    """
    system = _reeb_system(pair)
    n = pair.dim
    fields = []
    for j in (1, 2):
        rhs = [0] * (2 * n + 2)
        rhs[j - 1] = 1
        try:
            sol = solve_linear_exact(system, rhs)
        except InconsistentSystemError as exc:
            raise ReebSolveError(f"Reeb system for Z{j} is inconsistent: {exc}") from exc
        if sol.kernel:
            raise ReebSolveError(
                f"Reeb system for Z{j} has a {len(sol.kernel)}-dimensional kernel; "
                "the Reeb field is not unique"
            )
        fields.append(VectorField(pair.space, sol.particular))
    z1, z2 = fields

    for i in (1, 2):
        for j, z in ((1, z1), (2, z2)):
            value = pair.alpha(i)(z)
            expected = pair.space.one() if i == j else pair.space.zero()
            if value != expected:
                raise ReebSolveError(f"alpha{i}(Z{j}) = {value}, expected {int(i == j)}")
            contraction = pair.dalpha(i).contract(z)
            if not contraction.is_zero():
                raise ReebSolveError(f"i_Z{j} d alpha{i} = {contraction} is nonzero")
    commutator = bracket(z1, z2)
    if not commutator.is_zero():
        raise ReebSolveError(f"[Z1, Z2] = {commutator} is nonzero")
    return z1, z2


@dataclass(frozen=True)
class DistributionFrame:
    """A generically independent list of polynomial vector fields."""

    space: Space
    vectors: tuple[VectorField, ...]
    label: str = "custom"

    def __post_init__(self):
        for v in self.vectors:
            if v.space != self.space:
                raise ValueError("frame vector on a different space")
        if self.vectors and self.rank() != len(self.vectors):
            raise FrameRankError(
                f"frame {self.label}: {len(self.vectors)} vectors have generic rank {self.rank()}"
            )

    @property
    def size(self) -> int:
        return len(self.vectors)

    def matrix(self) -> RfMatrix:
        """n x size matrix whose columns are the frame vectors."""
        n = self.space.dim
        return RfMatrix(
            n, [[v.components[i] for v in self.vectors] for i in range(n)]
        )

    def rank(self) -> int:
        if not self.vectors:
            return 0
        return generic_rank(self.matrix())

    def contains(self, field: VectorField) -> bool:
        """Generic membership: adjoining the field must not raise the rank."""
        if field.is_zero():
            return True
        if not self.vectors:
            return False
        n = self.space.dim
        extended = RfMatrix(
            n,
            [
                [v.components[i] for v in self.vectors] + [field.components[i]]
                for i in range(n)
            ],
        )
        return generic_rank(extended) == self.size


def _kernel_frame_from_rows(
    space: Space, rows: list[Sequence[RatFun]], label: str
) -> DistributionFrame:
    basis = kernel_basis(RfMatrix(space.dim, rows))
    vectors = tuple(VectorField(space, [RatFun(p) for p in vec]) for vec in basis)
    return DistributionFrame(space, vectors, label)


def characteristic_frame(pair: ContactPair, which: int) -> DistributionFrame:
    """Frame of ker alpha_i ∩ ker d alpha_i (tangent to the characteristic
    foliation of alpha_i).  Rank must be 2k+1 for which=1, 2h+1 for which=2."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    m = two_form_matrix(pair.dalpha(which))
    rows: list[Sequence[RatFun]] = [one_form_row(pair.alpha(which))]
    rows.extend([m.at(a, b) for a in range(pair.dim)] for b in range(pair.dim))
    frame = _kernel_frame_from_rows(pair.space, rows, f"TF{which}")
    expected = 2 * pair.k + 1 if which == 1 else 2 * pair.h + 1
    if frame.size != expected:
        raise FrameRankError(
            f"TF{which} has rank {frame.size}, expected {expected}; input is degenerate"
        )
    return frame


def g_frame(pair: ContactPair, i: int) -> DistributionFrame:
    """Frame of ker d alpha_i ∩ ker alpha1 ∩ ker alpha2.  Rank 2k for i=1,
    2h for i=2."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    m = two_form_matrix(pair.dalpha(i))
    rows: list[Sequence[RatFun]] = [[m.at(a, b) for a in range(pair.dim)] for b in range(pair.dim)]
    rows.append(one_form_row(pair.alpha1))
    rows.append(one_form_row(pair.alpha2))
    frame = _kernel_frame_from_rows(pair.space, rows, f"TG{i}")
    expected = 2 * pair.k if i == 1 else 2 * pair.h
    if frame.size != expected:
        raise FrameRankError(
            f"TG{i} has rank {frame.size}, expected {expected}; input is degenerate"
        )
    return frame


def kernel_frame(pair: ContactPair, i: int) -> DistributionFrame:
    """Frame of ker d alpha_i (the characteristic foliation of d alpha_i)."""
    if i not in (1, 2):
        raise ValueError("i must be 1 or 2")
    m = two_form_matrix(pair.dalpha(i))
    rows = [[m.at(a, b) for a in range(pair.dim)] for b in range(pair.dim)]
    frame = _kernel_frame_from_rows(pair.space, rows, f"KerDAlpha{i}")
    expected = pair.dim - (2 * pair.h if i == 1 else 2 * pair.k)
    if frame.size != expected:
        raise FrameRankError(
            f"ker d alpha{i} has rank {frame.size}, expected {expected}"
        )
    return frame


@dataclass(frozen=True)
class VerifiedPair:
    """A contact pair together with its solved Reeb fields and frames."""

    pair: ContactPair
    z1: VectorField
    z2: VectorField
    tf1: DistributionFrame
    tf2: DistributionFrame
    tg1: DistributionFrame
    tg2: DistributionFrame

    @property
    def space(self) -> Space:
        return self.pair.space

    @property
    def dim(self) -> int:
        return self.pair.dim

    @property
    def sample_points(self):
        return self.pair.sample_points

    def z(self, i: int) -> VectorField:
        return self.z1 if i == 1 else self.z2

    def tf(self, i: int) -> DistributionFrame:
        return self.tf1 if i == 1 else self.tf2

    def tg(self, i: int) -> DistributionFrame:
        return self.tg1 if i == 1 else self.tg2

    def alpha(self, i: int) -> Form:
        return self.pair.alpha(i)

    def alpha_row(self, i: int) -> tuple[RatFun, ...]:
        return one_form_row(self.pair.alpha(i))


def verified_pair(pair: ContactPair) -> VerifiedPair:
    """Run the axiom checks, solve the Reeb system, and build all frames.

    Raises :class:`PairValidationError` when any defining condition Fails
    (SampleVerified volume coefficients are accepted)."""
    verdicts = verify_contact_pair(pair)
    for name, verdict in verdicts.items():
        if not verdict.ok:
            raise PairValidationError(f"{name}: {verdict.witness or verdict.detail}")
    z1, z2 = reeb_fields(pair)
    return VerifiedPair(
        pair,
        z1,
        z2,
        characteristic_frame(pair, 1),
        characteristic_frame(pair, 2),
        g_frame(pair, 1),
        g_frame(pair, 2),
    )


def verify_splittings(vp: VerifiedPair) -> Verdict:
    """TM = TF1 ⊕ TF2 and TF_i = TG_i ⊕ R·Z_j (j != i), generically,
    by rank and membership checks on the frames."""
    n = vp.dim
    combined = RfMatrix(
        n,
        [
            [v.components[i] for v in vp.tf1.vectors + vp.tf2.vectors]
            for i in range(n)
        ],
    )
    if generic_rank(combined) != n:
        return Verdict.failed(
            f"rank(TF1 ∪ TF2) = {generic_rank(combined)} != {n}",
            "TF1 ⊕ TF2 does not span the tangent bundle",
        )
    for i in (1, 2):
        j = 2 if i == 1 else 1
        tf, tg, z = vp.tf(i), vp.tg(i), vp.z(j)
        direct_sum = RfMatrix(
            n,
            [
                [v.components[a] for v in tg.vectors + (z,)]
                for a in range(n)
            ],
        )
        if generic_rank(direct_sum) != tf.size:
            return Verdict.failed(
                f"rank(TG{i} + Z{j}) = {generic_rank(direct_sum)} != rank(TF{i}) = {tf.size}"
            )
        everything = RfMatrix(
            n,
            [
                [v.components[a] for v in tf.vectors + tg.vectors + (z,)]
                for a in range(n)
            ],
        )
        if generic_rank(everything) != tf.size:
            return Verdict.failed(
                f"TG{i} ⊕ R·Z{j} and TF{i} span different subbundles"
            )
    return Verdict.verified(
        f"rank(TF1) + rank(TF2) = {vp.tf1.size} + {vp.tf2.size} = {n}"
    )
