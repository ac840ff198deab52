"""Structure identities, decomposability, and the extension builder."""

import pytest

from contactpairs.algebra import RatFun, RfMatrix
from contactpairs.exterior import EndoField, VectorField
from contactpairs.pair import ContactPair, DistributionFrame, Status, verified_pair
from contactpairs.structure import (
    ContactPairStructure,
    PreconditionError,
    StructureValidationError,
    SubbundleComplexStructure,
    build_phi,
    is_decomposable,
    verify_induced_almost_contact,
    verify_structure,
)

from conftest import (
    LOCAL_MODEL_SAMPLES,
    NILPOTENT_SAMPLES,
    R6_SAMPLES,
    build_local_model_forms,
    build_local_model_phi,
    build_local_model_space,
    build_nilpotent_forms,
    build_nilpotent_phi,
    build_nilpotent_space,
    build_r6_forms,
    build_r6_phi,
    build_r6_space,
)


@pytest.fixture(scope="module")
def r6():
    s = build_r6_space()
    a1, a2 = build_r6_forms(s)
    vp = verified_pair(ContactPair(s, a1, a2, 1, 1, tuple(R6_SAMPLES)))
    return vp, build_r6_phi(s)


@pytest.fixture(scope="module")
def nilpotent():
    s = build_nilpotent_space()
    a1, a2 = build_nilpotent_forms(s)
    vp = verified_pair(ContactPair(s, a1, a2, 1, 1, tuple(NILPOTENT_SAMPLES)))
    return vp, build_nilpotent_phi(s)


@pytest.fixture(scope="module")
def local_model():
    s = build_local_model_space()
    a1, a2 = build_local_model_forms(s)
    vp = verified_pair(ContactPair(s, a1, a2, 1, 1, tuple(LOCAL_MODEL_SAMPLES)))
    return vp, build_local_model_phi(s)


def test_r6_structure_verified(r6):
    vp, phi = r6
    verdicts = verify_structure(vp, phi)
    assert all(v.status is Status.VERIFIED for v in verdicts.values()), verdicts


def test_nilpotent_structure_verified(nilpotent):
    vp, phi = nilpotent
    verdicts = verify_structure(vp, phi)
    assert all(v.status is Status.VERIFIED for v in verdicts.values())


def test_local_model_structure_verified(local_model):
    vp, phi = local_model
    verdicts = verify_structure(vp, phi)
    assert all(v.status is Status.VERIFIED for v in verdicts.values())


def test_reeb_twist_satisfies_first_identity_only(nilpotent):
    """phi(Z1) = -phi(Z2) = Z1 + Z2 satisfies the squared identity but not
    the vanishing one."""
    vp, phi = nilpotent
    mat = [list(row) for row in phi.matrix.entries]
    # columns of Z1 = X2 (index 1) and Z2 = X3 (index 2)
    mat[1][1] = vp.space.one()
    mat[2][1] = vp.space.one()
    mat[1][2] = -vp.space.one()
    mat[2][2] = -vp.space.one()
    twisted = EndoField(vp.space, mat)
    verdicts = verify_structure(vp, twisted)
    assert verdicts["phi_squared"].status is Status.VERIFIED
    assert verdicts["phi_reeb"].status is Status.FAILED


def test_zero_endomorphism_fails_squared_identity(r6):
    vp, _ = r6
    verdicts = verify_structure(vp, EndoField.zero_field(vp.space))
    assert verdicts["phi_squared"].status is Status.FAILED
    assert verdicts["rank"].status is Status.FAILED


def test_structure_constructor_enforces_identities(r6):
    vp, phi = r6
    ContactPairStructure(vp, phi)  # fine
    with pytest.raises(StructureValidationError):
        ContactPairStructure(vp, EndoField.zero_field(vp.space))


def test_r6_not_decomposable(r6):
    vp, phi = r6
    verdict = is_decomposable(ContactPairStructure(vp, phi))
    assert verdict.status is Status.FAILED
    assert verdict.witness is not None


def test_nilpotent_decomposable(nilpotent):
    vp, phi = nilpotent
    assert is_decomposable(ContactPairStructure(vp, phi)).status is Status.VERIFIED


def test_local_model_decomposable(local_model):
    vp, phi = local_model
    assert is_decomposable(ContactPairStructure(vp, phi)).status is Status.VERIFIED


def test_decomposable_preserves_tg_spans(nilpotent, local_model):
    for vp, phi in (nilpotent, local_model):
        for i in (1, 2):
            tg = vp.tg(i)
            for v in tg.vectors:
                assert tg.contains(EndoField.apply(phi, v))


# --- build_phi -------------------------------------------------------------------


def block_complex_structure(vp):
    """Block-diagonal J on the frame [TG1 | TG2]: rotation in each block."""
    frame = DistributionFrame(
        vp.space, vp.tg1.vectors + vp.tg2.vectors, "TG1+TG2"
    )
    m = frame.size
    nvars = vp.dim
    mat = [[RatFun.zero(nvars) for _ in range(m)] for _ in range(m)]
    offset = 0
    for tg in (vp.tg1, vp.tg2):
        for p in range(0, tg.size, 2):
            a, b = offset + p, offset + p + 1
            mat[b][a] = RatFun.one(nvars)
            mat[a][b] = -RatFun.one(nvars)
        offset += tg.size
    return SubbundleComplexStructure(frame, RfMatrix(nvars, mat))


def test_build_phi_local_model(local_model):
    vp, _ = local_model
    phi = build_phi(vp, block_complex_structure(vp))
    verdicts = verify_structure(vp, phi)
    assert all(v.status is Status.VERIFIED for v in verdicts.values())
    cps = ContactPairStructure(vp, phi)
    assert is_decomposable(cps).status is Status.VERIFIED


def test_build_phi_nilpotent_reproduces_reference(nilpotent):
    """J(X1) = -X4, J(X5) = -X6 on [TG1 | TG2] extends to the reference phi."""
    vp, phi_ref = nilpotent
    phi = build_phi(vp, block_complex_structure(vp))
    # TG frames come out of the kernel solver as ±basis vectors, so the
    # extension can differ from the reference by the block orientation; the
    # squared identity and decomposability pin it down to that ambiguity.
    assert is_decomposable(ContactPairStructure(vp, phi)).status is Status.VERIFIED
    for col in range(6):
        for row in range(6):
            got = phi.matrix.at(row, col)
            want = phi_ref.matrix.at(row, col)
            assert got == want or got == -want


def test_build_phi_cross_block_is_not_decomposable(local_model):
    """A J that swaps TG1 and TG2 satisfies the structure identities but
    mixes the characteristic subbundles."""
    vp, _ = local_model
    frame = DistributionFrame(vp.space, vp.tg1.vectors + vp.tg2.vectors, "TG1+TG2")
    m = frame.size
    nvars = vp.dim
    mat = [[RatFun.zero(nvars) for _ in range(m)] for _ in range(m)]
    half = m // 2
    for p in range(half):
        mat[half + p][p] = RatFun.one(nvars)
        mat[p][half + p] = -RatFun.one(nvars)
    phi = build_phi(vp, SubbundleComplexStructure(frame, RfMatrix(nvars, mat)))
    verdicts = verify_structure(vp, phi)
    assert all(v.status is Status.VERIFIED for v in verdicts.values())
    assert is_decomposable(ContactPairStructure(vp, phi)).status is Status.FAILED


def test_build_phi_rejects_bad_j(local_model):
    vp, _ = local_model
    frame = DistributionFrame(vp.space, vp.tg1.vectors + vp.tg2.vectors, "TG1+TG2")
    with pytest.raises(StructureValidationError):
        SubbundleComplexStructure(frame, RfMatrix.identity(frame.size, vp.dim))


def test_build_phi_rejects_non_spanning_frame(local_model):
    vp, _ = local_model
    # a frame inside TF1 only: right size after padding is impossible, so
    # take TG1 ∪ TG1-rotated; spans only half of TG1 ⊕ TG2
    s = vp.space
    bad_vectors = vp.tg1.vectors + tuple(
        VectorField(s, [c for c in v.components]) * s.scalar(2) for v in vp.tg1.vectors
    )
    with pytest.raises(Exception):
        frame = DistributionFrame(s, bad_vectors, "bad")  # rank check fires here
        build_phi(vp, SubbundleComplexStructure(frame, RfMatrix.identity(4, 6)))


# --- induced almost contact structures -----------------------------------------------


def test_induced_almost_contact_nilpotent(nilpotent):
    vp, phi = nilpotent
    cps = ContactPairStructure(vp, phi)
    v1 = verify_induced_almost_contact(cps, vp.tf2, 1)
    assert v1.status is Status.VERIFIED
    v2 = verify_induced_almost_contact(cps, vp.tf1, 2)
    assert v2.status is Status.VERIFIED


def test_induced_almost_contact_requires_decomposable(r6):
    vp, phi = r6
    cps = ContactPairStructure(vp, phi)
    with pytest.raises(PreconditionError):
        verify_induced_almost_contact(cps, vp.tf2, 1)


def test_induced_identity_trivial_on_reeb(nilpotent):
    """For v = Z_i the identity collapses to 0 = -Z_i + Z_i."""
    vp, phi = nilpotent
    image = phi.apply(phi.apply(vp.z1))
    target = (-1) * vp.z1 + vp.alpha(1)(vp.z1) * vp.z1
    assert (image - target).is_zero()
