"""Shared builders: the three reference geometries and random-input helpers."""

import random
from fractions import Fraction

import pytest

from contactpairs.algebra import Poly, RatFun, RfMatrix
from contactpairs.exterior import EndoField, Form, MetricField, Space, VectorField


# --- product-of-two-contact-manifolds chart on R^6 ---------------------------
# coordinates (x1, y1, x2, y2, z1, z2), one-forms dz_i - x_i dy_i


def build_r6_space():
    return Space.chart(["x1", "y1", "x2", "y2", "z1", "z2"])


def build_r6_forms(space):
    x1 = space.coordinate(0)
    x2 = space.coordinate(2)
    alpha1 = Form(space, 1, {(4,): 1, (1,): -x1})
    alpha2 = Form(space, 1, {(5,): 1, (3,): -x2})
    return alpha1, alpha2


def build_r6_phi(space):
    x1 = space.coordinate(0)
    x2 = space.coordinate(2)
    zero = space.zero()
    one = space.one()
    cols = {
        0: {2: one},                    # ∂x1 -> ∂x2
        1: {3: one, 5: x2},             # ∂y1 -> ∂y2 + x2 ∂z2
        2: {0: -one},                   # ∂x2 -> -∂x1
        3: {1: -one, 4: -x1},           # ∂y2 -> -∂y1 - x1 ∂z1
    }
    mat = [[zero for _ in range(6)] for _ in range(6)]
    for col, entries in cols.items():
        for row, value in entries.items():
            mat[row][col] = value
    return EndoField(space, mat)


def build_r6_metric(space):
    """sum_i (dx_i^2 + dy_i^2 + alpha_i^2); compatible but not associated."""
    x1 = space.coordinate(0)
    x2 = space.coordinate(2)
    zero = space.zero()
    one = space.one()
    g = [[zero for _ in range(6)] for _ in range(6)]
    for i in range(6):
        g[i][i] = one
    g[1][1] = one + x1 * x1
    g[3][3] = one + x2 * x2
    g[1][4] = g[4][1] = -x1
    g[3][5] = g[5][3] = -x2
    return MetricField(space, g)


R6_SAMPLES = [
    tuple(Fraction(0) for _ in range(6)),
    (Fraction(1), Fraction(1, 2), Fraction(-1), Fraction(1, 3), Fraction(2), Fraction(-2)),
]


# --- six-dimensional nilpotent Lie frame --------------------------------------
# d w1 = d w6 = 0, d w2 = w5^w6, d w3 = w1^w4, d w4 = w1^w5, d w5 = w1^w6


def build_nilpotent_space():
    return Space.lie_frame(
        ["w1", "w2", "w3", "w4", "w5", "w6"],
        differentials={
            1: [(4, 5, Fraction(1))],
            2: [(0, 3, Fraction(1))],
            3: [(0, 4, Fraction(1))],
            4: [(0, 5, Fraction(1))],
        },
    )


def build_nilpotent_forms(space):
    alpha1 = Form(space, 1, {(1,): 1})  # w2
    alpha2 = Form(space, 1, {(2,): 1})  # w3
    return alpha1, alpha2


def build_nilpotent_phi(space):
    zero = space.zero()
    one = space.one()
    mat = [[zero for _ in range(6)] for _ in range(6)]
    mat[3][0] = -one  # X1 -> -X4
    mat[0][3] = one   # X4 -> X1
    mat[5][4] = -one  # X5 -> -X6
    mat[4][5] = one   # X6 -> X5
    return EndoField(space, mat)


def build_nilpotent_metric(space):
    return MetricField.euclidean(space)


NILPOTENT_SAMPLES = [tuple(Fraction(0) for _ in range(6))]


# --- standard local model of type (1,1) --------------------------------------
# coordinates (x1, x2, x3, y1, y2, y3), alpha1 = dx3 + x1 dx2, alpha2 = dy3 + y1 dy2


def build_local_model_space():
    return Space.chart(["x1", "x2", "x3", "y1", "y2", "y3"])


def build_local_model_forms(space):
    x1 = space.coordinate(0)
    y1 = space.coordinate(3)
    alpha1 = Form(space, 1, {(2,): 1, (1,): x1})
    alpha2 = Form(space, 1, {(5,): 1, (4,): y1})
    return alpha1, alpha2


def build_local_model_phi(space):
    x1 = space.coordinate(0)
    y1 = space.coordinate(3)
    zero = space.zero()
    one = space.one()
    mat = [[zero for _ in range(6)] for _ in range(6)]
    # block rotation on span{∂x1, ∂x2 - x1 ∂x3} extended by zero on the Reeb fields
    mat[1][0] = one
    mat[2][0] = -x1
    mat[0][1] = -one
    mat[4][3] = one
    mat[5][3] = -y1
    mat[3][4] = -one
    return EndoField(space, mat)


LOCAL_MODEL_SAMPLES = [
    tuple(Fraction(0) for _ in range(6)),
    (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(1, 3), Fraction(-1)),
]


# --- flat type (0,0) pair on R^2 ----------------------------------------------


def build_flat2_space():
    return Space.chart(["x", "y"])


def build_flat2_forms(space):
    return Form(space, 1, {(0,): 1}), Form(space, 1, {(1,): 1})


FLAT2_SAMPLES = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(-2))]


# --- twisted type (0,1) pair on R^4 with rational Reeb field -------------------
# alpha1 = dx, alpha2 = dz + x*y*dw; volume coefficient -x vanishes on {x = 0}


def build_twisted_space():
    return Space.chart(["x", "y", "z", "w"])


def build_twisted_forms(space):
    x = space.coordinate(0)
    y = space.coordinate(1)
    alpha1 = Form(space, 1, {(0,): 1})
    alpha2 = Form(space, 1, {(2,): 1, (3,): x * y})
    return alpha1, alpha2


TWISTED_SAMPLES = [
    (Fraction(1), Fraction(1), Fraction(0), Fraction(0)),
    (Fraction(2), Fraction(-1), Fraction(1, 2), Fraction(3)),
]


# --- random-input helpers ------------------------------------------------------


def random_poly(rng, nvars, max_degree=2, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-3, 3))
    return Poly(nvars, terms)


def random_ratfun(rng, nvars, **kw):
    return RatFun(random_poly(rng, nvars, **kw))


def random_form(rng, space, degree, max_terms=2):
    from itertools import combinations

    indices = list(combinations(range(space.dim), degree))
    coeffs = {}
    for idx in rng.sample(indices, min(max_terms, len(indices))):
        coeffs[idx] = random_ratfun(rng, space.dim)
    return Form(space, degree, coeffs)


def random_vector_field(rng, space):
    return VectorField(space, [random_ratfun(rng, space.dim) for _ in range(space.dim)])


def random_spd_matrix(rng, n, nvars):
    """Constant symmetric positive definite matrix with rational entries."""
    lower = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    g = [[sum(lower[k][i] * lower[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    for i in range(n):
        g[i][i] += 1
    return RfMatrix(nvars, g)


# --- pytest fixtures -----------------------------------------------------------


@pytest.fixture
def rng():
    return random.Random(20240913)


@pytest.fixture
def r6_space():
    return build_r6_space()


@pytest.fixture
def nilpotent_space():
    return build_nilpotent_space()


@pytest.fixture
def local_model_space():
    return build_local_model_space()
