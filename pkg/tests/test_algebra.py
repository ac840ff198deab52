"""Exact-arithmetic core: polynomials, rational functions, linear algebra."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contactpairs.algebra import (
    ExactDivisionError,
    InconsistentSystemError,
    Poly,
    RatFun,
    RfMatrix,
    divexact,
    generic_rank,
    kernel_basis,
    poly_gcd,
    solve_linear_exact,
)


def P(nvars, terms):
    return Poly(nvars, {tuple(e): Fraction(c) for e, c in terms.items()})


def rf(num, den=None):
    return RatFun(num, den)


X = Poly.variable(2, 0)
Y = Poly.variable(2, 1)


# --- polynomial basics -------------------------------------------------------


def test_zero_coefficients_are_dropped():
    p = P(2, {(1, 0): 1, (0, 1): 0})
    assert p == X
    assert (X - X).is_zero()


def test_poly_eval_and_diff():
    p = X * X * Y + 2 * Y + 3
    assert p.eval([Fraction(2), Fraction(-1)]) == 4 * -1 + -2 + 3
    assert p.diff(0) == 2 * X * Y
    assert p.diff(1) == X * X + 2


def test_leading_term_is_grlex():
    p = X**2 + X * Y**2 + Y
    exps, coeff = p.leading()
    assert exps == (1, 2) and coeff == 1  # degree 3 beats degree 2


def test_format_round_idempotent():
    p = X**2 * Y - Fraction(1, 2) * Y + 3
    assert str(p) == "x1^2*x2 - 1/2*x2 + 3"


coeffs = st.integers(min_value=-4, max_value=4).map(Fraction)
exponents = st.tuples(st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(exponents, coeffs, max_size=4).map(lambda t: Poly(2, t))


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
    else:
        for p in (a, b):
            if not p.is_zero():
                divexact(p * Poly.const(2, _den_scale(p)), g)  # must not raise


def _den_scale(p):
    scale = 1
    for c in p.terms.values():
        scale = scale * c.denominator // __import__("math").gcd(scale, c.denominator)
    return scale


def test_gcd_known_values():
    assert poly_gcd(X**2 - 1, X**2 + 2 * X + 1) == X + 1
    assert poly_gcd(X * Y, Y * Y) == Y
    assert poly_gcd(2 * X, Poly.const(2, 4)) == Poly.const(2, 2)
    assert poly_gcd(Poly.zero(2), 3 * X) == 3 * X


def test_gcd_three_variable_stress():
    """Common factors must always cancel: gcd(a*g, b*g) is divisible by g,
    symmetric up to normalization, and RatFun((a*g)/(b*g)) == RatFun(a/b)."""
    rng = random.Random(424242)

    def rand_poly(nvars=3, terms=3, degree=2):
        out = {}
        for _ in range(rng.randint(1, terms)):
            exps = [0] * nvars
            for _ in range(rng.randint(0, degree)):
                exps[rng.randrange(nvars)] += 1
            out[tuple(exps)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return Poly(nvars, out)

    from contactpairs.algebra import divexact

    checked = 0
    for _ in range(150):
        a, b, g = rand_poly(), rand_poly(), rand_poly()
        if a.is_zero() or b.is_zero() or g.is_zero():
            continue
        common = poly_gcd(a * g, b * g)
        divexact(common, poly_gcd(g, g))  # g (primitive) divides the gcd
        assert poly_gcd(a * g, b * g) == poly_gcd(b * g, a * g)
        assert RatFun(a * g, b * g) == RatFun(a, b)
        checked += 1
    assert checked > 100


def test_divexact_rejects_non_divisor():
    with pytest.raises(ExactDivisionError):
        divexact(X + 1, Y)


# --- rational functions ------------------------------------------------------


def test_ratfun_cancellation():
    a = rf(X * X - Y * Y, X - Y)  # (x-y)(x+y)/(x-y)
    assert a == rf(X + Y)
    assert a.is_polynomial()


def test_ratfun_monic_denominator():
    a = rf(X, 2 * Y + 2)
    assert a.den == Y + 1
    assert a.num == Fraction(1, 2) * X


def test_ratfun_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        rf(X, Poly.zero(2))
    with pytest.raises(ZeroDivisionError):
        rf(X) / rf(Poly.zero(2))


def test_ratfun_eval_reports_pole():
    a = rf(Poly.const(2, 1), X)
    with pytest.raises(ZeroDivisionError):
        a.eval([0, 5])
    assert a.eval([2, 0]) == Fraction(1, 2)


def test_ratfun_diff_quotient_rule():
    f = rf(X, Y)
    assert f.diff(1) == rf(-X, Y * Y)
    assert f.diff(0) == rf(Poly.const(2, 1), Y)


ratfuns = st.tuples(polys, polys).map(
    lambda t: RatFun(t[0], t[1]) if not t[1].is_zero() else RatFun(t[0])
)


@settings(max_examples=100, deadline=None)
@given(ratfuns, ratfuns, ratfuns)
def test_ratfun_field_laws(a, b, c):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    if not c.is_zero():
        assert (a * c) / c == a


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ratfun_cancellation_is_canonical(p, q, r):
    if q.is_zero() or r.is_zero():
        return
    assert RatFun(p * r, q * r) == RatFun(p, q)


# --- linear algebra ----------------------------------------------------------


def test_solve_identity():
    a = RfMatrix.identity(2, 2)
    sol = solve_linear_exact(a, [1, 0])
    assert sol.particular == (RatFun.one(2), RatFun.zero(2))
    assert sol.kernel == ()


def test_solve_underdetermined_kernel():
    a = RfMatrix(2, [[1, RatFun.variable(2, 0)]])
    sol = solve_linear_exact(a, [0])
    assert len(sol.kernel) == 1
    v = sol.kernel[0]
    # substitute back: 1*v0 + x*v1 = 0 identically
    assert (v[0] + RatFun.variable(2, 0) * v[1]).is_zero()


def test_solve_inconsistent():
    a = RfMatrix(1, [[1], [1]])
    with pytest.raises(InconsistentSystemError):
        solve_linear_exact(a, [0, 1])


def test_solve_six_dim_reeb_system():
    """Full-rank 6x6 cut of the Reeb equations for the product-of-contact-
    structures chart (coordinates x1, y1, x2, y2, z1, z2): the solution is
    the z1 basis direction."""
    nvars = 6
    x1 = RatFun.variable(nvars, 0)
    x2 = RatFun.variable(nvars, 2)
    zero = RatFun.zero(nvars)
    one = RatFun.one(nvars)
    rows = [
        [zero, -x1, zero, zero, one, zero],   # alpha1(Z) = 1
        [zero, zero, zero, -x2, zero, one],   # alpha2(Z) = 0
        [zero, one, zero, zero, zero, zero],  # (i_Z d alpha1)[x1] = 0
        [-one, zero, zero, zero, zero, zero],  # (i_Z d alpha1)[y1] = 0
        [zero, zero, zero, one, zero, zero],  # (i_Z d alpha2)[x2] = 0
        [zero, zero, -one, zero, zero, zero],  # (i_Z d alpha2)[y2] = 0
    ]
    sol = solve_linear_exact(RfMatrix(nvars, rows), [1, 0, 0, 0, 0, 0])
    assert sol.kernel == ()
    expected = [zero, zero, zero, zero, one, zero]
    assert list(sol.particular) == expected


def test_kernel_basis_matches_spec_examples():
    zero = RfMatrix.zeros(2, 2, 1)
    basis = kernel_basis(zero)
    assert len(basis) == 2

    a = RfMatrix(2, [[1, RatFun.variable(2, 0)]])
    basis = kernel_basis(a)
    assert len(basis) == 1
    assert basis[0] == [-X, Poly.const(2, 1)]

    full = RfMatrix(1, [[1, 2], [0, 1]])
    assert kernel_basis(full) == []


def test_kernel_vectors_are_primitive_polynomials():
    # row [x, x^2] has kernel direction (-x, 1); cleared and reduced
    a = RfMatrix(2, [[RatFun.variable(2, 0), RatFun(X * X)]])
    (v,) = kernel_basis(a)
    assert v == [-X, Poly.const(2, 1)]


def test_generic_rank():
    assert generic_rank(RfMatrix.identity(3, 1)) == 3
    assert generic_rank(RfMatrix(1, [[RatFun.variable(1, 0)]])) == 1
    assert generic_rank(RfMatrix.zeros(2, 3, 1)) == 0
    # rank is generic: x vanishes at 0 but is invertible as a function
    m = RfMatrix(1, [[RatFun.variable(1, 0), 1], [0, 1]])
    assert generic_rank(m) == 2


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=2, max_size=4
    ),
    st.integers(0, 10_000),
)
def test_rank_plus_nullity(rows, seed):
    rng = random.Random(seed)
    nvars = 2
    # sprinkle in a variable entry to exercise the function field
    mat = [[Poly.const(nvars, c) for c in row] for row in rows]
    i = rng.randrange(len(mat))
    j = rng.randrange(3)
    mat[i][j] = mat[i][j] + Poly.variable(nvars, rng.randrange(nvars))
    a = RfMatrix(nvars, mat)
    assert generic_rank(a) + len(kernel_basis(a)) == a.cols


def test_solution_substitutes_back():
    x = RatFun.variable(2, 0)
    a = RfMatrix(2, [[1, x, 0], [0, x, 1]])
    b = [x, 1]
    sol = solve_linear_exact(a, b)
    for i in range(a.rows):
        lhs = sum(
            (a.at(i, j) * sol.particular[j] for j in range(a.cols)),
            RatFun.zero(2),
        )
        assert lhs == a._coerce_entry(b[i])
    for v in sol.kernel:
        for i in range(a.rows):
            lhs = sum((a.at(i, j) * v[j] for j in range(a.cols)), RatFun.zero(2))
            assert lhs.is_zero()


def test_det_and_inverse():
    x = RatFun.variable(1, 0)
    m = RfMatrix(1, [[1, x], [0, 1]])
    assert m.det() == RatFun.one(1)
    inv = m.inverse()
    assert (m @ inv) == RfMatrix.identity(2, 1)

    sing = RfMatrix(1, [[x, x], [1, 1]])
    assert sing.det().is_zero()


def test_det_with_denominators():
    x = RatFun.variable(1, 0)
    m = RfMatrix(1, [[1 / x, 0], [0, x]])
    assert m.det() == RatFun.one(1)
