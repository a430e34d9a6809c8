"""Exact polynomial arithmetic: ring axioms, normal forms, serialization."""

import random
from fractions import Fraction

import pytest

from regmaps.polynomial import (
    GAUSSIAN_I,
    GaussianRational,
    MissingAssignmentError,
    OverlappingBlocksError,
    Polynomial,
    RegistryMismatchError,
    SphereBlock,
    UnknownVariableError,
    VarRegistry,
    normal_form,
    polynomial_from_json,
    polynomial_to_json,
    polynomial_to_obj,
    transport_polynomial,
)
from regmaps.varieties import sphere_coords_from_parameters

REG = VarRegistry(["x1", "x2", "x3", "y1"])
X1 = Polynomial.variable(REG, "x1")
X2 = Polynomial.variable(REG, "x2")
X3 = Polynomial.variable(REG, "x3")
Y1 = Polynomial.variable(REG, "y1")
ONE = Polynomial.one(REG)


def random_poly(rng, registry=REG, terms=5, max_exp=3, height=9):
    out = Polynomial.zero(registry)
    for _ in range(rng.randrange(terms + 1)):
        coeff = Fraction(rng.randint(-height, height), rng.randint(1, height))
        mono = Polynomial.constant(registry, coeff)
        for var_id in range(registry.size):
            mono = mono * Polynomial.variable(registry, var_id) ** rng.randrange(
                max_exp
            )
        out = out + mono
    return out


def random_point(rng, registry=REG, height=7):
    return [
        Fraction(rng.randint(-height, height), rng.randint(1, height))
        for _ in range(registry.size)
    ]


# ---------------------------------------------------------------------------
# ring axioms
# ---------------------------------------------------------------------------


def test_ring_axioms_randomized():
    rng = random.Random(101)
    for case in range(220):
        a = random_poly(rng)
        b = random_poly(rng)
        c = random_poly(rng)
        assert a + b == b + a, f"case {case}: addition not commutative"
        assert (a + b) + c == a + (b + c), f"case {case}: addition not associative"
        assert a * b == b * a, f"case {case}: multiplication not commutative"
        assert (a * b) * c == a * (b * c), f"case {case}: multiplication not associative"
        assert a * (b + c) == a * b + a * c, f"case {case}: not distributive"
        assert a + Polynomial.zero(REG) == a
        assert a * ONE == a
        assert (a - a).is_zero()
        assert (a * Polynomial.zero(REG)).is_zero()


def test_arithmetic_commutes_with_evaluation():
    rng = random.Random(77)
    for _ in range(60):
        a = random_poly(rng)
        b = random_poly(rng)
        point = random_point(rng)
        assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
        assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)


def test_small_identities():
    assert X1 + (-1) * X1 == Polynomial.zero(REG)
    assert (X1 ** 2 + ONE) + X2 == X1 ** 2 + X2 + ONE
    assert (X1 + ONE) * (X1 - ONE) == X1 ** 2 - ONE
    # the product expansion used by the sphere-addition denominator
    assert (ONE + X1) * (ONE + Y1) == ONE + X1 + Y1 + X1 * Y1


def test_power_matches_repeated_multiplication():
    p = X1 + 2 * X2 - ONE
    q = ONE
    for k in range(7):
        assert p ** k == q
        q = q * p


def test_registry_mismatch_rejected():
    other = VarRegistry(["x1", "x2"])
    with pytest.raises(RegistryMismatchError):
        X1 + Polynomial.variable(other, "x1")
    with pytest.raises(RegistryMismatchError):
        X1 * Polynomial.variable(other, "x2")


def test_unknown_variable_rejected():
    with pytest.raises(UnknownVariableError):
        Polynomial.variable(REG, "z9")
    with pytest.raises(UnknownVariableError):
        X1.differentiate("z9")


# ---------------------------------------------------------------------------
# gaussian coefficients
# ---------------------------------------------------------------------------


def test_gaussian_rational_field_ops():
    a = GaussianRational(Fraction(1, 2), Fraction(3))
    b = GaussianRational(Fraction(-2), Fraction(1, 3))
    assert a + b == GaussianRational(Fraction(-3, 2), Fraction(10, 3))
    assert a * b == GaussianRational(Fraction(-2), Fraction(-35, 6))
    assert GAUSSIAN_I * GAUSSIAN_I == GaussianRational(Fraction(-1), Fraction(0))
    assert a.conjugate() == GaussianRational(Fraction(1, 2), Fraction(-3))
    # |a|^2 = a * conj(a) is real
    norm = a * a.conjugate()
    assert norm.im == 0 and norm.re == Fraction(1, 4) + 9


def test_gaussian_polynomial_round_trip_to_real_parts():
    z = X1 + GAUSSIAN_I * X2
    square = z * z
    assert square.has_gaussian_coefficients()
    from regmaps.polynomial import real_imag_parts

    re, im = real_imag_parts(square)
    assert re == X1 ** 2 - X2 ** 2
    assert im == 2 * X1 * X2
    assert not re.has_gaussian_coefficients()


# ---------------------------------------------------------------------------
# differentiation
# ---------------------------------------------------------------------------


def test_differentiate_basics():
    assert (X1 ** 2).differentiate("x1") == 2 * X1
    assert (X1 ** 2).differentiate("x2").is_zero()
    # d/dy of Q^2 + ||y||^2 style expressions: the y-part contributes 2y
    q = X1 ** 2 + X2 ** 2 + Y1 ** 2
    assert q.differentiate("y1") == 2 * Y1


def test_differentiate_linear_and_leibniz():
    rng = random.Random(4242)
    for _ in range(80):
        a = random_poly(rng)
        b = random_poly(rng)
        var = rng.choice(REG.names)
        assert (a + b).differentiate(var) == a.differentiate(var) + b.differentiate(var)
        assert (a * b).differentiate(var) == a.differentiate(
            var
        ) * b + a * b.differentiate(var)


# ---------------------------------------------------------------------------
# normal form modulo sphere blocks
# ---------------------------------------------------------------------------

S1_REG = VarRegistry(["x1", "x2"])
S1_BLOCK = SphereBlock((0, 1))


def test_normal_form_kills_the_relation():
    p = Polynomial.variable(S1_REG, 0) ** 2 + Polynomial.variable(S1_REG, 1) ** 2
    assert normal_form(p, [S1_BLOCK]) == Polynomial.one(S1_REG)


def test_normal_form_x2_cubed():
    # x2^3 = x2 * x2^2 -> x2 * (1 - x1^2)
    x1 = Polynomial.variable(S1_REG, 0)
    x2 = Polynomial.variable(S1_REG, 1)
    assert normal_form(x2 ** 3, [S1_BLOCK]) == x2 - x1 ** 2 * x2


def test_normal_form_idempotent_and_degree_bounded():
    rng = random.Random(11)
    for _ in range(120):
        p = random_poly(rng, S1_REG, terms=6, max_exp=5)
        nf = normal_form(p, [S1_BLOCK])
        assert normal_form(nf, [S1_BLOCK]) == nf
        # eliminated variable appears with exponent <= 1 after rewriting
        for exps in nf.terms:
            assert exps[1] <= 1


def test_normal_form_sound_at_exact_circle_points():
    rng = random.Random(12)
    for trial in range(50):
        p = random_poly(rng, S1_REG, terms=6, max_exp=5)
        nf = normal_form(p, [S1_BLOCK])
        t = Fraction(rng.randint(-40, 40), rng.randint(1, 17))
        point = sphere_coords_from_parameters([t])
        assert p.evaluate(point) == nf.evaluate(point), f"trial {trial} at t={t}"


def test_normal_form_two_blocks_and_overlap_error():
    reg = VarRegistry(["x1", "x2", "y1", "y2"])
    bx = SphereBlock((0, 1))
    by = SphereBlock((2, 3))
    p = Polynomial.variable(reg, 0) ** 2 + Polynomial.variable(reg, 1) ** 2
    q = Polynomial.variable(reg, 2) ** 2 + Polynomial.variable(reg, 3) ** 2
    assert normal_form(p * q, [bx, by]) == Polynomial.one(reg)
    with pytest.raises(OverlappingBlocksError):
        normal_form(p, [bx, SphereBlock((1, 2))])


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def test_evaluate_examples():
    p = X1 ** 2 + X2 ** 2
    assert p.evaluate([Fraction(3, 5), Fraction(4, 5), 0, 0]) == 1
    # constant term at the origin
    q = 7 * X1 * X2 + Polynomial.constant(REG, Fraction(5, 3))
    assert q.evaluate([0, 0, 0, 0]) == Fraction(5, 3)


def test_evaluate_sphere_addition_denominator_fixture():
    # (1+x1)(1+y1) + 2 - 2 x1 y1 + 2 x2 y2 at x = y = (0, 1) gives 1 + 2 + 2 = 5
    reg = VarRegistry(["x1", "x2", "y1", "y2"])
    x1, x2, y1, y2 = (Polynomial.variable(reg, i) for i in range(4))
    one = Polynomial.one(reg)
    den = (one + x1) * (one + y1) + 2 * one - 2 * x1 * y1 + 2 * x2 * y2
    point = [Fraction(0), Fraction(1), Fraction(0), Fraction(1)]
    assert den.evaluate(point) == 5
    assert abs(den.evaluate_float([0.0, 1.0, 0.0, 1.0]) - 5.0) < 1e-12


def test_evaluate_requires_full_assignment():
    with pytest.raises(MissingAssignmentError):
        (X1 + X2).evaluate({0: Fraction(1)})
    # variables the polynomial does not use may be omitted
    assert X1.evaluate({0: Fraction(2)}) == 2


def test_float_evaluation_tracks_exact():
    rng = random.Random(5050)
    for _ in range(40):
        p = random_poly(rng)
        point = random_point(rng, height=5)
        exact = p.evaluate(point)
        approx = p.evaluate_float([float(c) for c in point])
        scale = max(1.0, abs(float(exact)))
        assert abs(approx - float(exact)) / scale < 1e-9


# ---------------------------------------------------------------------------
# canonical form and serialization
# ---------------------------------------------------------------------------


def test_canonical_term_order_is_graded():
    p = X1 + X3 ** 2 + ONE + X1 * X2
    degrees = [sum(exps) for exps, _ in sorted(p.terms.items(), key=lambda kv: kv[0])]
    obj = polynomial_to_obj(p)
    listed = [sum(e for _, e in term["m"]) for term in obj]
    assert listed == sorted(listed, reverse=True), "terms not in graded order"
    assert set(degrees) == set(listed)


def test_serialization_round_trip_exact():
    rng = random.Random(31)
    for _ in range(60):
        p = random_poly(rng)
        text = polynomial_to_json(p)
        again = polynomial_from_json(text, REG)
        assert again == p
        assert polynomial_to_json(again) == text, "round trip not byte stable"


def test_serialized_coefficients_are_fraction_strings():
    p = Polynomial.constant(REG, Fraction(-7, 3)) * X1
    obj = polynomial_to_obj(p)
    assert obj[0]["c"] == "-7/3"
    assert obj[0]["m"] == [[0, 1]]


def test_transport_polynomial_renames_variables():
    small = VarRegistry(["X1", "X2"])
    big = VarRegistry(["x1", "x2", "x3", "x4"])
    p = Polynomial.variable(small, 0) ** 2 + 3 * Polynomial.variable(small, 1)
    moved = transport_polynomial(p, big, {0: 2, 1: 3})
    x3 = Polynomial.variable(big, 2)
    x4 = Polynomial.variable(big, 3)
    assert moved == x3 ** 2 + 3 * x4
