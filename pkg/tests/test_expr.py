import cmath
import math

import numpy as np
import pytest

from residuum.errors import (
    DivisionByZeroError,
    EvaluationError,
    ExponentRangeError,
    ExprArityError,
    ExprSyntaxError,
    LogOfZeroError,
    NonFiniteValueError,
)
from residuum.expr import (
    derivative_along_real_axis,
    evaluate,
    evaluate_array,
    free_of_z,
    free_of_zbar,
    invert_about,
    parse,
    to_source,
    translate,
    wirtinger_dz,
    wirtinger_dzbar,
)
from residuum.expr.nodes import (
    Add,
    Const,
    Cos,
    Div,
    Exp,
    Log,
    Mul,
    Neg,
    PowInt,
    Sin,
    Sub,
    VarZ,
    VarZbar,
)

LEAVES = [VarZ(), VarZbar(), Const(0.5 + 0j), Const(2 + 0j), Const(-3 + 0j), Const(1j), Const(-1j)]


def random_expr(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice(LEAVES)
    kind = rng.randrange(4)
    if kind == 0:
        node = rng.choice([Add, Sub, Mul, Div])
        return node(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    if kind == 1:
        return Neg(random_expr(rng, depth - 1))
    if kind == 2:
        return PowInt(random_expr(rng, depth - 1), rng.choice([-3, -1, 2, 5]))
    return rng.choice([Exp, Log, Sin, Cos])(random_expr(rng, depth - 1))


def test_parse_builds_expected_tree():
    assert parse("z^2") == PowInt(VarZ(), 2)
    assert parse("conj(z)") == VarZbar()
    assert parse("1 + 2*z") == Add(Const(1 + 0j), Mul(Const(2 + 0j), VarZ()))
    assert parse("-2") == Const(-2 + 0j)
    assert parse("-i") == Const(-1j)
    assert parse("-z") == Neg(VarZ())
    assert parse("z^-2") == PowInt(VarZ(), -2)


def test_operator_precedence():
    assert evaluate(parse("1 + 2*z^2"), 3) == 19
    assert evaluate(parse("(1 + 2)*z"), 3) == 9
    assert evaluate(parse("8/2/2"), 0) == 2


def test_syntax_error_reports_byte_offset_and_expected_tokens():
    with pytest.raises(ExprSyntaxError) as info:
        parse("z + * 2")
    assert info.value.offset == 4
    assert "z" in info.value.expected
    assert info.value.field == "expression"


def test_syntax_error_offset_counts_utf8_bytes():
    with pytest.raises(ExprSyntaxError) as info:
        parse("z\u00a0+ $")
    assert info.value.offset == 5


@pytest.mark.parametrize("source", ["foo(z)", "z +", "(z", "conj(2)", "z z"])
def test_malformed_sources_raise_syntax_errors(source):
    with pytest.raises(ExprSyntaxError):
        parse(source)


def test_arity_errors():
    with pytest.raises(ExprArityError):
        parse("exp(z, z)")
    with pytest.raises(ExprArityError):
        parse("conj(z, 1)")


def test_exponent_range():
    assert parse("z^64") == PowInt(VarZ(), 64)
    with pytest.raises(ExponentRangeError) as info:
        parse("z^65")
    assert info.value.offset == 2


def test_evaluate_in_both_variables():
    assert evaluate(parse("z*conj(z)"), 3 + 4j) == pytest.approx(25)
    assert evaluate(parse("conj(z)"), 1 + 2j) == 1 - 2j


def test_evaluate_array_keeps_shape():
    zs = np.array([[1, 2], [3, 4]], dtype=complex)
    values = evaluate_array(parse("z^2 + 1"), zs)
    assert values.shape == (2, 2)
    assert values[1, 1] == 17


def test_principal_log_branch():
    assert evaluate(parse("log(z)"), -1).imag == pytest.approx(math.pi)
    assert evaluate(parse("log(z)"), complex(-1.0, -0.0)).imag == pytest.approx(math.pi)
    assert evaluate(parse("log(z)"), -1 - 1e-12j).imag == pytest.approx(-math.pi)


def test_evaluation_errors_carry_the_position():
    with pytest.raises(DivisionByZeroError) as info:
        evaluate(parse("1/z"), 0)
    assert info.value.position == 0
    with pytest.raises(DivisionByZeroError):
        evaluate(parse("z^-2"), 0)
    with pytest.raises(LogOfZeroError):
        evaluate(parse("log(z)"), 0)
    with pytest.raises(NonFiniteValueError):
        evaluate(parse("exp(z)"), 1000)


def test_printer_round_trip(rng):
    for _ in range(300):
        e = random_expr(rng, 4)
        assert parse(to_source(e)) == e, to_source(e)


def test_structural_holomorphy():
    assert free_of_zbar(parse("exp(z)/z"))
    assert not free_of_zbar(parse("z*conj(z)"))
    assert free_of_z(parse("conj(z)^2"))
    assert wirtinger_dzbar(parse("z^3 + sin(z)")) == Const(0j)
    assert wirtinger_dz(parse("conj(z)*z")) == VarZbar()


@pytest.mark.parametrize(
    "source",
    [
        "z^2*conj(z)",
        "exp(z)*conj(z)",
        "log(z*conj(z))",
        "sin(conj(z))/z",
        "1/(z - conj(z) + 3)",
        "cos(z)^3 - conj(z)^-2",
        "log(z) - log(conj(z))",
    ],
)
def test_wirtinger_matches_finite_differences(source, rng):
    f = parse(source)
    dz = wirtinger_dz(f)
    dzbar = wirtinger_dzbar(f)
    h = 1e-5
    for _ in range(10):
        z = cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(-1.2, 1.2))
        fx = (evaluate(f, z + h) - evaluate(f, z - h)) / (2 * h)
        fy = (evaluate(f, z + 1j * h) - evaluate(f, z - 1j * h)) / (2 * h)
        scale = max(1.0, abs(fx), abs(fy))
        assert abs(evaluate(dz, z) - 0.5 * (fx - 1j * fy)) <= 1e-5 * scale
        assert abs(evaluate(dzbar, z) - 0.5 * (fx + 1j * fy)) <= 1e-5 * scale


def _central_differences(f, z, h):
    fx = (evaluate(f, z + h) - evaluate(f, z - h)) / (2 * h)
    fy = (evaluate(f, z + 1j * h) - evaluate(f, z - 1j * h)) / (2 * h)
    return fx, fy


def test_wirtinger_on_random_expressions(rng):
    checked = 0
    for _ in range(100):
        f = random_expr(rng, 3)
        dz = wirtinger_dz(f)
        dzbar = wirtinger_dzbar(f)
        for _ in range(10):
            z = cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(-1.2, 1.2))
            try:
                fx, fy = _central_differences(f, z, 1e-5)
                fx2, fy2 = _central_differences(f, z, 2e-5)
                expected_dz, expected_dzbar = evaluate(dz, z), evaluate(dzbar, z)
            except EvaluationError:
                continue
            scale = max(1.0, abs(fx), abs(fy))
            # near a branch cut or lost to cancellation
            if abs(fx - fx2) + abs(fy - fy2) > 1e-6 * scale:
                continue
            assert abs(expected_dz - 0.5 * (fx - 1j * fy)) <= 1e-5 * scale, to_source(f)
            assert abs(expected_dzbar - 0.5 * (fx + 1j * fy)) <= 1e-5 * scale, to_source(f)
            checked += 1
    assert checked >= 100


def test_evaluation_is_deterministic(rng):
    points = np.array([cmath.rect(rng.uniform(0.5, 1.5), rng.uniform(-3, 3)) for _ in range(64)])
    for source in ["exp(z)*conj(z)^2 / (z - 3)", "log(z*conj(z)) + sin(z)^-1", "cos(conj(z))^5 - i*z"]:
        f = parse(source)
        first = evaluate_array(f, points)
        second = evaluate_array(parse(source), points.copy())
        assert first.tobytes() == second.tobytes()
        assert evaluate(f, complex(points[0])) == evaluate(f, complex(points[0]))


def test_derivative_along_real_axis():
    assert evaluate(derivative_along_real_axis(parse("log(z)")), 2) == pytest.approx(0.5)
    assert evaluate(derivative_along_real_axis(parse("1/z")), -2) == pytest.approx(-0.25)


def test_translate_and_invert():
    assert evaluate(translate(parse("1/z"), 1), 1.5) == pytest.approx(2)
    # w^-2 f(1/w) for f = 1/z is 1/w
    assert evaluate(invert_about(parse("1/z"), 0j), 0.25) == pytest.approx(4)
