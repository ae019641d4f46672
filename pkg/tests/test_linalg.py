from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uqsl2.errors import DimensionError, DuplicateNodeError, NotNilpotentError, SingularMatrixError
from uqsl2.linalg import (
    Matrix,
    Poly,
    block_diag,
    lagrange_interpolate,
    mat_inverse,
    mat_prod,
    nilpotency_index,
    poly_eval,
    powers,
    scalar_detect,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)


@st.composite
def square_any(draw):
    return draw(square(draw(st.integers(1, 4))))


def test_construction_and_access():
    m = Matrix([[1, 2], [3, Fraction(1, 2)]])
    assert m.shape == (2, 2)
    assert m[1, 1] == Fraction(1, 2)
    assert m.column(0) == (1, 3)
    assert Matrix.identity(2) == Matrix.diag([1, 1])
    assert Matrix.from_entries(2, {(0, 1): 5}) == Matrix([[0, 5], [0, 0]])
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])
    with pytest.raises(DimensionError):
        Matrix([])


def test_shape_errors():
    with pytest.raises(DimensionError):
        Matrix([[1, 2]]) @ Matrix([[1, 2]])
    with pytest.raises(DimensionError):
        Matrix.identity(2) + Matrix.identity(3)


def test_known_product_and_inverse():
    a = Matrix([[2, 1], [1, 1]])
    assert a @ Matrix([[1, -1], [-1, 2]]) == Matrix.identity(2)
    assert mat_inverse(a) == Matrix([[1, -1], [-1, 2]])
    assert a**-1 == mat_inverse(a)
    assert a**3 == a @ a @ a
    assert mat_prod(a, a, a) == a**3


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrixError):
        mat_inverse(Matrix([[1, 2], [2, 4]]))
    with pytest.raises(ZeroDivisionError):
        mat_inverse(Matrix.zeros(3))


@settings(max_examples=60, deadline=None)
@given(square_any())
def test_inverse_property(m):
    try:
        inv = mat_inverse(m)
    except SingularMatrixError:
        return
    ident = Matrix.identity(m.rows)
    assert m @ inv == ident
    assert inv @ m == ident


@settings(max_examples=60, deadline=None)
@given(square(3), square(3), square(3))
def test_ring_axioms(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert a + b == b + a
    assert a - a == Matrix.zeros(3)
    assert a.scale(2) == a + a


def test_json_roundtrip():
    m = Matrix([[Fraction(-1, 3), 0], [4, Fraction(7, 2)]])
    data = m.to_json()
    assert data == {"rows": 2, "cols": 2, "entries": [["-1/3", "0/1"], ["4/1", "7/2"]]}
    assert Matrix.from_json(data) == m
    with pytest.raises(DimensionError):
        Matrix.from_json({"rows": 3, "cols": 2, "entries": data["entries"]})


def test_first_difference_and_scalar_detect():
    a = Matrix.identity(3)
    b = Matrix.from_entries(3, {(0, 0): 1, (1, 1): 1, (2, 2): 1, (1, 2): 5})
    assert a.first_difference(a) is None
    assert a.first_difference(b) == (1, 2)
    assert scalar_detect(Matrix.identity(3).scale(Fraction(2, 3))) == Fraction(2, 3)
    assert scalar_detect(b) is None


def test_nilpotency_index():
    shift = Matrix.from_entries(4, {(i + 1, i): 1 for i in range(3)})
    assert nilpotency_index(shift) == 4
    assert nilpotency_index(Matrix.zeros(2)) == 1
    with pytest.raises(NotNilpotentError):
        nilpotency_index(Matrix.identity(2))


def test_block_diag_and_powers():
    a, b = Matrix([[2]]), Matrix([[1, 1], [0, 1]])
    m = block_diag([a, b])
    assert m == Matrix([[2, 0, 0], [0, 1, 1], [0, 0, 1]])
    assert powers(m, 3) == [Matrix.identity(3), m, m @ m]


def test_apply():
    m = Matrix([[1, 2], [3, 4]])
    assert m.apply([1, 0]) == [1, 3]
    assert m.apply([0, Fraction(1, 2)]) == [1, 2]


def test_poly_arithmetic():
    p = Poly((1, 0, 2, 0, 0))
    assert p.coeffs == (1, 0, 2) and p.degree == 2
    assert p(3) == 19
    assert (p * Poly((0, 1))).coeffs == (0, 1, 0, 2)
    assert Poly(()).degree == -1
    assert poly_eval(p, Matrix([[3]])) == Matrix([[19]])
    assert p.to_json() == {"coefficients": ["1/1", "0/1", "2/1"]}


def _vandermonde_solve(nodes, values):
    """Independent oracle: solve V c = values with the matrix inverse."""
    n = len(nodes)
    vand = Matrix([[Fraction(x) ** j for j in range(n)] for x in nodes])
    inv = mat_inverse(vand)
    return tuple(sum(inv[i, j] * values[j] for j in range(n)) for i in range(n))


@settings(max_examples=40, deadline=None)
@given(st.lists(small, min_size=1, max_size=6, unique=True), st.data())
def test_lagrange_matches_vandermonde(nodes, data):
    values = data.draw(st.lists(small, min_size=len(nodes), max_size=len(nodes)))
    p = lagrange_interpolate(nodes, values)
    assert all(p(x) == y for x, y in zip(nodes, values))
    oracle = Poly(_vandermonde_solve(nodes, values))
    assert p == oracle


def test_lagrange_errors():
    with pytest.raises(DuplicateNodeError):
        lagrange_interpolate([1, 1], [2, 3])
    with pytest.raises(DimensionError):
        lagrange_interpolate([1, 2], [2])
