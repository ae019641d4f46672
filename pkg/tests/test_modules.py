from fractions import Fraction

import pytest

from uqsl2.errors import MixedTypeError, NonIntegralWeightError, NotTypeOneError, UnknownSymbolError
from uqsl2.identifications import chevalley_relations, equitable_relations
from uqsl2.linalg import Matrix, mat_inverse, nilpotency_index
from uqsl2.modules import (
    Basis,
    build_module,
    casimir_six_forms,
    chevalley_module,
    direct_sum,
    equitable_module,
    index_weights,
    sum_of,
    weight_decomposition,
    weight_of,
)
from uqsl2.scalars import Ident, QContext, ThetaMode, q_int

CTX = QContext.standard(4)
CONTEXTS = [
    QContext.standard(q, mode, t, ident)
    for q in (4, 9)
    for mode in ThetaMode
    for t in (-2, 0, 1)
    for ident in Ident
]


def test_chevalley_matrices_d2():
    # [PAPER] k spectrum q^d, ..., q^-d and the shift actions, written out for d = 2
    m = chevalley_module(2, 1, CTX)
    assert m.matrix("k") == Matrix.diag([16, 1, Fraction(1, 16)])
    two = q_int(2, CTX)
    assert m.matrix("f") == Matrix.from_entries(3, {(1, 0): 1, (2, 1): two})
    assert m.matrix("e") == Matrix.from_entries(3, {(0, 1): two, (1, 2): 1})


def test_equitable_matrices_d1():
    m = equitable_module(1, 1, CTX)
    # [DERIVED] diag eps q^(2i-d); superdiagonal eps (q^d - q^(2i-d))
    assert m.matrix("x") == Matrix([[Fraction(1, 4), Fraction(15, 4)], [0, 4]])
    assert m.matrix("y") == Matrix.diag([4, Fraction(1, 4)])
    assert m.matrix("z") == Matrix([[Fraction(1, 4), 0], [Fraction(1, 4) - 4, 4]])


def test_v1_equitable_images_by_hand():
    # [DERIVED] q=4, theta=-2, t=0, primary: x = k^-1 + (15/2) k^-1 e, z = k^-1 - (15/2) f
    m = chevalley_module(1, 1, CTX)
    assert m.matrix("x") == Matrix([[Fraction(1, 4), Fraction(15, 8)], [0, 4]])
    assert m.matrix("z") == Matrix([[Fraction(1, 4), 0], [Fraction(-15, 2), 4]])
    assert m.matrix("y") == m.matrix("k")


@pytest.mark.parametrize("ctx", CONTEXTS, ids=lambda c: f"q{c.q}-{c.theta_mode.value}-t{c.t}-{c.ident.value}")
@pytest.mark.parametrize("basis", list(Basis))
@pytest.mark.parametrize("eps", [1, -1])
def test_relations_hold(ctx, basis, eps):
    for d in range(6):
        m = build_module(d, eps, basis, ctx)
        g = m.matrix
        for name, r in chevalley_relations(g("e"), g("f"), g("k"), g("k^-1"), ctx.q):
            assert r.is_zero(), (d, name)
        for name, r in equitable_relations(g("x"), g("y"), g("y^-1"), g("z"), ctx.q):
            assert r.is_zero(), (d, name)


@pytest.mark.parametrize("basis", list(Basis))
def test_nilpotency_and_invertibility(basis):
    for d in range(7):
        m = build_module(d, 1, basis, CTX)
        for s in ("e", "f", "n_x", "n_y", "n_z"):
            assert nilpotency_index(m.matrix(s)) == d + 1
        for s in ("x", "z"):
            mat_inverse(m.matrix(s))


def test_u_basis_n_matrices():
    d, q = 3, CTX.q
    m = equitable_module(d, 1, CTX)
    # [PAPER] n_x u_i = q^(1-i)[i] u_(i-1) and n_z u_i = -q^(d-1-i)[d-i] u_(i+1), read as columns
    nx = Matrix.from_entries(d + 1, {(i, i - 1): q ** (1 - i) * q_int(i, CTX) for i in range(1, d + 1)})
    nz = Matrix.from_entries(d + 1, {(i, i + 1): -(q ** (d - 1 - i)) * q_int(d - i, CTX) for i in range(d)})
    assert m.matrix("n_x") == nx
    assert m.matrix("n_z") == nz


@pytest.mark.parametrize("basis", list(Basis))
@pytest.mark.parametrize("eps", [1, -1])
def test_casimir_scalar_and_six_forms(basis, eps):
    q = CTX.q
    for d in range(6):
        m = build_module(d, eps, basis, CTX)
        scalar = eps * (q ** (d + 1) + q ** (-d - 1))
        assert m.matrix("Lambda") == Matrix.identity(d + 1).scale(scalar)
        assert all(form == m.matrix("Lambda") for form in casimir_six_forms(m))


def test_casimir_d0_is_q_plus_qinv():
    # [TRIVIAL] on V_0 the Casimir is q + q^-1
    assert chevalley_module(0, 1, CTX).matrix("Lambda") == Matrix([[Fraction(17, 4)]])


def test_weights():
    assert weight_of(Fraction(1, 16), Fraction(4)) == -2
    assert weight_of(Fraction(64), Fraction(4)) == 3
    assert weight_of(Fraction(3), Fraction(4)) is None
    m = sum_of([1, 3], CTX)
    wd = weight_decomposition(m)
    assert {lam: len(ix) for lam, ix in wd.items()} == {1: 2, -1: 2, 3: 1, -3: 1}
    assert index_weights(chevalley_module(2, 1, CTX)) == [2, 0, -2]


def test_y_acts_by_weight():
    for ident, sign in ((Ident.PRIMARY, 1), (Ident.SECONDARY, -1)):
        ctx = QContext.standard(4, ident=ident)
        for basis in Basis:
            m = sum_of([0, 2, 2], ctx, basis)
            y = m.matrix("y")
            assert all(y[i, i] == ctx.q ** (sign * lam) for i, lam in enumerate(index_weights(m)))


def test_type_minus_one_has_no_integral_weights():
    m = chevalley_module(2, -1, CTX)
    with pytest.raises(NonIntegralWeightError):
        weight_decomposition(m)
    with pytest.raises(NotTypeOneError):
        m.require_type_one()


def test_direct_sum_rules():
    with pytest.raises(MixedTypeError):
        direct_sum([chevalley_module(1, 1, CTX), chevalley_module(1, -1, CTX)])
    with pytest.raises(ValueError):
        direct_sum([chevalley_module(1, 1, CTX), equitable_module(1, 1, CTX)])
    with pytest.raises(ValueError):
        direct_sum([])
    m = sum_of([1, 2, 3], CTX, Basis.EQUITABLE_U)
    assert m.dim == 9 and m.offsets == (0, 2, 5)
    assert not m.is_irreducible
    with pytest.raises(ValueError):
        _ = m.d


def test_unknown_symbol_and_tampering():
    m = chevalley_module(1, 1, CTX)
    with pytest.raises(UnknownSymbolError):
        m.matrix("w")
    bumped = m.with_matrix("n_z", Matrix.zeros(2))
    assert bumped.matrix("n_z").is_zero()
    assert not m.matrix("n_z").is_zero()


def test_bad_inputs():
    with pytest.raises(ValueError):
        chevalley_module(-1, 1, CTX)
    with pytest.raises(ValueError):
        equitable_module(1, 2, CTX)


def test_json_shape():
    data = chevalley_module(1, 1, CTX).to_json()
    assert data["d"] == 1 and data["basis"] == "chevalley"
    assert data["generators"]["k"]["entries"] == [["4/1", "0/1"], ["0/1", "1/4"]]
