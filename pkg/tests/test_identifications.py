from fractions import Fraction

import pytest

from uqsl2.errors import RelationFailure
from uqsl2.expressions import Expr
from uqsl2.identifications import (
    casimir_in_equitable,
    chevalley_from_equitable,
    chevalley_in_equitable,
    equitable_from_chevalley,
    equitable_in_chevalley,
    nxnz_chevalley_forms,
)
from uqsl2.linalg import Matrix
from uqsl2.modules import Basis, build_module, chevalley_module, eval_expression
from uqsl2.scalars import Ident, QContext, ThetaMode

GENERIC = [QContext(q, th, None, t, ident) for q, th in ((4, Fraction(5, 7)), (Fraction(1, 3), -2)) for t in (-1, 0, 2) for ident in Ident]
STANDARD = [QContext.standard(q, mode, t, ident) for q in (4, 9) for mode in ThetaMode for t in (-2, 1) for ident in Ident]


def _label(ctx):
    mode = ctx.theta_mode.value if ctx.theta_mode else "generic"
    return f"q{ctx.q}-th{ctx.theta}-{mode}-t{ctx.t}-{ctx.ident.value}"


def _pow(m, minv, n):
    return m**n if n >= 0 else minv ** (-n)


def _oracle_equitable(mod, ctx):
    """x, y, z from e, f, k by direct matrix arithmetic, no expression machinery."""
    q, th, t = ctx.q, ctx.theta, ctx.t
    qq = q - 1 / q
    g = mod.matrix
    e, f, k, ki = g("e"), g("f"), g("k"), g("k^-1")
    if ctx.ident is Ident.PRIMARY:
        x = ki - (_pow(k, ki, -1 - t) @ e).scale(q ** (1 + t) * qq / th)
        z = ki + (f @ _pow(k, ki, t)).scale(q**-t * qq * th)
        return x, k, z
    x = k - (_pow(k, ki, 1 + t) @ f).scale(q ** (1 + t) * qq / th)
    z = k + (e @ _pow(k, ki, -t)).scale(q**-t * qq * th)
    return x, ki, z


@pytest.mark.parametrize("ctx", GENERIC + STANDARD, ids=_label)
def test_forward_matches_matrix_oracle(ctx):
    for d in range(5):
        mod = chevalley_module(d, 1, ctx)
        x, y, z = _oracle_equitable(mod, ctx)
        assert mod.matrix("x") == x
        assert mod.matrix("y") == y
        assert mod.matrix("z") == z


@pytest.mark.parametrize("ctx", GENERIC + STANDARD, ids=_label)
@pytest.mark.parametrize("basis", list(Basis))
def test_round_trip(ctx, basis):
    for eps in (1, -1):
        for d in range(5):
            g = build_module(d, eps, basis, ctx).matrix
            chev = (g("e"), g("f"), g("k"), g("k^-1"))
            equi = (g("x"), g("y"), g("y^-1"), g("z"))
            assert chevalley_from_equitable(*equi, ctx) == chev
            assert equitable_from_chevalley(*chev, ctx) == equi


@pytest.mark.parametrize("ctx", GENERIC + STANDARD, ids=_label)
def test_symbolic_round_trip_on_generators(ctx):
    # substituting one identification into the other returns each Chevalley generator
    fwd, back = equitable_in_chevalley(ctx), chevalley_in_equitable(ctx)
    for s in ("k", "k^-1"):
        assert back[s].substitute(fwd) == Expr.symbol(s)
    # e and f come back up to the relation k k^-1 = 1, so compare as matrices
    for d in range(4):
        mod = chevalley_module(d, 1, ctx)
        for s in ("e", "f"):
            assert eval_expression(back[s].substitute(fwd), mod) == mod.matrix(s)


@pytest.mark.parametrize("ctx", GENERIC + STANDARD, ids=_label)
@pytest.mark.parametrize("basis", list(Basis))
def test_nx_nz_forms(ctx, basis):
    for d in range(6):
        mod = build_module(d, 1, basis, ctx)
        forms = nxnz_chevalley_forms(mod)
        assert len(forms) == 4
        for name, lhs, rhs in forms:
            assert lhs == rhs, name


@pytest.mark.parametrize("ctx", STANDARD, ids=_label)
def test_casimir_equitable_form(ctx):
    for basis in Basis:
        for d in range(5):
            g = build_module(d, 1, basis, ctx).matrix
            assert casimir_in_equitable(g("x"), g("y"), g("z"), ctx) == g("Lambda")


def test_relation_failure_is_raised():
    ctx = QContext.standard(4)
    g = chevalley_module(2, 1, ctx).matrix
    bad_e = g("e").scale(2)
    # scaling e breaks ef - fe = (k - k^-1)/(q - q^-1); forward map output then fails
    with pytest.raises(RelationFailure):
        equitable_from_chevalley(bad_e, g("f"), g("k"), g("k^-1"), ctx)
    out = equitable_from_chevalley(bad_e, g("f"), g("k"), g("k^-1"), ctx, check=False)
    assert len(out) == 4


def test_secondary_swaps_roles():
    ctx = QContext.standard(4, ident=Ident.SECONDARY)
    g = chevalley_module(1, 1, ctx).matrix
    assert g("y") == g("k^-1")
    assert g("y^-1") == g("k")
    # [DERIVED] q=4, theta=-2, t=0: x = k + (15/2) k f, and (k f)[1, 0] = 1/4
    assert g("x") == Matrix([[4, 0], [Fraction(15, 8), Fraction(1, 4)]])
