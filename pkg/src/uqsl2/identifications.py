"""Primary and secondary identifications of type (theta, t).

The identifications are kept as formal expressions so that the same
objects serve both matrix evaluation and symbolic substitution (the
Lusztig tables act on words containing x, y, z).
"""

from __future__ import annotations

from .errors import RelationFailure
from .expressions import Expr, evaluate, power_word
from .linalg import Matrix
from .scalars import Ident, QContext


def _kpow(n: int) -> Expr:
    return power_word("k", "k^-1", n)


def _ypow(n: int) -> Expr:
    return power_word("y", "y^-1", n)


def equitable_in_chevalley(ctx: QContext) -> dict[str, Expr]:
    """x, y, y^-1, z written in e, f, k^(+-1)."""
    q, th, t = ctx.q, ctx.theta, ctx.t
    qq = q - 1 / q
    k, kinv, e, f = (Expr.symbol(s) for s in ("k", "k^-1", "e", "f"))
    if ctx.ident is Ident.PRIMARY:
        return {
            "x": kinv - _kpow(-1 - t) * e * (q ** (1 + t) * qq / th),
            "y": k,
            "y^-1": kinv,
            "z": kinv + f * _kpow(t) * (q**-t * qq * th),
        }
    return {
        "x": k - _kpow(1 + t) * f * (q ** (1 + t) * qq / th),
        "y": kinv,
        "y^-1": k,
        "z": k + e * _kpow(-t) * (q**-t * qq * th),
    }


def chevalley_in_equitable(ctx: QContext) -> dict[str, Expr]:
    """e, f, k, k^-1 written in x, y^(+-1), z."""
    q, th, t = ctx.q, ctx.theta, ctx.t
    qq = q - 1 / q
    x, y, yinv, z = (Expr.symbol(s) for s in ("x", "y", "y^-1", "z"))
    raising = _ypow(t) * (1 - y * x) * (q ** (-1 - t) / qq * th)
    lowering = (z - yinv) * _ypow(-t) * (q**t / qq / th)
    if ctx.ident is Ident.PRIMARY:
        return {"e": raising, "f": lowering, "k": y, "k^-1": yinv}
    return {"e": lowering, "f": raising, "k": yinv, "k^-1": y}


def _eval_all(images: dict[str, Expr], mats: dict[str, Matrix]) -> dict[str, Matrix]:
    dim = next(iter(mats.values())).rows
    return {name: evaluate(expr, mats.__getitem__, dim) for name, expr in images.items()}


def chevalley_relations(E, F, K, Kinv, q) -> list[tuple[str, Matrix]]:
    """Residuals (should be zero) of the Chevalley relations."""
    n = K.rows
    ident = Matrix.identity(n)
    return [
        ("k k^-1 = 1", K @ Kinv - ident),
        ("k^-1 k = 1", Kinv @ K - ident),
        ("k e = q^2 e k", K @ E - (E @ K).scale(q * q)),
        ("k f = q^-2 f k", K @ F - (F @ K).scale(1 / (q * q))),
        ("ef - fe = (k - k^-1)/(q - q^-1)", E @ F - F @ E - (K - Kinv).scale(1 / (q - 1 / q))),
    ]


def equitable_relations(X, Y, Yinv, Z, q) -> list[tuple[str, Matrix]]:
    """Residuals (should be zero) of the equitable relations."""
    n = Y.rows
    ident = Matrix.identity(n)
    qq = q - 1 / q

    def rel(g, h):
        return g @ h * q - h @ g * (1 / q) - ident * qq

    return [
        ("y y^-1 = 1", Y @ Yinv - ident),
        ("y^-1 y = 1", Yinv @ Y - ident),
        ("(q xy - q^-1 yx)/(q - q^-1) = 1", rel(X, Y)),
        ("(q yz - q^-1 zy)/(q - q^-1) = 1", rel(Y, Z)),
        ("(q zx - q^-1 xz)/(q - q^-1) = 1", rel(Z, X)),
    ]


def _require(residuals, what):
    bad = [name for name, r in residuals if not r.is_zero()]
    if bad:
        raise RelationFailure(f"{what} violates: {', '.join(bad)}")


def equitable_from_chevalley(E: Matrix, F: Matrix, K: Matrix, Kinv: Matrix, ctx: QContext, check: bool = True):
    """Images (X, Y, Y^-1, Z) of Chevalley generator matrices under ``ctx``'s identification."""
    out = _eval_all(equitable_in_chevalley(ctx), {"e": E, "f": F, "k": K, "k^-1": Kinv})
    result = out["x"], out["y"], out["y^-1"], out["z"]
    if check:
        _require(equitable_relations(*result, ctx.q), "forward identification")
    return result


def chevalley_from_equitable(X: Matrix, Y: Matrix, Yinv: Matrix, Z: Matrix, ctx: QContext, check: bool = True):
    """Images (E, F, K, K^-1) of equitable generator matrices under ``ctx``'s identification."""
    out = _eval_all(chevalley_in_equitable(ctx), {"x": X, "y": Y, "y^-1": Yinv, "z": Z})
    result = out["e"], out["f"], out["k"], out["k^-1"]
    if check:
        _require(chevalley_relations(*result, ctx.q), "inverse identification")
    return result


def nxnz_chevalley_forms(mod, ctx: QContext | None = None) -> list[tuple[str, Matrix, Matrix]]:
    """The four cross-expressions between e, f and n_x, n_z, as (name, lhs, rhs).

    Which four depends on the identification of ``ctx`` (defaults to the
    module's own context).
    """
    ctx = mod.ctx if ctx is None else ctx
    q, th, t = ctx.q, ctx.theta, ctx.t
    g = mod.matrix
    e, f, k, kinv = g("e"), g("f"), g("k"), g("k^-1")
    nx, nz, y, yinv = g("n_x"), g("n_z"), g("y"), g("y^-1")

    def kp(n):
        return k**n if n >= 0 else kinv ** (-n)

    def yp(n):
        return y**n if n >= 0 else yinv ** (-n)

    if ctx.ident is Ident.PRIMARY:
        return [
            ("e = theta q^-t y^t n_z", e, (yp(t) @ nz).scale(th * q**-t)),
            ("f = -theta^-1 q^(1+t) n_x y^(-1-t)", f, (nx @ yp(-1 - t)).scale(-q ** (1 + t) / th)),
            ("n_z = theta^-1 q^t k^-t e", nz, (kp(-t) @ e).scale(q**t / th)),
            ("n_x = -theta q^(-1-t) f k^(1+t)", nx, (f @ kp(1 + t)).scale(-th * q ** (-1 - t))),
        ]
    return [
        ("f = theta q^-t y^t n_z", f, (yp(t) @ nz).scale(th * q**-t)),
        ("e = -theta^-1 q^(1+t) n_x y^(-1-t)", e, (nx @ yp(-1 - t)).scale(-q ** (1 + t) / th)),
        ("n_z = theta^-1 q^t k^t f", nz, (kp(t) @ f).scale(q**t / th)),
        ("n_x = -theta q^(-1-t) e k^(-1-t)", nx, (e @ kp(-1 - t)).scale(-th * q ** (-1 - t))),
    ]


def casimir_in_equitable(X, Y, Z, ctx: QContext) -> Matrix:
    """The equitable expression that the Chevalley Casimir becomes under ``ctx``'s identification."""
    q = ctx.q
    if ctx.ident is Ident.PRIMARY:
        return X * q + Y * (1 / q) + Z * q - (X @ Y @ Z) * q
    return X * (1 / q) + Y * q + Z * (1 / q) - (Z @ Y @ X) * (1 / q)

