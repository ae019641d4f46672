"""q-exponentials of nilpotent operators and their conjugation identities."""

from __future__ import annotations

from functools import lru_cache

from .checks import Check, compare
from .errors import NotNilpotentError
from .linalg import Matrix, mat_inverse, nilpotency_index, powers
from .scalars import QContext, q_binomial2, q_fact, q_int


def _series(m: Matrix, ctx: QContext, sign: int) -> Matrix:
    r = nilpotency_index(m)
    acc = Matrix.zeros(m.rows)
    for i, p in enumerate(powers(m, r)):
        c = ctx.q ** (sign * q_binomial2(i)) / q_fact(i, ctx)
        if sign < 0 and i % 2:
            c = -c
        acc = acc + p.scale(c)
    return acc


def exp_q(m: Matrix, ctx: QContext) -> Matrix:
    """sum_i q^C(i,2) / [i]_q! m^i, truncated at the nilpotency index of m."""
    return _series(m, ctx, 1)


def exp_q_inverse(m: Matrix, ctx: QContext) -> Matrix:
    """sum_i (-1)^i q^-C(i,2) / [i]_q! m^i, the inverse of exp_q(m)."""
    return _series(m, ctx, -1)


def verify_shift_identity(m: Matrix, ctx: QContext) -> bool:
    """exp_q(q^2 m) (1 - (q^2 - 1) m) == exp_q(m)."""
    q2 = ctx.q * ctx.q
    ident = Matrix.identity(m.rows)
    lhs = exp_q(m.scale(q2), ctx) @ (ident - m.scale(q2 - 1))
    return lhs == exp_q(m, ctx)


def conjugation_suite(mod, ctx: QContext | None = None) -> list[Check]:
    """Conjugation of x, y, z, n_x, n_y, Lambda, n_z by exp_q(n_z), plus the commutator recursion.

    A non-nilpotent n_z (possible only for tampered input) fails every check.
    """
    ctx = mod.ctx if ctx is None else ctx
    q = ctx.q
    g = mod.matrix
    x, y, z = g("x"), g("y"), g("z")
    nx, ny, nz, lam = g("n_x"), g("n_y"), g("n_z"), g("Lambda")
    names = [
        "exp_q(n_z)^-1 Lambda exp_q(n_z) = Lambda",
        "exp_q(n_z)^-1 n_z exp_q(n_z) = n_z",
        "exp_q(n_z)^-1 y exp_q(n_z) = x^-1",
        "exp_q(n_z)^-1 z exp_q(n_z) = x - x^-1 + z",
        "exp_q(n_z)^-1 x exp_q(n_z) = xyx",
        "exp_q(n_z)^-1 n_x exp_q(n_z) = x^-1 n_y x^-1",
        "exp_q(n_z)^-1 n_y exp_q(n_z) = Lambda x/(q-q^-1) + n_y - (q+q^-1)/(q-q^-1) x^2 + x n_z x",
        "(y + z) exp_q(n_z) = exp_q(n_z) (x + z)",
    ]
    try:
        ez = exp_q(nz, ctx)
        ezi = exp_q_inverse(nz, ctx)
    except NotNilpotentError:
        return [Check(n, False, note="n_z not nilpotent") for n in names] + [
            Check("z n_z^i - n_z^i z = q^(1-i)[i]_q (n_z^(i-1) x - y n_z^(i-1))", False, note="n_z not nilpotent")
        ]
    xinv = mat_inverse(x)
    qq = q - 1 / q

    def conj(m):
        return ezi @ m @ ez

    out = [
        compare(names[0], conj(lam), lam),
        compare(names[1], conj(nz), nz),
        compare(names[2], conj(y), xinv),
        compare(names[3], conj(z), x - xinv + z),
        compare(names[4], conj(x), x @ y @ x),
        compare(names[5], conj(nx), xinv @ ny @ xinv),
        compare(
            names[6],
            conj(ny),
            (lam @ x).scale(1 / qq) + ny - (x @ x).scale((q + 1 / q) / qq) + x @ nz @ x,
        ),
        compare(names[7], (y + z) @ ez, ez @ (x + z)),
    ]
    pw = powers(nz, mod.dim + 2)
    for i in range(1, mod.dim + 1):
        lhs = z @ pw[i] - pw[i] @ z
        rhs = (pw[i - 1] @ x - y @ pw[i - 1]).scale(q ** (1 - i) * q_int(i, ctx))
        out.append(compare(f"z n_z^i - n_z^i z = q^(1-i)[i]_q (n_z^(i-1) x - y n_z^(i-1)) [i={i}]", lhs, rhs))
    return out


@lru_cache(maxsize=256)
def module_exps(mod) -> dict[str, Matrix]:
    """exp_q of n_x, n_y, n_z on ``mod`` together with their inverses."""
    out = {}
    for s in ("x", "y", "z"):
        n = mod.matrix(f"n_{s}")
        out[s] = exp_q(n, mod.ctx)
        out[f"{s}^-1"] = exp_q_inverse(n, mod.ctx)
    return out
