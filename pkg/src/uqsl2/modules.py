"""Finite-dimensional U_q(sl2)-modules as explicit generator matrices.

A :class:`Module` carries matrices for every symbol of
:data:`~uqsl2.expressions.ALPHABET`.  The generators native to its basis
are written down directly; the other presentation is obtained through
the identification selected by the module's context, so both generator
sets act on one and the same vector space.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import (
    InconsistentError,
    MixedTypeError,
    NonIntegralWeightError,
    NotTypeOneError,
    UnknownSymbolError,
)
from .expressions import ALPHABET, Expr, evaluate
from .identifications import chevalley_from_equitable, equitable_from_chevalley
from .linalg import Matrix, block_diag, mat_inverse
from .scalars import QContext, q_int


class Basis(enum.Enum):
    CHEVALLEY_V = "chevalley"
    EQUITABLE_U = "equitable"


@dataclass(frozen=True, eq=False)
class Module:
    """A direct sum of irreducibles V_{d,eps} with all generator matrices.

    ``diameters`` lists the summands in block order; an irreducible module
    has exactly one.  ``matrices`` maps alphabet symbols to matrices.
    """

    diameters: tuple
    epsilon: int
    basis: Basis
    ctx: QContext
    matrices: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return sum(d + 1 for d in self.diameters)

    @property
    def is_irreducible(self) -> bool:
        return len(self.diameters) == 1

    @property
    def d(self) -> int:
        if not self.is_irreducible:
            raise ValueError("diameter is only defined for an irreducible module")
        return self.diameters[0]

    @property
    def offsets(self) -> tuple:
        out, off = [], 0
        for d in self.diameters:
            out.append(off)
            off += d + 1
        return tuple(out)

    @property
    def is_type_one(self) -> bool:
        return self.epsilon == 1

    def matrix(self, symbol: str) -> Matrix:
        try:
            return self.matrices[symbol]
        except KeyError:
            raise UnknownSymbolError(symbol) from None

    def with_matrix(self, symbol: str, m: Matrix) -> Module:
        """Copy of this module with one matrix replaced (used for negative controls)."""
        mats = dict(self.matrices)
        mats[symbol] = m
        return Module(self.diameters, self.epsilon, self.basis, self.ctx, mats)

    def require_type_one(self) -> None:
        if not self.is_type_one:
            raise NotTypeOneError(f"module has type {self.epsilon}, not 1")

    def to_json(self) -> dict:
        return {
            "d": self.d if self.is_irreducible else list(self.diameters),
            "epsilon": self.epsilon,
            "basis": self.basis.value,
            "generators": {s: self.matrices[s].to_json() for s in ("e", "f", "k", "k^-1", "x", "y", "y^-1", "z")},
        }


def _nu_and_n(mats: dict, q: Fraction) -> dict:
    """nu_* in both displayed forms (must agree) and n_* = nu_*/(q - q^-1)."""
    x, y, z = mats["x"], mats["y"], mats["z"]
    ident = Matrix.identity(x.rows)
    out = {}
    for name, (g, h) in {"x": (y, z), "y": (z, x), "z": (x, y)}.items():
        first = (ident - g @ h).scale(q)
        second = (ident - h @ g).scale(1 / q)
        if first != second:
            raise InconsistentError(f"the two forms of nu_{name} disagree")
        out[f"nu_{name}"] = first
        out[f"n_{name}"] = first.scale(1 / (q - 1 / q))
    return out


def _casimir(mats: dict, q: Fraction) -> Matrix:
    e, f, k, kinv = mats["e"], mats["f"], mats["k"], mats["k^-1"]
    return (e @ f).scale((q - 1 / q) ** 2) + k.scale(1 / q) + kinv.scale(q)


def _complete(mats: dict, ctx: QContext) -> dict:
    mats.update(_nu_and_n(mats, ctx.q))
    mats["Lambda"] = _casimir(mats, ctx.q)
    return mats


def _check_eps(eps: int) -> None:
    if eps not in (1, -1):
        raise ValueError(f"epsilon must be 1 or -1, got {eps}")


@lru_cache(maxsize=512)
def chevalley_module(d: int, eps: int, ctx: QContext) -> Module:
    """V_{d,eps} in the basis v_0..v_d where k is diagonal and e, f shift."""
    if d < 0:
        raise ValueError("diameter must be nonnegative")
    _check_eps(eps)
    q = ctx.q
    n = d + 1
    k = Matrix.diag([eps * q ** (d - 2 * i) for i in range(n)])
    kinv = Matrix.diag([eps * q ** (2 * i - d) for i in range(n)])
    f = Matrix.from_entries(n, {(i + 1, i): q_int(i + 1, ctx) for i in range(d)})
    e = Matrix.from_entries(n, {(i - 1, i): eps * q_int(d - i + 1, ctx) for i in range(1, n)})
    mats = {"e": e, "f": f, "k": k, "k^-1": kinv}
    mats.update(zip(("x", "y", "y^-1", "z"), equitable_from_chevalley(e, f, k, kinv, ctx)))
    return Module((d,), eps, Basis.CHEVALLEY_V, ctx, _complete(mats, ctx))


@lru_cache(maxsize=512)
def equitable_module(d: int, eps: int, ctx: QContext) -> Module:
    """V_{d,eps} in the basis u_0..u_d where y is diagonal and x, z are bidiagonal."""
    if d < 0:
        raise ValueError("diameter must be nonnegative")
    _check_eps(eps)
    q = ctx.q
    n = d + 1
    x = {(i, i): eps * q ** (2 * i - d) for i in range(n)}
    x.update({(i, i + 1): eps * (q**d - q ** (2 * i - d)) for i in range(d)})
    z = {(i, i): eps * q ** (2 * i - d) for i in range(n)}
    z.update({(i, i - 1): eps * (q**-d - q ** (2 * i - d)) for i in range(1, n)})
    xm, zm = Matrix.from_entries(n, x), Matrix.from_entries(n, z)
    y = Matrix.diag([eps * q ** (d - 2 * i) for i in range(n)])
    yinv = Matrix.diag([eps * q ** (2 * i - d) for i in range(n)])
    mats = {"x": xm, "y": y, "y^-1": yinv, "z": zm}
    mats.update(zip(("e", "f", "k", "k^-1"), chevalley_from_equitable(xm, y, yinv, zm, ctx)))
    return Module((d,), eps, Basis.EQUITABLE_U, ctx, _complete(mats, ctx))


def build_module(d: int, eps: int, basis: Basis, ctx: QContext) -> Module:
    if basis is Basis.CHEVALLEY_V:
        return chevalley_module(d, eps, ctx)
    return equitable_module(d, eps, ctx)


def direct_sum(parts) -> Module:
    """Block-diagonal sum of type-1 modules sharing basis and context."""
    parts = list(parts)
    if not parts:
        raise ValueError("direct sum of no modules")
    if any(p.epsilon != 1 for p in parts):
        raise MixedTypeError("direct sums are built from type-1 summands only")
    basis, ctx = parts[0].basis, parts[0].ctx
    if any(p.basis is not basis or p.ctx != ctx for p in parts):
        raise ValueError("summands must share basis kind and context")
    if len(parts) == 1:
        return parts[0]
    mats = {s: block_diag([p.matrices[s] for p in parts]) for s in ALPHABET}
    diameters = tuple(d for p in parts for d in p.diameters)
    return Module(diameters, 1, basis, ctx, mats)


def sum_of(diameters, ctx: QContext, basis: Basis = Basis.CHEVALLEY_V) -> Module:
    return direct_sum(build_module(d, 1, basis, ctx) for d in diameters)


def weight_of(value: Fraction, q: Fraction) -> int | None:
    """The integer lam with q^lam == value, or None."""
    value = Fraction(int(value.numerator), int(value.denominator)) if hasattr(value, "numerator") else Fraction(value)
    if value == 0:
        return None
    if value == 1:
        return 0
    aq = abs(q)
    # |lam| is bounded by the bit size of value relative to |q|
    bound = value.numerator.bit_length() + value.denominator.bit_length() + 2
    step = 1 if (abs(value) > 1) == (aq > 1) else -1
    p, lam = Fraction(1), 0
    for _ in range(bound):
        lam += step
        p = q**lam
        if p == value:
            return lam
    return None


def weight_decomposition(mod: Module) -> dict[int, list[int]]:
    """Weight lam -> basis indices spanning V(lam), read off the diagonal k.

    Keys are ordered by first appearance in the basis.
    """
    k = mod.matrix("k")
    if not k.is_diagonal():
        raise NonIntegralWeightError("k is not diagonal in this basis")
    out: dict[int, list[int]] = {}
    for i, v in enumerate(k.diagonal()):
        lam = weight_of(v, mod.ctx.q)
        if lam is None:
            raise NonIntegralWeightError(f"k eigenvalue {v} is not an integral power of q")
        out.setdefault(lam, []).append(i)
    return out


def index_weights(mod: Module) -> list[int]:
    """Weight of each basis index."""
    out = [0] * mod.dim
    for lam, idx in weight_decomposition(mod).items():
        for i in idx:
            out[i] = lam
    return out


def eval_expression(expr: Expr, mod: Module) -> Matrix:
    return evaluate(expr, mod.matrix, mod.dim)


def casimir_matrix(mod: Module) -> Matrix:
    return mod.matrix("Lambda")


def casimir_six_forms(mod: Module) -> list[Matrix]:
    """The six equitable expressions for the normalized Casimir, in display order."""
    q = mod.ctx.q
    x, y, z = mod.matrix("x"), mod.matrix("y"), mod.matrix("z")
    qi = 1 / q
    return [
        x * q + y * qi + z * q - (x @ y @ z) * q,
        x * qi + y * q + z * qi - (z @ y @ x) * qi,
        y * q + z * qi + x * q - (y @ z @ x) * q,
        y * qi + z * q + x * qi - (x @ z @ y) * qi,
        z * q + x * qi + y * q - (z @ x @ y) * q,
        z * qi + x * q + y * qi - (y @ x @ z) * qi,
    ]


def nu_and_n_matrices(mod: Module) -> dict[str, Matrix]:
    return {s: mod.matrix(s) for s in ("nu_x", "nu_y", "nu_z", "n_x", "n_y", "n_z")}


def x_inverse(mod: Module) -> Matrix:
    return mat_inverse(mod.matrix("x"))
