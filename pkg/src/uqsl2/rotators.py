"""Cap operators X, Y, Z, the standard rotator, Upsilon, the uniform rotator and tau maps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .checks import Check, compare, truth
from .errors import InconsistentError
from .linalg import Matrix, Poly, lagrange_interpolate, mat_inverse, poly_eval, scalar_detect
from .modules import Module, index_weights
from .qexp import module_exps
from .scalars import QContext, q_half_power


@lru_cache(maxsize=None)
def _standard_polynomial(d: int, q: Fraction) -> Poly:
    nodes = [q ** (d - 2 * i) for i in range(d + 1)]
    values = [q ** (2 * i * (d - i)) for i in range(d + 1)]
    return lagrange_interpolate(nodes, values)


def standard_polynomial(d: int, ctx: QContext) -> Poly:
    """The polynomial G of degree <= d with G(q^(d-2i)) = q^(2i(d-i))."""
    if d < 0:
        raise ValueError("diameter must be nonnegative")
    return _standard_polynomial(d, ctx.q)


@dataclass(frozen=True)
class CapOperators:
    X: Matrix
    Y: Matrix
    Z: Matrix
    G: Poly


def _irreducible_type_one(mod: Module) -> None:
    mod.require_type_one()
    if not mod.is_irreducible:
        raise ValueError("this operator is defined on irreducible modules only")


@lru_cache(maxsize=256)
def cap_operators(mod: Module) -> CapOperators:
    """X = G(x), Y = G(y), Z = G(z), each cross-checked against G of the inverse."""
    _irreducible_type_one(mod)
    G = standard_polynomial(mod.d, mod.ctx)
    caps = {}
    for s in ("x", "y", "z"):
        g = mod.matrix(s)
        val = poly_eval(G, g)
        if val != poly_eval(G, mat_inverse(g)):
            raise InconsistentError(f"G({s}) != G({s}^-1)")
        caps[s.upper()] = val
    return CapOperators(caps["X"], caps["Y"], caps["Z"], G)


@lru_cache(maxsize=256)
def standard_rotator(mod: Module) -> Matrix:
    """Omega = exp_q(n_x) Y exp_q(n_z)."""
    _irreducible_type_one(mod)
    ex = module_exps(mod)
    return ex["x"] @ cap_operators(mod).Y @ ex["z"]


def rotator_formulas(mod: Module) -> list[tuple[str, Matrix]]:
    """Nine product formulas, each of which should equal Omega."""
    c = cap_operators(mod)
    ex = module_exps(mod)
    Ex, Ey, Ez = ex["x"], ex["y"], ex["z"]
    X, Y, Z = c.X, c.Y, c.Z
    return [
        ("exp_q(n_x) Y exp_q(n_z)", Ex @ Y @ Ez),
        ("exp_q(n_y) Z exp_q(n_x)", Ey @ Z @ Ex),
        ("exp_q(n_z) X exp_q(n_y)", Ez @ X @ Ey),
        ("exp_q(n_x) exp_q(n_z) X", Ex @ Ez @ X),
        ("exp_q(n_y) exp_q(n_x) Y", Ey @ Ex @ Y),
        ("exp_q(n_z) exp_q(n_y) Z", Ez @ Ey @ Z),
        ("Z exp_q(n_x) exp_q(n_z)", Z @ Ex @ Ez),
        ("X exp_q(n_y) exp_q(n_x)", X @ Ey @ Ex),
        ("Y exp_q(n_z) exp_q(n_y)", Y @ Ez @ Ey),
    ]


def rotator_law(R: Matrix, mod: Module, label: str = "R") -> list[Check]:
    """R^-1 x R = y, R^-1 y R = z, R^-1 z R = x."""
    try:
        Ri = mat_inverse(R)
    except ZeroDivisionError:
        return [truth(f"{label} invertible", False, "singular")]
    x, y, z = mod.matrix("x"), mod.matrix("y"), mod.matrix("z")
    return [
        compare(f"{label}^-1 x {label} = y", Ri @ x @ R, y),
        compare(f"{label}^-1 y {label} = z", Ri @ y @ R, z),
        compare(f"{label}^-1 z {label} = x", Ri @ z @ R, x),
    ]


def omega_cubed_scalar(mod: Module) -> Fraction | None:
    om = standard_rotator(mod)
    return scalar_detect(om @ om @ om)


def rotator_conjugations(mod: Module) -> list[Check]:
    """Conjugation identities for Omega, Y and exp_q(n_z) on an irreducible type-1 module."""
    om = standard_rotator(mod)
    omi = mat_inverse(om)
    c = cap_operators(mod)
    ex = module_exps(mod)
    g = mod.matrix
    nx, ny, nz, y, yi = g("n_x"), g("n_y"), g("n_z"), g("y"), g("y^-1")
    Yi = mat_inverse(c.Y)

    def conj(m):
        return omi @ m @ om

    return [
        compare("Omega^-1 n_x Omega = n_y", conj(nx), ny),
        compare("Omega^-1 n_y Omega = n_z", conj(ny), nz),
        compare("Omega^-1 n_z Omega = n_x", conj(nz), nx),
        compare("Omega^-1 exp_q(n_x) Omega = exp_q(n_y)", conj(ex["x"]), ex["y"]),
        compare("Omega^-1 exp_q(n_y) Omega = exp_q(n_z)", conj(ex["y"]), ex["z"]),
        compare("Omega^-1 exp_q(n_z) Omega = exp_q(n_x)", conj(ex["z"]), ex["x"]),
        compare("Omega^-1 X Omega = Y", conj(c.X), c.Y),
        compare("Omega^-1 Y Omega = Z", conj(c.Y), c.Z),
        compare("Omega^-1 Z Omega = X", conj(c.Z), c.X),
        compare("exp_q(n_z)^-1 Y exp_q(n_z) = X", ex["z^-1"] @ c.Y @ ex["z"], c.X),
        compare("Y y = y Y", c.Y @ y, y @ c.Y),
        compare("Y^-1 n_x Y = y^-1 n_x y^-1", Yi @ nx @ c.Y, yi @ nx @ yi),
        compare("Y n_x Y^-1 = y n_x y", c.Y @ nx @ Yi, y @ nx @ y),
        compare("Y^-1 n_z Y = y n_z y", Yi @ nz @ c.Y, y @ nz @ y),
        compare("Y n_z Y^-1 = y^-1 n_z y^-1", c.Y @ nz @ Yi, yi @ nz @ yi),
    ]


def upsilon(mod: Module) -> Matrix:
    """Diagonal operator acting on V(lam) as q^(-lam^2/2)."""
    mod.require_type_one()
    return Matrix.diag([q_half_power(-lam * lam, mod.ctx) for lam in index_weights(mod)])


@lru_cache(maxsize=256)
def frak_r(mod: Module) -> Matrix:
    """The uniform rotator exp_q(n_x) Upsilon exp_q(n_z) on any type-1 module."""
    mod.require_type_one()
    ex = module_exps(mod)
    return ex["x"] @ upsilon(mod) @ ex["z"]


def tau_maps(mod: Module) -> tuple[Matrix, Matrix, Matrix]:
    """(tau_x, tau_y, tau_z) = (exp_q(n_y), exp_q(n_z), exp_q(n_x)) times Omega."""
    om = standard_rotator(mod)
    ex = module_exps(mod)
    return ex["y"] @ om, ex["z"] @ om, ex["x"] @ om


def maps_weight_space_to_negative(m: Matrix, mod: Module) -> bool:
    """Column support check: every column indexed by V(lam) lies in V(-lam), and m is invertible."""
    w = index_weights(mod)
    for j in range(m.cols):
        for i in range(m.rows):
            if m[i, j] and w[i] != -w[j]:
                return False
    try:
        mat_inverse(m)
    except ZeroDivisionError:
        return False
    return True


def tau_checks(mod: Module) -> list[Check]:
    tx, ty, tz = tau_maps(mod)
    om = standard_rotator(mod)
    ex = module_exps(mod)
    c = cap_operators(mod)
    g = mod.matrix
    nx, nz, y, yi = g("n_x"), g("n_z"), g("y"), g("y^-1")
    tyi = mat_inverse(ty)
    om3 = om @ om @ om
    return [
        compare("tau_x = Omega exp_q(n_z)", tx, om @ ex["z"]),
        compare("tau_y = Omega exp_q(n_x)", ty, om @ ex["x"]),
        compare("tau_z = Omega exp_q(n_y)", tz, om @ ex["y"]),
        compare("tau_y^-1 n_x tau_y = y^-1 n_z y^-1", tyi @ nx @ ty, yi @ nz @ yi),
        compare("tau_y^-1 y tau_y = y^-1", tyi @ y @ ty, yi),
        compare("tau_y^-1 n_z tau_y = n_x", tyi @ nz @ ty, nx),
        compare("X = Omega^3 tau_x^-2", c.X, om3 @ tx ** -2),
        compare("Y = Omega^3 tau_y^-2", c.Y, om3 @ ty ** -2),
        compare("Z = Omega^3 tau_z^-2", c.Z, om3 @ tz ** -2),
        truth("tau_y V(lam) = V(-lam)", maps_weight_space_to_negative(ty, mod), "weight flip fails"),
    ]


def frak_r_checks(mod: Module) -> list[Check]:
    """Rotator law for the uniform rotator, its relation to Omega on each summand, and block invariance."""
    R = frak_r(mod)
    out = rotator_law(R, mod, "FrakR")
    # summand blocks must be preserved
    blocks_ok = True
    for off, d in zip(mod.offsets, mod.diameters):
        for j in range(off, off + d + 1):
            for i in range(mod.dim):
                if R[i, j] and not off <= i <= off + d:
                    blocks_ok = False
    out.append(truth("FrakR preserves every summand", blocks_ok, "off-block entry"))
    if mod.is_irreducible:
        d = mod.d
        out.append(compare("Y = q^(d^2/2) Upsilon", cap_operators(mod).Y, upsilon(mod).scale(q_half_power(d * d, mod.ctx))))
        om = standard_rotator(mod)
        out.append(compare("FrakR = q^(-d^2/2) Omega", R, om.scale(q_half_power(-d * d, mod.ctx))))
        ratio = scalar_detect(R @ mat_inverse(om))
        out.append(truth("FrakR Omega^-1 is a scalar", ratio == q_half_power(-d * d, mod.ctx), f"got {ratio}"))
    return out

