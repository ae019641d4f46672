"""Lusztig automorphisms and Lusztig operators, with their identities as executable checks."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .checks import Check, compare, truth
from .expressions import CHEVALLEY, EQUITABLE, Expr
from .identifications import chevalley_relations, equitable_in_chevalley
from .linalg import Matrix, as_entry, nilpotency_index, powers
from .modules import Basis, Module, build_module, eval_expression, index_weights
from .qexp import module_exps
from .rotators import frak_r, maps_weight_space_to_negative, tau_maps
from .scalars import Ident, QContext, ThetaMode, q_fact


class Table(enum.Enum):
    L = "L"
    L_VEE = "L_vee"
    L_INV = "L_inv"
    L_VEE_INV = "L_vee_inv"


def _w(*s, c=1):
    return Expr.word(*s, coeff=c)


# Images of the Chevalley generators; k^-1 always goes to k.
_IMAGES = {
    Table.L: {"e": _w("f", "k", c=-1), "f": _w("k^-1", "e", c=-1)},
    Table.L_VEE: {"e": _w("k", "f", c=-1), "f": _w("e", "k^-1", c=-1)},
    Table.L_INV: {"e": _w("k^-1", "f", c=-1), "f": _w("e", "k", c=-1)},
    Table.L_VEE_INV: {"e": _w("f", "k^-1", c=-1), "f": _w("k", "e", c=-1)},
}

INVERSE_TABLE = {
    Table.L: Table.L_INV,
    Table.L_INV: Table.L,
    Table.L_VEE: Table.L_VEE_INV,
    Table.L_VEE_INV: Table.L_VEE,
}


@dataclass(frozen=True)
class AutomorphismTable:
    name: Table
    images: dict

    def image(self, expr: Expr, ctx: QContext | None = None) -> Expr:
        """Image of an expression; equitable symbols are first rewritten via ``ctx``'s identification."""
        if expr.symbols() & set(EQUITABLE):
            if ctx is None:
                raise ValueError("an identification is needed to map equitable symbols")
            expr = expr.substitute(equitable_in_chevalley(ctx))
        return expr.substitute(self.images)


def automorphism_table(name: Table) -> AutomorphismTable:
    images = dict(_IMAGES[name])
    images["k"] = Expr.symbol("k^-1")
    images["k^-1"] = Expr.symbol("k")
    return AutomorphismTable(name, images)


# --- operators -------------------------------------------------------------

# (outer, middle, sign of the q exponent): the summand is A^a B^b A^c (-1)^b q^(s(b - ac)) / [a]![b]![c]!
_SUMS = {
    "T": ("e", "f", 1),
    "Tvee": ("f", "e", 1),
    "Tinv": ("f", "e", -1),
    "TveeInv": ("e", "f", -1),
}


@lru_cache(maxsize=None)
def _sum_coeff(q: Fraction, sign: int, a: int, b: int, c: int):
    """(-1)^b q^(s(b - ac)) / [a]![b]![c]!, held in the matrix entry type."""
    ctx = QContext(q, 1, theta_mode=None)
    v = q ** (sign * (b - a * c)) / (q_fact(a, ctx) * q_fact(b, ctx) * q_fact(c, ctx))
    return as_entry(-v if b % 2 else v)


def _triple_sum(mod: Module, which: str) -> Matrix:
    outer, middle, sign = _SUMS[which]
    ctx = mod.ctx
    q = ctx.q
    A, B = mod.matrix(outer), mod.matrix(middle)
    apow = powers(A, nilpotency_index(A))
    nb = nilpotency_index(B)
    na = len(apow)
    # e raises the weight by 2, f lowers it by 2; the target weight is -lam
    shift = -1 if outer == "e" else 1
    weights = index_weights(mod)
    n = mod.dim
    zero = as_entry(0)
    cols = []
    for j, lam in enumerate(weights):
        col = [zero] * n
        for c, Ac in enumerate(apow):
            w2 = list(Ac.column(j))
            if not any(w2):
                break
            for b in range(nb):
                if b:
                    w2 = B.apply(w2)
                    if not any(w2):
                        break
                a = b - c + shift * lam
                if not 0 <= a < na:
                    continue
                w3 = apow[a].apply(w2)
                k = _sum_coeff(q, sign, a, b, c)
                for i, v in enumerate(w3):
                    if v:
                        col[i] += k * v
        cols.append(col)
    return Matrix([[cols[j][i] for j in range(n)] for i in range(n)])


@lru_cache(maxsize=256)
def lusztig_operators(mod: Module) -> dict[str, Matrix]:
    """T, T^vee and their inverses from the weight-space triple sums."""
    mod.require_type_one()
    return {name: _triple_sum(mod, name) for name in _SUMS}


def lusztig_T(mod: Module) -> Matrix:
    return lusztig_operators(mod)["T"]


def lusztig_T_vee(mod: Module) -> Matrix:
    return lusztig_operators(mod)["Tvee"]


def lusztig_T_inv(mod: Module) -> Matrix:
    return lusztig_operators(mod)["Tinv"]


def lusztig_T_vee_inv(mod: Module) -> Matrix:
    return lusztig_operators(mod)["TveeInv"]


def lusztig_T_oracle(d: int, ctx: QContext) -> dict[str, Matrix]:
    """Closed-form anti-diagonal matrices on V_d in the v-basis."""
    q = ctx.q
    n = d + 1

    def anti(coef):
        return Matrix.from_entries(n, {(d - i, i): coef(i) for i in range(n)})

    return {
        "T": anti(lambda i: (-1) ** (d - i) * q ** ((d - i) * (i + 1))),
        "Tvee": anti(lambda i: (-1) ** i * q ** (i * (d - i + 1))),
        "Tinv": anti(lambda i: (-1) ** i * q ** (i * (i - d - 1))),
        "TveeInv": anti(lambda i: (-1) ** (d - i) * q ** ((i - d) * (i + 1))),
    }


def oracle_checks(d: int, ctx: QContext) -> list[Check]:
    """Triple sums against the closed forms on the v-basis of V_d."""
    mod = build_module(d, 1, Basis.CHEVALLEY_V, ctx)
    ops = lusztig_operators(mod)
    oracle = lusztig_T_oracle(d, ctx)
    return [compare(f"{name} triple sum = closed form", ops[name], oracle[name]) for name in _SUMS]


def operator_checks(mod: Module) -> list[Check]:
    """Inverse pairs, weight flip and T = (-1)^lam q^lam T^vee per weight space."""
    ops = lusztig_operators(mod)
    ident = Matrix.identity(mod.dim)
    out = [
        compare("T T^-1 = I", ops["T"] @ ops["Tinv"], ident),
        compare("T^-1 T = I", ops["Tinv"] @ ops["T"], ident),
        compare("T^vee (T^vee)^-1 = I", ops["Tvee"] @ ops["TveeInv"], ident),
        compare("(T^vee)^-1 T^vee = I", ops["TveeInv"] @ ops["Tvee"], ident),
    ]
    for name in ("T", "Tvee"):
        out.append(truth(f"{name} V(lam) = V(-lam)", maps_weight_space_to_negative(ops[name], mod), "support"))
    out.append(truth("T = (-1)^lam q^lam T^vee on each V(lam)", verify_tt_vee_relation(mod), "mismatch"))
    return out


def verify_tt_vee_relation(mod: Module) -> bool:
    ops = lusztig_operators(mod)
    q = mod.ctx.q
    for j, lam in enumerate(index_weights(mod)):
        c = (-1) ** (lam % 2) * q**lam
        for a, b in (("T", "Tvee"), ("Tinv", "TveeInv")):
            if ops[a].column(j) != tuple(c * v for v in ops[b].column(j)):
                return False
    return True


# --- automorphisms realized by conjugation ----------------------------------

_CONJUGATOR = {
    Table.L: ("T", "Tinv"),
    Table.L_VEE: ("Tvee", "TveeInv"),
    Table.L_INV: ("Tinv", "T"),
    Table.L_VEE_INV: ("TveeInv", "Tvee"),
}

WORD_ALPHABET = CHEVALLEY + EQUITABLE


def random_words(count: int = 100, seed: int = 42, min_len: int = 1, max_len: int = 6) -> list[Expr]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        length = rng.randint(min_len, max_len)
        out.append(Expr.word(*(rng.choice(WORD_ALPHABET) for _ in range(length))))
    return out


def _label(expr: Expr) -> str:
    return " + ".join(".".join(w) or "1" for w in expr.terms) or "0"


@lru_cache(maxsize=4096)
def _word_image(table: Table, word: Expr, ctx: QContext) -> Expr:
    # images depend only on the table and the identification, not on the module
    return automorphism_table(table).image(word, ctx)


def verify_conjugation(mod: Module, table: Table, words) -> list[Check]:
    """A(xi) == S xi S^-1 for each word, S being the operator that realizes table A."""
    s_name, si_name = _CONJUGATOR[table]
    ops = lusztig_operators(mod)
    S, Si = ops[s_name], ops[si_name]
    out = []
    for w in words:
        lhs = eval_expression(_word_image(table, w, mod.ctx), mod)
        rhs = S @ eval_expression(w, mod) @ Si
        out.append(compare(f"{table.value}({_label(w)}) = {s_name} xi {s_name}^-1", lhs, rhs))
    return out


def verify_commuting_square(mod: Module) -> list[Check]:
    """L^vee(g) == k L(g) k^-1 for every Chevalley generator g."""
    k, kinv = mod.matrix("k"), mod.matrix("k^-1")
    L, Lv = automorphism_table(Table.L), automorphism_table(Table.L_VEE)
    out = []
    for g in CHEVALLEY:
        xi = Expr.symbol(g)
        lhs = eval_expression(Lv.image(xi), mod)
        rhs = k @ eval_expression(L.image(xi), mod) @ kinv
        out.append(compare(f"L_vee({g}) = k L({g}) k^-1", lhs, rhs))
    return out


def table_checks(mod: Module) -> list[Check]:
    """Each table's images obey the Chevalley relations, and each table undoes its inverse."""
    out = []
    for name in Table:
        aut = automorphism_table(name)
        imgs = [eval_expression(aut.images[g], mod) for g in CHEVALLEY]
        for rel, res in chevalley_relations(*imgs, mod.ctx.q):
            out.append(truth(f"{name.value} images satisfy {rel}", res.is_zero(), "nonzero residual"))
        inv = automorphism_table(INVERSE_TABLE[name])
        for g in CHEVALLEY:
            back = inv.image(aut.image(Expr.symbol(g)))
            out.append(compare(f"{INVERSE_TABLE[name].value}({name.value}({g})) = {g}", eval_expression(back, mod), mod.matrix(g)))
    return out


def _equitable_cells(ctx: QContext):
    """Automorphism, its inverse and the scalar pair (for n_x, for n_z) of each of the two cells."""
    q, th2 = ctx.q, ctx.theta**2
    primary = ctx.ident is Ident.PRIMARY
    first = (Table.L, Table.L_INV) if primary else (Table.L_VEE, Table.L_VEE_INV)
    second = (Table.L_VEE, Table.L_VEE_INV) if primary else (Table.L, Table.L_INV)
    return [
        ("(i)", first, th2 / q, q / th2),
        ("(ii)", second, th2 * q, 1 / (th2 * q)),
    ]


def verify_equitable_lusztig(mod: Module) -> list[Check]:
    """Conjugation action of T^(+-1), (T^vee)^(+-1) on n_x, y, n_z in the equitable generators."""
    ops = lusztig_operators(mod)
    g = mod.matrix
    nx, nz, yi = g("n_x"), g("n_z"), g("y^-1")
    ctx = mod.ctx
    out = []
    for cell, (fwd, bwd), cx, cz in _equitable_cells(ctx):
        for table, images in (
            (fwd, {"n_x": (yi @ nz @ yi).scale(cx), "y": yi, "n_z": nx.scale(cz)}),
            (bwd, {"n_x": nz.scale(cx), "y": yi, "n_z": (yi @ nx @ yi).scale(cz)}),
        ):
            s_name, si_name = _CONJUGATOR[table]
            S, Si = ops[s_name], ops[si_name]
            for sym, expected in images.items():
                out.append(compare(f"{cell} {table.value}({sym}) via {s_name}", S @ g(sym) @ Si, expected))
        # scalar-free specialization when theta^2 = q for (i), theta^2 = q^-1 for (ii)
        if cx == 1 and cz == 1:
            S, Si = ops[_CONJUGATOR[fwd][0]], ops[_CONJUGATOR[fwd][1]]
            out.append(compare(f"{cell} special {fwd.value}(n_x) = y^-1 n_z y^-1", S @ nx @ Si, yi @ nz @ yi))
            out.append(compare(f"{cell} special {fwd.value}(n_z) = n_x", S @ nz @ Si, nx))
            S, Si = ops[_CONJUGATOR[bwd][0]], ops[_CONJUGATOR[bwd][1]]
            out.append(compare(f"{cell} special {bwd.value}(n_x) = n_z", S @ nx @ Si, nz))
            out.append(compare(f"{cell} special {bwd.value}(n_z) = y^-1 n_x y^-1", S @ nz @ Si, yi @ nx @ yi))
    return out


# --- the tau / T correspondence and the main theorem -------------------------

# (theta mode, identification) -> operator name, fixed by hand rather than derived
TAU_TABLE = {
    (ThetaMode.SQ_Q, Ident.PRIMARY): "Tinv",
    (ThetaMode.SQ_Q, Ident.SECONDARY): "TveeInv",
    (ThetaMode.SQ_QINV, Ident.PRIMARY): "TveeInv",
    (ThetaMode.SQ_QINV, Ident.SECONDARY): "Tinv",
}
MAIN_THEOREM_TABLE = dict(TAU_TABLE)


def tau_scalar(d: int, ctx: QContext) -> Fraction:
    if ctx.theta_mode is ThetaMode.SQ_Q:
        return (-1) ** d * ctx.theta ** (d * d)
    return ctx.theta ** (-d * d)


def verify_tau_lu(d: int, ctx: QContext, basis: Basis = Basis.CHEVALLEY_V) -> Check:
    mod = build_module(d, 1, basis, ctx)
    op = TAU_TABLE[ctx.theta_mode, ctx.ident]
    _, ty, _ = tau_maps(mod)
    return compare(f"tau_y = scalar * {op}", ty, lusztig_operators(mod)[op].scale(tau_scalar(d, ctx)))


def verify_main_theorem(mod: Module) -> Check:
    mod.require_type_one()
    op = MAIN_THEOREM_TABLE[mod.ctx.theta_mode, mod.ctx.ident]
    rhs = module_exps(mod)["z"] @ frak_r(mod)
    return compare(f"{op} = exp_q(n_z) FrakR", lusztig_operators(mod)[op], rhs)
