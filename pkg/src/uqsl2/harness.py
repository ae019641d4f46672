"""Parameter sweeps over all suites and the report they produce."""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction

from . import identifications as ident_mod
from . import lusztig, qexp, rotators
from .checks import Check, compare, truth
from .errors import ConfigError, Uqsl2Error
from .expressions import Expr
from .linalg import Matrix, mat_inverse, nilpotency_index
from .modules import (
    Basis,
    Module,
    build_module,
    casimir_six_forms,
    index_weights,
    sum_of,
    weight_decomposition,
)
from .scalars import Ident, QContext, ThetaMode, q_int

SUITES = ("relations", "casimir", "identifications", "qexp", "rotators", "lusztig", "main-theorem")
DEFAULT_PROFILES = ((1, 3), (0, 2, 2), (1, 2, 3))


@dataclass(frozen=True)
class SuiteConfig:
    d_max: int = 8
    q_values: tuple = (Fraction(4), Fraction(9))
    theta_modes: tuple = (ThetaMode.SQ_Q, ThetaMode.SQ_QINV)
    t_values: tuple = (-2, -1, 0, 1, 2)
    idents: tuple = (Ident.PRIMARY, Ident.SECONDARY)
    suites: tuple = SUITES
    seed: int = 42
    profiles: tuple = DEFAULT_PROFILES
    words: int = 100
    main_theorem_d_max: int = 6
    jobs: int = 1

    def __post_init__(self):
        if self.d_max < 0:
            raise ConfigError("d_max must be nonnegative")
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites: {sorted(unknown)}")
        if self.seed < 0:
            raise ConfigError("seed must be unsigned")
        for q in self.q_values:
            QContext.standard(q)  # raises ConfigError for unusable q

    def contexts(self) -> list[QContext]:
        return [
            QContext.standard(q, mode, t, ident)
            for q, mode, t, ident in itertools.product(self.q_values, self.theta_modes, self.t_values, self.idents)
        ]


@dataclass
class Report:
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def failed(self) -> int:
        return sum(1 for r in self.records if not r["pass"])

    @property
    def passed(self) -> int:
        return self.total - self.failed

    def summary(self) -> dict:
        by_suite: dict = {}
        for r in self.records:
            s = by_suite.setdefault(r["suite"], {"total": 0, "failed": 0})
            s["total"] += 1
            s["failed"] += not r["pass"]
        return {"total": self.total, "passed": self.passed, "failed": self.failed, "suites": by_suite}

    def to_json(self) -> str:
        return json.dumps(self.records, indent=1, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = []
        failures = [r for r in self.records if not r["pass"]]
        if failures:
            lines.append(f"FAILURES ({len(failures)})")
            for r in failures:
                lines.append("  FAIL " + _describe(r))
        s = self.summary()
        lines.append("SUITES")
        for name, c in s["suites"].items():
            lines.append(f"  {name:16s} {c['total'] - c['failed']:6d}/{c['total']:<6d} passed")
        lines.append(f"TOTAL {s['passed']}/{s['total']} passed, {s['failed']} failed")
        return "\n".join(lines) + "\n"


def _describe(r: dict) -> str:
    params = " ".join(f"{k}={v}" for k, v in sorted(r["params"].items()))
    extra = f" at {tuple(r['mismatch'])}" if r.get("mismatch") else ""
    note = f" ({r['note']})" if r.get("note") else ""
    return f"[{r['suite']}] {r['identity']} | {params}{extra}{note}"


@lru_cache(maxsize=None)
def _ctx_json(ctx: QContext) -> tuple:
    return tuple(ctx.to_json().items())


def _params(ctx: QContext, **extra) -> dict:
    p = dict(_ctx_json(ctx))
    p.update(extra)
    return p


def _record(suite: str, check: Check, params: dict) -> dict:
    rec = {"suite": suite, "identity": check.identity, "params": params, "pass": check.passed}
    if check.mismatch is not None:
        rec["mismatch"] = list(check.mismatch)
    if check.note:
        rec["note"] = check.note
    return rec


def _mod_params(ctx: QContext, mod: Module) -> dict:
    # one dict shared by every record of the module; records are never mutated
    d = mod.d if mod.is_irreducible else list(mod.diameters)
    return _params(ctx, d=d, eps=mod.epsilon, basis=mod.basis.value)


def _guard(fn, name: str) -> list[Check]:
    """Run a check producer; a package error becomes one failed check."""
    try:
        return list(fn())
    except Uqsl2Error as exc:
        return [Check(name, False, note=f"{type(exc).__name__}: {exc}")]


# --- individual suites ----------------------------------------------------


def _charpoly_checks(mod: Module, sym: str) -> Check:
    """sym is multiplicity-free with eigenvalues eps q^(d-2i): the full product vanishes, no partial one does."""
    d, eps, q = mod.d, mod.epsilon, mod.ctx.q
    g = mod.matrix(sym)
    ident = Matrix.identity(d + 1)
    factors = [g - ident.scale(eps * q ** (d - 2 * i)) for i in range(d + 1)]

    def prod(skip):
        out = ident
        for i, f in enumerate(factors):
            if i != skip:
                out = out @ f
        return out

    ok = prod(None).is_zero() and all(not prod(i).is_zero() for i in range(d + 1))
    return truth(f"{sym} multiplicity-free with eigenvalues eps q^(d-2i)", ok, "characteristic data mismatch")


def _module_relation_checks(mod: Module) -> list[Check]:
    g = mod.matrix
    q = mod.ctx.q
    out = [
        truth(f"Chevalley: {name}", r.is_zero(), "nonzero residual")
        for name, r in ident_mod.chevalley_relations(g("e"), g("f"), g("k"), g("k^-1"), q)
    ]
    out += [
        truth(f"equitable: {name}", r.is_zero(), "nonzero residual")
        for name, r in ident_mod.equitable_relations(g("x"), g("y"), g("y^-1"), g("z"), q)
    ]
    x, y, yi, z = g("x"), g("y"), g("y^-1"), g("z")
    out.append(compare("x = y^-1 - q^-1 nu_z y^-1", x, yi - (g("nu_z") @ yi).scale(1 / q)))
    out.append(compare("z = y^-1 - q^-1 y^-1 nu_x", z, yi - (yi @ g("nu_x")).scale(1 / q)))
    q2 = q * q
    nx, ny, nz = g("n_x"), g("n_y"), g("n_z")
    for a, n, an, c in (
        ("x", "n_y", x, ny), ("y", "n_z", y, nz), ("z", "n_x", z, nx),
    ):
        out.append(compare(f"{a} {n} = q^2 {n} {a}", an @ c, (c @ an).scale(q2)))
    for a, n, an, c in (
        ("x", "n_z", x, nz), ("y", "n_x", y, nx), ("z", "n_y", z, ny),
    ):
        out.append(compare(f"{a} {n} = q^-2 {n} {a}", an @ c, (c @ an).scale(1 / q2)))
    for s in ("x", "z"):
        try:
            mat_inverse(g(s))
            out.append(truth(f"{s} invertible", True))
        except ZeroDivisionError:
            out.append(truth(f"{s} invertible", False, "singular"))
    if mod.is_irreducible:
        d = mod.d
        for s in ("e", "f", "n_x", "n_y", "n_z"):
            idx = nilpotency_index(g(s))
            out.append(truth(f"{s} nilpotent of index d+1", idx == d + 1, f"index {idx}"))
        for s in ("x", "y", "z"):
            out.append(_charpoly_checks(mod, s))
        if mod.basis is Basis.EQUITABLE_U:
            n = d + 1
            ux = Matrix.from_entries(n, {(i, i - 1): q ** (1 - i) * q_int(i, mod.ctx) for i in range(1, n)})
            uz = Matrix.from_entries(n, {(i, i + 1): -(q ** (d - 1 - i)) * q_int(d - i, mod.ctx) for i in range(d)})
            out.append(compare("n_x matrix in the u-basis", nx, ux))
            out.append(compare("n_z matrix in the u-basis", nz, uz))
    if mod.is_type_one:
        out += _weight_checks(mod)
    return out


def _weight_checks(mod: Module) -> list[Check]:
    g = mod.matrix
    q = mod.ctx.q
    weights = index_weights(mod)
    sign = 1 if mod.ctx.ident is Ident.PRIMARY else -1
    y, e, f = g("y"), g("e"), g("f")
    y_ok = y.is_diagonal() and all(y[i, i] == q ** (sign * lam) for i, lam in enumerate(weights))
    move_ok = all(
        (e[i, j] == 0 or weights[i] == weights[j] + 2) and (f[i, j] == 0 or weights[i] == weights[j] - 2)
        for i in range(mod.dim)
        for j in range(mod.dim)
    )
    return [
        truth("y acts on V(lam) as q^(+-lam)", y_ok, "wrong scalar"),
        truth("e V(lam) in V(lam+2), f V(lam) in V(lam-2)", move_ok, "weight leak"),
    ]


def _irreducibles(cfg: SuiteConfig, ctx: QContext, eps_values=(1, -1)):
    for basis in Basis:
        for eps in eps_values:
            for d in range(cfg.d_max + 1):
                yield build_module(d, eps, basis, ctx)


def _profiles(cfg: SuiteConfig, ctx: QContext):
    for basis in Basis:
        for prof in cfg.profiles:
            yield sum_of(prof, ctx, basis)


def suite_relations(cfg: SuiteConfig, ctx: QContext) -> list[dict]:
    out = []
    for mod in itertools.chain(_irreducibles(cfg, ctx), _profiles(cfg, ctx)):
        p = _mod_params(ctx, mod)
        checks = _guard(lambda: _module_relation_checks(mod), "module relations")
        if not mod.is_irreducible:
            wd = weight_decomposition(mod)
            got = {lam: len(v) for lam, v in wd.items()}
            expected = {}
            for d in mod.diameters:
                for i in range(d + 1):
                    expected[d - 2 * i] = expected.get(d - 2 * i, 0) + 1
            checks.append(truth("weight multiplicities match summand diameters", got == expected, str(got)))
        out += [_record("relations", c, p) for c in checks]
    return out


def suite_casimir(cfg: SuiteConfig, ctx: QContext) -> list[dict]:
    out = []
    q = ctx.q
    for mod in _irreducibles(cfg, ctx):
        d, eps = mod.d, mod.epsilon
        lam = mod.matrix("Lambda")
        scalar = eps * (q ** (d + 1) + q ** (-d - 1))
        checks = [compare("Lambda = eps (q^(d+1) + q^(-d-1)) I", lam, Matrix.identity(d + 1).scale(scalar))]
        for i, form in enumerate(casimir_six_forms(mod), 1):
            checks.append(compare(f"Lambda = equitable form {i}", form, lam))
        out += [_record("casimir", c, _mod_params(ctx, mod)) for c in checks]
    return out


def _identification_checks(mod: Module) -> list[Check]:
    g = mod.matrix
    ctx = mod.ctx
    checks = []
    chev = (g("e"), g("f"), g("k"), g("k^-1"))
    equi = (g("x"), g("y"), g("y^-1"), g("z"))
    try:
        back = ident_mod.chevalley_from_equitable(*equi, ctx)
        checks += [compare(f"round trip recovers {s}", b, a) for s, a, b in zip(("e", "f", "k", "k^-1"), chev, back)]
    except Uqsl2Error as exc:
        checks.append(Check("inverse map satisfies Chevalley relations", False, note=str(exc)))
    try:
        fwd = ident_mod.equitable_from_chevalley(*chev, ctx)
        checks += [compare(f"round trip recovers {s}", b, a) for s, a, b in zip(("x", "y", "y^-1", "z"), equi, fwd)]
    except Uqsl2Error as exc:
        checks.append(Check("forward map satisfies equitable relations", False, note=str(exc)))
    checks += [compare(name, lhs, rhs) for name, lhs, rhs in ident_mod.nxnz_chevalley_forms(mod)]
    checks.append(compare(f"Lambda in {ctx.ident.value} equitable form", ident_mod.casimir_in_equitable(equi[0], equi[1], equi[3], ctx), g("Lambda")))
    return checks


def suite_identifications(cfg: SuiteConfig, ctx: QContext) -> list[dict]:
    out = []
    for mod in _irreducibles(cfg, ctx):
        checks = _guard(lambda: _identification_checks(mod), "identification")
        out += [_record("identifications", c, _mod_params(ctx, mod)) for c in checks]
    return out


def qexp_checks(mod: Module) -> list[Check]:
    ctx = mod.ctx
    ident = Matrix.identity(mod.dim)
    exps = qexp.module_exps(mod)
    checks = []
    for s in ("x", "y", "z"):
        n = mod.matrix(f"n_{s}")
        ex, exi = exps[s], exps[f"{s}^-1"]
        checks.append(compare(f"exp_q(n_{s}) exp_q(n_{s})^-1 = I", ex @ exi, ident))
        checks.append(compare(f"exp_q(n_{s})^-1 exp_q(n_{s}) = I", exi @ ex, ident))
        checks.append(compare(f"inverse series of n_{s} = Gauss-Jordan inverse", exi, mat_inverse(ex)))
        checks.append(truth(f"shift identity for n_{s}", qexp.verify_shift_identity(n, ctx)))
        checks.append(truth(f"exp_q(n_{s}) unipotent", _is_nilpotent(ex - ident)))
    return checks + qexp.conjugation_suite(mod)


def _is_nilpotent(m: Matrix) -> bool:
    try:
        nilpotency_index(m)
        return True
    except Uqsl2Error:
        return False


def suite_qexp(cfg: SuiteConfig, ctx: QContext) -> list[dict]:
    out = []
    for mod in _irreducibles(cfg, ctx, eps_values=(1,)):
        checks = _guard(lambda: qexp_checks(mod), "q-exponential")
        out += [_record("qexp", c, _mod_params(ctx, mod)) for c in checks]
    return out


def rotator_checks(mod: Module) -> list[Check]:
    d, q = mod.d, mod.ctx.q
    om = rotators.standard_rotator(mod)
    checks = rotators.rotator_law(om, mod, "Omega")
    for name, m in rotators.rotator_formulas(mod):
        checks.append(compare(f"Omega = {name}", m, om))
    scalar = rotators.omega_cubed_scalar(mod)
    expected = (-1) ** d * q ** (d * (d - 1))
    checks.append(truth("Omega^3 = (-1)^d q^(d(d-1)) I", scalar == expected, f"got {scalar}"))
    checks += rotators.rotator_conjugations(mod)
    checks += rotators.tau_checks(mod)
    checks += rotators.frak_r_checks(mod)
    return checks


def suite_rotators(cfg: SuiteConfig, ctx: QContext) -> list[dict]:
    out = []
    for mod in _irreducibles(cfg, ctx, eps_values=(1,)):
        checks = _guard(lambda: rotator_checks(mod), "rotators")
        out += [_record("rotators", c, _mod_params(ctx, mod)) for c in checks]
    for mod in _profiles(cfg, ctx):
        checks = _guard(lambda: rotators.frak_r_checks(mod), "uniform rotator")
        out += [_record("rotators", c, _mod_params(ctx, mod)) for c in checks]
    return out


def suite_lusztig(cfg: SuiteConfig, ctx: QContext) -> list[dict]:
    out = []
    for d in range(cfg.d_max + 1):
        mod = build_module(d, 1, Basis.CHEVALLEY_V, ctx)
        out += [_record("lusztig", c, _mod_params(ctx, mod)) for c in _guard(lambda: lusztig.oracle_checks(d, ctx), "oracle")]
    words = [Expr.symbol(s) for s in ("e", "f", "k")] + lusztig.random_words(cfg.words, cfg.seed)
    for mod in itertools.chain(_irreducibles(cfg, ctx, eps_values=(1,)), _profiles(cfg, ctx)):

        def run():
            checks = lusztig.operator_checks(mod)
            checks += lusztig.verify_commuting_square(mod)
            checks += lusztig.verify_equitable_lusztig(mod)
            if mod.is_irreducible:
                checks.append(lusztig.verify_tau_lu(mod.d, ctx, mod.basis))
            else:
                checks += lusztig.table_checks(mod)
                for table in (lusztig.Table.L, lusztig.Table.L_VEE):
                    checks += lusztig.verify_conjugation(mod, table, words)
            return checks

        out += [_record("lusztig", c, _mod_params(ctx, mod)) for c in _guard(run, "lusztig")]
    return out


def suite_main_theorem(cfg: SuiteConfig, ctx: QContext) -> list[dict]:
    out = []
    top = min(cfg.d_max, cfg.main_theorem_d_max)
    mods = [build_module(d, 1, b, ctx) for b in Basis for d in range(top + 1)]
    for mod in itertools.chain(mods, _profiles(cfg, ctx)):
        checks = _guard(lambda: [lusztig.verify_main_theorem(mod)], "main theorem")
        out += [_record("main-theorem", c, _mod_params(ctx, mod)) for c in checks]
    return out


_SUITE_FUNCS = {
    "relations": suite_relations,
    "casimir": suite_casimir,
    "identifications": suite_identifications,
    "qexp": suite_qexp,
    "rotators": suite_rotators,
    "lusztig": suite_lusztig,
    "main-theorem": suite_main_theorem,
}


def _run_task(task) -> list[dict]:
    cfg, suite, ctx = task
    return _SUITE_FUNCS[suite](cfg, ctx)


def run_suites(cfg: SuiteConfig) -> Report:
    """Run every selected suite over every context; records come back in task order."""
    start = time.perf_counter()
    tasks = [(cfg, suite, ctx) for ctx in cfg.contexts() for suite in SUITES if suite in cfg.suites]
    report = Report()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for recs in pool.map(_run_task, tasks):
                report.records.extend(recs)
    else:
        for task in tasks:
            report.records.extend(_run_task(task))
    report.wall_time = time.perf_counter() - start
    return report


# --- operator emission ------------------------------------------------------

OPERATORS = (
    "e", "f", "k", "x", "y", "z", "nx", "ny", "nz", "Lambda", "G", "X", "Y", "Z",
    "Omega", "Upsilon", "FrakR", "taux", "tauy", "tauz", "T", "Tvee", "Tinv", "TveeInv",
)
_SYMBOL = {"nx": "n_x", "ny": "n_y", "nz": "n_z"}


def emit_operator(what: str, d: int, eps: int, basis: Basis, ctx: QContext) -> dict:
    """Tagged JSON for one named operator on V_{d,eps}."""
    from .errors import UnknownOperatorError

    if what not in OPERATORS:
        raise UnknownOperatorError(what)
    if what == "G":
        return {"operator": "G", "polynomial": rotators.standard_polynomial(d, ctx).to_json()}
    mod = build_module(d, eps, basis, ctx)
    if what in ("e", "f", "k", "x", "y", "z", "Lambda") or what in _SYMBOL:
        m = mod.matrix(_SYMBOL.get(what, what))
    else:
        mod.require_type_one()
        if what in ("X", "Y", "Z"):
            m = getattr(rotators.cap_operators(mod), what)
        elif what == "Omega":
            m = rotators.standard_rotator(mod)
        elif what == "Upsilon":
            m = rotators.upsilon(mod)
        elif what == "FrakR":
            m = rotators.frak_r(mod)
        elif what.startswith("tau"):
            m = dict(zip(("taux", "tauy", "tauz"), rotators.tau_maps(mod)))[what]
        else:
            m = lusztig.lusztig_operators(mod)[what]
    return {"operator": what, "matrix": m.to_json()}


__all__ = [
    "DEFAULT_PROFILES",
    "OPERATORS",
    "Report",
    "SUITES",
    "SuiteConfig",
    "emit_operator",
    "qexp_checks",
    "rotator_checks",
    "run_suites",
]
