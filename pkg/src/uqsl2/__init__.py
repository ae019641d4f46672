"""Exact-arithmetic U_q(sl2) modules, Lusztig operators and rotators.

Every identity is checked by exact rational equality; nothing is approximated.
"""

from .errors import ConfigError, Uqsl2Error
from .harness import Report, SuiteConfig, emit_operator, run_suites
from .linalg import Matrix, Poly
from .modules import Basis, Module, build_module, direct_sum, sum_of
from .scalars import Ident, QContext, ThetaMode

__all__ = [
    "Basis",
    "ConfigError",
    "Ident",
    "Matrix",
    "Module",
    "Poly",
    "QContext",
    "Report",
    "SuiteConfig",
    "ThetaMode",
    "Uqsl2Error",
    "build_module",
    "direct_sum",
    "emit_operator",
    "run_suites",
    "sum_of",
]

__version__ = "0.1.0"
