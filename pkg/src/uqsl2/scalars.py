"""Exact scalars over Q: rationals, parameter contexts and q-combinatorics."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import ConfigError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"`` (or a bare integer ``"7"``) into a Fraction."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ConfigError(f"not a rational of the form num/den: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ConfigError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact nonnegative square root, or None if ``value`` is not a square in Q."""
    value = Fraction(value)
    if value < 0:
        return None
    n, d = value.numerator, value.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


class ThetaMode(enum.Enum):
    SQ_Q = "sq-q"  # theta^2 = q
    SQ_QINV = "sq-qinv"  # theta^2 = q^-1


class Ident(enum.Enum):
    PRIMARY = "primary"
    SECONDARY = "secondary"


@dataclass(frozen=True)
class QContext:
    """Parameters q, theta, t and the identification kind.

    ``theta_mode=None`` gives a context with an unconstrained nonzero theta.
    Such a context supports the identifications but has no ``q_half``.
    """

    q: Fraction
    theta: Fraction
    theta_mode: ThetaMode | None = ThetaMode.SQ_Q
    t: int = 0
    ident: Ident = Ident.PRIMARY
    q_half: Fraction | None = field(init=False, default=None, compare=False)

    def __post_init__(self):
        q = Fraction(self.q)
        theta = Fraction(self.theta)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "theta", theta)
        if q == 0 or q in (1, -1):
            raise ConfigError(f"q must be nonzero and not a root of unity, got {q}")
        if theta == 0:
            raise ConfigError("theta must be nonzero")
        if not isinstance(self.t, int):
            raise ConfigError(f"t must be an integer, got {self.t!r}")
        mode = self.theta_mode
        if mode is ThetaMode.SQ_Q:
            if theta * theta != q:
                raise ConfigError(f"theta^2 = {theta * theta} but mode sq-q needs {q}")
            object.__setattr__(self, "q_half", -theta)
        elif mode is ThetaMode.SQ_QINV:
            if theta * theta != 1 / q:
                raise ConfigError(f"theta^2 = {theta * theta} but mode sq-qinv needs {1 / q}")
            object.__setattr__(self, "q_half", 1 / theta)
        elif mode is not None:
            raise ConfigError(f"unknown theta mode {mode!r}")

    @classmethod
    def standard(
        cls,
        q: Fraction | int = 4,
        mode: ThetaMode = ThetaMode.SQ_Q,
        t: int = 0,
        ident: Ident = Ident.PRIMARY,
        sign: int = 1,
    ) -> QContext:
        """Context whose theta is chosen so that q^(1/2) = sign * sqrt(q)."""
        q = Fraction(q)
        root = rational_sqrt(q)
        if root is None:
            raise ConfigError(f"q = {q} has no square root in Q")
        half = sign * root
        theta = -half if mode is ThetaMode.SQ_Q else 1 / half
        return cls(q, theta, mode, t, ident)

    def with_(self, **changes) -> QContext:
        args = dict(q=self.q, theta=self.theta, theta_mode=self.theta_mode, t=self.t, ident=self.ident)
        args.update(changes)
        return QContext(**args)

    def to_json(self) -> dict:
        return {
            "q": format_rational(self.q),
            "theta": format_rational(self.theta),
            "theta_mode": None if self.theta_mode is None else self.theta_mode.value,
            "t": self.t,
            "ident": self.ident.value,
        }

    @classmethod
    def from_json(cls, data: dict) -> QContext:
        mode = data.get("theta_mode", ThetaMode.SQ_Q.value)
        try:
            return cls(
                parse_rational(data["q"]),
                parse_rational(data["theta"]),
                None if mode is None else ThetaMode(mode),
                int(data.get("t", 0)),
                Ident(data.get("ident", Ident.PRIMARY.value)),
            )
        except (KeyError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"bad context {data!r}: {exc}") from exc


@lru_cache(maxsize=None)
def _q_int(n: int, q: Fraction) -> Fraction:
    return (q**n - q**-n) / (q - 1 / q)


def q_int(n: int, ctx: QContext) -> Fraction:
    """The q-integer [n]_q = (q^n - q^-n) / (q - q^-1)."""
    return _q_int(n, ctx.q)


@lru_cache(maxsize=None)
def _q_fact(n: int, q: Fraction) -> Fraction:
    result = Fraction(1)
    for i in range(2, n + 1):
        result *= _q_int(i, q)
    return result


def q_fact(n: int, ctx: QContext) -> Fraction:
    """[n]_q! = [n]_q [n-1]_q ... [1]_q, with [0]_q! = 1."""
    if n < 0:
        raise ValueError(f"q-factorial of negative n={n}")
    return _q_fact(n, ctx.q)


def q_half_power(m: int, ctx: QContext) -> Fraction:
    """q^(m/2), using the square root of q fixed by theta."""
    if ctx.q_half is None:
        raise ConfigError("context has no q^(1/2): theta_mode is unset")
    return ctx.q_half**m


def q_binomial2(i: int) -> int:
    """The ordinary binomial coefficient C(i, 2)."""
    return i * (i - 1) // 2
