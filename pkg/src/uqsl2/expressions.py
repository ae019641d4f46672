"""Formal noncommutative linear combinations of generator words."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from .errors import UnknownSymbolError
from .linalg import Matrix

# Every symbol a module can be asked to realize.  The empty word is the identity.
ALPHABET = (
    "e", "f", "k", "k^-1",
    "x", "y", "y^-1", "z",
    "nu_x", "nu_y", "nu_z",
    "n_x", "n_y", "n_z",
    "Lambda",
)
CHEVALLEY = ("e", "f", "k", "k^-1")
EQUITABLE = ("x", "y", "y^-1", "z")


class Expr:
    """Finite sum of coefficient * word, words being tuples of symbols.

    Products concatenate words and never reorder them.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean = {}
        for word, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                for s in word:
                    if s not in ALPHABET:
                        raise UnknownSymbolError(s)
                clean[tuple(word)] = c
        self.terms = clean

    @classmethod
    def symbol(cls, name: str) -> Expr:
        return cls({(name,): 1})

    @classmethod
    def const(cls, c) -> Expr:
        return cls({(): c})

    @classmethod
    def word(cls, *symbols: str, coeff=1) -> Expr:
        return cls({tuple(symbols): coeff})

    def __add__(self, other) -> Expr:
        other = _coerce(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return Expr(out)

    __radd__ = __add__

    def __neg__(self) -> Expr:
        return Expr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> Expr:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> Expr:
        return _coerce(other) - self

    def __mul__(self, other) -> Expr:
        if not isinstance(other, Expr):
            c = Fraction(other)
            return Expr({w: c * v for w, v in self.terms.items()})
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return Expr(out)

    def __rmul__(self, other) -> Expr:
        return _coerce(other) * self

    def __pow__(self, n: int) -> Expr:
        if n < 0:
            raise ValueError("negative powers of expressions are not defined")
        out = Expr.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items()):
            parts.append(f"{c}*{'.'.join(w) or '1'}")
        return " + ".join(parts)

    def symbols(self) -> set:
        return {s for w in self.terms for s in w}

    def substitute(self, images: Mapping[str, Expr]) -> Expr:
        """Replace each symbol with its image (symbols without an image are kept) and expand."""
        out = Expr()
        for w, c in self.terms.items():
            term = Expr.const(c)
            for s in w:
                term = term * images.get(s, Expr.symbol(s))
            out = out + term
        return out


def _coerce(value) -> Expr:
    if isinstance(value, Expr):
        return value
    return Expr.const(value)


def power_word(symbol: str, inverse: str, n: int) -> Expr:
    """symbol^n as a word, using ``inverse`` for negative n."""
    return Expr.word(*([symbol] * n if n >= 0 else [inverse] * (-n)))


def evaluate(expr: Expr, lookup: Callable[[str], Matrix], dim: int) -> Matrix:
    """Sum over terms of coefficient times the left-to-right product of symbol matrices.

    Products of shared prefixes are computed once per call.
    """
    prefixes: dict = {(): Matrix.identity(dim)}

    def product(w: tuple) -> Matrix:
        m = prefixes.get(w)
        if m is None:
            m = product(w[:-1]) @ lookup(w[-1]) if len(w) > 1 else lookup(w[0])
            prefixes[w] = m
        return m

    acc = Matrix.zeros(dim)
    for w, c in expr.terms.items():
        acc = acc + product(w).scale(c)
    return acc
