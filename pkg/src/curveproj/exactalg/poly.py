"""Sparse multivariate polynomials over Q.

Arithmetic is delegated to FLINT's ``fmpq_mpoly``; this module adds named,
auto-merging variable contexts and a fixed global symbol order so that
printing and comparison are deterministic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

import flint

from ..errors import DegenerateInput

Rat = Fraction

# graded-lex tie-breaking uses this order; unknown names sort after it
SYMBOL_ORDER = ("t", "s", "x", "y", "kappa", "tau", "c1", "c2", "c3", "a1", "a2", "b")
_RANK = {name: i for i, name in enumerate(SYMBOL_ORDER)}
_JET = re.compile(r"y(\d+)$")

Number = Union[int, Fraction]


def symbol_key(name: str):
    if name in _RANK:
        return (0, _RANK[name], "")
    m = _JET.match(name)
    if m:
        return (1, int(m.group(1)), "")
    return (2, 0, name)


def sort_symbols(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=symbol_key))


_CONTEXTS: dict[tuple[str, ...], flint.fmpq_mpoly_ctx] = {}


def _ctx(gens: tuple[str, ...]) -> flint.fmpq_mpoly_ctx:
    ctx = _CONTEXTS.get(gens)
    if ctx is None:
        ctx = flint.fmpq_mpoly_ctx.get(gens, "deglex")
        _CONTEXTS[gens] = ctx
    return ctx


def to_fmpq(value) -> flint.fmpq:
    if isinstance(value, flint.fmpq):
        return value
    if isinstance(value, int):
        return flint.fmpq(value)
    value = Fraction(value)
    return flint.fmpq(value.numerator, value.denominator)


def to_rat(value) -> Fraction:
    if isinstance(value, flint.fmpq):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, flint.fmpz):
        return Fraction(int(value))
    return Fraction(value)


class Poly:
    """Immutable polynomial with rational coefficients in named variables."""

    __slots__ = ("gens", "raw", "_hash", "_numeric")

    def __init__(self, raw: flint.fmpq_mpoly, gens: tuple[str, ...]):
        self.raw = raw
        self.gens = gens
        self._hash = None
        self._numeric = None

    # -- construction -----------------------------------------------------

    @classmethod
    def const(cls, value: Number = 0) -> "Poly":
        ctx = _ctx(())
        return cls(ctx.constant(to_fmpq(value)), ())

    @classmethod
    def var(cls, name: str) -> "Poly":
        ctx = _ctx((name,))
        return cls(ctx.gens()[0], (name,))

    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, ...], Number], gens: Iterable[str]) -> "Poly":
        gens = tuple(gens)
        order = sort_symbols(gens)
        if len(order) != len(gens):
            raise ValueError("duplicate variable names")
        perm = [gens.index(g) for g in order]
        data = {}
        for exps, c in terms.items():
            if c:
                key = tuple(exps[i] for i in perm)
                data[key] = data.get(key, 0) + Fraction(c)
        data = {k: to_fmpq(v) for k, v in data.items() if v}
        return cls(_ctx(order).from_dict(data), order)

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction, flint.fmpq)):
            return cls.const(to_rat(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to Poly")

    # -- context handling ---------------------------------------------------

    def lift(self, gens: tuple[str, ...]) -> "Poly":
        """Re-express in a superset context ``gens`` (already sorted)."""
        if gens == self.gens:
            return self
        return Poly(self.raw.project_to_context(_ctx(gens)), gens)

    def trim(self) -> "Poly":
        """Drop variables that do not occur."""
        used = [g for g, d in zip(self.gens, self.raw.degrees()) if d > 0]
        if len(used) == len(self.gens):
            return self
        gens = tuple(used)
        return Poly(self.raw.project_to_context(_ctx(gens)), gens)

    @staticmethod
    def unify(*polys: "Poly") -> tuple["Poly", ...]:
        gens = polys[0].gens
        if all(p.gens == gens for p in polys):
            return polys
        gens = sort_symbols(g for p in polys for g in p.gens)
        return tuple(p.lift(gens) for p in polys)

    # -- arithmetic -----------------------------------------------------------

    def _binary(self, other, op):
        other = Poly.coerce(other)
        a, b = Poly.unify(self, other)
        return Poly(op(a.raw, b.raw), a.gens)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.raw + to_fmpq(other), self.gens)
        return self._binary(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.raw - to_fmpq(other), self.gens)
        return self._binary(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.raw * to_fmpq(other), self.gens)
        return self._binary(other, lambda x, y: x * y)

    __rmul__ = __mul__

    def __neg__(self):
        return Poly(-self.raw, self.gens)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        return Poly(self.raw**n, self.gens)

    def __truediv__(self, other):
        """Division by a rational constant, or exact polynomial division."""
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError
            return Poly(self.raw / to_fmpq(other), self.gens)
        return self.exquo(other)

    def exquo(self, other: "Poly") -> "Poly":
        a, b = Poly.unify(self, Poly.coerce(other))
        if b.raw.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        try:
            q = a.raw / b.raw
        except Exception as exc:  # flint raises DomainError for inexact division
            raise DegenerateInput("inexact polynomial division") from exc
        return Poly(q, a.gens)

    def divides(self, other: "Poly") -> bool:
        """True iff ``self`` divides ``other`` exactly."""
        a, b = Poly.unify(self, Poly.coerce(other))
        if a.raw.is_zero():
            return b.raw.is_zero()
        q, r = divmod(b.raw, a.raw)
        return r.is_zero() and (q * a.raw) == b.raw

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = Poly.unify(self, other)
        return a.raw == b.raw

    def __hash__(self):
        if self._hash is None:
            t = self.trim()
            self._hash = hash((t.gens, tuple(sorted(t.raw.to_dict().items()))))
        return self._hash

    def __bool__(self):
        return not self.raw.is_zero()

    # -- queries ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.raw.is_zero()

    def is_constant(self) -> bool:
        return self.raw.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        if self.raw.is_zero():
            return Fraction(0)
        return to_rat(self.raw.coefficient(0))

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.trim().gens

    def involves(self, var: str) -> bool:
        return var in self.gens and self.degree(var) > 0

    def degree(self, var: str | None = None) -> int:
        if self.raw.is_zero():
            return -1
        if var is None:
            return int(self.raw.total_degree())
        if var not in self.gens:
            return 0
        return int(self.raw.degrees()[self.gens.index(var)])

    def __len__(self):
        return len(self.raw)

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """(exponent vector in ``gens`` order, coefficient), graded-lex descending."""
        return [(tuple(int(x) for x in e), to_rat(c)) for e, c in self.raw.terms()]

    def numeric_terms(self):
        """(used gens, [(exponents, mpf coefficient)]) at the current mpmath precision; cached."""
        import mpmath

        cached = self._numeric
        if cached is None or cached[0] != mpmath.mp.prec:
            p = self.trim()
            terms = [(tuple(int(x) for x in e), mpmath.mpf(int(c.p)) / int(c.q)) for e, c in p.raw.terms()]
            cached = self._numeric = (mpmath.mp.prec, p.gens, terms)
        return cached[1], cached[2]

    def to_dict(self) -> dict[tuple[int, ...], Fraction]:
        return {tuple(int(x) for x in e): to_rat(c) for e, c in self.raw.to_dict().items()}

    def leading_coefficient(self) -> Fraction:
        return to_rat(self.raw.leading_coefficient())

    def coefficients_in(self, var: str) -> dict[int, "Poly"]:
        """Collect by powers of ``var``; returned coefficients omit ``var``."""
        if var not in self.gens:
            return {0: self} if self else {}
        i = self.gens.index(var)
        rest = self.gens[:i] + self.gens[i + 1:]
        buckets: dict[int, dict] = {}
        for e, c in self.raw.to_dict().items():
            e = tuple(int(x) for x in e)
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        ctx = _ctx(rest)
        return {k: Poly(ctx.from_dict(v), rest) for k, v in sorted(buckets.items())}

    def leading_coeff_in(self, var: str) -> "Poly":
        cs = self.coefficients_in(var)
        return cs[max(cs)] if cs else Poly.const(0)

    # -- calculus and substitution -----------------------------------------------

    def diff(self, var: str) -> "Poly":
        if var not in self.gens:
            return Poly(self.raw * 0, self.gens)
        return Poly(self.raw.derivative(var), self.gens)

    def subs(self, values: Mapping[str, Number]) -> "Poly":
        """Substitute rational constants for some variables."""
        vals = {k: to_fmpq(v) for k, v in values.items() if k in self.gens}
        if not vals:
            return self
        return Poly(self.raw.subs(vals), self.gens).trim()

    def __call__(self, **values: Number) -> Fraction:
        p = self.subs(values)
        if not p.is_constant():
            raise ValueError(f"unassigned variables {p.symbols}")
        return p.constant_value()

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        return self.subs(point).constant_value()

    def compose(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Substitute polynomials for variables (simultaneously)."""
        if not any(k in self.gens for k in mapping):
            return self
        images = [Poly.coerce(mapping.get(g, Poly.var(g))) for g in self.gens]
        if not images:
            return self
        images = Poly.unify(*images, Poly.const(1))[:-1]
        gens = images[0].gens
        raw = self.raw.compose(*[p.raw for p in images], ctx=_ctx(gens))
        return Poly(raw, gens)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return self.compose({k: Poly.var(v) for k, v in mapping.items()})

    # -- gcd, content, factoring -----------------------------------------------

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if self.raw.is_zero():
            return Fraction(0)
        cs = [to_rat(c) for c in self.raw.coeffs()]
        den = reduce(lambda a, b: a * b // _gcd(a, b), (c.denominator for c in cs), 1)
        num = reduce(_gcd, (abs(c.numerator * (den // c.denominator)) for c in cs), 0)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if self.raw.is_zero():
            return self
        p = self / self.content()
        return -p if p.leading_coefficient() < 0 else p

    def monic(self) -> "Poly":
        if self.raw.is_zero():
            return self
        return self / self.leading_coefficient()

    def gcd(self, other: "Poly") -> "Poly":
        a, b = Poly.unify(self, Poly.coerce(other))
        if a.raw.is_zero():
            return b.monic()
        if b.raw.is_zero():
            return a.monic()
        return Poly(a.raw.gcd(b.raw), a.gens).monic()

    def factor(self) -> tuple[Fraction, list[tuple["Poly", int]]]:
        """(unit, [(primitive irreducible factor, multiplicity), ...]).

        Factors have integer coefficients and positive leading coefficient.
        """
        if self.raw.is_zero():
            raise DegenerateInput("cannot factor the zero polynomial")
        unit, fs = self.raw.factor()
        unit = to_rat(unit)
        out = []
        for f, m in fs:
            p = Poly(f, self.gens)
            q = p.primitive()
            unit *= (p.leading_coefficient() / q.leading_coefficient()) ** m
            out.append((q.trim(), int(m)))
        out.sort(key=lambda fm: (fm[0].degree(), str(fm[0])))
        return unit, out

    def squarefree_part(self) -> "Poly":
        if self.is_constant():
            return Poly.const(1)
        _, fs = self.raw.factor_squarefree()
        out = Poly.const(1)
        for f, _m in fs:
            out = out * Poly(f, self.gens)
        return out.primitive()

    def irreducible_factors(self) -> list["Poly"]:
        if self.is_constant():
            return []
        return [f for f, _ in self.factor()[1]]

    # -- printing -------------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def format_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    """Canonical text: graded-lex descending terms, ``^`` for powers."""
    if p.is_zero():
        return "0"
    pieces = []
    for exps, c in p.terms():
        mono = "*".join(
            g if e == 1 else f"{g}^{e}" for g, e in zip(p.gens, exps) if e
        )
        mag = abs(c)
        if not mono:
            body = format_rat(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rat(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


def symbols(names: str) -> tuple[Poly, ...]:
    return tuple(Poly.var(n) for n in names.replace(",", " ").split())


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_sub(a: Poly, b: Poly) -> Poly:
    return a - b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    ops = {"add": poly_add, "sub": poly_sub, "mul": poly_mul}
    return ops[op](a, b)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(p, 0)`` is ``p`` made monic."""
    return a.gcd(b)


def poly_derivative(p: Poly, var: str) -> Poly:
    return p.diff(var)
