"""Curve representations, jets along curves, and implicitization."""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence, Union

from .config import DEFAULT, Config
from .errors import (
    DegenerateInput,
    EliminationFailed,
    LineCurve,
    SingularOnly,
    VerticalCurve,
)
from .exactalg import Poly, RationalFunction, resultant
from .exactalg.ratfunc import lcm_all

MAX_JET_ORDER = 8
JET_SYMBOLS = tuple(f"y{k}" for k in range(1, MAX_JET_ORDER + 1))

RF = RationalFunction


def _rf(value) -> RationalFunction:
    return RationalFunction.coerce(value)


class _Lazy:
    """Once-only memo slot guarded by a lock."""

    __slots__ = ("_lock", "_value", "_done")

    def __init__(self):
        self._lock = threading.Lock()
        self._done = False
        self._value = None

    def get(self, factory):
        if not self._done:
            with self._lock:
                if not self._done:
                    self._value = factory()
                    self._done = True
        return self._value


class PlanarParametricCurve:
    """t -> (x(t), y(t)) with rational components.

    Components may involve symbols besides the parameter (family
    coefficients); those are treated as constants.
    """

    def __init__(self, x, y, param: str = "t", label: str | None = None):
        self.x = _rf(x)
        self.y = _rf(y)
        self.param = param
        self.label = label
        if self.x.diff(param).is_zero() and self.y.diff(param).is_zero():
            raise DegenerateInput("parametrization is constant")
        self._implicit = _Lazy()

    @property
    def components(self) -> tuple[RationalFunction, RationalFunction]:
        return (self.x, self.y)

    @property
    def coefficient_symbols(self) -> tuple[str, ...]:
        return tuple(s for s in sorted(set(self.x.symbols) | set(self.y.symbols)) if s != self.param)

    def implicit(self, config: Config = DEFAULT) -> "PlanarImplicitCurve":
        return self._implicit.get(lambda: implicitize(self, config))

    def swapped(self) -> "PlanarParametricCurve":
        return PlanarParametricCurve(self.y, self.x, self.param, self.label)

    def specialize(self, values: dict) -> "PlanarParametricCurve":
        return PlanarParametricCurve(self.x.subs(values), self.y.subs(values), self.param, self.label)

    def reparametrize(self, image: RationalFunction, new_param: str | None = None) -> "PlanarParametricCurve":
        new_param = new_param or self.param
        m = {self.param: image}
        return PlanarParametricCurve(self.x.compose(m), self.y.compose(m), new_param, self.label)

    def evaluate(self, t0) -> tuple[Fraction, Fraction]:
        pt = {self.param: t0}
        return (self.x.evaluate(pt), self.y.evaluate(pt))

    def homogeneous(self) -> tuple[Poly, Poly, Poly]:
        """Coprime polynomial triple (X, Y, W) with x = X/W, y = Y/W."""
        w = lcm_all([self.x.den, self.y.den])
        xs = self.x.num * w.exquo(self.x.den)
        ys = self.y.num * w.exquo(self.y.den)
        g = xs.gcd(ys).gcd(w)
        return (xs.exquo(g), ys.exquo(g), w.exquo(g))

    def degree(self) -> int:
        """Degree of the parametrization (equals the curve degree when proper)."""
        return max(p.degree(self.param) for p in self.homogeneous())

    def apply_projective(self, h: Sequence[Sequence]) -> "PlanarParametricCurve":
        """Image under (x, y) -> ((h00 x + h01 y + h02)/(h20 x + ...), ...)."""
        x, y = self.x, self.y
        rows = [h[i][0] * x + h[i][1] * y + h[i][2] for i in range(3)]
        return PlanarParametricCurve(rows[0] / rows[2], rows[1] / rows[2], self.param, self.label)

    def __eq__(self, other):
        return (isinstance(other, PlanarParametricCurve) and self.param == other.param
                and self.x == other.x and self.y == other.y)

    def __hash__(self):
        return hash((self.param, self.x, self.y))

    def __repr__(self):
        return f"PlanarParametricCurve({self.param} -> ({self.x}, {self.y}))"


class SpatialParametricCurve:
    """s -> (z1(s), z2(s), z3(s)); straight lines are rejected."""

    def __init__(self, z1, z2, z3, param: str = "s", label: str | None = None):
        self.z = (_rf(z1), _rf(z2), _rf(z3))
        self.param = param
        self.label = label
        d1 = [c.diff(param) for c in self.z]
        if all(c.is_zero() for c in d1):
            raise DegenerateInput("parametrization is constant")
        d2 = [c.diff(param) for c in d1]
        if all(c.is_zero() for c in _cross(d2, d1)):
            raise LineCurve("spatial curve is a straight line")

    @property
    def components(self) -> tuple[RationalFunction, ...]:
        return self.z

    def derivatives(self, order: int) -> list[list[RationalFunction]]:
        out = [list(self.z)]
        for _ in range(order):
            out.append([c.diff(self.param) for c in out[-1]])
        return out

    def homogeneous(self) -> tuple[Poly, Poly, Poly, Poly]:
        """Coprime (Z1, Z2, Z3, W) with z_i = Z_i/W."""
        w = lcm_all([c.den for c in self.z])
        zs = [c.num * w.exquo(c.den) for c in self.z]
        g = reduce(lambda a, b: a.gcd(b), zs, w)
        return tuple(p.exquo(g) for p in zs) + (w.exquo(g),)

    def degree(self) -> int:
        return max(p.degree(self.param) for p in self.homogeneous())

    def evaluate(self, s0) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(c.evaluate({self.param: s0}) for c in self.z)

    def apply_affine(self, m: Sequence[Sequence], shift: Sequence) -> "SpatialParametricCurve":
        zs = [sum((m[i][j] * self.z[j] for j in range(3)), RF.const(0)) + shift[i] for i in range(3)]
        return SpatialParametricCurve(*zs, param=self.param, label=self.label)

    def __repr__(self):
        return f"SpatialParametricCurve({self.param} -> ({', '.join(map(str, self.z))}))"


class PlanarImplicitCurve:
    """Zero set of an irreducible F(x, y)."""

    def __init__(self, F: Poly, label: str | None = None):
        F = Poly.coerce(F)
        if F.is_zero() or F.is_constant():
            raise DegenerateInput("implicit equation must be a non-constant polynomial")
        extra = set(F.symbols) - {"x", "y"}
        if extra:
            raise DegenerateInput(f"implicit equation involves {sorted(extra)}")
        if F.diff("x").is_zero() and F.diff("y").is_zero():
            raise SingularOnly("gradient vanishes identically")
        if not F.gcd(F.diff("x")).gcd(F.diff("y")).is_constant() or F.squarefree_part() != F.primitive():
            raise DegenerateInput("implicit equation is not squarefree")
        self.F = canonical_sign(F.primitive())
        self.label = label

    def degree(self) -> int:
        return self.F.degree()

    def contains(self, point) -> bool:
        return self.F.evaluate({"x": point[0], "y": point[1]}) == 0

    def apply_projective(self, h: Sequence[Sequence]) -> "PlanarImplicitCurve":
        """Image of the curve under the projective map h (pulls F back through h^-1)."""
        from .exactalg.linalg import inverse

        g = inverse(h)
        x, y = RF.var("x"), RF.var("y")
        rows = [g[i][0] * x + g[i][1] * y + g[i][2] for i in range(3)]
        pulled = RF(self.F).compose({"x": rows[0] / rows[2], "y": rows[1] / rows[2]})
        return PlanarImplicitCurve(pulled.num, self.label)

    def __eq__(self, other):
        return isinstance(other, PlanarImplicitCurve) and self.F == other.F

    def __hash__(self):
        return hash(self.F)

    def __repr__(self):
        return f"PlanarImplicitCurve({self.F} = 0)"


PlanarCurve = Union[PlanarParametricCurve, PlanarImplicitCurve]


def canonical_sign(p: Poly) -> Poly:
    return -p if p.leading_coefficient() < 0 else p


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


# ---------------------------------------------------------------------------
# jets


@dataclass(frozen=True)
class JetFunctions:
    """y1..yn along a curve, as functions of its parameter or of (x, y)."""

    order: int
    entries: tuple[RationalFunction, ...]
    variables: tuple[str, ...]
    swapped: bool = False

    def __getitem__(self, k: int) -> RationalFunction:
        """k-th derivative, 1-based."""
        return self.entries[k - 1]

    def as_mapping(self) -> dict[str, RationalFunction]:
        return {JET_SYMBOLS[i]: e for i, e in enumerate(self.entries)}


def _check_order(order: int):
    if not 1 <= order <= MAX_JET_ORDER:
        raise ValueError(f"jet order must be in 1..{MAX_JET_ORDER}")


def jets_parametric(curve: PlanarParametricCurve, order: int, allow_swap: bool = True) -> JetFunctions:
    _check_order(order)
    t = curve.param
    x, y, swapped = curve.x, curve.y, False
    xd = x.diff(t)
    if xd.is_zero():
        if not allow_swap:
            raise VerticalCurve("x is constant along the curve")
        x, y, swapped = y, x, True
        xd = x.diff(t)
    inv = xd.inverse()
    cur = y
    out = []
    for _ in range(order):
        cur = cur.diff(t) * inv
        out.append(cur)
    return JetFunctions(order, tuple(out), (t,), swapped)


def jets_implicit(curve: PlanarImplicitCurve, order: int, allow_swap: bool = True) -> JetFunctions:
    _check_order(order)
    F = curve.F
    vx, vy, swapped = "x", "y", False
    if F.diff("y").is_zero():
        if not allow_swap:
            raise VerticalCurve("F does not involve y")
        F = F.rename({"x": "y", "y": "x"})
        swapped = True
    fx, fy = F.diff("x"), F.diff("y")
    if fy.is_zero() and fx.is_zero():
        raise SingularOnly("both partial derivatives vanish")
    y1 = RF(-fx, fy)
    out = [y1]
    cur = y1
    for _ in range(order - 1):
        cur = cur.diff("x") + y1 * cur.diff("y")
        out.append(cur)
    return JetFunctions(order, tuple(out), ("x", "y"), swapped)


def jets(curve: PlanarCurve, order: int) -> JetFunctions:
    if isinstance(curve, PlanarImplicitCurve):
        return jets_implicit(curve, order)
    return jets_parametric(curve, order)


# ---------------------------------------------------------------------------
# sampling helpers


def sample_values(count: int, avoid: Sequence[Poly], var: str, seed: int) -> list[Fraction]:
    """Deterministic small rationals where none of ``avoid`` vanishes."""
    rng = random.Random(seed)
    out: list[Fraction] = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 100 * count + 1000:
            raise DegenerateInput("could not find sample points avoiding the given zeros")
        v = Fraction(rng.randint(-40, 40), rng.randint(1, 13))
        if v in out:
            continue
        if any(p.subs({var: v}).is_zero() for p in avoid if not p.is_zero()):
            continue
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# implicitization


def _primitive_canonical(p: Poly) -> Poly:
    return canonical_sign(p.primitive())


def implicitize(curve: PlanarParametricCurve, config: Config = DEFAULT) -> PlanarImplicitCurve:
    t = curve.param
    X, Y = Poly.var("x"), Poly.var("y")
    if curve.x.diff(t).is_zero():
        return PlanarImplicitCurve(_primitive_canonical(curve.x.den * X - curve.x.num))
    if curve.y.diff(t).is_zero():
        return PlanarImplicitCurve(_primitive_canonical(curve.y.den * Y - curve.y.num))
    a = curve.x.den * X - curve.x.num
    b = curve.y.den * Y - curve.y.num
    r = resultant(a, b, t)
    if r.is_zero():
        raise EliminationFailed("resultant vanishes identically")
    samples = sample_values(config.samples, [curve.x.den, curve.y.den], t, config.sample_seed)
    pts = [curve.evaluate(v) for v in samples]
    kept = []
    for f in r.irreducible_factors():
        if not (f.involves("x") or f.involves("y")):
            continue
        if all(f.subs({"x": px, "y": py}).is_zero() for px, py in pts):
            kept.append(f)
    if not kept:
        raise EliminationFailed("no factor of the resultant vanishes on the curve")
    F = _primitive_canonical(reduce(lambda u, v: u * v, kept))
    check = RF(F).compose({"x": curve.x, "y": curve.y})
    if not check.is_zero():
        raise EliminationFailed("implicit equation does not vanish on the parametrization")
    return PlanarImplicitCurve(F, curve.label)


# ---------------------------------------------------------------------------
# line and plane tests


def planar_wronskian(curve: PlanarParametricCurve) -> RationalFunction:
    t = curve.param
    xd, yd = curve.x.diff(t), curve.y.diff(t)
    return xd.diff(t) * yd - yd.diff(t) * xd


def is_line_planar(curve: PlanarCurve) -> bool:
    if isinstance(curve, PlanarImplicitCurve):
        return curve.F.degree() == 1
    return planar_wronskian(curve).is_zero()


def torsion_numerator(curve: SpatialParametricCurve) -> RationalFunction:
    """(G'' x G') . G''' along the curve."""
    _, d1, d2, d3 = curve.derivatives(3)
    cr = _cross(d2, d1)
    return cr[0] * d3[0] + cr[1] * d3[1] + cr[2] * d3[2]


def is_coplanar_spatial(curve: SpatialParametricCurve) -> bool:
    return torsion_numerator(curve).is_zero()


def is_proper(curve: PlanarParametricCurve | SpatialParametricCurve) -> bool:
    """Whether the parametrization is generically injective."""
    t = curve.param
    comps = list(curve.homogeneous())
    u = "_u"
    w = comps[-1]
    pairs = []
    for c in comps[:-1]:
        pairs.append(c * w.rename({t: u}) - c.rename({t: u}) * w)
    g = reduce(lambda a, b: a.gcd(b), pairs)
    return g.degree(t) == 1
