"""Curve and point-list files.

Curve files::

    curve planar_rational t        # or spatial_rational s, planar_implicit
    x = t^3/(t+1)
    y = t^2/(t+1)
    label = gamma2                 # optional

Point files start with ``points 3d`` or ``points 2d`` and hold one point per
line, coordinates separated by spaces or commas.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from ..curves import PlanarImplicitCurve, PlanarParametricCurve, SpatialParametricCurve
from ..errors import ArityError, NonRationalExponent, ParseError
from ..exactalg import RationalFunction
from ..pointsets import PointList2D, PointList3D

RF = RationalFunction

KINDS = {
    "planar_rational": ("x", "y"),
    "spatial_rational": ("z1", "z2", "z3"),
    "planar_implicit": ("F",),
}


@dataclass(frozen=True)
class CurveSpec:
    kind: str
    param: str | None
    components: tuple[tuple[str, str], ...]
    label: str | None = None

    def __str__(self):
        head = f"curve {self.kind}" + (f" {self.param}" if self.param else "")
        lines = [head] + [f"{name} = {text}" for name, text in self.components]
        if self.label:
            lines.append(f"label = {self.label}")
        return "\n".join(lines) + "\n"

    def symbols(self) -> tuple[str, ...]:
        return ("x", "y") if self.kind == "planar_implicit" else (self.param,)

    def to_curve(self):
        vals = [parse_expression(text, self.symbols(), line=i + 2) for i, (_, text) in
                enumerate(self.components)]
        if self.kind == "planar_rational":
            return PlanarParametricCurve(vals[0], vals[1], self.param, label=self.label)
        if self.kind == "spatial_rational":
            return SpatialParametricCurve(*vals, param=self.param, label=self.label)
        F = vals[0]
        if not F.den.is_constant():
            raise ParseError("F must be a polynomial", line=2)
        return PlanarImplicitCurve(F.num, label=self.label)


# ---------------------------------------------------------------------------
# expressions


def _fail(msg: str, node, line: int, cls=ParseError):
    col = getattr(node, "col_offset", -1) + 1
    raise cls(msg, line=line, column=col)


def parse_expression(text: str, symbols, line: int = 1) -> RationalFunction:
    """Exact value of an arithmetic expression over the given symbols."""
    src = text.strip().replace("^", "**")
    if not src:
        raise ParseError("empty expression", line=line, column=1)
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"syntax error: {exc.msg}", line=line, column=exc.offset or 0) from None
    return _eval(tree.body, set(symbols), line)


def _exponent(node, line: int) -> int:
    sign = 1
    while isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        sign = -sign if isinstance(node.op, ast.USub) else sign
        node = node.operand
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return sign * node.value
    _fail("exponents must be integer literals", node, line, NonRationalExponent)


def _eval(node, symbols: set, line: int) -> RationalFunction:
    if isinstance(node, ast.Constant):
        if type(node.value) is int:
            return RF.const(node.value)
        _fail(f"unsupported literal {node.value!r}; write decimals as p/q", node, line)
    if isinstance(node, ast.Name):
        if node.id not in symbols:
            _fail(f"unknown symbol {node.id!r}", node, line)
        return RF.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand, symbols, line)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _eval(node.left, symbols, line)
            n = _exponent(node.right, line)
            if n < 0 and base.is_zero():
                _fail("zero to a negative power", node, line)
            return base ** n
        a, b = _eval(node.left, symbols, line), _eval(node.right, symbols, line)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b.is_zero():
                _fail("division by zero", node, line)
            return a / b
    _fail("unsupported syntax", node, line)


# ---------------------------------------------------------------------------
# files


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_curve_spec(text: str) -> CurveSpec:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty curve file", line=1, column=1)
    lineno, head = lines[0]
    words = head.split()
    if words[0] != "curve" or len(words) < 2:
        raise ParseError("expected 'curve <kind> [parameter]'", line=lineno, column=1)
    kind = words[1]
    if kind not in KINDS:
        raise ParseError(f"unknown curve kind {kind!r}", line=lineno, column=len("curve ") + 1)
    if kind == "planar_implicit":
        if len(words) != 2:
            raise ParseError("implicit curves take no parameter", line=lineno, column=1)
        param = None
    else:
        if len(words) != 3 or not words[2].isidentifier():
            raise ParseError("expected a parameter symbol", line=lineno, column=1)
        param = words[2]
    found, label = {}, None
    for lineno, line in lines[1:]:
        if "=" not in line:
            raise ParseError("expected 'name = expression'", line=lineno, column=1)
        name, expr = (p.strip() for p in line.split("=", 1))
        if name == "label":
            label = expr
            continue
        if name not in KINDS[kind]:
            raise ArityError(f"line {lineno}: {kind} curves have components {', '.join(KINDS[kind])}, not {name!r}")
        if name in found:
            raise ArityError(f"line {lineno}: component {name!r} given twice")
        found[name] = (expr, lineno)
    missing = [n for n in KINDS[kind] if n not in found]
    if missing:
        raise ArityError(f"missing component(s) {', '.join(missing)}")
    spec = CurveSpec(kind, param, tuple((n, found[n][0]) for n in KINDS[kind]), label)
    # validate every expression now so errors carry their real line numbers
    symbols = spec.symbols()
    for n in KINDS[kind]:
        parse_expression(found[n][0], symbols, line=found[n][1])
    return spec


def parse_points(text: str):
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty point file", line=1, column=1)
    lineno, head = lines[0]
    if head.split() not in (["points", "3d"], ["points", "2d"]):
        raise ParseError("expected 'points 3d' or 'points 2d'", line=lineno, column=1)
    dim = int(head.split()[1][0])
    pts = []
    for lineno, line in lines[1:]:
        fields = line.replace(",", " ").split()
        if len(fields) != dim:
            raise ArityError(f"line {lineno}: expected {dim} coordinates, got {len(fields)}")
        try:
            pts.append(tuple(Fraction(f) for f in fields))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coordinate in {line!r}", line=lineno, column=1) from None
    if not pts:
        raise ParseError("no points given", line=lineno, column=1)
    return PointList3D(pts) if dim == 3 else PointList2D(pts)


def load_curve(path: str | Path):
    return parse_curve_spec(Path(path).read_text(encoding="utf-8")).to_curve()


def load_points(path: str | Path):
    return parse_points(Path(path).read_text(encoding="utf-8"))


def parse_matrix(text: str) -> list[list[Fraction]]:
    """Rows separated by ';', entries by spaces or commas."""
    rows = [r.replace(",", " ").split() for r in text.split(";") if r.strip()]
    try:
        return [[Fraction(v) for v in r] for r in rows]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad matrix entry in {text!r}") from None
