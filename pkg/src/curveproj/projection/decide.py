"""Existence of central and parallel projections between a spatial and a planar curve.

Two independent routes feed one verdict.  The literal route restricts the
invariants to a family of normalized projections and solves for the family
parameters.  The correspondence route searches for a matching
reparametrization and yields explicit matrices.  A Yes needs a certificate:
either an exactly verified matrix or a family member proven equivalent to the
target by the signature module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import mpmath

from ..config import DEFAULT, Config
from ..curves import PlanarCurve, PlanarImplicitCurve, SpatialParametricCurve, is_coplanar_spatial
from ..errors import (CurveprojError, DegenerateCandidate, DegenerateInput, DegreeCapExceeded,
                      ImageDegenerate)
from ..exactalg import linalg
from ..invariants import CurveKind, classify
from ..signatures import Verdict, equivalent, signature
from . import correspond
from .family import (FamilyCurve, FamilyKind, NOT_APPLICABLE, candidate_checks, discriminant_system,
                     family, match_constant_signature, match_curve_signature)
from .matrix import ProjectionMatrix, verify_projection

# largest denominator accepted when rounding a numeric parameter to a rational
_RATIONALIZE_DEN = 10 ** 6


class ProjectionVerdict(str, Enum):
    YES = "Yes"
    NO = "No"
    COMPLEX_ONLY = "ComplexOnly"
    UNDETERMINED = "Undetermined"


@dataclass
class Witness:
    family: str
    params: dict
    certificate: str                  # "matrix" or "signature"
    matrix: ProjectionMatrix | None = None

    def key(self):
        return (self.family, tuple(sorted(self.params.items())))


@dataclass
class NumericWitness:
    family: str
    params: dict                      # mpmath values
    real: bool


@dataclass
class ProjectionDecision:
    verdict: ProjectionVerdict
    witnesses: list[Witness] = field(default_factory=list)
    numeric: list[NumericWitness] = field(default_factory=list)
    matrix: ProjectionMatrix | None = None
    trace: list[str] = field(default_factory=list)
    complete: bool = True

    @property
    def is_yes(self) -> bool:
        return self.verdict is ProjectionVerdict.YES

    def params(self, fam: str | None = None) -> list[dict]:
        return [w.params for w in self.witnesses if fam is None or w.family == fam]


class _Evidence:
    """What the routes found so far."""

    def __init__(self, trace: list[str]):
        self.trace = trace
        self.witnesses: dict = {}
        self.numeric: list[NumericWitness] = []
        self.complex = False
        self.unresolved = False
        self.exhaustive = False       # some route covered the whole search space

    def add(self, w: Witness):
        old = self.witnesses.get(w.key())
        if old is None or (old.matrix is None and w.matrix is not None):
            self.witnesses[w.key()] = w

    @property
    def yes(self) -> bool:
        return bool(self.witnesses)

    def decision(self, want_matrix: bool = True) -> ProjectionDecision:
        ws = sorted(self.witnesses.values(), key=_witness_order)
        matrix = next((w.matrix for w in ws if w.matrix is not None), None)
        if ws:
            verdict = ProjectionVerdict.YES
        elif self.exhaustive:
            verdict = ProjectionVerdict.COMPLEX_ONLY if self.complex else ProjectionVerdict.NO
        else:
            verdict = ProjectionVerdict.UNDETERMINED
        complete = verdict is not ProjectionVerdict.UNDETERMINED
        self.trace.append(f"verdict: {verdict.value}")
        return ProjectionDecision(verdict, ws, self.numeric, matrix, self.trace, complete)


def _witness_order(w: Witness):
    return (w.family, tuple(sorted((k, abs(v), v < 0) for k, v in w.params.items())))


def _fmt_params(params: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in sorted(params.items())) or "-"


# ---------------------------------------------------------------------------
# lines


def _plane(Z: SpatialParametricCurve) -> list[Fraction]:
    """Coefficients (n1, n2, n3, n0) of the plane containing a coplanar curve."""
    pts = [list(Z.evaluate(Fraction(v))) + [Fraction(1)] for v in _sample_params(Z, 6)]
    (v,) = linalg.nullspace(pts, 4)[:1]
    return list(v)


def _sample_params(Z: SpatialParametricCurve, n: int) -> list[Fraction]:
    out = []
    dens = [z.den for z in Z.z]
    for v in itertools.count():
        for q in (Fraction(v), Fraction(-v - 1), Fraction(1, v + 2)):
            if all(d.evaluate({Z.param: q}) != 0 for d in dens if not d.is_constant()):
                out.append(q)
                if len(out) == n:
                    return out
    return out


def _line_frame(X: PlanarCurve) -> list[list[Fraction]]:
    """Affine map sending the line x = 0 onto the line X."""
    F = X.F if isinstance(X, PlanarImplicitCurve) else X.implicit().F
    a = F.diff("x").constant_value() if F.involves("x") else Fraction(0)
    b = F.diff("y").constant_value() if F.involves("y") else Fraction(0)
    c = F.subs({"x": 0, "y": 0}).constant_value()
    p = [-c * a / (a * a + b * b), -c * b / (a * a + b * b)]
    q = [-b, a]
    r = [a, b]
    return [[r[0], q[0], p[0]], [r[1], q[1], p[1]], [Fraction(0), Fraction(0), Fraction(1)]]


def _line_route(Z, X, mode: str, ev: _Evidence, config: Config):
    if not is_coplanar_spatial(Z):
        ev.trace.append("target is a line but the spatial curve is not planar")
        ev.exhaustive = True
        return
    n = _plane(Z)
    ev.trace.append("spatial curve is planar; the plane maps onto a line")
    A = _line_frame(X)
    units = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    z0 = Fraction(0)
    if mode == "central":
        rows = ([u + [z0], w + [Fraction(1)]] for u, w in itertools.permutations(units, 2))
    else:
        rows = ([u + [z0], [z0, z0, z0, Fraction(1)]] for u in units)
    for r23 in rows:
        try:
            P = ProjectionMatrix(linalg.matmul(A, [n] + r23))
        except DegenerateInput:
            continue
        if (mode == "central") != P.is_central or (mode == "parallel" and not P.is_parallel):
            continue
        try:
            ok = verify_projection(P, Z, X, config)
        except ImageDegenerate:
            continue
        if ok:
            fam, params = _family_of(P)
            ev.add(Witness(fam, params, "matrix", P))
            ev.exhaustive = True
            return
    ev.trace.append("no matrix found for the line target")


def _family_of(P: ProjectionMatrix) -> tuple[str, dict]:
    if P.is_central:
        c = P.central_offset()
        return "Central", dict(zip(("c1", "c2", "c3"), c))
    return P.parallel_family()


# ---------------------------------------------------------------------------
# literal route


def _certify(fam: FamilyCurve, values: dict, X, ev: _Evidence, config: Config,
             exceptional: CurveKind | None = None, curve_target: bool = False) -> bool | None:
    """True if the member at ``values`` is equivalent to X over the reals.

    None means only complex equivalence could be established.
    """
    try:
        if exceptional is None:
            member = candidate_checks(fam, values, curve_target)
        else:
            member = fam.specialize(values)
            if classify(member, fam.group).kind is CurveKind.LINE:
                raise DegenerateCandidate("family member is a line")
    except (DegenerateCandidate, CurveprojError) as exc:
        ev.trace.append(f"{fam.kind.value} {_fmt_params(values)}: rejected ({exc})")
        return False
    try:
        dec = equivalent(member, X, fam.group, config)
    except DegreeCapExceeded as exc:
        ev.trace.append(f"{fam.kind.value} {_fmt_params(values)}: not certified ({exc})")
        return False
    ev.trace.append(f"{fam.kind.value} {_fmt_params(values)}: {dec.verdict.value}")
    if dec.verdict is Verdict.EQUIVALENT:
        ev.add(Witness(fam.kind.value, dict(values), "signature"))
        return True
    if dec.verdict is Verdict.COMPLEX_ONLY:
        ev.complex = True
        return None
    return False


def _rationalize(values: dict) -> dict | None:
    out = {}
    for k, v in values.items():
        if abs(mpmath.im(v)) > mpmath.mpf(10) ** -20:
            return None
        out[k] = Fraction(mpmath.nstr(mpmath.re(v), 40)).limit_denominator(_RATIONALIZE_DEN)
    return out


def _use_solutions(fam: FamilyCurve, sols, X, ev: _Evidence, config: Config,
                   exceptional=None, curve_target=False) -> bool:
    """Certify every solution; False if something real stayed unresolved."""
    resolved = True
    for sol in sols:
        vals = sol.as_dict()
        if sol.is_exact:
            _certify(fam, vals, X, ev, config, exceptional, curve_target)
        elif not sol.is_real:
            ev.complex = True
            ev.numeric.append(NumericWitness(fam.kind.value, vals, False))
        else:
            ev.numeric.append(NumericWitness(fam.kind.value, vals, True))
            guess = _rationalize(vals)
            if guess is None or _certify(fam, guess, X, ev, config, exceptional, curve_target) is not True:
                ev.trace.append(f"{fam.kind.value}: real irrational solution {_fmt_numeric(vals)}")
                resolved = False
    for comp in sols.components:
        hit = False
        for sample in comp.samples:
            if _certify(fam, sample.as_dict(), X, ev, config, exceptional, curve_target):
                hit = True
                break
        if not hit:
            ev.trace.append(f"{fam.kind.value}: a {comp.dimension}-dimensional solution set has no certified sample")
            resolved = False
    return resolved


def _fmt_numeric(vals: dict) -> str:
    return ", ".join(f"{k}={mpmath.nstr(v, 12)}" for k, v in sorted(vals.items()))


def _literal(fam: FamilyCurve, X, target, ev: _Evidence, config: Config) -> bool:
    """Run the signature-matching system; True if its solution set was fully resolved."""
    try:
        if target.kind == "Point":
            sols = match_constant_signature(fam, target, config)
        else:
            sols = match_curve_signature(fam, target, config)
    except DegreeCapExceeded as exc:
        ev.trace.append(f"{fam.kind.value}: {exc}")
        return False
    if sols is NOT_APPLICABLE:
        return False
    ev.trace.append(f"{fam.kind.value}: {len(sols)} isolated solutions, {len(sols.components)} components")
    return _use_solutions(fam, sols, X, ev, config, curve_target=target.kind == "Curve")


def _exceptional_literal(fam: FamilyCurve, X, which: str, kind: CurveKind, ev: _Evidence,
                         config: Config) -> bool:
    try:
        sols = discriminant_system(fam, which, config)
    except DegreeCapExceeded as exc:
        ev.trace.append(f"{fam.kind.value}: {exc}")
        return False
    ev.trace.append(f"{fam.kind.value}: {which} system has {len(sols)} isolated solutions, "
                    f"{len(sols.components)} components")
    return _use_solutions(fam, sols, X, ev, config, exceptional=kind)


def _plain(fam: FamilyCurve, X, ev: _Evidence, config: Config) -> bool:
    """The parameter-free family: compare directly."""
    member = fam.curve()
    cls = classify(member, "affine")
    if cls.exceptional:
        ev.trace.append(f"ParallelPlain: member is {cls.kind.value}, target is not")
        return True
    _certify(fam, {}, X, ev, config)
    return True


# ---------------------------------------------------------------------------
# correspondence route


def _numeric_family(rows, mode: str) -> tuple[str, dict] | None:
    m = mpmath.matrix([[mpmath.re(v) for v in r] for r in rows])
    if mode == "central":
        B = m[0:3, 0:3]
        c = mpmath.lu_solve(B, m[0:3, 3])
        return "Central", {"c1": c[0], "c2": c[1], "c3": c[2]}
    a, b = m[0, 0:3], m[1, 0:3]
    v = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    scale = max(abs(x) for x in v)
    tiny = scale * mpmath.mpf(10) ** -25
    if abs(v[2]) > tiny:
        return "ParallelA", {"a1": -v[0] / v[2], "a2": -v[1] / v[2]}
    if abs(v[1]) > tiny:
        return "ParallelB", {"b": -v[0] / v[1]}
    return "ParallelPlain", {}


def _correspondence(Z, X, mode: str, ev: _Evidence, config: Config, families: dict) -> None:
    if not config.correspondence:
        return
    res = correspond.find_candidates(Z, X, mode, config)
    ev.trace.append(f"correspondence: {len(res.candidates)} exact, {len(res.numeric)} numeric candidates")
    for note in res.notes:
        ev.trace.append(f"correspondence: {note}")
    for cand in res.candidates:
        fam, params = _family_of(cand.matrix)
        ev.add(Witness(fam, params, "matrix", cand.matrix))
    real_open = False
    for nc in res.numeric:
        fam_params = _numeric_family(nc.rows, mode)
        if not nc.real:
            ev.complex = True
            continue
        kind, params = fam_params
        ev.numeric.append(NumericWitness(kind, params, True))
        guess = _rationalize(params)
        fam = families.get(kind)
        if fam is None:
            fam = families[kind] = family(Z, kind)
        if guess is None or kind == "ParallelPlain" and not _plain_ok(fam, X, ev, config):
            real_open = True
            continue
        if kind != "ParallelPlain" and _certify(fam, guess, X, ev, config) is not True:
            real_open = True
    if res.complete and not real_open:
        ev.exhaustive = True
    elif real_open and not ev.yes:
        ev.unresolved = True


def _plain_ok(fam, X, ev, config) -> bool:
    return _certify(fam, {}, X, ev, config) is True


# ---------------------------------------------------------------------------
# public entry points


def _image_degree_exceeds(Z: SpatialParametricCurve, X: PlanarCurve, config: Config) -> bool:
    F = X.F if isinstance(X, PlanarImplicitCurve) else X.implicit(config).F
    return F.degree() > Z.degree()


def _check_source(Z: SpatialParametricCurve):
    if not isinstance(Z, SpatialParametricCurve):
        raise DegenerateInput("the source must be a parametrized spatial curve")
    from ..curves import _cross

    _, d1, d2 = Z.derivatives(2)
    if all(c.is_zero() for c in _cross(d1, d2)):
        raise DegenerateInput("the spatial curve is a line")


def _target_signature(X, group: str, ev: _Evidence, config: Config):
    try:
        target = signature(X, group, config)
    except DegreeCapExceeded as exc:
        ev.trace.append(f"target signature: {exc}")
        return None
    ev.trace.append(f"target signature: {target}")
    return target


def decide_central(Z: SpatialParametricCurve, X: PlanarCurve, config: Config = DEFAULT) -> ProjectionDecision:
    _check_source(Z)
    ev = _Evidence([])
    cls = classify(X, "projective")
    ev.trace.append(f"target class: {cls.kind.value} (projective)")
    if cls.kind is CurveKind.LINE:
        _line_route(Z, X, "central", ev, config)
        return ev.decision()
    if _image_degree_exceeds(Z, X, config):
        ev.trace.append("target degree exceeds the degree of the spatial curve")
        ev.exhaustive = True
        return ev.decision()
    fam = family(Z, FamilyKind.CENTRAL)
    if cls.kind in (CurveKind.PARABOLA, CurveKind.CONIC):
        done = _exceptional_literal(fam, X, "delta2", CurveKind.CONIC, ev, config)
        if done and not ev.yes:
            ev.exhaustive = True
        # also run on a Yes: it is the only source of explicit matrices
        _correspondence(Z, X, "central", ev, config, {"Central": fam})
        return ev.decision()
    # Restricting the projective invariants to the three-parameter family is
    # by far the most expensive step, so the correspondence search goes first
    # and the signature route only runs when it was inconclusive.
    _correspondence(Z, X, "central", ev, config, {"Central": fam})
    if ev.yes or ev.exhaustive:
        return ev.decision()
    target = _target_signature(X, "projective", ev, config)
    done = target is not None and _literal(fam, X, target, ev, config)
    if done and not ev.yes:
        ev.exhaustive = True
    return ev.decision()


_CASCADE = (FamilyKind.PARALLEL_PLAIN, FamilyKind.PARALLEL_B, FamilyKind.PARALLEL_A)


def decide_parallel(Z: SpatialParametricCurve, X: PlanarCurve, config: Config = DEFAULT,
                    order=_CASCADE) -> ProjectionDecision:
    """Parallel projections, trying the reduced families in ``order``."""
    _check_source(Z)
    ev = _Evidence([])
    cls = classify(X, "affine")
    ev.trace.append(f"target class: {cls.kind.value} (affine)")
    if cls.kind is CurveKind.LINE:
        _line_route(Z, X, "parallel", ev, config)
        return ev.decision()
    if _image_degree_exceeds(Z, X, config):
        ev.trace.append("target degree exceeds the degree of the spatial curve")
        ev.exhaustive = True
        return ev.decision()
    target = None
    if cls.kind is not CurveKind.PARABOLA:
        target = _target_signature(X, "affine", ev, config)
    families = {}
    all_done = True
    for kind in order:
        if target is None and cls.kind is not CurveKind.PARABOLA:
            all_done = False
            break
        fam = families[kind.value] = family(Z, kind)
        if cls.kind is CurveKind.PARABOLA:
            if kind is FamilyKind.PARALLEL_PLAIN:
                member_kind = classify(fam.curve(), "affine").kind
                if member_kind is CurveKind.PARABOLA:
                    _certify(fam, {}, X, ev, config, exceptional=CurveKind.PARABOLA)
                else:
                    ev.trace.append(f"ParallelPlain: member is {member_kind.value}")
                done = True
            else:
                done = _exceptional_literal(fam, X, "delta1", CurveKind.PARABOLA, ev, config)
        elif kind is FamilyKind.PARALLEL_PLAIN:
            done = _plain(fam, X, ev, config)
        else:
            done = _literal(fam, X, target, ev, config)
        all_done = all_done and done
        if ev.yes:
            break
    if all_done and not ev.yes:
        ev.exhaustive = True
    _correspondence(Z, X, "parallel", ev, config, families)
    return ev.decision()
