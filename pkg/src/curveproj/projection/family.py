"""Family curves of normalized projections and their parameter systems."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import mpmath

from ..config import DEFAULT, Config
from ..curves import PlanarParametricCurve, SpatialParametricCurve
from ..errors import DegenerateCandidate, DegenerateInput, DegreeCapExceeded, ExceptionalDenominator
from ..exactalg import Poly, PolySystem, RationalFunction, SystemSolution, solve_system
from ..exactalg.ratfunc import eval_poly_numeric
from ..exactalg.solve import Solutions
from ..invariants import classify, invariants_for, restrict, restrict_pair, delta1, delta2
from ..signatures import SignatureObject, KAPPA, TAU

RF = RationalFunction


class FamilyKind(str, Enum):
    CENTRAL = "Central"
    PARALLEL_A = "ParallelA"
    PARALLEL_B = "ParallelB"
    PARALLEL_PLAIN = "ParallelPlain"


PARAMS = {
    FamilyKind.CENTRAL: ("c1", "c2", "c3"),
    FamilyKind.PARALLEL_A: ("a1", "a2"),
    FamilyKind.PARALLEL_B: ("b",),
    FamilyKind.PARALLEL_PLAIN: (),
}

GROUP = {
    FamilyKind.CENTRAL: "projective",
    FamilyKind.PARALLEL_A: "affine",
    FamilyKind.PARALLEL_B: "affine",
    FamilyKind.PARALLEL_PLAIN: "affine",
}


class _NotApplicable:
    def __repr__(self):
        return "NotApplicable"


NOT_APPLICABLE = _NotApplicable()


@dataclass(frozen=True)
class FamilyCurve:
    kind: FamilyKind
    spatial: SpatialParametricCurve
    x: RationalFunction
    y: RationalFunction

    @property
    def params(self) -> tuple[str, ...]:
        return PARAMS[self.kind]

    @property
    def param(self) -> str:
        return self.spatial.param

    @property
    def group(self) -> str:
        return GROUP[self.kind]

    def curve(self) -> PlanarParametricCurve:
        return PlanarParametricCurve(self.x, self.y, self.param)

    def specialize(self, values: dict) -> PlanarParametricCurve:
        """Family member at exact parameter values."""
        vals = {k: Fraction(v) for k, v in values.items()}
        if self.kind is FamilyKind.CENTRAL:
            den = self.spatial.z[2] + vals["c3"]
            if den.is_zero():
                raise DegenerateCandidate("z3 + c3 vanishes identically")
        try:
            return PlanarParametricCurve(self.x.subs(vals), self.y.subs(vals), self.param)
        except DegenerateInput as exc:
            raise DegenerateCandidate(f"family member is a point: {exc}") from None


def family(Z: SpatialParametricCurve, kind) -> FamilyCurve:
    kind = FamilyKind(kind)
    z1, z2, z3 = Z.z
    if kind is FamilyKind.CENTRAL:
        c1, c2, c3 = (RF.var(n) for n in PARAMS[kind])
        x, y = (z1 + c1) / (z3 + c3), (z2 + c2) / (z3 + c3)
    elif kind is FamilyKind.PARALLEL_A:
        a1, a2 = RF.var("a1"), RF.var("a2")
        x, y = z1 + a1 * z3, z2 + a2 * z3
    elif kind is FamilyKind.PARALLEL_B:
        x, y = z1 + RF.var("b") * z2, z3
    else:
        x, y = z2, z3
    return FamilyCurve(kind, Z, x, y)


# ---------------------------------------------------------------------------
# coefficient systems


def param_degree(p: Poly, params) -> int:
    idx = [i for i, g in enumerate(p.gens) if g in params]
    return max((sum(e[i] for i in idx) for e, _c in p.terms()), default=0)


def coefficient_equations(num: Poly, var: str) -> list[Poly]:
    """Coefficients of each power of ``var``; num vanishes identically iff all do."""
    return [c for c in num.coefficients_in(var).values() if not c.is_zero()]


def _solve(eqs: list[Poly], params, config: Config) -> Solutions:
    if not params:
        # nothing to solve for: the identity holds or it does not
        if all(e.is_zero() for e in eqs):
            return Solutions([_empty_solution()])
        return Solutions([])
    system = PolySystem(eqs, params)
    return solve_system(system, mode="numeric", cap=config.degree_cap, samples=config.component_samples)


def _degenerate_at(dens: list[Poly], var: str, sol: SystemSolution) -> bool:
    """Whether some denominator vanishes identically in ``var`` at the solution."""
    vals = sol.as_dict()
    if sol.is_exact:
        return any(d.subs(vals).is_zero() for d in dens)
    for d in dens:
        coeffs = d.coefficients_in(var).values()
        if all(abs(eval_poly_numeric(c, vals)) <= mpmath.mpf(10) ** (-25) * (1 + _term_size(c, vals))
               for c in coeffs):
            return True
    return False


def _term_size(p: Poly, vals: dict):
    """Sum of the absolute values of the terms of p at ``vals``."""
    gens, terms = p.numeric_terms()
    point = [abs(mpmath.mpmathify(vals[g])) for g in gens]
    total = mpmath.mpf(0)
    for exps, c in terms:
        term = abs(c)
        for v, e in zip(point, exps):
            term *= v ** e
        total += term
    return total


def _drop_degenerate(sols: Solutions, dens: list[Poly], var: str) -> Solutions:
    """Remove parameters where a restricted invariant has the form 0/0.

    Clearing denominators makes such parameters solve every coefficient
    equation, although the family member there is exceptional.
    """
    dens = [d for d in dens if not d.is_constant()]
    if not dens:
        return sols
    kept = [x for x in sols if not _degenerate_at(dens, var, x)]
    comps = [c for c in sols.components
             if not (c.samples and all(_degenerate_at(dens, var, x) for x in c.samples))]
    return Solutions(kept, comps)


def _empty_solution() -> SystemSolution:
    from ..exactalg.solve import SolutionKind

    return SystemSolution(SolutionKind.EXACT_RATIONAL, (), None, ())


def _check_cap(eqs: list[Poly], params, config: Config, what: str):
    for e in eqs:
        d = param_degree(e, params)
        if d > config.degree_cap:
            raise DegreeCapExceeded(what, d, config.degree_cap)


def discriminant_system(fam: FamilyCurve, which: str, config: Config = DEFAULT) -> Solutions:
    """Parameters where delta1 (or delta2) vanishes identically along the family."""
    expr = delta1() if which == "delta1" else delta2()
    val = restrict(expr, fam.curve())
    eqs = coefficient_equations(val.num, fam.param)
    _check_cap(eqs, fam.params, config, f"{which} coefficient system")
    return _solve(eqs, fam.params, config)


def match_constant_signature(fam: FamilyCurve, target: SignatureObject, config: Config = DEFAULT):
    """Parameters for which the family signature is the constant ``target``."""
    if target.kind != "Point":
        return NOT_APPLICABLE
    k0, t0 = target.point
    K, T = restrict_pair(fam.curve(), fam.group)
    eqs = coefficient_equations(K.num - k0 * K.den, fam.param)
    eqs += coefficient_equations(T.num - t0 * T.den, fam.param)
    _check_cap(eqs, fam.params, config, "constant-signature system")
    return _drop_degenerate(_solve(eqs, fam.params, config), [K.den, T.den], fam.param)


def signature_identity_degree(K: RationalFunction, T: RationalFunction, S: Poly, params) -> int:
    """Parameter degree of S(K, T) with denominators cleared, without expanding it."""
    dk, dt = S.degree(KAPPA), S.degree(TAU)
    degs = [param_degree(p, params) for p in (K.num, K.den, T.num, T.den)]
    best = 0
    for exps, _c in S.terms():
        e = dict(zip(S.gens, exps))
        i, j = e.get(KAPPA, 0), e.get(TAU, 0)
        best = max(best, i * degs[0] + (dk - i) * degs[1] + j * degs[2] + (dt - j) * degs[3])
    return best


def match_curve_signature(fam: FamilyCurve, target: SignatureObject, config: Config = DEFAULT):
    """Parameters for which S(K, T) vanishes identically along the family."""
    if target.kind != "Curve":
        return NOT_APPLICABLE
    S = target.poly
    K, T = restrict_pair(fam.curve(), fam.group)
    est = signature_identity_degree(K, T, S, fam.params)
    if est > config.degree_cap:
        raise DegreeCapExceeded("signature identity system", est, config.degree_cap)
    dk, dt = S.degree(KAPPA), S.degree(TAU)
    kpow = [Poly.const(1)]
    for _ in range(dk):
        kpow.append(kpow[-1] * K.num)
    kdp = [Poly.const(1)]
    for _ in range(dk):
        kdp.append(kdp[-1] * K.den)
    tpow = [Poly.const(1)]
    for _ in range(dt):
        tpow.append(tpow[-1] * T.num)
    tdp = [Poly.const(1)]
    for _ in range(dt):
        tdp.append(tdp[-1] * T.den)
    total = Poly.const(0)
    for exps, c in S.terms():
        e = dict(zip(S.gens, exps))
        i, j = e.get(KAPPA, 0), e.get(TAU, 0)
        total = total + c * kpow[i] * kdp[dk - i] * tpow[j] * tdp[dt - j]
    eqs = coefficient_equations(total, fam.param)
    _check_cap(eqs, fam.params, config, "signature identity system")
    return _drop_degenerate(_solve(eqs, fam.params, config), [K.den, T.den], fam.param)


def candidate_checks(fam: FamilyCurve, values: dict, curve_target: bool = False) -> PlanarParametricCurve:
    """Family member at ``values`` if it is non-exceptional.

    For curve-valued targets the member's signature must also be non-constant,
    so that containment in the target signature curve means equality.
    Raises DegenerateCandidate otherwise.
    """
    member = fam.specialize(values)
    cls = classify(member, fam.group)
    if cls.exceptional:
        raise DegenerateCandidate(f"family member is {cls.kind.value}")
    if curve_target:
        K, T = restrict_pair(member, fam.group)
        if K.is_constant() and T.is_constant():
            raise DegenerateCandidate("family member has a constant signature")
    return member
