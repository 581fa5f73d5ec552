"""Walks with no altitude constraint: free walks and bridges.

Free walks factor completely, so their generating function is the rational
1/(1 - sum of step weights).  Bridges (walks ending back at altitude 0) are
decomposed at visits to the axis: a bridge is a sequence of flat steps and
minimal nonempty axis-to-axis arches, and each arch either stays on one side
of the axis or hops across it with a |dy| >= 2 step.  The arch variables live
in the same system vocabulary as the floored classes, so the builder from
`semibounded` is reused directly with the bridge variable as target.
"""

from __future__ import annotations

from .algebra.polynomials import RatFun, UniPoly
from .semibounded import GB, GFSystem, _Builder
from .stepset import StepSet, WalkClass, validate


def free_gf(s: StepSet) -> RatFun:
    """Rational generating function for unconstrained walks by x-length."""
    validate(WalkClass("unbounded-free"), s)
    den = UniPoly.const(1)
    for st in s.steps:
        den = den - UniPoly.t_power(int(st.dx), st.w)
    return RatFun(UniPoly.const(1), den)


def bridge_system(s: StepSet) -> GFSystem:
    """Closed system whose target counts bridges (start and end at 0)."""
    validate(WalkClass("bridge"), s)
    bound = max(s.max_up() - 1, s.max_down() - 1, 0)
    builder = _Builder(s, bound)
    variables, equations = builder.build(GB)
    meta = {"class": "bridge", "steps": s.to_json(), "y_gcd": s.y_gcd}
    sys = GFSystem(variables, equations, GB, s.scale, meta)
    sys.check_closed()
    return sys
