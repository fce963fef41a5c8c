"""Genus bounds, five-fiber cases and the surgery obstruction verdict.

Surgery on a knot of genus g and four-ball genus g4 gives a homology sphere
whose HF_red is killed by U^(g + ceil(g4/2)); for genus one knots U alone
already kills it.  A Seifert target whose U-order exceeds that exponent
therefore cannot arise.  All verdicts assume the target bounds a negative
definite plumbing, which is not re-checked here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from hfroots._kernels import fits_int64, u_order_scan
from hfroots.errors import CapExceeded, InvalidInput
from hfroots.seifert import DEFAULT_ENUMERATION_CAP, SeifertParams, delta_at, n0, solve_diophantine

OBSTRUCTED = "OBSTRUCTED"
INCONCLUSIVE = "INCONCLUSIVE"

# witness labels
GENUS_BOUND = "genus-bound"
GENUS_ONE = "genus-one-five-fibers"
DIRECT = "direct"

ASSUMPTION = "target bounds a negative definite plumbing (not re-checked)"

FINITE_RESIDUAL = "finite-residual"


def kcond_max_k(params: SeifertParams) -> int:
    """Largest k >= -1 with k < (l - 2 - Σ 1/p_i) / 2, i.e. k < N0 / (2P)."""
    P = params.product
    return max(-1, (n0(params) - 1) // (2 * P))


def genus_bound_min_fibers(g: int, genus1_refinement: bool = False) -> int:
    """Smallest l with g <= (24 l - 103) / 90.

    With ``genus1_refinement`` a genus one knot is handled by the sharper
    five-fiber result instead.
    """
    if g < 0:
        raise InvalidInput("genus must be nonnegative")
    if genus1_refinement and g == 1:
        return 5
    # 90 g <= 24 l - 103  <=>  l >= (90 g + 103) / 24
    return -((-(90 * g + 103)) // 24)


def _five_fiber_condition(p: tuple[int, ...]) -> int | None:
    p1, p2, p3, p4, p5 = p
    if p1 >= 4:
        return 1
    if p1 == 3 and p5 >= 17:
        return 2
    if (p1, p2) != (2, 3):
        return None
    if p3 >= 17:
        return 3
    if p3 == 7 and p4 >= 83:
        return 4
    if p3 == 7 and p4 == 43 and p5 >= 1811:
        return 5
    if p3 == 11 and p4 >= 15 and p5 >= 101:
        return 6
    return None


def five_fiber_case(params: SeifertParams) -> int | str:
    """Which of the six side conditions covers a five-fiber tuple.

    Each condition is meant to guarantee 2P <= N0, so that Δ(P) = 2 and
    Δ(N0 - P) = -2 witness U · HF_red != 0.  That is checked exactly; a
    tuple meeting a condition but not the inequality (e.g. (2,3,7,83,85))
    is returned as ``"finite-residual"`` along with every uncovered tuple.
    """
    if params.l != 5:
        raise InvalidInput(f"five_fiber_case needs l = 5, got l = {params.l}")
    case = _five_fiber_condition(params.p)
    if case is None or 2 * params.product > n0(params):
        return FINITE_RESIDUAL
    return case


def five_fiber_condition(params: SeifertParams) -> int | None:
    """The first side condition met, without the 2P <= N0 check."""
    if params.l != 5:
        raise InvalidInput(f"five_fiber_condition needs l = 5, got l = {params.l}")
    return _five_fiber_condition(params.p)


def u_order_of(params: SeifertParams, cap: int = DEFAULT_ENUMERATION_CAP) -> int:
    """u_order by a single walk over the first half of [0, N0]."""
    sol = solve_diophantine(params)
    N0 = n0(params)
    if N0 <= 0:
        return 0
    if N0 + 1 > cap:
        raise CapExceeded(f"{params}: N_0 = {N0} exceeds the enumeration cap {cap}")
    if not fits_int64(params.p, sol.pprime, sol.e0abs, N0):
        raise CapExceeded(f"{params}: too large for the 64-bit walk")
    p = np.array(params.p, dtype=np.int64)
    a = np.array(sol.pprime, dtype=np.int64)
    return int(u_order_scan(p, a, sol.e0abs, N0, True))


def probe_lower_bound(params: SeifertParams) -> int:
    """A lower bound on u_order from Δ(kP) = k + 1 and Δ(N0 - kP) = -(k + 1).

    Uses the largest k with 2kP < N0 and evaluates both probes exactly.
    """
    k = kcond_max_k(params)
    if k < 0:
        return 0
    sol = solve_diophantine(params)
    N0, P = n0(params), params.product
    if delta_at(params, sol, k * P) != k + 1 or delta_at(params, sol, N0 - k * P) != -(k + 1):
        raise AssertionError(f"{params}: tower probe failed at k = {k}")
    return k + 1


@dataclass(frozen=True)
class ObstructionQuery:
    genus: int
    target: SeifertParams
    four_ball_genus: int | None = None

    def __post_init__(self):
        if self.genus < 0:
            raise InvalidInput("genus must be nonnegative")
        g4 = self.genus if self.four_ball_genus is None else self.four_ball_genus
        if not 0 <= g4 <= self.genus:
            raise InvalidInput(f"four-ball genus must lie in [0, {self.genus}], got {g4}")
        object.__setattr__(self, "four_ball_genus", g4)

    @property
    def exponent(self) -> int:
        """The power of U known to kill HF_red of any surgery on such a knot."""
        if self.genus == 1:
            return 1
        return self.genus + -(-self.four_ball_genus // 2)


@dataclass(frozen=True)
class Verdict:
    verdict: str
    witness: str | None
    exponent: int
    u_order: int | None
    u_order_lower_bound: int
    method: str
    assumptions: tuple[str, ...] = field(default=(ASSUMPTION,))

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": self.witness,
            "exponent": self.exponent,
            "u_order": self.u_order,
            "u_order_lower_bound": self.u_order_lower_bound,
            "method": self.method,
            "assumptions": list(self.assumptions),
        }


def obstruct(query: ObstructionQuery, cap: int = DEFAULT_ENUMERATION_CAP) -> Verdict:
    """Decide whether some surgery on a genus-g knot could give the target.

    The U-order is computed exactly when N0 fits the cap, otherwise bounded
    below by the tower probes.  A theorem witness is named when the fiber
    count alone settles the question.
    """
    params = query.target
    exp = query.exponent
    witness = None
    if query.genus == 1 and params.l >= 5:
        witness = GENUS_ONE
    elif params.l >= genus_bound_min_fibers(query.genus):
        witness = GENUS_BOUND
    lower = probe_lower_bound(params)
    try:
        order, method = u_order_of(params, cap), "enumeration"
    except CapExceeded:
        order, method = None, "probe"
    best = order if order is not None else lower
    if best > exp:
        return Verdict(OBSTRUCTED, witness or DIRECT, exp, order, lower, method)
    if order is None:
        if witness is not None:
            return Verdict(OBSTRUCTED, witness, exp, None, lower, "theorem")
        raise CapExceeded(
            f"{params}: probe bound {lower} does not decide the exponent {exp} and N_0 exceeds the cap {cap}"
        )
    if witness is not None:
        raise AssertionError(f"{params}: u_order {order} contradicts the {witness} bound")
    return Verdict(INCONCLUSIVE, None, exp, order, lower, method)
