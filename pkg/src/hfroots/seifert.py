"""Exact integer arithmetic for Seifert data Σ(p_1, ..., p_l).

Everything here is pure: values are frozen after construction.  Integers are
Python ints checked against a signed 128-bit window so that results match a
fixed-width implementation bit for bit; anything outside raises
``OverflowError`` instead of wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np

from hfroots.errors import CapExceeded, InvalidInput

INT128_MIN = -(1 << 127)
INT128_MAX = (1 << 127) - 1

DEFAULT_ENUMERATION_CAP = 10**8

# numpy chunk length for Δ enumeration
_CHUNK = 1 << 20
# keep n * p' well clear of int64 overflow in the vectorized path
_INT64_SAFE = 1 << 62


def checked(x: int) -> int:
    """Return ``x`` unchanged, or raise if it leaves the signed 128-bit range."""
    if x < INT128_MIN or x > INT128_MAX:
        raise OverflowError(f"value {x} exceeds the 128-bit exact-integer width")
    return x


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a/b for a >= 0, b > 0."""
    return (a + b - 1) // b


@dataclass(frozen=True)
class SeifertParams:
    """Multiplicities p_1 < ... < p_l of the singular fibers."""

    p: tuple[int, ...]

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        object.__setattr__(self, "p", p)
        if len(p) < 3:
            raise InvalidInput(f"need at least 3 singular fibers, got {len(p)}")
        if any(x < 2 for x in p):
            raise InvalidInput("every multiplicity must be >= 2")
        if any(a >= b for a, b in zip(p, p[1:])):
            raise InvalidInput("multiplicities must be strictly increasing")
        for i, a in enumerate(p):
            for b in p[i + 1:]:
                if gcd(a, b) != 1:
                    raise InvalidInput(f"not pairwise coprime: gcd({a}, {b}) = {gcd(a, b)}")
        checked(prod(p))

    @classmethod
    def of(cls, *p: int) -> "SeifertParams":
        """Build from an unsorted list of multiplicities."""
        return cls(tuple(sorted(p)))

    @property
    def l(self) -> int:
        return len(self.p)

    @property
    def product(self) -> int:
        return prod(self.p)

    def __str__(self):
        return "Σ(" + ",".join(map(str, self.p)) + ")"


@dataclass(frozen=True)
class DiophantineSolution:
    """The unique (e_0, p_1', ..., p_l') with e_0 P + Σ p_i' P/p_i = -1."""

    e0: int
    pprime: tuple[int, ...]

    @property
    def e0abs(self) -> int:
        return -self.e0


def solve_diophantine(params: SeifertParams) -> DiophantineSolution:
    """Solve e_0 P + Σ p_i' (P/p_i) = -1 with 0 < p_i' <= p_i - 1.

    Reducing mod p_i kills every term except p_i' (P/p_i), so
    p_i' ≡ -(P/p_i)^{-1} (mod p_i); e_0 then follows by exact division.
    """
    P = params.product
    pprime = []
    for pi in params.p:
        cof = P // pi
        try:
            inv = pow(cof % pi, -1, pi)
        except ValueError:
            raise InvalidInput(f"not pairwise coprime: {pi} shares a factor with P/{pi}") from None
        pprime.append((-inv) % pi)
    rest = checked(-1 - sum(a * (P // pi) for a, pi in zip(pprime, params.p)))
    e0, r = divmod(rest, P)
    if r:
        raise ArithmeticError(f"{params}: residual {r} after solving for e_0")
    return DiophantineSolution(e0=e0, pprime=tuple(pprime))


def residual(params: SeifertParams, sol: DiophantineSolution) -> int:
    """e_0 P + Σ p_i' P/p_i + 1; zero for a genuine solution."""
    P = params.product
    return sol.e0 * P + sum(a * (P // pi) for a, pi in zip(sol.pprime, params.p)) + 1


def n0(params: SeifertParams) -> int:
    """N_0 = P((l - 2) - Σ 1/p_i), computed as P(l - 2) - Σ P/p_i."""
    P = params.product
    return checked(P * (params.l - 2) - sum(P // pi for pi in params.p))


def delta_at(params: SeifertParams, sol: DiophantineSolution, n: int) -> int:
    """Δ(n) = 1 + |e_0| n - Σ ceil(n p_i' / p_i)."""
    if n < 0:
        raise InvalidInput(f"Δ is defined for n >= 0, got {n}")
    total = 1 + sol.e0abs * n
    for a, pi in zip(sol.pprime, params.p):
        total -= ceil_div(checked(n * a), pi)
    return checked(total)


def delta_values(params: SeifertParams, sol: DiophantineSolution, start: int, stop: int) -> np.ndarray:
    """Vectorized Δ on ``range(start, stop)`` as int64 (requires int64-safe sizes)."""
    if stop * max(params.p) >= _INT64_SAFE or sol.e0abs * stop >= _INT64_SAFE:
        raise OverflowError("range too large for the vectorized Δ path")
    n = np.arange(start, stop, dtype=np.int64)
    out = 1 + sol.e0abs * n
    for a, pi in zip(sol.pprime, params.p):
        out -= -((-n * a) // pi)
    return out


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DeltaSequence:
    """Ordered nonzero Δ values.

    ``positions`` are the integers x_j; entries produced by refinement share
    a base position and are ordered by ``subs``.
    """

    positions: np.ndarray
    values: np.ndarray
    n0: int
    subs: np.ndarray = field(default=None)

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.int64).copy()
        val = np.asarray(self.values, dtype=np.int64).copy()
        subs = np.zeros_like(pos) if self.subs is None else np.asarray(self.subs, dtype=np.int64).copy()
        if not (len(pos) == len(val) == len(subs)) or len(val) == 0:
            raise InvalidInput("Δ-sequence needs matching, nonempty positions and values")
        if val[0] <= 0:
            raise InvalidInput("the first Δ value must be positive")
        if np.any(val == 0):
            raise InvalidInput("Δ-sequence values must be nonzero")
        key_ok = (pos[1:] > pos[:-1]) | ((pos[1:] == pos[:-1]) & (subs[1:] > subs[:-1]))
        if not np.all(key_ok):
            raise InvalidInput("Δ-sequence positions must be strictly increasing")
        object.__setattr__(self, "positions", _readonly(pos))
        object.__setattr__(self, "values", _readonly(val))
        object.__setattr__(self, "subs", _readonly(subs))

    @classmethod
    def from_pairs(cls, pairs, n0: int | None = None) -> "DeltaSequence":
        pairs = list(pairs)
        pos = [x for x, _ in pairs]
        val = [v for _, v in pairs]
        return cls(pos, val, max(pos) if n0 is None else n0)

    def __len__(self):
        return len(self.values)

    def pairs(self) -> list[tuple[int, int]]:
        return list(zip(self.positions.tolist(), self.values.tolist()))

    def __eq__(self, other):
        if not isinstance(other, DeltaSequence):
            return NotImplemented
        return (
            self.n0 == other.n0
            and np.array_equal(self.positions, other.positions)
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.subs, other.subs)
        )

    def __repr__(self):
        head = self.pairs()[:6]
        more = "" if len(self) <= 6 else f", ... ({len(self)} entries)"
        return f"DeltaSequence({head}{more}, n0={self.n0})"


def delta_sequence(
    params: SeifertParams,
    sol: DiophantineSolution | None = None,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> DeltaSequence:
    """All n <= N_0 with Δ(n) != 0, stopping at the last negative value.

    For N_0 <= 0 there is no negative region and the sequence is the single
    entry (0, 1).
    """
    sol = sol or solve_diophantine(params)
    N0 = n0(params)
    if N0 <= 0:
        return DeltaSequence([0], [1], N0)
    if N0 + 1 > cap:
        raise CapExceeded(f"{params}: N_0 = {N0} exceeds the enumeration cap {cap}; use probes")

    pos_chunks, val_chunks = [], []
    vectorized = (N0 + 1) * max(params.p) < _INT64_SAFE
    for start in range(0, N0 + 1, _CHUNK):
        stop = min(N0 + 1, start + _CHUNK)
        if vectorized:
            vals = delta_values(params, sol, start, stop)
        else:
            vals = np.array([delta_at(params, sol, n) for n in range(start, stop)], dtype=object)
        nz = np.nonzero(vals)[0]
        pos_chunks.append(nz + start)
        val_chunks.append(vals[nz].astype(np.int64))
    pos = np.concatenate(pos_chunks)
    val = np.concatenate(val_chunks)
    neg = np.nonzero(val < 0)[0]
    last = neg[-1] + 1 if len(neg) else len(val)
    return DeltaSequence(pos[:last], val[:last], N0)


@dataclass(frozen=True, eq=False)
class TauSequence:
    """τ(0) = 0 and τ(j+1) - τ(j) = j-th Δ value."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.int64).copy()
        if len(v) == 0:
            raise InvalidInput("τ-sequence must be nonempty")
        object.__setattr__(self, "values", _readonly(v))

    def __len__(self):
        return len(self.values)

    def tolist(self) -> list[int]:
        return self.values.tolist()

    def __eq__(self, other):
        if not isinstance(other, TauSequence):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"TauSequence({self.tolist() if len(self) <= 12 else f'<{len(self)} values>'})"


def tau_from_delta(ds: DeltaSequence) -> TauSequence:
    """Partial sums of the Δ-sequence, starting from 0."""
    tau = np.zeros(len(ds) + 1, dtype=np.int64)
    np.cumsum(ds.values, out=tau[1:])
    return TauSequence(tau)
