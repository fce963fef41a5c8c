"""Declarative probe records and the generic engine that checks them.

A probe is a linear form in p, q, p', q' (and their pairwise products), such
as ``15pq+30pq'+1``.  A row names the family, the side conditions on the
Diophantine data, the probes, and the Δ value expected at each.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from hfroots.errors import InvalidInput
from hfroots.seifert import SeifertParams, delta_at, n0, solve_diophantine

FAMILIES = {
    "235pq": (2, 3, 5),
    "237pq": (2, 3, 7),
    "2_3_11_13_p": (2, 3, 11, 13),
}

# side-condition letters for the fixed fibers after the leading 2 (whose p' is 1)
_FIXED_LETTERS = {
    "235pq": ("a", "b"),
    "237pq": ("a", "b"),
    "2_3_11_13_p": ("a", "b", "c"),
}

_TERM = re.compile(r"([+-]?)(\d*)((?:p'|q'|p|q)*)")
_SYMBOL = re.compile(r"p'|q'|p|q")


def parse_linear(expr: str) -> dict[tuple[str, ...], int]:
    """Parse ``"60p'q-8pq+2"`` into {('p\\'', 'q'): 60, ('p', 'q'): -8, (): 2}."""
    s = expr.replace(" ", "").replace("−", "-")
    if not s:
        raise InvalidInput("empty probe expression")
    out: dict[tuple[str, ...], int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise InvalidInput(f"cannot parse probe expression {expr!r} at {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        mono = tuple(sorted(_SYMBOL.findall(m.group(3))))
        out[mono] = out.get(mono, 0) + sign * coef
        pos = m.end()
    return out


def evaluate_linear(form: dict[tuple[str, ...], int], env: dict[str, int]) -> int:
    total = 0
    for mono, coef in form.items():
        term = coef
        for sym in mono:
            term *= env[sym]
        total += term
    return total


def parse_expected(expr: str) -> tuple[int, int]:
    """``"2-|e0|"`` -> (2, -1): expected value is const + slope * |e0|."""
    s = expr.replace(" ", "").replace("−", "-")
    const, slope = 0, 0
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        k = -1 if sign == "-" else 1
        if body == "|e0|":
            slope += k
        elif body.endswith("|e0|"):
            slope += k * int(body[:-4])
        else:
            const += k * int(body)
    return const, slope


@dataclass(frozen=True)
class Sample:
    """A concrete (p, q) in a family with its solved Diophantine data."""

    family: str
    p: int
    q: int | None
    params: SeifertParams
    e0: int
    letters: dict = field(hash=False, compare=False)
    N0: int = 0

    @property
    def env(self) -> dict[str, int]:
        env = {"p": self.p, "p'": self.letters["p'"]}
        if self.q is not None:
            env.update(q=self.q, **{"q'": self.letters["q'"]})
        return env


def make_sample(family: str, p: int, q: int | None = None) -> Sample:
    fixed = FAMILIES[family]
    free = (p,) if q is None else (p, q)
    params = SeifertParams.of(*fixed, *free)  # raises on non-coprime data
    sol = solve_diophantine(params)
    by_fiber = dict(zip(params.p, sol.pprime))
    letters = {name: by_fiber[f] for name, f in zip(_FIXED_LETTERS[family], fixed[1:])}
    letters["p'"] = by_fiber[p]
    if q is not None:
        letters["q'"] = by_fiber[q]
    return Sample(family, p, q, params, sol.e0, letters, n0(params))


@dataclass(frozen=True)
class Interval:
    """Half-open ratio window lo < x <= hi (endpoints never hit for coprime data)."""

    lo: Fraction
    hi: Fraction

    def __contains__(self, x: Fraction) -> bool:
        return self.lo < x <= self.hi


def ratio(lo: str, hi: str) -> Interval:
    return Interval(Fraction(lo), Fraction(hi))


@dataclass(frozen=True)
class TableProbeSpec:
    """One row/cell of a probe table.

    ``probes`` pairs an expression with its expected Δ value, written as
    ``"1"``, ``"0"``, ``"|e0|-3"`` and so on.  ``claims_half`` means the row
    asserts every probe sits below N_0/2 whenever ``threshold`` holds.
    ``half_exprs`` narrows that claim to the listed probes.  ``inapplicable``
    rows must have no admissible sample at all.
    """

    table: int
    row: str
    family: str
    residues: tuple[int, ...] | None = None
    modulus: int | None = None
    e0: int | None = None
    letters: tuple[tuple[str, tuple[int, ...]], ...] = ()
    letters_not: tuple[tuple[str, tuple[int, ...]], ...] = ()
    p_ratio: Interval | None = None
    q_ratio: Interval | None = None
    p_fixed: int | None = None
    probes: tuple[tuple[str, str], ...] = ()
    claims_half: bool = False
    half_exprs: tuple[str, ...] | None = None
    threshold: Callable[[int, int | None], bool] | None = field(default=None, compare=False)
    threshold_text: str = ""
    inapplicable: bool = False
    note: str = ""

    @property
    def id(self) -> str:
        return f"T{self.table}:{self.row}"

    def admits(self, s: Sample) -> bool:
        """Whether a sample satisfies the row's hypotheses (threshold excluded)."""
        if s.family != self.family:
            return False
        if self.p_fixed is not None and s.p != self.p_fixed:
            return False
        if self.modulus is not None:
            key = s.p * (s.q if s.q is not None else 1) % self.modulus
            if key not in self.residues:
                return False
        if self.e0 is not None and s.e0 != self.e0:
            return False
        if any(s.letters[k] not in v for k, v in self.letters):
            return False
        if any(s.letters[k] in v for k, v in self.letters_not):
            return False
        if self.p_ratio is not None and Fraction(s.letters["p'"], s.p) not in self.p_ratio:
            return False
        if self.q_ratio is not None and Fraction(s.letters["q'"], s.q) not in self.q_ratio:
            return False
        return True

    def meets_threshold(self, s: Sample) -> bool:
        return self.threshold is None or self.threshold(s.p, s.q)


@dataclass
class ProbeResult:
    expr: str
    x: int
    expected: int
    got: int
    mirror_ok: bool

    @property
    def ok(self) -> bool:
        return self.expected == self.got and self.mirror_ok


@dataclass
class SampleReport:
    p: int
    q: int | None
    e0: int
    letters: dict
    N0: int
    probes: list[ProbeResult]
    half_ok: bool | None
    degenerate: bool = False

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.probes) and self.half_ok is not False and not self.degenerate

    def mismatches(self) -> list[str]:
        out = [
            f"Δ({r.expr}) = Δ({r.x}) = {r.got}, expected {r.expected}"
            for r in self.probes
            if r.expected != r.got
        ]
        out += [f"Δ(N0 - {r.expr}) != -Δ({r.expr})" for r in self.probes if not r.mirror_ok]
        if self.half_ok is False:
            out.append(f"claimed probe not below N0/2 = {self.N0}/2")
        if self.degenerate:
            out.append("a single probe cannot witness two Δ-sequence entries")
        return out


def check_sample(spec: TableProbeSpec, s: Sample) -> SampleReport:
    """Evaluate every probe of ``spec`` on one admissible sample."""
    if not spec.admits(s):
        raise InvalidInput(f"row {spec.id} not applicable to {s.params}")
    sol = solve_diophantine(s.params)
    env = s.env
    results = []
    for expr, want in spec.probes:
        x = evaluate_linear(parse_linear(expr), env)
        const, slope = parse_expected(want)
        expected = const + slope * (-s.e0)
        if x < 0:
            results.append(ProbeResult(expr, x, expected, None, False))
            continue
        got = delta_at(s.params, sol, x)
        mirror_ok = x > s.N0 or delta_at(s.params, sol, s.N0 - x) == -got
        results.append(ProbeResult(expr, x, expected, got, mirror_ok))
    half_ok = None
    if spec.claims_half and results:
        claimed = [r.x for r in results if spec.half_exprs is None or r.expr in spec.half_exprs]
        half_ok = 2 * max(claimed) < s.N0
    degenerate = spec.claims_half and len(results) < 2
    return SampleReport(s.p, s.q, s.e0, dict(s.letters), s.N0, results, half_ok, degenerate)
