"""Knot Floer input for the surgery formula: V_k and the reduced summands.

Levels are stored doubled ("twice-levels") so half levels are odd ints.
Level 0 of a summand is the bottom of its tower.

Input file (JSON)::

    {
      "name": "figure-eight-like",
      "genus": 1,
      "V": [0, 0],                       # V_0 .. V_g
      "reduced": {
        "0": {                           # k, with |k| <= g - 1
          "generators": [["x", 0]],      # name, twice-level
          "U": [],                       # [src, dst]: dst occurs in U(src)
          "v": {"x": "zero"},            # "zero" or "tower"; absent = zero
          "h": {"x": "zero"}
        }
      }
    }

"tower" sends a generator at twice-level m to the tower class at twice-level
m - 2V_k (for v) or m - 2H_k (for h), with H_k = V_k + k.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from hfroots.errors import InvalidInput

ZERO, TOWER = "zero", "tower"


@dataclass(frozen=True)
class GradedModuleSpec:
    """A finite graded F_2[U]-module: generators with twice-levels and U as pairs."""

    generators: tuple[tuple[str, int], ...] = ()
    U: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        names = [n for n, _ in self.generators]
        if len(set(names)) != len(names):
            raise InvalidInput("duplicate generator names")
        level = dict(self.generators)
        for src, dst in self.U:
            if src not in level or dst not in level:
                raise InvalidInput(f"U entry ({src}, {dst}) names an unknown generator")
            if level[dst] != level[src] - 2:
                raise InvalidInput(
                    f"U entry ({src}, {dst}) goes from twice-level {level[src]} to {level[dst]}, not down by 2"
                )

    @property
    def rank(self) -> int:
        return len(self.generators)

    def level(self, name: str) -> int:
        return dict(self.generators)[name]

    def u_images(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {n: set() for n, _ in self.generators}
        for src, dst in self.U:
            out[src] ^= {dst}
        return out

    def u_power(self, m: int) -> dict[str, set[str]]:
        """U^m on generators, as sets of names (sums over F_2)."""
        step = self.u_images()
        cur = {n: {n} for n, _ in self.generators}
        for _ in range(m):
            nxt = {}
            for n, img in cur.items():
                acc: set[str] = set()
                for y in img:
                    acc ^= step[y]
                nxt[n] = acc
            cur = nxt
        return cur

    def u_order(self) -> int:
        """Smallest m with U^m = 0."""
        if not self.generators:
            return 0
        m = 0
        while any(self.u_power(m).values()):
            m += 1
            if m > len(self.generators):
                raise InvalidInput("U is not nilpotent")
        return m

    def rank_by_level(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, m in self.generators:
            out[m] = out.get(m, 0) + 1
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class ReducedSummand:
    module: GradedModuleSpec = field(default_factory=GradedModuleSpec)
    v: frozenset = frozenset()  # names sent to the tower by v_k
    h: frozenset = frozenset()


@dataclass(frozen=True)
class KnotFloerInput:
    genus: int
    V: tuple[int, ...]
    reduced: dict = field(default_factory=dict, hash=False)  # k -> ReducedSummand
    name: str = ""

    def V_at(self, k: int) -> int:
        """V_k for every integer k: 0 past the genus, V_{-k} = V_k + k."""
        if k >= 0:
            return self.V[k] if k < len(self.V) else 0
        return self.V_at(-k) - k

    def H_at(self, k: int) -> int:
        return self.V_at(k) + k

    def summand(self, k: int) -> ReducedSummand:
        return self.reduced.get(k, ReducedSummand())

    def max_level(self) -> int:
        return max((m for s in self.reduced.values() for _, m in s.module.generators), default=0)


def validate_input(knot: KnotFloerInput) -> None:
    """Raise InvalidInput listing every violated identity."""
    errors = []
    g, V = knot.genus, list(knot.V)
    if g < 1:
        errors.append(f"genus must be >= 1, got {g}")
    if len(V) != g + 1:
        errors.append(f"V must list V_0 .. V_{g} ({g + 1} values), got {len(V)}")
    if any(x < 0 for x in V):
        errors.append("V entries must be nonnegative")
    if V and V[-1] != 0:
        errors.append(f"V_g must be 0, got V_{len(V) - 1} = {V[-1]}")
    for k in range(len(V) - 1):
        if V[k + 1] > V[k]:
            errors.append(f"V nonincreasing fails at k = {k}: V_{k} = {V[k]} < V_{k + 1} = {V[k + 1]}")
        elif V[k + 1] < V[k] - 1:
            errors.append(f"V drops by more than 1 at k = {k}: V_{k} = {V[k]}, V_{k + 1} = {V[k + 1]}")
    if errors:
        raise InvalidInput("; ".join(errors))
    for k in range(-g, g + 1):
        if knot.H_at(k) != knot.V_at(k) + k or knot.V_at(k) != knot.H_at(-k):
            errors.append(f"H/V symmetry fails at k = {k}")
        if k <= g and knot.H_at(k) > g:
            errors.append(f"H_{k} = {knot.H_at(k)} exceeds the genus")
        if k >= 0 and knot.V_at(k) > g:
            errors.append(f"V_{k} = {knot.V_at(k)} exceeds the genus")
    for k, s in sorted(knot.reduced.items()):
        if abs(k) > g - 1:
            errors.append(f"reduced summand at k = {k} outside |k| <= {g - 1}")
            continue
        errors += _check_summand(knot, k, s)
    if errors:
        raise InvalidInput("; ".join(errors))


def _check_summand(knot: KnotFloerInput, k: int, s: ReducedSummand) -> list[str]:
    errors = []
    mod, g = s.module, knot.genus
    level = dict(mod.generators)
    if any(mod.u_power(g).values()):
        errors.append(f"U^{g} is nonzero on the reduced summand at k = {k}")
    step = mod.u_images()
    for which, shift, sent in (("v", knot.V_at(k), s.v), ("h", knot.H_at(k), s.h)):
        for x in sorted(sent):
            if x not in level:
                errors.append(f"{which}_{k} names unknown generator {x}")
                continue
            t = level[x] - 2 * shift
            if t % 2 or t < 0:
                errors.append(f"{which}_{k}({x}) must vanish: target twice-level {t} is not on the tower")
        if errors:
            continue

        def target(x: str) -> int:
            # bit t/2 stands for the tower class at level t/2
            return 1 << ((level[x] - 2 * shift) // 2) if x in sent else 0

        for x, _ in mod.generators:
            lhs = 0
            for y in step[x]:
                lhs ^= target(y)
            rhs = target(x) >> 1
            if lhs != rhs:
                errors.append(f"{which}_{k} is not U-equivariant at {x}")
    if g == 1 and k == 0 and knot.V_at(0) == 1:
        for x, m in mod.generators:
            if m == 2 and (x in s.v or x in s.h):
                errors.append(f"v_0 and h_0 must vanish on level-1 generator {x} when V_0 = H_0 = 1")
    return errors


def from_dict(data: dict) -> KnotFloerInput:
    try:
        genus = int(data["genus"])
        V = tuple(int(x) for x in data["V"])
        reduced = {}
        for key, summ in (data.get("reduced") or {}).items():
            gens = tuple((str(n), int(m)) for n, m in summ.get("generators", []))
            U = tuple((str(a), str(b)) for a, b in summ.get("U", []))
            v = frozenset(n for n, t in (summ.get("v") or {}).items() if _target(t) == TOWER)
            h = frozenset(n for n, t in (summ.get("h") or {}).items() if _target(t) == TOWER)
            reduced[int(key)] = ReducedSummand(GradedModuleSpec(gens, U), v, h)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed knot input: {exc}") from None
    return KnotFloerInput(genus, V, reduced, str(data.get("name", "")))


def _target(t) -> str:
    if t not in (ZERO, TOWER):
        raise InvalidInput(f"map target must be {ZERO!r} or {TOWER!r}, got {t!r}")
    return t


def to_dict(knot: KnotFloerInput) -> dict:
    reduced = {}
    for k, s in sorted(knot.reduced.items()):
        reduced[str(k)] = {
            "generators": [[n, m] for n, m in s.module.generators],
            "U": [[a, b] for a, b in s.module.U],
            "v": {n: TOWER if n in s.v else ZERO for n, _ in s.module.generators},
            "h": {n: TOWER if n in s.h else ZERO for n, _ in s.module.generators},
        }
    return {"name": knot.name, "genus": knot.genus, "V": list(knot.V), "reduced": reduced}


def load_input(path: str | Path) -> KnotFloerInput:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read knot input {path}: {exc}") from None
    knot = from_dict(data)
    validate_input(knot)
    return knot


def bundled(name: str) -> KnotFloerInput:
    """``"trefoil"`` or ``"figure8"``."""
    try:
        text = resources.files("hfroots.data").joinpath(f"{name}.json").read_text()
    except FileNotFoundError:
        raise InvalidInput(f"no bundled knot input named {name!r}") from None
    knot = from_dict(json.loads(text))
    validate_input(knot)
    return knot


def random_genus1_input(rng: random.Random, max_gens: int = 6) -> KnotFloerInput:
    """A random admissible genus one input.

    U vanishes on the reduced part.  v_0 and h_0 may hit the tower only from
    level 0, and only when V_0 = 0 (otherwise the target lies below the
    tower or is excluded at level 1).
    """
    V0 = rng.randint(0, 1)
    gens = tuple((f"x{i}", rng.randint(-4, 6)) for i in range(rng.randint(0, max_gens)))
    v = h = frozenset()
    if V0 == 0:
        bottom = [n for n, m in gens if m == 0]
        v = frozenset(n for n in bottom if rng.random() < 0.5)
        h = frozenset(n for n in bottom if rng.random() < 0.5)
    knot = KnotFloerInput(1, (V0, 0), {0: ReducedSummand(GradedModuleSpec(gens), v, h)}, "random")
    validate_input(knot)
    return knot
