"""Truncated mapping cone for positive surgery and its kernel.

For slope p/q and Spin^c index i the cone is ⊕_s A_{k(s)} -> ⊕_s B_s with
k(s) = floor((i + p s)/q); v_{k(s)} lands in B_s and h_{k(s)} in B_{s+1}.
Columns with k >= g (v an isomorphism) or k <= -g (h an isomorphism) form
acyclic sub- and quotient complexes and are dropped, which keeps A_s for
-g < k(s) < g and B_s for s_min < s <= s_max.

Gradings are doubled.  Column s has its tower bottom at absolute grading
c_s with c_{s+1} = c_s + 2 H_{k(s)} - 2 V_{k(s+1)}, which makes v and h both
homogeneous of degree -1.  For positive slopes HF+ is the kernel of D, so
everything below works inside the A-columns.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd

from hfroots.cone import gf2
from hfroots.cone.knot import GradedModuleSpec, KnotFloerInput, validate_input
from hfroots.errors import InvalidInput, StabilizationError

CEILING_CAP = 2**10


@dataclass(frozen=True)
class Column:
    s: int
    k: int
    offset: int  # absolute grading of the tower bottom


@dataclass
class TruncatedCone:
    knot: KnotFloerInput
    p: int
    q: int
    i: int
    columns: list[Column]
    b_columns: list[int]

    @property
    def a_count(self) -> int:
        return len(self.columns)

    @property
    def b_count(self) -> int:
        return len(self.b_columns)

    def b_offset(self, s: int) -> int:
        """Absolute grading of the bottom of B_s, from whichever map reaches it."""
        for c in self.columns:
            if c.s == s:
                return c.offset + 2 * self.knot.V_at(c.k) - 1
            if c.s == s - 1:
                return c.offset + 2 * self.knot.H_at(c.k) - 1
        raise KeyError(s)


def build_truncated_cone(knot: KnotFloerInput, p: int, q: int, i: int = 0) -> TruncatedCone:
    if p < 1 or q < 1:
        raise InvalidInput(f"slope {p}/{q} must be positive; use the mirror knot for negative slopes")
    if gcd(p, q) != 1:
        raise InvalidInput(f"slope {p}/{q} is not in lowest terms")
    if not 0 <= i < p:
        raise InvalidInput(f"Spin^c index must lie in [0, {p}), got {i}")
    validate_input(knot)
    g = knot.genus
    # k(s) is nondecreasing in s, so the kept columns are a contiguous run
    s = 0
    while (i + p * s) // q > -g:
        s -= 1
    while (i + p * s) // q <= -g:
        s += 1
    cols = []
    offset = 0
    while (i + p * s) // q < g:
        k = (i + p * s) // q
        if cols:
            prev = cols[-1]
            offset = prev.offset + 2 * knot.H_at(prev.k) - 2 * knot.V_at(k)
        cols.append(Column(s, k, offset))
        s += 1
    b_cols = [c.s for c in cols[1:]]
    return TruncatedCone(knot, p, q, i, cols, b_cols)


# ---------------------------------------------------------------- kernel


@dataclass
class _Gen:
    col: int  # index into cone.columns
    tower: int | None  # tower level, or None for a reduced generator
    name: str | None
    grading: int


class _Graded:
    """The A-side and B-side generators of a cone up to a grading ceiling."""

    def __init__(self, cone: TruncatedCone, top: int):
        self.cone = cone
        self.top = top
        knot = cone.knot
        self.a: dict[int, list[_Gen]] = defaultdict(list)
        self.index: dict[tuple, tuple[int, int]] = {}
        for ci, c in enumerate(cone.columns):
            j = 0
            while c.offset + 2 * j <= top:
                self._add(_Gen(ci, j, None, c.offset + 2 * j))
                j += 1
            for name, m in knot.summand(c.k).module.generators:
                if c.offset + m <= top:
                    self._add(_Gen(ci, None, name, c.offset + m))
        self.b_index: dict[tuple[int, int], tuple[int, int]] = {}
        b_count: dict[int, int] = defaultdict(int)
        for s in cone.b_columns:
            base = cone.b_offset(s)
            j = 0
            while base + 2 * j <= top - 1:
                G = base + 2 * j
                self.b_index[(s, j)] = (G, b_count[G])
                b_count[G] += 1
                j += 1

    def _add(self, gen: _Gen):
        key = (gen.col, gen.tower, gen.name)
        self.index[key] = (gen.grading, len(self.a[gen.grading]))
        self.a[gen.grading].append(gen)

    def d_image(self, gen: _Gen) -> int:
        """D(gen) as a bit vector over the B generators one grading lower."""
        cone, knot = self.cone, self.cone.knot
        col = cone.columns[gen.col]
        summ = knot.summand(col.k)
        out = 0
        for target_s, shift, sent in (
            (col.s, knot.V_at(col.k), summ.v),
            (col.s + 1, knot.H_at(col.k), summ.h),
        ):
            if target_s not in cone.b_columns:
                continue
            if gen.tower is not None:
                j = gen.tower - shift
            elif gen.name in sent:
                j = (summ.module.level(gen.name) - 2 * shift) // 2
            else:
                continue
            if j >= 0:
                G, pos = self.b_index[(target_s, j)]
                assert G == gen.grading - 1
                out ^= 1 << pos
        return out

    def u_image(self, gen: _Gen) -> int:
        """U(gen) as a bit vector over the A generators two gradings lower."""
        cone = self.cone
        if gen.tower is not None:
            if gen.tower == 0:
                return 0
            return 1 << self.index[(gen.col, gen.tower - 1, None)][1]
        summ = cone.knot.summand(cone.columns[gen.col].k)
        out = 0
        for dst in summ.module.u_images()[gen.name]:
            out ^= 1 << self.index[(gen.col, None, dst)][1]
        return out


@dataclass(frozen=True)
class SurgeryHomology:
    """HF+ of the surgery: one tower plus the reduced part, gradings doubled.

    Gradings are normalized so the tower's lowest class sits at 0.
    """

    tower_bottom: int
    red: GradedModuleSpec
    u_order: int
    ceiling: int = field(compare=False, default=0)

    @property
    def red_rank(self) -> int:
        return self.red.rank

    def profile(self) -> tuple:
        """Ranks of U^m on red per grading; an isomorphism invariant."""
        out = []
        for m in range(self.u_order + 1):
            powers = self.red.u_power(m)
            by_grading: dict[int, list[int]] = defaultdict(list)
            names = {n: i for i, (n, _) in enumerate(self.red.generators)}
            for n, lvl in self.red.generators:
                by_grading[lvl].append(sum(1 << names[y] for y in powers[n]))
            out.append(tuple(sorted((G, gf2.rank(vs)) for G, vs in by_grading.items())))
        return tuple(out)

    def to_record(self) -> dict:
        return {
            "red_rank": self.red_rank,
            "u_order": self.u_order,
            "red_rank_by_level": {str(k): v for k, v in self.red.rank_by_level().items()},
            "tower_bottom": self.tower_bottom,
        }


def _homology_at(cone: TruncatedCone, top: int) -> SurgeryHomology:
    gr = _Graded(cone, top)
    grades = sorted(gr.a)
    ker: dict[int, list[int]] = {}
    for G in grades:
        ker[G] = gf2.kernel([gr.d_image(x) for x in gr.a[G]])
    u_maps = {G: [gr.u_image(x) for x in gr.a[G]] for G in grades}

    def push(G: int, vecs: list[int]) -> list[int]:
        return [gf2.apply(u_maps.get(G, []), v) for v in vecs]

    # tower image at G: U^m of the kernel from the highest grading available
    tower: dict[int, list[int]] = {}
    for G in grades:
        m = (top - G) // 2
        vecs, H = ker.get(G + 2 * m, []), G + 2 * m
        while H > G:
            vecs = push(H, vecs)
            H -= 2
        tower[G] = gf2.basis(vecs)
    towered = [G for G in grades if tower[G]]
    if not towered:
        raise StabilizationError("no tower found in the kernel")
    bottom = min(towered)

    # red = kernel modulo tower, with representatives and induced U
    reps: dict[int, list[int]] = {}
    ech: dict[int, gf2.Echelon] = {}
    for G in grades:
        e = gf2.Echelon()
        for t in tower[G]:
            e.insert(t)
        chosen = []
        for v in ker[G]:
            if e.insert(v, 1 << len(chosen)):
                chosen.append(v)
        reps[G], ech[G] = chosen, e
    names, gens, U = {}, [], []
    for G in grades:
        for j, _ in enumerate(reps[G]):
            nm = f"r{G - bottom}_{j}"
            names[(G, j)] = nm
            gens.append((nm, G - bottom))
    for G in grades:
        if G - 2 not in ech:
            continue
        for j, v in enumerate(reps[G]):
            rest, tag = ech[G - 2].reduce(gf2.apply(u_maps[G], v))
            if rest:
                raise StabilizationError("U left the kernel; the ceiling is too low")
            t = 0
            while tag:
                if tag & 1:
                    U.append((names[(G, j)], names[(G - 2, t)]))
                tag >>= 1
                t += 1
    red = GradedModuleSpec(tuple(gens), tuple(U))
    return SurgeryHomology(0, red, red.u_order(), top)


def initial_ceiling(cone: TruncatedCone) -> int:
    knot = cone.knot
    return 2 * (knot.genus + knot.V_at(0) + cone.q + max(knot.max_level(), 0) + 4)


def surgery_homology(cone: TruncatedCone, ceiling: int | None = None) -> SurgeryHomology:
    """HF+ of the surgery from the kernel of D, stable under raising the ceiling.

    Generators up to twice-level ``ceiling`` above the highest column bottom
    are kept.  The answer is accepted when it agrees at ceiling T and T + 2;
    otherwise T doubles, up to CEILING_CAP.
    """
    T = ceiling or initial_ceiling(cone)
    base = max(c.offset for c in cone.columns)
    while T <= CEILING_CAP:
        lo = _homology_at(cone, base + T)
        hi = _homology_at(cone, base + T + 2)
        if lo.profile() == hi.profile():
            return lo
        T *= 2
    raise StabilizationError(f"surgery homology did not stabilize below ceiling {CEILING_CAP}")


def surgery(knot: KnotFloerInput, p: int, q: int, i: int = 0) -> SurgeryHomology:
    return surgery_homology(build_truncated_cone(knot, p, q, i))


def pm_one_surgery_red(knot: KnotFloerInput) -> GradedModuleSpec:
    """HF_red of +1 surgery on a genus one knot: the reduced part of A_0."""
    validate_input(knot)
    if knot.genus != 1:
        raise InvalidInput(f"needs a genus one knot, got genus {knot.genus}")
    red = knot.summand(0).module
    if any(red.u_power(1).values()):
        raise AssertionError("U acts nontrivially on the reduced part of A_0")
    return red


@dataclass(frozen=True)
class Genus1Row:
    n: int
    red_rank: int
    u_order: int

    @property
    def ok(self) -> bool:
        return self.u_order <= 1


def genus1_check(knot: KnotFloerInput, n_max: int) -> list[Genus1Row]:
    """u_order of HF_red(S^3_{1/n}(K)) for n = 1..n_max; each should be <= 1."""
    validate_input(knot)
    if knot.genus != 1:
        raise InvalidInput(f"needs a genus one knot, got genus {knot.genus}")
    rows = []
    for n in range(1, n_max + 1):
        h = surgery(knot, 1, n)
        rows.append(Genus1Row(n, h.red_rank, h.u_order))
    return rows
