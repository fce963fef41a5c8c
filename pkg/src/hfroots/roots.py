"""Graded roots built from τ-sequences, and the U-module ℍ_red they carry.

A vertex at grading g is a maximal run of indices n with τ(n) <= g.  Runs
only merge as g grows, so the tree is the merge tree of the sublevel sets of
τ.  It is stored through its branch decomposition: every local minimum other
than the trunk's owns the vertices from its own grading up to (but not
including) the grading where it joins an older branch.  The older of two
branches is the one with the lower minimum, ties going to the earlier index,
so the trunk ends at the first global minimum.

With this bookkeeping ℍ_red has one generator per non-trunk vertex, and U^m
survives on a branch vertex exactly when it is at least m steps below the
branch's junction.  Hence u_order is the longest branch.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from hfroots.errors import InvalidInput
from hfroots.seifert import (
    DEFAULT_ENUMERATION_CAP,
    DeltaSequence,
    SeifertParams,
    TauSequence,
    delta_sequence,
    tau_from_delta,
)

TRUNK = -1


def compress_extrema(values: Sequence[int] | np.ndarray) -> np.ndarray:
    """Drop repeats and monotone interior points, keeping the endpoints.

    The merge tree only depends on the alternating local extrema.
    """
    v = np.asarray(values, dtype=np.int64)
    if len(v) <= 2:
        return v.copy()
    keep = np.ones(len(v), dtype=bool)
    keep[1:] = v[1:] != v[:-1]
    v = v[keep]
    if len(v) <= 2:
        return v
    d = np.diff(v)
    turn = np.sign(d[1:]) != np.sign(d[:-1])
    keep = np.concatenate(([True], turn, [True]))
    return v[keep]


@dataclass(frozen=True)
class Branch:
    """Non-trunk branch: vertices at gradings ``leaf .. junction - 1``.

    ``parent`` is the branch owning the vertex at ``junction`` it attaches to
    (``TRUNK`` for the trunk).
    """

    id: int
    leaf: int
    junction: int
    parent: int

    @property
    def length(self) -> int:
        return self.junction - self.leaf


@dataclass(frozen=True)
class GradedRoot:
    """Finite representation of an infinite graded root.

    ``bottom`` is the grading of the trunk's lowest vertex (the global
    minimum of τ); ``top`` is the grading at and above which only the trunk
    exists.
    """

    bottom: int
    top: int
    branches: tuple[Branch, ...]

    def vertex_count_at(self, g: int) -> int:
        if g < self.bottom:
            return 0
        return 1 + sum(1 for b in self.branches if b.leaf <= g < b.junction)

    def vertices(self, ceiling: int | None = None) -> list[tuple[tuple[int, int], int]]:
        """((owner, grading), grading) pairs, truncated at ``ceiling`` (default top + 1).

        ``owner`` is the branch id, or ``TRUNK``.
        """
        ceiling = self.top + 1 if ceiling is None else ceiling
        out = [((TRUNK, g), g) for g in range(self.bottom, ceiling + 1)]
        for b in self.branches:
            out.extend(((b.id, g), g) for g in range(b.leaf, b.junction))
        return out

    def edges(self, ceiling: int | None = None) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        """(lower, upper) vertex pairs of the truncation."""
        ceiling = self.top + 1 if ceiling is None else ceiling
        out = [((TRUNK, g), (TRUNK, g + 1)) for g in range(self.bottom, ceiling)]
        for b in self.branches:
            out.extend(((b.id, g), (b.id, g + 1)) for g in range(b.leaf, b.junction - 1))
            out.append(((b.id, b.junction - 1), (b.parent, b.junction)))
        return out

    def check_axioms(self, ceiling: int | None = None) -> None:
        """Assert the graded-root axioms on the finite truncation."""
        ceiling = self.top + 1 if ceiling is None else ceiling
        verts = dict(self.vertices(ceiling))
        up: dict = {}
        down: dict = {}
        for lo, hi in self.edges(ceiling):
            if lo not in verts or hi not in verts:
                raise AssertionError(f"edge {lo}-{hi} leaves the vertex set")
            if verts[hi] - verts[lo] != 1:
                raise AssertionError(f"edge {lo}-{hi} does not change grading by 1")
            if lo in up:
                raise AssertionError(f"{lo} has two upward neighbours")
            up[lo] = hi
            down.setdefault(hi, []).append(lo)
        # (b): a vertex is never a local minimum between two neighbours, i.e.
        # every vertex but the truncation's top has exactly one upper neighbour.
        for v in verts:
            if v != (TRUNK, ceiling) and v not in up:
                raise AssertionError(f"{v} has no upward neighbour")
        counts = Counter(verts.values())
        if min(counts) != self.bottom:
            raise AssertionError("grading not bounded below by bottom")
        for g in range(self.top, ceiling + 1):
            if counts[g] != 1:
                raise AssertionError(f"{counts[g]} vertices at grading {g} >= top")

    def to_dot(self, ceiling: int | None = None) -> str:
        """Graphviz source: one node per vertex labelled by χ, trunk filled."""

        def name(v):
            owner, g = v
            return f"t{g}" if owner == TRUNK else f"b{owner}_{g}".replace("-", "m")

        lines = ["graph graded_root {", "  rankdir=BT;", "  node [shape=circle];"]
        for v, g in self.vertices(ceiling):
            style = ' style=filled fillcolor="gray70"' if v[0] == TRUNK else ""
            lines.append(f'  {name(v)} [label="{g}"{style}];')
        for lo, hi in self.edges(ceiling):
            lines.append(f"  {name(lo)} -- {name(hi)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def root_from_tau(tau: TauSequence | Sequence[int]) -> GradedRoot:
    """Graded root Γ_τ of a τ-sequence."""
    values = tau.values if isinstance(tau, TauSequence) else np.asarray(tau, dtype=np.int64)
    if len(values) == 0:
        raise InvalidInput("τ-sequence must be nonempty")
    ext = compress_extrema(values).tolist()
    m = len(ext)
    # union-find over the compressed sequence; a component is named by its
    # elder minimum (lowest value, then lowest index)
    parent = list(range(m))
    elder = list(range(m))
    active = [False] * m

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    # each branch: [leaf grading, junction, absorbing elder index]
    dying: dict[int, tuple[int, int, int]] = {}
    for i in sorted(range(m), key=lambda j: (ext[j], j)):
        active[i] = True
        for j in (i - 1, i + 1):
            if 0 <= j < m and active[j]:
                ri, rj = find(i), find(j)
                if ri == rj:
                    continue
                ei, ej = elder[ri], elder[rj]
                old, young = (ei, ej) if (ext[ei], ei) < (ext[ej], ej) else (ej, ei)
                if ext[i] > ext[young]:
                    dying[young] = (ext[young], ext[i], old)
                parent[rj] = ri
                elder[ri] = old

    trunk_leaf = elder[find(0)]
    # several merges at one grading: the absorbing elder may itself die
    # there, so climb to the first owner still alive at the junction
    for leaf, (g0, g1, old) in list(dying.items()):
        while old in dying and dying[old][1] <= g1:
            old = dying[old][2]
        dying[leaf] = (g0, g1, old)
    ids = {leaf: k for k, leaf in enumerate(sorted(dying))}
    branches = tuple(
        Branch(
            id=ids[leaf],
            leaf=g0,
            junction=g1,
            parent=TRUNK if old == trunk_leaf else ids[old],
        )
        for leaf, (g0, g1, old) in sorted(dying.items())
    )
    bottom = ext[trunk_leaf]
    top = max((b.junction for b in branches), default=bottom)
    return GradedRoot(bottom=bottom, top=top, branches=branches)


@dataclass(frozen=True)
class HRedSummary:
    """Ranks of ℍ_red per grading, its nilpotency order, and branch profile."""

    rank_by_grading: dict[int, int]
    u_order: int
    branch_profile: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return sum(self.rank_by_grading.values())


def h_red(root: GradedRoot) -> HRedSummary:
    """ℍ_red = ℍ⁺ modulo the trunk, summarized."""
    ranks: Counter = Counter()
    for b in root.branches:
        for g in range(b.leaf, b.junction):
            ranks[g] += 1
    return HRedSummary(
        rank_by_grading=dict(sorted(ranks.items())),
        u_order=max((b.length for b in root.branches), default=0),
        branch_profile=tuple(sorted((b.junction, b.leaf) for b in root.branches)),
    )


def u_power_nonzero(root: GradedRoot, k: int) -> bool:
    """Whether U^k · ℍ_red(Γ) != 0."""
    if k < 0:
        raise InvalidInput("k must be nonnegative")
    return max((b.length for b in root.branches), default=0) > k


def u_order_from_tau(values: Sequence[int] | np.ndarray) -> int:
    """u_order straight from τ: max over m of τ(m) - max(min left, min right)."""
    v = np.asarray(values, dtype=np.int64)
    if len(v) == 0:
        return 0
    left = np.minimum.accumulate(v)
    right = np.minimum.accumulate(v[::-1])[::-1]
    return int(np.max(v - np.maximum(left, right)))


def delta_cond_probe(pairs: Iterable[tuple[int, int]], k: int) -> bool:
    """True if some Δ(x) = k+1 is followed later by Δ(x') = -(k+1).

    Sufficient for U^k · ℍ_red != 0; not necessary.
    """
    seen_up = False
    for _, value in pairs:
        if value == k + 1:
            seen_up = True
        elif seen_up and value == -(k + 1):
            return True
    return False


def refine(ds: DeltaSequence, index: int, parts: Sequence[int]) -> DeltaSequence:
    """Split entry ``index`` into consecutive entries with values ``parts``."""
    parts = [int(x) for x in parts]
    if not 0 <= index < len(ds):
        raise InvalidInput(f"no Δ entry at index {index}")
    old = int(ds.values[index])
    if not parts or any(x == 0 or (x > 0) != (old > 0) for x in parts):
        raise InvalidInput("refinement parts must be nonzero and share the entry's sign")
    if sum(parts) != old:
        raise InvalidInput(f"refinement parts sum to {sum(parts)}, not {old}")
    t = len(parts)
    pos, sub = int(ds.positions[index]), int(ds.subs[index])
    subs = ds.subs.copy()
    subs[(ds.positions == pos) & (ds.subs > sub)] += t - 1
    return DeltaSequence(
        np.concatenate((ds.positions[:index], np.full(t, pos), ds.positions[index + 1:])),
        np.concatenate((ds.values[:index], parts, ds.values[index + 1:])),
        ds.n0,
        np.concatenate((subs[:index], sub + np.arange(t), subs[index + 1:])),
    )


def merge(ds: DeltaSequence, index: int, count: int) -> DeltaSequence:
    """Collapse ``count`` consecutive same-sign entries starting at ``index``."""
    stop = index + count
    if count < 1 or index < 0 or stop > len(ds):
        raise InvalidInput("merge range out of bounds")
    block = ds.values[index:stop]
    if not (np.all(block > 0) or np.all(block < 0)):
        raise InvalidInput("merged entries must share a sign")
    pos, sub = int(ds.positions[index]), int(ds.subs[index])
    subs = ds.subs.copy()
    later = np.arange(len(ds)) >= stop
    shift = np.count_nonzero(ds.positions[index + 1:stop] == pos)
    subs[later & (ds.positions == pos)] -= shift
    return DeltaSequence(
        np.concatenate((ds.positions[:index], [pos], ds.positions[stop:])),
        np.concatenate((ds.values[:index], [int(block.sum())], ds.values[stop:])),
        ds.n0,
        np.concatenate((subs[:index], [sub], subs[stop:])),
    )


def root_for(params: SeifertParams, cap: int = DEFAULT_ENUMERATION_CAP) -> GradedRoot:
    """Graded root of Σ(p_1, ..., p_l) by full enumeration."""
    return root_from_tau(tau_from_delta(delta_sequence(params, cap=cap)))
