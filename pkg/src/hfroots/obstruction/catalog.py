"""The probe tables, one TableProbeSpec per cell.

Tables are numbered in the order they appear in the source:

1. Σ(2,3,5,p,q) key values Δ(xpq), Δ(xpq ± 1) by (a, b)
2. Σ(2,3,5,p,q) general cases by pq mod 30 and e0
3. pq ≡ 1 (30), e0 = -3, by p'/p and q'/q
4. pq ≡ 13 (30), e0 = -3
5. pq ≡ 17 (30), e0 = -2
6. pq ≡ 29 (30), e0 = -2
7. pq ≡ 13 (30), p = 7, e0 = -3
8. pq ≡ 17 (30), p = 7, e0 = -2
9. Σ(2,3,7,p,q) key values by (a, b)
10. Σ(2,3,7,p,q) general cases by pq mod 42 and e0
11. pq ≡ 1 (42), e0 = -2
12. Σ(2,3,11,13,p): Δ(781p ± 1) by (a, c), the general cases, and the two
    leftover cases

Entries are transcribed as printed.  Where the printed text is garbled (a
repeated line, a run whose ends do not share a base) the cell carries the
evident reading and a ``note`` quoting the print; cells that are legible
but wrong are left as printed so that verification reports them.
"""

from __future__ import annotations

from fractions import Fraction

from hfroots.obstruction.probes import Interval, TableProbeSpec, ratio


def span(base: str, lo: int, hi: int) -> tuple[tuple[str, str], ...]:
    """Probes base+lo .. base+hi with Δ pattern (1, 0, ..., 0, 1)."""
    out = []
    for k in range(lo, hi + 1):
        expr = base if k == 0 else f"{base}{k:+d}"
        out.append((expr, "1" if k in (lo, hi) else "0"))
    return tuple(out)


# ---------------------------------------------------------------- thresholds


def type_a_235(p, q):
    return p > 10 and q * (p - 10) > 10 * p + 4


def general_235(p, q):
    return type_a_235(p, q) or (p == 7 and q > 42)


def type_a_237(p, q):
    return p > 6 and q * (7 * p - 42) > 42 * p + 4


def _table_4_green(p, q):
    small = {11: Fraction(329, 11), 13: 11, 17: 55, 19: 9, 23: 40, 29: 12}
    if p in small:
        return q > small[p]
    return p > 30 and q * (p - 30) > 30 * p + 6


def _table_5_green(p, q):
    small = {11: 1, 13: 1, 17: 6, 19: 9, 23: 40, 29: 12}
    if p in small:
        return q > small[p]
    return p > 30 and q * (p - 30) > 30 * p


def _case_4(p, q):
    return p > 10 and q * (3 * p - 30) > 30 * p + 4


def _case_5(p, q):
    return p > 6 and q * (p - 6) > 6 * p


def _table_11_green(p, q):
    return p > 42 and q * (p - 42) > 42 * p


def _swap(f):
    def g(p, q):
        return f(q, p)

    g.__name__ = f"{f.__name__}_swapped"
    return g


def _q_above(bound):
    bound = Fraction(bound)

    def g(p, q):
        return q > bound

    return g


# ---------------------------------------------------------------- intervals

THIRDS = [ratio("0", "1/3"), ratio("1/3", "1/2"), ratio("1/2", "2/3"), ratio("2/3", "1")]
FIFTHS = [ratio(f"{k}/5", f"{k + 1}/5") for k in range(5)]
T6_BANDS = [ratio("0", "1/2"), ratio("1/2", "3/5"), ratio("3/5", "1")]
HALVES = [ratio("0", "1/2"), ratio("1/2", "1")]


def _label(iv: Interval) -> str:
    return f"({iv.lo},{iv.hi}]"


# ---------------------------------------------------------------- table 1

_T1_AB = [(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (2, 4)]
# (Δ(xpq-1), Δ(xpq+1)) per column, x = 25, 26, 27
_T1 = {
    25: (["2-|e0|"] * 4 + ["3-|e0|"] * 4, ["|e0|-2"] * 4 + ["|e0|-3"] * 4),
    26: (
        ["2-|e0|", "2-|e0|", "2-|e0|", "3-|e0|", "2-|e0|", "2-|e0|", "2-|e0|", "3-|e0|"],
        ["|e0|-2", "|e0|-3", "|e0|-3", "|e0|-3", "|e0|-2", "|e0|-3", "|e0|-3", "|e0|-3"],
    ),
    27: (
        ["2-|e0|", "2-|e0|", "3-|e0|", "3-|e0|", "2-|e0|", "2-|e0|", "3-|e0|", "3-|e0|"],
        ["|e0|-2", "|e0|-2", "|e0|-3", "|e0|-3", "|e0|-2", "|e0|-2", "|e0|-3", "|e0|-3"],
    ),
}


def _table_1():
    rows = []
    for col, (a, b) in enumerate(_T1_AB):
        probes = []
        for x, (minus, plus) in _T1.items():
            probes += [(f"{x}pq-1", minus[col]), (f"{x}pq", "1"), (f"{x}pq+1", plus[col])]
        rows.append(
            TableProbeSpec(
                table=1,
                row=f"a={a},b={b}",
                family="235pq",
                letters=(("a", (a,)), ("b", (b,))),
                probes=tuple(probes),
            )
        )
    return rows


# ---------------------------------------------------------------- table 2

_T2 = {
    1: {-1: span("26pq", -1, 0), -2: span("26pq", -1, 0)},
    7: {-1: span("26pq", -1, 0), -2: span("25pq", -1, 0), -3: span("27pq", 0, 1)},
    11: {-1: span("25pq", -1, 0), -2: span("26pq", -1, 0), -3: span("25pq", 0, 1)},
    13: {-1: span("26pq", -1, 0), -2: span("25pq", -1, 0)},
    17: {-1: span("25pq", -1, 0), -3: span("25pq", 0, 1)},
    19: {-1: span("26pq", -1, 0), -2: span("25pq", -1, 0), -3: span("26pq", 0, 1)},
    23: {-1: span("25pq", -1, 0), -2: span("27pq", -1, 0), -3: span("25pq", 0, 1)},
    29: {-1: span("25pq", -1, 0), -3: span("25pq", 0, 1)},
}
_T2_NOTES = {
    (19, -3): "printed as 26pq+1, 26pq+1; Δ(26pq+1) = |e0|-3 = 0 here, so the pair is 26pq, 26pq+1",
}


def _table_2():
    rows = []
    for r, cells in _T2.items():
        for e0, probes in cells.items():
            rows.append(
                TableProbeSpec(
                    table=2,
                    row=f"pq={r} mod 30,e0={e0}",
                    family="235pq",
                    residues=(r,),
                    modulus=30,
                    e0=e0,
                    probes=probes,
                    claims_half=True,
                    threshold=general_235,
                    threshold_text="p > 10 and q(p-10) > 10p+4, or p = 7 and q > 42",
                    note=_T2_NOTES.get((r, e0), ""),
                )
            )
    return rows


# ---------------------------------------------------------------- tables 3-8


def _grid(table, residue, e0, q_bands, p_bands, cells, thresholds, notes=None, p_fixed=None):
    """Cells indexed [q row][p column]; None marks a cell with no entry, "red" an
    impossible one."""
    notes = notes or {}
    rows = []
    for i, q_iv in enumerate(q_bands):
        for j, p_iv in enumerate(p_bands):
            cell = cells[i][j]
            if cell is None:
                continue
            common = dict(
                table=table,
                row=f"q'/q in {_label(q_iv)},p'/p in {_label(p_iv)}",
                family="235pq",
                residues=(residue,),
                modulus=30,
                e0=e0,
                p_ratio=p_iv,
                q_ratio=q_iv,
                p_fixed=p_fixed,
            )
            if cell == "red":
                rows.append(TableProbeSpec(inapplicable=True, **common))
                continue
            thr, text = thresholds[i][j]
            rows.append(
                TableProbeSpec(
                    probes=cell,
                    claims_half=True,
                    threshold=thr,
                    threshold_text=text,
                    note=notes.get((i, j), ""),
                    **common,
                )
            )
    return rows


_A235 = (type_a_235, "p > 10 and q(p-10) > 10p+4")


def _table_3():
    s20 = span("20pq", 0, 2)
    s22_3 = span("22pq", -3, 0)
    s22_2 = span("22pq", -2, 0)
    gq = span("15pq+30pq'", 0, 1)
    gp = span("15pq+30p'q", 0, 1)
    cells = [
        [s20, gq, gq, s22_3],
        [gp, s20, s22_3, s22_3],
        [gp, s22_3, s22_2, s22_3],
        [s22_3, s22_3, s22_3, s22_2],
    ]
    A = _A235
    thr = [[A] * 4 for _ in range(4)]
    thr[0][1] = thr[0][2] = (_q_above(6), "q > 6")
    thr[1][0] = thr[2][0] = (_swap(_q_above(6)), "p > 6")
    notes = {(2, 1): "printed as 22pq-3 ... 20pq+2; the run ends at 22pq"}
    return _grid(3, 1, -3, THIRDS, THIRDS, cells, thr, notes)


def _table_4():
    s26 = span("26pq", 0, 2)
    s28 = span("28pq", 0, 6)
    s28m = span("28pq", -4, 0)
    green = span("60pq'-9pq", 0, 3)
    cells = [
        [s26] * 5,
        [s26] * 5,
        [s26, s26, s28, s28, s28m],
        [s26, s26, s28, green, s28m],
        [s26, s26, s28m, s28m, s28m],
    ]
    thr = [[_A235] * 5 for _ in range(5)]
    thr[3][3] = (_table_4_green, "p > 30 and q(p-30) > 30p+6, or the listed p < 30 bounds")
    notes = {(3, 3): "printed as 90pq'-3pq ... 90pq'-3pq+3; the proof text uses 60pq'-9pq ... +3"}
    return _grid(4, 13, -3, FIFTHS, FIFTHS, cells, thr, notes)


def _table_5():
    s26 = span("26pq", -2, 0)
    cells = [
        [span("28pq", 0, 3), span("28pq", 0, 4), span("28pq", 0, 4), s26, s26],
        [span("28pq", 0, 4), span("51pq-60pq'", -3, 0), span("28pq", -6, 0), s26, s26],
        [(("28pq", "1"),), span("28pq", -6, 0), span("28pq", -6, 0), s26, s26],
        [s26] * 5,
        [s26] * 5,
    ]
    thr = [[_A235] * 5 for _ in range(5)]
    thr[1][1] = (_table_5_green, "p > 30 and q(p-30) > 30p, or the listed p < 30 bounds")
    notes = {(2, 0): "printed as the one-point run 28pq ... 28pq; kept as printed"}
    return _grid(5, 17, -2, FIFTHS, FIFTHS, cells, thr, notes)


def _table_6():
    s26 = span("26pq", -2, 0)
    cells = [
        [span("26pq", 0, 2), span("60p'q-8pq", 0, 2), span("45pq-30p'q", -1, 0)],
        [span("60pq'-8pq", 0, 2), s26, s26],
        [span("45pq-30pq'", -1, 0), s26, s26],
    ]
    thr = [[_A235] * 3 for _ in range(3)]
    thr[1][0] = (_case_4, "p > 10 and q(3p-30) > 30p+4")
    thr[0][1] = (_swap(_case_4), "q > 10 and p(3q-30) > 30q+4")
    thr[0][2] = (_case_5, "p > 6 and q(p-6) > 6p")
    thr[2][0] = (_swap(_case_5), "q > 6 and p(q-6) > 6q")
    notes = {(0, 1): "third entry printed as 60q'-8q+2"}
    return _grid(6, 29, -2, T6_BANDS, T6_BANDS, cells, thr, notes)


def _table_7():
    s26 = span("26pq", 0, 2)
    cells = [
        [s26] * 5,
        [s26] * 5,
        [s26, s26, "red", span("280q-210q'", -7, 0), "red"],
        [s26, s26, span("1420q-1890q'", -7, 0), span("60pq'-9pq", 0, 3), "red"],
        [s26, s26, span("520q-420q'", -2, 0), "red", "red"],
    ]
    base = (_q_above(Fraction(214, 19)), "q > 214/19")
    thr = [[base] * 5 for _ in range(5)]
    thr[2][3] = (_q_above(Fraction(-208, 41)), "q > -208/41")
    thr[3][2] = (_q_above(Fraction(214, 45)), "q > 214/45")
    thr[3][3] = (_q_above(Fraction(209, 73)), "q > 209/73")
    thr[4][2] = (_q_above(Fraction(214, 19)), "q > 214/19")
    return _grid(7, 13, -3, FIFTHS, FIFTHS, cells, thr, p_fixed=7)


def _table_8():
    s26 = span("26pq", -2, 0)
    cells = [
        ["red", "red", span("182q", -2, 0), s26, s26],
        ["red", span("51pq-60pq'", -3, 0), span("240q-210q'", -10, 0), s26, s26],
        ["red", span("777q-1260q'", -7, 0), "red", s26, s26],
        [s26] * 5,
        [s26] * 5,
    ]
    base = (_q_above(Fraction(214, 19)), "q > 214/19")
    thr = [[base] * 5 for _ in range(5)]
    thr[0][2] = (_q_above(Fraction(210, 19)), "q > 210/19")
    thr[1][1] = (_q_above(Fraction(2354, 2331)), "q > 2354/2331")
    thr[1][2] = (_q_above(Fraction(64, 15)), "q > 64/15")
    thr[2][1] = (_q_above(Fraction(222, 41)), "q > 222/41")
    notes = {(1, 2): "printed as 240q-210q'-10 ... 240q-210q'-10; the run ends at 240q-210q'"}
    return _grid(8, 17, -2, FIFTHS, FIFTHS, cells, thr, notes, p_fixed=7)


# ---------------------------------------------------------------- table 9

_T9_AB = [
    (1, (1, 2)), (1, (3,)), (1, (4,)), (1, (5, 6)),
    (2, (1, 2)), (2, (3,)), (2, (4,)), (2, (5, 6)),
]
_T9 = {
    26: (
        ["1-|e0|", "1-|e0|", "1-|e0|", "2-|e0|", "2-|e0|", "2-|e0|", "2-|e0|", "3-|e0|"],
        ["|e0|-2", "|e0|-3", "|e0|-3", "|e0|-3", "|e0|-3", "|e0|-4", "|e0|-4", "|e0|-4"],
    ),
    35: (["2-|e0|"] * 4 + ["3-|e0|"] * 4, ["|e0|-2"] * 4 + ["|e0|-3"] * 4),
    36: (["2-|e0|"] * 8, ["|e0|-3"] * 8),
    39: (
        ["2-|e0|", "2-|e0|", "3-|e0|", "3-|e0|", "2-|e0|", "2-|e0|", "3-|e0|", "3-|e0|"],
        ["|e0|-2", "|e0|-2", "|e0|-3", "|e0|-3", "|e0|-2", "|e0|-2", "|e0|-3", "|e0|-3"],
    ),
}


def _table_9():
    rows = []
    for col, (a, bs) in enumerate(_T9_AB):
        probes = []
        for x, (minus, plus) in _T9.items():
            probes += [(f"{x}pq-1", minus[col]), (f"{x}pq", "1"), (f"{x}pq+1", plus[col])]
        rows.append(
            TableProbeSpec(
                table=9,
                row=f"a={a},b={','.join(map(str, bs))}",
                family="237pq",
                letters=(("a", (a,)), ("b", bs)),
                probes=tuple(probes),
            )
        )
    return rows


# ---------------------------------------------------------------- table 10

_L26 = span("26pq", -1, 0)
_U26 = span("26pq", 0, 1)
_U35 = span("35pq", 0, 1)
_T10 = {
    1: {-1: _L26, -3: _U26, -4: _U26},
    5: {-1: _L26, -2: _L26, -3: span("39pq", 0, 1), -4: _U35},
    11: {-1: _L26, -2: _L26, -3: span("36pq", 0, 3), -4: _U26},
    13: {-1: _L26, -2: _L26, -3: _U35, -4: _U26},
    17: {-1: _L26, -2: _L26, -3: _L26, -4: _U35},
    19: {-1: _L26, -2: span("36pq", 0, 2), -3: _U35, -4: _U26},
    23: {-1: _L26, -2: _L26, -3: span("36pq", 0, 3), -4: _U35},
    25: {-1: _L26, -2: span("36pq", 0, 2), -3: _U26, -4: _U26},
    29: {-1: _L26, -2: _L26, -3: span("36pq", 0, 1), -4: _U26},
    31: {-1: _L26, -2: _L26, -3: _U35, -4: _U26},
    37: {-1: _L26, -2: span("36pq", 0, 3), -3: _U35, -4: _U26},
    41: {-1: _L26, -2: _L26, -3: _L26, -4: _U35},
}
_T10_NOTES = {
    (25, -2): "printed as 36pq, 36pq+1, 36pq+1",
    (29, -2): "printed as 26pq-1, 26pq-1",
}


def _table_10():
    rows = []
    for r, cells in _T10.items():
        for e0, probes in cells.items():
            rows.append(
                TableProbeSpec(
                    table=10,
                    row=f"pq={r} mod 42,e0={e0}",
                    family="237pq",
                    residues=(r,),
                    modulus=42,
                    e0=e0,
                    probes=probes,
                    claims_half=True,
                    threshold=type_a_237,
                    threshold_text="p > 6 and q(7p-42) > 42p+4",
                    note=_T10_NOTES.get((r, e0), ""),
                )
            )
    return rows


def _table_11():
    cells = [
        [span("39pq", 0, 2), span("63pq-42p'q", -1, 0)],
        [span("63pq-42pq'", -1, 0), span("63pq-42pq'", -1, 0)],
    ]
    A = (type_a_237, "p > 6 and q(7p-42) > 42p+4")
    thr = [
        [A, (_table_11_green, "p > 42 and q(p-42) > 42p")],
        [(_swap(_table_11_green), "q > 42 and p(q-42) > 42q")] * 2,
    ]
    rows = []
    for i, q_iv in enumerate(HALVES):
        for j, p_iv in enumerate(HALVES):
            t, text = thr[i][j]
            rows.append(
                TableProbeSpec(
                    table=11,
                    row=f"q'/q in {_label(q_iv)},p'/p in {_label(p_iv)}",
                    family="237pq",
                    residues=(1,),
                    modulus=42,
                    e0=-2,
                    p_ratio=p_iv,
                    q_ratio=q_iv,
                    probes=cells[i][j],
                    claims_half=True,
                    threshold=t,
                    threshold_text=text,
                )
            )
    return rows


# ---------------------------------------------------------------- table 12

_T12_HALF = {(1, "c!=1,12", -2): ("1287p-858p'",)}
_T12_NOTES = {
    (1, "c!=1,12", -2): "two separate identities as printed; only 1287p-858p' is claimed below N0/2",
}


def _p_at_least_6(p, q):
    return p >= 6


_C_CLASSES = {"c=1": ((1,), ()), "c=12": ((12,), ()), "c!=1,12": ((), (1, 12))}
_T12_KEY = {
    # (a, c class): (Δ(781p-1), Δ(781p+1))
    (1, "c=1"): ("2-|e0|", "|e0|-1"),
    (1, "c=12"): ("3-|e0|", "|e0|-2"),
    (1, "c!=1,12"): ("2-|e0|", "|e0|-2"),
    (2, "c=1"): ("3-|e0|", "|e0|-2"),
    (2, "c=12"): ("4-|e0|", "|e0|-3"),
    (2, "c!=1,12"): ("3-|e0|", "|e0|-3"),
}
_L781 = span("781p", -1, 0)
_U781 = span("781p", 0, 1)
_T12 = {
    (1, "c=1"): {-1: _L781, -2: _U781, -3: _U781},
    (1, "c=12"): {-1: _L781, -2: _L781, -3: _U781},
    (1, "c!=1,12"): {
        -1: _L781,
        -2: (("1287p-858p'", "1"), ("2387p-858p'", "3-|e0|")),
        -3: span("1573p-858p'", -1, 0),
    },
    (2, "c=1"): {-1: _L781, -2: _L781, -3: _U781},
    (2, "c=12"): {-1: _L781, -2: _L781, -3: _L781},
    (2, "c!=1,12"): {-1: _L781, -2: _L781},
}


def _c_filter(cls):
    yes, no = _C_CLASSES[cls]
    return ((("c", yes),) if yes else ()), ((("c", no),) if no else ())


def _table_12():
    rows = []
    for (a, cls), (minus, plus) in _T12_KEY.items():
        yes, no = _c_filter(cls)
        rows.append(
            TableProbeSpec(
                table=12,
                row=f"key:a={a},{cls}",
                family="2_3_11_13_p",
                letters=(("a", (a,)),) + yes,
                letters_not=no,
                probes=(("781p-1", minus), ("781p", "1"), ("781p+1", plus)),
            )
        )
    for (a, cls), cells in _T12.items():
        yes, no = _c_filter(cls)
        for e0, probes in cells.items():
            rows.append(
                TableProbeSpec(
                    table=12,
                    row=f"a={a},{cls},e0={e0}",
                    family="2_3_11_13_p",
                    e0=e0,
                    letters=(("a", (a,)),) + yes,
                    letters_not=no,
                    probes=probes,
                    claims_half=True,
                    half_exprs=_T12_HALF.get((a, cls, e0)),
                    threshold=_p_at_least_6,
                    threshold_text="p >= 6",
                    note=_T12_NOTES.get((a, cls, e0), ""),
                )
            )
    return rows


def build_catalog() -> tuple[TableProbeSpec, ...]:
    return tuple(
        _table_1() + _table_2() + _table_3() + _table_4() + _table_5() + _table_6()
        + _table_7() + _table_8() + _table_9() + _table_10() + _table_11() + _table_12()
    )


CATALOG = build_catalog()
TABLE_IDS = tuple(sorted({s.table for s in CATALOG}))


def rows_of(table: int) -> tuple[TableProbeSpec, ...]:
    return tuple(s for s in CATALOG if s.table == table)
