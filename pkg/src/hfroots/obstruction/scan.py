"""Exhaustive sweeps over Seifert tuples with bounded product."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from math import gcd
from typing import Iterator

import numpy as np

from hfroots._kernels import fits_int64, u_order_scan
from hfroots.errors import CapExceeded, InvalidInput
from hfroots.obstruction.bounds import five_fiber_case, kcond_max_k, probe_lower_bound
from hfroots.seifert import SeifertParams, n0, solve_diophantine

MAX_SCAN_PRODUCT = 10**6

FIELDS = ("params", "e0", "pprime", "N0", "u_order", "kcond_max_k", "probe_bound", "case", "verdict")


def tuples(cap: int, l: int) -> Iterator[tuple[int, ...]]:
    """Pairwise coprime p_1 < ... < p_l, each >= 2, with product <= cap, in lexicographic order."""

    def extend(prefix: tuple[int, ...], prod: int) -> Iterator[tuple[int, ...]]:
        left = l - len(prefix)
        if left == 0:
            yield prefix
            return
        start = prefix[-1] + 1 if prefix else 2
        x = start
        # the remaining entries are all > x, so prod * x^left bounds the product
        while prod * x**left <= cap:
            if all(gcd(x, y) == 1 for y in prefix):
                yield from extend(prefix + (x,), prod * x)
            x += 1

    yield from extend((), 1)


def scan_record(p: tuple[int, ...]) -> dict:
    params = SeifertParams.of(*p)
    sol = solve_diophantine(params)
    N0 = n0(params)
    if not fits_int64(params.p, sol.pprime, sol.e0abs, N0):
        raise CapExceeded(f"{params}: too large for the 64-bit walk")
    order = 0
    if N0 > 0:
        order = int(
            u_order_scan(np.array(p, dtype=np.int64), np.array(sol.pprime, dtype=np.int64), sol.e0abs, N0, True)
        )
    k = kcond_max_k(params)
    probe = probe_lower_bound(params)
    ok = order > k and order >= probe
    return {
        "params": list(p),
        "e0": sol.e0,
        "pprime": list(sol.pprime),
        "N0": N0,
        "u_order": order,
        "kcond_max_k": k,
        "probe_bound": probe,
        "case": five_fiber_case(params) if len(p) == 5 else None,
        "verdict": "ok" if ok else "FAIL",
    }


def scan_families(cap: int, l: int, threads: int = 1) -> list[dict]:
    """One record per tuple, ordered as ``tuples`` yields them whatever ``threads`` is."""
    if l < 3:
        raise InvalidInput("need at least 3 fibers")
    if cap > MAX_SCAN_PRODUCT:
        raise CapExceeded(f"product cap {cap} exceeds the scan budget {MAX_SCAN_PRODUCT}")
    if threads < 1:
        raise InvalidInput("threads must be positive")
    todo = list(tuples(cap, l))
    if threads == 1:
        return [scan_record(p) for p in todo]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(scan_record, todo))


def dumps(record: dict) -> str:
    """One JSON line with the fixed field order."""
    return json.dumps({k: record[k] for k in FIELDS}, separators=(",", ":"))
