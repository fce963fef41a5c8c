"""Linear algebra over the two-element field with Python ints as bit vectors.

A vector over F_2^n is an int whose bit i is coordinate i.  A linear map is
the list of images of the basis vectors.
"""

from __future__ import annotations

from typing import Iterable, Sequence


def apply(images: Sequence[int], v: int) -> int:
    out = 0
    i = 0
    while v:
        if v & 1:
            out ^= images[i]
        v >>= 1
        i += 1
    return out


class Echelon:
    """Incrementally built row-echelon basis keyed by leading bit.

    Every inserted vector carries a tag (an int, XORed along with it) so
    that a reduction also reports which inserted vectors it used.
    """

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        while v:
            lead = v.bit_length() - 1
            row = self.rows.get(lead)
            if row is None:
                break
            v ^= row[0]
            tag ^= row[1]
        return v, tag

    def insert(self, v: int, tag: int = 0) -> bool:
        """Add v; False if it was already in the span."""
        v, tag = self.reduce(v, tag)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = (v, tag)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank(vectors: Iterable[int]) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return len(e)


def kernel(images: Sequence[int]) -> list[int]:
    """Basis of {v : apply(images, v) = 0}, as bit vectors over the domain."""
    e = Echelon()
    out = []
    for i, img in enumerate(images):
        rest, combo = e.reduce(img, 1 << i)
        if rest:
            e.rows[rest.bit_length() - 1] = (rest, combo)
        else:
            out.append(combo)
    return out


def basis(vectors: Iterable[int]) -> list[int]:
    """A basis of the span, chosen among the given vectors."""
    e = Echelon()
    return [v for v in vectors if e.insert(v)]
