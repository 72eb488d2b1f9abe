"""Exact set arithmetic for sums of dilates in Z/pZ and in Z.

Residue sets carry both a sorted element tuple and a bit vector (a Python
int, bit ``i`` set iff ``i`` is in the set).  Sumsets are computed with one
cyclic shift-OR pass per element of ``A``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import CompositeModulus, EmptyInput, ParseError

__all__ = [
    "ResidueSet",
    "IntegerSet",
    "is_prime",
    "make_residue_set",
    "make_integer_set",
    "dilate",
    "sum_of_dilates",
    "integer_sum_of_dilates",
    "cauchy_davenport_bound",
    "canonical_form",
    "affine_image",
    "parse_set_literal",
    "format_set_literal",
    "mask_from_elements",
    "elements_from_mask",
    "rotate_left",
    "sumset_mask",
]


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


# -- bit vector helpers -----------------------------------------------------

def mask_from_elements(elements: Iterable[int]) -> int:
    idx = np.fromiter(elements, dtype=np.int64)
    if idx.size == 0:
        return 0
    bits = np.zeros(int(idx.max()) + 1, dtype=np.uint8)
    bits[idx] = 1
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def elements_from_mask(mask: int) -> tuple[int, ...]:
    # byte-wise unpack; peeling one bit at a time is quadratic on long masks
    if mask == 0:
        return ()
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return tuple(np.flatnonzero(np.unpackbits(raw, bitorder="little")).tolist())


def rotate_left(mask: int, shift: int, p: int) -> int:
    """Cyclic left rotation of a ``p``-bit vector (i.e. translation by ``shift`` mod p)."""
    shift %= p
    if shift == 0:
        return mask
    full = (1 << p) - 1
    return ((mask << shift) | (mask >> (p - shift))) & full


def dilate_mask(elements: Iterable[int], t: int, p: int) -> int:
    t %= p
    mask = 0
    for a in elements:
        mask |= 1 << (t * a % p)
    return mask


def sumset_mask(elements: Iterable[int], t: int, p: int) -> int:
    """Bit vector of ``A + t.A`` mod p, given the elements of ``A``."""
    elements = tuple(elements)
    dilated = dilate_mask(elements, t, p)
    out = 0
    for a in elements:
        out |= rotate_left(dilated, a, p)
    return out


# -- types ------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z/pZ with p prime.  Use :func:`make_residue_set` to build one
    from arbitrary integers; the constructor itself expects reduced, sorted,
    distinct elements and validates them."""

    modulus: int
    elements: tuple[int, ...]
    bits: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = self.modulus
        if not isinstance(p, int) or p < 2 or not is_prime(p):
            raise CompositeModulus(f"modulus {p} is not prime")
        els = tuple(self.elements)
        if any(not 0 <= e < p for e in els):
            raise ValueError(f"elements must lie in [0, {p})")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError("elements must be strictly increasing")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "bits", mask_from_elements(els))

    @classmethod
    def from_mask(cls, p: int, mask: int) -> "ResidueSet":
        return cls(p, elements_from_mask(mask))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return (self.bits >> (x % self.modulus)) & 1 == 1

    @property
    def density(self) -> float:
        """c = |A| / p."""
        return len(self.elements) / self.modulus

    def translate(self, v: int) -> "ResidueSet":
        return ResidueSet.from_mask(self.modulus, rotate_left(self.bits, v, self.modulus))

    def __str__(self) -> str:
        return format_set_literal(self)


@dataclass(frozen=True)
class IntegerSet:
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(self.elements)
        if any(b <= a for a, b in zip(els, els[1:])):
            raise ValueError("elements must be strictly increasing")
        object.__setattr__(self, "elements", els)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def translate(self, v: int) -> "IntegerSet":
        return IntegerSet(tuple(e + v for e in self.elements))

    def __str__(self) -> str:
        return format_set_literal(self)


def make_residue_set(p: int, elems: Iterable[int]) -> ResidueSet:
    if p < 2 or not is_prime(p):
        raise CompositeModulus(f"modulus {p} is not prime")
    return ResidueSet(p, tuple(sorted({int(e) % p for e in elems})))


def make_integer_set(elems: Iterable[int]) -> IntegerSet:
    return IntegerSet(tuple(sorted({int(e) for e in elems})))


# -- operations -------------------------------------------------------------

def dilate(A: ResidueSet, t: int) -> ResidueSet:
    return ResidueSet.from_mask(A.modulus, dilate_mask(A.elements, t, A.modulus))


def sum_of_dilates(A: ResidueSet, t: int) -> ResidueSet:
    """S = A + t.A = {a + t a' mod p : a, a' in A}."""
    if not A.elements:
        raise EmptyInput("sum of dilates needs a non-empty set")
    return ResidueSet.from_mask(A.modulus, sumset_mask(A.elements, t, A.modulus))


def integer_sum_of_dilates(A: IntegerSet, t: int) -> IntegerSet:
    if not A.elements:
        raise EmptyInput("sum of dilates needs a non-empty set")
    lo = A.elements[0]
    dilated = [t * a for a in A.elements]
    dlo = min(dilated)
    dmask = mask_from_elements(d - dlo for d in dilated)
    out = 0
    for a in A.elements:
        out |= dmask << (a - lo)
    offset = lo + dlo
    return IntegerSet(tuple(e + offset for e in elements_from_mask(out)))


def cauchy_davenport_bound(size_a: int, size_b: int, p: int) -> int:
    if size_a < 1 or size_b < 1:
        raise EmptyInput("Cauchy-Davenport needs non-empty sets")
    return min(size_a + size_b - 1, p)


def affine_image(A: ResidueSet, u: int, v: int) -> ResidueSet:
    """{u a + v : a in A}."""
    p = A.modulus
    return make_residue_set(p, (u * a + v for a in A.elements))


def canonical_form(A: ResidueSet) -> ResidueSet:
    """Lexicographically smallest element list over all images u A + v, u a unit.

    Enumerates all p(p-1) affine maps.  Only translations that send some
    element of uA to 0 can win, which keeps the inner loop at |A| shifts.
    """
    p, els = A.modulus, A.elements
    if len(els) <= 1:
        return ResidueSet(p, (0,) * len(els))
    best: tuple[int, ...] | None = None
    for u in range(1, p):
        scaled = [u * a % p for a in els]
        for s in scaled:
            cand = tuple(sorted((x - s) % p for x in scaled))
            if best is None or cand < best:
                best = cand
    return ResidueSet(p, best)


# -- set literal text format -------------------------------------------------

_RESIDUE_RE = re.compile(r"^\s*p\s*=\s*(-?\d+)\s*;\s*\{(.*)\}\s*$", re.S)
_INTEGER_RE = re.compile(r"^\s*\{(.*)\}\s*$", re.S)


def _parse_elements(body: str) -> list[int]:
    body = body.strip()
    if not body:
        return []
    try:
        return [int(tok) for tok in body.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad element list {body!r}") from exc


def parse_set_literal(text: str) -> ResidueSet | IntegerSet:
    """Parse ``p=11;{0,1,2}`` (residue set) or ``{0,1,3}`` (integer set)."""
    m = _RESIDUE_RE.match(text)
    if m:
        return make_residue_set(int(m.group(1)), _parse_elements(m.group(2)))
    m = _INTEGER_RE.match(text)
    if m:
        return make_integer_set(_parse_elements(m.group(1)))
    raise ParseError(f"cannot parse set literal {text!r}")


def format_set_literal(A: ResidueSet | IntegerSet) -> str:
    body = "{" + ",".join(map(str, A.elements)) + "}"
    if isinstance(A, ResidueSet):
        return f"p={A.modulus};{body}"
    return body
