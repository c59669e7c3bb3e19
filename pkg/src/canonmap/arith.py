"""Exact arithmetic in Z_p: group vectors, 2x2 matrices and GL(2, p).

Everything is kept as canonical residues in ``[0, p-1]``; roots of unity
never appear, characters live in exponent space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .errors import ModulusMismatch, SingularMatrix

MAX_PRIME = 100


def check_prime(p: int) -> int:
    """Return ``p`` if it is a usable prime (5 <= p < 100), else raise."""
    p = int(p)
    if p < 5:
        raise ValueError(f"p must be a prime >= 5, got {p}")
    if p >= MAX_PRIME:
        raise ValueError(f"p must be below {MAX_PRIME}, got {p}")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"p must be prime, got {p} = {d} * {p // d}")
        d += 1
    return p


@dataclass(frozen=True, order=True)
class GroupVec:
    """An element (a, b) of Z_p^2."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)

    def __add__(self, other: GroupVec) -> GroupVec:
        _same_modulus(self.p, other.p)
        return GroupVec(self.p, self.a + other.a, self.b + other.b)

    def __neg__(self) -> GroupVec:
        return GroupVec(self.p, -self.a, -self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def astuple(self) -> tuple[int, int]:
        return (self.a, self.b)


@dataclass(frozen=True, order=True)
class AutoMatrix:
    """An invertible 2x2 matrix over Z_p, entries row-major ``(r00, r01, r10, r11)``."""

    p: int
    entries: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.entries) != 4:
            raise ValueError("a 2x2 matrix needs exactly 4 entries")
        ent = tuple(int(x) % self.p for x in self.entries)
        object.__setattr__(self, "entries", ent)
        if self.det() == 0:
            raise SingularMatrix(f"matrix {self.to_text()} is singular mod {self.p}")

    @classmethod
    def from_rows(cls, p: int, rows) -> AutoMatrix:
        (r00, r01), (r10, r11) = rows
        return cls(p, (r00, r01, r10, r11))

    @classmethod
    def identity(cls, p: int) -> AutoMatrix:
        return cls(p, (1, 0, 0, 1))

    @classmethod
    def parse(cls, p: int, text: str) -> AutoMatrix:
        """Parse the ``"r00,r01;r10,r11"`` text format."""
        rows = [r for r in text.strip().split(";")]
        if len(rows) != 2:
            raise ValueError(f"expected two ';'-separated rows in {text!r}")
        ent = []
        for row in rows:
            cells = row.split(",")
            if len(cells) != 2:
                raise ValueError(f"expected two ','-separated entries in row {row!r}")
            ent.extend(int(c.strip()) for c in cells)
        return cls(p, tuple(ent))

    def to_text(self) -> str:
        r00, r01, r10, r11 = self.entries
        return f"{r00},{r01};{r10},{r11}"

    def rows(self) -> list[list[int]]:
        r00, r01, r10, r11 = self.entries
        return [[r00, r01], [r10, r11]]

    def det(self) -> int:
        r00, r01, r10, r11 = self.entries
        return (r00 * r11 - r01 * r10) % self.p

    def transpose(self) -> AutoMatrix:
        r00, r01, r10, r11 = self.entries
        return AutoMatrix(self.p, (r00, r10, r01, r11))

    def __matmul__(self, other):
        if isinstance(other, AutoMatrix):
            return mat_mul(self, other)
        if isinstance(other, GroupVec):
            return mat_apply(self, other)
        return NotImplemented

    def __str__(self) -> str:
        return self.to_text()


def _same_modulus(p: int, q: int) -> None:
    if p != q:
        raise ModulusMismatch(f"modulus mismatch: {p} != {q}")


def mat_mul(A: AutoMatrix, B: AutoMatrix) -> AutoMatrix:
    _same_modulus(A.p, B.p)
    a00, a01, a10, a11 = A.entries
    b00, b01, b10, b11 = B.entries
    return AutoMatrix(A.p, (
        a00 * b00 + a01 * b10,
        a00 * b01 + a01 * b11,
        a10 * b00 + a11 * b10,
        a10 * b01 + a11 * b11,
    ))


def mat_apply(A: AutoMatrix, v: GroupVec) -> GroupVec:
    """Return ``A (a, b)^T`` mod p."""
    _same_modulus(A.p, v.p)
    r00, r01, r10, r11 = A.entries
    return GroupVec(A.p, r00 * v.a + r01 * v.b, r10 * v.a + r11 * v.b)


def mat_inverse(A: AutoMatrix) -> AutoMatrix:
    p = A.p
    d = A.det()
    if d == 0:
        raise SingularMatrix(f"matrix {A.to_text()} is singular mod {p}")
    di = pow(d, -1, p)
    r00, r01, r10, r11 = A.entries
    return AutoMatrix(p, (di * r11, -di * r01, -di * r10, di * r00))


def iter_gl2(p: int) -> Iterator[AutoMatrix]:
    p = check_prime(p)
    for ent in itertools.product(range(p), repeat=4):
        if (ent[0] * ent[3] - ent[1] * ent[2]) % p:
            yield AutoMatrix(p, ent)


def enumerate_gl2(p: int) -> list[AutoMatrix]:
    """All invertible 2x2 matrices mod p, in lexicographic order of entries."""
    return list(iter_gl2(p))


def gl2_order(p: int) -> int:
    return (p * p - 1) * (p * p - p)


def symmetry_generators(p: int) -> tuple[AutoMatrix, AutoMatrix]:
    # s swaps x1 <-> x2, t swaps x0 <-> x1 (re-normalised so x0 is untouched)
    s = AutoMatrix(p, (0, 1, 1, 0))
    t = AutoMatrix(p, (-1, 0, -1, 1))
    return s, t


def symmetry_subgroup(p: int) -> frozenset[AutoMatrix]:
    """The copy of S_3 in GL(2, p) induced by permuting Fermat coordinates."""
    p = check_prime(p)
    group = {AutoMatrix.identity(p)}
    frontier = list(group)
    gens = symmetry_generators(p)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = mat_mul(g, s)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(group)
