"""Divisors supported on the grid F_0, F_1, F_2 (x_j = 0) and G_0, G_1, G_2 (y_k = 0).

On the quotient each F_j meets each G_k transversally in one point and
F_j.F_k = G_j.G_k = 0, so a divisor's self-intersection only depends on its
two coefficient sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .action import InvariantTensor, homogenize
from .errors import SumMismatch


@dataclass(frozen=True)
class GridDivisor:
    f: tuple[int, int, int]
    g: tuple[int, int, int]

    def __post_init__(self):
        f, g = tuple(self.f), tuple(self.g)
        if len(f) != 3 or len(g) != 3:
            raise ValueError("a grid divisor has three F and three G coefficients")
        if min(f + g) < 0:
            raise ValueError(f"grid divisor must be effective, got f={f} g={g}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    @classmethod
    def zero(cls) -> GridDivisor:
        return cls((0, 0, 0), (0, 0, 0))

    @property
    def slots(self) -> tuple[int, ...]:
        return self.f + self.g

    @property
    def sums(self) -> tuple[int, int]:
        return (sum(self.f), sum(self.g))

    def __sub__(self, other: GridDivisor) -> GridDivisor:
        return GridDivisor(
            tuple(x - y for x, y in zip(self.f, other.f)),
            tuple(x - y for x, y in zip(self.g, other.g)),
        )

    def is_zero(self) -> bool:
        return not any(self.slots)

    def __str__(self) -> str:
        terms = []
        for name, coeffs in (("F", self.f), ("G", self.g)):
            for i, c in enumerate(coeffs):
                if c:
                    terms.append(f"{c if c > 1 else ''}{name}{i}")
        return "+".join(terms) or "0"


def tensor_divisor(t: InvariantTensor) -> GridDivisor:
    return GridDivisor(homogenize(t.first), homogenize(t.second))


def self_intersection(d: GridDivisor) -> int:
    sf, sg = d.sums
    return 2 * sf * sg


def intersection(d: GridDivisor, e: GridDivisor) -> int:
    """Bilinear grid pairing: F_j.G_k = 1, all other products zero."""
    return sum(d.f) * sum(e.g) + sum(d.g) * sum(e.f)


@dataclass(frozen=True)
class CanonicalNet:
    generators: tuple[GridDivisor, GridDivisor, GridDivisor]
    fixed: GridDivisor
    mobile: tuple[GridDivisor, GridDivisor, GridDivisor]


def split_net(divs: Sequence[GridDivisor]) -> CanonicalNet:
    """Split three divisors of one linear system into fixed part and mobile part."""
    divs = tuple(divs)
    if len(divs) != 3:
        raise ValueError(f"a net needs exactly three generators, got {len(divs)}")
    sums = {d.sums for d in divs}
    if len(sums) != 1:
        raise SumMismatch(f"generators have different coefficient sums {sorted(sums)}")
    fixed = GridDivisor(
        tuple(min(d.f[i] for d in divs) for i in range(3)),
        tuple(min(d.g[i] for d in divs) for i in range(3)),
    )
    return CanonicalNet(divs, fixed, tuple(d - fixed for d in divs))


class BasePoint(NamedTuple):
    i: int
    j: int
    local: tuple[tuple[int, int], ...]

    def label(self) -> str:
        return f"p{self.i}{self.j}"


def local_pairs_at(mobile: Sequence[GridDivisor], i: int, j: int) -> tuple[tuple[int, int], ...]:
    return tuple((d.f[i], d.g[j]) for d in mobile)


def base_points(net: CanonicalNet) -> list[BasePoint]:
    """Grid points F_i n G_j where every mobile generator vanishes."""
    out = []
    for i in range(3):
        for j in range(3):
            pairs = local_pairs_at(net.mobile, i, j)
            if all(pair != (0, 0) for pair in pairs):
                out.append(BasePoint(i, j, pairs))
    return out
