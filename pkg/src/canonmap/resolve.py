"""Resolution of base points of a net by iterated blowups.

Near a base point the three generators are ``a_i H + b_i K`` with H, K smooth
and transversal. Blowing up the point with multiplicity ``m = min(a_i + b_i)``
(the generic member does not cancel lowest-order terms) replaces the
generators by ``a_i H' + b_i K' + (a_i + b_i - m) E``; the only possible new
base points are ``H' n E`` and ``K' n E``. Each blowup lowers the
self-intersection of the mobile part by ``m^2``.

The closed form ``a*b`` for the configuration ``aH, bK, cH + dK`` is kept as a
cross-checked fast path: it only holds under its hypothesis (the
configuration ``3H, 2K, H + K`` costs 5, not 6).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple, Optional, Sequence

from .errors import DegenerateNet, DepthExceeded, HypothesisFailed
from .linsys import BasePoint, CanonicalNet, base_points, self_intersection

Pair = tuple[int, int]


@dataclass(frozen=True)
class LocalPairs:
    pairs: tuple[Pair, Pair, Pair]

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        if len(pairs) != 3:
            raise ValueError(f"need exactly three pairs, got {len(pairs)}")
        if any(a < 0 or b < 0 for a, b in pairs):
            raise ValueError(f"coefficients must be non-negative: {pairs}")
        if min(a for a, _ in pairs) or min(b for _, b in pairs):
            raise ValueError(f"local fixed component present in {pairs}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def parse(cls, text: str) -> LocalPairs:
        """Parse ``"a1,b1 a2,b2 a3,b3"``."""
        chunks = text.split()
        if len(chunks) != 3:
            raise ValueError(f"expected three 'a,b' pairs in {text!r}")
        pairs = []
        for chunk in chunks:
            parts = chunk.split(",")
            if len(parts) != 2:
                raise ValueError(f"bad pair {chunk!r}")
            pairs.append((int(parts[0]), int(parts[1])))
        return cls(tuple(pairs))

    def is_base_point(self) -> bool:
        return all(pair != (0, 0) for pair in self.pairs)

    def to_text(self) -> str:
        return "".join(f"({a},{b})" for a, b in self.pairs)


class Step(NamedTuple):
    depth: int
    pairs: tuple[Pair, Pair, Pair]
    m: int


@dataclass(frozen=True)
class ResolutionTrace:
    steps: tuple[Step, ...]

    @property
    def total_correction(self) -> int:
        return sum(s.m * s.m for s in self.steps)

    def render(self) -> str:
        lines = [
            f"depth={s.depth} pairs=" + "".join(f"({a},{b})" for a, b in s.pairs) + f" m={s.m}"
            for s in self.steps
        ]
        lines.append(f"total={self.total_correction}")
        return "\n".join(lines)


def _disjoint(p1: Pair, p2: Pair) -> bool:
    return not (p1[0] and p2[0]) and not (p1[1] and p2[1])


def local_intersection_bound(L: LocalPairs) -> int:
    """Smallest local intersection number of two generators without a common branch.

    Any two such generators meet at the point with multiplicity
    ``a_i b_j + a_j b_i``, which bounds the sum of squared multiplicities over
    all infinitely near base points, hence also the number of blowups.
    """
    vals = [
        p1[0] * p2[1] + p2[0] * p1[1]
        for p1, p2 in itertools.combinations(L.pairs, 2)
        if _disjoint(p1, p2)
    ]
    return min(vals) if vals else 0


def default_depth_cap(L: LocalPairs) -> int:
    return local_intersection_bound(L) + 1


def resolve_local(L: LocalPairs, max_depth: Optional[int] = None) -> ResolutionTrace:
    """Blow up until no infinitely near point of the origin is a base point."""
    cap = default_depth_cap(L) if max_depth is None else max_depth
    steps: list[Step] = []
    stack = [(0, L.pairs)]
    while stack:
        depth, pairs = stack.pop()
        if any(pair == (0, 0) for pair in pairs):
            continue
        if depth > cap:
            raise DepthExceeded(f"depth {depth} exceeds cap {cap} at pairs {pairs}")
        m = min(a + b for a, b in pairs)
        steps.append(Step(depth, pairs, m))
        e = tuple(a + b - m for a, b in pairs)
        # K' n E pushed first so that H' n E is expanded first (preorder trace)
        stack.append((depth + 1, tuple((b, ei) for (_, b), ei in zip(pairs, e))))
        stack.append((depth + 1, tuple((a, ei) for (a, _), ei in zip(pairs, e))))
    return ResolutionTrace(tuple(steps))


# --- closed form -------------------------------------------------------------

@dataclass(frozen=True)
class LemmaShape:
    """Local configuration ``aH, bK, cH + dK`` with ``b <= a``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("coefficients must be non-negative")
        if self.b > self.a:
            raise ValueError(f"need b <= a, got a={self.a} b={self.b}")

    @property
    def m(self) -> Optional[int]:
        return self.a // self.b if self.b else None

    @property
    def q(self) -> Optional[int]:
        return self.a % self.b if self.b else None

    def pairs(self) -> tuple[Pair, Pair, Pair]:
        return ((self.a, 0), (0, self.b), (self.c, self.d))


def lemma_hypothesis(s: LemmaShape) -> bool:
    if s.d >= s.b:
        return True
    return s.b != 0 and s.c + s.m * s.d >= s.a


def lemma_correction(s: LemmaShape) -> int:
    if not lemma_hypothesis(s):
        raise HypothesisFailed(f"closed form does not apply to {s}")
    return s.a * s.b


def lemma_shape(L: LocalPairs) -> Optional[LemmaShape]:
    """Match the pairs against ``aH, bK, cH + dK``, trying every ordering.

    Prefers a match satisfying the hypothesis; returns None if the pairs do
    not have that shape at all.
    """
    found = []
    for perm in itertools.permutations(L.pairs):
        for swap in (False, True):
            pairs = [(b, a) for a, b in perm] if swap else list(perm)
            (a, b0), (a0, b), (c, d) = pairs
            if b0 == 0 and a0 == 0 and b <= a:
                found.append(LemmaShape(a, b, c, d))
    for s in found:
        if lemma_hypothesis(s):
            return s
    return found[0] if found else None


# --- nets ----------------------------------------------------------------------

class Verdict(str, enum.Enum):
    GENERICALLY_FINITE = "GENERICALLY_FINITE"
    COMPOSED_WITH_PENCIL = "COMPOSED_WITH_PENCIL"


class PointResolution(NamedTuple):
    point: BasePoint
    trace: ResolutionTrace
    shape: Optional[LemmaShape]
    lemma_applies: bool

    @property
    def correction(self) -> int:
        return self.trace.total_correction


@dataclass(frozen=True)
class NetResolution:
    m_squared: int
    points: tuple[PointResolution, ...]
    m_hat_squared: int
    verdict: Verdict
    degree: Optional[int]
    relation: Optional[tuple[int, int, int]]

    @property
    def total_correction(self) -> int:
        return sum(pt.correction for pt in self.points)

    def verdict_key(self):
        """``degree`` for finite maps, ``"pencil"`` otherwise."""
        return self.degree if self.verdict is Verdict.GENERICALLY_FINITE else "pencil"


def resolve_point(bp: BasePoint, max_depth: Optional[int] = None) -> PointResolution:
    L = LocalPairs(bp.local)
    trace = resolve_local(L, max_depth=max_depth)
    shape = lemma_shape(L)
    applies = shape is not None and lemma_hypothesis(shape)
    if applies and lemma_correction(shape) != trace.total_correction:
        raise AssertionError(
            f"closed form {lemma_correction(shape)} disagrees with recursion "
            f"{trace.total_correction} at {bp.label()} {L.to_text()}"
        )
    return PointResolution(bp, trace, shape, applies)


def resolve_net(net: CanonicalNet, max_depth: Optional[int] = None) -> NetResolution:
    mobile = net.mobile
    if len(set(mobile)) < 3 or all(d.is_zero() for d in mobile):
        raise DegenerateNet(f"mobile generators {[str(d) for d in mobile]} do not span a net")
    m2 = self_intersection(mobile[0])
    points = tuple(resolve_point(bp, max_depth) for bp in base_points(net))
    m_hat2 = m2 - sum(pt.correction for pt in points)
    if m_hat2 < 0:
        raise AssertionError(f"negative self-intersection {m_hat2} after resolution")
    if m_hat2 > 0:
        return NetResolution(m2, points, m_hat2, Verdict.GENERICALLY_FINITE, m_hat2, None)
    return NetResolution(m2, points, 0, Verdict.COMPOSED_WITH_PENCIL, None, detect_relation(net))


def detect_relation(net_or_divs) -> Optional[tuple[int, int, int]]:
    """Primitive integer relation between the generators' exponent vectors.

    A vector ``l`` with ``sum(l) == 0`` and ``sum(l_i * v_i) == 0`` gives the
    monomial identity ``z0^l0 z1^l1 z2^l2 == 1`` on the image. Sign is
    normalised so the first nonzero entry is positive.
    """
    from sympy import Matrix

    gens = net_or_divs.generators if isinstance(net_or_divs, CanonicalNet) else tuple(net_or_divs)
    rows = [[d.slots[s] for d in gens] for s in range(6)]
    rows.append([1] * len(gens))
    kernel = Matrix(rows).nullspace()
    if not kernel:
        return None
    vec = [Fraction(int(x.p), int(x.q)) for x in kernel[0]]
    den = lcm(*(v.denominator for v in vec))
    ints = [int(v * den) for v in vec]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def relation_equation(rel: Sequence[int]) -> str:
    """Render ``z0^l0 z1^l1 z2^l2 = 1`` with exponents cleared to both sides."""
    def side(terms):
        parts = [f"z{i}" + (f"^{e}" if e > 1 else "") for i, e in terms]
        return "*".join(parts) or "1"
    lhs = [(i, e) for i, e in enumerate(rel) if e > 0]
    rhs = [(i, -e) for i, e in enumerate(rel) if e < 0]
    return f"{side(lhs)} = {side(rhs)}"


def beauville_bound(pg: int, q: int) -> Fraction:
    """Upper bound on the degree of a canonical map with two-dimensional image."""
    return 9 + Fraction(27 - 9 * q, pg - 2)
