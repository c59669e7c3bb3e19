"""The Z_p^2 action on the Fermat curve x0^p + x1^p + x2^p = 0.

``(a, b)`` acts by ``(x0 : x1 : x2) -> (x0 : z^a x1 : z^b x2)`` with ``z`` a
primitive p-th root of unity. On the second factor of ``F x F`` the same
group acts through a twist ``A`` in Aut(Z_p^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

from .arith import AutoMatrix, GroupVec, check_prime, mat_apply
from .errors import FormulaMismatch


def genus(p: int) -> int:
    return (p - 1) * (p - 2) // 2


@dataclass(frozen=True, order=True)
class FormIndex:
    """Index (j, k) of the holomorphic 1-form u^j v^(k+1-p) du, j + k <= p - 3."""

    j: int
    k: int
    p: int = field(compare=False)

    def __post_init__(self):
        if self.j < 0 or self.k < 0 or self.j + self.k > self.p - 3:
            raise ValueError(f"({self.j},{self.k}) is not a 1-form index for p={self.p}")

    @property
    def character(self) -> tuple[int, int]:
        # k - (p - 1) == k + 1 mod p
        return (self.j + 1, self.k + 1)


class InvariantTensor(NamedTuple):
    first: FormIndex
    second: FormIndex

    @property
    def indices(self) -> tuple[int, int, int, int]:
        return (self.first.j, self.first.k, self.second.j, self.second.k)

    def label(self) -> str:
        return "".join(str(i) for i in self.indices)


@dataclass(frozen=True)
class SurfaceSpec:
    p: int
    A: AutoMatrix

    def __post_init__(self):
        check_prime(self.p)
        if self.A.p != self.p:
            raise ValueError(f"matrix is over Z_{self.A.p}, surface over Z_{self.p}")


@dataclass(frozen=True)
class SurfaceReport:
    spec: SurfaceSpec
    free: bool
    genus: int
    tensors: tuple[InvariantTensor, ...]
    chi: Optional[int] = None
    pg: Optional[int] = None
    q: Optional[int] = None
    ksq: Optional[int] = None


class OrbitInfo(NamedTuple):
    line: int  # index c of the coordinate line x_c = 0
    generator: tuple[int, int]
    length: int


# --- stabilizers -----------------------------------------------------------

def _weights(a: int, b: int) -> tuple[int, int, int]:
    return (0, a, b)


@lru_cache(maxsize=None)
def stabilizer_set(p: int) -> frozenset[tuple[int, int]]:
    """Nonzero group elements fixing some point of F, as ``(a, b)`` tuples.

    A point with all coordinates nonzero is fixed only by the identity; a
    point on x_c = 0 is fixed iff its two surviving coordinates are scaled
    by the same root of unity.
    """
    p = check_prime(p)
    out = set()
    for a in range(p):
        for b in range(p):
            if (a, b) == (0, 0):
                continue
            w = _weights(a, b)
            for c in range(3):
                u, v = (i for i in range(3) if i != c)
                if w[u] == w[v]:
                    out.add((a, b))
                    break
    return frozenset(out)


def fixed_point_orbits(p: int) -> list[OrbitInfo]:
    """One record per coordinate line: stabilizer generator and orbit length.

    F meets x_c = 0 in p points. The stabilizer of each is the order-p
    subgroup scaling x_c alone, so the p^2 group elements move it in an
    orbit of length p.
    """
    p = check_prime(p)
    out = []
    for c in (1, 2, 0):
        # x_c -> z x_c with the other two coordinates fixed, normalised to x0 = 1
        w = [0, 0, 0]
        w[c] = 1
        gen = ((w[1] - w[0]) % p, (w[2] - w[0]) % p)
        stab_order = sum(
            1 for a in range(p) for b in range(p)
            if _fixes_line(p, c, a, b)
        )
        out.append(OrbitInfo(c, gen, p * p // stab_order))
    return out


def _fixes_line(p: int, c: int, a: int, b: int) -> bool:
    w = _weights(a, b)
    u, v = (i for i in range(3) if i != c)
    return w[u] == w[v]


def is_free(spec: SurfaceSpec) -> bool:
    """True iff no stabilizing element is mapped by A to a stabilizing element."""
    sigma = stabilizer_set(spec.p)
    p = spec.p
    r00, r01, r10, r11 = spec.A.entries
    for a, b in sigma:
        if ((r00 * a + r01 * b) % p, (r10 * a + r11 * b) % p) in sigma:
            return False
    return True


# --- forms and invariant tensors -------------------------------------------

def form_indices(p: int) -> list[FormIndex]:
    p = check_prime(p)
    return [FormIndex(j, k, p) for j in range(p - 2) for k in range(p - 2 - j)]


def _valid_character(p: int, c1: int, c2: int) -> bool:
    return 1 <= c1 <= p - 2 and 1 <= c2 <= p - 2 and c1 + c2 <= p - 1


def invariant_tensors(spec: SurfaceSpec) -> list[InvariantTensor]:
    """All invariant w_jk (x) w_lm, sorted by (j, k, l, m).

    Invariance for every (a, b) means chi1 + A^T chi2 == 0 mod p, so each
    second factor determines the only possible first factor.
    """
    p = spec.p
    r00, r01, r10, r11 = spec.A.entries
    out = []
    for second in form_indices(p):
        c1, c2 = second.character
        t1 = -(r00 * c1 + r10 * c2) % p
        t2 = -(r01 * c1 + r11 * c2) % p
        if _valid_character(p, t1, t2):
            out.append(InvariantTensor(FormIndex(t1 - 1, t2 - 1, p), second))
    out.sort(key=lambda t: t.indices)
    return out


def is_invariant_bruteforce(spec: SurfaceSpec, first: FormIndex, second: FormIndex) -> bool:
    """Check the invariance congruence directly over all p^2 group elements."""
    p = spec.p
    j1, k1 = first.j + 1, first.k - (p - 1)
    j2, k2 = second.j + 1, second.k - (p - 1)
    for a in range(p):
        for b in range(p):
            img = mat_apply(spec.A, GroupVec(p, a, b))
            if (a * j1 + b * k1 + img.a * j2 + img.b * k2) % p:
                return False
    return True


def surface_report(spec: SurfaceSpec) -> SurfaceReport:
    g = genus(spec.p)
    free = is_free(spec)
    tensors = tuple(invariant_tensors(spec))
    if not free:
        return SurfaceReport(spec, False, g, tensors)
    chi, rem = divmod((g - 1) ** 2, spec.p ** 2)
    if rem or chi - 1 != len(tensors):
        raise FormulaMismatch(
            f"(g-1)^2/p^2 - 1 = {(g - 1) ** 2}/{spec.p ** 2} - 1 but found "
            f"{len(tensors)} invariant tensors for A={spec.A}"
        )
    return SurfaceReport(spec, True, g, tensors, chi=chi, pg=chi - 1, q=0, ksq=8 * chi)


def homogenize(f: FormIndex) -> tuple[int, int, int]:
    """Exponents of the degree p-3 monomial x0^(p-3-j-k) x1^j x2^k for w_jk."""
    return (f.p - 3 - f.j - f.k, f.j, f.k)
