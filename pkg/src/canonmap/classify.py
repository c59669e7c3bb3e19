"""Exhaustive classification of free twisted diagonal actions up to equivalence.

Two twists give isomorphic quotients when they differ by a coordinate
permutation of either Fermat factor (``A -> n2 A n1`` with n1, n2 in the
symmetry subgroup) or by exchanging the two factors (``A -> A^-1``).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .action import SurfaceReport, SurfaceSpec, is_free, surface_report
from .arith import AutoMatrix, check_prime, iter_gl2, mat_inverse, mat_mul, symmetry_subgroup
from .errors import ClassInconsistent
from .linsys import split_net, tensor_divisor
from .resolve import NetResolution, resolve_net

# Twist matrices of the seven tabulated surfaces over Z_7, by row number.
PAPER_ROWS: dict[int, str] = {
    1: "4,5;3,1",
    2: "2,6;1,4",
    3: "3,3;6,4",
    4: "3,3;6,2",
    5: "5,4;6,5",
    6: "1,1;6,2",
    7: "2,2;6,3",
}


def equivalence_orbit(A: AutoMatrix) -> frozenset[AutoMatrix]:
    sym = symmetry_subgroup(A.p)
    out = set()
    for B in (A, mat_inverse(A)):
        for n1 in sym:
            BN = mat_mul(B, n1)
            for n2 in sym:
                out.add(mat_mul(n2, BN))
    return frozenset(out)


def analyze(spec: SurfaceSpec, max_depth: Optional[int] = None
            ) -> tuple[SurfaceReport, Optional[NetResolution]]:
    """Invariants plus, when p_g == 3, the resolved canonical net."""
    report = surface_report(spec)
    if not report.free or report.pg != 3:
        return report, None
    net = split_net([tensor_divisor(t) for t in report.tensors])
    return report, resolve_net(net, max_depth=max_depth)


def _fingerprint(A: AutoMatrix):
    report, res = analyze(SurfaceSpec(A.p, A))
    return (report.free, report.pg, None if res is None else res.verdict_key())


@dataclass(frozen=True)
class EquivalenceClass:
    representative: AutoMatrix
    members: tuple[AutoMatrix, ...]
    report: SurfaceReport
    resolution: Optional[NetResolution]
    paper_row: Optional[int] = None

    @property
    def verdict_key(self):
        return None if self.resolution is None else self.resolution.verdict_key()


def _free_matrices(p: int) -> list[AutoMatrix]:
    return [A for A in iter_gl2(p) if is_free(SurfaceSpec(p, A))]


def partition_orbits(matrices) -> list[frozenset[AutoMatrix]]:
    """Split a collection of matrices into equivalence orbits (each orbit in full)."""
    seen: set[AutoMatrix] = set()
    orbits = []
    for A in sorted(matrices):
        if A in seen:
            continue
        orb = equivalence_orbit(A)
        seen |= orb
        orbits.append(orb)
    return orbits


def classify_all(p: int, jobs: int = 1) -> list[EquivalenceClass]:
    """All free twists mod p, grouped into classes sorted by representative.

    Every member of every class is analysed and must agree with the others;
    ``jobs > 1`` spreads that work over processes without changing the result.
    """
    p = check_prime(p)
    free = set(_free_matrices(p))
    orbits = partition_orbits(free)
    for orb in orbits:
        stray = orb - free
        if stray:
            raise ClassInconsistent(
                f"orbit of {min(orb)} mixes free and non-free twists, e.g. {min(stray)}"
            )

    members = [sorted(orb) for orb in orbits]
    flat = [A for ms in members for A in ms]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            prints = list(pool.map(_fingerprint, flat, chunksize=16))
    else:
        prints = [_fingerprint(A) for A in flat]

    rows = {AutoMatrix.parse(p, text): n for n, text in PAPER_ROWS.items()} if p == 7 else {}
    out = []
    pos = 0
    for ms in members:
        fps = prints[pos:pos + len(ms)]
        pos += len(ms)
        if len(set(fps)) != 1:
            bad = sorted({(str(A), fp) for A, fp in zip(ms, fps)}, key=lambda x: x[0])
            raise ClassInconsistent(f"class of {ms[0]} has disagreeing members: {bad[:6]}")
        rep = ms[0]
        report, res = analyze(SurfaceSpec(p, rep))
        row = next((rows[A] for A in ms if A in rows), None)
        out.append(EquivalenceClass(rep, tuple(ms), report, res, row))
    return out


def paper_row_lookup(p: int, A: AutoMatrix) -> Optional[int]:
    """Row number of the tabulated surface equivalent to A, if any."""
    if p != 7 or A.p != 7:
        return None
    orb = equivalence_orbit(A)
    for n, text in PAPER_ROWS.items():
        if AutoMatrix.parse(7, text) in orb:
            return n
    return None
