"""Certifiers, bound formulas, and conjecture experiments.

Cover profiles, packing/perfectness/tiling checks are all computed in the
finite quotient group: coverage counts equal syndrome multiplicities, which
turns the infinite geometric statements into exact finite ones.  Real-valued
bounds are evaluated as exact rational enclosures so that strictness checks
never touch floating point.
"""

from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import algebra, geometry, sets
from .codes import LatticeCode
from .geometry import Shape


# ---------------------------------------------------------------------------
# Cover / packing / tiling certifiers
# ---------------------------------------------------------------------------

@dataclass
class CoverReport:
    r: int
    i: object                  # int, or "nonuniform"
    j: object                  # int, or "nonuniform"
    is_cover: bool
    witness: Optional[tuple] = None   # first offending coset, if nonuniform


def check_cover(L: LatticeCode, r: int) -> CoverReport:
    """Coverage profile of radius-r balls around the lattice points.

    A coset is covered once per shape point landing on it; the zero coset
    gives i (coverage of lattice points), the others give j.
    """
    group, cmap = L.quotient()
    counts: dict[tuple, int] = {}
    for x in geometry.shape_points(Shape(L.n, r, r)):
        s = cmap(x)
        counts[s] = counts.get(s, 0) + 1
    i = counts.get(group.zero(), 0)
    j = None
    witness = None
    for coset in group.elements():
        if coset == group.zero():
            continue
        c = counts.get(coset, 0)
        if j is None:
            j = c
        elif c != j and witness is None:
            witness = coset
    if witness is not None:
        return CoverReport(r, i, "nonuniform", False, witness)
    return CoverReport(r, i, j if j is not None else 0, True, None)


def check_packing(L: LatticeCode, s: Shape) -> bool:
    """True iff all shape points land in distinct cosets of Z^n / L."""
    if s.n != L.n:
        raise ValueError("shape dimension does not match the lattice")
    _, cmap = L.quotient()
    seen = set()
    for x in geometry.shape_points(s):
        key = cmap(x)
        if key in seen:
            return False
        seen.add(key)
    return True


def check_perfect(L: LatticeCode, r: int) -> bool:
    """Packing by the radius-r ball whose size equals the lattice index."""
    shape = Shape(L.n, r, r)
    return geometry.shape_size(shape) == L.det_abs and check_packing(L, shape)


def check_tiling(L: LatticeCode, s: Shape) -> bool:
    """Exact cover: packing plus shape size equal to the lattice index."""
    return geometry.shape_size(s) == L.det_abs and check_packing(L, s)


# ---------------------------------------------------------------------------
# Bound formulas
# ---------------------------------------------------------------------------

@dataclass
class BoundReport:
    formula: str               # phi_k | f_h | phi_h | h_k
    inputs: dict
    low: Fraction              # low == high for exact values
    high: Fraction


ROOT_EPS = Fraction(1, 10**9)


def _nth_root_enclosure(x: Fraction, n: int, eps: Fraction = ROOT_EPS) -> tuple[Fraction, Fraction]:
    """Rational lo <= x^(1/n) <= hi with hi - lo <= eps."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0), Fraction(0)
    lo, hi = Fraction(0), max(Fraction(1), x)
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if mid**n <= x:
            lo = mid
        else:
            hi = mid
    return lo, hi


def bound_phi_k(h: int, k: int) -> BoundReport:
    """Exact lower-bound value (k - ceil(h/2))^h / (ceil(h/2)! floor(h/2)!)."""
    if h < 1:
        raise ValueError("h must be >= 1")
    hc, hf = (h + 1) // 2, h // 2
    if k < hc:
        raise ValueError(f"requires k >= ceil(h/2) = {hc}")
    val = Fraction((k - hc) ** h, math.factorial(hc) * math.factorial(hf))
    return BoundReport("phi_k", {"h": h, "k": k}, val, val)


def bound_phi_h(h: int, k: int) -> BoundReport:
    """Exact lower-bound value (h - 2n + 2)^n / n! * C(2n, n) / 2^n, n = k - 1."""
    if k < 2:
        raise ValueError("requires k >= 2")
    n = k - 1
    if h < 2 * k - 4:
        raise ValueError(f"requires h >= 2k - 4 = {2 * k - 4}")
    val = Fraction((h - 2 * n + 2) ** n, math.factorial(n)) * Fraction(
        math.comb(2 * n, n), 2**n
    )
    return BoundReport("phi_h", {"h": h, "k": k}, val, val)


def bound_f_h(h: int, v: int) -> BoundReport:
    """Enclosure of v^(1/h) (floor(h/2)! ceil(h/2)!)^(1/h) + ceil(h/2)."""
    if h < 1 or v < 1:
        raise ValueError("requires h >= 1 and v >= 1")
    hc, hf = (h + 1) // 2, h // 2
    lo, hi = _nth_root_enclosure(Fraction(v * math.factorial(hc) * math.factorial(hf)), h)
    return BoundReport("f_h", {"h": h, "v": v}, lo + hc, hi + hc)


def bound_h_k(k: int, v: int) -> BoundReport:
    """Enclosure of 2 (v (n!)^3 / (2n)!)^(1/n) + 2n - 2, n = k - 1."""
    if k < 2 or v < 1:
        raise ValueError("requires k >= 2 and v >= 1")
    n = k - 1
    lo, hi = _nth_root_enclosure(
        Fraction(v * math.factorial(n) ** 3, math.factorial(2 * n)), n
    )
    return BoundReport("h_k", {"k": k, "v": v}, 2 * lo + 2 * n - 2, 2 * hi + 2 * n - 2)


# ---------------------------------------------------------------------------
# Periods and conjecture experiments
# ---------------------------------------------------------------------------

def period_along(L: LatticeCode, i: int, j: int) -> int:
    """Smallest t >= 1 with t * f_{i,j} in L (f expressed in Z^n coordinates)."""
    if i == j:
        raise ValueError("direction indices must differ")
    f = geometry.drop0(geometry.unit_direction(L.n, i, j))
    group, cmap = L.quotient()
    return group.element_order(cmap(f))


@dataclass
class PpcRow:
    n: int
    prime_power: bool
    found: bool
    exhaustive: bool
    nodes: int
    witness: Optional[tuple] = None


def experiment_ppc(n_max: int, max_nodes: int | None = None, threads: int = 1) -> list[PpcRow]:
    """Planar-set existence for n <= n_max versus the prime-power predicate."""
    ns = list(range(1, n_max + 1))
    if threads > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(sets.search_planar, ns, [max_nodes] * len(ns)))
    else:
        reports = [sets.search_planar(n, max_nodes) for n in ns]
    rows = []
    for n, rep in zip(ns, reports):
        pp = algebra.is_prime_power(n)
        found = rep.found is not None
        if rep.exhaustive and found != pp:
            raise RuntimeError(f"existence at n={n} contradicts the prime-power predicate")
        rows.append(
            PpcRow(n, pp, found, rep.exhaustive, rep.nodes,
                   rep.found.as_ints() if found else None)
        )
    return rows


@dataclass
class CyclicityRow:
    source: dict
    det: int
    is_perfect1: bool
    cyclic: Optional[bool]
    period_match: Optional[bool]


def experiment_cyclicity(codes: list[LatticeCode]) -> list[CyclicityRow]:
    """For every 1-perfect code, compare quotient cyclicity with the period test.

    The two criteria must agree; a disagreement is reported as a hard error
    rather than silently recorded.
    """
    rows = []
    for L in codes:
        perfect1 = check_perfect(L, 1)
        if not perfect1:
            rows.append(CyclicityRow(L.source, L.det_abs, False, None, None))
            continue
        group, _ = L.quotient()
        cyc = group.is_cyclic
        match = any(
            period_along(L, i, j) == L.det_abs
            for i in range(L.n + 1)
            for j in range(L.n + 1)
            if i != j
        )
        if cyc != match:
            raise RuntimeError(
                f"cyclicity ({cyc}) and period criterion ({match}) disagree for {L.source}"
            )
        rows.append(CyclicityRow(L.source, L.det_abs, True, cyc, match))
    return rows
