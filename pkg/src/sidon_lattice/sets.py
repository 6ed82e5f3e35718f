"""Difference sets and B_h sequences.

Verification is brute force straight from the definitions; the classical
constructions over finite fields are verified post hoc; the searches are
exhaustive backtracking with difference/sum pruning and honest node budgets.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from . import algebra
from .algebra import AbelianGroup, Vec, cyclic, gf_construct, prime_power_decompose
from .errors import NotPrimePowerError


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DifferenceSet:
    group: AbelianGroup
    elements: tuple[Vec, ...]   # sorted, distinct
    v: int
    k: int
    lam: int

    @property
    def order(self) -> int:
        return self.k - self.lam

    def as_ints(self) -> tuple[int, ...]:
        if not self.group.is_cyclic:
            raise ValueError("integer view requires a cyclic group")
        return tuple(e[0] for e in self.elements)


@dataclass(frozen=True)
class BhSet:
    group: AbelianGroup
    h: int
    elements: tuple[Vec, ...]   # sorted, first element is the zero of the group

    @property
    def k(self) -> int:
        return len(self.elements)

    def as_ints(self) -> tuple[int, ...]:
        if not self.group.is_cyclic:
            raise ValueError("integer view requires a cyclic group")
        return tuple(e[0] for e in self.elements)


@dataclass
class SearchReport:
    kind: str
    params: dict
    found: object | None
    nodes: int
    exhaustive: bool


# ---------------------------------------------------------------------------
# Verification from definitions
# ---------------------------------------------------------------------------

def verify_difference_set(G: AbelianGroup, elements) -> Optional[tuple[int, int, int]]:
    """Parameters (v, k, lambda) if every nonzero difference count is equal."""
    elems = [G.reduce(e) for e in elements]
    if len(set(elems)) != len(elems):
        raise ValueError("difference set elements must be distinct")
    v = G.order
    k = len(elems)
    if v == 1:
        return (1, k, k) if k == 1 else None
    counts: dict[Vec, int] = {}
    for a in elems:
        for b in elems:
            if a != b:
                diff = G.sub(a, b)
                counts[diff] = counts.get(diff, 0) + 1
    if len(counts) != v - 1:
        return None
    values = set(counts.values())
    if len(values) != 1:
        return None
    return (v, k, values.pop())


def difference_set(G: AbelianGroup, elements) -> DifferenceSet:
    params = verify_difference_set(G, elements)
    if params is None:
        raise ValueError("not a difference set")
    elems = tuple(sorted(G.reduce(e) for e in elements))
    return DifferenceSet(G, elems, *params)


def verify_bh(G: AbelianGroup, elements, h: int) -> bool:
    """True iff all h-fold multiset sums of the elements are distinct."""
    if h < 1:
        raise ValueError("h must be >= 1")
    elems = [G.reduce(e) for e in elements]
    if len(set(elems)) != len(elems):
        raise ValueError("elements must be distinct")
    seen = set()
    from itertools import combinations_with_replacement

    for combo in combinations_with_replacement(elems, h):
        s = G.zero()
        for e in combo:
            s = G.add(s, e)
        if s in seen:
            return False
        seen.add(s)
    return True


def bh_set(G: AbelianGroup, elements, h: int) -> BhSet:
    """Normalize (shift so the minimum becomes 0), verify, and wrap."""
    elems = sorted(G.reduce(e) for e in elements)
    base = elems[0]
    elems = [G.sub(e, base) for e in elems]
    elems.sort()
    if not verify_bh(G, elems, h):
        raise ValueError(f"not a B_{h} set")
    return BhSet(G, h, tuple(elems))


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def singer(q: int, max_field_order: int = algebra.DEFAULT_FIELD_BOUND) -> DifferenceSet:
    """Planar difference set of order q in Z_{q^2+q+1}, canonically normalized."""
    pe = prime_power_decompose(q)
    if pe is None:
        raise NotPrimePowerError(f"{q} is not a prime power")
    p, e = pe
    F = gf_construct(p, 3 * e, max_order=max_field_order)
    v = q * q + q + 1
    theta = F.primitive_element
    sub = F.subfield_elements(q)
    plane = set()
    for c0 in sub:
        for c1 in sub:
            plane.add(F.add(c0, F.mul(c1, theta)))
    plane.discard(F.zero())
    residues = sorted({a % v for a in range(F.order - 1) if F.pow(theta, a) in plane})
    assert len(residues) == q + 1
    G = cyclic(v)
    raw = difference_set(G, [(r,) for r in residues])
    return normalize_equivalence(raw)


def bose_chowla(q: int, h: int, max_field_order: int = algebra.DEFAULT_FIELD_BOUND) -> BhSet:
    """B_h set of size q in Z_{q^h - 1} (size q-1 in the degenerate h = 1 case)."""
    pe = prime_power_decompose(q)
    if pe is None:
        raise NotPrimePowerError(f"{q} is not a prime power")
    if h < 1:
        raise ValueError("h must be >= 1")
    p, e = pe
    F = gf_construct(p, e * h, max_order=max_field_order)
    v = q**h - 1
    theta = F.primitive_element
    logs = []
    for c in F.subfield_elements(q):
        x = F.add(theta, c)
        if any(x):
            logs.append(F.dlog(x))
    G = cyclic(v)
    return bh_set(G, [(a % max(v, 1),) if G.rank else () for a in logs], h)


def normalize_equivalence(D: DifferenceSet) -> DifferenceSet:
    """Lexicographically smallest equivalent image containing 0 and 1 (cyclic only)."""
    if not D.group.is_cyclic:
        raise ValueError("equivalence normalization is defined for cyclic groups only")
    v = D.v
    ints = [e[0] for e in D.elements]
    best = None
    for z in range(1, v):
        if math.gcd(z, v) != 1:
            continue
        for d in ints:
            image = tuple(sorted((z * (x - d)) % v for x in ints))
            if len(image) > 1 and image[1] != 1:
                continue
            if best is None or image < best:
                best = image
    assert best is not None
    return difference_set(D.group, [(x,) for x in best])


# ---------------------------------------------------------------------------
# Exhaustive searches
# ---------------------------------------------------------------------------

class BudgetExceeded(Exception):
    pass


def search_planar(
    n: int, max_nodes: int | None = None, deadline: float | None = None
) -> SearchReport:
    """Exhaustive search for a planar difference set of order n in Z_{n^2+n+1}.

    Candidates are sorted sets with forced prefix {0, 1}; a bitmap of used
    differences prunes any branch repeating a difference (lossless for
    lambda = 1).  Returns the first find or an exhaustive absence claim.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    v = n * n + n + 1
    k = n + 1
    params = {"n": n, "v": v, "k": k}
    G = cyclic(v)
    if k == 2:
        return SearchReport("planar", params, difference_set(G, [(0,), (1,)]), 1, True)

    used = bytearray(v)
    used[1] = used[v - 1] = 1
    chosen = [0, 1]
    nodes = 0
    found: list[int] | None = None

    def rec(lo: int) -> bool:
        nonlocal nodes, found
        need = k - len(chosen)
        if need == 0:
            found = list(chosen)
            return True
        for c in range(lo, v - need + 1):
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise BudgetExceeded
            if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded
            fresh = []
            ok = True
            for d in chosen:
                a = (c - d) % v
                b = (d - c) % v
                if used[a] or used[b] or a == b:
                    ok = False
                    break
                used[a] = used[b] = 1
                fresh.append((a, b))
            if ok:
                chosen.append(c)
                if rec(c + 1):
                    return True
                chosen.pop()
            for a, b in fresh:
                used[a] = used[b] = 0
        return False

    try:
        hit = rec(2)
    except BudgetExceeded:
        return SearchReport("planar", params, None, nodes, False)
    result = difference_set(G, [(x,) for x in found]) if hit else None
    return SearchReport("planar", params, result, nodes, True)


class _BhSums:
    """Incrementally maintained multiset sums of up to h nonzero elements.

    With 0 forced into the set, the B_h property is equivalent to all these
    sums (the empty sum included) being pairwise distinct.
    """

    def __init__(self, G: AbelianGroup, h: int):
        self.G = G
        self.h = h
        self.by_size: list[list[Vec]] = [[G.zero()]] + [[] for _ in range(h)]
        self.seen = {G.zero()}

    def try_add(self, e: Vec) -> Optional[list[tuple[int, Vec]]]:
        """Add element e; return an undo record, or None on a sum collision."""
        G = self.G
        multiples = [e]
        for _ in range(self.h - 1):
            multiples.append(G.add(multiples[-1], e))
        added: list[tuple[int, Vec]] = []
        fresh: set[Vec] = set()
        for u in range(1, self.h + 1):
            for j in range(1, u + 1):
                je = multiples[j - 1]
                for s in self.by_size[u - j]:
                    cand = G.add(s, je)
                    if cand in self.seen or cand in fresh:
                        return None
                    fresh.add(cand)
                    added.append((u, cand))
        for u, s in added:
            self.by_size[u].append(s)
            self.seen.add(s)
        return added

    def undo(self, added: list[tuple[int, Vec]]):
        for u, s in reversed(added):
            self.by_size[u].pop()
            self.seen.discard(s)


def _search_bh_in_group(
    G: AbelianGroup, k: int, h: int, nodes_start: int,
    max_nodes: int | None, deadline: float | None = None
) -> tuple[Optional[list[Vec]], int, bool]:
    """First B_h set of size k containing 0 in G (ascending element order)."""
    elems = list(G.elements())
    nodes = nodes_start
    if k == 1:
        return [G.zero()], nodes + 1, True
    sums = _BhSums(G, h)
    chosen = [G.zero()]
    found: list[Vec] | None = None

    def rec(lo: int) -> bool:
        nonlocal nodes, found
        need = k - len(chosen)
        if need == 0:
            found = list(chosen)
            return True
        for idx in range(lo, len(elems) - need + 1):
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise BudgetExceeded
            if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
                raise BudgetExceeded
            record = sums.try_add(elems[idx])
            if record is None:
                continue
            chosen.append(elems[idx])
            if rec(idx + 1):
                return True
            chosen.pop()
            sums.undo(record)
        return False

    try:
        hit = rec(1)
    except BudgetExceeded:
        return None, nodes, False
    return (found if hit else None), nodes, True


def _partitions(n: int, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    top = min(n, cap) if cap is not None else n
    for first in range(top, 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _factorize(v: int) -> dict[int, int]:
    out: dict[int, int] = {}
    m = v
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def abelian_groups_of_order(v: int) -> list[AbelianGroup]:
    """All abelian groups of order v, one per isomorphism class."""
    if v < 1:
        raise ValueError("order must be >= 1")
    if v == 1:
        return [AbelianGroup(())]
    primes = sorted(_factorize(v).items())
    per_prime = [list(_partitions(e)) for _, e in primes]
    groups = []
    import itertools as it

    for combo in it.product(*per_prime):
        depth = max(len(part) for part in combo)
        factors = []
        for level in range(depth):
            f = 1
            for (p, _), part in zip(primes, combo):
                if level < len(part):
                    f *= p ** part[level]
            factors.append(f)
        factors.reverse()  # ascending divisibility chain
        groups.append(AbelianGroup(tuple(factors)))
    groups.sort(key=lambda g: g.invariant_factors)
    return groups


def search_min_group(
    h: int, k: int, v_max: int,
    max_nodes: int | None = None, deadline: float | None = None
) -> SearchReport:
    """Smallest order of an abelian group containing a B_h set of size k.

    Scans orders v = k, k+1, ..., v_max and, for each, every abelian group of
    that order; the per-group search is exhaustive with b_0 = 0 forced.
    """
    if h < 1 or k < 1:
        raise ValueError("h and k must be >= 1")
    params = {"h": h, "k": k, "v_max": v_max}
    nodes = 0
    for v in range(max(k, 1), v_max + 1):
        for G in abelian_groups_of_order(v):
            found, nodes, complete = _search_bh_in_group(G, k, h, nodes, max_nodes, deadline)
            if found is not None:
                witness = BhSet(G, h, tuple(sorted(found)))
                return SearchReport("min-group", params, witness, nodes, True)
            if not complete:
                return SearchReport("min-group", params, None, nodes, False)
    return SearchReport("min-group", params, None, nodes, True)
