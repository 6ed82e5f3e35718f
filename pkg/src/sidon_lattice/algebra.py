"""Exact integer and finite-field algebra.

Everything here works with arbitrary-precision Python integers; no floating
point is used anywhere.  Provides Smith/Hermite normal forms, finite abelian
groups in invariant-factor form with quotient-group computation, and small
GF(p^m) arithmetic with table-based discrete logarithms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .errors import FieldBoundError, InfiniteQuotientError, NotPrimePowerError

Vec = tuple[int, ...]
Matrix = tuple[Vec, ...]

DEFAULT_FIELD_BOUND = 2**20


# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------

def make_matrix(rows) -> Matrix:
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("matrix rows must all have the same length")
    return m


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    cols = range(len(b[0])) if b else ()
    return tuple(
        tuple(sum(ra[k] * b[k][j] for k in range(len(b))) for j in cols)
        for ra in a
    )


def mat_det(m: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    if len(m[0]) != n:
        raise ValueError("determinant requires a square matrix")
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[-1][-1]


def smith_normal_form(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with D = U*M*V diagonal, d_i | d_{i+1}, U,V unimodular.

    Pivoting is deterministic (smallest absolute value, ties by position),
    so the transforms are reproducible for a fixed input.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(r) for r in m]
    u = [list(r) for r in identity_matrix(rows)]
    v = [list(r) for r in identity_matrix(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            piv = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            if piv[0] != t:
                swap_rows(t, piv[0])
            if piv[1] != t:
                swap_cols(t, piv[1])
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    add_row(i, t, -(a[i][t] // a[t][t]))
                    if a[i][t] != 0:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    add_col(j, t, -(a[t][j] // a[t][t]))
                    if a[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining submatrix by the pivot
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return make_matrix(a), make_matrix(u), make_matrix(v)


def hermite_normal_form(m: Matrix) -> Matrix:
    """Canonical lower-triangular row HNF; zero rows are dropped.

    For a full-rank n x n input the result has positive diagonal entries and
    entries below each pivot reduced into [0, pivot).
    """
    if not m:
        return ()
    cols = len(m[0])
    # mirror columns, run the upper-triangular reduction, mirror back
    a = [list(reversed(r)) for r in m]
    rows = len(a)
    pivot_row = 0
    for j in range(cols):
        pick = None
        for i in range(pivot_row, rows):
            if a[i][j] != 0:
                pick = i
                break
        if pick is None:
            continue
        a[pivot_row], a[pick] = a[pick], a[pivot_row]
        # gcd-eliminate the column below the pivot
        for i in range(pivot_row + 1, rows):
            while a[i][j] != 0:
                q = a[pivot_row][j] // a[i][j]
                a[pivot_row] = [x - q * y for x, y in zip(a[pivot_row], a[i])]
                a[pivot_row], a[i] = a[i], a[pivot_row]
        if a[pivot_row][j] < 0:
            a[pivot_row] = [-x for x in a[pivot_row]]
        for i in range(pivot_row):
            q = a[i][j] // a[pivot_row][j]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pivot_row])]
        pivot_row += 1
    reduced = [list(reversed(r)) for r in a[:pivot_row]]
    reduced.reverse()
    return make_matrix(reduced)


# ---------------------------------------------------------------------------
# Finite abelian groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group in invariant-factor form m_1 | m_2 | ... | m_s."""

    invariant_factors: Vec

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def zero(self) -> Vec:
        return (0,) * self.rank

    def reduce(self, coords) -> Vec:
        coords = tuple(coords)
        if len(coords) != self.rank:
            raise ValueError("element has wrong number of coordinates")
        return tuple(c % m for c, m in zip(coords, self.invariant_factors))

    def add(self, a: Vec, b: Vec) -> Vec:
        if len(a) != self.rank or len(b) != self.rank:
            raise ValueError("element has wrong number of coordinates")
        return tuple((x + y) % m for x, y, m in zip(a, b, self.invariant_factors))

    def neg(self, a: Vec) -> Vec:
        return tuple((-x) % m for x, m in zip(a, self.invariant_factors))

    def sub(self, a: Vec, b: Vec) -> Vec:
        return self.add(a, self.neg(b))

    def scale(self, a: Vec, z: int) -> Vec:
        return tuple((z * x) % m for x, m in zip(a, self.invariant_factors))

    def element_order(self, a: Vec) -> int:
        orders = (m // math.gcd(m, x) for x, m in zip(a, self.invariant_factors))
        return math.lcm(1, *orders)

    def elements(self) -> Iterator[Vec]:
        """All elements in lexicographic coordinate order."""
        return itertools.product(*(range(m) for m in self.invariant_factors))


def cyclic(v: int) -> AbelianGroup:
    return group_make([v])


def group_make(invariant_factors) -> AbelianGroup:
    """Normalize any factor list to canonical invariant-factor form."""
    factors = [abs(int(f)) for f in invariant_factors]
    if any(f == 0 for f in factors):
        raise ValueError("group factors must be nonzero")
    diag = make_matrix(
        [[factors[i] if i == j else 0 for j in range(len(factors))] for i in range(len(factors))]
    )
    d, _, _ = smith_normal_form(diag)
    normalized = tuple(d[i][i] for i in range(len(factors)) if d[i][i] > 1)
    return AbelianGroup(normalized)


def quotient_group(basis: Matrix, n: int) -> tuple[AbelianGroup, Callable[[Vec], Vec]]:
    """Quotient Z^n / L for the lattice L spanned by the rows of `basis`.

    Returns the quotient in invariant-factor form together with the natural
    homomorphism mapping integer vectors to coset coordinates.
    """
    basis = make_matrix(basis)
    if basis and len(basis[0]) != n:
        raise ValueError("basis rows must have length n")
    d, _, v = smith_normal_form(basis)
    diag = [d[i][i] if i < len(d) and i < n else 0 for i in range(n)]
    if any(x == 0 for x in diag):
        raise InfiniteQuotientError("basis does not span a full-rank sublattice")
    kept = [j for j in range(n) if diag[j] > 1]
    group = AbelianGroup(tuple(diag[j] for j in kept))

    def coset_map(x) -> Vec:
        x = tuple(x)
        if len(x) != n:
            raise ValueError("vector has wrong dimension")
        return tuple(
            sum(x[i] * v[i][j] for i in range(n)) % diag[j] for j in kept
        )

    return group, coset_map


# ---------------------------------------------------------------------------
# Primality / prime powers
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_decompose(n: int) -> Optional[tuple[int, int]]:
    """Return (p, e) with n = p^e, or None if n is not a prime power (n >= 2)."""
    if n < 2:
        return None
    for p in range(2, n + 1):
        if p * p > n:
            return (n, 1)
        if n % p == 0:
            e = 0
            m = n
            while m % p == 0:
                m //= p
                e += 1
            return (p, e) if m == 1 else None
    return None


def is_prime_power(n: int) -> bool:
    """n = 1 counts as a prime power by convention."""
    return n == 1 or prime_power_decompose(n) is not None


# ---------------------------------------------------------------------------
# Finite fields GF(p^m)
# ---------------------------------------------------------------------------

def _poly_mul_mod(a: Vec, b: Vec, modulus: Vec, p: int) -> Vec:
    m = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce modulo the monic modulus
    for i in range(len(prod) - 1, m - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(m + 1):
                prod[i - m + j] = (prod[i - m + j] - c * modulus[j]) % p
    prod = prod[:m] + [0] * (m - len(prod))
    return tuple(prod[:m])


def _int_to_poly(k: int, p: int, m: int) -> Vec:
    return tuple((k // p**i) % p for i in range(m))


def _poly_divisible(a: list[int], b: list[int], p: int) -> bool:
    """Whether polynomial b divides a over GF(p) (b monic of lower degree)."""
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p) if p > 2 else b[-1]
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - db
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
    return not any(a)


def _is_irreducible(poly: list[int], p: int) -> bool:
    m = len(poly) - 1
    if m == 1:
        return True
    for deg in range(1, m // 2 + 1):
        for k in range(p**deg):
            cand = list(_int_to_poly(k, p, deg)) + [1]
            if _poly_divisible(poly, cand, p):
                return False
    return True


@dataclass(frozen=True)
class FiniteField:
    """GF(p^m) with table-based arithmetic; elements are coefficient tuples."""

    p: int
    m: int
    modulus: Vec            # monic, length m+1, coefficient of x^i at index i
    primitive_element: Vec
    _powers: tuple[Vec, ...]
    _dlog: dict

    @property
    def order(self) -> int:
        return self.p**self.m

    def zero(self) -> Vec:
        return (0,) * self.m

    def one(self) -> Vec:
        return (1,) + (0,) * (self.m - 1)

    def element(self, coeffs) -> Vec:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) > self.m:
            raise ValueError("too many coefficients")
        return coeffs + (0,) * (self.m - len(coeffs))

    def elements(self) -> Iterator[Vec]:
        for k in range(self.order):
            yield _int_to_poly(k, self.p, self.m)

    def add(self, a: Vec, b: Vec) -> Vec:
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a: Vec) -> Vec:
        return tuple((-x) % self.p for x in a)

    def sub(self, a: Vec, b: Vec) -> Vec:
        return self.add(a, self.neg(b))

    def mul(self, a: Vec, b: Vec) -> Vec:
        if not any(a) or not any(b):
            return self.zero()
        e = (self._dlog[a] + self._dlog[b]) % (self.order - 1)
        return self._powers[e]

    def pow(self, a: Vec, e: int) -> Vec:
        if not any(a):
            if e <= 0:
                raise ValueError("0 cannot be raised to a nonpositive power")
            return self.zero()
        return self._powers[(self.dlog(a) * e) % (self.order - 1)]

    def dlog(self, a: Vec) -> int:
        if not any(a):
            raise ValueError("discrete log of zero is undefined")
        return self._dlog[a]

    def subfield_elements(self, q: int) -> list[Vec]:
        """Elements of the subfield of order q (q must divide the field order)."""
        if q == self.order:
            return [self.zero()] + list(self._powers)
        if (self.order - 1) % (q - 1) != 0:
            raise ValueError(f"no subfield of order {q} in GF({self.p}^{self.m})")
        t = (self.order - 1) // (q - 1)
        return [self.zero()] + [self._powers[(j * t) % (self.order - 1)] for j in range(q - 1)]


def gf_construct(p: int, m: int, max_order: int = DEFAULT_FIELD_BOUND) -> FiniteField:
    """Build GF(p^m) with deterministic modulus and primitive element.

    The modulus is the first monic irreducible of degree m in counting order
    of the non-leading coefficients; the primitive element is likewise the
    first field element (in counting order) of full multiplicative order.
    """
    if not is_prime(p):
        raise NotPrimePowerError(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be >= 1")
    q = p**m
    if q > max_order:
        raise FieldBoundError(f"field order {q} exceeds the configured bound {max_order}")

    modulus = None
    for k in range(q):
        cand = list(_int_to_poly(k, p, m)) + [1]
        if _is_irreducible(cand, p):
            modulus = tuple(cand)
            break
    assert modulus is not None

    for k in range(1, q):
        theta = _int_to_poly(k, p, m)
        powers = [(1,) + (0,) * (m - 1)]
        cur = powers[0]
        while True:
            cur = _poly_mul_mod(cur, theta, modulus, p)
            if cur == powers[0]:
                break
            powers.append(cur)
        if len(powers) == q - 1:
            # powers[i] = theta^i by construction
            dlog = {elem: i for i, elem in enumerate(powers)}
            return FiniteField(p, m, modulus, theta, tuple(powers), dlog)
    raise AssertionError("no primitive element found (unreachable)")
