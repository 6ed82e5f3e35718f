"""Lattice codes from difference sets and B_h sets, and their decoders.

A set {0, g_1, ..., g_n} in a finite abelian group G defines the lattice
L = { x in Z^n : sum x_i g_i = 0 }.  The quotient Z^n / L recovers the
subgroup generated by the set; syndromes over an anisotropic ball certify
packing and drive the table decoder.  The explicit one- and two-dimensional
perfect/tiling families are provided directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra, geometry, sets
from .algebra import AbelianGroup, Matrix, Vec
from .errors import SyndromeCollisionError
from .geometry import Shape
from .sets import BhSet, DifferenceSet


# ---------------------------------------------------------------------------
# Lattice codes
# ---------------------------------------------------------------------------

@dataclass
class LatticeCode:
    n: int
    basis: Matrix               # canonical lower-triangular HNF, full rank
    det_abs: int
    source: dict = field(default_factory=dict)
    _quotient: tuple | None = field(default=None, repr=False, compare=False)

    def quotient(self):
        """(Z^n / L, coset map), computed once and cached."""
        if self._quotient is None:
            self._quotient = algebra.quotient_group(self.basis, self.n)
        return self._quotient

    def contains(self, x: Vec) -> bool:
        group, cmap = self.quotient()
        return cmap(x) == group.zero()


def _lattice(basis_rows, source: dict) -> LatticeCode:
    hnf = algebra.hermite_normal_form(algebra.make_matrix(basis_rows))
    n = len(hnf[0]) if hnf else 0
    if len(hnf) != n:
        raise ValueError("basis does not span a full-rank lattice")
    det_abs = 1
    for i in range(n):
        det_abs *= hnf[i][i]
    return LatticeCode(n, hnf, det_abs, source)


def lattice_from_set(G: AbelianGroup, elements) -> LatticeCode:
    """Kernel lattice of x -> sum x_i g_i over the nonzero elements.

    The elements are sorted ascending and shifted so the first is 0; the
    remaining n of them index the coordinates of Z^n.  Raises if the set
    does not generate G.
    """
    elems = sorted(G.reduce(e) for e in elements)
    if len(set(elems)) != len(elems):
        raise ValueError("elements must be distinct")
    base = elems[0]
    elems = sorted(G.sub(e, base) for e in elems)
    gens = elems[1:]
    n = len(gens)
    if n == 0:
        raise ValueError("need at least two elements")
    s = G.rank
    mods = G.invariant_factors
    if s == 0:
        basis_rows = algebra.identity_matrix(n)
    else:
        # kernel of (x, y) -> x*E + y*diag(mods), projected onto x
        rows = [tuple(g) for g in gens]
        for j in range(s):
            rows.append(tuple(mods[j] if t == j else 0 for t in range(s)))
        relation = algebra.make_matrix(rows)
        d, u, _ = algebra.smith_normal_form(relation)
        rank = sum(1 for i in range(min(len(d), s)) if d[i][i] != 0)
        kernel_rows = [u[i] for i in range(rank, n + s)]
        basis_rows = [row[:n] for row in kernel_rows]
    code = _lattice(
        basis_rows,
        {"kind": "set", "group": list(G.invariant_factors), "elements": [list(e) for e in elems]},
    )
    if code.det_abs != G.order:
        raise ValueError(
            f"set generates a subgroup of order {code.det_abs}, not the whole group of order {G.order}"
        )
    return code


def generator_matrix_cyclic(D: DifferenceSet) -> Matrix:
    """Explicit generator matrix for a normalized cyclic planar-style set.

    First row (v, 0, ..., 0); row i is (-d_i, 0, ..., 1, ..., 0).
    """
    _require_normalized_cyclic(D)
    d = D.as_ints()
    v = D.v
    n = D.k - 1
    rows = [tuple([v] + [0] * (n - 1))]
    for i in range(2, n + 1):
        rows.append(tuple([-d[i]] + [1 if j == i - 1 else 0 for j in range(1, n)]))
    return algebra.make_matrix(rows)


def dual_basis(b: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    """Inverse-transpose of a full-rank integer basis, exact rationals."""
    n = len(b)
    if n == 0 or len(b[0]) != n:
        raise ValueError("need a square basis")
    # invert via Gauss-Jordan over Fractions, then transpose
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("basis is singular")
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    inv = [row[n:] for row in a]
    return tuple(tuple(inv[j][i] for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# Finite codes over Z_v
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteCode:
    v: int
    n: int
    parity_row: Vec             # H = (1, d_2, ..., d_n)
    d_elements: Vec             # the full normalized set (0, 1, d_2, ..., d_n)

    @property
    def codeword_count(self) -> int:
        return self.v ** (self.n - 1)


def _require_normalized_cyclic(D: DifferenceSet):
    if not D.group.is_cyclic:
        raise ValueError("requires a cyclic group")
    d = D.as_ints()
    if d[0] != 0 or (len(d) > 1 and d[1] != 1):
        raise ValueError("requires a normalized set with d_0 = 0, d_1 = 1")


def finite_code(D: DifferenceSet) -> FiniteCode:
    _require_normalized_cyclic(D)
    d = D.as_ints()
    return FiniteCode(D.v, D.k - 1, tuple(d[1:]), d)


def encode(code: FiniteCode, info) -> Vec:
    """Systematic encoding: first symbol balances H * x = 0 mod v."""
    info = tuple(int(x) % code.v for x in info)
    if len(info) != code.n - 1:
        raise ValueError(f"information vector must have length {code.n - 1}")
    x1 = (-sum(d * x for d, x in zip(code.parity_row[1:], info))) % code.v
    return (x1,) + info


def syndrome(code: FiniteCode, y) -> int:
    y = tuple(int(x) for x in y)
    if len(y) != code.n:
        raise ValueError(f"word must have length {code.n}")
    return sum(d * x for d, x in zip(code.parity_row, y)) % code.v


def decode_radius1(code: FiniteCode, y) -> Vec:
    """Single-error correction for codes from planar difference sets."""
    y = tuple(int(x) % code.v for x in y)
    s = syndrome(code, y)
    if s == 0:
        return y
    d = code.d_elements
    k = len(d)
    for i in range(k):
        for j in range(k):
            if i != j and (d[i] - d[j]) % code.v == s:
                err = [0] * code.n
                if i > 0:
                    err[i - 1] += 1
                if j > 0:
                    err[j - 1] -= 1
                return tuple((x - e) % code.v for x, e in zip(y, err))
    raise ValueError(f"syndrome {s} has no single-error explanation")


# ---------------------------------------------------------------------------
# Syndrome tables and radius-(r+, r-) decoding
# ---------------------------------------------------------------------------

@dataclass
class SyndromeTable:
    group: AbelianGroup
    r_plus: int
    r_minus: int
    table: dict                 # group element -> error vector in the shape


def build_syndrome_table(B: BhSet, r_plus: int, r_minus: int) -> SyndromeTable:
    """Map each shape error pattern to its syndrome sum; injectivity certified.

    A collision proves the underlying set is not B_h for h = r+ + r-, so this
    doubles as an alternative verifier.
    """
    G = B.group
    gens = B.elements[1:]
    n = len(gens)
    table: dict[Vec, Vec] = {}
    for x in geometry.shape_points(Shape(n, r_plus, r_minus)):
        s = G.zero()
        for xi, g in zip(x, gens):
            if xi:
                s = G.add(s, G.scale(g, xi))
        if s in table:
            raise SyndromeCollisionError(s, table[s], x)
        table[s] = x
    return SyndromeTable(G, r_plus, r_minus, table)


@dataclass(frozen=True)
class DecodeResult:
    status: str                 # "corrected" | "detected"
    codeword: Vec | None
    error: Vec | None


def decode_radius_r(table: SyndromeTable, code, y) -> DecodeResult:
    """Subtract the table entry for the received word's syndrome.

    Accepts either a FiniteCode (words mod v) or a LatticeCode (integer
    words).  A syndrome absent from the table is reported as detected but
    uncorrectable: the error lies beyond the design shape.
    """
    if isinstance(code, FiniteCode):
        y = tuple(int(x) % code.v for x in y)
        s = (syndrome(code, y),) if table.group.rank == 1 else ()
        err = table.table.get(s)
        if err is None:
            return DecodeResult("detected", None, None)
        return DecodeResult(
            "corrected", tuple((a - e) % code.v for a, e in zip(y, err)), err
        )
    if isinstance(code, LatticeCode):
        y = tuple(int(x) for x in y)
        _, cmap = code.quotient()
        err = table.table.get(cmap(y))
        if err is None:
            return DecodeResult("detected", None, None)
        return DecodeResult("corrected", tuple(a - e for a, e in zip(y, err)), err)
    raise TypeError("code must be a FiniteCode or LatticeCode")


# ---------------------------------------------------------------------------
# Explicit families
# ---------------------------------------------------------------------------

def perfect_code_A1(r: int) -> LatticeCode:
    """r-perfect sublattice of the one-dimensional zero-sum lattice: (2r+1)Z."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return _lattice([(2 * r + 1,)], {"kind": "perfect-a1", "r": r})


def perfect_code_A2(r: int) -> LatticeCode:
    """r-perfect sublattice of the planar hexagonal case, in Z^2 coordinates.

    Spanned (before dropping coordinate 0) by (-2r-1, r, r+1) and
    (-r-1, 2r+1, -r); the sign of the last coordinate of the second vector
    is forced by the zero-sum constraint and by |det| = 3r^2 + 3r + 1.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    rows = [
        geometry.drop0((-2 * r - 1, r, r + 1)),
        geometry.drop0((-r - 1, 2 * r + 1, -r)),
    ]
    code = _lattice(rows, {"kind": "perfect-a2", "r": r})
    assert code.det_abs == 3 * r * r + 3 * r + 1
    return code


def tiling_lattice_S2(r: int) -> LatticeCode:
    """Lattice tiling Z^2 by the shape S_2(r+1, r); quotient Z_{r+1} x Z_{3r+3}."""
    if r < 0:
        raise ValueError("r must be >= 0")
    rows = [(r + 1, r + 1), (0, 3 * r + 3)]
    code = _lattice(rows, {"kind": "tiling-s2", "r": r})
    assert code.det_abs == 3 * (r + 1) ** 2
    return code


def lattice_from_difference_set(D: DifferenceSet) -> LatticeCode:
    code = lattice_from_set(D.group, D.elements)
    code.source = {
        "kind": "difference-set",
        "group": list(D.group.invariant_factors),
        "elements": [list(e) for e in D.elements],
        "params": {"v": D.v, "k": D.k, "lambda": D.lam},
    }
    return code


def lattice_from_bh_set(B: BhSet) -> LatticeCode:
    code = lattice_from_set(B.group, B.elements)
    code.source = {
        "kind": "bh-set",
        "group": list(B.group.invariant_factors),
        "elements": [list(e) for e in B.elements],
        "h": B.h,
    }
    return code


def extract_difference_set(L: LatticeCode) -> DifferenceSet:
    """Recover the set {[e_i]} + {0} from the quotient of a covering lattice."""
    group, cmap = L.quotient()
    elems = [group.zero()]
    for i in range(L.n):
        e = tuple(1 if j == i else 0 for j in range(L.n))
        elems.append(cmap(e))
    return sets.difference_set(group, elems)
