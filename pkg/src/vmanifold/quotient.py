"""Cyclic and abelian quotient spaces X(d; A) = C^n / (mu_d1 x ... x mu_dr).

A type is stored as its vector of orders and its integer weight matrix, row
``i`` reduced modulo ``orders[i]``.  The acting group is handled through its
image in the diagonal torus: a finite set of exponent tuples modulo 1.
Internally the image is kept as integer tuples over a common modulus, which
keeps enumeration cheap; :func:`enumerate_image_group` converts to rationals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .arith import lcm_list, mod_inverse
from .errors import DomainError, ResourceError, UnsupportedError

DEFAULT_CAP = 10**6

GroupElement = tuple  # tuple[Fraction, ...], entries in [0, 1)


@dataclass(frozen=True)
class QuotientType:
    """The type (d; A) of a quotient space.

    ``dim`` is inferred from the rows and only needs to be given for the
    type with no rows at all (the trivial action on C^dim).
    """

    orders: tuple
    weights: tuple
    dim: Optional[int] = None

    def __post_init__(self):
        orders = tuple(map(int, self.orders))
        rows = self.weights
        if len(orders) != len(rows):
            raise DomainError(
                f"{len(orders)} orders given for {len(rows)} weight rows")
        dim = self.dim
        if dim is None:
            if not rows:
                raise DomainError("the dimension of a type without rows must be given")
            dim = len(rows[0])
        if dim < 1:
            raise DomainError("a quotient space needs at least one coordinate")
        reduced = []
        for d, row in zip(orders, rows):
            if d <= 0:
                raise DomainError(f"group orders must be positive, got {list(orders)}")
            if len(row) != dim:
                raise DomainError("weight rows have different lengths")
            reduced.append(tuple([int(a) % d for a in row]))
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "weights", tuple(reduced))
        object.__setattr__(self, "dim", dim)

    @classmethod
    def cyclic(cls, d: int, *weights: int) -> QuotientType:
        return cls((d,), (tuple(weights),))

    @classmethod
    def trivial(cls, n: int) -> QuotientType:
        return cls((), (), dim=n)

    @property
    def r(self) -> int:
        return len(self.orders)

    @property
    def n(self) -> int:
        return self.dim

    @property
    def is_cyclic(self) -> bool:
        return self.r == 1

    def is_trivial_group(self) -> bool:
        return all(all(a == 0 for a in row) for row in self.weights)

    def __str__(self):
        if not self.orders:
            return "(1;" + ",".join("0" * self.dim) + ")"
        orders = ",".join(str(d) for d in self.orders)
        rows = "/".join(",".join(str(a) for a in row) for row in self.weights)
        return f"({orders};{rows})"


@dataclass(frozen=True)
class MonomialMap:
    """Coordinate substitution x_j -> x_j**exponents[j]."""

    exponents: tuple

    def __post_init__(self):
        exps = tuple(int(k) for k in self.exponents)
        if any(k < 1 for k in exps):
            raise DomainError(f"monomial map exponents must be >= 1, got {exps}")
        object.__setattr__(self, "exponents", exps)

    @classmethod
    def identity(cls, n: int) -> MonomialMap:
        return cls((1,) * n)

    def then(self, other: MonomialMap) -> MonomialMap:
        return MonomialMap(tuple(a * b for a, b in zip(self.exponents, other.exponents)))

    def is_identity(self) -> bool:
        return all(k == 1 for k in self.exponents)


@dataclass(frozen=True)
class NormalizationResult:
    normalized: QuotientType
    map: MonomialMap


# -- group image ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ImageGroup:
    """Image of mu_d in the diagonal torus.

    ``elements`` is an (order x n) integer array; row ``g`` stands for the
    diagonal element with exponents g / modulus.  Rows are distinct.
    """

    modulus: int
    elements: np.ndarray

    def __len__(self):
        return self.elements.shape[0]

    def element_set(self) -> set:
        return {tuple(int(x) for x in g) for g in self.elements}

    def as_fractions(self) -> set:
        L = self.modulus
        return {tuple(Fraction(int(x), L) for x in g) for g in self.elements}

    def rotation_orders(self) -> list:
        """Order of the subgroup of rotations about each coordinate hyperplane."""
        E = self.elements
        nonzero = E != 0
        single = nonzero.sum(axis=1) == 1
        counts = nonzero[single].sum(axis=0)
        return [1 + int(c) for c in counts]


def _row_keys(E: np.ndarray, L: int):
    """Integer keys ordering rows lexicographically; None if they would overflow."""
    n = E.shape[1]
    if L ** n >= 2**62:
        return None
    return E @ (L ** np.arange(n - 1, -1, -1, dtype=np.int64))


def _unique_rows(E: np.ndarray, L: int) -> np.ndarray:
    keys = _row_keys(E, L)
    if keys is None:
        return np.unique(E, axis=0)
    _, idx = np.unique(keys, return_index=True)
    return E[idx]


def _check_cap(t: QuotientType, cap: int):
    size = math.prod(t.orders)
    if size > cap:
        raise ResourceError(
            f"group of order {size} exceeds the enumeration cap {cap}")


def image_group(t: QuotientType, cap: int = DEFAULT_CAP) -> ImageGroup:
    """Enumerate the image coset by coset.

    For each generator g the smallest j >= 1 with j*g in the group H built so
    far is found; H + {0, g, ..., (j-1)g} then lists the enlarged group
    without repetitions.
    """
    _check_cap(t, cap)
    L = lcm_list(t.orders) if t.orders else 1
    n = t.dim
    E = np.zeros((1, n), dtype=np.int64)
    rows = sorted(zip(t.orders, t.weights), key=lambda dr: -(dr[0] // math.gcd(dr[0], *dr[1])))
    for d, row in rows:
        order = d // math.gcd(d, *row)
        if order == 1:
            continue
        gen = np.array(row, dtype=np.int64) * (L // d)
        multiples = (np.arange(order, dtype=np.int64)[:, None] * gen) % L
        if len(E) > 1:
            keys = _row_keys(multiples, L)
            if keys is None:
                present = set(map(tuple, E.tolist()))
                keys = map(tuple, multiples.tolist())
            else:
                present = set(_row_keys(E, L).tolist())
                keys = keys.tolist()
            j = next((i for i, k in enumerate(keys) if i and k in present), order)
            multiples = multiples[:j]
        if len(multiples) > 1:
            E = ((E[:, None, :] + multiples[None, :, :]) % L).reshape(-1, n)
    return ImageGroup(L, E)


def enumerate_image_group(t: QuotientType, cap: int = DEFAULT_CAP) -> set:
    """All exponent tuples (entries in [0, 1)) of the image of the group action."""
    return image_group(t, cap).as_fractions()


def is_free_on_torus(t: QuotientType, cap: int = DEFAULT_CAP) -> bool:
    return len(image_group(t, cap)) == math.prod(t.orders)


def is_small(t: QuotientType, cap: int = DEFAULT_CAP) -> bool:
    """True iff no non-identity element of the image is a rotation about a hyperplane."""
    return all(k == 1 for k in image_group(t, cap).rotation_orders())


def is_normalized(t: QuotientType, cap: int = DEFAULT_CAP) -> bool:
    img = image_group(t, cap)
    return len(img) == math.prod(t.orders) and all(
        k == 1 for k in img.rotation_orders())


def reduced_small_image_order(t: QuotientType, cap: int = DEFAULT_CAP) -> int:
    """|G| / |G_big|, G_big the subgroup generated by rotations about hyperplanes.

    Isomorphic quotient spaces share this number, so it is the invariant the
    move and normalization checks compare.
    """
    img = image_group(t, cap)
    return len(img) // math.prod(img.rotation_orders())


def cyclic_reduction(t: QuotientType, cap: int = DEFAULT_CAP) -> NormalizationResult:
    """Normal form computed from the enumerated image.

    Quotients by the rotation subgroups first (x_j -> x_j**k_j), then reads
    the remaining small group off as a cyclic type.  Fails with
    UnsupportedError when that group is not cyclic.
    """
    img = image_group(t, cap)
    L = img.modulus
    ks = img.rotation_orders()
    # g -> (k_j * g_j) maps G onto the small image with kernel G_big
    images = img.elements * np.array(ks, dtype=np.int64) % L
    m = len(img) // math.prod(ks)
    orders = L // np.gcd(np.gcd.reduce(images, axis=1), L)
    generators = images[orders == m]
    if not len(generators):
        raise UnsupportedError(f"the small image of {t} is not cyclic")
    keys = _row_keys(generators, L)
    if keys is not None:
        gen = tuple(int(x) for x in generators[int(np.argmin(keys))])
    else:
        gen = min(tuple(r) for r in generators.tolist())
    weights = tuple(x * m // L for x in gen)
    return NormalizationResult(QuotientType((m,), (weights,)), MonomialMap(tuple(ks)))


def stabilizer_order_cyclic(t: QuotientType, i: int) -> int:
    """Stabilizer order of a point whose only zero coordinate is ``i`` (0-based)."""
    if not t.is_cyclic:
        raise UnsupportedError("stabilizer formula needs a cyclic type; enumerate instead")
    if not 0 <= i < t.dim:
        raise DomainError(f"coordinate index {i} out of range")
    row = t.weights[0]
    return math.gcd(t.orders[0], *(a for j, a in enumerate(row) if j != i))


# -- moves ------------------------------------------------------------------

class MoveKind(str, enum.Enum):
    PERMUTE_COLUMNS = "PermuteColumns"
    PERMUTE_ROWS = "PermuteRows"
    SCALE_ROW = "ScaleRow"
    MULTIPLY_ROW_COPRIME = "MultiplyRowCoprime"
    SHIFT_ENTRY = "ShiftEntry"
    PUSH_EXPONENT = "PushExponent"
    DROP_TRIVIAL_ROW = "DropTrivialRow"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    perm: tuple = ()
    row: int = 0
    col: int = -1
    factor: int = 1

    @classmethod
    def permute_columns(cls, perm):
        return cls(MoveKind.PERMUTE_COLUMNS, perm=tuple(perm))

    @classmethod
    def permute_rows(cls, perm):
        return cls(MoveKind.PERMUTE_ROWS, perm=tuple(perm))

    @classmethod
    def scale_row(cls, row, factor):
        return cls(MoveKind.SCALE_ROW, row=row, factor=factor)

    @classmethod
    def multiply_row(cls, row, factor):
        return cls(MoveKind.MULTIPLY_ROW_COPRIME, row=row, factor=factor)

    @classmethod
    def shift_entry(cls, row, col, k):
        return cls(MoveKind.SHIFT_ENTRY, row=row, col=col, factor=k)

    @classmethod
    def push_exponent(cls, e, col, row=0):
        return cls(MoveKind.PUSH_EXPONENT, row=row, col=col, factor=e)

    @classmethod
    def drop_trivial_row(cls, row):
        return cls(MoveKind.DROP_TRIVIAL_ROW, row=row)


def _check_row(t, row):
    if not 0 <= row < t.r:
        raise DomainError(f"row index {row} out of range for {t.r} rows")


def _check_col(t, col):
    if not 0 <= col < t.dim:
        raise DomainError(f"column index {col} out of range for {t.dim} columns")


def apply_move(t: QuotientType, m: Move) -> QuotientType:
    """Apply one isomorphism-preserving move; side conditions raise DomainError."""
    orders = list(t.orders)
    rows = [list(row) for row in t.weights]
    kind = MoveKind(m.kind)

    if kind is MoveKind.PERMUTE_COLUMNS:
        if sorted(m.perm) != list(range(t.dim)):
            raise DomainError(f"{list(m.perm)} is not a permutation of the columns")
        rows = [[row[p] for p in m.perm] for row in rows]
    elif kind is MoveKind.PERMUTE_ROWS:
        if sorted(m.perm) != list(range(t.r)):
            raise DomainError(f"{list(m.perm)} is not a permutation of the rows")
        orders = [orders[p] for p in m.perm]
        rows = [rows[p] for p in m.perm]
    elif kind is MoveKind.SCALE_ROW:
        _check_row(t, m.row)
        if m.factor < 1:
            raise DomainError("ScaleRow needs a positive integer factor")
        orders[m.row] *= m.factor
        rows[m.row] = [a * m.factor for a in rows[m.row]]
    elif kind is MoveKind.MULTIPLY_ROW_COPRIME:
        _check_row(t, m.row)
        if math.gcd(m.factor, orders[m.row]) != 1:
            raise DomainError(
                f"MultiplyRowCoprime: factor {m.factor} is not coprime "
                f"to the order {orders[m.row]}")
        rows[m.row] = [a * m.factor for a in rows[m.row]]
    elif kind is MoveKind.SHIFT_ENTRY:
        _check_row(t, m.row)
        _check_col(t, m.col)
        rows[m.row][m.col] += m.factor * orders[m.row]
    elif kind is MoveKind.PUSH_EXPONENT:
        _check_row(t, m.row)
        _check_col(t, m.col)
        e, d, row = m.factor, orders[m.row], rows[m.row]
        if e < 1:
            raise DomainError("PushExponent needs a positive exponent")
        if math.gcd(e, row[m.col]) != 1:
            raise DomainError(f"PushExponent: {e} is not coprime to the pushed entry {row[m.col]}")
        if d % e:
            raise DomainError(f"PushExponent: {e} does not divide the order {d}")
        if any(a % e for j, a in enumerate(row) if j != m.col):
            raise DomainError(f"PushExponent: {e} does not divide the other entries of the row")
        for r in rows:
            r[m.col] *= e
    elif kind is MoveKind.DROP_TRIVIAL_ROW:
        _check_row(t, m.row)
        if orders[m.row] != 1:
            raise DomainError(f"DropTrivialRow: row {m.row} has order {orders[m.row]}, not 1")
        del orders[m.row]
        del rows[m.row]
    return QuotientType(tuple(orders), tuple(tuple(r) for r in rows), dim=t.dim)


def simplify_rows(t: QuotientType) -> QuotientType:
    """Divide every row by its content (inverse ScaleRow), then drop rows of order 1."""
    orders, rows = [], []
    for d, row in zip(t.orders, t.weights):
        g = math.gcd(d, *row)
        if d // g == 1:
            continue
        orders.append(d // g)
        rows.append(tuple(a // g for a in row))
    return QuotientType(tuple(orders), tuple(rows), dim=t.dim)


# -- normalization ----------------------------------------------------------

def normalize_cyclic(t: QuotientType) -> NormalizationResult:
    if not t.is_cyclic:
        raise UnsupportedError("normalize_cyclic handles cyclic types (one row) only")
    n = t.dim
    if n > 3:
        raise UnsupportedError(f"normalize_cyclic supports n <= 3, got n = {n}")
    d, row = t.orders[0], t.weights[0]

    if n == 1:
        k = d // math.gcd(d, row[0])
        return NormalizationResult(QuotientType.cyclic(1, 0), MonomialMap((k,)))

    if n == 2:
        g = math.gcd(d, *row)
        d, a, b = d // g, row[0] // g, row[1] // g
        da, db = math.gcd(d, a), math.gcd(d, b)
        new = QuotientType.cyclic(d // (da * db), a // da, b // db)
        return NormalizationResult(new, MonomialMap((db, da)))

    row = list(row)
    exps = [1] * n
    while True:
        g = math.gcd(d, *row)
        if g > 1:
            d //= g
            row = [a // g for a in row]
        for i in range(n):
            g = math.gcd(d, *(a for j, a in enumerate(row) if j != i))
            if g > 1:
                exps[i] *= g
                row[i] *= g
                d //= g
                row = [a // g for a in row]
                break
        else:
            break
    return NormalizationResult(QuotientType.cyclic(d, *row), MonomialMap(tuple(exps)))


def canonical_cyclic_surface(t: QuotientType) -> QuotientType:
    """Representative (d; 1, q) with q <= q^-1 mod d, for normalized surface types.

    Two normalized cyclic surface types are isomorphic iff their canonical
    forms coincide.
    """
    if not (t.is_cyclic and t.dim == 2):
        raise DomainError(f"{t} is not a cyclic surface type")
    d, (a, b) = t.orders[0], t.weights[0]
    if math.gcd(d, a) != 1 or math.gcd(d, b) != 1:
        raise DomainError(f"{t} is not normalized")
    q = mod_inverse(a, d) * b % d
    if d > 1:
        q = min(q, mod_inverse(q, d))
    return QuotientType.cyclic(d, 1, q)


# -- upper triangular form --------------------------------------------------

def _is_upper_triangular(t: QuotientType) -> bool:
    return all(a == 0 for i, row in enumerate(t.weights) for j, a in enumerate(row) if i > j)


def _triangular_basis(gens: Sequence[Sequence[int]], N: int, n: int) -> list:
    """Upper triangular basis of the lattice spanned by ``gens`` and N*Z^n."""
    pool = [list(g) for g in gens]
    basis = []
    for col in range(n):
        pool.append([N if j == col else 0 for j in range(n)])
        while True:
            live = [v for v in pool if v[col]]
            if len(live) <= 1:
                break
            live.sort(key=lambda v: abs(v[col]))
            p = live[0]
            for v in live[1:]:
                q = v[col] // p[col]
                for j in range(col, n):
                    v[j] -= q * p[j]
        pivot = next(v for v in pool if v[col])
        pool.remove(pivot)
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        basis.append(pivot)
        # N*e_j for j > col is joined later, so entries beyond col may be reduced mod N
        for v in pool:
            for j in range(col + 1, n):
                v[j] %= N
    return basis


def to_upper_triangular(t: QuotientType, cap: int = DEFAULT_CAP):
    """Equivalent type with at most n-1 rows and an upper triangular matrix.

    Returns ``(type, MonomialMap)``; the map only touches the last
    coordinate.  The candidate is checked against the enumerated image and
    an UnsupportedError (carrying the candidate) is raised on mismatch.
    """
    n = t.dim
    t = simplify_rows(t)
    if t.r <= n - 1 and _is_upper_triangular(t):
        return t, MonomialMap.identity(n)

    img = image_group(t, cap)
    N = img.modulus
    gens = [[a * (N // d) for a in row] for d, row in zip(t.orders, t.weights)]
    basis = _triangular_basis(gens, N, n)

    k = N // math.gcd(N, basis[-1][-1])
    orders, rows = [], []
    for h in basis[:-1]:
        g = math.gcd(N, *h)
        e = N // g
        row = [x // g for x in h]
        row[-1] *= k
        orders.append(e)
        rows.append(tuple(row))
    candidate = simplify_rows(QuotientType(tuple(orders), tuple(rows), dim=n))
    exps = MonomialMap((1,) * (n - 1) + (k,))

    expected = {g[:-1] + (g[-1] * k % N,) for g in img.element_set()}
    got = image_group(candidate, cap)
    scale = N // got.modulus if N % got.modulus == 0 else None
    ok = (scale is not None and _is_upper_triangular(candidate) and candidate.r <= n - 1
          and {tuple(x * scale for x in g) for g in got.element_set()} == expected)
    if not ok:
        raise UnsupportedError(
            f"triangular elimination of {t} could not be verified", partial=candidate)
    return candidate, exps
