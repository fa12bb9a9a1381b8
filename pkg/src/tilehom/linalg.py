"""Exact integer linear algebra: Hermite and Smith normal forms, kernels,
cokernels, lattices, exterior powers and reductions to Z/q.

Row-vector convention throughout: a matrix with ``r`` rows and ``c`` columns
is the map ``Z^r -> Z^c, x -> x @ M``. Images are spanned by rows, kernels are
left kernels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .abelian import FgAbelianGroup, factorize

__all__ = [
    "IntMatrix",
    "LatticeMap",
    "Lattice",
    "hnf",
    "snf",
    "cokernel",
    "kernel",
    "lattice_ops",
    "exterior_power",
    "reduce_ring",
    "det",
    "rank_q",
    "rank_mod_p",
    "snf_factors",
    "left_kernel_rows",
    "hnf_rows",
    "submodule_order_mod",
    "kernel_rows_mod",
    "solve_rational",
    "annihilator_rows",
    "transpose_rows",
    "lattice_quotient",
    "RingError",
]


class RingError(ValueError):
    """Raised for moduli that are neither 0, a prime, nor a prime power."""


# ---------------------------------------------------------------------------
# matrices


class IntMatrix:
    """Immutable integer matrix. ``rows`` or ``cols`` may be zero."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            if not data:
                raise ValueError("column count required for a matrix without rows")
            cols = len(data[0])
        if any(len(row) != cols for row in data):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r}, cols={self.cols})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix(_matmul(self.data, other.data, other.cols), other.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix([list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)], self.rows)

    T = property(transpose)

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return IntMatrix(self.data + other.data, self.cols)


def _matmul(a, b, bcols: int) -> list[list[int]]:
    bt = list(zip(*b)) if b else [()] * bcols
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def det(rows) -> int:
    """Determinant of a square integer matrix (Bareiss fraction-free elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pk - mik * row_k[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_core(rows: list[list[int]], ncols: int, transform: list[list[int]] | None):
    """In-place row-style HNF. Returns the rank; zero rows end up last."""
    m = len(rows)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            piv, best = -1, 0
            for i in range(r, m):
                v = rows[i][c]
                if v and (piv < 0 or abs(v) < best):
                    piv, best = i, abs(v)
            if piv < 0:
                break
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
                if transform is not None:
                    transform[r], transform[piv] = transform[piv], transform[r]
            prow = rows[r]
            p = prow[c]
            clean = True
            for i in range(r + 1, m):
                v = rows[i][c]
                if v:
                    q = v // p
                    row = rows[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] -= q * prow[j]
                    if transform is not None:
                        t, tp = transform[i], transform[r]
                        for j, x in enumerate(tp):
                            if x:
                                t[j] -= q * x
                    if row[c]:
                        clean = False
            if clean:
                break
        if piv < 0 and rows[r][c] == 0:
            continue
        prow = rows[r]
        if prow[c] < 0:
            rows[r] = prow = [-x for x in prow]
            if transform is not None:
                transform[r] = [-x for x in transform[r]]
        p = prow[c]
        for i in range(r):
            v = rows[i][c]
            q = v // p
            if q:
                row = rows[i]
                for j in range(c, ncols):
                    if prow[j]:
                        row[j] -= q * prow[j]
                if transform is not None:
                    t, tp = transform[i], transform[r]
                    for j, x in enumerate(tp):
                        if x:
                            t[j] -= q * x
        r += 1
    return r


def hnf_rows(rows, ncols: int) -> list[list[int]]:
    """Nonzero rows of the row-style HNF of the lattice spanned by ``rows``."""
    work = [list(r) for r in rows if any(r)]
    rank = _hnf_core(work, ncols, None)
    return work[:rank]


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``h`` and unimodular ``u`` with ``u @ m == h``.

    Pivots are positive, entries above each pivot lie in ``[0, pivot)``,
    zero rows come last.
    """
    work = m.tolist()
    u = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
    _hnf_core(work, m.cols, u)
    return IntMatrix(work, m.cols), IntMatrix(u, m.rows)


def left_kernel_rows(rows, ncols: int) -> list[list[int]]:
    """HNF basis of ``{x : x @ M == 0}`` for the matrix with the given rows."""
    nrows = len(rows)
    if nrows == 0:
        return []
    work = [list(r) for r in rows]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    rank = _hnf_core(work, ncols, u)
    return hnf_rows(u[rank:], nrows)


# ---------------------------------------------------------------------------
# Smith normal form


def _fix_chain(diag: list[int]) -> list[int]:
    """Turn a list of nonzero diagonal entries into a divisibility chain."""
    d = [abs(x) for x in diag]
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] // g * d[j]
    return d


def _diagonalize(a: list[list[int]], nrows: int, ncols: int, left, right) -> list[int]:
    """In-place diagonalisation by min-pivot elimination; returns the diagonal."""
    diag = []
    t = 0
    while t < min(nrows, ncols):
        # pivot: smallest nonzero entry in the remaining block
        best, pi, pj = 0, -1, -1
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (pi < 0 or abs(v) < best):
                    best, pi, pj = abs(v), i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if pi < 0:
            break
        if pi != t:
            a[t], a[pi] = a[pi], a[t]
            if left is not None:
                left[t], left[pi] = left[pi], left[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            if right is not None:
                for row in right:
                    row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nrows):
                v = a[i][t]
                if v:
                    q = v // p
                    row, prow = a[i], a[t]
                    for j in range(t, ncols):
                        if prow[j]:
                            row[j] -= q * prow[j]
                    if left is not None:
                        lr, lp = left[i], left[t]
                        for j, x in enumerate(lp):
                            if x:
                                lr[j] -= q * x
                    if row[t]:
                        done = False
            prow = a[t]
            for j in range(t + 1, ncols):
                v = prow[j]
                if v:
                    q = v // p
                    for row in a[t:]:
                        if row[t]:
                            row[j] -= q * row[t]
                    if right is not None:
                        for row in right:
                            if row[t]:
                                row[j] -= q * row[t]
                    if prow[j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t to the pivot
            best, bi, bj = abs(a[t][t]), t, t
            for i in range(t + 1, nrows):
                v = a[i][t]
                if v and abs(v) < best:
                    best, bi, bj = abs(v), i, t
            for j in range(t + 1, ncols):
                v = a[t][j]
                if v and abs(v) < best:
                    best, bi, bj = abs(v), t, j
            if bi != t:
                a[t], a[bi] = a[bi], a[t]
                if left is not None:
                    left[t], left[bi] = left[bi], left[t]
            if bj != t:
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
                if right is not None:
                    for row in right:
                        row[t], row[bj] = row[bj], row[t]
        diag.append(a[t][t])
        t += 1
    return diag


def snf_factors(rows, ncols: int) -> list[int]:
    """Nonzero Smith invariants (a divisibility chain, 1s included)."""
    h = hnf_rows(rows, ncols)
    if not h:
        return []
    diag = _diagonalize(h, len(h), ncols, None, None)
    return _fix_chain(diag)


def snf(m: IntMatrix) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith normal form with transforms: ``left @ m @ right`` is diagonal.

    The diagonal is ``factors`` followed by zeros; ``factors`` is a
    divisibility chain of positive integers.
    """
    a = m.tolist()
    left = [[int(i == j) for j in range(m.rows)] for i in range(m.rows)]
    right = [[int(i == j) for j in range(m.cols)] for i in range(m.cols)]
    diag = _diagonalize(a, m.rows, m.cols, left, right)
    # enforce divisibility with 2x2 unimodular moves on the diagonal
    n = len(diag)
    for i in range(n):
        for j in range(i + 1, n):
            x, y = a[i][i], a[j][j]
            g = gcd(x, y)
            if g == abs(x) and x > 0:
                continue
            # [[s, t], [-y/g, x/g]] on rows, [[1, -t*y/g], [1, s*x/g]] on cols
            s, t = _ext_gcd_coeffs(x, y)
            xg, yg = x // g, y // g
            _rowcomb(left, i, j, s, t, -yg, xg)
            _rowcomb(a, i, j, s, t, -yg, xg)
            _colcomb(right, i, j, 1, -t * yg, 1, s * xg)
            _colcomb(a, i, j, 1, -t * yg, 1, s * xg)
    for i in range(n):
        if a[i][i] < 0:
            a[i] = [-v for v in a[i]]
            left[i] = [-v for v in left[i]]
    factors = [a[i][i] for i in range(n)]
    return factors, IntMatrix(left, m.rows), IntMatrix(right, m.cols)


def _ext_gcd_coeffs(a: int, b: int) -> tuple[int, int]:
    """s, t with s*a + t*b == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


def _rowcomb(a, i, j, p, q, r, s):
    ri, rj = a[i], a[j]
    a[i] = [p * x + q * y for x, y in zip(ri, rj)]
    a[j] = [r * x + s * y for x, y in zip(ri, rj)]


def _colcomb(a, i, j, p, q, r, s):
    # new col i = p*col_i + r*col_j ; new col j = q*col_i + s*col_j
    for row in a:
        x, y = row[i], row[j]
        row[i], row[j] = p * x + r * y, q * x + s * y


# ---------------------------------------------------------------------------
# ranks


def rank_q(rows, ncols: int | None = None) -> int:
    """Rank over Q (fraction-free elimination with content removal)."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return 0
    ncols = len(work[0]) if ncols is None else ncols
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        p = prow[c]
        for i in range(rank + 1, len(work)):
            v = work[i][c]
            if v:
                row = [p * x - v * y for x, y in zip(work[i], prow)]
                g = 0
                for x in row:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                work[i] = [x // g for x in row] if g > 1 else row
        rank += 1
        if rank == len(work):
            break
    return rank


def rank_mod_p(rows, p: int, ncols: int | None = None) -> int:
    """Rank over F_p."""
    work = [[x % p for x in r] for r in rows]
    work = [r for r in work if any(r)]
    if not work:
        return 0
    ncols = len(work[0]) if ncols is None else ncols
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = pow(work[rank][c], -1, p)
        prow = work[rank] = [x * inv % p for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c]:
                v = work[i][c]
                work[i] = [(x - v * y) % p for x, y in zip(work[i], prow)]
        rank += 1
        if rank == len(work):
            break
    return rank


# ---------------------------------------------------------------------------
# modular submodules (q = p^k): lattices containing q Z^N


def _prime_power(q: int) -> tuple[int, int]:
    f = factorize(q)
    if len(f) != 1:
        raise RingError(f"modulus {q} is not a prime power")
    (p, k), = f.items()
    return p, k


def _howell_pivots(rows, ncols: int, q: int):
    """Echelon form over Z/q (q = p^k) with closure rows; yields (col, valuation, row)."""
    p, k = _prime_power(q)
    work = [[x % q for x in r] for r in rows]
    work = [r for r in work if any(r)]
    out = []
    for c in range(ncols):
        piv, best = -1, k
        for i, row in enumerate(work):
            v = row[c]
            if v:
                val = 0
                while v % p == 0:
                    v //= p
                    val += 1
                if val < best:
                    piv, best = i, val
                    if val == 0:
                        break
        if piv < 0:
            out.append((c, k, None))
            continue
        prow = work.pop(piv)
        unit = prow[c] // p**best
        inv = pow(unit, -1, q)
        prow = [x * inv % q for x in prow]
        pb = p**best
        rest = []
        for row in work:
            v = row[c]
            if v:
                f = v // pb
                row = [(x - f * y) % q for x, y in zip(row, prow)]
            if any(row):
                rest.append(row)
        if best > 0:
            closure = [x * (q // pb) % q for x in prow]
            if any(closure):
                rest.append(closure)
        work = rest
        out.append((c, best, prow))
    return out


def submodule_order_mod(rows, ncols: int, q: int) -> int:
    """Number of elements of the Z/q-submodule of (Z/q)^ncols spanned by ``rows``."""
    if q == 1:
        return 1
    p, k = _prime_power(q)
    order = 1
    for _, val, _ in _howell_pivots(rows, ncols, q):
        order *= p ** (k - val)
    return order


def kernel_rows_mod(rows, ncols: int, q: int) -> list[list[int]]:
    """Integer generators of ``{x in Z^r : x @ M in q Z^c}`` (contains q Z^r)."""
    r = len(rows)
    stacked = [list(row) for row in rows] + [[q * int(i == j) for j in range(ncols)] for i in range(ncols)]
    ker = left_kernel_rows(stacked, ncols)
    gens = [row[:r] for row in ker]
    gens += [[q * int(i == j) for j in range(r)] for i in range(r)]
    return hnf_rows(gens, r)


# ---------------------------------------------------------------------------
# rational solving


def solve_rational(rows, rhs) -> list[Fraction] | None:
    """A particular solution x of ``x @ M == rhs`` over Q, or None."""
    nrows = len(rows)
    ncols = len(rhs)
    # transpose system: M^T x^T = rhs^T
    aug = [[Fraction(rows[i][j]) for i in range(nrows)] + [Fraction(rhs[j])] for j in range(ncols)]
    pivots = []
    r = 0
    for c in range(nrows):
        piv = next((i for i in range(r, ncols) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(ncols):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][-1] for i in range(r, ncols)):
        return None
    x = [Fraction(0)] * nrows
    for i, c in enumerate(pivots):
        x[c] = aug[i][-1]
    return x


# ---------------------------------------------------------------------------
# maps and lattices


@dataclass(frozen=True)
class LatticeMap:
    """Integer matrix between based free modules, with labels for its ends."""

    matrix: IntMatrix
    source_label: str = "source"
    target_label: str = "target"

    @property
    def source_rank(self) -> int:
        return self.matrix.rows

    @property
    def target_rank(self) -> int:
        return self.matrix.cols

    @classmethod
    def from_rows(cls, rows, ncols: int, source_label="source", target_label="target") -> "LatticeMap":
        return cls(IntMatrix(rows, ncols), source_label, target_label)


def cokernel(f: LatticeMap | IntMatrix) -> FgAbelianGroup:
    """target / image(f) in invariant factor form."""
    m = f.matrix if isinstance(f, LatticeMap) else f
    facs = snf_factors(m.data, m.cols)
    return FgAbelianGroup.from_orders(m.cols - len(facs), facs)


class Lattice:
    """A subgroup of Z^ambient_rank stored by its canonical HNF basis."""

    __slots__ = ("ambient_rank", "basis", "_key")

    def __init__(self, ambient_rank: int, rows=(), *, canonical: bool = False):
        basis = [list(r) for r in rows] if canonical else hnf_rows(rows, ambient_rank)
        self.ambient_rank = ambient_rank
        self.basis = IntMatrix(basis, ambient_rank)
        self._key = (ambient_rank, self.basis.data)

    @classmethod
    def full(cls, n: int) -> "Lattice":
        return cls(n, IntMatrix.identity(n).data, canonical=True)

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, (), canonical=True)

    @property
    def rank(self) -> int:
        return self.basis.rows

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self.basis.data

    def __eq__(self, other):
        return isinstance(other, Lattice) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        return f"Lattice({self.ambient_rank}, {self.basis.tolist()!r})"

    def contains(self, vec) -> bool:
        if not self.rank:
            return not any(vec)
        return _int_member(self.basis.data, vec)

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(r) for r in other.rows)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.ambient_rank, self.rows + other.rows)

    def intersection(self, other: "Lattice") -> "Lattice":
        if not self.rank or not other.rank:
            return Lattice.zero(self.ambient_rank)
        stacked = list(self.rows) + list(other.rows)
        ker = left_kernel_rows(stacked, self.ambient_rank)
        a = self.rows
        vecs = [[sum(k[i] * a[i][j] for i in range(len(a))) for j in range(self.ambient_rank)] for k in ker]
        return Lattice(self.ambient_rank, vecs)

    def saturation(self) -> "Lattice":
        """Q-span intersected with Z^n."""
        if not self.rank:
            return self
        ann = annihilator_rows(self.rows, self.ambient_rank)
        if not ann:
            return Lattice.full(self.ambient_rank)
        return Lattice(self.ambient_rank, left_kernel_rows(transpose_rows(ann), len(ann)), canonical=True)

    def is_saturated(self) -> bool:
        return self == self.saturation()

    def index_in(self, other: "Lattice") -> int:
        """[other : self] for self a full-rank sublattice of other."""
        q = lattice_quotient(other, self)
        if q.free_rank:
            raise ValueError("infinite index")
        return q.torsion_order

    def coset_reps(self):
        """Representatives of Z^n / self (self of full rank)."""
        if self.rank != self.ambient_rank:
            raise ValueError("infinitely many cosets")
        diag = [self.basis.data[i][i] for i in range(self.rank)]
        return _box(diag)


def _box(diag):
    if not diag:
        yield ()
        return
    for head in range(diag[0]):
        for tail in _box(diag[1:]):
            yield (head,) + tail


def _int_member(basis, vec) -> bool:
    # basis is in HNF: reduce greedily by pivots
    v = list(vec)
    for row in basis:
        c = next(j for j, x in enumerate(row) if x)
        if v[c] % row[c]:
            return False
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def transpose_rows(rows) -> list[list[int]]:
    return [list(c) for c in zip(*rows)]


def annihilator_rows(rows, n: int) -> list[list[int]]:
    """Basis (as rows) of the saturated lattice ``{y in Z^n : M y == 0}``."""
    if not rows:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    cols = [list(c) for c in zip(*rows)]
    return left_kernel_rows(cols, len(rows))


def lattice_quotient(a: Lattice, b: Lattice) -> FgAbelianGroup:
    """(a + b) / b as an abelian group."""
    s = a + b
    if not b.rank:
        return FgAbelianGroup.free(s.rank)
    # coordinates of b's basis in the basis of s
    coords = []
    for row in b.rows:
        x = solve_rational(s.rows, row)
        coords.append([int(v) for v in x])
    facs = snf_factors(coords, s.rank)
    return FgAbelianGroup.from_orders(s.rank - len(facs), facs)


def kernel(f: LatticeMap | IntMatrix) -> Lattice:
    """Left kernel ``{x : x @ matrix == 0}`` in canonical form."""
    m = f.matrix if isinstance(f, LatticeMap) else f
    return Lattice(m.rows, left_kernel_rows(m.data, m.cols), canonical=True) if m.rows else Lattice.zero(0)


def lattice_ops(a: Lattice, b: Lattice) -> dict:
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient ranks differ")
    return {
        "intersection": a.intersection(b),
        "sum": a + b,
        "quotient": lattice_quotient(a, b),
        "saturation": a.saturation(),
    }


# ---------------------------------------------------------------------------
# exterior powers


def exterior_power(k: int, f: LatticeMap | IntMatrix) -> LatticeMap:
    """k-th compound matrix; bases are lexicographically ordered k-subsets."""
    if k < 0:
        raise ValueError("negative exterior power")
    m = f.matrix if isinstance(f, LatticeMap) else f
    rsub = list(combinations(range(m.rows), k))
    csub = list(combinations(range(m.cols), k))
    data = m.data
    out = [[det([[data[i][j] for j in cs] for i in rs]) for cs in csub] for rs in rsub]
    labels = (f.source_label, f.target_label) if isinstance(f, LatticeMap) else ("source", "target")
    return LatticeMap(IntMatrix(out, len(csub)), f"L{k}({labels[0]})", f"L{k}({labels[1]})")


# ---------------------------------------------------------------------------
# reductions


def reduce_ring(f: LatticeMap | IntMatrix, modulus: int) -> tuple[int, int | None]:
    """Rank of ``f`` over Q (modulus 0), F_p, or Z/p^k.

    For prime powers (primes included) the second entry is the number of
    elements of the cokernel of the reduced map, else None.
    """
    m = f.matrix if isinstance(f, LatticeMap) else f
    if modulus == 0:
        return rank_q(m.data, m.cols), None
    if modulus < 2:
        raise RingError(f"invalid modulus {modulus}")
    p, k = _prime_power(modulus)
    facs = snf_factors(m.data, m.cols)
    count = modulus ** (m.cols - len(facs))
    for d in facs:
        count *= gcd(d, modulus)
    # rank over Z/p^k: number of invariants that are units mod p
    rank = sum(1 for d in facs if d % p)
    return rank, count
