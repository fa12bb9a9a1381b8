"""Canonical projection schemes: internal space V over a real number field,
the lattice Gamma = Z^(n+d) embedded in V, and the family of singular
hyperplanes.

All decisions are made in *lattice coordinates*: the Q-flattening of the
internal projection is a Q-isomorphism Q^(n+d) -> Q^(n*deg), so every point
of V with field coordinates has unique rational coordinates with respect to
the lattice basis, and Gamma becomes Z^(n+d).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

from .linalg import Lattice, annihilator_rows, left_kernel_rows, rank_q, solve_rational, transpose_rows
from .numberfield import Element, NumberField

FieldVector = tuple  # tuple[Element, ...]


class SchemeError(ValueError):
    """An invalid projection scheme."""


@dataclass(frozen=True)
class Hyperplane:
    """Affine hyperplane ``offset + K-span(directions)`` of V."""

    directions: tuple  # tuple[FieldVector, ...], n - 1 of them
    offset: FieldVector


def flatten(field_: NumberField, v: FieldVector) -> list[Fraction]:
    """Coordinates of v in the Q-basis {t^j e_i}, coordinate-major."""
    out = []
    for x in v:
        out.extend(x)
    return out


def normal_to_directions(field_: NumberField, normal: FieldVector) -> tuple:
    """K-basis of the orthogonal complement of ``normal`` (standard dot product)."""
    n = len(normal)
    piv = next((i for i, x in enumerate(normal) if any(x)), None)
    if piv is None:
        raise SchemeError("zero normal vector")
    inv = field_.inv(normal[piv])
    dirs = []
    for j in range(n):
        if j == piv:
            continue
        v = [field_.zero() for _ in range(n)]
        v[j] = field_.one()
        v[piv] = field_.neg(field_.mul(normal[j], inv))
        dirs.append(tuple(v))
    return tuple(dirs)


def _clear_denominators(row) -> list[int]:
    den = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [int(Fraction(x) * den) for x in row]


@dataclass(frozen=True, eq=False)
class ProjectionScheme:
    name: str
    d: int
    n: int
    field: NumberField
    pi_int: tuple  # m columns, each a FieldVector of length n
    hyperplanes: tuple  # tuple[Hyperplane, ...]
    point_group: tuple = ()  # m x m integer matrices acting by x -> x @ g
    expected: dict | None = None
    params: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, ProjectionScheme):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key()[:4])

    def _key(self):
        return (self.name, self.d, self.n, self.field.min_poly, self.pi_int, self.hyperplanes,
                tuple(tuple(map(tuple, g)) for g in self.point_group), repr(self.expected), repr(sorted(self.params.items())))

    @property
    def rank(self) -> int:
        return self.n + self.d

    @property
    def nu(self) -> int:
        return (self.n + self.d) // self.n

    def without_symmetry(self) -> "ProjectionScheme":
        return ProjectionScheme(self.name, self.d, self.n, self.field, self.pi_int, self.hyperplanes,
                                (), self.expected, dict(self.params))

    # ------------------------------------------------------------------
    # validation

    def validate(self) -> "ProjectionScheme":
        n, d, m = self.n, self.d, self.rank
        if n < 1 or d < 1:
            raise SchemeError("dimensions must be positive")
        if (n + d) % n:
            raise SchemeError(f"nu=(n+d)/n not an integer: ({n}+{d})/{n}")
        deg = self.field.degree
        if len(self.pi_int) != m or any(len(col) != n for col in self.pi_int):
            raise SchemeError(f"malformed field data: pi_int must have {m} columns of {n} field elements")
        for col in self.pi_int:
            for x in col:
                if len(x) != deg:
                    raise SchemeError(f"malformed field data: element {x} has wrong length for degree {deg}")
        if n * deg != m:
            if rank_q(self._flat_basis_int(), n * deg) < m:
                raise SchemeError("projection not injective on the lattice")
            raise SchemeError(
                f"projection not injective on the lattice in a supported way: n*deg={n * deg} must equal n+d={m}")
        if rank_q(self._flat_basis_int(), m) < m:
            raise SchemeError("projection not injective on the lattice")
        if not self.hyperplanes:
            raise SchemeError("hyperplane normals do not span V: no hyperplanes given")
        for h in self.hyperplanes:
            if len(h.directions) != n - 1 or len(h.offset) != n:
                raise SchemeError("malformed hyperplane")
            for v in h.directions + (h.offset,):
                if len(v) != n or any(len(x) != deg for x in v):
                    raise SchemeError("malformed field data in hyperplane")
            if rank_q(self.direction_rows(h.directions), m) != (n - 1) * deg:
                raise SchemeError("hyperplane directions are not linearly independent")
        ann = []
        for h in self.hyperplanes:
            ann.extend(annihilator_rows(self.direction_rows(h.directions), m))
        if rank_q(ann, m) != m:
            raise SchemeError("hyperplane normals do not span V")
        for g in self.point_group:
            if len(g) != m or any(len(r) != m for r in g):
                raise SchemeError("point group matrix has wrong shape")
            from .linalg import det

            if abs(det(g)) != 1:
                raise SchemeError("point group matrix is not unimodular")
        return self

    # ------------------------------------------------------------------
    # lattice coordinates

    def _flat_basis_int(self):
        return [_clear_denominators(flatten(self.field, col)) for col in self.pi_int]

    @cached_property
    def _flat_basis(self) -> list[list[Fraction]]:
        return [flatten(self.field, col) for col in self.pi_int]

    def lattice_coords(self, v: FieldVector) -> list[Fraction]:
        """Rational coordinates of a point of V in the lattice basis."""
        x = solve_rational(self._flat_basis, flatten(self.field, v))
        if x is None:
            raise SchemeError("vector outside the Q-span of the lattice")
        return x

    def direction_rows(self, directions) -> list[list[int]]:
        """Integer rows spanning the Q-subspace K-span(directions) in lattice coordinates."""
        rows = []
        gen_powers = [self.field.one()]
        for _ in range(self.field.degree - 1):
            gen_powers.append(self.field.mul(gen_powers[-1], self.field.gen()))
        for v in directions:
            for tp in gen_powers:
                w = tuple(self.field.mul(tp, x) for x in v)
                rows.append(_clear_denominators(self.lattice_coords(w)))
        return rows

    def stabilizer(self, directions) -> Lattice:
        """Lattice vectors whose projection lies in K-span(directions)."""
        m = self.rank
        rows = self.direction_rows(directions)
        if not rows or not any(any(r) for r in rows):
            return Lattice.zero(m)
        ann = annihilator_rows(rows, m)
        if not ann:
            return Lattice.full(m)
        return Lattice(m, left_kernel_rows(transpose_rows(ann), len(ann)), canonical=True)
