"""Gamma-orbits of singular spaces, their stabilizers and incidences.

A singular space is stored in lattice coordinates as ``{x : x @ A = v}``
where the columns of ``A`` form the canonical integer basis of the
annihilator of the stabilizer lattice. Because ``x -> x @ A`` maps Z^m onto
Z^c, two spaces with the same stabilizer lie in one Gamma-orbit iff their
``v`` agree modulo 1, so ``(stabilizer, v mod 1)`` is a canonical orbit key.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import floor, lcm

from .linalg import Lattice, annihilator_rows, solve_rational
from .scheme import ProjectionScheme, SchemeError

log = logging.getLogger(__name__)

DEFAULT_MAX_ORBITS = 100_000


class OrbitCapExceeded(RuntimeError):
    """Too many orbits: the scheme most likely has infinitely generated homology."""


def _frac(x: Fraction) -> Fraction:
    return x - floor(x)


@lru_cache(maxsize=None)
def _annihilator(direction: Lattice) -> tuple[tuple[int, ...], ...]:
    """Columns (returned as rows) of the canonical annihilator of a stabilizer."""
    return tuple(map(tuple, annihilator_rows(direction.rows, direction.ambient_rank)))


@dataclass(frozen=True, order=True)
class SingularOrbit:
    """One Gamma-orbit of singular r-spaces."""

    r: int
    direction: Lattice
    offset_class: tuple
    id: int = field(default=-1, compare=False)

    @property
    def key(self):
        return (self.direction, self.offset_class)

    @property
    def annihilator(self) -> tuple[tuple[int, ...], ...]:
        return _annihilator(self.direction)

    def point(self) -> list[Fraction]:
        """A canonical point of the representative space."""
        ann = self.annihilator
        m = self.direction.ambient_rank
        if not ann:
            return [Fraction(0)] * m
        cols = [list(c) for c in zip(*ann)]  # m x c matrix
        x = solve_rational(cols, list(self.offset_class))
        return x

    def with_id(self, i: int) -> "SingularOrbit":
        return SingularOrbit(self.r, self.direction, self.offset_class, i)


def make_orbit(r: int, direction: Lattice, point) -> SingularOrbit:
    ann = _annihilator(direction)
    v = tuple(_frac(sum(Fraction(x) * a for x, a in zip(point, row))) for row in ann)
    return SingularOrbit(r, direction, v)


def orbit_equal(a: SingularOrbit, b: SingularOrbit) -> bool:
    """Same Gamma-orbit: equal stabilizers and offset difference in Gamma + U."""
    if a.direction != b.direction:
        return False
    pa, pb = a.point(), b.point()
    return all(_frac(sum((x - y) * c for x, y, c in zip(pa, pb, row))) == 0 for row in a.annihilator)


def contains(container: SingularOrbit, inner: SingularOrbit, inner_point=None) -> bool:
    """Whether some translate of ``inner`` lies in the representative of ``container``."""
    ann = container.annihilator
    for row in inner.direction.rows:
        if any(sum(x * a for x, a in zip(row, arow)) for arow in ann):
            return False
    x = inner.point() if inner_point is None else inner_point
    return all(_frac(sum(xi * a for xi, a in zip(x, arow))) == v for arow, v in zip(ann, container.offset_class))


def hyperplane_orbit(scheme: ProjectionScheme, h) -> SingularOrbit:
    direction = scheme.stabilizer(h.directions)
    return make_orbit(scheme.n - 1, direction, scheme.lattice_coords(h.offset))


def stabilizer(scheme: ProjectionScheme, directions) -> Lattice:
    return scheme.stabilizer(directions)


# ---------------------------------------------------------------------------
# intersections


def intersect_orbits(a: SingularOrbit, b: SingularOrbit) -> list[SingularOrbit]:
    """All Gamma-orbit classes of spaces (A + g) cap B, g in Gamma, of dimension r_b - 1.

    ``a`` must be a hyperplane orbit (codimension one); parallel or
    containing configurations give the empty list.
    """
    m = a.direction.ambient_rank
    ann_a = a.annihilator
    if not b.direction.rank:
        return []
    if all(not any(sum(x * y for x, y in zip(row, arow)) for arow in ann_a) for row in b.direction.rows):
        return []  # b parallel to (contained in the direction of) a
    new_dir = a.direction.intersection(b.direction)
    ann_new = _annihilator(new_dir)
    # x @ [A_a | A_b] = [v_a + g @ A_a | v_b];  v_new = x @ A_new
    ann_b = b.annihilator
    cols = [list(r) for r in zip(*(ann_a + ann_b))]  # m x (c_a + c_b)
    ca = len(ann_a)
    # rows of K: for each unit rhs e_i, the value x_i @ A_new
    k_rows = []
    for i in range(len(ann_a) + len(ann_b)):
        rhs = [0] * (len(ann_a) + len(ann_b))
        rhs[i] = 1
        x = solve_rational(cols, rhs)
        if x is None:
            raise ArithmeticError("intersection system not solvable; configuration not transverse")
        k_rows.append([sum(xi * a_ for xi, a_ in zip(x, arow)) for arow in ann_new])
    cn = len(ann_new)
    base = [sum(Fraction(a.offset_class[i]) * k_rows[i][j] for i in range(ca))
            + sum(Fraction(b.offset_class[i]) * k_rows[ca + i][j] for i in range(len(ann_b))) for j in range(cn)]
    # effect of a lattice shift g: g @ A_a @ K_top
    g_rows = [[sum(ann_a[i][t] * k_rows[i][j] for i in range(ca)) for j in range(cn)] for t in range(m)]
    den = lcm(*(x.denominator for x in base), *(x.denominator for r in g_rows for x in r))
    base_i = [int(x * den) for x in base]
    g_i = [[int(x * den) for x in r] for r in g_rows]
    lattice = a.direction + b.direction
    if lattice.rank != m:
        raise OrbitCapExceeded("stabilizers do not span Gamma: infinitely many intersection orbits")
    diag = [lattice.rows[i][i] for i in range(m)]
    seen = set()
    # enumerate the HNF box incrementally
    acc = [list(base_i)]
    for t in range(m):
        nxt = []
        step = g_i[t]
        for vec in acc:
            nxt.append(vec)
            for c in range(1, diag[t]):
                nxt.append([v + c * s for v, s in zip(vec, step)])
        acc = nxt
    for vec in acc:
        seen.add(tuple(v % den for v in vec))
    r = b.r - 1
    return sorted(SingularOrbit(r, new_dir, tuple(Fraction(v, den) for v in key)) for key in seen)


# ---------------------------------------------------------------------------
# symmetry


def close_group(generators, m: int, limit: int = 100_000) -> list[tuple]:
    ident = tuple(tuple(int(i == j) for j in range(m)) for i in range(m))
    gens = [tuple(map(tuple, g)) for g in generators]
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = tuple(tuple(sum(g[i][k] * h[k][j] for k in range(m)) for j in range(m)) for i in range(m))
                if p not in group:
                    group.add(p)
                    nxt.append(p)
                    if len(group) > limit:
                        raise SchemeError("point group too large or infinite")
        frontier = nxt
    return sorted(group)


def act(g, orbit: SingularOrbit) -> SingularOrbit:
    """Image of an orbit under x -> x @ g."""
    m = len(g)
    rows = [[sum(r[k] * g[k][j] for k in range(m)) for j in range(m)] for r in orbit.direction.rows]
    direction = Lattice(m, rows)
    x = orbit.point()
    y = [sum(x[k] * g[k][j] for k in range(m)) for j in range(m)]
    return make_orbit(orbit.r, direction, y)


# ---------------------------------------------------------------------------
# complex


@dataclass
class SingularComplex:
    """All orbit classes by dimension plus containment incidences."""

    scheme_name: str
    n: int
    rank: int
    orbits: dict  # r -> list[SingularOrbit], sorted, ids = positions
    incidence: dict  # (k, i, r) -> list of ids j at level r contained in orbit i of level k

    def L(self, r: int) -> int:
        return len(self.orbits.get(r, []))

    def inside(self, k: int, i: int, r: int) -> list[int]:
        return self.incidence[(k, i, r)]

    def L_in(self, k: int, i: int, r: int) -> int:
        return len(self.incidence[(k, i, r)])

    def counts(self) -> dict:
        out = {f"L{r}": self.L(r) for r in sorted(self.orbits)}
        for k in sorted(self.orbits):
            for r in range(k):
                out[f"sum_L{r}_in_{k}"] = sum(self.L_in(k, i, r) for i in range(self.L(k)))
        return out

    def dump(self) -> dict:
        """Structured text-friendly dump for regression diffing."""
        levels = {}
        for r, orbs in sorted(self.orbits.items()):
            levels[str(r)] = [
                {
                    "id": o.id,
                    "stabilizer": [list(row) for row in o.direction.rows],
                    "offset_class": [str(x) for x in o.offset_class],
                    "contains": {str(rr): self.incidence[(r, o.id, rr)] for rr in range(r)},
                }
                for o in orbs
            ]
        return {"scheme": self.scheme_name, "counts": self.counts(), "levels": levels}


def generate(scheme: ProjectionScheme, max_orbits: int = DEFAULT_MAX_ORBITS, use_symmetry: bool = True) -> SingularComplex:
    """Close the hyperplane family under intersection and record incidences."""
    n, m = scheme.n, scheme.rank
    hyper = {}
    for h in scheme.hyperplanes:
        o = hyperplane_orbit(scheme, h)
        if o.direction.rank != (n - 1) * scheme.nu:
            raise SchemeError(f"hyperplane stabilizer has rank {o.direction.rank}, expected {(n - 1) * scheme.nu}")
        hyper[o.key] = o
    group = close_group(scheme.point_group, m) if (use_symmetry and scheme.point_group) else None
    if group:
        for o in list(hyper.values()):
            for g in group:
                img = act(g, o)
                if img.key not in hyper:
                    raise SchemeError("point group does not preserve the hyperplane family")
    hyper_list = sorted(hyper.values())
    levels = {n - 1: hyper_list}
    for r in range(n - 2, -1, -1):
        upper = levels[r + 1]
        reps = _orbit_reps(upper, group) if group else upper
        found = {}
        for b in reps:
            for a in hyper_list:
                for o in intersect_orbits(a, b):
                    found.setdefault(o.key, o)
                if len(found) > max_orbits:
                    raise OrbitCapExceeded(f"more than {max_orbits} orbits of singular {r}-spaces")
        if group:
            for o in list(found.values()):
                for g in group:
                    img = act(g, o)
                    found.setdefault(img.key, img)
            if len(found) > max_orbits:
                raise OrbitCapExceeded(f"more than {max_orbits} orbits of singular {r}-spaces")
        for o in found.values():
            if o.direction.rank != r * scheme.nu:
                raise SchemeError(f"singular {r}-space with stabilizer rank {o.direction.rank}; expected {r * scheme.nu}")
        levels[r] = sorted(found.values())
        log.info("level %d: %d orbits", r, len(levels[r]))
    levels = {r: [o.with_id(i) for i, o in enumerate(orbs)] for r, orbs in levels.items()}
    incidence = {}
    points = {r: [o.point() for o in orbs] for r, orbs in levels.items()}
    for k in range(n - 1, 0, -1):
        for i, cont in enumerate(levels[k]):
            for r in range(k):
                incidence[(k, i, r)] = [
                    j for j, inner in enumerate(levels[r]) if contains(cont, inner, points[r][j])
                ]
    return SingularComplex(scheme.name, n, m, levels, incidence)


def _orbit_reps(orbits, group):
    seen = set()
    reps = []
    for o in orbits:
        if o.key in seen:
            continue
        reps.append(o)
        for g in group:
            seen.add(act(g, o).key)
    return reps
