from fractions import Fraction
from itertools import combinations, product

import pytest
import sympy

from tilehom import catalog
from tilehom.singular import contains, make_orbit, orbit_equal
from conftest import complex_for

PLANAR = ["ammann-beenker", "penrose", "generalized-penrose", "ttt", "octagonal-b"]


def brute_points(scheme, box=3):
    """Point classes in Q^4 / Z^4 of pairwise line intersections, by enumerating translates.

    Works directly in lattice coordinates with sympy rationals: a singular line is
    p + U + g (U the Q-span of its directions, g in Z^4) and every intersection
    point is reduced modulo Z^4.
    """
    lines = [(sympy.Matrix(scheme.direction_rows(h.directions)),
              sympy.Matrix([scheme.lattice_coords(h.offset)]))
             for h in scheme.hyperplanes]
    found = set()
    for (ua, pa), (ub, pb) in combinations(lines, 2):
        m = ua.col_join(ub)
        if m.rank() < 4:
            continue  # parallel
        minv = m.inv()
        k = ua.rows
        for g in product(range(-box, box + 1), repeat=4):
            # pa + g + s ua = pb + t ub  =>  [s, -t] @ [ua; ub] = pb - pa - g
            coeff = (pb - pa - sympy.Matrix([g])) * minv
            t = -coeff[:, k:]
            x = pb + t * ub
            found.add(tuple(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) % 1 for v in x))
    return found


@pytest.mark.parametrize("name", PLANAR)
def test_points_against_brute_force(name):
    scheme = catalog.get(name)
    cplx = complex_for(name)
    mine = {tuple(x % 1 for x in o.point()) for o in cplx.orbits[0]}
    assert mine == brute_points(scheme)


def test_penrose_single_point_class():
    assert complex_for("penrose").counts()["L0"] == 1


def test_dual_d6_line_count():
    assert complex_for("dual-d6").L(2) == 15


@pytest.mark.parametrize("name", ["ammann-beenker", "generalized-penrose", "ttt", "socolar", "ammann-kramer"])
def test_symmetry_does_not_change_complex(name):
    a, b = complex_for(name), complex_for(name, symmetry=False)
    assert a.counts() == b.counts()
    assert a.dump()["levels"] == b.dump()["levels"]


@pytest.mark.parametrize("name", ["ammann-kramer", "danzer"])
def test_incidence_transitive(name):
    cplx = complex_for(name)
    for k in range(cplx.L(2)):
        pts = set(cplx.inside(2, k, 0))
        for i in cplx.inside(2, k, 1):
            assert set(cplx.inside(1, i, 0)) <= pts
        # every point of a plane lies on some line of that plane
        assert pts == set().union(*(cplx.inside(1, i, 0) for i in cplx.inside(2, k, 1)))


@pytest.mark.parametrize("name", PLANAR + ["danzer"])
def test_each_point_on_two_hyperplanes(name):
    cplx = complex_for(name)
    top = cplx.n - 1
    for j in range(cplx.L(0)):
        assert sum(j in cplx.inside(top, i, 0) for i in range(cplx.L(top))) >= 2


def test_orbit_equal_under_translation():
    cplx = complex_for("ammann-beenker")
    o = cplx.orbits[1][0]
    p = o.point()
    shifted = make_orbit(1, o.direction, [x + g for x, g in zip(p, (1, -2, 0, 3))])
    assert orbit_equal(o, shifted)
    half = make_orbit(1, o.direction, [x + Fraction(1, 2) for x in p])
    assert orbit_equal(o, half) == (half.offset_class == o.offset_class)


def test_stabilizers_saturated_and_rank():
    for name in ("penrose", "danzer"):
        cplx = complex_for(name)
        nu = catalog.get(name).nu
        for r, orbs in cplx.orbits.items():
            for o in orbs:
                assert o.direction.rank == r * nu
                assert o.direction.is_saturated()
                if r:
                    # the line itself is inside each of its own containers' lattice data
                    assert contains(o, o)
