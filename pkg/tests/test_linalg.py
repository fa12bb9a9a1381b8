from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from tilehom.abelian import FgAbelianGroup
from tilehom.linalg import (
    IntMatrix, Lattice, LatticeMap, RingError, annihilator_rows, cokernel, det, exterior_power, hnf,
    kernel, kernel_rows_mod, lattice_quotient, left_kernel_rows, rank_mod_p, rank_q, reduce_ring, snf,
    snf_factors, solve_rational, submodule_order_mod,
)
from oracles import brute_submodule_size, det_fraction, smith_from_minors


def matrices(max_rows=6, max_cols=6, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)))


def square(n, lo=-4, hi=4):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


# --- Smith normal form against the minor-gcd characterization -------------

@settings(max_examples=1000, deadline=None)
@given(matrices(max_rows=5, max_cols=5, lo=-5, hi=5))
def test_snf_matches_minor_gcds(m):
    assert snf_factors(m, len(m[0])) == smith_from_minors(m)


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=6, max_cols=6))
def test_snf_transforms_and_divisibility(m):
    a = IntMatrix(m)
    facs, left, right = snf(a)
    d = (left @ a @ right).tolist()
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert x == (facs[i] if i == j and i < len(facs) else 0)
    assert abs(det(left.tolist())) == 1 and abs(det(right.tolist())) == 1
    assert all(b % a_ == 0 for a_, b in zip(facs, facs[1:]))


def test_snf_known_example():
    # diag(2, 6, 0) hidden by unimodular mixing
    assert snf_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3) == [2, 6, 12]
    assert cokernel(IntMatrix([[2, 0], [0, 3]])) == FgAbelianGroup.from_orders(0, [6])


# --- Hermite normal form ---------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(matrices())
def test_hnf_properties(m):
    a = IntMatrix(m)
    h, u = hnf(a)
    assert (u @ a) == h
    assert abs(det(u.tolist())) == 1
    last = -1
    for row in h.tolist():
        if not any(row):
            last = len(row)
            continue
        assert last < len(row), "zero rows must come last"
        piv = next(j for j, x in enumerate(row) if x)
        assert piv > last and row[piv] > 0
        last = piv
    # entries above pivots are reduced
    rows = [r for r in h.tolist() if any(r)]
    for i, r in enumerate(rows):
        piv = next(j for j, x in enumerate(r) if x)
        for above in rows[:i]:
            assert 0 <= above[piv] < r[piv]


@settings(max_examples=200, deadline=None)
@given(square(4, -9, 9))
def test_det_against_rational_elimination(m):
    assert det(m) == det_fraction(m)


# --- exterior powers ---------------------------------------------------------

@settings(max_examples=500, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(square(n), square(n), st.integers(0, n))))
def test_exterior_power_functorial(args):
    a, b, k = args
    ab = IntMatrix(a) @ IntMatrix(b)
    lhs = exterior_power(k, ab).matrix
    rhs = exterior_power(k, IntMatrix(a)).matrix @ exterior_power(k, IntMatrix(b)).matrix
    assert lhs == rhs


def test_exterior_power_top_is_det():
    m = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert exterior_power(3, IntMatrix(m)).matrix.tolist() == [[det(m)]]
    assert exterior_power(0, IntMatrix(m)).matrix.tolist() == [[1]]


# --- lattices ----------------------------------------------------------------

def lattices(n=3):
    return st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=0, max_size=3).map(
        lambda rows: Lattice(n, rows))


@settings(max_examples=150, deadline=None)
@given(lattices(), lattices())
def test_sum_and_intersection(a, b):
    s, i = a + b, a.intersection(b)
    assert s.contains_lattice(a) and s.contains_lattice(b)
    assert a.contains_lattice(i) and b.contains_lattice(i)
    # rank(a+b) + rank(a & b) = rank a + rank b
    assert s.rank + i.rank == a.rank + b.rank
    # membership oracle on a box of small vectors
    for v in product(range(-2, 3), repeat=3):
        assert i.contains(v) == (a.contains(v) and b.contains(v))


@settings(max_examples=150, deadline=None)
@given(lattices())
def test_saturation(a):
    s = a.saturation()
    assert s.is_saturated() and s.contains_lattice(a) and s.rank == a.rank
    for v in product(range(-2, 3), repeat=3):
        in_span = a.rank == 0 and not any(v) or a.rank > 0 and solve_rational(list(a.rows), v) is not None
        assert s.contains(v) == in_span


@settings(max_examples=150, deadline=None)
@given(lattices(), lattices())
def test_quotient_order(a, b):
    q = lattice_quotient(a, b)
    assert q.free_rank == (a + b).rank - b.rank
    if b.rank == 3:
        # index formula: [a+b : b] = |det b| / |det(a+b)|
        assert q.torsion_order == abs(det(list(b.rows))) // abs(det(list((a + b).rows)))


def test_quotient_index_example():
    full = Lattice.full(2)
    sub = Lattice(2, [[2, 0], [0, 3]])
    assert sub.index_in(full) == 6
    assert len(list(sub.coset_reps())) == 6
    assert lattice_quotient(full, sub) == FgAbelianGroup.from_orders(0, [6])


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=4, max_cols=4))
def test_kernels(m):
    ncols = len(m[0])
    ker = left_kernel_rows(m, ncols)
    for x in ker:
        assert all(sum(x[i] * m[i][j] for i in range(len(m))) == 0 for j in range(ncols))
    assert len(ker) == len(m) - rank_q(m, ncols)
    assert Lattice(len(m), ker).is_saturated() or not ker
    ann = annihilator_rows(m, ncols)
    for y in ann:
        assert all(sum(r[j] * y[j] for j in range(ncols)) == 0 for r in m)
    assert len(ann) == ncols - rank_q(m, ncols)
    assert kernel(IntMatrix(m)).rank == len(ker)


# --- modular reductions ------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(matrices(max_rows=3, max_cols=3, lo=-9, hi=9), st.sampled_from([2, 3, 4, 5, 8, 9]))
def test_submodule_order_brute_force(m, q):
    ncols = len(m[0])
    assert submodule_order_mod(m, ncols, q) == brute_submodule_size([[x % q for x in r] for r in m], ncols, q)


@settings(max_examples=200, deadline=None)
@given(matrices(max_rows=3, max_cols=3, lo=-9, hi=9), st.sampled_from([2, 3, 4, 8, 9]))
def test_kernel_mod_brute_force(m, q):
    r, c = len(m), len(m[0])
    gens = kernel_rows_mod(m, c, q)
    want = {x for x in product(range(q), repeat=r)
            if all(sum(x[i] * m[i][j] for i in range(r)) % q == 0 for j in range(c))}
    assert brute_submodule_size([[v % q for v in g] for g in gens], r, q) == len(want)
    for g in gens:
        assert tuple(v % q for v in g) in want


@settings(max_examples=200, deadline=None)
@given(matrices(max_rows=4, max_cols=4, lo=-9, hi=9), st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_against_snf(m, p):
    facs = snf_factors(m, len(m[0]))
    assert rank_mod_p(m, p) == sum(1 for f in facs if f % p)
    assert rank_q(m) == len(facs)


def test_reduce_ring():
    m = IntMatrix([[2, 0], [0, 4]])
    assert reduce_ring(m, 0)[0] == 2
    assert reduce_ring(m, 2) == (0, 4)
    assert reduce_ring(m, 4)[1] == 2 * 4
    with pytest.raises(RingError):
        reduce_ring(m, 6)


def test_solve_rational():
    x = solve_rational([[2, 0], [0, 3]], [1, 1])
    assert x == [Fraction(1, 2), Fraction(1, 3)]
    assert solve_rational([[1, 1]], [1, 0]) is None


def test_lattice_map_shapes():
    f = LatticeMap.from_rows([[1, 2, 3]], 3)
    assert (f.source_rank, f.target_rank) == (1, 3)
