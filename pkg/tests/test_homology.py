from itertools import product
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from tilehom import catalog, homology, singular
from tilehom.abelian import FgAbelianGroup
from tilehom.homology import (
    HomologyError, HomologyResult, InconsistencyError, Ring, build_epsilon, epsilon_inclusion, ktheory,
    parse_ring, resolve_extension, torsion_band_check, torsion_ranks,
)
from tilehom.schemefile import load_scheme
from tilehom.singular import SingularComplex
from conftest import result_for

SCHEMES = Path(__file__).resolve().parent.parent / "schemes"
G = FgAbelianGroup.parse


# --- codimension one -------------------------------------------------------

def test_fibonacci_chain():
    s = load_scheme(SCHEMES / "fibonacci.yaml")
    res = homology.compute(s, singular.generate(s))
    assert res.groups == [G("Z^2"), G("Z")]
    assert res.ktheory == (G("Z"), G("Z^2"))
    assert res.euler == 1


# --- epsilon ---------------------------------------------------------------

def _toy_complex():
    return SingularComplex("toy", 2, 4, {0: [None] * 3, 1: [None]}, {(1, 0, 0): [0, 2]})


def test_epsilon_kernel_basis():
    eps = build_epsilon(_toy_complex())
    assert eps.classes == (0, 1, 2)
    assert [list(r) for r in eps.kernel_basis] == [[1, -1, 0], [0, 1, -1]]
    assert eps.sum_map.matrix.tolist() == [[1], [1], [1]]


def test_epsilon_inclusion_partial_sums():
    cplx = _toy_complex()
    inner, outer = build_epsilon(cplx, (1, 0)), build_epsilon(cplx)
    assert inner.classes == (0, 2)
    # e0 - e2 = (e0 - e1) + (e1 - e2)
    assert epsilon_inclusion(inner, outer) == [[1, 1]]


def test_epsilon_inclusion_missing_class():
    outer = build_epsilon(SingularComplex("t", 2, 4, {0: [None] * 2}, {}))
    inner = build_epsilon(_toy_complex(), (1, 0))
    with pytest.raises(InconsistencyError):
        epsilon_inclusion(inner, outer)


# --- rings and torsion ranks -----------------------------------------------

@pytest.mark.parametrize("text,ring", [
    ("Q", Ring()), ("F2", Ring(2, 1)), ("F_7", Ring(7, 1)), ("Z4", Ring(2, 2)), ("Z/2^2", Ring(2, 2)),
    ("Z/27", Ring(3, 3)),
])
def test_parse_ring(text, ring):
    assert parse_ring(text) == ring


@pytest.mark.parametrize("text", ["F4", "Z6", "R", "Z"])
def test_parse_ring_rejects(text):
    with pytest.raises(ValueError):
        parse_ring(text)


groups = st.builds(
    lambda free, orders: FgAbelianGroup.from_orders(free, orders),
    st.integers(0, 6), st.lists(st.sampled_from([2, 3, 4, 6, 8, 9, 12]), max_size=4))


@given(st.lists(groups, min_size=1, max_size=4), st.sampled_from([2, 3]))
def test_torsion_ranks_recover_p_ranks(hs, p):
    # universal coefficients: D^p_k = D_k + t_k + t_(k-1), t_k = p-rank of H_k
    t = [h.p_rank(p) for h in hs]
    D = [h.free_rank for h in hs]
    Dp = [D[k] + t[k] + (t[k - 1] if k else 0) for k in range(len(hs))]
    assert torsion_ranks(D, Dp) == t


def test_torsion_ranks_negative_is_error():
    with pytest.raises(InconsistencyError):
        torsion_ranks([3, 1], [2, 1])


# --- extension resolution --------------------------------------------------

def brute_count(t: FgAbelianGroup):
    """S(k) = log_p |T / p^k T| by enumerating T."""
    def count(p, k):
        elems = list(product(*(range(f) for f in t.invariant_factors)))
        image = {tuple((p**k * x) % f for x, f in zip(e, t.invariant_factors)) for e in elems}
        size = len(elems) // len(image)
        e = 0
        while size > 1:
            size //= p
            e += 1
        return e
    return count


@pytest.mark.parametrize("truth", ["Z_4", "Z_2^2"])
def test_extension_two_by_two(truth):
    out = resolve_extension(G("Z_2"), G("Z_2"), brute_count(G(truth)))
    assert out.status == "OK"
    assert out.group == G(truth)
    assert out.trace["primes"]["2"]["torsion_sequence_exact"]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.sampled_from([2, 3]))
def test_extension_recovers_known_group(exps, p):
    # T with A = pT and B = T/pT is a genuine extension 0 -> A -> T -> B -> 0
    t = FgAbelianGroup.from_orders(0, [p**e for e in exps])
    a = FgAbelianGroup.from_orders(0, [p ** (e - 1) for e in exps if e > 1])
    b = FgAbelianGroup.from_orders(0, [p] * len(exps))
    out = resolve_extension(a, b, brute_count(t))
    assert out.group == t and out.status == "OK"


def test_extension_passthrough():
    out = resolve_extension(G("Z^3 + Z_5"), G("Z^2"), lambda p, k: pytest.fail("no count needed"))
    assert out.status == "PASSTHROUGH" and out.group == G("Z_5")


def test_extension_inconsistent_counts():
    with pytest.raises(InconsistencyError):
        resolve_extension(G("Z_2"), G("Z_2"), lambda p, k: 5)


# --- checks and K-theory -----------------------------------------------------

def test_ktheory_refused_above_three():
    with pytest.raises(HomologyError):
        ktheory(HomologyResult("x", 4, 4, [G("Z")] * 5), 4)


def test_ktheory_degrees():
    res = HomologyResult("x", 2, 2, [G("Z^24 + Z_5^2"), G("Z^5"), G("Z")])
    assert ktheory(res, 2) == (G("Z^25 + Z_5^2"), G("Z^5"))


def test_band_check_flags_torsion():
    ok = HomologyResult("x", 2, 2, [G("Z^8 + Z_2"), G("Z^5"), G("Z")])
    bad = HomologyResult("x", 2, 2, [G("Z^8"), G("Z^5 + Z_2"), G("Z")])
    assert torsion_band_check(ok, 2, 2)["ok"]
    assert not torsion_band_check(bad, 2, 2)["ok"]


# --- cross-checks on the catalog ---------------------------------------------

@pytest.mark.parametrize("name", catalog.names())
def test_universal_coefficients(name):
    """Mod-p ranks (from field lengths) agree with the integral groups."""
    res = result_for(name)
    for p, Dp in res.modp_ranks.items():
        t = [g.p_rank(p) for g in res.groups]
        assert Dp == [g.free_rank + t[k] + (t[k - 1] if k else 0) for k, g in enumerate(res.groups)]


@pytest.mark.parametrize("name", [n for n in catalog.names() if catalog.get(n).n == 3])
def test_codim3_rank_formulas(name):
    res = result_for(name)
    assert res.diagnostics["corrected_ranks"] == res.ranks
    assert res.diagnostics["euler_count"] == res.euler


@pytest.mark.parametrize("name", catalog.names())
def test_band_holds(name):
    assert result_for(name).diagnostics["torsion_band"]["ok"]


def test_unsupported_codimension():
    class Fake:
        n, d = 4, 4
    with pytest.raises(HomologyError):
        homology.compute(Fake(), None)


@pytest.mark.parametrize("name", catalog.names())
def test_euler_characteristic_independent_of_field(name):
    res = result_for(name)
    for Dp in res.modp_ranks.values():
        assert sum((-1) ** k * x for k, x in enumerate(Dp)) == res.euler


def test_penrose_ktheory():
    assert result_for("penrose").ktheory == (G("Z^9"), G("Z^5"))


@pytest.mark.parametrize("name", catalog.names())
def test_top_degree_is_integers(name):
    res = result_for(name)
    assert res.groups[res.d] == G("Z")
