"""Built-in projection schemes for the dihedral planar and icosahedral tilings.

Planar schemes use the skew basis (e_0, e_1) of V, in which the whole star
e_i has coordinates in Z[2 cos(2 pi / N)]; only the affine combinatorics of
the arrangement matters, so the non-orthonormal basis is harmless.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .numberfield import NumberField
from .scheme import Hyperplane, ProjectionScheme, normal_to_directions

# minimal polynomials of 2 cos(2 pi / N), coefficients ascending
_STAR_POLY = {
    8: (-2, 0, 1),
    10: (-1, -1, 1),
    12: (-3, 0, 1),
    14: (1, -2, -1, 1),
}
_STAR_RANK = {8: 4, 10: 4, 12: 4, 14: 6}


@dataclass(frozen=True)
class CatalogEntry:
    scheme: ProjectionScheme
    description: str

    @property
    def name(self) -> str:
        return self.scheme.name

    @property
    def expected(self) -> dict | None:
        return self.scheme.expected


# ---------------------------------------------------------------------------
# planar stars


class _Star:
    def __init__(self, N: int):
        self.N = N
        self.field = NumberField(_STAR_POLY[N])
        K = self.field
        t = K.gen()
        vecs = [(K.one(), K.zero()), (K.zero(), K.one())]
        while len(vecs) < N:
            a, b = vecs[-1]
            # rotation in the basis (e_0, e_1): (a, b) -> (-b, a + t b)
            vecs.append((K.neg(b), K.add(a, K.mul(t, b))))
        self.e = vecs

    def vec(self, i: int):
        return self.e[i % self.N]

    def add(self, *vs):
        K = self.field
        out = (K.zero(), K.zero())
        for v in vs:
            out = (K.add(out[0], v[0]), K.add(out[1], v[1]))
        return out

    def scale(self, v, q):
        K = self.field
        return (K.scale(v[0], q), K.scale(v[1], q))

    def lattice_basis(self):
        return tuple(self.e[:_STAR_RANK[self.N]])


def _star_point_group(star: _Star, scheme: ProjectionScheme, steps: int, mirror: bool):
    """Rotation e_i -> e_(i+steps) and optionally the mirror e_i -> e_(-i), in lattice coordinates."""
    m = scheme.rank
    gens = []

    def matrix(img):
        rows = []
        for j in range(m):
            coords = scheme.lattice_coords(star.vec(img(j)))
            if any(c.denominator != 1 for c in coords):
                raise ValueError("symmetry does not preserve the lattice")
            rows.append(tuple(int(c) for c in coords))
        return tuple(rows)

    gens.append(matrix(lambda j: j + steps))
    if mirror:
        gens.append(matrix(lambda j: -j))
    return tuple(gens)


def _planar(name: str, N: int, lines, *, steps=1, mirror=True, expected=None, params=None) -> ProjectionScheme:
    star = _Star(N)
    K = star.field
    m = _STAR_RANK[N]
    hyper = tuple(Hyperplane((direction,), offset) for direction, offset in lines(star))
    base = ProjectionScheme(name, m - 2, 2, K, star.lattice_basis(), hyper, (), expected, dict(params or {}))
    pg = _star_point_group(star, base, steps, mirror)
    return ProjectionScheme(name, m - 2, 2, K, star.lattice_basis(), hyper, pg, expected, dict(params or {}))


def _along(star: _Star):
    zero = (star.field.zero(), star.field.zero())
    return [(star.vec(i), zero) for i in range(star.N // 2)]


def _between(star: _Star):
    zero = (star.field.zero(), star.field.zero())
    return [(star.add(star.vec(i), star.vec(i + 1)), zero) for i in range(star.N // 2)]


def generalized_penrose(gamma=Fraction(1, 4)) -> ProjectionScheme:
    """Five-fold scheme on the decagonal lattice with shifted line positions.

    Lines parallel to e_(2j) pass through -gamma e_(2j+1) and
    gamma (e_(2j+1) + e_(2j+2)).
    """
    gamma = Fraction(gamma)
    if gamma.denominator == 1:
        raise ValueError("gamma must not lie in Z[tau]; for rationals that means non-integer")

    def lines(star):
        out = []
        for j in range(5):
            d = star.vec(2 * j)
            out.append((d, star.scale(star.vec(2 * j + 1), -gamma)))
            out.append((d, star.scale(star.add(star.vec(2 * j + 1), star.vec(2 * j + 2)), gamma)))
        return out

    return _planar("generalized-penrose", 10, lines, steps=2, mirror=False,
                   expected=_table1("Z^34", "Z^10", "Z"), params={"gamma": str(gamma)})


def _table1(h0, h1, h2):
    return {"groups": {"0": h0, "1": h1, "2": h2}}


# ---------------------------------------------------------------------------
# icosahedral


def _ico_field():
    return NumberField((-1, -1, 1))  # tau


def _ico_vertices(K):
    """One vertex from each antipodal pair of the icosahedron (0, +-1, +-tau)."""
    one, zero, tau = K.one(), K.zero(), K.gen()
    neg = K.neg
    return [
        (zero, one, tau),
        (zero, one, neg(tau)),
        (one, tau, zero),
        (neg(one), tau, zero),
        (tau, zero, one),
        (neg(tau), zero, one),
    ]


def _dot(K, u, v):
    out = K.zero()
    for x, y in zip(u, v):
        out = K.add(out, K.mul(x, y))
    return out


@lru_cache(maxsize=None)
def _ico_signed_perms():
    """Signed permutations of the six axis vectors that preserve all inner products (the group I_h)."""
    K = _ico_field()
    a = _ico_vertices(K)
    gram = [[_dot(K, u, v) for v in a] for u in a]
    out = []
    for perm in permutations(range(6)):
        if gram[perm[0]][perm[0]] != gram[0][0]:
            continue
        for signs in product((1, -1), repeat=6):
            ok = True
            for i in range(6):
                for j in range(i + 1, 6):
                    g = gram[perm[i]][perm[j]]
                    if signs[i] * signs[j] < 0:
                        g = K.neg(g)
                    if g != gram[i][j]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append((perm, signs))
    return out


def _ico_axes(K, fold: int):
    """Axis directions (one per +- pair) through vertices, face centres or edge midpoints."""
    a = _ico_vertices(K)
    verts = a + [tuple(K.neg(x) for x in v) for v in a]
    # squared distance between adjacent vertices is the smallest nonzero one
    dists = {_dist2(K, u, v) for u in verts for v in verts if u != v}
    edge2 = min(dists, key=_approx)
    if fold == 5:
        cands = a
    elif fold == 2:
        cands = [tuple(K.add(x, y) for x, y in zip(u, v)) for i, u in enumerate(verts) for v in verts[i + 1:]
                 if _dist2(K, u, v) == edge2]
    elif fold == 3:
        cands = []
        for i, u in enumerate(verts):
            for j in range(i + 1, len(verts)):
                for k in range(j + 1, len(verts)):
                    v, w = verts[j], verts[k]
                    if _dist2(K, u, v) == edge2 and _dist2(K, u, w) == edge2 and _dist2(K, v, w) == edge2:
                        cands.append(tuple(K.add(K.add(x, y), z) for x, y, z in zip(u, v, w)))
    else:
        raise ValueError(fold)
    axes = []
    for c in cands:
        negc = tuple(K.neg(x) for x in c)
        if c not in axes and negc not in axes:
            axes.append(c)
    return axes


def _dist2(K, u, v):
    d = tuple(K.sub(x, y) for x, y in zip(u, v))
    return _dot(K, d, d)


def _approx(e):
    tau = (1 + 5**0.5) / 2
    return float(e[0]) + float(e[1]) * tau


_GAMMA_F = (
    (1, -1, 0, 0, 0, 0),
    (0, 1, -1, 0, 0, 0),
    (0, 0, 1, -1, 0, 0),
    (0, 0, 0, 1, -1, 0),
    (0, 0, 0, 0, 1, -1),
    (0, 0, 0, 0, 1, 1),
)
_GAMMA_P = tuple(tuple(int(i == j) for j in range(6)) for i in range(6))


def _icosahedral(name, lattice, folds, expected) -> ProjectionScheme:
    K = _ico_field()
    a = _ico_vertices(K)
    pi = []
    for row in lattice:
        v = (K.zero(), K.zero(), K.zero())
        for c, ai in zip(row, a):
            if c:
                v = tuple(K.add(x, K.scale(y, c)) for x, y in zip(v, ai))
        pi.append(v)
    zero = (K.zero(), K.zero(), K.zero())
    hyper = []
    for f in folds:
        for axis in _ico_axes(K, f):
            hyper.append(Hyperplane(normal_to_directions(K, axis), zero))
    pg = _ico_point_group(lattice)
    return ProjectionScheme(name, 3, 3, K, tuple(pi), tuple(hyper), pg, expected, {})


def _ico_point_group(lattice):
    """I_h generators as integer matrices in the given lattice basis."""
    from .linalg import solve_rational

    mats = []
    for perm, signs in _ico_signed_perms():
        # image of axis vector i is signs[i] * a_perm[i]
        gp = [[0] * 6 for _ in range(6)]
        for i in range(6):
            gp[i][perm[i]] = signs[i]
        # basis change: rows b_j = lattice[j] (in star coords); image b_j @ gp, re-expressed in b
        rows = []
        for b in lattice:
            img = [sum(b[k] * gp[k][j] for k in range(6)) for j in range(6)]
            x = solve_rational([list(r) for r in lattice], img)
            if x is None or any(c.denominator != 1 for c in x):
                raise ValueError("lattice not invariant")
            rows.append(tuple(int(c) for c in x))
        mats.append(tuple(rows))
    return tuple(sorted(set(mats)))


def _table2(t1p, t1pp, t0p, h0, h1, h2, h3):
    return {
        "groups": {"0": h0, "1": h1, "2": h2, "3": h3},
        "diagnostics": {"t1_prime": t1p, "t1_double_prime": t1pp, "t0_prime": t0p},
    }


# ---------------------------------------------------------------------------


def _planar_entries():
    yield _planar("ammann-beenker", 8, _along, expected=_table1("Z^9", "Z^5", "Z")), "octagonal, lines along the star"
    yield (_planar("ammann-beenker-decorated", 8, lambda s: _along(s) + _between(s), expected=_table1("Z^23", "Z^9", "Z")),
           "octagonal, lines along and between the star")
    yield _planar("penrose", 10, _along, expected=_table1("Z^8", "Z^5", "Z")), "decagonal, lines along the star"
    yield generalized_penrose(), "decagonal, shifted lines, five-fold symmetric"
    ttt = _table1("Z^24 + Z_5^2", "Z^5", "Z")
    ttt["ktheory"] = {"K0": "Z^25 + Z_5^2", "K1": "Z^5"}
    yield (_planar("ttt", 10, _between, expected=ttt),
           "Tuebingen triangle tiling, lines between the star")
    yield _planar("socolar", 12, _along, expected=_table1("Z^28", "Z^7", "Z")), "dodecagonal, lines along the star"
    yield (_planar("socolar-decorated", 12, lambda s: _along(s) + _between(s), expected=_table1("Z^59", "Z^12", "Z")),
           "dodecagonal, lines along and between the star")
    yield (_planar("octagonal-b", 8, _between, expected={"torsion": {"0": "Z_2"}}),
           "octagonal, lines between the star")
    yield (_planar("heptagonal-b", 14, _between, expected={"torsion": {"0": "Z_7^4", "1": "Z_7^3"}}),
           "four-dimensional heptagonal, lines between the star")


def _ico_entries():
    yield (_icosahedral("ammann-kramer", _GAMMA_P, (2,),
                        _table2("0", "Z_2", "0", "Z^181 + Z_2", "Z^72 + Z_2", "Z^12", "Z")),
           "primitive icosahedral lattice, planes normal to 2-fold axes")
    dual = _table2("Z_2^6", "Z_2^7", "Z_2^15", "Z^331 + Z_2^26 + Z_4", "Z^102 + Z_2^4 + Z_4", "Z^12", "Z")
    dual["counts"] = {"L2": 15}
    dual["ranks"] = {"0": 331}
    dual["torsion_ranks"] = {"2": {"0": 27}}
    dual["diagnostics"].update({
        "coker_phi1_double_prime_order.Z/2^2": "2^9",
        "extension.primes.2.selected": "Z_2^26 + Z_4",
        "extension.primes.2.torsion_sequence_exact": True,
    })
    yield (_icosahedral("dual-d6", _GAMMA_F, (2,), dual),
           "F-centred lattice, planes normal to 2-fold axes")
    yield (_icosahedral("danzer", _GAMMA_F, (5,),
                        _table2("0", "Z_2", "0", "Z^20 + Z_2", "Z^16", "Z^7", "Z")),
           "F-centred lattice, planes normal to 5-fold axes")
    yield (_icosahedral("canonical-d6", _GAMMA_F, (5, 3),
                        _table2("0", "Z_2", "0", "Z^205 + Z_2^2", "Z^72", "Z^7", "Z")),
           "F-centred lattice, planes normal to 5- and 3-fold axes")


@lru_cache(maxsize=None)
def catalog() -> tuple[CatalogEntry, ...]:
    entries = [CatalogEntry(s, desc) for s, desc in _planar_entries()]
    entries += [CatalogEntry(s, desc) for s, desc in _ico_entries()]
    for e in entries:
        e.scheme.validate()
    return tuple(entries)


def get(name: str) -> ProjectionScheme:
    for e in catalog():
        if e.name == name:
            return e.scheme
    raise KeyError(name)


def names() -> list[str]:
    return [e.name for e in catalog()]
